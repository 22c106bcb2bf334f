//! Crawley-Boevey criteria, representation types, the leaf stratification of
//! flower quiver varieties, slice quivers and the parameter restriction map.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootlat::{
    extend, p_raw, positive_roots_below, root_walk, Character, DimVector,
    FramedSetting, Quiver,
};

/// One summand `(root, multiplicity)` of a representation type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub root: DimVector,
    pub mult: u32,
}

/// A representation type `(v0,1; v1,m1; ...)`. Part 0 carries the framing
/// vertex with multiplicity 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepresentationType {
    pub parts: Vec<Part>,
}

impl RepresentationType {
    /// Builds a type and puts parts after the first into canonical order.
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidRepType("no parts".into()));
        }
        if parts.iter().any(|p| p.mult == 0) {
            return Err(Error::InvalidRepType("zero multiplicity".into()));
        }
        if parts[0].mult != 1 {
            return Err(Error::InvalidRepType("part 0 must have multiplicity 1".into()));
        }
        let mut parts = parts;
        parts[1..].sort();
        Ok(RepresentationType { parts })
    }

    /// `sum mult * root`.
    pub fn total(&self) -> DimVector {
        let len = self.parts[0].root.len();
        self.parts
            .iter()
            .fold(DimVector::zero(len), |acc, p| &acc + &p.root.scaled(p.mult as i64))
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        Value::Array(
            self.parts
                .iter()
                .map(|p| json!({"root": p.root.labeled(q), "mult": p.mult}))
                .collect(),
        )
    }

    pub fn from_json(q: &Quiver, value: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawPart {
            root: std::collections::BTreeMap<String, i64>,
            mult: u32,
        }
        let raw: Vec<RawPart> = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidRepType(e.to_string()))?;
        let parts = raw
            .into_iter()
            .map(|p| {
                Ok(Part {
                    root: DimVector::from_labeled(q, &p.root)?,
                    mult: p.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RepresentationType::new(parts)
    }

    /// Flower shape `(n0; (n1, m1), ...)` on the extended flower quiver
    /// with vertex order `("0", "inf")`.
    pub fn flower_shape(&self) -> Result<(u32, Vec<(u32, u32)>)> {
        let bad = |why: &str| Error::NotFlower(why.to_string());
        let first = &self.parts[0].root;
        if first.len() != 2 || first[1] != 1 {
            return Err(bad("part 0 must be alpha_inf + n0 alpha"));
        }
        let rest = self.parts[1..]
            .iter()
            .map(|p| {
                if p.root.len() != 2 || p.root[1] != 0 || p.root[0] <= 0 {
                    Err(bad("parts after the first must be positive multiples of alpha"))
                } else {
                    Ok((p.root[0] as u32, p.mult))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((first[0] as u32, rest))
    }

    /// The flower type `(alpha_inf + n0 alpha, 1; n_i alpha, m_i ...)`.
    pub fn flower(n0: u32, parts: &[(u32, u32)]) -> Result<Self> {
        let mut all = vec![Part {
            root: DimVector::new(vec![n0 as i64, 1])?,
            mult: 1,
        }];
        for &(size, mult) in parts {
            if size == 0 {
                return Err(Error::InvalidRepType("zero part size".into()));
            }
            all.push(Part {
                root: DimVector::new(vec![size as i64, 0])?,
                mult,
            });
        }
        RepresentationType::new(all)
    }
}

/// A leaf together with its dimension and relevance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafDescriptor {
    pub rep_type: RepresentationType,
    pub dimension: i64,
    pub relevant: bool,
}

/// Flower leaf data: `n0` on the framing part and `(size, mult)` per other part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowerLeafSpec {
    pub n: u32,
    pub ell: u32,
    pub w: u32,
    pub n0: u32,
    pub parts: Vec<(u32, u32)>,
}

impl FlowerLeafSpec {
    pub fn new(n: u32, ell: u32, w: u32, n0: u32, parts: Vec<(u32, u32)>) -> Result<Self> {
        if ell < 2 || w == 0 || n == 0 {
            return Err(Error::InvalidParameters(format!("n={n}, ell={ell}, w={w}")));
        }
        if parts.iter().any(|&(s, m)| s == 0 || m == 0) {
            return Err(Error::InvalidRepType("part sizes and multiplicities must be positive".into()));
        }
        let total: u32 = n0 + parts.iter().map(|&(s, m)| s * m).sum::<u32>();
        if total != n {
            return Err(Error::InvalidRepType(format!("parts sum to {total}, expected {n}")));
        }
        Ok(FlowerLeafSpec { n, ell, w, n0, parts })
    }

    /// `(alpha_inf, 1; alpha, 1; ...; alpha, 1)`.
    pub fn minimal(n: u32, ell: u32, w: u32) -> Result<Self> {
        FlowerLeafSpec::new(n, ell, w, 0, vec![(1, 1); n as usize])
    }

    pub fn from_rep_type(tau: &RepresentationType, ell: u32, w: u32) -> Result<Self> {
        let (n0, parts) = tau.flower_shape()?;
        let n = n0 + parts.iter().map(|&(s, m)| s * m).sum::<u32>();
        FlowerLeafSpec::new(n, ell, w, n0, parts)
    }

    pub fn rep_type(&self) -> RepresentationType {
        RepresentationType::flower(self.n0, &self.parts).expect("validated spec")
    }
}

/// Memoized search for the largest `sum p(beta_i)` over decompositions into
/// positive roots from a fixed candidate list.
struct Decomposer {
    c: Vec<Vec<i64>>,
    roots: Vec<(Vec<i64>, i64)>,
    memo: HashMap<Vec<i64>, Option<i64>>,
}

impl Decomposer {
    fn new(q: &Quiver, bound: &DimVector, keep: impl Fn(&[i64]) -> bool) -> Result<Self> {
        let c = q.tits_matrix();
        let roots = positive_roots_below(q, bound)?
            .into_iter()
            .filter(|r| keep(r.as_slice()))
            .map(|r| {
                let p = p_raw(&c, r.as_slice());
                (r.as_slice().to_vec(), p)
            })
            .collect();
        Ok(Decomposer {
            c,
            roots,
            memo: HashMap::new(),
        })
    }

    /// Max over decompositions of `u` into at least one candidate root.
    fn best(&mut self, u: &[i64]) -> Option<i64> {
        if u.iter().all(|&x| x == 0) {
            return None;
        }
        if let Some(&v) = self.memo.get(u) {
            return v;
        }
        let mut best: Option<i64> = None;
        for k in 0..self.roots.len() {
            let (r, p) = (self.roots[k].0.clone(), self.roots[k].1);
            if !r.iter().zip(u).all(|(a, b)| a <= b) {
                continue;
            }
            let rest: Vec<i64> = u.iter().zip(&r).map(|(a, b)| a - b).collect();
            let value = if rest.iter().all(|&x| x == 0) {
                Some(p)
            } else {
                self.best(&rest).map(|s| s + p)
            };
            best = best.max(value);
        }
        self.memo.insert(u.to_vec(), best);
        best
    }

    /// Max over decompositions of `v` into at least two candidate roots.
    fn best_split(&mut self, v: &[i64]) -> Option<i64> {
        let mut best: Option<i64> = None;
        for k in 0..self.roots.len() {
            let (r, p) = (self.roots[k].0.clone(), self.roots[k].1);
            if r == v || !r.iter().zip(v).all(|(a, b)| a <= b) {
                continue;
            }
            let rest: Vec<i64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
            best = best.max(self.best(&rest).map(|s| s + p));
        }
        best
    }

    fn p(&self, v: &[i64]) -> i64 {
        p_raw(&self.c, v)
    }
}

/// Whether a simple representation of dimension `v` exists in the fibre of
/// the moment map over `lambda`.
pub fn simple_rep_exists(q: &Quiver, lambda: &Character, v: &DimVector) -> Result<bool> {
    if lambda.len() != q.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: q.num_vertices(),
            found: lambda.len(),
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let c = q.tits_matrix();
    if !root_walk(q, &c, v.as_slice()) || !lambda.pair(v.as_slice()).is_zero() {
        return Ok(false);
    }
    let mut d = Decomposer::new(q, v, |r| lambda.pair(r).is_zero())?;
    let pv = d.p(v.as_slice());
    Ok(d.best_split(v.as_slice()).is_none_or(|s| pv > s))
}

/// Flatness of the moment map for a framed setting: `p(v~) >= sum p(beta_i)`
/// over every decomposition of the extended vector into positive roots.
pub fn moment_map_flat(s: &FramedSetting) -> Result<bool> {
    let (q, v) = extend(s)?;
    let mut d = Decomposer::new(&q, &v, |_| true)?;
    let pv = d.p(v.as_slice());
    Ok(d.best_split(v.as_slice()).is_none_or(|sum| pv >= sum))
}

/// All representation types of the extended vector at parameter zero.
///
/// A root may occur in several distinct parts only when `p(root) > 0`, since
/// only then do non-isomorphic simples of that dimension exist.
pub fn enumerate_rep_types(s: &FramedSetting) -> Result<Vec<RepresentationType>> {
    let (q, v) = extend(s)?;
    let zero = Character::zero(q.num_vertices());
    let c = q.tits_matrix();
    let inf = q.num_vertices() - 1;
    let mut candidates: Vec<(DimVector, i64)> = Vec::new();
    for r in positive_roots_below(&q, &v)? {
        if simple_rep_exists(&q, &zero, &r)? {
            let p = p_raw(&c, r.as_slice());
            candidates.push((r, p));
        }
    }
    let (framed, unframed): (Vec<_>, Vec<_>) = candidates.into_iter().partition(|(r, _)| r[inf] == 1);

    let mut out = Vec::new();
    for (head, _) in &framed {
        let Some(rest) = v.checked_sub(head) else { continue };
        let mut chosen: Vec<Part> = Vec::new();
        split_rest(&unframed, 0, &rest, &mut chosen, &mut |parts| {
            let mut all = vec![Part { root: head.clone(), mult: 1 }];
            all.extend(parts.iter().cloned());
            out.push(RepresentationType::new(all).expect("well formed"));
        });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Enumerates multisets of parts from `roots[start..]` summing to `rest`.
fn split_rest(
    roots: &[(DimVector, i64)],
    start: usize,
    rest: &DimVector,
    chosen: &mut Vec<Part>,
    emit: &mut dyn FnMut(&[Part]),
) {
    if rest.is_zero() {
        emit(chosen);
        return;
    }
    for k in start..roots.len() {
        let (root, p) = &roots[k];
        let mut count = 1i64;
        while let Some(left) = rest.checked_sub(&root.scaled(count)) {
            // Split `count` copies into parts; a rigid root must stay in one part.
            let partitions = if *p > 0 {
                integer_partitions(count as u32)
            } else {
                vec![vec![count as u32]]
            };
            for mults in partitions {
                let before = chosen.len();
                for m in mults {
                    chosen.push(Part { root: root.clone(), mult: m });
                }
                split_rest(roots, k + 1, &left, chosen, emit);
                chosen.truncate(before);
            }
            count += 1;
        }
    }
}

fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Leaf dimension `2 * sum p(root)`, each part counted once.
pub fn stratum_dim(q: &Quiver, tau: &RepresentationType) -> Result<i64> {
    let c = q.tits_matrix();
    let mut d = 0;
    for part in &tau.parts {
        if part.root.len() != q.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: q.num_vertices(),
                found: part.root.len(),
            });
        }
        d += p_raw(&c, part.root.as_slice());
    }
    Ok(2 * d)
}

/// Whether a flower type is relevant: every multiplicity is 1.
pub fn is_relevant(tau: &RepresentationType) -> Result<bool> {
    let (_, parts) = tau.flower_shape()?;
    Ok(parts.iter().all(|&(_, m)| m == 1))
}

/// Closed-form dimension of a relevant flower leaf.
pub fn relevant_leaf_dim(spec: &FlowerLeafSpec) -> Result<i64> {
    if let Some(&(_, m)) = spec.parts.iter().find(|&&(_, m)| m != 1) {
        return Err(Error::MultiplicityNotOne(m));
    }
    let k = spec.parts.len() as i64;
    let n0 = spec.n0 as i64;
    let squares: i64 = n0 * n0 + spec.parts.iter().map(|&(s, _)| (s as i64).pow(2)).sum::<i64>();
    Ok(2 * k + 2 * n0 * spec.w as i64 + (2 * spec.ell as i64 - 2) * squares)
}

/// Replaces each part `(m alpha, k)` by `k` copies of `(m alpha, 1)`.
pub fn relevantize(tau: &RepresentationType) -> Result<RepresentationType> {
    let (n0, parts) = tau.flower_shape()?;
    let split: Vec<(u32, u32)> = parts
        .iter()
        .flat_map(|&(s, m)| std::iter::repeat_n((s, 1), m as usize))
        .collect();
    RepresentationType::flower(n0, &split)
}

/// Closure order between relevant flower leaves: whether the leaf of
/// `inner` lies in the boundary of the leaf of `outer`. The parts of `inner`
/// must regroup into blocks summing to the parts of `outer`, with the
/// framing block allowed to absorb extra parts.
pub fn in_boundary(outer: &RepresentationType, inner: &RepresentationType) -> Result<bool> {
    let (n0, big) = outer.flower_shape()?;
    let (r0, small) = inner.flower_shape()?;
    if big.iter().chain(&small).any(|&(_, m)| m != 1) {
        return Err(Error::MultiplicityNotOne(
            big.iter().chain(&small).map(|&(_, m)| m).find(|&m| m != 1).unwrap_or(1),
        ));
    }
    if outer == inner || r0 > n0 {
        return Ok(false);
    }
    let mut need: Vec<u32> = std::iter::once(n0 - r0).chain(big.iter().map(|&(s, _)| s)).collect();
    let mut sizes: Vec<u32> = small.iter().map(|&(s, _)| s).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(assign_blocks(&sizes, &mut need))
}

fn assign_blocks(sizes: &[u32], need: &mut [u32]) -> bool {
    let Some((&first, rest)) = sizes.split_first() else {
        return need.iter().all(|&x| x == 0);
    };
    for b in 0..need.len() {
        if need[b] >= first {
            need[b] -= first;
            let ok = assign_blocks(rest, need);
            need[b] += first;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Whether the leaf of an arbitrary flower type `other` lies in the boundary
/// of the relevant leaf `tau`.
pub fn boundary_contains(tau: &RepresentationType, other: &RepresentationType) -> Result<bool> {
    if tau == other {
        return Ok(false);
    }
    let rel = relevantize(other)?;
    Ok(&rel == tau || in_boundary(tau, &rel)?)
}

/// Smallest codimension of a boundary leaf of `tau` among `all_types`;
/// `None` when no listed leaf lies in the boundary.
pub fn min_boundary_codim(
    q: &Quiver,
    tau: &RepresentationType,
    all_types: &[RepresentationType],
) -> Result<Option<i64>> {
    if !is_relevant(tau)? {
        return Err(Error::InvalidRepType("boundary codimension needs a relevant type".into()));
    }
    let d = stratum_dim(q, tau)?;
    let mut best: Option<i64> = None;
    for other in all_types {
        if boundary_contains(tau, other)? {
            let codim = d - stratum_dim(q, other)?;
            best = Some(best.map_or(codim, |b: i64| b.min(codim)));
        }
    }
    Ok(best)
}

/// Quiver, dimension vector and framing of the transverse slice to a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceQuiverData {
    pub quiver: Quiver,
    pub v: DimVector,
    pub w: DimVector,
    pub loops_removed: bool,
    /// Set when the type is `(alpha_inf, 1; e, 1; ...; e, 1)` for a simple root `e`.
    pub minimal_leaf: bool,
}

impl SliceQuiverData {
    /// Drops every loop; only allowed when the slice dimension vector is all 1.
    pub fn without_loops(&self) -> Result<SliceQuiverData> {
        if self.v.as_slice().iter().any(|&x| x != 1) {
            return Err(Error::NotMinimalSlice(
                "loops may only be dropped when every slice dimension is 1".into(),
            ));
        }
        let mut q = Quiver::new(self.quiver.vertices().to_vec())?;
        for &(t, h) in self.quiver.arrows() {
            if t != h {
                q.add_arrow_at(t, h);
            }
        }
        Ok(SliceQuiverData {
            quiver: q,
            loops_removed: true,
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quiver": self.quiver,
            "v": self.v.labeled(&self.quiver),
            "w": self.w.labeled(&self.quiver),
            "loops_removed": self.loops_removed,
            "minimal_leaf": self.minimal_leaf,
        })
    }
}

/// Slice quiver of a representation type on `q`: one vertex per part after
/// the first, `p(v^i)` loops at vertex `i`, `-(v^i, v^j)` arrows between
/// vertices split as evenly as possible, and framing `-(v^0, v^i)`.
pub fn slice_quiver(q: &Quiver, tau: &RepresentationType) -> Result<SliceQuiverData> {
    let c = q.tits_matrix();
    let form = |a: &DimVector, b: &DimVector| -> i64 {
        let (a, b) = (a.as_slice(), b.as_slice());
        (0..a.len()).map(|i| a[i] * (0..b.len()).map(|j| c[i][j] * b[j]).sum::<i64>()).sum()
    };
    let rest = &tau.parts[1..];
    let labels: Vec<String> = (1..=rest.len()).map(|i| i.to_string()).collect();
    let mut sq = Quiver::new(labels)?;
    for (i, part) in rest.iter().enumerate() {
        let loops = p_raw(&c, part.root.as_slice());
        for _ in 0..loops.max(0) {
            sq.add_arrow_at(i, i);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let count = -form(&rest[i].root, &rest[j].root);
            if count < 0 {
                return Err(Error::InvalidRepType(format!(
                    "parts {} and {} pair positively",
                    i + 1,
                    j + 1
                )));
            }
            let forward = (count + 1) / 2;
            for _ in 0..forward {
                sq.add_arrow_at(i, j);
            }
            for _ in 0..count - forward {
                sq.add_arrow_at(j, i);
            }
        }
    }
    let v = DimVector::new(rest.iter().map(|p| p.mult as i64).collect())?;
    let w = DimVector::new(rest.iter().map(|p| -form(&tau.parts[0].root, &p.root)).collect())
        .map_err(|_| Error::InvalidRepType("negative slice framing".into()))?;
    let base = &tau.parts[0].root;
    let minimal_leaf = base.height() == 1
        && !rest.is_empty()
        && rest[0].root.height() == 1
        && rest.iter().all(|p| p.mult == 1 && p.root == rest[0].root);
    Ok(SliceQuiverData {
        quiver: sq,
        v,
        w,
        loops_removed: false,
        minimal_leaf,
    })
}

/// Restricted quantization parameter on the slice vertices:
/// component `i` is `n_i * lambda - n_i * n0 * (ell - 1)`.
pub fn restrict_parameter(lambda: &Rational, spec: &FlowerLeafSpec) -> Character {
    let shift = Rational::from((spec.n0 as i64) * (spec.ell as i64 - 1));
    Character::new(
        spec.parts
            .iter()
            .map(|&(s, _)| Rational::from(s as i64) * (lambda - &shift))
            .collect(),
    )
}

/// Leaf report `{"tau", "dim", "relevant", "boundary_codim"}` for every type
/// of a flower setting.
pub fn flower_leaf_report(n: u32, ell: u32, w: u32) -> Result<Vec<Value>> {
    let s = FramedSetting::flower(n as i64, ell as usize, w as i64)?;
    let q = Quiver::extended_flower(ell as usize, w as usize);
    let types = enumerate_rep_types(&s)?;
    types
        .iter()
        .map(|tau| {
            let relevant = is_relevant(tau)?;
            let codim = if relevant {
                min_boundary_codim(&q, tau, &types)?
            } else {
                None
            };
            Ok(json!({
                "tau": tau.to_json(&q),
                "dim": stratum_dim(&q, tau)?,
                "relevant": relevant,
                "boundary_codim": codim,
            }))
        })
        .collect()
}

/// Leaf descriptors for every type of a flower setting.
pub fn flower_leaves(n: u32, ell: u32, w: u32) -> Result<Vec<LeafDescriptor>> {
    let s = FramedSetting::flower(n as i64, ell as usize, w as i64)?;
    let q = Quiver::extended_flower(ell as usize, w as usize);
    enumerate_rep_types(&s)?
        .into_iter()
        .map(|tau| {
            Ok(LeafDescriptor {
                dimension: stratum_dim(&q, &tau)?,
                relevant: is_relevant(&tau)?,
                rep_type: tau,
            })
        })
        .collect()
}
