//! Quivers with loops, dimension vectors, the Tits form and positive roots.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Label given to the framing vertex added by [`extend`].
pub const INF: &str = "inf";

/// A finite quiver. Arrows are stored by vertex index; loops are arrows with
/// equal endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuiver", into = "RawQuiver")]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawQuiver {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

impl TryFrom<RawQuiver> for Quiver {
    type Error = Error;
    fn try_from(raw: RawQuiver) -> Result<Self> {
        let mut q = Quiver::new(raw.vertices)?;
        for (t, h) in raw.arrows {
            q.add_arrow(&t, &h)?;
        }
        Ok(q)
    }
}

impl From<Quiver> for RawQuiver {
    fn from(q: Quiver) -> Self {
        RawQuiver {
            arrows: q
                .arrows
                .iter()
                .map(|&(t, h)| (q.vertices[t].clone(), q.vertices[h].clone()))
                .collect(),
            vertices: q.vertices,
        }
    }
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        Ok(Quiver {
            vertices,
            arrows: Vec::new(),
            index,
        })
    }

    pub fn add_arrow(&mut self, tail: &str, head: &str) -> Result<()> {
        let t = self.vertex_index(tail)?;
        let h = self.vertex_index(head)?;
        self.arrows.push((t, h));
        Ok(())
    }

    /// Adds an arrow by vertex indices; panics on an out-of-range index.
    pub fn add_arrow_at(&mut self, tail: usize, head: usize) {
        assert!(tail < self.vertices.len() && head < self.vertices.len());
        self.arrows.push((tail, head));
    }

    /// One vertex labelled `"0"` carrying `ell` loops.
    pub fn flower(ell: usize) -> Self {
        let mut q = Quiver::new(["0"]).expect("single vertex");
        for _ in 0..ell {
            q.add_arrow_at(0, 0);
        }
        q
    }

    /// Extended flower quiver: vertex `"0"` with `ell` loops, plus
    /// [`INF`] joined to it by `w` arrows.
    pub fn extended_flower(ell: usize, w: usize) -> Self {
        let mut q = Quiver::new(["0", INF]).expect("two vertices");
        for _ in 0..ell {
            q.add_arrow_at(0, 0);
        }
        for _ in 0..w {
            q.add_arrow_at(0, 1);
        }
        q
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Number of loops at vertex `i`.
    pub fn loops(&self, i: usize) -> usize {
        self.arrows.iter().filter(|&&(t, h)| t == i && h == i).count()
    }

    /// Number of arrows joining `i` and `j` in either direction, `i != j`.
    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        debug_assert_ne!(i, j);
        self.arrows
            .iter()
            .filter(|&&(t, h)| (t == i && h == j) || (t == j && h == i))
            .count()
    }

    /// Symmetric matrix `C` with `(a,b) = a^T C b`.
    pub fn tits_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
        }
        for &(t, h) in &self.arrows {
            if t == h {
                c[t][t] -= 2;
            } else {
                c[t][h] -= 1;
                c[h][t] -= 1;
            }
        }
        c
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.num_vertices() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.num_vertices(),
                found: len,
            })
        }
    }

    /// Whether the vertices with nonzero entry in `v` span a connected
    /// subgraph (orientation ignored). The empty support counts as
    /// disconnected.
    pub fn support_connected(&self, v: &[i64]) -> bool {
        let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = vec![false; v.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(t, h) in &self.arrows {
                let y = if t == x {
                    h
                } else if h == x {
                    t
                } else {
                    continue;
                };
                if v[y] != 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        support.iter().all(|&i| seen[i])
    }
}

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if let Some((i, &value)) = components.iter().enumerate().find(|(_, &x)| x < 0) {
            return Err(Error::NegativeComponent {
                vertex: i.to_string(),
                value,
            });
        }
        Ok(DimVector(components))
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        DimVector(v)
    }

    pub fn from_labeled(q: &Quiver, map: &BTreeMap<String, i64>) -> Result<Self> {
        let mut v = vec![0; q.num_vertices()];
        let mut seen = 0;
        for (label, &x) in map {
            let i = q.vertex_index(label)?;
            if x < 0 {
                return Err(Error::NegativeComponent {
                    vertex: label.clone(),
                    value: x,
                });
            }
            v[i] = x;
            seen += 1;
        }
        q.check_len(seen)?;
        Ok(DimVector(v))
    }

    pub fn labeled(&self, q: &Quiver) -> BTreeMap<String, i64> {
        q.vertices().iter().cloned().zip(self.0.iter().copied()).collect()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        v.iter().all(|&x| x >= 0).then_some(DimVector(v))
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl std::ops::Add for &DimVector {
    type Output = DimVector;
    fn add(self, rhs: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// A quiver with dimension vector and framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedSetting {
    pub quiver: Quiver,
    pub v: DimVector,
    pub w: DimVector,
}

impl FramedSetting {
    pub fn new(quiver: Quiver, v: DimVector, w: DimVector) -> Result<Self> {
        quiver.check_len(v.len())?;
        quiver.check_len(w.len())?;
        Ok(FramedSetting { quiver, v, w })
    }

    /// Flower quiver with `ell` loops, dimension `n` and framing `w`.
    pub fn flower(n: i64, ell: usize, w: i64) -> Result<Self> {
        FramedSetting::new(Quiver::flower(ell), DimVector::new(vec![n])?, DimVector::new(vec![w])?)
    }
}

/// Rational vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<Rational>);

impl Character {
    pub fn new(components: Vec<Rational>) -> Self {
        Character(components)
    }

    pub fn zero(len: usize) -> Self {
        Character(vec![Rational::zero(); len])
    }

    pub fn from_labeled(q: &Quiver, map: &BTreeMap<String, Rational>) -> Result<Self> {
        let mut v = vec![Rational::zero(); q.num_vertices()];
        for (label, x) in map {
            v[q.vertex_index(label)?] = x.clone();
        }
        q.check_len(map.len())?;
        Ok(Character(v))
    }

    pub fn labeled(&self, q: &Quiver) -> BTreeMap<String, Rational> {
        q.vertices().iter().cloned().zip(self.0.iter().cloned()).collect()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `chi . v`.
    pub fn pair(&self, v: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(v)
            .filter(|(_, &x)| x != 0)
            .map(|(c, &x)| c * Rational::from(x))
            .sum()
    }
}

fn form_raw(c: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in c.iter().enumerate() {
        if a[i] == 0 {
            continue;
        }
        let mut t = 0;
        for (j, &cij) in row.iter().enumerate() {
            t += cij * b[j];
        }
        s += a[i] * t;
    }
    s
}

/// `p(v) = 1 - (v,v)/2` from a precomputed Tits matrix.
pub(crate) fn p_raw(c: &[Vec<i64>], v: &[i64]) -> i64 {
    1 - form_raw(c, v, v) / 2
}

/// The symmetric Tits form `(a, b)`.
pub fn tits_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    q.check_len(a.len())?;
    q.check_len(b.len())?;
    Ok(form_raw(&q.tits_matrix(), a.as_slice(), b.as_slice()))
}

/// `p(v) = 1 - (v,v)/2`.
pub fn p_form(q: &Quiver, v: &DimVector) -> Result<i64> {
    let vv = tits_form(q, v, v)?;
    debug_assert_eq!(vv % 2, 0);
    Ok(1 - vv / 2)
}

/// Adds the framing vertex [`INF`] with `w_i` arrows `i -> inf`, and returns
/// the extended dimension vector (1 at `inf`).
pub fn extend(s: &FramedSetting) -> Result<(Quiver, DimVector)> {
    if s.quiver.index.contains_key(INF) {
        return Err(Error::AlreadyExtended(INF.to_string()));
    }
    let mut labels = s.quiver.vertices.clone();
    labels.push(INF.to_string());
    let mut q = Quiver::new(labels)?;
    for &(t, h) in &s.quiver.arrows {
        q.add_arrow_at(t, h);
    }
    let inf = q.num_vertices() - 1;
    for (i, &wi) in s.w.as_slice().iter().enumerate() {
        for _ in 0..wi {
            q.add_arrow_at(i, inf);
        }
    }
    let mut v = s.v.as_slice().to_vec();
    v.push(1);
    Ok((q, DimVector(v)))
}

/// Positive-root test for quivers that may carry loops.
///
/// Reflections are taken only at loop-free vertices and only when they lower
/// the height. The walk stops at a loop-free simple root (real root), at an
/// element of the fundamental set (imaginary root), or when positivity or
/// connectedness breaks (not a root).
pub fn is_positive_root(q: &Quiver, beta: &DimVector) -> Result<bool> {
    q.check_len(beta.len())?;
    if beta.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(root_walk(q, &q.tits_matrix(), beta.as_slice()))
}

pub(crate) fn root_walk(q: &Quiver, c: &[Vec<i64>], beta: &[i64]) -> bool {
    let n = beta.len();
    let loop_free: Vec<bool> = (0..n).map(|i| c[i][i] == 2).collect();
    let mut b = beta.to_vec();
    loop {
        if b.iter().any(|&x| x < 0) || !q.support_connected(&b) {
            return false;
        }
        let support: Vec<usize> = (0..n).filter(|&i| b[i] != 0).collect();
        if support.len() == 1 && b[support[0]] == 1 && loop_free[support[0]] {
            return true;
        }
        let step = (0..n).find_map(|i| {
            if !loop_free[i] {
                return None;
            }
            let pairing: i64 = (0..n).map(|j| c[i][j] * b[j]).sum();
            (pairing > 0).then_some((i, pairing))
        });
        match step {
            None => return true,
            Some((i, pairing)) => b[i] -= pairing,
        }
    }
}

/// Every positive root `beta <= bound`, in lexicographic order.
pub fn positive_roots_below(q: &Quiver, bound: &DimVector) -> Result<Vec<DimVector>> {
    q.check_len(bound.len())?;
    let c = q.tits_matrix();
    let mut out = Vec::new();
    for_each_below(bound.as_slice(), |v| {
        if v.iter().any(|&x| x != 0) && root_walk(q, &c, v) {
            out.push(DimVector(v.to_vec()));
        }
    });
    Ok(out)
}

/// Calls `f` on every nonnegative vector `<= bound` in lexicographic order.
pub(crate) fn for_each_below(bound: &[i64], mut f: impl FnMut(&[i64])) {
    let n = bound.len();
    let mut v = vec![0i64; n];
    loop {
        f(&v);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if v[k] < bound[k] {
                v[k] += 1;
                for x in v.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Whether `(theta, lambda)` is generic for `v`: no positive root
/// `v' < v` has `lambda . v' = theta . v' = 0`.
pub fn is_generic(q: &Quiver, theta: &Character, lambda: &Character, v: &DimVector) -> Result<bool> {
    q.check_len(theta.len())?;
    q.check_len(lambda.len())?;
    for root in positive_roots_below(q, v)? {
        if &root == v {
            continue;
        }
        if theta.pair(root.as_slice()).is_zero() && lambda.pair(root.as_slice()).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{BTreeSet, VecDeque};

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn a2() -> Quiver {
        let mut q = Quiver::new(["1", "2"]).unwrap();
        q.add_arrow("1", "2").unwrap();
        q
    }

    #[test]
    fn flower_pairings() {
        let q = Quiver::extended_flower(2, 1);
        assert_eq!(tits_form(&q, &dv(&[1, 0]), &dv(&[1, 0])).unwrap(), -2);
        let q3 = Quiver::extended_flower(2, 3);
        assert_eq!(tits_form(&q3, &dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -3);
        let single = Quiver::new(["x"]).unwrap();
        assert_eq!(tits_form(&single, &dv(&[1]), &dv(&[1])).unwrap(), 2);
    }

    #[test]
    fn p_form_values() {
        assert_eq!(p_form(&Quiver::flower(2), &dv(&[3])).unwrap(), 10);
        assert_eq!(p_form(&Quiver::extended_flower(2, 1), &dv(&[2, 1])).unwrap(), 6);
        assert_eq!(p_form(&Quiver::new(["x"]).unwrap(), &dv(&[1])).unwrap(), 0);
    }

    #[test]
    fn flower_p_formula() {
        for ell in 2..=4usize {
            let q = Quiver::flower(ell);
            for n in 1..=10i64 {
                assert_eq!(p_form(&q, &dv(&[n])).unwrap(), 1 + n * n * (ell as i64 - 1));
            }
        }
    }

    #[test]
    fn mismatched_lengths() {
        let q = a2();
        assert_eq!(
            tits_form(&q, &dv(&[1]), &dv(&[1, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn extend_flower() {
        let s = FramedSetting::flower(2, 2, 1).unwrap();
        let (q, v) = extend(&s).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.loops(0), 2);
        assert_eq!(q.edges_between(0, 1), 1);
        assert_eq!(q.arrows().len(), 3);
        let labeled = v.labeled(&q);
        assert_eq!(labeled["inf"], 1);
        assert_eq!(labeled["0"], 2);
        assert_eq!(q, Quiver::extended_flower(2, 1));
    }

    #[test]
    fn extend_without_framing_and_twice() {
        let s = FramedSetting::flower(1, 2, 0).unwrap();
        let (q, v) = extend(&s).unwrap();
        assert_eq!(q.edges_between(0, 1), 0);
        assert_eq!(v.as_slice(), &[1, 1]);
        let again = FramedSetting::new(q, dv(&[1, 1]), dv(&[0, 0])).unwrap();
        assert_eq!(extend(&again), Err(Error::AlreadyExtended(INF.into())));
    }

    #[test]
    fn root_examples() {
        let q = Quiver::extended_flower(2, 1);
        for n in 1..=6 {
            assert!(is_positive_root(&q, &dv(&[n, 0])).unwrap());
            assert!(is_positive_root(&q, &dv(&[n, 1])).unwrap());
        }
        assert!(is_positive_root(&q, &dv(&[0, 1])).unwrap());
        assert!(!is_positive_root(&q, &dv(&[0, 2])).unwrap());
        let single = Quiver::new(["x"]).unwrap();
        assert!(!is_positive_root(&single, &dv(&[2])).unwrap());
        assert!(is_positive_root(&a2(), &dv(&[1, 1])).unwrap());
        assert_eq!(is_positive_root(&a2(), &dv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn roots_below_examples() {
        let q = Quiver::extended_flower(2, 1);
        let got = positive_roots_below(&q, &dv(&[2, 1])).unwrap();
        let expect = vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1]), dv(&[2, 0]), dv(&[2, 1])];
        assert_eq!(got, expect);
        assert!(positive_roots_below(&q, &dv(&[0, 0])).unwrap().is_empty());
        let single = Quiver::new(["x"]).unwrap();
        assert_eq!(positive_roots_below(&single, &dv(&[3])).unwrap(), vec![dv(&[1])]);
    }

    #[test]
    fn genericity_examples() {
        let q = Quiver::flower(2);
        let zero = Character::zero(1);
        assert!(!is_generic(&q, &zero, &zero, &dv(&[2])).unwrap());
        let lam = Character::new(vec![Rational::from(1)]);
        assert!(is_generic(&q, &zero, &lam, &dv(&[2])).unwrap());
        let theta = Character::new(vec![Rational::from(1), Rational::from(-1)]);
        assert!(is_generic(&a2(), &theta, &Character::zero(2), &dv(&[1, 1])).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::extended_flower(2, 1);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"vertices":["0","inf"],"arrows":[["0","0"],["0","0"],["0","inf"]]}"#);
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let bad = r#"{"vertices":["0"],"arrows":[["0","1"]]}"#;
        assert!(serde_json::from_str::<Quiver>(bad).is_err());
        let map: BTreeMap<String, i64> = serde_json::from_str(r#"{"0":2,"inf":1}"#).unwrap();
        assert_eq!(DimVector::from_labeled(&q, &map).unwrap(), dv(&[2, 1]));
    }

    /// Ascent closure oracle: start from loop-free simple roots and from the
    /// fundamental set, then apply height-raising reflections up to `cap`.
    fn ascent_roots(q: &Quiver, cap: i64) -> BTreeSet<Vec<i64>> {
        let c = q.tits_matrix();
        let n = q.num_vertices();
        let pair = |b: &[i64], i: usize| -> i64 { (0..n).map(|j| c[i][j] * b[j]).sum() };
        let mut seeds = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seeds.push(e);
        }
        for_each_below(&vec![cap; n], |b| {
            let h: i64 = b.iter().sum();
            if h == 0 || h > cap || !q.support_connected(b) {
                return;
            }
            let fundamental = (0..n).all(|i| c[i][i] != 2 || b[i] == 0 || pair(b, i) <= 0);
            if fundamental {
                seeds.push(b.to_vec());
            }
        });
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = seeds.into_iter().collect();
        while let Some(b) = queue.pop_front() {
            if !found.insert(b.clone()) {
                continue;
            }
            for i in 0..n {
                if c[i][i] != 2 {
                    continue;
                }
                let p = pair(&b, i);
                if p < 0 {
                    let mut nb = b.clone();
                    nb[i] -= p;
                    if nb.iter().sum::<i64>() <= cap {
                        queue.push_back(nb);
                    }
                }
            }
        }
        found
    }

    fn random_quiver(n: usize, loops: &[usize], edges: &[usize]) -> Quiver {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut q = Quiver::new(labels).unwrap();
        for (i, &l) in loops.iter().enumerate().take(n) {
            for _ in 0..l {
                q.add_arrow_at(i, i);
            }
        }
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                for _ in 0..edges[k] {
                    q.add_arrow_at(i, j);
                }
                k += 1;
            }
        }
        q
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn form_symmetric_bilinear(
            loops in proptest::collection::vec(0usize..=2, 3),
            edges in proptest::collection::vec(0usize..=2, 3),
            a in proptest::collection::vec(0i64..=4, 3),
            b in proptest::collection::vec(0i64..=4, 3),
            c in proptest::collection::vec(0i64..=4, 3),
        ) {
            let q = random_quiver(3, &loops, &edges);
            let (a, b, c) = (dv(&a), dv(&b), dv(&c));
            let ab = tits_form(&q, &a, &b).unwrap();
            prop_assert_eq!(ab, tits_form(&q, &b, &a).unwrap());
            let lhs = tits_form(&q, &(&a + &b), &c).unwrap();
            prop_assert_eq!(lhs, tits_form(&q, &a, &c).unwrap() + tits_form(&q, &b, &c).unwrap());
            prop_assert_eq!(tits_form(&q, &a, &a).unwrap() % 2, 0);
        }

        #[test]
        fn roots_agree_with_ascent_oracle(
            n in 1usize..=3,
            loops in proptest::collection::vec(0usize..=2, 3),
            edges in proptest::collection::vec(0usize..=2, 3),
        ) {
            let q = random_quiver(n, &loops, &edges);
            let cap = 6;
            let oracle = ascent_roots(&q, cap);
            let c = q.tits_matrix();
            for_each_below(&vec![cap; n], |b| {
                let h: i64 = b.iter().sum();
                if h == 0 || h > cap {
                    return;
                }
                assert_eq!(root_walk(&q, &c, b), oracle.contains(b), "quiver {:?} beta {:?}", q, b);
            });
        }

        #[test]
        fn roots_below_contains_simples(
            loops in proptest::collection::vec(0usize..=2, 3),
            edges in proptest::collection::vec(0usize..=2, 3),
            bound in proptest::collection::vec(0i64..=3, 3),
        ) {
            let q = random_quiver(3, &loops, &edges);
            let bound = dv(&bound);
            let roots = positive_roots_below(&q, &bound).unwrap();
            for r in &roots {
                prop_assert!(r.le(&bound));
            }
            for i in 0..3 {
                if bound[i] >= 1 {
                    prop_assert!(roots.contains(&DimVector::unit(3, i)));
                }
            }
        }
    }
}
