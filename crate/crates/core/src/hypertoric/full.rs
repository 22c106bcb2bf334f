use super::ordering::reduced_variable_names;
use super::sign::{Sign, SignVector};
use super::{Arrangement, Chamber};
use crate::error::{Error, Result};
use crate::polyhedra::{Constraint, Polyhedron, Status};
use crate::rational::Rational;
use crate::strata::SliceQuiverData;

/// What a variable of the full arrangement stands for. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrangementVar {
    /// The `k`-th arrow from `tail` to `head`.
    Arrow { tail: usize, head: usize, k: usize },
    /// The `m`-th framing arrow at `vertex`.
    Framing { vertex: usize, m: usize },
}

impl ArrangementVar {
    pub fn name(&self) -> String {
        match *self {
            ArrangementVar::Arrow { tail, head, k } => format!("v{}_{}^{}", tail + 1, head + 1, k + 1),
            ArrangementVar::Framing { vertex, m } => format!("q{}^{}", vertex + 1, m + 1),
        }
    }
}

/// One variable `h_a` per arrow of the slice quiver (loops dropped) and per
/// framing arrow, with one moment-map equation per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullArrangement {
    n: usize,
    lambda: Rational,
    vars: Vec<ArrangementVar>,
    names: Vec<String>,
    integral: Vec<bool>,
}

pub fn build_full(slice: &SliceQuiverData, lambda: Rational) -> Result<FullArrangement> {
    if !slice.minimal_leaf || slice.v.as_slice().iter().any(|&x| x != 1) {
        return Err(Error::NotMinimalSlice(format!("dimension vector {:?}", slice.v.as_slice())));
    }
    let n = slice.quiver.num_vertices();
    let mut vars = Vec::new();
    let mut count = vec![vec![0usize; n]; n];
    for &(t, h) in slice.quiver.arrows() {
        if t == h {
            continue;
        }
        vars.push(ArrangementVar::Arrow { tail: t, head: h, k: count[t][h] });
        count[t][h] += 1;
    }
    for (vertex, &wi) in slice.w.as_slice().iter().enumerate() {
        for m in 0..wi as usize {
            vars.push(ArrangementVar::Framing { vertex, m });
        }
    }
    vars.sort();
    let names = vars.iter().map(ArrangementVar::name).collect();
    let integral = vec![lambda.is_integer(); vars.len()];
    Ok(FullArrangement {
        n,
        lambda,
        vars,
        names,
        integral,
    })
}

impl FullArrangement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variables(&self) -> &[ArrangementVar] {
        &self.vars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn integral(&self) -> &[bool] {
        &self.integral
    }

    /// Row `i`: `+1` on arrows into `i`, `-1` on arrows out of `i` and on the
    /// framings at `i`; right-hand side `λ`.
    pub fn equations(&self) -> Vec<Constraint> {
        (0..self.n)
            .map(|i| {
                let row = self
                    .vars
                    .iter()
                    .map(|v| {
                        Rational::from(match *v {
                            ArrangementVar::Arrow { head, .. } if head == i => 1,
                            ArrangementVar::Arrow { tail, .. } if tail == i => -1,
                            ArrangementVar::Framing { vertex, .. } if vertex == i => -1,
                            _ => 0,
                        })
                    })
                    .collect();
                Constraint::new(row, self.lambda.clone())
            })
            .collect()
    }

    /// Equations plus `h_a >= 0` for `+` and `h_a <= -1` for `-` on each
    /// integral variable.
    pub fn polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron> {
        let integral: Vec<usize> = (0..self.vars.len()).filter(|&k| self.integral[k]).collect();
        if signs.len() != integral.len() {
            return Err(Error::SignLength {
                expected: integral.len(),
                found: signs.len(),
            });
        }
        let d = self.vars.len();
        let mut p = Polyhedron::new(d);
        for e in self.equations() {
            p.add_equality(e)?;
        }
        for (&k, &s) in integral.iter().zip(signs) {
            let mut c = vec![0; d];
            let rhs = match s {
                Sign::Plus => {
                    c[k] = -1;
                    0
                }
                Sign::Minus => {
                    c[k] = 1;
                    -1
                }
            };
            p.add_inequality(Constraint::from_ints(&c, rhs))?;
        }
        Ok(p)
    }

    /// Reduced coordinates `(h_ij for i < j, q_i)` of a point:
    /// `h_ij = Σ_k (h_{v_ij^k} - h_{v_ji^k})`, `q_i = Σ_m h_{q_i^m}`.
    pub fn reduced_point(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut h = vec![vec![Rational::zero(); n]; n];
        let mut q = vec![Rational::zero(); n];
        for (v, val) in self.vars.iter().zip(x) {
            match *v {
                ArrangementVar::Arrow { tail, head, .. } => {
                    h[tail][head] += val;
                    h[head][tail] -= val;
                }
                ArrangementVar::Framing { vertex, .. } => q[vertex] += val,
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push(h[i][j].clone());
            }
        }
        out.extend(q);
        out
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.vars
            .iter()
            .filter(|v| matches!(**v, ArrangementVar::Arrow { tail, head, .. } if tail == i && head == j))
            .count()
    }

    pub fn framing_at(&self, i: usize) -> usize {
        self.vars
            .iter()
            .filter(|v| matches!(**v, ArrangementVar::Framing { vertex, .. } if vertex == i))
            .count()
    }
}

impl Arrangement for FullArrangement {
    fn lambda(&self) -> &Rational {
        &self.lambda
    }

    fn sign_variables(&self) -> &[String] {
        if self.integral.iter().all(|&b| b) {
            &self.names
        } else {
            &[]
        }
    }

    fn framing_positions(&self) -> Vec<usize> {
        if !self.integral.iter().all(|&b| b) {
            return Vec::new();
        }
        (0..self.vars.len())
            .filter(|&k| matches!(self.vars[k], ArrangementVar::Framing { .. }))
            .collect()
    }

    fn classifiable(&self) -> bool {
        true
    }

    fn working_polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron> {
        self.polyhedron(signs)
    }

    fn report_point(&self, x: &[i64]) -> Vec<i64> {
        x.to_vec()
    }

    fn cone_key(&self) -> String {
        format!("full/{}", self.names.join(","))
    }
}

/// Reduced sign vector of a bounded full chamber: `h_ij` takes the sign of
/// `v_ij^1` and `q_i` the sign of `q_i^1`.
pub fn reduce_chamber(chamber: &Chamber) -> Result<SignVector> {
    if chamber.status != Status::Bounded || chamber.lattice.as_ref().is_some_and(Vec::is_empty) {
        return Err(Error::NotBoundedChamber);
    }
    let alpha = &chamber.sign;
    let n = alpha.vars().iter().filter(|v| v.starts_with('q') && v.ends_with("^1")).count();
    if n == 0 {
        return Err(Error::NotBoundedChamber);
    }
    let mut signs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            signs.push(alpha.get(&format!("v{i}_{j}^1")).ok_or(Error::NotBoundedChamber)?);
        }
    }
    for i in 1..=n {
        signs.push(alpha.get(&format!("q{i}^1")).ok_or(Error::NotBoundedChamber)?);
    }
    SignVector::new(reduced_variable_names(n), signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::Quiver;
    use crate::strata::{slice_quiver, FlowerLeafSpec};

    pub(crate) fn minimal_slice(n: u32, ell: u32, w: u32) -> SliceQuiverData {
        let spec = FlowerLeafSpec::minimal(n, ell, w).unwrap();
        let q = Quiver::extended_flower(ell as usize, w as usize);
        slice_quiver(&q, &spec.rep_type()).unwrap().without_loops().unwrap()
    }

    #[test]
    fn n2_l2_w1_shape() {
        let a = build_full(&minimal_slice(2, 2, 1), Rational::from(2)).unwrap();
        assert_eq!(a.variables().len(), 4);
        assert_eq!(a.names(), ["v1_2^1", "v2_1^1", "q1^1", "q2^1"]);
        assert_eq!(a.equations().len(), 2);
        assert_eq!(a.sign_variables().len(), 4);
    }

    #[test]
    fn framing_coefficients() {
        let a = build_full(&minimal_slice(3, 3, 2), Rational::from(1)).unwrap();
        for (i, e) in a.equations().iter().enumerate() {
            for (v, c) in a.variables().iter().zip(&e.coeffs) {
                if let ArrangementVar::Framing { vertex, .. } = *v {
                    let expect = if vertex == i { -1 } else { 0 };
                    assert_eq!(*c, Rational::from(expect));
                }
            }
            assert_eq!(e.rhs, Rational::from(1));
        }
        assert_eq!(a.arrows_between(0, 1), 2);
        assert_eq!(a.framing_at(2), 2);
    }

    /// Pairing each equation with `η` reproduces `Σ (η_head - η_tail) h_a -
    /// Σ η_i h_{q_i}`: every arrow column sums to zero, every framing column
    /// to `-1`.
    #[test]
    fn column_sums() {
        let a = build_full(&minimal_slice(3, 2, 2), Rational::from(0)).unwrap();
        let eqs = a.equations();
        for (k, v) in a.variables().iter().enumerate() {
            let s: Rational = eqs.iter().map(|e| e.coeffs[k].clone()).sum();
            let expect = if matches!(v, ArrangementVar::Arrow { .. }) { 0 } else { -1 };
            assert_eq!(s, Rational::from(expect));
        }
    }

    #[test]
    fn non_integral_parameter() {
        let a = build_full(&minimal_slice(2, 2, 1), Rational::new(1, 3)).unwrap();
        assert!(a.sign_variables().is_empty());
        assert!(a.integral().iter().all(|&b| !b));
    }

    #[test]
    fn rejects_non_minimal_slice() {
        let spec = FlowerLeafSpec::new(2, 2, 1, 0, vec![(2, 1)]).unwrap();
        let q = Quiver::extended_flower(2, 1);
        let s = slice_quiver(&q, &spec.rep_type()).unwrap();
        assert!(matches!(build_full(&s, Rational::from(1)), Err(Error::NotMinimalSlice(_))));
    }

    #[test]
    fn reduced_point_satisfies_reduced_equations() {
        let a = build_full(&minimal_slice(3, 2, 1), Rational::from(4)).unwrap();
        let r = super::super::build_reduced(3, 2, 1, Rational::from(4)).unwrap();
        // Any solution of the full equations: solve by LP.
        let p = a.polyhedron(&[Sign::Plus; 9]).unwrap();
        if let crate::polyhedra::LpOutcome::Optimal { point, .. } =
            crate::polyhedra::solve_lp(&Polyhedron { inequalities: vec![], ..p }, &vec![Rational::zero(); 9])
        {
            let y = a.reduced_point(&point);
            for e in r.equations() {
                assert_eq!(crate::rational::dot(&e.coeffs, &y), e.rhs);
            }
        } else {
            panic!("equations alone must be feasible");
        }
    }
}
