use super::ordering::{pair_position, reduced_variable_names};
use super::sign::Sign;
use super::Arrangement;
use crate::error::{Error, Result};
use crate::polyhedra::{Constraint, Polyhedron};
use crate::rational::Rational;

/// The arrangement in the variables `h_ij` (`i < j`) and `q_i`, cut out by
/// `-Σ_j h_ij - q_i = λ` with `h_ji = -h_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedArrangement {
    n: usize,
    ell: usize,
    w: usize,
    lambda: Rational,
    vars: Vec<String>,
}

pub fn build_reduced(n: usize, ell: usize, w: usize, lambda: Rational) -> Result<ReducedArrangement> {
    if n < 2 || ell < 2 || w < 1 {
        return Err(Error::InvalidParameters(format!("n={n}, ell={ell}, w={w}")));
    }
    Ok(ReducedArrangement {
        n,
        ell,
        w,
        lambda,
        vars: reduced_variable_names(n),
    })
}

impl ReducedArrangement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn num_pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Dimension of the affine solution space of the equations.
    pub fn affine_dim(&self) -> usize {
        self.num_pairs()
    }

    /// Coefficient of each `h` variable in `q_i + λ`.
    fn q_coefficients(&self, i: usize) -> Vec<i64> {
        let mut c = vec![0; self.num_pairs()];
        for j in 0..self.n {
            if j > i {
                c[pair_position(self.n, i, j)] = -1;
            } else if j < i {
                c[pair_position(self.n, j, i)] = 1;
            }
        }
        c
    }

    /// The `n` equations over `(h.., q..)`.
    pub fn equations(&self) -> Vec<Constraint> {
        let m = self.num_pairs();
        (0..self.n)
            .map(|i| {
                let mut row: Vec<Rational> = self.q_coefficients(i).into_iter().map(Rational::from).collect();
                row.extend((0..self.n).map(|k| Rational::from(if k == i { -1 } else { 0 })));
                debug_assert_eq!(row.len(), m + self.n);
                Constraint::new(row, self.lambda.clone())
            })
            .collect()
    }

    /// The chamber over `(h.., q..)` with the equations kept.
    pub fn hq_polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron> {
        self.check(signs)?;
        let m = self.num_pairs();
        let dim = m + self.n;
        let mut p = Polyhedron::new(dim);
        for e in self.equations() {
            p.add_equality(e)?;
        }
        let h_thr = self.ell as i64 - 1;
        let w = self.w as i64;
        for (k, &s) in signs.iter().enumerate() {
            let mut c = vec![0; dim];
            let rhs = match (k < m, s) {
                (true, Sign::Plus) => {
                    c[k] = -1;
                    -h_thr
                }
                (true, Sign::Minus) => {
                    c[k] = 1;
                    -h_thr
                }
                (false, Sign::Plus) => {
                    c[k] = -1;
                    0
                }
                (false, Sign::Minus) => {
                    c[k] = 1;
                    -w
                }
            };
            p.add_inequality(Constraint::from_ints(&c, rhs))?;
        }
        Ok(p)
    }

    /// The chamber over the `h` variables only, with each `q_i` replaced by
    /// `-λ - Σ_{j>i} h_ij + Σ_{j<i} h_ji`.
    pub fn h_polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron> {
        self.check(signs)?;
        let m = self.num_pairs();
        let h_thr = Rational::from(self.ell as i64 - 1);
        let mut p = Polyhedron::new(m);
        for (k, &s) in signs[..m].iter().enumerate() {
            let mut c = vec![Rational::zero(); m];
            c[k] = Rational::from(if s == Sign::Plus { -1 } else { 1 });
            p.add_inequality(Constraint::new(c, -&h_thr))?;
        }
        for (i, &s) in signs[m..].iter().enumerate() {
            let c = self.q_coefficients(i);
            let row = match s {
                // q_i >= 0
                Sign::Plus => Constraint::new(c.iter().map(|&x| Rational::from(-x)).collect(), -&self.lambda),
                // q_i <= -w
                Sign::Minus => Constraint::new(
                    c.iter().map(|&x| Rational::from(x)).collect(),
                    &self.lambda - &Rational::from(self.w as i64),
                ),
            };
            p.add_inequality(row)?;
        }
        Ok(p)
    }

    /// `q` values determined by `h`.
    pub fn q_values(&self, h: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                let c = self.q_coefficients(i);
                let s: Rational = c.iter().zip(h).map(|(&a, x)| &Rational::from(a) * x).sum();
                s - &self.lambda
            })
            .collect()
    }

    fn check(&self, signs: &[Sign]) -> Result<()> {
        if signs.len() == self.vars.len() {
            Ok(())
        } else {
            Err(Error::SignLength {
                expected: self.vars.len(),
                found: signs.len(),
            })
        }
    }
}

impl Arrangement for ReducedArrangement {
    fn lambda(&self) -> &Rational {
        &self.lambda
    }

    fn sign_variables(&self) -> &[String] {
        if self.lambda.is_integer() {
            &self.vars
        } else {
            &[]
        }
    }

    fn framing_positions(&self) -> Vec<usize> {
        (self.num_pairs()..self.vars.len()).collect()
    }

    fn classifiable(&self) -> bool {
        self.lambda.is_integer()
    }

    fn working_polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron> {
        self.h_polyhedron(signs)
    }

    fn report_point(&self, x: &[i64]) -> Vec<i64> {
        let lambda = self.lambda.to_i64().expect("integral parameter");
        let mut out = x.to_vec();
        for i in 0..self.n {
            let c = self.q_coefficients(i);
            out.push(c.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() - lambda);
        }
        out
    }

    fn cone_key(&self) -> String {
        format!("reduced/{}", self.n)
    }
}
