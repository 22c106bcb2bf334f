//! Exact polyhedra `{E x = f, A x <= b}` over the rationals: Fourier–Motzkin
//! projection, an exact simplex, boundedness tests and lattice points.

mod fm;
mod lattice;
mod simplex;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

pub use fm::{fm_eliminate, fm_is_bounded, fm_is_feasible, trace_elimination, TraceStep};
pub use lattice::lattice_points;
pub use simplex::{simplex_is_bounded, simplex_is_feasible, solve_lp, LpOutcome};

/// One linear row `coeffs . x (= or <=) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs }
    }

    pub fn from_ints(coeffs: &[i64], rhs: i64) -> Self {
        Constraint {
            coeffs: coeffs.iter().map(|&c| Rational::from(c)).collect(),
            rhs: Rational::from(rhs),
        }
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }
}

/// `{x : E x = f, A x <= b}` in `num_vars` rational unknowns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPolyhedron")]
pub struct Polyhedron {
    pub num_vars: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

#[derive(Deserialize)]
struct RawPolyhedron {
    num_vars: usize,
    #[serde(default)]
    equalities: Vec<Constraint>,
    #[serde(default)]
    inequalities: Vec<Constraint>,
}

impl TryFrom<RawPolyhedron> for Polyhedron {
    type Error = Error;
    fn try_from(raw: RawPolyhedron) -> Result<Self> {
        let mut p = Polyhedron::new(raw.num_vars);
        for e in raw.equalities {
            p.add_equality(e)?;
        }
        for a in raw.inequalities {
            p.add_inequality(a)?;
        }
        Ok(p)
    }
}

/// Verdict on a polyhedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Empty,
    Bounded,
    Unbounded,
}

/// Which decision procedure answers feasibility and boundedness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    FourierMotzkin,
    #[default]
    Simplex,
    /// Run both and fail with [`Error::EngineMismatch`] on disagreement.
    Verified,
}

impl Polyhedron {
    pub fn new(num_vars: usize) -> Self {
        Polyhedron {
            num_vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    fn check(&self, c: &Constraint) -> Result<()> {
        if c.coeffs.len() == self.num_vars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: c.coeffs.len(),
            })
        }
    }

    pub fn add_equality(&mut self, c: Constraint) -> Result<()> {
        self.check(&c)?;
        self.equalities.push(c);
        Ok(())
    }

    pub fn add_inequality(&mut self, c: Constraint) -> Result<()> {
        self.check(&c)?;
        self.inequalities.push(c);
        Ok(())
    }

    pub fn num_rows(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && self.equalities.iter().all(|c| dot(&c.coeffs, x) == c.rhs)
            && self.inequalities.iter().all(|c| dot(&c.coeffs, x) <= c.rhs)
    }

    /// `{E d = 0, A d <= 0}`.
    pub fn recession_cone(&self) -> Polyhedron {
        let zero = |c: &Constraint| Constraint::new(c.coeffs.clone(), Rational::zero());
        Polyhedron {
            num_vars: self.num_vars,
            equalities: self.equalities.iter().map(zero).collect(),
            inequalities: self.inequalities.iter().map(zero).collect(),
        }
    }

    /// Fixes variable `var` to `value` and drops its column.
    pub fn substitute(&self, var: usize, value: &Rational) -> Polyhedron {
        let sub = |c: &Constraint| {
            let mut coeffs = c.coeffs.clone();
            let a = coeffs.remove(var);
            Constraint::new(coeffs, &c.rhs - &a * value)
        };
        Polyhedron {
            num_vars: self.num_vars - 1,
            equalities: self.equalities.iter().map(sub).collect(),
            inequalities: self.inequalities.iter().map(sub).collect(),
        }
    }

    pub fn is_feasible(&self) -> bool {
        fm_is_feasible(self)
    }

    /// Boundedness of a feasible polyhedron; `true` on empty input.
    pub fn is_bounded(&self) -> bool {
        fm_is_bounded(self)
    }

    pub fn is_feasible_with(&self, engine: Engine) -> Result<bool> {
        match engine {
            Engine::FourierMotzkin => Ok(fm_is_feasible(self)),
            Engine::Simplex => Ok(simplex_is_feasible(self)),
            Engine::Verified => {
                let (a, b) = (fm_is_feasible(self), simplex_is_feasible(self));
                if a == b {
                    Ok(a)
                } else {
                    Err(Error::EngineMismatch(format!("feasibility: elimination {a}, simplex {b}")))
                }
            }
        }
    }

    pub fn is_bounded_with(&self, engine: Engine) -> Result<bool> {
        match engine {
            Engine::FourierMotzkin => Ok(fm_is_bounded(self)),
            Engine::Simplex => Ok(simplex_is_bounded(self)),
            Engine::Verified => {
                let (a, b) = (fm_is_bounded(self), simplex_is_bounded(self));
                if a == b {
                    Ok(a)
                } else {
                    Err(Error::EngineMismatch(format!("boundedness: elimination {a}, simplex {b}")))
                }
            }
        }
    }

    pub fn status(&self, engine: Engine) -> Result<Status> {
        if !self.is_feasible_with(engine)? {
            Ok(Status::Empty)
        } else if self.is_bounded_with(engine)? {
            Ok(Status::Bounded)
        } else {
            Ok(Status::Unbounded)
        }
    }
}

/// A random small system with integer data: up to `max_vars` unknowns and
/// `max_rows` rows, a few of them equalities.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, max_vars: usize, max_rows: usize) -> Polyhedron {
    let n = rng.random_range(1..=max_vars);
    let rows = rng.random_range(0..=max_rows);
    let eqs = if rows > 0 { rng.random_range(0..=rows.min(2)) } else { 0 };
    let mut p = Polyhedron::new(n);
    for r in 0..rows {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
        let rhs = rng.random_range(-6..=6);
        let c = Constraint::from_ints(&coeffs, rhs);
        if r < eqs {
            p.equalities.push(c);
        } else {
            p.inequalities.push(c);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn ineqs(n: usize, rows: &[(&[i64], i64)]) -> Polyhedron {
        let mut p = Polyhedron::new(n);
        for (c, b) in rows {
            p.add_inequality(Constraint::from_ints(c, *b)).unwrap();
        }
        p
    }

    #[test]
    fn simple_verdicts() {
        let empty = ineqs(1, &[(&[1], 0), (&[-1], -1)]);
        let free = Polyhedron::new(3);
        let square = ineqs(2, &[(&[1, 0], 1), (&[-1, 0], 0), (&[0, 1], 1), (&[0, -1], 0)]);
        let ray = ineqs(1, &[(&[-1], 0)]);
        for engine in [Engine::FourierMotzkin, Engine::Simplex, Engine::Verified] {
            assert_eq!(empty.status(engine).unwrap(), Status::Empty);
            assert_eq!(free.status(engine).unwrap(), Status::Unbounded);
            assert_eq!(square.status(engine).unwrap(), Status::Bounded);
            assert_eq!(ray.status(engine).unwrap(), Status::Unbounded);
            assert!(empty.is_bounded_with(engine).unwrap());
        }
    }

    #[test]
    fn reduced_chamber_example() {
        // n = 2, l = 2, w = 1, lambda = 2 over (h12, q1, q2):
        // -h12 - q1 = 2, h12 - q2 = 2, h12 >= 1, q1 <= -1, q2 <= -1.
        let mut p = Polyhedron::new(3);
        p.add_equality(Constraint::from_ints(&[-1, -1, 0], 2)).unwrap();
        p.add_equality(Constraint::from_ints(&[1, 0, -1], 2)).unwrap();
        p.add_inequality(Constraint::from_ints(&[-1, 0, 0], -1)).unwrap();
        p.add_inequality(Constraint::from_ints(&[0, 1, 0], -1)).unwrap();
        p.add_inequality(Constraint::from_ints(&[0, 0, 1], -1)).unwrap();
        let point: Vec<Rational> = [1, -3, -1].iter().map(|&x| Rational::from(x)).collect();
        assert!(p.contains(&point));
        assert_eq!(p.status(Engine::Verified).unwrap(), Status::Bounded);
        assert_eq!(lattice_points(&p).unwrap(), vec![vec![1, -3, -1]]);
    }

    #[test]
    fn json_round_trip() {
        let mut p = ineqs(2, &[(&[1, 2], 3)]);
        p.add_equality(Constraint::new(vec![Rational::new(1, 2), Rational::from(-1)], Rational::new(-7, 3)))
            .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"1/2\"") && s.contains("\"-7/3\""));
        let back: Polyhedron = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"num_vars":2,"inequalities":[{"coeffs":["1"],"rhs":"0"}]}"#;
        assert!(serde_json::from_str::<Polyhedron>(bad).is_err());
    }

    #[test]
    fn engines_agree_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let p = random_system(&mut rng, 5, 10);
            assert!(p.status(Engine::Verified).is_ok(), "{p:?}");
        }
    }
}
