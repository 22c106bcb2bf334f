//! Sign-vector chambers of the arrangements attached to the minimal slice,
//! the chamber counts, and the chamber/ordering correspondence.

mod full;
mod ordering;
mod reduced;
mod sign;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedra::{lattice_points, Engine, Polyhedron, Status};
use crate::rational::Rational;

pub use full::{build_full, reduce_chamber, ArrangementVar, FullArrangement};
pub use ordering::{chamber_to_ordering, reduced_variable_names, sn_act, Permutation};
pub use reduced::{build_reduced, ReducedArrangement};
pub use sign::{Sign, SignVector};

/// Common surface of the full and reduced arrangements.
pub trait Arrangement: Sync {
    fn lambda(&self) -> &Rational;
    /// Integral variables, in canonical order. Empty off the integral orbit.
    fn sign_variables(&self) -> &[String];
    /// Positions of framing variables inside `sign_variables`.
    fn framing_positions(&self) -> Vec<usize>;
    /// Whether enumeration runs at all for this parameter.
    fn classifiable(&self) -> bool;
    /// The chamber in the coordinates enumeration works in.
    fn working_polyhedron(&self, signs: &[Sign]) -> Result<Polyhedron>;
    /// Maps an integer point of the working polyhedron to reported coordinates.
    fn report_point(&self, x: &[i64]) -> Vec<i64>;
    /// Arrangements with equal keys have equal recession cones per sign vector.
    fn cone_key(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub sign: SignVector,
    pub status: Status,
    /// Integer points, when requested and the chamber is bounded.
    pub lattice: Option<Vec<Vec<i64>>>,
}

type ConeKey = (String, Engine, Vec<Sign>);

/// Cached recession-cone verdicts shared across parameter values.
#[derive(Debug, Default)]
pub struct ConeCache {
    map: Mutex<HashMap<ConeKey, bool>>,
}

impl ConeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cone_is_trivial<A: Arrangement + ?Sized>(&self, arr: &A, engine: Engine, signs: &[Sign]) -> Result<bool> {
        let key = (arr.cone_key(), engine, signs.to_vec());
        if let Some(&v) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = arr.working_polyhedron(signs)?.recession_cone().is_bounded_with(engine)?;
        self.map.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub engine: Engine,
    /// Skip sign vectors whose framing signs contradict the `λ >= 1` / `λ <= 0`
    /// dichotomy. Requires `verify`.
    pub prune: bool,
    /// Re-run the pruned enumeration by brute force and compare.
    pub verify: bool,
    pub lattice: bool,
    pub cache: Arc<ConeCache>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            engine: Engine::Simplex,
            prune: false,
            verify: false,
            lattice: true,
            cache: Arc::new(ConeCache::new()),
        }
    }
}

const MAX_SIGN_VARIABLES: usize = 24;

/// Status of one chamber, with lattice points when bounded.
pub fn chamber_status<A: Arrangement + ?Sized>(arr: &A, alpha: &SignVector, engine: Engine) -> Result<Chamber> {
    if alpha.vars() != arr.sign_variables() {
        return Err(Error::SignLength {
            expected: arr.sign_variables().len(),
            found: alpha.len(),
        });
    }
    let p = arr.working_polyhedron(alpha.signs())?;
    let status = p.status(engine)?;
    let lattice = match status {
        Status::Bounded => Some(lattice_points(&p)?.iter().map(|x| arr.report_point(x)).collect()),
        _ => None,
    };
    Ok(Chamber {
        sign: alpha.clone(),
        status,
        lattice,
    })
}

/// Every bounded nonempty chamber, in lexicographic sign order.
pub fn enumerate_bounded<A: Arrangement + ?Sized>(arr: &A, opts: &EnumerationOptions) -> Result<Vec<Chamber>> {
    if opts.prune && !opts.verify {
        return Err(Error::InvalidParameters("pruning requires verification".into()));
    }
    if !arr.classifiable() {
        return Ok(Vec::new());
    }
    let found = scan(arr, opts, opts.prune)?;
    if opts.prune {
        let brute = scan(arr, opts, false)?;
        if brute != found {
            return Err(Error::EngineMismatch(format!(
                "pruned enumeration found {} chambers, brute force {}",
                found.len(),
                brute.len()
            )));
        }
    }
    Ok(found)
}

fn scan<A: Arrangement + ?Sized>(arr: &A, opts: &EnumerationOptions, prune: bool) -> Result<Vec<Chamber>> {
    let vars = arr.sign_variables();
    if vars.len() > MAX_SIGN_VARIABLES {
        return Err(Error::InvalidParameters(format!("{} sign variables", vars.len())));
    }
    let framings = arr.framing_positions();
    let lambda = arr.lambda();
    let forced = if !prune {
        None
    } else if lambda >= &Rational::one() {
        Some(Sign::Minus)
    } else if !lambda.is_positive() {
        Some(Sign::Plus)
    } else {
        None
    };
    let total = 1u64 << vars.len();
    let out: Vec<Option<Chamber>> = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<Option<Chamber>> {
            let alpha = SignVector::from_index(vars, idx);
            if let Some(s) = forced {
                if framings.iter().any(|&k| alpha.signs()[k] != s) {
                    return Ok(None);
                }
            }
            if !opts.cache.cone_is_trivial(arr, opts.engine, alpha.signs())? {
                return Ok(None);
            }
            let p = arr.working_polyhedron(alpha.signs())?;
            if !p.is_feasible_with(opts.engine)? {
                return Ok(None);
            }
            let lattice = if opts.lattice {
                Some(lattice_points(&p)?.iter().map(|x| arr.report_point(x)).collect())
            } else {
                None
            };
            Ok(Some(Chamber {
                sign: alpha,
                status: Status::Bounded,
                lattice,
            }))
        })
        .collect::<Result<_>>()?;
    let chambers: Vec<Chamber> = out.into_iter().flatten().collect();
    log::debug!("{} of {} sign vectors bounded (prune {prune})", chambers.len(), total);
    Ok(chambers)
}

/// `n!` when `λ` is an integer with `λ >= (n-1)(ℓ-1) + w` or
/// `λ <= -(n-1)(ℓ-1)`, otherwise `0`. Requires `n <= 20`.
pub fn reference_count(n: u64, ell: u64, w: u64, lambda: &Rational) -> u64 {
    assert!(n <= 20, "n! overflows u64 beyond n = 20");
    if !lambda.is_integer() || ell == 0 {
        return 0;
    }
    let span = (n.saturating_sub(1) * (ell - 1)) as i64;
    let upper = Rational::from(span + w as i64);
    let lower = Rational::from(-span);
    if lambda >= &upper || lambda <= &lower {
        (1..=n).product()
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub signs: BTreeMap<String, Sign>,
    pub ordering: Permutation,
    pub lattice_points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub ell: usize,
    pub w: usize,
    pub lambda: Rational,
    pub count: u64,
    pub expected: u64,
    pub chambers: Vec<ChamberReport>,
}

impl ClassificationReport {
    pub fn matches(&self) -> bool {
        self.count == self.expected
    }
}

/// Reduced arrangement, bounded chambers, their orderings, and the closed-form
/// count for comparison.
pub fn classify(n: usize, ell: usize, w: usize, lambda: &Rational, opts: &EnumerationOptions) -> Result<ClassificationReport> {
    let arr = build_reduced(n, ell, w, lambda.clone())?;
    let chambers = enumerate_bounded(&arr, opts)?;
    let mut reports = Vec::with_capacity(chambers.len());
    for c in &chambers {
        reports.push(ChamberReport {
            signs: c.sign.to_map(),
            ordering: chamber_to_ordering(&c.sign, n)?,
            lattice_points: c.lattice.clone().unwrap_or_default(),
        });
    }
    Ok(ClassificationReport {
        n,
        ell,
        w,
        lambda: lambda.clone(),
        count: chambers.len() as u64,
        expected: reference_count(n as u64, ell as u64, w as u64, lambda),
        chambers: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootlat::Quiver;
    use crate::strata::{slice_quiver, FlowerLeafSpec};
    use proptest::prelude::*;
    use Sign::{Minus as M, Plus as P};

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    fn count(n: usize, ell: usize, w: usize, lambda: &Rational, opts: &EnumerationOptions) -> usize {
        enumerate_bounded(&build_reduced(n, ell, w, lambda.clone()).unwrap(), opts).unwrap().len()
    }

    fn full(n: u32, ell: u32, w: u32, lambda: i64) -> FullArrangement {
        let spec = FlowerLeafSpec::minimal(n, ell, w).unwrap();
        let quiver = Quiver::extended_flower(ell as usize, w as usize);
        let slice = slice_quiver(&quiver, &spec.rep_type()).unwrap().without_loops().unwrap();
        build_full(&slice, q(lambda)).unwrap()
    }

    #[test]
    fn n2_chamber_examples() {
        let a = build_reduced(2, 2, 1, q(2)).unwrap();
        let vars = a.sign_variables().to_vec();
        let c = chamber_status(&a, &SignVector::new(vars.clone(), vec![P, M, M]).unwrap(), Engine::Verified).unwrap();
        assert_eq!(c.status, Status::Bounded);
        assert_eq!(c.lattice, Some(vec![vec![1, -3, -1]]));
        let c = chamber_status(&a, &SignVector::new(vars, vec![P, P, M]).unwrap(), Engine::Verified).unwrap();
        assert_ne!(c.status, Status::Bounded);

        let a = build_reduced(2, 2, 1, q(0)).unwrap();
        let alpha = SignVector::new(a.sign_variables().to_vec(), vec![P, P, P]).unwrap();
        assert_ne!(chamber_status(&a, &alpha, Engine::Verified).unwrap().status, Status::Bounded);
    }

    #[test]
    fn count_examples() {
        let o = EnumerationOptions::default();
        assert_eq!(count(2, 2, 1, &q(2), &o), 2);
        assert_eq!(count(3, 2, 1, &q(1), &o), 0);
        assert_eq!(count(2, 2, 1, &q(-1), &o), 2);
        assert_eq!(count(2, 2, 1, &Rational::new(1, 2), &o), 0);
        let sv: Vec<Vec<Sign>> = enumerate_bounded(&build_reduced(2, 2, 1, q(2)).unwrap(), &o)
            .unwrap()
            .into_iter()
            .map(|c| c.sign.signs().to_vec())
            .collect();
        assert_eq!(sv, vec![vec![P, M, M], vec![M, M, M]]);
    }

    #[test]
    fn reference_count_examples() {
        assert_eq!(reference_count(4, 3, 2, &q(8)), 24);
        assert_eq!(reference_count(4, 3, 2, &q(7)), 0);
        assert_eq!(reference_count(4, 3, 2, &q(-6)), 24);
        assert_eq!(reference_count(4, 3, 2, &q(-5)), 0);
        assert_eq!(reference_count(2, 2, 1, &Rational::new(1, 2)), 0);
    }

    #[test]
    fn engines_and_pruning_agree() {
        let base = EnumerationOptions { lattice: false, ..Default::default() };
        for lambda in -4..=6 {
            let lam = q(lambda);
            let a = build_reduced(3, 2, 2, lam.clone()).unwrap();
            let reference = enumerate_bounded(&a, &base).unwrap();
            for opts in [
                EnumerationOptions { engine: Engine::FourierMotzkin, ..base.clone() },
                EnumerationOptions { engine: Engine::Verified, ..base.clone() },
                EnumerationOptions { prune: true, verify: true, ..base.clone() },
            ] {
                assert_eq!(enumerate_bounded(&a, &opts).unwrap(), reference, "lambda {lambda}");
            }
        }
        let bad = EnumerationOptions { prune: true, ..base };
        assert!(enumerate_bounded(&build_reduced(2, 2, 1, q(1)).unwrap(), &bad).is_err());
    }

    #[test]
    fn counts_match_reference_small() {
        let o = EnumerationOptions { lattice: false, ..Default::default() };
        for (n, ell, w) in [(2, 2, 1), (2, 3, 2), (3, 2, 1), (3, 3, 2)] {
            let span = ((n - 1) * (ell - 1)) as i64;
            for lambda in -span - 2..=span + w as i64 + 2 {
                let lam = q(lambda);
                assert_eq!(
                    count(n, ell, w, &lam, &o) as u64,
                    reference_count(n as u64, ell as u64, w as u64, &lam),
                    "n={n} l={ell} w={w} lambda={lambda}"
                );
            }
        }
    }

    #[test]
    fn framing_signs_follow_parameter_sign() {
        let o = EnumerationOptions::default();
        for lambda in [-3, -2, 0, 4, 5] {
            for c in enumerate_bounded(&build_reduced(3, 2, 1, q(lambda)).unwrap(), &o).unwrap() {
                let want = if lambda >= 1 { M } else { P };
                assert!(c.sign.signs()[3..].iter().all(|&s| s == want));
                assert!(!c.lattice.unwrap().is_empty());
            }
        }
    }

    #[test]
    fn full_matches_reduced_n2() {
        let o = EnumerationOptions::default();
        let f = full(2, 2, 1, 2);
        let fc = enumerate_bounded(&f, &o).unwrap();
        let rc = enumerate_bounded(&build_reduced(2, 2, 1, q(2)).unwrap(), &o).unwrap();
        assert_eq!(fc.len(), 2);
        let mut images: Vec<SignVector> = fc.iter().map(|c| reduce_chamber(c).unwrap()).collect();
        images.sort();
        let mut targets: Vec<SignVector> = rc.iter().map(|c| c.sign.clone()).collect();
        targets.sort();
        assert_eq!(images, targets);
    }

    #[test]
    fn full_witness_meets_reduced_thresholds() {
        // A bounded full chamber's points satisfy h_ij >= l - 1 on + pairs.
        let ell = 3;
        let f = full(2, ell, 1, 4);
        for c in enumerate_bounded(&f, &EnumerationOptions::default()).unwrap() {
            let red = reduce_chamber(&c).unwrap();
            for pt in c.lattice.unwrap() {
                let x: Vec<Rational> = pt.iter().map(|&v| q(v)).collect();
                let y = f.reduced_point(&x);
                match red.signs()[0] {
                    P => assert!(y[0] >= q(ell as i64 - 1)),
                    M => assert!(y[0] <= q(1 - ell as i64)),
                }
            }
        }
    }

    #[test]
    fn reduce_rejects_unbounded() {
        let f = full(2, 2, 1, 2);
        let alpha = SignVector::from_index(f.sign_variables(), 0);
        let c = chamber_status(&f, &alpha, Engine::Simplex).unwrap();
        assert_ne!(c.status, Status::Bounded);
        assert_eq!(reduce_chamber(&c), Err(Error::NotBoundedChamber));
    }

    #[test]
    fn non_integral_full_has_no_bounded_chambers() {
        let spec = FlowerLeafSpec::minimal(2, 2, 1).unwrap();
        let quiver = Quiver::extended_flower(2, 1);
        let slice = slice_quiver(&quiver, &spec.rep_type()).unwrap().without_loops().unwrap();
        let f = build_full(&slice, Rational::new(3, 2)).unwrap();
        assert!(enumerate_bounded(&f, &EnumerationOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn classify_report() {
        let r = classify(2, 2, 1, &q(2), &EnumerationOptions::default()).unwrap();
        assert!(r.matches());
        let orders: Vec<Vec<usize>> = r.chambers.iter().map(|c| c.ordering.one_based()).collect();
        assert_eq!(orders, vec![vec![1, 2], vec![2, 1]]);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""lambda":"2""#));
        let back: ClassificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn cone_cache_is_reused() {
        let o = EnumerationOptions { lattice: false, ..Default::default() };
        count(3, 2, 1, &q(3), &o);
        let after_first = o.cache.len();
        assert_eq!(after_first, 64);
        count(3, 3, 2, &q(-7), &o);
        assert_eq!(o.cache.len(), after_first);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn non_integral_parameters_give_nothing(num in -40i64..40, den in 2i64..6, n in 2usize..4) {
            let lam = Rational::new(num, den);
            prop_assume!(!lam.is_integer());
            prop_assert_eq!(count(n, 2, 1, &lam, &EnumerationOptions::default()), 0);
            prop_assert_eq!(reference_count(n as u64, 2, 1, &lam), 0);
        }

        #[test]
        fn bounded_chambers_give_every_ordering_once(n in 2usize..4, extra in 0i64..3, below in any::<bool>()) {
            let (ell, w) = (2usize, 1usize);
            let span = ((n - 1) * (ell - 1)) as i64;
            let lambda = if below { -span - extra } else { span + w as i64 + extra };
            let r = classify(n, ell, w, &q(lambda), &EnumerationOptions::default()).unwrap();
            let mut orders: Vec<Permutation> = r.chambers.iter().map(|c| c.ordering.clone()).collect();
            orders.sort();
            prop_assert_eq!(orders, Permutation::all(n));
        }
    }
}
