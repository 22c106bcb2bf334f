use super::Polyhedron;
use crate::rational::Rational;

/// Result of maximizing a linear objective over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

/// Dense tableau for `min c.y, M y = r, y >= 0` with a basis per row.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.cols {
                if !self.rows[r][j].is_zero() {
                    let t = &f * &self.rows[r][j];
                    self.rows[i][j] -= t;
                }
            }
            let t = &f * &self.rhs[r];
            self.rhs[i] -= t;
        }
        self.basis[r] = c;
    }

    /// Bland's rule: smallest improving column, ties in the ratio test broken
    /// by smallest basic variable.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> Phase {
        loop {
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Phase::Unbounded,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, x)| &cost[b] * x)
            .sum()
    }
}

/// Maximizes `objective . x` over `p` with a two-phase exact simplex.
/// Free variables are split as `x = x+ - x-`; inequalities get slacks.
pub fn solve_lp(p: &Polyhedron, objective: &[Rational]) -> LpOutcome {
    assert_eq!(objective.len(), p.num_vars);
    let d = p.num_vars;
    let n_eq = p.equalities.len();
    let n_in = p.inequalities.len();
    let m = n_eq + n_in;
    let structural = 2 * d + n_in;
    let cols = structural + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, c) in p.equalities.iter().chain(&p.inequalities).enumerate() {
        let mut row = vec![Rational::zero(); cols];
        for v in 0..d {
            row[v] = c.coeffs[v].clone();
            row[d + v] = -&c.coeffs[v];
        }
        if k >= n_eq {
            row[2 * d + (k - n_eq)] = Rational::one();
        }
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            b = -b;
        }
        row[structural + k] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (structural..cols).collect(),
        cols,
    };

    let phase1: Vec<Rational> = (0..cols)
        .map(|j| if j >= structural { Rational::one() } else { Rational::zero() })
        .collect();
    let all = vec![true; cols];
    t.run(&phase1, &all);
    if !t.objective(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= structural {
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); cols];
    for v in 0..d {
        cost[v] = -&objective[v];
        cost[d + v] = objective[v].clone();
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < structural).collect();
    match t.run(&cost, &allowed) {
        Phase::Unbounded => LpOutcome::Unbounded,
        Phase::Optimal => {
            let mut y = vec![Rational::zero(); cols];
            for (&b, x) in t.basis.iter().zip(&t.rhs) {
                y[b] = x.clone();
            }
            let point: Vec<Rational> = (0..d).map(|v| &y[v] - &y[d + v]).collect();
            LpOutcome::Optimal {
                value: -t.objective(&cost),
                point,
            }
        }
    }
}

pub fn simplex_is_feasible(p: &Polyhedron) -> bool {
    !matches!(solve_lp(p, &vec![Rational::zero(); p.num_vars]), LpOutcome::Infeasible)
}

/// Boundedness by maximizing `+-x_i` over the recession cone; `true` on
/// empty input.
pub fn simplex_is_bounded(p: &Polyhedron) -> bool {
    if !simplex_is_feasible(p) {
        return true;
    }
    let cone = p.recession_cone();
    for i in 0..p.num_vars {
        for sign in [1i64, -1] {
            let mut obj = vec![Rational::zero(); p.num_vars];
            obj[i] = Rational::from(sign);
            match solve_lp(&cone, &obj) {
                LpOutcome::Optimal { value, .. } if value.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::tests::ineqs;
    use crate::polyhedra::{random_system, Constraint};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from(x)
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x, y >= 0 -> 12 at (4, 0).
        let p = ineqs(2, &[(&[1, 1], 4), (&[1, 3], 6), (&[-1, 0], 0), (&[0, -1], 0)]);
        match solve_lp(&p, &[q(3), q(2)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(12));
                assert_eq!(point, vec![q(4), q(0)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(solve_lp(&p, &[q(-1), q(-1)]), LpOutcome::Optimal { value: q(0), point: vec![q(0), q(0)] });
    }

    #[test]
    fn unbounded_and_infeasible() {
        let ray = ineqs(1, &[(&[-1], 0)]);
        assert_eq!(solve_lp(&ray, &[q(1)]), LpOutcome::Unbounded);
        let empty = ineqs(1, &[(&[1], 0), (&[-1], -1)]);
        assert_eq!(solve_lp(&empty, &[q(1)]), LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = Polyhedron::new(2);
        p.add_equality(Constraint::from_ints(&[1, 1], 2)).unwrap();
        p.add_equality(Constraint::from_ints(&[2, 2], 4)).unwrap();
        p.add_inequality(Constraint::from_ints(&[-1, 0], 0)).unwrap();
        p.add_inequality(Constraint::from_ints(&[0, -1], 0)).unwrap();
        assert!(simplex_is_feasible(&p));
        assert!(simplex_is_bounded(&p));
        match solve_lp(&p, &[q(1), q(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let f = |n: i64, d: i64| Rational::new(n, d);
        let mut p = Polyhedron::new(4);
        p.add_inequality(Constraint::new(vec![f(1, 4), q(-8), q(-1), q(9)], q(0))).unwrap();
        p.add_inequality(Constraint::new(vec![f(1, 2), q(-12), f(-1, 2), q(3)], q(0))).unwrap();
        p.add_inequality(Constraint::new(vec![q(0), q(0), q(1), q(0)], q(1))).unwrap();
        for v in 0..4 {
            let mut c = vec![0; 4];
            c[v] = -1;
            p.add_inequality(Constraint::from_ints(&c, 0)).unwrap();
        }
        let obj = vec![f(3, 4), q(-20), f(1, 2), q(-6)];
        match solve_lp(&p, &obj) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, f(5, 4));
                assert!(p.contains(&point));
            }
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn optimal_points_are_feasible_and_tight(seed in 0u64..10_000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_system(&mut rng, 4, 8);
            let obj: Vec<Rational> = (0..p.num_vars).map(|i| q(i as i64 % 3 - 1)).collect();
            match solve_lp(&p, &obj) {
                LpOutcome::Optimal { point, value } => {
                    prop_assert!(p.contains(&point));
                    prop_assert_eq!(crate::rational::dot(&obj, &point), value);
                }
                LpOutcome::Infeasible => prop_assert!(!crate::polyhedra::fm_is_feasible(&p)),
                LpOutcome::Unbounded => prop_assert!(!crate::polyhedra::fm_is_bounded(&p)),
            }
        }
    }
}
