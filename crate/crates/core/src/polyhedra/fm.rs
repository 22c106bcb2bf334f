use std::collections::HashMap;

use log::{debug, trace};
use serde::Serialize;

use super::{Constraint, Polyhedron};
use crate::rational::Rational;

/// Pairwise redundancy removal is skipped above this many inequalities.
const REDUNDANCY_ROW_LIMIT: usize = 48;

/// One step of a full elimination, for debugging dumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Index of the eliminated variable in the original numbering.
    pub variable: usize,
    pub by_equality: bool,
    pub positive: usize,
    pub negative: usize,
    pub rows_before: usize,
    pub rows_after: usize,
}

/// Projects `p` onto all variables except `var` (columns after `var` shift
/// down by one). Equalities containing `var` are used for substitution first.
pub fn fm_eliminate(p: &Polyhedron, var: usize) -> Polyhedron {
    eliminate_step(p, var).0
}

fn eliminate_step(p: &Polyhedron, var: usize) -> (Polyhedron, TraceStep) {
    assert!(var < p.num_vars, "variable {var} out of range");
    let rows_before = p.num_rows();
    let drop_col = |c: &Constraint| {
        let mut coeffs = c.coeffs.clone();
        coeffs.remove(var);
        Constraint::new(coeffs, c.rhs.clone())
    };

    let mut out = Polyhedron::new(p.num_vars - 1);
    let (by_equality, positive, negative);
    if let Some(k) = p.equalities.iter().position(|e| !e.coeffs[var].is_zero()) {
        let pivot = &p.equalities[k];
        let a = &pivot.coeffs[var];
        let eliminate = |c: &Constraint| {
            if c.coeffs[var].is_zero() {
                return drop_col(c);
            }
            let f = &c.coeffs[var] / a;
            let coeffs: Vec<Rational> = c.coeffs.iter().zip(&pivot.coeffs).map(|(x, y)| x - &f * y).collect();
            drop_col(&Constraint::new(coeffs, &c.rhs - &f * &pivot.rhs))
        };
        out.equalities = p
            .equalities
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, c)| eliminate(c))
            .collect();
        out.inequalities = p.inequalities.iter().map(eliminate).collect();
        by_equality = true;
        positive = 0;
        negative = 0;
    } else {
        out.equalities = p.equalities.iter().map(drop_col).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for c in &p.inequalities {
            let a = &c.coeffs[var];
            if a.is_zero() {
                out.inequalities.push(drop_col(c));
            } else if a.is_positive() {
                pos.push(scale(c, &a.recip()));
            } else {
                neg.push(scale(c, &(-a).recip()));
            }
        }
        for u in &pos {
            for l in &neg {
                let coeffs: Vec<Rational> = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| x + y).collect();
                out.inequalities.push(drop_col(&Constraint::new(coeffs, &u.rhs + &l.rhs)));
            }
        }
        by_equality = false;
        positive = pos.len();
        negative = neg.len();
    }
    let out = cleanup(out);
    let step = TraceStep {
        variable: var,
        by_equality,
        positive,
        negative,
        rows_before,
        rows_after: out.num_rows(),
    };
    debug!(
        "eliminate x{var}: {} rows -> {} rows ({}; +{positive}/-{negative})",
        rows_before,
        step.rows_after,
        if by_equality { "equality" } else { "combination" }
    );
    trace!("projected system: {out:?}");
    (out, step)
}

fn scale(c: &Constraint, f: &Rational) -> Constraint {
    Constraint::new(c.coeffs.iter().map(|x| x * f).collect(), &c.rhs * f)
}

/// The canonical empty system `0 <= -1` in `n` variables.
fn infeasible(n: usize) -> Polyhedron {
    let mut p = Polyhedron::new(n);
    p.inequalities.push(Constraint::new(vec![Rational::zero(); n], Rational::from(-1)));
    p
}

/// Whether `p` is the canonical empty system produced by [`cleanup`].
fn is_marked_infeasible(p: &Polyhedron) -> bool {
    p.equalities.is_empty()
        && p.inequalities.len() == 1
        && p.inequalities[0].is_zero_row()
        && p.inequalities[0].rhs.is_negative()
}

/// Normalizes rows, drops trivial and duplicate rows, detects constant
/// contradictions, and removes inequalities implied by two others.
fn cleanup(p: Polyhedron) -> Polyhedron {
    let n = p.num_vars;
    let mut eqs: Vec<Constraint> = Vec::new();
    for e in p.equalities {
        match e.coeffs.iter().find(|x| !x.is_zero()) {
            None if e.rhs.is_zero() => {}
            None => return infeasible(n),
            Some(lead) => {
                let e = scale(&e, &lead.recip());
                if !eqs.contains(&e) {
                    eqs.push(e);
                }
            }
        }
    }
    let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
    let mut order: Vec<Vec<Rational>> = Vec::new();
    for c in p.inequalities {
        match c.coeffs.iter().find(|x| !x.is_zero()) {
            None if !c.rhs.is_negative() => {}
            None => return infeasible(n),
            Some(lead) => {
                let c = scale(&c, &lead.abs().recip());
                match best.get_mut(&c.coeffs) {
                    Some(b) => {
                        if c.rhs < *b {
                            *b = c.rhs;
                        }
                    }
                    None => {
                        order.push(c.coeffs.clone());
                        best.insert(c.coeffs, c.rhs);
                    }
                }
            }
        }
    }
    let mut ineqs: Vec<Constraint> = order
        .into_iter()
        .map(|coeffs| {
            let rhs = best.remove(&coeffs).expect("present");
            Constraint::new(coeffs, rhs)
        })
        .collect();
    if ineqs.len() <= REDUNDANCY_ROW_LIMIT {
        remove_pairwise_redundant(&mut ineqs);
    }
    Polyhedron {
        num_vars: n,
        equalities: eqs,
        inequalities: ineqs,
    }
}

/// Drops each row `r` with `r = a s + b t`, `a, b >= 0`, and
/// `a s.rhs + b t.rhs <= r.rhs` for two other surviving rows `s, t`.
fn remove_pairwise_redundant(rows: &mut Vec<Constraint>) {
    let mut alive = vec![true; rows.len()];
    for r in 0..rows.len() {
        'search: for s in 0..rows.len() {
            if s == r || !alive[s] {
                continue;
            }
            for t in s + 1..rows.len() {
                if t == r || !alive[t] {
                    continue;
                }
                if implied_by_pair(&rows[r], &rows[s], &rows[t]) {
                    alive[r] = false;
                    break 'search;
                }
            }
        }
    }
    let mut k = 0;
    rows.retain(|_| {
        k += 1;
        alive[k - 1]
    });
}

fn implied_by_pair(r: &Constraint, s: &Constraint, t: &Constraint) -> bool {
    let n = r.coeffs.len();
    // Find two coordinates where (s, t) is nonsingular and solve for (a, b).
    for i in 0..n {
        for j in i + 1..n {
            let det = &s.coeffs[i] * &t.coeffs[j] - &s.coeffs[j] * &t.coeffs[i];
            if det.is_zero() {
                continue;
            }
            let a = (&r.coeffs[i] * &t.coeffs[j] - &r.coeffs[j] * &t.coeffs[i]) / &det;
            let b = (&s.coeffs[i] * &r.coeffs[j] - &s.coeffs[j] * &r.coeffs[i]) / &det;
            if a.is_negative() || b.is_negative() {
                return false;
            }
            let matches = (0..n).all(|k| &a * &s.coeffs[k] + &b * &t.coeffs[k] == r.coeffs[k]);
            return matches && &a * &s.rhs + &b * &t.rhs <= r.rhs;
        }
    }
    false
}

/// Set of original inequality indices a derived row was combined from.
#[derive(Clone, Debug, PartialEq, Eq)]
struct History(Vec<u64>);

impl History {
    fn single(i: usize) -> Self {
        let mut bits = vec![0u64; i / 64 + 1];
        bits[i / 64] |= 1 << (i % 64);
        History(bits)
    }

    fn union(&self, other: &History) -> History {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut bits = long.0.clone();
        for (b, s) in bits.iter_mut().zip(&short.0) {
            *b |= s;
        }
        History(bits)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &History) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(k, b)| b & !other.0.get(k).copied().unwrap_or(0) == 0)
    }
}

/// Elimination state that remembers, for every inequality, which original
/// inequalities it came from. After `k` pair-combination steps a row built
/// from more than `k + 1` originals is implied by the others (Chernikov's
/// rule) and is dropped. Parallel rows are merged only when the tighter one
/// also has the smaller history, which keeps the rule sound.
#[derive(Clone, Debug)]
struct Tracked {
    num_vars: usize,
    eqs: Vec<Constraint>,
    rows: Vec<(Constraint, History)>,
    combinations: usize,
    infeasible: bool,
}

impl Tracked {
    fn new(p: &Polyhedron) -> Self {
        let rows = p
            .inequalities
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), History::single(i)))
            .collect();
        let mut t = Tracked {
            num_vars: p.num_vars,
            eqs: p.equalities.clone(),
            rows,
            combinations: 0,
            infeasible: false,
        };
        t.normalize();
        t
    }

    fn normalize(&mut self) {
        let mut eqs: Vec<Constraint> = Vec::new();
        for e in std::mem::take(&mut self.eqs) {
            match e.coeffs.iter().find(|x| !x.is_zero()) {
                None if e.rhs.is_zero() => {}
                None => return self.mark_infeasible(),
                Some(lead) => {
                    let e = scale(&e, &lead.recip());
                    if !eqs.contains(&e) {
                        eqs.push(e);
                    }
                }
            }
        }
        self.eqs = eqs;
        let mut groups: HashMap<Vec<Rational>, Vec<(Rational, History)>> = HashMap::new();
        let mut order: Vec<Vec<Rational>> = Vec::new();
        for (c, h) in std::mem::take(&mut self.rows) {
            match c.coeffs.iter().find(|x| !x.is_zero()) {
                None if !c.rhs.is_negative() => {}
                None => return self.mark_infeasible(),
                Some(lead) => {
                    let c = scale(&c, &lead.abs().recip());
                    let group = groups.entry(c.coeffs.clone()).or_insert_with(|| {
                        order.push(c.coeffs.clone());
                        Vec::new()
                    });
                    if group.iter().any(|(rhs, gh)| *rhs <= c.rhs && gh.is_subset(&h)) {
                        continue;
                    }
                    group.retain(|(rhs, gh)| !(c.rhs <= *rhs && h.is_subset(gh)));
                    group.push((c.rhs, h));
                }
            }
        }
        for coeffs in order {
            for (rhs, h) in groups.remove(&coeffs).expect("present") {
                self.rows.push((Constraint::new(coeffs.clone(), rhs), h));
            }
        }
    }

    fn mark_infeasible(&mut self) {
        let p = infeasible(self.num_vars);
        self.eqs.clear();
        self.rows = vec![(p.inequalities[0].clone(), History(Vec::new()))];
        self.infeasible = true;
    }

    fn polyhedron(&self) -> Polyhedron {
        Polyhedron {
            num_vars: self.num_vars,
            equalities: self.eqs.clone(),
            inequalities: self.rows.iter().map(|(c, _)| c.clone()).collect(),
        }
    }

    fn eliminate(&mut self, var: usize) -> TraceStep {
        assert!(var < self.num_vars, "variable {var} out of range");
        let rows_before = self.eqs.len() + self.rows.len();
        let drop_col = |c: &Constraint| {
            let mut coeffs = c.coeffs.clone();
            coeffs.remove(var);
            Constraint::new(coeffs, c.rhs.clone())
        };
        let (mut positive, mut negative) = (0, 0);
        let by_equality = if let Some(k) = self.eqs.iter().position(|e| !e.coeffs[var].is_zero()) {
            let pivot = self.eqs.remove(k);
            let a = pivot.coeffs[var].clone();
            let eliminate = |c: &Constraint| {
                if c.coeffs[var].is_zero() {
                    return drop_col(c);
                }
                let f = &c.coeffs[var] / &a;
                let coeffs: Vec<Rational> = c.coeffs.iter().zip(&pivot.coeffs).map(|(x, y)| x - &f * y).collect();
                drop_col(&Constraint::new(coeffs, &c.rhs - &f * &pivot.rhs))
            };
            self.eqs = self.eqs.iter().map(eliminate).collect();
            self.rows = self.rows.iter().map(|(c, h)| (eliminate(c), h.clone())).collect();
            true
        } else {
            self.eqs = self.eqs.iter().map(drop_col).collect();
            self.combinations += 1;
            let limit = self.combinations + 1;
            let mut kept = Vec::new();
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for (c, h) in std::mem::take(&mut self.rows) {
                let a = c.coeffs[var].clone();
                if a.is_zero() {
                    kept.push((drop_col(&c), h));
                } else if a.is_positive() {
                    pos.push((scale(&c, &a.recip()), h));
                } else {
                    neg.push((scale(&c, &(-a).recip()), h));
                }
            }
            for (u, hu) in &pos {
                for (l, hl) in &neg {
                    let h = hu.union(hl);
                    if h.len() > limit {
                        continue;
                    }
                    let coeffs: Vec<Rational> = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| x + y).collect();
                    kept.push((drop_col(&Constraint::new(coeffs, &u.rhs + &l.rhs)), h));
                }
            }
            positive = pos.len();
            negative = neg.len();
            self.rows = kept;
            false
        };
        self.num_vars -= 1;
        self.normalize();
        let step = TraceStep {
            variable: var,
            by_equality,
            positive,
            negative,
            rows_before,
            rows_after: self.eqs.len() + self.rows.len(),
        };
        debug!(
            "eliminate x{var}: {} rows -> {} rows ({}; +{positive}/-{negative})",
            rows_before,
            step.rows_after,
            if by_equality { "equality" } else { "combination" }
        );
        step
    }

    fn cost(&self, v: usize) -> usize {
        if self.eqs.iter().any(|e| !e.coeffs[v].is_zero()) {
            return 0;
        }
        let pos = self.rows.iter().filter(|(c, _)| c.coeffs[v].is_positive()).count();
        let neg = self.rows.iter().filter(|(c, _)| c.coeffs[v].is_negative()).count();
        1 + pos * neg
    }
}

/// `[p, p without its last variable, ...]` down to one variable, every
/// member cleaned up.
pub(crate) fn prefix_projections(p: &Polyhedron) -> Vec<Polyhedron> {
    let mut t = Tracked::new(p);
    let mut chain = vec![t.polyhedron()];
    while t.num_vars > 1 {
        t.eliminate(t.num_vars - 1);
        chain.push(t.polyhedron());
    }
    chain
}

/// Eliminates every variable, recording each step.
pub fn trace_elimination(p: &Polyhedron) -> (Polyhedron, Vec<TraceStep>) {
    let mut cur = Tracked::new(p);
    let mut names: Vec<usize> = (0..p.num_vars).collect();
    let mut steps = Vec::new();
    while cur.num_vars > 0 && !cur.infeasible {
        let v = (0..cur.num_vars).min_by_key(|&v| cur.cost(v)).expect("a variable");
        let mut step = cur.eliminate(v);
        step.variable = names.remove(v);
        steps.push(step);
    }
    (cur.polyhedron(), steps)
}

/// Feasibility by eliminating every variable.
pub fn fm_is_feasible(p: &Polyhedron) -> bool {
    let (last, _) = trace_elimination(p);
    !is_marked_infeasible(&last) && last.inequalities.iter().all(|c| !c.rhs.is_negative())
}

/// Projection of `p` onto coordinate `keep` as an interval; `None` bounds
/// are infinite. Returns `None` when the projection is empty.
pub(crate) fn coordinate_interval(p: &Polyhedron, keep: usize) -> Option<(Option<Rational>, Option<Rational>)> {
    let mut cur = Tracked::new(p);
    let mut target = keep;
    while cur.num_vars > 1 && !cur.infeasible {
        let v = (0..cur.num_vars)
            .filter(|&v| v != target)
            .min_by_key(|&v| cur.cost(v))
            .expect("another variable");
        cur.eliminate(v);
        if v < target {
            target -= 1;
        }
    }
    if cur.infeasible {
        return None;
    }
    one_variable_interval(&cur.polyhedron())
}

/// Solution interval of a system in a single variable.
pub(crate) fn one_variable_interval(p: &Polyhedron) -> Option<(Option<Rational>, Option<Rational>)> {
    debug_assert_eq!(p.num_vars, 1);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let tighten_hi = |hi: &mut Option<Rational>, x: Rational| {
        if hi.as_ref().is_none_or(|h| x < *h) {
            *hi = Some(x);
        }
    };
    let tighten_lo = |lo: &mut Option<Rational>, x: Rational| {
        if lo.as_ref().is_none_or(|l| x > *l) {
            *lo = Some(x);
        }
    };
    for e in &p.equalities {
        let a = &e.coeffs[0];
        if a.is_zero() {
            if !e.rhs.is_zero() {
                return None;
            }
            continue;
        }
        let x = &e.rhs / a;
        tighten_lo(&mut lo, x.clone());
        tighten_hi(&mut hi, x);
    }
    for c in &p.inequalities {
        let a = &c.coeffs[0];
        if a.is_zero() {
            if c.rhs.is_negative() {
                return None;
            }
        } else if a.is_positive() {
            tighten_hi(&mut hi, &c.rhs / a);
        } else {
            tighten_lo(&mut lo, &c.rhs / a);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Boundedness via per-coordinate projection intervals; `true` when empty.
pub fn fm_is_bounded(p: &Polyhedron) -> bool {
    if p.num_vars == 0 {
        return true;
    }
    for i in 0..p.num_vars {
        match coordinate_interval(p, i) {
            None => return true,
            Some((Some(_), Some(_))) => {}
            Some(_) => return false,
        }
    }
    true
}
