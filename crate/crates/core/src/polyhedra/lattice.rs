use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::fm::{fm_is_bounded, fm_is_feasible, one_variable_interval, prefix_projections};
use super::Polyhedron;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// All integer points of a bounded polyhedron, in lexicographic order.
///
/// Builds the chain of projections onto `x_0`, `(x_0, x_1)`, ... and
/// backtracks through it, so every partial assignment that is tried extends
/// to a rational point. An empty polyhedron yields an empty list.
pub fn lattice_points(p: &Polyhedron) -> Result<Vec<Vec<i64>>> {
    if !fm_is_feasible(p) {
        return Ok(Vec::new());
    }
    if !fm_is_bounded(p) {
        return Err(Error::Unbounded);
    }
    if p.num_vars == 0 {
        return Ok(vec![Vec::new()]);
    }
    // chain[k] is the projection onto the first k + 1 variables.
    let mut chain = prefix_projections(p);
    chain.reverse();
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::new();
    descend(&chain, &mut prefix, &mut out)?;
    Ok(out)
}

fn descend(chain: &[Polyhedron], prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) -> Result<()> {
    let k = prefix.len();
    if k == chain.len() {
        out.push(prefix.clone());
        return Ok(());
    }
    // Fix the first k variables of the (k+1)-variable projection.
    let mut sys = chain[k].clone();
    for (v, &x) in prefix.iter().enumerate().rev() {
        sys = sys.substitute(v, &Rational::from(x));
    }
    let Some((lo, hi)) = one_variable_interval(&sys) else {
        return Ok(());
    };
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::Unbounded);
    };
    let lo = to_i64(&lo.ceil())?;
    let hi = to_i64(&hi.floor())?;
    for x in lo..=hi {
        prefix.push(x);
        descend(chain, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}
