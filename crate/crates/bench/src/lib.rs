//! Shared fixtures for the benchmarks.

use qslice::polyhedra::random_system;
use qslice::{Polyhedron, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` seeded random systems with at most `vars` unknowns and `rows` rows.
pub fn random_systems(seed: u64, count: usize, vars: usize, rows: usize) -> Vec<Polyhedron> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_system(&mut rng, vars, rows)).collect()
}

/// The integer parameters around both thresholds for `(n, l, w)`, gap included.
pub fn parameter_window(n: i64, ell: i64, w: i64) -> Vec<Rational> {
    let span = (n - 1) * (ell - 1);
    (-span - 2..=span + w + 2).map(Rational::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_reproducible() {
        assert_eq!(random_systems(3, 5, 4, 6), random_systems(3, 5, 4, 6));
        let window = parameter_window(3, 2, 1);
        assert_eq!(window.first(), Some(&Rational::from(-4)));
        assert_eq!(window.last(), Some(&Rational::from(5)));
    }
}
