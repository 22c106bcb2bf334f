use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::sign::{Sign, SignVector};
use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images. Serialized 1-based.
///
/// The same type holds orderings `(i_1, .., i_n)`, read as `k -> i_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        Permutation::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Every permutation of `n` letters, lexicographically.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.one_based().iter().join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// `h1_2, h1_3, .., h(n-1)_n, q1, .., qn`.
pub fn reduced_variable_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=n)
        .tuple_combinations()
        .map(|(i, j)| format!("h{i}_{j}"))
        .collect();
    names.extend((1..=n).map(|i| format!("q{i}")));
    names
}

fn check_reduced(alpha: &SignVector, n: usize) -> Result<()> {
    let expected = n * (n - 1) / 2 + n;
    if alpha.len() != expected {
        return Err(Error::SignLength {
            expected,
            found: alpha.len(),
        });
    }
    if alpha.vars() != reduced_variable_names(n).as_slice() {
        return Err(Error::InvalidParameters(format!("not a reduced sign vector for n = {n}")));
    }
    Ok(())
}

/// Position of `h_{ij}` (0-based, `i < j`) in the reduced variable order.
pub(crate) fn pair_position(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Sign of `h_{ij}` for any ordered pair, using `h_ji = -h_ij`.
pub(crate) fn h_sign(alpha: &SignVector, n: usize, i: usize, j: usize) -> Sign {
    if i < j {
        alpha.signs()[pair_position(n, i, j)]
    } else {
        alpha.signs()[pair_position(n, j, i)].flip()
    }
}

/// The ordering attached to a bounded reduced chamber: repeatedly take the
/// unique remaining index `i` with `h_ij = +` against every other remaining
/// `j`.
pub fn chamber_to_ordering(alpha: &SignVector, n: usize) -> Result<Permutation> {
    check_reduced(alpha, n)?;
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let mut tops = remaining
            .iter()
            .copied()
            .filter(|&i| remaining.iter().all(|&j| j == i || h_sign(alpha, n, i, j) == Sign::Plus));
        let top = tops.next().ok_or(Error::NoPeelIndex)?;
        order.push(top);
        remaining.retain(|&i| i != top);
    }
    Permutation::new(order)
}

/// Relabels indices by `sigma`: the image has `h_{σ(i)σ(j)} = α(h_ij)` and
/// `q_{σ(i)} = α(q_i)`.
pub fn sn_act(sigma: &Permutation, alpha: &SignVector) -> Result<SignVector> {
    let n = sigma.len();
    check_reduced(alpha, n)?;
    let pairs = n * (n - 1) / 2;
    let mut signs = alpha.signs().to_vec();
    for (i, j) in (0..n).tuple_combinations() {
        let s = alpha.signs()[pair_position(n, i, j)];
        let (a, b) = (sigma.apply(i), sigma.apply(j));
        if a < b {
            signs[pair_position(n, a, b)] = s;
        } else {
            signs[pair_position(n, b, a)] = s.flip();
        }
    }
    for i in 0..n {
        signs[pairs + sigma.apply(i)] = alpha.signs()[pairs + i];
    }
    SignVector::new(reduced_variable_names(n), signs)
}
