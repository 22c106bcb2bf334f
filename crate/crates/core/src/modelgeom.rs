//! Darboux frames on the two affine charts of a leaf point and the transition
//! matrix between them, in exact arithmetic.
//!
//! Vectors live in `C^{2l}` with coordinates `(x_1..x_l; y_1..y_l)`. Frames are
//! listed in the order `(tangent, w^1..w^{l-1}, v^{l-1}..v^1, u)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Positionwise differences `(s_1..s_l; t_1..t_l)` at a pair of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafPoint {
    s: Vec<Rational>,
    t: Vec<Rational>,
}

impl LeafPoint {
    pub fn new(s: Vec<Rational>, t: Vec<Rational>) -> Result<Self> {
        if s.len() != t.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len(),
                found: t.len(),
            });
        }
        if s.len() < 2 {
            return Err(Error::InvalidParameters(format!("need at least 2 loops, got {}", s.len())));
        }
        if s.iter().chain(&t).all(Rational::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(LeafPoint { s, t })
    }

    /// From `2l` coordinates `(s_1..s_l, t_1..t_l)`.
    pub fn from_coordinates(coords: &[Rational]) -> Result<Self> {
        if coords.len() % 2 != 0 {
            return Err(Error::InvalidParameters(format!("odd coordinate count {}", coords.len())));
        }
        let l = coords.len() / 2;
        LeafPoint::new(coords[..l].to_vec(), coords[l..].to_vec())
    }

    /// Entries `num/den` with `num` in `-9..=9`, `den` in `1..=5`, redrawn
    /// until `s_1 s_2 != 0`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, ell: usize) -> Self {
        let draw = |rng: &mut R| Rational::new(rng.random_range(-9..=9), rng.random_range(1..=5));
        loop {
            let s: Vec<Rational> = (0..ell).map(|_| draw(rng)).collect();
            let t: Vec<Rational> = (0..ell).map(|_| draw(rng)).collect();
            if !s[0].is_zero() && !s[1].is_zero() {
                return LeafPoint { s, t };
            }
        }
    }

    pub fn ell(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    pub fn t(&self) -> &[Rational] {
        &self.t
    }

    pub fn in_chart_i(&self) -> bool {
        !self.s[0].is_zero()
    }

    pub fn in_chart_j(&self) -> bool {
        !self.s[1].is_zero()
    }

    /// `(s; t)`.
    pub fn tangent(&self) -> Vec<Rational> {
        self.s.iter().chain(&self.t).cloned().collect()
    }
}

/// `2l` vectors of length `2l` in the order described in the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub vectors: Vec<Vec<Rational>>,
}

impl Frame {
    pub fn ell(&self) -> usize {
        self.vectors.len() / 2
    }

    pub fn tangent(&self) -> &[Rational] {
        &self.vectors[0]
    }

    /// `w^k`, `1 <= k < l`.
    pub fn w(&self, k: usize) -> &[Rational] {
        &self.vectors[k]
    }

    /// `v^k`, `1 <= k < l`.
    pub fn v(&self, k: usize) -> &[Rational] {
        &self.vectors[2 * self.ell() - 1 - k]
    }

    pub fn u(&self) -> &[Rational] {
        &self.vectors[2 * self.ell() - 1]
    }

    /// Vectors as columns.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors).expect("square frame")
    }

    pub fn gram(&self) -> Matrix {
        let omega = symplectic_form(self.ell());
        let n = self.vectors.len();
        let mut g = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                g[(a, b)] = omega.bilinear(&self.vectors[a], &self.vectors[b]);
            }
        }
        g
    }
}

/// `[[0, I], [-I, 0]]` of size `2l`.
pub fn symplectic_form(ell: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * ell, 2 * ell);
    for k in 0..ell {
        m[(k, ell + k)] = Rational::one();
        m[(ell + k, k)] = -Rational::one();
    }
    m
}

/// Expected Gram matrix of a frame: `ω(tangent, u) = 1`, `ω(v^k, w^k) = 1`,
/// antisymmetric, zero elsewhere.
pub fn darboux_gram(ell: usize) -> Matrix {
    let n = 2 * ell;
    let mut g = Matrix::zeros(n, n);
    let mut pair = |a: usize, b: usize| {
        g[(a, b)] = Rational::one();
        g[(b, a)] = -Rational::one();
    };
    pair(0, n - 1);
    for k in 1..ell {
        // v^k sits at n - 1 - k, w^k at k.
        pair(n - 1 - k, k);
    }
    g
}

fn unit_y(ell: usize, k: usize, c: Rational) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); 2 * ell];
    x[ell + k] = c;
    x
}

fn assemble(s: &LeafPoint, w: Vec<Vec<Rational>>, v: Vec<Vec<Rational>>, u: Vec<Rational>) -> Frame {
    let mut vectors = vec![s.tangent()];
    vectors.extend(w);
    vectors.extend(v.into_iter().rev());
    vectors.push(u);
    Frame { vectors }
}

/// Frame on the chart `s_1 != 0`.
pub fn frame_i(p: &LeafPoint) -> Result<Frame> {
    if !p.in_chart_i() {
        return Err(Error::OutsideChart("s_1 = 0"));
    }
    let l = p.ell();
    let (s, t) = (p.s(), p.t());
    let s1 = &s[0];
    let inv = s1.recip();
    let u = unit_y(l, 0, inv.clone());
    let mut v = Vec::with_capacity(l - 1);
    let mut w = Vec::with_capacity(l - 1);
    let mut v1 = unit_y(l, 0, &t[1] / &(s1 * s1));
    v1[1] = inv.clone();
    v.push(v1);
    let mut w1 = unit_y(l, 0, -&s[1]);
    w1[l + 1] = s1.clone();
    w.push(w1);
    for k in 2..l {
        let mut vk = unit_y(l, 0, &t[k] * &inv);
        vk[k] = Rational::one();
        v.push(vk);
        let mut wk = unit_y(l, 0, -(&s[k] * &inv));
        wk[l + k] = Rational::one();
        w.push(wk);
    }
    Ok(assemble(p, w, v, u))
}

/// Frame on the chart `s_2 != 0`, sharing `w^1` with [`frame_i`].
pub fn frame_j(p: &LeafPoint) -> Result<Frame> {
    if !p.in_chart_j() {
        return Err(Error::OutsideChart("s_2 = 0"));
    }
    let l = p.ell();
    let (s, t) = (p.s(), p.t());
    let s2 = &s[1];
    let inv = s2.recip();
    let u = unit_y(l, 1, inv.clone());
    let mut v = Vec::with_capacity(l - 1);
    let mut w = Vec::with_capacity(l - 1);
    let mut v1 = unit_y(l, 1, -(&t[0] / &(s2 * s2)));
    v1[0] = -&inv;
    v.push(v1);
    let mut w1 = unit_y(l, 0, -s2);
    w1[l + 1] = s[0].clone();
    w.push(w1);
    for k in 2..l {
        let mut vk = unit_y(l, 1, &t[k] * &inv);
        vk[k] = Rational::one();
        v.push(vk);
        let mut wk = unit_y(l, 1, -(&s[k] * &inv));
        wk[l + k] = Rational::one();
        w.push(wk);
    }
    Ok(assemble(p, w, v, u))
}

/// `M` with `frame_i · M = frame_j`: column `c` holds the `J`-vector `c` in
/// `I`-coordinates.
pub fn transition_matrix(p: &LeafPoint) -> Result<Matrix> {
    let a = frame_i(p)?.matrix();
    let b = frame_j(p)?.matrix();
    a.solve(&b)
}

/// The transition matrix written out entry by entry.
pub fn transition_closed_form(p: &LeafPoint) -> Result<Matrix> {
    if !p.in_chart_i() {
        return Err(Error::OutsideChart("s_1 = 0"));
    }
    if !p.in_chart_j() {
        return Err(Error::OutsideChart("s_2 = 0"));
    }
    let l = p.ell();
    let n = 2 * l;
    let (s, t) = (p.s(), p.t());
    let d = (&s[0] * &s[1]).recip();
    let v_col = |k: usize| n - 1 - k;
    let v1 = v_col(1);
    let mut m = Matrix::identity(n);
    m[(0, v1)] = -&d;
    for k in 2..l {
        m[(1, k)] = -(&s[k] * &d);
        m[(1, v_col(k))] = &t[k] * &d;
        m[(k, v1)] = &t[k] * &d;
        m[(v_col(k), v1)] = &s[k] * &d;
    }
    m[(1, v1)] = &d * &(&(&t[1] / &s[0]) - &(&t[0] / &s[1]));
    m[(1, n - 1)] = d;
    Ok(m)
}

/// `(m - I)^dim = 0`.
pub fn is_unipotent(m: &Matrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let nil = m - &Matrix::identity(n);
    nil.pow(n as u32).is_zero()
}

pub fn is_strictly_upper_unipotent(m: &Matrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => m[(i, j)] == Rational::one(),
                std::cmp::Ordering::Greater => m[(i, j)].is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
}

/// Outcome of every check at one leaf point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub darboux: bool,
    pub invertible: bool,
    pub closed_form: bool,
    pub unipotent: bool,
}

impl PointCheck {
    pub fn all(&self) -> bool {
        self.darboux && self.invertible && self.closed_form && self.unipotent
    }
}

pub fn check_point(p: &LeafPoint) -> Result<PointCheck> {
    let (fi, fj) = (frame_i(p)?, frame_j(p)?);
    let want = darboux_gram(p.ell());
    let m = transition_matrix(p)?;
    Ok(PointCheck {
        darboux: fi.gram() == want && fj.gram() == want,
        invertible: !fi.matrix().det().is_zero() && !fj.matrix().det().is_zero(),
        closed_form: m == transition_closed_form(p)?,
        unipotent: is_unipotent(&m) && is_strictly_upper_unipotent(&m),
    })
}

/// Tallies over `samples` seeded random points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub ell: usize,
    pub samples: usize,
    pub darboux: usize,
    pub invertible: usize,
    pub closed_form: usize,
    pub unipotent: usize,
}

impl ModelSummary {
    pub fn passed(&self) -> bool {
        [self.darboux, self.invertible, self.closed_form, self.unipotent]
            .iter()
            .all(|&c| c == self.samples)
    }
}

pub fn model_check<R: Rng + ?Sized>(rng: &mut R, ell: usize, samples: usize) -> Result<ModelSummary> {
    let mut out = ModelSummary {
        ell,
        samples,
        darboux: 0,
        invertible: 0,
        closed_form: 0,
        unipotent: 0,
    };
    for _ in 0..samples {
        let p = LeafPoint::random(rng, ell);
        let c = check_point(&p)?;
        out.darboux += c.darboux as usize;
        out.invertible += c.invertible as usize;
        out.closed_form += c.closed_form as usize;
        out.unipotent += c.unipotent as usize;
        if !c.all() {
            log::warn!("model check failed at {p:?}: {c:?}");
        }
    }
    Ok(out)
}
