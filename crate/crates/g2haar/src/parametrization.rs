//! Euler-type coordinates on the group: the six-factor coset map, the
//! eight-factor su(3) subgroup map, and their product covering the whole
//! group.
//!
//! The maps are defined for all real coordinates (they wrap around); the
//! published ranges below cover the group once up to a measure-zero set and
//! are what the Haar sampler draws from.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::Backend;

const SQRT3: f64 = 1.732_050_807_568_877_2;
const PI: f64 = std::f64::consts::PI;

/// The 14 coordinates `(alpha_1..alpha_6, gamma_1..gamma_8)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerCoordinates {
    pub alpha: [f64; 6],
    pub gamma: [f64; 8],
}

impl EulerCoordinates {
    pub fn new(alpha: [f64; 6], gamma: [f64; 8]) -> Self {
        Self { alpha, gamma }
    }

    pub fn zero() -> Self {
        Self::new([0.0; 6], [0.0; 8])
    }

    /// Builds from a flat 14-vector ordered `alpha_1..alpha_6, gamma_1..gamma_8`.
    pub fn from_flat(flat: &[f64; 14]) -> Self {
        let mut alpha = [0.0; 6];
        let mut gamma = [0.0; 8];
        alpha.copy_from_slice(&flat[..6]);
        gamma.copy_from_slice(&flat[6..]);
        Self { alpha, gamma }
    }

    pub fn flat(&self) -> [f64; 14] {
        let mut out = [0.0; 14];
        out[..6].copy_from_slice(&self.alpha);
        out[6..].copy_from_slice(&self.gamma);
        out
    }

    /// Coordinate by flat index `0..14`.
    pub fn get(&self, idx: usize) -> f64 {
        if idx < 6 {
            self.alpha[idx]
        } else {
            self.gamma[idx - 6]
        }
    }

    pub fn set(&mut self, idx: usize, value: f64) {
        if idx < 6 {
            self.alpha[idx] = value;
        } else {
            self.gamma[idx - 6] = value;
        }
    }

    /// True when every coordinate lies in its published closed interval.
    pub fn in_range(&self) -> bool {
        parameter_ranges()
            .iter()
            .zip(self.flat())
            .all(|(r, v)| v >= r.lo && v <= r.hi)
    }
}

/// A closed coordinate interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoordinateRange {
    pub name: &'static str,
    pub lo: f64,
    pub hi: f64,
}

/// The published ranges of the 14 coordinates, in flat order.
pub fn parameter_ranges() -> [CoordinateRange; 14] {
    let r = |name, hi| CoordinateRange { name, lo: 0.0, hi };
    [
        r("alpha1", PI),
        r("alpha2", PI / 2.0),
        r("alpha3", 2.0 * PI),
        r("alpha4", 2.0 * PI),
        r("alpha5", PI / 2.0),
        r("alpha6", PI),
        r("gamma1", 2.0 * PI),
        r("gamma2", PI / 2.0),
        r("gamma3", PI),
        r("gamma4", PI / 2.0),
        r("gamma5", 2.0 * PI),
        r("gamma6", PI),
        r("gamma7", PI / 2.0),
        r("gamma8", PI),
    ]
}

/// An element of the group in the active backend's representation:
/// an orthogonal `dim x dim` matrix with determinant one.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    m: DMatrix<f64>,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        Self { m: DMatrix::identity(dim, dim) }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Inverse via transpose; valid because elements are orthogonal.
    pub fn inverse(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    /// `max |m^T m - 1|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let dim = self.dim();
        (self.m.transpose() * &self.m - DMatrix::<f64>::identity(dim, dim)).amax()
    }

    /// Conjugated generator `g C_i g^{-1}` projected back onto the basis;
    /// the returned residual detects any drift out of the algebra.
    pub fn conjugate_generator(&self, backend: &Backend, i: usize) -> crate::algebra::Projection {
        let m = &self.m * backend.generator(i) * self.m.transpose();
        backend.project(&m)
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement { m: &self.m * &rhs.m }
    }
}

/// One-parameter subgroup `exp(t C_i)`, 1-based generator index.
pub fn exp_generator(backend: &Backend, i: usize, t: f64) -> GroupElement {
    GroupElement { m: backend.exp_generator_matrix(i, t) }
}

/// The eight-factor su(3) subgroup element
/// `e^{g1 C3} e^{g2 C2} e^{g3 C3} e^{g4 C5} e^{sqrt(3) g5 C8} e^{g6 C3} e^{g7 C2} e^{g8 C3}`.
pub fn su3_element(backend: &Backend, gamma: &[f64; 8]) -> GroupElement {
    let factors = [
        (3, gamma[0]),
        (2, gamma[1]),
        (3, gamma[2]),
        (5, gamma[3]),
        (8, SQRT3 * gamma[4]),
        (3, gamma[5]),
        (2, gamma[6]),
        (3, gamma[7]),
    ];
    product_of_factors(backend, &factors)
}

/// The six-factor coset representative
/// `e^{a1 C3} e^{a2 C2} e^{a3 C3} e^{(sqrt(3)/2) a4 C8} e^{a5 C5} e^{(sqrt(3)/2) a6 C9}`.
pub fn sigma(backend: &Backend, alpha: &[f64; 6]) -> GroupElement {
    let factors = [
        (3, alpha[0]),
        (2, alpha[1]),
        (3, alpha[2]),
        (8, SQRT3 / 2.0 * alpha[3]),
        (5, alpha[4]),
        (9, SQRT3 / 2.0 * alpha[5]),
    ];
    product_of_factors(backend, &factors)
}

/// Full group element `sigma(alpha) * su3(gamma)`.
pub fn g2_element(backend: &Backend, c: &EulerCoordinates) -> GroupElement {
    &sigma(backend, &c.alpha) * &su3_element(backend, &c.gamma)
}

fn product_of_factors(backend: &Backend, factors: &[(usize, f64)]) -> GroupElement {
    let mut m = backend.exp_generator_matrix(factors[0].0, factors[0].1);
    for &(i, t) in &factors[1..] {
        m *= backend.exp_generator_matrix(i, t);
    }
    GroupElement { m }
}
