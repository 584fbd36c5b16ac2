//! Invariant currents and metrics: finite-difference left currents of the
//! full coordinate map, the closed-form coset currents, the bi-invariant
//! metric as a Gram matrix in the orthonormal frame, and the identification
//! of the coset metric with the round six-sphere.

use nalgebra::{Complex, DMatrix};

use crate::algebra::{Backend, ALGEBRA_DIM};
use crate::error::Error;
use crate::parametrization::{g2_element, sigma, EulerCoordinates};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Default central-difference step; O(h^2) truncation balanced against
/// roundoff for O(1) generator norms.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Columns above this reconstruction residual indicate the derivative left
/// the algebra, which is a bug, not noise.
pub const CURRENT_PROJECTION_LIMIT: f64 = 1e-4;

/// Frame of left-current components: column `p` holds the coordinates of
/// `g^{-1} dg/dtheta_p` in the generator basis.
#[derive(Debug, Clone)]
pub struct CurrentFrame {
    components: DMatrix<f64>,
    max_projection_residual: f64,
}

impl CurrentFrame {
    /// The 14 x P component matrix.
    pub fn components(&self) -> &DMatrix<f64> {
        &self.components
    }

    /// Worst reconstruction residual among the projected columns
    /// (zero for closed-form frames).
    pub fn max_projection_residual(&self) -> f64 {
        self.max_projection_residual
    }

    /// Gram matrix `J^T J`: the metric in these coordinates, because the
    /// frame components live in an orthonormal basis.
    pub fn gram(&self) -> MetricTensor {
        MetricTensor { m: self.components.transpose() * &self.components }
    }
}

/// A symmetric positive semidefinite coordinate metric.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    m: DMatrix<f64>,
}

impl MetricTensor {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn symmetry_residual(&self) -> f64 {
        (&self.m - self.m.transpose()).amax()
    }

    /// Smallest eigenvalue; bounded below by roundoff for a Gram matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let sym = nalgebra::SymmetricEigen::new(self.m.clone());
        sym.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }
}

fn current_of_map<F>(
    backend: &Backend,
    point: &[f64],
    map: F,
    h: f64,
) -> Result<CurrentFrame, Error>
where
    F: Fn(&[f64]) -> DMatrix<f64>,
{
    let n = point.len();
    let g_inv = map(point).transpose();
    let mut components = DMatrix::<f64>::zeros(ALGEBRA_DIM, n);
    let mut worst = 0.0f64;
    let mut coords = point.to_vec();
    for p in 0..n {
        let x = coords[p];
        coords[p] = x + h;
        let plus = map(&coords);
        coords[p] = x - h;
        let minus = map(&coords);
        coords[p] = x;
        let derivative = &g_inv * (plus - minus) / (2.0 * h);
        let proj = backend.project(&derivative);
        if proj.residual > CURRENT_PROJECTION_LIMIT {
            return Err(Error::CurrentProjection { column: p, residual: proj.residual });
        }
        worst = worst.max(proj.residual);
        for k in 0..ALGEBRA_DIM {
            components[(k, p)] = proj.coords[k];
        }
    }
    Ok(CurrentFrame { components, max_projection_residual: worst })
}

/// Central-difference left current of the full 14-coordinate map (14 x 14).
pub fn numeric_current(
    backend: &Backend,
    c: &EulerCoordinates,
    h: f64,
) -> Result<CurrentFrame, Error> {
    current_of_map(
        backend,
        &c.flat(),
        |flat| {
            let mut arr = [0.0; 14];
            arr.copy_from_slice(flat);
            g2_element(backend, &EulerCoordinates::from_flat(&arr)).matrix().clone()
        },
        h,
    )
}

/// Central-difference left current of the coset map alone (14 x 6).
pub fn numeric_sigma_current(
    backend: &Backend,
    alpha: &[f64; 6],
    h: f64,
) -> Result<CurrentFrame, Error> {
    current_of_map(
        backend,
        alpha,
        |a| {
            let mut arr = [0.0; 6];
            arr.copy_from_slice(a);
            sigma(backend, &arr).matrix().clone()
        },
        h,
    )
}

/// One-forms over `(da_1 .. da_6)` used by the closed-form currents.
struct CosetForms {
    s1: [f64; 6],
    s2: [f64; 6],
    s3: [f64; 6],
}

fn coset_forms(alpha: &[f64; 6]) -> CosetForms {
    let (a2, a3) = (alpha[1], alpha[2]);
    let mut s1 = [0.0; 6];
    let mut s2 = [0.0; 6];
    let mut s3 = [0.0; 6];
    s1[0] = -(2.0 * a2).sin() * (2.0 * a3).cos();
    s1[1] = (2.0 * a3).sin();
    s2[0] = (2.0 * a2).sin() * (2.0 * a3).sin();
    s2[1] = (2.0 * a3).cos();
    s3[0] = (2.0 * a2).cos();
    s3[2] = 1.0;
    CosetForms { s1, s2, s3 }
}

fn axpy(out: &mut [f64; 6], coeff: f64, form: &[f64; 6]) {
    for (o, f) in out.iter_mut().zip(form) {
        *o += coeff * f;
    }
}

/// Closed-form left current of the coset map (14 x 6).
///
/// The row-9 component is `(sqrt(3)/2) da_6`; rows 10..14 all carry factors of
/// `sin(a_6/2)` and vanish at the pole `a_6 = 0`.
pub fn analytic_sigma_current(alpha: &[f64; 6]) -> CurrentFrame {
    let (a5, a6) = (alpha[4], alpha[5]);
    let CosetForms { s1, s2, s3 } = coset_forms(alpha);
    let ch = (a6 / 2.0).cos();
    let sh = (a6 / 2.0).sin();
    let (s5, c5) = a5.sin_cos();
    let s25 = (2.0 * a5).sin();
    let c25 = (2.0 * a5).cos();

    // s3 + (3/2) da4
    let mut s3p = s3;
    s3p[3] += 1.5;
    // (1/4)(1 + 3 cos 2a5) da4 - sin^2 a5 * s3
    let mut w8 = [0.0; 6];
    w8[3] = 0.25 * (1.0 + 3.0 * c25);
    axpy(&mut w8, -(s5 * s5), &s3);

    let mut rows = [[0.0f64; 6]; ALGEBRA_DIM];
    axpy(&mut rows[0], c5, &s1);
    axpy(&mut rows[1], c5, &s2);
    axpy(&mut rows[2], 0.25 * (3.0 + c25), &s3);
    rows[2][3] += -0.75 * s5 * s5;
    axpy(&mut rows[3], -0.5 * s25 * ch.powi(3), &s3p);
    axpy(&mut rows[3], s5 * sh.powi(3), &s2);
    axpy(&mut rows[4], -s5 * sh.powi(3), &s1);
    rows[4][4] += ch.powi(3);
    axpy(&mut rows[5], s5 * ch.powi(3), &s1);
    rows[5][4] += sh.powi(3);
    axpy(&mut rows[6], 0.5 * s25 * sh.powi(3), &s3p);
    axpy(&mut rows[6], s5 * ch.powi(3), &s2);
    axpy(&mut rows[7], SQRT3 / 2.0 * a6.cos(), &w8);
    rows[8][5] = SQRT3 / 2.0;
    axpy(&mut rows[9], SQRT3 / 2.0 * a6.sin(), &w8);
    axpy(&mut rows[10], -SQRT3 / 2.0 * s25 * ch * sh * sh, &s3p);
    axpy(&mut rows[10], SQRT3 * s5 * sh * ch * ch, &s2);
    axpy(&mut rows[11], -SQRT3 * s5 * sh * ch * ch, &s1);
    rows[11][4] += SQRT3 * ch * sh * sh;
    axpy(&mut rows[12], SQRT3 * s5 * ch * sh * sh, &s1);
    rows[12][4] += SQRT3 * sh * ch * ch;
    axpy(&mut rows[13], SQRT3 / 2.0 * s25 * sh * ch * ch, &s3p);
    axpy(&mut rows[13], SQRT3 * s5 * ch * sh * sh, &s2);

    let components = DMatrix::from_fn(ALGEBRA_DIM, 6, |k, p| rows[k][p]);
    CurrentFrame { components, max_projection_residual: 0.0 }
}

/// Full 14 x 14 coordinate metric as the Gram matrix of the numeric current.
pub fn metric_at(backend: &Backend, c: &EulerCoordinates, h: f64) -> Result<MetricTensor, Error> {
    Ok(numeric_current(backend, c, h)?.gram())
}

/// Coset (base) metric: Gram matrix of rows 9..14 of the closed-form current.
pub fn base_metric_at(alpha: &[f64; 6]) -> MetricTensor {
    let frame = analytic_sigma_current(alpha);
    let block = frame.components().rows(8, 6).into_owned();
    MetricTensor { m: block.transpose() * block }
}

/// The round six-sphere metric in these coordinates:
/// `(3/4) [ da6^2 + sin^2 a6 { da5^2 + cos^2 a5 da4^2
///   + sin^2 a5 (s1^2 + s2^2 + (s3 + da4/2)^2) } ]`.
pub fn round_s6_metric_at(alpha: &[f64; 6]) -> MetricTensor {
    let (a5, a6) = (alpha[4], alpha[5]);
    let CosetForms { s1, s2, s3 } = coset_forms(alpha);
    let mut s3h = s3;
    s3h[3] += 0.5;
    let mut da4 = [0.0; 6];
    da4[3] = 1.0;
    let mut da5 = [0.0; 6];
    da5[4] = 1.0;
    let mut da6 = [0.0; 6];
    da6[5] = 1.0;

    let sa6 = a6.sin();
    let weighted: [(f64, &[f64; 6]); 6] = [
        (1.0, &da6),
        (sa6 * sa6, &da5),
        (sa6 * sa6 * a5.cos() * a5.cos(), &da4),
        (sa6 * sa6 * a5.sin() * a5.sin(), &s1),
        (sa6 * sa6 * a5.sin() * a5.sin(), &s2),
        (sa6 * sa6 * a5.sin() * a5.sin(), &s3h),
    ];
    let mut m = DMatrix::<f64>::zeros(6, 6);
    for (w, form) in weighted {
        for i in 0..6 {
            for j in 0..6 {
                m[(i, j)] += w * form[i] * form[j];
            }
        }
    }
    MetricTensor { m: 0.75 * m }
}

/// Immersion of the coordinate five-sphere into C^3:
/// `(cos a5 e^{i a4}, sin a5 cos a2 e^{i(a1+a3+a4/2)}, sin a5 sin a2 e^{i(a1-a3-a4/2)})`.
pub fn s5_embed(alpha: &[f64; 5]) -> [Complex<f64>; 3] {
    let (a1, a2, a3, a4, a5) = (alpha[0], alpha[1], alpha[2], alpha[3], alpha[4]);
    let polar = |r: f64, phi: f64| Complex::new(r * phi.cos(), r * phi.sin());
    [
        polar(a5.cos(), a4),
        polar(a5.sin() * a2.cos(), a1 + a3 + a4 / 2.0),
        polar(a5.sin() * a2.sin(), a1 - a3 - a4 / 2.0),
    ]
}

/// Pullback of the flat metric `|dz1|^2 + |dz2|^2 + |dz3|^2` along the
/// embedding, by central differences (5 x 5).
pub fn s5_pullback_metric(alpha: &[f64; 5], h: f64) -> MetricTensor {
    // Jacobian of the embedding as a real 6 x 5 matrix
    let mut jac = DMatrix::<f64>::zeros(6, 5);
    let mut a = *alpha;
    for p in 0..5 {
        let x = a[p];
        a[p] = x + h;
        let zp = s5_embed(&a);
        a[p] = x - h;
        let zm = s5_embed(&a);
        a[p] = x;
        for i in 0..3 {
            jac[(2 * i, p)] = (zp[i].re - zm[i].re) / (2.0 * h);
            jac[(2 * i + 1, p)] = (zp[i].im - zm[i].im) / (2.0 * h);
        }
    }
    MetricTensor { m: jac.transpose() * jac }
}

/// One conjugation identity `e^{-x s C} C' e^{x s C} = rhs(x)` evaluated on a
/// grid; `residual` is the worst max-norm mismatch after projection.
#[derive(Debug, Clone)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub residual: f64,
}

type Rhs = fn(f64) -> Vec<(usize, f64)>;

/// The conjugation identities behind the closed-form currents. The last entry
/// groups the three commuting pairs `(C_9, C_j), j = 1, 2, 3`.
fn identity_table() -> Vec<(&'static str, usize, f64, usize, Rhs)> {
    let s: f64 = SQRT3;
    vec![
        ("exp(-x C3) C2 exp(x C3)", 3, 1.0, 2, |x| {
            vec![(2, (2.0 * x).cos()), (1, (2.0 * x).sin())]
        }),
        ("exp(-x C3) C1 exp(x C3)", 3, 1.0, 1, |x| {
            vec![(1, (2.0 * x).cos()), (2, -(2.0 * x).sin())]
        }),
        ("exp(-x C2) C3 exp(x C2)", 2, 1.0, 3, |x| {
            vec![(3, (2.0 * x).cos()), (1, -(2.0 * x).sin())]
        }),
        ("exp(-x C5) C1 exp(x C5)", 5, 1.0, 1, |x| {
            vec![(1, x.cos()), (6, x.sin())]
        }),
        ("exp(-x C5) C2 exp(x C5)", 5, 1.0, 2, |x| {
            vec![(2, x.cos()), (7, x.sin())]
        }),
        ("exp(-x C5) C3 exp(x C5)", 5, 1.0, 3, |x| {
            vec![
                (3, 0.25 * (3.0 + (2.0 * x).cos())),
                (4, -0.5 * (2.0 * x).sin()),
                (8, -SQRT3 / 2.0 * x.sin() * x.sin()),
            ]
        }),
        ("exp(-x C5) C8 exp(x C5)", 5, 1.0, 8, |x| {
            vec![
                (8, 0.25 * (1.0 + 3.0 * (2.0 * x).cos())),
                (4, -SQRT3 / 2.0 * (2.0 * x).sin()),
                (3, -SQRT3 / 2.0 * x.sin() * x.sin()),
            ]
        }),
        ("exp(-sqrt3 x C9) C4 exp(sqrt3 x C9)", 9, s, 4, |x| {
            let (sn, cs) = x.sin_cos();
            vec![
                (4, cs.powi(3)),
                (7, -sn.powi(3)),
                (11, SQRT3 * cs * sn * sn),
                (14, -SQRT3 * sn * cs * cs),
            ]
        }),
        ("exp(-sqrt3 x C9) C5 exp(sqrt3 x C9)", 9, s, 5, |x| {
            let (sn, cs) = x.sin_cos();
            vec![
                (5, cs.powi(3)),
                (6, sn.powi(3)),
                (12, SQRT3 * cs * sn * sn),
                (13, SQRT3 * sn * cs * cs),
            ]
        }),
        ("exp(-sqrt3 x C9) C6 exp(sqrt3 x C9)", 9, s, 6, |x| {
            let (sn, cs) = x.sin_cos();
            vec![
                (6, cs.powi(3)),
                (5, -sn.powi(3)),
                (13, SQRT3 * cs * sn * sn),
                (12, -SQRT3 * sn * cs * cs),
            ]
        }),
        ("exp(-sqrt3 x C9) C7 exp(sqrt3 x C9)", 9, s, 7, |x| {
            let (sn, cs) = x.sin_cos();
            vec![
                (7, cs.powi(3)),
                (4, sn.powi(3)),
                (14, SQRT3 * cs * sn * sn),
                (11, SQRT3 * sn * cs * cs),
            ]
        }),
        ("exp(-sqrt3 x C9) C8 exp(sqrt3 x C9)", 9, s, 8, |x| {
            vec![(8, (2.0 * x).cos()), (10, (2.0 * x).sin())]
        }),
        // C9 commutes with C1, C2, C3: encoded as target 0, handled below
        ("exp(-sqrt3 x C9) C_j exp(sqrt3 x C9) = C_j, j=1,2,3", 9, s, 0, |_x| vec![]),
    ]
}

/// Evaluates all 13 conjugation identities on the grid and reports the worst
/// residual of each. Large residuals are findings, not errors.
pub fn conjugation_residuals(backend: &Backend, grid: &[f64]) -> Vec<IdentityResidual> {
    let table = identity_table();
    let mut out = Vec::with_capacity(table.len());
    for (name, gen, scale, target, rhs) in table {
        let mut worst = 0.0f64;
        for &x in grid {
            let u = backend.exp_generator_matrix(gen, -(x * scale));
            let u_inv = backend.exp_generator_matrix(gen, x * scale);
            let targets: Vec<usize> = if target == 0 { vec![1, 2, 3] } else { vec![target] };
            for t in targets {
                let m = &u * backend.generator(t) * &u_inv;
                let proj = backend.project(&m);
                let mut want = [0.0f64; ALGEBRA_DIM];
                if target == 0 {
                    want[t - 1] = 1.0;
                } else {
                    for (k, c) in rhs(x) {
                        want[k - 1] += c;
                    }
                }
                let mut r = proj.residual;
                for k in 0..ALGEBRA_DIM {
                    r = r.max((proj.coords[k] - want[k]).abs());
                }
                worst = worst.max(r);
            }
        }
        out.push(IdentityResidual { name, residual: worst });
    }
    out
}

/// The standard 20-point grid `x = k pi / 20` used by the verification suite.
pub fn standard_grid() -> Vec<f64> {
    (0..20).map(|k| k as f64 * std::f64::consts::PI / 20.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Backend;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn uniform(rng: &mut ChaCha8Rng) -> f64 {
        (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn random_alpha(rng: &mut ChaCha8Rng) -> [f64; 6] {
        let ranges = crate::parametrization::parameter_ranges();
        let mut a = [0.0; 6];
        for i in 0..6 {
            a[i] = ranges[i].hi * uniform(rng);
        }
        a
    }

    #[test]
    fn current_at_origin_matches_leading_factors() {
        let b = Backend::adjoint();
        let frame = numeric_current(&b, &EulerCoordinates::zero(), 1e-6).unwrap();
        let j = frame.components();
        // alpha1 column is e_3
        assert!((j[(2, 0)] - 1.0).abs() < 1e-9);
        for k in 0..14 {
            if k != 2 {
                assert!(j[(k, 0)].abs() < 1e-9);
            }
        }
        // alpha6 column is (sqrt3/2) e_9
        assert!((j[(8, 5)] - SQRT3 / 2.0).abs() < 1e-9);
    }

    #[test]
    fn analytic_current_examples() {
        // J^9 column: only the da6 entry, sqrt(3)/2
        let alpha = [0.9, 0.4, 1.7, 2.8, 0.8, 2.1];
        let j = analytic_sigma_current(&alpha);
        let row9 = j.components().row(8);
        assert_eq!(row9[5], SQRT3 / 2.0);
        for p in 0..5 {
            assert_eq!(row9[p], 0.0);
        }
        // at a5 = 0 the J^1, J^2 rows reduce to s1, s2
        let alpha0 = [0.9, 0.4, 1.7, 2.8, 0.0, 2.1];
        let j = analytic_sigma_current(&alpha0);
        let CosetForms { s1, s2, .. } = coset_forms(&alpha0);
        for p in 0..6 {
            assert!((j.components()[(0, p)] - s1[p]).abs() < 1e-15);
            assert!((j.components()[(1, p)] - s2[p]).abs() < 1e-15);
        }
        // at a6 = 0 rows 10..14 vanish identically
        let alpha_pole = [0.9, 0.4, 1.7, 2.8, 0.8, 0.0];
        let j = analytic_sigma_current(&alpha_pole);
        for k in 9..14 {
            for p in 0..6 {
                assert_eq!(j.components()[(k, p)], 0.0);
            }
        }
    }

    #[test]
    fn numeric_current_matches_analytic_oracle() {
        let b = Backend::adjoint();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..25 {
            let alpha = random_alpha(&mut rng);
            let jn = numeric_sigma_current(&b, &alpha, 1e-6).unwrap();
            let ja = analytic_sigma_current(&alpha);
            let diff = (jn.components() - ja.components()).amax();
            assert!(diff <= 1e-6, "current mismatch {diff:.3e} at {alpha:?}");
        }
    }

    #[test]
    fn conjugation_identities_on_standard_grid() {
        let b = Backend::adjoint();
        let residuals = conjugation_residuals(&b, &standard_grid());
        assert_eq!(residuals.len(), 13);
        for r in &residuals {
            assert!(r.residual <= 1e-10, "{}: {:.3e}", r.name, r.residual);
        }
    }

    #[test]
    fn identity_three_evaluates_to_minus_c3_at_half_pi() {
        // e^{-x C2} C3 e^{x C2} at x = pi/2 is -C3
        let b = Backend::adjoint();
        let x = std::f64::consts::FRAC_PI_2;
        let u = b.exp_generator_matrix(2, -x);
        let u_inv = b.exp_generator_matrix(2, x);
        let p = b.project(&(&u * b.generator(3) * &u_inv));
        assert!((p.coords[2] + 1.0).abs() <= 1e-12);
        assert!(p.residual <= 1e-12);
    }

    #[test]
    fn base_metric_agrees_with_round_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let alpha = random_alpha(&mut rng);
            let base = base_metric_at(&alpha);
            let round = round_s6_metric_at(&alpha);
            let diff = (base.matrix() - round.matrix()).amax();
            assert!(diff <= 1e-8, "S6 identification fails by {diff:.3e} at {alpha:?}");
        }
    }

    #[test]
    fn base_metric_degenerates_at_the_pole() {
        // at a6 = 0 only da6 survives
        let alpha = [0.3, 0.5, 1.1, 2.0, 0.7, 0.0];
        let m = base_metric_at(&alpha);
        let mut rank = 0;
        let eig = nalgebra::SymmetricEigen::new(m.matrix().clone());
        for v in eig.eigenvalues.iter() {
            if v.abs() > 1e-12 {
                rank += 1;
            }
        }
        assert!(rank <= 1);
    }

    #[test]
    fn s5_embedding_examples() {
        // a5 = 0 -> (e^{i a4}, 0, 0)
        let z = s5_embed(&[0.4, 0.7, 1.3, 2.2, 0.0]);
        assert!((z[0] - Complex::new(2.2f64.cos(), 2.2f64.sin())).norm() < 1e-15);
        assert!(z[1].norm() < 1e-15 && z[2].norm() < 1e-15);
        // a5 = pi/2, a2 = 0 -> (0, e^{i(a1+a3+a4/2)}, 0)
        let (a1, a3, a4) = (0.4, 1.3, 2.2);
        let z = s5_embed(&[a1, 0.0, a3, a4, std::f64::consts::FRAC_PI_2]);
        let phase = a1 + a3 + a4 / 2.0;
        assert!((z[1] - Complex::new(phase.cos(), phase.sin())).norm() < 1e-15);
        assert!(z[0].norm() < 1e-15 && z[2].norm() < 1e-15);
    }

    #[test]
    fn s5_norm_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..1000 {
            let a = random_alpha(&mut rng);
            let z = s5_embed(&[a[0], a[1], a[2], a[3], a[4]]);
            let n: f64 = z.iter().map(|zi| zi.norm_sqr()).sum();
            assert!((n - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn s5_pullback_matches_base_metric_on_the_equator() {
        // the brace of the round metric at a6 = pi/2 restricted to a1..a5
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..20 {
            let mut alpha = random_alpha(&mut rng);
            alpha[5] = std::f64::consts::FRAC_PI_2;
            let brace =
                (4.0 / 3.0) * base_metric_at(&alpha).matrix().view((0, 0), (5, 5)).into_owned();
            let pullback = s5_pullback_metric(&[alpha[0], alpha[1], alpha[2], alpha[3], alpha[4]], 1e-6);
            let diff = (pullback.matrix() - brace).amax();
            assert!(diff <= 1e-6, "pullback mismatch {diff:.3e}");
        }
    }

    #[test]
    fn metric_at_origin_is_the_squared_factor_coefficients() {
        let b = Backend::adjoint();
        let m = metric_at(&b, &EulerCoordinates::zero(), 1e-6).unwrap();
        let want = [1.0, 1.0, 1.0, 0.75, 1.0, 0.75, 1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0];
        for (i, w) in want.iter().enumerate() {
            assert!(
                (m.matrix()[(i, i)] - w).abs() < 1e-8,
                "diagonal {i}: {} vs {w}",
                m.matrix()[(i, i)]
            );
        }
        assert!(m.symmetry_residual() < 1e-12);
        assert!(m.min_eigenvalue() > -1e-8);
    }
}
