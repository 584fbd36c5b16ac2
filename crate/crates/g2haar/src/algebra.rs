//! Structure constants of the compact exceptional algebra g2 and faithful
//! matrix backends built from them.
//!
//! The basis `C_1..C_14` is orthonormal for the invariant inner product
//! `<X,Y> = -(1/kappa) Tr(XY)`. The first eight generators close on an su(3)
//! subalgebra, and `C_9` commutes with `C_1, C_2, C_3`; both facts are checked
//! at construction time together with antisymmetry and the Jacobi identity.
//!
//! Two backends realize the same commutation table:
//!
//! * [`BackendKind::Adjoint`]: 14x14 matrices `(ad C_I)_{KJ} = f_{IJ}^K`,
//!   fully determined by the table (faithful because the group is centerless);
//!   `kappa = 16`.
//! * [`BackendKind::Octonion7`]: 7x7 antisymmetric matrices acting on the
//!   imaginary octonions, recovered from the derivation equations and aligned
//!   to the table numerically; `kappa = 4`.

use nalgebra::DMatrix;

use crate::error::Error;

/// Number of generators of the algebra.
pub const ALGEBRA_DIM: usize = 14;

/// Construction-time tolerance for the Jacobi self-check.
pub const JACOBI_TOL: f64 = 1e-12;

/// Construction-time tolerance on backend invariants (commutators, Gram).
pub const BACKEND_TOL: f64 = 1e-10;

/// Upper-triangle bracket table: `(i, j, terms)` with `i < j` encodes
/// `[C_i, C_j] = sum of coeff * C_k` over `terms = (k, coeff)`.
///
/// The `(10,14)` bracket must read `-(2/r3) C_12 - C_5`: total antisymmetry of
/// `f_IJK` together with `[C_5, C_10] = -C_14` forces the minus sign, and the
/// Jacobi identity fails by O(1) with `+C_5`.
fn upper_triangle_entries() -> Vec<(usize, usize, Vec<(usize, f64)>)> {
    let r3 = 3f64.sqrt();
    let q = 2.0 / r3;
    let p = 1.0 / r3;
    vec![
        (1, 2, vec![(3, 2.0)]),
        (1, 3, vec![(2, -2.0)]),
        (1, 4, vec![(7, 1.0)]),
        (1, 5, vec![(6, 1.0)]),
        (1, 6, vec![(5, -1.0)]),
        (1, 7, vec![(4, -1.0)]),
        (1, 11, vec![(14, 1.0)]),
        (1, 12, vec![(13, 1.0)]),
        (1, 13, vec![(12, -1.0)]),
        (1, 14, vec![(11, -1.0)]),
        (2, 3, vec![(1, 2.0)]),
        (2, 4, vec![(6, -1.0)]),
        (2, 5, vec![(7, 1.0)]),
        (2, 6, vec![(4, 1.0)]),
        (2, 7, vec![(5, -1.0)]),
        (2, 11, vec![(13, -1.0)]),
        (2, 12, vec![(14, 1.0)]),
        (2, 13, vec![(11, 1.0)]),
        (2, 14, vec![(12, -1.0)]),
        (3, 4, vec![(5, 1.0)]),
        (3, 5, vec![(4, -1.0)]),
        (3, 6, vec![(7, 1.0)]),
        (3, 7, vec![(6, -1.0)]),
        (3, 11, vec![(12, 1.0)]),
        (3, 12, vec![(11, -1.0)]),
        (3, 13, vec![(14, 1.0)]),
        (3, 14, vec![(13, -1.0)]),
        (4, 5, vec![(3, 1.0), (8, r3)]),
        (4, 6, vec![(2, -1.0)]),
        (4, 7, vec![(1, 1.0)]),
        (4, 8, vec![(5, -r3)]),
        (4, 9, vec![(14, -1.0)]),
        (4, 10, vec![(13, -1.0)]),
        (4, 13, vec![(10, 1.0)]),
        (4, 14, vec![(9, 1.0)]),
        (5, 6, vec![(1, 1.0)]),
        (5, 7, vec![(2, 1.0)]),
        (5, 8, vec![(4, r3)]),
        (5, 9, vec![(13, 1.0)]),
        (5, 10, vec![(14, -1.0)]),
        (5, 13, vec![(9, -1.0)]),
        (5, 14, vec![(10, 1.0)]),
        (6, 7, vec![(3, 1.0), (8, -r3)]),
        (6, 8, vec![(7, r3)]),
        (6, 9, vec![(12, -1.0)]),
        (6, 10, vec![(11, 1.0)]),
        (6, 11, vec![(10, -1.0)]),
        (6, 12, vec![(9, 1.0)]),
        (7, 8, vec![(6, -r3)]),
        (7, 9, vec![(11, 1.0)]),
        (7, 10, vec![(12, 1.0)]),
        (7, 11, vec![(9, -1.0)]),
        (7, 12, vec![(10, -1.0)]),
        (8, 9, vec![(10, q)]),
        (8, 10, vec![(9, -q)]),
        (8, 11, vec![(12, -p)]),
        (8, 12, vec![(11, p)]),
        (8, 13, vec![(14, p)]),
        (8, 14, vec![(13, -p)]),
        (9, 10, vec![(8, q)]),
        (9, 11, vec![(7, 1.0), (14, -q)]),
        (9, 12, vec![(13, q), (6, -1.0)]),
        (9, 13, vec![(5, 1.0), (12, -q)]),
        (9, 14, vec![(11, q), (4, -1.0)]),
        (10, 11, vec![(13, q), (6, 1.0)]),
        (10, 12, vec![(14, q), (7, 1.0)]),
        (10, 13, vec![(11, -q), (4, -1.0)]),
        (10, 14, vec![(12, -q), (5, -1.0)]),
        (11, 12, vec![(8, -p), (3, 1.0)]),
        (11, 13, vec![(10, q), (2, -1.0)]),
        (11, 14, vec![(9, -q), (1, 1.0)]),
        (12, 13, vec![(9, q), (1, 1.0)]),
        (12, 14, vec![(10, q), (2, 1.0)]),
        (13, 14, vec![(8, p), (3, 1.0)]),
    ]
}

/// The full antisymmetric table `f_{IJ}^K` with `[C_I, C_J] = sum_K f_{IJ}^K C_K`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    /// Dense table, 0-based: `table[i][j][k] = f_{i+1,j+1}^{k+1}`.
    table: Box<[[[f64; ALGEBRA_DIM]; ALGEBRA_DIM]; ALGEBRA_DIM]>,
    /// All nonzero entries `(i, j, k, coeff)`, 0-based, both triangles.
    nonzero: Vec<(usize, usize, usize, f64)>,
}

impl StructureConstants {
    /// Builds the table from the upper-triangle transcription, completes it by
    /// antisymmetry, and runs the construction self-checks.
    ///
    /// Panics if the Jacobi residual exceeds [`JACOBI_TOL`] or if the su(3)
    /// closure / centralizer facts fail: both indicate a typo in the table and
    /// are unrecoverable.
    pub fn new() -> Self {
        let mut table = Box::new([[[0.0; ALGEBRA_DIM]; ALGEBRA_DIM]; ALGEBRA_DIM]);
        let mut nonzero = Vec::new();
        for (i, j, terms) in upper_triangle_entries() {
            for (k, c) in terms {
                let (i, j, k) = (i - 1, j - 1, k - 1);
                table[i][j][k] = c;
                table[j][i][k] = -c;
                nonzero.push((i, j, k, c));
                nonzero.push((j, i, k, -c));
            }
        }
        let sc = Self { table, nonzero };
        let jacobi = sc.jacobi_residual();
        assert!(
            jacobi <= JACOBI_TOL,
            "structure constant transcription is inconsistent: Jacobi residual {jacobi:.3e}"
        );
        assert!(sc.su3_closure_holds(), "su(3) closure violated in the table");
        assert!(
            sc.c9_centralizer_holds(),
            "C_9 must commute with C_1, C_2, C_3"
        );
        sc
    }

    /// Table entry `f_{IJ}^K`, 1-based indices in `1..=14`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[i - 1][j - 1][k - 1]
    }

    /// Coordinates of `[C_i, C_j]` (1-based pair), i.e. the row `f_{ij}^*`.
    pub fn bracket_row(&self, i: usize, j: usize) -> [f64; ALGEBRA_DIM] {
        self.table[i - 1][j - 1]
    }

    /// Bilinear bracket in coordinates:
    /// `result_K = sum_{I,J} x_I y_J f_{IJ}^K`.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = [0.0; ALGEBRA_DIM];
        for &(i, j, k, c) in &self.nonzero {
            out[k] += x.coords[i] * y.coords[j] * c;
        }
        AlgebraElement::new(out)
    }

    /// Max-norm residual of the Jacobi identity over all index triples.
    pub fn jacobi_residual(&self) -> f64 {
        let t = &self.table;
        let mut worst = 0.0f64;
        for i in 0..ALGEBRA_DIM {
            for j in 0..ALGEBRA_DIM {
                for k in 0..ALGEBRA_DIM {
                    for l in 0..ALGEBRA_DIM {
                        let mut s = 0.0;
                        for m in 0..ALGEBRA_DIM {
                            s += t[i][j][m] * t[m][k][l]
                                + t[j][k][m] * t[m][i][l]
                                + t[k][i][m] * t[m][j][l];
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Max-norm violation of `f_{IJ}^K = -f_{JI}^K` (exactly zero by construction).
    pub fn antisymmetry_residual(&self) -> f64 {
        let t = &self.table;
        let mut worst = 0.0f64;
        for i in 0..ALGEBRA_DIM {
            for j in 0..ALGEBRA_DIM {
                for k in 0..ALGEBRA_DIM {
                    worst = worst.max((t[i][j][k] + t[j][i][k]).abs());
                }
            }
        }
        worst
    }

    /// `f_{ij}^K = 0` whenever `i, j <= 8` and `K >= 9`: the first eight
    /// generators close on a subalgebra.
    pub fn su3_closure_holds(&self) -> bool {
        for i in 0..8 {
            for j in 0..8 {
                for k in 8..ALGEBRA_DIM {
                    if self.table[i][j][k] != 0.0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[C_9, C_j] = 0` for `j = 1, 2, 3`.
    pub fn c9_centralizer_holds(&self) -> bool {
        (0..3).all(|j| self.table[8][j].iter().all(|&c| c == 0.0))
    }
}

impl Default for StructureConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// An algebra vector in the orthonormal `C_I` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    coords: [f64; ALGEBRA_DIM],
}

impl AlgebraElement {
    pub fn new(coords: [f64; ALGEBRA_DIM]) -> Self {
        Self { coords }
    }

    pub fn zero() -> Self {
        Self::new([0.0; ALGEBRA_DIM])
    }

    /// Unit coordinate vector `e_i`, 1-based index.
    pub fn basis(i: usize) -> Self {
        assert!((1..=ALGEBRA_DIM).contains(&i), "generator index {i} out of 1..=14");
        let mut c = [0.0; ALGEBRA_DIM];
        c[i - 1] = 1.0;
        Self::new(c)
    }

    pub fn coords(&self) -> &[f64; ALGEBRA_DIM] {
        &self.coords
    }

    /// Coordinate along `C_i`, 1-based index.
    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i - 1]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.coords;
        for v in &mut c {
            *v *= s;
        }
        Self::new(c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.coords;
        for (v, o) in c.iter_mut().zip(other.coords.iter()) {
            *v += o;
        }
        Self::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Max-norm of the coordinates.
    pub fn norm_max(&self) -> f64 {
        self.coords.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    /// Euclidean norm, which equals the invariant norm in this basis.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Result of projecting a matrix onto the generator basis.
#[derive(Debug, Clone, Copy)]
pub struct Projection {
    /// Coordinates `c_I = -(1/kappa) Tr(C_I M)`.
    pub coords: [f64; ALGEBRA_DIM],
    /// `max |M - sum c_I C_I|`: nonzero when `M` has components outside the algebra.
    pub residual: f64,
}

/// Which faithful matrix realization backs group and algebra computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    /// 14x14 adjoint matrices built directly from the structure constants.
    Adjoint,
    /// 7x7 derivation matrices acting on the imaginary octonions.
    Octonion7,
}

impl BackendKind {
    pub fn name(&self) -> &'static str {
        match self {
            BackendKind::Adjoint => "adjoint",
            BackendKind::Octonion7 => "octonion7",
        }
    }
}

/// Spectral data for one generator: since `C` is antisymmetric with
/// `C^2 = -sum_f f^2 P_f` over orthogonal projectors, the one-parameter group
/// is `exp(tC) = sum_f cos(f t) P_f + (sin(f t)/f) C P_f` (the `f = 0` cluster
/// contributes its projector alone).
#[derive(Debug, Clone)]
struct SpectralExp {
    terms: Vec<ExpTerm>,
}

#[derive(Debug, Clone)]
struct ExpTerm {
    freq: f64,
    proj: DMatrix<f64>,
    c_proj: DMatrix<f64>,
}

impl SpectralExp {
    fn build(c: &DMatrix<f64>) -> Self {
        let dim = c.nrows();
        let s = -(c * c);
        let sym = nalgebra::SymmetricEigen::new(s);
        // sort eigenpairs ascending
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| sym.eigenvalues[a].total_cmp(&sym.eigenvalues[b]));
        let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
        for &idx in &order {
            let lambda = sym.eigenvalues[idx].max(0.0).sqrt();
            match clusters.last_mut() {
                Some((f, members)) if (lambda - *f).abs() < 1e-7 => members.push(idx),
                _ => clusters.push((lambda, vec![idx])),
            }
        }
        let terms = clusters
            .into_iter()
            .map(|(freq, members)| {
                let mut proj = DMatrix::<f64>::zeros(dim, dim);
                for idx in members {
                    let v = sym.eigenvectors.column(idx);
                    proj += v * v.transpose();
                }
                let c_proj = c * &proj;
                ExpTerm { freq, proj, c_proj }
            })
            .collect();
        Self { terms }
    }

    fn eval(&self, t: f64, dim: usize) -> DMatrix<f64> {
        if t == 0.0 {
            return DMatrix::identity(dim, dim);
        }
        let mut out = DMatrix::<f64>::zeros(dim, dim);
        for term in &self.terms {
            let (s, c) = (term.freq * t).sin_cos();
            out += c * &term.proj;
            if term.freq > 1e-9 {
                out += (s / term.freq) * &term.c_proj;
            }
        }
        out
    }
}

/// A faithful matrix realization of the algebra: 14 antisymmetric generators
/// whose commutators reproduce the structure constants, together with the
/// trace normalization `-(1/kappa) Tr(C_I C_J) = delta_IJ`.
#[derive(Debug, Clone)]
pub struct Backend {
    kind: BackendKind,
    dim: usize,
    kappa: f64,
    generators: Vec<DMatrix<f64>>,
    exps: Vec<SpectralExp>,
}

impl Backend {
    /// Builds the requested backend and verifies its invariants against the
    /// given structure constants.
    pub fn new(sc: &StructureConstants, kind: BackendKind) -> Result<Self, Error> {
        let generators = match kind {
            BackendKind::Adjoint => (0..ALGEBRA_DIM)
                .map(|i| {
                    DMatrix::from_fn(ALGEBRA_DIM, ALGEBRA_DIM, |k, j| sc.table[i][j][k])
                })
                .collect::<Vec<_>>(),
            BackendKind::Octonion7 => crate::octonion::aligned_generators(sc)?,
        };
        let dim = generators[0].nrows();

        for (i, g) in generators.iter().enumerate() {
            let r = (g + g.transpose()).amax();
            if r > BACKEND_TOL {
                return Err(Error::NotAntisymmetric { i: i + 1, residual: r });
            }
        }

        // kappa measured from the constructed matrices
        let kappa = -(0..ALGEBRA_DIM)
            .map(|i| (&generators[i] * &generators[i]).trace())
            .sum::<f64>()
            / ALGEBRA_DIM as f64;

        let backend = Self {
            kind,
            dim,
            kappa,
            exps: generators.iter().map(SpectralExp::build).collect(),
            generators,
        };

        let gram = backend.gram_residual();
        if gram > BACKEND_TOL {
            return Err(Error::GramMismatch { residual: gram, tolerance: BACKEND_TOL });
        }
        let (i, j, comm) = backend.worst_commutator(sc);
        if comm > BACKEND_TOL {
            return Err(Error::CommutatorMismatch {
                i,
                j,
                residual: comm,
                tolerance: BACKEND_TOL,
            });
        }
        Ok(backend)
    }

    /// Convenience constructor for the adjoint backend.
    pub fn adjoint() -> Self {
        Self::new(&StructureConstants::new(), BackendKind::Adjoint)
            .expect("adjoint backend is fully determined by the table")
    }

    /// Convenience constructor for the 7-dim octonion backend.
    pub fn octonion7() -> Result<Self, Error> {
        Self::new(&StructureConstants::new(), BackendKind::Octonion7)
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    /// Representation dimension (14 or 7).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Trace normalization constant: `-(1/kappa) Tr(C_I C_J) = delta_IJ`.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Generator matrix `C_i`, 1-based index.
    pub fn generator(&self, i: usize) -> &DMatrix<f64> {
        assert!((1..=ALGEBRA_DIM).contains(&i), "generator index {i} out of 1..=14");
        &self.generators[i - 1]
    }

    /// One-parameter subgroup `exp(t C_i)`, evaluated from precomputed
    /// spectral data of the generator (exact rotations per frequency cluster).
    pub fn exp_generator_matrix(&self, i: usize, t: f64) -> DMatrix<f64> {
        assert!((1..=ALGEBRA_DIM).contains(&i), "generator index {i} out of 1..=14");
        self.exps[i - 1].eval(t, self.dim)
    }

    /// Matrix form `sum_I coords_I C_I` of an algebra element.
    pub fn element_matrix(&self, x: &AlgebraElement) -> DMatrix<f64> {
        let mut m = DMatrix::<f64>::zeros(self.dim, self.dim);
        for (i, &c) in x.coords().iter().enumerate() {
            if c != 0.0 {
                m += c * &self.generators[i];
            }
        }
        m
    }

    /// Orthonormal projection of `m` onto the generator basis, with the
    /// reconstruction residual.
    pub fn project(&self, m: &DMatrix<f64>) -> Projection {
        let mut coords = [0.0; ALGEBRA_DIM];
        for (i, g) in self.generators.iter().enumerate() {
            coords[i] = -(g * m).trace() / self.kappa;
        }
        let mut recon = DMatrix::<f64>::zeros(self.dim, self.dim);
        for (i, g) in self.generators.iter().enumerate() {
            if coords[i] != 0.0 {
                recon += coords[i] * g;
            }
        }
        let residual = (m - recon).amax();
        Projection { coords, residual }
    }

    /// Max-norm Gram deviation: `|-(1/kappa) Tr(C_I C_J) - delta_IJ|`.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..ALGEBRA_DIM {
            for j in i..ALGEBRA_DIM {
                let t = -(&self.generators[i] * &self.generators[j]).trace() / self.kappa;
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((t - want).abs());
            }
        }
        worst
    }

    /// Worst commutator mismatch against the table: `(i, j, residual)`, 1-based.
    pub fn worst_commutator(&self, sc: &StructureConstants) -> (usize, usize, f64) {
        let mut worst = (1, 1, 0.0f64);
        for i in 0..ALGEBRA_DIM {
            for j in (i + 1)..ALGEBRA_DIM {
                let gi = &self.generators[i];
                let gj = &self.generators[j];
                let mut expected = DMatrix::<f64>::zeros(self.dim, self.dim);
                for k in 0..ALGEBRA_DIM {
                    let c = sc.table[i][j][k];
                    if c != 0.0 {
                        expected += c * &self.generators[k];
                    }
                }
                let r = (gi * gj - gj * gi - expected).amax();
                if r > worst.2 {
                    worst = (i + 1, j + 1, r);
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expm::expm;

    #[test]
    fn bracket_examples_from_the_table() {
        let sc = StructureConstants::new();
        // [C_1, C_2] = 2 C_3
        assert_eq!(sc.f(1, 2, 3), 2.0);
        let b = sc.bracket(&AlgebraElement::basis(1), &AlgebraElement::basis(2));
        assert_eq!(b.coord(3), 2.0);
        assert_eq!(b.sub(&AlgebraElement::basis(3).scale(2.0)).norm_max(), 0.0);
        // [C_4, C_5] = C_3 + sqrt(3) C_8
        assert_eq!(sc.f(4, 5, 3), 1.0);
        assert_eq!(sc.f(4, 5, 8), 3f64.sqrt());
        // [C_8, C_9] = (2/sqrt(3)) C_10
        assert_eq!(sc.f(8, 9, 10), 2.0 / 3f64.sqrt());
        // antisymmetry
        assert_eq!(sc.f(2, 1, 3), -2.0);
        // [C_9, C_1] = 0
        let b = sc.bracket(&AlgebraElement::basis(9), &AlgebraElement::basis(1));
        assert_eq!(b.norm_max(), 0.0);
    }

    #[test]
    fn bracket_of_element_with_itself_vanishes() {
        let sc = StructureConstants::new();
        let x = AlgebraElement::new([
            0.3, -1.2, 0.7, 2.1, -0.4, 0.9, -1.7, 0.2, 1.1, -0.8, 0.5, 1.9, -2.2, 0.6,
        ]);
        assert!(sc.bracket(&x, &x).norm_max() < 1e-14);
    }

    #[test]
    fn jacobi_and_structure_facts() {
        let sc = StructureConstants::new();
        assert!(sc.jacobi_residual() <= JACOBI_TOL);
        assert_eq!(sc.antisymmetry_residual(), 0.0);
        assert!(sc.su3_closure_holds());
        assert!(sc.c9_centralizer_holds());
    }

    #[test]
    fn adjoint_backend_invariants() {
        let sc = StructureConstants::new();
        let b = Backend::new(&sc, BackendKind::Adjoint).unwrap();
        assert_eq!(b.dim(), 14);
        assert!((b.kappa() - 16.0).abs() < 1e-12, "kappa = {}", b.kappa());
        assert!(b.gram_residual() < 1e-12);
        let (_, _, r) = b.worst_commutator(&sc);
        assert!(r <= 1e-12, "commutator residual {r:.3e}");
    }

    #[test]
    fn projection_is_idempotent_and_linear() {
        let b = Backend::adjoint();
        // project(C_5) = e_5
        let p = b.project(b.generator(5));
        assert!(p.residual < 1e-12);
        let mut want = [0.0; ALGEBRA_DIM];
        want[4] = 1.0;
        for (got, want) in p.coords.iter().zip(want.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
        // project(C_3 + sqrt(3) C_8) = e_3 + sqrt(3) e_8
        let m = b.generator(3) + 3f64.sqrt() * b.generator(8);
        let p = b.project(&m);
        assert!((p.coords[2] - 1.0).abs() < 1e-12);
        assert!((p.coords[7] - 3f64.sqrt()).abs() < 1e-12);
        assert!(p.residual < 1e-12);
        // zero matrix
        let p = b.project(&DMatrix::zeros(14, 14));
        assert_eq!(p.residual, 0.0);
        assert!(p.coords.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn projection_reports_components_outside_the_algebra() {
        let b = Backend::adjoint();
        // a symmetric perturbation cannot be reconstructed from antisymmetric generators
        let mut m = b.generator(2).clone();
        m[(0, 0)] += 0.5;
        let p = b.project(&m);
        assert!(p.residual > 0.4);
    }

    #[test]
    fn spectral_exp_matches_pade_exponential() {
        let b = Backend::adjoint();
        for (i, t) in [(1, 0.3), (5, -1.7), (9, 2.9), (14, 0.001), (3, 11.0)] {
            let fast = b.exp_generator_matrix(i, t);
            let slow = expm(&(t * b.generator(i)));
            assert!(
                (&fast - &slow).amax() < 1e-12,
                "generator {i}, t = {t}: {:.3e}",
                (&fast - &slow).amax()
            );
        }
    }

    #[test]
    fn commutators_match_backend_bracket() {
        // project([C_I, C_J]) equals the table row in the backend
        let sc = StructureConstants::new();
        let b = Backend::adjoint();
        for i in 1..=ALGEBRA_DIM {
            for j in 1..=ALGEBRA_DIM {
                let gi = b.generator(i);
                let gj = b.generator(j);
                let p = b.project(&(gi * gj - gj * gi));
                let row = sc.bracket_row(i, j);
                for k in 0..ALGEBRA_DIM {
                    assert!((p.coords[k] - row[k]).abs() < 1e-10);
                }
                assert!(p.residual < 1e-10);
            }
        }
    }

    /// Second, independently keyed-in transcription of the bracket table,
    /// checked entry-by-entry against the primary one. The format is one
    /// `i j: terms` line per upper-triangle pair with nonzero bracket, where
    /// terms use `r` for sqrt(3), e.g. `2/r*10` for (2/sqrt(3)) C_10.
    const SECOND_COPY: &str = "\
        1 2: 2*3 | 1 3: -2*2 | 1 4: 7 | 1 5: 6 | 1 6: -5 | 1 7: -4 | \
        1 11: 14 | 1 12: 13 | 1 13: -12 | 1 14: -11 | \
        2 3: 2*1 | 2 4: -6 | 2 5: 7 | 2 6: 4 | 2 7: -5 | \
        2 11: -13 | 2 12: 14 | 2 13: 11 | 2 14: -12 | \
        3 4: 5 | 3 5: -4 | 3 6: 7 | 3 7: -6 | \
        3 11: 12 | 3 12: -11 | 3 13: 14 | 3 14: -13 | \
        4 5: 3 + r*8 | 4 6: -2 | 4 7: 1 | 4 8: -r*5 | \
        4 9: -14 | 4 10: -13 | 4 13: 10 | 4 14: 9 | \
        5 6: 1 | 5 7: 2 | 5 8: r*4 | 5 9: 13 | 5 10: -14 | 5 13: -9 | 5 14: 10 | \
        6 7: 3 - r*8 | 6 8: r*7 | 6 9: -12 | 6 10: 11 | 6 11: -10 | 6 12: 9 | \
        7 8: -r*6 | 7 9: 11 | 7 10: 12 | 7 11: -9 | 7 12: -10 | \
        8 9: 2/r*10 | 8 10: -2/r*9 | 8 11: -1/r*12 | 8 12: 1/r*11 | \
        8 13: 1/r*14 | 8 14: -1/r*13 | \
        9 10: 2/r*8 | 9 11: 7 - 2/r*14 | 9 12: 2/r*13 - 6 | \
        9 13: 5 - 2/r*12 | 9 14: 2/r*11 - 4 | \
        10 11: 2/r*13 + 6 | 10 12: 2/r*14 + 7 | 10 13: -2/r*11 - 4 | \
        10 14: -2/r*12 - 5 | \
        11 12: -1/r*8 + 3 | 11 13: 2/r*10 - 2 | 11 14: -2/r*9 + 1 | \
        12 13: 2/r*9 + 1 | 12 14: 2/r*10 + 2 | 13 14: 1/r*8 + 3";

    fn parse_second_copy() -> Vec<(usize, usize, Vec<(usize, f64)>)> {
        let r3 = 3f64.sqrt();
        let mut out = Vec::new();
        for entry in SECOND_COPY.split('|') {
            let (pair, rhs) = entry.trim().split_once(':').unwrap();
            let mut it = pair.split_whitespace();
            let i: usize = it.next().unwrap().parse().unwrap();
            let j: usize = it.next().unwrap().parse().unwrap();
            let mut terms = Vec::new();
            // normalize "a - b" into "+a", "-b" tokens
            let rhs = rhs.replace('-', " + -");
            for term in rhs.split('+') {
                let term = term.trim();
                if term.is_empty() {
                    continue;
                }
                let (coeff, k) = match term.split_once('*') {
                    None => (1.0, term),
                    Some((c, k)) => {
                        let c = c.trim();
                        let (sign, c) = match c.strip_prefix('-') {
                            Some(rest) => (-1.0, rest.trim()),
                            None => (1.0, c),
                        };
                        let val = match c {
                            "2" => 2.0,
                            "r" => r3,
                            "2/r" => 2.0 / r3,
                            "1/r" => 1.0 / r3,
                            other => panic!("unknown coefficient {other:?}"),
                        };
                        (sign * val, k.trim())
                    }
                };
                let (coeff, k) = match k.strip_prefix('-') {
                    Some(rest) => (-coeff, rest),
                    None => (coeff, k),
                };
                terms.push((k.trim().parse::<usize>().unwrap(), coeff));
            }
            out.push((i, j, terms));
        }
        out
    }

    #[test]
    fn table_matches_second_transcription_entry_by_entry() {
        let sc = StructureConstants::new();
        let mut dense = [[[0.0f64; ALGEBRA_DIM]; ALGEBRA_DIM]; ALGEBRA_DIM];
        let entries = parse_second_copy();
        assert_eq!(entries.len(), 74, "upper-triangle pair count");
        for (i, j, terms) in entries {
            for (k, c) in terms {
                dense[i - 1][j - 1][k - 1] = c;
                dense[j - 1][i - 1][k - 1] = -c;
            }
        }
        for i in 1..=ALGEBRA_DIM {
            for j in 1..=ALGEBRA_DIM {
                for k in 1..=ALGEBRA_DIM {
                    assert_eq!(
                        sc.f(i, j, k),
                        dense[i - 1][j - 1][k - 1],
                        "entry f[{i},{j}]^{k}"
                    );
                }
            }
        }
    }
}
