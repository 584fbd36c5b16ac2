//! Build group elements from Euler-type coordinates: factor exponentials,
//! the su(3) subgroup map, the coset map, and their product, with the
//! orthogonality and subgroup checks that pin the construction down.
//!
//! ```text
//! cargo run --example euler_elements
//! ```

use g2haar::algebra::Backend;
use g2haar::measure::sample_haar;
use g2haar::parametrization::{
    exp_generator, g2_element, parameter_ranges, sigma, su3_element, EulerCoordinates,
};

fn main() {
    let backend = Backend::adjoint();

    println!("coordinate ranges");
    for r in parameter_ranges() {
        println!("  {:7}  [{:.6}, {:.6}]", r.name, r.lo, r.hi);
    }

    // the identity sits at the origin
    let origin = g2_element(&backend, &EulerCoordinates::zero());
    println!("\nidentity at origin: residual {:.3e}", origin.orthogonality_residual());

    // one-parameter subgroups close under inversion
    let g = exp_generator(&backend, 9, 1.7);
    let gg = &g * &exp_generator(&backend, 9, -1.7);
    let dim = backend.dim();
    let id_residual = (gg.matrix() - nalgebra::DMatrix::<f64>::identity(dim, dim)).amax();
    println!("exp(t C9) exp(-t C9) = 1 to {id_residual:.3e}");

    // random in-range elements are special orthogonal
    let mut worst_orth = 0.0f64;
    let mut worst_det = 0.0f64;
    for index in 0..1000 {
        let c = sample_haar(1, index).coords;
        let g = g2_element(&backend, &c);
        worst_orth = worst_orth.max(g.orthogonality_residual());
        worst_det = worst_det.max((g.determinant() - 1.0).abs());
    }
    println!("1000 random elements: orthogonality {worst_orth:.3e}, det-1 {worst_det:.3e}");

    // the su(3) factor preserves the span of the first eight generators
    let c = sample_haar(2, 0).coords;
    let s = su3_element(&backend, &c.gamma);
    let mut leak = 0.0f64;
    for k in 8..14 {
        for j in 0..8 {
            leak = leak.max(s.matrix()[(k, j)].abs());
        }
    }
    println!("su(3) invariant-block leak: {leak:.3e}");

    // sigma and the full product
    let cs = sigma(&backend, &c.alpha);
    let full = g2_element(&backend, &c);
    let split = (&cs * &s).matrix() - full.matrix();
    println!("sigma(alpha) su3(gamma) == g2(alpha, gamma): {:.3e}", split.amax());
}
