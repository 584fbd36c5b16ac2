//! The invariant volume, three ways: per-coordinate quadrature of the
//! factorized density, the closed forms they must reproduce, and the Gram
//! determinant of the coordinate metric, whose ratio to the printed density
//! is constant across the group.
//!
//! ```text
//! cargo run --example volumes_and_measure
//! ```

use g2haar::algebra::Backend;
use g2haar::measure::{analytic_volume, density_vs_metric, normalization_integral};

fn main() {
    let v = analytic_volume();
    let pi = std::f64::consts::PI;
    let v_su3_exact = 3f64.sqrt() * pi.powi(5);
    let ratio_exact = 0.9 * pi.powi(3);

    println!("volumes by factorized quadrature:");
    println!("  V_SU3            = {:.12}", v.v_su3);
    println!("  sqrt(3) pi^5     = {:.12}   (rel err {:.2e})", v_su3_exact, ((v.v_su3 - v_su3_exact) / v_su3_exact).abs());
    println!("  V_G2 / V_SU3     = {:.12}", v.v_g2 / v.v_su3);
    println!("  9 pi^3 / 10      = {:.12}   (rel err {:.2e})", ratio_exact, ((v.v_g2 / v.v_su3 - ratio_exact) / ratio_exact).abs());
    println!("  V_G2             = {:.6}", v.v_g2);
    println!("  normalized density integrates to {:.12}", normalization_integral());

    // sqrt(det metric) against the printed density at interior points: the
    // ratio is constant; its value is a convention (here exactly 1/2, the
    // printed density being twice the orthonormal-frame volume density)
    let backend = Backend::adjoint();
    let report = density_vs_metric(&backend, 50, 99, 1e-6).expect("interior points");
    println!("\nsqrt(det metric) / printed density over {} interior points:", report.points);
    println!("  ratio mean   = {:.12}", report.ratio_mean);
    println!("  ratio spread = {:.3e}  -> {}", report.ratio_spread, if report.pass { "constant (PASS)" } else { "NOT constant (FAIL)" });
}
