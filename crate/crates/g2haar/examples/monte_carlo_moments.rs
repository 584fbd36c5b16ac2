//! Monte Carlo over the group: character moments and translation invariance.
//! The character of a nontrivial irreducible representation averages to zero
//! and its square to one; both hold in the 14-dim and the 7-dim backend, which
//! is the statistical evidence that the coordinate ranges cover the group
//! with the right weight.
//!
//! ```text
//! cargo run --example monte_carlo_moments
//! ```

use g2haar::algebra::{Backend, BackendKind, StructureConstants};
use g2haar::measure::{invariance_suite, mc_integrate};

fn main() {
    let sc = StructureConstants::new();
    let n = 50_000;
    let seed = 2718;

    for kind in [BackendKind::Adjoint, BackendKind::Octonion7] {
        let backend = Backend::new(&sc, kind).expect("backend construction");
        let tr = mc_integrate(&backend, |g| g.trace(), n, seed).expect("finite integrand");
        let tr2 = mc_integrate(
            &backend,
            |g| {
                let t = g.trace();
                t * t
            },
            n,
            seed,
        )
        .expect("finite integrand");
        println!("backend {} (n = {n}):", kind.name());
        println!(
            "  E[tr g]      = {:+.5} +- {:.5}   (expected 0, z = {:+.2})",
            tr.mean,
            tr.stderr,
            tr.mean / tr.stderr
        );
        println!(
            "  E[(tr g)^2]  = {:+.5} +- {:.5}   (expected 1, z = {:+.2})",
            tr2.mean,
            tr2.stderr,
            (tr2.mean - 1.0) / tr2.stderr
        );
    }

    // left and right translation invariance for the function panel
    let backend = Backend::adjoint();
    let report = invariance_suite(&backend, 3, n, seed).expect("finite integrands");
    println!("\ninvariance suite (3 fixed translations, 4 functions, both sides):");
    for line in &report.lines {
        println!(
            "  h{} {:18} {:5}  base {:+.4}  translated {:+.4}  z = {:+.3}",
            line.h_index, line.function, line.side, line.base_mean, line.translated_mean, line.z
        );
    }
    println!(
        "max |z| = {:.3} -> {}",
        report.max_abs_z,
        if report.pass { "PASS" } else { "FAIL" }
    );
}
