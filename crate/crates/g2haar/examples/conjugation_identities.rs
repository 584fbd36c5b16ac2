//! Evaluate the thirteen conjugation identities that the closed-form coset
//! currents rest on, in both backends, on a 20-point grid each.
//!
//! ```text
//! cargo run --example conjugation_identities
//! ```

use g2haar::algebra::{Backend, BackendKind, StructureConstants};
use g2haar::geometry::{conjugation_residuals, standard_grid};

fn main() {
    let sc = StructureConstants::new();
    let grid = standard_grid();
    for kind in [BackendKind::Adjoint, BackendKind::Octonion7] {
        let backend = Backend::new(&sc, kind).expect("backend construction");
        println!("backend {} ({} points per identity)", kind.name(), grid.len());
        for identity in conjugation_residuals(&backend, &grid) {
            println!("  {:64}  {:.3e}", identity.name, identity.residual);
        }
    }
}
