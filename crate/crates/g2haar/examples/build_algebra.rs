//! Construct the algebra from its commutator table and build both matrix
//! backends, printing the invariants that make them trustworthy: the Jacobi
//! residual, the trace normalization `kappa`, and the worst commutator
//! mismatch of each backend.
//!
//! ```text
//! cargo run --example build_algebra
//! ```

use g2haar::algebra::{AlgebraElement, Backend, BackendKind, StructureConstants};

fn main() {
    let sc = StructureConstants::new();
    println!("structure constants");
    println!("  jacobi residual        {:.3e}", sc.jacobi_residual());
    println!("  antisymmetry residual  {:.3e}", sc.antisymmetry_residual());
    println!("  su(3) closure          {}", sc.su3_closure_holds());
    println!("  [C9, C1..C3] = 0       {}", sc.c9_centralizer_holds());

    // a few table entries and the bilinear bracket
    let b12 = sc.bracket(&AlgebraElement::basis(1), &AlgebraElement::basis(2));
    println!("  [C1, C2] coordinates   {:?} (2 C3)", &b12.coords()[..4]);
    let b45 = sc.bracket(&AlgebraElement::basis(4), &AlgebraElement::basis(5));
    println!(
        "  [C4, C5] = {:.0} C3 + {:.6} C8",
        b45.coord(3),
        b45.coord(8)
    );

    for kind in [BackendKind::Adjoint, BackendKind::Octonion7] {
        let backend = Backend::new(&sc, kind).expect("backend construction");
        let (i, j, worst) = backend.worst_commutator(&sc);
        println!("backend {}", kind.name());
        println!("  dimension              {}", backend.dim());
        println!("  kappa                  {:.12}", backend.kappa());
        println!("  gram residual          {:.3e}", backend.gram_residual());
        println!("  worst commutator       {:.3e} at (C{i}, C{j})", worst);
    }

    // projection round trip: coordinates -> matrix -> coordinates
    let backend = Backend::adjoint();
    let x = AlgebraElement::new([0.5, -1.0, 2.0, 0.0, 0.3, 0.0, 0.0, 1.5, -0.7, 0.0, 0.2, 0.0, 0.0, 0.9]);
    let proj = backend.project(&backend.element_matrix(&x));
    let round_trip = AlgebraElement::new(proj.coords).sub(&x).norm_max();
    println!("projection round trip    {round_trip:.3e} (residual {:.3e})", proj.residual);
}
