//! The fibration seen in coordinates: the coset part of the metric is a round
//! six-sphere, and its equatorial five-sphere embeds in C^3 with the flat
//! pullback metric.
//!
//! ```text
//! cargo run --example sphere_fibration
//! ```

use g2haar::geometry::{base_metric_at, round_s6_metric_at, s5_embed, s5_pullback_metric};
use g2haar::measure::sample_haar;

fn main() {
    // coset Gram metric vs the closed-form round metric
    let mut worst = 0.0f64;
    for index in 0..200 {
        let alpha = sample_haar(5, index).coords.alpha;
        let base = base_metric_at(&alpha);
        let round = round_s6_metric_at(&alpha);
        worst = worst.max((base.matrix() - round.matrix()).amax());
    }
    println!("coset metric vs round six-sphere (200 points): {worst:.3e}");

    // the azimuthal pole degenerates the coset directions
    let pole = [0.4, 0.7, 1.1, 2.0, 0.6, 0.0];
    let m = base_metric_at(&pole);
    println!("metric trace at the pole alpha6 = 0: {:.6} (only d alpha6 survives)", m.matrix().trace());

    // unit-norm embedding and its pullback metric on the equator
    let mut worst_norm = 0.0f64;
    let mut worst_pull = 0.0f64;
    for index in 0..200 {
        let c = sample_haar(6, index).coords.alpha;
        let a5 = [c[0], c[1], c[2], c[3], c[4]];
        let z = s5_embed(&a5);
        let norm: f64 = z.iter().map(|zi| zi.norm_sqr()).sum();
        worst_norm = worst_norm.max((norm - 1.0).abs());

        let mut equator = c;
        equator[5] = std::f64::consts::FRAC_PI_2;
        let brace = (4.0 / 3.0)
            * base_metric_at(&equator).matrix().view((0, 0), (5, 5)).into_owned();
        let pull = s5_pullback_metric(&a5, 1e-6);
        worst_pull = worst_pull.max((pull.matrix() - brace).amax());
    }
    println!("|z1|^2+|z2|^2+|z3|^2 - 1 over 200 points: {worst_norm:.3e}");
    println!("pullback metric vs coset brace:           {worst_pull:.3e}");

    let z = s5_embed(&[0.3, 0.5, 0.9, 1.4, 0.8]);
    println!("\nsample embedding point:");
    for (i, zi) in z.iter().enumerate() {
        println!("  z{} = {:+.6} {:+.6}i", i + 1, zi.re, zi.im);
    }
}
