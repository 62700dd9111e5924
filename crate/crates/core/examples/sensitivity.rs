//! One extra variant cell at level 50 of generic Nim, and how far its effect spreads.

use passage::analysis::sensitivity_curve;
use passage::engine::{Mode, RunConfig, VariantSource};
use passage::Game;

fn main() -> passage::Result<()> {
    for (label, source) in [
        ("no variants", VariantSource::None),
        ("scattered variants", VariantSource::PerColumnNormal { sigma: 8.0, seed: 2024 }),
    ] {
        let base = RunConfig::new(Game::Nim3, Mode::Generic, 100).with_variants(source);
        let out = sensitivity_curve(&base, 50, 25)?;
        println!("{label}: perturbed P-position {:?}", out.perturbed);
        for x in (45..100).step_by(5) {
            println!("  x = {x:3}  moved {:.3}", out.curve.value_at(x).unwrap());
        }
    }
    Ok(())
}
