//! How much the pass-winners move the P-positions, level by level, in Nim with a pass.

use passage::analysis::overlap_curve;
use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::Game;

fn main() -> passage::Result<()> {
    let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 201))?;
    let curve = overlap_curve(&run)?;

    for x in (0..=200).step_by(25) {
        println!("x = {x:3}   overlap {:.3}", curve.value_at(x).unwrap());
    }
    let early = curve.mean_over(1..=50).unwrap();
    let late = curve.mean_over(150..=200).unwrap();
    println!("mean over [1,50] {early:.4}, over [150,200] {late:.4}");

    let path = std::env::temp_dir().join("overlap.csv");
    curve.write_csv(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}
