//! Factor-of-two self-similarity of the instant-winner sheets, as block-density correlations.

use passage::analysis::{scale_similarity, scale_similarity_between, SimilarityParams};
use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::Game;

fn main() -> passage::Result<()> {
    let p = SimilarityParams::default();

    let pure = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 101).with_width(512).with_target_height(416))?;
    println!("pure Nim  W50 vs W100:   {:.4}", scale_similarity(&pure, 50, p)?.unwrap());
    println!("pure Nim  W40 vs W100:   {:.4}", scale_similarity_between(&pure, 40, 100, p)?.unwrap());

    let pass = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 111).with_width(576).with_target_height(448))?;
    println!("pass Nim  W^55 vs W^110: {:.4}", scale_similarity(&pass, 55, p)?.unwrap());
    println!("pass Nim  W^50 vs W^110: {:.4}", scale_similarity_between(&pass, 50, 110, p)?.unwrap());
    Ok(())
}
