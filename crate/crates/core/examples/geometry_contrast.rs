//! Does adding a pass change the winner geometry? Barely for Chomp, visibly for Nim.

use passage::analysis::{geometry_correlation, SimilarityParams};
use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    for game in [Game::Chomp3, Game::Nim3] {
        let run = run_in_memory(&RunConfig::new(game, Mode::WithPass, 101))?;
        let r = geometry_correlation((&run, SheetKind::What), (&run, SheetKind::W), 100, SimilarityParams::default())?;
        println!("{game}: pass vs pure winner density correlation at x = 100: {:.4}", r.unwrap());
    }
    Ok(())
}
