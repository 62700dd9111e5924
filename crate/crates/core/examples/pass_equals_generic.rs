//! The pass game is the generic game whose variant cells are the pure P-positions.

use passage::engine::{run_in_memory, Mode, RunConfig, VariantSource};
use passage::oracle::pass_generic_equivalence;
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    for game in [Game::Nim3, Game::Chomp3] {
        let e = pass_generic_equivalence(game, 200, None, None)?;
        println!("{game}: pass and generic sheets identical over {} levels: {}", e.levels, e.holds());
    }

    // the same thing by hand for a few levels
    let pass = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 6))?;
    let generic = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Generic, 6).with_variants(VariantSource::PureLosers))?;
    for x in 0..6 {
        let same = pass.get(SheetKind::Lhat, x) == generic.get(SheetKind::Lt, x);
        println!("level {x}: L^ == L~ {same}");
    }
    Ok(())
}
