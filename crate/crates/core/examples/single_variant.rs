//! Generic Nim: declare one pure P-position an automatic win and watch the P-positions move.

use passage::engine::{run_in_memory, Mode, RunConfig, VariantSource};
use passage::oracle::{diff_table, BruteForce, Bound};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    let levels = 24;
    let pure = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, levels))?;
    let config = RunConfig::new(Game::Nim3, Mode::Generic, levels).with_variants(VariantSource::points([(9, 13, 4)]));
    let generic = run_in_memory(&config)?;

    let before = pure.get(SheetKind::L, 9).unwrap().first_in_row(13).unwrap();
    let after = generic.get(SheetKind::Lt, 9).unwrap().first_in_row(13).unwrap();
    println!("row 13 of level 9: P at z = {before} in pure Nim, z = {after} with [9,13,4] declared N");

    for x in [9, 12, 16, 23] {
        let a = pure.get(SheetKind::L, x).unwrap();
        let b = generic.get(SheetKind::Lt, x).unwrap();
        let rows = a.height();
        let moved = (0..rows).filter(|&y| a.first_in_row(y) != b.first_in_row(y)).count();
        println!("level {x:2}: {moved:3} of {rows} rows have a different P-position");
    }

    let table = BruteForce::new(Game::Nim3, Bound::NimBox(24)).with_variants([(9, 13, 4)]).solve()?;
    println!("against the game-tree solver: {}", diff_table(&generic, &table)?);
    Ok(())
}
