//! Nim with a single pass: the hatted recursion L^ = M(W^ + L) run next to pure Nim.

use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 12))?;

    for x in [0, 1, 5, 11] {
        let pure = run.get(SheetKind::L, x).unwrap();
        let hat = run.get(SheetKind::Lhat, x).unwrap();
        let row = |s: &passage::Sheet| (0..10).map(|y| s.first_in_row(y).unwrap().to_string()).collect::<Vec<_>>().join(" ");
        println!("level {x:2}  pure P z: {}", row(pure));
        println!("          pass P z: {}", row(hat));
    }

    let what = run.get(SheetKind::What, 11).unwrap();
    let w = run.get(SheetKind::W, 11).unwrap();
    println!("instant-winner fill at level 11: pure {:.4}, pass {:.4}", w.fill_fraction(), what.fill_fraction());
    Ok(())
}
