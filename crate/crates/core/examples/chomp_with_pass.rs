//! 3-row Chomp with and without a pass. Rows a >= b >= c map to [x, y, z] = [c, b - c, a - b].

use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    let run = run_in_memory(&RunConfig::new(Game::Chomp3, Mode::WithPass, 8))?;

    for x in 0..8 {
        let l = run.get(SheetKind::L, x).unwrap();
        let lhat = run.get(SheetKind::Lhat, x).unwrap();
        let show = |s: &passage::Sheet| {
            (0..6)
                .map(|y| s.first_in_row(y).map_or("-".to_string(), |z| z.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("x={x}  pure rows 0..6: {:<14} pass rows 0..6: {}", show(l), show(lhat));
    }

    // [1,1,0] is rows (2,2,1) and loses without a pass; with the pass still available it wins.
    let l1 = run.get(SheetKind::L, 1).unwrap();
    let lhat1 = run.get(SheetKind::Lhat, 1).unwrap();
    println!("[1,1,0] is P in pure Chomp: {}, with a pass: {}", l1.get(1, 0), lhat1.get(1, 0));
    Ok(())
}
