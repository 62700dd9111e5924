//! Pure 3-pile Nim from the sheet recursion, checked against the nim-sum rule.

use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::oracle::{diff_bouton, diff_closed_form};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 32))?;

    let l9 = run.get(SheetKind::L, 9).unwrap();
    println!("P-positions [9, y, z] for y < 8:");
    for y in 0..8 {
        let z = l9.first_in_row(y).unwrap();
        println!("  [9, {y}, {z:2}]   9 ^ {y} ^ {z:2} = {}", 9 ^ y ^ z);
    }

    println!("losers vs nim-sum:        {}", diff_bouton(&run)?);
    println!("winners vs y ^ z < x:     {}", diff_closed_form(&run)?);
    Ok(())
}
