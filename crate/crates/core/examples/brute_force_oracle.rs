//! The exact game-tree solver on its own: classify positions and dump a table.

use passage::oracle::{brute_force, Bound, Class};
use passage::{Game, Position};

fn main() -> passage::Result<()> {
    let nim = brute_force(Game::Nim3, true, Bound::NimBox(8))?;
    println!("Nim with a pass, piles < 8: {} P / {} N", nim.count(Class::P), nim.count(Class::N));
    for p in [Position::new(0, 0, 0, true), Position::new(1, 1, 1, true), Position::new(1, 2, 3, true), Position::new(1, 2, 3, false)] {
        println!("  {p} is {}", nim.classify(p).unwrap());
    }

    let chomp = brute_force(Game::Chomp3, false, Bound::ChompSum(12))?;
    // rows (a, b, c) = (x + y + z, x + y, x)
    for (a, b, c) in [(2, 1, 0), (3, 1, 1), (3, 2, 0), (5, 3, 2)] {
        let p = Position::new(c, b - c, a - b, false);
        println!("  chomp rows ({a},{b},{c}) = {p} is {}", chomp.classify(p).unwrap());
    }

    let mut csv = Vec::new();
    brute_force(Game::Nim3, false, Bound::NimBox(3))?.write_csv(&mut csv).unwrap();
    print!("{}", String::from_utf8_lossy(&csv).lines().take(6).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
