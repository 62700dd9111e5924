//! Render instant-winner and loser sheets as PGM images (row 0 at the bottom).

use passage::analysis::write_pgm;
use passage::engine::{run_in_memory, Mode, RunConfig};
use passage::{Game, SheetKind};

fn main() -> passage::Result<()> {
    let dir = std::env::temp_dir().join("passage-render");
    std::fs::create_dir_all(&dir).map_err(|e| passage::Error::Io { path: dir.clone(), source: e })?;

    let nim = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 86))?;
    let chomp = run_in_memory(&RunConfig::new(Game::Chomp3, Mode::WithPass, 86))?;
    let images = [
        ("nim_pure_85.pgm", nim.get(SheetKind::W, 85), nim.get(SheetKind::L, 85)),
        ("nim_pass_85.pgm", nim.get(SheetKind::What, 85), nim.get(SheetKind::Lhat, 85)),
        ("chomp_pure_85.pgm", chomp.get(SheetKind::W, 85), chomp.get(SheetKind::L, 85)),
        ("chomp_pass_85.pgm", chomp.get(SheetKind::What, 85), chomp.get(SheetKind::Lhat, 85)),
    ];
    for (name, winners, losers) in images {
        let path = dir.join(name);
        write_pgm(&path, winners, losers)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
