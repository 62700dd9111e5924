//! Write a run to disk, read it back with checksum verification, and resume from a level.

use passage::engine::{load_run, run, Mode, Pipeline, PipelineState, RunConfig, SheetSource, VariantSource};
use passage::SheetKind;

fn main() -> passage::Result<()> {
    let dir = std::env::temp_dir().join("passage-run");
    let config = RunConfig::new(passage::Game::Nim3, Mode::Generic, 30)
        .with_variants(VariantSource::PerColumnNormal { sigma: 4.0, seed: 7 })
        .with_out_dir(&dir);
    let manifest = run(&config)?;
    println!("{} files, status {:?}, first checksum {}", manifest.files.len(), manifest.status, &manifest.checksums[0][..16]);

    let loaded = load_run(&dir)?;
    let lt = loaded.require(SheetKind::Lt, 29)?;
    println!("level 29: {} P-positions in {}x{} sheet, {} exact rows", lt.count_ones(), lt.height(), lt.width(), loaded.exact_rows(29));

    // resume from level 20 using the stored instant winners
    let state = PipelineState::from_source(&loaded.manifest().config(), &loaded, 20)?;
    let mut resumed = Pipeline::resume(&loaded.manifest().config(), state)?;
    let level = resumed.next_level()?.unwrap();
    println!("resumed level {} matches the stored sheet: {}", level.level, level.get(SheetKind::Lt) == Some(&loaded.require(SheetKind::Lt, 20)?));
    Ok(())
}
