use std::fs;

use passage::engine::{load_run, run, run_in_memory, LoadedRun, Mode, RunConfig, RunStatus, SheetSource, VariantSource, MANIFEST_FILE};
use passage::{Error, Game, SheetKind};

#[test]
fn persisted_run_equals_in_memory_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig::new(Game::Chomp3, Mode::WithPass, 15).with_out_dir(dir.path());
    let manifest = run(&config).unwrap();
    assert_eq!(manifest.status, RunStatus::Complete);
    assert_eq!(manifest.files.len(), 15 * 4);
    let loaded = load_run(dir.path()).unwrap();
    let mem = run_in_memory(&config).unwrap();
    for x in 0..15 {
        for k in Mode::WithPass.kinds() {
            assert_eq!(loaded.sheet(*k, x).unwrap().as_ref(), mem.get(*k, x), "{k} {x}");
        }
    }
    assert_eq!(loaded.manifest().config(), RunConfig { out_dir: None, ..config });
}

#[test]
fn manifest_lists_exactly_the_files_present() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig::new(Game::Nim3, Mode::Generic, 6)
        .with_variants(VariantSource::PerColumnNormal { sigma: 3.0, seed: 11 })
        .with_emit(&[SheetKind::V, SheetKind::Lt])
        .with_out_dir(dir.path());
    let manifest = run(&config).unwrap();
    let mut on_disk: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != MANIFEST_FILE)
        .collect();
    on_disk.sort();
    let mut listed = manifest.files.clone();
    listed.sort();
    assert_eq!(on_disk, listed);
    assert_eq!(manifest.seed, Some(11));
    let loaded = load_run(dir.path()).unwrap();
    assert!(loaded.sheet(SheetKind::Wt, 2).unwrap().is_none());
    assert!(loaded.sheet(SheetKind::Lt, 2).unwrap().is_some());
    assert!(loaded.sheet(SheetKind::Lt, 6).unwrap().is_none());
}

#[test]
fn tampering_is_an_integrity_error() {
    let dir = tempfile::tempdir().unwrap();
    run(&RunConfig::new(Game::Nim3, Mode::Pure, 4).with_out_dir(dir.path())).unwrap();
    let victim = dir.path().join(SheetKind::L.file_name(2));
    let mut bytes = fs::read(&victim).unwrap();
    let last = bytes.len() - 1;
    bytes[last] ^= 1;
    fs::write(&victim, bytes).unwrap();
    match load_run(dir.path()) {
        Err(Error::Integrity(p)) => assert_eq!(p, victim),
        other => panic!("expected integrity error, got {other:?}"),
    }
    let lazy = LoadedRun::open(dir.path()).unwrap();
    assert!(lazy.sheet(SheetKind::L, 1).is_ok());
    assert!(matches!(lazy.sheet(SheetKind::L, 2), Err(Error::Integrity(_))));
    assert_eq!(lazy.damaged_files(), vec![victim]);
}

#[test]
fn overflow_keeps_earlier_levels_and_records_the_failure() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig::new(Game::Chomp3, Mode::WithPass, 10).with_width(8).with_out_dir(dir.path());
    let err = run(&config).unwrap_err();
    let Error::Overflow { level: Some(level), .. } = err else { panic!("{err}") };
    let loaded = load_run(dir.path()).unwrap();
    let m = loaded.manifest();
    assert_eq!(m.status, RunStatus::Overflow);
    assert_eq!(m.failed_level, Some(level));
    assert_eq!(m.levels_completed, level);
    assert!(m.error.as_deref().unwrap().contains("overflow"));
    assert!(loaded.sheet(SheetKind::Lhat, level - 1).unwrap().is_some());
    assert!(loaded.sheet(SheetKind::Lhat, level).unwrap().is_none());
}

#[test]
fn identical_configs_give_identical_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let config = RunConfig::new(Game::Chomp3, Mode::Generic, 12)
        .with_variants(VariantSource::PerColumnNormal { sigma: 4.0, seed: 99 });
    let ma = run(&config.clone().with_out_dir(a.path())).unwrap();
    let mb = run(&config.with_out_dir(b.path())).unwrap();
    assert_eq!(ma.checksums, mb.checksums);
    assert_eq!(
        fs::read(a.path().join(MANIFEST_FILE)).unwrap(),
        fs::read(b.path().join(MANIFEST_FILE)).unwrap()
    );
}

#[test]
fn missing_run_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(load_run(dir.path().join("absent")), Err(Error::Io { .. })));
}
