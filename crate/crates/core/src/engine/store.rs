use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{exact_rows, Mode, Pipeline, RunConfig, VariantSource};
use crate::bitgrid::{io, Sheet, SheetHeader, SheetKind};
use crate::error::{Error, Result};
use crate::persist::{sha256_hex, write_atomic};
use crate::rules::Game;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Read access to a computed sheet stack, on disk or in memory.
pub trait SheetSource {
    fn game(&self) -> Game;
    fn mode(&self) -> Mode;
    /// Levels available: `0..levels()`.
    fn levels(&self) -> u32;
    fn height(&self) -> usize;
    fn width(&self) -> usize;
    /// `Ok(None)` when the kind was not emitted or the level is missing.
    fn sheet(&self, kind: SheetKind, level: u32) -> Result<Option<Sheet>>;

    fn exact_rows(&self, level: u32) -> usize {
        exact_rows(self.game(), self.height(), level)
    }

    fn has_kind(&self, kind: SheetKind) -> bool;

    /// Like [`SheetSource::sheet`] but a missing sheet is a configuration error.
    fn require(&self, kind: SheetKind, level: u32) -> Result<Sheet> {
        self.sheet(kind, level)?
            .ok_or_else(|| Error::config(format!("no {kind} sheet at level {level}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    Overflow,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub engine_version: String,
    pub game: Game,
    pub mode: Mode,
    pub levels: u32,
    pub width: usize,
    /// Allocated rows per sheet.
    pub height: usize,
    pub target_height: usize,
    pub seed: Option<u64>,
    pub variant_source: VariantSource,
    pub emit: Vec<SheetKind>,
    pub files: Vec<String>,
    pub checksums: Vec<String>,
    pub status: RunStatus,
    pub levels_completed: u32,
    pub failed_level: Option<u32>,
    pub error: Option<String>,
}

impl RunManifest {
    fn new(config: &RunConfig) -> Self {
        RunManifest {
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            game: config.game,
            mode: config.mode,
            levels: config.levels,
            width: config.width,
            height: config.height(),
            target_height: config.target_height,
            seed: config.variant_source.seed(),
            variant_source: config.variant_source.clone(),
            emit: config.emit.clone(),
            files: Vec::new(),
            checksums: Vec::new(),
            status: RunStatus::Complete,
            levels_completed: 0,
            failed_level: None,
            error: None,
        }
    }

    /// Rebuild the config that produced this manifest.
    pub fn config(&self) -> RunConfig {
        RunConfig {
            game: self.game,
            mode: self.mode,
            levels: self.levels,
            target_height: self.target_height,
            width: self.width,
            variant_source: self.variant_source.clone(),
            emit: self.emit.clone(),
            out_dir: None,
        }
    }
}

/// Compute a run and persist it under `config.out_dir`.
///
/// Each level's sheets are written as soon as they are computed. If a level
/// fails, the manifest records the failing level and the error is returned;
/// files from earlier levels stay listed and valid.
pub fn run(config: &RunConfig) -> Result<RunManifest> {
    let dir = config
        .out_dir
        .clone()
        .ok_or_else(|| Error::config("run needs an output directory"))?;
    let mut pipeline = Pipeline::new(config)?;
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let mut manifest = RunManifest::new(config);
    let outcome = loop {
        match pipeline.next_level() {
            Ok(Some(level)) => {
                for (kind, sheet) in &level.sheets {
                    if !config.emit.contains(kind) {
                        continue;
                    }
                    let header = SheetHeader {
                        game: config.game,
                        kind: *kind,
                        level: level.level,
                    };
                    let bytes = io::encode(header, sheet);
                    let name = kind.file_name(level.level);
                    write_atomic(&dir.join(&name), &bytes)?;
                    manifest.files.push(name);
                    manifest.checksums.push(sha256_hex(&bytes));
                }
                manifest.levels_completed = level.level + 1;
            }
            Ok(None) => break Ok(()),
            Err(e) => break Err(e),
        }
    };

    if let Err(e) = &outcome {
        manifest.status = match e {
            Error::Overflow { .. } => RunStatus::Overflow,
            _ => RunStatus::Aborted,
        };
        manifest.failed_level = Some(pipeline.level());
        manifest.error = Some(e.to_string());
    }
    let json = serde_json::to_vec_pretty(&manifest)?;
    write_atomic(&dir.join(MANIFEST_FILE), &json)?;
    outcome.map(|()| manifest)
}

/// A persisted run. Sheets are read on demand and checked against the manifest.
#[derive(Debug, Clone)]
pub struct LoadedRun {
    dir: PathBuf,
    manifest: RunManifest,
    index: HashMap<(SheetKind, u32), usize>,
    check_sums: bool,
}

/// Open a run directory and verify every listed file's checksum.
pub fn load_run(dir: impl AsRef<Path>) -> Result<LoadedRun> {
    let run = LoadedRun::open(dir)?;
    match run.damaged_files().into_iter().next() {
        Some(path) => Err(Error::Integrity(path)),
        None => Ok(run),
    }
}

impl LoadedRun {
    /// Open without verifying checksums up front; each access is still verified.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        let path = dir.join(MANIFEST_FILE);
        let text = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let manifest: RunManifest = serde_json::from_slice(&text)?;
        if manifest.files.len() != manifest.checksums.len() {
            return Err(Error::Format("manifest files and checksums differ in length".into()));
        }
        let mut index = HashMap::new();
        for (i, name) in manifest.files.iter().enumerate() {
            let (kind, level) = parse_file_name(name)
                .ok_or_else(|| Error::Format(format!("unexpected file name {name:?} in manifest")))?;
            index.insert((kind, level), i);
        }
        Ok(LoadedRun {
            dir,
            manifest,
            index,
            check_sums: true,
        })
    }

    /// Read sheets without comparing checksums, e.g. to locate damage cell by cell.
    pub fn without_checksums(mut self) -> Self {
        self.check_sums = false;
        self
    }

    /// Listed files that are missing or whose checksum no longer matches.
    pub fn damaged_files(&self) -> Vec<PathBuf> {
        self.manifest
            .files
            .iter()
            .zip(&self.manifest.checksums)
            .map(|(name, sum)| (self.dir.join(name), sum))
            .filter(|(path, sum)| fs::read(path).map_or(true, |b| &sha256_hex(&b) != *sum))
            .map(|(path, _)| path)
            .collect()
    }

    pub fn manifest(&self) -> &RunManifest {
        &self.manifest
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_of(&self, kind: SheetKind, level: u32) -> Option<PathBuf> {
        self.index
            .get(&(kind, level))
            .map(|&i| self.dir.join(&self.manifest.files[i]))
    }
}

fn parse_file_name(name: &str) -> Option<(SheetKind, u32)> {
    let stem = name.strip_suffix(".sht")?;
    let (kind, level) = stem.rsplit_once('_')?;
    Some((kind.parse().ok()?, level.parse().ok()?))
}

impl SheetSource for LoadedRun {
    fn game(&self) -> Game {
        self.manifest.game
    }

    fn mode(&self) -> Mode {
        self.manifest.mode
    }

    fn levels(&self) -> u32 {
        self.manifest.levels_completed
    }

    fn height(&self) -> usize {
        self.manifest.height
    }

    fn width(&self) -> usize {
        self.manifest.width
    }

    fn has_kind(&self, kind: SheetKind) -> bool {
        self.manifest.emit.contains(&kind)
    }

    fn sheet(&self, kind: SheetKind, level: u32) -> Result<Option<Sheet>> {
        let Some(&i) = self.index.get(&(kind, level)) else {
            return Ok(None);
        };
        let path = self.dir.join(&self.manifest.files[i]);
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        if self.check_sums && sha256_hex(&bytes) != self.manifest.checksums[i] {
            return Err(Error::Integrity(path));
        }
        let (header, sheet) = io::decode(&bytes)?;
        if header.kind != kind || header.level != level || header.game != self.manifest.game {
            return Err(Error::Format(format!("header of {} does not match its name", path.display())));
        }
        Ok(Some(sheet))
    }
}

/// Every emitted sheet of a run, kept in memory.
#[derive(Debug, Clone)]
pub struct MemoryRun {
    config: RunConfig,
    levels: u32,
    sheets: BTreeMap<(SheetKind, u32), Sheet>,
}

/// Compute a run without touching the filesystem.
pub fn run_in_memory(config: &RunConfig) -> Result<MemoryRun> {
    let mut sheets = BTreeMap::new();
    let mut levels = 0;
    for level in Pipeline::new(config)? {
        let level = level?;
        for (kind, sheet) in level.sheets {
            if config.emit.contains(&kind) {
                sheets.insert((kind, level.level), sheet);
            }
        }
        levels = level.level + 1;
    }
    Ok(MemoryRun {
        config: config.clone(),
        levels,
        sheets,
    })
}

impl MemoryRun {
    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn get(&self, kind: SheetKind, level: u32) -> Option<&Sheet> {
        self.sheets.get(&(kind, level))
    }

    /// Replace one sheet, e.g. to inject a fault.
    pub fn insert(&mut self, kind: SheetKind, level: u32, sheet: Sheet) {
        self.sheets.insert((kind, level), sheet);
    }
}

impl SheetSource for MemoryRun {
    fn game(&self) -> Game {
        self.config.game
    }

    fn mode(&self) -> Mode {
        self.config.mode
    }

    fn levels(&self) -> u32 {
        self.levels
    }

    fn height(&self) -> usize {
        self.config.height()
    }

    fn width(&self) -> usize {
        self.config.width
    }

    fn has_kind(&self, kind: SheetKind) -> bool {
        self.config.emit.contains(&kind)
    }

    fn sheet(&self, kind: SheetKind, level: u32) -> Result<Option<Sheet>> {
        Ok(self.sheets.get(&(kind, level)).cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_parse() {
        assert_eq!(parse_file_name("lhat_000012.sht"), Some((SheetKind::Lhat, 12)));
        assert_eq!(parse_file_name("w_000000.sht"), Some((SheetKind::W, 0)));
        assert_eq!(parse_file_name("manifest.json"), None);
        assert_eq!(parse_file_name("q_000001.sht"), None);
    }
}
