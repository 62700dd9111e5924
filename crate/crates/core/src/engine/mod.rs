//! Sheet-stack pipelines: iterate a recursion step from level 0 to `levels - 1`.
//!
//! A [`Pipeline`] holds only the current instant-winner sheets, so memory stays
//! constant in the number of levels. [`run`] persists each level as soon as it is
//! computed and finishes with a `manifest.json`; [`load_run`] reads a run back.

mod store;
mod variant;

pub use store::{
    load_run, run, run_in_memory, LoadedRun, MemoryRun, RunManifest, RunStatus, SheetSource,
    MANIFEST_FILE,
};
pub use variant::{gen_variant_sheet, SplitMix64, VariantSource};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitgrid::{Sheet, SheetKind};
use crate::error::{Error, Result};
use crate::rules::{step_generic, step_pass, step_pure, Game};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pure,
    #[serde(rename = "pass")]
    WithPass,
    Generic,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pure => "pure",
            Mode::WithPass => "pass",
            Mode::Generic => "generic",
        }
    }

    /// Sheet kinds a run in this mode produces.
    pub fn kinds(self) -> &'static [SheetKind] {
        match self {
            Mode::Pure => &[SheetKind::W, SheetKind::L],
            Mode::WithPass => &[SheetKind::W, SheetKind::L, SheetKind::What, SheetKind::Lhat],
            Mode::Generic => &[SheetKind::V, SheetKind::Wt, SheetKind::Lt],
        }
    }

    /// The instant-winner and loser kinds that carry this mode's own game.
    pub fn primary_kinds(self) -> (SheetKind, SheetKind) {
        match self {
            Mode::Pure => (SheetKind::W, SheetKind::L),
            Mode::WithPass => (SheetKind::What, SheetKind::Lhat),
            Mode::Generic => (SheetKind::Wt, SheetKind::Lt),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pure" => Ok(Mode::Pure),
            "pass" | "withpass" | "with-pass" => Ok(Mode::WithPass),
            "generic" => Ok(Mode::Generic),
            _ => Err(Error::config(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub game: Game,
    pub mode: Mode,
    /// Number of levels computed: `0..levels`.
    pub levels: u32,
    /// Rows wanted exact at every level. Chomp allocates `levels` more.
    pub target_height: usize,
    pub width: usize,
    pub variant_source: VariantSource,
    pub emit: Vec<SheetKind>,
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults: width `4 X + 64`, target height `2 X + 32`, every kind emitted.
    pub fn new(game: Game, mode: Mode, levels: u32) -> Self {
        let width = 4 * levels as usize + 64;
        RunConfig {
            game,
            mode,
            levels,
            target_height: width / 2,
            width,
            variant_source: VariantSource::None,
            emit: mode.kinds().to_vec(),
            out_dir: None,
        }
    }

    pub fn with_width(mut self, width: usize) -> Self {
        self.width = width;
        self
    }

    pub fn with_target_height(mut self, height: usize) -> Self {
        self.target_height = height;
        self
    }

    pub fn with_variants(mut self, source: VariantSource) -> Self {
        self.variant_source = source;
        self
    }

    pub fn with_emit(mut self, kinds: &[SheetKind]) -> Self {
        self.emit = kinds.to_vec();
        self
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }

    /// Rows actually allocated per sheet.
    pub fn height(&self) -> usize {
        match self.game {
            Game::Nim3 => self.target_height,
            Game::Chomp3 => self.target_height + self.levels as usize,
        }
    }

    /// Rows of the level-`x` sheets that do not depend on the allocation.
    pub fn exact_rows(&self, level: u32) -> usize {
        exact_rows(self.game, self.height(), level)
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels == 0 {
            return Err(Error::config("levels must be at least 1"));
        }
        if self.width == 0 || self.target_height == 0 {
            return Err(Error::config("sheet extents must be positive"));
        }
        if self.width > u32::MAX as usize || self.height() > u32::MAX as usize {
            return Err(Error::config("sheet extents must fit in 32 bits"));
        }
        if self.mode != Mode::Generic && !self.variant_source.is_none() {
            return Err(Error::config("variant sources are only valid in generic mode"));
        }
        self.variant_source.validate()?;
        if let Some(k) = self.emit.iter().find(|k| !self.mode.kinds().contains(k)) {
            return Err(Error::config(format!("{} mode does not produce {k} sheets", self.mode)));
        }
        Ok(())
    }
}

pub(crate) fn exact_rows(game: Game, height: usize, level: u32) -> usize {
    match game {
        Game::Nim3 => height,
        Game::Chomp3 => height.saturating_sub(level as usize),
    }
}

/// The sheets produced at one level.
#[derive(Debug, Clone)]
pub struct LevelSheets {
    pub level: u32,
    pub sheets: Vec<(SheetKind, Sheet)>,
}

impl LevelSheets {
    pub fn get(&self, kind: SheetKind) -> Option<&Sheet> {
        self.sheets.iter().find(|(k, _)| *k == kind).map(|(_, s)| s)
    }

    pub fn take(&mut self, kind: SheetKind) -> Option<Sheet> {
        let i = self.sheets.iter().position(|(k, _)| *k == kind)?;
        Some(self.sheets.swap_remove(i).1)
    }
}

/// The instant-winner sheets a pipeline carries between levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineState {
    pub level: u32,
    pub pure: Option<Sheet>,
    pub hat: Option<Sheet>,
    pub generic: Option<Sheet>,
}

impl PipelineState {
    fn initial(config: &RunConfig) -> Result<Self> {
        let zero = Sheet::new(config.height(), config.width)?;
        let needs_pure = match config.mode {
            Mode::Pure | Mode::WithPass => true,
            Mode::Generic => config.variant_source.needs_pure_run(),
        };
        Ok(PipelineState {
            level: 0,
            pure: needs_pure.then(|| zero.clone()),
            hat: (config.mode == Mode::WithPass).then(|| zero.clone()),
            generic: (config.mode == Mode::Generic).then_some(zero),
        })
    }

    /// State at `level` rebuilt from a persisted run's instant-winner sheets.
    pub fn from_source(config: &RunConfig, source: &dyn SheetSource, level: u32) -> Result<Self> {
        let template = PipelineState::initial(config)?;
        let load = |kind: SheetKind| -> Result<Sheet> {
            let s = source
                .sheet(kind, level)?
                .ok_or_else(|| Error::config(format!("run has no {kind} sheet at level {level}")))?;
            if s.height() != config.height() || s.width() != config.width {
                return Err(Error::config("persisted sheets do not match the config extents"));
            }
            Ok(s)
        };
        Ok(PipelineState {
            level,
            pure: template.pure.map(|_| load(SheetKind::W)).transpose()?,
            hat: template.hat.map(|_| load(SheetKind::What)).transpose()?,
            generic: template.generic.map(|_| load(SheetKind::Wt)).transpose()?,
        })
    }
}

pub struct Pipeline {
    config: RunConfig,
    state: PipelineState,
}

impl Pipeline {
    pub fn new(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        Ok(Pipeline {
            config: config.clone(),
            state: PipelineState::initial(config)?,
        })
    }

    pub fn resume(config: &RunConfig, state: PipelineState) -> Result<Self> {
        config.validate()?;
        Ok(Pipeline {
            config: config.clone(),
            state,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    /// The next level to be computed.
    pub fn level(&self) -> u32 {
        self.state.level
    }

    pub fn state(&self) -> &PipelineState {
        &self.state
    }

    /// Compute the next level, or `None` once `levels` have been produced.
    pub fn next_level(&mut self) -> Result<Option<LevelSheets>> {
        let x = self.state.level;
        if x >= self.config.levels {
            return Ok(None);
        }
        let game = self.config.game;
        let mut sheets = Vec::with_capacity(4);

        let pure_loser = match &self.state.pure {
            Some(w) => {
                let s = step_pure(game, w, x)?;
                Some((s.next, s.loser))
            }
            None => None,
        };

        match self.config.mode {
            Mode::Pure => {}
            Mode::WithPass => {
                let what = self.state.hat.as_ref().expect("pass state");
                let l = &pure_loser.as_ref().expect("pure co-run").1;
                let s = step_pass(game, what, l, x)?;
                let prev = self.state.hat.replace(s.next).expect("pass state");
                sheets.push((SheetKind::What, prev));
                sheets.push((SheetKind::Lhat, s.loser));
            }
            Mode::Generic => {
                let wt = self.state.generic.as_ref().expect("generic state");
                let v = gen_variant_sheet(
                    game,
                    x,
                    &self.config.variant_source,
                    wt.height(),
                    wt.width(),
                    pure_loser.as_ref().map(|(_, l)| l),
                )?;
                let s = step_generic(game, wt, &v, x)?;
                let prev = self.state.generic.replace(s.next).expect("generic state");
                sheets.push((SheetKind::V, v));
                sheets.push((SheetKind::Wt, prev));
                sheets.push((SheetKind::Lt, s.loser));
            }
        }

        if let Some((next, loser)) = pure_loser {
            let prev = self.state.pure.replace(next).expect("pure state");
            if self.config.mode != Mode::Generic {
                sheets.push((SheetKind::W, prev));
                sheets.push((SheetKind::L, loser));
            }
        }

        self.state.level += 1;
        Ok(Some(LevelSheets { level: x, sheets }))
    }
}

impl Iterator for Pipeline {
    type Item = Result<LevelSheets>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_level().transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::new(Game::Chomp3, Mode::Pure, 10);
        assert_eq!(c.width, 104);
        assert_eq!(c.target_height, 52);
        assert_eq!(c.height(), 62);
        assert_eq!(c.exact_rows(3), 59);
        let n = RunConfig::new(Game::Nim3, Mode::Pure, 10);
        assert_eq!(n.height(), 52);
        assert_eq!(n.exact_rows(9), 52);
    }

    #[test]
    fn validation() {
        assert!(RunConfig::new(Game::Nim3, Mode::Pure, 0).validate().is_err());
        let c = RunConfig::new(Game::Nim3, Mode::Pure, 3).with_variants(VariantSource::PureLosers);
        assert!(c.validate().is_err());
        let c = RunConfig::new(Game::Nim3, Mode::Pure, 3).with_emit(&[SheetKind::Lhat]);
        assert!(c.validate().is_err());
        assert!(RunConfig::new(Game::Nim3, Mode::Generic, 3).validate().is_ok());
    }

    #[test]
    fn pipeline_emits_each_level_once() {
        let c = RunConfig::new(Game::Nim3, Mode::WithPass, 5);
        let levels: Vec<_> = Pipeline::new(&c).unwrap().map(|l| l.unwrap()).collect();
        assert_eq!(levels.len(), 5);
        for (i, l) in levels.iter().enumerate() {
            assert_eq!(l.level, i as u32);
            for k in Mode::WithPass.kinds() {
                assert!(l.get(*k).is_some());
            }
        }
        assert!(levels[0].get(SheetKind::W).unwrap().is_zero());
    }

    #[test]
    fn overflow_surfaces_with_level() {
        let c = RunConfig::new(Game::Chomp3, Mode::WithPass, 10).with_width(8);
        let err = Pipeline::new(&c).unwrap().find_map(|r| r.err()).unwrap();
        assert!(matches!(err, Error::Overflow { level: Some(_), .. }), "{err}");
    }

    #[test]
    fn resume_matches_uninterrupted() {
        let c = RunConfig::new(Game::Chomp3, Mode::WithPass, 12);
        let full: Vec<_> = Pipeline::new(&c).unwrap().map(|l| l.unwrap()).collect();
        let mut p = Pipeline::new(&c).unwrap();
        for _ in 0..5 {
            p.next_level().unwrap();
        }
        let state = p.state().clone();
        let resumed: Vec<_> = Pipeline::resume(&c, state).unwrap().map(|l| l.unwrap()).collect();
        assert_eq!(resumed.len(), 7);
        for (a, b) in full[5..].iter().zip(&resumed) {
            assert_eq!(a.level, b.level);
            assert_eq!(a.sheets, b.sheets);
        }
    }
}
