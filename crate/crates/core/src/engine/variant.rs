//! Variant (designated automatic N-position) sheets.
//!
//! Per-column normal perturbations draw from a splitmix64 stream whose state is
//! `seed ^ splitmix64(level)`: the first output of a splitmix64 generator started
//! at `level`, XOR-ed into the user seed. Each draw takes two consecutive 53-bit
//! uniforms `u1, u2` in `[0, 1)` and returns `sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`.
//! One Gaussian is consumed per row, rows in increasing order, so a level's
//! sheet does not depend on how many levels the run has.

use serde::{Deserialize, Serialize};

use crate::bitgrid::Sheet;
use crate::error::{Error, Result};
use crate::rules::{pass_winners, Game};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum VariantSource {
    None,
    /// Explicit `[x, y, z]` positions.
    ExplicitPoints { points: Vec<[u32; 3]> },
    /// One cell per row `y`, at `z = round(y + sigma * N(0, 1))` clamped to the sheet.
    PerColumnNormal { sigma: f64, seed: u64 },
    /// The pure game's losers with the terminal removed: the pass-winners.
    PureLosers,
    /// Cellwise union of several sources.
    Union { sources: Vec<VariantSource> },
}

impl VariantSource {
    pub fn points<I: IntoIterator<Item = (u32, u32, u32)>>(points: I) -> Self {
        VariantSource::ExplicitPoints {
            points: points.into_iter().map(|(x, y, z)| [x, y, z]).collect(),
        }
    }

    pub fn is_none(&self) -> bool {
        match self {
            VariantSource::None => true,
            VariantSource::Union { sources } => sources.iter().all(|s| s.is_none()),
            _ => false,
        }
    }

    /// Whether generating this source needs the co-run pure loser sheets.
    pub fn needs_pure_run(&self) -> bool {
        match self {
            VariantSource::PureLosers => true,
            VariantSource::Union { sources } => sources.iter().any(|s| s.needs_pure_run()),
            _ => false,
        }
    }

    /// First seed found in the source tree.
    pub fn seed(&self) -> Option<u64> {
        match self {
            VariantSource::PerColumnNormal { seed, .. } => Some(*seed),
            VariantSource::Union { sources } => sources.iter().find_map(|s| s.seed()),
            _ => None,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            VariantSource::PerColumnNormal { sigma, .. } if !(sigma.is_finite() && *sigma >= 0.0) => {
                Err(Error::config(format!("sigma must be finite and >= 0, got {sigma}")))
            }
            VariantSource::Union { sources } => sources.iter().try_for_each(|s| s.validate()),
            _ => Ok(()),
        }
    }

    /// Add a single explicit point on top of this source.
    pub fn with_point(self, x: u32, y: u32, z: u32) -> Self {
        let extra = VariantSource::points([(x, y, z)]);
        match self {
            VariantSource::None => extra,
            VariantSource::Union { mut sources } => {
                sources.push(extra);
                VariantSource::Union { sources }
            }
            other => VariantSource::Union {
                sources: vec![other, extra],
            },
        }
    }
}

/// Variant sheet for `level` on a `height x width` sheet. `pure_loser` must be the
/// pure game's loser sheet at `level` when the source needs it.
pub fn gen_variant_sheet(
    game: Game,
    level: u32,
    source: &VariantSource,
    height: usize,
    width: usize,
    pure_loser: Option<&Sheet>,
) -> Result<Sheet> {
    let mut out = Sheet::new(height, width)?;
    fill(&mut out, game, level, source, pure_loser)?;
    Ok(out)
}

fn fill(out: &mut Sheet, game: Game, level: u32, source: &VariantSource, pure_loser: Option<&Sheet>) -> Result<()> {
    match source {
        VariantSource::None => {}
        VariantSource::ExplicitPoints { points } => {
            for &[x, y, z] in points {
                let (y, z) = (y as usize, z as usize);
                if x == level && y < out.height() && z < out.width() {
                    out.set(y, z, true);
                }
            }
        }
        VariantSource::PerColumnNormal { sigma, seed } => {
            let mut rng = SplitMix64::for_level(*seed, level);
            let max_z = (out.width() - 1) as f64;
            for y in 0..out.height() {
                let g = rng.next_gaussian();
                let z = (y as f64 + sigma * g).round().clamp(0.0, max_z);
                out.set(y, z as usize, true);
            }
        }
        VariantSource::PureLosers => {
            let l = pure_loser
                .ok_or_else(|| Error::config("pure-loser variants need the co-run pure sheets"))?;
            out.add_assign(&pass_winners(game, l, level))?;
        }
        VariantSource::Union { sources } => {
            for s in sources {
                fill(out, game, level, s, pure_loser)?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn for_level(seed: u64, level: u32) -> Self {
        let mix = SplitMix64::new(level as u64).next_u64();
        SplitMix64::new(seed ^ mix)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller (cosine branch only).
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}
