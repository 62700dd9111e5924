use std::fmt;

use super::{bouton_classify, pure_nim_winner_closed_form, Class, OracleTable};
use crate::bitgrid::{Sheet, SheetKind};
use crate::engine::{Mode, SheetSource};
use crate::error::{Error, Result};
use crate::rules::{Game, Position};

/// One cell where a sheet disagrees with an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub kind: SheetKind,
    pub level: u32,
    pub y: u32,
    pub z: u32,
    pub expected: bool,
    pub actual: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{},{},{}]: expected {}, sheet has {}",
            self.kind, self.level, self.y, self.z, self.expected as u8, self.actual as u8
        )
    }
}

/// Outcome of a comparison. Only the first [`DiffReport::KEEP`] mismatches are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffReport {
    pub compared: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub const KEEP: usize = 64;

    pub fn is_clean(&self) -> bool {
        self.mismatch_count == 0
    }

    fn record(&mut self, kind: SheetKind, level: u32, y: usize, z: usize, expected: bool, actual: bool) {
        self.compared += 1;
        if expected != actual {
            self.mismatch_count += 1;
            if self.mismatches.len() < Self::KEEP {
                self.mismatches.push(Mismatch {
                    kind,
                    level,
                    y: y as u32,
                    z: z as u32,
                    expected,
                    actual,
                });
            }
        }
    }

    fn merge(&mut self, other: DiffReport) {
        self.compared += other.compared;
        self.mismatch_count += other.mismatch_count;
        let room = Self::KEEP.saturating_sub(self.mismatches.len());
        self.mismatches.extend(other.mismatches.into_iter().take(room));
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cells compared, {} mismatches", self.compared, self.mismatch_count)
    }
}

fn require_nim_pure_kind(source: &dyn SheetSource, kind: SheetKind) -> Result<()> {
    if source.game() != Game::Nim3 {
        return Err(Error::config("this oracle only describes Nim"));
    }
    if !matches!(source.mode(), Mode::Pure | Mode::WithPass) || !source.has_kind(kind) {
        return Err(Error::config(format!("the run has no pure {kind} sheets")));
    }
    Ok(())
}

fn diff_cells<F>(source: &dyn SheetSource, kind: SheetKind, mut expected: F) -> Result<DiffReport>
where
    F: FnMut(u32, usize, usize) -> Option<bool>,
{
    let mut report = DiffReport::default();
    for level in 0..source.levels() {
        let sheet: Sheet = source.require(kind, level)?;
        let rows = source.exact_rows(level).min(sheet.height());
        for y in 0..rows {
            for z in 0..sheet.width() {
                if let Some(want) = expected(level, y, z) {
                    report.record(kind, level, y, z, want, sheet.get(y, z));
                }
            }
        }
    }
    Ok(report)
}

/// Pure Nim losers against the nim-sum rule.
pub fn diff_bouton(source: &dyn SheetSource) -> Result<DiffReport> {
    require_nim_pure_kind(source, SheetKind::L)?;
    diff_cells(source, SheetKind::L, |x, y, z| {
        Some(bouton_classify(x, y as u32, z as u32) == Class::P)
    })
}

/// Pure Nim instant winners against `y ^ z < x`.
pub fn diff_closed_form(source: &dyn SheetSource) -> Result<DiffReport> {
    require_nim_pure_kind(source, SheetKind::W)?;
    diff_cells(source, SheetKind::W, |x, y, z| {
        Some(pure_nim_winner_closed_form(x, y as u32, z as u32))
    })
}

/// Loser sheets against an exact table, on the cells both cover.
///
/// Pure runs compare `L` with the table's no-pass states, pass runs also compare
/// `L^` with the pass-available states, and generic runs compare `L~` with the
/// no-pass states of a table solved with the same variants.
pub fn diff_table(source: &dyn SheetSource, table: &OracleTable) -> Result<DiffReport> {
    if source.game() != table.game() {
        return Err(Error::config(format!(
            "run is {} but the table is {}",
            source.game(),
            table.game()
        )));
    }
    let mut pairs = Vec::new();
    match source.mode() {
        Mode::Pure => pairs.push((SheetKind::L, false)),
        Mode::WithPass => {
            if source.has_kind(SheetKind::L) {
                pairs.push((SheetKind::L, false));
            }
            if source.has_kind(SheetKind::Lhat) {
                if !table.with_pass() {
                    return Err(Error::config("pass sheets need a table solved with the pass"));
                }
                pairs.push((SheetKind::Lhat, true));
            }
        }
        Mode::Generic => pairs.push((SheetKind::Lt, false)),
    }
    let game = source.game();
    let mut report = DiffReport::default();
    for (kind, pass) in pairs {
        if !source.has_kind(kind) {
            return Err(Error::config(format!("the run has no {kind} sheets")));
        }
        report.merge(diff_cells(source, kind, |x, y, z| {
            let (y, z) = (y as u32, z as u32);
            if !game.is_valid(x, y, z) {
                return None;
            }
            table.classify(Position::new(x, y, z, pass)).map(|c| c == Class::P)
        })?);
    }
    if report.compared == 0 {
        return Err(Error::config("the run and the table share no cells"));
    }
    Ok(report)
}
