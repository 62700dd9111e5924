use super::{thread_cap, CurveSeries};
use crate::bitgrid::{Sheet, SheetKind};
use crate::engine::{Mode, Pipeline, PipelineState, RunConfig, SheetSource};
use crate::error::{Error, Result};
use crate::rules::{pass_winners, supermex, Game};

/// Fraction of the first `rows` rows whose first set cell agrees between `a` and `b`.
fn row_agreement(a: &Sheet, b: &Sheet, rows: usize) -> f64 {
    let rows = rows.min(a.height()).min(b.height());
    if rows == 0 {
        return 1.0;
    }
    let same = (0..rows).filter(|&y| a.first_in_row(y) == b.first_in_row(y)).count();
    same as f64 / rows as f64
}

/// Overlap at one level: the pass game's losers `lhat` against the supermex of
/// `what` alone, compared row by row over the first `rows` rows.
pub fn overlap_at(game: Game, what: &Sheet, lhat: &Sheet, level: u32, rows: usize) -> Result<f64> {
    let without = supermex(game, what, level)?;
    Ok(row_agreement(lhat, &without, rows))
}

/// Per-level overlap between the pass losers and what the supermex of the pass
/// winners alone would give, i.e. how much the pass-winners move the P-positions.
pub fn overlap_curve(source: &dyn SheetSource) -> Result<CurveSeries> {
    if source.mode() != Mode::WithPass {
        return Err(Error::config("overlap needs a pass run"));
    }
    if !source.has_kind(SheetKind::What) {
        return Err(Error::config("overlap needs the run's what sheets"));
    }
    let stored_lhat = source.has_kind(SheetKind::Lhat);
    if !stored_lhat && !source.has_kind(SheetKind::L) {
        return Err(Error::config("overlap needs the run's lhat or l sheets"));
    }
    let game = source.game();
    let mut curve = CurveSeries::new("overlap")
        .with_meta("game", game)
        .with_meta("levels", source.levels());
    for level in 0..source.levels() {
        let what = source.require(SheetKind::What, level)?;
        let lhat = if stored_lhat {
            source.require(SheetKind::Lhat, level)?
        } else {
            let l = source.require(SheetKind::L, level)?;
            supermex(game, &what.add(&pass_winners(game, &l, level))?, level)?
        };
        let value = overlap_at(game, &what, &lhat, level, source.exact_rows(level))?;
        curve.push(level, value)?;
    }
    Ok(curve)
}

#[derive(Debug, Clone)]
pub struct SensitivityOutcome {
    pub curve: CurveSeries,
    /// The base run's P-position that became a variant cell.
    pub perturbed: (u32, u32, u32),
}

/// First set column of every exact row, for each level from `pipeline`'s current one.
fn loser_rows(mut pipeline: Pipeline, rows: impl Fn(u32) -> usize) -> Result<Vec<Vec<Option<usize>>>> {
    let mut out = Vec::new();
    while let Some(mut level) = pipeline.next_level()? {
        let lt = level.take(SheetKind::Lt).expect("generic pipelines produce lt");
        out.push((0..rows(level.level)).map(|y| lt.first_in_row(y)).collect());
    }
    Ok(out)
}

/// Run `base` and a copy with one extra variant cell on the base P-position in row
/// `y0` of level `x0`; the curve is the fraction of exact rows whose P moved.
///
/// Levels before `x0` are shared and computed once. The two continuations run on
/// separate threads unless `PASSAGE_THREADS` is 1.
pub fn sensitivity_curve(base: &RunConfig, x0: u32, y0: u32) -> Result<SensitivityOutcome> {
    if base.mode != Mode::Generic {
        return Err(Error::config("sensitivity needs a generic run configuration"));
    }
    if x0 >= base.levels {
        return Err(Error::config(format!("perturbation level {x0} is not below {} levels", base.levels)));
    }
    let mut shared = Pipeline::new(base)?;
    for _ in 0..x0 {
        shared.next_level()?;
    }
    let state: PipelineState = shared.state().clone();

    let mut probe = Pipeline::resume(base, state.clone())?;
    let at_x0 = probe.next_level()?.expect("x0 is below the level count");
    let lt = at_x0.get(SheetKind::Lt).expect("generic pipelines produce lt");
    let z0 = (y0 as usize)
        .lt(&base.exact_rows(x0))
        .then(|| lt.first_in_row(y0 as usize))
        .flatten()
        .ok_or_else(|| Error::config(format!("row {y0} of level {x0} has no P-position")))?;

    let perturbed_config = base
        .clone()
        .with_variants(base.variant_source.clone().with_point(x0, y0, z0 as u32));
    let rows = |x: u32| base.exact_rows(x);
    let base_pipe = Pipeline::resume(base, state.clone())?;
    let pert_pipe = Pipeline::resume(&perturbed_config, state)?;

    let (a, b) = if thread_cap() >= 2 {
        std::thread::scope(|s| {
            let h = s.spawn(|| loser_rows(base_pipe, rows));
            let b = loser_rows(pert_pipe, rows);
            (h.join().expect("sensitivity worker panicked"), b)
        })
    } else {
        (loser_rows(base_pipe, rows), loser_rows(pert_pipe, rows))
    };
    let (a, b) = (a?, b?);

    let mut curve = CurveSeries::new("sensitivity")
        .with_meta("game", base.game)
        .with_meta("x0", x0)
        .with_meta("y0", y0);
    for level in 0..x0 {
        curve.push(level, 0.0)?;
    }
    for (i, (ra, rb)) in a.iter().zip(&b).enumerate() {
        let moved = ra.iter().zip(rb).filter(|(p, q)| p != q).count();
        let value = if ra.is_empty() { 0.0 } else { moved as f64 / ra.len() as f64 };
        curve.push(x0 + i as u32, value)?;
    }
    Ok(SensitivityOutcome {
        curve,
        perturbed: (x0, y0, z0 as u32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_in_memory;

    #[test]
    fn nim_level_zero_row_one_moves() {
        let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::WithPass, 1)).unwrap();
        let what = run.get(SheetKind::What, 0).unwrap();
        let lhat = run.get(SheetKind::Lhat, 0).unwrap();
        assert_eq!(lhat.first_in_row(1), Some(2));
        assert_eq!(supermex(Game::Nim3, what, 0).unwrap().first_in_row(1), Some(1));
        assert!(overlap_at(Game::Nim3, what, lhat, 0, lhat.height()).unwrap() < 1.0);
    }

    #[test]
    fn overlap_is_a_fraction_per_level() {
        for game in [Game::Nim3, Game::Chomp3] {
            let run = run_in_memory(&RunConfig::new(game, Mode::WithPass, 12)).unwrap();
            let c = overlap_curve(&run).unwrap();
            assert_eq!(c.len(), 12);
            assert!(c.points.iter().all(|&(_, v)| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn overlap_rejects_pure_runs() {
        let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 2)).unwrap();
        assert!(overlap_curve(&run).is_err());
    }

    #[test]
    fn sensitivity_is_causal() {
        let base = RunConfig::new(Game::Nim3, Mode::Generic, 20);
        let out = sensitivity_curve(&base, 10, 5).unwrap();
        assert_eq!(out.perturbed, (10, 5, 10 ^ 5));
        for x in 0..10 {
            assert_eq!(out.curve.value_at(x), Some(0.0));
        }
        let rows = base.exact_rows(10) as f64;
        assert!(out.curve.value_at(10).unwrap() >= 1.0 / rows);
    }

    #[test]
    fn sensitivity_rejects_bad_inputs() {
        let base = RunConfig::new(Game::Nim3, Mode::Generic, 5);
        assert!(sensitivity_curve(&base, 5, 0).is_err());
        assert!(sensitivity_curve(&base, 2, 10_000).is_err());
        assert!(sensitivity_curve(&RunConfig::new(Game::Nim3, Mode::Pure, 5), 1, 1).is_err());
    }
}
