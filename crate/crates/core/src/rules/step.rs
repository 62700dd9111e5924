//! One level of the sheet recursion for each game and rule regime.
//!
//! Every step takes the level-`x` instant-winner sheet (plus whatever extra
//! N-positions the regime pre-marks) and returns the level-`x` loser sheet
//! together with the level-`x + 1` instant-winner sheet.

use super::supermex::{chomp_supermex, nim_supermex};
use super::Game;
use crate::bitgrid::Sheet;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutput {
    /// Instant winners at level `x + 1`.
    pub next: Sheet,
    /// P-positions at level `x`.
    pub loser: Sheet,
}

/// Pass-winners at `level`: the pure losers, minus the terminal (no pass from there).
pub fn pass_winners(game: Game, pure_loser: &Sheet, level: u32) -> Sheet {
    let mut out = pure_loser.clone();
    if let Some((y, z)) = game.terminal_cell(level) {
        if y < out.height() && z < out.width() {
            out.set(y, z, false);
        }
    }
    out
}

/// `L = M(W)`, `W' = W + L`.
pub fn nim_step_pure(winners: &Sheet) -> Result<StepOutput> {
    let loser = nim_supermex(winners)?;
    let next = winners.add(&loser)?;
    Ok(StepOutput { next, loser })
}

/// `L^ = M(W^ + pass-winners)`, `W^' = W^ + L^`.
pub fn nim_step_pass(winners_hat: &Sheet, pure_loser: &Sheet, level: u32) -> Result<StepOutput> {
    let mut premarked = pass_winners(Game::Nim3, pure_loser, level);
    premarked.add_assign(winners_hat)?;
    let loser = nim_supermex(&premarked)?;
    let next = winners_hat.add(&loser)?;
    Ok(StepOutput { next, loser })
}

/// `L~ = M(W~ + V)`, `W~' = W~ + L~`.
pub fn nim_step_generic(winners: &Sheet, variants: &Sheet) -> Result<StepOutput> {
    let premarked = winners.add(variants)?;
    let loser = nim_supermex(&premarked)?;
    let next = winners.add(&loser)?;
    Ok(StepOutput { next, loser })
}

/// One Chomp level from the instant winners and the fully pre-marked sheet.
///
/// Normally `L = M(premarked)` and `W' = shift(W + diag(L))`. Two cases leave the
/// sheet recursion: a P-position at the corner `[x,0,0]` with `x >= 1` is reached
/// from every position above it by a bottom-row cut, so every higher sheet is all
/// instant winners; and a full `W` has no P-positions and stays full.
fn chomp_level(winners: &Sheet, premarked: &Sheet, level: u32) -> Result<StepOutput> {
    let (h, w) = (winners.height(), winners.width());
    if winners.is_full() {
        return Ok(StepOutput {
            next: winners.clone(),
            loser: Sheet::new(h, w)?,
        });
    }
    let loser = chomp_supermex(premarked, level)?;
    let next = if level > 0 && loser.get(0, 0) {
        Sheet::full(h, w)?
    } else {
        let mut next = loser.diag_add()?;
        next.add_assign(winners)?;
        next.left_shift_in_place();
        next
    };
    Ok(StepOutput { next, loser })
}

/// `L = M(W)`, `W' = shift(W + diag(L))`.
pub fn chomp_step_pure(winners: &Sheet, level: u32) -> Result<StepOutput> {
    chomp_level(winners, winners, level)
}

/// `L^ = M(W^ + pass-winners)`, `W^' = shift(W^ + diag(L^))`.
pub fn chomp_step_pass(winners_hat: &Sheet, pure_loser: &Sheet, level: u32) -> Result<StepOutput> {
    let mut premarked = pass_winners(Game::Chomp3, pure_loser, level);
    premarked.add_assign(winners_hat)?;
    chomp_level(winners_hat, &premarked, level)
}

/// `L~ = M(W~ + V)`, `W~' = shift(W~ + diag(L~))`.
pub fn chomp_step_generic(winners: &Sheet, variants: &Sheet, level: u32) -> Result<StepOutput> {
    let premarked = winners.add(variants)?;
    chomp_level(winners, &premarked, level)
}

pub fn step_pure(game: Game, winners: &Sheet, level: u32) -> Result<StepOutput> {
    match game {
        Game::Nim3 => nim_step_pure(winners),
        Game::Chomp3 => chomp_step_pure(winners, level),
    }
    .map_err(|e| e.at_level(level))
}

pub fn step_pass(game: Game, winners_hat: &Sheet, pure_loser: &Sheet, level: u32) -> Result<StepOutput> {
    match game {
        Game::Nim3 => nim_step_pass(winners_hat, pure_loser, level),
        Game::Chomp3 => chomp_step_pass(winners_hat, pure_loser, level),
    }
    .map_err(|e| e.at_level(level))
}

pub fn step_generic(game: Game, winners: &Sheet, variants: &Sheet, level: u32) -> Result<StepOutput> {
    match game {
        Game::Nim3 => nim_step_generic(winners, variants),
        Game::Chomp3 => chomp_step_generic(winners, variants, level),
    }
    .map_err(|e| e.at_level(level))
}
