//! Game definitions, supermex operators and the single-level recursion steps.
//!
//! Coordinates follow the sheet foliation: `x` indexes sheets, `(y, z)` is the
//! cell inside a sheet. For 3-pile Nim the three numbers are pile sizes. For
//! 3-row Chomp with row lengths `a >= b >= c` they are `x = c`, `y = b - c`,
//! `z = a - b`; the lone poison token is `[0,0,1]` and `[0,0,0]` does not exist.

mod step;
mod supermex;

pub use step::{
    chomp_step_generic, chomp_step_pass, chomp_step_pure, nim_step_generic, nim_step_pass,
    nim_step_pure, pass_winners, step_generic, step_pass, step_pure, StepOutput,
};
pub use supermex::{chomp_supermex, nim_supermex, supermex};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Game {
    #[serde(rename = "nim")]
    Nim3,
    #[serde(rename = "chomp")]
    Chomp3,
}

impl Game {
    pub fn code(self) -> u8 {
        match self {
            Game::Nim3 => 0,
            Game::Chomp3 => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Game::Nim3),
            1 => Some(Game::Chomp3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Game::Nim3 => "nim",
            Game::Chomp3 => "chomp",
        }
    }

    pub fn is_valid(self, x: u32, y: u32, z: u32) -> bool {
        match self {
            Game::Nim3 => true,
            Game::Chomp3 => (x, y, z) != (0, 0, 0),
        }
    }

    /// The position with no moves in the pure game.
    pub fn terminal(self) -> (u32, u32, u32) {
        match self {
            Game::Nim3 => (0, 0, 0),
            Game::Chomp3 => (0, 0, 1),
        }
    }

    /// The terminal's `(y, z)` cell if it lies on sheet `level`.
    pub fn terminal_cell(self, level: u32) -> Option<(usize, usize)> {
        let (x, y, z) = self.terminal();
        (level == x).then_some((y as usize, z as usize))
    }

    pub fn is_terminal(self, x: u32, y: u32, z: u32) -> bool {
        (x, y, z) == self.terminal()
    }

    /// Every legal move from `p`. The pass move is offered only under the
    /// with-pass rules, while the pass is still available and `p` is not the
    /// pure-game terminal.
    pub fn children(self, p: Position, with_pass_rules: bool) -> Result<Vec<Position>> {
        let Position { x, y, z, pass } = p;
        if !self.is_valid(x, y, z) {
            return Err(Error::InvalidPosition {
                game: self.name(),
                x,
                y,
                z,
            });
        }
        let mut out = Vec::new();
        let mut push = |x: u32, y: u32, z: u32| {
            if self.is_valid(x, y, z) {
                out.push(Position { x, y, z, pass });
            }
        };
        match self {
            Game::Nim3 => {
                (0..z).for_each(|nz| push(x, y, nz));
                (0..y).for_each(|ny| push(x, ny, z));
                (0..x).for_each(|nx| push(nx, y, z));
            }
            Game::Chomp3 => {
                for t in 1..=z {
                    push(x, y, z - t);
                }
                for t in 1..=y {
                    push(x, y - t, z + t);
                    push(x, y - t, 0);
                }
                for t in 1..=x {
                    push(x - t, y + t, z);
                    push(x - t, 0, z + y + t);
                    push(x - t, 0, 0);
                }
            }
        }
        if with_pass_rules && pass && !self.is_terminal(x, y, z) {
            out.push(Position {
                x,
                y,
                z,
                pass: false,
            });
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Cells of a `height x width` sheet that move to `(y, z)` without leaving the sheet.
    pub fn within_sheet_parents(
        self,
        y: usize,
        z: usize,
        height: usize,
        width: usize,
    ) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (z + 1..width).map(|nz| (y, nz)).collect();
        match self {
            Game::Nim3 => out.extend((y + 1..height).map(|ny| (ny, z))),
            Game::Chomp3 => {
                out.extend((1..=z).filter(|t| y + t < height).map(|t| (y + t, z - t)));
                if z == 0 {
                    for ny in y + 1..height {
                        out.extend((0..width).map(|nz| (ny, nz)));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when `(y1, z1)` moves to `(y2, z2)` on the same sheet.
    pub fn within_sheet_move(self, from: (usize, usize), to: (usize, usize)) -> bool {
        let ((y1, z1), (y2, z2)) = (from, to);
        if y1 == y2 {
            return z2 < z1;
        }
        match self {
            Game::Nim3 => z1 == z2 && y2 < y1,
            Game::Chomp3 => y2 < y1 && (z2 == 0 || y1 + z1 == y2 + z2),
        }
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nim" | "nim3" => Ok(Game::Nim3),
            "chomp" | "chomp3" => Ok(Game::Chomp3),
            _ => Err(Error::config(format!("unknown game {s:?}"))),
        }
    }
}

/// A position `[x, y, z; pass]`; `pass` is true while the pass is still available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub pass: bool,
}

impl Position {
    pub const fn new(x: u32, y: u32, z: u32, pass: bool) -> Self {
        Position { x, y, z, pass }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{};{}]", self.x, self.y, self.z, self.pass as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32, y: u32, z: u32, pass: bool) -> Position {
        Position::new(x, y, z, pass)
    }

    #[test]
    fn nim_children_with_pass() {
        let mut got = Game::Nim3.children(p(1, 1, 0, true), true).unwrap();
        got.sort();
        let mut want = vec![p(0, 1, 0, true), p(1, 0, 0, true), p(1, 1, 0, false)];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn nim_terminal_has_no_pass() {
        assert!(Game::Nim3.children(p(0, 0, 0, true), true).unwrap().is_empty());
    }

    #[test]
    fn chomp_children_skip_empty_board() {
        let mut got = Game::Chomp3.children(p(0, 1, 1, false), false).unwrap();
        got.sort();
        assert_eq!(got, vec![p(0, 0, 2, false), p(0, 1, 0, false)]);
    }

    #[test]
    fn chomp_terminal_has_no_pass() {
        assert!(Game::Chomp3.children(p(0, 0, 1, true), true).unwrap().is_empty());
    }

    #[test]
    fn invalid_chomp_position_is_rejected() {
        assert!(matches!(
            Game::Chomp3.children(p(0, 0, 0, false), false),
            Err(Error::InvalidPosition { .. })
        ));
    }

    #[test]
    fn pass_ignored_without_pass_rules() {
        let c = Game::Nim3.children(p(1, 0, 0, true), false).unwrap();
        assert_eq!(c, vec![p(0, 0, 0, true)]);
    }

    #[test]
    fn move_order_invariants_on_small_boxes() {
        for game in [Game::Nim3, Game::Chomp3] {
            for x in 0..5 {
                for y in 0..5 {
                    for z in 0..5 {
                        if !game.is_valid(x, y, z) {
                            continue;
                        }
                        for c in game.children(p(x, y, z, false), false).unwrap() {
                            assert!(game.is_valid(c.x, c.y, c.z));
                            assert!((c.x, c.y, c.z) < (x, y, z));
                            match game {
                                Game::Nim3 => {
                                    let dec = [(c.x < x), (c.y < y), (c.z < z)];
                                    assert_eq!(dec.iter().filter(|&&d| d).count(), 1);
                                    assert!(c.x <= x && c.y <= y && c.z <= z);
                                }
                                Game::Chomp3 => assert!(c.x + c.y + c.z <= x + y + z),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn within_sheet_parents_agree_with_children() {
        let (h, w) = (6usize, 6usize);
        for game in [Game::Nim3, Game::Chomp3] {
            let x = 2u32;
            for y in 0..h {
                for z in 0..w {
                    let parents = game.within_sheet_parents(y, z, h, w);
                    for py in 0..h {
                        for pz in 0..w {
                            let kids = game
                                .children(p(x, py as u32, pz as u32, false), false)
                                .unwrap();
                            let moves_there = kids
                                .iter()
                                .any(|c| c.x == x && (c.y as usize, c.z as usize) == (y, z));
                            assert_eq!(
                                parents.contains(&(py, pz)),
                                moves_there,
                                "{game} parent ({py},{pz}) of ({y},{z})"
                            );
                            assert_eq!(game.within_sheet_move((py, pz), (y, z)), moves_there);
                        }
                    }
                }
            }
        }
    }
}
