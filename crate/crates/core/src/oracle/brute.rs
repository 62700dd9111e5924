//! Memoized game-tree solver over a move-closed truncation of the position space.

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::Class;
use crate::error::{Error, Result};
use crate::rules::{Game, Position};

/// Largest table the solver will allocate.
const MAX_STATES: usize = 64 << 20;

/// A truncation that no move can leave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Nim positions with every pile `< side`.
    NimBox(u32),
    /// Chomp positions with `x + y + z <= sum`.
    ChompSum(u32),
}

impl Bound {
    pub fn default_for(game: Game) -> Self {
        match game {
            Game::Nim3 => Bound::NimBox(48),
            Game::Chomp3 => Bound::ChompSum(60),
        }
    }

    /// Build the natural bound of `game` from one number.
    pub fn for_game(game: Game, n: u32) -> Self {
        match game {
            Game::Nim3 => Bound::NimBox(n),
            Game::Chomp3 => Bound::ChompSum(n),
        }
    }

    fn side(self) -> usize {
        match self {
            Bound::NimBox(b) => b as usize,
            Bound::ChompSum(s) => s as usize + 1,
        }
    }

    pub fn contains(self, x: u32, y: u32, z: u32) -> bool {
        match self {
            Bound::NimBox(b) => x < b && y < b && z < b,
            Bound::ChompSum(s) => x as u64 + y as u64 + z as u64 <= s as u64,
        }
    }

    /// Largest coordinate value inside the bound, if any.
    pub fn max_coordinate(self) -> Option<u32> {
        match self {
            Bound::NimBox(0) => None,
            Bound::NimBox(b) => Some(b - 1),
            Bound::ChompSum(s) => Some(s),
        }
    }
}

const UNKNOWN: u8 = 0;
const P_CODE: u8 = 1;
const N_CODE: u8 = 2;

/// P/N classification of every position inside a bound.
#[derive(Debug, Clone)]
pub struct OracleTable {
    game: Game,
    with_pass: bool,
    bound: Bound,
    side: usize,
    classes: Vec<u8>,
}

impl OracleTable {
    pub fn game(&self) -> Game {
        self.game
    }

    pub fn with_pass(&self) -> bool {
        self.with_pass
    }

    pub fn bound(&self) -> Bound {
        self.bound
    }

    fn index(&self, p: Position) -> usize {
        let s = self.side;
        (((p.x as usize * s) + p.y as usize) * s + p.z as usize) * 2 + p.pass as usize
    }

    /// Classification of `p`, or `None` outside the bound, for invalid positions, and
    /// for pass-available positions in a table built without the pass.
    pub fn classify(&self, p: Position) -> Option<Class> {
        if !self.bound.contains(p.x, p.y, p.z)
            || !self.game.is_valid(p.x, p.y, p.z)
            || (p.pass && !self.with_pass)
        {
            return None;
        }
        match self.classes[self.index(p)] {
            P_CODE => Some(Class::P),
            N_CODE => Some(Class::N),
            _ => None,
        }
    }

    /// Every valid in-bound position, pass states included when the table has them.
    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        let max = self.bound.max_coordinate().unwrap_or(0);
        let empty = self.bound.max_coordinate().is_none();
        let passes: &[bool] = if self.with_pass { &[false, true] } else { &[false] };
        (0..=max)
            .filter(move |_| !empty)
            .flat_map(move |x| (0..=max).flat_map(move |y| (0..=max).map(move |z| (x, y, z))))
            .filter(move |&(x, y, z)| self.bound.contains(x, y, z) && self.game.is_valid(x, y, z))
            .flat_map(move |(x, y, z)| passes.iter().map(move |&pass| Position::new(x, y, z, pass)))
    }

    pub fn count(&self, class: Class) -> usize {
        self.positions().filter(|&p| self.classify(p) == Some(class)).count()
    }

    /// Audit dump: `x,y,z,pass,class` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,z,pass,class")?;
        for p in self.positions() {
            if let Some(c) = self.classify(p) {
                writeln!(out, "{},{},{},{},{}", p.x, p.y, p.z, p.pass as u8, c)?;
            }
        }
        Ok(())
    }
}

/// Solver configuration. Variant positions are automatic N-positions with no moves.
#[derive(Debug, Clone)]
pub struct BruteForce {
    game: Game,
    bound: Bound,
    with_pass: bool,
    variants: HashSet<(u32, u32, u32)>,
}

impl BruteForce {
    pub fn new(game: Game, bound: Bound) -> Self {
        BruteForce {
            game,
            bound,
            with_pass: false,
            variants: HashSet::new(),
        }
    }

    pub fn with_pass(mut self, with_pass: bool) -> Self {
        self.with_pass = with_pass;
        self
    }

    pub fn with_variants<I: IntoIterator<Item = (u32, u32, u32)>>(mut self, cells: I) -> Self {
        self.variants.extend(cells);
        self
    }

    pub fn solve(&self) -> Result<OracleTable> {
        match (self.game, self.bound) {
            (Game::Nim3, Bound::NimBox(_)) | (Game::Chomp3, Bound::ChompSum(_)) => {}
            (g, b) => {
                return Err(Error::config(format!("bound {b:?} is not move-closed for {g}")));
            }
        }
        let side = self.bound.side();
        let states = side
            .checked_pow(3)
            .and_then(|n| n.checked_mul(2))
            .filter(|&n| n <= MAX_STATES)
            .ok_or_else(|| Error::config(format!("oracle bound {:?} is too large", self.bound)))?;
        let mut table = OracleTable {
            game: self.game,
            with_pass: self.with_pass,
            bound: self.bound,
            side,
            classes: vec![UNKNOWN; states],
        };
        let roots: Vec<Position> = table.positions().collect();
        let mut stack = Vec::new();
        for root in roots {
            self.descend(&mut table, root, &mut stack)?;
        }
        Ok(table)
    }

    fn moves(&self, p: Position) -> Result<Vec<Position>> {
        if self.variants.contains(&(p.x, p.y, p.z)) {
            return Ok(Vec::new());
        }
        self.game.children(p, self.with_pass)
    }

    /// Depth-first evaluation with an explicit stack; a node is classified once all
    /// of its children are.
    fn descend(&self, table: &mut OracleTable, root: Position, stack: &mut Vec<Position>) -> Result<()> {
        stack.clear();
        stack.push(root);
        while let Some(&p) = stack.last() {
            let idx = table.index(p);
            if table.classes[idx] != UNKNOWN {
                stack.pop();
                continue;
            }
            let children = self.moves(p)?;
            let before = stack.len();
            let mut reaches_p = false;
            for c in &children {
                debug_assert!(self.bound.contains(c.x, c.y, c.z), "move left the bound: {p} -> {c}");
                match table.classes[table.index(*c)] {
                    UNKNOWN => stack.push(*c),
                    P_CODE => reaches_p = true,
                    _ => {}
                }
            }
            if stack.len() == before || reaches_p {
                stack.truncate(before);
                let automatic_n = children.is_empty() && self.variants.contains(&(p.x, p.y, p.z));
                table.classes[idx] = if reaches_p || automatic_n { N_CODE } else { P_CODE };
                stack.pop();
            }
        }
        Ok(())
    }
}

/// Solve `game` exactly inside `bound`.
pub fn brute_force(game: Game, with_pass: bool, bound: Bound) -> Result<OracleTable> {
    BruteForce::new(game, bound).with_pass(with_pass).solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bouton_classify;

    fn pos(x: u32, y: u32, z: u32, pass: bool) -> Position {
        Position::new(x, y, z, pass)
    }

    #[test]
    fn nim_terminal_and_pass_examples() {
        let t = brute_force(Game::Nim3, true, Bound::NimBox(4)).unwrap();
        assert_eq!(t.classify(pos(0, 0, 0, false)), Some(Class::P));
        assert_eq!(t.classify(pos(0, 0, 0, true)), Some(Class::P));
        assert_eq!(t.classify(pos(1, 1, 1, true)), Some(Class::P));
        assert_eq!(t.classify(pos(0, 2, 1, true)), Some(Class::P));
        assert_eq!(t.classify(pos(4, 0, 0, false)), None);
    }

    #[test]
    fn nim_without_pass_matches_bouton() {
        let t = brute_force(Game::Nim3, false, Bound::NimBox(12)).unwrap();
        for p in t.positions() {
            assert_eq!(t.classify(p), Some(bouton_classify(p.x, p.y, p.z)), "{p}");
        }
    }

    #[test]
    fn chomp_small_positions() {
        let t = brute_force(Game::Chomp3, true, Bound::ChompSum(10)).unwrap();
        assert_eq!(t.classify(pos(0, 0, 1, false)), Some(Class::P));
        assert_eq!(t.classify(pos(0, 0, 1, true)), Some(Class::P));
        assert_eq!(t.classify(pos(1, 0, 0, false)), Some(Class::N));
        assert_eq!(t.classify(pos(1, 1, 0, false)), Some(Class::P));
        assert_eq!(t.classify(pos(0, 1, 1, true)), Some(Class::N));
        assert_eq!(t.classify(pos(0, 0, 0, false)), None);
        // two-row chomp: P iff the rows differ by one
        for y in 0..5 {
            for z in 0..5 {
                if (y, z) != (0, 0) {
                    let want = if z == 1 { Class::P } else { Class::N };
                    assert_eq!(t.classify(pos(0, y, z, false)), Some(want));
                }
            }
        }
    }

    #[test]
    fn variant_positions_are_automatic_n() {
        // with the empty board an automatic N, a lone pile of one becomes the only P single pile
        let t = BruteForce::new(Game::Nim3, Bound::NimBox(6))
            .with_variants([(0, 0, 0)])
            .solve()
            .unwrap();
        assert_eq!(t.classify(pos(0, 0, 0, false)), Some(Class::N));
        assert_eq!(t.classify(pos(1, 0, 0, false)), Some(Class::P));
        assert_eq!(t.classify(pos(0, 0, 3, false)), Some(Class::N));
        assert_eq!(t.classify(pos(1, 1, 0, false)), Some(Class::N));
    }

    #[test]
    fn mismatched_bound_is_rejected() {
        assert!(brute_force(Game::Chomp3, false, Bound::NimBox(4)).is_err());
        assert!(brute_force(Game::Nim3, false, Bound::NimBox(1 << 20)).is_err());
    }

    #[test]
    fn csv_dump_has_header_and_rows() {
        let t = brute_force(Game::Nim3, false, Bound::NimBox(2)).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "x,y,z,pass,class");
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[1], "0,0,0,0,P");
    }
}
