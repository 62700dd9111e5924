//! Supermex operators: from a pre-marked sheet of N-positions to the loser sheet.
//!
//! Both scans walk rows `y = 0, 1, 2, ...` and take the smallest unmarked `z` in
//! each row as that row's P-position, then mark the P-position's within-sheet
//! parents. Same-row parents never need marking because every row holds at most
//! one P-position. Column and anti-diagonal marks are kept as bitsets, so each
//! row costs `O(width / 64)` word operations.

use super::Game;
use crate::bitgrid::{extract_window, lowest_clear, words_for, Sheet};
use crate::error::{Error, Result};

/// Dispatch on the game.
pub fn supermex(game: Game, premarked: &Sheet, level: u32) -> Result<Sheet> {
    match game {
        Game::Nim3 => nim_supermex(premarked),
        Game::Chomp3 => chomp_supermex(premarked, level),
    }
}

/// Nim: a P-position at `(y, z_s)` marks the whole column `z_s` below it.
pub fn nim_supermex(premarked: &Sheet) -> Result<Sheet> {
    let (height, width) = (premarked.height(), premarked.width());
    let mut out = Sheet::new(height, width)?;
    let mut columns = vec![0u64; premarked.stride()];
    for y in 0..height {
        let z = lowest_clear(width, &[premarked.row(y), &columns]).ok_or(Error::Overflow {
            row: y,
            width,
            level: None,
        })?;
        out.set(y, z, true);
        columns[z / 64] |= 1 << (z % 64);
    }
    Ok(out)
}

/// Chomp: a P-position at `(y, z_s)` marks the anti-diagonal `(y + t, z_s - t)`
/// below it; when `z_s == 0` every later row is marked outright and the scan
/// stops. At level 0 the cell `(0, 0)` is not a position and is skipped.
pub fn chomp_supermex(premarked: &Sheet, level: u32) -> Result<Sheet> {
    let (height, width) = (premarked.height(), premarked.width());
    let stride = premarked.stride();
    let mut out = Sheet::new(height, width)?;
    // bit d set: some earlier P-position lies on y + z = d
    let mut diagonals = vec![0u64; words_for(height + width)];
    let mut window = vec![0u64; stride];
    let mut invalid = vec![0u64; stride];
    for y in 0..height {
        extract_window(&diagonals, y, &mut window);
        let rows: &[&[u64]] = if level == 0 && y == 0 {
            invalid[0] = 1;
            &[premarked.row(y), &window, &invalid]
        } else {
            &[premarked.row(y), &window]
        };
        let z = lowest_clear(width, rows).ok_or(Error::Overflow {
            row: y,
            width,
            level: None,
        })?;
        out.set(y, z, true);
        if z == 0 {
            break;
        }
        let d = y + z;
        diagonals[d / 64] |= 1 << (d % 64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(s: &Sheet) -> Vec<(usize, usize)> {
        s.cells().collect()
    }

    #[test]
    fn nim_zero_sheet_gives_diagonal() {
        let l = nim_supermex(&Sheet::new(4, 4).unwrap()).unwrap();
        assert_eq!(cells(&l), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn nim_diagonal_premark_gives_xor_one() {
        let w1 = Sheet::from_cells(4, 4, (0..4).map(|y| (y, y))).unwrap();
        let l = nim_supermex(&w1).unwrap();
        assert_eq!(cells(&l), vec![(0, 1), (1, 0), (2, 3), (3, 2)]);
    }

    #[test]
    fn nim_full_sheet_overflows_on_row_zero() {
        let err = nim_supermex(&Sheet::full(4, 4).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Overflow { row: 0, .. }));
    }

    #[test]
    fn nim_overflow_names_first_exhausted_row() {
        // 3 wide: rows 0..2 take columns 0..2, row 3 has nowhere to go
        let err = nim_supermex(&Sheet::new(4, 3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Overflow { row: 3, width: 3, .. }));
    }

    #[test]
    fn chomp_level_zero_is_column_one() {
        let l = chomp_supermex(&Sheet::new(6, 6).unwrap(), 0).unwrap();
        assert_eq!(cells(&l), (0..6).map(|y| (y, 1)).collect::<Vec<_>>());
    }

    #[test]
    fn chomp_level_one_stops_after_corner() {
        let mut w1 = Sheet::from_cells(6, 6, (0..6).map(|y| (y, 1))).unwrap();
        w1.set(0, 0, true);
        let l = chomp_supermex(&w1, 1).unwrap();
        assert_eq!(cells(&l), vec![(0, 2), (1, 0)]);
    }

    #[test]
    fn chomp_full_sheet_overflows() {
        let err = chomp_supermex(&Sheet::full(3, 3).unwrap(), 2).unwrap_err();
        assert!(matches!(err, Error::Overflow { row: 0, .. }));
    }

    #[test]
    fn chomp_diagonal_marks_cross_word_boundary() {
        // Force row 0's P to z = 70, then row 1 must avoid z = 69.
        let mut pre = Sheet::new(2, 130).unwrap();
        for z in 0..70 {
            pre.set(0, z, true);
        }
        for z in 0..69 {
            pre.set(1, z, true);
        }
        let l = chomp_supermex(&pre, 3).unwrap();
        assert_eq!(cells(&l), vec![(0, 70), (1, 70)]);
    }
}
