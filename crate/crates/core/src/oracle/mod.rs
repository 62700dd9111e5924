//! Ground truth that does not go through the sheet recursion: Bouton's nim-sum
//! rule, the closed form of the pure-Nim instant-winner sheets, and an exact
//! game-tree solver. [`diff`] compares engine output against them.

mod brute;
mod diff;
mod equivalence;

pub use brute::{brute_force, Bound, BruteForce, OracleTable};
pub use diff::{diff_bouton, diff_closed_form, diff_table, DiffReport, Mismatch};
pub use equivalence::{pass_generic_equivalence, Equivalence};

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    P,
    N,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::P => "P",
            Class::N => "N",
        })
    }
}

/// Pure Nim: P iff the nim-sum is zero.
pub fn bouton_classify(x: u32, y: u32, z: u32) -> Class {
    if x ^ y ^ z == 0 {
        Class::P
    } else {
        Class::N
    }
}

/// Pure Nim: `[x, y, z]` moves to a P-position on a lower sheet iff `y ^ z < x`.
pub fn pure_nim_winner_closed_form(x: u32, y: u32, z: u32) -> bool {
    (y ^ z) < x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouton_examples() {
        assert_eq!(bouton_classify(9, 13, 4), Class::P);
        assert_eq!(bouton_classify(7, 4, 3), Class::P);
        assert_eq!(bouton_classify(1, 1, 1), Class::N);
    }

    #[test]
    fn closed_form_examples() {
        assert!(pure_nim_winner_closed_form(1, 0, 0));
        assert!(pure_nim_winner_closed_form(2, 1, 1));
        assert!(!pure_nim_winner_closed_form(2, 0, 2));
        for y in 0..20 {
            for z in 0..20 {
                assert!(!pure_nim_winner_closed_form(0, y, z));
            }
        }
    }

    #[test]
    fn closed_form_is_union_of_lower_losers() {
        for x in 0..16u32 {
            for y in 0..32 {
                for z in 0..32 {
                    let union = (0..x).any(|k| bouton_classify(k, y, z) == Class::P);
                    assert_eq!(pure_nim_winner_closed_form(x, y, z), union);
                }
            }
        }
    }
}
