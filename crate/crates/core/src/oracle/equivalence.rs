use crate::bitgrid::SheetKind;
use crate::engine::{Mode, Pipeline, RunConfig, VariantSource};
use crate::error::Result;
use crate::rules::Game;

/// Result of running the pass game next to the generic game whose variants are
/// the pure losers (terminal excluded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub levels: u32,
    /// First level and kind pair where the two runs differ.
    pub first_difference: Option<(u32, SheetKind, SheetKind)>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Check `W^ = W~` and `L^ = L~` bitwise at every level, in lockstep.
/// `width` and `target_height` default to the engine's extents when `None`.
pub fn pass_generic_equivalence(
    game: Game,
    levels: u32,
    width: Option<usize>,
    target_height: Option<usize>,
) -> Result<Equivalence> {
    let shape = |mode| {
        let mut c = RunConfig::new(game, mode, levels);
        if let Some(w) = width {
            c = c.with_width(w);
        }
        if let Some(h) = target_height {
            c = c.with_target_height(h);
        }
        c
    };
    let pass = shape(Mode::WithPass);
    let generic = shape(Mode::Generic).with_variants(VariantSource::PureLosers);
    let pairs = [(SheetKind::What, SheetKind::Wt), (SheetKind::Lhat, SheetKind::Lt)];
    for (a, b) in Pipeline::new(&pass)?.zip(Pipeline::new(&generic)?) {
        let (a, b) = (a?, b?);
        for (ka, kb) in pairs {
            if a.get(ka) != b.get(kb) {
                return Ok(Equivalence {
                    levels,
                    first_difference: Some((a.level, ka, kb)),
                });
            }
        }
    }
    Ok(Equivalence {
        levels,
        first_difference: None,
    })
}
