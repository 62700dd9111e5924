use std::path::Path;

use crate::bitgrid::Sheet;
use crate::error::{Error, Result};
use crate::persist::write_atomic;

const BACKGROUND: u8 = 255;
const WINNER: u8 = 128;
const LOSER: u8 = 0;

/// Binary PGM of a winner sheet, a loser sheet, or both composited.
///
/// Image rows are sheet rows with row 0 at the bottom; columns are `z`. Loser
/// cells are drawn over winner cells.
pub fn render_pgm(winners: Option<&Sheet>, losers: Option<&Sheet>) -> Result<Vec<u8>> {
    let (h, w) = match (winners, losers) {
        (Some(a), Some(b)) if !a.same_shape(b) => {
            return Err(Error::DimensionMismatch {
                left_height: a.height(),
                left_width: a.width(),
                right_height: b.height(),
                right_width: b.width(),
            })
        }
        (Some(s), _) | (None, Some(s)) => (s.height(), s.width()),
        (None, None) => return Err(Error::config("nothing to render")),
    };
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    let header = out.len();
    out.resize(header + w * h, BACKGROUND);
    let pixels = &mut out[header..];
    for (sheet, value) in [(winners, WINNER), (losers, LOSER)] {
        if let Some(sheet) = sheet {
            for (y, z) in sheet.cells() {
                pixels[(h - 1 - y) * w + z] = value;
            }
        }
    }
    Ok(out)
}

pub fn write_pgm(path: &Path, winners: Option<&Sheet>, losers: Option<&Sheet>) -> Result<()> {
    write_atomic(path, &render_pgm(winners, losers)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(img: &[u8]) -> &[u8] {
        let mut newlines = 0;
        let start = img.iter().position(|&b| {
            newlines += (b == b'\n') as u32;
            newlines == 3
        });
        &img[start.unwrap() + 1..]
    }

    #[test]
    fn zero_sheet_is_blank() {
        let img = render_pgm(Some(&Sheet::new(3, 4).unwrap()), None).unwrap();
        assert!(img.starts_with(b"P5\n4 3\n255\n"));
        assert!(body(&img).iter().all(|&p| p == 255));
    }

    #[test]
    fn origin_is_bottom_left() {
        let s = Sheet::from_cells(3, 4, [(0, 0)]).unwrap();
        let img = render_pgm(Some(&s), None).unwrap();
        let px = body(&img);
        assert_eq!(px.len(), 12);
        assert_eq!(px[8], 128);
        assert_eq!(px.iter().filter(|&&p| p != 255).count(), 1);
    }

    #[test]
    fn losers_override_winners() {
        let w = Sheet::from_cells(2, 2, [(1, 1), (0, 1)]).unwrap();
        let l = Sheet::from_cells(2, 2, [(1, 1)]).unwrap();
        let img = render_pgm(Some(&w), Some(&l)).unwrap();
        assert_eq!(body(&img), &[255, 0, 255, 128]);
    }

    #[test]
    fn shapes_must_agree() {
        let a = Sheet::new(2, 2).unwrap();
        let b = Sheet::new(2, 3).unwrap();
        assert!(render_pgm(Some(&a), Some(&b)).is_err());
        assert!(render_pgm(None, None).is_err());
    }
}
