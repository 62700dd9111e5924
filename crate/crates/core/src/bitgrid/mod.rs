//! Bit-packed truncated sheets and the sheet-operator algebra.
//!
//! A [`Sheet`] is the finite truncation of a semi-infinite Boolean matrix indexed
//! by `(y, z)`. Rows are stored as little-endian `u64` words, column `z` at bit
//! `z & 63` of word `z >> 6`. Bits past `width` in the last word of a row are
//! always zero, so derived `PartialEq` and checksums are meaningful.

pub(crate) mod io;

pub use io::{read_sheet, read_sheet_file, write_sheet, write_sheet_file, SheetHeader, SheetKind};

use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sheet {
    height: usize,
    width: usize,
    stride: usize,
    words: Vec<u64>,
}

impl fmt::Debug for Sheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sheet")
            .field("height", &self.height)
            .field("width", &self.width)
            .field("ones", &self.count_ones())
            .finish()
    }
}

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask of valid bits in the last word of a `width`-bit row.
#[inline]
fn tail_mask(width: usize) -> u64 {
    match width % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Sheet {
    /// An all-zero sheet.
    pub fn new(height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::config(format!(
                "sheet dimensions must be positive, got {height}x{width}"
            )));
        }
        let stride = words_for(width);
        Ok(Sheet {
            height,
            width,
            stride,
            words: vec![0; stride * height],
        })
    }

    /// An all-one sheet.
    pub fn full(height: usize, width: usize) -> Result<Self> {
        let mut s = Sheet::new(height, width)?;
        s.words.fill(u64::MAX);
        s.canonicalize();
        Ok(s)
    }

    /// Build a sheet from a list of set cells. Cells outside the extents are an error.
    pub fn from_cells<I>(height: usize, width: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = Sheet::new(height, width)?;
        for (y, z) in cells {
            if y >= height || z >= width {
                return Err(Error::config(format!(
                    "cell ({y}, {z}) outside {height}x{width} sheet"
                )));
            }
            s.set(y, z, true);
        }
        Ok(s)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of `u64` words per row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn same_shape(&self, other: &Sheet) -> bool {
        self.height == other.height && self.width == other.width
    }

    fn check_shape(&self, other: &Sheet) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left_height: self.height,
                left_width: self.width,
                right_height: other.height,
                right_width: other.width,
            })
        }
    }

    /// Cell value. Panics if `(y, z)` is outside the sheet.
    #[inline]
    pub fn get(&self, y: usize, z: usize) -> bool {
        assert!(y < self.height && z < self.width, "cell ({y}, {z}) out of range");
        (self.words[y * self.stride + z / WORD_BITS] >> (z % WORD_BITS)) & 1 == 1
    }

    /// Cell value, `false` outside the sheet.
    #[inline]
    pub fn get_or_zero(&self, y: usize, z: usize) -> bool {
        y < self.height && z < self.width && self.get(y, z)
    }

    #[inline]
    pub fn set(&mut self, y: usize, z: usize, value: bool) {
        assert!(y < self.height && z < self.width, "cell ({y}, {z}) out of range");
        let w = &mut self.words[y * self.stride + z / WORD_BITS];
        let bit = 1u64 << (z % WORD_BITS);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[u64] {
        &self.words[y * self.stride..(y + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, y: usize) -> &mut [u64] {
        &mut self.words[y * self.stride..(y + 1) * self.stride]
    }

    fn canonicalize(&mut self) {
        let mask = tail_mask(self.width);
        let stride = self.stride;
        for row in self.words.chunks_mut(stride) {
            row[stride - 1] &= mask;
        }
    }

    pub(crate) fn is_canonical(&self) -> bool {
        let mask = tail_mask(self.width);
        self.words
            .chunks(self.stride)
            .all(|row| row[self.stride - 1] & !mask == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_count_ones(&self, y: usize) -> usize {
        self.row(y).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.height * self.width
    }

    /// Fraction of set cells.
    pub fn fill_fraction(&self) -> f64 {
        self.count_ones() as f64 / (self.height * self.width) as f64
    }

    /// Lowest set column in row `y`.
    pub fn first_in_row(&self, y: usize) -> Option<usize> {
        self.row(y)
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Iterate set cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.height).flat_map(move |y| self.row_cells(y).map(move |z| (y, z)))
    }

    /// Set columns of row `y`, ascending.
    pub fn row_cells(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(y)
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| BitIter(w).map(move |b| i * WORD_BITS + b))
    }

    /// Boolean addition (cellwise OR).
    pub fn add(&self, other: &Sheet) -> Result<Sheet> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &Sheet) -> Result<()> {
        self.check_shape(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
        Ok(())
    }

    /// Cells set in `self` but not in `other`.
    pub fn difference(&self, other: &Sheet) -> Result<Sheet> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        Ok(out)
    }

    /// True when every set cell of `self` is set in `other`.
    pub fn is_subset_of(&self, other: &Sheet) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    /// Left shift: `out(y, z) = self(y + 1, z)`; the last row becomes zero.
    pub fn left_shift(&self) -> Sheet {
        let mut out = self.clone();
        out.left_shift_in_place();
        out
    }

    pub fn left_shift_in_place(&mut self) {
        let n = self.words.len();
        self.words.copy_within(self.stride..n, 0);
        self.words[n - self.stride..].fill(0);
    }

    /// Diagonal add: with `z*` the unique set column of row 0, set every cell
    /// `(y, z* - y)` for `0 <= y <= z*` that lies inside the sheet.
    pub fn diag_add(&self) -> Result<Sheet> {
        let mut out = self.clone();
        out.diag_add_in_place()?;
        Ok(out)
    }

    pub fn diag_add_in_place(&mut self) -> Result<()> {
        let z_star = match self.row_count_ones(0) {
            0 => return Err(Error::DiagonalRowEmpty),
            1 => self.first_in_row(0).expect("row has one set cell"),
            count => return Err(Error::DiagonalRowAmbiguous { count }),
        };
        for y in 0..=z_star.min(self.height - 1) {
            self.set(y, z_star - y, true);
        }
        Ok(())
    }
}

/// Iterator over the set bit indices of a word, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// Lowest bit index `< width` that is zero in every one of `rows`, OR-combined.
#[inline]
pub(crate) fn lowest_clear(width: usize, rows: &[&[u64]]) -> Option<usize> {
    let stride = words_for(width);
    for i in 0..stride {
        let mut w = 0u64;
        for r in rows {
            w |= r[i];
        }
        let free = !w;
        if free != 0 {
            let z = i * WORD_BITS + free.trailing_zeros() as usize;
            return (z < width).then_some(z);
        }
    }
    None
}

/// Copy bits `[offset, offset + out.len() * 64)` of `src` into `out`; bits past the
/// end of `src` read as zero.
pub(crate) fn extract_window(src: &[u64], offset: usize, out: &mut [u64]) {
    let word = offset / WORD_BITS;
    let shift = offset % WORD_BITS;
    for (i, slot) in out.iter_mut().enumerate() {
        let lo = src.get(word + i).copied().unwrap_or(0);
        *slot = if shift == 0 {
            lo
        } else {
            let hi = src.get(word + i + 1).copied().unwrap_or(0);
            (lo >> shift) | (hi << (WORD_BITS - shift))
        };
    }
}
