use crate::bitgrid::{Sheet, SheetKind};
use crate::engine::SheetSource;
use crate::error::{Error, Result};

/// The rectangle `[0, rows) x [0, cols)` of a sheet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub rows: usize,
    pub cols: usize,
}

impl Region {
    pub fn square(side: usize) -> Self {
        Region { rows: side, cols: side }
    }
}

/// Occupancy fractions of a `k x k` block partition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    k: usize,
    block_rows: usize,
    block_cols: usize,
    values: Vec<f64>,
}

impl DensityGrid {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Rows and columns of one block.
    pub fn block(&self) -> (usize, usize) {
        (self.block_rows, self.block_cols)
    }

    /// Fraction for block row `i`, block column `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Pearson correlation with another grid of the same `k`.
    pub fn correlation(&self, other: &DensityGrid) -> Result<Option<f64>> {
        if self.k != other.k {
            return Err(Error::config(format!("grids differ in k: {} and {}", self.k, other.k)));
        }
        Ok(pearson(&self.values, &other.values))
    }
}

/// Block densities of `sheet` over `region`, truncated down to a multiple of `k`
/// on each axis.
pub fn density_grid(sheet: &Sheet, region: Region, k: usize) -> Result<DensityGrid> {
    if k == 0 {
        return Err(Error::config("density grid needs k >= 1"));
    }
    if region.rows > sheet.height() || region.cols > sheet.width() {
        return Err(Error::config(format!(
            "region {}x{} exceeds the {}x{} sheet",
            region.rows,
            region.cols,
            sheet.height(),
            sheet.width()
        )));
    }
    let (br, bc) = (region.rows / k, region.cols / k);
    if br == 0 || bc == 0 {
        return Err(Error::config(format!(
            "region {}x{} is smaller than a {k}x{k} grid",
            region.rows, region.cols
        )));
    }
    let mut counts = vec![0u32; k * k];
    for y in 0..br * k {
        let i = y / br;
        for z in sheet.row_cells(y).take_while(|&z| z < bc * k) {
            counts[i * k + z / bc] += 1;
        }
    }
    let area = (br * bc) as f64;
    Ok(DensityGrid {
        k,
        block_rows: br,
        block_cols: bc,
        values: counts.into_iter().map(|c| c as f64 / area).collect(),
    })
}

/// Pearson correlation, or `None` when either input has zero variance.
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return None;
    }
    Some((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityParams {
    /// Blocks per axis.
    pub k: usize,
    /// Level `x` is analysed over `[0, c x)^2`.
    pub c: usize,
    /// Sheet kind to read; `None` picks the run mode's own winner sheets.
    pub kind: Option<SheetKind>,
}

impl Default for SimilarityParams {
    fn default() -> Self {
        SimilarityParams { k: 32, c: 2, kind: None }
    }
}

impl SimilarityParams {
    pub fn with_kind(mut self, kind: SheetKind) -> Self {
        self.kind = Some(kind);
        self
    }

    fn kind_for(&self, source: &dyn SheetSource) -> SheetKind {
        self.kind.unwrap_or_else(|| source.mode().primary_kinds().0)
    }
}

fn exact_region(source: &dyn SheetSource, level: u32, side: usize) -> Result<Region> {
    let rows = source.exact_rows(level);
    if side > rows || side > source.width() {
        return Err(Error::config(format!(
            "region {side}x{side} at level {level} exceeds the exact {rows}x{} window",
            source.width()
        )));
    }
    Ok(Region::square(side))
}

/// Correlation of level `x` over `[0, c x)^2` with level `2 x` over `[0, 2 c x)^2`.
/// `Ok(None)` when either grid is constant.
pub fn scale_similarity(source: &dyn SheetSource, x: u32, params: SimilarityParams) -> Result<Option<f64>> {
    scale_similarity_between(source, x, 2 * x, params)
}

/// Like [`scale_similarity`] for an arbitrary pair of levels: level `lo` over
/// `[0, c lo)^2` against level `hi` over `[0, c hi)^2`.
pub fn scale_similarity_between(
    source: &dyn SheetSource,
    lo: u32,
    hi: u32,
    params: SimilarityParams,
) -> Result<Option<f64>> {
    let kind = params.kind_for(source);
    let grid = |level: u32| -> Result<DensityGrid> {
        let side = params.c * level as usize;
        let region = exact_region(source, level, side)?;
        density_grid(&source.require(kind, level)?, region, params.k)
    };
    grid(lo)?.correlation(&grid(hi)?)
}

/// Correlation of two runs' sheets at level `x` over the common `[0, c x)^2`
/// window, clipped to what both runs hold exactly.
pub fn geometry_correlation(
    a: (&dyn SheetSource, SheetKind),
    b: (&dyn SheetSource, SheetKind),
    x: u32,
    params: SimilarityParams,
) -> Result<Option<f64>> {
    let (sa, ka) = a;
    let (sb, kb) = b;
    if sa.game() != sb.game() {
        return Err(Error::config("geometry correlation compares runs of the same game"));
    }
    let side = (params.c * x as usize)
        .min(sa.exact_rows(x))
        .min(sb.exact_rows(x))
        .min(sa.width())
        .min(sb.width());
    let region = Region::square(side);
    let ga = density_grid(&sa.require(ka, x)?, region, params.k)?;
    let gb = density_grid(&sb.require(kb, x)?, region, params.k)?;
    ga.correlation(&gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_in_memory, Mode, RunConfig};
    use crate::oracle::pure_nim_winner_closed_form;
    use crate::rules::Game;

    #[test]
    fn full_and_zero_sheets() {
        let full = Sheet::full(40, 50).unwrap();
        let g = density_grid(&full, Region { rows: 40, cols: 50 }, 4).unwrap();
        assert!(g.values().iter().all(|&v| v == 1.0));
        assert_eq!(g.block(), (10, 12));
        let zero = Sheet::new(40, 50).unwrap();
        let g = density_grid(&zero, Region::square(40), 8).unwrap();
        assert_eq!(g.mean(), 0.0);
    }

    #[test]
    fn mean_matches_fill_when_region_tiles() {
        let s = Sheet::from_cells(16, 16, (0..16).flat_map(|y| (0..16).filter(move |z| (y * z) % 3 == 1).map(move |z| (y, z)))).unwrap();
        let g = density_grid(&s, Region::square(16), 4).unwrap();
        assert!((g.mean() - s.fill_fraction()).abs() < 1e-12);
    }

    #[test]
    fn closed_form_count() {
        let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 33)).unwrap();
        let x = 32u32;
        let w = run.get(SheetKind::W, x).unwrap();
        let g = density_grid(w, Region::square(32), 8).unwrap();
        let count = (0..32u32)
            .flat_map(|y| (0..32u32).map(move |z| (y, z)))
            .filter(|&(y, z)| pure_nim_winner_closed_form(x, y, z))
            .count();
        assert!((g.mean() - count as f64 / 1024.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let s = Sheet::new(10, 10).unwrap();
        assert!(density_grid(&s, Region::square(11), 2).is_err());
        assert!(density_grid(&s, Region::square(3), 4).is_err());
        assert!(density_grid(&s, Region::square(8), 0).is_err());
    }

    #[test]
    fn pearson_basics() {
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]), Some(1.0));
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(pearson(&[1.0, 1.0], &[0.0, 3.0]), None);
    }

    #[test]
    fn identical_inputs_correlate_fully() {
        let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 40)).unwrap();
        let p = SimilarityParams { k: 8, c: 2, kind: None };
        let r = scale_similarity_between(&run, 30, 30, p).unwrap().unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let g = geometry_correlation((&run, SheetKind::W), (&run, SheetKind::W), 30, p).unwrap().unwrap();
        assert!((g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_grids_are_undefined() {
        let zero = density_grid(&Sheet::new(16, 16).unwrap(), Region::square(16), 4).unwrap();
        let full = density_grid(&Sheet::full(16, 16).unwrap(), Region::square(16), 4).unwrap();
        assert_eq!(zero.correlation(&full).unwrap(), None);
        let run = run_in_memory(&RunConfig::new(Game::Nim3, Mode::Pure, 4)).unwrap();
        let p = SimilarityParams { k: 4, c: 1, kind: None };
        assert!(geometry_correlation((&run, SheetKind::W), (&run, SheetKind::L), 0, p).is_err());
    }
}
