use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{CloudMode, PointCloud, SamplingError};

/// Occupancy grid over a box in log coordinates. Cells are indexed with the
/// first axis varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RasterGrid {
    window: Vec<[f64; 2]>,
    resolution: usize,
    bits: Vec<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Largest number of cells a grid may hold.
pub const MAX_CELLS: u64 = 1 << 32;

impl RasterGrid {
    pub fn new(window: &[[f64; 2]], resolution: usize) -> Result<Self, SamplingError> {
        if window.is_empty() || resolution == 0 {
            return Err(SamplingError::DegenerateWindow);
        }
        if window.iter().any(|[lo, hi]| !(lo < hi && lo.is_finite() && hi.is_finite())) {
            return Err(SamplingError::DegenerateWindow);
        }
        let cells = resolution
            .checked_pow(window.len() as u32)
            .filter(|&c| c as u64 <= MAX_CELLS)
            .ok_or(SamplingError::GridTooLarge)?;
        Ok(Self { window: window.to_vec(), resolution, bits: vec![0; cells.div_ceil(64)], seed: None })
    }

    pub fn dim(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[[f64; 2]] {
        &self.window
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn cell_count(&self) -> usize {
        self.resolution.pow(self.dim() as u32)
    }

    pub fn cell_width(&self, axis: usize) -> f64 {
        let [lo, hi] = self.window[axis];
        (hi - lo) / self.resolution as f64
    }

    fn axis_cell(&self, axis: usize, v: f64) -> Option<usize> {
        let [lo, hi] = self.window[axis];
        if !(v >= lo && v <= hi) {
            return None;
        }
        let k = ((v - lo) / (hi - lo) * self.resolution as f64) as usize;
        Some(k.min(self.resolution - 1))
    }

    /// Cell containing a point in log coordinates; `hi` belongs to the last cell.
    pub fn cell_of(&self, z: &[f64]) -> Option<usize> {
        let mut idx = 0;
        for axis in (0..self.dim()).rev() {
            idx = idx * self.resolution + self.axis_cell(axis, z[axis])?;
        }
        Some(idx)
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        (0..self.dim())
            .map(|_| {
                let k = idx % self.resolution;
                idx /= self.resolution;
                k
            })
            .collect()
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().rev().fold(0, |acc, &k| acc * self.resolution + k)
    }

    pub fn cell_center(&self, idx: usize) -> Vec<f64> {
        self.multi_index(idx)
            .into_iter()
            .enumerate()
            .map(|(axis, k)| self.window[axis][0] + (k as f64 + 0.5) * self.cell_width(axis))
            .collect()
    }

    pub fn get(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn set(&mut self, idx: usize, on: bool) {
        let mask = 1u64 << (idx % 64);
        if on {
            self.bits[idx / 64] |= mask;
        } else {
            self.bits[idx / 64] &= !mask;
        }
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cell_count()).filter(|&i| self.get(i))
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.window == other.window && self.resolution == other.resolution
    }

    /// Cellwise OR; both grids must share window and resolution.
    pub fn union(&self, other: &Self) -> Result<Self, SamplingError> {
        if !self.same_shape(other) {
            return Err(SamplingError::ShapeMismatch);
        }
        let mut out = self.clone();
        out.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a |= b);
        Ok(out)
    }

    /// Number of cells set here but not in `other`.
    pub fn count_minus(&self, other: &Self) -> Result<usize, SamplingError> {
        if !self.same_shape(other) {
            return Err(SamplingError::ShapeMismatch);
        }
        Ok(self.bits.iter().zip(&other.bits).map(|(a, b)| (a & !b).count_ones() as usize).sum())
    }

    /// Chebyshev dilation by `radius` cells, one axis at a time.
    pub fn dilate(&self, radius: usize) -> Self {
        let mut cur = self.clone();
        if radius == 0 {
            return cur;
        }
        let res = self.resolution;
        for axis in 0..self.dim() {
            let stride = res.pow(axis as u32);
            let mut next = cur.clone();
            for idx in cur.occupied().collect::<Vec<_>>() {
                let k = (idx / stride) % res;
                let base = idx - k * stride;
                for m in k.saturating_sub(radius)..=(k + radius).min(res - 1) {
                    next.set(base + m * stride, true);
                }
            }
            cur = next;
        }
        cur
    }

    /// Projection onto the listed axes: a cell is set when any cell above it is.
    pub fn project(&self, axes: &[usize]) -> Result<Self, SamplingError> {
        if axes.is_empty() || axes.iter().any(|&a| a >= self.dim()) {
            return Err(SamplingError::InvalidAxes);
        }
        let window: Vec<[f64; 2]> = axes.iter().map(|&a| self.window[a]).collect();
        let mut out = Self::new(&window, self.resolution)?;
        out.seed = self.seed;
        for idx in self.occupied() {
            let m = self.multi_index(idx);
            let sub: Vec<usize> = axes.iter().map(|&a| m[a]).collect();
            let j = out.flat_index(&sub);
            out.set(j, true);
        }
        Ok(out)
    }

    /// SHA-256 over window, resolution and occupancy, hex encoded.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for [lo, hi] in &self.window {
            h.update(lo.to_le_bytes());
            h.update(hi.to_le_bytes());
        }
        h.update((self.resolution as u64).to_le_bytes());
        for w in &self.bits {
            h.update(w.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Connected components of the empty cells of a 2-D grid under 4-connectivity.
    pub fn complement_components(&self) -> Result<usize, SamplingError> {
        if self.dim() != 2 {
            return Err(SamplingError::InvalidAxes);
        }
        let res = self.resolution;
        let mut seen = vec![false; res * res];
        let mut components = 0;
        let mut queue = VecDeque::new();
        for start in 0..res * res {
            if seen[start] || self.get(start) {
                continue;
            }
            components += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                let (i, j) = (c % res, c / res);
                let mut nb = Vec::with_capacity(4);
                if i > 0 {
                    nb.push(c - 1);
                }
                if i + 1 < res {
                    nb.push(c + 1);
                }
                if j > 0 {
                    nb.push(c - res);
                }
                if j + 1 < res {
                    nb.push(c + res);
                }
                for d in nb {
                    if !seen[d] && !self.get(d) {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        Ok(components)
    }
}

/// Rasterizes points already in log coordinates; points outside the window are dropped.
pub fn rasterize_log_points(
    points: &[Vec<f64>],
    window: &[[f64; 2]],
    resolution: usize,
) -> Result<RasterGrid, SamplingError> {
    let mut grid = RasterGrid::new(window, resolution)?;
    for z in points {
        if z.len() != grid.dim() {
            return Err(SamplingError::DimensionMismatch { expected: grid.dim(), found: z.len() });
        }
        if let Some(idx) = grid.cell_of(z) {
            grid.set(idx, true);
        }
    }
    Ok(grid)
}

/// Rasterizes the Log image of a moduli cloud.
pub fn rasterize(cloud: &PointCloud, window: &[[f64; 2]], resolution: usize) -> Result<RasterGrid, SamplingError> {
    if cloud.is_empty() {
        return Err(SamplingError::EmptyCloud);
    }
    if cloud.mode != CloudMode::Moduli {
        return Err(SamplingError::WrongMode);
    }
    let mut grid = rasterize_log_points(&cloud.log_points(), window, resolution)?;
    grid.seed = Some(cloud.seed);
    Ok(grid)
}
