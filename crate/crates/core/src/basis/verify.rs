use std::collections::HashMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::membership::{CharacterReduction, Membership};
use super::BasisError;
use crate::algebra::LaurentPolynomial;
use crate::sampling::{rasterize, PointCloud, RasterGrid};

pub const DEFAULT_ANGLE_RESOLUTION: usize = 180;

/// Recorded in every report: agreement is only checked inside the window.
pub const WINDOW_HEURISTIC: &str =
    "local check on a box around the origin; every limit-ray direction of a line leaves such a box through a face";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Both grids agree up to the dilation band.
    Consistent,
    /// The intersection has cells away from the dilated amoeba of `V`.
    StrictContainment,
    /// The amoeba of `V` has cells away from the dilated intersection.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub window: Vec<[f64; 2]>,
    pub resolution: usize,
    pub dilation: usize,
    pub angle_resolution: usize,
    pub v_cells: usize,
    pub intersection_cells: usize,
    /// `|V Δ I|` before dilation.
    pub symmetric_difference: usize,
    /// Part of the symmetric difference absorbed by the dilation band.
    pub band_cells: usize,
    /// `|I ∖ dilate(V)|`
    pub excess_cells: usize,
    /// `|V ∖ dilate(I)|`
    pub deficit_cells: usize,
    pub excess_fraction: f64,
    pub verdict: Verdict,
    pub v_hash: String,
    pub intersection_hash: String,
    pub completeness: String,
    pub window_heuristic: String,
}

/// Compares the rasterized cloud of `V` with the cellwise intersection of the
/// hypersurface amoebas, evaluated at cell centres. `Unknown` counts as member.
pub fn verify_basis(
    cloud: &PointCloud,
    polys: &[LaurentPolynomial],
    window: &[[f64; 2]],
    resolution: usize,
    dilation: usize,
) -> Result<BasisReport, BasisError> {
    verify_basis_with(cloud, polys, window, resolution, dilation, DEFAULT_ANGLE_RESOLUTION).map(|(r, _, _)| r)
}

/// As [`verify_basis`], also returning the two indicator grids `(V, I)`.
pub fn verify_basis_with(
    cloud: &PointCloud,
    polys: &[LaurentPolynomial],
    window: &[[f64; 2]],
    resolution: usize,
    dilation: usize,
    angle_resolution: usize,
) -> Result<(BasisReport, RasterGrid, RasterGrid), BasisError> {
    if polys.is_empty() {
        return Err(BasisError::EmptyList);
    }
    let n = window.len();
    for found in std::iter::once(cloud.n).chain(polys.iter().map(LaurentPolynomial::n)) {
        if found != n {
            return Err(BasisError::DimensionMismatch { expected: n, found });
        }
    }
    let v = rasterize(cloud, window, resolution)?;
    let mut inter = RasterGrid::new(window, resolution)?;
    let half: Vec<f64> = (0..n).map(|a| inter.cell_width(a) / 2.0).collect();
    let cells = inter.cell_count();

    let mut member = vec![true; cells];
    for f in polys {
        let red = CharacterReduction::new(f);
        let tol = red.projected_radius(&half);
        // cells sharing Φ(center) share the verdict
        let mut ids: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut unique: Vec<Vec<f64>> = Vec::new();
        let mut cell_id = Vec::with_capacity(cells);
        let mut key = Vec::with_capacity(red.rank());
        for i in 0..cells {
            let w = red.project(&inter.cell_center(i));
            key.clear();
            key.extend(w.iter().map(|x| x.to_bits()));
            let id = match ids.get(&key[..]) {
                Some(&id) => id,
                None => {
                    let id = unique.len() as u32;
                    ids.insert(key.clone(), id);
                    unique.push(w);
                    id
                }
            };
            cell_id.push(id);
        }
        let eval = |w: &Vec<f64>| red.membership(w, angle_resolution, tol) != Membership::Outside;
        #[cfg(feature = "parallel")]
        let verdicts: Vec<bool> = unique.par_iter().map(eval).collect();
        #[cfg(not(feature = "parallel"))]
        let verdicts: Vec<bool> = unique.iter().map(eval).collect();
        for (m, &id) in member.iter_mut().zip(&cell_id) {
            *m &= verdicts[id as usize];
        }
    }
    for (i, &m) in member.iter().enumerate() {
        inter.set(i, m);
    }

    let excess = inter.count_minus(&v.dilate(dilation))?;
    let deficit = v.count_minus(&inter.dilate(dilation))?;
    let symmetric_difference = v.count_minus(&inter)? + inter.count_minus(&v)?;
    let verdict = if deficit > 0 {
        Verdict::Inconsistent
    } else if excess > 0 {
        Verdict::StrictContainment
    } else {
        Verdict::Consistent
    };
    let report = BasisReport {
        window: window.to_vec(),
        resolution,
        dilation,
        angle_resolution,
        v_cells: v.count(),
        intersection_cells: inter.count(),
        symmetric_difference,
        band_cells: symmetric_difference - excess - deficit,
        excess_cells: excess,
        deficit_cells: deficit,
        excess_fraction: if inter.count() == 0 { 0.0 } else { excess as f64 / inter.count() as f64 },
        verdict,
        v_hash: v.hash(),
        intersection_hash: inter.hash(),
        completeness: "unverified".into(),
        window_heuristic: WINDOW_HEURISTIC.into(),
    };
    Ok((report, v, inter))
}
