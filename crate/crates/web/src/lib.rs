//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic is testable off the browser.

use amoeba_core::basis::lopsided;
use amoeba_core::line::classify;
use amoeba_core::sampling::{log_grid, rasterize, sample_plane_curve};
use amoeba_core::semialg::{describe, membership};
use amoeba_core::{LaurentPolynomial, ParametricLine};
use wasm_bindgen::prelude::*;

const AMOEBA: [u8; 4] = [20, 20, 60, 255];
const NOT_LOPSIDED: [u8; 4] = [200, 210, 235, 255];
const LOPSIDED: [u8; 4] = [255, 255, 255, 255];

fn parse_line(json: &str) -> Result<ParametricLine, String> {
    serde_json::from_str(json).map_err(|e| format!("line: {e}"))
}

pub fn describe_text(line_json: &str) -> Result<String, String> {
    let line = parse_line(line_json)?;
    let desc = describe(&line);
    let summary = serde_json::json!({
        "classification": classify(&line),
        "ends": desc.ends,
        "surface_counts": desc.surface_counts(),
        "description": desc,
    });
    serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())
}

pub fn member_check(line_json: &str, point: &str, tol: f64) -> Result<bool, String> {
    let line = parse_line(line_json)?;
    let p = point
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("point: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    membership(&describe(&line), &p, tol).map_err(|e| e.to_string())
}

/// RGBA pixels of a `resolution²` image of the window `[lo, hi]²`, top row
/// first: sampled amoeba cells dark, lopsided cell centres white, the rest pale.
pub fn curve_pixels(poly_json: &str, lo: f64, hi: f64, resolution: usize) -> Result<Vec<u8>, String> {
    let f: LaurentPolynomial = serde_json::from_str(poly_json).map_err(|e| format!("polynomial: {e}"))?;
    let margin = (hi - lo) * 0.5;
    let grid = log_grid(lo - margin, hi + margin, 4 * resolution);
    let angles = 2 * resolution;
    let mut cloud = sample_plane_curve(&f, &grid, angles, 0).map_err(|e| e.to_string())?;
    if f.depends_on(0) {
        let swapped = sample_plane_curve(&f.permuted(&[1, 0]), &grid, angles, 0).map_err(|e| e.to_string())?;
        cloud.extend(&swapped.permuted(&[1, 0]));
    }
    let window = [[lo, hi], [lo, hi]];
    let raster =
        if cloud.is_empty() { None } else { Some(rasterize(&cloud, &window, resolution).map_err(|e| e.to_string())?) };
    let mut px = Vec::with_capacity(4 * resolution * resolution);
    let step = (hi - lo) / resolution as f64;
    for row in (0..resolution).rev() {
        for col in 0..resolution {
            let hit = raster.as_ref().is_some_and(|g| g.get(g.flat_index(&[col, row])));
            let z = [lo + (col as f64 + 0.5) * step, lo + (row as f64 + 0.5) * step];
            let colour = if hit {
                AMOEBA
            } else if lopsided(&f, &z).is_some() {
                LOPSIDED
            } else {
                NOT_LOPSIDED
            };
            px.extend_from_slice(&colour);
        }
    }
    Ok(px)
}

#[wasm_bindgen]
pub fn describe_line(line_json: &str) -> Result<String, JsValue> {
    describe_text(line_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn line_member(line_json: &str, point: &str, tol: f64) -> Result<bool, JsValue> {
    member_check(line_json, point, tol).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn curve_raster(poly_json: &str, lo: f64, hi: f64, resolution: usize) -> Result<Vec<u8>, JsValue> {
    curve_pixels(poly_json, lo, hi, resolution).map_err(|e| JsValue::from_str(&e))
}
