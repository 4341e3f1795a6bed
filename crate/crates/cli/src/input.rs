use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use amoeba_core::io::read_cloud_csv;
use amoeba_core::sampling::PointCloud;
use serde::de::DeserializeOwned;

use crate::failure::Failure;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let file = File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_cloud(path: &Path, seed: u64) -> Result<PointCloud, Failure> {
    let file = File::open(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(read_cloud_csv(BufReader::new(file), seed)?)
}

pub fn numbers(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| Failure::input(format!("bad number {s:?}: {e}"))))
        .collect()
}

pub fn pair(text: &str) -> Result<[f64; 2], Failure> {
    match numbers(text)?[..] {
        [lo, hi] if lo < hi => Ok([lo, hi]),
        _ => Err(Failure::input(format!("expected lo,hi with lo < hi, got {text:?}"))),
    }
}

/// `lo,hi` repeated over `n` axes, or one `lo,hi` per axis separated by `;`.
pub fn window(text: &str, n: usize) -> Result<Vec<[f64; 2]>, Failure> {
    let parts: Vec<[f64; 2]> = text.split(';').map(pair).collect::<Result<_, _>>()?;
    match parts.len() {
        1 => Ok(vec![parts[0]; n]),
        k if k == n => Ok(parts),
        k => Err(Failure::input(format!("window has {k} axes, data has {n}"))),
    }
}

pub fn axes(text: &str) -> Result<[usize; 2], Failure> {
    let v: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| Failure::input(format!("bad axis {s:?}"))))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b] => Ok([a, b]),
        _ => Err(Failure::input(format!("expected two axes, got {text:?}"))),
    }
}
