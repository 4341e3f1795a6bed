//! File formats: plain graymaps (P2) with a JSON sidecar, CSV point clouds,
//! and JSON error documents.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::sampling::{CloudMode, PointCloud, RasterGrid};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("graymap needs a 2-D grid, got {0} axes")]
    NotPlanar(usize),
    #[error("malformed graymap: {0}")]
    Pgm(String),
    #[error("malformed CSV: {0}")]
    Cloud(String),
}

/// Metadata written next to a graymap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RasterSidecar {
    pub window: Vec<[f64; 2]>,
    pub resolution: usize,
    pub seed: Option<u64>,
    /// Axes of the original grid shown as columns and rows.
    pub axes: [usize; 2],
    pub occupied: usize,
    pub sha256: String,
    pub axis_semantics: String,
}

impl RasterSidecar {
    pub fn new(grid: &RasterGrid, axes: [usize; 2]) -> Self {
        Self {
            window: grid.window().to_vec(),
            resolution: grid.resolution(),
            seed: grid.seed,
            axes,
            occupied: grid.count(),
            sha256: grid.hash(),
            axis_semantics: "log-moduli".into(),
        }
    }
}

/// P2 text graymap of a 2-D grid: occupied cells black (0), empty cells white
/// (255), the top row holding the largest second coordinate.
pub fn write_pgm<W: Write>(grid: &RasterGrid, mut w: W) -> Result<(), IoError> {
    if grid.dim() != 2 {
        return Err(IoError::NotPlanar(grid.dim()));
    }
    let res = grid.resolution();
    writeln!(w, "P2")?;
    writeln!(w, "{res} {res}")?;
    writeln!(w, "255")?;
    for row in (0..res).rev() {
        let line: Vec<&str> =
            (0..res).map(|col| if grid.get(grid.flat_index(&[col, row])) { "0" } else { "255" }).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Occupancy of a P2 graymap as rows top to bottom; a pixel is occupied when
/// darker than half the maximum value.
pub fn read_pgm<R: Read>(mut r: R) -> Result<Vec<Vec<bool>>, IoError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    let mut tokens = text.lines().map(|l| l.split('#').next().unwrap_or("")).flat_map(str::split_whitespace);
    if tokens.next() != Some("P2") {
        return Err(IoError::Pgm("missing P2 magic".into()));
    }
    let mut num = |what: &str| -> Result<usize, IoError> {
        tokens.next().and_then(|t| t.parse().ok()).ok_or_else(|| IoError::Pgm(format!("bad {what}")))
    };
    let (width, height, max) = (num("width")?, num("height")?, num("maxval")?);
    let mut rows = Vec::with_capacity(height);
    for _ in 0..height {
        let row = (0..width).map(|_| num("pixel").map(|p| 2 * p < max)).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Writes `path` as a graymap of the chosen axes and `path.json` as its
/// sidecar. Grids with more than two axes are projected first.
pub fn write_raster_files(
    grid: &RasterGrid,
    axes: [usize; 2],
    path: &std::path::Path,
) -> Result<RasterSidecar, IoError> {
    let planar = if grid.dim() == 2 && axes == [0, 1] {
        grid.clone()
    } else {
        grid.project(&axes).map_err(|e| IoError::Pgm(e.to_string()))?
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_pgm(&planar, &mut out)?;
    out.flush()?;
    let sidecar = RasterSidecar::new(grid, axes);
    let mut side_path = path.as_os_str().to_owned();
    side_path.push(".json");
    std::fs::write(side_path, serde_json::to_string_pretty(&sidecar).expect("serializable") + "\n")?;
    Ok(sidecar)
}

fn header(cloud: &PointCloud) -> Vec<String> {
    let prefix = match cloud.mode {
        CloudMode::Moduli => "x",
        CloudMode::Angles => "arg",
    };
    (1..=cloud.n).map(|i| format!("{prefix}{i}")).collect()
}

/// CSV with a header row `x1,…,xn` (moduli) or `arg1,…,argn` (angles).
pub fn write_cloud_csv<W: Write>(cloud: &PointCloud, w: W) -> Result<(), IoError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header(cloud))?;
    for p in &cloud.points {
        wr.write_record(p.iter().map(|v| format!("{v:e}")))?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_cloud_csv<R: Read>(r: R, seed: u64) -> Result<PointCloud, IoError> {
    let mut rd = csv::Reader::from_reader(r);
    let head = rd.headers()?.clone();
    let mode = match head.get(0) {
        Some(h) if h.starts_with("arg") => CloudMode::Angles,
        Some(h) if h.starts_with('x') => CloudMode::Moduli,
        _ => return Err(IoError::Cloud("header must start with x1 or arg1".into())),
    };
    let mut cloud = PointCloud::new(head.len(), mode, seed);
    for rec in rd.records() {
        let rec = rec?;
        let p = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Cloud(e.to_string()))?;
        if mode == CloudMode::Moduli && p.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(IoError::Cloud("moduli must be positive and finite".into()));
        }
        cloud.points.push(p);
    }
    Ok(cloud)
}

/// Machine-readable error document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub error: String,
    pub message: String,
}

impl ErrorDocument {
    pub fn new(kind: impl Into<String>, err: &dyn std::fmt::Display) -> Self {
        Self { error: kind.into(), message: err.to_string() }
    }
}
