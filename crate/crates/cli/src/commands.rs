use std::io::Write;
use std::path::{Path, PathBuf};

use amoeba_core::basis::{is_independent_ci, verify_basis_with};
use amoeba_core::io::{write_cloud_csv, write_raster_files};
use amoeba_core::line::{classify, ends, limit_rays};
use amoeba_core::sampling::{
    amoeba_dimension, log_grid, rasterize, sample_coamoeba, sample_line, sample_plane_curve, Parametrization,
    PointCloud, Product,
};
use amoeba_core::semialg::{describe, fiber_solve, membership};
use amoeba_core::{LaurentPolynomial, LineAmoebaDescription, ParametricLine};
use serde::Serialize;

use crate::failure::Failure;
use crate::input::{axes, numbers, pair, read_cloud, read_json, window};
use crate::{check_tol, Command, GridOpts, SampleOpts, Source};

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify(l) => {
            let line: ParametricLine = read_json(&l.line)?;
            println!("{:?} |E|={}", classify(&line), ends(&line).count());
        }
        Command::Describe { line, out } => {
            let line: ParametricLine = read_json(&line.line)?;
            emit_json(&describe(&line), out.out.as_deref())?;
        }
        Command::Member { line, description, point, points, tol } => {
            check_tol(tol)?;
            let desc: LineAmoebaDescription = match (line, description) {
                (Some(l), _) => describe(&read_json(&l)?),
                (None, Some(d)) => read_json(&d)?,
                (None, None) => return Err(Failure::input("either --line or --description is required")),
            };
            let pts = match (point, points) {
                (Some(p), _) => vec![numbers(&p)?],
                (None, Some(path)) => read_cloud(&path, 0)?.points,
                (None, None) => return Err(Failure::input("either --point or --points is required")),
            };
            let mut text = String::new();
            for p in &pts {
                text.push_str(if membership(&desc, p, tol)? { "true\n" } else { "false\n" });
            }
            print!("{text}");
        }
        Command::Fiber { line, point, tol } => {
            check_tol(tol)?;
            let line: ParametricLine = read_json(&line.line)?;
            emit_json(&fiber_solve(&line, &numbers(&point)?, tol)?, None)?;
        }
        Command::Raster { source, sample, grid, axes: ax, out } => {
            let cloud = cloud(&source, &sample)?;
            let g = rasterize(&cloud, &window(&grid.window, cloud.n)?, resolution(&grid)?)?;
            let sidecar = write_raster_files(&g, axes(&ax)?, &out)?;
            emit_json(&sidecar, None)?;
        }
        Command::Sample { source, sample, out } => {
            let cloud = cloud(&source, &sample)?;
            emit_csv(&cloud, out.out.as_deref())?;
        }
        Command::Dim { line, probes, seed, rank_tol } => {
            check_tol(rank_tol)?;
            let lines = line.iter().map(|p| read_json::<ParametricLine>(p)).collect::<Result<Vec<_>, _>>()?;
            let parts: Vec<&dyn Parametrization> = lines.iter().map(|l| l as &dyn Parametrization).collect();
            let report = with_product(&parts, &mut |phi| amoeba_dimension(phi, probes, seed, rank_tol))?;
            emit_json(&report, None)?;
        }
        Command::LimitRays(l) => {
            let line: ParametricLine = read_json(&l.line)?;
            emit_json(&limit_rays(&line), None)?;
        }
        Command::IclCheck { poly } => {
            let polys = read_polys(&poly)?;
            emit_json(&is_independent_ci(&polys)?, None)?;
        }
        Command::VerifyBasis { source, sample, grid, poly, dilation, angle_resolution, grids, out } => {
            let polys = read_polys(&poly)?;
            let cloud = cloud(&source, &sample)?;
            let w = window(&grid.window, cloud.n)?;
            let (report, v, i) = verify_basis_with(&cloud, &polys, &w, resolution(&grid)?, dilation, angle_resolution)?;
            if let Some(prefix) = grids {
                write_raster_files(&v, [0, 1], &suffixed(&prefix, ".v.pgm"))?;
                write_raster_files(&i, [0, 1], &suffixed(&prefix, ".i.pgm"))?;
            }
            emit_json(&report, out.out.as_deref())?;
        }
        Command::Coamoeba { line, count, seed, out } => {
            let line: ParametricLine = read_json(&line.line)?;
            emit_csv(&sample_coamoeba(&line, count, seed), out.out.as_deref())?;
        }
    }
    Ok(())
}

fn resolution(grid: &GridOpts) -> Result<usize, Failure> {
    if grid.resolution >= 2 {
        Ok(grid.resolution)
    } else {
        Err(Failure::input(format!("resolution must be at least 2, got {}", grid.resolution)))
    }
}

fn read_polys(paths: &[PathBuf]) -> Result<Vec<LaurentPolynomial>, Failure> {
    paths.iter().map(|p| read_json(p)).collect()
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

/// A line cloud, a plane-curve cloud scanned along both variables, or a CSV.
fn cloud(source: &Source, opts: &SampleOpts) -> Result<PointCloud, Failure> {
    if let Some(path) = &source.line {
        let line: ParametricLine = read_json(path)?;
        return Ok(sample_line(&line, opts.strategy, opts.count, opts.seed));
    }
    if let Some(path) = &source.curve {
        let f: LaurentPolynomial = read_json(path)?;
        let [lo, hi] = pair(&opts.log_range)?;
        let grid = log_grid(lo, hi, opts.moduli);
        let mut cloud = sample_plane_curve(&f, &grid, opts.angles, opts.seed)?;
        if f.depends_on(0) {
            let swapped = sample_plane_curve(&f.permuted(&[1, 0]), &grid, opts.angles, opts.seed)?;
            cloud.extend(&swapped.permuted(&[1, 0]));
        }
        return Ok(cloud);
    }
    let path = source.cloud.as_ref().expect("clap requires one source");
    read_cloud(path, opts.seed)
}

fn with_product<R>(parts: &[&dyn Parametrization], f: &mut dyn FnMut(&dyn Parametrization) -> R) -> R {
    match parts {
        [one] => f(*one),
        [first, rest @ ..] => with_product(rest, &mut |tail| f(&Product(*first, tail))),
        [] => unreachable!("clap requires one line"),
    }
}

fn emit_json<T: Serialize + ?Sized>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_csv(cloud: &PointCloud, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => write_cloud_csv(cloud, std::io::BufWriter::new(std::fs::File::create(p)?))?,
        None => write_cloud_csv(cloud, std::io::stdout().lock())?,
    }
    Ok(())
}
