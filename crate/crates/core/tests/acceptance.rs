//! Acceptance suite, run without the libtest harness so every criterion
//! prints its `[PASS]`/`[FAIL]` line under a plain `cargo test`. Arguments
//! that are not flags select criteria by substring.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use amoeba_core::algebra::{Rational, Scalar};
use amoeba_core::basis::{lopsided, verify_basis, Verdict};
use amoeba_core::line::{limit_rays, LineCoordinate};
use amoeba_core::sampling::roots::certified_roots;
use amoeba_core::sampling::{
    amoeba_dimension, diminishing_check, log_grid, rasterize, rasterize_log_points, sample_line, sample_parameters,
    sample_plane_curve, MonomialOrbit, Parametrization, PointCloud, SamplingStrategy, RANK_TOL,
};
use amoeba_core::semialg::{describe, fiber_solve, membership, triple_surface, SurfaceKind, QUARTIC_BASIS};
use amoeba_core::ParametricLine;
use common::*;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    println!("[{}] {id:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn criterion_01_quadric_reproduction() {
    let start = Instant::now();
    let s = triple_surface(&real_line(), 0, 1, 2).unwrap();
    let elapsed = start.elapsed();
    // 2x² − y² − z² + 2 scaled to max |coef| = 1
    let expected = [1.0, -0.5, -0.5, 1.0];
    let err = s.coefficients.iter().zip(expected).map(|(c, e)| (c - e).abs()).fold(0.0, f64::max);
    let exact_ok = s.exact.as_ref().is_some_and(|ex| {
        ex.iter().zip(expected).all(|(c, e)| *c == Rational::new(((e * 2.0) as i64).into(), 2.into()))
    });
    let pass = s.kind == SurfaceKind::Quadratic && err <= 1e-12 && exact_ok && elapsed < Duration::from_secs(1);
    verdict(1, "quadric reproduction", pass, format!("{s}, max error {err:e}, exact {exact_ok}, {elapsed:?}"));
}

/// `(a·Y₂ + Y₃ − (a+1)·Y₁ − a² − b² − a)² + b²(Y₁ − Y₂ + 1)² − 4b²Y₁`, expanded
/// independently into the quartic basis.
fn printed_quartic(a: i64, b: i64) -> Vec<Rational> {
    type Poly = BTreeMap<[u8; 3], Rational>;
    fn mul(p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (e, c) in p {
            for (f, d) in q {
                let key = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                *out.entry(key).or_insert_with(Rational::zero) += c * d;
            }
        }
        out
    }
    fn add(p: &mut Poly, q: &Poly, s: &Rational) {
        for (e, c) in q {
            *p.entry(*e).or_insert_with(Rational::zero) += c * s;
        }
    }
    let lin = |c: [i64; 4]| -> Poly {
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]].into_iter().zip(c).map(|(e, v)| (e, int(v))).collect()
    };
    let big_a = lin([-(a + 1), a, 1, -(a * a + b * b + a)]);
    let big_b = lin([1, -1, 0, 1]);
    let mut q = mul(&big_a, &big_a);
    add(&mut q, &mul(&big_b, &big_b), &int(b * b));
    add(&mut q, &lin([1, 0, 0, 0]), &int(-4 * b * b));
    QUARTIC_BASIS.iter().map(|e| q.get(e).cloned().unwrap_or_else(Rational::zero)).collect()
}

fn criterion_02_quartic_reproduction() {
    let start = Instant::now();
    // α = −1 − 2i, i.e. a = 1, b = 2
    let normal = ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0), (1, 0, -1, -2)]).unwrap();
    let s = triple_surface(&normal, 0, 1, 2).unwrap();
    let want = printed_quartic(1, 2);
    let got = s.exact.clone().unwrap_or_default();
    // equal up to one rational scalar, compared exactly
    let k = want.iter().position(|c| !c.is_zero()).unwrap();
    let exact_ok =
        got.len() == want.len() && !got[k].is_zero() && got.iter().zip(&want).all(|(g, w)| g * &want[k] == w * &got[k]);
    let scaled: Vec<Rational> = got.iter().map(|g| g * &want[k] / &got[k]).collect();

    let sym = triple_surface(&symmetric_line(), 0, 1, 2).unwrap();
    let third = 1.0 / 3.0;
    let ninth = 1.0 / 9.0;
    let sym_want = [ninth, -ninth, ninth, -ninth, -ninth, ninth, -third, -third, -third, 1.0];
    let sym_err = sym.coefficients.iter().zip(sym_want).map(|(c, e)| (c - e).abs()).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = s.kind == SurfaceKind::Quartic
        && exact_ok
        && sym.kind == SurfaceKind::Quartic
        && sym_err <= 1e-9
        && elapsed < Duration::from_secs(1);
    let shown: Vec<String> = scaled.iter().map(|r| r.to_string()).collect();
    verdict(
        2,
        "quartic reproduction",
        pass,
        format!("normal form [{}] exact {exact_ok}; symmetric max error {sym_err:e}; {elapsed:?}", shown.join(", ")),
    );
}

/// Random points of the bounding box of a cloud.
fn box_points(cloud: &PointCloud, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = cloud.n;
    let lo: Vec<f64> = (0..n).map(|i| cloud.points.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|i| cloud.points.iter().map(|p| p[i]).fold(0.0, f64::max)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|i| rng.random_range(lo[i]..hi[i])).collect()).collect()
}

fn criterion_03_oracle_soundness() {
    let start = Instant::now();
    let tol = 1e-6;
    let mut details = Vec::new();
    let mut pass = true;
    for (name, line) in [("planar", planar_line()), ("real", real_line()), ("symmetric", symmetric_line())] {
        let desc = describe(&line);
        let mut cloud = sample_line(&line, SamplingStrategy::UniformDisk, 5000, 1);
        cloud.extend(&sample_line(&line, SamplingStrategy::Annulus, 5000, 2));
        let accepted = cloud.points.iter().filter(|p| membership(&desc, p, tol).unwrap()).count();
        let random = box_points(&cloud, 10_000, 3);
        let mut rejected = 0;
        let mut disagreements = 0;
        for p in &random {
            let m = membership(&desc, p, tol).unwrap();
            if !m {
                rejected += 1;
            } else if desc.surfaces.iter().any(|s| s.relative_residual(p) > tol) {
                disagreements += 1;
            }
            if m != circle_oracle(&line, p, 1e-4) && desc.max_defect(p).unwrap().abs() > 1e-4 {
                disagreements += 1;
            }
        }
        let rate = rejected as f64 / random.len() as f64;
        let ok = accepted == cloud.len() && disagreements == 0 && (line.n() == 2 || rate >= 0.99);
        pass &= ok;
        details.push(format!(
            "{name}: {accepted}/{} sampled accepted, rejection {:.2}%, oracle disagreements {disagreements}",
            cloud.len(),
            100.0 * rate
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(10);
    verdict(3, "oracle soundness", pass, format!("{}; {elapsed:?}", details.join("; ")));
}

fn criterion_04_fiber_degrees() {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();

    let real = real_line();
    let mut ts = sample_parameters(&real, SamplingStrategy::UniformDisk, 950, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    ts.extend(
        (0..50)
            .map(|_| Complex64::new(rng.random_range(-4.0..4.0), 0.0))
            .filter(|t: &Complex64| [0.0, 1.0, -1.0].iter().all(|b| (t.re - b).abs() > 1e-6)),
    );
    let (mut twos, mut ones) = (0, 0);
    for t in &ts {
        let sols = fiber_solve(&real, &real.moduli(*t), 1e-8).unwrap();
        let want = if t.im == 0.0 { 1 } else { 2 };
        if sols.len() != want {
            bad.push(format!("real t={t}: {} solutions", sols.len()));
        }
        if sols.len() == 2 {
            twos += 1;
        } else {
            ones += 1;
        }
        for s in &sols {
            worst = worst.max(residual(&real, s.t(), &real.moduli(*t)));
        }
    }

    let sym = symmetric_line();
    let sym_ts = sample_parameters(&sym, SamplingStrategy::UniformDisk, 1000, 13);
    for t in &sym_ts {
        let sols = fiber_solve(&sym, &sym.moduli(*t), 1e-8).unwrap();
        if sols.len() != 1 {
            bad.push(format!("symmetric t={t}: {} solutions", sols.len()));
        }
        for s in &sols {
            worst = worst.max(residual(&sym, s.t(), &sym.moduli(*t)));
        }
    }
    let pass = bad.is_empty() && worst <= 1e-8;
    verdict(
        4,
        "fiber degrees",
        pass,
        format!(
            "real: {twos}×2 + {ones}×1 of {}; symmetric: {} points; max residual {worst:e}; {bad:?}",
            ts.len(),
            sym_ts.len()
        ),
    );
}

fn residual(line: &ParametricLine, t: Complex64, point: &[f64]) -> f64 {
    line.moduli(t).iter().zip(point).map(|(m, x)| (m - x).abs() / x).fold(0.0, f64::max)
}

fn random_rational_line(rng: &mut ChaCha8Rng, n: usize) -> ParametricLine {
    let mut coords = Vec::with_capacity(n);
    let mut pool: Vec<Scalar> = Vec::new();
    let rat =
        |rng: &mut ChaCha8Rng| Rational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=4).into());
    for _ in 0..n {
        let a = Scalar::rational(Rational::from_integer(rng.random_range(1i64..=5).into()), rat(rng));
        let roll = rng.random_range(0..10);
        let c = if roll == 0 {
            LineCoordinate::constant(a)
        } else if roll < 4 && !pool.is_empty() {
            let b = pool[rng.random_range(0..pool.len())].clone();
            LineCoordinate::affine(a, b)
        } else {
            let b = Scalar::rational(rat(rng), rat(rng));
            pool.push(b.clone());
            LineCoordinate::affine(a, b)
        };
        coords.push(c);
    }
    if pool.is_empty() {
        coords[0] = LineCoordinate::affine(Scalar::exact(1, 0), Scalar::exact(0, 0));
    }
    ParametricLine::new(coords).unwrap()
}

fn criterion_05_balancing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    let mut rays_seen = 0;
    for k in 0..100 {
        let n = 2 + k % 5;
        let line = random_rational_line(&mut rng, n);
        let rays = limit_rays(&line);
        rays_seen += rays.len();
        let sum: Vec<i64> = (0..n).map(|i| rays.iter().map(|r| r[i]).sum()).collect();
        if sum.iter().any(|&s| s != 0) {
            failures += 1;
        }
    }
    verdict(
        5,
        "balancing",
        failures == 0,
        format!("100 lines in dimensions 2-6, {rays_seen} rays, {failures} unbalanced"),
    );
}

fn criterion_06_planar_complement_topology() {
    let f = plane_line_poly();
    let res = 512;
    let window = [[-5.0, 5.0], [-5.0, 5.0]];
    let moduli = log_grid(-5.2, 5.2, 4 * res);
    // scan fibers over x, then over y with the roles swapped
    let mut cloud = sample_plane_curve(&f, &moduli, 4096, 0).unwrap();
    cloud.extend(&sample_plane_curve(&f, &moduli, 4096, 0).unwrap().permuted(&[1, 0]));
    let grid = rasterize(&cloud, &window, res).unwrap();
    let components = grid.complement_components().unwrap();

    // cells meeting X₁ + X₂ ≥ 1, |X₁ − X₂| ≤ 1, tested on a 9×9 lattice of points per cell
    let satisfies = |z1: f64, z2: f64| {
        let (x, y) = (z1.exp(), z2.exp());
        x + y >= 1.0 && (x - y).abs() <= 1.0
    };
    let h = 10.0 / res as f64;
    let exact_points: Vec<Vec<f64>> = (0..grid.cell_count())
        .map(|i| grid.cell_center(i))
        .filter(|c| {
            (0..=8).any(|i| {
                (0..=8).any(|j| satisfies(c[0] + h * (i as f64 / 8.0 - 0.5), c[1] + h * (j as f64 / 8.0 - 0.5)))
            })
        })
        .collect();
    let exact = rasterize_log_points(&exact_points, &window, res).unwrap();
    let spurious = grid.count_minus(&exact.dilate(1)).unwrap();
    let missing = exact.count_minus(&grid.dilate(1)).unwrap();
    let pass = components == 3 && spurious == 0 && missing == 0;
    verdict(
        6,
        "planar complement topology",
        pass,
        format!(
            "{} occupied cells, {components} complement components, {spurious} occupied outside band, {missing} inequality cells uncovered",
            grid.count()
        ),
    );
}

fn criterion_07_dimension_estimator() {
    let one = Complex64::new(1.0, 0.0);
    let lines = [
        ("t->(t,2t)", ParametricLine::from_integers(&[(1, 0, 0, 0), (2, 0, 0, 0)]).unwrap(), 1),
        ("t->(t,t-1)", ParametricLine::from_integers(&[(1, 0, 0, 0), (1, 0, 1, 0)]).unwrap(), 2),
        ("t->(t,t+1,t-1)", real_line(), 2),
    ];
    let orbit = MonomialOrbit::new(
        vec![one, Complex64::new(2.0, 0.0), one, Complex64::new(0.0, 3.0)],
        vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
    );
    let mut cases: Vec<(&str, &dyn Parametrization, usize)> =
        lines.iter().map(|(name, l, d)| (*name, l as &dyn Parametrization, *d)).collect();
    cases.push(("2-parameter orbit in (C*)^4", &orbit, 2));
    let mut pass = true;
    let mut details = Vec::new();
    for (name, phi, want) in cases {
        let mut got = Vec::new();
        let mut slowest = Duration::ZERO;
        for seed in 0..10 {
            let start = Instant::now();
            got.push(amoeba_dimension(phi, 16, seed, RANK_TOL).unwrap().estimated_dimension);
            slowest = slowest.max(start.elapsed());
        }
        let ok = got.iter().all(|&d| d == want) && slowest < Duration::from_secs(1);
        pass &= ok;
        details.push(format!("{name} -> {:?} (slowest {slowest:?})", got[0]));
    }
    verdict(7, "dimension estimator", pass, details.join("; "));
}

fn criterion_08_diminishing_action() {
    let example = diminishing_check(3, 3, 1, 6).unwrap();
    let trivial: Vec<bool> =
        (1..=6).flat_map(|n| (0..=n).map(move |k| diminishing_check(0, k, k, n).unwrap())).collect();
    let pass = example && trivial.iter().all(|&b| !b);
    verdict(
        8,
        "diminishing-action predicate",
        pass,
        format!("(3,3,1,6) -> {example}; (0,k,k,n) all false: {}", trivial.iter().all(|&b| !b)),
    );
}

fn criterion_09_basis_verification() {
    let res = 128;
    // product {x + y + 1 = 0} × {z² − 2z + 3 = 0}
    let f1 = poly(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0]), (1, &[0, 0, 0])]);
    let f2 = poly(3, &[(1, &[0, 0, 2]), (-2, &[0, 0, 1]), (3, &[0, 0, 0])]);
    let z_roots = certified_roots(&[Complex64::new(3.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(1.0, 0.0)]);
    let moduli = log_grid(-5.2, 5.2, 4 * res);
    let mut plane = sample_plane_curve(&plane_line_poly(), &moduli, 1024, 0).unwrap();
    plane.extend(&sample_plane_curve(&plane_line_poly(), &moduli, 1024, 0).unwrap().permuted(&[1, 0]));
    let mut product = PointCloud::new(3, plane.mode, 0);
    for z in &z_roots.roots {
        for p in &plane.points {
            product.points.push(vec![p[0], p[1], z.norm()]);
        }
    }
    let window = [[-5.0, 5.0]; 3];
    let start = Instant::now();
    let prod = verify_basis(&product, &[f1, f2], &window, res, 1).unwrap();
    let prod_time = start.elapsed();

    // t ↦ (t, t+1, t−1) against its three planar projections
    let line = real_line();
    let p_xy = poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 1, 0]), (1, &[0, 0, 0])]);
    let p_xz = poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 0, 1]), (-1, &[0, 0, 0])]);
    let p_yz = poly(3, &[(1, &[0, 1, 0]), (-1, &[0, 0, 1]), (-2, &[0, 0, 0])]);
    let mut cloud = sample_line(&line, SamplingStrategy::Annulus, 400_000, 21);
    cloud.extend(&sample_line(&line, SamplingStrategy::NearEnds, 400_000, 22));
    cloud.extend(&sample_line(&line, SamplingStrategy::UniformDisk, 200_000, 23));
    let start = Instant::now();
    let lr = verify_basis(&cloud, &[p_xy, p_xz, p_yz], &[[-3.0, 3.0]; 3], res, 1).unwrap();
    let line_time = start.elapsed();

    let pass = prod.verdict == Verdict::Consistent
        && prod.excess_cells == 0
        && prod.deficit_cells == 0
        && lr.verdict == Verdict::StrictContainment
        && lr.excess_fraction >= 0.2;
    verdict(
        9,
        "basis verification",
        pass,
        format!(
            "product: {:?} (V {} cells, I {} cells, band {}, {prod_time:?}); line: {:?} with {:.1}% excess, {} deficit ({line_time:?})",
            prod.verdict,
            prod.v_cells,
            prod.intersection_cells,
            prod.band_cells,
            lr.verdict,
            100.0 * lr.excess_fraction,
            lr.deficit_cells
        ),
    );
}

fn criterion_10_lopsidedness_soundness() {
    let moduli = log_grid(-4.0, 4.0, 200);
    let mut checked = 0;
    let mut violations = 0;
    let mut check = |f: &amoeba_core::LaurentPolynomial, cloud: &PointCloud| {
        for z in cloud.log_points() {
            checked += 1;
            if lopsided(f, &z).is_some() {
                violations += 1;
            }
        }
    };
    // plane curves: line, parabola y = (x−1)(x−2), hyperbola y = 1 + 1/(x−2)
    let parabola = poly(2, &[(1, &[0, 1]), (-1, &[2, 0]), (3, &[1, 0]), (-2, &[0, 0])]);
    let hyperbola = poly(2, &[(1, &[1, 1]), (-2, &[0, 1]), (-1, &[1, 0]), (1, &[0, 0])]);
    for f in [plane_line_poly(), parabola, hyperbola] {
        let cloud = sample_plane_curve(&f, &moduli, 360, 7).unwrap();
        check(&f, &cloud);
    }
    // lines against the polynomials of their planar projections
    for strategy in [SamplingStrategy::UniformDisk, SamplingStrategy::Annulus, SamplingStrategy::NearEnds] {
        check(&plane_line_poly(), &sample_line(&planar_line(), strategy, 5000, 8));
    }
    let line = real_line();
    let projections = [
        poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 1, 0]), (1, &[0, 0, 0])]),
        poly(3, &[(1, &[1, 0, 0]), (-1, &[0, 0, 1]), (-1, &[0, 0, 0])]),
        poly(3, &[(1, &[0, 1, 0]), (-1, &[0, 0, 1]), (-2, &[0, 0, 0])]),
    ];
    for strategy in [SamplingStrategy::UniformDisk, SamplingStrategy::Annulus, SamplingStrategy::NearEnds] {
        let cloud = sample_line(&line, strategy, 5000, 9);
        for f in &projections {
            check(f, &cloud);
        }
    }
    // the product variety against z² − 2z + 3
    let g = poly(3, &[(1, &[0, 0, 2]), (-2, &[0, 0, 1]), (3, &[0, 0, 0])]);
    let plane = sample_plane_curve(&plane_line_poly(), &moduli, 90, 0).unwrap();
    let z = certified_roots(&[Complex64::new(3.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::one()]);
    let mut product = PointCloud::new(3, plane.mode, 0);
    for r in &z.roots {
        product.points.extend(plane.points.iter().map(|p| vec![p[0], p[1], r.norm()]));
    }
    check(&g, &product);
    verdict(10, "lopsidedness soundness", violations == 0, format!("{checked} amoeba points, {violations} lopsided"));
}

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, fn()); 10] = [
        ("criterion_01_quadric_reproduction", criterion_01_quadric_reproduction as fn()),
        ("criterion_02_quartic_reproduction", criterion_02_quartic_reproduction as fn()),
        ("criterion_03_oracle_soundness", criterion_03_oracle_soundness as fn()),
        ("criterion_04_fiber_degrees", criterion_04_fiber_degrees as fn()),
        ("criterion_05_balancing", criterion_05_balancing as fn()),
        ("criterion_06_planar_complement_topology", criterion_06_planar_complement_topology as fn()),
        ("criterion_07_dimension_estimator", criterion_07_dimension_estimator as fn()),
        ("criterion_08_diminishing_action", criterion_08_diminishing_action as fn()),
        ("criterion_09_basis_verification", criterion_09_basis_verification as fn()),
        ("criterion_10_lopsidedness_soundness", criterion_10_lopsidedness_soundness as fn()),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        if std::panic::catch_unwind(run).is_err() {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {}", failed.join(", "));
        std::process::exit(1);
    }
}
