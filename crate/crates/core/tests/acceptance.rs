//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use epstein_core::analysis::{
    classify_critical_point, find_positive_interval, lemma1_bounds, verify_negative_range, xi_second_derivative,
    CriticalPoint,
};
use epstein_core::chowla::xi_chowla_selberg;
use epstein_core::convexity::{
    det_jn, h_of_v, jn_closed_form, jn_recursion, midpoint_convexity_xi, sylvester_check,
    verify_minimum_at_equal_scales, HyperplaneChart, JnInput,
};
use epstein_core::epstein::{functional_equation_residual, xi};
use epstein_core::regions::{
    certify_connected, certify_discrete_convex, scan, ConnectivityStatus, Label, DEFAULT_MAX_PAIRS,
};
use epstein_core::specfun::theta;
use epstein_core::{EvalConfig, ScaleVector};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, format!("{name}: {got} vs {want} (tol {tol})"))
}

fn timed(limit: Duration, t0: Instant) -> Result<Duration, String> {
    let dt = t0.elapsed();
    ensure(dt < limit, format!("took {dt:?}, limit {limit:?}"))?;
    Ok(dt)
}

fn golden_values() -> Check {
    let cfg = EvalConfig::default();
    let t0 = Instant::now();
    let x9 = xi(9, 2.25, &ScaleVector::unit(9), &cfg).map_err(|e| e.to_string())?;
    timed(Duration::from_secs(10), t0)?;
    within("Xi_9(9/4)", x9.value, -0.065_884_758_538, 1e-9)?;
    let t0 = Instant::now();
    let x10 = xi(10, 2.5, &ScaleVector::unit(10), &cfg).map_err(|e| e.to_string())?;
    timed(Duration::from_secs(10), t0)?;
    within("Xi_10(5/2)", x10.value, 0.205_903_040_487, 1e-9)?;
    Ok(format!("Xi_9 = {:.12}, Xi_10 = {:.12}", x9.value, x10.value))
}

const INTERVALS: [(usize, f64, f64); 12] = [
    (10, 1.0899, 3.9101),
    (11, 0.6401, 4.8599),
    (12, 0.3976, 5.6024),
    (13, 0.2498, 6.2502),
    (14, 0.1562, 6.8438),
    (15, 0.0964, 7.4036),
    (16, 0.0585, 7.9415),
    (17, 0.0348, 8.4652),
    (18, 0.0202, 8.9798),
    (19, 0.0115, 9.4885),
    (20, 0.0064, 9.9936),
    (21, 0.0034, 10.4966),
];

fn positivity_intervals() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-9);
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for (n, g, m) in INTERVALS {
        let iv = find_positive_interval(n, &cfg)
            .map_err(|e| e.to_string())?
            .ok_or(format!("n = {n}: no interval"))?;
        within(&format!("gamma_{n}"), iv.gamma, g, 5e-4)?;
        within(&format!("mirror_{n}"), iv.mirror, m, 5e-4)?;
        worst = worst.max((iv.gamma - g).abs()).max((iv.mirror - m).abs());
    }
    let dt = timed(Duration::from_secs(300), t0)?;
    Ok(format!("12 rows, worst endpoint deviation {worst:.1e}, {dt:.1?}"))
}

fn second_derivatives() -> Check {
    let cfg = EvalConfig::default();
    let d10 = xi_second_derivative(10, 2.5, &cfg).map_err(|e| e.to_string())?;
    let d11 = xi_second_derivative(11, 2.75, &cfg).map_err(|e| e.to_string())?;
    within("Xi''_10(5/2)", d10.value, -0.101_080_515_709, 1e-6)?;
    within("Xi''_11(11/4)", d11.value, 0.009_568_954_836, 1e-6)?;
    ensure(d10.err < 1e-6 && d11.err < 1e-6, "error bounds above 1e-6")?;
    let c10 = classify_critical_point(10, &cfg).map_err(|e| e.to_string())?;
    let c11 = classify_critical_point(11, &cfg).map_err(|e| e.to_string())?;
    ensure(
        c10 == CriticalPoint::LocalMax && c11 == CriticalPoint::LocalMin,
        format!("classification {c10:?}, {c11:?}"),
    )?;
    Ok(format!("{:.9}, {:.9}, local_max -> local_min", d10.value, d11.value))
}

fn bound_constants() -> Check {
    let cfg = EvalConfig::default();
    let closed = lemma1_bounds(&cfg).map_err(|e| e.to_string())?;
    for (i, want) in [(0, 0.3540), (1, 0.0769), (2, 0.4309), (4, 0.04808)] {
        within(&closed[i].quantity, closed[i].bound_value, want, 1e-3)?;
    }
    ensure(closed[2].bound_value < 4.0 / 9.0, "combined bound not below 4/9")?;
    let stairs = verify_negative_range(9, &cfg).map_err(|e| e.to_string())?;
    let want = [
        1.2926, -1.3343, -0.0417, 0.9728, -0.9841, -0.0113, 0.8943, -0.9, -0.0057, 0.8649, -0.8889, -0.0240,
    ];
    ensure(stairs.len() == want.len() + 1, format!("{} stair reports", stairs.len()))?;
    for (r, w) in stairs.iter().zip(want) {
        within(&r.quantity, r.bound_value, w, 1e-3)?;
    }
    Ok(format!("{} closed-form and {} stair constants", 4, want.len()))
}

fn generic_s(rng: &mut ChaCha8Rng, n: usize) -> f64 {
    loop {
        let s = rng.gen_range(0.05..0.5 * n as f64 - 0.05);
        let m = (2.0 * s).round();
        if (2.0 * s - m).abs() > 0.01 {
            return s;
        }
    }
}

fn cross_check() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..30 {
        let n = 2 + i % 3;
        let logs: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.7..=0.7)).collect();
        let s = generic_s(&mut rng, n);
        let sc = ScaleVector::from_logs(&logs).map_err(|e| e.to_string())?;
        let a = xi(n, s, &sc, &cfg).map_err(|e| e.to_string())?;
        let b = xi_chowla_selberg(n, s, &sc, &cfg).map_err(|e| e.to_string())?;
        let gap = (a.value - b.value).abs();
        ensure(gap <= a.err + b.err, format!("n = {n}, s = {s}: gap {gap:e} > {:e}", a.err + b.err))?;
        worst = worst.max(gap);
    }
    let dt = timed(Duration::from_secs(120), t0)?;
    Ok(format!("30 samples, largest gap {worst:.1e}, {dt:.1?}"))
}

fn identities() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let half = 0.5 * n as f64;
        let mut s = rng.gen_range(0.02..0.98) * half;
        if (s - 0.5 * half).abs() < 0.01 {
            s += 0.02;
        }
        let logs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let sc = ScaleVector::from_logs(&logs).map_err(|e| e.to_string())?;
        let r = functional_equation_residual(n, s, &sc, &cfg).map_err(|e| e.to_string())?;
        ensure(r.holds(), format!("functional equation at n = {n}, s = {s}: {r:?}"))?;

        let lambda = rng.gen_range(0.3..3.0);
        let base = xi(n, s, &sc, &cfg).map_err(|e| e.to_string())?;
        let scaled = xi(n, s, &sc.scaled(lambda).map_err(|e| e.to_string())?, &cfg).map_err(|e| e.to_string())?;
        let f = lambda.powf(half - 2.0 * s);
        ensure(
            (scaled.value - f * base.value).abs() <= scaled.err + f * base.err + 1e-14 * scaled.value.abs(),
            format!("homogeneity at n = {n}, s = {s}"),
        )?;

        let mut perm = logs.clone();
        perm.reverse();
        perm.rotate_left(rng.gen_range(0..n));
        let p = xi(n, s, &ScaleVector::from_logs(&perm).map_err(|e| e.to_string())?, &cfg)
            .map_err(|e| e.to_string())?;
        ensure(
            (p.value - base.value).abs() <= p.err + base.err + 1e-14 * p.value.abs(),
            format!("permutation at n = {n}, s = {s}"),
        )?;
    }
    let tc = EvalConfig::default();
    for i in 0..=40 {
        let t = 10f64.powf(-2.0 + 0.1 * i as f64);
        let a = theta(t, &tc).map_err(|e| e.to_string())?;
        let b = theta(1.0 / t, &tc).map_err(|e| e.to_string())?.scale(t.powf(-0.5));
        ensure(
            (a.value - b.value).abs() <= a.err + b.err + 4.0 * f64::EPSILON * a.value,
            format!("theta reflection at t = {t}"),
        )?;
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let m = DMatrix::from_fn(n, n, |i, j| if i == j { z[i] } else { w[i] * w[j] });
        let dense = m.determinant();
        let closed = det_jn(&JnInput::new(z, w).map_err(|e| e.to_string())?);
        let scale: f64 = (0..n).map(|i| m.row(i).iter().map(|x| x.abs()).sum::<f64>()).product();
        ensure((dense - closed).abs() <= 1e-10 * scale.max(1.0), format!("det_jn {closed} vs {dense}"))?;
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let alphas: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let r = jn_recursion(&alphas).map_err(|e| e.to_string())?;
        let c = jn_closed_form(&alphas);
        let scale: f64 = alphas.iter().map(|a| (a - 1.0).abs() + 1.0).product();
        ensure((r - c).abs() <= 1e-12 * scale, format!("recursion {r} vs {c}"))?;
    }
    Ok("functional equation, homogeneity, permutation (50 each), reflection (41), det (200), recursion (100)".into())
}

fn random_chart(rng: &mut ChaCha8Rng, n: usize) -> Result<HyperplaneChart, String> {
    let j = rng.gen_range(1..n);
    let mut a: Vec<Vec<f64>> = (0..n).map(|_| (0..j).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    for l in 0..j {
        let mean = a.iter().map(|r| r[l]).sum::<f64>() / n as f64;
        for row in a.iter_mut() {
            row[l] -= mean;
        }
    }
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
    HyperplaneChart::new(a, v).map_err(|e| e.to_string())
}

fn convexity_suites() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-10);
    for i in 0..=190 {
        let v = 1.0 + 0.1 * i as f64;
        let h = h_of_v(v, &cfg).map_err(|e| e.to_string())?;
        ensure(h.lower() > 0.0, format!("h({v}) = {h:?}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let r = sylvester_check(&xs).map_err(|e| e.to_string())?;
        ensure(r.all_nonnegative, format!("sylvester at {xs:?}"))?;
    }
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let chart = random_chart(&mut rng, n)?;
        let s = rng.gen_range(0.03..0.97) * 0.5 * n as f64;
        let b1: Vec<f64> = (0..chart.j()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b2: Vec<f64> = (0..chart.j()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = midpoint_convexity_xi(n, s, &chart, &b1, &b2, &cfg).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("midpoint at n = {n}, s = {s}: gap {}", r.gap))?;
    }
    for (n, s) in [(3, 0.9), (9, 2.25), (10, 1.0)] {
        let r = verify_minimum_at_equal_scales(n, s, 100, 8, &cfg).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("minimum at n = {n}, s = {s}: {} failures", r.failures.len()))?;
    }
    Ok("h on [1, 20], sylvester (100), midpoint (100), minimum (3 x 100)".into())
}

fn region_geometry() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-9);
    let t0 = Instant::now();
    let chart = HyperplaneChart::kratio(3).map_err(|e| e.to_string())?;
    let g = scan(3, 0.7, &chart, &[(-2.0, 2.0); 2], &[41, 41], &cfg).map_err(|e| e.to_string())?;
    let neg = g.count(Label::Negative);
    ensure(neg > 0, "empty negative region")?;
    let origin = g.nearest(&[0.0, 0.0]).ok_or("no origin cell")?;
    ensure(g.labels[origin] == Label::Negative, "origin cell not negative")?;
    let conn = certify_connected(&g);
    ensure(
        conn.status == ConnectivityStatus::Connected && conn.components == 1,
        format!("{} components", conn.components),
    )?;
    let convex = certify_discrete_convex(&g, DEFAULT_MAX_PAIRS, 1);
    ensure(convex.passed(), format!("convexity witness {:?}", convex.witness))?;
    let chart10 = HyperplaneChart::kratio(10)
        .and_then(|c| c.restrict(&[0, 1]))
        .map_err(|e| e.to_string())?;
    let g10 = scan(10, 2.5, &chart10, &[(-2.0, 2.0); 2], &[41, 41], &cfg).map_err(|e| e.to_string())?;
    ensure(g10.count(Label::Positive) == g10.len(), "n = 10 scan has non-positive cells")?;
    let dt = timed(Duration::from_secs(180), t0)?;
    Ok(format!("{neg} negative cells, one component, convex; n = 10 all positive; {dt:.1?}"))
}

fn small_n_negativity() -> Check {
    let cfg = EvalConfig::default().with_tol(1e-9);
    let mut worst = f64::NEG_INFINITY;
    for n in 1..=9 {
        let reports = verify_negative_range(n, &cfg).map_err(|e| e.to_string())?;
        let grid = reports.last().ok_or("no grid report")?;
        ensure(grid.bound_value < 0.0, format!("n = {n}: max upper end {}", grid.bound_value))?;
        worst = worst.max(grid.bound_value);
    }
    Ok(format!("largest value + err over all grids {worst:.4}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden values", golden_values),
        ("positivity intervals", positivity_intervals),
        ("second derivatives", second_derivatives),
        ("bound constants", bound_constants),
        ("representation cross-check", cross_check),
        ("identity suites", identities),
        ("convexity suites", convexity_suites),
        ("region geometry", region_geometry),
        ("small-n negativity", small_n_negativity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
