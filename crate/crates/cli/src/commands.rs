use crate::output::{Field, Outcome, Status};
use crate::{ChartKind, Command, ConvexityArgs, EvalArgs, IntervalArgs, ScanArgs, SecondDerivArgs, VerifyMinArgs};
use epstein_core::analysis::{
    classify_critical_point, find_positive_interval, hat_xi_second_derivative, lemma1_bounds, sweep,
    verify_negative_range, xi_second_derivative, BoundReport,
};
use epstein_core::convexity::{
    claim_ab_check, h_of_v, log_theta_convexity, midpoint_convexity_xi, product_one_samples, sylvester_check,
    verify_minimum_at_equal_scales, HyperplaneChart,
};
use epstein_core::epstein::{hat_xi, xi, z};
use epstein_core::regions::{
    center_solution, certify_connected, certify_discrete_convex, scan, ConnectivityStatus, Label,
};
use epstein_core::{Approximation, Error, EvalConfig, ScaleVector};
use serde_json::{json, Value};
use std::fmt::Write as _;

pub fn run(command: &Command, cfg: &EvalConfig) -> Outcome {
    match command {
        Command::Eval(a) => eval(a, cfg),
        Command::Interval(a) if a.sweep => interval_sweep(a, cfg),
        Command::Interval(a) => interval(a, cfg),
        Command::Table1 => table1(cfg),
        Command::SecondDeriv(a) => second_deriv(a, cfg),
        Command::Bounds => bounds(cfg),
        Command::Convexity(a) => convexity(a, cfg),
        Command::Scan(a) => region_scan(a, cfg),
        Command::VerifyMin(a) => verify_min(a, cfg),
    }
}

fn severity(e: &Error) -> Status {
    if e.is_indeterminate() {
        Status::Indeterminate
    } else {
        Status::Failed
    }
}

fn sign_symbol(a: &Approximation) -> &'static str {
    match a.sign() {
        Some(epstein_core::Sign::Positive) => "+",
        Some(_) => "-",
        None => "?",
    }
}

fn fmt_s(s: f64) -> String {
    format!("{s}")
}

fn eval(a: &EvalArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["quantity", "n", "s", "value", "err"]);
    let mut results = Vec::new();
    let mut plain = String::new();
    let mut record = |o: &mut Outcome, name: &str, s: f64, r: epstein_core::Result<Approximation>| match r {
        Ok(v) => {
            o.row(vec![name.into(), a.n.into(), Field::Value(s), Field::Value(v.value), Field::Err(v.err)]);
            results.push(json!({ "quantity": name, "n": a.n, "s": s, "value": v.value, "err": v.err }));
            let _ = writeln!(plain, "{name}_{}({}) = {:.12} ± {:.2e}", a.n, fmt_s(s), v.value, v.err);
        }
        Err(e) => {
            let st = severity(&e);
            o.fail(format!("{name}_{}({}): {e}", a.n, fmt_s(s)), st);
        }
    };
    if let Some(h) = a.s_hat {
        let r = hat_xi(a.n, h, cfg).map(|x| x.approximation());
        record(&mut o, "hat_xi", h, r);
    } else {
        let s = a.s.expect("clap requires --s or --s-hat");
        let scales = match &a.scales {
            Some(v) => ScaleVector::new(v.clone()),
            None => Ok(ScaleVector::unit(a.n)),
        };
        match scales {
            Ok(scales) => {
                record(&mut o, "xi", s, xi(a.n, s, &scales, cfg).map(|x| x.approximation()));
                record(&mut o, "z", s, z(a.n, s, &scales, cfg));
            }
            Err(e) => o.fail(e.to_string(), Status::Failed),
        }
    }
    o.results = Value::Array(results);
    o.plain = Some(plain);
    o
}

fn interval(a: &IntervalArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["n", "gamma", "mirror", "bracket_width", "components"]);
    match find_positive_interval(a.n, cfg) {
        Ok(Some(iv)) => {
            o.row(vec![
                iv.n.into(),
                Field::Value(iv.gamma),
                Field::Value(iv.mirror),
                Field::Err(iv.bracket_width),
                iv.components.into(),
            ]);
            o.plain = Some(format!(
                "Xi_{} > 0 on ({:.6}, {:.6}), endpoints within {:.1e}, {} component(s)\n",
                iv.n, iv.gamma, iv.mirror, iv.bracket_width, iv.components
            ));
            o.results = json!(iv);
        }
        Ok(None) => {
            o.row(vec![a.n.into(), Field::Empty, Field::Empty, Field::Empty, 0usize.into()]);
            o.plain = Some(format!("Xi_{} < 0 on the whole scan grid of (0, {}]\n", a.n, a.n as f64 / 4.0));
            o.results = json!({ "n": a.n, "interval": Value::Null });
        }
        Err(e) => {
            let st = severity(&e);
            o.fail(format!("n = {}: {e}", a.n), st);
        }
    }
    o
}

fn interval_sweep(a: &IntervalArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["s", "xi", "err", "sign"]);
    let half = 0.5 * a.n as f64;
    let points: Vec<f64> = (0..a.grid).map(|i| half * (i + 1) as f64 / (a.grid + 1) as f64).collect();
    let mut results = Vec::new();
    for (s, r) in points.iter().zip(sweep(a.n, &points, cfg)) {
        match r {
            Ok(x) => {
                let ap = x.approximation();
                o.row(vec![Field::Value(*s), Field::Value(x.value), Field::Err(x.err), sign_symbol(&ap).into()]);
                results.push(json!({ "s": s, "value": x.value, "err": x.err, "sign": sign_symbol(&ap) }));
            }
            Err(e) => {
                let st = severity(&e);
                o.fail(format!("s = {s}: {e}"), st);
            }
        }
    }
    o.results = Value::Array(results);
    o
}

fn table1(cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["n", "gamma", "mirror", "bracket_width", "components"]);
    let mut plain = String::from("n   positivity interval\n");
    let mut results = Vec::new();
    for n in 10..=21 {
        match find_positive_interval(n, cfg) {
            Ok(Some(iv)) => {
                o.row(vec![
                    n.into(),
                    Field::Value(iv.gamma),
                    Field::Value(iv.mirror),
                    Field::Err(iv.bracket_width),
                    iv.components.into(),
                ]);
                let _ = writeln!(plain, "{n:<3} ({:.4}, {:.4})", iv.gamma, iv.mirror);
                results.push(json!(iv));
            }
            Ok(None) => o.fail(format!("n = {n}: no positivity interval found"), Status::Failed),
            Err(e) => {
                let st = severity(&e);
                o.fail(format!("n = {n}: {e}"), st);
            }
        }
    }
    o.results = Value::Array(results);
    o.plain = Some(plain);
    o
}

fn second_deriv(a: &SecondDerivArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["quantity", "n", "s", "value", "err"]);
    let mut plain = String::new();
    let mut results = serde_json::Map::new();
    let (label, point, r) = match (a.s, a.s_hat) {
        (_, Some(h)) => ("hat_xi''", h, hat_xi_second_derivative(a.n, h, cfg)),
        (s, None) => {
            let s = s.unwrap_or(a.n as f64 / 4.0);
            ("xi''", s, xi_second_derivative(a.n, s, cfg))
        }
    };
    match r {
        Ok(v) => {
            o.row(vec![label.into(), a.n.into(), Field::Value(point), Field::Value(v.value), Field::Err(v.err)]);
            let _ = writeln!(plain, "{label}_{}({}) = {:.12} ± {:.2e}", a.n, fmt_s(point), v.value, v.err);
            results.insert(
                "second_derivative".into(),
                json!({ "quantity": label, "n": a.n, "s": point, "value": v.value, "err": v.err }),
            );
        }
        Err(e) => {
            let st = severity(&e);
            o.fail(format!("{label}: {e}"), st);
        }
    }
    match classify_critical_point(a.n, cfg) {
        Ok(kind) => {
            let name = serde_json::to_value(kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            o.row(vec!["critical_point".into(), a.n.into(), Field::Value(a.n as f64 / 4.0), name.clone().into(), Field::Empty]);
            let _ = writeln!(plain, "s = {} is a {}", fmt_s(a.n as f64 / 4.0), name.replace('_', " "));
            results.insert("critical_point".into(), json!(name));
        }
        Err(e) => {
            let st = severity(&e);
            o.fail(format!("classification at s = n/4: {e}"), st);
        }
    }
    o.results = Value::Object(results);
    o.plain = Some(plain);
    o
}

fn bound_row(o: &mut Outcome, r: &BoundReport) {
    let direction = serde_json::to_value(r.direction).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    o.row(vec![
        r.quantity.clone().into(),
        Field::Value(r.bound_value),
        direction.into(),
        r.threshold.map_or(Field::Empty, Field::Value),
        r.conclusion.map_or(Field::Empty, |s| s.symbol().to_string().into()),
    ]);
}

fn bounds(cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["quantity", "bound", "direction", "threshold", "conclusion"]);
    let mut results = serde_json::Map::new();
    for (key, r) in [("closed_form", lemma1_bounds(cfg)), ("negative_range_9", verify_negative_range(9, cfg))] {
        match r {
            Ok(reports) => {
                for rep in &reports {
                    bound_row(&mut o, rep);
                    if rep.threshold.is_some() && rep.conclusion.is_none() {
                        o.fail(format!("{}: bound {} does not decide the sign", rep.quantity, rep.bound_value), Status::Indeterminate);
                    }
                }
                results.insert(key.into(), json!(reports));
            }
            Err(e) => {
                let st = severity(&e);
                o.fail(format!("{key}: {e}"), st);
            }
        }
    }
    o.results = Value::Object(results);
    o
}

/// `count` deterministic points with coordinates in `[-radius, radius]`.
fn points(dim: usize, count: usize, radius: f64, seed: u64) -> Vec<Vec<f64>> {
    product_one_samples(dim + 1, count, seed)
        .into_iter()
        .map(|v| v[..dim].iter().map(|x| radius * x).collect())
        .collect()
}

fn convexity(a: &ConvexityArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["suite", "cases", "passed", "detail"]);
    let mut results = serde_json::Map::new();
    let mut suite = |o: &mut Outcome, name: &str, cases: usize, passed: bool, detail: String, json: Value| {
        o.row(vec![name.into(), cases.into(), passed.into(), detail.clone().into()]);
        if !passed {
            o.fail(format!("{name}: {detail}"), Status::Failed);
        }
        results.insert(name.into(), json);
    };

    // h(v) > 0 on [1, 20]
    let vs: Vec<f64> = (0..=38).map(|i| 1.0 + 0.5 * i as f64).collect();
    match vs.iter().map(|&v| h_of_v(v, cfg).map(|h| (v, h))).collect::<epstein_core::Result<Vec<_>>>() {
        Ok(hs) => {
            let ok = hs.iter().all(|(_, h)| h.lower() > 0.0);
            let worst = hs.iter().map(|(_, h)| h.lower()).fold(f64::INFINITY, f64::min);
            suite(&mut o, "h_positive", hs.len(), ok, format!("v in [1, 20], min h {worst:.3e}"), json!(hs));
        }
        Err(e) => o.fail(format!("h_positive: {e}"), severity(&e)),
    }
    match claim_ab_check(60) {
        Ok(rep) => {
            let ok = rep.passed();
            suite(&mut o, "coefficient_claims", 60, ok, format!("q(1) = {:.6}", rep.q1), json!(rep));
        }
        Err(e) => o.fail(format!("coefficient_claims: {e}"), severity(&e)),
    }
    let us: Vec<f64> = (-12..=12).map(|i| 0.25 * i as f64).collect();
    match log_theta_convexity(&us) {
        Ok(rep) => {
            let ok = rep.all_positive;
            suite(&mut o, "log_theta_convex", us.len(), ok, "u in [-3, 3]".into(), json!(rep));
        }
        Err(e) => o.fail(format!("log_theta_convex: {e}"), severity(&e)),
    }

    let dims: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let per = 100usize.div_ceil(dims.len());
    let mut minors = Vec::new();
    let mut sylvester_ok = true;
    for &n in &dims {
        for xs in points(n, per, 2.0, a.seed ^ n as u64) {
            match sylvester_check(&xs) {
                Ok(rep) => {
                    sylvester_ok &= rep.all_nonnegative;
                    minors.push(json!({ "x": xs, "minors": rep.minors }));
                }
                Err(e) => o.fail(format!("sylvester at {xs:?}: {e}"), severity(&e)),
            }
        }
    }
    let cases = minors.len();
    suite(&mut o, "sylvester", cases, sylvester_ok, format!("n in {dims:?}"), Value::Array(minors));

    let dims: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => (2..=4).collect(),
    };
    let per = 100usize.div_ceil(dims.len());
    let mut reports = Vec::new();
    let mut midpoint_ok = true;
    for &n in &dims {
        let offsets = product_one_samples(n, per, a.seed.wrapping_add(n as u64));
        let b1s = points(n - 1, per, 1.5, a.seed.wrapping_add(100 + n as u64));
        let b2s = points(n - 1, per, 1.5, a.seed.wrapping_add(200 + n as u64));
        for (k, ((v, b1), b2)) in offsets.into_iter().zip(b1s).zip(b2s).enumerate() {
            let s = 0.5 * n as f64 * (k as f64 + 0.5) / per as f64;
            let r = HyperplaneChart::standard(n)
                .and_then(|c| c.with_offset(v))
                .and_then(|c| midpoint_convexity_xi(n, s, &c, &b1, &b2, cfg));
            match r {
                Ok(rep) => {
                    midpoint_ok &= rep.holds;
                    reports.push(json!({ "n": n, "s": s, "b1": b1, "b2": b2, "gap": rep.gap, "allowance": rep.allowance }));
                }
                Err(e) => o.fail(format!("midpoint n = {n}, s = {s}: {e}"), severity(&e)),
            }
        }
    }
    let cases = reports.len();
    suite(&mut o, "midpoint", cases, midpoint_ok, format!("n in {dims:?}"), Value::Array(reports));
    o.results = Value::Object(results);
    o
}

fn region_scan(a: &ScanArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&[]);
    let chart = match a.chart {
        ChartKind::Standard => HyperplaneChart::standard(a.n),
        ChartKind::Kratio => HyperplaneChart::kratio(a.n),
    };
    let chart = match (chart, &a.axes) {
        (Ok(c), Some(axes)) => c.restrict(axes),
        (c, _) => c,
    };
    let chart = match chart {
        Ok(c) => c,
        Err(e) => {
            o.fail(e.to_string(), Status::Failed);
            return o;
        }
    };
    let j = chart.j();
    let grid = match scan(a.n, a.s, &chart, &vec![a.bounds; j], &vec![a.grid; j], cfg) {
        Ok(g) => g,
        Err(e) => {
            let st = severity(&e);
            o.fail(e.to_string(), st);
            return o;
        }
    };
    let connectivity = certify_connected(&grid);
    let convex = certify_discrete_convex(&grid, a.max_pairs, a.seed);
    let center = center_solution(&chart);
    let origin = grid.nearest(&vec![0.0; j]).map(|i| grid.labels[i]);
    let (neg, pos, ind) = (
        grid.count(Label::Negative),
        grid.count(Label::Positive),
        grid.count(Label::Indeterminate),
    );
    if ind > 0 {
        o.fail(format!("{ind} cells have indeterminate sign"), Status::Indeterminate);
    }
    let mut bytes = Vec::new();
    match grid.write_csv(&mut bytes) {
        Ok(()) => o.csv = Some(bytes),
        Err(e) => o.fail(e.to_string(), Status::Failed),
    }
    let mut plain = format!(
        "Xi_{}({}) on {} nodes: {neg} negative, {pos} positive, {ind} indeterminate\n",
        a.n,
        fmt_s(a.s),
        grid.len()
    );
    let status = match connectivity.status {
        ConnectivityStatus::Empty => "empty",
        ConnectivityStatus::Connected => "connected",
        ConnectivityStatus::Disconnected => "disconnected",
    };
    let _ = writeln!(plain, "negative region: {status}, {} component(s)", connectivity.components);
    let _ = writeln!(
        plain,
        "discrete convexity: {} ({} pairs{})",
        if convex.passed() { "pass" } else { "fail" },
        convex.pairs_checked,
        if convex.exhaustive { ", exhaustive" } else { ", sampled" }
    );
    if let Some((p, q, c)) = &convex.witness {
        let _ = writeln!(plain, "witness: {p:?} -> {q:?} crosses positive node {c:?}");
    }
    if let Some(label) = origin {
        let _ = writeln!(plain, "origin node: {}", label.symbol());
    }
    if j == 2 {
        for row in 0..a.grid {
            let line: String = (0..a.grid).map(|col| grid.labels[row * a.grid + col].symbol()).collect();
            plain += &line;
            plain.push('\n');
        }
    }
    o.plain = Some(plain);
    o.results = json!({
        "grid": grid.to_json(),
        "counts": { "negative": neg, "positive": pos, "indeterminate": ind },
        "origin": origin,
        "connectivity": connectivity,
        "convexity": convex,
        "center": center,
    });
    o
}

fn verify_min(a: &VerifyMinArgs, cfg: &EvalConfig) -> Outcome {
    let mut o = Outcome::new(&["n", "s", "minimum", "err", "samples", "strict_samples", "smallest_excess", "failures"]);
    match verify_minimum_at_equal_scales(a.n, a.s, a.samples, a.seed, cfg) {
        Ok(rep) => {
            o.row(vec![
                rep.n.into(),
                Field::Value(rep.s),
                Field::Value(rep.minimum.value),
                Field::Err(rep.minimum.err),
                rep.samples.into(),
                rep.strict_samples.into(),
                Field::Value(rep.smallest_excess),
                rep.failures.len().into(),
            ]);
            if !rep.passed() {
                o.fail(format!("{} draws below the equal-scale value", rep.failures.len()), Status::Failed);
            }
            o.results = json!(rep);
        }
        Err(e) => {
            let st = severity(&e);
            o.fail(e.to_string(), st);
        }
    }
    o
}
