use epstein_core::analysis::{find_positive_interval, large_scale_positivity, verify_negative_range};
use epstein_core::convexity::{midpoint_convexity_xi, verify_minimum_at_equal_scales, HyperplaneChart};
use epstein_core::epstein::xi;
use epstein_core::regions::{center_solution, certify_connected, scan, ConnectivityStatus, Label};
use epstein_core::{EvalConfig, ScaleVector};

fn cfg() -> EvalConfig {
    EvalConfig::default().with_tol(1e-9)
}

#[test]
fn intervals_nest_and_are_symmetric() {
    let mut prev: Option<(f64, f64)> = None;
    for n in 10..=14 {
        let iv = find_positive_interval(n, &cfg()).unwrap().unwrap();
        assert_eq!(iv.mirror, 0.5 * n as f64 - iv.gamma);
        assert!(iv.left.upper() < 0.0 && iv.right.lower() > 0.0);
        if let Some((g, m)) = prev {
            assert!(iv.gamma < g && iv.mirror > m);
        }
        prev = Some((iv.gamma, iv.mirror));
        let unit = ScaleVector::unit(n);
        for d in [-0.3, 0.05, 0.4] {
            let a = xi(n, iv.gamma + d, &unit, &cfg()).unwrap();
            let b = xi(n, iv.mirror - d, &unit, &cfg()).unwrap();
            assert_eq!(a.approximation().sign(), b.approximation().sign(), "n = {n}, d = {d}");
        }
    }
    assert!(find_positive_interval(9, &cfg()).unwrap().is_none());
}

#[test]
fn small_dimensions_are_negative() {
    for n in 1..=8 {
        let grid = verify_negative_range(n, &cfg()).unwrap();
        assert!(grid.last().unwrap().bound_value < 0.0, "n = {n}");
    }
}

#[test]
fn large_anisotropy_turns_xi_positive() {
    let t = large_scale_positivity(2, 0.5, 1, &cfg()).unwrap();
    assert!(t.is_finite() && t > 1.0);
    let t1 = large_scale_positivity(3, 0.7, 1, &cfg()).unwrap();
    let t2 = large_scale_positivity(3, 0.7, 2, &cfg()).unwrap();
    assert_eq!(t1, t2);
    let mut a = vec![1.0; 9];
    a[0] = 1024.0;
    assert!(xi(9, 2.25, &ScaleVector::new(a).unwrap(), &cfg()).unwrap().approximation().lower() > 0.0);
}

#[test]
fn midpoint_examples() {
    let chart = HyperplaneChart::standard(2).unwrap();
    let r = midpoint_convexity_xi(2, 0.6, &chart, &[-0.8], &[0.8], &cfg()).unwrap();
    assert!(r.holds && r.gap > 0.0);
    let r = midpoint_convexity_xi(2, 0.6, &chart, &[0.3], &[0.3], &cfg()).unwrap();
    assert!(r.gap.abs() <= 2.0 * r.allowance);
    let chart = HyperplaneChart::standard(3).unwrap();
    let r = midpoint_convexity_xi(3, 1.1, &chart, &[-0.9, 0.4], &[0.7, -1.0], &cfg()).unwrap();
    assert!(r.holds);
}

#[test]
fn minimum_examples() {
    let r = verify_minimum_at_equal_scales(3, 0.9, 100, 11, &cfg()).unwrap();
    assert!(r.passed(), "{r:?}");
    let mut a = vec![1.0; 9];
    a[0] = 2.0;
    a[1] = 0.5;
    let x = xi(9, 2.25, &ScaleVector::new(a).unwrap(), &cfg()).unwrap();
    assert!(x.value - x.err > -0.065_884_758_538);
}

#[test]
fn single_cell_and_centers() {
    let chart = HyperplaneChart::standard(2).unwrap();
    let g = scan(2, 0.5, &chart, &[(0.0, 0.0)], &[1], &cfg()).unwrap();
    assert_eq!(g.labels, vec![Label::Negative]);
    let ones = HyperplaneChart::kratio(4).unwrap().with_offset(vec![1.0; 4]).unwrap();
    assert!(center_solution(&ones).unwrap().iter().all(|b| b.abs() < 1e-12));
    assert!(center_solution(&HyperplaneChart::kratio(4).unwrap()).unwrap().iter().all(|b| b.abs() < 1e-14));
}

#[test]
fn scan_axis_reordering_relabels() {
    let chart = HyperplaneChart::kratio(3).unwrap();
    let swapped = chart.restrict(&[1, 0]).unwrap();
    let b = [(-1.5, 1.5), (-1.5, 1.5)];
    let g = scan(3, 0.7, &chart, &b, &[9, 9], &cfg()).unwrap();
    let h = scan(3, 0.7, &swapped, &b, &[9, 9], &cfg()).unwrap();
    for i in 0..9 {
        for j in 0..9 {
            assert_eq!(g.labels[g.flat_index(&[i, j])], h.labels[h.flat_index(&[j, i])]);
        }
    }
    let again = scan(3, 0.7, &chart, &b, &[9, 9], &cfg()).unwrap();
    assert_eq!(g, again);
}

#[test]
fn wide_scans_see_both_signs_and_negative_center() {
    for (n, s) in [(3usize, 0.4), (4, 0.9), (6, 1.2)] {
        let chart = HyperplaneChart::kratio(n).unwrap().restrict(&[0]).unwrap();
        let g = scan(n, s, &chart, &[(-6.0, 6.0)], &[25], &cfg()).unwrap();
        assert!(g.count(Label::Negative) > 0 && g.count(Label::Positive) > 0, "n = {n}");
        assert_eq!(certify_connected(&g).status, ConnectivityStatus::Connected);
        let c = center_solution(&chart).unwrap();
        assert_eq!(g.labels[g.nearest(&c).unwrap()], Label::Negative);
    }
}
