//! Reduced-equation solutions against oracles written from the defining formulas.

use hartogs_core::domains::generic_norm_self;
use hartogs_core::exact::{int, rat, to_f64};
use hartogs_core::kemetric::{build_problem, critical_closed_form, fiber_point, Potential};
use hartogs_core::DomainDescriptor;
use num_complex::Complex64;

type C = Complex64;

/// IV(3), k = 1, μ = 1/2: d = 3, γ = 3, so β = 7/5 and P(Y) = Y⁵ - β⁵ - (3/2)(Y⁴ - β⁴).
const D: i32 = 3;
const BETA: f64 = 1.4;
const COEF: f64 = 1.5;

fn p(y: f64) -> f64 {
    y.powi(D + 2) - BETA.powi(D + 2) - COEF * (y.powi(D + 1) - BETA.powi(D + 1))
}

/// `-log X(Y) = ∫_Y^∞ y^d/P(y) dy`, mapped by `y = 1/u` and summed by composite Simpson.
fn neg_log_x(y: f64) -> f64 {
    let f = |u: f64| if u == 0.0 { 1.0 } else { (1.0 / u).powi(D) / (p(1.0 / u) * u * u) };
    let n = 4000;
    let h = (1.0 / y) / n as f64;
    let mut s = f(0.0) + f(1.0 / y);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn oracle_y(x: f64) -> f64 {
    let target = -x.ln();
    let (mut lo, mut hi) = (BETA + 1e-6, 1e3);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if neg_log_x(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Classical RK4 on `dY/ds = P(Y)/Y^d`, `s = log X`.
fn rk4(x0: f64, y0: f64, x1: f64, steps: usize) -> f64 {
    let f = |y: f64| p(y) / y.powi(D);
    let h = (x1.ln() - x0.ln()) / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

fn iv3() -> DomainDescriptor {
    DomainDescriptor::parse("IV", &[3]).unwrap()
}

#[test]
fn one_fiber_dimension_matches_quadrature_and_integration() {
    let pb = build_problem(&iv3(), 1, &rat(1, 2)).unwrap();
    assert_eq!(pb.beta, rat(7, 5));
    let y_half = pb.solve_y(0.5).unwrap().1;
    assert!((y_half - oracle_y(0.5)).abs() < 1e-8, "{y_half} vs {}", oracle_y(0.5));
    let y_start = oracle_y(0.05);
    for x in [0.3, 0.5, 0.8] {
        let integrated = rk4(0.05, y_start, x, 20_000);
        let solved = pb.solve_y(x).unwrap().1;
        assert!((integrated - solved).abs() < 1e-8, "x={x}: {integrated} vs {solved}");
    }
}

#[test]
fn origin_and_boundary_behaviour() {
    let d = iv3();
    let pb = build_problem(&d, 2, &rat(1, 2)).unwrap();
    let zero = [C::from(0.0); 3];
    let g0 = pb.g(&zero, &[C::from(0.0); 2]).unwrap();
    assert_eq!(g0, pb.h_eval(0.0).unwrap());
    let z = [C::new(0.1, 0.2), C::from(0.0), C::new(-0.3, 0.0)];
    let n = generic_norm_self(&d, &z).unwrap();
    let mut last = f64::NEG_INFINITY;
    for m in 1..=7 {
        let x = 1.0 - 10f64.powi(-m);
        let g = pb.g(&z, &fiber_point(&d, 2, &rat(1, 2), &z, x).unwrap()).unwrap();
        assert!(g > last + 1.0, "g must grow without bound toward the boundary");
        last = g;
    }
    let outside = [C::from((1.01 * n.powf(0.5)).sqrt()), C::from(0.0)];
    assert!(pb.g(&z, &outside).is_err());
}

#[test]
fn critical_potentials_of_exceptional_types() {
    for (label, mu0) in [("V", rat(12, 17)), ("VI", rat(9, 14))] {
        let d = DomainDescriptor::parse(label, &[]).unwrap();
        assert_eq!(d.mu0, mu0);
        let cf = critical_closed_form(&d, 1).unwrap();
        let mut z = vec![C::from(0.0); d.dim()];
        z[0] = C::new(0.3, 0.1);
        let big = [C::new(0.2, 0.0)];
        let n = generic_norm_self(&d, &z).unwrap();
        let m = to_f64(&mu0);
        let want = (d.d as f64 / (d.d as f64 + 2.0)) * m.ln() - (n.powf(m) - 0.04).ln();
        assert!((cf.g(&z, &big).unwrap() - want).abs() < 1e-14);
        let pb = build_problem(&d, 1, &mu0).unwrap();
        assert!((pb.g(&z, &big).unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn potential_examples_at_critical_exponent() {
    let d = iv3();
    for k in 1..=3 {
        let pb = build_problem(&d, k, &d.mu0).unwrap();
        let kk = k as f64;
        let want = 3.0 / (4.0 + kk) * 0.75f64.ln() + 2f64.ln();
        assert!((pb.h_eval(0.5).unwrap() - want).abs() < 1e-10);
    }
    let pb = build_problem(&d, 1, &int(1)).unwrap();
    assert!(pb.solve_y(0.999_999).unwrap().1 > 1e5);
}
