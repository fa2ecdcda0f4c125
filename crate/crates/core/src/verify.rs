//! Named property suites covering every module, reported one line per invariant.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bergman::{bridge_holds, coefficient_sum, coefficient_table, SignReport};
use crate::domains::{generic_norm_self, hua_at_zero, hua_poly, random_interior_point, DomainDescriptor};
use crate::error::{Error, Result};
use crate::exact::{
    binomial, binomial_basis_poly, expand_binomial_basis, int, parse_rational, pochhammer, rat, rational_to_string,
    to_f64, Rational, RationalPoly,
};
use crate::exceptional::{
    bergman_operator, fundamental_formula_defect, jordan_identity_defect, quasi_inverse, triple_operator, H3Element,
    JordanTriple, M21Element,
};
use crate::kemetric::{build_problem_with, critical_closed_form, fiber_point, ma_residual, Potential, SolverSpec};
use crate::numerics::{complex_hessian, hermitian_eigenvalues, integrate, integrate_to_infinity, QuadratureSpec};
use crate::octonion::ComplexOctonion;

type C = Complex64;

/// Suite names accepted by [`run_suite`], besides `all`.
pub const SUITES: [&str; 7] = ["exact", "numerics", "octonion", "exceptional", "domains", "bergman", "kemetric"];

/// Seeds, trial counts and solver tolerances for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Trials for algebraic identities.
    pub identity_trials: usize,
    /// Trials for operator determinants and other per-pair linear algebra.
    pub determinant_trials: usize,
    /// Random points for Monge–Ampère residuals.
    pub residual_points: usize,
    pub solver: SolverSpec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 1, identity_trials: 200, determinant_trials: 50, residual_points: 20, solver: SolverSpec::default() }
    }
}

/// Outcome of one invariant.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// Largest observed error (`0` for exact checks, `inf` if an evaluation failed).
    pub worst: f64,
    pub tolerance: f64,
    pub note: Option<String>,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}::{} {}/{} worst={:.3e} tol={:.1e}",
            if self.ok() { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.passed,
            self.total,
            self.worst,
            self.tolerance
        )?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Accumulates trial outcomes for one invariant.
struct Tally {
    name: String,
    tol: f64,
    passed: usize,
    total: usize,
    worst: f64,
    note: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>, tol: f64) -> Self {
        Self { name: name.into(), tol, passed: 0, total: 0, worst: 0.0, note: None }
    }

    fn exact(name: impl Into<String>) -> Self {
        Self::new(name, 0.0)
    }

    fn error(&mut self, err: f64) {
        self.total += 1;
        if err <= self.tol {
            self.passed += 1;
        }
        self.worst = if err.is_nan() { f64::INFINITY } else { self.worst.max(err) };
    }

    fn flag(&mut self, ok: bool) {
        self.error(if ok { 0.0 } else { f64::INFINITY });
    }

    fn result(&mut self, r: Result<f64>) {
        match r {
            Ok(e) => self.error(e),
            Err(e) => {
                self.error(f64::INFINITY);
                self.note.get_or_insert_with(|| e.to_string());
            }
        }
    }

    fn result_flag(&mut self, r: Result<bool>) {
        self.result(r.map(|ok| if ok { 0.0 } else { f64::INFINITY }));
    }

    fn finish(self, suite: &str) -> CheckResult {
        CheckResult {
            suite: suite.to_string(),
            name: self.name,
            passed: self.passed,
            total: self.total,
            worst: self.worst,
            tolerance: self.tol,
            note: self.note,
        }
    }
}

type Check = Box<dyn Fn(&VerifyConfig) -> Tally + Send + Sync>;

fn check(f: impl Fn(&VerifyConfig) -> Tally + Send + Sync + 'static) -> Check {
    Box::new(f)
}

/// Per-check generator so results do not depend on execution order.
fn rng_for(cfg: &VerifyConfig, name: &str) -> ChaCha8Rng {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ h)
}

/// Runs a suite by name (`all` runs every suite); results keep a deterministic order.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, cfg)?);
        }
        return Ok(out);
    }
    let checks = match name {
        "exact" => exact_checks(),
        "numerics" => numerics_checks(),
        "octonion" => octonion_checks(),
        "exceptional" => exceptional_checks(),
        "domains" => domains_checks(),
        "bergman" => bergman_checks(),
        "kemetric" => kemetric_checks(),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite '{other}'; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(checks.par_iter().map(|c| c(cfg).finish(name)).collect())
}

fn desc(label: &str, params: &[u32]) -> DomainDescriptor {
    DomainDescriptor::parse(label, params).expect("built-in descriptor is valid")
}

/// Descriptors used by the randomized suites.
fn sample_descriptors() -> Vec<DomainDescriptor> {
    vec![
        desc("I", &[1, 1]),
        desc("I", &[2, 3]),
        desc("I", &[3, 3]),
        desc("II", &[4]),
        desc("II", &[5]),
        desc("III", &[2]),
        desc("III", &[3]),
        desc("IV", &[3]),
        desc("IV", &[5]),
        desc("V", &[]),
        desc("VI", &[]),
    ]
}

fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    rat(rng.random_range(-num..=num), rng.random_range(1..=den))
}

fn random_poly<R: Rng>(rng: &mut R) -> RationalPoly {
    let deg = rng.random_range(0..=8usize);
    let mut coeffs: Vec<Rational> = (0..=deg).map(|_| random_rational(rng, 20, 9)).collect();
    if coeffs[deg].is_zero() {
        coeffs[deg] = int(1);
    }
    RationalPoly::new(coeffs)
}

/// Exact Gaussian elimination for a square nonsingular system.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            if f.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (dst, src) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *dst -= &f * src;
            }
            let v = &f * &b[col];
            b[r] -= v;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

fn binom_at(k: u64, j: u64) -> Rational {
    Rational::from_integer(binomial(k + j, j))
}

fn exact_checks() -> Vec<Check> {
    vec![
        check(|cfg| {
            let mut t = Tally::exact("binomial_basis_left_inverse");
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let p = random_poly(&mut rng);
                let c = expand_binomial_basis(&p);
                let d = p.degree().max(0) as u64;
                t.flag((0..=d).all(|k| {
                    let s = c.iter().enumerate().fold(Rational::zero(), |acc, (j, cj)| acc + cj * binom_at(k, j as u64));
                    s == p.eval(&int(k as i64))
                }));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("binomial_basis_sum_is_value_at_zero");
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let p = random_poly(&mut rng);
                let s = expand_binomial_basis(&p).iter().fold(Rational::zero(), |a, c| a + c);
                t.flag(s == p.eval(&Rational::zero()));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("binomial_basis_matches_linear_solve");
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let p = random_poly(&mut rng);
                let d = p.degree().max(0) as u64;
                let a = (0..=d).map(|k| (0..=d).map(|j| binom_at(k, j)).collect()).collect();
                let b = (0..=d).map(|k| p.eval(&int(k as i64))).collect();
                let mut c = expand_binomial_basis(&p);
                c.resize(d as usize + 1, Rational::zero());
                t.flag(solve_exact(a, b).as_ref() == Some(&c));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("pochhammer_recurrence");
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let x = random_rational(&mut rng, 50, 12);
                let j = rng.random_range(0..12u64);
                t.flag(pochhammer(&x, j + 1) == pochhammer(&x, j) * (&x + int(j as i64)));
            }
            let s = RationalPoly::x();
            t.flag((0..8).all(|j| pochhammer(&s, j + 1) == &pochhammer(&s, j) * &RationalPoly::linear(int(j as i64))));
            t.flag(binomial_basis_poly(3).eval(&int(2)) == int(10));
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("rational_string_round_trip");
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let big = BigInt::from(rng.random_range(-1_000_000_000i64..1_000_000_000)).pow(rng.random_range(1..4u32));
                let x = Rational::new(big, BigInt::from(rng.random_range(1..1_000_000i64)));
                t.flag(parse_rational(&rational_to_string(&x)).ok() == Some(x));
            }
            t
        }),
    ]
}

fn numerics_checks() -> Vec<Check> {
    vec![
        check(|cfg| {
            let mut t = Tally::new("tail_substitution_invariance", 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            let spec = QuadratureSpec::default();
            for _ in 0..cfg.identity_trials {
                let a: f64 = rng.random_range(0.1..5.0);
                let b = a + rng.random_range(0.1..5.0);
                let p: f64 = rng.random_range(1.5..4.0);
                let f = |y: f64| 1.0 / (1.0 + y.powf(p));
                let r = (|| {
                    let whole = integrate_to_infinity(f, a, &spec)?;
                    let head = integrate(f, a, b, &spec)?;
                    let tail = integrate_to_infinity(f, b, &spec)?;
                    // the same tail mapped to (0, 1/b] by hand
                    let mapped = integrate(|u: f64| f(1.0 / u) / (u * u), 1e-300, 1.0 / b, &spec)?;
                    let combined = whole.error + head.error + tail.error + mapped.error;
                    Ok(((whole.value - head.value - tail.value).abs().max((tail.value - mapped.value).abs())
                        - combined)
                        .max(0.0))
                })();
                t.result(r);
            }
            let atan = integrate_to_infinity(|y| 1.0 / (1.0 + y * y), 1.0, &spec).map(|q| (q.value - std::f64::consts::FRAC_PI_4).abs());
            t.result(atan);
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("hessian_quadratic_exactness", 1e-7);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let n = rng.random_range(1..=6usize);
                let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
                let z: Vec<C> = (0..n).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let step = 10f64.powf(rng.random_range(-3.0..-1.0));
                let f = |v: &[C]| Ok(v.iter().zip(&a).map(|(x, w)| w * x.norm_sqr()).sum::<f64>());
                t.result(complex_hessian(f, &z, step).map(|h| {
                    let want = DMatrix::from_fn(n, n, |i, j| if i == j { C::from(a[i]) } else { C::from(0.0) });
                    (h.entries - want).iter().map(|c| c.norm()).fold(0.0, f64::max)
                }));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("hermitian_eigen_trace_and_det", 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let n = rng.random_range(1..=30usize);
                let a = DMatrix::from_fn(n, n, |_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                let m = &a * a.adjoint() + DMatrix::identity(n, n) * C::from(0.5);
                t.result(hermitian_eigenvalues(&m).map(|ev| {
                    let tr = m.trace().re;
                    let det = m.determinant().re;
                    let sum: f64 = ev.iter().sum();
                    let prod: f64 = ev.iter().product();
                    ((sum - tr).abs() / tr.abs()).max((prod - det).abs() / det.abs())
                }));
            }
            t
        }),
    ]
}

fn oct_norm(a: &ComplexOctonion) -> f64 {
    a.norm_sqr().sqrt()
}

fn octonion_checks() -> Vec<Check> {
    vec![
        check(|cfg| {
            let mut t = Tally::new("alternativity", 1e-12);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let (a, b) = (ComplexOctonion::random(&mut rng, 1.0), ComplexOctonion::random(&mut rng, 1.0));
                let scale = oct_norm(&a).powi(2) * oct_norm(&b);
                let left = a * (a * b) - (a * a) * b;
                let right = (b * a) * a - b * (a * a);
                t.error(oct_norm(&left).max(oct_norm(&right)) / scale);
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("composition", 1e-12);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let (a, b) = (ComplexOctonion::random(&mut rng, 1.0), ComplexOctonion::random(&mut rng, 1.0));
                let err = ((a * b).cnorm() - a.cnorm() * b.cnorm()).norm();
                t.error(err / (a.norm_sqr() * b.norm_sqr()));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("scalar_products", 1e-12);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let (a, b) = (ComplexOctonion::random(&mut rng, 1.0), ComplexOctonion::random(&mut rng, 1.0));
                let sym = (a.bilinear(&b) - b.bilinear(&a)).norm();
                let h = a.hermitian(&a);
                let herm = h.im.abs() + (h.re - 2.0 * a.norm_sqr()).abs();
                t.error(sym.max(herm) / (a.norm_sqr() + b.norm_sqr()));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("trace_is_scalar", 1e-14);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let a = ComplexOctonion::random(&mut rng, 1.0);
                let s = a + a.cayley_conj();
                t.error(s.0[1..].iter().map(|c| c.norm()).fold(0.0, f64::max));
            }
            t
        }),
    ]
}

fn jordan_checks<T: JordanTriple + 'static>(label: &'static str) -> Vec<Check> {
    vec![
        check(move |cfg| {
            let mut t = Tally::new(format!("trace_of_D[{label}]"), 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.determinant_trials {
                let (x, y) = (T::random(&mut rng, 1.0), T::random(&mut rng, 1.0));
                let tr = triple_operator(&x, &y).trace();
                t.error((tr - x.inner(&y) * T::GENUS as f64).norm() / (x.norm() * y.norm()));
            }
            t
        }),
        check(move |cfg| {
            let mut t = Tally::new(format!("jordan_identity[{label}]"), 1e-9);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let v: Vec<T> = (0..5).map(|_| T::random(&mut rng, 1.0)).collect();
                let scale: f64 = v.iter().map(|e| e.norm()).product();
                t.error(jordan_identity_defect(&v[0], &v[1], &v[2], &v[3], &v[4]) / scale);
            }
            t
        }),
        check(move |cfg| {
            let mut t = Tally::new(format!("fundamental_formula[{label}]"), 1e-9);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let (x, y, v) = (T::random(&mut rng, 1.0), T::random(&mut rng, 1.0), T::random(&mut rng, 1.0));
                t.error(fundamental_formula_defect(&x, &y, &v) / (x.norm().powi(4) * y.norm().powi(2) * v.norm()));
            }
            t
        }),
        check(move |cfg| {
            let mut t = Tally::new(format!("det_bergman_operator[{label}]"), 1e-9);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.determinant_trials {
                let (x, y) = (T::random_interior(&mut rng, 0.9), T::random_interior(&mut rng, 0.9));
                let det = bergman_operator(&x, &y).determinant();
                let want = T::generic_norm(&x, &y).powu(T::GENUS as u32);
                t.error((det - want).norm() / want.norm());
            }
            t
        }),
        check(move |cfg| {
            let mut t = Tally::new(format!("log_norm_derivative[{label}]"), 1e-6);
            let mut rng = rng_for(cfg, &t.name);
            let eps = 1e-5;
            for _ in 0..cfg.determinant_trials {
                let (x, y) = (T::random_interior(&mut rng, 0.9), T::random_interior(&mut rng, 0.9));
                let u = T::random(&mut rng, 1.0);
                let plus = T::generic_norm(&x.add(&u.scale(C::from(eps))), &y);
                let minus = T::generic_norm(&x.sub(&u.scale(C::from(eps))), &y);
                let fd = (plus / minus).ln() / (2.0 * eps);
                t.result(quasi_inverse(&y, &x).map(|yx| (fd + u.inner(&yx)).norm()));
            }
            t
        }),
    ]
}

fn h3_rel(a: &H3Element, b: &H3Element, scale: f64) -> f64 {
    a.sub(b).norm() / scale
}

fn exceptional_checks() -> Vec<Check> {
    let mut v = vec![
        check(|cfg| {
            let mut t = Tally::new("sharp_of_sharp", 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let x = H3Element::random(&mut rng, 1.0);
                t.error(h3_rel(&x.sharp().sharp(), &x.scale(x.det()), x.norm().powi(4)));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("det_of_sharp", 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let x = H3Element::random(&mut rng, 1.0);
                t.error((x.sharp().det() - x.det() * x.det()).norm() / x.norm().powi(6));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("trace_form_associativity", 1e-10);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let x = H3Element::random(&mut rng, 1.0);
                let y = H3Element::random(&mut rng, 1.0);
                let z = H3Element::random(&mut rng, 1.0);
                let err = (x.freudenthal(&y).bilinear(&z) - x.bilinear(&y.freudenthal(&z))).norm();
                t.error(err / (x.norm() * y.norm() * z.norm()));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("rank_two_quadratic_restriction", 1e-12);
            let mut rng = rng_for(cfg, &t.name);
            for _ in 0..cfg.identity_trials {
                let x = M21Element::random(&mut rng, 1.0);
                let y = M21Element::random(&mut rng, 1.0);
                let via = M21Element::project(&x.embed().quad(&y.embed()));
                t.error(via.sub(&x.quad(&y)).norm() / (x.norm().powi(2) * y.norm()));
            }
            t
        }),
    ];
    v.extend(jordan_checks::<H3Element>("VI"));
    v.extend(jordan_checks::<M21Element>("V"));
    v
}

/// `(1 + (j-1) a/2)_{1 + b + (r-j) a}` over `j = 1..r`, from the rank invariants alone.
fn chi0_from_invariants(d: &DomainDescriptor) -> Rational {
    (1..=d.r as i64).fold(Rational::one(), |acc, j| {
        let x = int(1) + rat((j - 1) * d.a as i64, 2);
        acc * pochhammer(&x, 1 + d.b as u64 + ((d.r as i64 - j) * d.a as i64) as u64)
    })
}

fn family_sweep() -> Vec<DomainDescriptor> {
    let mut out = Vec::new();
    for m in 1..=6 {
        for n in m..=6 {
            out.push(desc("I", &[m, n]));
        }
    }
    for n in 2..=9 {
        out.push(desc("II", &[n]));
    }
    for n in 1..=7 {
        out.push(desc("III", &[n]));
    }
    for n in 3..=9 {
        out.push(desc("IV", &[n]));
    }
    out.push(desc("V", &[]));
    out.push(desc("VI", &[]));
    out
}

fn domains_checks() -> Vec<Check> {
    vec![
        check(|_| {
            let mut t = Tally::exact("hua_value_at_zero");
            for d in family_sweep() {
                let chi0 = hua_at_zero(&d);
                t.flag(chi0.is_positive() && chi0 == chi0_from_invariants(&d) && hua_poly(&d).eval(&int(0)) == chi0);
            }
            t
        }),
        check(|_| {
            let mut t = Tally::exact("hua_degree_is_dimension");
            for d in family_sweep() {
                t.flag(hua_poly(&d).degree() == d.d as isize && d.dim() == d.d as usize);
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("norm_in_unit_interval");
            let mut rng = rng_for(cfg, &t.name);
            for d in sample_descriptors() {
                let zero = vec![C::from(0.0); d.dim()];
                t.result_flag(generic_norm_self(&d, &zero).map(|n| (n - 1.0).abs() < 1e-15));
                for _ in 0..cfg.identity_trials / 10 {
                    let radius = rng.random_range(0.01..0.99);
                    let r = random_interior_point(&d, &mut rng, radius)
                        .and_then(|z| generic_norm_self(&d, &z))
                        .map(|n| n > 0.0 && n < 1.0);
                    t.result_flag(r);
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("alternating_norm_squared_is_determinant", 1e-9);
            let mut rng = rng_for(cfg, &t.name);
            for n in [2u32, 4, 6] {
                let d = desc("II", &[n]);
                for _ in 0..cfg.identity_trials / 10 {
                    let radius = rng.random_range(0.05..0.95);
                    let r = (|| {
                        let z = random_interior_point(&d, &mut rng, radius)?;
                        let m = d.to_matrix(&z)?;
                        let det = (DMatrix::identity(n as usize, n as usize) - &m * m.adjoint()).determinant().re;
                        let nz = generic_norm_self(&d, &z)?;
                        Ok((nz * nz - det).abs())
                    })();
                    t.result(r);
                }
            }
            t
        }),
        check(|_| {
            let mut t = Tally::exact("critical_exponent_below_one");
            for d in family_sweep() {
                let one = int(1);
                t.flag(if d.r == 1 { d.mu0 == one } else { d.mu0 < one && d.mu0.is_positive() });
            }
            t
        }),
    ]
}

fn random_mu<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.random_range(1..=40i64);
    rat(rng.random_range(1..=2 * den), den)
}

fn bergman_checks() -> Vec<Check> {
    vec![
        check(|cfg| {
            let mut t = Tally::exact("kernel_coefficients_sum_to_one");
            let mut rng = rng_for(cfg, &t.name);
            let descs = sample_descriptors();
            for _ in 0..cfg.identity_trials / 2 {
                let d = &descs[rng.random_range(0..descs.len())];
                t.result_flag(coefficient_table(d, &random_mu(&mut rng)).map(|tb| coefficient_sum(&tb).is_one()));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("kernel_reconstruction");
            let mut rng = rng_for(cfg, &t.name);
            let descs = sample_descriptors();
            for _ in 0..cfg.identity_trials / 2 {
                let d = &descs[rng.random_range(0..descs.len())];
                let mu = random_mu(&mut rng);
                let chi = hua_poly(d);
                let chi0 = hua_at_zero(d);
                t.result_flag(coefficient_table(d, &mu).map(|tb| {
                    (0..=d.d as u64).all(|k| {
                        let s = tb
                            .kernel_coeffs
                            .iter()
                            .enumerate()
                            .fold(Rational::zero(), |acc, (j, c)| acc + c * binom_at(k, j as u64));
                        s == chi.eval(&(&mu * int(k as i64))) / &chi0
                    })
                }));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("convention_bridge");
            let mut rng = rng_for(cfg, &t.name);
            let descs = sample_descriptors();
            for _ in 0..cfg.identity_trials / 2 {
                let d = &descs[rng.random_range(0..descs.len())];
                t.result_flag(coefficient_table(d, &random_mu(&mut rng)).map(|tb| bridge_holds(&tb)));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("series_derivative_matches_differences", 1e-6);
            let mut rng = rng_for(cfg, &t.name);
            let descs = sample_descriptors();
            for _ in 0..cfg.identity_trials / 4 {
                let d = &descs[rng.random_range(0..descs.len())];
                let mu = random_mu(&mut rng);
                let x: f64 = rng.random_range(0.05..0.5);
                let order = rng.random_range(1..=3u32);
                let h = 1e-4;
                t.result(coefficient_table(d, &mu).and_then(|tb| {
                    let f = |s: f64| tb.f_chi_mu(s, order - 1);
                    let fd = (8.0 * (f(x + h)? - f(x - h)?) - (f(x + 2.0 * h)? - f(x - 2.0 * h)?)) / (12.0 * h);
                    let exact = tb.f_chi_mu(x, order)?;
                    Ok((fd - exact).abs() / exact.abs().max(1.0))
                }));
            }
            t
        }),
        check(|_| {
            let mut t = Tally::exact("alternating_signs_at_one");
            for d in [desc("III", &[2]), desc("IV", &[4]), desc("VI", &[])] {
                t.result_flag(coefficient_table(&d, &int(1)).map(|tb| SignReport::from_table(&tb).alternation_floor().is_some()));
            }
            t
        }),
        check(|_| {
            let mut t = Tally::exact("critical_sign_pattern");
            for d in [desc("I", &[3, 3]), desc("IV", &[3]), desc("IV", &[4]), desc("IV", &[6]), desc("V", &[]), desc("VI", &[])] {
                t.result_flag(coefficient_table(&d, &d.mu0).map(|tb| SignReport::from_table(&tb).matches_critical_pattern));
            }
            t
        }),
        check(|_| {
            let mut t = Tally::exact("rank_two_positive_below_critical");
            let d = desc("V", &[]);
            for j in 1..70 {
                t.result_flag(coefficient_table(&d, &rat(j, 100)).map(|tb| SignReport::from_table(&tb).all_positive));
            }
            t
        }),
    ]
}

/// Problems exercised by the reduced-equation checks.
fn ke_cases() -> Vec<(DomainDescriptor, usize, Rational)> {
    let mut out = Vec::new();
    for d in [desc("I", &[2, 3]), desc("II", &[4]), desc("III", &[3]), desc("IV", &[3]), desc("V", &[]), desc("VI", &[])] {
        for k in 1..=3 {
            for mu in [rat(1, 2), int(1), d.mu0.clone()] {
                out.push((d.clone(), k, mu));
            }
        }
    }
    out
}

/// Five-point centered derivative.
fn derivative(f: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((8.0 * (f(x + h)? - f(x - h)?) - (f(x + 2.0 * h)? - f(x - 2.0 * h)?)) / (12.0 * h))
}

const INTERIOR_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn kemetric_checks() -> Vec<Check> {
    vec![
        check(|cfg| {
            let mut t = Tally::exact("polynomial_consistency");
            for (d, k, mu) in ke_cases() {
                t.result_flag(build_problem_with(&d, k, &mu, cfg.solver).map(|p| crate::kemetric::polynomial_consistency(&p)));
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("monotone_profile");
            let grid: Vec<f64> = (0..=19).map(|i| 0.05 * i as f64).collect();
            for (d, k, mu) in ke_cases() {
                let r = build_problem_with(&d, k, &mu, cfg.solver).and_then(|p| {
                    let ys: Vec<f64> = grid.iter().map(|&x| p.solve_y(x).map(|v| v.1)).collect::<Result<_>>()?;
                    Ok(ys[0] == p.beta_f64() && ys.windows(2).all(|w| w[1] > w[0]))
                });
                t.result_flag(r);
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("round_trip", 1e-9);
            let xs = [0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99];
            for (d, k, mu) in ke_cases() {
                match build_problem_with(&d, k, &mu, cfg.solver) {
                    Ok(p) => {
                        for x in xs {
                            t.result(p.solve_y(x).and_then(|(y0, _)| p.x_of_y0(y0)).map(|back| (back - x).abs()));
                        }
                    }
                    Err(e) => t.result(Err(e)),
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("reduced_ode_residual", 1e-7);
            for (d, k, mu) in ke_cases() {
                let p = match build_problem_with(&d, k, &mu, cfg.solver) {
                    Ok(p) => p,
                    Err(e) => {
                        t.result(Err(e));
                        continue;
                    }
                };
                let s = p.s.to_float();
                let pf = p.p.as_ref().map(|q| q.to_float());
                let beta = p.beta_f64();
                let dd = d.d as i32;
                for x in INTERIOR_GRID {
                    let r = (|| {
                        let (y0, y) = p.solve_y(x)?;
                        let dy = derivative(|s| p.solve_y(s).map(|v| v.0), x, 1e-3 * (1.0 - x))?;
                        let general = {
                            let lhs = x * (y0 + beta).powi(dd) * dy;
                            let rhs = y0 * s.eval(y0);
                            (lhs - rhs).abs() / rhs.abs()
                        };
                        let first = match &pf {
                            Some(pf) => {
                                let lhs = x * y.powi(dd) * dy;
                                (lhs - pf.eval(y)).abs() / pf.eval(y).abs()
                            }
                            None => 0.0,
                        };
                        Ok(general.max(first))
                    })();
                    t.result(r);
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("critical_profile", 1e-8);
            let grid: Vec<f64> = (1..=19).map(|i| 0.05 * i as f64).collect();
            for d in sample_descriptors() {
                for k in 1..=3 {
                    match build_problem_with(&d, k, &d.mu0, cfg.solver) {
                        Ok(p) => {
                            for &x in &grid {
                                t.result(p.solve_y(x).map(|(_, y)| (y - 1.0 / (1.0 - x)).abs()));
                            }
                        }
                        Err(e) => t.result(Err(e)),
                    }
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("potential_derivative", 1e-7);
            for (d, k, mu) in ke_cases() {
                let p = match build_problem_with(&d, k, &mu, cfg.solver) {
                    Ok(p) => p,
                    Err(e) => {
                        t.result(Err(e));
                        continue;
                    }
                };
                for x in INTERIOR_GRID {
                    let r = (|| {
                        let dh = derivative(|s| p.h_eval(s), x, 1e-3 * (1.0 - x))?;
                        Ok((x * dh - p.solve_y(x)?.0).abs())
                    })();
                    t.result(r);
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::exact("divergence_at_boundary");
            for (d, k, mu) in ke_cases() {
                let r = build_problem_with(&d, k, &mu, cfg.solver).and_then(|p| {
                    let ys: Vec<f64> = (2..=8).map(|m| p.solve_y(1.0 - 10f64.powi(-m)).map(|v| v.1)).collect::<Result<_>>()?;
                    Ok(ys.windows(2).all(|w| w[1] > 5.0 * w[0]) && ys[ys.len() - 1] > 1e6)
                });
                t.result_flag(r);
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("closed_form_agreement", 1e-9);
            let mut rng = rng_for(cfg, &t.name);
            for d in [desc("IV", &[3]), desc("I", &[2, 2]), desc("V", &[])] {
                for k in 1..=2 {
                    let (p, cf) = match (build_problem_with(&d, k, &d.mu0, cfg.solver), critical_closed_form(&d, k)) {
                        (Ok(p), Ok(cf)) => (p, cf),
                        (Err(e), _) | (_, Err(e)) => {
                            t.result(Err(e));
                            continue;
                        }
                    };
                    for _ in 0..cfg.residual_points {
                        let r = (|| {
                            let (z, big) = random_hartogs_point(&d, k, &d.mu0, &mut rng)?;
                            Ok((p.g(&z, &big)? - cf.g(&z, &big)?).abs())
                        })();
                        t.result(r);
                    }
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("monge_ampere_critical", 5e-3);
            let mut rng = rng_for(cfg, &t.name);
            for d in [desc("IV", &[3]), desc("I", &[1, 1])] {
                let cf = match critical_closed_form(&d, 1) {
                    Ok(cf) => cf,
                    Err(e) => {
                        t.result(Err(e));
                        continue;
                    }
                };
                for _ in 0..cfg.residual_points {
                    let r = (|| {
                        let (z, big) = random_hartogs_point(&d, 1, &d.mu0, &mut rng)?;
                        ma_residual(&cf, &z, &big, 1e-3)
                    })();
                    t.result(r);
                }
            }
            t
        }),
        check(|cfg| {
            let mut t = Tally::new("monge_ampere_at_fiber_axis", 5e-3);
            let d = desc("IV", &[3]);
            for k in 1..=2 {
                for mu in [rat(1, 2), int(1)] {
                    let p = match build_problem_with(&d, k, &mu, cfg.solver) {
                        Ok(p) => p,
                        Err(e) => {
                            t.result(Err(e));
                            continue;
                        }
                    };
                    let z = vec![C::from(0.0); d.dim()];
                    for x in [0.1, 0.5] {
                        t.result(fiber_point(&d, k, &mu, &z, x).and_then(|big| ma_residual(&p, &z, &big, 1e-3)));
                    }
                }
            }
            t
        }),
    ]
}

/// A random point `(z, Z)` of the Hartogs domain away from its boundary.
pub fn random_hartogs_point<R: Rng + ?Sized>(
    d: &DomainDescriptor,
    k: usize,
    mu: &Rational,
    rng: &mut R,
) -> Result<(Vec<C>, Vec<C>)> {
    let radius = rng.random_range(0.05..0.6);
    let z = random_interior_point(d, rng, radius)?;
    let x: f64 = rng.random_range(0.02..0.6);
    let n = generic_norm_self(d, &z)?;
    let dir: Vec<C> = (0..k).map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm: f64 = dir.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let scale = (x * n.powf(to_f64(mu))).sqrt() / norm;
    Ok((z, dir.iter().map(|c| c * scale).collect()))
}

/// Summary counts over a set of results.
pub fn summarize(results: &[CheckResult]) -> (usize, usize) {
    let passed = results.iter().filter(|r| r.ok()).count();
    (passed, results.len() - passed)
}
