//! The Kähler–Einstein potential of a Hartogs domain through its one-variable reduction.
//!
//! With `X = ‖Z‖²/N(z,z)^μ` and `Y0 = X h'(X)`, the Monge–Ampère equation reduces to
//! `X (Y0+β)^d Y0' = Y0 S(Y0)` with `Y0(0) = 0`, `Y0 → ∞` as `X → 1`. Its solution is
//! given implicitly by `-log X = ∫_{Y0}^∞ (y+β)^d / (y S(y)) dy`, which is evaluated with the
//! logarithmic singularity at zero split off exactly and the infinite tail mapped to a finite
//! interval by `y = 1/u`.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{generic_norm_self, hartogs_contains, validate_fiber, DomainDescriptor};
use crate::error::{Error, Result};
use crate::exact::{int, to_f64, FloatPoly, Rational, RationalPoly};
use crate::numerics::{complex_hessian, find_root_monotone, integrate, QuadratureSpec};

type C = Complex64;

/// Numerical tolerances used by the solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverSpec {
    pub quadrature: QuadratureSpec,
    pub root_tol: f64,
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self { quadrature: QuadratureSpec::default(), root_tol: 1e-12 }
    }
}

/// Below this value of `X` the solver returns the exact limit `(0, β)`.
pub const X_FLOOR: f64 = 1e-10;

/// Evaluator of `-log X` as a function of `t = Y0 ≥ 0`.
///
/// `-log X(t) = -log t + C0 - ∫_0^t near(s + offset) ds` for `t < β`, and
/// `-log X(t) = ∫_0^{1/(t+offset)} tail(u) du` for `t ≥ β`.
#[derive(Clone, Debug)]
struct LogXMap {
    offset: f64,
    beta: f64,
    near_num: FloatPoly,
    near_den: FloatPoly,
    tail_num: FloatPoly,
    tail_den: FloatPoly,
    c0: f64,
    spec: SolverSpec,
}

impl LogXMap {
    fn new(
        offset: f64,
        beta: f64,
        near: (&RationalPoly, &RationalPoly),
        tail: (&RationalPoly, &RationalPoly),
        spec: SolverSpec,
    ) -> Result<Self> {
        let mut map = Self {
            offset,
            beta,
            near_num: near.0.to_float(),
            near_den: near.1.to_float(),
            tail_num: tail.0.to_float(),
            tail_den: tail.1.to_float(),
            c0: 0.0,
            spec,
        };
        // the singular part must have been removed exactly: the regular part is finite at 0+
        let (n0, n1) = (map.near(0.0), map.near(1e-8));
        if !(n0.is_finite() && n1.is_finite() && (n0 - n1).abs() <= 1e-6 * (1.0 + n0.abs())) {
            return Err(Error::InvalidParameter(format!(
                "regularized integrand not smooth at the origin ({n0} vs {n1})"
            )));
        }
        map.c0 = beta.ln() + map.near_integral(beta)?.0 + map.tail_integral(beta)?.0;
        Ok(map)
    }

    fn near(&self, t: f64) -> f64 {
        let y = t + self.offset;
        self.near_num.eval(y) / self.near_den.eval(y)
    }

    fn near_integral(&self, t: f64) -> Result<(f64, f64)> {
        let q = integrate(|s| self.near(s), 0.0, t, &self.spec.quadrature)?;
        Ok((q.value, q.error))
    }

    fn tail_integral(&self, t: f64) -> Result<(f64, f64)> {
        let q = integrate(
            |u| self.tail_num.eval(u) / self.tail_den.eval(u),
            0.0,
            1.0 / (t + self.offset),
            &self.spec.quadrature,
        )?;
        Ok((q.value, q.error))
    }

    /// `(log(t / X(t)), error estimate)`; at `t = 0` this is the limit `C0`.
    fn log_ratio(&self, t: f64) -> Result<(f64, f64)> {
        if t <= 0.0 {
            Ok((self.c0, 0.0))
        } else if t < self.beta {
            let (v, e) = self.near_integral(t)?;
            Ok((self.c0 - v, e))
        } else {
            let (v, e) = self.tail_integral(t)?;
            Ok((t.ln() + v, e))
        }
    }

    /// `log X(t)`.
    fn log_x(&self, t: f64) -> Result<f64> {
        Ok(t.ln() - self.log_ratio(t)?.0)
    }

    /// Root of `log X(t) = log x`, with the final bracket tolerance.
    fn invert(&self, x: f64) -> Result<f64> {
        let target = x.ln();
        let phi = |t: f64| self.log_x(t).map(|v| v - target);
        let mut lo = 0.5 * self.beta.min(x * self.c0.exp());
        while phi(lo)? >= 0.0 {
            lo *= 0.5;
            if lo < 1e-300 {
                return Err(Error::NoSignChange { lo, hi: self.beta });
            }
        }
        let mut hi = lo.max(1.0);
        while phi(hi)? <= 0.0 {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::NoSignChange { lo, hi });
            }
        }
        // quadrature failures inside the root finder surface as NaN and are re-raised below
        let root = find_root_monotone(|t| phi(t).unwrap_or(f64::NAN), lo, hi, self.spec.root_tol)?;
        phi(root)?;
        Ok(root)
    }
}

/// The exact polynomial data and cached constants of the reduced equation.
#[derive(Clone, Debug)]
pub struct ReducedProblem {
    pub descriptor: DomainDescriptor,
    pub k: usize,
    pub mu: Rational,
    pub beta: Rational,
    /// `P(Y)`, present for `k = 1`.
    pub p: Option<RationalPoly>,
    /// `R = P/(Y-β)`, present for `k = 1`.
    pub r: Option<RationalPoly>,
    /// `S(T)` with `T^k S(T) = ∫_0^T ((d+k+1)t + k) t^{k-1} (t+β)^d dt`.
    pub s: RationalPoly,
    spec: SolverSpec,
    map: LogXMap,
    map_y: Option<LogXMap>,
    s_float: FloatPoly,
    mu_f: f64,
    beta_f: f64,
}

/// `P(Y) = Y^{d+2} - β^{d+2} - (γ/(μ(d+1))) (Y^{d+1} - β^{d+1})`.
pub fn p_poly(desc: &DomainDescriptor, mu: &Rational, beta: &Rational) -> RationalPoly {
    let d = desc.d as usize;
    let c = Rational::from_integer(desc.gamma.into()) / (mu * int(desc.d as i64 + 1));
    let pow = |e: usize| num_traits::pow(beta.clone(), e);
    let mut coeffs = vec![Rational::zero(); d + 3];
    coeffs[d + 2] = Rational::one();
    coeffs[d + 1] = -c.clone();
    coeffs[0] = -pow(d + 2) + &c * pow(d + 1);
    RationalPoly::new(coeffs)
}

/// `S(T)` from its defining integral, by exact antidifferentiation and division by `T^k`.
pub fn s_poly(desc: &DomainDescriptor, k: usize, beta: &Rational) -> Result<RationalPoly> {
    let d = desc.d;
    let lin = RationalPoly::new(vec![int(k as i64), int((d as usize + k + 1) as i64)]);
    let integrand = &(&lin * &RationalPoly::monomial(Rational::one(), k - 1))
        * &RationalPoly::linear(beta.clone()).pow(d);
    let anti = integrand.antiderivative();
    anti.div_exact(&RationalPoly::monomial(Rational::one(), k))
}

pub fn beta_for(desc: &DomainDescriptor, k: usize, mu: &Rational) -> Rational {
    let k_r = int(k as i64);
    (Rational::from_integer(desc.gamma.into()) + &k_r * mu) / (mu * int((desc.d as usize + k + 1) as i64))
}

/// Builds the reduced problem for `(desc, k, μ)` with default tolerances.
pub fn build_problem(desc: &DomainDescriptor, k: usize, mu: &Rational) -> Result<ReducedProblem> {
    build_problem_with(desc, k, mu, SolverSpec::default())
}

pub fn build_problem_with(desc: &DomainDescriptor, k: usize, mu: &Rational, spec: SolverSpec) -> Result<ReducedProblem> {
    validate_fiber(k, mu)?;
    spec.quadrature.validate()?;
    let d = desc.d;
    let beta = beta_for(desc, k, mu);
    let beta_f = to_f64(&beta);
    let s = s_poly(desc, k, &beta)?;
    let shifted_pow = RationalPoly::linear(beta.clone()).pow(d);

    let s_tilde = (&shifted_pow - &s).div_exact(&RationalPoly::x())?;
    let tail_num = RationalPoly::new(vec![Rational::one(), beta.clone()]).pow(d);
    let s_rev = s.reversed(d as usize + 1);
    let map = LogXMap::new(0.0, beta_f, (&s_tilde, &s), (&tail_num, &s_rev), spec)?;

    let (p, r, map_y) = if k == 1 {
        let p = p_poly(desc, mu, &beta);
        let r = p.div_exact(&RationalPoly::linear(-&beta))?;
        let y_pow = RationalPoly::monomial(Rational::one(), d as usize);
        let s_tilde_y = (&y_pow - &r).div_exact(&RationalPoly::linear(-&beta))?;
        let p_rev = p.reversed(d as usize + 2);
        let map_y = LogXMap::new(beta_f, beta_f, (&s_tilde_y, &r), (&RationalPoly::one(), &p_rev), spec)?;
        (Some(p), Some(r), Some(map_y))
    } else {
        (None, None, None)
    };

    Ok(ReducedProblem {
        descriptor: desc.clone(),
        k,
        mu: mu.clone(),
        s_float: s.to_float(),
        beta,
        p,
        r,
        s,
        spec,
        map,
        map_y,
        mu_f: to_f64(mu),
        beta_f,
    })
}

/// One solved grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolvedPoint {
    pub x: f64,
    pub y0: f64,
    pub y: f64,
    pub h: f64,
    /// Quadrature error estimate of the final `log(Y0/X)` evaluation.
    pub quad_error: f64,
}

impl ReducedProblem {
    pub fn beta_f64(&self) -> f64 {
        self.beta_f
    }

    pub fn spec(&self) -> SolverSpec {
        self.spec
    }

    fn active_map(&self) -> &LogXMap {
        self.map_y.as_ref().unwrap_or(&self.map)
    }

    /// `C0`, the regular part of `-log X` at `Y0 = 0`.
    pub fn c0(&self) -> f64 {
        self.active_map().c0
    }

    fn check_x(x: f64) -> Result<()> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::OutOfRange(format!("X = {x} must lie in [0, 1)")));
        }
        Ok(())
    }

    /// `(Y0, Y)` at `X`.
    pub fn solve_y(&self, x: f64) -> Result<(f64, f64)> {
        Self::check_x(x)?;
        if x < X_FLOOR {
            return Ok((0.0, self.beta_f));
        }
        let t = self.active_map().invert(x)?;
        Ok((t, t + self.beta_f))
    }

    /// Same as [`solve_y`](Self::solve_y) but through the general-`k` representation even when
    /// `k = 1`; used to cross-check the two reductions.
    pub fn solve_y_general(&self, x: f64) -> Result<(f64, f64)> {
        Self::check_x(x)?;
        if x < X_FLOOR {
            return Ok((0.0, self.beta_f));
        }
        let t = self.map.invert(x)?;
        Ok((t, t + self.beta_f))
    }

    /// `X` as a function of `Y0 ≥ 0`.
    pub fn x_of_y0(&self, y0: f64) -> Result<f64> {
        if y0 <= 0.0 {
            return Ok(0.0);
        }
        Ok(self.active_map().log_x(y0)?.exp())
    }

    /// Solves at `X` and evaluates `h`.
    pub fn solve_point(&self, x: f64) -> Result<SolvedPoint> {
        let (y0, y) = self.solve_y(x)?;
        let (log_ratio, quad_error) = self.active_map().log_ratio(y0)?;
        let h = self.h_from(y0, log_ratio);
        Ok(SolvedPoint { x, y0, y, h, quad_error })
    }

    /// `h = [d log μ + k log(Y0/X) + log S(Y0)] / (d+k+1)`.
    fn h_from(&self, y0: f64, log_ratio: f64) -> f64 {
        let d = self.descriptor.d as f64;
        let k = self.k as f64;
        (d * self.mu_f.ln() + k * log_ratio + self.s_float.eval(y0).ln()) / (d + k + 1.0)
    }

    pub fn h_eval(&self, x: f64) -> Result<f64> {
        Ok(self.solve_point(x)?.h)
    }

    /// `g(z, Z) = -((γ+kμ)/(d+k+1)) log N(z,z) + h(X)`.
    pub fn g_eval(&self, z: &[C], big_z: &[C]) -> Result<f64> {
        let desc = &self.descriptor;
        if !hartogs_contains(desc, self.k, &self.mu, z, big_z)? {
            return Err(Error::OutsideDomain);
        }
        let n = generic_norm_self(desc, z)?;
        let x = big_z.iter().map(|v| v.norm_sqr()).sum::<f64>() / n.powf(self.mu_f);
        let coef = (desc.gamma as f64 + self.k as f64 * self.mu_f) / (desc.d as f64 + self.k as f64 + 1.0);
        Ok(-coef * n.ln() + self.h_eval(x)?)
    }

    /// Solves on a grid in parallel; rows come back in grid order.
    pub fn profile(&self, grid: &[f64]) -> Result<KEProfile> {
        let rows: Vec<SolvedPoint> = grid.par_iter().map(|&x| self.solve_point(x)).collect::<Result<_>>()?;
        for w in rows.windows(2) {
            if w[1].x > w[0].x && !(w[1].y > w[0].y) {
                return Err(Error::Evaluation(format!("Y not increasing between X={} and X={}", w[0].x, w[1].x)));
            }
        }
        Ok(KEProfile {
            descriptor: self.descriptor.to_json(),
            k: self.k,
            mu: self.mu.to_string(),
            beta: self.beta.to_string(),
            c0: self.c0(),
            root_tol: self.spec.root_tol,
            rows,
        })
    }
}

/// A sampled solution of the reduced equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KEProfile {
    pub descriptor: crate::domains::DescriptorJson,
    pub k: usize,
    pub mu: String,
    pub beta: String,
    pub c0: f64,
    pub root_tol: f64,
    pub rows: Vec<SolvedPoint>,
}

impl KEProfile {
    /// CSV with header `X,Y0,Y,h` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,Y0,Y,h\n");
        for r in &self.rows {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", r.x, r.y0, r.y, r.h));
        }
        out
    }
}

/// A Kähler potential `g(z, Z)` on a Hartogs domain.
pub trait Potential: Sync {
    fn descriptor(&self) -> &DomainDescriptor;
    fn k(&self) -> usize;
    fn g(&self, z: &[C], big_z: &[C]) -> Result<f64>;
}

impl Potential for ReducedProblem {
    fn descriptor(&self) -> &DomainDescriptor {
        &self.descriptor
    }
    fn k(&self) -> usize {
        self.k
    }
    fn g(&self, z: &[C], big_z: &[C]) -> Result<f64> {
        self.g_eval(z, big_z)
    }
}

/// Closed-form potential at the critical exponent:
/// `g = (d/(d+k+1)) log μ0 - log(N(z,z)^{μ0} - ‖Z‖²)`.
#[derive(Clone, Debug)]
pub struct CriticalPotential {
    pub descriptor: DomainDescriptor,
    pub k: usize,
    mu0: f64,
}

pub fn critical_closed_form(desc: &DomainDescriptor, k: usize) -> Result<CriticalPotential> {
    validate_fiber(k, &desc.mu0)?;
    Ok(CriticalPotential { descriptor: desc.clone(), k, mu0: to_f64(&desc.mu0) })
}

impl CriticalPotential {
    pub fn h(&self, x: f64) -> f64 {
        let d = self.descriptor.d as f64;
        d / (d + self.k as f64 + 1.0) * self.mu0.ln() - (1.0 - x).ln()
    }
}

impl Potential for CriticalPotential {
    fn descriptor(&self) -> &DomainDescriptor {
        &self.descriptor
    }
    fn k(&self) -> usize {
        self.k
    }
    fn g(&self, z: &[C], big_z: &[C]) -> Result<f64> {
        if !hartogs_contains(&self.descriptor, self.k, &self.descriptor.mu0, z, big_z)? {
            return Err(Error::OutsideDomain);
        }
        let n = generic_norm_self(&self.descriptor, z)?;
        let zz: f64 = big_z.iter().map(|v| v.norm_sqr()).sum();
        let d = self.descriptor.d as f64;
        Ok(d / (d + self.k as f64 + 1.0) * self.mu0.ln() - (n.powf(self.mu0) - zz).ln())
    }
}

/// Relative Monge–Ampère residual `|det H / ∏w - e^{(n+1)g}| / e^{(n+1)g}`, `n = d + k`.
///
/// `H` is the finite-difference complex Hessian in the point's coordinates and `∏w` the product
/// of the trace-form weights, which converts the determinant to orthonormal coordinates.
pub fn ma_residual<P: Potential + ?Sized>(pot: &P, z: &[C], big_z: &[C], step: f64) -> Result<f64> {
    let desc = pot.descriptor();
    let d = desc.dim();
    let k = pot.k();
    if z.len() != d || big_z.len() != k {
        return Err(Error::ShapeMismatch { expected: d + k, got: z.len() + big_z.len() });
    }
    let mut point = z.to_vec();
    point.extend_from_slice(big_z);
    let g0 = pot.g(z, big_z)?;
    let hess = complex_hessian(|v: &[C]| pot.g(&v[..d], &v[d..]), &point, step)?;
    let weight: f64 = desc.coord_weights().iter().product();
    let det = hess.determinant().re / weight;
    let target = ((d + k + 1) as f64 * g0).exp();
    Ok((det - target).abs() / target)
}

/// Builds `(z, Z)` with `Z = (sqrt(X N^μ), 0, ..., 0)`.
pub fn fiber_point(desc: &DomainDescriptor, k: usize, mu: &Rational, z: &[C], x: f64) -> Result<Vec<C>> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::OutOfRange(format!("X = {x} must lie in [0, 1)")));
    }
    let n = generic_norm_self(desc, z)?;
    let mut big = vec![C::new(0.0, 0.0); k];
    big[0] = C::from((x * n.powf(to_f64(mu))).sqrt());
    Ok(big)
}

/// `P'(β) = β^d` and related exact consistency facts, as a diagnostic.
pub fn polynomial_consistency(problem: &ReducedProblem) -> bool {
    let beta = &problem.beta;
    let d = problem.descriptor.d as usize;
    let beta_d = num_traits::pow(beta.clone(), d);
    let s_ok = problem.s.eval(&Rational::zero()) == beta_d;
    let k1_ok = match (&problem.p, &problem.r) {
        (Some(p), Some(r)) => {
            p.eval(beta).is_zero()
                && p.derivative().eval(beta) == beta_d
                && r.shift(beta) == problem.s
                && r.eval(beta).is_positive()
        }
        _ => true,
    };
    s_ok && k1_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn desc(label: &str, p: &[u32]) -> DomainDescriptor {
        DomainDescriptor::parse(label, p).unwrap()
    }

    #[test]
    fn critical_polynomials() {
        for dsc in [desc("I", &[2, 3]), desc("IV", &[3]), desc("V", &[])] {
            for k in 1..=3 {
                let pb = build_problem(&dsc, k, &dsc.mu0).unwrap();
                assert_eq!(pb.beta, int(1));
                let want = RationalPoly::linear(int(1)).pow(dsc.d + 1);
                assert_eq!(pb.s, want, "{} k={k}", dsc.family);
                if k == 1 {
                    let mut p = vec![Rational::zero(); dsc.d as usize + 3];
                    p[dsc.d as usize + 2] = int(1);
                    p[dsc.d as usize + 1] = int(-1);
                    assert_eq!(pb.p.clone().unwrap(), RationalPoly::new(p));
                }
                assert!(polynomial_consistency(&pb));
            }
        }
    }

    #[test]
    fn disc_polynomial() {
        let disc = desc("I", &[1, 1]);
        let pb = build_problem(&disc, 1, &int(2)).unwrap();
        assert_eq!(pb.beta, rat(2, 3));
        let p = pb.p.clone().unwrap();
        assert_eq!(p, RationalPoly::new(vec![rat(-2, 27), int(0), rat(-1, 2), int(1)]));
        assert!(p.eval(&rat(2, 3)).is_zero());
        assert!(polynomial_consistency(&pb));
    }

    #[test]
    fn critical_solution_is_explicit() {
        let dsc = desc("IV", &[3]);
        for k in 1..=3 {
            let pb = build_problem(&dsc, k, &dsc.mu0).unwrap();
            let (y0, y) = pb.solve_y(0.5).unwrap();
            assert!((y - 2.0).abs() < 1e-10 && (y0 - 1.0).abs() < 1e-10, "{y0} {y}");
            assert_eq!(pb.solve_y(0.0).unwrap(), (0.0, 1.0));
            let h = pb.h_eval(0.5).unwrap();
            let d = 3.0;
            let want = d / (d + k as f64 + 1.0) * 0.75f64.ln() + 2f64.ln();
            assert!((h - want).abs() < 1e-10, "{h} vs {want}");
        }
        let pb = build_problem(&dsc, 1, &dsc.mu0).unwrap();
        let h0 = pb.h_eval(0.0).unwrap();
        assert!((h0 - 3.0 / 5.0 * 0.75f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn x_out_of_range() {
        let pb = build_problem(&desc("IV", &[3]), 1, &rat(1, 2)).unwrap();
        assert!(pb.solve_y(1.0).is_err());
        assert!(pb.solve_y(-0.1).is_err());
        assert!(build_problem(&desc("IV", &[3]), 0, &rat(1, 2)).is_err());
        assert!(build_problem(&desc("IV", &[3]), 1, &int(0)).is_err());
    }

    #[test]
    fn two_reductions_agree_for_one_fiber_dimension() {
        for (dsc, mu) in [(desc("IV", &[3]), rat(1, 2)), (desc("I", &[2, 2]), rat(3, 2)), (desc("V", &[]), rat(1, 3))] {
            let pb = build_problem(&dsc, 1, &mu).unwrap();
            assert!((pb.map.c0 - pb.map_y.as_ref().unwrap().c0).abs() < 1e-10);
            for x in [0.01, 0.3, 0.7, 0.95] {
                let a = pb.solve_y(x).unwrap().1;
                let b = pb.solve_y_general(x).unwrap().1;
                assert!((a - b).abs() < 1e-9 * a, "{} x={x}: {a} vs {b}", dsc.family);
            }
        }
    }

    #[test]
    fn h_derivative_matches_y() {
        let pb = build_problem(&desc("IV", &[3]), 2, &rat(1, 2)).unwrap();
        let x = 0.3;
        let eps = 1e-5;
        let dh = (pb.h_eval(x + eps).unwrap() - pb.h_eval(x - eps).unwrap()) / (2.0 * eps);
        let (y0, _) = pb.solve_y(x).unwrap();
        assert!((x * dh - y0).abs() < 1e-7, "{} vs {y0}", x * dh);
    }

    #[test]
    fn closed_form_matches_solver() {
        let dsc = desc("IV", &[3]);
        let pb = build_problem(&dsc, 2, &dsc.mu0).unwrap();
        let cf = critical_closed_form(&dsc, 2).unwrap();
        let z = [C::new(0.2, 0.1), C::new(-0.1, 0.0), C::new(0.0, 0.3)];
        for x in [0.0, 0.2, 0.6, 0.9] {
            let big = fiber_point(&dsc, 2, &dsc.mu0, &z, x).unwrap();
            let a = pb.g_eval(&z, &big).unwrap();
            let b = cf.g(&z, &big).unwrap();
            assert!((a - b).abs() < 1e-9, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn ball_residual() {
        let disc = desc("I", &[1, 1]);
        let cf = critical_closed_form(&disc, 1).unwrap();
        let r = ma_residual(&cf, &[C::new(0.3, -0.2)], &[C::new(0.1, 0.4)], 1e-3).unwrap();
        assert!(r < 1e-6, "{r}");
    }
}
