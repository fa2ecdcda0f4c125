//! Floating-point kernels: adaptive quadrature, bracketed root finding, finite-difference
//! complex Hessians and Hermitian spectra.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_subdivisions: 2000 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions >= 1) {
            return Err(Error::InvalidParameter(format!("bad quadrature spec {self:?}")));
        }
        Ok(())
    }
}

/// Result of a quadrature: the estimate and its error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(Error::NonFinite(center));
    }
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.is_finite() {
            return Err(Error::NonFinite(center - dx));
        }
        if !f2.is_finite() {
            return Err(Error::NonFinite(center + dx));
        }
        kronrod += w * (f1 + f2);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok(Segment { a, b, value, error: error.max(f64::EPSILON * value.abs()) })
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of `f` over a finite interval.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::OutOfRange(format!("integration bounds [{a}, {b}] must be finite")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    let mut subdivisions = 1;
    while error > spec.abs_tol.max(spec.rel_tol * value.abs()) {
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureTolerance { subdivisions, error });
        }
        let worst = heap.pop().expect("heap holds every live segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            return Err(Error::QuadratureTolerance { subdivisions, error });
        }
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // refresh running sums against accumulated cancellation
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(Quadrature { value, error, subdivisions })
}

/// `∫_a^∞ f(y) dy` for `a > 0` through the substitution `y = 1/u`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    if !(a > 0.0) {
        return Err(Error::OutOfRange(format!("lower limit {a} must be positive")));
    }
    integrate(
        |u| if u == 0.0 { 0.0 } else { f(1.0 / u) / (u * u) },
        0.0,
        1.0 / a,
        spec,
    )
}

/// Root of a monotone function on a sign-changing bracket (Brent's method).
///
/// Stops once the bracket is narrower than `tol` (plus a relative floor at machine precision).
pub fn find_root_monotone<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..500 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NonFinite(b));
        }
    }
    Ok(b)
}

/// Finite-difference estimate of `∂²f/∂z_i∂z̄_j`.
#[derive(Clone, Debug)]
pub struct ComplexHessian {
    pub n: usize,
    pub entries: DMatrix<Complex64>,
    /// Largest entrywise change between the two step sizes used for extrapolation.
    pub error_estimate: f64,
}

impl ComplexHessian {
    pub fn determinant(&self) -> Complex64 {
        self.entries.determinant()
    }
}

/// Real Hessian in the `2n` real coordinates `(x_1, y_1, ..., x_n, y_n)` by the four-point
/// mixed stencil, which is exact for quadratics.
fn real_hessian<F>(f: &F, z: &[Complex64], h: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[Complex64]) -> Result<f64>,
{
    let n = z.len();
    let dir = |k: usize| -> (usize, Complex64) {
        (k / 2, if k.is_multiple_of(2) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) })
    };
    let eval = |p: &[Complex64]| -> Result<f64> {
        let v = f(p).map_err(|e| Error::Evaluation(e.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("non-finite value {v}")))
        }
    };
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut p = z.to_vec();
    for a in 0..2 * n {
        for b in a..2 * n {
            let (ia, ua) = dir(a);
            let (ib, ub) = dir(b);
            let mut corner = |sa: f64, sb: f64| -> Result<f64> {
                p.copy_from_slice(z);
                p[ia] += ua * (sa * h);
                p[ib] += ub * (sb * h);
                eval(&p)
            };
            let v = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?)
                / (4.0 * h * h);
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    Ok(m)
}

fn assemble(real: &DMatrix<f64>, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        let xx = real[(2 * i, 2 * j)];
        let yy = real[(2 * i + 1, 2 * j + 1)];
        let xy = real[(2 * i, 2 * j + 1)];
        let yx = real[(2 * i + 1, 2 * j)];
        Complex64::new(0.25 * (xx + yy), 0.25 * (xy - yx))
    })
}

/// Complex Hessian `∂²f/∂z_i∂z̄_j` of a real function of `n` complex variables.
///
/// Central differences at `step` and `step/2` are combined by one Richardson extrapolation
/// step; the difference between the two levels is reported as the error estimate.
pub fn complex_hessian<F>(f: F, z: &[Complex64], step: f64) -> Result<ComplexHessian>
where
    F: Fn(&[Complex64]) -> Result<f64>,
{
    if !(step > 0.0) {
        return Err(Error::InvalidParameter(format!("step {step} must be positive")));
    }
    let n = z.len();
    let coarse = assemble(&real_hessian(&f, z, step)?, n);
    let fine = assemble(&real_hessian(&f, z, 0.5 * step)?, n);
    let entries = (&fine * Complex64::from(4.0) - &coarse) / Complex64::from(3.0);
    let error_estimate = (&fine - &coarse).iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(ComplexHessian { n, entries, error_estimate })
}

/// Maximum entrywise deviation `|M_ij - conj(M_ji)|`.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Real eigenvalues of a Hermitian matrix in decreasing order.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch { expected: m.nrows(), got: m.ncols() });
    }
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let dev = hermitian_deviation(m);
    if dev > 1e-10 * scale {
        return Err(Error::NotHermitian(dev));
    }
    let sym = (m + m.adjoint()) * Complex64::from(0.5);
    let mut vals: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// Singular values, largest first.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// 2-norm condition number; infinite for singular matrices.
pub fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadrature_examples() {
        let spec = QuadratureSpec::default();
        let q = integrate(|_| 1.0, 0.0, 1.0, &spec).unwrap();
        assert!((q.value - 1.0).abs() < 1e-14);
        let q = integrate_to_infinity(|y| 1.0 / (y * y - y), 2.0, &spec).unwrap();
        assert!((q.value - 2f64.ln()).abs() < 1e-12, "{}", q.value);
        let q = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &spec).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_reports_failure() {
        let spec = QuadratureSpec { abs_tol: 1e-15, rel_tol: 1e-15, max_subdivisions: 3 };
        assert!(matches!(
            integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0, &spec),
            Err(Error::QuadratureTolerance { .. })
        ));
        assert!(matches!(
            integrate(|x: f64| 1.0 / x, 0.0, 1.0, &QuadratureSpec::default()),
            Err(Error::NonFinite(_)) | Err(Error::QuadratureTolerance { .. })
        ));
    }

    #[test]
    fn root_examples() {
        let r = find_root_monotone(|x| x - 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let r = find_root_monotone(|x| x * x - 2.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        // X(Y) = 1 - 1/Y at the critical exponent
        let r = find_root_monotone(|y| 1.0 - 1.0 / y - 0.5, 1.0, 10.0, 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-11);
        assert!(matches!(
            find_root_monotone(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn hessian_examples() {
        let h = complex_hessian(|z| Ok(z[0].norm_sqr()), &[c(0.3, -0.7)], 1e-3).unwrap();
        assert!((h.entries[(0, 0)] - c(1.0, 0.0)).norm() < 1e-9);
        let h = complex_hessian(|z| Ok(z[0].norm_sqr() + 2.0 * z[1].norm_sqr()), &[c(0.0, 0.0); 2], 1e-3)
            .unwrap();
        assert!((h.entries[(0, 0)] - c(1.0, 0.0)).norm() < 1e-9);
        assert!((h.entries[(1, 1)] - c(2.0, 0.0)).norm() < 1e-9);
        assert!(h.entries[(0, 1)].norm() < 1e-9);
        let h = complex_hessian(|z| Ok(-(1.0 - z[0].norm_sqr()).ln()), &[c(0.3, 0.0)], 1e-3).unwrap();
        let exact = 1.0 / (1.0f64 - 0.09).powi(2);
        assert!((h.entries[(0, 0)].re - exact).abs() < 1e-8, "{}", h.entries[(0, 0)]);
    }

    #[test]
    fn hessian_of_holomorphic_cross_term() {
        // f = |z1 + i z2|^2 has ∂∂̄ f = [[1, -i],[i, 1]] (row i, column j)
        let f = |z: &[Complex64]| Ok((z[0] + c(0.0, 1.0) * z[1]).norm_sqr());
        let h = complex_hessian(f, &[c(0.1, 0.2), c(-0.3, 0.4)], 1e-3).unwrap();
        assert!((h.entries[(0, 1)] - c(0.0, -1.0)).norm() < 1e-9, "{}", h.entries[(0, 1)]);
        assert!((h.entries[(1, 0)] - c(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn eigen_examples() {
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert_eq!(hermitian_eigenvalues(&id).unwrap(), vec![1.0, 1.0]);
        let m = DMatrix::from_row_slice(2, 2, &[c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let v = hermitian_eigenvalues(&m).unwrap();
        assert!((v[0] - 3.0).abs() < 1e-14 && (v[1] + 1.0).abs() < 1e-14);
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let v = hermitian_eigenvalues(&m).unwrap();
        assert!((v[0] - 3.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        let bad = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(hermitian_eigenvalues(&bad), Err(Error::NotHermitian(_))));
    }
}
