//! Bergman kernel coefficients of Hartogs domains and the sign scanner.
//!
//! For a descriptor with Hua polynomial `χ` and exponent `μ`, the kernel coefficients
//! `c_{μ,j}` are defined by `χ(kμ)/χ(0) = Σ_j c_{μ,j} binom(k+j, j)`. The alternative normalization
//! `χ(μs) = μ^d Σ_j c_j (s+1)_j` is carried alongside.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{generic_norm_self, hartogs_contains, hua_at_zero, hua_poly, validate_fiber, DomainDescriptor};
use crate::error::{Error, Result};
use crate::exact::{expand_binomial_basis, factorial, to_f64, Rational};

use num_complex::Complex64;

/// Exact coefficient table for one `(descriptor, μ)`; vectors are indexed by `j = 0..=d`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub descriptor: DomainDescriptor,
    pub mu: Rational,
    pub chi0: Rational,
    pub kernel_coeffs: Vec<Rational>,
    pub rising_coeffs: Vec<Rational>,
}

/// Serialized table. Coefficient lists run from the top index `d` down to `0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTableJson {
    pub family: String,
    pub params: Vec<u32>,
    pub d: u32,
    pub mu: String,
    pub chi0: String,
    pub index_order: String,
    pub rising_coeffs: Vec<String>,
    pub kernel_coeffs: Vec<String>,
}

pub fn coefficient_table(desc: &DomainDescriptor, mu: &Rational) -> Result<CoefficientTable> {
    if !mu.is_positive() {
        return Err(Error::InvalidParameter(format!("exponent mu must be positive, got {mu}")));
    }
    let chi0 = hua_at_zero(desc);
    let scaled = hua_poly(desc).scale_argument(mu);
    let raw = expand_binomial_basis(&scaled);
    let mu_d = num_traits::pow(mu.clone(), desc.d as usize);
    let kernel_coeffs = raw.iter().map(|c| c / &chi0).collect();
    let rising_coeffs = raw
        .iter()
        .enumerate()
        .map(|(j, c)| c / (&mu_d * Rational::from_integer(factorial(j as u64))))
        .collect();
    Ok(CoefficientTable { descriptor: desc.clone(), mu: mu.clone(), chi0, kernel_coeffs, rising_coeffs })
}

impl CoefficientTable {
    pub fn to_json(&self) -> CoefficientTableJson {
        let desc = |v: &[Rational]| v.iter().rev().map(Rational::to_string).collect();
        CoefficientTableJson {
            family: self.descriptor.family.label().to_string(),
            params: self.descriptor.family.params(),
            d: self.descriptor.d,
            mu: self.mu.to_string(),
            chi0: self.chi0.to_string(),
            index_order: "descending".to_string(),
            rising_coeffs: desc(&self.rising_coeffs),
            kernel_coeffs: desc(&self.kernel_coeffs),
        }
    }

    pub fn kernel_coeffs_f64(&self) -> Vec<f64> {
        self.kernel_coeffs.iter().map(to_f64).collect()
    }

    /// `F(t) = Σ_j c_{μ,j} (1-t)^{-j}` and its derivatives, term by term:
    /// `F^{(k)}(t) = Σ_j c_{μ,j} (j)_k (1-t)^{-j-k}`.
    pub fn f_chi_mu(&self, t: f64, order: u32) -> Result<f64> {
        series_eval(&self.kernel_coeffs_f64(), t, order, 0)
    }

    /// Generating series `G(t) = Σ_m χ(μm)/χ(0) t^m = Σ_j c_{μ,j} (1-t)^{-j-1}` and its
    /// derivatives; this is the series that sums the kernel over the fiber.
    pub fn kernel_series(&self, t: f64, order: u32) -> Result<f64> {
        series_eval(&self.kernel_coeffs_f64(), t, order, 1)
    }
}

/// `Σ_j c_j (j+offset)_k (1-t)^{-j-offset-k}`.
fn series_eval(coeffs: &[f64], t: f64, order: u32, offset: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::OutOfRange(format!("t = {t} must lie in [0, 1)")));
    }
    let inv = 1.0 / (1.0 - t);
    let mut acc = 0.0;
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let base = (j as u32 + offset) as f64;
        let rising: f64 = (0..order).map(|i| base + i as f64).product();
        acc += c * rising * inv.powi((j as u32 + offset + order) as i32);
    }
    Ok(acc)
}

/// `F_{χ,μ}^{(k)}(t)` without keeping the table.
pub fn f_chi_mu(desc: &DomainDescriptor, mu: &Rational, t: f64, order: u32) -> Result<f64> {
    coefficient_table(desc, mu)?.f_chi_mu(t, order)
}

/// Bergman kernel on the diagonal of a Hartogs domain, without the `1/vol` constant.
#[derive(Clone, Debug)]
pub struct HartogsKernel {
    pub table: CoefficientTable,
    pub k: usize,
    coeffs: Vec<f64>,
    mu_f: f64,
}

impl HartogsKernel {
    pub fn new(desc: &DomainDescriptor, k: usize, mu: &Rational) -> Result<Self> {
        validate_fiber(k, mu)?;
        let table = coefficient_table(desc, mu)?;
        let coeffs = table.kernel_coeffs_f64();
        Ok(Self { k, coeffs, mu_f: to_f64(mu), table })
    }

    /// `N^{-γ-kμ} G^{(k)}(X) / k!` with `X = ‖Z‖² / N^μ`.
    pub fn eval(&self, z: &[Complex64], big_z: &[Complex64]) -> Result<f64> {
        let desc = &self.table.descriptor;
        if !hartogs_contains(desc, self.k, &self.table.mu, z, big_z)? {
            return Err(Error::OutsideDomain);
        }
        let n = generic_norm_self(desc, z)?;
        let x = big_z.iter().map(|v| v.norm_sqr()).sum::<f64>() / n.powf(self.mu_f);
        let kfact: f64 = (1..=self.k).map(|i| i as f64).product();
        let series = series_eval(&self.coeffs, x, self.k as u32, 1)?;
        Ok(n.powf(-(desc.gamma as f64) - self.k as f64 * self.mu_f) * series / kfact)
    }
}

pub fn bergman_kernel(
    desc: &DomainDescriptor,
    k: usize,
    mu: &Rational,
    z: &[Complex64],
    big_z: &[Complex64],
) -> Result<f64> {
    HartogsKernel::new(desc, k, mu)?.eval(z, big_z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn of(x: &Rational) -> Self {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_zero() {
            Sign::Zero
        } else {
            Sign::Negative
        }
    }
}

/// Signs of the kernel coefficients at one exponent; `signs[j]` is the sign of `c_{μ,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignReport {
    pub mu: Rational,
    pub signs: Vec<Sign>,
    pub all_positive: bool,
    pub matches_critical_pattern: bool,
    pub zero_indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignReportJson {
    pub mu: String,
    /// Signs from index `d` down to `0`.
    pub signs: Vec<Sign>,
    pub index_order: String,
    pub all_positive: bool,
    pub matches_critical_pattern: bool,
    pub zero_indices: Vec<usize>,
}

impl SignReport {
    pub fn from_table(table: &CoefficientTable) -> Self {
        let signs: Vec<Sign> = table.kernel_coeffs.iter().map(Sign::of).collect();
        let d = signs.len() - 1;
        let all_positive = signs.iter().all(|s| *s == Sign::Positive);
        let matches_critical_pattern = if table.descriptor.r == 1 {
            signs[d] == Sign::Positive && signs[..d].iter().all(|s| *s == Sign::Zero)
        } else {
            d >= 1
                && signs.iter().enumerate().all(|(j, s)| {
                    if j + 1 == d {
                        *s == Sign::Zero
                    } else {
                        *s == Sign::Positive
                    }
                })
        };
        let zero_indices = signs.iter().enumerate().filter(|(_, s)| **s == Sign::Zero).map(|(j, _)| j).collect();
        Self { mu: table.mu.clone(), signs, all_positive, matches_critical_pattern, zero_indices }
    }

    /// If the signs alternate `+, -, +, ...` from the top index down to some `j0` and vanish
    /// below it, returns `j0`.
    pub fn alternation_floor(&self) -> Option<usize> {
        let d = self.signs.len() - 1;
        let mut j = d as isize;
        let mut expect = Sign::Positive;
        while j >= 0 && self.signs[j as usize] != Sign::Zero {
            if self.signs[j as usize] != expect {
                return None;
            }
            expect = if expect == Sign::Positive { Sign::Negative } else { Sign::Positive };
            j -= 1;
        }
        let j0 = (j + 1) as usize;
        self.signs[..j0].iter().all(|s| *s == Sign::Zero).then_some(j0)
    }

    pub fn to_json(&self) -> SignReportJson {
        SignReportJson {
            mu: self.mu.to_string(),
            signs: self.signs.iter().rev().copied().collect(),
            index_order: "descending".to_string(),
            all_positive: self.all_positive,
            matches_critical_pattern: self.matches_critical_pattern,
            zero_indices: self.zero_indices.clone(),
        }
    }
}

/// Exact sign reports over a list of exponents, in input order.
pub fn conjecture_scan(desc: &DomainDescriptor, mus: &[Rational]) -> Result<Vec<SignReport>> {
    mus.par_iter()
        .map(|mu| coefficient_table(desc, mu).map(|t| SignReport::from_table(&t)))
        .collect()
}

/// Inclusive rational grid `start, start+step, ..., <= end`.
pub fn rational_grid(start: &Rational, step: &Rational, end: &Rational) -> Result<Vec<Rational>> {
    if !step.is_positive() {
        return Err(Error::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    if end < start {
        return Err(Error::InvalidParameter(format!("grid end {end} precedes start {start}")));
    }
    let count = ((end - start) / step).floor().to_integer();
    let count: usize = count
        .try_into()
        .map_err(|_| Error::InvalidParameter("grid too large".into()))?;
    if count > 1_000_000 {
        return Err(Error::InvalidParameter(format!("grid of {} points is too large", count + 1)));
    }
    Ok((0..=count)
        .map(|i| start + step * Rational::from_integer(BigInt::from(i)))
        .collect())
}

/// Sum of kernel coefficients; one by construction.
pub fn coefficient_sum(table: &CoefficientTable) -> Rational {
    table.kernel_coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
}

/// Checks `c_{μ,j} χ(0) = μ^d j! c_j` for every index.
pub fn bridge_holds(table: &CoefficientTable) -> bool {
    let mu_d = num_traits::pow(table.mu.clone(), table.descriptor.d as usize);
    table.kernel_coeffs.iter().zip(&table.rising_coeffs).enumerate().all(|(j, (k, p))| {
        k * &table.chi0 == &mu_d * Rational::from_integer(factorial(j as u64)) * p
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn desc(label: &str, p: &[u32]) -> DomainDescriptor {
        DomainDescriptor::parse(label, p).unwrap()
    }

    #[test]
    fn rank_one_tables_are_unit_vectors() {
        for n in 1..=5 {
            let t = coefficient_table(&desc("I", &[1, n]), &int(1)).unwrap();
            for (j, c) in t.kernel_coeffs.iter().enumerate() {
                assert_eq!(*c, if j == n as usize { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn f_chi_mu_examples() {
        let v = desc("V", &[]);
        assert!((f_chi_mu(&v, &rat(12, 17), 0.0, 0).unwrap() - 1.0).abs() < 1e-12);
        let disc = desc("I", &[1, 1]);
        assert!((f_chi_mu(&disc, &int(1), 0.5, 0).unwrap() - 2.0).abs() < 1e-15);
        let t = coefficient_table(&v, &rat(12, 17)).unwrap();
        let d1 = t.f_chi_mu(0.5, 1).unwrap();
        assert!(d1 > 0.0);
        let h = 1e-5;
        let fd = (t.f_chi_mu(0.5 + h, 0).unwrap() - t.f_chi_mu(0.5 - h, 0).unwrap()) / (2.0 * h);
        assert!((fd - d1).abs() <= 1e-6 * d1, "{fd} vs {d1}");
        assert!(t.f_chi_mu(1.0, 0).is_err());
        assert!(t.f_chi_mu(-0.1, 0).is_err());
    }

    #[test]
    fn kernel_series_sums_hua_ratios() {
        let d = desc("IV", &[3]);
        let mu = rat(1, 2);
        let t = coefficient_table(&d, &mu).unwrap();
        let chi = hua_poly(&d);
        let chi0 = hua_at_zero(&d);
        let x = 0.3f64;
        let direct: f64 = (0..400)
            .map(|m| to_f64(&(chi.eval(&(&mu * int(m))) / &chi0)) * x.powi(m as i32))
            .sum();
        assert!((t.kernel_series(x, 0).unwrap() - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn ball_kernel_pattern() {
        // I(1,1) with k = 1, μ = 1 is the unit ball of C^2: kernel ∝ (1 - |z|² - |Z|²)^{-3}
        let disc = desc("I", &[1, 1]);
        let kernel = HartogsKernel::new(&disc, 1, &int(1)).unwrap();
        let pts = [(0.0, 0.0), (0.3, 0.1), (0.5, 0.6), (-0.2, 0.9)];
        let ratios: Vec<f64> = pts
            .iter()
            .map(|&(z, w)| {
                let k = kernel.eval(&[Complex64::from(z)], &[Complex64::new(0.0, w * (1.0 - z * z).sqrt() * 0.9)]).unwrap();
                let r2 = z * z + (w * (1.0 - z * z).sqrt() * 0.9).powi(2);
                k * (1.0 - r2).powi(3)
            })
            .collect();
        for r in &ratios {
            assert!((r - ratios[0]).abs() < 1e-12 * ratios[0], "{ratios:?}");
        }
    }

    #[test]
    fn kernel_monotone_in_fiber() {
        let d = desc("IV", &[3]);
        let kern = HartogsKernel::new(&d, 2, &rat(1, 2)).unwrap();
        let z = [Complex64::from(0.2), Complex64::from(0.1), Complex64::from(0.0)];
        let n = generic_norm_self(&d, &z).unwrap().powf(0.5);
        let at = |x: f64| kern.eval(&z, &[Complex64::from((x * n).sqrt()), Complex64::from(0.0)]).unwrap();
        assert!(at(0.9) > at(0.1));
        let origin = kern.eval(&[Complex64::from(0.0); 3], &[Complex64::from(0.0); 2]).unwrap();
        assert!((origin - kern.table.kernel_series(0.0, 2).unwrap() / 2.0).abs() < 1e-14);
        assert!(matches!(
            kern.eval(&z, &[Complex64::from(2.0), Complex64::from(0.0)]),
            Err(Error::OutsideDomain)
        ));
    }

    #[test]
    fn critical_patterns() {
        let v = desc("V", &[]);
        let r = &conjecture_scan(&v, &[rat(12, 17)]).unwrap()[0];
        assert!(r.matches_critical_pattern && !r.all_positive);
        assert_eq!(r.zero_indices, vec![15]);
        let r = &conjecture_scan(&v, &[rat(12, 17) - rat(1, 100)]).unwrap()[0];
        assert!(r.all_positive);
        let r = &conjecture_scan(&desc("VI", &[]), &[rat(9, 14)]).unwrap()[0];
        assert!(r.matches_critical_pattern);
        assert_eq!(r.zero_indices, vec![26]);
        let r = &conjecture_scan(&desc("I", &[1, 3]), &[int(1)]).unwrap()[0];
        assert!(r.matches_critical_pattern);
    }

    #[test]
    fn alternating_signs_at_mu_one() {
        for d in [desc("III", &[2]), desc("IV", &[4]), desc("VI", &[])] {
            let r = &conjecture_scan(&d, &[int(1)]).unwrap()[0];
            assert!(r.alternation_floor().is_some(), "{}: {:?}", d.family, r.signs);
        }
    }

    #[test]
    fn grid_examples() {
        let g = rational_grid(&rat(1, 100), &rat(1, 100), &rat(69, 100)).unwrap();
        assert_eq!(g.len(), 69);
        assert_eq!(g[68], rat(69, 100));
        assert!(rational_grid(&int(0), &int(0), &int(1)).is_err());
        assert!(rational_grid(&int(1), &int(1), &int(0)).is_err());
    }

    #[test]
    fn json_order_is_descending() {
        let t = coefficient_table(&desc("V", &[]), &rat(12, 17)).unwrap();
        let j = t.to_json();
        assert_eq!(&j.rising_coeffs[..3], &["1", "0", "595/12"]);
        assert_eq!(j.rising_coeffs.len(), 17);
        let s = serde_json::to_value(SignReport::from_table(&t).to_json()).unwrap();
        assert_eq!(s["signs"][1], "0");
        assert_eq!(s["signs"][0], "+");
    }
}
