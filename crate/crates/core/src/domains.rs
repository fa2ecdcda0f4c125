//! The six families of irreducible bounded symmetric domains: numerical invariants, the Hua
//! polynomial, generic norms and membership.
//!
//! Points are flat coordinate vectors:
//! - `I(m,n)`: the `m×n` matrix, row-major;
//! - `II(n)`: strict upper triangle of the alternating matrix, row by row;
//! - `III(n)`: upper triangle including the diagonal of the symmetric matrix, row by row;
//! - `IV(n)`: the vector in `C^n`;
//! - `V`, `VI`: the coordinates of [`M21Element`] and [`H3Element`].

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, pochhammer, rat, Rational, RationalPoly};
use crate::exceptional::{H3Element, JordanTriple, M21Element};
use crate::numerics::hermitian_eigenvalues;

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    I { m: u32, n: u32 },
    II { n: u32 },
    III { n: u32 },
    IV { n: u32 },
    V,
    VI,
}

impl Family {
    /// Parses a family label (`"I"`, ..., `"VI"`) with its integer parameters.
    pub fn parse(label: &str, params: &[u32]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "type {label} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match label.to_ascii_uppercase().as_str() {
            "I" => {
                want(2)?;
                Family::I { m: params[0], n: params[1] }
            }
            "II" => {
                want(1)?;
                Family::II { n: params[0] }
            }
            "III" => {
                want(1)?;
                Family::III { n: params[0] }
            }
            "IV" => {
                want(1)?;
                Family::IV { n: params[0] }
            }
            "V" => {
                want(0)?;
                Family::V
            }
            "VI" => {
                want(0)?;
                Family::VI
            }
            other => return Err(Error::InvalidParameter(format!("unknown domain type {other:?}"))),
        };
        Ok(fam)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Family::I { .. } => "I",
            Family::II { .. } => "II",
            Family::III { .. } => "III",
            Family::IV { .. } => "IV",
            Family::V => "V",
            Family::VI => "VI",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            Family::I { m, n } => vec![m, n],
            Family::II { n } | Family::III { n } | Family::IV { n } => vec![n],
            Family::V | Family::VI => vec![],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.label())
        } else {
            let s: Vec<String> = p.iter().map(u32::to_string).collect();
            write!(f, "{}({})", self.label(), s.join(","))
        }
    }
}

/// One Pochhammer factor `(s + shift)_len` of the Hua polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuaFactor {
    pub shift: Rational,
    pub len: u64,
}

/// A bounded symmetric domain with its numerical invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainDescriptor {
    pub family: Family,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    /// Complex dimension.
    pub d: u32,
    /// Genus `2 + a(r-1) + b`.
    pub gamma: u32,
    /// Critical exponent `gamma / (d + 1)`.
    pub mu0: Rational,
    pub hua_factors: Vec<HuaFactor>,
}

/// Builds the descriptor for a family, rejecting parameters outside the classification range.
pub fn make_descriptor(family: Family) -> Result<DomainDescriptor> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    let (r, a, b, d) = match family {
        Family::I { m, n } => {
            if !(1 <= m && m <= n) {
                return bad(format!("type I needs 1 <= m <= n, got m={m}, n={n}"));
            }
            (m, 2, n - m, m * n)
        }
        Family::II { n } => {
            if n < 2 {
                return bad(format!("type II needs n >= 2, got {n}"));
            }
            (n / 2, 4, if n % 2 == 0 { 0 } else { 2 }, n * (n - 1) / 2)
        }
        Family::III { n } => {
            if n < 1 {
                return bad("type III needs n >= 1".into());
            }
            (n, 1, 0, n * (n + 1) / 2)
        }
        Family::IV { n } => {
            // n = 1 would give a = -1; n = 2 is not simple
            if n < 3 {
                return bad(format!("type IV needs n >= 3, got {n}"));
            }
            (2, n - 2, 0, n)
        }
        Family::V => (2, 6, 4, 16),
        Family::VI => (3, 8, 0, 27),
    };
    let gamma = 2 + a * (r - 1) + b;
    let hua_factors = (1..=r)
        .map(|j| HuaFactor {
            shift: int(1) + rat(((j - 1) * a) as i64, 2),
            len: (1 + b + (r - j) * a) as u64,
        })
        .collect();
    Ok(DomainDescriptor {
        family,
        r,
        a,
        b,
        d,
        gamma,
        mu0: rat(gamma as i64, d as i64 + 1),
        hua_factors,
    })
}

/// Serialized form of a descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub family: String,
    pub params: Vec<u32>,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub d: u32,
    pub gamma: u32,
    pub mu0: String,
}

impl DomainDescriptor {
    pub fn parse(label: &str, params: &[u32]) -> Result<Self> {
        make_descriptor(Family::parse(label, params)?)
    }

    pub fn to_json(&self) -> DescriptorJson {
        DescriptorJson {
            family: self.family.label().to_string(),
            params: self.family.params(),
            r: self.r,
            a: self.a,
            b: self.b,
            d: self.d,
            gamma: self.gamma,
            mu0: self.mu0.to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn is_tube_type(&self) -> bool {
        self.b == 0
    }

    /// Diagonal of the Gram matrix of the trace form `m1(x, y)` in the coordinate chart.
    pub fn coord_weights(&self) -> Vec<f64> {
        match self.family {
            Family::I { .. } | Family::II { .. } => vec![1.0; self.dim()],
            Family::III { n } => {
                let mut w = Vec::with_capacity(self.dim());
                for i in 0..n {
                    for j in i..n {
                        w.push(if i == j { 1.0 } else { 2.0 });
                    }
                }
                w
            }
            Family::IV { n } => vec![2.0; n as usize],
            Family::V => M21Element::coord_weights(),
            Family::VI => H3Element::coord_weights(),
        }
    }

    fn check_shape(&self, z: &[C]) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::ShapeMismatch { expected: self.dim(), got: z.len() });
        }
        Ok(())
    }

    /// The classical matrix realization of a point (types I, II, III).
    pub fn to_matrix(&self, z: &[C]) -> Result<DMatrix<C>> {
        self.check_shape(z)?;
        match self.family {
            Family::I { m, n } => Ok(DMatrix::from_row_slice(m as usize, n as usize, z)),
            Family::II { n } => {
                let n = n as usize;
                let mut mat = DMatrix::zeros(n, n);
                let mut it = z.iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let v = *it.next().expect("length checked");
                        mat[(i, j)] = v;
                        mat[(j, i)] = -v;
                    }
                }
                Ok(mat)
            }
            Family::III { n } => {
                let n = n as usize;
                let mut mat = DMatrix::zeros(n, n);
                let mut it = z.iter();
                for i in 0..n {
                    for j in i..n {
                        let v = *it.next().expect("length checked");
                        mat[(i, j)] = v;
                        mat[(j, i)] = v;
                    }
                }
                Ok(mat)
            }
            _ => Err(Error::Unsupported(format!("type {} has no matrix realization", self.family))),
        }
    }

    /// Squared spectral values `λ_i²` of a point, largest first, one per rank.
    pub fn spectral_squares(&self, z: &[C]) -> Result<Vec<f64>> {
        self.check_shape(z)?;
        match self.family {
            Family::I { .. } | Family::III { .. } => {
                let x = self.to_matrix(z)?;
                hermitian_eigenvalues(&(&x * x.adjoint()))
            }
            Family::II { .. } => {
                let x = self.to_matrix(z)?;
                let ev = hermitian_eigenvalues(&(&x * x.adjoint()))?;
                Ok(ev.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect())
            }
            Family::IV { .. } | Family::V | Family::VI => {
                // m(T,x,x) = T^2 - m1 T + m2 (rank 2) or the cubic (rank 3): roots are λ_i²
                let (m1, m2, m3) = self.norm_invariants(z)?;
                Ok(if self.r == 2 {
                    let disc = (m1 * m1 - 4.0 * m2).max(0.0).sqrt();
                    vec![0.5 * (m1 + disc), 0.5 * (m1 - disc)]
                } else {
                    cubic_real_roots(m1, m2, m3)
                })
            }
        }
    }

    /// `(m1, m2, m3)(z, z)` for the types given by explicit polynomials.
    fn norm_invariants(&self, z: &[C]) -> Result<(f64, f64, f64)> {
        match self.family {
            Family::IV { .. } => {
                let q_bar: f64 = 2.0 * z.iter().map(|v| v.norm_sqr()).sum::<f64>();
                let q: C = z.iter().map(|v| v * v).sum();
                Ok((q_bar, q.norm_sqr(), 0.0))
            }
            Family::V => {
                let x = M21Element::from_coords(z)?;
                Ok((x.inner(&x).re, x.sharp_inner(&x).re, 0.0))
            }
            Family::VI => {
                let x = H3Element::from_coords(z)?;
                Ok((x.inner(&x).re, x.sharp_inner(&x).re, x.det().norm_sqr()))
            }
            _ => Err(Error::Unsupported("explicit invariants exist only for IV, V, VI".into())),
        }
    }
}

/// Real roots of `T³ - a T² + b T - c` known to be real (spectral squares of a rank-3 point).
fn cubic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let p = b - a * a / 3.0;
    let q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - c;
    let shift = a / 3.0;
    let mut roots = if p.abs() < 1e-300 {
        vec![shift + (-q).cbrt(); 3]
    } else {
        let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
        let arg = if m == 0.0 { 0.0 } else { (3.0 * q / (p * m)).clamp(-1.0, 1.0) };
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| shift + m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect()
    };
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

/// Exact Hua polynomial `χ(s) = ∏_j (s + 1 + (j-1) a/2)_{1 + b + (r-j) a}`.
pub fn hua_poly(desc: &DomainDescriptor) -> RationalPoly {
    desc.hua_factors.iter().fold(RationalPoly::one(), |acc, f| {
        &acc * &pochhammer(&RationalPoly::linear(f.shift.clone()), f.len)
    })
}

/// `χ(0)`, as the product of the Pochhammer values at zero.
pub fn hua_at_zero(desc: &DomainDescriptor) -> Rational {
    desc.hua_factors
        .iter()
        .fold(Rational::one(), |acc, f| acc * pochhammer(&f.shift, f.len))
}

/// `N(z, z)` for a point of the ambient space.
pub fn generic_norm_self(desc: &DomainDescriptor, z: &[C]) -> Result<f64> {
    desc.check_shape(z)?;
    match desc.family {
        Family::I { .. } | Family::II { .. } | Family::III { .. } => {
            Ok(desc.spectral_squares(z)?.iter().map(|l| 1.0 - l).product())
        }
        Family::IV { .. } => {
            let (m1, m2, _) = desc.norm_invariants(z)?;
            Ok(1.0 - m1 + m2)
        }
        Family::V => {
            let x = M21Element::from_coords(z)?;
            Ok(M21Element::generic_norm(&x, &x).re)
        }
        Family::VI => {
            let x = H3Element::from_coords(z)?;
            Ok(H3Element::generic_norm(&x, &x).re)
        }
    }
}

/// Two-point generic norm `N(x, y)`; not available for type II.
pub fn generic_norm(desc: &DomainDescriptor, x: &[C], y: &[C]) -> Result<C> {
    desc.check_shape(x)?;
    desc.check_shape(y)?;
    match desc.family {
        Family::I { .. } | Family::III { .. } => {
            let (mx, my) = (desc.to_matrix(x)?, desc.to_matrix(y)?);
            let k = mx.nrows();
            Ok((DMatrix::identity(k, k) - &mx * my.adjoint()).determinant())
        }
        Family::II { .. } => Err(Error::Unsupported(
            "two-point generic norm of type II (square-root branch)".into(),
        )),
        Family::IV { .. } => {
            let qxy: C = 2.0 * x.iter().zip(y).map(|(a, b)| a * b.conj()).sum::<C>();
            let qx: C = x.iter().map(|v| v * v).sum();
            let qy: C = y.iter().map(|v| v * v).sum();
            Ok(C::one() - qxy + qx * qy.conj())
        }
        Family::V => Ok(M21Element::generic_norm(&M21Element::from_coords(x)?, &M21Element::from_coords(y)?)),
        Family::VI => Ok(H3Element::generic_norm(&H3Element::from_coords(x)?, &H3Element::from_coords(y)?)),
    }
}

/// Strict membership in the bounded symmetric domain.
pub fn contains(desc: &DomainDescriptor, z: &[C]) -> Result<bool> {
    desc.check_shape(z)?;
    match desc.family {
        Family::I { .. } | Family::II { .. } | Family::III { .. } => {
            Ok(desc.spectral_squares(z)?.iter().all(|&l| l < 1.0))
        }
        Family::IV { .. } => {
            let (m1, m2, _) = desc.norm_invariants(z)?;
            Ok(1.0 - m1 + m2 > 0.0 && 2.0 - m1 > 0.0)
        }
        Family::V => Ok(M21Element::from_coords(z)?.contains()),
        Family::VI => Ok(H3Element::from_coords(z)?.contains()),
    }
}

/// Membership in the Hartogs domain `{(z, Z) : z ∈ Ω, ‖Z‖² < N(z,z)^μ}`.
pub fn hartogs_contains(desc: &DomainDescriptor, k: usize, mu: &Rational, z: &[C], big_z: &[C]) -> Result<bool> {
    validate_fiber(k, mu)?;
    if big_z.len() != k {
        return Err(Error::ShapeMismatch { expected: k, got: big_z.len() });
    }
    if !contains(desc, z)? {
        return Ok(false);
    }
    let n = generic_norm_self(desc, z)?;
    let zz: f64 = big_z.iter().map(|v| v.norm_sqr()).sum();
    Ok(zz < n.powf(crate::exact::to_f64(mu)))
}

pub(crate) fn validate_fiber(k: usize, mu: &Rational) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidParameter("fiber dimension k must be at least 1".into()));
    }
    if mu <= &Rational::from_integer(BigInt::from(0)) {
        return Err(Error::InvalidParameter(format!("exponent mu must be positive, got {mu}")));
    }
    Ok(())
}

/// A point of the domain with a random direction, scaled so the largest spectral value
/// equals `radius` (< 1).
pub fn random_interior_point<R: rand::Rng + ?Sized>(desc: &DomainDescriptor, rng: &mut R, radius: f64) -> Result<Vec<C>> {
    let z: Vec<C> = (0..desc.dim())
        .map(|_| C::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect();
    let top = desc.spectral_squares(&z)?[0].sqrt();
    Ok(z.iter().map(|v| v * (radius / top)).collect())
}
