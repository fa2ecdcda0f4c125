//! Complex octonions: the Cayley algebra over the complex numbers.
//!
//! The basis is `e0` (unit) and `e1..e7` with the Fano-plane table `e_i e_{i+1} = e_{i+3}`
//! (indices mod 7 in 1..=7), i.e. the oriented lines listed in [`FANO_LINES`].

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;

/// Oriented lines `(i, j, k)` with `e_i e_j = e_k`; cyclic rotations hold as well.
pub const FANO_LINES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

/// `MUL_TABLE[i][j] = (sign, k)` with `e_i e_j = sign * e_k`.
pub const MUL_TABLE: [[(i8, u8); 8]; 8] = build_table();

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        if i > 0 {
            t[i][i] = (-1, 0);
        }
        i += 1;
    }
    let mut l = 0;
    while l < 7 {
        let (a, b, c) = FANO_LINES[l];
        let rot = [(a, b, c), (b, c, a), (c, a, b)];
        let mut r = 0;
        while r < 3 {
            let (x, y, z) = rot[r];
            t[x][y] = (1, z as u8);
            t[y][x] = (-1, z as u8);
            r += 1;
        }
        l += 1;
    }
    t
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ComplexOctonion(pub [Complex64; 8]);

impl ComplexOctonion {
    pub const ZERO: Self = Self([ZERO; 8]);

    pub fn one() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [ZERO; 8];
        c[i] = Complex64::new(1.0, 0.0);
        Self(c)
    }

    pub fn scalar(s: Complex64) -> Self {
        let mut c = [ZERO; 8];
        c[0] = s;
        Self(c)
    }

    /// Entries with independent real and imaginary parts uniform in `[-scale, scale]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let mut c = [ZERO; 8];
        for v in &mut c {
            *v = Complex64::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale));
        }
        Self(c)
    }

    /// Cayley conjugation `ã`: fixes `e0`, negates `e1..e7`.
    pub fn cayley_conj(&self) -> Self {
        let mut c = self.0.map(|v| -v);
        c[0] = self.0[0];
        Self(c)
    }

    /// Complex conjugation of every coordinate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|v| v.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|v| v * s))
    }

    /// Cayley norm `n(a) = a ã`, a scalar.
    pub fn cnorm(&self) -> Complex64 {
        let n: Complex64 = self.0.iter().map(|v| v * v).sum();
        debug_assert!(scalar_part_checked(&(*self * self.cayley_conj()), n));
        n
    }

    /// Trace `t(a) = a + ã`, a scalar.
    pub fn trace(&self) -> Complex64 {
        self.0[0] * 2.0
    }

    /// Symmetric bilinear form `(a:b) = a b̃ + b ã = t(a b̃)`, a scalar equal to `2 Σ a_i b_i`.
    pub fn bilinear(&self, b: &Self) -> Complex64 {
        let s: Complex64 = self.0.iter().zip(b.0.iter()).map(|(x, y)| x * y).sum::<Complex64>() * 2.0;
        debug_assert!(scalar_part_checked(
            &(*self * b.cayley_conj() + *b * self.cayley_conj()),
            s
        ));
        s
    }

    /// `(a|b) = (a : b̄)`.
    pub fn hermitian(&self, b: &Self) -> Complex64 {
        self.0.iter().zip(b.0.iter()).map(|(x, y)| x * y.conj()).sum::<Complex64>() * 2.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v.norm_sqr()).sum()
    }

    /// The `[re, im]` pairs of the eight coordinates.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.0.iter().map(|v| [v.re, v.im]).collect()
    }
}

/// The product must be `expected * e0` up to rounding.
fn scalar_part_checked(p: &ComplexOctonion, expected: Complex64) -> bool {
    let scale = 1.0 + p.norm_sqr().sqrt();
    (p.0[0] - expected).norm() <= 1e-12 * scale && p.0[1..].iter().all(|v| v.norm() <= 1e-12 * scale)
}

impl Add for ComplexOctonion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
        Self(c)
    }
}

impl AddAssign for ComplexOctonion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for ComplexOctonion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
        Self(c)
    }
}

impl Neg for ComplexOctonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl Mul for ComplexOctonion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [ZERO; 8];
        for (i, a) in self.0.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                let (s, k) = MUL_TABLE[i][j];
                let p = a * b;
                if s > 0 {
                    c[k as usize] += p;
                } else {
                    c[k as usize] -= p;
                }
            }
        }
        Self(c)
    }
}

impl Mul<ComplexOctonion> for Complex64 {
    type Output = ComplexOctonion;
    fn mul(self, rhs: ComplexOctonion) -> ComplexOctonion {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn close(a: &ComplexOctonion, b: &ComplexOctonion, tol: f64) -> bool {
        (*a - *b).norm_sqr().sqrt() <= tol
    }

    #[test]
    fn table_examples() {
        let e = ComplexOctonion::basis;
        let a = ComplexOctonion::random(&mut ChaCha8Rng::seed_from_u64(1), 1.0);
        assert_eq!(e(0) * a, a);
        assert_eq!(a * e(0), a);
        assert_eq!(e(1) * e(1), -e(0));
        assert_eq!(e(1) * e(2), e(4));
        assert_eq!(e(2) * e(1), -e(4));
    }

    #[test]
    fn composition_on_basis_pairs() {
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (ComplexOctonion::basis(i), ComplexOctonion::basis(j));
                assert_eq!((a * b).cnorm(), a.cnorm() * b.cnorm(), "e{i} e{j}");
            }
        }
    }

    #[test]
    fn scalar_products() {
        let e0 = ComplexOctonion::one();
        assert_eq!(e0.cnorm(), Complex64::new(1.0, 0.0));
        assert_eq!(e0.bilinear(&e0), Complex64::new(2.0, 0.0));
        let iso = e0 + I * ComplexOctonion::basis(1);
        assert!(iso.cnorm().norm() < 1e-15);
        assert!((iso * iso.cayley_conj()).norm_sqr() < 1e-30);
        let half = iso.scale(Complex64::new(0.5, 0.0));
        assert!((half.hermitian(&half) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = ComplexOctonion::random(&mut rng, 1.0);
            let b = ComplexOctonion::random(&mut rng, 1.0);
            assert!(close(&(a * (a * b)), &((a * a) * b), 1e-12));
            assert!(close(&((b * a) * a), &(b * (a * a)), 1e-12));
            let lhs = (a * b).cnorm();
            let rhs = a.cnorm() * b.cnorm();
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
            assert_eq!(a.bilinear(&b), b.bilinear(&a));
            let h = a.hermitian(&a);
            assert!(h.im.abs() < 1e-14 && (h.re - 2.0 * a.norm_sqr()).abs() < 1e-12);
            let t = a + a.cayley_conj();
            assert!(t.0[1..].iter().all(|v| v.norm() == 0.0));
        }
    }
}
