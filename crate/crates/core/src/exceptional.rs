//! The exceptional Hermitian Jordan triple systems: `H3(O_C)` (27-dimensional, type VI) and
//! `M21(O_C)` (16-dimensional, type V).
//!
//! Both carriers implement [`JordanTriple`], over which the Bergman operator, quasi-inverse,
//! tripotent classification and the algebraic identity checks are written once.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::condition_number;
use crate::octonion::ComplexOctonion;

type C = Complex64;
const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// A Hermitian positive Jordan triple system with a flat coordinate chart.
pub trait JordanTriple: Clone + std::fmt::Debug + Send + Sync {
    const DIM: usize;
    const RANK: usize;
    const GENUS: usize;

    fn zero() -> Self;
    fn coords(&self) -> Vec<C>;
    fn from_coords(c: &[C]) -> Result<Self>;
    /// Diagonal of the Gram matrix of `(x|y)` in the coordinate chart.
    fn coord_weights() -> Vec<f64>;

    /// Hermitian scalar product `(x|y)`, linear in `x`.
    fn inner(&self, y: &Self) -> C;
    /// `Q(x) y`, antilinear in `y`.
    fn quad(&self, y: &Self) -> Self;
    /// `{x y z} = D(x,y) z`.
    fn triple(x: &Self, y: &Self, z: &Self) -> Self;
    /// `(x^♯ | y^♯)`.
    fn sharp_inner(&self, y: &Self) -> C;
    /// Generic norm `N(x, y)`.
    fn generic_norm(x: &Self, y: &Self) -> C;
    /// Strict membership in the bounded symmetric domain.
    fn contains(&self) -> bool;
    /// Rank read off from the tripotent sets, assuming `{xxx} = 2x` already holds.
    fn tripotent_rank(&self, tol: f64) -> Option<u8>;

    fn conj(&self) -> Self {
        Self::from_coords(&self.coords().iter().map(|c| c.conj()).collect::<Vec<_>>())
            .expect("coordinate length preserved")
    }

    fn add(&self, y: &Self) -> Self {
        let (a, b) = (self.coords(), y.coords());
        Self::from_coords(&a.iter().zip(&b).map(|(p, q)| p + q).collect::<Vec<_>>()).expect("same length")
    }

    fn sub(&self, y: &Self) -> Self {
        let (a, b) = (self.coords(), y.coords());
        Self::from_coords(&a.iter().zip(&b).map(|(p, q)| p - q).collect::<Vec<_>>()).expect("same length")
    }

    fn scale(&self, s: C) -> Self {
        Self::from_coords(&self.coords().iter().map(|p| p * s).collect::<Vec<_>>()).expect("same length")
    }

    fn basis(i: usize) -> Self {
        let mut c = vec![ZERO; Self::DIM];
        c[i] = ONE;
        Self::from_coords(&c).expect("basis vector has full length")
    }

    fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// Coordinates uniform in the complex square of half-width `scale`.
    fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let c: Vec<C> = (0..Self::DIM)
            .map(|_| C::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale)))
            .collect();
        Self::from_coords(&c).expect("generated with DIM coordinates")
    }

    /// A random point of the domain with `(x|x)` uniform in `(0, max_norm_sqr)`.
    ///
    /// `(x|x)` is the sum of the squared spectral values, so `(x|x) < 1` forces every spectral
    /// value below one.
    fn random_interior<R: Rng + ?Sized>(rng: &mut R, max_norm_sqr: f64) -> Self {
        let x = Self::random(rng, 1.0);
        let target: f64 = rng.random_range(0.0..max_norm_sqr.min(0.999));
        let n2 = x.inner(&x).re;
        x.scale(C::from((target / n2).sqrt()))
    }
}

/// Dense matrix of a complex-linear map on the coordinate space.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    pub matrix: DMatrix<C>,
}

impl LinearOperator {
    /// Matrix whose `i`-th column is the image of the `i`-th basis vector.
    pub fn from_map<T: JordanTriple>(map: impl Fn(&T) -> T) -> Self {
        let mut m = DMatrix::zeros(T::DIM, T::DIM);
        for i in 0..T::DIM {
            let col = map(&T::basis(i)).coords();
            for (r, v) in col.into_iter().enumerate() {
                m[(r, i)] = v;
            }
        }
        Self { matrix: m }
    }

    pub fn apply<T: JordanTriple>(&self, v: &T) -> T {
        let out = &self.matrix * DVector::from_vec(v.coords());
        T::from_coords(out.as_slice()).expect("square operator")
    }

    pub fn determinant(&self) -> C {
        self.matrix.clone().determinant()
    }

    pub fn trace(&self) -> C {
        self.matrix.trace()
    }
}

/// Matrix of `D(x, y)`.
pub fn triple_operator<T: JordanTriple>(x: &T, y: &T) -> LinearOperator {
    LinearOperator::from_map(|v: &T| T::triple(x, y, v))
}

/// Matrix of the Bergman operator `B(x,y) = I - D(x,y) + Q(x)Q(y)`.
pub fn bergman_operator<T: JordanTriple>(x: &T, y: &T) -> LinearOperator {
    LinearOperator::from_map(|v: &T| v.sub(&T::triple(x, y, v)).add(&x.quad(&y.quad(v))))
}

/// Condition-number ceiling above which `B(x,y)` is treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Quasi-inverse `x^y = B(x,y)^{-1} (x - Q(x) y)`.
pub fn quasi_inverse<T: JordanTriple>(x: &T, y: &T) -> Result<T> {
    let b = bergman_operator(x, y).matrix;
    let cond = condition_number(&b);
    if !(cond < MAX_CONDITION) {
        return Err(Error::Singular(cond));
    }
    let rhs = DVector::from_vec(x.sub(&x.quad(y)).coords());
    let sol = b.lu().solve(&rhs).ok_or(Error::Singular(cond))?;
    T::from_coords(sol.as_slice())
}

/// Classification of an element against the tripotent sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripotentClass {
    Rank(u8),
    NotTripotent,
}

/// Tests `{xxx} = 2x` within `1e-9 (1 + ‖x‖³)`, then matches the defining equalities.
pub fn classify_tripotent<T: JordanTriple>(x: &T) -> TripotentClass {
    let n = x.norm();
    let tol = 1e-9 * (1.0 + n * n * n);
    let defect = T::triple(x, x, x).sub(&x.scale(C::from(2.0))).norm();
    if defect > tol {
        return TripotentClass::NotTripotent;
    }
    match x.tripotent_rank(tol) {
        Some(r) => TripotentClass::Rank(r),
        None => TripotentClass::NotTripotent,
    }
}

/// Norm of `{xy{uvw}} - {uv{xyw}} - {{xyu}vw} + {u{yxv}w}`.
pub fn jordan_identity_defect<T: JordanTriple>(x: &T, y: &T, u: &T, v: &T, w: &T) -> f64 {
    let lhs = T::triple(x, y, &T::triple(u, v, w)).sub(&T::triple(u, v, &T::triple(x, y, w)));
    let rhs = T::triple(&T::triple(x, y, u), v, w).sub(&T::triple(u, &T::triple(y, x, v), w));
    lhs.sub(&rhs).norm()
}

/// Norm of `Q(Q(x)y) v - Q(x)Q(y)Q(x) v`.
pub fn fundamental_formula_defect<T: JordanTriple>(x: &T, y: &T, v: &T) -> f64 {
    let lhs = x.quad(y).quad(v);
    let rhs = x.quad(&y.quad(&x.quad(v)));
    lhs.sub(&rhs).norm()
}

fn inner_sum(a: &[C], b: &[C], weights: &[f64]) -> C {
    a.iter().zip(b).zip(weights).map(|((p, q), w)| p * q.conj() * *w).sum()
}

fn check_len(c: &[C], n: usize) -> Result<()> {
    if c.len() != n {
        return Err(Error::ShapeMismatch { expected: n, got: c.len() });
    }
    Ok(())
}

fn oct_from(c: &[C]) -> ComplexOctonion {
    let mut o = [ZERO; 8];
    o.copy_from_slice(&c[..8]);
    ComplexOctonion(o)
}

fn approx(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// ---------------------------------------------------------------------------------------------
// H3(O_C)

/// Cayley-Hermitian 3×3 octonion matrix `Σ α_i e_i + Σ F_i(a_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct H3Element {
    pub alpha: [C; 3],
    pub a: [ComplexOctonion; 3],
}

/// Index pairs `(j, k)` with `(i, j, k)` an even permutation of `(0, 1, 2)`.
const fn cyc(i: usize) -> (usize, usize) {
    ((i + 1) % 3, (i + 2) % 3)
}

impl H3Element {
    pub fn e(i: usize) -> Self {
        let mut x = Self::default();
        x.alpha[i] = ONE;
        x
    }

    /// `F_i(a)`, with `i` in `0..3`.
    pub fn f(i: usize, a: ComplexOctonion) -> Self {
        let mut x = Self::default();
        x.a[i] = a;
        x
    }

    pub fn identity() -> Self {
        Self { alpha: [ONE; 3], a: [ComplexOctonion::ZERO; 3] }
    }

    pub fn diag(alpha: [C; 3]) -> Self {
        Self { alpha, a: [ComplexOctonion::ZERO; 3] }
    }

    /// Adjoint `x^♯`.
    pub fn sharp(&self) -> Self {
        let mut out = Self::default();
        for i in 0..3 {
            let (j, k) = cyc(i);
            out.alpha[i] = self.alpha[j] * self.alpha[k] - self.a[i].cnorm();
            let c = self.a[j] * self.a[k] - self.a[i].cayley_conj().scale(self.alpha[i]);
            out.a[i] = c.cayley_conj();
        }
        out
    }

    /// Freudenthal product `x × y = (x+y)^♯ - x^♯ - y^♯`.
    pub fn freudenthal(&self, y: &Self) -> Self {
        let (x, mut out) = (self, Self::default());
        for i in 0..3 {
            let (j, k) = cyc(i);
            out.alpha[i] = x.alpha[j] * y.alpha[k] + x.alpha[k] * y.alpha[j] - x.a[i].bilinear(&y.a[i]);
            let c = x.a[j] * y.a[k] + y.a[j] * x.a[k]
                - y.a[i].cayley_conj().scale(x.alpha[i])
                - x.a[i].cayley_conj().scale(y.alpha[i]);
            out.a[i] = c.cayley_conj();
        }
        out
    }

    /// Complex bilinear trace form `(x : y)`.
    pub fn bilinear(&self, y: &Self) -> C {
        (0..3).map(|i| self.alpha[i] * y.alpha[i] + self.a[i].bilinear(&y.a[i])).sum()
    }

    pub fn det(&self) -> C {
        let [a1, a2, a3] = self.a;
        let [x1, x2, x3] = self.alpha;
        let cubic = a1 * (a2 * a3) + (a3.cayley_conj() * a2.cayley_conj()) * a1.cayley_conj();
        x1 * x2 * x3 - x1 * a1.cnorm() - x2 * a2.cnorm() - x3 * a3.cnorm() + cubic.0[0]
    }

    /// The three strict inequalities defining the 27-dimensional domain.
    pub fn domain_inequalities(&self) -> [f64; 3] {
        let n1 = self.inner(self).re;
        let s = self.sharp();
        let n2 = s.inner(&s).re;
        let d = self.det().norm_sqr();
        [1.0 - n1 + n2 - d, 3.0 - 2.0 * n1 + n2, 3.0 - n1]
    }
}

impl JordanTriple for H3Element {
    const DIM: usize = 27;
    const RANK: usize = 3;
    const GENUS: usize = 18;

    fn zero() -> Self {
        Self::default()
    }

    fn coords(&self) -> Vec<C> {
        let mut v = self.alpha.to_vec();
        for o in &self.a {
            v.extend_from_slice(&o.0);
        }
        v
    }

    fn from_coords(c: &[C]) -> Result<Self> {
        check_len(c, 27)?;
        Ok(Self {
            alpha: [c[0], c[1], c[2]],
            a: [oct_from(&c[3..11]), oct_from(&c[11..19]), oct_from(&c[19..27])],
        })
    }

    fn coord_weights() -> Vec<f64> {
        let mut w = vec![1.0; 3];
        w.extend(std::iter::repeat_n(2.0, 24));
        w
    }

    fn inner(&self, y: &Self) -> C {
        inner_sum(&self.coords(), &y.coords(), &Self::coord_weights())
    }

    fn quad(&self, y: &Self) -> Self {
        let yb = y.conj();
        self.scale(self.inner(y)).sub(&self.sharp().freudenthal(&yb))
    }

    fn triple(x: &Self, y: &Self, z: &Self) -> Self {
        let yb = y.conj();
        z.scale(x.inner(y)).add(&x.scale(z.inner(y))).sub(&x.freudenthal(z).freudenthal(&yb))
    }

    fn sharp_inner(&self, y: &Self) -> C {
        self.sharp().inner(&y.sharp())
    }

    fn generic_norm(x: &Self, y: &Self) -> C {
        ONE - x.inner(y) + x.sharp_inner(y) - x.det() * y.det().conj()
    }

    fn contains(&self) -> bool {
        self.domain_inequalities().iter().all(|&v| v > 0.0)
    }

    fn tripotent_rank(&self, tol: f64) -> Option<u8> {
        let n1 = self.inner(self).re;
        let s = self.sharp();
        let n2 = s.inner(&s).re;
        let d = self.det();
        if self.norm() <= tol {
            Some(0)
        } else if approx(n1, 1.0, tol) && s.norm() <= tol {
            Some(1)
        } else if approx(n1, 2.0, tol) && approx(n2, 1.0, tol) && d.norm() <= tol {
            Some(2)
        } else if approx(n1, 3.0, tol) && approx(n2, 3.0, tol) && approx(d.norm_sqr(), 1.0, tol) {
            Some(3)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------------------------
// M21(O_C) and H2(O_C)

/// Pair `(x2, x3)` of complex octonions.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct M21Element {
    pub x2: ComplexOctonion,
    pub x3: ComplexOctonion,
}

/// Cayley-Hermitian 2×2 matrix `[[λ2, u1], [ũ1, λ3]]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct H2Element {
    pub l2: C,
    pub l3: C,
    pub u1: ComplexOctonion,
}

impl H2Element {
    pub fn inner(&self, v: &Self) -> C {
        self.l2 * v.l2.conj() + self.l3 * v.l3.conj() + self.u1.hermitian(&v.u1)
    }
}

impl M21Element {
    pub fn new(x2: ComplexOctonion, x3: ComplexOctonion) -> Self {
        Self { x2, x3 }
    }

    /// Adjoint `x^♯` in `H2(O_C)`.
    pub fn sharp(&self) -> H2Element {
        H2Element {
            l2: -self.x2.cnorm(),
            l3: -self.x3.cnorm(),
            u1: self.x3.cayley_conj() * self.x2.cayley_conj(),
        }
    }

    /// The image `F2(x2) + F3(x3)` in `H3(O_C)`, the Peirce 1-space of `e1`.
    pub fn embed(&self) -> H3Element {
        H3Element {
            alpha: [ZERO; 3],
            a: [ComplexOctonion::ZERO, self.x2, self.x3],
        }
    }

    /// Inverse of [`embed`](Self::embed) on the Peirce 1-space; other components are dropped.
    pub fn project(h: &H3Element) -> Self {
        Self { x2: h.a[1], x3: h.a[2] }
    }

    pub fn domain_inequalities(&self) -> [f64; 2] {
        let n1 = self.inner(self).re;
        let s = self.sharp();
        let n2 = s.inner(&s).re;
        [1.0 - n1 + n2, 2.0 - n1]
    }
}

impl JordanTriple for M21Element {
    const DIM: usize = 16;
    const RANK: usize = 2;
    const GENUS: usize = 12;

    fn zero() -> Self {
        Self::default()
    }

    fn coords(&self) -> Vec<C> {
        let mut v = self.x2.0.to_vec();
        v.extend_from_slice(&self.x3.0);
        v
    }

    fn from_coords(c: &[C]) -> Result<Self> {
        check_len(c, 16)?;
        Ok(Self { x2: oct_from(&c[..8]), x3: oct_from(&c[8..]) })
    }

    fn coord_weights() -> Vec<f64> {
        vec![2.0; 16]
    }

    fn inner(&self, y: &Self) -> C {
        self.x2.hermitian(&y.x2) + self.x3.hermitian(&y.x3)
    }

    fn quad(&self, y: &Self) -> Self {
        let (x2, x3) = (self.x2, self.x3);
        let (y2b, y3b) = (y.x2.conj(), y.x3.conj());
        Self {
            x2: (x2 * y2b.cayley_conj()) * x2 + (x2 * y3b) * x3.cayley_conj(),
            x3: x2.cayley_conj() * (y2b * x3) + (x3 * y3b.cayley_conj()) * x3,
        }
    }

    /// Polarization of the quadratic operator: `{xyz} = Q(x+z)y - Q(x)y - Q(z)y`.
    fn triple(x: &Self, y: &Self, z: &Self) -> Self {
        x.add(z).quad(y).sub(&x.quad(y)).sub(&z.quad(y))
    }

    fn sharp_inner(&self, y: &Self) -> C {
        self.sharp().inner(&y.sharp())
    }

    fn generic_norm(x: &Self, y: &Self) -> C {
        ONE - x.inner(y) + x.sharp_inner(y)
    }

    fn contains(&self) -> bool {
        self.domain_inequalities().iter().all(|&v| v > 0.0)
    }

    fn tripotent_rank(&self, tol: f64) -> Option<u8> {
        let n1 = self.inner(self).re;
        let s = self.sharp();
        let n2 = s.inner(&s).re;
        if self.norm() <= tol {
            Some(0)
        } else if approx(n1, 1.0, tol) && n2.sqrt() <= tol {
            Some(1)
        } else if approx(n1, 2.0, tol) && approx(n2, 1.0, tol) {
            Some(2)
        } else {
            None
        }
    }
}

/// Flat `[re, im]` pairs in coordinate order.
pub fn to_pairs<T: JordanTriple>(x: &T) -> Vec<[f64; 2]> {
    x.coords().iter().map(|c| [c.re, c.im]).collect()
}

pub fn from_pairs<T: JordanTriple>(pairs: &[[f64; 2]]) -> Result<T> {
    T::from_coords(&pairs.iter().map(|p| C::new(p[0], p[1])).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const I: C = C::new(0.0, 1.0);

    fn close<T: JordanTriple>(a: &T, b: &T, tol: f64) -> bool {
        a.sub(b).norm() <= tol
    }

    fn oct(i: usize) -> ComplexOctonion {
        ComplexOctonion::basis(i)
    }

    #[test]
    fn sharp_examples() {
        let e = H3Element::e;
        assert_eq!(e(0).sharp(), H3Element::zero());
        assert_eq!(e(0).add(&e(1)).sharp(), e(2));
        assert_eq!(H3Element::identity().sharp(), H3Element::identity());
    }

    #[test]
    fn freudenthal_examples() {
        let e = H3Element::e;
        let b = oct(3) + oct(5).scale(I);
        let a = oct(1) + oct(6);
        assert_eq!(e(0).freudenthal(&e(1)), e(2));
        assert_eq!(e(0).freudenthal(&H3Element::f(0, b)), H3Element::f(0, -b));
        assert_eq!(e(0).freudenthal(&H3Element::f(1, b)), H3Element::zero());
        assert_eq!(
            H3Element::f(0, a).freudenthal(&H3Element::f(0, b)),
            H3Element::diag([-a.bilinear(&b), ZERO, ZERO])
        );
        // F_1(a) × F_2(b) = F̃_3(ab)
        assert_eq!(
            H3Element::f(0, a).freudenthal(&H3Element::f(1, b)),
            H3Element::f(2, (a * b).cayley_conj())
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = H3Element::random(&mut rng, 1.0);
        assert!(close(&x.freudenthal(&x), &x.sharp().scale(C::from(2.0)), 1e-12));
    }

    #[test]
    fn det_examples() {
        assert_eq!(H3Element::identity().det(), ONE);
        assert_eq!(H3Element::e(0).det(), ZERO);
        let al = [C::new(2.0, 1.0), C::new(-0.5, 0.0), C::new(0.0, 3.0)];
        assert_eq!(H3Element::diag(al).det(), al[0] * al[1] * al[2]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = H3Element::random(&mut rng, 1.0);
        let third = x.sharp().bilinear(&x) / 3.0;
        assert!((x.det() - third).norm() < 1e-12);
    }

    #[test]
    fn triple_product_examples() {
        let e1 = H3Element::e(0);
        assert_eq!(H3Element::triple(&e1, &e1, &e1), e1.scale(C::from(2.0)));
        assert_eq!(e1.quad(&e1), e1);
        assert_eq!(H3Element::triple(&e1, &e1, &H3Element::e(1)), H3Element::zero());
    }

    #[test]
    fn peirce_spaces_of_e1() {
        let d = triple_operator(&H3Element::e(0), &H3Element::e(0));
        let expected: Vec<f64> = [2.0, 0.0, 0.0]
            .into_iter()
            .chain(std::iter::repeat_n(0.0, 8))
            .chain(std::iter::repeat_n(1.0, 16))
            .collect();
        for (i, ev) in expected.iter().enumerate() {
            let image = d.apply(&H3Element::basis(i));
            assert!(close(&image, &H3Element::basis(i).scale(C::from(*ev)), 1e-14), "coord {i}");
        }
        assert!((d.trace() - C::from(18.0)).norm() < 1e-12);
    }

    #[test]
    fn bergman_operator_at_origin() {
        let b = bergman_operator(&H3Element::zero(), &H3Element::zero());
        assert_eq!(b.matrix, DMatrix::identity(27, 27));
        let b = bergman_operator(&M21Element::zero(), &M21Element::zero());
        assert_eq!(b.matrix, DMatrix::identity(16, 16));
    }

    #[test]
    fn quasi_inverse_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = H3Element::random_interior(&mut rng, 0.8);
        let y = H3Element::random_interior(&mut rng, 0.8);
        assert!(close(&quasi_inverse(&H3Element::zero(), &y).unwrap(), &H3Element::zero(), 1e-14));
        assert!(close(&quasi_inverse(&x, &H3Element::zero()).unwrap(), &x, 1e-14));
        // B(e1, e1) annihilates e1: quasi-inverse undefined
        let e1 = H3Element::e(0);
        assert!(matches!(quasi_inverse(&e1, &e1), Err(Error::Singular(_))));
    }

    #[test]
    fn generic_norm_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert_eq!(H3Element::generic_norm(&H3Element::zero(), &H3Element::zero()), ONE);
        let x = H3Element::random(&mut rng, 1.0);
        assert_eq!(H3Element::generic_norm(&x, &H3Element::zero()), ONE);
        let v = M21Element::random(&mut rng, 1.0);
        assert_eq!(M21Element::generic_norm(&v, &M21Element::zero()), ONE);
        let t = 0.6;
        let iso = (oct(0) + oct(1).scale(I)).scale(C::from(t / 2.0));
        let x = M21Element::new(iso, ComplexOctonion::ZERO);
        let n = M21Element::generic_norm(&x, &x);
        assert!((n - C::from(1.0 - t * t)).norm() < 1e-14);
    }

    #[test]
    fn tripotent_examples() {
        assert_eq!(classify_tripotent(&H3Element::zero()), TripotentClass::Rank(0));
        assert_eq!(classify_tripotent(&H3Element::e(0)), TripotentClass::Rank(1));
        assert_eq!(classify_tripotent(&H3Element::e(0).add(&H3Element::e(1))), TripotentClass::Rank(2));
        assert_eq!(classify_tripotent(&H3Element::identity()), TripotentClass::Rank(3));
        assert_eq!(classify_tripotent(&H3Element::e(0).scale(C::from(0.5))), TripotentClass::NotTripotent);
        let iso = (oct(0) + oct(1).scale(I)).scale(C::from(0.5));
        let m = M21Element::new(iso, ComplexOctonion::ZERO);
        assert_eq!(classify_tripotent(&m), TripotentClass::Rank(1));
        let id = H3Element::identity();
        assert_eq!((id.inner(&id).re, id.sharp_inner(&id).re, id.det()), (3.0, 3.0, ONE));
    }

    #[test]
    fn membership_examples() {
        assert!(H3Element::zero().contains());
        assert!(M21Element::zero().contains());
        assert!(!H3Element::identity().contains());
        assert!(H3Element::e(0).scale(C::from(0.5)).contains());
        assert!(!H3Element::e(0).contains());
    }

    #[test]
    fn m21_agrees_with_h3_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let x = M21Element::random(&mut rng, 1.0);
            let y = M21Element::random(&mut rng, 1.0);
            let z = M21Element::random(&mut rng, 1.0);
            let q3 = x.embed().quad(&y.embed());
            assert!(close(&q3, &x.quad(&y).embed(), 1e-12), "{q3:?}");
            let t3 = H3Element::triple(&x.embed(), &y.embed(), &z.embed());
            assert!(close(&t3, &M21Element::triple(&x, &y, &z).embed(), 1e-12));
            let n3 = H3Element::generic_norm(&x.embed(), &y.embed());
            assert!((n3 - M21Element::generic_norm(&x, &y)).norm() < 1e-12);
            assert!((x.embed().inner(&y.embed()) - x.inner(&y)).norm() < 1e-12);
        }
    }

    #[test]
    fn operator_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = H3Element::random(&mut rng, 1.0);
        let y = H3Element::random(&mut rng, 1.0);
        let tr = triple_operator(&x, &y).trace();
        assert!((tr - x.inner(&y) * 18.0).norm() < 1e-10 * (1.0 + tr.norm()));
        let x = M21Element::random(&mut rng, 1.0);
        let y = M21Element::random(&mut rng, 1.0);
        let tr = triple_operator(&x, &y).trace();
        assert!((tr - x.inner(&y) * 12.0).norm() < 1e-10 * (1.0 + tr.norm()));
    }

    #[test]
    fn bergman_determinants() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..5 {
            let x = H3Element::random_interior(&mut rng, 0.9);
            let y = H3Element::random_interior(&mut rng, 0.9);
            let det = bergman_operator(&x, &y).determinant();
            let n = H3Element::generic_norm(&x, &y).powu(18);
            assert!((det - n).norm() <= 1e-9 * n.norm(), "{det} vs {n}");
            let x = M21Element::random_interior(&mut rng, 0.9);
            let y = M21Element::random_interior(&mut rng, 0.9);
            let det = bergman_operator(&x, &y).determinant();
            let n = M21Element::generic_norm(&x, &y).powu(12);
            assert!((det - n).norm() <= 1e-9 * n.norm(), "{det} vs {n}");
        }
    }

    #[test]
    fn jordan_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = |rng: &mut ChaCha8Rng| H3Element::random(rng, 1.0);
        let (x, y, u, v, w) = (r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng));
        assert!(jordan_identity_defect(&x, &y, &u, &v, &w) < 1e-9);
        assert!(fundamental_formula_defect(&x, &y, &u) < 1e-9);
        let r = |rng: &mut ChaCha8Rng| M21Element::random(rng, 1.0);
        let (x, y, u, v, w) = (r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng));
        assert!(jordan_identity_defect(&x, &y, &u, &v, &w) < 1e-9);
        assert!(fundamental_formula_defect(&x, &y, &u) < 1e-9);
    }

    #[test]
    fn pairs_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = H3Element::random(&mut rng, 1.0);
        assert_eq!(from_pairs::<H3Element>(&to_pairs(&x)).unwrap(), x);
        assert!(matches!(
            from_pairs::<M21Element>(&to_pairs(&x)),
            Err(Error::ShapeMismatch { expected: 16, got: 27 })
        ));
    }
}
