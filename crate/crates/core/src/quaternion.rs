//! Quaternion arithmetic and the slice geometry of ℍ.
//!
//! Every quaternion `q = w + xi + yj + zk` with nonzero imaginary part lies in
//! exactly one complex plane `C_I = span{1, I}` for `I = im(q)/|im(q)|`. The
//! conjugation orbit `{p q p⁻¹}` is the 2-sphere `re(q) + |im(q)|·S`, where
//! `S` is the sphere of imaginary units.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A real quaternion `w + xi + yj + zk`.
///
/// Serialized as the JSON array `[w, x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Pure imaginary quaternion from a vector in ℝ³.
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Real part `re(q)`.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `im(q)` as a quaternion with zero real part.
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn im_vector(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        let m = self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs());
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        if (1e-150..1e150).contains(&m) {
            return self.norm_sqr().sqrt();
        }
        (self / m).norm_sqr().sqrt() * m
    }

    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Euclidean inner product on ℝ⁴, equal to `re(a·conj(b))`.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Multiplicative inverse `conj(q)/|q|²` with the default zero guard.
    pub fn inverse(self) -> Result<Self> {
        self.inverse_with(Tolerances::default().zero_guard)
    }

    /// Multiplicative inverse, failing when `|q| < eps`.
    pub fn inverse_with(self, eps: f64) -> Result<Self> {
        let n = self.norm();
        if n.is_nan() || n < eps || n == 0.0 {
            return Err(Error::ZeroDivisor { modulus: n });
        }
        // divide twice so |q|² cannot underflow
        Ok(self.conj().scale(1.0 / n).scale(1.0 / n))
    }

    /// Integer power by repeated right multiplication.
    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Splits `self` into its orthogonal projection onto `C_I` and the
    /// complementary part.
    pub fn slice_project(self, axis: UnitImaginary) -> (Self, Self) {
        let u = axis.vector();
        let t = self.x * u[0] + self.y * u[1] + self.z * u[2];
        let par = Self::new(self.w, t * u[0], t * u[1], t * u[2]);
        let perp = Self::new(0.0, self.x - par.x, self.y - par.y, self.z - par.z);
        (par, perp)
    }

    /// Unit imaginary direction of `im(self)` with the default threshold.
    pub fn axis(self) -> Result<UnitImaginary> {
        self.axis_with(Tolerances::default().real_axis)
    }

    pub fn axis_with(self, tol: f64) -> Result<UnitImaginary> {
        let n = self.im_norm();
        if n.is_nan() || n < tol || n == 0.0 {
            return Err(Error::RealAxisInput { im_modulus: n });
        }
        Ok(UnitImaginary(Self::new(0.0, self.x / n, self.y / n, self.z / n)))
    }

    /// Slice coordinates `(α, β, I)` with `self = α + Iβ`, `β ≥ 0`. Real
    /// inputs (below `tol`) get `β = 0` and the axis `i`.
    pub fn to_slice_point(self, tol: f64) -> SlicePoint {
        match self.axis_with(tol) {
            Ok(axis) => SlicePoint { alpha: self.w, beta: self.im_norm(), axis },
            Err(_) => SlicePoint { alpha: self.w, beta: 0.0, axis: UnitImaginary::I },
        }
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(
                f,
                "{:.p$} {:+.p$}i {:+.p$}j {:+.p$}k",
                self.w,
                self.x,
                self.y,
                self.z,
                p = p
            ),
            None => write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z),
        }
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

/// A quaternion with zero real part and unit modulus, i.e. a point of the
/// sphere `S` of imaginary units. Every such `I` satisfies `I² = −1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Quaternion", into = "Quaternion")]
pub struct UnitImaginary(Quaternion);

impl UnitImaginary {
    pub const I: Self = Self(Quaternion::I);
    pub const J: Self = Self(Quaternion::J);
    pub const K: Self = Self(Quaternion::K);

    /// Validates `q` as an imaginary unit to within `1e-12`.
    pub fn new(q: Quaternion) -> Result<Self> {
        if q.w.abs() > 1e-12 || (q.norm() - 1.0).abs() > 1e-12 || !q.is_finite() {
            return Err(Error::NotUnitImaginary(q.w, q.x, q.y, q.z));
        }
        Ok(Self(q))
    }

    /// Normalizes a nonzero vector of ℝ³.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        Quaternion::pure(v).axis_with(0.0)
    }

    pub fn quaternion(self) -> Quaternion {
        self.0
    }

    pub fn vector(self) -> [f64; 3] {
        self.0.im_vector()
    }
}

impl From<UnitImaginary> for Quaternion {
    fn from(u: UnitImaginary) -> Self {
        u.0
    }
}

impl TryFrom<Quaternion> for UnitImaginary {
    type Error = Error;
    fn try_from(q: Quaternion) -> Result<Self> {
        Self::new(q)
    }
}

/// The point `α + Iβ` of the slice `C_I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicePoint {
    pub alpha: f64,
    pub beta: f64,
    pub axis: UnitImaginary,
}

impl SlicePoint {
    pub fn to_quaternion(self) -> Quaternion {
        sphere_point(self.alpha, self.beta, self.axis)
    }
}

/// The point `α + Iβ`. Varying `I` over `S` sweeps the circular set
/// through it.
pub fn sphere_point(alpha: f64, beta: f64, axis: UnitImaginary) -> Quaternion {
    let u = axis.vector();
    Quaternion::new(alpha, beta * u[0], beta * u[1], beta * u[2])
}

/// `n` points uniformly distributed on S³, reproducible from `seed`.
pub fn sample_unit_sphere(seed: u64, n: usize) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_unit(&mut rng)).collect()
}

/// One uniform sample of S³ by normalizing a 4-D standard Gaussian.
pub fn random_unit<R: rand::Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = Quaternion::new(
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        );
        let n = q.norm();
        if n > 1e-6 {
            return q / n;
        }
    }
}

/// One uniform sample of the sphere `S` of imaginary units.
pub fn random_unit_imaginary<R: rand::Rng + ?Sized>(rng: &mut R) -> UnitImaginary {
    loop {
        let v: [f64; 3] = [
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return UnitImaginary(Quaternion::pure([v[0] / n, v[1] / n, v[2] / n]));
        }
    }
}
