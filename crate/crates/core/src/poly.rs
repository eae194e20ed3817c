//! The ring ℍ[X] of quaternionic polynomials with coefficients on the right.
//!
//! `P(X) = Σ X^k a_k`. The indeterminate commutes with the coefficients
//! when two polynomials are multiplied (the star product), but evaluation
//! does not commute: `P(x) = Σ x^k a_k` keeps every power to the left of its
//! coefficient, which rules out the usual Horner scheme.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics;
use crate::quaternion::{Quaternion, UnitImaginary};
use crate::tolerance::Tolerances;

/// A polynomial `Σ X^k a_k` in canonical form: trailing exact zeros trimmed,
/// the zero polynomial stored as the single coefficient `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoly", into = "RawPoly")]
pub struct QPolynomial {
    coeffs: Vec<Quaternion>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    coeffs: Vec<Quaternion>,
}

impl TryFrom<RawPoly> for QPolynomial {
    type Error = Error;
    fn try_from(raw: RawPoly) -> Result<Self> {
        if let Some(bad) = raw.coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Parse(format!("non-finite coefficient {bad}")));
        }
        Ok(Self::new(raw.coeffs))
    }
}

impl From<QPolynomial> for RawPoly {
    fn from(p: QPolynomial) -> Self {
        RawPoly { coeffs: p.coeffs }
    }
}

impl QPolynomial {
    /// Builds a polynomial from `a_0, a_1, …`; only exact trailing zeros are
    /// trimmed.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Quaternion::ZERO);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(a: Quaternion) -> Self {
        Self::new(vec![a])
    }

    /// The monomial `X^d a`.
    pub fn monomial(d: usize, a: Quaternion) -> Self {
        let mut c = vec![Quaternion::ZERO; d + 1];
        c[d] = a;
        Self::new(c)
    }

    /// The linear polynomial `X − q`.
    pub fn linear(q: Quaternion) -> Self {
        Self::new(vec![-q, Quaternion::ONE])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| Quaternion::real(r)).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Quaternion> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> Quaternion {
        self.coeffs[self.degree()]
    }

    /// Left evaluation `Σ x^k a_k`.
    pub fn eval(&self, x: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        let mut pow = Quaternion::ONE;
        for &a in &self.coeffs {
            acc += pow * a;
            pow *= x;
        }
        acc
    }

    /// The star product: `c_n = Σ_{h+k=n} a_h b_k`.
    pub fn star_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (h, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in other.coeffs.iter().enumerate() {
                out[h + k] += a * b;
            }
        }
        Self::new(out)
    }

    /// Right multiplication of every coefficient, i.e. `P·c` for a constant `c`.
    pub fn mul_right(&self, c: Quaternion) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        )
    }

    /// The conjugate polynomial `Σ X^k conj(a_k)`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.conj()).collect())
    }

    /// The normal polynomial `P · P^c`, whose coefficients are real.
    ///
    /// Imaginary round-off is discarded after the product.
    pub fn normal(&self) -> Self {
        Self::new(self.normal_raw().iter().map(|c| Quaternion::real(c.w)).collect())
    }

    /// Coefficients of `P · P^c` before the imaginary parts are truncated.
    pub fn normal_raw(&self) -> Vec<Quaternion> {
        self.star_mul(&self.conjugate()).coeffs
    }

    /// Coefficientwise projection onto the slice `C_I`.
    pub fn slice_project(&self, axis: UnitImaginary) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.slice_project(axis).0).collect())
    }

    /// Returns an axis `I` such that every coefficient lies in `C_I`, if one
    /// exists. Polynomials with real coefficients return `i`.
    pub fn slice_axis(&self, tol: &Tolerances) -> Option<UnitImaginary> {
        let dirs: Vec<[f64; 3]> = self.coeffs.iter().map(|a| a.im_vector()).collect();
        let norm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let widest = dirs.iter().copied().max_by(|a, b| norm(a).total_cmp(&norm(b)))?;
        if norm(&widest) < tol.slice_membership {
            return Some(UnitImaginary::I);
        }
        let axis = UnitImaginary::from_vector(widest).ok()?;
        let spread = dirs
            .iter()
            .map(|v| Quaternion::pure(*v).slice_project(axis).1.norm())
            .fold(0.0, f64::max);
        (spread < tol.slice_membership).then_some(axis)
    }

    /// True when every coefficient is real.
    pub fn is_slice_preserving(&self, tol: &Tolerances) -> bool {
        self.coeffs.iter().all(|a| a.im_norm() < tol.slice_membership)
    }

    /// The spherical derivative `(2 im x)⁻¹ (P(x) − P(x̄))`.
    ///
    /// On the real axis the difference quotient degenerates and the value of
    /// the Almansi `B` polynomial, its continuous extension, is returned.
    pub fn spherical_derivative_at(&self, x: Quaternion, tol: &Tolerances) -> Quaternion {
        let im = x.im();
        if im.norm() < tol.real_axis {
            return harmonics::almansi(self).b.eval(x);
        }
        let num = self.eval(x) - self.eval(x.conj());
        // im ≠ 0 here, so the inverse exists
        (im * 2.0).inverse().unwrap_or(Quaternion::ZERO) * num
    }

    /// The spherical value `(P(x) + P(x̄))/2`.
    pub fn spherical_value_at(&self, x: Quaternion) -> Quaternion {
        (self.eval(x) + self.eval(x.conj())) * 0.5
    }
}

impl std::fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() && !(self.is_zero() && k == 0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "X({a})")?,
                _ => write!(f, "X^{k}({a})")?,
            }
        }
        Ok(())
    }
}
