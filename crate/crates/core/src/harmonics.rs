//! Four-dimensional zonal harmonics with pole 1 and the Almansi-type
//! decomposition `P(x) = A(x) − x̄·B(x)`.
//!
//! The normalized zonal harmonic of degree `k` is the real harmonic
//! polynomial
//!
//! ```text
//! Z̃_k(x) = |x|^k · U_k(x₀ / |x|)
//! ```
//!
//! where `U_k` is the Chebyshev polynomial of the second kind (the
//! Gegenbauer polynomial `C_k^(1)`). It satisfies `x^k = Z̃_k(x) − x̄ Z̃_{k−1}(x)`
//! for every quaternion `x`, which turns a polynomial `Σ x^k a_k` into
//! `A(x) − x̄ B(x)` with `A = Σ Z̃_k a_k` and `B = Σ Z̃_k a_{k+1}`. On the unit
//! sphere `Z̃_k(x) = U_k(x₀)`, so `A` and `B` only depend on the real part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerances;

/// Chebyshev polynomial of the second kind, `U_k(t)`, with `U_{-1} = 0`.
pub fn gegenbauer_u(k: i64, t: f64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..k {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_0(t), …, U_m(t)` in one pass.
pub fn gegenbauer_table(m: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..=m {
        out.push(cur);
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

/// `Z̃_k(x)`, with `Z̃_{-1} = 0`.
pub fn zonal(k: i64, x: Quaternion) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let r = x.norm();
    if r == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    r.powi(k as i32) * gegenbauer_u(k, x.w / r)
}

/// `Z̃_0(x), …, Z̃_m(x)`.
pub fn zonal_table(m: usize, x: Quaternion) -> Vec<f64> {
    let r = x.norm();
    if r == 0.0 {
        let mut out = vec![0.0; m + 1];
        out[0] = 1.0;
        return out;
    }
    let mut scale = 1.0;
    gegenbauer_table(m, x.w / r)
        .into_iter()
        .map(|u| {
            let v = scale * u;
            scale *= r;
            v
        })
        .collect()
}

/// `Σ Z̃_k(x) c_k` with quaternionic coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZonalPolynomial {
    pub coeffs: Vec<Quaternion>,
}

impl ZonalPolynomial {
    pub fn new(coeffs: Vec<Quaternion>) -> Self {
        Self { coeffs }
    }

    /// Highest index carried, or `None` for an empty expansion.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: Quaternion) -> Quaternion {
        if self.coeffs.is_empty() {
            return Quaternion::ZERO;
        }
        zonal_table(self.coeffs.len() - 1, x)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(z, &c)| c * z)
            .sum()
    }

    /// Value at any point of S³ with real part `x0`, i.e. `Σ U_k(x₀) c_k`.
    pub fn eval_on_sphere(&self, x0: f64) -> Quaternion {
        if self.coeffs.is_empty() {
            return Quaternion::ZERO;
        }
        gegenbauer_table(self.coeffs.len() - 1, x0)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(u, &c)| c * u)
            .sum()
    }
}

/// The pair `(A, B)` with `P(x) = A(x) − x̄ B(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlmansiPair {
    pub a: ZonalPolynomial,
    pub b: ZonalPolynomial,
}

impl AlmansiPair {
    /// Reassembles `A(x) − x̄ B(x)`.
    pub fn eval(&self, x: Quaternion) -> Quaternion {
        self.a.eval(x) - x.conj() * self.b.eval(x)
    }

    /// `(A(y), B(y))` for any `y ∈ S³` with `re(y) = x0`.
    pub fn on_sphere(&self, x0: f64) -> (Quaternion, Quaternion) {
        (self.a.eval_on_sphere(x0), self.b.eval_on_sphere(x0))
    }
}

/// Almansi-type decomposition of `P = Σ X^k a_k`: `A` keeps the
/// coefficients and `B` shifts them down by one. A constant has `B = 0`,
/// stored as an empty expansion.
pub fn almansi(p: &QPolynomial) -> AlmansiPair {
    let c = p.coeffs();
    AlmansiPair {
        a: ZonalPolynomial::new(c.to_vec()),
        b: ZonalPolynomial::new(c[1..].to_vec()),
    }
}

/// `Q_α(x) = Σ (U_k(x₀) − x̄ U_{k−1}(x₀)) a_k` on S³, which is the
/// restriction of `Σ x^k a_k` to the unit sphere.
pub fn biharmonic_restriction(alpha: &[Quaternion], x: Quaternion, tol: &Tolerances) -> Result<Quaternion> {
    let modulus = x.norm();
    if (modulus - 1.0).abs() > tol.on_sphere {
        return Err(Error::OffSphere { modulus });
    }
    if alpha.is_empty() {
        return Ok(Quaternion::ZERO);
    }
    let u = gegenbauer_table(alpha.len() - 1, x.w);
    let xc = x.conj();
    Ok(alpha
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let lower = if k == 0 { 0.0 } else { u[k - 1] };
            (Quaternion::real(u[k]) - xc * lower) * a
        })
        .sum())
}

/// The coefficient map `(a_0, …, a_d) ↦ (a_1, 2a_2, …, d·a_d, 0)`, which
/// sends the restriction of `P` to the restriction of `P'`.
pub fn derivative_coefficients(alpha: &[Quaternion]) -> Vec<Quaternion> {
    let mut out: Vec<Quaternion> = alpha.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect();
    out.push(Quaternion::ZERO);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::{cubic_ijk, poly_strategy};
    use crate::quaternion::{random_unit, sample_unit_sphere};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Quaternion as Q;

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_u(-1, 0.3), 0.0);
        assert_eq!(gegenbauer_u(0, 0.3), 1.0);
        assert_eq!(gegenbauer_u(1, 0.3), 0.6);
        assert_eq!(gegenbauer_u(2, 0.5), 0.0);
        for k in 0..30 {
            assert_eq!(gegenbauer_u(k, 1.0), (k + 1) as f64);
        }
        // U_k(cos θ) = sin((k+1)θ)/sin θ
        let theta: f64 = 0.7;
        for k in 0..12 {
            let oracle = ((k + 1) as f64 * theta).sin() / theta.sin();
            assert!((gegenbauer_u(k, theta.cos()) - oracle).abs() < 1e-12);
        }
        assert_eq!(gegenbauer_table(5, 0.2), (0..=5).map(|k| gegenbauer_u(k, 0.2)).collect::<Vec<_>>());
    }

    #[test]
    fn zonal_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = Q::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let s = x.x * x.x + x.y * x.y + x.z * x.z;
            let closed = [1.0, 2.0 * x.w, 3.0 * x.w * x.w - s, 4.0 * x.w * (x.w * x.w - s)];
            for (k, c) in closed.iter().enumerate() {
                assert!((zonal(k as i64, x) - c).abs() <= 1e-12 * c.abs().max(1.0));
            }
        }
        assert!(zonal(3, Q::new(1.0, 1.0, 0.0, 0.0)).abs() < 1e-14);
        assert_eq!(zonal(-1, Q::ONE), 0.0);
        assert_eq!(zonal(0, Q::ZERO), 1.0);
        assert_eq!(zonal(4, Q::ZERO), 0.0);
    }

    #[test]
    fn almansi_of_powers_and_constants() {
        let pair = almansi(&QPolynomial::monomial(4, Q::ONE));
        assert_eq!(pair.a.coeffs[4], Q::ONE);
        assert_eq!(pair.b.coeffs[3], Q::ONE);
        assert_eq!(pair.a.degree(), Some(4));
        assert_eq!(pair.b.degree(), Some(3));

        let pair = almansi(&QPolynomial::constant(Q::K));
        assert_eq!(pair.a.coeffs, vec![Q::K]);
        assert_eq!(pair.b.degree(), None);
        assert_eq!(pair.b.eval(Q::new(0.3, 0.1, 0.2, 0.0)), Q::ZERO);
        assert_eq!(ZonalPolynomial::new(vec![Q::ONE]).eval(Q::new(3.0, 1.0, 1.0, 1.0)), Q::ONE);
    }

    #[test]
    fn counterexample_decomposition_matches_closed_forms() {
        let pair = almansi(&cubic_ijk());
        for x in sample_unit_sphere(3, 200) {
            let x = x * 1.7;
            let (x0, x1, x2, x3) = (x.w, x.x, x.y, x.z);
            let s = x1 * x1 + x2 * x2 + x3 * x3;
            let a_re = 1.0 + 4.0 * x0 * x0 * x0 - 4.0 * x0 * s;
            let a_im = 2.0 * x0 - 3.0 * x0 * x0 + s;
            // j carries -2x0: a_1 = i - j + k
            let a = Q::new(a_re, a_im, a_im - 4.0 * x0, a_im);
            let b = Q::new(3.0 * x0 * x0 - s, 1.0 - 2.0 * x0, -(1.0 + 2.0 * x0), 1.0 - 2.0 * x0);
            assert!((pair.a.eval(x) - a).norm() < 1e-12);
            assert!((pair.b.eval(x) - b).norm() < 1e-12);
        }
    }

    #[test]
    fn restriction_examples() {
        let tol = Tolerances::default();
        for x in sample_unit_sphere(9, 50) {
            for d in 0..7 {
                let mut alpha = vec![Q::ZERO; d + 1];
                alpha[d] = Q::ONE;
                let v = biharmonic_restriction(&alpha, x, &tol).unwrap();
                assert!((v - x.powi(d as u32)).norm() < 1e-12);
            }
        }
        let alpha = [Q::new(1.0, 2.0, 0.0, 0.0), Q::J, Q::new(0.0, 0.0, 0.0, -3.0)];
        let v = biharmonic_restriction(&alpha, Q::ONE, &tol).unwrap();
        assert_eq!(v, alpha.iter().copied().sum::<Q>());
        assert!(matches!(
            biharmonic_restriction(&alpha, Q::real(1.1), &tol),
            Err(Error::OffSphere { .. })
        ));
    }

    #[test]
    fn derivative_coefficient_map() {
        let alpha = [Q::ONE, Q::I, Q::J, Q::K];
        assert_eq!(derivative_coefficients(&alpha), vec![Q::I, Q::J * 2.0, Q::K * 3.0, Q::ZERO]);
        let tol = Tolerances::default();
        let p = cubic_ijk();
        for x in sample_unit_sphere(2, 50) {
            let v = biharmonic_restriction(&derivative_coefficients(p.coeffs()), x, &tol).unwrap();
            assert!((v - p.derivative().eval(x)).norm() < 1e-12);
        }
    }

    /// 4-D Laplacian by the 5-point central difference in each direction.
    fn laplacian(f: impl Fn(Q) -> f64, x: Q, h: f64) -> f64 {
        let basis = [Q::ONE, Q::I, Q::J, Q::K];
        let fx = f(x);
        basis
            .iter()
            .map(|&e| {
                let (p1, m1) = (f(x + e * h), f(x - e * h));
                let (p2, m2) = (f(x + e * (2.0 * h)), f(x - e * (2.0 * h)));
                (-p2 + 16.0 * p1 - 30.0 * fx + 16.0 * m1 - m2) / (12.0 * h * h)
            })
            .sum()
    }

    #[test]
    fn three_point_stencil_truncation_for_degree_four() {
        // Σ ∂⁴Z̃₄ = 192 everywhere, so the 3-point stencil is off by h²·16
        let h = 1e-3;
        let x = Q::new(0.3, -0.2, 0.5, 0.1);
        let basis = [Q::ONE, Q::I, Q::J, Q::K];
        let lap3: f64 = basis
            .iter()
            .map(|&e| (zonal(4, x + e * h) - 2.0 * zonal(4, x) + zonal(4, x - e * h)) / (h * h))
            .sum();
        assert!((lap3 - 16.0 * h * h).abs() < 1e-8, "{lap3}");
    }

    #[test]
    fn zonal_harmonics_are_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let x = random_unit(&mut rng) * rng.random_range(0.5..1.5);
            for k in 1..=6 {
                let lap = laplacian(|y| zonal(k, y), x, 1e-3);
                assert!(lap.abs() <= 1e-5, "k={k} lap={lap}");
            }
        }
    }

    fn rotate_imaginary(x: Q, r: Q) -> Q {
        r * x * r.conj()
    }

    proptest! {
        #[test]
        fn power_identity(k in 0i64..=10, v in prop::array::uniform4(-1.0f64..1.0)) {
            let x = Q::from(v);
            let lhs = x.powi(k as u32);
            let rhs = Q::real(zonal(k, x)) - x.conj() * zonal(k - 1, x);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1e-300) + 1e-300);
        }

        #[test]
        fn gegenbauer_restriction(seed in any::<u64>(), k in 0i64..=12) {
            for x in sample_unit_sphere(seed, 10) {
                prop_assert!((zonal(k, x) - gegenbauer_u(k, x.w)).abs() <= 1e-12);
            }
        }

        #[test]
        fn almansi_reassembles(p in poly_strategy(8), v in prop::array::uniform4(-1.5f64..1.5)) {
            let x = Q::from(v);
            let pair = almansi(&p);
            prop_assert!((p.eval(x) - pair.eval(x)).norm() <= 1e-11 * p.eval(x).norm().max(1.0));
        }

        #[test]
        fn b_is_the_spherical_derivative(p in poly_strategy(8), v in prop::array::uniform4(-1.5f64..1.5)) {
            let x = Q::from(v);
            prop_assume!(x.im_norm() > 1e-3);
            let b = almansi(&p).b.eval(x);
            let sd = p.spherical_derivative_at(x, &Tolerances::default());
            prop_assert!((b - sd).norm() <= 1e-10 * b.norm().max(1.0));
        }

        #[test]
        fn a_is_spherical_value_plus_x0_b(p in poly_strategy(8), v in prop::array::uniform4(-1.5f64..1.5)) {
            let x = Q::from(v);
            let pair = almansi(&p);
            let rhs = p.spherical_value_at(x) + pair.b.eval(x) * x.w;
            prop_assert!((pair.a.eval(x) - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
        }

        #[test]
        fn axial_symmetry(p in poly_strategy(8), v in prop::array::uniform4(-1.5f64..1.5), seed in any::<u64>()) {
            let x = Q::from(v);
            let r = sample_unit_sphere(seed, 1)[0];
            let pair = almansi(&p);
            let a = pair.a.eval(x);
            prop_assert!((pair.a.eval(rotate_imaginary(x, r)) - a).norm() <= 1e-11 * a.norm().max(1.0));
        }

        #[test]
        fn restriction_matches_evaluation(p in poly_strategy(8), seed in any::<u64>()) {
            let x = sample_unit_sphere(seed, 1)[0];
            let v = biharmonic_restriction(p.coeffs(), x, &Tolerances::default()).unwrap();
            prop_assert!((v - p.eval(x)).norm() <= 1e-11 * p.eval(x).norm().max(1.0));
        }
    }
}
