//! Seeded generators for the randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extremal::{sphere_min, sup_norm, SupNormOptions};
use crate::poly::QPolynomial;
use crate::quaternion::{random_unit, Quaternion};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Quaternion with components uniform in `[−1, 1]`.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Degree-`d` polynomial with coefficients uniform in `[−1, 1]⁴`. The
/// leading coefficient is redrawn until nonzero.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, d: usize) -> QPolynomial {
    let mut coeffs: Vec<Quaternion> = (0..=d).map(|_| random_quaternion(rng)).collect();
    while coeffs[d].norm() < 1e-3 {
        coeffs[d] = random_quaternion(rng);
    }
    QPolynomial::new(coeffs)
}

/// Uniform point of the closed ball of the given radius.
pub fn random_in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Quaternion {
    random_unit(rng) * (radius * rng.random_range(0.0f64..=1.0).powf(0.25))
}

/// A complex number of `C_i`, embedded as `re + i·im`.
fn complex<R: Rng + ?Sized>(rng: &mut R, max_modulus: f64) -> Quaternion {
    let r = max_modulus * rng.random_range(0.0f64..=1.0).sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Quaternion::new(r * t.cos(), r * t.sin(), 0.0, 0.0)
}

/// A pair `(P, Q)` meeting the hypotheses of the Bernstein comparison
/// theorem with `I = i`.
///
/// `Q = c·Π(X − r_m)` has `degree` roots uniform in the closed unit disc of
/// `C_i`. `P = Q·u·t + R·s` with `|u| = 1`, `t ∈ [0, 1]` and `R` arbitrary of
/// degree at most `degree`, where `s` is chosen so that
/// `s‖R‖ ≤ (1 − t)·min_{S³}|Q|`; hence `|P| ≤ |Q|` on S³.
pub fn hypothesis_pair(seed: u64, degree: usize) -> (QPolynomial, QPolynomial) {
    let mut rng = rng(seed);
    let degree = degree.max(1);
    let lead = loop {
        let c = complex(&mut rng, 2.0);
        if c.norm() > 0.5 {
            break c;
        }
    };
    let q = (0..degree).fold(QPolynomial::constant(lead), |acc, _| {
        acc.star_mul(&QPolynomial::linear(complex(&mut rng, 1.0)))
    });
    let u = random_unit(&mut rng);
    let t: f64 = rng.random_range(0.0..=1.0);
    let r_degree = rng.random_range(0..=degree);
    let r = random_polynomial(&mut rng, r_degree);
    let opts = SupNormOptions::default();
    let q_min = sphere_min(&q, &opts).map(|(m, _)| m).unwrap_or(0.0);
    let r_norm = sup_norm(&r).map(|e| e.value).unwrap_or(1.0);
    let s = 0.999 * (1.0 - t) * q_min / r_norm;
    let p = QPolynomial::new(
        (0..=degree)
            .map(|k| {
                let from_q = q.coeffs().get(k).copied().unwrap_or_default() * u * t;
                let from_r = r.coeffs().get(k).copied().unwrap_or_default() * s;
                from_q + from_r
            })
            .collect(),
    );
    if p.is_zero() {
        return (q.mul_right(u * 0.5), q);
    }
    (p, q)
}
