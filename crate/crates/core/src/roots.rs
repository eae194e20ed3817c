//! Localization of the zero set of a quaternionic polynomial.
//!
//! Every zero of `P` is a zero of the real polynomial `N(P) = P·P^c`. The
//! complex roots `α ± iβ` of `N(P)` therefore name the circular sets
//! `α + Sβ` that can carry zeros of `P`. The roots are found with the
//! Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::QPolynomial;
use crate::tolerance::Tolerances;

/// A circular set `{α + Iβ : I ∈ S}` (a single real point when `β = 0`).
///
/// For `β > 0` the multiplicity counts the roots `α + iβ` of the normal
/// polynomial in the upper half plane; for `β = 0` it counts the real roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootSphere {
    pub alpha: f64,
    pub beta: f64,
    pub multiplicity: usize,
}

impl RootSphere {
    /// Modulus shared by every point of the set.
    pub fn radius(&self) -> f64 {
        self.alpha.hypot(self.beta)
    }
}

const MAX_SWEEPS: usize = 200;
const STEP_TOL: f64 = 1e-13;

/// Circular sets containing every zero of `P`, sorted by `(α, β)`.
pub fn root_spheres(p: &QPolynomial, tol: &Tolerances) -> Result<Vec<RootSphere>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let normal: Vec<f64> = p.normal().coeffs().iter().map(|c| c.w).collect();
    let roots = real_poly_roots(&normal)?;
    Ok(group_roots(&normal, &roots, tol.root_cluster))
}

/// All complex roots of `Σ c_k z^k` (real coefficients, `c` trimmed).
pub fn real_poly_roots(c: &[f64]) -> Result<Vec<Complex64>> {
    // exact zero roots are split off so the iteration never has to approach 0
    let zeros = c.iter().take_while(|&&x| x == 0.0).count();
    let rest = &c[zeros..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if rest.len() > 1 {
        roots.extend(aberth(rest)?);
    }
    Ok(roots)
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * r + a.abs();
    }
    (p, dp, bound)
}

fn aberth(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let ratio = c[..n].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    let radius = (1.0 + ratio).sqrt();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4 + 0.1 * (k as f64).sin();
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];
    let noise = 8.0 * n as f64 * f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp, bound) = horner(c, z[k]);
            if p.norm() <= noise * bound {
                done[k] = true;
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= STEP_TOL * z[k].norm() {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    let residuals: Vec<f64> = z.iter().map(|&r| horner(c, r).0.norm()).collect();
    Err(Error::NumericalNonconvergence {
        sweeps: MAX_SWEEPS,
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        residuals,
    })
}

fn derivative_coeffs(c: &[f64], order: usize) -> Vec<f64> {
    let mut d = c.to_vec();
    for _ in 0..order {
        d = d.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect();
    }
    d
}

/// Newton on the `(m−1)`-th derivative, where a root of multiplicity `m`
/// is simple. Keeps the starting point if the iteration wanders off.
fn polish(c: &[f64], start: Complex64, multiplicity: usize) -> Complex64 {
    let d = derivative_coeffs(c, multiplicity - 1);
    if d.len() < 2 {
        return start;
    }
    let mut z = start;
    let mut last_step = f64::INFINITY;
    for _ in 0..30 {
        let (p, dp, _) = horner(&d, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if step.norm().is_nan() || step.norm() >= last_step {
            break;
        }
        z -= step;
        last_step = step.norm();
        if last_step <= f64::EPSILON * z.norm() {
            break;
        }
    }
    if (z - start).norm() <= 1e-3 * (1.0 + start.norm()) {
        z
    } else {
        start
    }
}

/// Clusters the roots of the real polynomial `c` into circular sets.
/// Cluster centers start at the mean and are polished on the derivative in
/// which the multiple root becomes simple.
fn group_roots(c: &[f64], roots: &[Complex64], cluster_tol: f64) -> Vec<RootSphere> {
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        let near = clusters.iter_mut().find(|cl| {
            cl.iter().any(|&m| (m - r).norm() <= cluster_tol * (1.0 + r.norm()))
        });
        match near {
            Some(cl) => cl.push(r),
            None => clusters.push(vec![r]),
        }
    }
    let mut out: Vec<RootSphere> = Vec::new();
    for cl in clusters {
        let mut mean = cl.iter().sum::<Complex64>() / cl.len() as f64;
        let real = mean.im.abs() <= cluster_tol * (1.0 + mean.norm());
        if real {
            mean.im = 0.0;
        } else if mean.im < 0.0 {
            continue;
        }
        let center = if mean.norm() == 0.0 { mean } else { polish(c, mean, cl.len()) };
        let beta = if real { 0.0 } else { center.im };
        out.push(RootSphere { alpha: center.re, beta, multiplicity: cl.len() });
    }
    out.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.beta.total_cmp(&b.beta)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::cubic_q;
    use crate::quaternion::Quaternion as Q;

    fn spheres(p: &QPolynomial) -> Vec<RootSphere> {
        root_spheres(p, &Tolerances::default()).unwrap()
    }

    #[test]
    fn counterexample_q() {
        let s = spheres(&cubic_q());
        assert_eq!(s.len(), 2, "{s:?}");
        let origin = s.iter().find(|r| r.beta == 0.0).unwrap();
        assert_eq!((origin.alpha, origin.multiplicity), (0.0, 2));
        let unit = s.iter().find(|r| r.beta > 0.0).unwrap();
        assert!(unit.alpha.abs() < 1e-12 && (unit.beta - 1.0).abs() < 1e-12, "{unit:?}");
        assert_eq!(unit.multiplicity, 2);
    }

    #[test]
    fn imaginary_unit_sphere() {
        let s = spheres(&QPolynomial::from_real(&[1.0, 0.0, 1.0]));
        assert_eq!(s.len(), 1);
        assert!(s[0].alpha.abs() < 1e-12 && (s[0].beta - 1.0).abs() < 1e-12);
        assert_eq!(s[0].multiplicity, 2);
    }

    #[test]
    fn single_linear_root() {
        let r = Q::new(1.0, 1.0, -1.0, 1.0);
        let s = spheres(&QPolynomial::linear(r));
        assert_eq!(s.len(), 1);
        assert!((s[0].radius() - 2.0).abs() < 1e-12);
        assert!((s[0].alpha - 1.0).abs() < 1e-12);
        assert_eq!(s[0].multiplicity, 1);
    }

    #[test]
    fn zeros_lie_on_reported_spheres() {
        let roots = [Q::new(0.2, 0.5, 0.1, -0.3), Q::new(-0.7, 0.0, 0.4, 0.4), Q::real(0.5)];
        let p = roots
            .iter()
            .fold(QPolynomial::constant(Q::ONE), |acc, &r| acc.star_mul(&QPolynomial::linear(r)));
        let s = spheres(&p);
        // the first factor's root is a genuine zero of P
        let z = roots[0];
        assert!(p.eval(z).norm() < 1e-14);
        assert!(s.iter().any(|sp| (sp.alpha - z.w).abs() < 1e-9 && (sp.beta - z.im_norm()).abs() < 1e-9));
        let bound = s.iter().map(RootSphere::radius).fold(0.0, f64::max);
        assert!(roots.iter().all(|r| r.norm() <= bound + 1e-9));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(root_spheres(&QPolynomial::zero(), &Tolerances::default()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(spheres(&QPolynomial::constant(Q::J)).is_empty());
    }

    #[test]
    fn wilkinson_like_real_roots() {
        let c: Vec<f64> = (1..=8)
            .fold(vec![1.0], |acc, r| {
                let mut out = vec![0.0; acc.len() + 1];
                for (k, &a) in acc.iter().enumerate() {
                    out[k + 1] += a;
                    out[k] -= a * r as f64 / 8.0;
                }
                out
            });
        let mut roots = real_poly_roots(&c).unwrap();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (k, r) in roots.iter().enumerate() {
            assert!((r.re - (k + 1) as f64 / 8.0).abs() < 1e-8 && r.im.abs() < 1e-8);
        }
    }
}
