//! Sup-norm of a quaternionic polynomial on the unit sphere S³.
//!
//! S³ is the union over `α ∈ [−1, 1]` of the 2-spheres
//! `{α + Iβ : I ∈ S}`, `β = √(1 − α²)`. With the Almansi pair `(A, B)` of `P`,
//! `a = A(y)` and `b = B(y)` are the same for every `y` on such a sphere, and
//! writing `v = a·conj(b)` gives
//!
//! ```text
//! |P(α + Iβ)|² = |a|² + |b|² − 2α·re(v) + 2β·⟨im(v), I⟩.
//! ```
//!
//! The modulus is therefore an affine function of the axis `I`: it is
//! constant on the sphere when `im(v) = 0`, and otherwise maximal at
//! `I = im(v)/|im(v)|` and minimal at the opposite axis. The global maximum
//! becomes a one-dimensional search over `α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::{almansi, AlmansiPair};
use crate::poly::QPolynomial;
use crate::quaternion::{sphere_point, Quaternion, UnitImaginary};

/// `|P(α + Iβ)|² = base + 2β·⟨tilt, I⟩` on one 2-sphere of S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceForm {
    pub alpha: f64,
    pub beta: f64,
    pub a: Quaternion,
    pub b: Quaternion,
    pub base: f64,
    pub tilt: [f64; 3],
}

impl SliceForm {
    pub fn tilt_norm(&self) -> f64 {
        let t = self.tilt;
        (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt()
    }

    /// Squared modulus at `α + Iβ`.
    pub fn modulus_sqr(&self, axis: UnitImaginary) -> f64 {
        let u = axis.vector();
        let dot = self.tilt[0] * u[0] + self.tilt[1] * u[1] + self.tilt[2] * u[2];
        self.base + 2.0 * self.beta * dot
    }

    pub fn point(&self, axis: UnitImaginary) -> Quaternion {
        sphere_point(self.alpha, self.beta, axis)
    }
}

/// Extrema of `|P|` on one 2-sphere of S³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceExtrema {
    pub alpha: f64,
    pub beta: f64,
    pub max: f64,
    pub min: f64,
    pub argmax_axis: Option<UnitImaginary>,
    pub argmin_axis: Option<UnitImaginary>,
    pub constant: bool,
}

/// Evaluates slice extrema of one polynomial for many values of `α`.
#[derive(Debug, Clone)]
pub struct SliceReducer {
    pair: AlmansiPair,
}

impl SliceReducer {
    pub fn new(p: &QPolynomial) -> Self {
        Self { pair: almansi(p) }
    }

    pub fn from_pair(pair: AlmansiPair) -> Self {
        Self { pair }
    }

    pub fn pair(&self) -> &AlmansiPair {
        &self.pair
    }

    pub fn form(&self, alpha: f64) -> Result<SliceForm> {
        if !(-1.0..=1.0).contains(&alpha) {
            return Err(Error::DomainError(alpha));
        }
        Ok(self.form_unchecked(alpha))
    }

    fn form_unchecked(&self, alpha: f64) -> SliceForm {
        let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
        let (a, b) = self.pair.on_sphere(alpha);
        let v = a * b.conj();
        SliceForm {
            alpha,
            beta,
            a,
            b,
            base: a.norm_sqr() + b.norm_sqr() - 2.0 * alpha * v.w,
            tilt: v.im_vector(),
        }
    }

    pub fn extrema(&self, alpha: f64) -> Result<SliceExtrema> {
        Ok(extrema_of(&self.form(alpha)?))
    }

    /// Largest modulus on the sphere at `alpha`; `alpha` must be in range.
    fn slice_max(&self, alpha: f64) -> f64 {
        let f = self.form_unchecked(alpha);
        (f.base + 2.0 * f.beta * f.tilt_norm()).max(0.0).sqrt()
    }
}

fn extrema_of(f: &SliceForm) -> SliceExtrema {
    let t = f.tilt_norm();
    let threshold = 1e-10 * (f.a.norm() * f.b.norm() + 1.0);
    if t < threshold || f.beta == 0.0 {
        // |P| is constant on the sphere; evaluate at an arbitrary axis
        let y = f.point(UnitImaginary::I);
        let m = (f.a - y.conj() * f.b).norm();
        return SliceExtrema {
            alpha: f.alpha,
            beta: f.beta,
            max: m,
            min: m,
            argmax_axis: None,
            argmin_axis: None,
            constant: true,
        };
    }
    // The tilt term enters with a plus sign, so the maximum sits at
    // +im(v)/|im(v)|; `slice_max_axis_orientation` checks this by brute force.
    let up = UnitImaginary::from_vector(f.tilt).expect("nonzero tilt");
    let down = UnitImaginary::from_vector([-f.tilt[0], -f.tilt[1], -f.tilt[2]]).expect("nonzero tilt");
    SliceExtrema {
        alpha: f.alpha,
        beta: f.beta,
        max: (f.base + 2.0 * f.beta * t).max(0.0).sqrt(),
        min: (f.base - 2.0 * f.beta * t).max(0.0).sqrt(),
        argmax_axis: Some(up),
        argmin_axis: Some(down),
        constant: false,
    }
}

/// Slice extrema of `P` on the 2-sphere of S³ with real part `alpha`.
pub fn slice_extrema(p: &QPolynomial, alpha: f64) -> Result<SliceExtrema> {
    SliceReducer::new(p).extrema(alpha)
}

/// Result of a sup-norm computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    /// `‖P‖ = max |P|` over S³.
    pub value: f64,
    /// A point of S³ where the value is attained.
    pub argmax: Quaternion,
    pub alpha_star: f64,
    /// Whether `|P|` is constant on the 2-sphere through `argmax`.
    pub constant_on_sphere: bool,
    /// Best value on the initial grid, before refinement.
    pub grid_value: f64,
    /// Width of the final refinement bracket (0 when the maximum is a grid
    /// endpoint that refinement did not improve).
    pub bracket_width: f64,
    pub grid_points: usize,
    /// `(α, slice max)` at every grid point, if requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNormOptions {
    /// Number of Chebyshev-spaced grid points in `[−1, 1]`.
    pub grid: usize,
    /// Number of local-maximum brackets refined by golden-section search.
    pub brackets: usize,
    /// Target bracket width in `α`.
    pub alpha_tol: f64,
    pub keep_profile: bool,
    /// Log a warning for degrees above 32, where the default grid may be too
    /// coarse for the oscillation of the profile.
    pub warn_high_degree: bool,
}

impl Default for SupNormOptions {
    fn default() -> Self {
        Self { grid: 2001, brackets: 3, alpha_tol: 1e-10, keep_profile: false, warn_high_degree: true }
    }
}

/// `‖P‖` with default options.
pub fn sup_norm(p: &QPolynomial) -> Result<ExtremumReport> {
    sup_norm_with(p, &SupNormOptions::default())
}

pub fn sup_norm_with(p: &QPolynomial, opts: &SupNormOptions) -> Result<ExtremumReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if opts.warn_high_degree && p.degree() > 32 {
        log::warn!(
            "degree {} exceeds 32; the {}-point grid may miss local maxima, consider a denser grid",
            p.degree(),
            opts.grid
        );
    }
    let reducer = SliceReducer::new(p);
    let search = maximize_profile(|a| reducer.slice_max(a), opts);
    let ext = reducer.extrema(search.alpha)?;
    let axis = ext.argmax_axis.unwrap_or(UnitImaginary::I);
    Ok(ExtremumReport {
        value: search.value,
        argmax: sphere_point(search.alpha, ext.beta, axis),
        alpha_star: search.alpha,
        constant_on_sphere: ext.constant,
        grid_value: search.grid_value,
        bracket_width: search.bracket_width,
        grid_points: search.grid_points,
        profile: search.profile,
    })
}

/// Minimum of `|P|` over S³ and a point attaining it.
pub fn sphere_min(p: &QPolynomial, opts: &SupNormOptions) -> Result<(f64, Quaternion)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let reducer = SliceReducer::new(p);
    let search = maximize_profile(|a| -extrema_of(&reducer.form_unchecked(a)).min, opts);
    let ext = reducer.extrema(search.alpha)?;
    let axis = ext.argmin_axis.unwrap_or(UnitImaginary::I);
    Ok((-search.value, sphere_point(search.alpha, ext.beta, axis)))
}

struct ProfileSearch {
    alpha: f64,
    value: f64,
    grid_value: f64,
    bracket_width: f64,
    grid_points: usize,
    profile: Option<Vec<(f64, f64)>>,
}

/// Maximizes `f` over `[−1, 1]`: Chebyshev grid, then golden-section
/// refinement of the best local-maximum brackets.
fn maximize_profile(f: impl Fn(f64) -> f64, opts: &SupNormOptions) -> ProfileSearch {
    let n = opts.grid.max(3);
    let alphas: Vec<f64> = (0..n)
        .map(|j| -(std::f64::consts::PI * j as f64 / (n - 1) as f64).cos())
        .map(|a: f64| a.clamp(-1.0, 1.0))
        .collect();
    let values: Vec<f64> = alphas.iter().map(|&a| f(a)).collect();

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&j| {
            let left = j == 0 || values[j] >= values[j - 1];
            let right = j == n - 1 || values[j] >= values[j + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    peaks.truncate(opts.brackets.max(1));

    let grid_best = best_of(alphas.iter().copied().zip(values.iter().copied()));
    let mut candidates = vec![(grid_best.0, grid_best.1, 0.0)];
    for &j in &peaks {
        let lo = alphas[j.saturating_sub(1)];
        let hi = alphas[(j + 1).min(n - 1)];
        candidates.push(golden_max(&f, lo, hi, opts.alpha_tol));
    }
    let (alpha, value, bracket_width) = candidates
        .iter()
        .copied()
        .reduce(|best, c| if prefer(c.0, c.1, best.0, best.1) { c } else { best })
        .expect("at least the grid candidate");
    ProfileSearch {
        alpha,
        value,
        grid_value: grid_best.1,
        bracket_width,
        grid_points: n,
        profile: opts.keep_profile.then(|| alphas.into_iter().zip(values).collect()),
    }
}

/// Candidate ordering: larger value wins, ties within `1e-12` go to the
/// smaller `α`.
fn prefer(alpha: f64, value: f64, best_alpha: f64, best_value: f64) -> bool {
    if (value - best_value).abs() <= 1e-12 {
        alpha < best_alpha
    } else {
        value > best_value
    }
}

fn best_of(it: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    it.reduce(|best, c| if prefer(c.0, c.1, best.0, best.1) { c } else { best })
        .expect("nonempty grid")
}

/// Golden-section maximization on `[lo, hi]`. Returns the best point seen,
/// its value and the final bracket width.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = if prefer(c, fc, d, fd) { (c, fc) } else { (d, fd) };
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
            if prefer(c, fc, best.0, best.1) {
                best = (c, fc);
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
            if prefer(d, fd, best.0, best.1) {
                best = (d, fd);
            }
        }
    }
    (best.0, best.1, hi - lo)
}

/// One row of the `α`-profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub alpha: f64,
    pub slice_max: f64,
    pub slice_min: f64,
}

/// Slice extrema at `n ≥ 2` evenly spaced values of `α` in `[−1, 1]`.
pub fn modulus_profile(p: &QPolynomial, n: usize) -> Vec<ProfileRow> {
    let reducer = SliceReducer::new(p);
    let n = n.max(2);
    (0..n)
        .map(|j| {
            let alpha = (-1.0 + 2.0 * j as f64 / (n - 1) as f64).clamp(-1.0, 1.0);
            let e = extrema_of(&reducer.form_unchecked(alpha));
            ProfileRow { alpha, slice_max: e.max, slice_min: e.min }
        })
        .collect()
}
