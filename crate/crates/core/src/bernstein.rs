//! Numerical checks of Bernstein-type statements for quaternionic
//! polynomials.
//!
//! * [`check_inequality`]: `‖P'‖ ≤ d‖P‖` for `P` of degree `d`.
//! * [`equality_case`]: equality forces `P = X^d a`.
//! * [`check_theorem`]: the comparison theorem. If `deg P ≤ deg Q`, every
//!   coefficient of `Q` lies in one slice `C_I`, the zeros of `Q` lie in the
//!   closed unit ball and `|P| ≤ |Q|` on S³, then `|P'| ≤ |Q'|` on the unit
//!   circle of `C_I`.
//! * [`counterexample_report`]: the pair `(X−i)·(X−j)·(X−k)`, `2X·(X−i)·(X−j)`,
//!   which satisfies every hypothesis except the slice condition on `Q` and
//!   violates the conclusion.
//!
//! Statements over all of S³ are checked on finite samples. Reports carry the
//! sampled margins and sample sizes; they are evidence, not proofs.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{sup_norm_with, SliceForm, SliceReducer, SupNormOptions};
use crate::poly::QPolynomial;
use crate::quaternion::{random_unit_imaginary, sample_unit_sphere, sphere_point, Quaternion, UnitImaginary};
use crate::random;
use crate::roots::root_spheres;
use crate::tolerance::Tolerances;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_b3e5;

/// Margin below which `‖P'‖ ≤ d‖P‖` counts as violated.
pub const INEQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    /// Positive when satisfied with room to spare.
    pub margin: f64,
    /// Points or directions demonstrating a violation.
    pub witness: Vec<Quaternion>,
    pub detail: String,
}

/// The conclusion evaluated at one caller-supplied point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub point: Quaternion,
    /// `|Q'(x)| − |P'(x)|`.
    pub margin: f64,
    /// Whether the point lies in the slice where the conclusion is claimed.
    pub in_domain: bool,
}

/// Where the conclusion `|P'| ≤ |Q'|` was tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConclusionDomain {
    /// The unit circle of the slice `C_I` of `Q`.
    SliceCircle,
    /// All of S³: `Q` has real coefficients, or no slice contains its
    /// coefficients and the check is diagnostic.
    WholeSphere,
    /// Global sup-norms, for the inequality `‖P'‖ ≤ d‖P‖`.
    SupNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub is_monomial: bool,
    /// `‖P'‖ / (d‖P‖)`.
    pub ratio: f64,
    /// Point where `|P'| = d‖P‖` is attained, when it is.
    pub witness: Option<Quaternion>,
    /// Equality attained by a polynomial that is not a monomial.
    pub contradiction: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion_satisfied: bool,
    pub conclusion_margin: f64,
    pub worst_point: Quaternion,
    pub conclusion_domain: ConclusionDomain,
    pub slice_axis: Option<UnitImaginary>,
    /// Number of points at which sampled quantities were evaluated.
    pub samples: usize,
    #[serde(default)]
    pub probes: Vec<Probe>,
    #[serde(default)]
    pub values: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityCase>,
    #[serde(default)]
    pub near_equality: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn hypotheses_satisfied(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// 0 when everything passes, 1 when a hypothesis is violated, 2 when the
    /// conclusion (or the equality characterization) fails with all
    /// hypotheses satisfied.
    pub fn exit_code(&self) -> i32 {
        if !self.hypotheses_satisfied() {
            1
        } else if !self.conclusion_satisfied || self.equality.as_ref().is_some_and(|e| e.contradiction) {
            2
        } else {
            0
        }
    }
}

fn norms_of(p: &QPolynomial, opts: &SupNormOptions) -> Result<(f64, f64, Quaternion)> {
    let d = p.degree() as f64;
    let np = sup_norm_with(p, opts)?;
    let dp = sup_norm_with(&p.derivative(), opts)?;
    Ok((d * np.value, dp.value, dp.argmax))
}

/// Checks `‖P'‖ ≤ d‖P‖`.
pub fn check_inequality(p: &QPolynomial) -> Result<CheckReport> {
    check_inequality_with(p, &SupNormOptions::default())
}

pub fn check_inequality_with(p: &QPolynomial, opts: &SupNormOptions) -> Result<CheckReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.degree();
    let mut report = CheckReport {
        hypotheses: Vec::new(),
        conclusion_satisfied: true,
        conclusion_margin: 0.0,
        worst_point: Quaternion::ONE,
        conclusion_domain: ConclusionDomain::SupNorm,
        slice_axis: None,
        samples: 0,
        probes: Vec::new(),
        values: BTreeMap::new(),
        equality: None,
        near_equality: false,
        notes: Vec::new(),
    };
    report.values.insert("degree".into(), d as f64);
    if d == 0 {
        report.notes.push("constant polynomial: P' = 0 and the inequality is trivial".into());
        report.values.insert("norm".into(), p.coeffs()[0].norm());
        report.values.insert("derivative_norm".into(), 0.0);
        return Ok(report);
    }
    let np = sup_norm_with(p, opts)?;
    let ndp = sup_norm_with(&p.derivative(), opts)?;
    let bound = d as f64 * np.value;
    let margin = bound - ndp.value;
    report.conclusion_margin = margin;
    report.conclusion_satisfied = margin >= -INEQUALITY_TOL;
    report.worst_point = ndp.argmax;
    report.samples = np.grid_points + ndp.grid_points;
    report.values.insert("norm".into(), np.value);
    report.values.insert("derivative_norm".into(), ndp.value);
    report.values.insert("ratio".into(), ndp.value / bound);
    report.near_equality = margin <= 1e-6 * bound;
    if report.near_equality {
        report.equality = Some(equality_from_norms(p, bound, ndp.value, ndp.argmax));
    }
    Ok(report)
}

/// Decides whether `P` is a monomial `X^d a` and whether equality in the
/// inequality is attained.
pub fn equality_case(p: &QPolynomial) -> Result<EqualityCase> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let (bound, dnorm, at) = norms_of(p, &SupNormOptions::default())?;
    Ok(equality_from_norms(p, bound, dnorm, at))
}

fn is_monomial(p: &QPolynomial) -> bool {
    let lead = p.leading().norm();
    p.coeffs()[..p.degree()].iter().all(|c| c.norm() <= 1e-10 * lead)
}

fn equality_from_norms(p: &QPolynomial, bound: f64, dnorm: f64, at: Quaternion) -> EqualityCase {
    let ratio = dnorm / bound;
    let attained = ratio >= 1.0 - 1e-9;
    let monomial = is_monomial(p);
    EqualityCase {
        is_monomial: monomial,
        ratio,
        witness: attained.then_some(at),
        contradiction: attained && !monomial,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremOptions {
    /// Number of `α` values in the slice scan of S³.
    pub grid: usize,
    /// Random axes tried on every 2-sphere of the scan, in addition to the
    /// closed-form extremal axis.
    pub axes_per_slice: usize,
    /// Uniform random points of S³ evaluated directly.
    pub global_samples: usize,
    /// Points on the unit circle of `C_I` for the conclusion.
    pub circle_points: usize,
    pub seed: u64,
    /// Extra points where the conclusion is evaluated and reported.
    pub probes: Vec<Quaternion>,
    /// Allowed negative margin for `|P| ≤ |Q|` and for the conclusion.
    pub tol: f64,
    pub tolerances: Tolerances,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        Self {
            grid: 2001,
            axes_per_slice: 1000,
            global_samples: 100_000,
            circle_points: 10_000,
            seed: DEFAULT_SEED,
            probes: Vec::new(),
            tol: 1e-9,
            tolerances: Tolerances::default(),
        }
    }
}

/// Minimum of `|big| − |small|` over the slice scan of S³, with the point
/// attaining it.
struct SphereScan<'a> {
    small: &'a SliceReducer,
    big: &'a SliceReducer,
}

impl SphereScan<'_> {
    fn margin_at(fs: &SliceForm, fb: &SliceForm, axis: UnitImaginary) -> f64 {
        fb.modulus_sqr(axis).max(0.0).sqrt() - fs.modulus_sqr(axis).max(0.0).sqrt()
    }

    fn run<R: Rng>(&self, grid: usize, axes: usize, rng: &mut R) -> (f64, Quaternion, usize) {
        let n = grid.max(2);
        let mut worst = (f64::INFINITY, Quaternion::ONE);
        let mut count = 0;
        for j in 0..n {
            let alpha = (-(std::f64::consts::PI * j as f64 / (n - 1) as f64).cos()).clamp(-1.0, 1.0);
            let fs = self.small.form(alpha).expect("alpha in range");
            let fb = self.big.form(alpha).expect("alpha in range");
            // |big|² − |small|² is affine in the axis and smallest along
            // tilt(small) − tilt(big)
            let dir = [fs.tilt[0] - fb.tilt[0], fs.tilt[1] - fb.tilt[1], fs.tilt[2] - fb.tilt[2]];
            let extremal = UnitImaginary::from_vector(dir).unwrap_or(UnitImaginary::I);
            let candidates = std::iter::once(extremal).chain((0..axes).map(|_| random_unit_imaginary(rng)));
            for axis in candidates {
                let m = Self::margin_at(&fs, &fb, axis);
                count += 1;
                if m < worst.0 {
                    worst = (m, sphere_point(alpha, fs.beta, axis));
                }
            }
        }
        (worst.0, worst.1, count)
    }
}

/// `min (|big(x)| − |small(x)|)` over the given points, first index on ties.
fn min_margin(small: &QPolynomial, big: &QPolynomial, points: &[Quaternion]) -> (f64, Quaternion) {
    let margins: Vec<f64> = points.par_iter().map(|&x| big.eval(x).norm() - small.eval(x).norm()).collect();
    margins
        .iter()
        .zip(points)
        .fold((f64::INFINITY, Quaternion::ONE), |acc, (&m, &x)| if m < acc.0 { (m, x) } else { acc })
}

/// Checks the hypotheses and the conclusion of the comparison theorem for
/// `(P, Q)`. Every verdict is reported independently.
pub fn check_theorem(p: &QPolynomial, q: &QPolynomial, opts: &TheoremOptions) -> Result<CheckReport> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let tol = &opts.tolerances;
    let mut rng = random::rng(opts.seed);
    let mut hypotheses = Vec::with_capacity(4);
    let mut samples = 0;

    let (dp, dq) = (p.degree(), q.degree());
    hypotheses.push(Hypothesis {
        name: "degree".into(),
        satisfied: dp <= dq,
        margin: dq as f64 - dp as f64,
        witness: Vec::new(),
        detail: format!("deg P = {dp}, deg Q = {dq}"),
    });

    let axis = q.slice_axis(tol);
    let preserving = q.is_slice_preserving(tol);
    hypotheses.push(match axis {
        Some(i) => Hypothesis {
            name: "slice".into(),
            satisfied: true,
            margin: tol.slice_membership - slice_spread(q, i),
            witness: Vec::new(),
            detail: if preserving {
                "Q has real coefficients".into()
            } else {
                format!("every coefficient of Q lies in C_I, I = {}", i.quaternion())
            },
        },
        None => {
            let dirs = independent_directions(q);
            Hypothesis {
                name: "slice".into(),
                satisfied: false,
                margin: -dirs.2,
                witness: vec![dirs.0, dirs.1],
                detail: "imaginary parts of the coefficients of Q span more than one direction".into(),
            }
        }
    });

    let spheres = root_spheres(q, tol)?;
    let outer = spheres.iter().copied().max_by(|a, b| a.radius().total_cmp(&b.radius()));
    let radius = outer.map_or(0.0, |s| s.radius());
    let roots_ok = radius <= 1.0 + 1e-9;
    hypotheses.push(Hypothesis {
        name: "zeros_in_ball".into(),
        satisfied: roots_ok,
        margin: 1.0 - radius,
        witness: match (roots_ok, outer) {
            (false, Some(s)) => vec![sphere_point(s.alpha, s.beta, UnitImaginary::I)],
            _ => Vec::new(),
        },
        detail: format!("{} circular zero sets, largest modulus {radius:.6}", spheres.len()),
    });

    let (rp, rq) = (SliceReducer::new(p), SliceReducer::new(q));
    let (scan_margin, scan_point, scanned) =
        SphereScan { small: &rp, big: &rq }.run(opts.grid, opts.axes_per_slice, &mut rng);
    let globals = sample_unit_sphere(rng.random(), opts.global_samples);
    let (global_margin, global_point) = min_margin(p, q, &globals);
    samples += scanned + globals.len();
    let (h4_margin, h4_point) =
        if global_margin < scan_margin { (global_margin, global_point) } else { (scan_margin, scan_point) };
    let h4_ok = h4_margin >= -opts.tol;
    hypotheses.push(Hypothesis {
        name: "modulus_bound".into(),
        satisfied: h4_ok,
        margin: h4_margin,
        witness: if h4_ok { Vec::new() } else { vec![h4_point] },
        detail: format!("min |Q| − |P| over {} sampled points of S³", scanned + globals.len()),
    });

    let (pd, qd) = (p.derivative(), q.derivative());
    let domain = match axis {
        Some(_) if !preserving => ConclusionDomain::SliceCircle,
        _ => ConclusionDomain::WholeSphere,
    };
    let (mut margin, mut worst) = match (domain, axis) {
        (ConclusionDomain::SliceCircle, Some(i)) => {
            let n = opts.circle_points.max(1);
            let circle: Vec<Quaternion> = (0..n)
                .map(|j| {
                    let t = std::f64::consts::TAU * j as f64 / n as f64;
                    sphere_point(t.cos(), t.sin(), i)
                })
                .collect();
            samples += circle.len();
            min_margin(&pd, &qd, &circle)
        }
        _ => {
            let (rpd, rqd) = (SliceReducer::new(&pd), SliceReducer::new(&qd));
            let (m, x, c) = SphereScan { small: &rpd, big: &rqd }.run(opts.grid, opts.axes_per_slice, &mut rng);
            samples += c;
            (m, x)
        }
    };
    let probes: Vec<Probe> = opts
        .probes
        .iter()
        .map(|&x| {
            let in_domain = match (domain, axis) {
                (ConclusionDomain::SliceCircle, Some(i)) => {
                    (x.norm() - 1.0).abs() <= tol.on_sphere
                        && x.slice_project(i).1.norm() <= tol.slice_membership
                }
                _ => (x.norm() - 1.0).abs() <= tol.on_sphere,
            };
            Probe { point: x, margin: qd.eval(x).norm() - pd.eval(x).norm(), in_domain }
        })
        .collect();
    for pr in probes.iter().filter(|pr| pr.in_domain) {
        if pr.margin < margin {
            margin = pr.margin;
            worst = pr.point;
        }
    }

    let mut notes = Vec::new();
    if axis.is_none() {
        notes.push("no slice contains the coefficients of Q; conclusion probed on all of S³ as a diagnostic".into());
    }
    let mut values = BTreeMap::new();
    values.insert("zero_set_radius".into(), radius);
    values.insert("modulus_bound_margin".into(), h4_margin);
    Ok(CheckReport {
        hypotheses,
        conclusion_satisfied: margin >= -opts.tol,
        conclusion_margin: margin,
        worst_point: worst,
        conclusion_domain: domain,
        slice_axis: axis,
        samples,
        probes,
        values,
        equality: None,
        near_equality: false,
        notes,
    })
}

fn slice_spread(q: &QPolynomial, axis: UnitImaginary) -> f64 {
    q.coeffs().iter().map(|c| c.im().slice_project(axis).1.norm()).fold(0.0, f64::max)
}

/// Two imaginary coefficient parts spanning different directions, and the
/// size of the component of the second orthogonal to the first.
fn independent_directions(q: &QPolynomial) -> (Quaternion, Quaternion, f64) {
    let ims: Vec<Quaternion> = q.coeffs().iter().map(|c| c.im()).collect();
    let first = ims.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
    let Ok(axis) = first.axis_with(0.0) else {
        return (first, first, 0.0);
    };
    let (second, spread) = ims
        .iter()
        .map(|&v| (v, v.slice_project(axis).1.norm()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((first, 0.0));
    (first, second, spread)
}

/// `(X−i)·(X−j)·(X−k)`.
pub fn counterexample_p() -> QPolynomial {
    QPolynomial::linear(Quaternion::I)
        .star_mul(&QPolynomial::linear(Quaternion::J))
        .star_mul(&QPolynomial::linear(Quaternion::K))
}

/// `2X·(X−i)·(X−j)`.
pub fn counterexample_q() -> QPolynomial {
    QPolynomial::monomial(1, Quaternion::real(2.0))
        .star_mul(&QPolynomial::linear(Quaternion::I))
        .star_mul(&QPolynomial::linear(Quaternion::J))
}

/// The witness `(1 + 9i + 4j − √2k)/10` of `|P'(y)| > |Q'(y)|`.
pub fn counterexample_witness() -> Quaternion {
    Quaternion::new(1.0, 9.0, 4.0, -std::f64::consts::SQRT_2) / 10.0
}

/// The expanded forms of `P`, `Q`, `P'`, `Q'` as written out by hand.
pub fn counterexample_expansions() -> [QPolynomial; 4] {
    let q = Quaternion::new;
    [
        QPolynomial::new(vec![Quaternion::ONE, q(0.0, 1.0, -1.0, 1.0), q(0.0, -1.0, -1.0, -1.0), Quaternion::ONE]),
        QPolynomial::new(vec![Quaternion::ZERO, q(0.0, 0.0, 0.0, 2.0), q(0.0, -2.0, -2.0, 0.0), Quaternion::real(2.0)]),
        QPolynomial::new(vec![q(0.0, 1.0, -1.0, 1.0), q(0.0, -2.0, -2.0, -2.0), Quaternion::real(3.0)]),
        QPolynomial::new(vec![q(0.0, 0.0, 0.0, 2.0), q(0.0, -4.0, -4.0, 0.0), Quaternion::real(6.0)]),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: QPolynomial,
    pub q: QPolynomial,
    pub witness: Quaternion,
    pub witness_norm_error: f64,
    pub p_prime_sq: f64,
    pub q_prime_sq: f64,
    /// `(7/25)(5 + √2)`.
    pub expected_p_prime_sq: f64,
    /// `(4/25)(10 − 3√2)`.
    pub expected_q_prime_sq: f64,
    /// Star products and derivatives equal the hand expansions exactly.
    pub expansions_match: bool,
    /// `min (|Q| − |P|)` over the sampled points of S³.
    pub sampled_margin: f64,
    pub sampled_points: usize,
    pub check: CheckReport,
}

impl CounterexampleReport {
    /// Everything reproduces: exact expansions, both squared moduli within
    /// `1e-12`, `|P| ≤ |Q|` on the sample, the slice hypothesis violated and
    /// the conclusion violated at the witness.
    pub fn reproduced(&self) -> bool {
        self.expansions_match
            && (self.p_prime_sq - self.expected_p_prime_sq).abs() <= 1e-12
            && (self.q_prime_sq - self.expected_q_prime_sq).abs() <= 1e-12
            && self.witness_norm_error <= 1e-15
            && self.sampled_margin >= -1e-9
            && self.check.hypothesis("slice").is_some_and(|h| !h.satisfied)
            && !self.check.conclusion_satisfied
            && self.check.probes.iter().any(|pr| pr.point == self.witness && pr.margin < 0.0)
    }
}

/// Reproduces the counterexample showing that the slice condition on `Q`
/// cannot be dropped.
pub fn counterexample_report(seed: u64, samples: usize) -> Result<CounterexampleReport> {
    let p = counterexample_p();
    let q = counterexample_q();
    let y = counterexample_witness();
    let [ep, eq, epd, eqd] = counterexample_expansions();
    let (pd, qd) = (p.derivative(), q.derivative());
    let expansions_match = p == ep && q == eq && pd == epd && qd == eqd;
    let sqrt2 = std::f64::consts::SQRT_2;
    let points = sample_unit_sphere(seed, samples);
    let (sampled_margin, _) = min_margin(&p, &q, &points);
    let opts = TheoremOptions { seed, global_samples: samples, probes: vec![y], ..Default::default() };
    let check = check_theorem(&p, &q, &opts)?;
    Ok(CounterexampleReport {
        witness: y,
        witness_norm_error: (y.norm() - 1.0).abs(),
        p_prime_sq: pd.eval(y).norm_sqr(),
        q_prime_sq: qd.eval(y).norm_sqr(),
        expected_p_prime_sq: 7.0 / 25.0 * (5.0 + sqrt2),
        expected_q_prime_sq: 4.0 / 25.0 * (10.0 - 3.0 * sqrt2),
        expansions_match,
        sampled_margin,
        sampled_points: points.len(),
        check,
        p,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::sup_norm;
    use crate::random::{hypothesis_pair, random_polynomial};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Quaternion as Q;

    fn light() -> TheoremOptions {
        TheoremOptions { grid: 401, axes_per_slice: 20, global_samples: 5_000, circle_points: 2_000, ..Default::default() }
    }

    #[test]
    fn monomials_attain_equality() {
        let p = QPolynomial::monomial(4, Q::new(0.5, -1.0, 0.2, 0.0));
        let r = check_inequality(&p).unwrap();
        assert!(r.conclusion_margin.abs() <= 1e-12 * r.values["norm"]);
        assert!(r.conclusion_satisfied && r.near_equality);
        assert_eq!(r.exit_code(), 0);
        let eq = r.equality.unwrap();
        assert!(eq.is_monomial && !eq.contradiction && eq.witness.is_some());
    }

    #[test]
    fn counterexample_polynomial_inequality() {
        let r = check_inequality(&counterexample_p()).unwrap();
        assert!(r.conclusion_margin > 0.0);
        assert!((r.values["norm"] - 4.70).abs() < 5e-3);
        assert!(r.values["derivative_norm"] <= 3.0 * r.values["norm"]);
        assert!(!r.near_equality);
        let eq = equality_case(&counterexample_p()).unwrap();
        assert!(!eq.is_monomial && !eq.contradiction && eq.ratio < 1.0);
    }

    #[test]
    fn constants_and_zero() {
        let r = check_inequality(&QPolynomial::constant(Q::K)).unwrap();
        assert!(r.conclusion_satisfied && !r.notes.is_empty());
        assert_eq!(check_inequality(&QPolynomial::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(equality_case(&QPolynomial::constant(Q::K)), Err(Error::ConstantPolynomial));
        assert_eq!(equality_case(&QPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn near_monomials_are_strict() {
        let p = QPolynomial::new(vec![Q::ZERO, Q::real(1e-3), Q::ZERO, Q::ONE]);
        let eq = equality_case(&p).unwrap();
        assert!(!eq.is_monomial);
        assert!(eq.ratio < 1.0 && !eq.contradiction);
        assert!(equality_case(&QPolynomial::monomial(5, Q::new(1.0, 1.0, 0.0, 0.0))).unwrap().is_monomial);
    }

    #[test]
    fn scale_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let p = random_polynomial(&mut rng, 4);
            let c = 3.5;
            let a = check_inequality(&p).unwrap();
            let b = check_inequality(&p.scale(c)).unwrap();
            assert!((b.conclusion_margin - c * a.conclusion_margin).abs() <= 1e-9 * c * a.values["norm"]);
            assert_eq!(a.near_equality, b.near_equality);
        }
    }

    #[test]
    fn monomial_majorant_passes() {
        let p = counterexample_p();
        let m = sup_norm(&p).unwrap().value;
        let q = QPolynomial::monomial(3, Q::real(m));
        let r = check_theorem(&p, &q, &light()).unwrap();
        assert!(r.hypotheses_satisfied(), "{:#?}", r.hypotheses);
        assert!(r.conclusion_satisfied);
        assert_eq!(r.conclusion_domain, ConclusionDomain::WholeSphere);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn identical_pair_has_zero_margin() {
        let q = QPolynomial::new(vec![Q::new(0.1, 0.2, 0.0, 0.0), Q::new(0.0, -0.3, 0.0, 0.0), Q::ONE]);
        let r = check_theorem(&q, &q, &light()).unwrap();
        assert!(r.hypotheses_satisfied(), "{:#?}", r.hypotheses);
        assert_eq!(r.conclusion_domain, ConclusionDomain::SliceCircle);
        assert!(r.conclusion_margin.abs() < 1e-14);
        assert!(r.hypothesis("modulus_bound").unwrap().margin.abs() < 1e-14);
    }

    #[test]
    fn counterexample_pair_violates_slice_and_conclusion() {
        let opts = TheoremOptions { probes: vec![counterexample_witness()], ..light() };
        let r = check_theorem(&counterexample_p(), &counterexample_q(), &opts).unwrap();
        let names: Vec<_> = r.hypotheses.iter().map(|h| (h.name.as_str(), h.satisfied)).collect();
        assert_eq!(
            names,
            [("degree", true), ("slice", false), ("zeros_in_ball", true), ("modulus_bound", true)]
        );
        assert_eq!(r.hypothesis("slice").unwrap().witness.len(), 2);
        assert!(!r.conclusion_satisfied);
        assert!(r.probes[0].margin < 0.0 && r.probes[0].in_domain);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn violated_hypotheses_carry_witnesses() {
        let q = QPolynomial::linear(Q::new(0.0, 2.0, 0.0, 0.0));
        let p = QPolynomial::monomial(2, Q::real(3.5));
        let r = check_theorem(&p, &q, &light()).unwrap();
        for h in &r.hypotheses {
            assert!(h.satisfied || !h.witness.is_empty() || h.name == "degree", "{h:?}");
        }
        assert!(!r.hypothesis("degree").unwrap().satisfied);
        assert!(!r.hypothesis("zeros_in_ball").unwrap().satisfied);
        assert!(!r.hypothesis("modulus_bound").unwrap().satisfied);
    }

    #[test]
    fn constructed_pairs_satisfy_the_conclusion() {
        for seed in 0..10 {
            let (p, q) = hypothesis_pair(seed, 1 + (seed as usize % 5));
            let r = check_theorem(&p, &q, &light()).unwrap();
            assert!(r.hypotheses_satisfied(), "seed {seed}: {:#?}", r.hypotheses);
            assert!(r.conclusion_margin >= -1e-7, "seed {seed}: {}", r.conclusion_margin);
        }
    }

    #[test]
    fn counterexample_values() {
        let r = counterexample_report(DEFAULT_SEED, 20_000).unwrap();
        assert!(r.reproduced(), "{r:#?}");
        assert!((r.p_prime_sq - 1.80).abs() < 5e-3);
        assert!((r.q_prime_sq - 0.92).abs() < 5e-3);
    }

    #[test]
    fn report_json_roundtrip() {
        let r = check_inequality(&counterexample_p()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&s).unwrap(), r);
    }
}
