//! Quaternionic polynomials `Σ X^k a_k` over ℍ: evaluation and the star
//! product, the zonal-harmonic (Almansi-type) decomposition
//! `P(x) = A(x) − x̄·B(x)`, sup-norms on the unit sphere S³ by reduction to a
//! one-dimensional search, and numerical checks of Bernstein-type
//! inequalities for these polynomials.
//!
//! ```
//! use qbernstein::{Quaternion as Q, QPolynomial, sup_norm};
//!
//! let p = QPolynomial::linear(Q::I)
//!     .star_mul(&QPolynomial::linear(Q::J))
//!     .star_mul(&QPolynomial::linear(Q::K));
//! assert_eq!(p.eval(Q::I), Q::ZERO);
//!
//! let norm = sup_norm(&p).unwrap();
//! assert!((norm.value - 4.70).abs() < 5e-3);
//! ```

pub mod bernstein;
pub mod error;
pub mod extremal;
pub mod harmonics;
pub mod io;
pub mod poly;
pub mod quaternion;
pub mod random;
pub mod roots;
pub mod tolerance;

pub use bernstein::{check_inequality, check_theorem, counterexample_report, equality_case, CheckReport, TheoremOptions};
pub use error::{Error, Result};
pub use extremal::{modulus_profile, slice_extrema, sup_norm, sup_norm_with, ExtremumReport, SupNormOptions};
pub use harmonics::{almansi, gegenbauer_u, zonal, AlmansiPair, ZonalPolynomial};
pub use poly::QPolynomial;
pub use quaternion::{sample_unit_sphere, sphere_point, Quaternion, SlicePoint, UnitImaginary};
pub use roots::{root_spheres, RootSphere};
pub use tolerance::Tolerances;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quaternions.md")]
    mod quaternions {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/zonal.md")]
    mod zonal {}
    #[doc = include_str!("../../../book/src/sup_norm.md")]
    mod sup_norm {}
    #[doc = include_str!("../../../book/src/bernstein.md")]
    mod bernstein {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
