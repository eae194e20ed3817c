//! Numerical thresholds shared by every module.
//!
//! A [`Tolerances`] value is passed explicitly to the operations that need
//! one; the `Default` impl carries the library defaults.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Moduli below this are treated as exact zero by `inverse`.
    pub zero_guard: f64,
    /// `|im(q)|` below this means `q` is treated as real.
    pub real_axis: f64,
    /// Generic absolute comparison tolerance for unit-scale quantities.
    pub compare: f64,
    /// Imaginary parts orthogonal to a candidate axis by less than this still
    /// count as lying in that slice.
    pub slice_membership: f64,
    /// Allowed deviation of `|x|` from 1 for points declared on S³.
    pub on_sphere: f64,
    /// Relative distance under which two computed complex roots are merged.
    pub root_cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_guard: 1e-300,
            real_axis: 1e-12,
            compare: 1e-12,
            slice_membership: 1e-10,
            on_sphere: 1e-10,
            root_cluster: 1e-5,
        }
    }
}
