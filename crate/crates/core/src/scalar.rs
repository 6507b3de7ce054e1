//! Scalar abstraction shared by every real-valued quantity in the engine.
//!
//! Ratios, means, CNCI values, journal metrics and graph weights are all
//! expressed in terms of [`Scalar`], so the analysis code runs unchanged on
//! `f32` and `f64`. Counts stay integral (`usize`/`u64`).

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real number type usable by the analyses.
pub trait Scalar:
    Float
    + NumAssignOps
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + std::str::FromStr
    + 'static
{
    /// Lossy conversion from a count.
    fn of_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    /// Lossy conversion from an `f64` literal or configuration value.
    fn of_f64(x: f64) -> Self {
        Self::from_f64(x).expect("f64 representable as scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float
        + NumAssignOps
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + Serialize
        + DeserializeOwned
        + std::str::FromStr
        + 'static
{
}

/// `part / whole`, or zero when `whole` is zero.
pub fn ratio<S: Scalar>(part: usize, whole: usize) -> S {
    if whole == 0 {
        S::zero()
    } else {
        S::of_count(part) / S::of_count(whole)
    }
}

/// Arithmetic mean; `None` for an empty slice.
pub fn mean<S: Scalar>(values: &[S]) -> Option<S> {
    if values.is_empty() {
        return None;
    }
    let sum = values.iter().fold(S::zero(), |acc, &v| acc + v);
    Some(sum / S::of_count(values.len()))
}

/// Median of the values (average of the two central values for even
/// lengths); `None` for an empty slice.
pub fn median<S: Scalar>(values: &[S]) -> Option<S> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("median of NaN"));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        Some(sorted[mid])
    } else {
        let two = S::one() + S::one();
        Some((sorted[mid - 1] + sorted[mid]) / two)
    }
}

/// Population standard deviation; `None` for an empty slice.
pub fn std_dev<S: Scalar>(values: &[S]) -> Option<S> {
    let m = mean(values)?;
    let var = values
        .iter()
        .fold(S::zero(), |acc, &v| acc + (v - m) * (v - m))
        / S::of_count(values.len());
    Some(var.sqrt())
}

/// Ordinary least-squares slope of `ys` against `xs`. Returns zero when the
/// abscissae have no spread.
pub fn ols_slope<S: Scalar>(xs: &[S], ys: &[S]) -> S {
    assert_eq!(xs.len(), ys.len());
    let (Some(mx), Some(my)) = (mean(xs), mean(ys)) else {
        return S::zero();
    };
    let mut sxy = S::zero();
    let mut sxx = S::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == S::zero() {
        S::zero()
    } else {
        sxy / sxx
    }
}
