//! Slanted rains.
//!
//! A planar rain of length `l` and step `b` is a horizontal progression of `l`
//! base points plus, for `k = 1..l-1`, a layer of `l - k` points at height
//! `1/(kb)` above the start of the base. The layer points are exactly the
//! apexes of the edge-product-1 standard triangles whose two lower vertices
//! lie in the base. [`RainNd`] is the n-dimensional analogue with an
//! `(n-1)`-dimensional grid as base and the first axis as height.

mod planar;
mod spatial;

pub use planar::{Location, Rain2D};
pub use spatial::{NdLocation, RainNd};
pub(crate) use spatial::lex_indices;

use num_bigint::BigUint;
use num_traits::One;

/// Default cap on the number of points a rain may materialise.
pub const DEFAULT_POINT_LIMIT: u128 = 10_000_000;

pub(crate) fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `l! * l + 1`: a rain this long carries a rain of length `l` in its layers.
pub fn f_len(l: u64) -> BigUint {
    factorial(l) * l + 1u32
}

/// `((t-1)^(n-1) + 1)! * t + 1`, the n-dimensional sub-rain length bound.
///
/// Coincides with [`f_len`] for `n = 2`. Panics if `n < 2` or `t == 0`.
pub fn f_len_nd(n: u32, t: u64) -> BigUint {
    assert!(n >= 2 && t >= 1, "f_len_nd needs n >= 2 and t >= 1");
    factorial(sub_rain_factorial_arg(n, t)) * t + 1u32
}

/// `(t-1)^(n-1) + 1`, saturating.
pub(crate) fn sub_rain_factorial_arg(n: u32, t: u64) -> u64 {
    (t - 1).saturating_pow(n - 1).saturating_add(1)
}

/// Solves `1/m + 1/q = 1/n` in naturals.
///
/// A solution exists iff `m + q` divides `m * q` (equivalently `q^2`), and then
/// `n = mq / (m + q) < min(m, q)`.
pub fn egyptian_step(m: u64, q: u64) -> Option<u64> {
    if m == 0 || q == 0 {
        return None;
    }
    let (m, q) = (u128::from(m), u128::from(q));
    let prod = m * q;
    let sum = m + q;
    (prod % sum == 0).then(|| (prod / sum) as u64)
}
