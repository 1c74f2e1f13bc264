//! Tiny `f64` math shims.
//!
//! The crate builds without `std`, where the transcendental inherent methods
//! on `f64` are unavailable; these wrappers route through `libm` so call
//! sites stay readable. Plain arithmetic, comparisons, `max`/`min`, and
//! `is_finite` come from `core` and need no shim.

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// Magnitude of a complex number (the inherent method needs `std`).
#[inline]
pub fn cabs(z: crate::Complex) -> f64 {
    libm::hypot(z.re, z.im)
}
