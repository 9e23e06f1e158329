//! Integral ternary representation `x = ∫ t_ns(s, x)·3^s ds`.
//!
//! With `y = x·3^{-s}` the digit is `t_ns(s, x) = ⌊y⌋ mod 3`, so the
//! integrand is constant between the breakpoints `s = log₃(x/m)` and
//! ```text
//! ∫_{s_lo}^{log₃x} t_ns(s,x)·3^s ds = (x/ln 3)·∫_1^{y₀} (⌊y⌋ mod 3)/y² dy,   y₀ = x·3^{-s_lo}.
//! ```
//! Each unit interval `[m, m+1)` contributes `a_m·(1/m - 1/(m+1))` exactly,
//! and the resulting telescoped series groups into the `ln 3` series
//! `Σ_k (1/(3k-2) + 1/(3k-1) - 2/(3k))`.

use crate::error::{Error, Result};

/// `ln 3`.
pub const LN_3: f64 = 1.098_612_288_668_109_7;

/// Terms of the `ln 3` series summed one by one before switching to the
/// Euler–Maclaurin tail.
const DIRECT_TERMS: f64 = 2000.0;

/// Constant `C` in `|ternary_integral(x, s_lo) - x| ≤ C·3^{s_lo}`.
pub const INTEGRAL_ERROR_CONSTANT: f64 = 2.0 / LN_3;

/// The error bound `C·3^{s_lo}` for [`ternary_integral`].
pub fn integral_error_bound(s_lo: f64) -> f64 {
    INTEGRAL_ERROR_CONSTANT * 3f64.powf(s_lo)
}

/// `k`-th grouped term `1/(3k-2) + 1/(3k-1) - 2/(3k)`.
fn ln3_term(k: f64) -> f64 {
    1.0 / (3.0 * k - 2.0) + 1.0 / (3.0 * k - 1.0) - 2.0 / (3.0 * k)
}

/// Antiderivative of [`ln3_term`] in `k`.
fn ln3_term_integral(k: f64) -> f64 {
    ((-2.0 / (3.0 * k)).ln_1p() + (-1.0 / (3.0 * k)).ln_1p()) / 3.0
}

fn ln3_term_d1(k: f64) -> f64 {
    -3.0 / (3.0 * k - 2.0).powi(2) - 3.0 / (3.0 * k - 1.0).powi(2) + 2.0 / (3.0 * k * k)
}

fn ln3_term_d3(k: f64) -> f64 {
    -162.0 * ((3.0 * k - 2.0).powi(-4) + (3.0 * k - 1.0).powi(-4) - 2.0 * (3.0 * k).powi(-4))
}

/// `Σ_{k=1}^{K} (1/(3k-2) + 1/(3k-1) - 2/(3k))`, summed smallest terms first.
pub fn ln3_series_partial(k_max: u64) -> Result<f64> {
    if k_max == 0 {
        return Err(Error::Precondition("the series needs K ≥ 1".into()));
    }
    Ok((1..=k_max).rev().map(|k| ln3_term(k as f64)).sum())
}

/// `Σ_{k=1}^{j} ln3_term(k)` for any real count `j ≥ 0`, using the
/// Euler–Maclaurin formula beyond [`DIRECT_TERMS`].
fn ln3_series_fast(j: f64) -> f64 {
    if j <= DIRECT_TERMS {
        return (1..=j as u64).rev().map(|k| ln3_term(k as f64)).sum();
    }
    let a = DIRECT_TERMS;
    let head: f64 = (1..=a as u64).rev().map(|k| ln3_term(k as f64)).sum();
    let tail = ln3_term_integral(j) - ln3_term_integral(a) + (ln3_term(j) - ln3_term(a)) / 2.0
        + (ln3_term_d1(j) - ln3_term_d1(a)) / 12.0
        - (ln3_term_d3(j) - ln3_term_d3(a)) / 720.0;
    head + tail
}

/// `S(K) = Σ_{m=1}^{K} (a_m - a_{m-1})/m` with `a_m = m mod 3`.
fn telescoped_digit_series(k: f64) -> f64 {
    let j = (k / 3.0).floor();
    let rem = k - 3.0 * j;
    let mut s = ln3_series_fast(j);
    if rem >= 1.0 {
        s += 1.0 / (3.0 * j + 1.0);
    }
    if rem >= 2.0 {
        s += 1.0 / (3.0 * j + 2.0);
    }
    s
}

fn mod3(m: f64) -> f64 {
    m.rem_euclid(3.0)
}

/// `∫_{s_lo}^{log₃x} t_ns(s,x)·3^s ds` for `x > 0`, summed exactly over the
/// breakpoint intervals.
///
/// For `x·3^{-s_lo}` beyond `2^53` the plateau index of the last interval is
/// no longer exact in `f64`; its contribution is below `2·3^{s_lo}` and
/// therefore far under the error bound.
pub fn ternary_integral(x: f64, s_lo: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::Precondition(format!(
            "ternary_integral needs x > 0 (got {x}); use renorm_integral_signed"
        )));
    }
    if !s_lo.is_finite() {
        return Err(Error::Precondition("s_lo must be finite".into()));
    }
    let y0 = x * 3f64.powf(-s_lo);
    if y0 < 1.0 {
        return Ok(0.0);
    }
    let m = y0.floor();
    let g = telescoped_digit_series(m - 1.0) - mod3(m - 1.0) / m + mod3(m) * (1.0 / m - 1.0 / y0);
    Ok(x * g / LN_3)
}

/// `∫_{s_lo}^{s_hi} t_ns(s,x)·3^s ds` for `s_hi ≥ log₃|x|` and `x ≠ 0`.
///
/// Negative `x` uses `t_ns(s, x) = 2 - t_ns(s, |x|)` away from breakpoints.
fn digit_integral(x: f64, s_lo: f64, s_hi: f64) -> Result<f64> {
    let positive = ternary_integral(x.abs(), s_lo)?;
    if x > 0.0 {
        Ok(positive)
    } else {
        Ok(2.0 * (3f64.powf(s_hi) - 3f64.powf(s_lo)) / LN_3 - positive)
    }
}

/// `½·∫_{s_lo}^{s_hi} (t_ns(s-1,x) - t_ns(s,x))·3^s ds`, which converges to
/// `x` for either sign.
pub fn renorm_integral_signed(x: f64, s_lo: f64, s_hi: f64) -> Result<f64> {
    if !x.is_finite() || !s_lo.is_finite() || !s_hi.is_finite() {
        return Err(Error::Precondition("arguments must be finite".into()));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if s_lo >= s_hi {
        return Err(Error::Precondition(format!("s_lo = {s_lo} must be below s_hi = {s_hi}")));
    }
    if s_hi - 1.0 < x.abs().log(3.0) {
        return Err(Error::Precondition(format!(
            "s_hi = {s_hi} must exceed log₃|x| + 1 for x = {x}"
        )));
    }
    let shifted = digit_integral(x, s_lo - 1.0, s_hi - 1.0)?;
    let plain = digit_integral(x, s_lo, s_hi)?;
    Ok((3.0 * shifted - plain) / 2.0)
}
