//! Commutators of digit operators, computed directly and from shift series.
//!
//! For any function `f` of the coordinate,
//! `[f(x̂), T_{-A}] = (f(x̂) - f(x̂ - A))·T_{-A}`, so every commutator with a
//! momentum digit expansion is a shift series whose coefficients pick up a
//! coordinate-dependent factor.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::digit_operators::{coordinate_digit, momentum_digit, momentum_digit_expansion, reconstruct_coordinate, reconstruct_momentum};
use crate::digits::{lattice_digit, DigitSystem};
use crate::error::{Error, Result};
use crate::expansion::{add_shift, lattice_steps, ShiftExpansion};
use crate::lattice::{Boundary, LatticeKind, LatticeSpec, LatticeValue, Representation};
use crate::matrix::Matrix;
use crate::operators::{check_dense, momentum_projector, shift_entry};
use crate::rational::ExactRational;
use crate::scalar::Scalar;

/// `ħ = h/2π` with `h = 1`.
pub const HBAR: f64 = 1.0 / std::f64::consts::TAU;

/// Threshold below which a commutator counts as zero.
pub const VANISHING_TOLERANCE: f64 = 1e-10;

/// `ab - ba`.
pub fn commutator<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            left: a.rows(),
            right: b.rows(),
        });
    }
    a.commutator(b)
}

/// `Σ c·diag(g_A(x))·T_{-A}` over the terms of a coordinate-shift expansion,
/// where `g_A(x)` is evaluated at every row's node `k` and the node reached by
/// the shift.
fn shift_series<T: Scalar>(
    spec: &LatticeSpec,
    expansion: &ShiftExpansion<T>,
    weight: Complex<T>,
    out: &mut Matrix<T>,
    mut factor: impl FnMut(usize, &ExactRational, usize) -> T,
) -> Result<()> {
    let n = spec.dim();
    let dx = spec.dx();
    for (a, c) in expansion.terms() {
        let steps = lattice_steps(a, &dx).ok_or_else(|| Error::OffLattice {
            value: a.to_string(),
            lattice: "coordinate",
        })?;
        for i in 0..n {
            let (j, negative) = shift_entry(spec, -steps, i);
            let g = factor(spec.node_at_row(LatticeKind::Coordinate, i), a, spec.node_at_row(LatticeKind::Coordinate, j));
            if g == T::zero() {
                continue;
            }
            let v = *c * weight * g;
            out[(i, j)] += if negative { -v } else { v };
        }
    }
    Ok(())
}

/// `[x̂_s, p̂_r] = Σ c·(t(s,x) - t(s,x-A))·T_{-A}`. The digit `t(s, ·)` has a
/// period dividing `Ξ` for every `s` on the lattice, so `t(s, x-A)` is read
/// at the node reached by the shift.
pub fn digit_digit_series<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, s: i32, r: i32) -> Result<Matrix<T>> {
    spec.check_digit_index(LatticeKind::Coordinate, s)?;
    let n = check_dense(spec)?;
    let e = momentum_digit_expansion::<T>(spec, system, r)?;
    let table: Vec<T> = (0..n)
        .map(|k| T::of(lattice_digit(spec, system, LatticeKind::Coordinate, s, k).value()))
        .collect();
    let mut out = Matrix::zeros(n, n);
    let one = Complex::new(T::one(), T::zero());
    shift_series(spec, &e, one, &mut out, |k, _, k2| table[k] - table[k2])?;
    Ok(out)
}

/// `[x̂, p̂_r] = Σ c·(x - x')·T_{-A}` where `x'` is the label of the node
/// `x - A` in the system's representation. Without wrap-around `x - x' = A`;
/// a wrap changes it by a multiple of the period.
pub fn coordinate_digit_series<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, r: i32) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let e = momentum_digit_expansion::<T>(spec, system, r)?;
    let mut out = Matrix::zeros(n, n);
    let labels = coordinate_labels::<T>(spec, system.natural_representation());
    let one = Complex::new(T::one(), T::zero());
    shift_series(spec, &e, one, &mut out, |k, _, k2| labels[k] - labels[k2])?;
    Ok(out)
}

fn coordinate_labels<T: Scalar>(spec: &LatticeSpec, rep: Representation) -> Vec<T> {
    (0..spec.dim())
        .map(|k| T::of(spec.node_value_in(LatticeKind::Coordinate, k, rep).to_f64()))
        .collect()
}

/// `[x̂, p̂] = Σ_r q^r Σ c·(x - x')·T_{-A}`.
pub fn coordinate_momentum_series<T: Scalar>(spec: &LatticeSpec, system: DigitSystem) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    spec.check_system(system)?;
    let labels = coordinate_labels::<T>(spec, system.natural_representation());
    let (lo, hi) = spec.digit_range(LatticeKind::Momentum);
    let mut out = Matrix::zeros(n, n);
    for r in lo..=hi {
        let e = momentum_digit_expansion::<T>(spec, system, r)?;
        let w = Complex::new(T::of(ExactRational::power(spec.q(), r).to_f64()), T::zero());
        shift_series(spec, &e, w, &mut out, |k, _, k2| labels[k] - labels[k2])?;
    }
    Ok(out)
}

/// Which pair of operators a report compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorPair {
    DigitDigit { s: i32, r: i32 },
    CoordinateDigit { r: i32 },
    CoordinateMomentum,
}

/// Series and direct forms of one commutator with their distance.
#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub spec: LatticeSpec,
    pub system: DigitSystem,
    pub pair: CommutatorPair,
    pub series: Matrix<f64>,
    pub direct: Matrix<f64>,
    pub max_abs_difference: f64,
}

impl CommutatorReport {
    pub fn new(spec: LatticeSpec, system: DigitSystem, pair: CommutatorPair) -> Result<Self> {
        let (series, direct) = match pair {
            CommutatorPair::DigitDigit { s, r } => (
                digit_digit_series(&spec, system, s, r)?,
                commutator(&coordinate_digit(&spec, system, s)?, &momentum_digit(&spec, system, r)?)?,
            ),
            CommutatorPair::CoordinateDigit { r } => (
                coordinate_digit_series(&spec, system, r)?,
                commutator(&reconstruct_coordinate(&spec, system, false)?, &momentum_digit(&spec, system, r)?)?,
            ),
            CommutatorPair::CoordinateMomentum => (
                coordinate_momentum_series(&spec, system)?,
                commutator(&reconstruct_coordinate(&spec, system, false)?, &reconstruct_momentum(&spec, system)?)?,
            ),
        };
        let max_abs_difference = series.max_abs_diff(&direct)?;
        Ok(Self {
            spec,
            system,
            pair,
            series,
            direct,
            max_abs_difference,
        })
    }
}

/// For every digit pair `(s, r)`, whether `[x̂_s, p̂_r]` is nonzero.
pub fn commutation_support_table(spec: &LatticeSpec, system: DigitSystem) -> Result<BTreeMap<(i32, i32), bool>> {
    let (s_lo, s_hi) = spec.digit_range(LatticeKind::Coordinate);
    let (r_lo, r_hi) = spec.digit_range(LatticeKind::Momentum);
    let xs: Vec<Matrix<f64>> = (s_lo..=s_hi).map(|s| coordinate_digit(spec, system, s)).collect::<Result<_>>()?;
    let mut table = BTreeMap::new();
    for r in r_lo..=r_hi {
        let p = momentum_digit::<f64>(spec, system, r)?;
        for (s, x) in (s_lo..=s_hi).zip(&xs) {
            let norm = commutator(x, &p)?.max_abs();
            table.insert((s, r), norm > VANISHING_TOLERANCE);
        }
    }
    Ok(table)
}

/// `Σ_{a ∈ Z_N} T_{aΔx} - N·P_0` and its largest entry.
pub fn shift_sum_identity(spec: &LatticeSpec) -> Result<(Matrix<f64>, f64)> {
    if spec.boundary == Boundary::Antiperiodic {
        return Err(Error::Unsupported(
            "the zero-momentum projector needs the periodic boundary".into(),
        ));
    }
    let n = check_dense(spec)?;
    let mut m = Matrix::zeros(n, n);
    for a in 0..n as i64 {
        add_shift(&mut m, spec, a, Complex::new(1.0, 0.0));
    }
    let p0 = momentum_projector::<f64>(spec, &LatticeValue::new(*spec, LatticeKind::Momentum, 0)?)?;
    m.add_scaled(Complex::new(-(n as f64), 0.0), &p0)?;
    let deviation = m.max_abs();
    Ok((m, deviation))
}

/// Sign `(-1)^a` attached to a shift `A`, where `a = A·3^k` is the integer
/// whose lowest balanced ternary digit is nonzero; the zero shift has
/// weight 1.
pub fn symmetric_shift_sign(a: &ExactRational) -> i32 {
    if a.is_zero() {
        return 1;
    }
    let three = ExactRational::integer(3);
    let mut v = a.clone();
    while !v.is_integer() {
        v = v * &three;
    }
    while (&v / &three).is_integer() {
        v = v / &three;
    }
    if v.rem_euclid(&ExactRational::integer(2)).is_zero() {
        1
    } else {
        -1
    }
}

/// Partial sum `Σ_{|A| ≤ cutoff} (-1)^a·T_A` over the lattice shifts with
/// balanced labels. A diagnostic only: the order of the full sum is not
/// fixed, so no threshold applies.
pub fn symmetric_shift_sum_diagnostic(spec: &LatticeSpec, cutoff: &ExactRational) -> Result<Matrix<f64>> {
    let n = check_dense(spec)?;
    let mut m = Matrix::zeros(n, n);
    for k in 0..n {
        let a = spec.node_value_in(LatticeKind::Coordinate, k, Representation::Signed);
        if a.abs() > *cutoff {
            continue;
        }
        let steps = lattice_steps(&a, &spec.dx()).expect("lattice node");
        add_shift(&mut m, spec, steps, Complex::new(symmetric_shift_sign(&a) as f64, 0.0));
    }
    Ok(m)
}

/// `[x̂, p̂] - iħ·1`, which never vanishes on a finite lattice.
pub fn canonical_defect(spec: &LatticeSpec, system: DigitSystem) -> Result<f64> {
    let k = coordinate_momentum_series::<f64>(spec, system)?;
    let target = Matrix::identity(spec.dim()).scale(Complex::new(0.0, HBAR));
    k.max_abs_diff(&target)
}
