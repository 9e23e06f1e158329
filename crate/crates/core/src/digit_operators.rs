//! Digit operators of coordinate and momentum as shift expansions.
//!
//! The momentum digit `p̂_r` expands in coordinate shifts `T_{-A}` with
//! `A = q^{-r}(D + σ/q)`, `D = 0, …, q^{r+n_plus}-1`, `σ = 1, …, q-1`.
//! With `θ = Δp·A` the coefficients are
//!
//! | system               | identity | coefficient of `T_{-A}`                      |
//! |----------------------|----------|----------------------------------------------|
//! | ternary-symmetric    | 0        | `Δp·q^{-r}·(-1)^{D+σ} / (2i·sin πθ)`         |
//! | ternary-nonsymmetric | 1        | `-Δp·q^{-r} / (1 - e^{2πiθ})`                |
//! | binary-nonsymmetric  | ½        | `-Δp·q^{-r} / (1 - e^{2πiθ})`                |
//! | binary-symmetric     | 0        | `Δp·q^{-r} / (2i·sin πθ)`                    |
//!
//! The coordinate digit `x̂_s` has the same form with `Δx`, `s` and the
//! momentum shifts `Ŝ_B`, `B = q^{-s}(D + σ/q)`, `D = 0, …, q^{s+n_minus}-1`.

use num_complex::Complex;

use crate::digits::{lattice_digit, DigitSystem, Flavor};
use crate::error::{Error, Result};
use crate::expansion::{Domain, ShiftExpansion, ShiftSide};
use crate::lattice::{Base, LatticeKind, LatticeSpec, Representation};
use crate::matrix::Matrix;
use crate::operators::{check_dense, dft_matrix, rational_phase};
use crate::rational::ExactRational;
use crate::scalar::Scalar;

/// The observable whose digit is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Coordinate,
    Momentum,
}

impl Observable {
    pub fn kind(self) -> LatticeKind {
        match self {
            Observable::Coordinate => LatticeKind::Coordinate,
            Observable::Momentum => LatticeKind::Momentum,
        }
    }
}

/// One digit operator on one lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitOperatorRequest {
    pub spec: LatticeSpec,
    pub system: DigitSystem,
    pub which: Observable,
    pub index: i32,
}

impl DigitOperatorRequest {
    pub fn new(spec: LatticeSpec, system: DigitSystem, which: Observable, index: i32) -> Result<Self> {
        spec.check_system(system)?;
        spec.check_digit_index(which.kind(), index)?;
        Ok(Self {
            spec,
            system,
            which,
            index,
        })
    }

    pub fn expansion<T: Scalar>(&self) -> Result<ShiftExpansion<T>> {
        match self.which {
            Observable::Momentum => momentum_digit_expansion(&self.spec, self.system, self.index),
            Observable::Coordinate => coordinate_digit_expansion(&self.spec, self.system, self.index),
        }
    }

    pub fn build<T: Scalar>(&self) -> Result<Matrix<T>> {
        self.expansion()?.materialize()
    }

    /// The same operator from the digit table alone.
    pub fn oracle<T: Scalar>(&self) -> Result<Matrix<T>> {
        match self.which {
            Observable::Momentum => momentum_digit_spectral(&self.spec, self.system, self.index),
            Observable::Coordinate => coordinate_digit_direct(&self.spec, self.system, self.index),
        }
    }
}

/// Identity coefficient of every digit expansion of `system`.
pub fn identity_coefficient(system: DigitSystem) -> f64 {
    match (system.base, system.flavor) {
        (Base::Ternary, Flavor::Nonsymmetric) => 1.0,
        (Base::Binary, Flavor::Nonsymmetric) => 0.5,
        (_, Flavor::Symmetric) => 0.0,
    }
}

/// Coefficient of the term `(D, σ)` with weight `w = Δ·q^{-index}` and
/// phase fraction `θ = Δ·A`.
fn term_coefficient<T: Scalar>(system: DigitSystem, weight: &ExactRational, d: i64, sigma: u32, theta: &ExactRational) -> Result<Complex<T>> {
    if theta.is_integer() {
        return Err(Error::Precondition(format!(
            "shift with Δ·A = {theta} hits a pole of the expansion"
        )));
    }
    let w = T::of(weight.to_f64());
    let two_i = Complex::new(T::zero(), T::of(2.0));
    Ok(match system.flavor {
        Flavor::Symmetric => {
            let sin = rational_phase::<T>(&(theta * ExactRational::new(1, 2))).im;
            let sign = if system.base == Base::Ternary && (d + sigma as i64).rem_euclid(2) == 1 {
                -T::one()
            } else {
                T::one()
            };
            Complex::new(w * sign, T::zero()) / (two_i * sin)
        }
        Flavor::Nonsymmetric => {
            let one = Complex::new(T::one(), T::zero());
            -Complex::new(w, T::zero()) / (one - rational_phase::<T>(theta))
        }
    })
}

/// Shift amounts `q^{-index}(D + σ/q)` with their `(D, σ)` labels.
fn shift_amounts(q: u32, index: i32, count: u64) -> impl Iterator<Item = (i64, u32, ExactRational)> {
    let scale = ExactRational::power(q, -index);
    (0..count as i64).flat_map(move |d| {
        let scale = scale.clone();
        (1..q).map(move |sigma| {
            let a = &scale * (ExactRational::integer(d) + ExactRational::new(sigma as i64, q as i64));
            (d, sigma, a)
        })
    })
}

fn digit_expansion<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, kind: LatticeKind, index: i32) -> Result<ShiftExpansion<T>> {
    spec.check_system(system)?;
    spec.check_digit_index(kind, index)?;
    let q = spec.q();
    let (step, span, side) = match kind {
        LatticeKind::Momentum => (spec.dp(), spec.n_plus() as i32, ShiftSide::Coordinate),
        LatticeKind::Coordinate => (spec.dx(), spec.n_minus as i32, ShiftSide::Momentum),
    };
    let count = (q as u64).pow((index + span) as u32);
    let weight = &step * ExactRational::power(q, -index);
    let mut e = ShiftExpansion::new(Domain::Lattice(*spec), side)
        .with_identity(Complex::new(T::of(identity_coefficient(system)), T::zero()));
    for (d, sigma, a) in shift_amounts(q, index, count) {
        let theta = &step * &a;
        let c = term_coefficient(system, &weight, d, sigma, &theta)?;
        e.add_term(a, c);
    }
    Ok(e)
}

/// `p̂_r` as `identity + Σ c·T_{-A}`.
pub fn momentum_digit_expansion<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, r: i32) -> Result<ShiftExpansion<T>> {
    digit_expansion(spec, system, LatticeKind::Momentum, r)
}

/// `x̂_s` as `identity + Σ c·Ŝ_B`.
pub fn coordinate_digit_expansion<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, s: i32) -> Result<ShiftExpansion<T>> {
    digit_expansion(spec, system, LatticeKind::Coordinate, s)
}

/// `p̂_r` materialized from its shift expansion.
pub fn momentum_digit<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, r: i32) -> Result<Matrix<T>> {
    momentum_digit_expansion(spec, system, r)?.materialize()
}

/// `x̂_s = t(s, x̂)`, the digit table on the diagonal. The phase expansion
/// of the same operator is [`coordinate_digit_expansion`].
pub fn coordinate_digit<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, s: i32) -> Result<Matrix<T>> {
    coordinate_digit_direct(spec, system, s)
}

/// `F·diag(v)·F†` with `v` listed in column order.
fn conjugate_by_dft<T: Scalar>(spec: &LatticeSpec, v: &[T]) -> Result<Matrix<T>> {
    let f = dft_matrix::<T>(spec)?;
    let n = f.dim();
    let scaled_adjoint = Matrix::from_fn(n, n, |i, j| f[(j, i)].conj() * v[i]);
    f.matmul(&scaled_adjoint)
}

/// `F·diag(digit(r, p))·F†`, built from the digit table and the DFT alone.
pub fn momentum_digit_spectral<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, r: i32) -> Result<Matrix<T>> {
    spec.check_system(system)?;
    spec.check_digit_index(LatticeKind::Momentum, r)?;
    let n = check_dense(spec)?;
    let v: Vec<T> = (0..n)
        .map(|j| T::of(lattice_digit(spec, system, LatticeKind::Momentum, r, spec.node_at_row(LatticeKind::Momentum, j)).value()))
        .collect();
    conjugate_by_dft(spec, &v)
}

/// `diag(digit(s, x))` over the coordinate nodes.
pub fn coordinate_digit_direct<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, s: i32) -> Result<Matrix<T>> {
    spec.check_system(system)?;
    spec.check_digit_index(LatticeKind::Coordinate, s)?;
    let n = check_dense(spec)?;
    let v: Vec<T> = (0..n)
        .map(|i| T::of(lattice_digit(spec, system, LatticeKind::Coordinate, s, spec.node_at_row(LatticeKind::Coordinate, i)).value()))
        .collect();
    Ok(Matrix::from_real_diagonal(&v))
}

/// `F·diag(p)·F†` with momenta labelled in `rep`.
pub fn momentum_operator_spectral<T: Scalar>(spec: &LatticeSpec, rep: Representation) -> Result<Matrix<T>> {
    let v: Vec<T> = spec.basis_labels(LatticeKind::Momentum, rep).iter().map(|p| T::of(p.to_f64())).collect();
    conjugate_by_dft(spec, &v)
}

/// `diag(x)` with coordinates labelled in `rep`.
pub fn coordinate_operator<T: Scalar>(spec: &LatticeSpec, rep: Representation) -> Matrix<T> {
    let v: Vec<T> = spec.basis_labels(LatticeKind::Coordinate, rep).iter().map(|x| T::of(x.to_f64())).collect();
    Matrix::from_real_diagonal(&v)
}

fn weighted_digit_sum<T: Scalar>(
    spec: &LatticeSpec,
    kind: LatticeKind,
    mut digit_op: impl FnMut(i32) -> Result<Matrix<T>>,
    mut weight: impl FnMut(i32) -> Option<ExactRational>,
) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let (lo, hi) = spec.digit_range(kind);
    let mut acc = Matrix::zeros(n, n);
    for idx in lo..=hi {
        if let Some(w) = weight(idx) {
            acc.add_scaled(Complex::new(T::of(w.to_f64()), T::zero()), &digit_op(idx)?)?;
        }
    }
    Ok(acc)
}

/// `p̂ = Σ_r q^r p̂_r` from the shift expansions.
pub fn reconstruct_momentum<T: Scalar>(spec: &LatticeSpec, system: DigitSystem) -> Result<Matrix<T>> {
    let q = spec.q();
    weighted_digit_sum(
        spec,
        LatticeKind::Momentum,
        |r| momentum_digit(spec, system, r),
        |r| Some(ExactRational::power(q, r)),
    )
}

/// Labels of the coordinate spectrum produced by
/// [`reconstruct_coordinate`] with `renormalized = true`.
pub fn renormalized_representation(system: DigitSystem) -> Representation {
    if system == DigitSystem::TERNARY_SYMMETRIC {
        Representation::Signed
    } else {
        Representation::Renormalized
    }
}

/// `x̂ = Σ_s q^s x̂_s`, or its renormalized form.
///
/// The renormalized sum redefines the leading digit: `t'(X) = X - (3/2)(X-1)X`
/// maps the ternary digit `2` to `-1`. Both binary systems use the
/// telescoping sum `Σ_s (x_{s-1} - x_s)·2^s` with the digit below the
/// resolution set to zero, so the leading digit enters with weight `-2^s`.
/// Balanced ternary digits need no renormalization.
pub fn reconstruct_coordinate<T: Scalar>(spec: &LatticeSpec, system: DigitSystem, renormalized: bool) -> Result<Matrix<T>> {
    let q = spec.q();
    let (_, top) = spec.digit_range(LatticeKind::Coordinate);
    let plain = |s: i32| Some(ExactRational::power(q, s));
    let digit_op = |s: i32| coordinate_digit::<T>(spec, system, s);
    if !renormalized || system == DigitSystem::TERNARY_SYMMETRIC {
        return weighted_digit_sum(spec, LatticeKind::Coordinate, digit_op, plain);
    }
    let weight_of = |w: ExactRational| Complex::new(T::of(w.to_f64()), T::zero());
    match (system.base, system.flavor) {
        (Base::Ternary, Flavor::Nonsymmetric) => {
            let mut acc = weighted_digit_sum(spec, LatticeKind::Coordinate, digit_op, |s| (s < top).then(|| ExactRational::power(q, s)))?;
            let x_top = coordinate_digit::<T>(spec, system, top)?;
            let n = x_top.dim();
            let x_minus_one = &x_top - &Matrix::identity(n);
            let quadratic = x_minus_one.matmul(&x_top)?;
            let mut renorm_top = x_top.clone();
            renorm_top.add_scaled(Complex::new(T::of(-1.5), T::zero()), &quadratic)?;
            acc.add_scaled(weight_of(ExactRational::power(q, top)), &renorm_top)?;
            Ok(acc)
        }
        (Base::Binary, _) => {
            // Σ_s (x_{s-1} - x_s)·2^s gives every digit the weight 2^s except
            // the leading one, which enters with -2^s.
            weighted_digit_sum(spec, LatticeKind::Coordinate, digit_op, |s| {
                let w = ExactRational::power(q, s);
                Some(if s == top { -w } else { w })
            })
        }
        (Base::Ternary, Flavor::Symmetric) => unreachable!(),
    }
}

/// Coefficient of `T_{-A}`, `A = q^{-r}(D + σ/q)`, in the line limit of
/// the momentum digit expansion.
pub fn line_coefficient(system: DigitSystem, d: i64, sigma: u32) -> Complex<f64> {
    let q = system.q() as f64;
    let denom = Complex::new(0.0, std::f64::consts::TAU * (d as f64 + sigma as f64 / q));
    let sign = if system == DigitSystem::TERNARY_SYMMETRIC && (d + sigma as i64).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    Complex::new(sign, 0.0) / denom
}

/// Coefficient of the same term `(D, σ)` on a lattice; `D` may be negative,
/// standing for `D + q^{r+n_plus}` with the shift moved down by one period.
pub fn lattice_term_coefficient(spec: &LatticeSpec, system: DigitSystem, r: i32, d: i64, sigma: u32) -> Result<Complex<f64>> {
    spec.check_system(system)?;
    spec.check_digit_index(LatticeKind::Momentum, r)?;
    let q = spec.q();
    let weight = spec.dp() * ExactRational::power(q, -r);
    let a = ExactRational::power(q, -r) * (ExactRational::integer(d) + ExactRational::new(sigma as i64, q as i64));
    term_coefficient(system, &weight, d, sigma, &(spec.dp() * a))
}

/// Symmetric-window line expansion `D ∈ [-D_max, D_max]` of the momentum
/// digit `r`.
pub fn line_expansion_coefficients(system: DigitSystem, r: i32, d_max: u32) -> Result<ShiftExpansion<f64>> {
    if d_max == 0 {
        return Err(Error::Precondition("D_max must be at least 1".into()));
    }
    let q = system.q();
    let scale = ExactRational::power(q, -r);
    let mut e = ShiftExpansion::new(Domain::Line, ShiftSide::Coordinate)
        .with_identity(Complex::new(identity_coefficient(system), 0.0));
    let d_max = d_max as i64;
    for d in -d_max..=d_max {
        for sigma in 1..q {
            let a = &scale * (ExactRational::integer(d) + ExactRational::new(sigma as i64, q as i64));
            e.add_term(a, line_coefficient(system, d, sigma));
        }
    }
    Ok(e)
}

/// The truncated line expansion applied to the momentum eigenstate `p`:
/// `identity + Σ c·e^{-2πiAp}`. Tends to `digit(r, p)` away from plateau
/// boundaries.
pub fn line_digit_partial_sum(system: DigitSystem, r: i32, d_max: u32, p: f64) -> Result<Complex<f64>> {
    let e = line_expansion_coefficients(system, r, d_max)?;
    let mut acc = e.identity;
    for (a, c) in e.terms() {
        let phase = -std::f64::consts::TAU * a.to_f64() * p;
        acc += c * Complex::new(phase.cos(), phase.sin());
    }
    Ok(acc)
}

/// Sum of `q^r·p̂_r` expansions as one expansion.
pub fn momentum_expansion<T: Scalar>(spec: &LatticeSpec, system: DigitSystem) -> Result<ShiftExpansion<T>> {
    let q = spec.q();
    let (lo, hi) = spec.digit_range(LatticeKind::Momentum);
    let mut acc = ShiftExpansion::new(Domain::Lattice(*spec), ShiftSide::Coordinate);
    for r in lo..=hi {
        let e = momentum_digit_expansion::<T>(spec, system, r)?;
        let w = Complex::new(T::of(ExactRational::power(q, r).to_f64()), T::zero());
        acc = acc.linear_combination(Complex::new(T::one(), T::zero()), &e, w)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn ternary(n: u32, nm: u32) -> LatticeSpec {
        LatticeSpec::new(Base::Ternary, n, nm).unwrap()
    }

    #[test]
    fn symmetric_ternary_three_nodes() {
        let spec = LatticeSpec::for_system(DigitSystem::TERNARY_SYMMETRIC, 1, 0).unwrap();
        let p = momentum_digit::<f64>(&spec, DigitSystem::TERNARY_SYMMETRIC, -1).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let want = Matrix::from_row_major(
            3,
            3,
            vec![c(0.0, 0.0), c(0.0, s), c(0.0, -s), c(0.0, -s), c(0.0, 0.0), c(0.0, s), c(0.0, s), c(0.0, -s), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(p.max_abs_diff(&want).unwrap() < 1e-12);
        let x0 = coordinate_digit::<f64>(&spec, DigitSystem::TERNARY_SYMMETRIC, 0).unwrap();
        assert!(x0.max_abs_diff(&Matrix::from_real_diagonal(&[1.0, 0.0, -1.0])).unwrap() < 1e-12);
    }

    #[test]
    fn nonsymmetric_coordinate_digit() {
        let spec = ternary(2, 0);
        let x1 = coordinate_digit::<f64>(&spec, DigitSystem::TERNARY_NONSYMMETRIC, 1).unwrap();
        let want = Matrix::from_real_diagonal(&[2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(x1.max_abs_diff(&want).unwrap() < 1e-12);
    }

    #[test]
    fn expansion_matches_oracle_small() {
        for system in DigitSystem::ALL {
            for n in 1..=3 {
                for nm in 0..=n {
                    let spec = LatticeSpec::for_system(system, n, nm).unwrap();
                    for which in [Observable::Momentum, Observable::Coordinate] {
                        let (lo, hi) = spec.digit_range(which.kind());
                        for idx in lo..=hi {
                            let req = DigitOperatorRequest::new(spec, system, which, idx).unwrap();
                            let built = req.build::<f64>().unwrap();
                            let oracle = req.oracle::<f64>().unwrap();
                            assert!(built.max_abs_diff(&oracle).unwrap() < 1e-10, "{system} {spec} {which:?} {idx}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let spec = ternary(2, 1);
        assert!(matches!(
            momentum_digit_expansion::<f64>(&spec, DigitSystem::TERNARY_SYMMETRIC, -2),
            Err(Error::DigitIndexOutOfRange { .. })
        ));
        let periodic = LatticeSpec::new(Base::Binary, 2, 0).unwrap();
        assert!(matches!(
            momentum_digit_expansion::<f64>(&periodic, DigitSystem::BINARY_SYMMETRIC, 0),
            Err(Error::IncompatibleSystem { .. })
        ));
        assert!(momentum_digit_expansion::<f64>(&spec, DigitSystem::BINARY_NONSYMMETRIC, 0).is_err());
    }

    #[test]
    fn reconstruction_renormalized() {
        let spec = ternary(2, 0);
        let m = reconstruct_coordinate::<f64>(&spec, DigitSystem::TERNARY_NONSYMMETRIC, true).unwrap();
        let want = Matrix::from_real_diagonal(&[-1.0, -2.0, -3.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0]);
        assert!(m.max_abs_diff(&want).unwrap() < 1e-12);
        let plain = reconstruct_coordinate::<f64>(&spec, DigitSystem::TERNARY_NONSYMMETRIC, false).unwrap();
        let want = Matrix::from_real_diagonal(&[8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0]);
        assert!(plain.max_abs_diff(&want).unwrap() < 1e-12);
        for system in DigitSystem::ALL {
            for n in 1..=4 {
                for nm in 0..=n {
                    let spec = LatticeSpec::for_system(system, n, nm).unwrap();
                    let got = reconstruct_coordinate::<f64>(&spec, system, true).unwrap();
                    let want = coordinate_operator::<f64>(&spec, renormalized_representation(system));
                    assert!(got.max_abs_diff(&want).unwrap() < 1e-10, "{system} {spec}");
                }
            }
        }
    }

    #[test]
    fn binary_renormalization_by_both_methods() {
        let spec = LatticeSpec::new(Base::Binary, 2, 0).unwrap();
        let m2 = reconstruct_coordinate::<f64>(&spec, DigitSystem::BINARY_NONSYMMETRIC, true).unwrap();
        let via_method1: Vec<f64> = (0..4)
            .rev()
            .map(|k| {
                let node = crate::lattice::LatticeValue::new(spec, LatticeKind::Coordinate, k).unwrap();
                crate::digits::lattice_renormalize_method1_binary(&spec, &node).unwrap().to_f64()
            })
            .collect();
        assert_eq!(via_method1, vec![-1.0, -2.0, 1.0, 0.0]);
        assert!(m2.max_abs_diff(&Matrix::from_real_diagonal(&via_method1)).unwrap() < 1e-12);
    }

    #[test]
    fn exponential_phase_reduces_to_sign() {
        for sigma in 1..=2 {
            let w = |k: f64| {
                let t = std::f64::consts::TAU * k * sigma as f64 / 3.0;
                c(t.cos(), t.sin())
            };
            let lhs = (w(1.0) + w(2.0) * 2.0) * (c(1.0, 0.0) - w(1.0));
            assert!((lhs - c(-3.0, 0.0)).norm() < 1e-14);
            for d in -5i64..5 {
                let phase = (std::f64::consts::PI * (3 * d + sigma) as f64).cos();
                let main = if (d + sigma).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert!((phase - main).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn line_coefficients_symmetries() {
        for system in DigitSystem::ALL {
            let q = system.q();
            for d in -20i64..20 {
                for sigma in 1..q {
                    let a = line_coefficient(system, d, sigma);
                    let b = line_coefficient(system, -d - 1, q - sigma);
                    assert!((a - b.conj()).norm() < 1e-15, "{system} {d} {sigma}");
                }
            }
            let e0 = line_expansion_coefficients(system, 0, 6).unwrap();
            let e2 = line_expansion_coefficients(system, 2, 6).unwrap();
            let scale = ExactRational::power(q, -2);
            for ((a0, c0), (a2, c2)) in e0.terms().zip(e2.terms()) {
                assert_eq!(&(a0 * &scale), a2);
                assert_eq!(c0, c2);
            }
        }
    }

    #[test]
    fn lattice_coefficients_approach_line() {
        // Nonsymmetric coefficients differ from the line values by about
        // Δp/2, so those lattices need a finer momentum step.
        for system in DigitSystem::ALL {
            let n = match (system.base, system.is_symmetric()) {
                (_, true) => 12,
                (Base::Binary, false) => 22,
                (Base::Ternary, false) => 15,
            };
            let spec = LatticeSpec::for_system(system, n, 1).unwrap();
            let r = 0;
            for d in [-3i64, -1, 0, 2, 5] {
                for sigma in 1..system.q() {
                    let lattice = lattice_term_coefficient(&spec, system, r, d, sigma).unwrap();
                    let line = line_coefficient(system, d, sigma);
                    assert!((lattice - line).norm() < 1e-6, "{system} {d} {sigma}");
                }
            }
        }
    }

    #[test]
    fn wrapped_terms_match_lattice_expansion() {
        let spec = ternary(4, 1);
        let system = DigitSystem::TERNARY_SYMMETRIC;
        let e = momentum_digit_expansion::<f64>(&spec, system, 0).unwrap();
        let m = 3i64.pow(3);
        // D = M-1 wraps to D = -1 with the shift lowered by one period.
        let wrapped = lattice_term_coefficient(&spec, system, 0, -1, 2).unwrap();
        let direct = e.coefficient(&(ExactRational::integer(m - 1) + ExactRational::new(2, 3))).unwrap();
        assert!((wrapped - direct).norm() < 1e-12);
    }

    #[test]
    fn line_partial_sums_converge() {
        for system in DigitSystem::ALL {
            let p = 0.37;
            let want = crate::digits::digit(system, 0, &ExactRational::snap_f64(p, system.q()).unwrap()).value();
            let e1 = (line_digit_partial_sum(system, 0, 50, p).unwrap() - c(want, 0.0)).norm();
            let e2 = (line_digit_partial_sum(system, 0, 800, p).unwrap() - c(want, 0.0)).norm();
            assert!(e2 < e1 && e2 < 0.01, "{system}: {e1} {e2}");
        }
    }

    #[test]
    fn momentum_sum_expansion_reconstructs() {
        let spec = LatticeSpec::with_options(Base::Binary, 3, 1, Boundary::Antiperiodic, crate::lattice::Offset::HalfStep).unwrap();
        let system = DigitSystem::BINARY_SYMMETRIC;
        let e = momentum_expansion::<f64>(&spec, system).unwrap().materialize().unwrap();
        let want = momentum_operator_spectral::<f64>(&spec, system.natural_representation()).unwrap();
        assert!(e.max_abs_diff(&want).unwrap() < 1e-10);
    }
}
