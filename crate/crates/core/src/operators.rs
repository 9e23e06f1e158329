//! Shift, phase and Fourier operators on a lattice.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeKind, LatticeSpec, LatticeValue, MAX_DENSE_DIM};
use crate::matrix::Matrix;
use crate::rational::ExactRational;
use crate::scalar::{unit_phase, Scalar};

pub(crate) fn check_dense(spec: &LatticeSpec) -> Result<usize> {
    let n = spec.dim();
    if n > MAX_DENSE_DIM {
        return Err(Error::InvalidSpec(format!(
            "N = {n} exceeds the dense envelope {MAX_DENSE_DIM}"
        )));
    }
    Ok(n)
}

/// `e^{2πi·r}` for an exact rational `r`, reduced modulo one before
/// conversion to floating point.
pub fn rational_phase<T: Scalar>(r: &ExactRational) -> Complex<T> {
    let den = r.denom();
    let (_, rem) = r.numer().div_mod_floor(den);
    // Fold into (-1/2, 1/2].
    let twice: BigInt = &rem * 2;
    let folded = if &twice > den { rem - den } else { rem };
    let turns = match (folded.to_i128(), den.to_i128()) {
        (Some(n), Some(d)) => return unit_phase(n, d),
        _ => ExactRational::from_big(folded, den.clone()).to_f64(),
    };
    let angle = T::TAU() * T::of(turns);
    Complex::new(angle.cos(), angle.sin())
}

/// Column index and sign of the single nonzero entry in row `row` of `T_a`.
pub(crate) fn shift_entry(spec: &LatticeSpec, steps: i64, row: usize) -> (usize, bool) {
    let n = spec.dim() as i64;
    let k = spec.node_at_row(LatticeKind::Coordinate, row) as i64 + steps;
    let wraps = k.div_euclid(n);
    let target = k.rem_euclid(n) as usize;
    let negative = spec.boundary == Boundary::Antiperiodic && wraps.rem_euclid(2) == 1;
    (spec.row_of_node(LatticeKind::Coordinate, target), negative)
}

/// `T_A` for `A = steps·Δx`: `⟨x'|T_A|x''⟩ = δ_{x'+A, x''}`, with a sign
/// per wrap around the period under the antiperiodic boundary.
pub fn shift_matrix<T: Scalar>(spec: &LatticeSpec, steps: i64) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let (j, negative) = shift_entry(spec, steps, i);
        let one = if negative { -T::one() } else { T::one() };
        m[(i, j)] = Complex::new(one, T::zero());
    }
    Ok(m)
}

/// `⟨x|p⟩ = e^{2πixp}/√N`; rows and columns follow the basis order.
pub fn dft_matrix<T: Scalar>(spec: &LatticeSpec) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let norm = T::one() / T::of(n as f64).sqrt();
    let four_n = 4 * n as i128;
    Ok(Matrix::from_fn(n, n, |i, j| {
        let x = spec.doubled_index(LatticeKind::Coordinate, spec.node_at_row(LatticeKind::Coordinate, i));
        let p = spec.doubled_index(LatticeKind::Momentum, spec.node_at_row(LatticeKind::Momentum, j));
        unit_phase::<T>(x * p, four_n) * norm
    }))
}

/// `Ŝ_B = e^{-2πi x̂ B}`, diagonal over the coordinate nodes.
pub fn momentum_phase_matrix<T: Scalar>(spec: &LatticeSpec, b: &ExactRational) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let diag: Vec<Complex<T>> = (0..n)
        .map(|i| {
            let x = spec.node_value(LatticeKind::Coordinate, spec.node_at_row(LatticeKind::Coordinate, i));
            rational_phase(&-(x * b))
        })
        .collect();
    Ok(Matrix::from_diagonal(&diag))
}

/// `F·diag(f)·F†` for a function `f` given on the momentum node indices,
/// assembled from the `2N-1` distinct coordinate differences.
pub fn momentum_function<T: Scalar>(spec: &LatticeSpec, f: &[Complex<T>]) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    if f.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: f.len() });
    }
    let two_n = 2 * n as i128;
    let inv_n = T::one() / T::of(n as f64);
    // ⟨x'|·|x''⟩ = (1/N)·Σ_j f_j·e^{2πi·d·(2j+o)/(2N)} with d = (x'-x'')/Δx.
    let by_difference: Vec<Complex<T>> = (-(n as i128 - 1)..n as i128)
        .map(|d| {
            let sum: Complex<T> = (0..n)
                .map(|j| f[j] * unit_phase::<T>(d * spec.doubled_index(LatticeKind::Momentum, j), two_n))
                .sum();
            sum * inv_n
        })
        .collect();
    let nodes: Vec<i64> = (0..n)
        .map(|i| spec.node_at_row(LatticeKind::Coordinate, i) as i64)
        .collect();
    Ok(Matrix::from_fn(n, n, |i, j| {
        let d = nodes[i] - nodes[j];
        by_difference[(d + n as i64 - 1) as usize]
    }))
}

/// `T_A = e^{2πiA p̂}` for any rational `A`, built spectrally.
pub fn arbitrary_shift<T: Scalar>(spec: &LatticeSpec, a: &ExactRational) -> Result<Matrix<T>> {
    let n = check_dense(spec)?;
    let phases: Vec<Complex<T>> = (0..n)
        .map(|j| rational_phase(&(a * spec.node_value(LatticeKind::Momentum, j))))
        .collect();
    momentum_function(spec, &phases)
}

/// Projector onto the momentum eigenvector `p`:
/// entries `e^{2πi p (x'-x'')}/N`.
pub fn momentum_projector<T: Scalar>(spec: &LatticeSpec, p: &LatticeValue) -> Result<Matrix<T>> {
    if p.kind != LatticeKind::Momentum || p.spec != *spec {
        return Err(Error::OffLattice {
            value: p.value().to_string(),
            lattice: "momentum",
        });
    }
    let mut f = vec![Complex::zero(); spec.dim()];
    f[p.index] = Complex::new(T::one(), T::zero());
    momentum_function(spec, &f)
}

/// Fourier coefficients `c_k = (1/T)·Σ_t g(t)·e^{2πikt/T}`, `k = 0..T`, of
/// the periodic rectangle `g = amplitude` on nodes `s..=f` and zero elsewhere.
pub fn rect_fourier_coefficients<T: Scalar>(
    period: usize,
    s_node: usize,
    f_node: usize,
    amplitude: Complex<T>,
) -> Result<Vec<Complex<T>>> {
    if s_node > f_node || f_node >= period {
        return Err(Error::Precondition(format!(
            "need 0 ≤ s ≤ f < T (got s = {s_node}, f = {f_node}, T = {period})"
        )));
    }
    let t = period as i128;
    let width = (f_node - s_node + 1) as i128;
    let scale = amplitude / T::of(period as f64);
    Ok((0..t)
        .map(|k| {
            if k == 0 {
                return scale * T::of(width as f64);
            }
            let start = unit_phase::<T>(k * s_node as i128, t);
            let numer = Complex::new(T::one(), T::zero()) - unit_phase::<T>(k * width, t);
            let denom = Complex::new(T::one(), T::zero()) - unit_phase::<T>(k, t);
            scale * start * numer / denom
        })
        .collect())
}

/// Inverse of [`rect_fourier_coefficients`]: `g(t) = Σ_k c_k·e^{-2πikt/T}`.
pub fn inverse_fourier<T: Scalar>(coefficients: &[Complex<T>]) -> Vec<Complex<T>> {
    let t = coefficients.len() as i128;
    (0..t)
        .map(|node| {
            coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| *c * unit_phase::<T>(-(k as i128) * node, t))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Base, Offset, Representation};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn ternary(n: u32, nm: u32) -> LatticeSpec {
        LatticeSpec::new(Base::Ternary, n, nm).unwrap()
    }

    fn anti(n: u32, nm: u32) -> LatticeSpec {
        LatticeSpec::binary_symmetric(n, nm).unwrap()
    }

    #[test]
    fn shift_basics() {
        let spec = ternary(2, 1);
        let id = Matrix::<f64>::identity(9);
        assert_eq!(shift_matrix::<f64>(&spec, 0).unwrap(), id);
        assert_eq!(shift_matrix::<f64>(&spec, 9).unwrap(), id);
        let a = anti(3, 1);
        let minus = Matrix::<f64>::identity(8).scale(c(-1.0, 0.0));
        assert_eq!(shift_matrix::<f64>(&a, 8).unwrap(), minus);
        assert_eq!(shift_matrix::<f64>(&a, 16).unwrap(), Matrix::identity(8));
    }

    #[test]
    fn minimal_shift_on_three_nodes() {
        // T_{Δx} maps node k to node k+1: rows (x=2,1,0) pick columns (x=0,2,1).
        let t = shift_matrix::<f64>(&ternary(1, 0), 1).unwrap();
        let expect = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t[(i, j)], c(expect[i][j], 0.0));
            }
        }
        let back = shift_matrix::<f64>(&ternary(1, 0), -1).unwrap();
        assert_eq!(back[(0, 1)], c(1.0, 0.0));
        assert_eq!(back[(1, 2)], c(1.0, 0.0));
    }

    #[test]
    fn shift_group_law() {
        for spec in [ternary(2, 1), anti(3, 2), LatticeSpec::new(Base::Binary, 3, 0).unwrap()] {
            for a in -10i64..10 {
                for b in [-7i64, -1, 0, 3, 8] {
                    let ab = &shift_matrix::<f64>(&spec, a).unwrap() * &shift_matrix::<f64>(&spec, b).unwrap();
                    assert_eq!(ab, shift_matrix::<f64>(&spec, a + b).unwrap());
                }
            }
        }
    }

    #[test]
    fn dft_unitary_and_diagonalizes_shift() {
        for spec in [
            ternary(1, 0),
            ternary(2, 1),
            ternary(3, 2),
            ternary(2, 0).with_basis(Representation::Signed),
            anti(3, 1),
            LatticeSpec::new(Base::Binary, 4, 2).unwrap(),
        ] {
            let n = spec.dim();
            let f = dft_matrix::<f64>(&spec).unwrap();
            let fdf = &f.adjoint() * &f;
            assert!(fdf.max_abs_diff(&Matrix::identity(n)).unwrap() < 1e-12);
            let t = shift_matrix::<f64>(&spec, 1).unwrap();
            let d = &(&f.adjoint() * &t) * &f;
            assert!(d.is_diagonal(1e-12));
            let ps = spec.basis_labels(LatticeKind::Momentum, Representation::Nonnegative);
            for (j, p) in ps.iter().enumerate() {
                let want: Complex<f64> = rational_phase(&(spec.dx() * p));
                assert!((d[(j, j)] - want).norm() < 1e-12);
                let lam_n = want.powu(n as u32);
                let sign = if spec.boundary == Boundary::Antiperiodic { -1.0 } else { 1.0 };
                assert!((lam_n - c(sign, 0.0)).norm() < 1e-10);
            }
        }
        let trivial = dft_matrix::<f64>(&LatticeSpec::new(Base::Binary, 1, 0).unwrap()).unwrap();
        assert!((trivial[(1, 1)] - c(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn phase_matrix_values() {
        let spec = ternary(1, 0);
        assert_eq!(momentum_phase_matrix::<f64>(&spec, &ExactRational::zero()).unwrap(), Matrix::identity(3));
        let pi = momentum_phase_matrix::<f64>(&spec, &spec.momentum_period()).unwrap();
        assert!(pi.max_abs_diff(&Matrix::identity(3)).unwrap() < 1e-15);
        let s = momentum_phase_matrix::<f64>(&spec, &ExactRational::new(1, 3)).unwrap();
        let w = |t: f64| c((t * std::f64::consts::TAU).cos(), (t * std::f64::consts::TAU).sin());
        assert!((s[(0, 0)] - w(-2.0 / 3.0)).norm() < 1e-15);
        assert!((s[(1, 1)] - w(-1.0 / 3.0)).norm() < 1e-15);
        assert!((s[(2, 2)] - c(1.0, 0.0)).norm() < 1e-15);
        let half = LatticeSpec::with_options(Base::Binary, 3, 1, Boundary::Antiperiodic, Offset::HalfStep).unwrap();
        let p = momentum_phase_matrix::<f64>(&half, &(half.momentum_period() * ExactRational::integer(2))).unwrap();
        assert!(p.max_abs_diff(&Matrix::identity(8)).unwrap() < 1e-15);
    }

    #[test]
    fn arbitrary_shift_properties() {
        for spec in [ternary(2, 1), anti(3, 1)] {
            let dx = spec.dx();
            let t1 = arbitrary_shift::<f64>(&spec, &dx).unwrap();
            assert!(t1.max_abs_diff(&shift_matrix(&spec, 1).unwrap()).unwrap() < 1e-12);
            let period = arbitrary_shift::<f64>(&spec, &spec.period()).unwrap();
            let sign = if spec.boundary == Boundary::Antiperiodic { -1.0 } else { 1.0 };
            assert!(period.max_abs_diff(&Matrix::identity(spec.dim()).scale(c(sign, 0.0))).unwrap() < 1e-12);
            let a = ExactRational::new(2, 7);
            let b = ExactRational::new(-5, 11);
            let ta = arbitrary_shift::<f64>(&spec, &a).unwrap();
            let tb = arbitrary_shift::<f64>(&spec, &b).unwrap();
            let tab = arbitrary_shift::<f64>(&spec, &(&a + &b)).unwrap();
            assert!((&ta * &tb).max_abs_diff(&tab).unwrap() < 1e-10);
            let unit = &ta * &ta.adjoint();
            assert!(unit.max_abs_diff(&Matrix::identity(spec.dim())).unwrap() < 1e-12);
        }
        // Half a step does not map a basis vector onto a basis vector.
        let spec = ternary(2, 0);
        let half = arbitrary_shift::<f64>(&spec, &ExactRational::new(1, 2)).unwrap();
        let column: Vec<f64> = (0..9).map(|i| half[(i, 8)].norm()).collect();
        assert!(column.iter().filter(|v| **v > 1e-3).count() > 1);
    }

    #[test]
    fn projector_properties() {
        for spec in [ternary(1, 0), ternary(3, 1), anti(4, 2), ternary(4, 2)] {
            let n = spec.dim();
            let mut total = Matrix::<f64>::zeros(n, n);
            for j in 0..n {
                let p = LatticeValue::new(spec, LatticeKind::Momentum, j).unwrap();
                let proj = momentum_projector::<f64>(&spec, &p).unwrap();
                assert!(proj.is_hermitian(1e-12));
                assert!((&proj * &proj).max_abs_diff(&proj).unwrap() < 1e-12);
                assert!((proj.trace() - c(1.0, 0.0)).norm() < 1e-12);
                total.add_scaled(c(1.0, 0.0), &proj).unwrap();
            }
            assert!(total.max_abs_diff(&Matrix::identity(n)).unwrap() < 1e-12);
        }
        let spec = ternary(1, 0);
        let p0 = momentum_projector::<f64>(&spec, &LatticeValue::new(spec, LatticeKind::Momentum, 0).unwrap()).unwrap();
        assert!(p0.max_abs_diff(&Matrix::from_fn(3, 3, |_, _| c(1.0 / 3.0, 0.0))).unwrap() < 1e-15);
        let p1 = momentum_projector::<f64>(&spec, &LatticeValue::new(spec, LatticeKind::Momentum, 1).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d = (2 - i as i128) - (2 - j as i128);
                let want: Complex<f64> = unit_phase::<f64>(d, 3) / 3.0;
                assert!((p1[(i, j)] - want).norm() < 1e-15);
            }
        }
        let coord = LatticeValue::new(spec, LatticeKind::Coordinate, 0).unwrap();
        assert!(momentum_projector::<f64>(&spec, &coord).is_err());
    }

    #[test]
    fn rect_examples() {
        let full = rect_fourier_coefficients(5, 0, 4, c(2.0, 1.0)).unwrap();
        assert!((full[0] - c(2.0, 1.0)).norm() < 1e-15);
        assert!(full[1..].iter().all(|z| z.norm() < 1e-15));
        let delta = rect_fourier_coefficients(3, 0, 0, c(1.0, 0.0)).unwrap();
        assert!(delta.iter().all(|z| (z - c(1.0 / 3.0, 0.0)).norm() < 1e-15));
        assert!(rect_fourier_coefficients::<f64>(3, 2, 1, c(1.0, 0.0)).is_err());
        assert!(rect_fourier_coefficients::<f64>(3, 0, 3, c(1.0, 0.0)).is_err());
    }

    proptest! {
        #[test]
        fn rect_round_trip(t in 1usize..=81, a in 0usize..81, b in 0usize..81, re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let (s, f) = (a.min(b) % t, a.max(b) % t);
            let (s, f) = (s.min(f), s.max(f));
            let amp = c(re, im);
            let coeffs = rect_fourier_coefficients(t, s, f, amp).unwrap();
            let g = inverse_fourier(&coeffs);
            for (node, v) in g.iter().enumerate() {
                let want = if (s..=f).contains(&node) { amp } else { c(0.0, 0.0) };
                prop_assert!((v - want).norm() < 1e-12);
            }
        }
    }
}
