//! Closed forms of the digit operators on the smallest ternary lattices.
//!
//! Every matrix here is circulant: entry `(i, j)` depends only on
//! `(j - i) mod N`, and the constructors take the first row.

use num_complex::Complex;

use crate::matrix::Matrix;

/// Circulant matrix with `entry(i, j) = first_row[(j - i) mod N]`.
pub fn circulant(first_row: &[Complex<f64>]) -> Matrix<f64> {
    let n = first_row.len();
    Matrix::from_fn(n, n, |i, j| first_row[(j + n - i) % n])
}

/// `E_n = 1/(e^{-2πin/9} - 1)`.
pub fn e_n(n: u32) -> Complex<f64> {
    let t = -std::f64::consts::TAU * n as f64 / 9.0;
    Complex::new(1.0, 0.0) / (Complex::new(t.cos(), t.sin()) - 1.0)
}

/// `G_n = (-1)^{n+1}/(2√3·sin(πn/9))`.
pub fn g_n(n: u32) -> f64 {
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    sign / (2.0 * 3f64.sqrt() * (std::f64::consts::PI * n as f64 / 9.0).sin())
}

fn real(v: f64) -> Complex<f64> {
    Complex::new(v, 0.0)
}

fn zero() -> Complex<f64> {
    real(0.0)
}

/// Symmetric ternary, `N = 3`: `p̂_{-1} = (1/√3)·circ(0, i, -i)`.
pub fn symmetric_n1_momentum_digit() -> Matrix<f64> {
    let s = 1.0 / 3f64.sqrt();
    circulant(&[zero(), Complex::new(0.0, s), Complex::new(0.0, -s)])
}

/// Non-symmetric ternary, `N = 3`:
/// `p̂_{-1} = (1/6)·circ(6, -3 - √3i, -3 + √3i)`.
pub fn nonsymmetric_n1_momentum_digit() -> Matrix<f64> {
    let r3 = 3f64.sqrt();
    circulant(&[real(1.0), Complex::new(-0.5, -r3 / 6.0), Complex::new(-0.5, r3 / 6.0)])
}

/// Non-symmetric ternary, `N = 9`: `p̂_{-1} = (1/3)·circ(3, E₈, E₇, 0, E₅, E₄, 0, E₂, E₁)`.
pub fn nonsymmetric_n2_momentum_digit_1() -> Matrix<f64> {
    let row = [real(3.0), e_n(8), e_n(7), zero(), e_n(5), e_n(4), zero(), e_n(2), e_n(1)];
    circulant(&row).scale(real(1.0 / 3.0))
}

/// Non-symmetric ternary, `N = 9`: `p̂_{-2} = circ(1, 0, 0, E₆, 0, 0, E₃, 0, 0)`.
pub fn nonsymmetric_n2_momentum_digit_2() -> Matrix<f64> {
    let row = [real(1.0), zero(), zero(), e_n(6), zero(), zero(), e_n(3), zero(), zero()];
    circulant(&row)
}

/// Non-symmetric ternary, `N = 9`: `p̂ = (1/9)·circ(4, E₈, E₇, …, E₁)`.
pub fn nonsymmetric_n2_momentum() -> Matrix<f64> {
    let mut row = vec![real(4.0)];
    row.extend((1..9).rev().map(e_n));
    circulant(&row).scale(real(1.0 / 9.0))
}

fn inv_sqrt3_i() -> Complex<f64> {
    Complex::new(1.0, 0.0) / Complex::new(0.0, 3f64.sqrt())
}

/// Symmetric ternary, `N = 9`:
/// `p̂_{-1} = (1/(√3 i))·circ(0, G₈, G₇, 0, G₅, G₄, 0, G₂, G₁)`.
pub fn symmetric_n2_momentum_digit_1() -> Matrix<f64> {
    let g = |n| real(g_n(n));
    let row = [zero(), g(8), g(7), zero(), g(5), g(4), zero(), g(2), g(1)];
    circulant(&row).scale(inv_sqrt3_i())
}

/// Symmetric ternary, `N = 9`: `p̂_{-2} = -(1/(√3 i))·circ(0, 0, 0, 1, 0, 0, -1, 0, 0)`.
pub fn symmetric_n2_momentum_digit_2() -> Matrix<f64> {
    let row = [zero(), zero(), zero(), real(1.0), zero(), zero(), real(-1.0), zero(), zero()];
    circulant(&row).scale(-inv_sqrt3_i())
}

/// Symmetric ternary, `N = 9`:
/// `p̂ = (1/(9√3 i))·circ(0, 3G₈, 3G₇, -1, 3G₅, 3G₄, 1, 3G₂, 3G₁)`.
pub fn symmetric_n2_momentum() -> Matrix<f64> {
    let g = |n| real(3.0 * g_n(n));
    let row = [zero(), g(8), g(7), real(-1.0), g(5), g(4), real(1.0), g(2), g(1)];
    circulant(&row).scale(inv_sqrt3_i() / 9.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_are_hermitian() {
        for m in [
            symmetric_n1_momentum_digit(),
            nonsymmetric_n1_momentum_digit(),
            nonsymmetric_n2_momentum_digit_1(),
            nonsymmetric_n2_momentum_digit_2(),
            nonsymmetric_n2_momentum(),
            symmetric_n2_momentum_digit_1(),
            symmetric_n2_momentum_digit_2(),
            symmetric_n2_momentum(),
        ] {
            assert!(m.is_hermitian(1e-14));
        }
    }

    #[test]
    fn momentum_is_digit_sum() {
        let a = nonsymmetric_n2_momentum_digit_1().scale(real(1.0 / 3.0));
        let b = nonsymmetric_n2_momentum_digit_2().scale(real(1.0 / 9.0));
        assert!((&a + &b).max_abs_diff(&nonsymmetric_n2_momentum()).unwrap() < 1e-15);
        let a = symmetric_n2_momentum_digit_1().scale(real(1.0 / 3.0));
        let b = symmetric_n2_momentum_digit_2().scale(real(1.0 / 9.0));
        assert!((&a + &b).max_abs_diff(&symmetric_n2_momentum()).unwrap() < 1e-15);
    }

    #[test]
    fn e_n_conjugate_pairs() {
        for n in 1..9 {
            assert!((e_n(n).conj() - e_n(9 - n)).norm() < 1e-14);
        }
        assert!((g_n(1) - 1.0 / (2.0 * 3f64.sqrt() * (std::f64::consts::PI / 9.0).sin())).abs() < 1e-15);
    }
}
