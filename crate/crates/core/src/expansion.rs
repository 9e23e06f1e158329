//! Operators written as an identity term plus a weighted sum of shifts.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{LatticeKind, LatticeSpec};
use crate::matrix::Matrix;
use crate::operators::{arbitrary_shift, check_dense, rational_phase, shift_entry};
use crate::rational::ExactRational;
use crate::scalar::Scalar;

/// Where the shifts act.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Lattice(LatticeSpec),
    /// The infinite line; such expansions are coefficient tables only.
    Line,
}

/// Which family of shifts the terms use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSide {
    /// Coordinate shifts: a term `(A, c)` stands for `c·T_{-A}`.
    Coordinate,
    /// Momentum shifts: a term `(B, c)` stands for `c·Ŝ_B = c·e^{-2πi x̂ B}`.
    Momentum,
}

/// `identity·1 + Σ c·T_{-A}` (or `Σ c·Ŝ_B`), with distinct nonzero shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftExpansion<T: Scalar> {
    pub domain: Domain,
    pub side: ShiftSide,
    pub identity: Complex<T>,
    terms: BTreeMap<ExactRational, Complex<T>>,
}

impl<T: Scalar> ShiftExpansion<T> {
    pub fn new(domain: Domain, side: ShiftSide) -> Self {
        Self {
            domain,
            side,
            identity: Complex::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn with_identity(mut self, c: Complex<T>) -> Self {
        self.identity = c;
        self
    }

    /// Adds `c` to the coefficient of the shift `amount`; a zero shift
    /// joins the identity term.
    pub fn add_term(&mut self, amount: ExactRational, c: Complex<T>) {
        if amount.is_zero() {
            self.identity += c;
            return;
        }
        *self.terms.entry(amount).or_insert_with(Complex::zero) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExactRational, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, amount: &ExactRational) -> Option<Complex<T>> {
        self.terms.get(amount).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self {
            domain: self.domain,
            side: self.side,
            identity: self.identity * c,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), *v * c)).collect(),
        }
    }

    /// `α·self + β·other`.
    pub fn linear_combination(&self, alpha: Complex<T>, other: &Self, beta: Complex<T>) -> Result<Self> {
        if self.domain != other.domain || self.side != other.side {
            return Err(Error::Precondition(
                "expansions live on different domains or shift families".into(),
            ));
        }
        let mut out = self.scaled(alpha);
        out.identity += other.identity * beta;
        for (a, c) in &other.terms {
            out.add_term(a.clone(), *c * beta);
        }
        Ok(out)
    }

    fn lattice(&self) -> Result<&LatticeSpec> {
        match &self.domain {
            Domain::Lattice(spec) => Ok(spec),
            Domain::Line => Err(Error::Unsupported(
                "line expansions have no finite matrix".into(),
            )),
        }
    }

    /// Dense matrix of the expansion; coordinate shifts must be multiples
    /// of `Δx`.
    pub fn materialize(&self) -> Result<Matrix<T>> {
        self.build(false)
    }

    /// Like [`Self::materialize`], but builds shifts that are not multiples
    /// of `Δx` spectrally.
    pub fn materialize_with_spectral_fallback(&self) -> Result<Matrix<T>> {
        self.build(true)
    }

    fn build(&self, fallback: bool) -> Result<Matrix<T>> {
        let spec = *self.lattice()?;
        let n = check_dense(&spec)?;
        let mut m = Matrix::identity(n).scale(self.identity);
        match self.side {
            ShiftSide::Coordinate => {
                let dx = spec.dx();
                for (a, c) in &self.terms {
                    match lattice_steps(a, &dx) {
                        Some(steps) => add_shift(&mut m, &spec, -steps, *c),
                        None if fallback => {
                            let t = arbitrary_shift::<T>(&spec, &-a)?;
                            m.add_scaled(*c, &t)?;
                        }
                        None => {
                            return Err(Error::OffLattice {
                                value: a.to_string(),
                                lattice: "coordinate",
                            })
                        }
                    }
                }
            }
            ShiftSide::Momentum => {
                let values: Vec<ExactRational> =
                    (0..n).map(|i| spec.node_value(LatticeKind::Coordinate, spec.node_at_row(LatticeKind::Coordinate, i))).collect();
                for (b, c) in &self.terms {
                    for (i, x) in values.iter().enumerate() {
                        m[(i, i)] += *c * rational_phase::<T>(&-(x * b));
                    }
                }
            }
        }
        Ok(m)
    }
}

/// `a/Δx` when it is an integer.
pub(crate) fn lattice_steps(a: &ExactRational, dx: &ExactRational) -> Option<i64> {
    (a / dx).to_i64()
}

/// `m += c·T_{steps·Δx}` in `O(N)`.
pub(crate) fn add_shift<T: Scalar>(m: &mut Matrix<T>, spec: &LatticeSpec, steps: i64, c: Complex<T>) {
    for i in 0..m.rows() {
        let (j, negative) = shift_entry(spec, steps, i);
        m[(i, j)] += if negative { -c } else { c };
    }
}
