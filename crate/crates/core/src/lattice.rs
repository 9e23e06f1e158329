//! Lattice geometry: coordinate and momentum grids of `q^n` nodes.
//!
//! Node `k ∈ Z_N` of the coordinate lattice sits at `k·Δx` (or `(k+½)·Δx`
//! on a half-step lattice); node `j` of the momentum lattice sits at `j·Δp`
//! (or `(j+½)·Δp` under the antiperiodic boundary). Vectors and matrices
//! list nodes by decreasing value in the spec's basis labelling. For the
//! nonnegative labels row `i` holds node `N-1-i`; every other labelling
//! gives a cyclic rotation of that order.

use std::fmt;

use crate::digits::{DigitSystem, Flavor};
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Largest lattice handled by the dense matrix constructors (`3^8`).
pub const MAX_DENSE_DIM: usize = 6561;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Binary,
    Ternary,
}

impl Base {
    pub const fn radix(self) -> u32 {
        match self {
            Base::Binary => 2,
            Base::Ternary => 3,
        }
    }

    pub fn from_radix(q: u32) -> Result<Self> {
        match q {
            2 => Ok(Base::Binary),
            3 => Ok(Base::Ternary),
            _ => Err(Error::Unsupported(format!("base {q}; only 2 and 3 are implemented"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    #[default]
    Periodic,
    /// `ψ(x + Ξ) = -ψ(x)`; momenta move to `Δp·(½ + Z_N)`.
    Antiperiodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Offset {
    #[default]
    None,
    /// Coordinate nodes at `Δx·(½ + Z_N)`.
    HalfStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Coordinate,
    Momentum,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Coordinate => "coordinate",
            LatticeKind::Momentum => "momentum",
        }
    }
}

/// How lattice nodes are labelled by real numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Representation {
    /// `{0, step, …, (N-1)·step}`, plus half a step on offset lattices.
    #[default]
    Nonnegative,
    /// Balanced residues for odd `N`, `{-N/2, …, N/2-1}·step` for even `N`.
    /// On half-step lattices the labels are `(k + ½ - N/2)·step`, the value
    /// read off the symmetric binary digits (origin moved by half a period).
    Signed,
    /// Image of the top-digit renormalization: nodes whose leading base-q
    /// digit is `q-1` are moved down by one period, giving
    /// `{-q^{n-1}, …, (q-1)·q^{n-1}-1}·step`. On half-step lattices this is
    /// the residue of `(k+½)·step` closest to zero.
    Renormalized,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Nonnegative => "nonnegative",
            Representation::Signed => "signed",
            Representation::Renormalized => "renormalized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    pub base: Base,
    /// Total digit count; `N = q^n`.
    pub n: u32,
    /// Digits after the point; `Δx = q^{-n_minus}`.
    pub n_minus: u32,
    pub boundary: Boundary,
    pub offset: Offset,
    /// Labelling whose decreasing order fixes the matrix rows.
    pub basis: Representation,
}

impl LatticeSpec {
    /// Periodic lattice without offset.
    pub fn new(base: Base, n: u32, n_minus: u32) -> Result<Self> {
        Self::with_options(base, n, n_minus, Boundary::Periodic, Offset::None)
    }

    pub fn with_options(
        base: Base,
        n: u32,
        n_minus: u32,
        boundary: Boundary,
        offset: Offset,
    ) -> Result<Self> {
        let spec = Self {
            base,
            n,
            n_minus,
            boundary,
            offset,
            basis: Representation::Nonnegative,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Antiperiodic half-step lattice carrying the symmetric binary digits.
    pub fn binary_symmetric(n: u32, n_minus: u32) -> Result<Self> {
        Self::with_options(
            Base::Binary,
            n,
            n_minus,
            Boundary::Antiperiodic,
            Offset::HalfStep,
        )
    }

    /// The lattice a digit system lives on by default, with rows ordered
    /// by the system's natural labels.
    pub fn for_system(system: DigitSystem, n: u32, n_minus: u32) -> Result<Self> {
        let spec = if system.needs_half_lattices() {
            Self::binary_symmetric(n, n_minus)?
        } else {
            Self::new(system.base, n, n_minus)?
        };
        Ok(spec.with_basis(system.natural_representation()))
    }

    /// Same lattice with rows ordered by decreasing `rep` labels.
    pub fn with_basis(mut self, rep: Representation) -> Self {
        self.basis = rep;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if self.n_minus > self.n {
            return Err(Error::InvalidSpec(format!(
                "n_minus = {} exceeds n = {}",
                self.n_minus, self.n
            )));
        }
        let max_n = match self.base {
            Base::Binary => 40,
            Base::Ternary => 25,
        };
        if self.n > max_n {
            return Err(Error::InvalidSpec(format!(
                "n = {} exceeds the supported maximum {max_n} for base {}",
                self.n,
                self.q()
            )));
        }
        if self.base == Base::Ternary
            && (self.boundary == Boundary::Antiperiodic || self.offset == Offset::HalfStep)
        {
            return Err(Error::InvalidSpec(
                "antiperiodic boundary and half-step offset require base 2".into(),
            ));
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.base.radix()
    }

    pub fn n_plus(&self) -> u32 {
        self.n - self.n_minus
    }

    pub fn dim(&self) -> usize {
        (self.q() as usize).pow(self.n)
    }

    pub fn dx(&self) -> ExactRational {
        ExactRational::power(self.q(), -(self.n_minus as i32))
    }

    pub fn dp(&self) -> ExactRational {
        ExactRational::power(self.q(), -(self.n_plus() as i32))
    }

    /// Coordinate period `Ξ = N·Δx = q^{n_plus}`.
    pub fn period(&self) -> ExactRational {
        ExactRational::power(self.q(), self.n_plus() as i32)
    }

    /// Momentum period `Π = N·Δp = q^{n_minus}`.
    pub fn momentum_period(&self) -> ExactRational {
        ExactRational::power(self.q(), self.n_minus as i32)
    }

    pub fn step(&self, kind: LatticeKind) -> ExactRational {
        match kind {
            LatticeKind::Coordinate => self.dx(),
            LatticeKind::Momentum => self.dp(),
        }
    }

    pub fn kind_period(&self, kind: LatticeKind) -> ExactRational {
        match kind {
            LatticeKind::Coordinate => self.period(),
            LatticeKind::Momentum => self.momentum_period(),
        }
    }

    /// Whether nodes of `kind` sit half a step off the integers.
    pub fn is_half(&self, kind: LatticeKind) -> bool {
        match kind {
            LatticeKind::Coordinate => self.offset == Offset::HalfStep,
            LatticeKind::Momentum => self.boundary == Boundary::Antiperiodic,
        }
    }

    /// Inclusive digit range `(lo, hi)`: `[-n_minus, n_plus-1]` for the
    /// coordinate and `[-n_plus, n_minus-1]` for the momentum.
    pub fn digit_range(&self, kind: LatticeKind) -> (i32, i32) {
        let (below, above) = match kind {
            LatticeKind::Coordinate => (self.n_minus, self.n_plus()),
            LatticeKind::Momentum => (self.n_plus(), self.n_minus),
        };
        (-(below as i32), above as i32 - 1)
    }

    pub fn check_digit_index(&self, kind: LatticeKind, index: i32) -> Result<()> {
        let (min, max) = self.digit_range(kind);
        if index < min || index > max {
            return Err(Error::DigitIndexOutOfRange {
                observable: kind.name(),
                index,
                min,
                max,
            });
        }
        Ok(())
    }

    /// Checks that `system`'s digits are well defined on this lattice.
    pub fn check_system(&self, system: DigitSystem) -> Result<()> {
        if system.base != self.base {
            return Err(Error::IncompatibleSystem {
                system,
                reason: "digit base differs from lattice base",
            });
        }
        let half = self.boundary == Boundary::Antiperiodic && self.offset == Offset::HalfStep;
        if system.needs_half_lattices() && !half {
            return Err(Error::IncompatibleSystem {
                system,
                reason: "symmetric binary digits need an antiperiodic half-step lattice",
            });
        }
        if !system.needs_half_lattices()
            && (self.boundary == Boundary::Antiperiodic || self.offset == Offset::HalfStep)
        {
            return Err(Error::IncompatibleSystem {
                system,
                reason: "only symmetric binary digits live on half-step lattices",
            });
        }
        Ok(())
    }

    /// Twice the node value in units of the step: `2k` or `2k+1`.
    pub(crate) fn doubled_index(&self, kind: LatticeKind, k: usize) -> i128 {
        2 * k as i128 + self.is_half(kind) as i128
    }

    /// Value of node `k` in the nonnegative representation.
    pub fn node_value(&self, kind: LatticeKind, k: usize) -> ExactRational {
        ExactRational::new(self.doubled_index(kind, k) as i64, 2) * self.step(kind)
    }

    /// Value of node `k` in `rep`.
    pub fn node_value_in(&self, kind: LatticeKind, k: usize, rep: Representation) -> ExactRational {
        let n = self.dim() as i64;
        let half = self.is_half(kind);
        let doubled = self.doubled_index(kind, k) as i64;
        let shifted = match rep {
            Representation::Nonnegative => doubled,
            Representation::Signed if half => doubled - n,
            Representation::Signed => {
                let k = k as i64;
                let wraps = if n % 2 == 1 { 2 * k > n - 1 } else { 2 * k >= n };
                if wraps {
                    doubled - 2 * n
                } else {
                    doubled
                }
            }
            Representation::Renormalized if half => {
                if doubled > n {
                    doubled - 2 * n
                } else {
                    doubled
                }
            }
            Representation::Renormalized => {
                let q = self.q() as i64;
                if (k as i64) * q >= (q - 1) * n {
                    doubled - 2 * n
                } else {
                    doubled
                }
            }
        };
        ExactRational::new(shifted, 2) * self.step(kind)
    }

    /// Node index of an exact value, reducing modulo the period.
    pub fn node_index(&self, kind: LatticeKind, value: &ExactRational) -> Result<usize> {
        let step = self.step(kind);
        let mut units = value / &step;
        if self.is_half(kind) {
            units = units - ExactRational::new(1, 2);
        }
        if !units.is_integer() {
            return Err(Error::OffLattice {
                value: value.to_string(),
                lattice: kind.name(),
            });
        }
        let n = ExactRational::integer(self.dim() as i64);
        let k = units.rem_euclid(&n);
        Ok(k.to_i64().expect("reduced index fits i64") as usize)
    }

    /// Node carrying the largest label in `rep`.
    fn top_node(&self, kind: LatticeKind, rep: Representation) -> usize {
        let n = self.dim();
        let half = self.is_half(kind);
        match rep {
            Representation::Nonnegative => n - 1,
            Representation::Signed if half => n - 1,
            Representation::Signed if n % 2 == 1 => (n - 1) / 2,
            Representation::Signed => n / 2 - 1,
            Representation::Renormalized if half => (n - 1) / 2,
            Representation::Renormalized => {
                let q = self.q() as usize;
                (q - 1) * (n / q) - 1
            }
        }
    }

    /// Node listed `position`-th when sorting by decreasing `rep` label.
    fn node_at(&self, kind: LatticeKind, rep: Representation, position: usize) -> usize {
        let n = self.dim();
        (self.top_node(kind, rep) + n - position % n) % n
    }

    /// Node held by matrix row (or column) `row`.
    pub fn node_at_row(&self, kind: LatticeKind, row: usize) -> usize {
        self.node_at(kind, self.basis, row)
    }

    /// Matrix row (or column) holding node `k`.
    pub fn row_of_node(&self, kind: LatticeKind, k: usize) -> usize {
        let n = self.dim();
        (self.top_node(kind, self.basis) + n - k % n) % n
    }

    fn values(&self, kind: LatticeKind, rep: Representation) -> Vec<ExactRational> {
        (0..self.dim())
            .map(|i| self.node_value_in(kind, self.node_at(kind, rep, i), rep))
            .collect()
    }

    /// Coordinate node values in decreasing order.
    pub fn coordinate_values(&self, rep: Representation) -> Vec<ExactRational> {
        self.values(LatticeKind::Coordinate, rep)
    }

    /// Momentum node values in decreasing order.
    pub fn momentum_values(&self, rep: Representation) -> Vec<ExactRational> {
        self.values(LatticeKind::Momentum, rep)
    }

    /// Labels in `rep` of the nodes in matrix row order.
    pub fn basis_labels(&self, kind: LatticeKind, rep: Representation) -> Vec<ExactRational> {
        (0..self.dim())
            .map(|i| self.node_value_in(kind, self.node_at_row(kind, i), rep))
            .collect()
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} n={} n_minus={}", self.q(), self.n, self.n_minus)?;
        if self.boundary == Boundary::Antiperiodic {
            write!(f, " antiperiodic")?;
        }
        if self.offset == Offset::HalfStep {
            write!(f, " half-step")?;
        }
        Ok(())
    }
}

/// A node of one of the two lattices of a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeValue {
    pub spec: LatticeSpec,
    pub kind: LatticeKind,
    pub index: usize,
}

impl LatticeValue {
    pub fn new(spec: LatticeSpec, kind: LatticeKind, index: usize) -> Result<Self> {
        if index >= spec.dim() {
            return Err(Error::OffLattice {
                value: format!("index {index}"),
                lattice: kind.name(),
            });
        }
        Ok(Self { spec, kind, index })
    }

    pub fn from_value(spec: LatticeSpec, kind: LatticeKind, value: &ExactRational) -> Result<Self> {
        let index = spec.node_index(kind, value)?;
        Ok(Self { spec, kind, index })
    }

    pub fn coordinate(spec: LatticeSpec, value: &ExactRational) -> Result<Self> {
        Self::from_value(spec, LatticeKind::Coordinate, value)
    }

    pub fn momentum(spec: LatticeSpec, value: &ExactRational) -> Result<Self> {
        Self::from_value(spec, LatticeKind::Momentum, value)
    }

    pub fn value(&self) -> ExactRational {
        self.spec.node_value(self.kind, self.index)
    }

    pub fn value_in(&self, rep: Representation) -> ExactRational {
        self.spec.node_value_in(self.kind, self.index, rep)
    }

    /// `index + steps` modulo `N`.
    pub fn shifted(&self, steps: i64) -> Self {
        let n = self.spec.dim() as i64;
        Self {
            index: (self.index as i64 + steps).rem_euclid(n) as usize,
            ..self.clone()
        }
    }
}

impl DigitSystem {
    /// The representation in which the plain digit sum labels the nodes.
    pub fn natural_representation(&self) -> Representation {
        match self.flavor {
            Flavor::Nonsymmetric => Representation::Nonnegative,
            Flavor::Symmetric => Representation::Signed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[ExactRational]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn derived_quantities() {
        let spec = LatticeSpec::new(Base::Ternary, 3, 1).unwrap();
        assert_eq!(spec.dim(), 27);
        assert_eq!(spec.dx(), ExactRational::new(1, 3));
        assert_eq!(spec.dp(), ExactRational::new(1, 9));
        assert_eq!(spec.period(), ExactRational::integer(9));
        assert_eq!(spec.momentum_period(), ExactRational::integer(3));
        assert_eq!(spec.dx() * spec.dp(), ExactRational::new(1, 27));
        assert_eq!(spec.period() * spec.momentum_period(), ExactRational::integer(27));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(LatticeSpec::new(Base::Ternary, 0, 0).is_err());
        assert!(LatticeSpec::new(Base::Binary, 2, 3).is_err());
        assert!(LatticeSpec::with_options(
            Base::Ternary,
            2,
            0,
            Boundary::Antiperiodic,
            Offset::None
        )
        .is_err());
        assert!(LatticeSpec::with_options(Base::Ternary, 2, 0, Boundary::Periodic, Offset::HalfStep)
            .is_err());
    }

    #[test]
    fn ternary_coordinate_lists() {
        let n1 = LatticeSpec::new(Base::Ternary, 1, 0).unwrap();
        assert_eq!(ints(&n1.coordinate_values(Representation::Signed)), vec![1, 0, -1]);
        let n2 = LatticeSpec::new(Base::Ternary, 2, 0).unwrap();
        assert_eq!(
            ints(&n2.coordinate_values(Representation::Signed)),
            vec![4, 3, 2, 1, 0, -1, -2, -3, -4]
        );
        assert_eq!(
            ints(&n2.coordinate_values(Representation::Nonnegative)),
            vec![8, 7, 6, 5, 4, 3, 2, 1, 0]
        );
        assert_eq!(
            ints(&n2.coordinate_values(Representation::Renormalized)),
            vec![5, 4, 3, 2, 1, 0, -1, -2, -3]
        );
        assert_eq!(
            ints(&n2.basis_labels(LatticeKind::Coordinate, Representation::Renormalized)),
            vec![-1, -2, -3, 5, 4, 3, 2, 1, 0]
        );
        let balanced = n2.with_basis(Representation::Signed);
        assert_eq!(
            ints(&balanced.basis_labels(LatticeKind::Coordinate, Representation::Signed)),
            vec![4, 3, 2, 1, 0, -1, -2, -3, -4]
        );
        for i in 0..9 {
            let k = balanced.node_at_row(LatticeKind::Coordinate, i);
            assert_eq!(balanced.row_of_node(LatticeKind::Coordinate, k), i);
        }
    }

    #[test]
    fn momentum_lists() {
        let n1 = LatticeSpec::new(Base::Ternary, 1, 0).unwrap();
        assert_eq!(
            n1.momentum_values(Representation::Nonnegative),
            vec![ExactRational::new(2, 3), ExactRational::new(1, 3), ExactRational::zero()]
        );
        assert_eq!(
            n1.momentum_values(Representation::Signed),
            vec![ExactRational::new(1, 3), ExactRational::zero(), ExactRational::new(-1, 3)]
        );
        let anti =
            LatticeSpec::with_options(Base::Binary, 2, 0, Boundary::Antiperiodic, Offset::None)
                .unwrap();
        assert_eq!(
            anti.momentum_values(Representation::Nonnegative),
            vec![
                ExactRational::new(7, 8),
                ExactRational::new(5, 8),
                ExactRational::new(3, 8),
                ExactRational::new(1, 8)
            ]
        );
    }

    #[test]
    fn half_step_labels() {
        let spec = LatticeSpec::binary_symmetric(2, 0).unwrap();
        let signed = spec.coordinate_values(Representation::Signed);
        assert_eq!(
            signed,
            vec![
                ExactRational::new(3, 2),
                ExactRational::new(1, 2),
                ExactRational::new(-1, 2),
                ExactRational::new(-3, 2)
            ]
        );
        let renorm = spec.basis_labels(LatticeKind::Coordinate, Representation::Renormalized);
        assert_eq!(
            renorm,
            vec![
                ExactRational::new(-1, 2),
                ExactRational::new(-3, 2),
                ExactRational::new(3, 2),
                ExactRational::new(1, 2)
            ]
        );
        assert_eq!(spec.coordinate_values(Representation::Renormalized), signed);
    }

    #[test]
    fn node_index_round_trip_and_off_lattice() {
        let spec = LatticeSpec::binary_symmetric(3, 1).unwrap();
        for k in 0..spec.dim() {
            for rep in [
                Representation::Nonnegative,
                Representation::Signed,
                Representation::Renormalized,
            ] {
                let v = spec.node_value_in(LatticeKind::Coordinate, k, rep);
                if rep == Representation::Signed {
                    // Signed labels on half-step lattices move the origin.
                    continue;
                }
                assert_eq!(spec.node_index(LatticeKind::Coordinate, &v).unwrap(), k);
            }
        }
        assert!(matches!(
            spec.node_index(LatticeKind::Coordinate, &ExactRational::zero()),
            Err(Error::OffLattice { .. })
        ));
    }

    #[test]
    fn digit_ranges() {
        let spec = LatticeSpec::new(Base::Ternary, 5, 2).unwrap();
        assert_eq!(spec.digit_range(LatticeKind::Coordinate), (-2, 2));
        assert_eq!(spec.digit_range(LatticeKind::Momentum), (-3, 1));
        assert!(spec.check_digit_index(LatticeKind::Momentum, -4).is_err());
    }
}
