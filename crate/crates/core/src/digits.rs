//! Digit functions of the four number systems and the sums built from them.
//!
//! All plateaus are left-closed: the digit of `x` at position `s` is constant
//! on `[a, b)`. On lattice nodes the convention never matters, since every
//! node sits strictly inside a plateau.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{Base, LatticeKind, LatticeSpec, LatticeValue};
use crate::rational::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Alphabet centred at zero: `{-1, 0, 1}` or `{-½, ½}`.
    Symmetric,
    /// Standard alphabet `{0, …, q-1}`.
    Nonsymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitSystem {
    pub base: Base,
    pub flavor: Flavor,
}

impl DigitSystem {
    pub const BINARY_SYMMETRIC: Self = Self::new(Base::Binary, Flavor::Symmetric);
    pub const BINARY_NONSYMMETRIC: Self = Self::new(Base::Binary, Flavor::Nonsymmetric);
    pub const TERNARY_SYMMETRIC: Self = Self::new(Base::Ternary, Flavor::Symmetric);
    pub const TERNARY_NONSYMMETRIC: Self = Self::new(Base::Ternary, Flavor::Nonsymmetric);

    pub const ALL: [Self; 4] = [
        Self::BINARY_SYMMETRIC,
        Self::BINARY_NONSYMMETRIC,
        Self::TERNARY_SYMMETRIC,
        Self::TERNARY_NONSYMMETRIC,
    ];

    pub const fn new(base: Base, flavor: Flavor) -> Self {
        Self { base, flavor }
    }

    pub fn q(&self) -> u32 {
        self.base.radix()
    }

    pub fn is_symmetric(&self) -> bool {
        self.flavor == Flavor::Symmetric
    }

    /// Symmetric binary digits only exist on antiperiodic half-step lattices.
    pub fn needs_half_lattices(&self) -> bool {
        *self == Self::BINARY_SYMMETRIC
    }

    /// Digit alphabet in increasing order.
    pub fn alphabet(&self) -> Vec<Digit> {
        match (self.base, self.flavor) {
            (Base::Binary, Flavor::Nonsymmetric) => vec![Digit::int(0), Digit::int(1)],
            (Base::Binary, Flavor::Symmetric) => vec![Digit::from_halves(-1), Digit::from_halves(1)],
            (Base::Ternary, Flavor::Nonsymmetric) => {
                vec![Digit::int(0), Digit::int(1), Digit::int(2)]
            }
            (Base::Ternary, Flavor::Symmetric) => vec![Digit::int(-1), Digit::int(0), Digit::int(1)],
        }
    }

    /// Value of all digits far above the leading one.
    pub fn tail(&self, negative: bool) -> Digit {
        match (self.base, self.flavor, negative) {
            (_, Flavor::Nonsymmetric, false) => Digit::int(0),
            (_, Flavor::Nonsymmetric, true) => Digit::int(self.q() as i8 - 1),
            (Base::Ternary, Flavor::Symmetric, _) => Digit::int(0),
            (Base::Binary, Flavor::Symmetric, false) => Digit::from_halves(-1),
            (Base::Binary, Flavor::Symmetric, true) => Digit::from_halves(1),
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.base, self.flavor) {
            (Base::Binary, Flavor::Symmetric) => "binary-symmetric",
            (Base::Binary, Flavor::Nonsymmetric) => "binary-nonsymmetric",
            (Base::Ternary, Flavor::Symmetric) => "ternary-symmetric",
            (Base::Ternary, Flavor::Nonsymmetric) => "ternary-nonsymmetric",
        }
    }
}

impl fmt::Display for DigitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DigitSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|sys| sys.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("digit system {s:?}")))
    }
}

/// A digit value, stored in units of one half so that `±½` is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digit(i8);

impl Digit {
    pub const fn int(v: i8) -> Self {
        Self(2 * v)
    }

    pub const fn from_halves(h: i8) -> Self {
        Self(h)
    }

    pub fn halves(self) -> i8 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> ExactRational {
        ExactRational::new(self.0 as i64, 2)
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

fn digit_from_plateau(system: DigitSystem, plateau: i64) -> Digit {
    match (system.base, system.flavor) {
        (_, Flavor::Nonsymmetric) => Digit::int(plateau as i8),
        (Base::Ternary, Flavor::Symmetric) => Digit::int([0, 1, -1][plateau as usize]),
        (Base::Binary, Flavor::Symmetric) => Digit::from_halves(2 * plateau as i8 - 1),
    }
}

/// The digit of `x` at position `s` (weight `q^s`).
pub fn digit(system: DigitSystem, s: i32, x: &ExactRational) -> Digit {
    let q = system.q();
    let u = ExactRational::power(q, s);
    let period = &u * ExactRational::integer(q as i64);
    let shifted = if system == DigitSystem::TERNARY_SYMMETRIC {
        x + &u * ExactRational::new(1, 2)
    } else {
        x.clone()
    };
    let plateau = (shifted.rem_euclid(&period) / u).floor();
    digit_from_plateau(system, plateau.to_i64().expect("plateau index below q"))
}

/// Digit at position `s` of a lattice node, in integer arithmetic.
///
/// The node value is `doubled / (2·q^e)` with `e = n_minus` for coordinates
/// and `e = n_plus` for momenta.
pub fn lattice_digit(spec: &LatticeSpec, system: DigitSystem, kind: LatticeKind, s: i32, k: usize) -> Digit {
    let q = system.q() as i128;
    let e = match kind {
        LatticeKind::Coordinate => spec.n_minus as i32,
        LatticeKind::Momentum => spec.n_plus() as i32,
    };
    let m = e + s;
    let doubled = spec.doubled_index(kind, k);
    if m < 0 {
        let value = spec.node_value(kind, k);
        return digit(system, s, &value);
    }
    let den = 2 * q.pow(m as u32);
    let numer = if system == DigitSystem::TERNARY_SYMMETRIC {
        doubled + den / 2
    } else {
        doubled
    };
    let plateau = numer.div_euclid(den).rem_euclid(q);
    digit_from_plateau(system, plateau as i64)
}

/// Digits of a number over a finite window of positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSequence {
    pub system: DigitSystem,
    pub s_min: i32,
    pub s_max: i32,
    /// `digits[i]` is the digit at position `s_min + i`.
    pub digits: Vec<Digit>,
    /// Digit repeated above `s_max`.
    pub tail: Digit,
}

impl DigitSequence {
    pub fn get(&self, s: i32) -> Digit {
        if s > self.s_max {
            self.tail
        } else if s < self.s_min {
            digit_from_plateau(self.system, 0)
        } else {
            self.digits[(s - self.s_min) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, Digit)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .map(move |(i, d)| (self.s_min + i as i32, *d))
    }
}

pub fn expand(system: DigitSystem, x: &ExactRational, s_min: i32, s_max: i32) -> Result<DigitSequence> {
    if s_min > s_max {
        return Err(Error::Precondition(format!("s_min = {s_min} exceeds s_max = {s_max}")));
    }
    Ok(DigitSequence {
        system,
        s_min,
        s_max,
        digits: (s_min..=s_max).map(|s| digit(system, s, x)).collect(),
        tail: system.tail(x.is_negative()),
    })
}

/// `Σ digits[s]·q^s` over the stored window.
pub fn plain_sum(seq: &DigitSequence) -> ExactRational {
    let q = seq.system.q();
    seq.iter()
        .map(|(s, d)| d.to_rational() * ExactRational::power(q, s))
        .sum()
}

/// The renormalized sum `(1/(q-1))·Σ_{s ≤ s_max+1} (x_{s-1} - x_s)·q^s`.
///
/// The sum starts at `s = -m` where `q^m` is the reduced denominator of `x`;
/// every term below vanishes.
pub fn renormalized_sum_line(system: DigitSystem, x: &ExactRational, s_max: i32) -> Result<ExactRational> {
    let q = system.q();
    let m = x.power_denominator(q).ok_or_else(|| Error::NonTerminating {
        value: x.to_string(),
        base: q,
    })? as i32;
    let tail = system.tail(x.is_negative());
    // Every digit from s_max up to a position safely above |x| must be a tail digit.
    let bound = x.abs() * ExactRational::integer(2) + ExactRational::one();
    let mut top = s_max;
    while ExactRational::power(q, top) <= bound {
        top += 1;
    }
    for s in s_max..=top {
        if digit(system, s, x) != tail {
            return Err(Error::Precondition(format!(
                "digit {s} of {x} is not a tail digit; raise s_max above log_{q}|x|"
            )));
        }
    }
    let lo = (-m).min(s_max + 1);
    let mut acc = ExactRational::zero();
    let mut below = digit(system, lo - 1, x).to_rational();
    for s in lo..=s_max + 1 {
        let here = digit(system, s, x).to_rational();
        acc = acc + (&below - &here) * ExactRational::power(q, s);
        below = here;
    }
    Ok(acc / ExactRational::integer(q as i64 - 1))
}

/// Renormalized value `1/(1-q)` of the divergent progression `Σ_{s≥0} q^s`.
pub fn geometric_renorm_constant(q: u32) -> Result<ExactRational> {
    match q {
        2 | 3 => Ok(ExactRational::new(1, 1 - q as i64)),
        _ => Err(Error::Unsupported(format!("base {q}"))),
    }
}

fn require_coordinate(x: &LatticeValue) -> Result<()> {
    if x.kind != LatticeKind::Coordinate {
        return Err(Error::Precondition("expected a coordinate node".into()));
    }
    Ok(())
}

/// Top-digit redefinition: the leading non-symmetric digit `q-1` is read
/// as `-1`, which moves the node down by one period.
pub fn lattice_renormalize_method2(spec: &LatticeSpec, x: &LatticeValue) -> Result<ExactRational> {
    require_coordinate(x)?;
    if x.spec != *spec {
        return Err(Error::Precondition("node belongs to a different lattice".into()));
    }
    let system = DigitSystem::new(spec.base, Flavor::Nonsymmetric);
    let top = spec.n_plus() as i32 - 1;
    let d = lattice_digit(spec, system, LatticeKind::Coordinate, top, x.index);
    let value = x.value();
    let weight = ExactRational::power(spec.q(), top);
    if d.halves() == 2 * (spec.q() as i8 - 1) {
        Ok(value - d.to_rational() * &weight - weight)
    } else {
        Ok(value)
    }
}

/// Telescoping sum `Σ_{s=-n_minus}^{n_plus-1} (x_{s-1} - x_s)·2^s` with
/// `x_{-n_minus-1} = 0`. On half-step lattices the telescoping acts on the
/// integer node index and the half step is carried along.
pub fn lattice_renormalize_method1_binary(spec: &LatticeSpec, x: &LatticeValue) -> Result<ExactRational> {
    require_coordinate(x)?;
    if spec.base != Base::Binary {
        return Err(Error::Unsupported(
            "the telescoping renormalization is not a lattice bijection in base 3".into(),
        ));
    }
    let k = ExactRational::integer(x.index as i64) * spec.dx();
    let mut sum = telescope(spec, &k);
    if spec.is_half(LatticeKind::Coordinate) {
        sum = sum + spec.dx() * ExactRational::new(1, 2);
    }
    Ok(sum)
}

/// `(1/(q-1))·Σ_{s=-n_minus}^{n_plus-1} (x_{s-1} - x_s)·q^s` with the digit
/// below the lattice resolution set to zero.
fn telescope(spec: &LatticeSpec, value: &ExactRational) -> ExactRational {
    let q = spec.q();
    let system = DigitSystem::new(spec.base, Flavor::Nonsymmetric);
    let lo = -(spec.n_minus as i32);
    let hi = spec.n_plus() as i32 - 1;
    let mut below = ExactRational::zero();
    let mut acc = ExactRational::zero();
    for s in lo..=hi {
        let here = digit(system, s, value).to_rational();
        acc = acc + (&below - &here) * ExactRational::power(q, s);
        below = here;
    }
    acc / ExactRational::integer(q as i64 - 1)
}

/// The ternary node whose digits are all 1, with its telescoping image
/// `-Δx/2`, which lies off the lattice.
pub fn ternary_method1_witness(spec: &LatticeSpec) -> Result<(LatticeValue, ExactRational)> {
    if spec.base != Base::Ternary {
        return Err(Error::Unsupported("the witness exists only in base 3".into()));
    }
    let node = LatticeValue::new(*spec, LatticeKind::Coordinate, (spec.dim() - 1) / 2)?;
    let image = telescope(spec, &node.value());
    Ok((node, image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    const TNS: DigitSystem = DigitSystem::TERNARY_NONSYMMETRIC;
    const TSYM: DigitSystem = DigitSystem::TERNARY_SYMMETRIC;
    const BNS: DigitSystem = DigitSystem::BINARY_NONSYMMETRIC;
    const BSYM: DigitSystem = DigitSystem::BINARY_SYMMETRIC;

    fn base_conversion(mut v: u64, q: u64) -> Vec<i8> {
        let mut out = Vec::new();
        while v > 0 {
            out.push((v % q) as i8);
            v /= q;
        }
        out
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digit(TNS, 0, &r(5, 1)), Digit::int(2));
        assert_eq!(digit(TNS, 1, &r(5, 1)), Digit::int(1));
        assert_eq!(digit(TSYM, 0, &r(1, 1)), Digit::int(1));
        assert_eq!(digit(BNS, 0, &r(3, 2)), Digit::int(1));
        assert_eq!(digit(BSYM, 0, &r(3, 2)), Digit::from_halves(1));
        for sys in DigitSystem::ALL {
            for s in -3..3 {
                assert_eq!(digit(sys, s, &ExactRational::zero()), sys.tail(false));
            }
        }
    }

    #[test]
    fn symmetric_ternary_table() {
        // Left-closed plateaus [-3/2, -1/2), [-1/2, 1/2), [1/2, 3/2) at s = 0.
        let values = [(-1, 2, 0), (-3, 2, -1), (-1, 1, -1), (-1, 3, 0), (0, 1, 0), (1, 3, 0), (1, 2, 1), (1, 1, 1), (4, 3, 1)];
        for (n, d, want) in values {
            assert_eq!(digit(TSYM, 0, &r(n, d)), Digit::int(want), "x = {n}/{d}");
        }
    }

    #[test]
    fn matches_base_conversion() {
        for v in 0..500u64 {
            let x = ExactRational::integer(v as i64);
            for (q, sys) in [(3, TNS), (2, BNS)] {
                let want = base_conversion(v, q);
                for s in 0..10 {
                    let expect = want.get(s).copied().unwrap_or(0);
                    assert_eq!(digit(sys, s as i32, &x), Digit::int(expect));
                }
            }
        }
    }

    #[test]
    fn expand_and_plain_sum() {
        let seq = expand(TNS, &r(8, 1), -1, 1).unwrap();
        assert_eq!(seq.digits, vec![Digit::int(0), Digit::int(2), Digit::int(2)]);
        assert_eq!(plain_sum(&seq), r(8, 1));
        let seq = expand(TSYM, &r(4, 1), 0, 1).unwrap();
        assert_eq!(seq.digits, vec![Digit::int(1), Digit::int(1)]);
        let seq = expand(TSYM, &r(-5, 1), -2, 4).unwrap();
        assert_eq!(plain_sum(&seq), r(-5, 1));
        assert!(expand(TSYM, &r(1, 1), 2, 1).is_err());
        let zero = expand(BNS, &ExactRational::zero(), -3, 3).unwrap();
        assert_eq!(plain_sum(&zero), ExactRational::zero());
    }

    #[test]
    fn renormalized_examples() {
        assert_eq!(renormalized_sum_line(TNS, &r(-1, 1), 2).unwrap(), r(-1, 1));
        assert_eq!(renormalized_sum_line(BNS, &r(5, 1), 4).unwrap(), r(5, 1));
        for sys in DigitSystem::ALL {
            assert_eq!(renormalized_sum_line(sys, &ExactRational::zero(), 0).unwrap(), ExactRational::zero());
        }
        assert!(matches!(
            renormalized_sum_line(TNS, &r(1, 2), 3),
            Err(Error::NonTerminating { .. })
        ));
        assert!(matches!(renormalized_sum_line(TNS, &r(20, 1), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn geometric_constants() {
        assert_eq!(geometric_renorm_constant(3).unwrap(), r(-1, 2));
        assert_eq!(geometric_renorm_constant(2).unwrap(), r(-1, 1));
        assert!(geometric_renorm_constant(5).is_err());
    }

    #[test]
    fn method2_examples() {
        let spec = LatticeSpec::new(Base::Ternary, 2, 0).unwrap();
        let node = |v: i64| LatticeValue::coordinate(spec, &r(v, 1)).unwrap();
        assert_eq!(lattice_renormalize_method2(&spec, &node(8)).unwrap(), r(-1, 1));
        assert_eq!(lattice_renormalize_method2(&spec, &node(3)).unwrap(), r(3, 1));
        assert_eq!(lattice_renormalize_method2(&spec, &node(0)).unwrap(), r(0, 1));
    }

    #[test]
    fn method1_examples() {
        let spec = LatticeSpec::new(Base::Binary, 2, 0).unwrap();
        let node = |v: i64| LatticeValue::coordinate(spec, &r(v, 1)).unwrap();
        assert_eq!(lattice_renormalize_method1_binary(&spec, &node(3)).unwrap(), r(-1, 1));
        assert_eq!(lattice_renormalize_method1_binary(&spec, &node(1)).unwrap(), r(1, 1));
        assert_eq!(lattice_renormalize_method1_binary(&spec, &node(0)).unwrap(), r(0, 1));
        let ternary = LatticeSpec::new(Base::Ternary, 2, 0).unwrap();
        let t = LatticeValue::coordinate(ternary, &r(1, 1)).unwrap();
        assert!(matches!(
            lattice_renormalize_method1_binary(&ternary, &t),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn witness_examples() {
        let cases = [(2, 0, r(4, 1), r(-1, 2)), (1, 0, r(1, 1), r(-1, 2)), (2, 1, r(4, 3), r(-1, 6))];
        for (n, nm, input, output) in cases {
            let spec = LatticeSpec::new(Base::Ternary, n, nm).unwrap();
            let (node, image) = ternary_method1_witness(&spec).unwrap();
            assert_eq!(node.value(), input);
            assert_eq!(image, output);
        }
    }

    #[test]
    fn lattice_digit_agrees_with_exact_digit() {
        let specs = [
            LatticeSpec::new(Base::Ternary, 4, 2).unwrap(),
            LatticeSpec::new(Base::Binary, 5, 3).unwrap(),
            LatticeSpec::binary_symmetric(4, 1).unwrap(),
        ];
        for spec in specs {
            for sys in DigitSystem::ALL.into_iter().filter(|s| s.base == spec.base) {
                for kind in [LatticeKind::Coordinate, LatticeKind::Momentum] {
                    let (lo, hi) = spec.digit_range(kind);
                    for s in lo - 1..=hi + 1 {
                        for k in 0..spec.dim() {
                            let v = spec.node_value(kind, k);
                            assert_eq!(lattice_digit(&spec, sys, kind, s, k), digit(sys, s, &v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn offset_identities_on_lattice_nodes() {
        for nm in 0..=3 {
            let spec = LatticeSpec::new(Base::Ternary, 4, nm).unwrap();
            let shift = spec.dx() * r(1, 2) - r(3, 2);
            for k in 0..spec.dim() {
                let x = spec.node_value(LatticeKind::Coordinate, k);
                let shifted = digit(TSYM, 0, &(&x + &shift));
                assert_eq!(digit(TNS, 0, &x).halves(), shifted.halves() + 2, "x = {x}");
            }
            let half = LatticeSpec::binary_symmetric(4, nm).unwrap();
            for k in 0..half.dim() {
                let x = half.node_value(LatticeKind::Coordinate, k);
                let lower = digit(BNS, 0, &(&x - half.dx() * r(1, 2)));
                assert_eq!(digit(BSYM, 0, &x).halves(), lower.halves() - 1, "x = {x}");
            }
        }
    }

    fn dyadic_or_triadic() -> impl Strategy<Value = (i64, u32)> {
        (-100_000i64..100_000, 0u32..6)
    }

    proptest! {
        #[test]
        fn digits_lie_in_alphabet((num, m) in dyadic_or_triadic(), s in -8i32..8) {
            for sys in DigitSystem::ALL {
                let x = ExactRational::new(num, (sys.q() as i64).pow(m));
                prop_assert!(sys.alphabet().contains(&digit(sys, s, &x)));
            }
        }

        #[test]
        fn digits_are_periodic((num, m) in dyadic_or_triadic(), s in -6i32..6) {
            for sys in DigitSystem::ALL {
                let q = sys.q();
                let x = ExactRational::new(num, (q as i64).pow(m));
                let shifted = &x + ExactRational::power(q, s + 1);
                prop_assert_eq!(digit(sys, s, &x), digit(sys, s, &shifted));
            }
        }

        #[test]
        fn digits_scale((num, m) in dyadic_or_triadic(), s in -6i32..6) {
            for sys in DigitSystem::ALL {
                let q = sys.q();
                let x = ExactRational::new(num, (q as i64).pow(m));
                let scaled = &x / ExactRational::integer(q as i64);
                prop_assert_eq!(digit(sys, s, &x), digit(sys, s - 1, &scaled));
            }
        }

        #[test]
        fn balanced_ternary_needs_no_renormalization((num, m) in dyadic_or_triadic()) {
            let x = ExactRational::new(num, 3i64.pow(m));
            let seq = expand(TSYM, &x, -(m as i32) - 1, 14).unwrap();
            prop_assert_eq!(plain_sum(&seq), x);
        }

        #[test]
        fn renormalized_sum_is_exact((num, m) in dyadic_or_triadic()) {
            for sys in DigitSystem::ALL {
                let x = ExactRational::new(num, (sys.q() as i64).pow(m));
                prop_assert_eq!(renormalized_sum_line(sys, &x, 20).unwrap(), x);
            }
        }
    }
}
