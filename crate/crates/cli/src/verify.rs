//! Verification suites. Each check records its measured deviation and the
//! tolerance it was held to; reports are assembled in a fixed order.

use lattice_digits::digit_operators::renormalized_representation;
use lattice_digits::reference;
use lattice_digits::{
    commutator, coordinate_digit, coordinate_operator, geometric_renorm_constant, lattice_renormalize_method1_binary,
    lattice_renormalize_method2, ln3_series_partial, momentum_digit, reconstruct_coordinate, reconstruct_momentum,
    renorm_integral_signed, renormalized_sum_line, ternary_integral, ternary_method1_witness, Base, CommutatorPair,
    CommutatorReport, DigitOperatorRequest, DigitSystem, Error, ExactRational, LatticeKind, LatticeSpec, LatticeValue,
    Observable, OperatorMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::SuiteArg;
use crate::CliError;

/// Seed of the random rationals in the renormalization suite.
pub const RENORM_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        let first_failure = checks.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.suite, c.name));
        Self {
            suite: suite.to_string(),
            passed: failed == 0,
            total: checks.len(),
            failed,
            first_failure,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.checks {
            w.serialize(c)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
            .expect("csv output is UTF-8"))
    }
}

struct Suite {
    name: &'static str,
    checks: Vec<CheckResult>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self { name, checks: Vec::new() }
    }

    fn record(&mut self, name: impl Into<String>, deviation: f64, tolerance: f64) {
        self.checks.push(check(self.name, name, deviation, tolerance));
    }

    /// An exact check: deviation 0 when it holds, 1 otherwise.
    fn exact(&mut self, name: impl Into<String>, holds: bool) {
        self.record(name, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    fn matrices(&mut self, name: impl Into<String>, a: &OperatorMatrix, b: &OperatorMatrix, tolerance: f64) {
        self.record(name, a.max_abs_diff(b).unwrap_or(f64::MAX), tolerance);
    }

    fn diagonal(&mut self, name: impl Into<String>, m: &OperatorMatrix, want: &[f64]) {
        let got: Vec<f64> = m.diagonal().iter().map(|z| z.re).collect();
        let holds = m.is_diagonal(0.0) && m.diagonal().iter().all(|z| z.im == 0.0) && got == want;
        self.exact(name, holds);
    }
}

fn check(suite: &str, name: impl Into<String>, deviation: f64, tolerance: f64) -> CheckResult {
    let deviation = if deviation.is_finite() { deviation } else { f64::MAX };
    CheckResult {
        suite: suite.to_string(),
        name: name.into(),
        deviation,
        tolerance,
        passed: deviation <= tolerance,
    }
}

fn all_specs(max_n: u32) -> Vec<(DigitSystem, LatticeSpec)> {
    let mut out = Vec::new();
    for system in DigitSystem::ALL {
        for n in 1..=max_n {
            for nm in 0..=n {
                if let Ok(spec) = LatticeSpec::for_system(system, n, nm) {
                    out.push((system, spec));
                }
            }
        }
    }
    out
}

/// The four worked examples on three and nine nodes, compared with the
/// closed forms evaluated in process.
pub fn examples(tolerance: f64) -> Vec<CheckResult> {
    let mut s = Suite::new("examples");
    let run = |s: &mut Suite| -> Result<(), Error> {
        let sym = DigitSystem::TERNARY_SYMMETRIC;
        let ns = DigitSystem::TERNARY_NONSYMMETRIC;

        let spec = LatticeSpec::for_system(sym, 1, 0)?;
        s.diagonal("symmetric-ternary-n1 x", &reconstruct_coordinate(&spec, sym, false)?, &[1.0, 0.0, -1.0]);
        s.matrices("symmetric-ternary-n1 p_-1", &momentum_digit(&spec, sym, -1)?, &reference::symmetric_n1_momentum_digit(), tolerance);

        let spec = LatticeSpec::for_system(ns, 1, 0)?;
        s.diagonal("nonsymmetric-ternary-n1 x", &reconstruct_coordinate(&spec, ns, false)?, &[2.0, 1.0, 0.0]);
        s.matrices("nonsymmetric-ternary-n1 p_-1", &momentum_digit(&spec, ns, -1)?, &reference::nonsymmetric_n1_momentum_digit(), tolerance);

        let spec = LatticeSpec::for_system(ns, 2, 0)?;
        let desc: Vec<f64> = (0..9).rev().map(f64::from).collect();
        s.diagonal("nonsymmetric-ternary-n2 x", &reconstruct_coordinate(&spec, ns, false)?, &desc);
        s.diagonal("nonsymmetric-ternary-n2 x_0", &coordinate_digit(&spec, ns, 0)?, &[2.0, 1.0, 0.0, 2.0, 1.0, 0.0, 2.0, 1.0, 0.0]);
        s.diagonal("nonsymmetric-ternary-n2 x_1", &coordinate_digit(&spec, ns, 1)?, &[2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        s.matrices("nonsymmetric-ternary-n2 p_-1", &momentum_digit(&spec, ns, -1)?, &reference::nonsymmetric_n2_momentum_digit_1(), tolerance);
        s.matrices("nonsymmetric-ternary-n2 p_-2", &momentum_digit(&spec, ns, -2)?, &reference::nonsymmetric_n2_momentum_digit_2(), tolerance);
        s.matrices("nonsymmetric-ternary-n2 p", &reconstruct_momentum(&spec, ns)?, &reference::nonsymmetric_n2_momentum(), tolerance);

        let spec = LatticeSpec::for_system(sym, 2, 0)?;
        s.diagonal("symmetric-ternary-n2 x", &reconstruct_coordinate(&spec, sym, false)?, &[4.0, 3.0, 2.0, 1.0, 0.0, -1.0, -2.0, -3.0, -4.0]);
        s.matrices("symmetric-ternary-n2 p_-1", &momentum_digit(&spec, sym, -1)?, &reference::symmetric_n2_momentum_digit_1(), tolerance);
        s.matrices("symmetric-ternary-n2 p_-2", &momentum_digit(&spec, sym, -2)?, &reference::symmetric_n2_momentum_digit_2(), tolerance);
        s.matrices("symmetric-ternary-n2 p", &reconstruct_momentum(&spec, sym)?, &reference::symmetric_n2_momentum(), tolerance);
        Ok(())
    };
    if let Err(e) = run(&mut s) {
        s.exact(format!("construction failed: {e}"), false);
    }
    s.checks
}

/// Shift expansions against the spectral construction for every digit
/// operator on every lattice up to `max_n`.
pub fn oracle(max_n: u32, tolerance: f64) -> Vec<CheckResult> {
    all_specs(max_n)
        .par_iter()
        .flat_map_iter(|&(system, spec)| {
            let mut out = Vec::new();
            for which in [Observable::Momentum, Observable::Coordinate] {
                let (lo, hi) = spec.digit_range(which.kind());
                for index in lo..=hi {
                    let name = format!("{system} {spec} {} digit {index}", which.kind().name());
                    let deviation = DigitOperatorRequest::new(spec, system, which, index)
                        .and_then(|req| req.build::<f64>()?.max_abs_diff(&req.oracle::<f64>()?))
                        .unwrap_or(f64::MAX);
                    out.push(check("oracle", name, deviation, tolerance));
                }
            }
            out
        })
        .collect()
}

/// The vanishing region `s + r ≤ -2` and every series commutator against
/// the direct one.
pub fn commutators(max_n: u32, tolerance: f64) -> Vec<CheckResult> {
    all_specs(max_n)
        .par_iter()
        .flat_map_iter(|&(system, spec)| {
            let mut out = Vec::new();
            let (s_lo, s_hi) = spec.digit_range(LatticeKind::Coordinate);
            let (r_lo, r_hi) = spec.digit_range(LatticeKind::Momentum);
            let mut vanishing = 0.0f64;
            for s in s_lo..=s_hi {
                for r in r_lo..=r_hi {
                    if s + r <= -2 {
                        let norm = coordinate_digit::<f64>(&spec, system, s)
                            .and_then(|x| commutator(&x, &momentum_digit(&spec, system, r)?))
                            .map(|k| k.max_abs())
                            .unwrap_or(f64::MAX);
                        vanishing = vanishing.max(norm);
                    }
                }
            }
            out.push(check("commutators", format!("{system} {spec} vanishing region"), vanishing, tolerance));
            let mut pairs = vec![CommutatorPair::CoordinateMomentum];
            for r in r_lo..=r_hi {
                pairs.push(CommutatorPair::CoordinateDigit { r });
                for s in s_lo..=s_hi {
                    pairs.push(CommutatorPair::DigitDigit { s, r });
                }
            }
            for pair in pairs {
                let deviation = CommutatorReport::new(spec, system, pair)
                    .map(|r| r.max_abs_difference)
                    .unwrap_or(f64::MAX);
                out.push(check("commutators", format!("{system} {spec} {pair:?}"), deviation, tolerance));
            }
            out
        })
        .collect()
}

/// Exact renormalized sums, the two lattice renormalizations and the
/// renormalized reconstruction of x.
pub fn renorm(max_n: u32, tolerance: f64) -> Vec<CheckResult> {
    let mut s = Suite::new("renorm");
    let mut rng = ChaCha8Rng::seed_from_u64(RENORM_SEED);
    for system in DigitSystem::ALL {
        let q = system.q() as i64;
        let mut failures = 0usize;
        for _ in 0..250 {
            let x = ExactRational::new(rng.random_range(-100_000i64..=100_000), q.pow(rng.random_range(0..=6)));
            if renormalized_sum_line(system, &x, 24).ok() != Some(x) {
                failures += 1;
            }
        }
        s.exact(format!("{system} line sums of 250 random rationals"), failures == 0);
    }
    for q in [2, 3] {
        s.exact(format!("geometric constant q={q}"), geometric_renorm_constant(q).ok() == Some(ExactRational::new(1, 1 - q as i64)));
    }
    for n in 1..=8u32 {
        for nm in 0..=n {
            let mut same = true;
            for spec in [LatticeSpec::new(Base::Binary, n, nm), LatticeSpec::binary_symmetric(n, nm)].into_iter().flatten() {
                for k in 0..spec.dim() {
                    let node = LatticeValue::new(spec, LatticeKind::Coordinate, k).expect("node index in range");
                    same &= lattice_renormalize_method1_binary(&spec, &node).ok() == lattice_renormalize_method2(&spec, &node).ok();
                }
            }
            s.exact(format!("binary n={n} n_minus={nm} methods agree"), same);
        }
    }
    for n in 1..=max_n {
        for nm in 0..=n {
            for base in [Base::Binary, Base::Ternary] {
                let Ok(spec) = LatticeSpec::new(base, n, nm) else { continue };
                let top = LatticeValue::new(spec, LatticeKind::Coordinate, spec.dim() - 1).expect("top node");
                let origin = LatticeValue::new(spec, LatticeKind::Coordinate, 0).expect("origin");
                let maps = lattice_renormalize_method2(&spec, &top).ok() == Some(-spec.dx())
                    && lattice_renormalize_method2(&spec, &origin).map(|v| v.is_zero()).unwrap_or(false);
                s.exact(format!("{spec} top node to -dx and origin fixed"), maps);
                if base == Base::Ternary {
                    let witness = ternary_method1_witness(&spec)
                        .map(|(_, image)| image == -(spec.dx() * ExactRational::new(1, 2)) && LatticeValue::coordinate(spec, &image).is_err())
                        .unwrap_or(false);
                    s.exact(format!("{spec} telescoping witness leaves the lattice"), witness);
                }
            }
        }
    }
    for (system, spec) in all_specs(max_n.min(4)) {
        let deviation = reconstruct_coordinate::<f64>(&spec, system, true)
            .and_then(|m| m.max_abs_diff(&coordinate_operator(&spec, renormalized_representation(system))))
            .unwrap_or(f64::MAX);
        s.record(format!("{system} {spec} renormalized x"), deviation, tolerance);
    }
    s.checks
}

/// Integral representation and the `ln 3` series.
pub fn integral() -> Vec<CheckResult> {
    let mut s = Suite::new("integral");
    for (label, x) in [("1/3", 1.0 / 3.0), ("1", 1.0), ("2", 2.0), ("9", 9.0), ("17/9", 17.0 / 9.0)] {
        let deviation = ternary_integral(x, -40.0).map(|v| (v - x).abs()).unwrap_or(f64::MAX);
        s.record(format!("integral at x={label}"), deviation, 1e-9);
    }
    let deviation = ln3_series_partial(1_000_000).map(|v| (v - 3f64.ln()).abs()).unwrap_or(f64::MAX);
    s.record("ln 3 series at K=10^6", deviation, 1e-6);
    for x in [-17.0, -2.0, -1.0 / 3.0, 1.0, 2.0] {
        let deviation = renorm_integral_signed(x, -40.0, 5.0).map(|v| (v - x).abs()).unwrap_or(f64::MAX);
        s.record(format!("signed integral at x={x}"), deviation, 1e-9);
    }
    for x0 in [0.4, 1.0, 1.7] {
        let deviation = match (ternary_integral(3.0 * x0, -40.0), ternary_integral(x0, -40.0)) {
            (Ok(a), Ok(b)) => (a / 3.0 - b).abs(),
            _ => f64::MAX,
        };
        s.record(format!("scale invariance at x={x0}"), deviation, 1e-10);
    }
    s.checks
}

pub fn run(suite: SuiteArg, max_n: u32, tolerance: f64) -> Result<VerifyReport, CliError> {
    if tolerance <= 0.0 || !tolerance.is_finite() {
        return Err(CliError::Config(format!("--tolerance must be positive, got {tolerance}")));
    }
    if max_n == 0 || max_n > 6 {
        return Err(CliError::Config(format!("--max-n must lie in 1..=6, got {max_n}")));
    }
    let mut checks = Vec::new();
    let wants = |s: SuiteArg| suite == s || suite == SuiteArg::All;
    if wants(SuiteArg::Examples) {
        checks.extend(examples(tolerance));
    }
    if wants(SuiteArg::Oracle) {
        checks.extend(oracle(max_n, tolerance));
    }
    if wants(SuiteArg::Commutators) {
        checks.extend(commutators(max_n, tolerance));
    }
    if wants(SuiteArg::Renorm) {
        checks.extend(renorm(max_n, tolerance));
    }
    if wants(SuiteArg::Integral) {
        checks.extend(integral());
    }
    let name = clap::ValueEnum::to_possible_value(&suite).expect("suites have names").get_name().to_string();
    Ok(VerifyReport::new(&name, checks))
}
