//! Randomized checker for the algebraic laws of the dictionary order.
//!
//! Each [`Law`] is a predicate over a small tuple of complex numbers (plus a
//! real scalar for the scaling laws). [`Law::check`] samples tuples from a
//! seeded `ChaCha8Rng` (`rand::rngs::ChaCha8Rng::seed_from_u64(seed)`) and
//! stops at the first violation, which is then shrunk greedily towards small
//! integer coordinates before being reported.
//!
//! Gated runs draw coordinates from the dyadic grid `k/8, |k| ≤ 64`: sums and
//! products of such values are exact in `f64`, so a reported violation is a
//! property of the order and never of rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::rngs::ChaCha8Rng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use super::{lex_cmp, lex_le, Complex, LexError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    Totality,
    /// `A ≤ B ⇔ A + C ≤ B + C`
    TranslationInvariance,
    /// `A + B ≤ C ⇔ A ≤ C − B`
    TermMoving,
    /// `A ≤ B, C ≤ D ⇒ A + C ≤ B + D`
    Additivity,
    /// `r > 0: A ≤ B ⇔ rA ≤ rB`
    PositiveScaling,
    /// `r < 0: A ≤ B ⇔ rA ≥ rB`
    NegativeScalingReversal,
    /// `A ≤ B ⇒ AC ≤ BC` for complex `C`. Not a law: multiplying by `i`
    /// can reverse a pair.
    ComplexScalarMonotonicity,
}

/// How the checker draws coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleDomain {
    /// `k/8` with `|k| ≤ 64`; all arithmetic in the laws is exact.
    Dyadic,
    /// Arbitrary finite doubles over many binades. Rounding can break the
    /// additive laws here, so these runs are exploratory only.
    FullRange,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub seed: u64,
    /// Trials executed; equals the requested count unless a violation
    /// stopped the run early.
    pub samples: u64,
    pub outcome: Outcome,
    pub expected: Outcome,
    /// Violating tuple in slot order. Real scalars appear as `r + 0i`.
    pub witness: Option<Vec<Complex>>,
}

impl LawReport {
    pub fn matches_expectation(&self) -> bool {
        self.outcome == self.expected
            && match (&self.outcome, &self.witness) {
                (Outcome::Counterexample, Some(w)) => !self.law.holds(w),
                (Outcome::Counterexample, None) => false,
                (Outcome::Pass, _) => true,
            }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Point,
    PositiveScalar,
    NegativeScalar,
}

impl Law {
    pub const ALL: [Law; 10] = [
        Law::Reflexivity,
        Law::Antisymmetry,
        Law::Transitivity,
        Law::Totality,
        Law::TranslationInvariance,
        Law::TermMoving,
        Law::Additivity,
        Law::PositiveScaling,
        Law::NegativeScalingReversal,
        Law::ComplexScalarMonotonicity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::Reflexivity => "reflexivity",
            Law::Antisymmetry => "antisymmetry",
            Law::Transitivity => "transitivity",
            Law::Totality => "totality",
            Law::TranslationInvariance => "translation_invariance",
            Law::TermMoving => "term_moving",
            Law::Additivity => "additivity",
            Law::PositiveScaling => "positive_scaling",
            Law::NegativeScalingReversal => "negative_scaling_reversal",
            Law::ComplexScalarMonotonicity => "complex_scalar_monotonicity",
        }
    }

    /// Whether the order actually satisfies this statement.
    pub fn is_law(self) -> bool {
        self != Law::ComplexScalarMonotonicity
    }

    pub fn expected_outcome(self) -> Outcome {
        if self.is_law() {
            Outcome::Pass
        } else {
            Outcome::Counterexample
        }
    }

    fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Law::Reflexivity => &[Point],
            Law::Antisymmetry | Law::Totality => &[Point, Point],
            Law::Transitivity
            | Law::TranslationInvariance
            | Law::TermMoving
            | Law::ComplexScalarMonotonicity => &[Point, Point, Point],
            Law::Additivity => &[Point, Point, Point, Point],
            Law::PositiveScaling => &[Point, Point, PositiveScalar],
            Law::NegativeScalingReversal => &[Point, Point, NegativeScalar],
        }
    }

    pub fn arity(self) -> usize {
        self.slots().len()
    }

    /// Evaluates the law on one tuple. Tuples of the wrong arity, or
    /// scalars of the wrong sign, are vacuously true.
    pub fn holds(self, t: &[Complex]) -> bool {
        if t.len() != self.arity() {
            return true;
        }
        match self {
            Law::Reflexivity => lex_cmp(t[0], t[0]) == Ordering::Equal,
            Law::Antisymmetry => {
                let both = lex_le(t[0], t[1]) && lex_le(t[1], t[0]);
                both == (t[0].re == t[1].re && t[0].im == t[1].im)
            }
            Law::Transitivity => !(lex_le(t[0], t[1]) && lex_le(t[1], t[2])) || lex_le(t[0], t[2]),
            Law::Totality => {
                let ab = lex_cmp(t[0], t[1]);
                ab == lex_cmp(t[1], t[0]).reverse() && (lex_le(t[0], t[1]) || lex_le(t[1], t[0]))
            }
            Law::TranslationInvariance => lex_cmp(t[0], t[1]) == lex_cmp(t[0] + t[2], t[1] + t[2]),
            Law::TermMoving => lex_le(t[0] + t[1], t[2]) == lex_le(t[0], t[2] - t[1]),
            Law::Additivity => {
                !(lex_le(t[0], t[1]) && lex_le(t[2], t[3])) || lex_le(t[0] + t[2], t[1] + t[3])
            }
            Law::PositiveScaling => {
                let r = t[2].re;
                r <= 0.0 || lex_cmp(t[0], t[1]) == lex_cmp(t[0].scale(r), t[1].scale(r))
            }
            Law::NegativeScalingReversal => {
                let r = t[2].re;
                r >= 0.0 || lex_cmp(t[0], t[1]) == lex_cmp(t[0].scale(r), t[1].scale(r)).reverse()
            }
            Law::ComplexScalarMonotonicity => !lex_le(t[0], t[1]) || lex_le(t[0] * t[2], t[1] * t[2]),
        }
    }

    /// Runs the law over `samples` dyadic tuples.
    pub fn check(self, samples: u64, seed: u64) -> LawReport {
        self.check_in(SampleDomain::Dyadic, samples, seed)
    }

    pub fn check_in(self, domain: SampleDomain, samples: u64, seed: u64) -> LawReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slots = self.slots();
        let mut tuple = vec![Complex::ZERO; slots.len()];
        for trial in 0..samples {
            draw_tuple(&mut rng, domain, slots, &mut tuple);
            if !self.holds(&tuple) {
                let witness = self.shrink(tuple);
                return LawReport {
                    law: self,
                    seed,
                    samples: trial + 1,
                    outcome: Outcome::Counterexample,
                    expected: self.expected_outcome(),
                    witness: Some(witness),
                };
            }
        }
        LawReport {
            law: self,
            seed,
            samples,
            outcome: Outcome::Pass,
            expected: self.expected_outcome(),
            witness: None,
        }
    }

    /// Greedy shrink: replace one slot at a time with a strictly simpler
    /// candidate as long as the tuple still violates the law.
    fn shrink(self, mut tuple: Vec<Complex>) -> Vec<Complex> {
        let slots = self.slots();
        loop {
            let mut improved = false;
            for (i, &slot) in slots.iter().enumerate() {
                let current = tuple[i];
                for cand in shrink_candidates(slot, current) {
                    if weight(cand) >= weight(current) {
                        continue;
                    }
                    tuple[i] = cand;
                    if !self.holds(&tuple) {
                        improved = true;
                        break;
                    }
                    tuple[i] = current;
                }
            }
            if !improved {
                return tuple;
            }
        }
    }
}

fn shrink_candidates(slot: Slot, z: Complex) -> Vec<Complex> {
    match slot {
        Slot::Point => vec![
            Complex::ZERO,
            Complex::I,
            Complex::ONE,
            Complex::new(0.0, -1.0),
            Complex::real(-1.0),
            Complex::real(z.re),
            Complex::new(0.0, z.im),
            // `+ 0.0` turns a truncated `-0.0` into `0.0`.
            Complex::new(z.re.trunc() + 0.0, z.im.trunc() + 0.0),
        ],
        Slot::PositiveScalar => vec![Complex::ONE, Complex::real(z.re.trunc().max(1.0))],
        Slot::NegativeScalar => vec![Complex::real(-1.0), Complex::real(z.re.trunc().min(-1.0))],
    }
}

fn weight(z: Complex) -> f64 {
    fn w(x: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else {
            1.0 + x.abs() + if x.fract() != 0.0 { 0.5 } else { 0.0 }
        }
    }
    w(z.re) + w(z.im)
}

fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    f64::from(rng.random_range(-64i32..=64)) / 8.0
}

fn wide(rng: &mut ChaCha8Rng) -> f64 {
    let mantissa: f64 = rng.random_range(1.0..2.0);
    let exp = rng.random_range(-40i32..=40);
    let sign = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
    sign * mantissa * 2f64.powi(exp)
}

fn draw_tuple(rng: &mut ChaCha8Rng, domain: SampleDomain, slots: &[Slot], out: &mut [Complex]) {
    for (i, &slot) in slots.iter().enumerate() {
        out[i] = match slot {
            Slot::Point => {
                let mut z = match domain {
                    SampleDomain::Dyadic => Complex::new(dyadic(rng), dyadic(rng)),
                    SampleDomain::FullRange => Complex::new(wide(rng), wide(rng)),
                };
                // Ties on the real part exercise the second clause of the order.
                if i > 0 && slots[i - 1] == Slot::Point {
                    let roll = rng.random_range(0u8..8);
                    if roll < 2 {
                        z.re = out[i - 1].re;
                    } else if roll == 2 {
                        z = out[i - 1];
                    }
                }
                z
            }
            Slot::PositiveScalar | Slot::NegativeScalar => {
                let mag = match domain {
                    SampleDomain::Dyadic => f64::from(rng.random_range(1i32..=64)) / 8.0,
                    SampleDomain::FullRange => wide(rng).abs(),
                };
                let sign = if slot == Slot::PositiveScalar { 1.0 } else { -1.0 };
                Complex::real(sign * mag)
            }
        };
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Law {
    type Err = LexError;

    /// Accepts the snake_case id, case-insensitively, with `-` or `_`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Law::ALL
            .into_iter()
            .find(|law| law.id() == norm)
            .ok_or_else(|| LexError::UnknownLaw(s.to_string()))
    }
}

/// Looks up a law by id and checks it over dyadic samples.
pub fn check_law(law_id: &str, samples: u64, seed: u64) -> Result<LawReport, LexError> {
    Ok(law_id.parse::<Law>()?.check(samples, seed))
}

/// Checks every registered law with the same seed.
pub fn check_all(samples: u64, seed: u64) -> Vec<LawReport> {
    Law::ALL.iter().map(|law| law.check(samples, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_laws_pass() {
        for law in Law::ALL.into_iter().filter(|l| l.is_law()) {
            let report = law.check(10_000, 42);
            assert_eq!(report.outcome, Outcome::Pass, "{law}: {report:?}");
            assert!(report.matches_expectation());
        }
    }

    #[test]
    fn transitivity_and_scaling_examples() {
        assert_eq!(check_law("transitivity", 10_000, 42).unwrap().outcome, Outcome::Pass);
        assert_eq!(check_law("positive_scaling", 10_000, 7).unwrap().outcome, Outcome::Pass);
    }

    #[test]
    fn complex_scalar_monotonicity_is_falsified() {
        for seed in [0, 1, 42, 1234] {
            let report = Law::ComplexScalarMonotonicity.check(10_000, seed);
            assert_eq!(report.outcome, Outcome::Counterexample);
            let w = report.witness.clone().unwrap();
            assert!(!Law::ComplexScalarMonotonicity.holds(&w));
            assert!(report.matches_expectation());
            for z in &w {
                assert!(z.re.abs() <= 1.0 && z.im.abs() <= 1.0, "not shrunk: {w:?}");
            }
        }
    }

    #[test]
    fn hand_witness_violates_complex_monotonicity() {
        let w = [Complex::ZERO, Complex::I, Complex::I];
        assert!(!Law::ComplexScalarMonotonicity.holds(&w));
    }

    #[test]
    fn reports_are_reproducible() {
        for law in Law::ALL {
            assert_eq!(law.check(500, 9), law.check(500, 9));
        }
    }

    #[test]
    fn unknown_law_is_rejected() {
        assert_eq!(check_law("commutativity", 10, 1), Err(LexError::UnknownLaw("commutativity".into())));
        assert_eq!("Term-Moving".parse::<Law>().unwrap(), Law::TermMoving);
    }

    #[test]
    fn full_range_domain_runs() {
        // Not gated: only checks that order-only laws survive arbitrary doubles.
        for law in [Law::Reflexivity, Law::Antisymmetry, Law::Transitivity, Law::Totality] {
            assert_eq!(law.check_in(SampleDomain::FullRange, 2_000, 3).outcome, Outcome::Pass);
        }
    }

    #[test]
    fn wrong_arity_is_vacuous() {
        assert!(Law::Transitivity.holds(&[Complex::ONE]));
    }
}
