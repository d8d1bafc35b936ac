//! Decision-theoretic comparison of guessing rules under 0/1 loss.
//!
//! The intuitive rule guesses the observation's predecessor — the only
//! path for which the last toss did not annihilate. Its frequentist
//! risk is 1/4 for every non-null path (it errs exactly when the toss
//! annihilated) and 0 at the null path. The equivariant competitors
//! append a fixed letter by right multiplication; their risk is 3/4 at
//! every path, so the predecessor rule dominates them uniformly. That
//! a best equivariant rule is inadmissible here is the classical point
//! of this example (Lehmann).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Rational, ratio};
use crate::word::{enumerate, likelihood, Letter, ReducedWord};

/// A guessing rule mapping observations to paths.
///
/// `Predecessor` maps `x ↦ x⁻`, completed to the null path at `x = 0`
/// where no predecessor exists. `AppendLetter(g)` is literal right
/// multiplication `x ↦ x·g`, reduction included: when `x` ends with
/// `g⁻¹` the product is `x⁻`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Estimator {
    Predecessor,
    AppendLetter(Letter),
    Custom(fn(&ReducedWord) -> ReducedWord),
}

impl Estimator {
    pub fn estimate(&self, x: &ReducedWord) -> ReducedWord {
        match self {
            Estimator::Predecessor => x.predecessor().unwrap_or_else(ReducedWord::null),
            Estimator::AppendLetter(g) => x.append(*g),
            Estimator::Custom(rule) => rule(x),
        }
    }

    /// Exact frequentist risk under 0/1 loss:
    /// `R(θ) = Σ_{x ∈ A_θ} p(x|θ)·1{estimate(x) ≠ θ}`.
    pub fn frequentist_risk(&self, theta: &ReducedWord) -> Rational {
        theta
            .neighborhood()
            .iter()
            .filter(|x| &self.estimate(x) != theta)
            .map(|x| likelihood(theta, x))
            .sum()
    }

    pub fn label(&self) -> String {
        match self {
            Estimator::Predecessor => "predecessor".to_string(),
            Estimator::AppendLetter(g) => format!("append({g})"),
            Estimator::Custom(_) => "custom".to_string(),
        }
    }
}

/// One path where the left rule's risk exceeds the right rule's.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationViolation {
    pub theta: ReducedWord,
    #[serde(with = "crate::rational::serde_str")]
    pub left_risk: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub right_risk: Rational,
}

/// Outcome of a risk comparison over all paths up to a length bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub left: String,
    pub right: String,
    pub max_len: usize,
    pub probed: u64,
    /// Left risk never exceeds right risk on the probed range.
    pub dominated: bool,
    /// Number of probed paths with strictly smaller left risk.
    pub strict_count: u64,
    /// First path (canonical order) where the inequality is strict.
    pub first_strict: Option<ReducedWord>,
    /// First path where left risk exceeds right risk, if any.
    pub violation: Option<DominationViolation>,
}

impl DominationReport {
    pub fn strict_everywhere(&self) -> bool {
        self.strict_count == self.probed
    }
}

/// Compares `risk(left, θ) ≤ risk(right, θ)` on every path of length at
/// most `max_len`, collecting strictness witnesses and the first
/// violation.
pub fn domination_check(
    left: &Estimator,
    right: &Estimator,
    max_len: usize,
    cap: usize,
) -> Result<DominationReport> {
    let mut report = DominationReport {
        left: left.label(),
        right: right.label(),
        max_len,
        probed: 0,
        dominated: true,
        strict_count: 0,
        first_strict: None,
        violation: None,
    };
    for len in 0..=max_len {
        for theta in enumerate(len, cap)? {
            report.probed += 1;
            let lr = left.frequentist_risk(&theta);
            let rr = right.frequentist_risk(&theta);
            if lr < rr {
                report.strict_count += 1;
                if report.first_strict.is_none() {
                    report.first_strict = Some(theta.clone());
                }
            } else if lr > rr {
                report.dominated = false;
                if report.violation.is_none() {
                    report.violation = Some(DominationViolation {
                        theta: theta.clone(),
                        left_risk: lr,
                        right_risk: rr,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Risks of the predecessor rule and the four append rules at one path.
pub fn risk_row(theta: &ReducedWord) -> (Rational, [Rational; 4]) {
    let predecessor = Estimator::Predecessor.frequentist_risk(theta);
    let appends = Letter::ALL.map(|g| Estimator::AppendLetter(g).frequentist_risk(theta));
    (predecessor, appends)
}

/// The constant risk of every append rule.
pub fn append_rule_risk() -> Rational {
    ratio(3, 4)
}

#[cfg(test)]
mod tests {
    use crate::rational::int;
    use crate::word::{words_up_to, DEFAULT_ENUMERATION_CAP};

    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    /// Oracle for a rule's risk: walk the four observations reachable
    /// from θ and count the misses at probability 1/4 each.
    fn oracle_risk(rule: &Estimator, theta: &ReducedWord) -> Rational {
        let mut misses = 0i64;
        for g in Letter::ALL {
            let x = theta.append(g);
            if &rule.estimate(&x) != theta {
                misses += 1;
            }
        }
        ratio(misses, 4)
    }

    #[test]
    fn estimates() {
        assert_eq!(Estimator::Predecessor.estimate(&w("abab")), w("aba"));
        assert_eq!(
            Estimator::Predecessor.estimate(&ReducedWord::null()),
            ReducedWord::null()
        );
        assert_eq!(
            Estimator::AppendLetter(Letter::A).estimate(&w("ab")),
            w("aba")
        );
        // Right multiplication reduces: abA·a = ab.
        assert_eq!(
            Estimator::AppendLetter(Letter::A).estimate(&w("abA")),
            w("ab")
        );
        let reverse: fn(&ReducedWord) -> ReducedWord =
            |x| ReducedWord::from_letters(x.letters().iter().rev().copied()).unwrap_or_default();
        assert_eq!(Estimator::Custom(reverse).estimate(&w("ab")), w("ba"));
    }

    #[test]
    fn predecessor_risk_quarter_or_zero() {
        assert_eq!(
            Estimator::Predecessor.frequentist_risk(&ReducedWord::null()),
            int(0)
        );
        for theta in words_up_to(8) {
            let risk = Estimator::Predecessor.frequentist_risk(&theta);
            let expected = if theta.is_null() { int(0) } else { ratio(1, 4) };
            assert_eq!(risk, expected, "θ = {theta}");
        }
    }

    #[test]
    fn append_rule_risk_is_constant_three_quarters() {
        // Right multiplication by g is a bijection, so exactly one
        // observation in A_θ maps back to θ: the risk is 3/4 at every
        // path, the null path included.
        for theta in words_up_to(6) {
            for g in Letter::ALL {
                let rule = Estimator::AppendLetter(g);
                assert_eq!(rule.frequentist_risk(&theta), ratio(3, 4), "θ={theta} g={g}");
                assert_eq!(rule.frequentist_risk(&theta), oracle_risk(&rule, &theta));
            }
        }
    }

    #[test]
    fn risks_match_oracle() {
        let reverse: fn(&ReducedWord) -> ReducedWord =
            |x| ReducedWord::from_letters(x.letters().iter().rev().copied()).unwrap_or_default();
        let rules = [
            Estimator::Predecessor,
            Estimator::AppendLetter(Letter::B),
            Estimator::Custom(reverse),
        ];
        for theta in words_up_to(5) {
            for rule in &rules {
                assert_eq!(
                    rule.frequentist_risk(&theta),
                    oracle_risk(rule, &theta),
                    "rule {} θ {theta}",
                    rule.label()
                );
            }
        }
    }

    #[test]
    fn predecessor_dominates_append_rules() {
        for g in Letter::ALL {
            let report = domination_check(
                &Estimator::Predecessor,
                &Estimator::AppendLetter(g),
                8,
                DEFAULT_ENUMERATION_CAP,
            )
            .unwrap();
            assert!(report.dominated);
            assert!(report.strict_everywhere());
            assert_eq!(report.first_strict, Some(ReducedWord::null()));
            assert!(report.violation.is_none());
            assert_eq!(report.probed, 13121); // 2·3⁸ − 1
        }
    }

    #[test]
    fn self_domination_never_strict() {
        let report = domination_check(
            &Estimator::Predecessor,
            &Estimator::Predecessor,
            5,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(report.dominated);
        assert_eq!(report.strict_count, 0);
        assert!(report.first_strict.is_none());
    }

    #[test]
    fn append_rule_does_not_dominate_predecessor() {
        let report = domination_check(
            &Estimator::AppendLetter(Letter::A),
            &Estimator::Predecessor,
            5,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(!report.dominated);
        let v = report.violation.expect("violation witness");
        assert_eq!(v.theta, ReducedWord::null());
        assert_eq!(v.left_risk, ratio(3, 4));
        assert_eq!(v.right_risk, int(0));
        // ab is also a witness: risk 3/4 against 1/4.
        assert_eq!(
            Estimator::AppendLetter(Letter::A).frequentist_risk(&w("ab")),
            ratio(3, 4)
        );
        assert_eq!(
            Estimator::Predecessor.frequentist_risk(&w("ab")),
            ratio(1, 4)
        );
    }

    #[test]
    fn domination_respects_cap() {
        assert!(matches!(
            domination_check(&Estimator::Predecessor, &Estimator::Predecessor, 9, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn risk_rows() {
        let (pred, appends) = risk_row(&w("ab"));
        assert_eq!(pred, ratio(1, 4));
        assert_eq!(appends, [ratio(3, 4), ratio(3, 4), ratio(3, 4), ratio(3, 4)]);
        assert_eq!(append_rule_risk(), ratio(3, 4));
    }
}
