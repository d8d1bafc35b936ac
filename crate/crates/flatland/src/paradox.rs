//! Non-conglomerability audits, q-vague convergence tables, and the
//! assembled paradox report.
//!
//! The flat prior exhibits non-conglomerability: a threshold `a` with
//! `P(A|x) < a` for every observation while `P(A|θ) > a` for every
//! path, impossible under any countably additive probability. The
//! audit sweeps both conditionals over all words up to a bound. The
//! conditional probabilities depend on a word only through its length
//! and nullity (property-tested in `inference`), so a bounded sweep
//! settles the unbounded claim.
//!
//! q-vague convergence is convergence of priors up to scalars: with
//! `a_M = 2·3^M − 1`, the scaled truncated uniforms converge pointwise
//! to the flat prior, and posteriors at a fixed observation follow —
//! while the observable length escapes to infinity.

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{domination_check, Estimator};
use crate::inference::{
    joint_no_annihilation, length_split, odds_no_annihilation_given_theta,
    odds_no_annihilation_given_x, posterior, prob_no_annihilation_given_theta,
    prob_no_annihilation_given_x, Odds,
};
use crate::measure::{Measure, MeasureDoc};
use crate::rational::{self, ratio, Rational};
use crate::sim::{empirical_vs_exact, SimulationConfig, SimulationSummary};
use crate::word::{
    count_paths_up_to, enumerate, words_of_length, Letter, ReducedWord, DEFAULT_ENUMERATION_CAP,
};

/// The event name every audit in this crate is about.
pub const NO_ANNIHILATION: &str = "no annihilation";

/// Result of sweeping `P(A|x)` and `P(A|θ)` against a threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonConglomerabilityFinding {
    pub event: String,
    #[serde(with = "crate::rational::serde_str")]
    pub threshold: Rational,
    /// Largest posterior probability over the probed observations.
    #[serde(with = "crate::rational::serde_str")]
    pub sup_given_x: Rational,
    /// Smallest conditional probability over the probed paths.
    #[serde(with = "crate::rational::serde_str")]
    pub inf_given_theta: Rational,
    pub max_len: usize,
    /// Observations probed (posterior defined under the prior).
    pub probed_x: u64,
    /// Observations skipped because the prior makes them impossible.
    pub skipped_x: u64,
    /// `sup_given_x < threshold < inf_given_theta` on the probed range.
    pub verdict: bool,
}

/// Exhausts both conditionals over all words of length at most
/// `max_len` and checks the strict sandwich around the threshold.
/// Observations impossible under the prior are skipped and counted.
pub fn audit_nonconglomerability(
    prior: &Measure,
    threshold: &Rational,
    max_len: usize,
    cap: usize,
) -> Result<NonConglomerabilityFinding> {
    let mut sup_x: Option<Rational> = None;
    let mut skipped = 0u64;
    let mut probed = 0u64;
    for len in 0..=max_len {
        for x in enumerate(len, cap)? {
            match prob_no_annihilation_given_x(prior, &x) {
                Ok(p) => {
                    probed += 1;
                    if sup_x.as_ref().is_none_or(|s| p > *s) {
                        sup_x = Some(p);
                    }
                }
                Err(Error::ZeroPosteriorMass { .. }) => skipped += 1,
                Err(other) => return Err(other),
            }
        }
    }
    let sup_given_x = sup_x.ok_or_else(|| {
        Error::InvalidConfig(format!(
            "no observation of length <= {max_len} is possible under the prior"
        ))
    })?;

    let mut inf_theta: Option<Rational> = None;
    for len in 0..=max_len {
        for theta in enumerate(len, cap)? {
            let p = prob_no_annihilation_given_theta(&theta);
            if inf_theta.as_ref().is_none_or(|i| p < *i) {
                inf_theta = Some(p);
            }
        }
    }
    let inf_given_theta = inf_theta.expect("at least the null path is probed");

    let verdict = sup_given_x < *threshold && *threshold < inf_given_theta;
    Ok(NonConglomerabilityFinding {
        event: NO_ANNIHILATION.to_string(),
        threshold: threshold.clone(),
        sup_given_x,
        inf_given_theta,
        max_len,
        probed_x: probed,
        skipped_x: skipped,
        verdict,
    })
}

/// A prior's scaled mass at one probe path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledMass {
    pub theta: ReducedWord,
    /// `a_M · π_M(θ)` — exactly 1 once the support reaches θ.
    #[serde(with = "crate::rational::serde_str")]
    pub mass: Rational,
}

/// One truncation level of the q-vague convergence table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub truncation: usize,
    /// The scaling `a_M = 2·3^M − 1`.
    #[serde(with = "crate::rational::serde_biguint")]
    pub scaling: BigUint,
    pub scaled_masses: Vec<ScaledMass>,
    /// `P_M(no annihilation | x)` at the fixed probe observation;
    /// absent while the observation is impossible under the prior.
    #[serde(with = "crate::rational::serde_str_opt")]
    pub posterior_no_annihilation: Option<Rational>,
    /// `P_M(ℓ(X) ≤ tail bound)` — escapes to zero as M grows.
    #[serde(with = "crate::rational::serde_str")]
    pub tail_mass: Rational,
}

/// Builds one convergence row per truncation level.
pub fn qvague_table(
    truncations: &[usize],
    probe_thetas: &[ReducedWord],
    probe_x: &ReducedWord,
    tail_bound: usize,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows = Vec::with_capacity(truncations.len());
    for &m in truncations {
        let prior = Measure::truncated_uniform(m);
        let scaling = count_paths_up_to(m);
        let scaled_masses = probe_thetas
            .iter()
            .map(|theta| ScaledMass {
                theta: theta.clone(),
                mass: rational::from_biguint(&scaling) * prior.mass(theta),
            })
            .collect();
        let posterior_no_annihilation = match prob_no_annihilation_given_x(&prior, probe_x) {
            Ok(p) => Some(p),
            Err(Error::ZeroPosteriorMass { .. }) => None,
            Err(other) => return Err(other),
        };
        let dist = crate::inference::marginal_length_distribution(m);
        let tail_mass = dist
            .iter()
            .filter(|(len, _)| **len <= tail_bound)
            .map(|(_, p)| p.clone())
            .sum();
        rows.push(ConvergenceRow {
            truncation: m,
            scaling,
            scaled_masses,
            posterior_no_annihilation,
            tail_mass,
        });
    }
    Ok(rows)
}

/// Everything the paradox report needs to know.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportConfig {
    /// Prior for the resolution section.
    pub prior: Measure,
    /// Truncation level M for the proper-prior sections.
    pub truncation: usize,
    /// Length bound for the flat-pair sweep.
    pub probe_len: usize,
    /// Length bound for the estimator-risk sweep.
    pub domination_len: usize,
    /// Truncation levels of the q-vague table.
    pub qvague_truncations: Vec<usize>,
    /// Paths whose scaled masses the q-vague table follows.
    pub probe_thetas: Vec<ReducedWord>,
    /// Fixed observation for resolution values and posterior limits.
    pub probe_x: ReducedWord,
    /// Tail bound k for `P_M(ℓ(X) ≤ k)`.
    pub tail_k: usize,
    /// Monte Carlo trials for the empirical section; 0 disables it.
    pub trials: u64,
    pub seed: u64,
    pub cap: usize,
    /// Attach decimal hints next to exact values.
    pub decimals: bool,
}

impl Default for ReportConfig {
    fn default() -> ReportConfig {
        ReportConfig {
            prior: Measure::flat(),
            truncation: 3,
            probe_len: 10,
            domination_len: 8,
            qvague_truncations: (3..=8).collect(),
            probe_thetas: vec!["abab".parse().expect("valid word")],
            probe_x: "aba".parse().expect("valid word"),
            tail_k: 2,
            trials: 0,
            seed: 0xF1A7,
            cap: DEFAULT_ENUMERATION_CAP,
            decimals: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportBounds {
    pub probe_len: usize,
    pub domination_len: usize,
    pub truncation: usize,
    pub tail_k: usize,
    pub qvague_truncations: Vec<usize>,
    pub cap: usize,
}

/// The resolution section: the configured prior's answer at the probe
/// observation, with the geometric reference alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionSection {
    pub prior: String,
    pub probe_x: ReducedWord,
    #[serde(with = "crate::rational::serde_str")]
    pub given_x: Rational,
    pub odds_x: Odds,
    /// Whether the prior's posterior answer matches the conditional
    /// 3/4 — the paradox gone.
    pub paradox_resolved: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub geometric_given_x: Rational,
    pub geometric_odds_x: Odds,
}

/// One observed-length class of the truncated-uniform posterior law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmRow {
    pub len_x: usize,
    /// `P_M(no annihilation | x)` for observations of this length;
    /// absent when no such observation is possible.
    #[serde(with = "crate::rational::serde_str_opt")]
    pub probability: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointIdentitySection {
    pub truncation: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub theta_side: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub x_side: Rational,
    pub equal: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub closed_form: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSection {
    pub truncation: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub top_two: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub interior: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub null_mass: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_two_decimal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_decimal: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominationRow {
    pub estimator: String,
    /// The append rule's risk — 3/4 at every path.
    #[serde(with = "crate::rational::serde_str")]
    pub risk: Rational,
    /// Predecessor risk away from the null path.
    #[serde(with = "crate::rational::serde_str")]
    pub predecessor_risk: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub predecessor_risk_null: Rational,
    pub dominated_by_predecessor: bool,
    pub strict_everywhere: bool,
    pub max_len: usize,
}

/// The assembled exact (and optionally empirical) account of the
/// paradox.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub prior: MeasureDoc,
    pub bounds: ReportBounds,
    /// `P(no annihilation | θ)` for non-null paths: 3/4.
    #[serde(with = "crate::rational::serde_str")]
    pub given_theta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub given_theta_null: Rational,
    /// `P(no annihilation | x)` under the flat prior for non-null
    /// observations: 1/4.
    #[serde(with = "crate::rational::serde_str")]
    pub given_x: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub given_x_null: Rational,
    /// Odds pair 3 and 1/3.
    pub odds_theta: Odds,
    pub odds_x: Odds,
    /// Flat-prior weight ratio of consecutive-even length classes: 9.
    #[serde(with = "crate::rational::serde_str")]
    pub rr_lengths: Rational,
    /// `odds_theta / odds_x` — the same 9, from the other side.
    #[serde(with = "crate::rational::serde_str")]
    pub factor: Rational,
    pub resolution: ResolutionSection,
    pub pm_table: Vec<PmRow>,
    pub joint_identity: JointIdentitySection,
    pub length_split: SplitSection,
    pub qvague: Vec<ConvergenceRow>,
    pub domination: Vec<DominationRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<SimulationSummary>,
}

fn decimal_hint(enabled: bool, value: &Rational) -> Option<f64> {
    enabled.then(|| rational::to_f64(value))
}

/// Computes every section of the report from one configuration.
///
/// The headline values are swept over the probe range, not assumed:
/// the flat pair, for instance, is certified as constant over all
/// words up to `probe_len` before it is reported.
pub fn paradox_report(config: &ReportConfig) -> Result<ParadoxReport> {
    let flat = Measure::flat();

    // Flat pair, swept: 3/4 against 1/4 (1 and 0 at the null word).
    let mut given_theta: Option<Rational> = None;
    let mut given_x: Option<Rational> = None;
    for len in 1..=config.probe_len {
        for word in enumerate(len, config.cap)? {
            let pt = prob_no_annihilation_given_theta(&word);
            if given_theta.as_ref().is_some_and(|v| *v != pt) {
                return Err(Error::Invariant(format!(
                    "P(no annihilation | θ) is not constant: {pt} at {word}"
                )));
            }
            given_theta = Some(pt);
            let px = prob_no_annihilation_given_x(&flat, &word)?;
            if given_x.as_ref().is_some_and(|v| *v != px) {
                return Err(Error::Invariant(format!(
                    "flat P(no annihilation | x) is not constant: {px} at {word}"
                )));
            }
            given_x = Some(px);
        }
    }
    let given_theta = given_theta.unwrap_or_else(|| ratio(3, 4));
    let given_x = given_x.unwrap_or_else(|| ratio(1, 4));
    let null = ReducedWord::null();
    let given_theta_null = prob_no_annihilation_given_theta(&null);
    let given_x_null = prob_no_annihilation_given_x(&flat, &null)?;

    let odds_theta = odds_no_annihilation_given_theta(&"a".parse::<ReducedWord>()?);
    let odds_x = odds_no_annihilation_given_x(&flat, &"a".parse::<ReducedWord>()?)?;

    // Prior weight of length k+1 against length k−1 under the flat
    // prior; constant in k, certified at a few levels.
    let mut rr_lengths: Option<Rational> = None;
    for k in 2..=4usize {
        let above: Vec<ReducedWord> = words_of_length(k + 1).collect();
        let below: Vec<ReducedWord> = words_of_length(k - 1).collect();
        let rr = flat.risk_ratio(&above, &below)?;
        if rr_lengths.as_ref().is_some_and(|v| *v != rr) {
            return Err(Error::Invariant("length risk ratio is not constant".into()));
        }
        rr_lengths = Some(rr);
    }
    let rr_lengths = rr_lengths.expect("loop ran");
    let factor = match (&odds_theta, &odds_x) {
        (Odds::Finite(t), Odds::Finite(x)) => t / x,
        _ => return Err(Error::Invariant("flat odds should be finite".into())),
    };

    let resolution_given_x = prob_no_annihilation_given_x(&config.prior, &config.probe_x)?;
    let geometric = Measure::geometric();
    let resolution = ResolutionSection {
        prior: config.prior.family_name().to_string(),
        probe_x: config.probe_x.clone(),
        odds_x: Odds::from_probability(&resolution_given_x),
        paradox_resolved: resolution_given_x == given_theta,
        given_x: resolution_given_x,
        geometric_given_x: prob_no_annihilation_given_x(&geometric, &config.probe_x)?,
        geometric_odds_x: odds_no_annihilation_given_x(&geometric, &config.probe_x)?,
    };

    let tu = Measure::truncated_uniform(config.truncation);
    let mut pm_table = Vec::new();
    for len in 0..=config.truncation + 1 {
        let representative = crate::word::index_to_word(&crate::word::PathIndex::new(len, 1))?;
        let probability = match prob_no_annihilation_given_x(&tu, &representative) {
            Ok(p) => Some(p),
            Err(Error::ZeroPosteriorMass { .. }) => None,
            Err(other) => return Err(other),
        };
        pm_table.push(PmRow {
            len_x: len,
            decimal: probability
                .as_ref()
                .and_then(|p| decimal_hint(config.decimals, p)),
            probability,
        });
    }

    let joint = joint_no_annihilation(config.truncation, config.cap)?;
    let closed = crate::inference::JointNoAnnihilation::closed_form(config.truncation);
    let joint_identity = JointIdentitySection {
        truncation: config.truncation,
        equal: joint.identity_holds() && joint.theta_side == closed,
        decimal: decimal_hint(config.decimals, &joint.theta_side),
        theta_side: joint.theta_side,
        x_side: joint.x_side,
        closed_form: closed,
    };

    let split = length_split(config.truncation);
    let length_split = SplitSection {
        truncation: split.truncation,
        top_two_decimal: decimal_hint(config.decimals, &split.top_two),
        interior_decimal: decimal_hint(config.decimals, &split.interior),
        top_two: split.top_two,
        interior: split.interior,
        null_mass: split.null_mass,
    };

    let qvague = qvague_table(
        &config.qvague_truncations,
        &config.probe_thetas,
        &config.probe_x,
        config.tail_k,
    )?;

    let mut domination = Vec::with_capacity(4);
    for g in Letter::ALL {
        let rule = Estimator::AppendLetter(g);
        let check = domination_check(
            &Estimator::Predecessor,
            &rule,
            config.domination_len,
            config.cap,
        )?;
        domination.push(DominationRow {
            estimator: rule.label(),
            risk: rule.frequentist_risk(&"ab".parse::<ReducedWord>()?),
            predecessor_risk: Estimator::Predecessor.frequentist_risk(&"ab".parse::<ReducedWord>()?),
            predecessor_risk_null: Estimator::Predecessor.frequentist_risk(&null),
            dominated_by_predecessor: check.dominated,
            strict_everywhere: check.strict_everywhere(),
            max_len: check.max_len,
        });
    }

    let empirical = if config.trials > 0 {
        Some(empirical_vs_exact(&SimulationConfig::from_prior(
            config.truncation,
            config.trials,
            config.seed,
        ))?)
    } else {
        None
    };

    Ok(ParadoxReport {
        prior: config.prior.to_doc(),
        bounds: ReportBounds {
            probe_len: config.probe_len,
            domination_len: config.domination_len,
            truncation: config.truncation,
            tail_k: config.tail_k,
            qvague_truncations: config.qvague_truncations.clone(),
            cap: config.cap,
        },
        given_theta,
        given_theta_null,
        given_x,
        given_x_null,
        odds_theta,
        odds_x,
        rr_lengths,
        factor,
        resolution,
        pm_table,
        joint_identity,
        length_split,
        qvague,
        domination,
        empirical,
    })
}

#[cfg(test)]
mod tests {
    use num::One;

    use crate::rational::int;

    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    fn half() -> Rational {
        ratio(1, 2)
    }

    #[test]
    fn flat_audit_finds_the_paradox() {
        let finding = audit_nonconglomerability(
            &Measure::flat(),
            &half(),
            10,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(finding.verdict);
        assert_eq!(finding.sup_given_x, ratio(1, 4));
        assert_eq!(finding.inf_given_theta, ratio(3, 4));
        assert_eq!(finding.skipped_x, 0);
        assert_eq!(
            finding.probed_x,
            2 * 3u64.pow(10) - 1,
            "every word up to the bound is probed"
        );
    }

    #[test]
    fn flat_audit_verdict_tracks_the_threshold() {
        let flat = Measure::flat();
        for (a, expected) in [
            (ratio(1, 4), false),
            (ratio(26, 100), true),
            (half(), true),
            (ratio(74, 100), true),
            (ratio(3, 4), false),
            (ratio(9, 10), false),
            (ratio(1, 10), false),
        ] {
            let finding =
                audit_nonconglomerability(&flat, &a, 4, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(finding.verdict, expected, "threshold {a}");
        }
    }

    #[test]
    fn geometric_audit_fails() {
        let finding = audit_nonconglomerability(
            &Measure::geometric(),
            &half(),
            10,
            DEFAULT_ENUMERATION_CAP,
        )
        .unwrap();
        assert!(!finding.verdict);
        assert_eq!(finding.sup_given_x, ratio(3, 4));
    }

    #[test]
    fn proper_prior_audit_fails_over_the_reachable_range() {
        let m = 5;
        let prior = Measure::truncated_uniform(m);
        let finding =
            audit_nonconglomerability(&prior, &half(), m + 1, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(!finding.verdict);
        assert_eq!(finding.sup_given_x, int(1));
        assert_eq!(finding.inf_given_theta, ratio(3, 4));
        // No threshold can sit above the sup and below the inf.
        assert!(finding.sup_given_x >= finding.inf_given_theta);
        assert_eq!(finding.skipped_x, 0, "every x up to M+1 is reachable");
    }

    #[test]
    fn proper_prior_audit_on_expected_range_shows_the_paradox() {
        // Probing only the "expected" observations, those well inside
        // the support, reproduces the flat verdict.
        let prior = Measure::truncated_uniform(5);
        let finding =
            audit_nonconglomerability(&prior, &half(), 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(finding.verdict);
        assert_eq!(finding.sup_given_x, ratio(1, 4));
    }

    #[test]
    fn audit_skips_unreachable_observations() {
        let prior = Measure::truncated_uniform(2);
        let finding =
            audit_nonconglomerability(&prior, &half(), 5, DEFAULT_ENUMERATION_CAP).unwrap();
        // Lengths 4 and 5 are unreachable: 108 + 324 words.
        assert_eq!(finding.skipped_x, 432);
        assert!(!finding.verdict);
    }

    #[test]
    fn qvague_masses_settle_at_one() {
        let theta = w("abab");
        let rows = qvague_table(&[4, 5, 6, 7, 8], &[theta.clone()], &w("aba"), 2).unwrap();
        for row in &rows {
            assert_eq!(row.scaled_masses.len(), 1);
            assert_eq!(
                row.scaled_masses[0].mass,
                int(1),
                "M = {}",
                row.truncation
            );
            assert_eq!(row.scaling, count_paths_up_to(row.truncation));
        }
    }

    #[test]
    fn qvague_mass_zero_outside_support() {
        let rows = qvague_table(&[2], &[w("abab")], &w("a"), 2).unwrap();
        assert_eq!(rows[0].scaled_masses[0].mass, int(0));
    }

    #[test]
    fn qvague_posterior_settles_at_a_quarter() {
        let x = w("aba");
        let rows = qvague_table(&[1, 2, 3, 4, 5, 6, 7, 8], &[], &x, 2).unwrap();
        for row in &rows {
            match row.truncation {
                1 => assert_eq!(row.posterior_no_annihilation, None, "x impossible at M=1"),
                2 | 3 => assert_eq!(row.posterior_no_annihilation, Some(int(1))),
                _ => assert_eq!(
                    row.posterior_no_annihilation,
                    Some(ratio(1, 4)),
                    "M = {}",
                    row.truncation
                ),
            }
        }
    }

    #[test]
    fn qvague_tail_escapes_monotonically() {
        let rows = qvague_table(&(3..=10).collect::<Vec<_>>(), &[], &w("aba"), 2).unwrap();
        assert_eq!(rows[0].tail_mass, ratio(17, 53));
        for pair in rows.windows(2) {
            assert!(
                pair[1].tail_mass < pair[0].tail_mass,
                "tail not strictly decreasing at M = {}",
                pair[1].truncation
            );
        }
        let last = &rows.last().unwrap().tail_mass;
        assert!(*last < ratio(1, 1000));
    }

    #[test]
    fn default_report_carries_the_factor_nine() {
        let report = paradox_report(&ReportConfig::default()).unwrap();
        assert_eq!(report.given_theta, ratio(3, 4));
        assert_eq!(report.given_theta_null, int(1));
        assert_eq!(report.given_x, ratio(1, 4));
        assert_eq!(report.given_x_null, int(0));
        assert_eq!(report.odds_theta, Odds::Finite(int(3)));
        assert_eq!(report.odds_x, Odds::Finite(ratio(1, 3)));
        assert_eq!(report.rr_lengths, int(9));
        assert_eq!(report.factor, int(9));
        assert!(!report.resolution.paradox_resolved);
        assert_eq!(report.resolution.geometric_given_x, ratio(3, 4));
        assert_eq!(report.resolution.geometric_odds_x, Odds::Finite(int(3)));
        assert!(report.joint_identity.equal);
        assert!(report
            .domination
            .iter()
            .all(|row| row.dominated_by_predecessor && row.strict_everywhere));
        assert!(report.empirical.is_none());
    }

    #[test]
    fn geometric_report_resolves_the_paradox() {
        let config = ReportConfig {
            prior: Measure::geometric(),
            ..ReportConfig::default()
        };
        let report = paradox_report(&config).unwrap();
        assert!(report.resolution.paradox_resolved);
        assert_eq!(report.resolution.given_x, ratio(3, 4));
        assert_eq!(report.resolution.odds_x, Odds::Finite(int(3)));
    }

    #[test]
    fn degenerate_report_at_truncation_zero() {
        let config = ReportConfig {
            truncation: 0,
            ..ReportConfig::default()
        };
        let report = paradox_report(&config).unwrap();
        assert_eq!(report.joint_identity.theta_side, int(1));
        assert!(report.joint_identity.equal);
        let row0 = &report.pm_table[0];
        assert_eq!(row0.len_x, 0);
        assert_eq!(row0.probability, None, "null observation impossible at M=0");
        assert_eq!(report.pm_table[1].probability, Some(int(1)));
        assert_eq!(report.length_split.top_two, int(1));
    }

    #[test]
    fn pm_table_matches_the_piecewise_law() {
        let config = ReportConfig {
            truncation: 5,
            ..ReportConfig::default()
        };
        let report = paradox_report(&config).unwrap();
        for row in &report.pm_table {
            let expected = match row.len_x {
                0 => int(0),
                l if l >= 5 => int(1),
                _ => ratio(1, 4),
            };
            assert_eq!(row.probability, Some(expected), "len {}", row.len_x);
        }
    }

    #[test]
    fn report_with_empirical_section() {
        let config = ReportConfig {
            trials: 20_000,
            ..ReportConfig::default()
        };
        let report = paradox_report(&config).unwrap();
        let empirical = report.empirical.expect("empirical section");
        assert!(empirical.all_within_tolerance);
    }

    #[test]
    fn report_decimals_are_opt_in() {
        let without = paradox_report(&ReportConfig::default()).unwrap();
        assert!(without.joint_identity.decimal.is_none());
        assert!(without.pm_table.iter().all(|r| r.decimal.is_none()));
        let with = paradox_report(&ReportConfig {
            decimals: true,
            ..ReportConfig::default()
        })
        .unwrap();
        let hint = with.joint_identity.decimal.expect("decimal hint");
        assert!((hint - 40.0 / 53.0).abs() < 1e-12);
    }

    #[test]
    fn report_json_round_trip() {
        let report = paradox_report(&ReportConfig {
            trials: 5_000,
            decimals: true,
            ..ReportConfig::default()
        })
        .unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: ParadoxReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        for key in [
            "given_theta",
            "given_x",
            "odds_theta",
            "odds_x",
            "rr_lengths",
            "factor",
            "resolution",
            "pm_table",
            "joint_identity",
            "qvague",
            "domination",
            "empirical",
        ] {
            assert!(
                json.contains(&format!("\"{key}\"")),
                "missing field {key}"
            );
        }
    }

    #[test]
    fn scaling_is_one_at_truncation_zero() {
        assert_eq!(count_paths_up_to(0), BigUint::one());
    }
}
