//! Seeded Monte Carlo of the toss process, with exact references.
//!
//! Three ways to generate a path:
//!
//! - `Tosses(n)`: n die tosses with annihilation — the path length is a
//!   reflected random walk, so `ℓ(θ) ≡ n (mod 2)`;
//! - `FixedLength(n)`: the restated process — the first letter uniform
//!   over four, each later letter uniform over the three that do not
//!   cancel, so `ℓ(θ) = n` and the path is uniform among the `4·3^(n−1)`
//!   words of that length;
//! - `FromPrior(m)`: the two-step truncated-uniform draw.
//!
//! The observation is always one extra uniform toss. Randomness is a
//! counter-based ChaCha stream: trials run in fixed-size chunks, each
//! chunk on its own substream derived from the seed and the chunk
//! index, so results are bit-identical regardless of how chunks are
//! scheduled.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{
    joint_no_annihilation, marginal_length_distribution, no_annihilation,
    prob_no_annihilation_given_x,
};
use crate::measure::Measure;
use crate::rational::{self, Rational};
use crate::word::{Letter, ReducedWord, DEFAULT_ENUMERATION_CAP};

/// Trials per RNG substream.
const CHUNK: u64 = 1024;

/// How θ is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SimMode {
    /// A fixed number of die tosses, annihilation included.
    Tosses { count: usize },
    /// Exactly this path length, uniform among words of that length.
    FixedLength { len: usize },
    /// Two-step draw from the truncated uniform prior.
    FromPrior { truncation: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    #[serde(flatten)]
    pub mode: SimMode,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn from_prior(truncation: usize, trials: u64, seed: u64) -> SimulationConfig {
        SimulationConfig {
            mode: SimMode::FromPrior { truncation },
            trials,
            seed,
        }
    }
}

/// RNG for one chunk of trials: same seed, substream = chunk index.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn uniform_letter<R: Rng + ?Sized>(rng: &mut R) -> Letter {
    Letter::ALL[rng.gen_range(0..4)]
}

/// Draws one path according to the mode.
pub fn simulate_theta<R: Rng + ?Sized>(mode: SimMode, rng: &mut R) -> Result<ReducedWord> {
    match mode {
        SimMode::Tosses { count } => {
            let mut theta = ReducedWord::null();
            for _ in 0..count {
                theta = theta.append(uniform_letter(rng));
            }
            Ok(theta)
        }
        SimMode::FixedLength { len } => {
            let mut letters: Vec<Letter> = Vec::with_capacity(len);
            for _ in 0..len {
                let g = match letters.last() {
                    None => uniform_letter(rng),
                    Some(&prev) => {
                        let pick = rng.gen_range(0..3);
                        Letter::ALL
                            .into_iter()
                            .filter(|&g| g != prev.inverse())
                            .nth(pick)
                            .expect("three allowed letters")
                    }
                };
                letters.push(g);
            }
            Ok(ReducedWord::from_letters(letters).expect("construction avoids cancellation"))
        }
        SimMode::FromPrior { truncation } => Measure::truncated_uniform(truncation).sample(rng),
    }
}

/// The supplementary toss: uniform over the four neighbours.
pub fn simulate_x<R: Rng + ?Sized>(theta: &ReducedWord, rng: &mut R) -> ReducedWord {
    theta.append(uniform_letter(rng))
}

/// Exact distribution of the path length after `count` tosses: a walk
/// on lengths that steps up with probability 3/4 and down with 1/4,
/// reflected at the null path.
pub fn tosses_length_distribution(count: usize) -> BTreeMap<usize, Rational> {
    let mut dist: BTreeMap<usize, Rational> = [(0usize, Rational::one())].into();
    for _ in 0..count {
        let mut next: BTreeMap<usize, Rational> = BTreeMap::new();
        for (len, p) in dist {
            if len == 0 {
                *next.entry(1).or_insert_with(Rational::zero) += p;
            } else {
                *next.entry(len + 1).or_insert_with(Rational::zero) +=
                    &p * rational::ratio(3, 4);
                *next.entry(len - 1).or_insert_with(Rational::zero) +=
                    &p * rational::ratio(1, 4);
            }
        }
        dist = next;
    }
    dist
}

/// One empirical frequency against its exact reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub event: String,
    pub count: u64,
    /// Size of the conditioning sample (total trials for unconditional
    /// rows).
    pub denominator: u64,
    /// `count / denominator`, exact; absent when nothing conditions.
    #[serde(with = "crate::rational::serde_str_opt")]
    pub frequency: Option<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub exact: Rational,
    /// `sqrt(p(1−p)/denominator)` at the exact p.
    pub std_error: f64,
    /// Within four standard errors of the exact value.
    pub within_tolerance: bool,
}

impl FrequencyRow {
    fn new(event: &str, count: u64, denominator: u64, exact: Rational) -> FrequencyRow {
        let p = rational::to_f64(&exact);
        let (frequency, std_error, within) = if denominator == 0 {
            (None, 0.0, true)
        } else {
            let freq = Rational::new(count.into(), denominator.into());
            let se = (p * (1.0 - p) / denominator as f64).sqrt();
            let diff = (rational::to_f64(&freq) - p).abs();
            (Some(freq), se, diff <= 4.0 * se)
        };
        FrequencyRow {
            event: event.to_string(),
            count,
            denominator,
            frequency,
            exact,
            std_error,
            within_tolerance: within,
        }
    }
}

/// Empirical frequencies from a seeded run next to their exact values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    #[serde(flatten)]
    pub config: SimulationConfig,
    pub rows: Vec<FrequencyRow>,
    pub all_within_tolerance: bool,
}

/// Draws `(θ, x)` pairs from the prior-driven process and compares the
/// annihilation and length frequencies with the exact joint, marginal
/// and conditional values. Requires the `FromPrior` mode.
pub fn empirical_vs_exact(config: &SimulationConfig) -> Result<SimulationSummary> {
    let truncation = match config.mode {
        SimMode::FromPrior { truncation } => truncation,
        other => {
            return Err(Error::InvalidConfig(format!(
                "empirical_vs_exact needs the from_prior mode, got {other:?}"
            )))
        }
    };
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }

    // Counts: observed length, and no-annihilation within each length.
    let mut len_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut clean_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut done = 0u64;
    let mut chunk_index = 0u64;
    while done < config.trials {
        let mut rng = chunk_rng(config.seed, chunk_index);
        let batch = CHUNK.min(config.trials - done);
        for _ in 0..batch {
            let theta = simulate_theta(config.mode, &mut rng)?;
            let x = simulate_x(&theta, &mut rng);
            *len_counts.entry(x.len()).or_insert(0) += 1;
            if no_annihilation(&theta, &x) {
                *clean_counts.entry(x.len()).or_insert(0) += 1;
            }
        }
        done += batch;
        chunk_index += 1;
    }
    let count_len = |lens: &mut dyn Iterator<Item = usize>| -> (u64, u64) {
        let mut total = 0;
        let mut clean = 0;
        for l in lens {
            total += len_counts.get(&l).copied().unwrap_or(0);
            clean += clean_counts.get(&l).copied().unwrap_or(0);
        }
        (total, clean)
    };

    let trials = config.trials;
    let joint = joint_no_annihilation(truncation, DEFAULT_ENUMERATION_CAP.max(truncation + 1))?;
    let dist = marginal_length_distribution(truncation);
    let exact_len =
        |j: usize| -> Rational { dist.get(&j).cloned().unwrap_or_else(Rational::zero) };
    let prior = Measure::truncated_uniform(truncation);
    // Representative observation of a length, for the exact conditional.
    let exact_conditional = |j: usize| -> Result<Rational> {
        let x = crate::word::index_to_word(&crate::word::PathIndex::new(j, 1))?;
        prob_no_annihilation_given_x(&prior, &x)
    };

    let mut rows: Vec<FrequencyRow> = Vec::new();
    let total_clean: u64 = clean_counts.values().sum();
    rows.push(FrequencyRow::new(
        "no_annihilation",
        total_clean,
        trials,
        joint.theta_side.clone(),
    ));
    for j in 0..=truncation + 1 {
        rows.push(FrequencyRow::new(
            &format!("len_x={j}"),
            len_counts.get(&j).copied().unwrap_or(0),
            trials,
            exact_len(j),
        ));
    }
    let (top_total, top_clean) = count_len(&mut (truncation..=truncation + 1));
    rows.push(FrequencyRow::new(
        &format!("len_x in {{{}, {}}}", truncation, truncation + 1),
        top_total,
        trials,
        exact_len(truncation) + exact_len(truncation + 1),
    ));

    // Conditional no-annihilation per observed-length bin.
    let (null_total, null_clean) = count_len(&mut std::iter::once(0));
    if truncation >= 1 {
        rows.push(FrequencyRow::new(
            "no_annihilation | len_x=0",
            null_clean,
            null_total,
            Rational::zero(),
        ));
    }
    if truncation >= 2 {
        let (interior_total, interior_clean) = count_len(&mut (1..truncation));
        rows.push(FrequencyRow::new(
            &format!("no_annihilation | 1<=len_x<={}", truncation - 1),
            interior_clean,
            interior_total,
            exact_conditional(1)?,
        ));
    }
    rows.push(FrequencyRow::new(
        &format!("no_annihilation | len_x in {{{}, {}}}", truncation, truncation + 1),
        top_clean,
        top_total,
        exact_conditional(truncation + 1)?,
    ));

    let all_within = rows.iter().all(|r| r.within_tolerance);
    Ok(SimulationSummary {
        config: *config,
        rows,
        all_within_tolerance: all_within,
    })
}

/// Length-histogram summary for the toss and fixed-length modes, with
/// exact references from the walk distribution or the uniform law.
pub fn process_summary(config: &SimulationConfig) -> Result<SimulationSummary> {
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if let SimMode::FromPrior { .. } = config.mode {
        return empirical_vs_exact(config);
    }

    let mut len_counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut done = 0u64;
    let mut chunk_index = 0u64;
    while done < config.trials {
        let mut rng = chunk_rng(config.seed, chunk_index);
        let batch = CHUNK.min(config.trials - done);
        for _ in 0..batch {
            let theta = simulate_theta(config.mode, &mut rng)?;
            *len_counts.entry(theta.len()).or_insert(0) += 1;
        }
        done += batch;
        chunk_index += 1;
    }

    let exact: BTreeMap<usize, Rational> = match config.mode {
        SimMode::Tosses { count } => tosses_length_distribution(count),
        SimMode::FixedLength { len } => [(len, Rational::one())].into(),
        SimMode::FromPrior { .. } => unreachable!("handled above"),
    };
    let mut rows: Vec<FrequencyRow> = Vec::new();
    for (&len, &count) in &len_counts {
        rows.push(FrequencyRow::new(
            &format!("len_theta={len}"),
            count,
            config.trials,
            exact.get(&len).cloned().unwrap_or_else(Rational::zero),
        ));
    }
    // Lengths the run never produced still deserve a row when exact
    // mass is nonzero.
    for (&len, p) in &exact {
        if !len_counts.contains_key(&len) && !p.is_zero() {
            rows.push(FrequencyRow::new(
                &format!("len_theta={len}"),
                0,
                config.trials,
                p.clone(),
            ));
        }
    }
    rows.sort_by_key(|r| r.event.clone());
    let all_within = rows.iter().all(|r| r.within_tolerance);
    Ok(SimulationSummary {
        config: *config,
        rows,
        all_within_tolerance: all_within,
    })
}
