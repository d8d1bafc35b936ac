//! Exact posterior inference over the four-path neighbourhood of an
//! observation, and the annihilation probabilities on both conditioning
//! sides.
//!
//! The likelihood is supported on `A_x`, so the posterior under any
//! prior lives on those four paths. "No annihilation" at the last toss
//! is the event `x ∈ A_θ⁺`, equivalently `θ = x⁻`, equivalently
//! `ℓ(x) = ℓ(θ) + 1`. Given θ its probability is 3/4 (1 for the null
//! path); its posterior probability given x depends entirely on the
//! prior, and the mismatch between those two numbers is the whole
//! story.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::rational::{self, from_biguint, ratio, Rational};
use crate::word::{
    count_paths, count_paths_up_to, enumerate, index_to_word, likelihood, PathIndex, ReducedWord,
};

/// The event "the last toss did not annihilate", as a predicate on
/// `(θ, x)` pairs: θ is the observation's predecessor. False whenever
/// `x` is the null path, whose predecessor is not defined.
pub fn no_annihilation(theta: &ReducedWord, x: &ReducedWord) -> bool {
    x.predecessor().as_ref() == Some(theta)
}

/// Posterior over the four neighbours of an observation; masses are
/// exact and sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodPosterior {
    observation: ReducedWord,
    masses: BTreeMap<ReducedWord, Rational>,
}

impl NeighborhoodPosterior {
    pub fn observation(&self) -> &ReducedWord {
        &self.observation
    }

    /// The four paths of `A_x`, canonically ordered.
    pub fn support(&self) -> impl Iterator<Item = &ReducedWord> {
        self.masses.keys()
    }

    /// Posterior mass of one path (zero off the support).
    pub fn mass(&self, theta: &ReducedWord) -> Rational {
        self.masses
            .get(theta)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ReducedWord, &Rational)> {
        self.masses.iter()
    }

    /// Posterior probability of "no annihilation": the mass at `x⁻`,
    /// zero when the observation is the null path.
    pub fn no_annihilation_probability(&self) -> Rational {
        match self.observation.predecessor() {
            Some(pred) => self.mass(&pred),
            None => Rational::zero(),
        }
    }
}

/// Bayes on the neighbourhood: `π(θ|x) ∝ l(θ; x)·π(θ)` restricted to
/// `A_x`. Scale factors on the prior cancel. Errors when the prior
/// gives the whole neighbourhood zero mass (the observation is
/// impossible under the prior).
pub fn posterior(prior: &Measure, x: &ReducedWord) -> Result<NeighborhoodPosterior> {
    let mut raw: Vec<(ReducedWord, Rational)> = Vec::with_capacity(4);
    for theta in x.neighborhood() {
        let weight = prior.mass(&theta) * likelihood(&theta, x);
        raw.push((theta, weight));
    }
    let total: Rational = raw.iter().map(|(_, w)| w.clone()).sum();
    if total.is_zero() {
        return Err(Error::ZeroPosteriorMass { x: x.to_string() });
    }
    let masses: BTreeMap<ReducedWord, Rational> =
        raw.into_iter().map(|(t, w)| (t, w / &total)).collect();
    debug_assert_eq!(
        masses.values().sum::<Rational>(),
        Rational::one(),
        "posterior masses sum to one"
    );
    Ok(NeighborhoodPosterior {
        observation: x.clone(),
        masses,
    })
}

/// `P("no annihilation" | θ)`: the chance the next toss extends the
/// path, summed from the likelihood over `A_θ⁺`. 3/4 for every
/// non-null path, 1 for the null path.
pub fn prob_no_annihilation_given_theta(theta: &ReducedWord) -> Rational {
    theta
        .extensions()
        .iter()
        .map(|x| likelihood(theta, x))
        .sum()
}

/// `P("no annihilation" | x)` under a prior: the posterior mass of
/// `x⁻`. Zero for the null observation.
pub fn prob_no_annihilation_given_x(prior: &Measure, x: &ReducedWord) -> Result<Rational> {
    Ok(posterior(prior, x)?.no_annihilation_probability())
}

/// Odds `p/(1−p)`; certain events carry an explicit infinite signal.
#[derive(Clone, Debug, PartialEq)]
pub enum Odds {
    Finite(Rational),
    Infinite,
}

impl Odds {
    /// Odds of an event with probability `p ∈ [0, 1]`.
    pub fn from_probability(p: &Rational) -> Odds {
        assert!(
            rational::is_nonnegative(p) && *p <= Rational::one(),
            "probability out of range: {p}"
        );
        if p.is_one() {
            Odds::Infinite
        } else {
            Odds::Finite(p / (Rational::one() - p))
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Odds::Finite(r) => Some(r),
            Odds::Infinite => None,
        }
    }
}

impl fmt::Display for Odds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Odds::Finite(r) => write!(f, "{r}"),
            Odds::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Odds {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Odds {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Odds, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(Odds::Infinite)
        } else {
            rational::parse(&s)
                .map(Odds::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// Odds of "no annihilation" against "annihilation" given the path:
/// (3/4)/(1/4) = 3 for every non-null θ, infinite for the null path.
pub fn odds_no_annihilation_given_theta(theta: &ReducedWord) -> Odds {
    Odds::from_probability(&prob_no_annihilation_given_theta(theta))
}

/// The same odds on the other conditioning side, under a prior.
pub fn odds_no_annihilation_given_x(prior: &Measure, x: &ReducedWord) -> Result<Odds> {
    Ok(Odds::from_probability(&prob_no_annihilation_given_x(
        prior, x,
    )?))
}

/// `P(ℓ(X) = j | ℓ(θ) = from)`. The toss distribution depends on θ only
/// through its length (and nullity), so one representative of the
/// length settles the conditional; 1 when the path is null and j = 1,
/// else 3/4 up, 1/4 down.
pub fn length_transition(from: usize, j: usize) -> Rational {
    let representative = index_to_word(&PathIndex::new(from, 1)).expect("rank 1 is always valid");
    representative
        .neighborhood()
        .iter()
        .filter(|x| x.len() == j)
        .map(|x| likelihood(&representative, x))
        .sum()
}

/// `P(ℓ(X) = k+1 | ℓ(θ) = k) / P(ℓ(X) = k−1 | ℓ(θ) = k)` — exactly 3
/// for every k ≥ 1.
pub fn length_transition_odds(k: usize) -> Rational {
    assert!(k >= 1, "length transition odds need k >= 1");
    length_transition(k, k + 1) / length_transition(k, k - 1)
}

/// Posterior relative risk of "no annihilation" against "annihilation"
/// restated on lengths:
/// `π(ℓ(θ) = k−1 | ℓ(x) = k) / π(ℓ(θ) = k+1 | ℓ(x) = k)`.
///
/// Equals the transition-likelihood ratio times the prior length
/// marginal ratio: 1/3 for the flat prior (3 × 1/9), 3 for the
/// geometric prior (3 × 1). Errors when the prior puts no mass on
/// length k−1 or none on k+1.
pub fn length_posterior_relative_risk(prior: &Measure, k: usize) -> Result<Rational> {
    assert!(k >= 1, "length posterior relative risk needs k >= 1");
    let below = prior.length_marginal(k - 1);
    if below.is_zero() {
        return Err(Error::ZeroMarginal { len: k - 1 });
    }
    let above = prior.length_marginal(k + 1);
    if above.is_zero() {
        return Err(Error::ZeroMarginal { len: k + 1 });
    }
    let lik_ratio = length_transition(k - 1, k) / length_transition(k + 1, k);
    Ok(lik_ratio * below / above)
}

/// Prior-predictive weight of one observation:
/// `p(x) = Σ_θ l(θ; x)·π(θ)`, the sum running over the neighbourhood.
/// Formally 1 for every x under the flat prior; a genuine probability
/// mass function under a proper prior.
pub fn marginal(prior: &Measure, x: &ReducedWord) -> Rational {
    x.neighborhood()
        .iter()
        .map(|theta| likelihood(theta, x) * prior.mass(theta))
        .sum()
}

/// The joint probability of "no annihilation" under the truncated
/// uniform prior, computed from both ends of Bayes' identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointNoAnnihilation {
    pub truncation: usize,
    /// `Σ_θ π_M(θ)·P(no annihilation | θ)`.
    #[serde(with = "crate::rational::serde_str")]
    pub theta_side: Rational,
    /// `Σ_x p_M(x)·P(no annihilation | x)`.
    #[serde(with = "crate::rational::serde_str")]
    pub x_side: Rational,
}

impl JointNoAnnihilation {
    /// Conglomerability certificate: a proper prior makes the two sums
    /// agree exactly.
    pub fn identity_holds(&self) -> bool {
        self.theta_side == self.x_side
    }

    /// `3/4 + (1/4)·π_M(0)` in closed form.
    pub fn closed_form(truncation: usize) -> Rational {
        ratio(3, 4) + ratio(1, 4) / from_biguint(&count_paths_up_to(truncation))
    }
}

/// Evaluates `P_M("no annihilation")` by exhausting both sums: over
/// paths `ℓ(θ) ≤ M` weighted by the prior, and over observations
/// `ℓ(x) ≤ M+1` weighted by the marginal. Enumeration is capped.
pub fn joint_no_annihilation(truncation: usize, cap: usize) -> Result<JointNoAnnihilation> {
    let prior = Measure::truncated_uniform(truncation);
    let mut theta_side = Rational::zero();
    for len in 0..=truncation {
        for theta in enumerate(len, cap)? {
            theta_side += prior.mass(&theta) * prob_no_annihilation_given_theta(&theta);
        }
    }
    let mut x_side = Rational::zero();
    for len in 0..=truncation + 1 {
        for x in enumerate(len, cap)? {
            let weight = marginal(&prior, &x);
            if weight.is_zero() {
                continue;
            }
            x_side += weight * prob_no_annihilation_given_x(&prior, &x)?;
        }
    }
    debug_assert_eq!(theta_side, x_side);
    Ok(JointNoAnnihilation {
        truncation,
        theta_side,
        x_side,
    })
}

/// Distribution of the observed length `ℓ(X)` when θ is drawn from the
/// truncated uniform prior at `truncation`. Closed form over length
/// classes; no enumeration.
pub fn marginal_length_distribution(truncation: usize) -> BTreeMap<usize, Rational> {
    let total = from_biguint(&count_paths_up_to(truncation));
    let mut dist: BTreeMap<usize, Rational> = BTreeMap::new();
    for from in 0..=truncation {
        let weight = from_biguint(&count_paths(from)) / &total;
        let steps: &[usize] = if from == 0 {
            &[1]
        } else {
            &[from - 1, from + 1]
        };
        for &j in steps {
            let p = length_transition(from, j) * &weight;
            *dist.entry(j).or_insert_with(Rational::zero) += p;
        }
    }
    debug_assert_eq!(dist.values().sum::<Rational>(), Rational::one());
    dist
}

/// The three masses of the observed-length split under the truncated
/// uniform prior: the top lengths `{M, M+1}` (→ 2/3), the interior
/// `1 ≤ ℓ < M` (→ 1/3), and the null observation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSplit {
    pub truncation: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub top_two: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub interior: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub null_mass: Rational,
}

/// Split computed from the full length distribution.
pub fn length_split(truncation: usize) -> LengthSplit {
    let dist = marginal_length_distribution(truncation);
    let mass = |j: usize| dist.get(&j).cloned().unwrap_or_else(Rational::zero);
    let top_two = mass(truncation) + mass(truncation + 1);
    let interior: Rational = (1..truncation).map(mass).sum();
    LengthSplit {
        truncation,
        top_two,
        interior,
        null_mass: mass(0),
    }
}

/// The same split in closed form, valid for `truncation ≥ 1`:
/// `4·3^(M−1)/(2·3^M−1)`, `(2·3^(M−1)−2)/(2·3^M−1)`, `1/(2·3^M−1)`.
pub fn length_split_closed_form(truncation: usize) -> LengthSplit {
    assert!(truncation >= 1, "closed form needs truncation >= 1");
    let total = from_biguint(&count_paths_up_to(truncation));
    let top = from_biguint(&(num::BigUint::from(4u32) * rational::pow3(truncation - 1)));
    let interior =
        from_biguint(&(num::BigUint::from(2u32) * rational::pow3(truncation - 1))) - ratio(2, 1);
    LengthSplit {
        truncation,
        top_two: top / &total,
        interior: interior / &total,
        null_mass: Rational::one() / &total,
    }
}
