//! Priors as measures on paths, identified up to a positive scalar.
//!
//! A prior here is a nonnegative mass function on reduced words. Only
//! ratios of masses ever reach a posterior, so scaling by any positive
//! rational yields an equivalent measure; improper priors (infinite
//! total mass) are first-class citizens. Three families cover the
//! analyses in this crate:
//!
//! - flat: mass 1 on every word — the right Haar measure, improper;
//! - geometric: mass `3^(−ℓ)` — flat on the *length* of the path,
//!   improper;
//! - truncated uniform: mass `1/(2·3^M − 1)` on words of length ≤ M —
//!   a genuine probability distribution;
//!
//! plus explicit finite tables for custom experiments.

use std::collections::BTreeMap;

use num::{One, Zero};
use num_bigint::RandBigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, from_biguint, inv_pow3, Rational};
use crate::word::{
    self, count_paths, count_paths_up_to, index_to_word, PathIndex, ReducedWord,
    DEFAULT_ENUMERATION_CAP,
};

/// Whether a measure has finite total mass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Properness {
    Proper,
    Improper,
    Unknown,
}

/// Mass assignments beyond the built-in families: explicit per-word
/// entries, optionally backed by a per-length default. A word's mass is
/// its table entry if present, else the entry for its length, else 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CustomTable {
    table: BTreeMap<ReducedWord, Rational>,
    by_length: BTreeMap<usize, Rational>,
}

impl CustomTable {
    pub fn table(&self) -> &BTreeMap<ReducedWord, Rational> {
        &self.table
    }

    pub fn by_length(&self) -> &BTreeMap<usize, Rational> {
        &self.by_length
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Flat,
    Geometric,
    TruncatedUniform(usize),
    Custom(CustomTable),
}

impl Family {
    fn name(&self) -> &'static str {
        match self {
            Family::Flat => "flat",
            Family::Geometric => "geometric",
            Family::TruncatedUniform(_) => "truncated_uniform",
            Family::Custom(_) => "custom",
        }
    }
}

/// A prior: a family representative times a positive scale factor.
///
/// The scale is semantically irrelevant — posteriors and risk ratios
/// are invariant under it — and defaults to 1, the canonical
/// representative.
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    family: Family,
    scale: Rational,
}

impl Measure {
    pub fn flat() -> Measure {
        Measure {
            family: Family::Flat,
            scale: Rational::one(),
        }
    }

    pub fn geometric() -> Measure {
        Measure {
            family: Family::Geometric,
            scale: Rational::one(),
        }
    }

    /// Uniform probability on the `2·3^max_len − 1` paths of length at
    /// most `max_len`.
    pub fn truncated_uniform(max_len: usize) -> Measure {
        Measure {
            family: Family::TruncatedUniform(max_len),
            scale: Rational::one(),
        }
    }

    /// Explicit table measure; masses must be nonnegative and not all
    /// zero.
    pub fn custom(
        table: BTreeMap<ReducedWord, Rational>,
        by_length: BTreeMap<usize, Rational>,
    ) -> Result<Measure> {
        for (w, m) in &table {
            if !rational::is_nonnegative(m) {
                return Err(Error::NegativeMass {
                    word: w.to_string(),
                    mass: rational::render(m),
                });
            }
        }
        for (len, m) in &by_length {
            if !rational::is_nonnegative(m) {
                return Err(Error::NegativeMass {
                    word: format!("length {len}"),
                    mass: rational::render(m),
                });
            }
        }
        let table_alive = table.values().any(|m| !m.is_zero());
        let rule_alive = by_length.values().any(|m| !m.is_zero());
        if !table_alive && !rule_alive {
            return Err(Error::ZeroMeasure);
        }
        Ok(Measure {
            family: Family::Custom(CustomTable { table, by_length }),
            scale: Rational::one(),
        })
    }

    /// The same projective point, represented with masses multiplied by
    /// `alpha > 0`.
    pub fn scaled(&self, alpha: &Rational) -> Result<Measure> {
        if !rational::is_nonnegative(alpha) || alpha.is_zero() {
            return Err(Error::NonPositiveScale(rational::render(alpha)));
        }
        Ok(Measure {
            family: self.family.clone(),
            scale: &self.scale * alpha,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn family_name(&self) -> &'static str {
        self.family.name()
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Representative mass of one word.
    pub fn mass(&self, w: &ReducedWord) -> Rational {
        let base = match &self.family {
            Family::Flat => Rational::one(),
            Family::Geometric => inv_pow3(w.len()),
            Family::TruncatedUniform(m) => {
                if w.len() <= *m {
                    Rational::one() / from_biguint(&count_paths_up_to(*m))
                } else {
                    Rational::zero()
                }
            }
            Family::Custom(c) => c
                .table
                .get(w)
                .or_else(|| c.by_length.get(&w.len()))
                .cloned()
                .unwrap_or_else(Rational::zero),
        };
        base * &self.scale
    }

    /// Total mass of the event `ℓ(θ) = len`.
    ///
    /// For the built-in families the per-word mass depends only on the
    /// length, so this is `count_paths(len)` times that mass; custom
    /// tables add their explicit overrides. No enumeration is needed.
    pub fn length_marginal(&self, len: usize) -> Rational {
        let n = from_biguint(&count_paths(len));
        match &self.family {
            Family::Custom(c) => {
                let rule = c
                    .by_length
                    .get(&len)
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let mut total = n * &rule;
                for (w, m) in &c.table {
                    if w.len() == len {
                        total += m - &rule;
                    }
                }
                total * &self.scale
            }
            _ => {
                // A representative word of this length carries the
                // common per-word mass, scale included.
                let representative =
                    index_to_word(&PathIndex::new(len, 1)).expect("rank 1 is always valid");
                n * self.mass(&representative)
            }
        }
    }

    /// Relative weight `RR(A; B)` of two finite events: the ratio of
    /// their total masses. Scale-free. Errors when `B` carries no mass.
    pub fn risk_ratio(&self, a: &[ReducedWord], b: &[ReducedWord]) -> Result<Rational> {
        let mass_of = |words: &[ReducedWord]| -> Rational {
            let mut seen: Vec<&ReducedWord> = Vec::new();
            let mut total = Rational::zero();
            for w in words {
                if !seen.contains(&w) {
                    seen.push(w);
                    total += self.mass(w);
                }
            }
            total
        };
        let denom = mass_of(b);
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(mass_of(a) / denom)
    }

    /// Whether one positive scalar maps this measure onto `other`
    /// everywhere on `probe`.
    pub fn equivalent(&self, other: &Measure, probe: &[ReducedWord]) -> bool {
        let mut alpha: Option<Rational> = None;
        for w in probe {
            let m1 = self.mass(w);
            let m2 = other.mass(w);
            match (m1.is_zero(), m2.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let r = m2 / m1;
                    match &alpha {
                        None => alpha = Some(r),
                        Some(a) => {
                            if *a != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Proper (total mass finite), improper, or unknown for custom
    /// tables.
    pub fn properness(&self) -> Properness {
        match &self.family {
            Family::Flat | Family::Geometric => Properness::Improper,
            Family::TruncatedUniform(_) => Properness::Proper,
            Family::Custom(_) => Properness::Unknown,
        }
    }

    /// Draws a path from the normalized measure.
    ///
    /// Truncated uniform sampling follows the two-step scheme: first a
    /// length, weighted by the number of paths of that length, then a
    /// uniformly random rank within the length. Improper families are
    /// rejected. Custom tables are sampled by inverse CDF over their
    /// finite support; per-length entries beyond the enumeration cap
    /// are refused.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ReducedWord> {
        match &self.family {
            Family::Flat | Family::Geometric => Err(Error::ImproperMeasure {
                family: self.family.name().to_string(),
            }),
            Family::TruncatedUniform(m) => {
                let total = count_paths_up_to(*m);
                let mut pick = rng.gen_biguint_below(&total);
                let mut len = 0;
                loop {
                    let n = count_paths(len);
                    if pick < n {
                        break;
                    }
                    pick -= n;
                    len += 1;
                }
                let rank = rng.gen_biguint_below(&count_paths(len)) + 1u32;
                index_to_word(&PathIndex { len, rank })
            }
            Family::Custom(c) => {
                let mut support: Vec<(ReducedWord, Rational)> = Vec::new();
                for (len, m) in &c.by_length {
                    if m.is_zero() {
                        continue;
                    }
                    if *len > DEFAULT_ENUMERATION_CAP {
                        return Err(Error::CapExceeded {
                            len: *len,
                            cap: DEFAULT_ENUMERATION_CAP,
                        });
                    }
                    for w in word::words_of_length(*len) {
                        if !c.table.contains_key(&w) {
                            support.push((w, m.clone()));
                        }
                    }
                }
                for (w, m) in &c.table {
                    if !m.is_zero() {
                        support.push((w.clone(), m.clone()));
                    }
                }
                let total: Rational = support.iter().map(|(_, m)| m.clone()).sum();
                if total.is_zero() {
                    return Err(Error::ZeroMeasure);
                }
                // Integerize: draw below the common-denominator total.
                let denom_lcm = support.iter().fold(num::BigInt::one(), |acc, (_, m)| {
                    num::integer::lcm(acc, m.denom().clone())
                });
                let weight = |m: &Rational| -> num::BigUint {
                    ((m.numer() * &denom_lcm) / m.denom())
                        .to_biguint()
                        .expect("nonnegative weight")
                };
                let total_weight: num::BigUint = support.iter().map(|(_, m)| weight(m)).sum();
                let mut pick = rng.gen_biguint_below(&total_weight);
                for (w, m) in &support {
                    let wt = weight(m);
                    if pick < wt {
                        return Ok(w.clone());
                    }
                    pick -= wt;
                }
                unreachable!("pick is below the total weight")
            }
        }
    }

    pub fn to_doc(&self) -> MeasureDoc {
        let scale = if self.scale.is_one() {
            None
        } else {
            Some(rational::render(&self.scale))
        };
        match &self.family {
            Family::Flat => MeasureDoc {
                family: "flat".into(),
                m: None,
                table: None,
                by_length: None,
                scale,
            },
            Family::Geometric => MeasureDoc {
                family: "geometric".into(),
                m: None,
                table: None,
                by_length: None,
                scale,
            },
            Family::TruncatedUniform(m) => MeasureDoc {
                family: "truncated_uniform".into(),
                m: Some(*m),
                table: None,
                by_length: None,
                scale,
            },
            Family::Custom(c) => MeasureDoc {
                family: "custom".into(),
                m: None,
                table: Some(
                    c.table
                        .iter()
                        .map(|(w, m)| (w.to_string(), rational::render(m)))
                        .collect(),
                ),
                by_length: Some(
                    c.by_length
                        .iter()
                        .map(|(len, m)| (*len, rational::render(m)))
                        .collect(),
                ),
                scale,
            },
        }
    }

    pub fn from_doc(doc: &MeasureDoc) -> Result<Measure> {
        let base = match doc.family.as_str() {
            "flat" => Measure::flat(),
            "geometric" => Measure::geometric(),
            "truncated_uniform" => {
                let m = doc.m.ok_or_else(|| {
                    Error::ParseMeasure("truncated_uniform requires the field m".into())
                })?;
                Measure::truncated_uniform(m)
            }
            "custom" => {
                let mut table = BTreeMap::new();
                for (w, m) in doc.table.clone().unwrap_or_default() {
                    table.insert(
                        w.parse::<ReducedWord>()
                            .map_err(|e| Error::ParseMeasure(e.to_string()))?,
                        rational::parse(&m).map_err(|e| Error::ParseMeasure(e.to_string()))?,
                    );
                }
                let mut by_length = BTreeMap::new();
                for (len, m) in doc.by_length.clone().unwrap_or_default() {
                    by_length.insert(
                        len,
                        rational::parse(&m).map_err(|e| Error::ParseMeasure(e.to_string()))?,
                    );
                }
                Measure::custom(table, by_length)?
            }
            other => {
                return Err(Error::ParseMeasure(format!(
                    "unknown family {other:?}; expected flat, geometric, truncated_uniform or custom"
                )))
            }
        };
        match &doc.scale {
            None => Ok(base),
            Some(s) => {
                base.scaled(&rational::parse(s).map_err(|e| Error::ParseMeasure(e.to_string()))?)
            }
        }
    }

    pub fn from_json(json: &str) -> Result<Measure> {
        let doc: MeasureDoc =
            serde_json::from_str(json).map_err(|e| Error::ParseMeasure(e.to_string()))?;
        Measure::from_doc(&doc)
    }
}

/// JSON form of a measure: `{family, m?, table?, by_length?, scale?}`
/// with rationals as `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MeasureDoc {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_length: Option<BTreeMap<usize, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}
