//! Reduced words on the free group generated by two symbols.
//!
//! A path is the record of tetrahedral-die tosses after cancellation:
//! whenever a toss is the inverse of the previous surviving outcome, the
//! two annihilate. What remains is a *reduced word* over
//! `{a, b, a⁻¹, b⁻¹}` — no letter is ever adjacent to its inverse.
//!
//! The canonical letter order is `a < b < a⁻¹ < b⁻¹`; enumeration is
//! lexicographic in that order, which fixes the `(length, rank)`
//! indexing of paths.

use std::fmt;
use std::str::FromStr;

use num::{BigUint, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Default bound on exhaustive enumeration, ~6.4M words at length 14.
pub const DEFAULT_ENUMERATION_CAP: usize = 14;

/// One face of the die: a generator or its inverse.
///
/// Rendered as `a`, `b`, `A` (= a⁻¹), `B` (= b⁻¹). The derived order is
/// the canonical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    /// All four letters in canonical order.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::AInv => 'A',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'A' => Some(Letter::AInv),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }

    /// Position in canonical order.
    fn rank(self) -> usize {
        match self {
            Letter::A => 0,
            Letter::B => 1,
            Letter::AInv => 2,
            Letter::BInv => 3,
        }
    }

    /// The three letters that may follow `prev` without annihilation,
    /// in canonical order; all four when there is no previous letter.
    fn allowed_after(prev: Option<Letter>) -> Vec<Letter> {
        match prev {
            None => Letter::ALL.to_vec(),
            Some(p) => {
                let forbidden = p.inverse();
                Letter::ALL
                    .iter()
                    .copied()
                    .filter(|&g| g != forbidden)
                    .collect()
            }
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A cancellation-free path; the empty word is the null path, printed `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    /// The null path.
    pub fn null() -> ReducedWord {
        ReducedWord::default()
    }

    pub fn single(g: Letter) -> ReducedWord {
        ReducedWord { letters: vec![g] }
    }

    /// Builds a word from letters, rejecting adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<ReducedWord> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[1] == pair[0].inverse() {
                return Err(Error::ParseWord {
                    input: letters.iter().map(|g| g.as_char()).collect(),
                    reason: format!(
                        "adjacent inverse letters {}{} at position {}",
                        pair[0], pair[1], i
                    ),
                });
            }
        }
        Ok(ReducedWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Path length ℓ.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether this is the null path.
    pub fn is_null(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn ends_with(&self, g: Letter) -> bool {
        self.last() == Some(g)
    }

    /// One more toss: cancels the last letter when `g` is its inverse,
    /// otherwise extends the path. The length always changes by one.
    pub fn append(&self, g: Letter) -> ReducedWord {
        let mut letters = self.letters.clone();
        if letters.last() == Some(&g.inverse()) {
            letters.pop();
        } else {
            letters.push(g);
        }
        ReducedWord { letters }
    }

    /// The path with the last outcome removed; `None` for the null path,
    /// whose predecessor is not defined.
    pub fn predecessor(&self) -> Option<ReducedWord> {
        if self.letters.is_empty() {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.pop();
        Some(ReducedWord { letters })
    }

    /// The set `A_x⁺`: every path reachable by one toss without
    /// annihilation — three extensions, or all four length-1 paths from
    /// the null path. Canonically ordered.
    pub fn extensions(&self) -> Vec<ReducedWord> {
        Letter::allowed_after(self.last())
            .into_iter()
            .map(|g| {
                let mut letters = self.letters.clone();
                letters.push(g);
                ReducedWord { letters }
            })
            .collect()
    }

    /// The set `A_x`: the predecessor (when defined) plus the
    /// extensions. Always exactly four paths.
    pub fn neighborhood(&self) -> Vec<ReducedWord> {
        let mut out = Vec::with_capacity(4);
        if let Some(p) = self.predecessor() {
            out.push(p);
        }
        out.extend(self.extensions());
        out
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for g in &self.letters {
            write!(f, "{}", g.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    /// Accepts the rendered alphabet `a b A B`, or `e` alone for the
    /// null path. Non-reduced input is rejected with a diagnostic.
    fn from_str(s: &str) -> Result<ReducedWord> {
        let bad = |reason: String| Error::ParseWord {
            input: s.to_string(),
            reason,
        };
        if s.is_empty() {
            return Err(bad("empty input; write e for the null path".to_string()));
        }
        if s == "e" {
            return Ok(ReducedWord::null());
        }
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match Letter::from_char(c) {
                Some(g) => letters.push(g),
                None if c == 'e' => {
                    return Err(bad(format!(
                        "e denotes the null path and cannot appear at position {i}"
                    )))
                }
                None => return Err(bad(format!("invalid letter {c:?} at position {i}"))),
            }
        }
        ReducedWord::from_letters(letters).map_err(|e| match e {
            Error::ParseWord { reason, .. } => bad(format!("not reduced: {reason}")),
            other => other,
        })
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ReducedWord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of paths of length exactly `len`: 1, 4, 12, 36, … — that is,
/// `4·3^(len−1)` for positive lengths.
pub fn count_paths(len: usize) -> BigUint {
    if len == 0 {
        BigUint::one()
    } else {
        BigUint::from(4u32) * crate::rational::pow3(len - 1)
    }
}

/// Number of paths of length at most `max_len`: `2·3^max_len − 1`.
pub fn count_paths_up_to(max_len: usize) -> BigUint {
    BigUint::from(2u32) * crate::rational::pow3(max_len) - BigUint::one()
}

/// Lazy lexicographic enumeration of all reduced words of one length.
///
/// Words come out in canonical order: the first letter runs over the
/// four-letter alphabet, every later letter over the three letters that
/// do not cancel.
#[derive(Clone, Debug)]
pub struct WordsOfLength {
    len: usize,
    digits: Option<Vec<u8>>,
}

impl WordsOfLength {
    fn new(len: usize) -> WordsOfLength {
        WordsOfLength {
            len,
            digits: Some(vec![0; len]),
        }
    }

    fn materialize(len: usize, digits: &[u8]) -> ReducedWord {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for &d in digits {
            let allowed = Letter::allowed_after(letters.last().copied());
            letters.push(allowed[d as usize]);
        }
        ReducedWord { letters }
    }
}

impl Iterator for WordsOfLength {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        let digits = self.digits.as_mut()?;
        let word = WordsOfLength::materialize(self.len, digits);
        // Odometer increment: base 4 at the first position, base 3 after.
        let mut pos = self.len;
        loop {
            if pos == 0 {
                self.digits = None;
                break;
            }
            pos -= 1;
            let radix = if pos == 0 { 4 } else { 3 };
            let digits = self.digits.as_mut().expect("digits present");
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
        }
        Some(word)
    }
}

/// All reduced words of length exactly `len`, canonically ordered.
pub fn words_of_length(len: usize) -> WordsOfLength {
    WordsOfLength::new(len)
}

/// Capped enumeration; errors when `len` exceeds `cap`.
pub fn enumerate(len: usize, cap: usize) -> Result<WordsOfLength> {
    if len > cap {
        return Err(Error::CapExceeded { len, cap });
    }
    Ok(words_of_length(len))
}

/// All reduced words of length at most `max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> impl Iterator<Item = ReducedWord> {
    (0..=max_len).flat_map(words_of_length)
}

/// A path named by `(length, rank)`, with ranks `1..=count_paths(len)`
/// following the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathIndex {
    pub len: usize,
    pub rank: BigUint,
}

impl PathIndex {
    pub fn new(len: usize, rank: u64) -> PathIndex {
        PathIndex {
            len,
            rank: BigUint::from(rank),
        }
    }
}

/// Inverse of [`word_to_index`]; errors on out-of-range ranks.
pub fn index_to_word(idx: &PathIndex) -> Result<ReducedWord> {
    let max = count_paths(idx.len);
    if idx.rank.is_zero() || idx.rank > max {
        return Err(Error::RankOutOfRange {
            len: idx.len,
            rank: idx.rank.clone(),
            max,
        });
    }
    if idx.len == 0 {
        return Ok(ReducedWord::null());
    }
    // Mixed radix, most significant digit first: one base-4 digit then
    // base-3 digits, exactly mirroring the enumeration odometer.
    let mut rem = &idx.rank - BigUint::one();
    let mut letters: Vec<Letter> = Vec::with_capacity(idx.len);
    for pos in 0..idx.len {
        let place = crate::rational::pow3(idx.len - 1 - pos);
        let digit_big = &rem / &place;
        rem %= &place;
        let digit: usize = usize::try_from(&digit_big).expect("digit below 4");
        let allowed = Letter::allowed_after(letters.last().copied());
        letters.push(allowed[digit]);
    }
    Ok(ReducedWord { letters })
}

/// Canonical `(length, rank)` of a word.
pub fn word_to_index(w: &ReducedWord) -> PathIndex {
    let len = w.len();
    let mut rank = BigUint::zero();
    let mut prev: Option<Letter> = None;
    for (pos, &g) in w.letters().iter().enumerate() {
        let digit = match prev {
            None => g.rank(),
            Some(p) => Letter::allowed_after(Some(p))
                .iter()
                .position(|&h| h == g)
                .expect("letter is allowed in a reduced word"),
        };
        rank += BigUint::from(digit) * crate::rational::pow3(len - 1 - pos);
        prev = Some(g);
    }
    PathIndex {
        len,
        rank: rank + BigUint::one(),
    }
}

/// Model likelihood `l(θ; x) = P(X = x | θ)`: one toss moves between
/// neighbours with probability 1/4, so the value is 1/4 when the two
/// paths are one toss apart and 0 otherwise. Symmetric in its arguments.
pub fn likelihood(theta: &ReducedWord, x: &ReducedWord) -> Rational {
    if theta.neighborhood().contains(x) {
        ratio(1, 4)
    } else {
        ratio(0, 1)
    }
}

#[cfg(test)]
pub(crate) mod test_strategies {
    use proptest::prelude::*;

    use super::{Letter, ReducedWord};

    pub fn arb_letter() -> impl Strategy<Value = Letter> {
        prop::sample::select(Letter::ALL.to_vec())
    }

    /// Uniformly random reduced word of length up to `max_len`.
    pub fn arb_word(max_len: usize) -> impl Strategy<Value = ReducedWord> {
        (0..=max_len)
            .prop_flat_map(|len| prop::collection::vec(0..12u32, len))
            .prop_map(|seeds| {
                let mut letters: Vec<Letter> = Vec::with_capacity(seeds.len());
                for s in seeds {
                    let allowed = Letter::allowed_after(letters.last().copied());
                    letters.push(allowed[s as usize % allowed.len()]);
                }
                ReducedWord { letters }
            })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::test_strategies::{arb_letter, arb_word};
    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().expect("valid word")
    }

    /// Independent oracle: all letter sequences of length `len`, kept
    /// only when no adjacent pair cancels.
    fn brute_force_words(len: usize) -> Vec<ReducedWord> {
        let mut seqs: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for s in &seqs {
                for g in Letter::ALL {
                    let mut t = s.clone();
                    t.push(g);
                    next.push(t);
                }
            }
            seqs = next;
        }
        seqs.into_iter()
            .filter(|s| s.windows(2).all(|p| p[1] != p[0].inverse()))
            .map(|letters| ReducedWord { letters })
            .collect()
    }

    #[test]
    fn append_without_cancellation() {
        assert_eq!(w("ab").append(Letter::AInv), w("abA"));
        assert_eq!(ReducedWord::null().append(Letter::B), w("b"));
        assert_eq!(w("b").len(), 1);
    }

    #[test]
    fn append_with_cancellation() {
        assert_eq!(w("aba").append(Letter::AInv), w("ab"));
        assert_eq!(w("a").append(Letter::AInv), ReducedWord::null());
    }

    #[test]
    fn predecessor_removes_last_outcome() {
        assert_eq!(w("abaa").predecessor(), Some(w("aba")));
        assert_eq!(w("a").predecessor(), Some(ReducedWord::null()));
        assert_eq!(ReducedWord::null().predecessor(), None);
    }

    #[test]
    fn extensions_of_nonnull_path() {
        let exts = w("abaa").extensions();
        assert_eq!(exts, vec![w("abaaa"), w("abaab"), w("abaaB")]);
    }

    #[test]
    fn extensions_of_null_path() {
        let exts = ReducedWord::null().extensions();
        assert_eq!(exts, vec![w("a"), w("b"), w("A"), w("B")]);
    }

    #[test]
    fn neighborhood_has_four_members() {
        assert_eq!(w("a").neighborhood(), vec![ReducedWord::null(), w("aa"), w("ab"), w("aB")]);
        assert_eq!(ReducedWord::null().neighborhood().len(), 4);
        for x in words_up_to(5) {
            assert_eq!(x.neighborhood().len(), 4);
        }
    }

    #[test]
    fn path_counts_match_brute_force() {
        assert_eq!(count_paths(0), BigUint::from(1u32));
        assert_eq!(count_paths(1), BigUint::from(4u32));
        assert_eq!(count_paths(3), BigUint::from(36u32));
        for len in 0..=8 {
            assert_eq!(count_paths(len), BigUint::from(brute_force_words(len).len()));
            assert_eq!(count_paths(len), BigUint::from(words_of_length(len).count()));
        }
    }

    #[test]
    fn cumulative_counts_match_partial_sums() {
        assert_eq!(count_paths_up_to(0), BigUint::from(1u32));
        assert_eq!(count_paths_up_to(2), BigUint::from(17u32));
        let sum: BigUint = (0..=5).map(count_paths).sum();
        assert_eq!(count_paths_up_to(5), sum);
        assert_eq!(sum, BigUint::from(485u32));
    }

    #[test]
    fn enumeration_is_sorted_reduced_and_complete() {
        for len in 0..=7 {
            let words: Vec<ReducedWord> = words_of_length(len).collect();
            let mut expected = brute_force_words(len);
            expected.sort();
            assert_eq!(words, expected);
            assert!(words.iter().all(|x| x.len() == len));
        }
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(enumerate(3, 14).is_ok());
        match enumerate(15, 14) {
            Err(Error::CapExceeded { len: 15, cap: 14 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn first_words_in_canonical_order() {
        let words: Vec<ReducedWord> = words_of_length(1).collect();
        assert_eq!(words, vec![w("a"), w("b"), w("A"), w("B")]);
        assert_eq!(words_of_length(0).collect::<Vec<_>>(), vec![ReducedWord::null()]);
    }

    #[test]
    fn index_round_trip_over_full_enumeration() {
        for len in 0..=8 {
            for (i, word) in words_of_length(len).enumerate() {
                let idx = word_to_index(&word);
                assert_eq!(idx.len, len);
                assert_eq!(idx.rank, BigUint::from(i + 1));
                assert_eq!(index_to_word(&idx).unwrap(), word);
            }
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_to_word(&PathIndex::new(0, 1)).unwrap(), ReducedWord::null());
        assert_eq!(index_to_word(&PathIndex::new(1, 1)).unwrap(), w("a"));
        assert!(index_to_word(&PathIndex::new(1, 5)).is_err());
        assert!(index_to_word(&PathIndex::new(2, 0)).is_err());
    }

    #[test]
    fn likelihood_examples() {
        assert_eq!(likelihood(&w("ab"), &w("aba")), ratio(1, 4));
        assert_eq!(likelihood(&w("ab"), &w("abb")), ratio(1, 4));
        assert_eq!(likelihood(&w("ab"), &w("aab")), ratio(0, 1));
        assert_eq!(likelihood(&w("ab"), &w("ba")), ratio(0, 1));
        assert_eq!(likelihood(&ReducedWord::null(), &w("b")), ratio(1, 4));
    }

    #[test]
    fn likelihood_rows_sum_to_one() {
        for theta in words_up_to(6) {
            let total: Rational = theta
                .neighborhood()
                .iter()
                .map(|x| likelihood(&theta, x))
                .sum();
            assert_eq!(total, ratio(1, 1));
        }
    }

    /// Independent characterization: the likelihood is 1/4 exactly when
    /// the lengths differ by one and the shorter word is a prefix of the
    /// longer one.
    #[test]
    fn likelihood_matches_prefix_characterization() {
        for theta in words_up_to(4) {
            for x in words_up_to(5) {
                let (short, long) = if theta.len() < x.len() {
                    (&theta, &x)
                } else {
                    (&x, &theta)
                };
                let expected = if long.len() == short.len() + 1
                    && long.letters().starts_with(short.letters())
                {
                    ratio(1, 4)
                } else {
                    ratio(0, 1)
                };
                assert_eq!(likelihood(&theta, &x), expected, "θ={theta} x={x}");
            }
        }
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(w("e"), ReducedWord::null());
        assert_eq!(w("abA").to_string(), "abA");
        assert_eq!(ReducedWord::null().to_string(), "e");
        assert!("aA".parse::<ReducedWord>().is_err());
        assert!("ax".parse::<ReducedWord>().is_err());
        assert!("ae".parse::<ReducedWord>().is_err());
        assert!("".parse::<ReducedWord>().is_err());
    }

    proptest! {
        #[test]
        fn append_keeps_words_reduced(seed in prop::collection::vec(0..4usize, 0..200)) {
            let mut word = ReducedWord::null();
            for s in seed {
                word = word.append(Letter::ALL[s]);
                prop_assert!(word
                    .letters()
                    .windows(2)
                    .all(|p| p[1] != p[0].inverse()));
            }
        }

        #[test]
        fn append_changes_length_by_one(word in arb_word(12), g in arb_letter()) {
            let next = word.append(g);
            let grew = next.len() == word.len() + 1;
            let shrank = word.len() > 0 && next.len() == word.len() - 1;
            prop_assert!(grew || shrank);
            prop_assert_eq!(shrank, word.last() == Some(g.inverse()));
        }

        #[test]
        fn predecessor_undoes_noncancelling_append(word in arb_word(12), g in arb_letter()) {
            prop_assume!(word.last() != Some(g.inverse()));
            prop_assert_eq!(word.append(g).predecessor(), Some(word));
        }

        #[test]
        fn neighborhood_is_symmetric(theta in arb_word(8), x in arb_word(8)) {
            prop_assert_eq!(
                theta.neighborhood().contains(&x),
                x.neighborhood().contains(&theta)
            );
        }

        #[test]
        fn display_parse_round_trip(word in arb_word(20)) {
            let rendered = word.to_string();
            prop_assert_eq!(rendered.parse::<ReducedWord>().unwrap(), word);
        }

        #[test]
        fn index_round_trip_random(word in arb_word(16)) {
            let idx = word_to_index(&word);
            prop_assert_eq!(index_to_word(&idx).unwrap(), word);
        }
    }
}
