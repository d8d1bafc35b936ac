//! Exact Bayesian analysis of reduced-word paths on the free group with
//! two generators — the setting of Stone's Flatland paradox.
//!
//! A tetrahedral die labelled `a, b, a⁻¹, b⁻¹` is tossed an unknown
//! number of times; inverse outcomes annihilate, leaving a reduced word
//! θ. One extra toss produces the observation x, and the statistician
//! must guess θ from x. Given any θ the last toss avoids annihilation
//! with probability 3/4, yet under the flat prior every observation
//! says the opposite: the posterior probability of "no annihilation" is
//! only 1/4. This crate computes both sides of that inconsistency — and
//! the priors that avoid or explain it — in exact rational arithmetic,
//! plus a seeded Monte Carlo simulator to check the numbers empirically.
//!
//! The pieces:
//!
//! - [`word`]: reduced words, neighbourhoods, counting, enumeration and
//!   the one-toss likelihood.
//! - [`measure`]: priors as measures defined up to a positive scalar —
//!   flat, geometric (`3^(−ℓ)`), truncated uniform, custom tables.
//! - [`inference`]: neighbourhood posteriors, annihilation odds on both
//!   conditioning sides, marginals and the joint-identity certificate.
//! - [`estimator`]: the predecessor rule against letter-appending rules
//!   under 0/1 loss, with exact frequentist risk.
//! - [`paradox`]: non-conglomerability audits, q-vague convergence
//!   tables, and the assembled [`paradox::ParadoxReport`].
//! - [`sim`]: the seeded toss-process simulator and empirical-vs-exact
//!   comparisons.
//!
//! ```
//! use flatland::measure::Measure;
//! use flatland::{inference, rational::ratio};
//!
//! let x = "aba".parse()?;
//! let posterior = inference::posterior(&Measure::flat(), &x)?;
//! for (theta, mass) in posterior.iter() {
//!     assert_eq!(mass, &ratio(1, 4), "flat posterior is uniform on A_{{{theta}}}");
//! }
//! # Ok::<(), flatland::Error>(())
//! ```
//!
//! Runnable walkthroughs of every capability live in `examples/`; the
//! `flatland` binary exposes the same analyses as subcommands.

pub mod error;
pub mod estimator;
pub mod inference;
pub mod measure;
pub mod paradox;
pub mod rational;
pub mod render;
pub mod sim;
pub mod word;

pub use error::{Error, Result};
pub use rational::Rational;
pub use word::{Letter, ReducedWord};
