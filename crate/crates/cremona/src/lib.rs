//! Exact enumeration of homaloidal types of plane Cremona transformations.
//!
//! A plane Cremona transformation of degree `d` pulls the net of lines back to
//! a net of degree-`d` curves with base points of multiplicities
//! `m_1 >= m_2 >= ... >= m_r`. The vector `(d; m_1, ..., m_r)` is the
//! *homaloidal type* of the map. Every homaloidal type satisfies the Noether
//! equalities
//!
//! ```text
//! m_1 + ... + m_r = 3d - 3,        m_1^2 + ... + m_r^2 = d^2 - 1,
//! ```
//!
//! but not every solution of these equations arises from an actual Cremona
//! map: Hudson's test (iterated subtraction of `Δ = m_1 + m_2 + m_3 - d` from
//! the three largest multiplicities) separates the *proper* types, which form
//! a tree rooted at `(1;0)` under the parent/child relation of quadratic
//! births.
//!
//! This crate provides:
//!
//! * [`homaloidal`] — the type vector itself, its text grammar, blocks,
//!   seedbed, dimension, regime classification and tail;
//! * [`hudson`] — Hudson's test, parents, admissible seeds, children,
//!   lineages and sequences of `*`-seeds;
//! * [`census`] — exact counts `N_d` of proper types per degree by two
//!   independent methods (tree traversal and Noether-solution filtering),
//!   streaming enumeration, histograms, checkpointed long runs;
//! * [`audit`] — executable checks for the structural inequalities that
//!   proper types and their lineages must satisfy;
//! * [`growth`] — growth statistics (`c(d)` curve, maximal seedbed) and the
//!   Kalmár ordered-factorization machinery with its `ζ(ρ) = 2` constants;
//! * [`construct`] — explicit families: de Jonquières types, uniform prefix
//!   moves, power-set descendants, block splitting and the `y_N` sequence of
//!   large-seedbed types (128-bit arithmetic).

pub mod audit;
pub mod census;
pub mod construct;
pub mod growth;
pub mod homaloidal;
pub mod hudson;

pub use homaloidal::{Block, HomaloidalType, Mult, NoetherStatus, ParseError, Regime, RegimeKind, TypeError};
pub use hudson::{HudsonError, Lineage, SeedTriple, TestVerdict, Verdict};
