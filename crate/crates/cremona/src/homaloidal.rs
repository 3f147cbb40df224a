//! The homaloidal type vector and its elementary invariants.
//!
//! A value of [`HomaloidalType`] is a degree `d >= 1` together with a
//! non-increasing list of positive multiplicities; trailing zeros are never
//! stored and are materialized on demand (at most three are ever needed,
//! since a seed has three slots). The unique degree-1 type is `(1;0)`, the
//! root of the Hudson tree, with an empty multiplicity list.
//!
//! Text form: `"(" d ";" item ("," item)* ")"` where an item is either a
//! multiplicity `v` or a block `v^w` (`w` copies of `v`), with optional
//! whitespace. `(1;0)` denotes the root. Parsing normalizes: items are
//! sorted non-increasingly and zeros are dropped.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};
use thiserror::Error;

/// Unsigned integer scalar for degrees and multiplicities.
///
/// The census engine instantiates everything at `u64`; the construction
/// module needs `u128` because the `y_N` family reaches degrees around
/// `2^(N^2) * 10^N`.
pub trait Mult:
    PrimInt + Unsigned + Hash + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

impl<T> Mult for T where
    T: PrimInt + Unsigned + Hash + fmt::Display + fmt::Debug + Send + Sync + 'static
{
}

/// Small constant lifted into `T`. Only used with values that fit every
/// unsigned type we instantiate.
pub(crate) fn num<T: Mult>(v: u64) -> T {
    T::from(v).expect("small constant fits scalar type")
}

pub(crate) fn to_u128<T: Mult>(v: T) -> u128 {
    v.to_u128().expect("unsigned scalar fits u128")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("degree must be at least 1")]
    NonPositiveDegree,
    #[error("the operation is undefined for the degree-1 type (1;0)")]
    RootHasNoSuchInvariant,
    #[error("arithmetic overflow")]
    Overflow,
}

/// A degree plus a non-increasing multiset of positive multiplicities.
///
/// Not every value is a genuine homaloidal type: properness is decided by
/// [`crate::hudson::hudson_test`]. Values are immutable after construction
/// and every operation on them is pure.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomaloidalType<T: Mult = u64> {
    degree: T,
    mults: Vec<T>,
}

/// A maximal run of equal non-zero multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block<T: Mult = u64> {
    pub value: T,
    pub width: usize,
}

/// Defects against the Noether equalities; both zero iff the equalities hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoetherStatus {
    /// `(3d - 3) - Σ m_i`
    pub sum_defect: i128,
    /// `(d² - 1) - Σ m_i²`
    pub square_defect: i128,
}

impl NoetherStatus {
    pub fn satisfied(&self) -> bool {
        self.sum_defect == 0 && self.square_defect == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeKind {
    Small,
    Average,
    Large,
}

/// Classification of `m_1/d`: `Large` iff `m_1/d > 5/6`, `Small` iff
/// `m_1/d < 7/20`, `Average` on `[7/20, 5/6]`. Comparisons are exact
/// integer comparisons; the defining ratio is kept alongside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regime<T: Mult = u64> {
    pub kind: RegimeKind,
    /// Numerator of the exact ratio, i.e. `m_1`.
    pub first_mult: T,
    /// Denominator of the exact ratio, i.e. `d`.
    pub degree: T,
}

impl<T: Mult> fmt::Display for Regime<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            RegimeKind::Small => "small",
            RegimeKind::Average => "average",
            RegimeKind::Large => "large",
        };
        write!(f, "{} (m1/d = {}/{})", name, self.first_mult, self.degree)
    }
}

impl<T: Mult> HomaloidalType<T> {
    /// Builds a normalized type: multiplicities are sorted non-increasingly
    /// and zeros are dropped. The degree must be at least 1; multiplicities
    /// are otherwise unconstrained (properness is a separate question).
    pub fn new(degree: T, mults: impl Into<Vec<T>>) -> Result<Self, TypeError> {
        if degree < num(1) {
            return Err(TypeError::NonPositiveDegree);
        }
        let mut mults = mults.into();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        while mults.last() == Some(&T::zero()) {
            mults.pop();
        }
        Ok(HomaloidalType { degree, mults })
    }

    /// The root `(1;0)` of the Hudson tree.
    pub fn root() -> Self {
        HomaloidalType {
            degree: T::one(),
            mults: Vec::new(),
        }
    }

    /// Internal constructor for callers that guarantee the invariant
    /// (sorted non-increasing, no zeros, degree >= 1).
    pub(crate) fn from_sorted(degree: T, mults: Vec<T>) -> Self {
        debug_assert!(degree >= T::one());
        debug_assert!(mults.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(mults.last().map_or(true, |&m| m > T::zero()));
        HomaloidalType { degree, mults }
    }

    pub fn degree(&self) -> T {
        self.degree
    }

    /// The stored multiplicities, non-increasing, zero-free.
    pub fn multiplicities(&self) -> &[T] {
        &self.mults
    }

    /// Zero-padded access: `mult(i)` is `m_{i+1}` in 1-based notation,
    /// and 0 beyond the stored list.
    pub fn mult(&self, i: usize) -> T {
        self.mults.get(i).copied().unwrap_or_else(T::zero)
    }

    /// Number `r` of non-zero multiplicities.
    pub fn point_count(&self) -> usize {
        self.mults.len()
    }

    pub fn is_root(&self) -> bool {
        self.degree == T::one()
    }

    /// Maximal runs of equal multiplicities, in decreasing value order.
    pub fn blocks(&self) -> impl Iterator<Item = Block<T>> + '_ {
        runs(&self.mults).map(|(value, width)| Block { value, width })
    }

    /// Seedbed `s(x)`: the number of distinct non-zero multiplicity values.
    pub fn seedbed(&self) -> usize {
        self.blocks().count()
    }

    /// Dimension `8 + 2r` of the irreducible component associated with a
    /// proper type (callers are responsible for properness).
    pub fn dimension(&self) -> u64 {
        8 + 2 * self.point_count() as u64
    }

    /// Exact three-way classification of the ratio `m_1/d`; rejects the root.
    pub fn regime(&self) -> Result<Regime<T>, TypeError> {
        if self.is_root() {
            return Err(TypeError::RootHasNoSuchInvariant);
        }
        let m1 = to_u128(self.mult(0));
        let d = to_u128(self.degree);
        // 6 m1 and 20 m1 stay below 2^128 for every degree we can store.
        let kind = if 6 * m1 > 5 * d {
            RegimeKind::Large
        } else if 20 * m1 < 7 * d {
            RegimeKind::Small
        } else {
            RegimeKind::Average
        };
        Ok(Regime {
            kind,
            first_mult: self.mult(0),
            degree: self.degree,
        })
    }

    /// The tail: the maximal suffix of stored multiplicities whose values are
    /// at most `d - m_1 - m_2`. Empty whenever `m_1 + m_2 >= d`.
    pub fn tail(&self) -> &[T] {
        let d = to_u128(self.degree);
        let top = to_u128(self.mult(0)) + to_u128(self.mult(1));
        if top >= d {
            return &[];
        }
        let threshold = d - top;
        let idx = self.mults.partition_point(|&m| to_u128(m) > threshold);
        &self.mults[idx..]
    }

    /// Defects against the Noether equalities. Only fails on degrees so
    /// large that `d²` exceeds 127 bits.
    pub fn noether_status(&self) -> Result<NoetherStatus, TypeError> {
        let d = to_u128(self.degree);
        let target_sum = 3u128.checked_mul(d).ok_or(TypeError::Overflow)? - 3;
        let mut sum: u128 = 0;
        let mut squares: u128 = 0;
        for &m in &self.mults {
            let m = to_u128(m);
            sum = sum.checked_add(m).ok_or(TypeError::Overflow)?;
            squares = squares
                .checked_add(m.checked_mul(m).ok_or(TypeError::Overflow)?)
                .ok_or(TypeError::Overflow)?;
        }
        let target_squares = d.checked_mul(d).ok_or(TypeError::Overflow)? - 1;
        Ok(NoetherStatus {
            sum_defect: as_i128(target_sum)?.checked_sub(as_i128(sum)?).ok_or(TypeError::Overflow)?,
            square_defect: as_i128(target_squares)?
                .checked_sub(as_i128(squares)?)
                .ok_or(TypeError::Overflow)?,
        })
    }

    /// Whether the Noether equalities hold exactly. Unlike
    /// [`noether_status`](Self::noether_status) this never overflows: the
    /// square comparison is carried out in 256 bits.
    pub fn satisfies_noether_equalities(&self) -> bool {
        let d = to_u128(self.degree);
        let target_sum = match 3u128.checked_mul(d) {
            Some(v) => v - 3,
            // Σ m_i would have to exceed u128 as well; treat as failed.
            None => return false,
        };
        let mut sum: u128 = 0;
        for &m in &self.mults {
            match sum.checked_add(to_u128(m)) {
                Some(v) => sum = v,
                None => return false,
            }
        }
        if sum != target_sum {
            return false;
        }
        let mut squares = U256::ZERO;
        for &m in &self.mults {
            squares = match squares.checked_add(U256::square(to_u128(m))) {
                Some(v) => v,
                None => return false,
            };
        }
        let target = U256::square(d).checked_sub_small(1).expect("d >= 1");
        squares == target
    }

    /// The Noether inequality `m_1 + m_2 + m_3 >= d + 1` (zero-padded);
    /// rejects the root, where it is not defined.
    pub fn noether_inequality_holds(&self) -> Result<bool, TypeError> {
        if self.is_root() {
            return Err(TypeError::RootHasNoSuchInvariant);
        }
        let top = to_u128(self.mult(0)) + to_u128(self.mult(1)) + to_u128(self.mult(2));
        Ok(top >= to_u128(self.degree) + 1)
    }

    /// Canonical rendering; with `block_notation` equal values collapse to
    /// `v^w` (the exponent is omitted for width 1).
    pub fn format(&self, block_notation: bool) -> String {
        if self.mults.is_empty() {
            return format!("({};0)", self.degree);
        }
        let mut out = format!("({};", self.degree);
        if block_notation {
            for (i, b) in self.blocks().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if b.width == 1 {
                    out.push_str(&format!("{}", b.value));
                } else {
                    out.push_str(&format!("{}^{}", b.value, b.width));
                }
            }
        } else {
            for (i, m) in self.mults.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{m}"));
            }
        }
        out.push(')');
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse()
    }
}

/// Iterator over `(value, run length)` pairs of a non-increasing slice.
pub(crate) fn runs<T: Mult>(sorted: &[T]) -> Runs<'_, T> {
    Runs { rest: sorted }
}

pub(crate) struct Runs<'a, T: Mult> {
    rest: &'a [T],
}

impl<'a, T: Mult> Iterator for Runs<'a, T> {
    type Item = (T, usize);

    fn next(&mut self) -> Option<(T, usize)> {
        let (&value, _) = self.rest.split_first()?;
        let width = self.rest.iter().take_while(|&&m| m == value).count();
        self.rest = &self.rest[width..];
        Some((value, width))
    }
}

/// Block notation is the canonical display form.
impl<T: Mult> fmt::Display for HomaloidalType<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(true))
    }
}

impl<T: Mult> fmt::Debug for HomaloidalType<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(true))
    }
}

impl<T: Mult> FromStr for HomaloidalType<T> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        HomaloidalType::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn fail<V>(&self, at: usize, message: impl Into<String>) -> Result<V, ParseError> {
        Err(ParseError {
            position: at,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(self.pos, format!("expected '{}'", byte as char))
        }
    }

    /// Scans a decimal integer; a leading '-' is recognized so that negative
    /// inputs get a semantic error rather than a bare syntax error.
    fn integer<T: Mult>(&mut self, what: &str) -> Result<T, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            return self.fail(start, format!("negative {what}"));
        }
        let mut value = T::zero();
        let mut digits = 0usize;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(&num(10))
                .and_then(|v| v.checked_add(&num((b - b'0') as u64)))
                .ok_or(ParseError {
                    position: start,
                    message: format!("{what} is too large for the scalar type"),
                })?;
            digits += 1;
            self.pos += 1;
        }
        if digits == 0 {
            return self.fail(self.pos, format!("expected {what}"));
        }
        Ok(value)
    }

    fn parse<T: Mult>(mut self) -> Result<HomaloidalType<T>, ParseError> {
        self.expect(b'(')?;
        let degree_pos = {
            self.skip_ws();
            self.pos
        };
        let degree: T = self.integer("degree")?;
        if degree.is_zero() {
            return self.fail(degree_pos, "zero degree");
        }
        self.expect(b';')?;
        let mut mults = Vec::new();
        loop {
            let value: T = self.integer("multiplicity")?;
            self.skip_ws();
            if self.bytes.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                let exp_pos = {
                    self.skip_ws();
                    self.pos
                };
                let width: u128 = self.integer("exponent")?;
                if width == 0 {
                    return self.fail(exp_pos, "exponent must be at least 1");
                }
                if width > 1 << 24 {
                    return self.fail(exp_pos, "exponent is unreasonably large");
                }
                if !value.is_zero() {
                    mults.extend(std::iter::repeat(value).take(width as usize));
                }
            } else if !value.is_zero() {
                mults.push(value);
            }
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(&b',') => {
                    self.pos += 1;
                }
                Some(&b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.fail(self.pos, "expected ',' or ')'"),
            }
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.fail(self.pos, "trailing input after ')'");
        }
        HomaloidalType::new(degree, mults).map_err(|_| ParseError {
            position: 0,
            message: "invalid type".into(),
        })
    }
}

fn as_i128(v: u128) -> Result<i128, TypeError> {
    i128::try_from(v).map_err(|_| TypeError::Overflow)
}

/// Just enough 256-bit arithmetic to compare `Σ m_i²` with `d² - 1` without
/// overflow for 128-bit degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct U256 {
    hi: u128,
    lo: u128,
}

impl U256 {
    pub(crate) const ZERO: U256 = U256 { hi: 0, lo: 0 };

    pub(crate) fn square(v: u128) -> U256 {
        let a = v >> 64;
        let b = v & ((1u128 << 64) - 1);
        let mut out = U256 {
            hi: a * a,
            lo: b * b,
        };
        // Add a*b * 2^64 twice; a*b < 2^128 so each shift-split is exact.
        let cross = a * b;
        for _ in 0..2 {
            let (lo, carry) = out.lo.overflowing_add(cross << 64);
            out.lo = lo;
            out.hi = out.hi.wrapping_add((cross >> 64) + u128::from(carry));
        }
        out
    }

    pub(crate) fn checked_add(self, other: U256) -> Option<U256> {
        let (lo, carry) = self.lo.overflowing_add(other.lo);
        let hi = self.hi.checked_add(other.hi)?.checked_add(u128::from(carry))?;
        Some(U256 { hi, lo })
    }

    pub(crate) fn checked_sub_small(self, v: u128) -> Option<U256> {
        let (lo, borrow) = self.lo.overflowing_sub(v);
        let hi = self.hi.checked_sub(u128::from(borrow))?;
        Some(U256 { hi, lo })
    }
}
