//! Hudson's calculus on homaloidal types.
//!
//! One Hudson step replaces `(d; m_1, m_2, m_3, ...)` by
//! `(d - Δ; m_1 - Δ, m_2 - Δ, m_3 - Δ, ...)` with `Δ = m_1 + m_2 + m_3 - d`,
//! then re-sorts. Iterating the step from a candidate satisfying the Noether
//! equalities either reaches the root `(1;0)` (the candidate is *proper*) or
//! produces a negative multiplicity (*improper*): this is [`hudson_test`].
//!
//! Running a single step upward defines the canonical [`parent`]; conversely
//! an admissible value triple `(v_1, v_2, v_3)` of a proper type is a *seed*
//! and yields the [`child`] `(d + ∇; v_1 + ∇, v_2 + ∇, v_3 + ∇, ...)` with
//! `∇ = d - v_1 - v_2 - v_3 >= 1`. Admissibility asks exactly that the three
//! boosted values dominate everything kept, i.e. `d - v_1 - v_2` is at least
//! every multiplicity outside the chosen occurrences. Parents and children
//! invert each other, so proper types form a tree rooted at `(1;0)`.
//!
//! A seed whose first value equals the type's first multiplicity is a
//! `*`-seed; successive `*`-seeds must draw their lower pair from the current
//! tail, which makes their combinatorics tractable
//! ([`star_descendant_sequences`]).

use std::fmt;

use thiserror::Error;

use crate::homaloidal::{num, runs, to_u128, HomaloidalType, Mult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HudsonError {
    #[error("degree 1 is rejected: (1;0) has no parent, delta, or seeds")]
    Root,
    #[error("{0} is not a proper homaloidal type")]
    NotProper(String),
    #[error("triple {0} is not a sub-multiset of the type's multiplicities plus three zeros")]
    TripleNotFromType(String),
    #[error("triple {triple} is not admissible for {parent}")]
    Inadmissible { parent: String, triple: String },
    #[error("seed {index} of the sequence is not admissible: {detail}")]
    InadmissibleAt { index: usize, detail: String },
    #[error("internal defect: delta {delta} <= 0 on the Noether candidate {candidate}")]
    DeltaDefect { candidate: String, delta: i128 },
    #[error("arithmetic overflow")]
    Overflow,
}

/// An ordered value triple `(v_1 >= v_2 >= v_3)` together with the increment
/// `∇` of the birth it labels, relative to the parent it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedTriple<T: Mult = u64> {
    values: [T; 3],
    nabla: T,
    star: bool,
}

impl<T: Mult> SeedTriple<T> {
    pub fn values(&self) -> (T, T, T) {
        (self.values[0], self.values[1], self.values[2])
    }

    /// `∇ = d - v_1 - v_2 - v_3` where `d` is the parent degree.
    pub fn nabla(&self) -> T {
        self.nabla
    }

    /// Whether `v_1` equals the parent's first multiplicity.
    pub fn is_star(&self) -> bool {
        self.star
    }

    /// The two lower values `(v_2, v_3)`.
    pub fn lower_pair(&self) -> (T, T) {
        (self.values[1], self.values[2])
    }
}

impl<T: Mult> fmt::Display for SeedTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() && self.star {
            write!(f, "(*,{},{})", self.values[1], self.values[2])
        } else {
            write!(f, "({},{},{})", self.values[0], self.values[1], self.values[2])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Improper,
    NotNoether,
}

/// One intermediate state of a Hudson run. Improper runs end with a state
/// containing a negative multiplicity, so entries are signed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub degree: i128,
    pub mults: Vec<i128>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.degree)?;
        if self.mults.is_empty() {
            write!(f, "0")?;
        }
        for (i, m) in self.mults.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestVerdict {
    pub outcome: Verdict,
    /// Intermediate candidates, input first; only kept on request so the
    /// enumeration hot path stays allocation-free.
    pub trace: Option<Vec<TraceStep>>,
    /// Number of Hudson steps performed.
    pub steps: usize,
}

/// Hudson's test. `NotNoether` if the Noether equalities fail; otherwise the
/// step `m_i -= Δ` (i = 1,2,3), re-sort is iterated until either `(1;0)` is
/// reached (`Proper`) or a negative multiplicity appears (`Improper`).
///
/// The degree strictly decreases, so the run takes at most `d` steps. A
/// non-positive `Δ` on a Noether candidate would contradict the Noether
/// inequality and is reported as an internal defect, never as a verdict.
pub fn hudson_test<T: Mult>(t: &HomaloidalType<T>, want_trace: bool) -> Result<TestVerdict, HudsonError> {
    if !t.satisfies_noether_equalities() {
        return Ok(TestVerdict {
            outcome: Verdict::NotNoether,
            trace: want_trace.then(|| vec![raw_step(t)]),
            steps: 0,
        });
    }
    // The equalities bound every multiplicity by 3d - 3, so i128 suffices
    // whenever 3d does not overflow.
    let degree = i128::try_from(to_u128(t.degree())).map_err(|_| HudsonError::Overflow)?;
    degree.checked_mul(3).ok_or(HudsonError::Overflow)?;
    let mut d = degree;
    let mut mults: Vec<i128> = t.multiplicities().iter().map(|&m| to_u128(m) as i128).collect();
    let mut trace = want_trace.then(|| vec![raw_step(t)]);
    let mut steps = 0usize;

    loop {
        if d == 1 {
            debug_assert!(mults.is_empty());
            return Ok(TestVerdict {
                outcome: Verdict::Proper,
                trace,
                steps,
            });
        }
        let m1 = mults.first().copied().unwrap_or(0);
        let m2 = mults.get(1).copied().unwrap_or(0);
        let m3 = mults.get(2).copied().unwrap_or(0);
        let delta = m1 + m2 + m3 - d;
        if delta <= 0 {
            return Err(HudsonError::DeltaDefect {
                candidate: TraceStep { degree: d, mults }.to_string(),
                delta,
            });
        }
        d -= delta;
        let replaced = [m1 - delta, m2 - delta, m3 - delta];
        steps += 1;
        if replaced.iter().any(|&v| v < 0) {
            let mut all: Vec<i128> = replaced.to_vec();
            all.extend_from_slice(mults.get(3..).unwrap_or(&[]));
            all.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(tr) = trace.as_mut() {
                tr.push(TraceStep { degree: d, mults: all });
            }
            return Ok(TestVerdict {
                outcome: Verdict::Improper,
                trace,
                steps,
            });
        }
        mults = merge_descending(&replaced, mults.get(3..).unwrap_or(&[]));
        while mults.last() == Some(&0) {
            mults.pop();
        }
        if let Some(tr) = trace.as_mut() {
            tr.push(TraceStep {
                degree: d,
                mults: mults.clone(),
            });
        }
    }
}

/// Whether `t` passes Hudson's test.
pub fn is_proper<T: Mult>(t: &HomaloidalType<T>) -> bool {
    matches!(
        hudson_test(t, false),
        Ok(TestVerdict {
            outcome: Verdict::Proper,
            ..
        })
    )
}

fn raw_step<T: Mult>(t: &HomaloidalType<T>) -> TraceStep {
    TraceStep {
        degree: to_u128(t.degree()) as i128,
        mults: t.multiplicities().iter().map(|&m| to_u128(m) as i128).collect(),
    }
}

/// Merges three non-increasing values with a non-increasing slice.
fn merge_descending(top: &[i128; 3], rest: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(3 + rest.len());
    let (mut i, mut j) = (0, 0);
    while i < 3 || j < rest.len() {
        if i < 3 && (j >= rest.len() || top[i] >= rest[j]) {
            out.push(top[i]);
            i += 1;
        } else {
            out.push(rest[j]);
            j += 1;
        }
    }
    out
}

/// `Δ(x) = m_1 + m_2 + m_3 - d`, the degree drop to the parent.
pub fn delta<T: Mult>(t: &HomaloidalType<T>) -> Result<T, HudsonError> {
    if t.is_root() {
        return Err(HudsonError::Root);
    }
    let top = to_u128(t.mult(0)) + to_u128(t.mult(1)) + to_u128(t.mult(2));
    let d = to_u128(t.degree());
    if top <= d {
        return Err(HudsonError::DeltaDefect {
            candidate: t.to_string(),
            delta: top as i128 - d as i128,
        });
    }
    T::from(top - d).ok_or(HudsonError::Overflow)
}

/// One Hudson step with re-sorting. The returned seed carries the values
/// `(m_1 - Δ, m_2 - Δ, m_3 - Δ)`, the canonical seed of `t` inside its
/// parent, so `child(parent(t).0, that seed) == t`.
///
/// Only defined for proper inputs; a step that would go negative reports the
/// input as improper.
pub fn parent<T: Mult>(t: &HomaloidalType<T>) -> Result<(HomaloidalType<T>, SeedTriple<T>), HudsonError> {
    if t.is_root() {
        return Err(HudsonError::Root);
    }
    let dl = delta(t)?;
    let d128 = to_u128(t.degree());
    let dl128 = to_u128(dl);
    if to_u128(t.mult(2)) < dl128 {
        return Err(HudsonError::NotProper(t.to_string()));
    }
    let values = [t.mult(0) - dl, t.mult(1) - dl, t.mult(2) - dl];
    let parent_degree = T::from(d128 - dl128).expect("degree shrinks");
    let mut mults = Vec::with_capacity(t.point_count());
    let rest = t.multiplicities().get(3..).unwrap_or(&[]);
    let (mut i, mut j) = (0, 0);
    while i < 3 || j < rest.len() {
        let take_new = i < 3 && (j >= rest.len() || values[i] >= rest[j]);
        let v = if take_new {
            i += 1;
            values[i - 1]
        } else {
            j += 1;
            rest[j - 1]
        };
        if !v.is_zero() {
            mults.push(v);
        }
    }
    let p = HomaloidalType::from_sorted(parent_degree, mults);
    let star = values[0] == p.mult(0);
    Ok((
        p,
        SeedTriple {
            values,
            nabla: dl,
            star,
        },
    ))
}

/// Sorts a raw triple non-increasingly (triples are multisets of values).
fn normalize_triple<T: Mult>(triple: (T, T, T)) -> [T; 3] {
    let mut v = [triple.0, triple.1, triple.2];
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Checks that the triple can be drawn from `t`'s multiplicities padded with
/// (at most three) zeros, with correct multiplicity accounting.
fn triple_is_drawn_from<T: Mult>(t: &HomaloidalType<T>, v: &[T; 3]) -> bool {
    let mut idx = 0;
    let mults = t.multiplicities();
    for &value in v {
        if value.is_zero() {
            continue; // zero slots are always available
        }
        // Occurrences are matched against the first untouched position.
        while idx < mults.len() && mults[idx] > value {
            idx += 1;
        }
        if idx >= mults.len() || mults[idx] != value {
            return false;
        }
        idx += 1;
    }
    true
}

/// Largest multiplicity of `t` outside the chosen occurrences of the triple.
fn max_outside<T: Mult>(t: &HomaloidalType<T>, v: &[T; 3]) -> T {
    let mults = t.multiplicities();
    let mut skip = 0;
    for (i, &m) in mults.iter().enumerate() {
        if skip < 3 && v[skip] == m {
            skip += 1;
            continue;
        }
        // Everything after index i is <= m, so the first kept entry is the max.
        let _ = i;
        return m;
    }
    T::zero()
}

/// Whether the value triple is a seed of `t`: `∇ >= 1` and
/// `d - v_1 - v_2 >=` every multiplicity outside the chosen occurrences.
pub fn is_admissible<T: Mult>(t: &HomaloidalType<T>, triple: (T, T, T)) -> Result<bool, HudsonError> {
    let v = normalize_triple(triple);
    if !triple_is_drawn_from(t, &v) {
        return Err(HudsonError::TripleNotFromType(format!(
            "({},{},{})",
            v[0], v[1], v[2]
        )));
    }
    let d = to_u128(t.degree());
    let picked = to_u128(v[0]) + to_u128(v[1]) + to_u128(v[2]);
    if picked + 1 > d {
        return Ok(false); // ∇ < 1
    }
    let top_two = to_u128(v[0]) + to_u128(v[1]);
    Ok(d - top_two >= to_u128(max_outside(t, &v)))
}

/// The child `(d + ∇; v_1 + ∇, v_2 + ∇, v_3 + ∇, rest...)` of `t` under an
/// admissible triple, together with the annotated seed.
pub fn child<T: Mult>(
    t: &HomaloidalType<T>,
    triple: (T, T, T),
) -> Result<(SeedTriple<T>, HomaloidalType<T>), HudsonError> {
    let v = normalize_triple(triple);
    if !is_admissible(t, (v[0], v[1], v[2]))? {
        return Err(HudsonError::Inadmissible {
            parent: t.to_string(),
            triple: format!("({},{},{})", v[0], v[1], v[2]),
        });
    }
    let picked = to_u128(v[0]) + to_u128(v[1]) + to_u128(v[2]);
    let nabla128 = to_u128(t.degree()) - picked;
    let nabla = T::from(nabla128).ok_or(HudsonError::Overflow)?;
    let seed = SeedTriple {
        values: v,
        nabla,
        star: v[0] == t.mult(0),
    };
    Ok((seed, apply_unchecked(t, &seed)?))
}

/// Applies a seed known to be admissible. O(r), output already sorted: the
/// boosted values dominate everything kept by the admissibility inequality.
fn apply_unchecked<T: Mult>(t: &HomaloidalType<T>, seed: &SeedTriple<T>) -> Result<HomaloidalType<T>, HudsonError> {
    let nabla = seed.nabla;
    let degree = t.degree().checked_add(&nabla).ok_or(HudsonError::Overflow)?;
    let mut mults = Vec::with_capacity(t.point_count() + 3);
    for &v in &seed.values {
        mults.push(v.checked_add(&nabla).ok_or(HudsonError::Overflow)?);
    }
    let mut skip = 0;
    for &m in t.multiplicities() {
        if skip < 3 && seed.values[skip] == m {
            skip += 1;
            continue;
        }
        mults.push(m);
    }
    debug_assert!(seed.values[skip..].iter().all(T::is_zero));
    Ok(HomaloidalType::from_sorted(degree, mults))
}

/// Calls `f` once per admissible value triple of `t` whose child degree is
/// within `bound` (if given), passing the seed and the child.
///
/// Distinct value triples yield pairwise distinct children, and every child's
/// canonical parent step recovers `(t, seed)` exactly.
pub(crate) fn for_each_child_within<T, F>(t: &HomaloidalType<T>, bound: Option<T>, mut f: F)
where
    T: Mult,
    F: FnMut(SeedTriple<T>, HomaloidalType<T>),
{
    let d = to_u128(t.degree());
    let m1 = t.mult(0);
    let m1w = to_u128(m1);
    let m2w = to_u128(t.mult(1));
    let mults = t.multiplicities();
    let bound = bound.map(to_u128);

    let mut emit = |values: [T; 3], star: bool, f: &mut F| {
        let picked = to_u128(values[0]) + to_u128(values[1]) + to_u128(values[2]);
        debug_assert!(picked < d);
        let nabla128 = d - picked;
        match bound {
            Some(b) if d + nabla128 > b => return,
            _ => {}
        }
        let nabla = T::from(nabla128).expect("increment is below the parent degree");
        let seed = SeedTriple { values, nabla, star };
        // A child degree can exceed the scalar range only within a factor 2
        // of the scalar maximum; such children are skipped (use u128 there).
        if let Ok(child) = apply_unchecked(t, &seed) {
            f(seed, child);
        }
    };

    // Star triples (m1, v2, v3): admissible iff v2 <= d - m1 - m2, i.e. iff
    // the lower pair comes from the tail. On proper types the Noether
    // inequality then gives ∇ >= 1; on arbitrary input we re-check.
    if m1w + m2w <= d {
        let limit = d - m1w - m2w;
        let start = mults.partition_point(|&m| to_u128(m) > limit);
        // The first occurrence is reserved for the v1 slot.
        let start = start.max(usize::from(!mults.is_empty()));
        for_each_pair(&mults[start..], |v2, v3| {
            if m1w + to_u128(v2) + to_u128(v3) < d {
                emit([m1, v2, v3], true, &mut f);
            }
        });
    }

    // Non-star triples (v1, v2, v3) with v1 < m1: the first multiplicity
    // survives, so admissibility reads v1 + v2 <= d - m1, and ∇ >= 1 follows
    // from v3 < m1.
    if !mults.is_empty() && m1w < d {
        let v1_limit = (d - m1w).min(m1w - 1);
        let start = mults.partition_point(|&m| to_u128(m) > v1_limit);
        let mut prev = None;
        for &v1 in &mults[start..] {
            if prev == Some(v1) {
                continue;
            }
            prev = Some(v1);
            let v2_limit = (d - m1w - to_u128(v1)).min(to_u128(v1));
            pairs_below(mults, v1, v2_limit, |v2, v3| {
                emit([v1, v2, v3], false, &mut f);
            });
        }
        // v1 = 0 leaves only the triple (0,0,0), admissible here with ∇ = d.
        // (For the root this triple is the star case above instead.)
        emit([T::zero(), T::zero(), T::zero()], false, &mut f);
    }
}

/// Enumerates distinct pairs `(v2 >= v3)` drawn from a non-increasing slice
/// padded with zeros (used for the star case, where the whole suffix is
/// available).
fn for_each_pair<T: Mult, F: FnMut(T, T)>(suffix: &[T], mut f: F) {
    let mut offset = 0;
    for (value, width) in runs(suffix) {
        // v3 from the remainder of the suffix after one occurrence of v2.
        let mut seen_v3 = None;
        if width >= 2 {
            f(value, value);
            seen_v3 = Some(value);
        }
        for &v3 in &suffix[offset + width..] {
            if seen_v3 == Some(v3) {
                continue;
            }
            seen_v3 = Some(v3);
            f(value, v3);
        }
        f(value, T::zero());
        offset += width;
    }
    f(T::zero(), T::zero());
}

/// Enumerates distinct pairs `(v2 >= v3)` with `v2 <= v2_limit`, drawn from
/// the multiset `mults` minus one occurrence of `v1`.
fn pairs_below<T: Mult, F: FnMut(T, T)>(mults: &[T], v1: T, v2_limit: u128, mut f: F) {
    let start = mults.partition_point(|&m| to_u128(m) > v2_limit);
    let region = &mults[start..];
    let mut used_v1 = false;
    let mut prev = None;
    for (i, &v2) in region.iter().enumerate() {
        if v2 == v1 && !used_v1 {
            // One occurrence of v1 is already taken by the first slot.
            used_v1 = true;
            continue;
        }
        if prev == Some(v2) {
            continue;
        }
        prev = Some(v2);
        // v3 candidates: strictly after this occurrence, minus v1 if its
        // reserved occurrence sits there.
        let mut used_v1_inner = used_v1;
        let mut prev3 = None;
        for &v3 in &region[i + 1..] {
            if v3 == v1 && !used_v1_inner {
                used_v1_inner = true;
                continue;
            }
            if prev3 == Some(v3) {
                continue;
            }
            prev3 = Some(v3);
            f(v2, v3);
        }
        f(v2, T::zero());
    }
    f(T::zero(), T::zero());
}

/// All children of a proper type, one per distinct admissible value triple.
pub fn children<T: Mult>(t: &HomaloidalType<T>) -> Vec<(SeedTriple<T>, HomaloidalType<T>)> {
    let mut out = Vec::new();
    for_each_child_within(t, None, |seed, child| out.push((seed, child)));
    out
}

/// Children of degree at most `max_degree`.
pub fn children_within<T: Mult>(
    t: &HomaloidalType<T>,
    max_degree: T,
) -> Vec<(SeedTriple<T>, HomaloidalType<T>)> {
    let mut out = Vec::new();
    for_each_child_within(t, Some(max_degree), |seed, child| out.push((seed, child)));
    out
}

/// A path in the Hudson tree, root-nearest first: `seeds[n]` applied to
/// `types[n]` yields `types[n + 1]`, so degrees strictly increase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lineage<T: Mult = u64> {
    types: Vec<HomaloidalType<T>>,
    seeds: Vec<SeedTriple<T>>,
}

impl<T: Mult> Lineage<T> {
    pub fn new(start: HomaloidalType<T>) -> Self {
        Lineage {
            types: vec![start],
            seeds: Vec::new(),
        }
    }

    pub fn types(&self) -> &[HomaloidalType<T>] {
        &self.types
    }

    pub fn seeds(&self) -> &[SeedTriple<T>] {
        &self.seeds
    }

    pub fn first(&self) -> &HomaloidalType<T> {
        self.types.first().expect("lineage is never empty")
    }

    pub fn last(&self) -> &HomaloidalType<T> {
        self.types.last().expect("lineage is never empty")
    }

    /// Number of birth steps (one less than the number of types).
    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    pub fn push(&mut self, seed: SeedTriple<T>, child: HomaloidalType<T>) {
        self.types.push(child);
        self.seeds.push(seed);
    }
}

/// The full ascending chain `t, p(t), p(p(t)), ..., (1;0)`, returned in
/// root-first order. Fails on improper inputs.
pub fn lineage_to_root<T: Mult>(t: &HomaloidalType<T>) -> Result<Lineage<T>, HudsonError> {
    if !is_proper(t) {
        return Err(HudsonError::NotProper(t.to_string()));
    }
    let mut types = vec![t.clone()];
    let mut seeds = Vec::new();
    while !types.last().expect("nonempty").is_root() {
        let (p, seed) = parent(types.last().expect("nonempty"))?;
        types.push(p);
        seeds.push(seed);
    }
    types.reverse();
    seeds.reverse();
    Ok(Lineage { types, seeds })
}

/// Applies the triples in order, failing fast at the first inadmissible one
/// with its index.
pub fn apply_seed_sequence<T: Mult>(
    start: &HomaloidalType<T>,
    triples: &[(T, T, T)],
) -> Result<Lineage<T>, HudsonError> {
    let mut lineage = Lineage::new(start.clone());
    for (index, &triple) in triples.iter().enumerate() {
        let (seed, next) = child(lineage.last(), triple).map_err(|e| HudsonError::InadmissibleAt {
            index,
            detail: e.to_string(),
        })?;
        lineage.push(seed, next);
    }
    Ok(lineage)
}

/// All maximal sequences of successive `*`-seeds starting at a proper type
/// of degree >= 2, enumerated by drawing ordered pairs `(v_2 >= v_3)` from
/// the current tail (padded with zeros): a `*`-triple is a seed exactly when
/// its lower pair lies in the tail.
///
/// Every pair with `v_3 = 0` (and in particular `(0,0)`) empties the tail.
/// Sequences are reported up to the point where the tail is exhausted; the
/// forced trailing `(*,0,0)` repetitions are not expanded.
pub fn star_descendant_sequences<T: Mult>(
    t: &HomaloidalType<T>,
) -> Result<Vec<Vec<SeedTriple<T>>>, HudsonError> {
    if t.is_root() {
        return Err(HudsonError::Root);
    }
    if !is_proper(t) {
        return Err(HudsonError::NotProper(t.to_string()));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    star_sequences_from(t, &mut prefix, &mut out)?;
    Ok(out)
}

fn star_sequences_from<T: Mult>(
    x: &HomaloidalType<T>,
    prefix: &mut Vec<SeedTriple<T>>,
    out: &mut Vec<Vec<SeedTriple<T>>>,
) -> Result<(), HudsonError> {
    let tail = x.tail();
    if tail.is_empty() {
        out.push(prefix.clone());
        return Ok(());
    }
    let m1 = x.mult(0);
    let tail = tail.to_vec();
    let mut pairs = Vec::new();
    for_each_pair(&tail[..], |v2, v3| pairs.push((v2, v3)));
    for (v2, v3) in pairs {
        let (seed, next) = child(x, (m1, v2, v3))?;
        debug_assert!(seed.is_star());
        prefix.push(seed);
        star_sequences_from(&next, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(text: &str) -> HomaloidalType<u64> {
        HomaloidalType::parse(text).unwrap()
    }

    #[test]
    fn hudson_test_examples() {
        let v = hudson_test(&t("(2;1,1,1)"), true).unwrap();
        assert_eq!(v.outcome, Verdict::Proper);
        assert_eq!(v.steps, 1);
        let trace = v.trace.unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].to_string(), "(2;1,1,1)");
        assert_eq!(trace[1].to_string(), "(1;0)");

        let v = hudson_test(&t("(5;3,3,1^6)"), true).unwrap();
        assert_eq!(v.outcome, Verdict::Improper);
        assert_eq!(v.steps, 1);
        let trace = v.trace.unwrap();
        assert!(trace.last().unwrap().mults.contains(&-1));

        let v = hudson_test(&t("(3;1,1,1)"), false).unwrap();
        assert_eq!(v.outcome, Verdict::NotNoether);
        assert_eq!(v.steps, 0);

        assert_eq!(hudson_test(&t("(1;0)"), false).unwrap().outcome, Verdict::Proper);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&t("(5;2^6)")).unwrap(), 1);
        assert_eq!(delta(&t("(2;1^3)")).unwrap(), 1);
        assert_eq!(
            delta(&t("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)")).unwrap(),
            21
        );
        assert_eq!(delta(&HomaloidalType::<u64>::root()), Err(HudsonError::Root));
    }

    #[test]
    fn parent_examples() {
        let (p, seed) = parent(&t("(5;2^6)")).unwrap();
        assert_eq!(p, t("(4;2^3,1^3)"));
        assert_eq!(seed.values(), (1, 1, 1));
        assert_eq!(seed.nabla(), 1);
        assert!(!seed.is_star());

        let (p, seed) = parent(&t("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)")).unwrap();
        assert_eq!(p, t("(59;26,26,22,21,21,18,17,10,6,2,2,2,1)"));
        assert_eq!(seed.values(), (22, 10, 6));
        assert_eq!(seed.nabla(), 21);
        assert!(!seed.is_star());

        let (p, seed) = parent(&t("(2;1^3)")).unwrap();
        assert!(p.is_root());
        assert_eq!(seed.values(), (0, 0, 0));
        assert_eq!(seed.nabla(), 1);
    }

    #[test]
    fn admissibility_examples() {
        let x = t("(2;1^3)");
        assert!(!is_admissible(&x, (1, 1, 1)).unwrap());
        assert!(is_admissible(&x, (1, 0, 0)).unwrap());
        assert!(is_admissible(&x, (0, 0, 0)).unwrap());
        assert!(!is_admissible(&x, (1, 1, 0)).unwrap());
        assert!(matches!(
            is_admissible(&x, (2, 0, 0)),
            Err(HudsonError::TripleNotFromType(_))
        ));
        // Triples are multisets: order of the raw values does not matter.
        assert!(is_admissible(&x, (0, 0, 1)).unwrap());
    }

    #[test]
    fn child_examples() {
        let (seed, c) = child(&HomaloidalType::<u64>::root(), (0, 0, 0)).unwrap();
        assert_eq!(c, t("(2;1,1,1)"));
        assert_eq!(seed.nabla(), 1);

        let (_, c) = child(&t("(2;1^3)"), (1, 0, 0)).unwrap();
        assert_eq!(c, t("(3;2,1^4)"));

        let (seed, c) = child(&t("(4;2^3,1^3)"), (1, 1, 1)).unwrap();
        assert_eq!(seed.nabla(), 1);
        assert_eq!(c, t("(5;2^6)"));

        assert!(child(&t("(2;1^3)"), (1, 1, 1)).is_err());
    }

    #[test]
    fn children_examples() {
        let cs: Vec<_> = children(&HomaloidalType::<u64>::root())
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(cs, vec![t("(2;1^3)")]);

        let cs: BTreeSet<_> = children(&t("(2;1^3)")).into_iter().map(|(_, c)| c).collect();
        let expect: BTreeSet<_> = [t("(3;2,1^4)"), t("(4;2^3,1^3)")].into_iter().collect();
        assert_eq!(cs, expect);

        let cs: BTreeSet<_> = children_within(&t("(3;2,1^4)"), 6)
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        let expect: BTreeSet<_> = [t("(4;3,1^6)"), t("(5;3,2^3,1^3)"), t("(6;3^3,2,1^4)")]
            .into_iter()
            .collect();
        assert_eq!(cs, expect);
    }

    /// Reference children enumeration: try every index triple over the
    /// zero-padded list and apply the admissibility inequality literally.
    fn brute_children(x: &HomaloidalType<u64>) -> BTreeSet<HomaloidalType<u64>> {
        let mut padded: Vec<u64> = x.multiplicities().to_vec();
        padded.extend_from_slice(&[0, 0, 0]);
        let d = x.degree();
        let n = padded.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (a, b, c) = (padded[i], padded[j], padded[k]);
                    if a + b + c + 1 > d {
                        continue;
                    }
                    let ok = (0..n)
                        .filter(|&p| p != i && p != j && p != k)
                        .all(|p| d - a - b >= padded[p]);
                    if !ok {
                        continue;
                    }
                    let nabla = d - a - b - c;
                    let mut mults: Vec<u64> = (0..n)
                        .filter(|&p| p != i && p != j && p != k)
                        .map(|p| padded[p])
                        .collect();
                    mults.extend_from_slice(&[a + nabla, b + nabla, c + nabla]);
                    out.insert(HomaloidalType::new(d + nabla, mults).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn children_match_brute_force_enumeration() {
        // Walk the tree to degree 10 using the brute-force enumerator and
        // compare the fast enumerator node by node.
        let mut stack = vec![HomaloidalType::<u64>::root()];
        let mut checked = 0;
        while let Some(x) = stack.pop() {
            let brute = brute_children(&x);
            let fast: BTreeSet<_> = children(&x).into_iter().map(|(_, c)| c).collect();
            assert_eq!(fast, brute, "children mismatch at {x}");
            for (seed, c) in children(&x) {
                // Round trip through the canonical parent.
                let (p, back) = parent(&c).unwrap();
                assert_eq!(p, x, "parent of {c} should be {x}");
                assert_eq!(back.values(), seed.values());
                assert_eq!(back.nabla(), seed.nabla());
                assert_eq!(back.is_star(), seed.is_star());
                if c.degree() <= 10 {
                    stack.push(c);
                }
            }
            checked += 1;
        }
        assert!(checked > 50, "enumeration visited only {checked} nodes");
    }

    #[test]
    fn lineage_examples() {
        let l = lineage_to_root(&t("(2;1^3)")).unwrap();
        assert_eq!(l.types(), &[HomaloidalType::root(), t("(2;1^3)")]);

        let l = lineage_to_root(&t("(5;2^6)")).unwrap();
        let path: Vec<String> = l.types().iter().map(|x| x.to_string()).collect();
        assert_eq!(path, vec!["(1;0)", "(2;1^3)", "(4;2^3,1^3)", "(5;2^6)"]);

        let l = lineage_to_root(&t("(6;4,2^4,1^3)")).unwrap();
        assert!(l.types().contains(&t("(4;2^3,1^3)")));

        assert!(lineage_to_root(&t("(5;3,3,1^6)")).is_err());
    }

    #[test]
    fn apply_seed_sequence_examples() {
        let l = apply_seed_sequence(&HomaloidalType::<u64>::root(), &[(0, 0, 0)]).unwrap();
        assert_eq!(l.last(), &t("(2;1^3)"));

        // Ascending from (4;3,1^6) the canonical seeds are (1,0,0), (2,0,0).
        let l = apply_seed_sequence(&t("(2;1^3)"), &[(1, 0, 0), (2, 0, 0)]).unwrap();
        assert_eq!(l.last(), &t("(4;3,1^6)"));

        // A different second seed lands elsewhere.
        let l = apply_seed_sequence(&t("(2;1^3)"), &[(1, 0, 0), (1, 0, 0)]).unwrap();
        assert_eq!(l.last(), &t("(5;3,2^3,1^3)"));

        let err = apply_seed_sequence(&t("(2;1^3)"), &[(0, 0, 0), (2, 2, 2)]).unwrap_err();
        assert!(matches!(err, HudsonError::InadmissibleAt { index: 1, .. }));

        // Uniform prefix: (0,0,0), (0,0,0), (d,d,d) ends at (5d; (2d)^6, ...).
        for x in [t("(2;1^3)"), t("(3;2,1^4)"), t("(6;3^2,2^4,1)")] {
            let d = x.degree();
            let l = apply_seed_sequence(&x, &[(0, 0, 0), (0, 0, 0), (d, d, d)]).unwrap();
            let end = l.last();
            assert_eq!(end.degree(), 5 * d);
            let mut expect = vec![2 * d; 6];
            expect.extend_from_slice(x.multiplicities());
            assert_eq!(end, &HomaloidalType::new(5 * d, expect).unwrap());
            assert_eq!(end.tail(), x.multiplicities());
        }
    }

    #[test]
    fn star_sequence_examples() {
        let x = t("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)");
        let seqs = star_descendant_sequences(&x).unwrap();
        let got: BTreeSet<Vec<(u64, u64)>> = seqs
            .iter()
            .map(|s| s.iter().map(|seed| seed.lower_pair()).collect())
            .collect();
        // Tail (2,2,2,1): the pair (2,2) leaves tail (2,1); every other
        // choice empties it. From (2,1) all four pair choices empty it.
        let expect: BTreeSet<Vec<(u64, u64)>> = [
            vec![(2, 2), (2, 1)],
            vec![(2, 2), (2, 0)],
            vec![(2, 2), (1, 0)],
            vec![(2, 2), (0, 0)],
            vec![(2, 1)],
            vec![(2, 0)],
            vec![(1, 0)],
            vec![(0, 0)],
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);

        // Empty tail: only the forced (*,0,0) continuation, not expanded.
        let seqs = star_descendant_sequences(&t("(4;2^3,1^3)")).unwrap();
        assert_eq!(seqs, vec![Vec::new()]);
        let seqs = star_descendant_sequences(&t("(2;1^3)")).unwrap();
        assert_eq!(seqs.len(), 1);
    }

    #[test]
    fn star_steps_match_direct_arithmetic() {
        // First step (*,2,2) of the worked example.
        let x = t("(80;43,31,27,26,26,21,21,18,17,2,2,2,1)");
        let (seed, c) = child(&x, (43, 2, 2)).unwrap();
        assert!(seed.is_star());
        assert_eq!(seed.nabla(), 33);
        assert_eq!(c, t("(113;76,35,35,31,27,26,26,21,21,18,17,2,1)"));
        assert_eq!(c.tail(), &[2, 1]);
        // All four continuations are admissible from there.
        for pair in [(2, 1), (2, 0), (1, 0), (0, 0)] {
            assert!(is_admissible(&c, (76, pair.0, pair.1)).unwrap());
        }
    }
}
