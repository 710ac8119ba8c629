//! Orbits of the geometric lemma over the Siegel Levi and their relevance.
//!
//! A representation `π_1 ⊗ ⋯ ⊗ π_k` of a Levi subgroup inside the Siegel
//! Levi is described by a list of blocks. An orbit shape splits every block
//! along a composition, marks a final stretch of each split as the set `𝔠`,
//! and pairs or fixes the resulting factors through an involution `τ`.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, validation, Error, Result};
use crate::half::HalfInt;
use crate::jacquet::{ladder_terms, split_l, split_z, Composition};
use crate::segcalc::{
    glf_dist_generic, glf_dist_sqint, is_ladder, sp_dist_ladder, zelevinsky_segment, Multisegment, Segment,
    SqintRule,
};
use crate::tri::Tri;
use crate::weylinv::{all_involutions, IndexSet, SignedPermutation};
use crate::Config;

// ---------------------------------------------------------------------------
// Admissible involutions, stabilizers and modulus characters.

/// Involutions `w` of rank `k` indexing `M`-orbits on `N_G(M) ∩ X`.
///
/// `w` must preserve block sizes and every block in `𝔠_+(w)` must have even size.
pub fn admissible_involutions(sizes: &[usize]) -> Result<Vec<SignedPermutation>> {
    let k = sizes.len();
    if k == 0 || k > 8 || sizes.contains(&0) {
        return Err(precondition("admissible involutions", format!("sizes {sizes:?} outside 1..=8 blocks")));
    }
    Ok(all_involutions(k)
        .into_iter()
        .filter(|w| {
            let cs = w.c_sets();
            (1..=k).all(|i| sizes[w.image(i) - 1] == sizes[i - 1])
                && (1..=k).all(|i| cs.c_plus >> (i - 1) & 1 == 0 || sizes[i - 1] % 2 == 0)
        })
        .collect())
}

fn is_admissible(w: &SignedPermutation, sizes: &[usize]) -> bool {
    let k = sizes.len();
    let cs = w.c_sets();
    w.n() == k
        && w.is_involution()
        && (1..=k).all(|i| sizes[w.image(i) - 1] == sizes[i - 1])
        && (1..=k).all(|i| cs.c_plus >> (i - 1) & 1 == 0 || sizes[i - 1] % 2 == 0)
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    F,
    E,
}

/// How a swapped pair of blocks is identified in the stabilizer.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairTwist {
    /// `g_τ(i) = ḡ_i`, for pairs outside `𝔠`.
    Conjugate,
    /// `g_τ(i) = ḡ_i^*`, for pairs inside `𝔠`.
    ConjugateTransposeInverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum StabFactor {
    GlF { block: usize, size: usize },
    GlE { block: usize, partner: usize, size: usize, twist: PairTwist },
    Sp { block: usize, size: usize },
}

/// `M_x` for an admissible `w`, blocks 1-based.
pub fn stabilizer_descriptor(w: &SignedPermutation, sizes: &[usize]) -> Result<Vec<StabFactor>> {
    if !is_admissible(w, sizes) {
        return Err(precondition("stabilizer", format!("{w} is not admissible for {sizes:?}")));
    }
    let cs = w.c_sets();
    let has = |set: IndexSet, i: usize| set >> (i - 1) & 1 == 1;
    Ok((1..=sizes.len())
        .filter_map(|i| {
            let size = sizes[i - 1];
            if has(cs.c_minus, i) {
                Some(StabFactor::GlF { block: i, size })
            } else if has(cs.c_plus, i) {
                Some(StabFactor::Sp { block: i, size })
            } else if has(cs.c_less, i) {
                let twist = if has(w.c(), i) { PairTwist::ConjugateTransposeInverse } else { PairTwist::Conjugate };
                Some(StabFactor::GlE { block: i, partner: w.image(i), size, twist })
            } else {
                None
            }
        })
        .collect())
}

/// One factor `|det g_i|^exponent` of the modulus character on `M_x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusFactor {
    pub block: usize,
    pub field: Field,
    pub size: usize,
    pub exponent: u32,
}

/// Exponent 1 over `F` on `𝔠_−` blocks, 1 over `E` once per swapped pair,
/// 0 on `𝔠_+` blocks.
pub fn modulus_exponents(w: &SignedPermutation, sizes: &[usize]) -> Result<Vec<ModulusFactor>> {
    Ok(stabilizer_descriptor(w, sizes)?
        .into_iter()
        .map(|f| match f {
            StabFactor::GlF { block, size } => ModulusFactor { block, field: Field::F, size, exponent: 1 },
            StabFactor::GlE { block, size, .. } => ModulusFactor { block, field: Field::E, size, exponent: 1 },
            StabFactor::Sp { block, size } => ModulusFactor { block, field: Field::E, size, exponent: 0 },
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Blocks and factors.

/// One tensor factor `π_i` of the inducing representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockSpec {
    /// The essentially square-integrable `L(Δ)`.
    L(Segment),
    /// The Zelevinsky segment representation `Z(Δ)`.
    Z(Segment),
    /// The ladder representation `L(m)`.
    Ladder(Multisegment),
}

impl BlockSpec {
    pub fn size(&self) -> usize {
        match self {
            BlockSpec::L(s) | BlockSpec::Z(s) => s.len(),
            BlockSpec::Ladder(m) => m.size(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BlockSpec::Ladder(m) if m.is_empty() || !is_ladder(m) => {
                Err(validation("ladder block", format!("{m} is not a nonempty ladder")))
            }
            _ => Ok(()),
        }
    }

    /// Langlands data of the Jacquet factors along `c`, one list per term.
    pub fn terms(&self, c: &Composition) -> Result<Vec<Vec<Multisegment>>> {
        match self {
            BlockSpec::L(s) => Ok(vec![split_l(s, c)?.into_iter().map(Multisegment::single).collect()]),
            BlockSpec::Z(s) => Ok(vec![split_z(s, c)?.iter().map(zelevinsky_segment).collect()]),
            BlockSpec::Ladder(m) => ladder_terms(m, c),
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSpec::L(s) => write!(f, "L({s})"),
            BlockSpec::Z(s) => write!(f, "Z({s})"),
            BlockSpec::Ladder(m) => write!(f, "L{m}"),
        }
    }
}

/// `Sp(E)`-distinction of `L(f)` for a ladder `f`.
pub fn sp_factor(f: &Multisegment) -> Tri {
    if is_ladder(f) {
        Tri::from(sp_dist_ladder(f).expect("checked ladder"))
    } else {
        Tri::Unknown
    }
}

/// `GL(F)`-distinction of `ν^{-1/2} L(f)`.
pub fn glf_half_factor(f: &Multisegment, rule: SqintRule) -> Tri {
    let g = f.shift(-HalfInt::HALF);
    match g.segments() {
        [s] => glf_dist_sqint(s, rule),
        _ if g.pairwise_unlinked() => glf_dist_generic(&g, rule).expect("checked genericity").verdict,
        _ => Tri::Unknown,
    }
}

// ---------------------------------------------------------------------------
// Orbit shapes.

/// A candidate orbit: splits, cut points and the involution on factors.
///
/// Factors are indexed by `(i, j)` with `1 ≤ j ≤ j_i`, flattened in
/// lexicographic order; `tau` maps flattened positions. Factor `(i, j)` lies
/// in `𝔠` exactly when `j > s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrbitWire", into = "OrbitWire")]
pub struct OrbitDescriptor {
    pub splits: Vec<Composition>,
    pub s_cut: Vec<usize>,
    pub tau: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OrbitWire {
    splits: Vec<Composition>,
    s_cut: Vec<usize>,
    tau: Vec<[usize; 2]>,
    c: Vec<[usize; 2]>,
}

impl From<OrbitDescriptor> for OrbitWire {
    fn from(o: OrbitDescriptor) -> Self {
        let layout = Layout::new(&o.splits, &o.s_cut);
        let tau = o.tau.iter().map(|&t| layout.label(t)).collect();
        let c = (0..layout.len()).filter(|&i| layout.in_c[i]).map(|i| layout.label(i)).collect();
        OrbitWire { splits: o.splits, s_cut: o.s_cut, tau, c }
    }
}

impl TryFrom<OrbitWire> for OrbitDescriptor {
    type Error = Error;
    fn try_from(w: OrbitWire) -> Result<Self> {
        if w.splits.len() != w.s_cut.len() || w.splits.iter().zip(&w.s_cut).any(|(c, &s)| s > c.len()) {
            return Err(validation("orbit descriptor", "cut points do not match splits"));
        }
        let layout = Layout::new(&w.splits, &w.s_cut);
        let tau = w
            .tau
            .iter()
            .map(|&l| layout.index(l).ok_or_else(|| validation("orbit descriptor", format!("bad index {l:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let c: Vec<[usize; 2]> = (0..layout.len()).filter(|&i| layout.in_c[i]).map(|i| layout.label(i)).collect();
        if c != w.c {
            return Err(validation("orbit descriptor", "c is not the final stretch of each split"));
        }
        let o = OrbitDescriptor { splits: w.splits, s_cut: w.s_cut, tau };
        if tau_len_ok(&o, &layout) && layout.satisfies(&o.tau) {
            Ok(o)
        } else {
            Err(validation("orbit descriptor", "tau violates the orbit constraints"))
        }
    }
}

fn tau_len_ok(o: &OrbitDescriptor, layout: &Layout) -> bool {
    o.tau.len() == layout.len()
}

impl OrbitDescriptor {
    pub fn layout(&self) -> Layout {
        Layout::new(&self.splits, &self.s_cut)
    }

    pub fn factor_count(&self) -> usize {
        self.tau.len()
    }

    pub fn part_count(&self) -> usize {
        self.splits.iter().map(Composition::len).sum()
    }
}

/// Row, column and membership of every flattened factor index.
#[derive(Debug, Clone)]
pub struct Layout {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub in_c: Vec<bool>,
    offsets: Vec<usize>,
}

impl Layout {
    pub fn new(splits: &[Composition], s_cut: &[usize]) -> Self {
        let mut layout = Layout { row: Vec::new(), col: Vec::new(), in_c: Vec::new(), offsets: Vec::new() };
        for (i, (c, &s)) in splits.iter().zip(s_cut).enumerate() {
            layout.offsets.push(layout.row.len());
            for j in 1..=c.len() {
                layout.row.push(i + 1);
                layout.col.push(j);
                layout.in_c.push(j > s);
            }
        }
        layout
    }

    pub fn len(&self) -> usize {
        self.row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row.is_empty()
    }

    /// `[i, j]`, 1-based.
    pub fn label(&self, idx: usize) -> [usize; 2] {
        [self.row[idx], self.col[idx]]
    }

    pub fn index(&self, [i, j]: [usize; 2]) -> Option<usize> {
        let start = *self.offsets.get(i.checked_sub(1)?)?;
        let idx = start + j.checked_sub(1)?;
        (idx < self.len() && self.row[idx] == i).then_some(idx)
    }

    fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        let start = self.offsets[r - 1];
        let end = self.offsets.get(r).copied().unwrap_or(self.len());
        start..end
    }

    /// Monotonicity of image rows within row `r`, over assigned entries only.
    fn row_ok(&self, r: usize, tau: &[usize]) -> bool {
        let mut last_out: Option<usize> = None;
        let mut last_in: Option<usize> = None;
        for idx in self.row_range(r) {
            let t = tau[idx];
            if t == UNSET {
                continue;
            }
            let tr = self.row[t];
            let last = if self.in_c[idx] { &mut last_in } else { &mut last_out };
            if let Some(prev) = *last {
                let ok = if self.in_c[idx] { tr < prev } else { tr > prev };
                if !ok {
                    return false;
                }
            }
            *last = Some(tr);
        }
        true
    }

    /// Whether `tau` is a full involution meeting every orbit constraint.
    pub fn satisfies(&self, tau: &[usize]) -> bool {
        tau.len() == self.len()
            && (0..self.len()).all(|i| {
                let t = tau[i];
                t < self.len()
                    && tau[t] == i
                    && self.in_c[t] == self.in_c[i]
                    && (t == i || self.row[t] != self.row[i])
            })
            && (1..=self.offsets.len()).all(|r| self.row_ok(r, tau))
    }
}

const UNSET: usize = usize::MAX;

/// Depth-first enumeration of admissible `tau` in lexicographic order.
///
/// `cond(i, j)` scores assigning `τ(i) = j`; a `No` prunes the branch. `leaf`
/// receives each complete involution with the conjunction of its scores.
fn dfs_tau<B>(
    layout: &Layout,
    tau: &mut Vec<usize>,
    acc: Tri,
    cond: &mut impl FnMut(usize, usize) -> Tri,
    leaf: &mut impl FnMut(&[usize], Tri) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let Some(i) = tau.iter().position(|&t| t == UNSET) else {
        return leaf(tau, acc);
    };
    for j in i..layout.len() {
        if tau[j] != UNSET || layout.in_c[j] != layout.in_c[i] || (j != i && layout.row[j] == layout.row[i]) {
            continue;
        }
        tau[i] = j;
        tau[j] = i;
        if layout.row_ok(layout.row[i], tau) && layout.row_ok(layout.row[j], tau) {
            let v = cond(i, j);
            if !v.is_no() {
                dfs_tau(layout, tau, acc & v, cond, leaf)?;
            }
        }
        tau[i] = UNSET;
        tau[j] = UNSET;
    }
    ControlFlow::Continue(())
}

fn check_cap(blocks: &[BlockSpec], cap: usize) -> Result<()> {
    for b in blocks {
        b.validate()?;
    }
    let size: usize = blocks.iter().map(BlockSpec::size).sum();
    if size > cap {
        return Err(Error::CapExceeded { what: "total support", size, cap });
    }
    Ok(())
}

/// Tuples `(n_1, ..., n_k)` with `1 ≤ n_i ≤ max_i` and sum `total`, lexicographically.
fn count_tuples(max: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn go(max: &[usize], total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&m, rest)) = max.split_first() else {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let rest_max: usize = rest.iter().sum();
        for n in 1..=m.min(total) {
            if total - n > rest_max || total - n < rest.len() {
                continue;
            }
            prefix.push(n);
            go(rest, total - n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(max, total, &mut Vec::new(), &mut out);
    out
}

/// All `(splits, s_cut)` pairs in search order: total parts ascending, then
/// part counts, compositions and cut points lexicographically.
fn split_configurations(sizes: &[usize]) -> Vec<(Vec<Composition>, Vec<usize>)> {
    let k = sizes.len();
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    for p in k.min(total)..=total {
        for counts in count_tuples(sizes, p) {
            let comps: Vec<Vec<Composition>> =
                sizes.iter().zip(&counts).map(|(&n, &c)| Composition::all_with_parts(n, c)).collect();
            let cuts: Vec<Vec<usize>> = counts.iter().map(|&c| (0..=c).collect()).collect();
            let cuts = product(cuts);
            for splits in product(comps) {
                for s in &cuts {
                    out.push((splits.clone(), s.clone()));
                }
            }
        }
    }
    out
}

/// Cartesian product in lexicographic order; one empty tuple for no factors.
fn product<T: Clone>(lists: Vec<Vec<T>>) -> Vec<Vec<T>> {
    lists.into_iter().fold(vec![Vec::new()], |acc, list| {
        acc.into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// Every orbit shape, each exactly once, in search order.
pub fn enumerate_orbit_shapes(blocks: &[BlockSpec], config: &Config) -> Result<OrbitShapes> {
    check_cap(blocks, config.max_support)?;
    let sizes: Vec<usize> = blocks.iter().map(BlockSpec::size).collect();
    Ok(OrbitShapes { configs: split_configurations(&sizes).into_iter(), pending: Vec::new() })
}

/// Lazy stream of orbit shapes.
pub struct OrbitShapes {
    configs: std::vec::IntoIter<(Vec<Composition>, Vec<usize>)>,
    pending: Vec<OrbitDescriptor>,
}

impl Iterator for OrbitShapes {
    type Item = OrbitDescriptor;

    fn next(&mut self) -> Option<OrbitDescriptor> {
        loop {
            if let Some(o) = self.pending.pop() {
                return Some(o);
            }
            let (splits, s_cut) = self.configs.next()?;
            let layout = Layout::new(&splits, &s_cut);
            let mut found = Vec::new();
            let mut tau = vec![UNSET; layout.len()];
            let _ = dfs_tau::<()>(&layout, &mut tau, Tri::Yes, &mut |_, _| Tri::Yes, &mut |t, _| {
                found.push(OrbitDescriptor { splits: splits.clone(), s_cut: s_cut.clone(), tau: t.to_vec() });
                ControlFlow::Continue(())
            });
            found.reverse();
            self.pending = found;
        }
    }
}

// ---------------------------------------------------------------------------
// Relevance.

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Fixed outside `𝔠`: `ν^{-1/2} π` is `GL(F)`-distinguished.
    GlHalf,
    /// Fixed inside `𝔠`: `π` is `Sp(E)`-distinguished.
    Sp,
    /// Swapped outside `𝔠`: `π_τ(i) ≅ ν π̄_i^∨`.
    DualPair,
    /// Swapped inside `𝔠`, `i < τ(i)`: `π_τ(i) ≅ ν^{-1} π_i`.
    ShiftPair,
}

/// One evaluated condition of a relevance check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub index: [usize; 2],
    pub condition: Condition,
    pub verdict: Tri,
    pub witness: String,
}

fn describe(f: &Multisegment) -> String {
    f.to_string()
}

fn evaluate(layout: &Layout, factors: &[&Multisegment], i: usize, j: usize, rule: SqintRule) -> ConditionEntry {
    let fi = factors[i];
    let (condition, verdict, witness) = if i == j {
        if layout.in_c[i] {
            (Condition::Sp, sp_factor(fi), describe(fi))
        } else {
            (Condition::GlHalf, glf_half_factor(fi, rule), describe(&fi.shift(-HalfInt::HALF)))
        }
    } else {
        let (lo, hi) = (i.min(j), i.max(j));
        let (flo, fhi) = (factors[lo], factors[hi]);
        if layout.in_c[i] {
            let want = flo.shift(-HalfInt::ONE);
            (Condition::ShiftPair, Tri::from(*fhi == want), format!("{fhi} vs {want}"))
        } else {
            let want = flo.conj_dual().shift(HalfInt::ONE);
            (Condition::DualPair, Tri::from(*fhi == want), format!("{fhi} vs {want}"))
        }
    };
    ConditionEntry { index: layout.label(i.min(j)), condition, verdict, witness }
}

fn flatten<'a>(factors: &'a [Vec<Multisegment>]) -> Vec<&'a Multisegment> {
    factors.iter().flatten().collect()
}

/// Conjunction of the relevance conditions of `orbit` for one factorization
/// term, with the per-index log.
pub fn check_relevant(
    blocks: &[BlockSpec],
    orbit: &OrbitDescriptor,
    factors: &[Vec<Multisegment>],
    rule: SqintRule,
) -> Result<(Tri, Vec<ConditionEntry>)> {
    let layout = orbit.layout();
    let consistent = blocks.len() == orbit.splits.len()
        && factors.len() == blocks.len()
        && blocks.iter().zip(&orbit.splits).zip(factors).all(|((b, c), f)| {
            c.len() == f.len()
                && c.total() == b.size()
                && c.parts().iter().zip(f).all(|(&p, m)| m.size() == p)
        })
        && layout.satisfies(&orbit.tau);
    if !consistent {
        return Err(precondition("relevance check", "factors do not match the orbit"));
    }
    let flat = flatten(factors);
    let log: Vec<ConditionEntry> = (0..layout.len())
        .filter(|&i| orbit.tau[i] >= i)
        .map(|i| evaluate(&layout, &flat, i, orbit.tau[i], rule))
        .collect();
    Ok((Tri::all(log.iter().map(|e| e.verdict)), log))
}

/// A relevant orbit together with the factorization term and its log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelevanceCertificate {
    pub orbit: OrbitDescriptor,
    pub factor_assignment: Vec<Vec<Multisegment>>,
    pub condition_log: Vec<ConditionEntry>,
}

/// Bookkeeping of a search that found nothing relevant.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SearchLog {
    /// A bounded sample of decisive failures.
    pub witnesses: Vec<ConditionEntry>,
    /// Configurations `(splits, s_cut, term)` considered.
    pub configurations: u64,
    /// Configurations discarded because some factor has no way to be satisfied.
    pub discarded: u64,
    /// Complete orbits whose conditions ended `Unknown`.
    pub unknown_orbits: u64,
}

pub const WITNESS_CAP: usize = 32;

impl SearchLog {
    fn witness(&mut self, e: ConditionEntry) {
        if self.witnesses.len() < WITNESS_CAP && !self.witnesses.contains(&e) {
            self.witnesses.push(e);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(RelevanceCertificate),
    NoneCertified(SearchLog),
    Unknown(SearchLog),
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_none_certified(&self) -> bool {
        matches!(self, SearchOutcome::NoneCertified(_))
    }
}

/// One way to split a block: composition, cut point and factor term.
struct BlockOption {
    comp: Composition,
    s: usize,
    factors: Vec<Multisegment>,
}

/// Whether factor `f` of block `row` can possibly satisfy its condition with
/// membership `in_c`, given every factor any other block could produce.
fn viable(
    f: &Multisegment,
    row: usize,
    in_c: bool,
    pool: &[HashMap<Multisegment, ()>],
    cache: &mut HashMap<(Multisegment, usize, bool), Option<ConditionEntry>>,
    rule: SqintRule,
) -> Option<ConditionEntry> {
    let key = (f.clone(), row, in_c);
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    let fixed = if in_c { sp_factor(f) } else { glf_half_factor(f, rule) };
    let partnered = (0..pool.len()).filter(|&r| r != row).any(|r| {
        let want = if !in_c {
            f.conj_dual().shift(HalfInt::ONE)
        } else if r > row {
            f.shift(-HalfInt::ONE)
        } else {
            f.shift(HalfInt::ONE)
        };
        pool[r].contains_key(&want)
    });
    let failure = (fixed.is_no() && !partnered).then(|| ConditionEntry {
        index: [row + 1, 0],
        condition: if in_c { Condition::Sp } else { Condition::GlHalf },
        verdict: Tri::No,
        witness: format!("{f} has no admissible partner"),
    });
    cache.insert(key, failure.clone());
    failure
}

/// Searches all orbit shapes and factorization terms for a relevant orbit.
///
/// `Found` carries the first relevant orbit in search order; `NoneCertified`
/// means every candidate fails some condition definitively.
pub fn exists_relevant(blocks: &[BlockSpec], config: &Config) -> Result<SearchOutcome> {
    check_cap(blocks, config.max_support)?;
    let rule = config.sqint_rule;
    let k = blocks.len();
    let mut per_block: Vec<Vec<(Composition, Vec<Vec<Multisegment>>)>> = Vec::with_capacity(k);
    for b in blocks {
        let mut v = Vec::new();
        for c in Composition::all(b.size()) {
            let terms = b.terms(&c)?;
            v.push((c, terms));
        }
        per_block.push(v);
    }
    let pool: Vec<HashMap<Multisegment, ()>> = per_block
        .iter()
        .map(|v| v.iter().flat_map(|(_, ts)| ts.iter().flatten().cloned()).map(|f| (f, ())).collect())
        .collect();

    let mut log = SearchLog::default();
    let mut cache = HashMap::new();
    // options[row][parts] lists viable block options in search order.
    let mut options: Vec<Vec<Vec<BlockOption>>> = Vec::with_capacity(k);
    for (row, v) in per_block.iter().enumerate() {
        let size = blocks[row].size();
        let mut by_parts: Vec<Vec<BlockOption>> = (0..=size).map(|_| Vec::new()).collect();
        for (c, terms) in v {
            for s in 0..=c.len() {
                for term in terms {
                    log.configurations += 1;
                    let failure = term
                        .iter()
                        .enumerate()
                        .find_map(|(j, f)| viable(f, row, j >= s, &pool, &mut cache, rule).map(|e| (j, e)));
                    match failure {
                        Some((j, mut e)) => {
                            e.index = [row + 1, j + 1];
                            log.discarded += 1;
                            log.witness(e);
                        }
                        None => by_parts[c.len()].push(BlockOption { comp: c.clone(), s, factors: term.clone() }),
                    }
                }
            }
        }
        options.push(by_parts);
    }

    if k == 0 {
        let orbit = OrbitDescriptor { splits: vec![], s_cut: vec![], tau: vec![] };
        return Ok(SearchOutcome::Found(RelevanceCertificate {
            orbit,
            factor_assignment: vec![],
            condition_log: vec![],
        }));
    }

    let sizes: Vec<usize> = blocks.iter().map(BlockSpec::size).collect();
    let total: usize = sizes.iter().sum();
    for p in k..=total {
        for counts in count_tuples(&sizes, p) {
            let mut chosen: Vec<&BlockOption> = Vec::with_capacity(k);
            if let ControlFlow::Break(cert) = search_blocks(&options, &counts, &mut chosen, &mut log, rule) {
                return Ok(SearchOutcome::Found(cert));
            }
        }
    }
    if log.unknown_orbits > 0 {
        Ok(SearchOutcome::Unknown(log))
    } else {
        Ok(SearchOutcome::NoneCertified(log))
    }
}

fn search_blocks<'a>(
    options: &'a [Vec<Vec<BlockOption>>],
    counts: &[usize],
    chosen: &mut Vec<&'a BlockOption>,
    log: &mut SearchLog,
    rule: SqintRule,
) -> ControlFlow<RelevanceCertificate> {
    let row = chosen.len();
    if row == options.len() {
        return search_tau(chosen, log, rule);
    }
    for opt in &options[row][counts[row]] {
        chosen.push(opt);
        let r = search_blocks(options, counts, chosen, log, rule);
        chosen.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn search_tau(chosen: &[&BlockOption], log: &mut SearchLog, rule: SqintRule) -> ControlFlow<RelevanceCertificate> {
    let splits: Vec<Composition> = chosen.iter().map(|o| o.comp.clone()).collect();
    let s_cut: Vec<usize> = chosen.iter().map(|o| o.s).collect();
    let layout = Layout::new(&splits, &s_cut);
    let flat: Vec<&Multisegment> = chosen.iter().flat_map(|o| o.factors.iter()).collect();
    let mut tau = vec![UNSET; layout.len()];
    let mut failures = Vec::new();
    let mut unknown = 0u64;
    let result = dfs_tau(
        &layout,
        &mut tau,
        Tri::Yes,
        &mut |i, j| {
            let e = evaluate(&layout, &flat, i, j, rule);
            let v = e.verdict;
            if v.is_no() && failures.len() < 2 {
                failures.push(e);
            }
            v
        },
        &mut |t, acc| match acc {
            Tri::Yes => ControlFlow::Break(t.to_vec()),
            Tri::Unknown => {
                unknown += 1;
                ControlFlow::Continue(())
            }
            Tri::No => ControlFlow::Continue(()),
        },
    );
    log.unknown_orbits += unknown;
    for e in failures {
        log.witness(e);
    }
    match result {
        ControlFlow::Break(t) => {
            let orbit = OrbitDescriptor { splits, s_cut, tau: t };
            let factor_assignment: Vec<Vec<Multisegment>> = chosen.iter().map(|o| o.factors.clone()).collect();
            let condition_log = (0..layout.len())
                .filter(|&i| orbit.tau[i] >= i)
                .map(|i| evaluate(&layout, &flat, i, orbit.tau[i], rule))
                .collect();
            ControlFlow::Break(RelevanceCertificate { orbit, factor_assignment, condition_log })
        }
        ControlFlow::Continue(()) => ControlFlow::Continue(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segcalc::CuspLine;

    fn seg(line: &CuspLine, a2: i64, b2: i64) -> Segment {
        Segment::from_doubled(line.clone(), a2, b2).unwrap()
    }

    fn sp(tau: &[usize], c: &[usize]) -> SignedPermutation {
        SignedPermutation::new(tau.to_vec(), c.iter().fold(0, |a, &i| a | 1 << (i - 1))).unwrap()
    }

    #[test]
    fn admissible_examples() {
        let w = admissible_involutions(&[2, 1]).unwrap();
        assert!(!w.contains(&sp(&[1, 2], &[2])));
        assert!(w.contains(&sp(&[1, 2], &[1])));
        assert!(!w.contains(&sp(&[2, 1], &[])));
        assert_eq!(admissible_involutions(&[1]).unwrap(), vec![sp(&[1], &[])]);
        assert_eq!(admissible_involutions(&[2, 2, 2]).unwrap().len(), all_involutions(3).len());
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(
            stabilizer_descriptor(&sp(&[1], &[]), &[3]).unwrap(),
            vec![StabFactor::GlF { block: 1, size: 3 }]
        );
        assert_eq!(
            stabilizer_descriptor(&sp(&[2, 1], &[]), &[2, 2]).unwrap(),
            vec![StabFactor::GlE { block: 1, partner: 2, size: 2, twist: PairTwist::Conjugate }]
        );
        assert_eq!(
            stabilizer_descriptor(&sp(&[1], &[1]), &[2]).unwrap(),
            vec![StabFactor::Sp { block: 1, size: 2 }]
        );
        assert!(stabilizer_descriptor(&sp(&[1], &[1]), &[3]).is_err());
    }

    #[test]
    fn modulus_examples() {
        let m = modulus_exponents(&sp(&[1, 2], &[]), &[1, 3]).unwrap();
        assert!(m.iter().all(|f| f.field == Field::F && f.exponent == 1));
        let m = modulus_exponents(&sp(&[1], &[1]), &[2]).unwrap();
        assert_eq!(m[0].exponent, 0);
        let m = modulus_exponents(&sp(&[2, 1], &[1, 2]), &[2, 2]).unwrap();
        assert_eq!(m, vec![ModulusFactor { block: 1, field: Field::E, size: 2, exponent: 1 }]);
    }

    #[test]
    fn shape_examples() {
        let cfg = Config::default();
        let r = CuspLine::even("r");
        let one = [BlockSpec::L(seg(&r, 0, 0))];
        let shapes: Vec<_> = enumerate_orbit_shapes(&one, &cfg).unwrap().collect();
        assert_eq!(shapes.len(), 2);
        assert_eq!(shapes[0].s_cut, vec![0]);
        assert_eq!(shapes[1].s_cut, vec![1]);
        let none: Vec<_> = enumerate_orbit_shapes(&[], &cfg).unwrap().collect();
        assert_eq!(none, vec![OrbitDescriptor { splits: vec![], s_cut: vec![], tau: vec![] }]);
        let big = [BlockSpec::L(seg(&r, 0, 60))];
        assert!(matches!(enumerate_orbit_shapes(&big, &cfg), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn check_relevant_examples() {
        let rule = SqintRule::Parity;
        let odd = CuspLine::odd("r");
        let b = [BlockSpec::L(seg(&odd, 0, 2))];
        let id = OrbitDescriptor { splits: vec![Composition(vec![2])], s_cut: vec![1], tau: vec![0] };
        let f = vec![vec![Multisegment::single(seg(&odd, 0, 2))]];
        let (v, log) = check_relevant(&b, &id, &f, rule).unwrap();
        assert_eq!(v, Tri::Yes);
        assert_eq!(log[0].condition, Condition::GlHalf);

        let even = CuspLine::even("r");
        let b = [BlockSpec::L(seg(&even, 0, 0))];
        let o = OrbitDescriptor { splits: vec![Composition(vec![1])], s_cut: vec![0], tau: vec![0] };
        let f = vec![vec![Multisegment::single(seg(&even, 0, 0))]];
        assert_eq!(check_relevant(&b, &o, &f, rule).unwrap().0, Tri::No);

        let d = seg(&even, -2, 0);
        let b = [BlockSpec::L(d.shift(HalfInt::ONE)), BlockSpec::L(d.clone())];
        let o = OrbitDescriptor { splits: vec![Composition(vec![2]), Composition(vec![2])], s_cut: vec![1, 1], tau: vec![1, 0] };
        let f = vec![vec![Multisegment::single(d.shift(HalfInt::ONE))], vec![Multisegment::single(d.clone())]];
        let (v, log) = check_relevant(&b, &o, &f, rule).unwrap();
        assert_eq!(v, Tri::No);
        assert_eq!(log[0].condition, Condition::DualPair);
    }

    #[test]
    fn exists_relevant_examples() {
        let cfg = Config::default();
        let even = CuspLine::even("r");
        let d = seg(&even, -2, 0);
        let b = [BlockSpec::L(d.shift(HalfInt::ONE)), BlockSpec::L(d)];
        assert!(exists_relevant(&b, &cfg).unwrap().is_found());
        let single = [BlockSpec::L(seg(&even, 2, 4))];
        let out = exists_relevant(&single, &cfg).unwrap();
        match out {
            SearchOutcome::NoneCertified(log) => assert!(log.witnesses.iter().all(|w| w.verdict == Tri::No)),
            other => panic!("expected a certified negative, got {other:?}"),
        }
    }

    #[test]
    fn found_certificates_recheck() {
        let cfg = Config::default();
        let odd = CuspLine::odd("r");
        let b = [BlockSpec::L(seg(&odd, 0, 2)), BlockSpec::Z(seg(&odd, -1, 1))];
        if let SearchOutcome::Found(cert) = exists_relevant(&b, &cfg).unwrap() {
            let (v, _) = check_relevant(&b, &cert.orbit, &cert.factor_assignment, cfg.sqint_rule).unwrap();
            assert_eq!(v, Tri::Yes);
        } else {
            panic!("expected a relevant orbit");
        }
    }

    #[test]
    fn orbit_json_round_trip() {
        let o = OrbitDescriptor { splits: vec![Composition(vec![1, 1]), Composition(vec![2])], s_cut: vec![2, 1], tau: vec![0, 2, 1] };
        assert!(o.layout().satisfies(&o.tau));
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(serde_json::from_str::<OrbitDescriptor>(&s).unwrap(), o);
    }
}
