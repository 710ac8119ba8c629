//! The directed graph of sign tuples.
//!
//! Vertices are finite tuples over `{+1, -1}`. An edge labeled `i` (1-based)
//! deletes entries `i` and `i + 1` when they are equal. Each connected
//! component contains exactly one sink `±f_t`, where `f_t = (1, -1, 1, ...)`
//! has length `t`; [`tau`] names that component by a signed integer.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, validation, Error, Result};

pub const DEFAULT_BFS_CAP: usize = 16;

/// An ordered tuple of signs, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignTuple(Vec<i8>);

impl SignTuple {
    pub fn empty() -> Self {
        SignTuple(Vec::new())
    }

    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(validation("sign entries", format!("entry {} is {}", pos + 1, signs[pos])));
        }
        Ok(SignTuple(signs))
    }

    /// `f_t = (1, -1, 1, ...)` of length `t`.
    pub fn alternating(t: usize) -> Self {
        SignTuple((0..t).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect())
    }

    /// All `2^k` tuples of length `k`.
    pub fn all_of_length(k: usize) -> impl Iterator<Item = SignTuple> {
        (0u64..1 << k).map(move |bits| {
            SignTuple((0..k).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect())
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// The entry at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<i8> {
        i.checked_sub(1).and_then(|j| self.0.get(j).copied())
    }

    pub fn negated(&self) -> Self {
        SignTuple(self.0.iter().map(|s| -s).collect())
    }

    fn has_edge(&self, label: usize) -> bool {
        label >= 1 && label < self.len() && self.0[label - 1] == self.0[label]
    }

    fn delete_pair(&self, label: usize) -> SignTuple {
        let mut v = self.0.clone();
        v.drain(label - 1..=label);
        SignTuple(v)
    }
}

impl fmt::Display for SignTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '\u{2212}' => Ok(-1),
                other => Err(validation("sign tuple", format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignTuple)
    }
}

impl TryFrom<String> for SignTuple {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignTuple> for String {
    fn from(e: SignTuple) -> String {
        e.to_string()
    }
}

/// A sequence of edge labels describing a walk.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pattern(pub Vec<usize>);

impl Pattern {
    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    fn shifted(&self, by: usize) -> Pattern {
        Pattern(self.0.iter().map(|i| i + by).collect())
    }
}

/// The pairs of original positions deleted along a walk, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct History(pub Vec<(usize, usize)>);

impl History {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// No two steps interleave as `x_i < x_j < y_i < y_j`.
    pub fn is_non_crossing(&self) -> bool {
        self.0.iter().all(|&(xi, yi)| {
            self.0.iter().all(|&(xj, yj)| !(xi < xj && xj < yi && yi < yj))
        })
    }

    /// From the second step on, everything strictly between `x_s` and `y_s`
    /// was deleted earlier.
    pub fn is_nested_in_order(&self) -> bool {
        self.0.iter().enumerate().skip(1).all(|(s, &(x, y))| {
            let earlier: HashSet<usize> = self.0[..s].iter().flat_map(|&(a, b)| [a, b]).collect();
            (x + 1..y).all(|i| earlier.contains(&i))
        })
    }

    /// Ordered pairs with all endpoints distinct.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = HashSet::new();
        self.0.iter().all(|&(x, y)| x < y && seen.insert(x) && seen.insert(y))
    }

    pub fn is_valid(&self) -> bool {
        self.is_well_formed() && self.is_non_crossing() && self.is_nested_in_order()
    }
}

/// Outgoing edges of `e`, sorted by label.
pub fn edges(e: &SignTuple) -> Vec<(usize, SignTuple)> {
    (1..e.len()).filter(|&i| e.has_edge(i)).map(|i| (i, e.delete_pair(i))).collect()
}

/// Leading sign and block lengths: `e = sign * f_{t_1, ..., t_m}`.
///
/// Blocks end exactly at the positions `i` with `e_i = e_{i+1}`. Returns
/// `None` for the empty tuple.
pub fn decompose(e: &SignTuple) -> Option<(i8, Vec<usize>)> {
    let first = *e.0.first()?;
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..e.len() {
        if e.0[i - 1] == e.0[i] {
            blocks.push(i - start);
            start = i;
        }
    }
    blocks.push(e.len() - start);
    Some((first, blocks))
}

/// Component index: `e_1 * (t_1 - t_2 + t_3 - ...)`, and `0` on the empty tuple.
pub fn tau(e: &SignTuple) -> i64 {
    match decompose(e) {
        None => 0,
        Some((sign, blocks)) => {
            let alt: i64 = blocks
                .iter()
                .enumerate()
                .map(|(i, &t)| if i % 2 == 0 { t as i64 } else { -(t as i64) })
                .sum();
            sign as i64 * alt
        }
    }
}

/// The signed index of the sink `±f_t` of the component of `e`.
fn sink_index(e: &SignTuple) -> i64 {
    match e.0.first() {
        None => 0,
        Some(&s) => s as i64 * e.len() as i64,
    }
}

/// Component index found by exhaustive search over all deletion sequences.
///
/// Every sink reachable from `e` is collected; more than one distinct sink is
/// reported as an internal error.
pub fn bfs_component(e: &SignTuple, cap: usize) -> Result<i64> {
    if e.len() > cap {
        return Err(Error::CapExceeded { what: "sign tuple", size: e.len(), cap });
    }
    let mut seen = HashSet::from([e.clone()]);
    let mut queue = VecDeque::from([e.clone()]);
    let mut sinks = HashSet::new();
    while let Some(v) = queue.pop_front() {
        let out = edges(&v);
        if out.is_empty() {
            sinks.insert(sink_index(&v));
        }
        for (_, w) in out {
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut sinks: Vec<i64> = sinks.into_iter().collect();
    sinks.sort_unstable();
    match sinks.as_slice() {
        [t] => Ok(*t),
        _ => Err(Error::Internal(format!("{e} reaches several sinks {sinks:?}"))),
    }
}

/// Follows `p` from `e`, recording the original positions of each deleted pair.
pub fn walk(e: &SignTuple, p: &Pattern) -> Result<(SignTuple, History)> {
    let mut cur = e.clone();
    let mut positions: Vec<usize> = (1..=e.len()).collect();
    let mut pairs = Vec::with_capacity(p.0.len());
    for (step, &label) in p.0.iter().enumerate() {
        if !cur.has_edge(label) {
            return Err(Error::InvalidLabel { step: step + 1, label });
        }
        pairs.push((positions[label - 1], positions[label]));
        positions.drain(label - 1..=label);
        cur = cur.delete_pair(label);
    }
    Ok((cur, History(pairs)))
}

/// Which form of constrained path is requested.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum PathForm {
    /// Suffix starts at `t_1`, earlier labels exceed `t_1 + 1`.
    Standard,
    /// Suffix starts at `t_1 + 1`, earlier labels exceed `t_1 + 2`;
    /// requires `e_{t_1+2} = e_{t_1+1}`.
    Variant,
}

fn first_block(e: &SignTuple) -> usize {
    decompose(e).map(|(_, b)| b[0]).unwrap_or(0)
}

/// A path from `e` to `f_0` ending in `(t_1, ..., 2, 1)`.
pub fn path_v0(e: &SignTuple, form: PathForm) -> Result<Pattern> {
    if e.is_empty() || tau(e) != 0 {
        return Err(precondition("path to f_0", format!("{e} is empty or has tau {}", tau(e))));
    }
    constrained_path(e, 0, form)
}

/// A path from `e` to `f_1` ending in `(t_1, ..., x)` with `x` in `{1, 2}`.
pub fn path_v1(e: &SignTuple, form: PathForm) -> Result<Pattern> {
    if tau(e) != 1 || *e == SignTuple::alternating(1) {
        return Err(precondition("path to f_1", format!("{e} is f_1 or has tau {}", tau(e))));
    }
    constrained_path(e, 1, form)
}

fn constrained_path(e: &SignTuple, target: i64, form: PathForm) -> Result<Pattern> {
    let t1 = first_block(e);
    let (first, min_prefix) = match form {
        PathForm::Standard => (t1, t1),
        PathForm::Variant => {
            if e.get(t1 + 2).is_none() || e.get(t1 + 2) != e.get(t1 + 1) {
                return Err(precondition(
                    "variant path",
                    format!("{e} does not satisfy e_(t1+2) = e_(t1+1) with t1 = {t1}"),
                ));
            }
            (t1 + 1, t1 + 1)
        }
    };
    let rest = e.delete_pair(first);
    let sink = SignTuple::alternating(target as usize);
    let tail = if rest == sink {
        Pattern::default()
    } else {
        constrained_path(&rest, target, PathForm::Standard)?
    };
    // `tail` ends in a descending run down to x; the part of that run below
    // `first` stays, everything before it commutes past the first deletion.
    let labels = tail.labels();
    let keep = match labels.last() {
        None => 0,
        Some(&x) => {
            let run = (first.saturating_sub(1) + 1).saturating_sub(x);
            let start = labels.len().checked_sub(run).ok_or_else(|| {
                Error::Internal(format!("tail {labels:?} too short for {e}"))
            })?;
            let expected: Vec<usize> = (x..first).rev().collect();
            if labels[start..] != expected[..] {
                return Err(Error::Internal(format!("tail {labels:?} lacks run {expected:?}")));
            }
            start
        }
    };
    let prefix = Pattern(labels[..keep].to_vec());
    if prefix.labels().iter().any(|&i| i < min_prefix) {
        return Err(Error::Internal(format!("prefix {prefix:?} of {e} dips below {min_prefix}")));
    }
    let mut out = prefix.shifted(2).0;
    out.push(first);
    out.extend_from_slice(&labels[keep..]);
    Ok(Pattern(out))
}

/// Checks that `p` has the exact shape produced by [`path_v0`]/[`path_v1`].
pub fn has_constrained_shape(e: &SignTuple, p: &Pattern, target: i64, form: PathForm) -> bool {
    let t1 = first_block(e);
    let head = match form {
        PathForm::Standard => t1,
        PathForm::Variant => t1 + 1,
    };
    let labels = p.labels();
    let Some(&x) = labels.last() else { return false };
    let x_ok = match target {
        0 => x == 1,
        _ => (x == 1 || x == 2) && !(form == PathForm::Standard && t1 == 1 && x != 1),
    };
    if !x_ok || head < x {
        return false;
    }
    let run: Vec<usize> = (x..=head).rev().collect();
    if labels.len() < run.len() || labels[labels.len() - run.len()..] != run[..] {
        return false;
    }
    labels[..labels.len() - run.len()].iter().all(|&i| i > head + 1)
}

/// DOT rendering of the subgraph reachable from `e`.
pub fn to_dot(e: &SignTuple) -> String {
    let mut seen = HashSet::from([e.clone()]);
    let mut order = vec![e.clone()];
    let mut queue = VecDeque::from([e.clone()]);
    let mut lines = Vec::new();
    while let Some(v) = queue.pop_front() {
        for (label, w) in edges(&v) {
            lines.push(format!("  \"{}\" -> \"{}\" [label=\"{label}\"];", vertex_name(&v), vertex_name(&w)));
            if seen.insert(w.clone()) {
                order.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    let mut out = String::from("digraph signs {\n");
    for v in &order {
        out.push_str(&format!("  \"{}\";\n", vertex_name(v)));
    }
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn vertex_name(e: &SignTuple) -> String {
    if e.is_empty() {
        "()".to_owned()
    } else {
        e.to_string()
    }
}
