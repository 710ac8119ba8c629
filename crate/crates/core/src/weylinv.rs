//! The hyperoctahedral group `S_n ⋉ Ξ_n` and its involutions.
//!
//! An element `w = τ𝔠` acts on `ℝⁿ` by `w(e_i) = ±e_{τ(i)}`, with the minus
//! sign exactly when `i ∈ 𝔠`. Simple roots are of type `C_n`:
//! `α_i = e_i - e_{i+1}` for `i < n` and `α_n = 2e_n`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, validation, Error, Result};

pub const MAX_RANK: usize = 16;

/// A subset of `{1, ..., n}`, bit `i - 1` standing for `i`.
pub type IndexSet = u32;

fn members(set: IndexSet, n: usize) -> Vec<usize> {
    (1..=n).filter(|&i| set >> (i - 1) & 1 == 1).collect()
}

fn bit(i: usize) -> IndexSet {
    1 << (i - 1)
}

/// A signed permutation `(τ, 𝔠)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SignedPermutationWire", into = "SignedPermutationWire")]
pub struct SignedPermutation {
    /// `perm[i - 1] = τ(i)`, 1-based values.
    perm: Vec<u8>,
    c: IndexSet,
}

#[derive(Serialize, Deserialize)]
struct SignedPermutationWire {
    n: usize,
    tau: Vec<usize>,
    c: Vec<usize>,
}

impl TryFrom<SignedPermutationWire> for SignedPermutation {
    type Error = Error;
    fn try_from(w: SignedPermutationWire) -> Result<Self> {
        if w.tau.len() != w.n {
            return Err(validation("signed permutation", format!("tau has {} entries, n = {}", w.tau.len(), w.n)));
        }
        let mut c = 0;
        for &i in &w.c {
            if i == 0 || i > w.n {
                return Err(validation("signed permutation", format!("c contains {i} outside 1..={}", w.n)));
            }
            c |= bit(i);
        }
        SignedPermutation::new(w.tau, c)
    }
}

impl From<SignedPermutation> for SignedPermutationWire {
    fn from(w: SignedPermutation) -> Self {
        SignedPermutationWire { n: w.n(), tau: w.tau(), c: w.c_members() }
    }
}

impl SignedPermutation {
    /// Builds `(τ, 𝔠)` from a 1-based one-line permutation and a bitmask.
    pub fn new(tau: Vec<usize>, c: IndexSet) -> Result<Self> {
        let n = tau.len();
        if n == 0 || n > MAX_RANK {
            return Err(validation("signed permutation", format!("rank {n} outside 1..={MAX_RANK}")));
        }
        let mut hit = vec![false; n];
        for &t in &tau {
            if t == 0 || t > n || std::mem::replace(&mut hit[t - 1], true) {
                return Err(validation("signed permutation", format!("{tau:?} is not a permutation")));
            }
        }
        if c >> n != 0 {
            return Err(validation("signed permutation", format!("c mask {c:#b} exceeds rank {n}")));
        }
        Ok(SignedPermutation { perm: tau.into_iter().map(|t| t as u8).collect(), c })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (1..=n as u8).collect(), c: 0 }
    }

    /// The pure sign change `(id, S)`.
    pub fn sign_change(n: usize, set: IndexSet) -> Self {
        SignedPermutation { perm: (1..=n as u8).collect(), c: set }
    }

    /// The simple reflection `s_{α_i}`, `1 ≤ i ≤ n`.
    pub fn simple_reflection(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "root index {i} outside 1..={n}");
        if i == n {
            Self::sign_change(n, bit(n))
        } else {
            let mut w = Self::identity(n);
            w.perm.swap(i - 1, i);
            w
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// `τ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.perm[i - 1] as usize
    }

    pub fn tau(&self) -> Vec<usize> {
        self.perm.iter().map(|&t| t as usize).collect()
    }

    pub fn c(&self) -> IndexSet {
        self.c
    }

    pub fn c_members(&self) -> Vec<usize> {
        members(self.c, self.n())
    }

    fn map_set(&self, set: IndexSet) -> IndexSet {
        members(set, self.n()).into_iter().fold(0, |acc, i| acc | bit(self.image(i)))
    }

    fn preimage_set(&self, set: IndexSet) -> IndexSet {
        (1..=self.n()).filter(|&i| set & bit(self.image(i)) != 0).fold(0, |acc, i| acc | bit(i))
    }

    /// `(τ₁, 𝔠₁)(τ₂, 𝔠₂) = (τ₁τ₂, τ₂⁻¹(𝔠₁) △ 𝔠₂)`.
    pub fn multiply(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.n() != other.n() {
            return Err(Error::MismatchedRank(self.n(), other.n()));
        }
        let perm = other.perm.iter().map(|&j| self.perm[j as usize - 1]).collect();
        Ok(SignedPermutation { perm, c: other.preimage_set(self.c) ^ other.c })
    }

    fn mul(&self, other: &SignedPermutation) -> SignedPermutation {
        self.multiply(other).expect("ranks agree")
    }

    /// `(τ, 𝔠)⁻¹ = (τ⁻¹, τ(𝔠))`.
    pub fn inverse(&self) -> SignedPermutation {
        let mut perm = vec![0u8; self.n()];
        for (i, &t) in self.perm.iter().enumerate() {
            perm[t as usize - 1] = i as u8 + 1;
        }
        SignedPermutation { perm, c: self.map_set(self.c) }
    }

    pub fn is_identity(&self) -> bool {
        self.c == 0 && self.perm.iter().enumerate().all(|(i, &t)| t as usize == i + 1)
    }

    /// `τ² = id` and `τ(𝔠) = 𝔠`.
    pub fn is_involution(&self) -> bool {
        (1..=self.n()).all(|i| self.image(self.image(i)) == i) && self.map_set(self.c) == self.c
    }

    /// The action on a coordinate vector.
    pub fn act(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; self.n()];
        for i in 1..=self.n() {
            let sign = if self.c & bit(i) != 0 { -1 } else { 1 };
            out[self.image(i) - 1] += sign * v[i - 1];
        }
        out
    }

    pub fn c_sets(&self) -> CSets {
        let n = self.n();
        let mut sets = CSets::default();
        for i in 1..=n {
            let t = self.image(i);
            if t == i {
                if self.c & bit(i) != 0 {
                    sets.c_plus |= bit(i);
                } else {
                    sets.c_minus |= bit(i);
                }
            } else {
                sets.c_neq |= bit(i);
                if i < t {
                    sets.c_less |= bit(i);
                }
            }
        }
        sets
    }

    /// `σ (id, S) σ⁻¹`, read as a subset; equals `π_σ(S)`.
    pub fn conjugate_set(&self, set: IndexSet) -> IndexSet {
        let g = self.mul(&Self::sign_change(self.n(), set)).mul(&self.inverse());
        debug_assert!(g.perm.iter().enumerate().all(|(i, &t)| t as usize == i + 1));
        g.c
    }

    pub fn conjugate(&self, w: &SignedPermutation) -> Result<SignedPermutation> {
        Ok(self.multiply(w)?.mul(&self.inverse()))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {{{}}})", self.tau().iter().join(" "), self.c_members().iter().join(","))
    }
}

/// The `𝔠`-set decomposition of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CSets {
    pub c_plus: IndexSet,
    pub c_minus: IndexSet,
    pub c_neq: IndexSet,
    pub c_less: IndexSet,
}

/// The simple root `α_i` of type `C_n` as a coordinate vector.
pub fn simple_root(n: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; n];
    if i == n {
        v[n - 1] = 2;
    } else {
        v[i - 1] = 1;
        v[i] = -1;
    }
    v
}

/// Every element of the group of rank `n`.
pub fn all_elements(n: usize) -> Vec<SignedPermutation> {
    (1..=n)
        .permutations(n)
        .flat_map(|tau| {
            (0..1u32 << n).map(move |c| SignedPermutation { perm: tau.iter().map(|&t| t as u8).collect(), c })
        })
        .collect()
}

pub fn all_involutions(n: usize) -> Vec<SignedPermutation> {
    all_elements(n).into_iter().filter(|w| w.is_involution()).collect()
}

/// Products of pairwise disjoint simple transpositions in `S_k`, as sets of
/// left endpoints `i` of `(i, i+1)`, in increasing bitmask order.
fn disjoint_simple_transpositions(k: usize) -> Vec<IndexSet> {
    if k < 2 {
        return vec![0];
    }
    (0..1u32 << (k - 1)).filter(|m| m & (m >> 1) == 0).collect()
}

/// The minimal involutions `ρ𝔠_{k,n}` for `0 ≤ k ≤ n`, with `𝔠_{k,n} = {k+1..n}`.
pub fn minimal_involutions(n: usize) -> Result<Vec<SignedPermutation>> {
    if n == 0 || n > 8 {
        return Err(precondition("minimal involutions", format!("rank {n} outside 1..=8")));
    }
    let mut out = Vec::new();
    for k in 0..=n {
        let tail: IndexSet = ((k + 1)..=n).fold(0, |acc, i| acc | bit(i));
        for rho in disjoint_simple_transpositions(k) {
            let mut w = SignedPermutation::sign_change(n, tail);
            for i in members(rho, k) {
                w.perm.swap(i - 1, i);
            }
            out.push(w);
        }
    }
    Ok(out)
}

/// Whether `w = ρ𝔠_{k,n}` for some `k` and some product `ρ` of disjoint
/// simple transpositions of `S_k`.
pub fn is_minimal(w: &SignedPermutation) -> bool {
    let n = w.n();
    let k = n - w.c.count_ones() as usize;
    let tail: IndexSet = ((k + 1)..=n).fold(0, |acc, i| acc | bit(i));
    if w.c != tail {
        return false;
    }
    let mut i = 1;
    while i <= n {
        let t = w.image(i);
        if t == i {
            i += 1;
        } else if t == i + 1 && i + 1 <= k && w.image(i + 1) == i {
            i += 2;
        } else {
            return false;
        }
    }
    true
}

/// Labeled edges `w →α s_α w s_α` for the simple roots with `wα ≠ ±α`.
pub fn gw_edges(w: &SignedPermutation) -> Result<Vec<(usize, SignedPermutation)>> {
    if !w.is_involution() {
        return Err(precondition("involution graph", format!("{w} is not an involution")));
    }
    let n = w.n();
    let mut out = Vec::new();
    for i in 1..=n {
        let alpha = simple_root(n, i);
        let image = w.act(&alpha);
        let neg: Vec<i32> = alpha.iter().map(|x| -x).collect();
        if image != alpha && image != neg {
            let s = SignedPermutation::simple_reflection(n, i);
            out.push((i, s.mul(w).mul(&s)));
        }
    }
    Ok(out)
}

/// A conjugation from an involution to a minimal one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerPath {
    pub sigma: SignedPermutation,
    pub w_min: SignedPermutation,
    pub path: Vec<usize>,
}

/// Lexicographically least shortest path in the involution graph from `w`
/// to a minimal involution, with its conjugator `σ = s_{α_k} ⋯ s_{α_1}`.
pub fn springer_path(w: &SignedPermutation) -> Result<SpringerPath> {
    if !w.is_involution() || w.n() > 8 {
        return Err(precondition("springer path", format!("{w} is not an involution of rank ≤ 8")));
    }
    let mut parent: HashMap<SignedPermutation, Option<(SignedPermutation, usize)>> =
        HashMap::from([(w.clone(), None)]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        if is_minimal(&v) {
            let mut path = Vec::new();
            let mut cur = v.clone();
            while let Some(Some((prev, label))) = parent.get(&cur) {
                path.push(*label);
                cur = prev.clone();
            }
            path.reverse();
            let n = w.n();
            let sigma = path
                .iter()
                .fold(SignedPermutation::identity(n), |acc, &i| SignedPermutation::simple_reflection(n, i).mul(&acc));
            return Ok(SpringerPath { sigma, w_min: v, path });
        }
        for (label, next) in gw_edges(&v)? {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((v.clone(), label)));
                queue.push_back(next);
            }
        }
    }
    Err(Error::Internal(format!("no minimal involution reachable from {w}")))
}

/// DOT rendering of the involution graph of rank `n ≤ 4`.
pub fn to_dot(n: usize) -> Result<String> {
    if n == 0 || n > 4 {
        return Err(precondition("involution graph export", format!("rank {n} outside 1..=4")));
    }
    let invs = all_involutions(n);
    let mut out = String::from("digraph involutions {\n");
    for w in &invs {
        let shape = if is_minimal(w) { "box" } else { "ellipse" };
        out.push_str(&format!("  \"{w}\" [shape={shape}];\n"));
    }
    for w in &invs {
        for (label, v) in gw_edges(w)? {
            out.push_str(&format!("  \"{w}\" -> \"{v}\" [label=\"{label}\"];\n"));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
