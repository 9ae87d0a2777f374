//! Brute-force checks of three multinomial identities and the counting map
//! `phi` behind them.
//!
//! Subsets of `X_r = {x_1, ..., x_r}` are bitmasks, bit `i` standing for
//! `x_{i+1}`.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::combinat::{binomial_signed, multinomial};
use crate::error::{Error, Result};

/// Largest `s` for which configurations are enumerated.
pub const FIBER_MAX_S: u64 = 10;

pub type XSet = u32;

/// `(m_1, ..., m_r)` with every `m_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    m: Vec<u64>,
    s: u64,
}

impl IdentityInstance {
    pub fn new(m: Vec<u64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Precondition("an instance needs r >= 1 parts".into()));
        }
        if m.len() > 31 {
            return Err(Error::CapExceeded {
                what: "r",
                value: m.len(),
                cap: 31,
            });
        }
        if m.contains(&0) {
            return Err(Error::Precondition(format!("parts must be positive, got {m:?}")));
        }
        let s = m.iter().sum();
        Ok(IdentityInstance { m, s })
    }

    pub fn r(&self) -> usize {
        self.m.len()
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// `g(x_1) = m_1 - 1`, `g(x_i) = m_i`; `i` is 0-based.
    pub fn g(&self, i: usize) -> u64 {
        if i == 0 {
            self.m[0] - 1
        } else {
            self.m[i]
        }
    }

    pub fn full(&self) -> XSet {
        (1 << self.r()) - 1
    }

    fn members(&self, b: XSet) -> impl Iterator<Item = usize> + '_ {
        (0..self.r()).filter(move |i| b >> i & 1 == 1)
    }

    /// `S(B)`, the sum of `g` over `B`.
    pub fn weight(&self, b: XSet) -> u64 {
        self.members(b).map(|i| self.g(i)).sum()
    }

    /// `S(B)! / prod_{x in B} g(x)!`, 1 for the empty set.
    pub fn bracket(&self, b: XSet) -> BigUint {
        let parts: Vec<u64> = self.members(b).map(|i| self.g(i)).collect();
        multinomial(&parts)
    }

    /// `C(s; m_1, ..., m_r)`
    pub fn multinomial(&self) -> BigUint {
        multinomial(&self.m)
    }
}

/// Both sides of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub variant: u8,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compares `C(s; m)` with the variant's sum over bipartitions `B_1 | B_2`
/// of `X_r`. All variants put `x_1` in `B_1`; variant 2 also puts `x_2` in
/// `B_2`, variant 3 puts `x_2, x_3` in `B_2`. With `v` the variant, each
/// term is `C(s - r + v, S(B_2) - |B_2| + v - 1) [B_1] [B_2]`.
pub fn check_identity(variant: u8, inst: &IdentityInstance) -> Result<IdentityCheck> {
    if !(1..=3).contains(&variant) {
        return Err(Error::Precondition(format!("unknown identity variant {variant}")));
    }
    let v = variant as usize;
    if inst.r() < v {
        return Err(Error::Precondition(format!(
            "variant {variant} needs r >= {v}, got r = {}",
            inst.r()
        )));
    }
    let r = inst.r();
    let forced: XSet = ((1 << v) - 1) & !1;
    let free = inst.full() & !((1 << v) - 1);
    let top = inst.s as i64 - r as i64 + v as i64;
    let mut rhs = BigUint::default();
    // iterate the subsets of `free`
    let mut sub = free;
    loop {
        let b2 = forced | sub;
        let b1 = inst.full() & !b2;
        let low = inst.weight(b2) as i64 - b2.count_ones() as i64 + v as i64 - 1;
        rhs += binomial_signed(top, low) * inst.bracket(b1) * inst.bracket(b2);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(IdentityCheck {
        variant,
        lhs: inst.multinomial(),
        rhs,
    })
}

/// Checks `C(s; m) = sum_i C(s - 1; m with m_i - 1)`, dropping terms with a
/// zero part decremented.
pub fn pascal_multinomial(s: u64, m: &[u64]) -> Result<bool> {
    if m.len() < 2 {
        return Err(Error::Precondition(format!("need at least two parts, got {}", m.len())));
    }
    if s == 0 || m.iter().sum::<u64>() != s {
        return Err(Error::Precondition(format!("parts {m:?} do not sum to s = {s} >= 1")));
    }
    let mut sum = BigUint::default();
    let mut parts = m.to_vec();
    for i in 0..parts.len() {
        if parts[i] == 0 {
            continue;
        }
        parts[i] -= 1;
        sum += multinomial(&parts);
        parts[i] += 1;
    }
    Ok(sum == multinomial(m))
}

/// An ordered partition `(P_1, ..., P_r)` of `{1, ..., s}` with `|P_i| = m_i`,
/// stored as the 0-based part index of each element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionConfig {
    part_of: Vec<usize>,
}

impl PartitionConfig {
    pub fn new(inst: &IdentityInstance, parts: &[Vec<u64>]) -> Result<Self> {
        if parts.len() != inst.r() {
            return Err(Error::Precondition(format!(
                "expected {} parts, got {}",
                inst.r(),
                parts.len()
            )));
        }
        let mut part_of = vec![usize::MAX; inst.s as usize];
        for (p, elems) in parts.iter().enumerate() {
            if elems.len() as u64 != inst.m[p] {
                return Err(Error::Precondition(format!(
                    "part {} has size {}, expected {}",
                    p + 1,
                    elems.len(),
                    inst.m[p]
                )));
            }
            for &e in elems {
                if e == 0 || e > inst.s || part_of[e as usize - 1] != usize::MAX {
                    return Err(Error::Precondition(format!("element {e} is out of range or repeated")));
                }
                part_of[e as usize - 1] = p;
            }
        }
        Ok(PartitionConfig { part_of })
    }

    /// 0-based part index of element `e` (1-based).
    pub fn part_of(&self, e: u64) -> usize {
        self.part_of[e as usize - 1]
    }

    pub fn parts(&self) -> Vec<Vec<u64>> {
        let r = self.part_of.iter().max().map_or(0, |&p| p + 1);
        let mut out = vec![Vec::new(); r];
        for (e, &p) in self.part_of.iter().enumerate() {
            out[p].push(e as u64 + 1);
        }
        out
    }
}

/// Every configuration of `inst`, in lexicographic order of the part vector.
pub fn configurations(inst: &IdentityInstance) -> Result<Vec<PartitionConfig>> {
    if inst.s > FIBER_MAX_S {
        return Err(Error::CapExceeded {
            what: "s",
            value: inst.s as usize,
            cap: FIBER_MAX_S as usize,
        });
    }
    let mut v: Vec<usize> = inst
        .m
        .iter()
        .enumerate()
        .flat_map(|(p, &k)| std::iter::repeat_n(p, k as usize))
        .collect();
    let mut out = Vec::new();
    loop {
        out.push(PartitionConfig { part_of: v.clone() });
        if !next_permutation(&mut v) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `phi`: starting from `B = {x_1}` and `A = L ∩ P_1` with `L = {2, ..., r}`,
/// repeatedly add `{x_a : a in A}` to `B` and replace `A` by `L ∩ P_A`.
pub fn phi(config: &PartitionConfig, r: usize) -> XSet {
    let in_l = |e: usize| (2..=r).contains(&e);
    let mut b: XSet = 1;
    // A as a mask over x indices
    let mut a: XSet = (2..=r)
        .filter(|&e| config.part_of[e - 1] == 0)
        .fold(0, |acc, e| acc | 1 << (e - 1));
    while a != 0 {
        b |= a;
        a = (1..=config.part_of.len())
            .filter(|&e| in_l(e) && a >> config.part_of[e - 1] & 1 == 1)
            .fold(0, |acc, e| acc | 1 << (e - 1));
    }
    b
}

/// `|phi^{-1}(B)|` for every `B` in the image.
pub fn fiber_counts(inst: &IdentityInstance) -> Result<BTreeMap<XSet, u64>> {
    let mut out = BTreeMap::new();
    for c in configurations(inst)? {
        *out.entry(phi(&c, inst.r())).or_insert(0) += 1;
    }
    Ok(out)
}

/// `f_r(m)`, the size of the fiber over all of `X_r`.
pub fn count_fiber(inst: &IdentityInstance) -> Result<u64> {
    Ok(fiber_counts(inst)?.get(&inst.full()).copied().unwrap_or(0))
}

/// `C(s - 1; m_1 - 1, m_2, ..., m_r)`
pub fn fiber_formula(inst: &IdentityInstance) -> BigUint {
    let parts: Vec<u64> = (0..inst.r()).map(|i| inst.g(i)).collect();
    multinomial(&parts)
}

/// `C(s - r + 1, S(B_2) - |B_2|) [B_1] [B_2]` with `B_2` the complement of `b1`.
pub fn fiber_law(inst: &IdentityInstance, b1: XSet) -> BigUint {
    let b2 = inst.full() & !b1;
    let top = inst.s as i64 - inst.r() as i64 + 1;
    let low = inst.weight(b2) as i64 - b2.count_ones() as i64;
    binomial_signed(top, low) * inst.bracket(b1) * inst.bracket(b2)
}

/// A configuration with `phi = b`, for any `b` containing `x_1`.
///
/// The labels of `b \ {x_1}` form a chain `q_1, ..., q_t` with `q_1 in P_1`
/// and `q_{j+1} in P_{q_j}`; every other label `i` of `L` sits in `P_i`.
/// The remaining elements fill the parts up to their sizes.
pub fn phi_preimage(inst: &IdentityInstance, b: XSet) -> Result<PartitionConfig> {
    let r = inst.r();
    if b & 1 == 0 || b & !inst.full() != 0 {
        return Err(Error::Precondition(format!(
            "{b:#b} is not a subset of X_{r} containing x_1"
        )));
    }
    let mut part_of = vec![usize::MAX; inst.s as usize];
    let mut holder = 0;
    for q in (2..=r).filter(|&q| b >> (q - 1) & 1 == 1) {
        part_of[q - 1] = holder;
        holder = q - 1;
    }
    for i in (2..=r).filter(|&i| b >> (i - 1) & 1 == 0) {
        part_of[i - 1] = i - 1;
    }
    let mut room: Vec<u64> = inst.m.clone();
    for &p in part_of.iter().filter(|&&p| p != usize::MAX) {
        room[p] -= 1;
    }
    let mut p = 0;
    for slot in part_of.iter_mut().filter(|p| **p == usize::MAX) {
        while room[p] == 0 {
            p += 1;
        }
        *slot = p;
        room[p] -= 1;
    }
    Ok(PartitionConfig { part_of })
}
