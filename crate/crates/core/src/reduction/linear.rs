use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::labels::Cut;
use crate::monomial::Monomial;
use crate::tree::{ClusterKind, LoadedTree};

use super::cutting::is_balanced_at;
use super::sum::{epsilon_cuts, Quadruple, SignedSum};

/// Default largest `n` accepted by [`oracle_value`].
pub const DEFAULT_ORACLE_CAP: usize = 9;

/// Cluster index of every label of `side` as seen from `v`, skipping the
/// cluster through `skip_edge`.
fn cluster_index(t: &LoadedTree, v: usize, skip_edge: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for (idx, c) in t.clusters(v).into_iter().enumerate() {
        if c.kind == (ClusterKind::Proper { edge: skip_edge }) {
            continue;
        }
        out.extend(c.labels.iter().map(|l| (l, idx)));
    }
    out.sort_unstable();
    out
}

fn cluster_pairs(t: &LoadedTree, v: usize, edge: usize) -> Vec<(u32, u32)> {
    let idx = cluster_index(t, v, edge);
    let mut out = Vec::new();
    for (a, &(la, ca)) in idx.iter().enumerate() {
        for &(lb, cb) in &idx[a + 1..] {
            if ca != cb {
                out.push((la, lb));
            }
        }
    }
    out
}

/// Endpoints of `edge` as `(on part_i side, on part_j side)` together with its cut.
fn oriented(t: &LoadedTree, edge: usize) -> Result<(Cut, usize, usize)> {
    let cut = t.edge_cut(edge)?;
    let u = t.endpoint_on_side(edge, cut.part_i());
    let v = t.edges()[edge].other(u);
    Ok((cut, u, v))
}

/// Every quadruple `ij|kl` with `i, j` in distinct clusters of the
/// endpoint on the `part_i` side and `k, l` in distinct clusters of the
/// other endpoint, in lexicographic order.
pub fn proper_quadruples(t: &LoadedTree, edge: usize) -> Result<Vec<Quadruple>> {
    let (_, u, v) = oriented(t, edge)?;
    let left = cluster_pairs(t, u, edge);
    let right = cluster_pairs(t, v, edge);
    let mut out = Vec::with_capacity(left.len() * right.len());
    for &(i, j) in &left {
        for &(k, l) in &right {
            out.push(Quadruple { i, j, k, l });
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The lexicographically smallest entry of [`proper_quadruples`].
pub fn smallest_proper_quadruple(t: &LoadedTree, edge: usize) -> Result<Quadruple> {
    let (_, u, v) = oriented(t, edge)?;
    let pick = |w: usize| -> (u32, u32) {
        let idx = cluster_index(t, w, edge);
        let (first, c) = idx[0];
        let second = idx
            .iter()
            .find(|(_, c2)| *c2 != c)
            .map(|(l, _)| *l)
            .expect("stable endpoints have two further clusters");
        (first, second)
    };
    let (i, j) = pick(u);
    let (k, l) = pick(v);
    Ok(Quadruple { i, j, k, l })
}

/// True when `q` is proper for `edge`, in either orientation of its pairs.
pub fn is_proper_quadruple(t: &LoadedTree, edge: usize, q: &Quadruple) -> Result<bool> {
    let (cut, u, v) = oriented(t, edge)?;
    let (near, far) = if cut.part_i().contains(q.i) {
        ((q.i, q.j), (q.k, q.l))
    } else {
        ((q.k, q.l), (q.i, q.j))
    };
    if !cut.separates(near.0, near.1, far.0, far.1) || !cut.part_i().contains(near.0) {
        return Ok(false);
    }
    let distinct = |w: usize, a: u32, b: u32| {
        let idx = cluster_index(t, w, edge);
        let of = |l: u32| idx.iter().find(|(x, _)| *x == l).map(|(_, c)| *c);
        matches!((of(a), of(b)), (Some(x), Some(y)) if x != y)
    };
    Ok(distinct(u, near.0, near.1) && distinct(v, far.0, far.1))
}

/// One linear reduction of `cut` in `m` through `eps_{ij|kl}`.
///
/// One occurrence of `cut` is traded for minus the other cuts of the
/// relation; every product that crosses a remaining factor vanishes.
pub fn linear_reduction_step(m: &Monomial, cut: &Cut, q: &Quadruple) -> Result<SignedSum> {
    let exponent = m.exponent(cut);
    if exponent < 2 {
        return Err(Error::ExponentTooLow {
            cut: cut.to_string(),
            exponent,
        });
    }
    Quadruple::new(q.i, q.j, q.k, q.l)?;
    let t = LoadedTree::from_monomial(m)?;
    let edge = t.find_edge(cut).expect("every factor is an edge");
    if !is_proper_quadruple(&t, edge, q)? {
        return Err(Error::ImproperQuadruple(q.as_array(), cut.to_string()));
    }
    step_unchecked(m, cut, q)
}

fn step_unchecked(m: &Monomial, cut: &Cut, q: &Quadruple) -> Result<SignedSum> {
    let base = m.without_one(cut);
    let mut out = SignedSum::new(m.labels().clone());
    for d in epsilon_cuts(m.labels(), q)? {
        if &d == cut || !base.compatible_with(&d) {
            continue;
        }
        out.add(base.with_one(&d), -BigInt::one());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub cap: usize,
    /// Drop terms whose new edge is unbalanced; those have value zero.
    pub filter_balanced: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_ORACLE_CAP,
            filter_balanced: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub value: BigInt,
    /// Reduction rounds until every term was clever.
    pub rounds: usize,
    /// Largest number of live terms in one round.
    pub peak_terms: usize,
}

/// The integral value by repeated linear reduction to clever monomials.
///
/// Each round reduces every non-clever term once, at its canonical-minimal
/// repeated cut with the smallest proper quadruple, and merges equal terms
/// before the next round. Non-tree and wrong-degree inputs give 0 without
/// consulting the cap.
pub fn oracle_value(m: &Monomial, opts: OracleOptions) -> Result<BigInt> {
    oracle_report(m, opts).map(|r| r.value)
}

pub fn oracle_report(m: &Monomial, opts: OracleOptions) -> Result<OracleReport> {
    let mut report = OracleReport {
        value: BigInt::zero(),
        rounds: 0,
        peak_terms: 1,
    };
    if !m.has_top_degree() || !m.is_tree_monomial() {
        return Ok(report);
    }
    if m.n() > opts.cap {
        return Err(Error::CapExceeded {
            what: "n",
            value: m.n(),
            cap: opts.cap,
        });
    }
    let mut level = SignedSum::new(m.labels().clone());
    level.add(m.clone(), BigInt::one());
    while !level.is_empty() {
        report.peak_terms = report.peak_terms.max(level.len());
        let mut next = SignedSum::new(m.labels().clone());
        let mut reduced = false;
        for (term, coef) in level.terms() {
            if term.is_clever() {
                report.value += coef;
                continue;
            }
            reduced = true;
            let (cut, _) = term
                .factors()
                .find(|(_, e)| *e >= 2)
                .expect("a non-clever top-degree tree monomial repeats a factor");
            let t = LoadedTree::from_monomial(term)?;
            let edge = t.find_edge(cut).expect("factor is an edge");
            let q = smallest_proper_quadruple(&t, edge)?;
            for (out, c) in step_unchecked(term, cut, &q)?.terms() {
                if opts.filter_balanced && !survives(out, term)? {
                    continue;
                }
                next.add(out.clone(), c * coef);
            }
        }
        if reduced {
            report.rounds += 1;
        }
        level = next;
    }
    Ok(report)
}

/// Whether the edge added by a reduction step is balanced in `out`.
fn survives(out: &Monomial, from: &Monomial) -> Result<bool> {
    let Some((new, _)) = out.factors().find(|(c, e)| *e > from.exponent(c)) else {
        return Ok(true);
    };
    if out.exponent(new) != 1 {
        return Ok(true);
    }
    let t = LoadedTree::from_monomial(out)?;
    let edge = t.find_edge(new).expect("factor is an edge");
    is_balanced_at(&t, edge)
}
