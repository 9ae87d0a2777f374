//! Generators for test corpora and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::LabelBits;
use crate::error::{Error, Result};
use crate::forest::RedundancyForest;
use crate::labels::{Cut, LabelSet};
use crate::monomial::Monomial;
use crate::tree::{Edge, LoadedTree};

/// The `n - 3` cuts of a random unrooted binary tree with leaves `1..=n`,
/// grown by inserting each leaf on a uniformly chosen edge.
pub fn random_binary_cuts<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Vec<Cut>> {
    let labels = LabelSet::range(n)?;
    if n < 4 {
        return Ok(Vec::new());
    }
    // nodes 0..n are leaves 1..=n, internal nodes follow
    let mut edges: Vec<(usize, usize)> = vec![(0, n as usize), (1, n as usize), (2, n as usize)];
    let mut next = n as usize + 1;
    for leaf in 3..n as usize {
        let k = rng.gen_range(0..edges.len());
        let (a, b) = edges[k];
        let mid = next;
        next += 1;
        edges[k] = (a, mid);
        edges.push((mid, b));
        edges.push((mid, leaf));
    }
    let mut adj = vec![Vec::new(); next];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut cuts = Vec::new();
    for &(a, b) in &edges {
        if a < n as usize || b < n as usize {
            continue;
        }
        let mut side = LabelBits::new();
        let mut stack = vec![(b, a)];
        while let Some((v, from)) = stack.pop() {
            if v < n as usize {
                side.insert(v as u32 + 1);
            }
            stack.extend(adj[v].iter().filter(|&&u| u != from).map(|&u| (u, v)));
        }
        cuts.push(Cut::new(&labels, side.iter())?);
    }
    Ok(cuts)
}

/// A random clever monomial over `1..=n`.
pub fn random_clever_monomial<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Monomial> {
    let cuts = random_binary_cuts(n, rng)?;
    Monomial::from_factors(LabelSet::range(n)?, cuts.into_iter().map(|c| (c, 1)))
}

/// A random proper tree monomial over `1..=n`: a random nonempty subset of
/// a random binary tree's cuts, with the extra degree spread at random.
pub fn random_proper_monomial<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Monomial> {
    random_tree_monomial(n, n.saturating_sub(3), rng)
}

/// A random tree monomial of the given degree (at least 1 if the tree has cuts).
pub fn random_tree_monomial<R: Rng + ?Sized>(n: u32, degree: u32, rng: &mut R) -> Result<Monomial> {
    let mut cuts = random_binary_cuts(n, rng)?;
    let labels = LabelSet::range(n)?;
    if cuts.is_empty() || degree == 0 {
        return Ok(Monomial::one(labels));
    }
    cuts.shuffle(rng);
    let distinct = rng.gen_range(1..=cuts.len().min(degree as usize));
    cuts.truncate(distinct);
    let mut exps = vec![1u32; distinct];
    for _ in distinct as u32..degree {
        exps[rng.gen_range(0..distinct)] += 1;
    }
    Monomial::from_factors(labels, cuts.into_iter().zip(exps))
}

/// The clever caterpillar `prod_{i=2}^{n-2} d{1..i | i+1..n}`.
pub fn caterpillar_monomial(n: u32) -> Result<Monomial> {
    let labels = LabelSet::range(n)?;
    let cuts = (2..n.saturating_sub(1)).map(|i| Cut::new(&labels, 1..=i).map(|c| (c, 1)));
    Monomial::from_factors(labels.clone(), cuts.collect::<Result<Vec<_>>>()?)
}

/// The sun-like tree with edge weights `w`: a center with `k - r + 3` labels
/// (`k` the weight sum) and `r` two-label leaves on edges of multiplicity
/// `w_i + 1`.
pub fn sun_like_tree(weights: &[u64]) -> Result<LoadedTree> {
    if weights.contains(&0) {
        return Err(Error::Precondition("sun-like edge weights must be positive".into()));
    }
    let k: u64 = weights.iter().sum();
    let r = weights.len() as u64;
    let center = (k + 3 - r) as u32;
    let mut vertices = vec![(1..=center).collect::<Vec<u32>>()];
    let mut edges = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        let a = center + 1 + 2 * i as u32;
        vertices.push(vec![a, a + 1]);
        let mult = u32::try_from(w + 1).map_err(|_| Error::Precondition("weight too large".into()))?;
        edges.push(Edge {
            ends: (0, i + 1),
            multiplicity: mult,
        });
    }
    LoadedTree::new(vertices, edges)
}

/// Every cut of `1..=n`, in canonical order.
pub fn all_cuts(n: u32) -> Result<Vec<Cut>> {
    let labels = LabelSet::range(n)?;
    if n > 24 {
        return Err(Error::CapExceeded {
            what: "n",
            value: n as usize,
            cap: 24,
        });
    }
    let mut out = Vec::new();
    // subsets containing label 1
    for mask in 0u64..1 << (n - 1) {
        let part: Vec<u32> = std::iter::once(1)
            .chain((0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 2))
            .collect();
        if part.len() >= 2 && part.len() + 2 <= n as usize {
            out.push(Cut::new(&labels, part)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Every proper tree monomial over `1..=n`.
pub fn all_proper_tree_monomials(n: u32) -> Result<Vec<Monomial>> {
    let labels = LabelSet::range(n)?;
    let cuts = all_cuts(n)?;
    let target = n.saturating_sub(3);
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    fn go(
        cuts: &[Cut],
        start: usize,
        left: u32,
        chosen: &mut Vec<(usize, u32)>,
        labels: &LabelSet,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if left == 0 {
            out.push(Monomial::from_factors(
                labels.clone(),
                chosen.iter().map(|&(i, e)| (cuts[i].clone(), e)),
            )?);
            return Ok(());
        }
        for i in start..cuts.len() {
            if chosen.iter().any(|&(j, _)| cuts[j].crosses(&cuts[i])) {
                continue;
            }
            for e in 1..=left {
                chosen.push((i, e));
                go(cuts, i + 1, left - e, chosen, labels, out)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    go(&cuts, 0, target, &mut chosen, &labels, &mut out)?;
    Ok(out)
}

/// A random forest on `nodes` vertices with weights in `0..=max_weight`,
/// built by attaching each vertex to an earlier one or starting a new tree.
pub fn random_forest<R: Rng + ?Sized>(nodes: usize, max_weight: u64, rng: &mut R) -> RedundancyForest {
    let weights: Vec<u64> = (0..nodes).map(|_| rng.gen_range(0..=max_weight)).collect();
    let mut edges = Vec::new();
    for v in 1..nodes {
        if rng.gen_bool(0.85) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    RedundancyForest::from_parts(&weights, &edges).expect("attachments form a forest")
}
