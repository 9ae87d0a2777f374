//! Redundancy forests and the integral value of a monomial.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::{binomial, multinomial};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::tree::LoadedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Vertex(usize),
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub weight: u64,
    pub origin: Origin,
}

/// A vertex-weighted forest. Built from a loaded tree by subdividing each
/// edge (the midpoint carries the edge weight) and, for the redundancy
/// forest proper, deleting every weight-zero node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyForest {
    nodes: Vec<Node>,
    adjacency: Vec<Vec<usize>>,
}

impl RedundancyForest {
    /// A forest from explicit weights and edges. Origins are set to `Vertex(i)`.
    pub fn from_parts(weights: &[u64], edges: &[(usize, usize)]) -> Result<Self> {
        let nodes = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Node {
                weight: w,
                origin: Origin::Vertex(i),
            })
            .collect();
        Self::build(nodes, edges)
    }

    fn build(nodes: Vec<Node>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = nodes.len();
        let mut adjacency = vec![Vec::new(); n];
        // union-find to reject cycles
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidTree(format!("forest edge ({a},{b}) is invalid")));
            }
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra == rb {
                return Err(Error::InvalidTree("forest edges contain a cycle".into()));
            }
            root[ra] = rb;
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        Ok(RedundancyForest { nodes, adjacency })
    }

    /// Every edge subdivided; nothing deleted.
    pub fn redundancy_tree(t: &LoadedTree) -> Self {
        let nv = t.vertex_count();
        let mut nodes: Vec<Node> = (0..nv)
            .map(|v| Node {
                weight: t.vertex_weight(v),
                origin: Origin::Vertex(v),
            })
            .collect();
        let mut edges = Vec::with_capacity(2 * t.edge_count());
        for (id, e) in t.edges().iter().enumerate() {
            let mid = nodes.len();
            nodes.push(Node {
                weight: t.edge_weight(id),
                origin: Origin::Edge(id),
            });
            edges.push((e.ends.0, mid));
            edges.push((mid, e.ends.1));
        }
        Self::build(nodes, &edges).expect("subdivided tree is a tree")
    }

    /// The redundancy tree with all weight-zero nodes and their edges removed.
    #[allow(clippy::self_named_constructors)]
    pub fn redundancy_forest(t: &LoadedTree) -> Self {
        Self::redundancy_tree(t).without_zero_weights()
    }

    pub fn without_zero_weights(&self) -> Self {
        let mut index = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            if node.weight > 0 {
                index[i] = nodes.len();
                nodes.push(node.clone());
            }
        }
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .filter(|(i, _)| index[*i] != usize::MAX)
            .map(|(_, adj)| {
                adj.iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        RedundancyForest { nodes, adjacency }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, adj) in self.adjacency.iter().enumerate() {
            for &b in adj {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Node sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in &self.adjacency[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The value with the default leaf order (smallest id first).
    pub fn value(&self) -> BigUint {
        self.value_by(|c| *c.iter().next().expect("nonempty"))
    }

    /// The value, removing leaves in the order chosen by `pick`.
    ///
    /// `pick` receives the current nodes of degree at most one and must
    /// return one of them. A leaf heavier than its neighbor makes the whole
    /// value zero; otherwise the neighbor's weight `c` drops by the leaf
    /// weight `a` and the value picks up `C(c, a)`. A node left isolated
    /// contributes 1 if its weight is zero and kills the value otherwise.
    pub fn value_by(&self, mut pick: impl FnMut(&BTreeSet<usize>) -> usize) -> BigUint {
        let n = self.nodes.len();
        let mut weight: Vec<u64> = self.nodes.iter().map(|x| x.weight).collect();
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| degree[i] <= 1).collect();
        let mut acc = BigUint::one();
        while !ready.is_empty() {
            let l = pick(&ready);
            assert!(ready.remove(&l), "picked node {l} is not a leaf");
            removed[l] = true;
            if degree[l] == 0 {
                if weight[l] != 0 {
                    return BigUint::zero();
                }
                continue;
            }
            let p = *self.adjacency[l]
                .iter()
                .find(|&&u| !removed[u])
                .expect("leaf has a live neighbor");
            if weight[l] > weight[p] {
                return BigUint::zero();
            }
            if weight[l] > 0 {
                acc *= binomial(weight[p], weight[l]);
                weight[p] -= weight[l];
            }
            degree[p] -= 1;
            if degree[p] <= 1 {
                ready.insert(p);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// Degree differs from `n - 3`.
    ImproperDegree,
    /// Two factors fulfill the quadratic relation.
    ZeroByQuadratic,
    Clever,
    General,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ImproperDegree => "improper-degree",
            Classification::ZeroByQuadratic => "zero-by-quadratic",
            Classification::Clever => "clever",
            Classification::General => "general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralValue {
    pub value: BigInt,
    pub sign: i8,
    pub magnitude: BigUint,
    pub proper: bool,
    pub classification: Classification,
}

impl IntegralValue {
    fn zero(proper: bool, classification: Classification) -> Self {
        IntegralValue {
            value: BigInt::zero(),
            sign: 1,
            magnitude: BigUint::zero(),
            proper,
            classification,
        }
    }

    fn signed(sign: i8, magnitude: BigUint, classification: Classification) -> Self {
        let s = if magnitude.is_zero() {
            Sign::NoSign
        } else if sign < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        };
        IntegralValue {
            value: BigInt::from_biguint(s, magnitude.clone()),
            sign,
            magnitude,
            proper: true,
            classification,
        }
    }
}

/// `(-1)^(sum of edge weights)`
pub fn sign_of(t: &LoadedTree) -> i8 {
    let s: u64 = (0..t.edge_count()).map(|e| t.edge_weight(e)).sum();
    if s.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The value of a loaded tree: zero unless proper, else the signed forest value.
pub fn tree_value(t: &LoadedTree) -> BigInt {
    if !t.is_proper() {
        return BigInt::zero();
    }
    let mag = RedundancyForest::redundancy_forest(t).value();
    let v = BigInt::from(mag);
    if sign_of(t) < 0 {
        -v
    } else {
        v
    }
}

/// Wall-clock time spent in each stage of [`integral_value_timed`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimes {
    /// Degree check, quadratic-relation filter and clever test.
    pub filter: Duration,
    pub tree: Duration,
    pub forest: Duration,
}

/// The integral value of a monomial.
pub fn integral_value(m: &Monomial) -> IntegralValue {
    integral_value_timed(m).0
}

pub fn integral_value_timed(m: &Monomial) -> (IntegralValue, StageTimes) {
    let mut times = StageTimes::default();
    let start = Instant::now();
    let early = if !m.has_top_degree() {
        Some(IntegralValue::zero(false, Classification::ImproperDegree))
    } else if !m.is_tree_monomial() {
        Some(IntegralValue::zero(true, Classification::ZeroByQuadratic))
    } else if m.is_clever() {
        Some(IntegralValue::signed(1, BigUint::one(), Classification::Clever))
    } else {
        None
    };
    times.filter = start.elapsed();
    if let Some(v) = early {
        return (v, times);
    }
    let start = Instant::now();
    let t = LoadedTree::from_monomial(m).expect("nonempty tree monomial of top degree");
    times.tree = start.elapsed();
    let start = Instant::now();
    let mag = RedundancyForest::redundancy_forest(&t).value();
    let v = IntegralValue::signed(sign_of(&t), mag, Classification::General);
    times.forest = start.elapsed();
    (v, times)
}

/// `(-1)^k * k! / prod(w_i!)` for a sun-like tree with edge weights `w`.
pub fn sun_like_value(k: u64, weights: &[u64]) -> Result<BigInt> {
    if weights.iter().sum::<u64>() != k {
        return Err(Error::NotProper(format!(
            "center weight {k} differs from the edge weight sum {}",
            weights.iter().sum::<u64>()
        )));
    }
    if weights.contains(&0) {
        return Err(Error::Precondition("sun-like edge weights must be positive".into()));
    }
    let v = BigInt::from(multinomial(weights));
    Ok(if k.is_multiple_of(2) { v } else { -v })
}
