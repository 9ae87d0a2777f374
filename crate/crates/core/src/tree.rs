//! Loaded trees: vertex label sets, edge multiplicities, and the
//! correspondence with tree monomials.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::LabelBits;
use crate::error::{Error, Result};
use crate::labels::{check_label, Cut, LabelSet};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub ends: (usize, usize),
    pub multiplicity: u32,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }
}

/// A tree whose vertices carry disjoint label sets covering `N` and whose
/// edges carry positive multiplicities, with `deg(v) + |h(v)| >= 3` everywhere.
///
/// Vertex and edge ids are indices and carry no meaning beyond one value.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct LoadedTree {
    labels: LabelSet,
    vertices: Vec<LabelBits>,
    edges: Vec<Edge>,
    /// `adjacency[v]` lists `(neighbor, edge id)`.
    adjacency: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    vertices: Vec<Vec<u32>>,
    edges: Vec<Edge>,
}

impl TryFrom<RawTree> for LoadedTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        LoadedTree::new(raw.vertices, raw.edges)
    }
}

impl From<LoadedTree> for RawTree {
    fn from(t: LoadedTree) -> Self {
        RawTree {
            vertices: t.vertices.iter().map(LabelBits::to_vec).collect(),
            edges: t.edges,
        }
    }
}

/// Vertex and edge weights, `w(v) = deg(v) + |h(v)| - 3` and `w(e) = m(e) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTree {
    pub vertex_weights: Vec<u64>,
    pub edge_weights: Vec<u64>,
}

impl WeightedTree {
    pub fn vertex_sum(&self) -> u64 {
        self.vertex_weights.iter().sum()
    }

    pub fn edge_sum(&self) -> u64 {
        self.edge_weights.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClusterKind {
    Singleton,
    /// The labels beyond the given incident edge.
    Proper {
        edge: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub owner: usize,
    pub labels: LabelBits,
    pub kind: ClusterKind,
}

impl LoadedTree {
    /// Builds and validates a loaded tree. `vertices[v]` is `h(v)`.
    pub fn new(vertices: Vec<Vec<u32>>, edges: Vec<Edge>) -> Result<Self> {
        let mut bits = Vec::with_capacity(vertices.len());
        for h in vertices {
            let mut b = LabelBits::new();
            for l in h {
                check_label(l)?;
                if !b.insert(l) {
                    return Err(Error::InvalidTree(format!("label {l} repeated in one vertex")));
                }
            }
            bits.push(b);
        }
        Self::from_bits(bits, edges)
    }

    pub(crate) fn from_bits(vertices: Vec<LabelBits>, edges: Vec<Edge>) -> Result<Self> {
        let nv = vertices.len();
        if nv == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != nv {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                nv,
                nv - 1,
                edges.len()
            )));
        }
        let mut all = LabelBits::new();
        let mut total = 0;
        for h in &vertices {
            if all.intersects(h) {
                return Err(Error::InvalidTree(format!(
                    "vertex label sets overlap at {:?}",
                    all.intersection(h)
                )));
            }
            all.union_with(h);
            total += h.len();
        }
        debug_assert_eq!(total, all.len());
        let labels = LabelSet::from_bits(all)?;

        let mut adjacency = vec![Vec::new(); nv];
        for (id, e) in edges.iter().enumerate() {
            let (a, b) = e.ends;
            if a >= nv || b >= nv || a == b {
                return Err(Error::InvalidTree(format!("edge {id} has bad ends {:?}", e.ends)));
            }
            if e.multiplicity == 0 {
                return Err(Error::InvalidTree(format!("edge {id} has multiplicity 0")));
            }
            adjacency[a].push((b, id));
            adjacency[b].push((a, id));
        }
        let t = LoadedTree {
            labels,
            vertices,
            edges,
            adjacency,
        };
        if t.bfs_order(0).len() != nv {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        for v in 0..nv {
            if t.degree(v) + t.vertices[v].len() < 3 {
                return Err(Error::InvalidTree(format!(
                    "vertex {v} has degree {} and {} labels",
                    t.degree(v),
                    t.vertices[v].len()
                )));
            }
        }
        Ok(t)
    }

    /// The tree of a tree monomial.
    ///
    /// The canonical-minimal cut `{I, J}` is split first; every other factor
    /// has exactly one part strictly inside `I` or `J`, and those parts plus
    /// `I` and `J` form two containment forests whose Hasse diagrams, joined
    /// by an `I`-`J` edge, give the tree.
    pub fn from_monomial(m: &Monomial) -> Result<Self> {
        if m.is_empty() {
            if m.n() == 3 {
                return Self::from_bits(vec![m.labels().bits().clone()], vec![]);
            }
            return Err(Error::EmptyMonomialBadN(m.n()));
        }
        if let Some((a, b)) = m.crossing_pair() {
            return Err(Error::NotATreeMonomial(a.to_string(), b.to_string()));
        }
        let first = m.factors().next().expect("nonempty").0;
        Self::split_at(m, first)
    }

    /// As [`LoadedTree::from_monomial`], splitting `first` first instead of
    /// the canonical-minimal cut. The result is the same tree up to ids.
    pub fn from_monomial_at(m: &Monomial, first: &Cut) -> Result<Self> {
        if m.exponent(first) == 0 {
            return Err(Error::InvalidCut(format!("{first} is not a factor")));
        }
        if let Some((a, b)) = m.crossing_pair() {
            return Err(Error::NotATreeMonomial(a.to_string(), b.to_string()));
        }
        Self::split_at(m, first)
    }

    fn split_at(m: &Monomial, first: &Cut) -> Result<Self> {
        let first_e = m.exponent(first);
        let (root_i, root_j) = (first.part_i().clone(), first.part_j().clone());

        // parts[p]: (label set, exponent of the edge to its parent)
        let mut parts: Vec<(LabelBits, u32)> = vec![(root_i.clone(), 0), (root_j.clone(), 0)];
        for (cut, e) in m.factors().filter(|(c, _)| *c != first) {
            let inner = [cut.part_i(), cut.part_j()]
                .into_iter()
                .find(|p| (p.is_subset(&root_i) && **p != root_i) || (p.is_subset(&root_j) && **p != root_j))
                .expect("compatible distinct cuts nest");
            parts.push((inner.clone(), e));
        }

        // Smallest strict superset is the Hasse parent; supersets of a part
        // in a laminar family form a chain, so the first hit by size wins.
        let mut order: Vec<usize> = (0..parts.len()).collect();
        order.sort_by_key(|&p| parts[p].0.len());
        let mut parent = vec![usize::MAX; parts.len()];
        for (pos, &p) in order.iter().enumerate() {
            if p < 2 {
                continue;
            }
            let min = parts[p].0.min_label().expect("parts are nonempty");
            for &q in &order[pos + 1..] {
                if parts[q].0.contains(min) && parts[p].0.is_subset(&parts[q].0) {
                    parent[p] = q;
                    break;
                }
            }
            debug_assert!(parent[p] != usize::MAX);
        }

        let mut vertices: Vec<LabelBits> = parts.iter().map(|(b, _)| b.clone()).collect();
        let mut edges = vec![Edge {
            ends: (0, 1),
            multiplicity: first_e,
        }];
        for p in 2..parts.len() {
            let q = parent[p];
            vertices[q] = vertices[q].difference(&parts[p].0);
            edges.push(Edge {
                ends: (q, p),
                multiplicity: parts[p].1,
            });
        }
        Self::from_bits(vertices, edges)
    }

    /// The monomial `prod_e cut(e)^m(e)`.
    pub fn to_monomial(&self) -> Result<Monomial> {
        if self.edges.is_empty() {
            if self.labels.len() == 3 {
                return Ok(Monomial::one(self.labels.clone()));
            }
            return Err(Error::NoCorrespondingMonomial(self.labels.len()));
        }
        let (order, parent) = self.rooted(0);
        let below = self.subtree_labels(&order, &parent);
        let mut m = Monomial::one(self.labels.clone());
        for &v in order.iter().skip(1) {
            let (_, e) = parent[v].expect("non-root");
            let cut = Cut::new(&self.labels, below[v].iter())?;
            m.multiply(cut, self.edges[e].multiplicity)?;
        }
        Ok(m)
    }

    /// Vertices in BFS order from `root`.
    fn bfs_order(&self, root: usize) -> Vec<usize> {
        self.rooted(root).0
    }

    /// BFS order and `(parent, edge)` links for a rooting at `root`.
    pub(crate) fn rooted(&self, root: usize) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let mut parent = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(u, e) in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, e));
                    order.push(u);
                }
            }
        }
        (order, parent)
    }

    fn subtree_labels(&self, order: &[usize], parent: &[Option<(usize, usize)>]) -> Vec<LabelBits> {
        let mut below: Vec<LabelBits> = self.vertices.clone();
        for &v in order.iter().rev() {
            if let Some((p, _)) = parent[v] {
                let b = below[v].clone();
                below[p].union_with(&b);
            }
        }
        below
    }

    pub fn label_set(&self) -> &LabelSet {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `h(v)`
    pub fn labels(&self, v: usize) -> &LabelBits {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::NoSuchElement { kind: "edge", id: e })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::NoSuchElement { kind: "vertex", id: v })
        }
    }

    /// `(neighbor, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Total multiplicity `k`.
    pub fn fringes(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity as u64).sum()
    }

    /// `n = k + 3`
    pub fn is_proper(&self) -> bool {
        self.n() as u64 == self.fringes() + 3
    }

    /// Proper with every multiplicity 1, so every weight is zero.
    pub fn is_clever(&self) -> bool {
        self.is_proper() && self.edges.iter().all(|e| e.multiplicity == 1)
    }

    pub fn vertex_weight(&self, v: usize) -> u64 {
        (self.degree(v) + self.vertices[v].len() - 3) as u64
    }

    pub fn edge_weight(&self, e: usize) -> u64 {
        (self.edges[e].multiplicity - 1) as u64
    }

    pub fn weighted(&self) -> WeightedTree {
        WeightedTree {
            vertex_weights: (0..self.vertex_count()).map(|v| self.vertex_weight(v)).collect(),
            edge_weights: (0..self.edge_count()).map(|e| self.edge_weight(e)).collect(),
        }
    }

    /// Labels of the component containing `toward` once `edge` is removed.
    pub fn side_labels(&self, edge: usize, toward: usize) -> LabelBits {
        let mut out = LabelBits::new();
        let mut stack = vec![(toward, self.edges[edge].other(toward))];
        while let Some((v, from)) = stack.pop() {
            out.union_with(&self.vertices[v]);
            for &(u, _) in &self.adjacency[v] {
                if u != from {
                    stack.push((u, v));
                }
            }
        }
        out
    }

    /// The cut induced by `edge`.
    pub fn edge_cut(&self, edge: usize) -> Result<Cut> {
        let e = self.edge(edge)?;
        Cut::new(&self.labels, self.side_labels(edge, e.ends.0).iter())
    }

    /// The edge whose cut is `cut`, if any.
    pub fn find_edge(&self, cut: &Cut) -> Option<usize> {
        let (order, parent) = self.rooted(0);
        let below = self.subtree_labels(&order, &parent);
        order.iter().skip(1).find_map(|&v| {
            let (_, e) = parent[v]?;
            (cut.part_i() == &below[v] || cut.part_j() == &below[v]).then_some(e)
        })
    }

    /// The endpoint of `edge` lying on the side of `part`.
    pub fn endpoint_on_side(&self, edge: usize, part: &LabelBits) -> usize {
        let (a, b) = self.edges[edge].ends;
        if &self.side_labels(edge, a) == part {
            a
        } else {
            b
        }
    }

    /// `|h(v)|` singletons plus one proper cluster per incident edge.
    pub fn clusters(&self, v: usize) -> Vec<Cluster> {
        let mut out: Vec<Cluster> = self.vertices[v]
            .iter()
            .map(|l| Cluster {
                owner: v,
                labels: [l].into_iter().collect(),
                kind: ClusterKind::Singleton,
            })
            .collect();
        for &(u, e) in &self.adjacency[v] {
            out.push(Cluster {
                owner: v,
                labels: self.side_labels(e, u),
                kind: ClusterKind::Proper { edge: e },
            });
        }
        out
    }

    /// Equality up to relabeling of vertex and edge ids.
    pub fn same_as(&self, other: &LoadedTree) -> bool {
        match (self.to_monomial(), other.to_monomial()) {
            (Ok(a), Ok(b)) => a == b,
            _ => self.edges.is_empty() && other.edges.is_empty() && self.labels == other.labels,
        }
    }

    /// Leaves of the underlying graph.
    pub fn leaves(&self) -> BTreeSet<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub(crate) fn vertex_bits(&self) -> &[LabelBits] {
        &self.vertices
    }
}
