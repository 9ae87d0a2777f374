use std::collections::BTreeMap;

use crate::bits::LabelBits;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::tree::{Edge, LoadedTree};

use super::linear::is_proper_quadruple;
use super::sum::Quadruple;

/// Most free labels plus free branches enumerated at one endpoint.
pub const MAX_FREE_ITEMS: usize = 24;

/// One way to split an endpoint `v` of a multi-edge into `v'` and `v''`.
///
/// `v'` keeps the quadruple labels on `v`'s side and every branch holding
/// one of them; `v''` takes the reduced multi-edge. The fields name what
/// else moves to `v''`; everything not listed stays on `v'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitChoice {
    pub vertex: usize,
    pub moved_labels: LabelBits,
    /// Edge ids of the branches moved to `v''`.
    pub moved_branches: Vec<usize>,
}

struct Freedom {
    free_labels: Vec<u32>,
    free_branches: Vec<usize>,
    forced_branches: Vec<usize>,
}

fn check_inputs(t: &LoadedTree, edge: usize, q: &Quadruple) -> Result<()> {
    let e = t.edge(edge)?;
    if e.multiplicity < 2 {
        return Err(Error::NotMultiEdge { edge });
    }
    Quadruple::new(q.i, q.j, q.k, q.l)?;
    if !is_proper_quadruple(t, edge, q)? {
        return Err(Error::ImproperQuadruple(q.as_array(), t.edge_cut(edge)?.to_string()));
    }
    Ok(())
}

fn freedom(t: &LoadedTree, edge: usize, q: &Quadruple, v: usize) -> Freedom {
    let side = t.side_labels(edge, v);
    let qv = q.bits().intersection(&side);
    let free_labels = t.labels(v).difference(&qv).to_vec();
    let mut free_branches = Vec::new();
    let mut forced_branches = Vec::new();
    for &(u, f) in t.neighbors(v) {
        if f == edge {
            continue;
        }
        if t.side_labels(f, u).intersects(&qv) {
            forced_branches.push(f);
        } else {
            free_branches.push(f);
        }
    }
    Freedom {
        free_labels,
        free_branches,
        forced_branches,
    }
}

/// Splits `choice.vertex`, an endpoint of the multi-edge `edge`.
///
/// Returns `None` when both endpoints have weight zero. The new single edge
/// is the last edge of the result and `v''` its last vertex.
pub fn vertex_split(t: &LoadedTree, edge: usize, q: &Quadruple, choice: &SplitChoice) -> Result<Option<LoadedTree>> {
    check_inputs(t, edge, q)?;
    let e = t.edges()[edge];
    let (a, b) = e.ends;
    if t.vertex_weight(a) == 0 && t.vertex_weight(b) == 0 {
        return Ok(None);
    }
    let v = choice.vertex;
    if !e.touches(v) {
        return Err(Error::InvalidChoice(format!(
            "vertex {v} is not an endpoint of edge {edge}"
        )));
    }
    if t.vertex_weight(v) == 0 {
        return Err(Error::InvalidChoice(format!("vertex {v} has weight zero")));
    }
    let fr = freedom(t, edge, q, v);
    let free: LabelBits = fr.free_labels.iter().collect();
    if !choice.moved_labels.is_subset(&free) {
        return Err(Error::InvalidChoice(format!(
            "labels {:?} are not free to move (free: {:?})",
            choice.moved_labels, free
        )));
    }
    let mut seen = Vec::new();
    for &f in &choice.moved_branches {
        if fr.forced_branches.contains(&f) {
            return Err(Error::InvalidChoice(format!("branch {f} holds a quadruple label")));
        }
        if !fr.free_branches.contains(&f) {
            return Err(Error::InvalidChoice(format!("edge {f} is not a free branch of {v}")));
        }
        if seen.contains(&f) {
            return Err(Error::InvalidChoice(format!("branch {f} listed twice")));
        }
        seen.push(f);
    }
    // v'' holds the new edge and the reduced multi-edge, so it needs one more item
    if choice.moved_labels.is_empty() && choice.moved_branches.is_empty() {
        return Err(Error::InvalidChoice(
            "the second vertex needs at least one label or free branch".into(),
        ));
    }

    let mut vertices: Vec<LabelBits> = t.vertex_bits().to_vec();
    vertices[v] = vertices[v].difference(&choice.moved_labels);
    let vv = vertices.len();
    vertices.push(choice.moved_labels.clone());
    let reattach = |x: Edge| Edge {
        ends: (
            if x.ends.0 == v { vv } else { x.ends.0 },
            if x.ends.1 == v { vv } else { x.ends.1 },
        ),
        multiplicity: x.multiplicity,
    };
    let mut edges: Vec<Edge> = t.edges().to_vec();
    for &f in &choice.moved_branches {
        edges[f] = reattach(edges[f]);
    }
    edges[edge] = reattach(edges[edge]);
    edges[edge].multiplicity -= 1;
    edges.push(Edge {
        ends: (v, vv),
        multiplicity: 1,
    });
    LoadedTree::from_bits(vertices, edges).map(Some)
}

/// Every admissible split at either nonzero-weight endpoint.
pub fn split_configurations(t: &LoadedTree, edge: usize, q: &Quadruple) -> Result<Vec<SplitChoice>> {
    check_inputs(t, edge, q)?;
    let (a, b) = t.edges()[edge].ends;
    let mut out = Vec::new();
    for v in [a, b] {
        if t.vertex_weight(v) == 0 {
            continue;
        }
        let fr = freedom(t, edge, q, v);
        let (nl, nb) = (fr.free_labels.len(), fr.free_branches.len());
        if nl + nb > MAX_FREE_ITEMS {
            return Err(Error::CapExceeded {
                what: "free labels and branches",
                value: nl + nb,
                cap: MAX_FREE_ITEMS,
            });
        }
        for lm in 0u64..1 << nl {
            for bm in 0u64..1 << nb {
                // nothing moved leaves v'' with only two incidences
                if lm == 0 && bm == 0 {
                    continue;
                }
                out.push(SplitChoice {
                    vertex: v,
                    moved_labels: (0..nl)
                        .filter(|i| lm >> i & 1 == 1)
                        .map(|i| fr.free_labels[i])
                        .collect(),
                    moved_branches: (0..nb)
                        .filter(|i| bm >> i & 1 == 1)
                        .map(|i| fr.free_branches[i])
                        .collect(),
                });
            }
        }
    }
    Ok(out)
}

/// All trees reachable by one vertex split, keyed by monomial.
pub fn tree_reduction(t: &LoadedTree, edge: usize, q: &Quadruple) -> Result<BTreeMap<Monomial, LoadedTree>> {
    let mut out = BTreeMap::new();
    for choice in split_configurations(t, edge, q)? {
        if let Some(s) = vertex_split(t, edge, q, &choice)? {
            out.insert(s.to_monomial()?, s);
        }
    }
    Ok(out)
}
