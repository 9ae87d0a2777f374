use num_bigint::BigUint;
use num_traits::One;

use crate::bits::LabelBits;
use crate::combinat::binomial_signed;
use crate::error::{Error, Result};
use crate::tree::{Edge, LoadedTree};

/// The two remainders of an edge cut.
///
/// `left` is the side holding `min(N)`. A remainder is `None` when its new
/// edge would need a non-positive multiplicity; the coefficient is then 0.
#[derive(Clone, Debug)]
pub struct EdgeCutResult {
    pub left: Option<LoadedTree>,
    pub right: Option<LoadedTree>,
    /// `(x, y)` for single cuts, `(a, b)` for multi cuts.
    pub fresh_labels: (u32, u32),
    pub coefficient: BigUint,
    /// Fringes inside each side, the cut edge excluded.
    pub side_fringes: (u64, u64),
}

struct Side {
    /// old vertex id -> new id
    vertices: Vec<usize>,
    labels: LabelBits,
    fringes: u64,
}

fn side(t: &LoadedTree, edge: usize, start: usize) -> Side {
    let mut map = vec![usize::MAX; t.vertex_count()];
    let mut vertices = vec![start];
    map[start] = 0;
    let mut head = 0;
    let mut labels = LabelBits::new();
    let mut fringes = 0;
    while head < vertices.len() {
        let v = vertices[head];
        head += 1;
        labels.union_with(t.labels(v));
        for &(u, e) in t.neighbors(v) {
            if e == edge || map[u] != usize::MAX {
                continue;
            }
            fringes += t.edges()[e].multiplicity as u64;
            map[u] = vertices.len();
            vertices.push(u);
        }
    }
    Side {
        vertices,
        labels,
        fringes,
    }
}

/// The subtree of `s` with `extra` labels added to its root vertex and an
/// optional pendant vertex attached there.
fn build(t: &LoadedTree, edge: usize, s: &Side, extra: &[u32], pendant: Option<(Vec<u32>, u32)>) -> Result<LoadedTree> {
    let mut index = vec![usize::MAX; t.vertex_count()];
    for (new, &old) in s.vertices.iter().enumerate() {
        index[old] = new;
    }
    let mut vertices: Vec<LabelBits> = s.vertices.iter().map(|&v| t.labels(v).clone()).collect();
    for &l in extra {
        vertices[0].insert(l);
    }
    let mut edges = Vec::new();
    for (id, e) in t.edges().iter().enumerate() {
        if id != edge && index[e.ends.0] != usize::MAX {
            edges.push(Edge {
                ends: (index[e.ends.0], index[e.ends.1]),
                multiplicity: e.multiplicity,
            });
        }
    }
    if let Some((labels, mult)) = pendant {
        vertices.push(labels.into_iter().collect());
        edges.push(Edge {
            ends: (0, vertices.len() - 1),
            multiplicity: mult,
        });
    }
    LoadedTree::from_bits(vertices, edges)
}

fn sides(t: &LoadedTree, edge: usize) -> Result<(Side, Side)> {
    let e = *t.edge(edge)?;
    let a = side(t, edge, e.ends.0);
    let b = side(t, edge, e.ends.1);
    if a.labels.contains(t.label_set().min()) {
        Ok((a, b))
    } else {
        Ok((b, a))
    }
}

/// Removes a single edge and adds a fresh label to each former endpoint.
pub fn cut_single_edge(t: &LoadedTree, edge: usize) -> Result<EdgeCutResult> {
    let m = t.edge(edge)?.multiplicity;
    if m != 1 {
        return Err(Error::NotSingleEdge { edge, multiplicity: m });
    }
    let (x, y) = t.label_set().fresh_pair();
    let (l, r) = sides(t, edge)?;
    Ok(EdgeCutResult {
        left: Some(build(t, edge, &l, &[x], None)?),
        right: Some(build(t, edge, &r, &[y], None)?),
        fresh_labels: (x, y),
        coefficient: BigUint::one(),
        side_fringes: (l.fringes, r.fringes),
    })
}

/// Removes an edge of multiplicity `r >= 2` and hangs a fresh `{a, b}`
/// vertex off each former endpoint, with multiplicity `|I| - s - 1` for a
/// side with labels `I` and `s` fringes. The coefficient is
/// `C(r - 1, |I_1| - s_1 - 2)`.
pub fn cut_multi_edge(t: &LoadedTree, edge: usize) -> Result<EdgeCutResult> {
    let r = t.edge(edge)?.multiplicity;
    if r < 2 {
        return Err(Error::NotMultiEdge { edge });
    }
    let (a, b) = t.label_set().fresh_pair();
    let (l, rt) = sides(t, edge)?;
    let new_mult = |s: &Side| s.labels.len() as i64 - s.fringes as i64 - 1;
    let remainder = |s: &Side| -> Result<Option<LoadedTree>> {
        let m = new_mult(s);
        if m < 1 {
            return Ok(None);
        }
        build(t, edge, s, &[], Some((vec![a, b], m as u32))).map(Some)
    };
    Ok(EdgeCutResult {
        left: remainder(&l)?,
        right: remainder(&rt)?,
        fresh_labels: (a, b),
        coefficient: binomial_signed(r as i64 - 1, new_mult(&l) - 1),
        side_fringes: (l.fringes, rt.fringes),
    })
}

/// Both single-cut remainders at `edge` are proper.
pub fn is_balanced_at(t: &LoadedTree, edge: usize) -> Result<bool> {
    let m = t.edge(edge)?.multiplicity;
    if m != 1 {
        return Err(Error::NotSingleEdge { edge, multiplicity: m });
    }
    let (l, r) = sides(t, edge)?;
    Ok(l.labels.len() as u64 + 1 == l.fringes + 3 && r.labels.len() as u64 + 1 == r.fringes + 3)
}

/// Every single edge is balanced.
pub fn is_balanced(t: &LoadedTree) -> bool {
    t.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.multiplicity == 1)
        .all(|(id, _)| is_balanced_at(t, id).expect("single edge"))
}

/// An edge whose cut leaves a star on one side.
///
/// Any edge of a star works. Otherwise the leaves are stripped and a
/// leaf `u` of what remains is cut from its unique remaining neighbor.
pub fn find_star_cut(t: &LoadedTree) -> Result<usize> {
    let nv = t.vertex_count();
    if nv < 3 {
        return Err(Error::TooSmall(nv));
    }
    if (0..nv).any(|v| t.degree(v) == nv - 1) {
        return Ok(0);
    }
    let inner = |v: usize| t.degree(v) >= 2;
    for u in (0..nv).filter(|&u| inner(u)) {
        let mut inner_nbrs = t.neighbors(u).iter().filter(|(w, _)| inner(*w));
        if let (Some(&(_, e)), None) = (inner_nbrs.next(), inner_nbrs.next()) {
            return Ok(e);
        }
    }
    unreachable!("a tree that is not a star has at least two inner vertices")
}

/// Whether removing `edge` leaves a star with at least two vertices.
pub fn is_star_cut(t: &LoadedTree, edge: usize) -> bool {
    let e = t.edges()[edge];
    [e.ends.0, e.ends.1].into_iter().any(|start| {
        let s = side(t, edge, start);
        let size = s.vertices.len();
        let degree = |v: usize| t.neighbors(v).iter().filter(|(_, f)| *f != edge).count();
        size >= 2 && s.vertices.iter().any(|&v| degree(v) == size - 1)
    })
}
