mod common;

use chowdeg_core::generate::{random_binary_cuts, random_proper_monomial, random_tree_monomial};
use chowdeg_core::{ClusterKind, Edge, LabelBits, LoadedTree, Monomial};
use common::{mono, rng};
use proptest::prelude::*;
use rand::Rng;

fn random_tree(seed: u64) -> (Monomial, LoadedTree) {
    let mut r = rng(seed);
    let n = r.gen_range(4..14);
    let degree = r.gen_range(1..2 * n);
    let m = random_tree_monomial(n, degree, &mut r).unwrap();
    let t = LoadedTree::from_monomial(&m).unwrap();
    (m, t)
}

#[test]
fn fixture_loads() {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/forest_tree.json")).unwrap();
    let t: LoadedTree = serde_json::from_str(&text).unwrap();
    assert_eq!(t.n(), 14);
    assert_eq!(t.fringes(), 11);
    assert!(t.is_proper());
    let back: LoadedTree = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert!(back.same_as(&t));
}

#[test]
fn bad_json_is_rejected() {
    let cyclic = r#"{"vertices": [[1,2],[3,4],[5,6]], "edges": [
        {"ends": [0,1], "multiplicity": 1}, {"ends": [1,2], "multiplicity": 1}, {"ends": [2,0], "multiplicity": 1}]}"#;
    assert!(serde_json::from_str::<LoadedTree>(cyclic).is_err());
    let unstable = r#"{"vertices": [[1],[2,3]], "edges": [{"ends": [0,1], "multiplicity": 1}]}"#;
    assert!(serde_json::from_str::<LoadedTree>(unstable).is_err());
}

proptest! {
    #[test]
    fn monomial_tree_bijection(seed in any::<u64>()) {
        let (m, t) = random_tree(seed);
        prop_assert_eq!(t.to_monomial().unwrap(), m.clone());
        let again = LoadedTree::from_monomial(&t.to_monomial().unwrap()).unwrap();
        prop_assert!(again.same_as(&t));
        prop_assert_eq!(t.edge_count(), m.distinct_factors());
        prop_assert_eq!(t.fringes(), m.degree());
    }

    #[test]
    fn first_cut_does_not_matter(seed in any::<u64>()) {
        let (m, t) = random_tree(seed);
        for (cut, _) in m.factors() {
            let other = LoadedTree::from_monomial_at(&m, cut).unwrap();
            prop_assert!(other.same_as(&t));
            prop_assert_eq!(other.to_monomial().unwrap(), m.clone());
        }
    }

    #[test]
    fn weight_identity_iff_proper(seed in any::<u64>()) {
        let (_, t) = random_tree(seed);
        let w = t.weighted();
        prop_assert_eq!(w.vertex_sum() == w.edge_sum(), t.is_proper());
        let mut r = rng(seed ^ 1);
        let p = LoadedTree::from_monomial(&random_proper_monomial(r.gen_range(4..14), &mut r).unwrap()).unwrap();
        let w = p.weighted();
        prop_assert!(p.is_proper());
        prop_assert_eq!(w.vertex_sum(), w.edge_sum());
    }

    #[test]
    fn clusters_partition(seed in any::<u64>()) {
        let (m, t) = random_tree(seed);
        let mut proper_parts: Vec<LabelBits> = Vec::new();
        for v in 0..t.vertex_count() {
            let cs = t.clusters(v);
            let singles = cs.iter().filter(|c| c.kind == ClusterKind::Singleton).count();
            prop_assert_eq!(singles, t.labels(v).len());
            prop_assert_eq!(cs.len() - singles, t.degree(v));
            let mut union = LabelBits::new();
            for c in &cs {
                prop_assert!(!union.intersects(&c.labels));
                union.union_with(&c.labels);
                if c.kind != ClusterKind::Singleton {
                    proper_parts.push(c.labels.clone());
                }
            }
            prop_assert_eq!(&union, t.label_set().bits());
        }
        let mut cut_parts: Vec<LabelBits> = m.factors().flat_map(|(c, _)| [c.part_i().clone(), c.part_j().clone()]).collect();
        proper_parts.sort();
        proper_parts.dedup();
        cut_parts.sort();
        cut_parts.dedup();
        prop_assert_eq!(proper_parts, cut_parts);
    }
}

#[test]
fn binary_cuts_are_clever() {
    let mut r = rng(3);
    for n in 4..30 {
        let cuts = random_binary_cuts(n, &mut r).unwrap();
        assert_eq!(cuts.len() as u32, n - 3);
        let t = LoadedTree::from_monomial(
            &Monomial::from_factors(
                chowdeg_core::LabelSet::range(n).unwrap(),
                cuts.into_iter().map(|c| (c, 1)),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(t.is_clever() && t.is_proper());
        assert!((0..t.vertex_count()).all(|v| t.vertex_weight(v) == 0));
    }
}

#[test]
fn improper_trees_break_the_weight_identity() {
    let t = LoadedTree::new(
        vec![vec![1, 2], vec![3, 4, 5]],
        vec![Edge {
            ends: (0, 1),
            multiplicity: 3,
        }],
    )
    .unwrap();
    assert!(!t.is_proper());
    assert_ne!(t.weighted().vertex_sum(), t.weighted().edge_sum());
    let m = mono("d{1,2|3,4,5}^3");
    assert_eq!(t.to_monomial().unwrap(), m);
}
