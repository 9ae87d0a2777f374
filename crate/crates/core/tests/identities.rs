mod common;

use chowdeg_core::generate::sun_like_tree;
use chowdeg_core::identity::{
    check_identity, configurations, count_fiber, fiber_counts, fiber_formula, fiber_law, pascal_multinomial, phi,
    phi_preimage, IdentityInstance,
};
use chowdeg_core::reduction::{is_balanced_at, proper_quadruples, tree_reduction};
use chowdeg_core::{sun_like_value, tree_value};
use common::multinomial_u128;
use num_bigint::{BigInt, BigUint};

/// Every `m` with `r` parts in `1..=max`.
fn grid(r: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut m = vec![1u64; r];
    loop {
        out.push(m.clone());
        let Some(i) = m.iter().position(|&x| x < max) else {
            return out;
        };
        m[i] += 1;
        m[..i].fill(1);
    }
}

#[test]
fn lhs_is_the_multinomial() {
    for m in grid(3, 3) {
        let inst = IdentityInstance::new(m.clone()).unwrap();
        assert_eq!(
            check_identity(1, &inst).unwrap().lhs,
            BigUint::from(multinomial_u128(&m))
        );
    }
}

#[test]
fn identities_small_grid() {
    for r in 1..=4 {
        for m in grid(r, 3) {
            let inst = IdentityInstance::new(m).unwrap();
            for v in 1..=3u8 {
                match check_identity(v, &inst) {
                    Ok(c) => assert!(c.holds(), "variant {v} {:?}: {} vs {}", inst.m(), c.lhs, c.rhs),
                    Err(_) => assert!(r < v as usize),
                }
            }
        }
    }
}

#[test]
fn configurations_are_complete_and_distinct() {
    let inst = IdentityInstance::new(vec![2, 1, 2]).unwrap();
    let cs = configurations(&inst).unwrap();
    assert_eq!(cs.len() as u128, multinomial_u128(&[2, 1, 2]));
    let distinct: std::collections::HashSet<_> = cs.iter().collect();
    assert_eq!(distinct.len(), cs.len());
}

#[test]
fn fiber_laws() {
    for r in 1..=4 {
        for m in grid(r, 3).into_iter().filter(|m| m.iter().sum::<u64>() <= 8) {
            let inst = IdentityInstance::new(m).unwrap();
            let counts = fiber_counts(&inst).unwrap();
            assert_eq!(BigUint::from(count_fiber(&inst).unwrap()), fiber_formula(&inst));
            for b1 in (1..=inst.full()).filter(|b| b & 1 == 1) {
                let got = counts.get(&b1).copied().unwrap_or(0);
                assert_eq!(BigUint::from(got), fiber_law(&inst, b1), "{:?} {b1:#b}", inst.m());
                assert!(got > 0, "phi misses {b1:#b}");
                assert_eq!(phi(&phi_preimage(&inst, b1).unwrap(), inst.r()), b1);
            }
            if r >= 2 {
                assert!(pascal_multinomial(inst.s(), inst.m()).unwrap());
            }
        }
    }
}

/// The sun-like value is `(-1)^k` times the identity's left side with `m = w`.
#[test]
fn sun_like_matches_identity() {
    for r in 1..=4 {
        for w in grid(r, 3) {
            let k: u64 = w.iter().sum();
            let inst = IdentityInstance::new(w.clone()).unwrap();
            let c = check_identity(1, &inst).unwrap();
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(sun_like_value(k, &w).unwrap(), BigInt::from(c.rhs) * sign);
            assert_eq!(tree_value(&sun_like_tree(&w).unwrap()), sun_like_value(k, &w).unwrap());
        }
    }
}

/// Reducing a sun-like tree at a leaf edge: the balanced survivors alone
/// carry the whole value.
#[test]
fn sun_like_survivors_carry_the_value() {
    for w in [vec![1, 2], vec![2, 2, 1], vec![3, 1, 1], vec![2, 3]] {
        let t = sun_like_tree(&w).unwrap();
        let e = (0..t.edge_count()).find(|&e| t.edges()[e].multiplicity >= 2).unwrap();
        let q = proper_quadruples(&t, e).unwrap()[0];
        let trees = tree_reduction(&t, e, &q).unwrap();
        let survivors: BigInt = trees
            .values()
            .filter(|s| is_balanced_at(s, s.edge_count() - 1).unwrap())
            .map(tree_value)
            .sum();
        assert_eq!(-survivors, tree_value(&t), "{w:?}");
    }
}
