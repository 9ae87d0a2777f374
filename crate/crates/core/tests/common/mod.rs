#![allow(dead_code)]

use chowdeg_core::{Cut, LoadedTree, Monomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn mono(s: &str) -> Monomial {
    s.parse().unwrap()
}

pub fn tree(s: &str) -> LoadedTree {
    LoadedTree::from_monomial(&mono(s)).unwrap()
}

/// The cut written as `d{..|..}` over the labels of `t`.
pub fn cut_in(t: &LoadedTree, cut: &str) -> Cut {
    let m = mono(&format!("n={}; {cut}", t.n()));
    let c = m.factors().next().unwrap().0.clone();
    c
}

pub fn edge_of(t: &LoadedTree, cut: &str) -> usize {
    t.find_edge(&cut_in(t, cut)).unwrap()
}

/// `C(n, k)` from a Pascal triangle in `u128`.
pub fn pascal(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k]
}

/// `(sum m)! / prod(m_i!)` by repeated division in `u128`.
pub fn multinomial_u128(m: &[u64]) -> u128 {
    let fact = |n: u64| (1..=n as u128).product::<u128>();
    let s: u64 = m.iter().sum();
    m.iter().fold(fact(s), |acc, &x| acc / fact(x))
}
