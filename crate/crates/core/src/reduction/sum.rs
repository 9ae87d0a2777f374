use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::LabelBits;
use crate::error::{Error, Result};
use crate::labels::{Cut, LabelSet};
use crate::monomial::Monomial;

/// Four distinct labels read as `ij|kl`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadruple {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
}

impl Quadruple {
    pub fn new(i: u32, j: u32, k: u32, l: u32) -> Result<Self> {
        let q = Quadruple { i, j, k, l };
        let a = q.as_array();
        for x in 0..4 {
            for y in x + 1..4 {
                if a[x] == a[y] {
                    return Err(Error::DuplicateLabels(a));
                }
            }
        }
        Ok(q)
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.i, self.j, self.k, self.l]
    }

    pub fn bits(&self) -> LabelBits {
        self.as_array().into_iter().collect()
    }

    /// `kl|ij`
    pub fn swapped(&self) -> Quadruple {
        Quadruple {
            i: self.k,
            j: self.l,
            k: self.i,
            l: self.j,
        }
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}|{},{}", self.i, self.j, self.k, self.l)
    }
}

/// An integer combination of monomials over one label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSum {
    labels: LabelSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SignedSum {
    pub fn new(labels: LabelSet) -> Self {
        SignedSum {
            labels,
            terms: BTreeMap::new(),
        }
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    /// Adds `coefficient * m`, dropping the term if it cancels.
    pub fn add(&mut self, m: Monomial, coefficient: BigInt) {
        assert_eq!(m.labels(), &self.labels, "term over a different label set");
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
        }
    }

    pub fn add_sum(&mut self, other: &SignedSum, scale: &BigInt) {
        for (m, c) in &other.terms {
            self.add(m.clone(), c * scale);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for SignedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "({m})")?;
        }
        Ok(())
    }
}

/// Largest `n` for which `epsilon_sum` enumerates its `2^(n-4)` cuts.
pub const EPSILON_MAX_N: usize = 28;

/// All cuts of `labels` with `i, j` on one side and `k, l` on the other.
pub fn epsilon_cuts(labels: &LabelSet, q: &Quadruple) -> Result<Vec<Cut>> {
    for x in q.as_array() {
        if !labels.contains(x) {
            return Err(Error::Label(format!("{x} is not in {labels}")));
        }
    }
    if labels.len() > EPSILON_MAX_N {
        return Err(Error::CapExceeded {
            what: "n",
            value: labels.len(),
            cap: EPSILON_MAX_N,
        });
    }
    let free: Vec<u32> = labels.iter().filter(|l| !q.bits().contains(*l)).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1 << free.len()) {
        let mut side: LabelBits = [q.i, q.j].into_iter().collect();
        for (bit, &l) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                side.insert(l);
            }
        }
        out.push(Cut::new(labels, side.iter())?);
    }
    out.sort();
    Ok(out)
}

/// `eps_{ij|kl}` as a sum of degree-one monomials, each with coefficient 1.
pub fn epsilon_sum(labels: &LabelSet, q: &Quadruple) -> Result<SignedSum> {
    Quadruple::new(q.i, q.j, q.k, q.l)?;
    let mut s = SignedSum::new(labels.clone());
    for cut in epsilon_cuts(labels, q)? {
        let mut m = Monomial::one(labels.clone());
        m.multiply(cut, 1)?;
        s.add(m, BigInt::one());
    }
    Ok(s)
}
