//! A small growable bitset keyed by label value.
//!
//! The word vector is kept normalized (no trailing zero words) so that the
//! derived `Eq`/`Hash` agree with set equality.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LabelBits {
    words: Vec<u64>,
}

impl LabelBits {
    pub fn new() -> Self {
        Self::default()
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, label: u32) -> bool {
        let (w, b) = (label as usize / WORD, label as usize % WORD);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let was = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, label: u32) -> bool {
        let (w, b) = (label as usize / WORD, label as usize % WORD);
        if w >= self.words.len() {
            return false;
        }
        let was = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.normalize();
        was
    }

    pub fn contains(&self, label: u32) -> bool {
        let (w, b) = (label as usize / WORD, label as usize % WORD);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_label(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| (i * WORD) as u32 + w.trailing_zeros())
    }

    pub fn max_label(&self) -> Option<u32> {
        self.words
            .last()
            .map(|w| ((self.words.len() - 1) * WORD) as u32 + (63 - w.leading_zeros()))
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        LabelBits { words }
    }

    pub fn union_with(&mut self, other: &Self) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = LabelBits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        out.normalize();
        out
    }

    /// `self \ other`
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.normalize();
        out
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending label sequences.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<u32> for LabelBits {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut out = LabelBits::new();
        for l in iter {
            out.insert(l);
        }
        out
    }
}

impl<'a> FromIterator<&'a u32> for LabelBits {
    fn from_iter<T: IntoIterator<Item = &'a u32>>(iter: T) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl PartialOrd for LabelBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LabelBits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some((self.index * WORD) as u32 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl fmt::Debug for LabelBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Writes `a,b,c`.
pub(crate) fn write_labels(f: &mut impl fmt::Write, labels: impl IntoIterator<Item = u32>) -> fmt::Result {
    for (i, l) in labels.into_iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}
