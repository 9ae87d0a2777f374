//! Label sets and cuts.

use std::cmp::Ordering;
use std::fmt;

use crate::bits::{write_labels, LabelBits};
use crate::error::{Error, Result};

/// Largest label value accepted anywhere. Labels index a bitset directly.
pub const MAX_LABEL: u32 = 1 << 20;

/// The set `N` of marked points, `|N| >= 3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet {
    bits: LabelBits,
}

impl LabelSet {
    /// `{1, ..., n}`.
    pub fn range(n: u32) -> Result<Self> {
        Self::from_labels(1..=n)
    }

    pub fn from_labels(labels: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut bits = LabelBits::new();
        for l in labels {
            check_label(l)?;
            bits.insert(l);
        }
        Self::from_bits(bits)
    }

    pub fn from_bits(bits: LabelBits) -> Result<Self> {
        if bits.len() < 3 {
            return Err(Error::Label(format!("need at least 3 labels, got {}", bits.len())));
        }
        if bits.contains(0) {
            return Err(Error::Label("labels must be positive".into()));
        }
        if let Some(max) = bits.max_label() {
            check_label(max)?;
        }
        Ok(LabelSet { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, label: u32) -> bool {
        self.bits.contains(label)
    }

    pub fn min(&self) -> u32 {
        self.bits.min_label().expect("label sets are nonempty")
    }

    pub fn max(&self) -> u32 {
        self.bits.max_label().expect("label sets are nonempty")
    }

    pub fn bits(&self) -> &LabelBits {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter()
    }

    /// True for `{1, ..., n}`.
    pub fn is_contiguous_from_one(&self) -> bool {
        self.min() == 1 && self.max() as usize == self.len()
    }

    /// Two labels that are not in this set, `max+1` and `max+2`.
    pub fn fresh_pair(&self) -> (u32, u32) {
        (self.max() + 1, self.max() + 2)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        write_labels(f, self.iter())?;
        write!(f, "}}")
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn check_label(l: u32) -> Result<()> {
    if l == 0 {
        Err(Error::Label("labels must be positive".into()))
    } else if l > MAX_LABEL {
        Err(Error::Label(format!("label {l} exceeds {MAX_LABEL}")))
    } else {
        Ok(())
    }
}

/// A bipartition `{I, J}` of `N` with both parts of size at least 2.
///
/// Stored canonically: `I` is the part containing `min(N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    part_i: LabelBits,
    part_j: LabelBits,
}

impl Cut {
    /// The cut of `labels` with `part` on one side.
    pub fn new(labels: &LabelSet, part: impl IntoIterator<Item = u32>) -> Result<Self> {
        let part: LabelBits = part.into_iter().collect();
        if !part.is_subset(labels.bits()) {
            return Err(Error::InvalidCut(format!("part {part:?} is not contained in {labels}")));
        }
        let rest = labels.bits().difference(&part);
        Self::from_parts(part, rest)
    }

    /// The cut with the two given parts; the label set is their union.
    pub fn from_parts(a: LabelBits, b: LabelBits) -> Result<Self> {
        if a.intersects(&b) {
            return Err(Error::InvalidCut(format!("parts {a:?} and {b:?} overlap")));
        }
        if a.len() < 2 || b.len() < 2 {
            return Err(Error::InvalidCut(format!(
                "parts {a:?} and {b:?} must both have at least 2 labels"
            )));
        }
        if a.contains(0) || b.contains(0) {
            return Err(Error::Label("labels must be positive".into()));
        }
        if a.min_label() < b.min_label() {
            Ok(Cut { part_i: a, part_j: b })
        } else {
            Ok(Cut { part_i: b, part_j: a })
        }
    }

    /// The part containing `min(N)`.
    pub fn part_i(&self) -> &LabelBits {
        &self.part_i
    }

    pub fn part_j(&self) -> &LabelBits {
        &self.part_j
    }

    pub fn universe(&self) -> LabelBits {
        self.part_i.union(&self.part_j)
    }

    pub fn label_set(&self) -> LabelSet {
        LabelSet { bits: self.universe() }
    }

    pub fn over(&self, labels: &LabelSet) -> bool {
        self.part_i.is_subset(labels.bits())
            && self.part_j.is_subset(labels.bits())
            && self.part_i.len() + self.part_j.len() == labels.len()
    }

    /// The part containing `label`, if any.
    pub fn side_of(&self, label: u32) -> Option<&LabelBits> {
        if self.part_i.contains(label) {
            Some(&self.part_i)
        } else if self.part_j.contains(label) {
            Some(&self.part_j)
        } else {
            None
        }
    }

    /// True when `{a, b}` lies in one part and `{c, d}` in the other.
    pub fn separates(&self, a: u32, b: u32, c: u32, d: u32) -> bool {
        let (p, q) = (&self.part_i, &self.part_j);
        (p.contains(a) && p.contains(b) && q.contains(c) && q.contains(d))
            || (q.contains(a) && q.contains(b) && p.contains(c) && p.contains(d))
    }

    /// Keel's quadratic relation: all four cross intersections nonempty.
    pub fn fulfills_quadratic_relation(&self, other: &Cut) -> Result<bool> {
        if self.universe() != other.universe() {
            return Err(Error::MismatchedLabelSets);
        }
        Ok(self.crosses(other))
    }

    /// Quadratic relation without the label-set check.
    ///
    /// Both `I` parts contain `min(N)`, so `I1 ∩ I2` is never empty and the
    /// remaining three conditions reduce to non-nesting of the `I` parts and
    /// `I1 ∪ I2 != N`.
    pub(crate) fn crosses(&self, other: &Cut) -> bool {
        self.part_i.intersects(&other.part_j)
            && other.part_i.intersects(&self.part_j)
            && self.part_j.intersects(&other.part_j)
    }

    /// One part of `self` is strictly contained in a part of `other`.
    pub fn is_nested_in(&self, other: &Cut) -> bool {
        [&self.part_i, &self.part_j]
            .iter()
            .any(|p| [&other.part_i, &other.part_j].iter().any(|q| p.is_subset(q) && p != q))
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rendering order: smallest label of `J` first, then `I` lexicographically.
impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.part_j
            .min_label()
            .cmp(&other.part_j.min_label())
            .then_with(|| self.part_i.cmp_lex(&other.part_i))
            .then_with(|| self.part_j.cmp_lex(&other.part_j))
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{{")?;
        write_labels(f, self.part_i.iter())?;
        write!(f, "|")?;
        write_labels(f, self.part_j.iter())?;
        write!(f, "}}")
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cut(n: u32, part: &[u32]) -> Cut {
        Cut::new(&LabelSet::range(n).unwrap(), part.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_orientation() {
        let a = cut(5, &[3, 4, 5]);
        let b = cut(5, &[1, 2]);
        assert_eq!(a, b);
        assert_eq!(a.part_i().to_vec(), vec![1, 2]);
        assert_eq!(a.to_string(), "d{1,2|3,4,5}");
    }

    #[test]
    fn invalid_cuts() {
        let n5 = LabelSet::range(5).unwrap();
        assert!(matches!(Cut::new(&n5, [1]), Err(Error::InvalidCut(_))));
        assert!(matches!(Cut::new(&n5, [1, 2, 3, 4]), Err(Error::InvalidCut(_))));
        assert!(matches!(Cut::new(&n5, [1, 9]), Err(Error::InvalidCut(_))));
        let a: LabelBits = [1, 2].into_iter().collect();
        let b: LabelBits = [2, 3].into_iter().collect();
        assert!(matches!(Cut::from_parts(a, b), Err(Error::InvalidCut(_))));
        assert!(matches!(LabelSet::range(2), Err(Error::Label(_))));
    }

    #[test]
    fn quadratic_relation_examples() {
        let a = cut(5, &[1, 2]);
        let b = cut(5, &[1, 4]);
        assert!(a.fulfills_quadratic_relation(&b).unwrap());
        assert!(!a.fulfills_quadratic_relation(&a).unwrap());
        let c = cut(6, &[1, 2]);
        let d = cut(6, &[1, 2, 3, 4]);
        assert!(!c.fulfills_quadratic_relation(&d).unwrap());
        assert_eq!(a.fulfills_quadratic_relation(&c), Err(Error::MismatchedLabelSets));
    }

    fn arb_cut_pair() -> impl Strategy<Value = (u32, Cut, Cut)> {
        (4u32..12)
            .prop_flat_map(|n| {
                let mask = 1u32..(1 << n) - 1;
                (Just(n), mask.clone(), mask)
            })
            .prop_filter_map("parts too small", |(n, m1, m2)| {
                let labels = LabelSet::range(n).unwrap();
                let part = |m: u32| (1..=n).filter(move |l| m & (1 << (l - 1)) != 0);
                let a = Cut::new(&labels, part(m1)).ok()?;
                let b = Cut::new(&labels, part(m2)).ok()?;
                Some((n, a, b))
            })
    }

    proptest! {
        #[test]
        fn quadratic_relation_is_symmetric((_n, a, b) in arb_cut_pair()) {
            prop_assert_eq!(a.fulfills_quadratic_relation(&b).unwrap(),
                            b.fulfills_quadratic_relation(&a).unwrap());
        }

        #[test]
        fn crossing_or_nesting((_n, a, b) in arb_cut_pair()) {
            prop_assume!(a != b);
            let crossing = a.fulfills_quadratic_relation(&b).unwrap();
            prop_assert!(crossing ^ a.is_nested_in(&b));
        }

        #[test]
        fn fast_check_matches_four_intersections((_n, a, b) in arb_cut_pair()) {
            let slow = a.part_i().intersects(b.part_i())
                && a.part_i().intersects(b.part_j())
                && a.part_j().intersects(b.part_i())
                && a.part_j().intersects(b.part_j());
            prop_assert_eq!(a.crosses(&b), slow);
        }
    }
}
