//! Monomials in the boundary generators, with a text parser and canonical rendering.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::bits::LabelBits;
use crate::error::{Error, Result};
use crate::labels::{check_label, Cut, LabelSet};

/// A product of generators `d{I|J}^e` over a fixed label set.
///
/// Factors are keyed by canonical cut, so two monomials are equal exactly
/// when they are equal as multisets of cuts over the same label set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    labels: LabelSet,
    factors: BTreeMap<Cut, u32>,
}

impl Monomial {
    /// The empty monomial over `labels`.
    pub fn one(labels: LabelSet) -> Self {
        Monomial {
            labels,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_factors(labels: LabelSet, factors: impl IntoIterator<Item = (Cut, u32)>) -> Result<Self> {
        let mut m = Monomial::one(labels);
        for (cut, e) in factors {
            m.multiply(cut, e)?;
        }
        Ok(m)
    }

    /// Multiplies in `cut^exponent`; a zero exponent is a no-op.
    pub fn multiply(&mut self, cut: Cut, exponent: u32) -> Result<()> {
        if !cut.over(&self.labels) {
            return Err(Error::InvalidCut(format!("{cut} is not a cut of {}", self.labels)));
        }
        if exponent > 0 {
            let e = self.factors.entry(cut).or_insert(0);
            *e = e
                .checked_add(exponent)
                .ok_or_else(|| Error::Precondition("exponent overflow".into()))?;
        }
        Ok(())
    }

    /// `self` with one occurrence of `cut` removed. Panics if absent.
    pub(crate) fn without_one(&self, cut: &Cut) -> Monomial {
        let mut out = self.clone();
        let e = out.factors.get_mut(cut).expect("factor present");
        *e -= 1;
        if *e == 0 {
            out.factors.remove(cut);
        }
        out
    }

    pub(crate) fn with_one(&self, cut: &Cut) -> Monomial {
        let mut out = self.clone();
        *out.factors.entry(cut.clone()).or_insert(0) += 1;
        out
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Cut, u32)> + '_ {
        self.factors.iter().map(|(c, e)| (c, *e))
    }

    pub fn exponent(&self, cut: &Cut) -> u32 {
        self.factors.get(cut).copied().unwrap_or(0)
    }

    pub fn distinct_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.factors.values().map(|&e| e as u64).sum()
    }

    /// `degree == n - 3`, the only degree with a nonzero integral.
    pub fn has_top_degree(&self) -> bool {
        self.degree() + 3 == self.n() as u64
    }

    /// The first pair of factors that fulfills the quadratic relation.
    pub fn crossing_pair(&self) -> Option<(&Cut, &Cut)> {
        let cuts: Vec<&Cut> = self.factors.keys().collect();
        for (a_idx, a) in cuts.iter().enumerate() {
            for b in &cuts[a_idx + 1..] {
                if a.crosses(b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_tree_monomial(&self) -> bool {
        self.crossing_pair().is_none()
    }

    /// Tree monomial of degree `n-3` with every exponent 1.
    pub fn is_clever(&self) -> bool {
        self.has_top_degree() && self.factors.values().all(|&e| e == 1) && self.is_tree_monomial()
    }

    /// A cut is compatible with every factor (none of the pairs cross).
    pub(crate) fn compatible_with(&self, cut: &Cut) -> bool {
        self.factors.keys().all(|f| !f.crosses(cut))
    }

    /// Canonical text form, parseable by [`Monomial::from_str`].
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "n={}; 1", self.labels.len());
        }
        for (i, (cut, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{cut}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_monomial(s)
    }
}

/// Parses `[n=K;] (1 | d{..|..}[^e] (* d{..|..}[^e])*)`, whitespace-insensitive.
pub fn parse_monomial(text: &str) -> Result<Monomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let header = p.header()?;
    p.skip_ws();
    if p.peek() == Some(b'1') {
        let at = p.pos;
        p.pos += 1;
        p.expect_end()?;
        let n = header.ok_or(Error::Parse {
            position: at,
            message: "the empty monomial needs an `n=` header".into(),
        })?;
        return Ok(Monomial::one(LabelSet::range(n)?));
    }

    let mut terms = vec![p.term()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'*') => {
                p.pos += 1;
                terms.push(p.term()?);
            }
            Some(_) => return Err(p.error("expected `*` or end of input")),
        }
    }

    let labels = match header {
        Some(n) => LabelSet::range(n)?,
        None => LabelSet::from_bits(terms[0].0.union(&terms[0].1))?,
    };
    let mut m = Monomial::one(labels);
    for (a, b, e) in terms {
        let cut = Cut::from_parts(a, b)?;
        m.multiply(cut, e)?;
    }
    Ok(m)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected trailing input")),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "integer out of range".into(),
            })
    }

    fn header(&mut self) -> Result<Option<u32>> {
        self.skip_ws();
        if self.peek() != Some(b'n') {
            return Ok(None);
        }
        self.pos += 1;
        self.eat(b'=')?;
        let n = self.uint()?;
        self.eat(b';')?;
        Ok(Some(n))
    }

    fn labels(&mut self) -> Result<LabelBits> {
        let mut out = LabelBits::new();
        loop {
            let at = self.pos;
            let l = self.uint()?;
            check_label(l)?;
            if !out.insert(l) {
                return Err(Error::Parse {
                    position: at,
                    message: format!("label {l} repeated within a part"),
                });
            }
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<(LabelBits, LabelBits, u32)> {
        self.eat(b'd')?;
        self.eat(b'{')?;
        let a = self.labels()?;
        self.eat(b'|')?;
        let b = self.labels()?;
        self.eat(b'}')?;
        self.skip_ws();
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            e = self.uint()?;
            if e == 0 {
                return Err(Error::Parse {
                    position: at,
                    message: "exponents must be positive".into(),
                });
            }
        }
        Ok((a, b, e))
    }
}
