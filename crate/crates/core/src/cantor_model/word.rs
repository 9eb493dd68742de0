use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Finite word over an IFS alphabet `{0, …, n}`; names the vertex `v_w` of the
/// coding tree and the standard interval `φ_w([0,1])`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn pushed(&self, letter: u8) -> Word {
        let mut w = self.clone();
        w.0.push(letter);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Whether the cylinders of the two words intersect.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(suffix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// Letterwise `i ↦ top − i`, the coding of `x ↦ 1 − x` on a palindromic IFS.
    pub fn complement(&self, top: u8) -> Word {
        Word(self.0.iter().map(|&l| top - l).collect())
    }

    pub fn check_alphabet(&self, arity: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l as usize >= arity) {
            Some(&l) => Err(Error::Invalid(format!("letter {l} outside alphabet of size {arity} in `{self}`"))),
            None => Ok(()),
        }
    }

    /// All words of length `len` in lexicographic (left-to-right) order.
    pub fn all_of_length(arity: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| (0..arity as u8).map(move |l| w.pushed(l)))
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::parse(format!("word position {i}"), s, "letters must be digits"))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

/// Eventually periodic address `pre · per^∞`, kept in canonical form:
/// primitive period, then shortest preperiod.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address {
    pre: Word,
    per: Word,
}

impl Address {
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::Invalid("address period must be nonempty".into()));
        }
        let mut per = primitive_root(per.0);
        let mut pre = pre.0;
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(Address {
            pre: Word(pre),
            per: Word(per),
        })
    }

    /// `w · letter^∞`.
    pub fn with_constant_tail(w: &Word, letter: u8) -> Self {
        Address::new(w.clone(), Word(vec![letter])).expect("nonempty period")
    }

    pub fn pre(&self) -> &Word {
        &self.pre
    }

    pub fn per(&self) -> &Word {
        &self.per
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre.0[i]
        } else {
            self.per.0[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word((0..len).map(|i| self.letter(i)).collect())
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        w.0.iter().enumerate().all(|(i, &l)| self.letter(i) == l)
    }

    /// Shift by the word `w` if the expansion starts with it.
    pub fn strip_prefix(&self, w: &Word) -> Option<Address> {
        if !self.starts_with(w) {
            return None;
        }
        if w.len() <= self.pre.len() {
            let pre = Word(self.pre.0[w.len()..].to_vec());
            return Some(Address::new(pre, self.per.clone()).expect("nonempty period"));
        }
        let mut per = self.per.0.clone();
        per.rotate_left((w.len() - self.pre.len()) % self.per.len());
        Some(Address::new(Word::empty(), Word(per)).expect("nonempty period"))
    }

    pub fn prepend(&self, w: &Word) -> Address {
        Address::new(w.concat(&self.pre), self.per.clone()).expect("nonempty period")
    }

    pub fn complement(&self, top: u8) -> Address {
        Address::new(self.pre.complement(top), self.per.complement(top)).expect("nonempty period")
    }

    pub fn check_alphabet(&self, arity: usize) -> Result<()> {
        self.pre.check_alphabet(arity)?;
        self.per.check_alphabet(arity)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^", self.pre, self.per)
    }
}

fn primitive_root(w: Vec<u8>) -> Vec<u8> {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[i % d]) {
            return w[..d].to_vec();
        }
    }
    w
}

/// A point of the attractor as the system can name it: an eventually periodic
/// address, or an aperiodic witness known only through a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Periodic(Address),
    Aperiodic { prefix: Word },
}

impl Point {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Point::Periodic(_))
    }

    pub fn strip_prefix(&self, w: &Word) -> Result<Option<Point>> {
        match self {
            Point::Periodic(a) => Ok(a.strip_prefix(w).map(Point::Periodic)),
            Point::Aperiodic { prefix } => {
                if w.is_prefix_of(prefix) {
                    Ok(Some(Point::Aperiodic {
                        prefix: prefix.strip_prefix(w).expect("checked prefix"),
                    }))
                } else if prefix.is_prefix_of(w) {
                    Err(Error::NotCovered(format!(
                        "aperiodic witness prefix `{prefix}` too short to decide `{w}`"
                    )))
                } else {
                    Ok(None)
                }
            }
        }
    }

    pub fn prepend(&self, w: &Word) -> Point {
        match self {
            Point::Periodic(a) => Point::Periodic(a.prepend(w)),
            Point::Aperiodic { prefix } => Point::Aperiodic { prefix: w.concat(prefix) },
        }
    }

    pub fn complement(&self, top: u8) -> Point {
        match self {
            Point::Periodic(a) => Point::Periodic(a.complement(top)),
            Point::Aperiodic { prefix } => Point::Aperiodic {
                prefix: prefix.complement(top),
            },
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Periodic(a) => write!(f, "{a}"),
            Point::Aperiodic { prefix } => write!(f, "{prefix}…"),
        }
    }
}

impl From<Address> for Point {
    fn from(a: Address) -> Self {
        Point::Periodic(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn addr(pre: &str, per: &str) -> Address {
        Address::new(w(pre), w(per)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = addr("0110", "1010");
        assert_eq!(a.pre(), &w("01"));
        assert_eq!(a.per(), &w("10"));
        assert_eq!(addr("10", "0"), addr("1", "0"));
        assert_eq!(addr("", "00"), addr("", "0"));
        assert_eq!(addr("1", "01"), addr("", "10"));
        assert!(Address::new(w("1"), Word::empty()).is_err());
    }

    #[test]
    fn shifting() {
        let a = addr("2", "01");
        assert_eq!(a.strip_prefix(&w("20")), Some(addr("", "10")));
        assert_eq!(a.strip_prefix(&w("21")), None);
        assert_eq!(a.strip_prefix(&w("")), Some(a.clone()));
        assert_eq!(a.prepend(&w("1")), addr("12", "01"));
        assert_eq!(addr("", "0").complement(1), addr("", "1"));
    }

    #[test]
    fn aperiodic_witness_prefix_rules() {
        let p = Point::Aperiodic { prefix: w("0110") };
        assert_eq!(p.strip_prefix(&w("01")).unwrap(), Some(Point::Aperiodic { prefix: w("10") }));
        assert_eq!(p.strip_prefix(&w("1")).unwrap(), None);
        assert!(p.strip_prefix(&w("011010")).is_err());
    }

    fn arb_address() -> impl Strategy<Value = Address> {
        (proptest::collection::vec(0u8..3, 0..6), proptest::collection::vec(0u8..3, 1..5))
            .prop_map(|(pre, per)| Address::new(Word(pre), Word(per)).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalization_preserves_expansion(pre in proptest::collection::vec(0u8..3, 0..6), per in proptest::collection::vec(0u8..3, 1..5)) {
            let a = Address::new(Word(pre.clone()), Word(per.clone())).unwrap();
            for i in 0..40 {
                let raw = if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] };
                prop_assert_eq!(a.letter(i), raw);
            }
            prop_assert!(a.per().len() <= per.len());
            prop_assert!(a.pre().len() <= pre.len());
            // idempotent
            prop_assert_eq!(Address::new(a.pre().clone(), a.per().clone()).unwrap(), a);
        }

        #[test]
        fn strip_then_prepend_round_trips(a in arb_address(), k in 0usize..8) {
            let p = a.prefix(k);
            let tail = a.strip_prefix(&p).unwrap();
            prop_assert_eq!(tail.prepend(&p), a);
        }
    }
}
