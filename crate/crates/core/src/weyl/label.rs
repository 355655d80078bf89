use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::perm::SignedPermutation;
use crate::error::{check_rank, domain, Error, Result};

/// A letter of the alphabet `1 < 2 < ... < n+1 < bar(n+1) < ... < bar(1)`.
///
/// The order does not depend on `n`: unbarred letters come first in
/// increasing order, barred letters follow in decreasing order of the
/// underlying letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BarValue {
    letter: u32,
    barred: bool,
}

impl BarValue {
    pub const fn plain(letter: u32) -> Self {
        BarValue { letter, barred: false }
    }

    pub const fn barred(letter: u32) -> Self {
        BarValue { letter, barred: true }
    }

    pub const fn new(letter: u32, barred: bool) -> Self {
        BarValue { letter, barred }
    }

    pub fn letter(self) -> u32 {
        self.letter
    }

    pub fn is_barred(self) -> bool {
        self.barred
    }

    /// The involution `i <-> bar(i)`.
    pub fn bar(self) -> Self {
        BarValue { letter: self.letter, barred: !self.barred }
    }

    /// Position in `1..=2n+2`, with `bar(i) = 2n+3-i`.
    pub fn rank(self, n: u32) -> u32 {
        if self.barred {
            2 * n + 3 - self.letter
        } else {
            self.letter
        }
    }

    /// `+letter` or `-letter`; the coefficient this value contributes when a
    /// permutation acts on `t_i`.
    pub(crate) fn signed(self) -> i64 {
        if self.barred {
            -(self.letter as i64)
        } else {
            self.letter as i64
        }
    }

    fn order_key(self) -> (bool, i64) {
        if self.barred {
            (true, -(self.letter as i64))
        } else {
            (false, self.letter as i64)
        }
    }

    fn parse(s: &str) -> Option<Self> {
        let (barred, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().map(|letter| BarValue { letter, barred })
    }
}

impl Ord for BarValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for BarValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "-{}", self.letter)
        } else {
            write!(f, "{}", self.letter)
        }
    }
}

/// A minimal coset representative `(a|b)` of `W / W_P`, where `W_P` is
/// generated by `s_3, ..., s_{n+1}`.
///
/// Labels built with [`FlagLabel::new`] are odd: neither value is `bar(1)`.
/// [`FlagLabel::new_even`] admits `bar(1)` and indexes the ambient even flag
/// manifold; it is only needed to compare against that larger moment graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagLabel {
    n: u32,
    a: BarValue,
    b: BarValue,
}

impl FlagLabel {
    pub fn new(n: u32, a: BarValue, b: BarValue) -> Result<Self> {
        let label = Self::new_even(n, a, b)?;
        if !label.is_odd() {
            return Err(domain(format!("{label} contains bar(1)")));
        }
        Ok(label)
    }

    pub fn new_even(n: u32, a: BarValue, b: BarValue) -> Result<Self> {
        check_rank(n)?;
        for v in [a, b] {
            if v.letter == 0 || v.letter > n + 1 {
                return Err(domain(format!("letter {} outside 1..={} (n={n})", v.letter, n + 1)));
            }
        }
        if a.letter == b.letter {
            return Err(domain(format!("({a}|{b}) repeats the letter {}", a.letter)));
        }
        Ok(FlagLabel { n, a, b })
    }

    /// Parse the `a|b` syntax, `-k` standing for `bar(k)`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        let (lhs, rhs) = inner.split_once('|').ok_or_else(|| parse_err("expected `a|b`"))?;
        let a = BarValue::parse(lhs.trim()).ok_or_else(|| parse_err("left value is not an integer"))?;
        let b = BarValue::parse(rhs.trim()).ok_or_else(|| parse_err("right value is not an integer"))?;
        FlagLabel::new(n, a, b)
    }

    /// The bottom cell `(1|2)`.
    pub fn identity(n: u32) -> Result<Self> {
        FlagLabel::new(n, BarValue::plain(1), BarValue::plain(2))
    }

    /// The top cell `(bar 2|bar 3)`, the longest odd element.
    pub fn top(n: u32) -> Result<Self> {
        FlagLabel::new(n, BarValue::barred(2), BarValue::barred(3))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> BarValue {
        self.a
    }

    pub fn b(&self) -> BarValue {
        self.b
    }

    pub fn is_odd(&self) -> bool {
        let bar1 = BarValue::barred(1);
        self.a != bar1 && self.b != bar1
    }

    /// Same rank, new values. Used by the closed forms, which only ever
    /// produce valid labels.
    pub(crate) fn with(&self, a: BarValue, b: BarValue) -> Self {
        FlagLabel::new(self.n, a, b).expect("closed form produced an invalid label")
    }

    pub fn minimal_representative(&self) -> SignedPermutation {
        let mut values = Vec::with_capacity(self.n as usize + 1);
        values.push(self.a);
        values.push(self.b);
        values.extend(
            (1..=self.n + 1)
                .filter(|&k| k != self.a.letter && k != self.b.letter)
                .map(BarValue::plain),
        );
        SignedPermutation::from_values_unchecked(values)
    }

    /// Coxeter length of the minimal representative.
    pub fn length(&self) -> u32 {
        self.minimal_representative().length()
    }

    /// Canonical sort key `(length, rank(a), rank(b))`.
    pub fn sort_key(&self) -> (u32, u32, u32) {
        (self.length(), self.a.rank(self.n), self.b.rank(self.n))
    }
}

impl fmt::Display for FlagLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.a, self.b)
    }
}

impl Serialize for FlagLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: i64) -> BarValue {
        if k < 0 {
            BarValue::barred(k.unsigned_abs() as u32)
        } else {
            BarValue::plain(k as u32)
        }
    }

    #[test]
    fn alphabet_order_matches_rank() {
        let n = 3;
        let mut alphabet: Vec<_> = (1..=4).flat_map(|k| [BarValue::plain(k), BarValue::barred(k)]).collect();
        alphabet.sort();
        let ranks: Vec<_> = alphabet.iter().map(|x| x.rank(n)).collect();
        assert_eq!(ranks, (1..=8).collect::<Vec<_>>());
        assert_eq!(alphabet[3], BarValue::plain(4));
        assert_eq!(alphabet[4], BarValue::barred(4));
        assert_eq!(alphabet[7], BarValue::barred(1));
    }

    #[test]
    fn bar_is_an_involution() {
        for k in 1..=5 {
            let x = BarValue::plain(k);
            assert_eq!(x.bar().bar(), x);
            assert_eq!(x.rank(4) + x.bar().rank(4), 2 * 4 + 3);
        }
    }

    #[test]
    fn parse_and_print() {
        let l = FlagLabel::parse("-2|1", 2).unwrap();
        assert_eq!(l.a(), v(-2));
        assert_eq!(l.b(), v(1));
        assert_eq!(l.to_string(), "-2|1");
        assert_eq!(FlagLabel::parse("(1|-3)", 2).unwrap().to_string(), "1|-3");
        assert_eq!(FlagLabel::parse(" 3 | 2 ", 2).unwrap().to_string(), "3|2");
    }

    #[test]
    fn parse_rejects_invalid_labels() {
        assert!(matches!(FlagLabel::parse("1/2", 2), Err(Error::Parse { .. })));
        assert!(matches!(FlagLabel::parse("x|2", 2), Err(Error::Parse { .. })));
        assert!(matches!(FlagLabel::parse("--2|1", 2), Err(Error::Parse { .. })));
        // repeated letter, bar(1), out of range
        assert!(matches!(FlagLabel::parse("2|-2", 2), Err(Error::Domain(_))));
        assert!(matches!(FlagLabel::parse("-1|2", 2), Err(Error::Domain(_))));
        assert!(matches!(FlagLabel::parse("1|4", 2), Err(Error::Domain(_))));
        assert!(matches!(FlagLabel::parse("1|2", 1), Err(Error::Domain(_))));
    }

    #[test]
    fn even_labels_admit_bar_one() {
        let l = FlagLabel::new_even(2, v(-2), v(-1)).unwrap();
        assert!(!l.is_odd());
        assert!(FlagLabel::new(2, v(-2), v(-1)).is_err());
    }

    #[test]
    fn minimal_representative_fill_rule() {
        let rep = |s: &str, n| FlagLabel::parse(s, n).unwrap().minimal_representative().to_string();
        assert_eq!(rep("1|2", 3), "(1,2,3,4)");
        assert_eq!(rep("-2|-3", 2), "(-2,-3,1)");
        assert_eq!(rep("-3|1", 2), "(-3,1,2)");
        assert_eq!(rep("4|-2", 4), "(4,-2,1,3,5)");
    }
}
