use std::fmt;

use serde::{Serialize, Serializer};

use super::label::{BarValue, FlagLabel};
use crate::error::{domain, Result};

/// A positive root of type `C_{n+1}`, with 1-based indices `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    /// `t_i - t_j`
    Diff(u32, u32),
    /// `t_i + t_j`
    Sum(u32, u32),
    /// `2 t_i`
    Long(u32),
}

impl Root {
    /// All of `R+` for `C_{n+1}`.
    pub fn positive_roots(n: u32) -> Vec<Root> {
        let m = n + 1;
        let mut roots = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                roots.push(Root::Diff(i, j));
                roots.push(Root::Sum(i, j));
            }
            roots.push(Root::Long(i));
        }
        roots
    }

    /// `R+ \ R+_P`: the roots that move position 1 or 2. These label the
    /// moment-graph edges. Fixed order: `t1-t2, t1+t2`, then the roots at
    /// position 1, then position 2.
    pub fn non_levi_roots(n: u32) -> Vec<Root> {
        let m = n + 1;
        let mut roots = vec![Root::Diff(1, 2), Root::Sum(1, 2)];
        for i in 1..=2 {
            for j in 3..=m {
                roots.push(Root::Diff(i, j));
                roots.push(Root::Sum(i, j));
            }
            roots.push(Root::Long(i));
        }
        roots
    }

    /// Smallest index involved; the root lies in `R+_P` iff this is >= 3.
    pub fn first_index(self) -> u32 {
        match self {
            Root::Diff(i, _) | Root::Sum(i, _) | Root::Long(i) => i,
        }
    }


    pub fn is_levi(self) -> bool {
        self.first_index() >= 3
    }

    pub(crate) fn validate(self, n: u32) -> Result<()> {
        let ok = match self {
            Root::Diff(i, j) | Root::Sum(i, j) => 1 <= i && i < j && j <= n + 1,
            Root::Long(i) => 1 <= i && i <= n + 1,
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!("{self} is not a positive root of C_{}", n + 1)))
        }
    }

    /// Coefficients on `t_1..t_{n+1}` (index 0 unused).
    fn coefficients(self, m: usize) -> Vec<i64> {
        let mut c = vec![0i64; m + 1];
        match self {
            Root::Diff(i, j) => {
                c[i as usize] += 1;
                c[j as usize] -= 1;
            }
            Root::Sum(i, j) => {
                c[i as usize] += 1;
                c[j as usize] += 1;
            }
            Root::Long(i) => c[i as usize] += 2,
        }
        c
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::Diff(i, j) => write!(f, "t{i}-t{j}"),
            Root::Sum(i, j) => write!(f, "t{i}+t{j}"),
            Root::Long(i) => write!(f, "2t{i}"),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Outcome of right-multiplying a coset by a reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reflection {
    Label(FlagLabel),
    /// The new coset contains `bar(1)`; it lives only in the even manifold.
    EvenOnly(FlagLabel),
    Fixed,
}

/// A signed permutation in one-line notation on positions `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    values: Vec<BarValue>,
}

impl SignedPermutation {
    pub fn new(values: Vec<BarValue>) -> Result<Self> {
        let m = values.len() as u32;
        let mut seen = vec![false; values.len() + 1];
        for v in &values {
            if v.letter() == 0 || v.letter() > m || seen[v.letter() as usize] {
                return Err(domain(format!("{values:?} is not a signed permutation")));
            }
            seen[v.letter() as usize] = true;
        }
        Ok(SignedPermutation { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<BarValue>) -> Self {
        SignedPermutation { values }
    }

    pub fn identity(m: u32) -> Self {
        SignedPermutation { values: (1..=m).map(BarValue::plain).collect() }
    }

    pub fn values(&self) -> &[BarValue] {
        &self.values
    }

    /// `n` such that this lives in the Weyl group of `C_{n+1}`.
    pub fn n(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// Number of positive roots sent to negative roots, where `w(t_i)` is
    /// `t_{w(i)}` and `t_{bar i} = -t_i`.
    pub fn length(&self) -> u32 {
        let m = self.values.len();
        Root::positive_roots(self.n())
            .into_iter()
            .filter(|root| {
                let c = root.coefficients(m);
                let mut image = vec![0i64; m + 1];
                for (pos, &coef) in c.iter().enumerate().skip(1) {
                    if coef != 0 {
                        let w = self.values[pos - 1].signed();
                        image[w.unsigned_abs() as usize] += coef * w.signum();
                    }
                }
                image.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0)
            })
            .count() as u32
    }

    /// `w * s_alpha`.
    pub fn right_reflect(&self, root: Root) -> Result<Self> {
        root.validate(self.n())?;
        let mut values = self.values.clone();
        match root {
            Root::Diff(i, j) => values.swap(i as usize - 1, j as usize - 1),
            Root::Sum(i, j) => {
                let (i, j) = (i as usize - 1, j as usize - 1);
                let (wi, wj) = (values[i], values[j]);
                values[i] = wj.bar();
                values[j] = wi.bar();
            }
            Root::Long(i) => {
                let i = i as usize - 1;
                values[i] = values[i].bar();
            }
        }
        Ok(SignedPermutation { values })
    }

    /// The coset `w W_P`, read off the first two positions.
    pub fn coset(&self) -> FlagLabel {
        FlagLabel::new_even(self.n(), self.values[0], self.values[1])
            .expect("signed permutation has distinct letters in positions 1 and 2")
    }

    /// The embedding into the symmetric group on `1..=2n+2`:
    /// `w~(i) = rank(w(i))` and `w~(bar i) = bar(w(i))`.
    pub fn doubled(&self) -> Vec<u32> {
        let n = self.n();
        let size = 2 * n + 2;
        let mut out = vec![0u32; size as usize];
        for (pos, v) in self.values.iter().enumerate() {
            let r = v.rank(n);
            out[pos] = r;
            out[(size - 1) as usize - pos] = size + 1 - r;
        }
        out
    }

    /// Bruhat order, via the type A tableau criterion on doubled words.
    pub fn bruhat_leq(&self, other: &Self) -> bool {
        type_a_bruhat_leq(&self.doubled(), &other.doubled())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `u <= v` in the Bruhat order of the symmetric group: for every prefix
/// length `i` and threshold `k`, `#{j <= i : u(j) >= k} <= #{j <= i : v(j) >= k}`.
pub(crate) fn type_a_bruhat_leq(u: &[u32], v: &[u32]) -> bool {
    debug_assert_eq!(u.len(), v.len());
    let size = u.len();
    let mut cu = vec![0u32; size + 2];
    let mut cv = vec![0u32; size + 2];
    for i in 0..size.saturating_sub(1) {
        for k in 1..=u[i] as usize {
            cu[k] += 1;
        }
        for k in 1..=v[i] as usize {
            cv[k] += 1;
        }
        if (1..=size).any(|k| cu[k] > cv[k]) {
            return false;
        }
    }
    true
}

impl FlagLabel {
    /// Minimal representative of `(w s_alpha) W_P` for `alpha` in `R+ \ R+_P`.
    pub fn reflect(&self, root: Root) -> Result<Reflection> {
        root.validate(self.n())?;
        if root.is_levi() {
            return Err(domain(format!("{root} is a root of the Levi factor")));
        }
        let image = self.minimal_representative().right_reflect(root)?.coset();
        Ok(if image == *self {
            Reflection::Fixed
        } else if image.is_odd() {
            Reflection::Label(image)
        } else {
            Reflection::EvenOnly(image)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str, n: u32) -> FlagLabel {
        FlagLabel::parse(s, n).unwrap()
    }

    #[test]
    fn root_counts() {
        for n in 2..=6 {
            let m = (n + 1) as usize;
            assert_eq!(Root::positive_roots(n).len(), m * m);
            assert_eq!(Root::non_levi_roots(n).len(), 4 * n as usize);
            assert!(Root::non_levi_roots(n).iter().all(|r| !r.is_levi()));
        }
    }

    #[test]
    fn lengths_from_root_counting() {
        assert_eq!(label("1|2", 2).length(), 0);
        assert_eq!(label("2|1", 2).length(), 1);
        assert_eq!(label("-2|-3", 2).length(), 6);
        assert_eq!(label("1|-3", 2).length(), 2);
        assert_eq!(label("-3|2", 2).length(), 4);
    }

    #[test]
    fn identity_and_long_element_lengths() {
        for n in 2..=5 {
            assert_eq!(SignedPermutation::identity(n + 1).length(), 0);
            let w0 = SignedPermutation::new((1..=n + 1).map(BarValue::barred).collect()).unwrap();
            assert_eq!(w0.length(), (n + 1) * (n + 1));
        }
    }

    #[test]
    fn reflect_examples() {
        let id = label("1|2", 2);
        assert_eq!(id.reflect(Root::Diff(1, 2)).unwrap(), Reflection::Label(label("2|1", 2)));
        match id.reflect(Root::Sum(1, 2)).unwrap() {
            Reflection::EvenOnly(l) => assert_eq!(l.to_string(), "-2|-1"),
            other => panic!("expected EvenOnly, got {other:?}"),
        }
        assert_eq!(id.reflect(Root::Long(2)).unwrap(), Reflection::Label(label("1|-2", 2)));
        assert_eq!(id.reflect(Root::Sum(1, 3)).unwrap(), Reflection::Label(label("-3|2", 2)));
        assert_eq!(label("3|1", 3).reflect(Root::Diff(2, 4)).unwrap(), Reflection::Label(label("3|4", 3)));
    }

    #[test]
    fn reflect_rejects_levi_and_out_of_range_roots() {
        let id = label("1|2", 3);
        assert!(id.reflect(Root::Diff(3, 4)).is_err());
        assert!(id.reflect(Root::Long(3)).is_err());
        assert!(id.reflect(Root::Diff(1, 5)).is_err());
        assert!(id.reflect(Root::Diff(2, 2)).is_err());
    }

    #[test]
    fn doubled_word_is_bar_symmetric() {
        let w = label("-2|-3", 2).minimal_representative();
        assert_eq!(w.doubled(), vec![5, 4, 1, 6, 3, 2]);
    }

    #[test]
    fn type_a_criterion_small_cases() {
        assert!(type_a_bruhat_leq(&[1, 2, 3], &[3, 2, 1]));
        assert!(!type_a_bruhat_leq(&[3, 2, 1], &[1, 2, 3]));
        // 213 and 132 are incomparable
        assert!(!type_a_bruhat_leq(&[2, 1, 3], &[1, 3, 2]));
        assert!(!type_a_bruhat_leq(&[1, 3, 2], &[2, 1, 3]));
    }
}
