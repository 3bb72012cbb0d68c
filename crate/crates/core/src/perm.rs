//! The permutation value type and the structural maps built on it.
//!
//! Values are stored as `1..=n` in one-line notation. Every position that
//! crosses the public API is 1-based, so `a` in [`deflate`] and
//! [`max_block_extent`] counts the entries *before* the block, exactly as in
//! the inflation `σ(α, a+1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 {
                return Err(Error::NonPositive {
                    token: v.to_string(),
                });
            }
            if v > n {
                let missing = (1..=n).find(|&w| !values.contains(&w)).unwrap_or(n);
                return Err(Error::Gap {
                    token: v.to_string(),
                    len: n,
                    missing,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Duplicate {
                    token: v.to_string(),
                });
            }
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `n (n-1) ... 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    /// Value at the 1-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.0[pos - 1]
    }

    /// 1-based position holding `value`.
    pub fn position_of(&self, value: usize) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|i| i + 1)
    }

    pub fn is_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts `"2 4 1 3"`, `"2,4,1,3"` or, when every value is a single digit,
/// `"2413"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let delimited = text.contains(|c: char| c == ',' || c.is_whitespace());
        let tokens: Vec<&str> = if delimited {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect()
        } else if text.len() > 1 && text.bytes().all(|b| b.is_ascii_digit()) {
            (0..text.len()).map(|i| &text[i..i + 1]).collect()
        } else if text.is_empty() {
            Vec::new()
        } else {
            vec![text]
        };
        if tokens.is_empty() {
            return Err(Error::EmptyInput);
        }

        let mut values = Vec::with_capacity(tokens.len());
        for token in &tokens {
            let v: i64 = token.parse().map_err(|_| Error::InvalidToken {
                token: token.to_string(),
            })?;
            if v <= 0 {
                return Err(Error::NonPositive {
                    token: token.to_string(),
                });
            }
            values.push(v as usize);
        }

        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (token, &v) in tokens.iter().zip(&values) {
            if v <= n && std::mem::replace(&mut seen[v], true) {
                return Err(Error::Duplicate {
                    token: token.to_string(),
                });
            }
        }
        if let Some((token, _)) = tokens.iter().zip(&values).find(|(_, &v)| v > n) {
            let missing = (1..=n).find(|&w| !seen[w]).unwrap_or(n);
            return Err(Error::Gap {
                token: token.to_string(),
                len: n,
                missing,
            });
        }
        Ok(Permutation(values))
    }
}

/// Lexicographic successor enumeration of `S_n`.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Permutation>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.0.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let pivot = i - 1;
            let j = (i..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[pivot])
                .unwrap();
            succ.swap(pivot, j);
            succ[i..].reverse();
            self.next = Some(Permutation(succ));
        }
        Some(current)
    }
}

/// `std(seq)`: the permutation order-isomorphic to a sequence of distinct
/// values.
pub fn standardize<T: Ord + fmt::Display>(seq: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&i, &j| seq[i].cmp(&seq[j]));
    if let Some(w) = order.windows(2).find(|w| seq[w[0]] == seq[w[1]]) {
        return Err(Error::Duplicate {
            token: seq[w[0]].to_string(),
        });
    }
    let mut ranks = vec![0; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Ok(Permutation(ranks))
}

/// Standardizes a sequence already known to be duplicate-free.
pub(crate) fn std_distinct(seq: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut ranks = vec![0; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Permutation(ranks)
}

/// `σ(α, pos)`: replaces the entry of `sigma` at 1-based `pos` by a block of
/// consecutive values patterned after `alpha`.
pub fn inflate(sigma: &Permutation, alpha: &Permutation, pos: usize) -> Result<Permutation> {
    let m = sigma.len();
    if pos == 0 || pos > m {
        return Err(Error::PositionOutOfRange { pos, len: m });
    }
    if alpha.is_empty() {
        return Err(Error::EmptyPermutation { op: "inflate" });
    }
    let l = alpha.len();
    let pivot = sigma.at(pos);
    let lift = |v: usize| if v < pivot { v } else { v + l - 1 };

    let mut out = Vec::with_capacity(m + l - 1);
    out.extend(sigma.0[..pos - 1].iter().map(|&v| lift(v)));
    out.extend(alpha.0.iter().map(|&v| v + pivot - 1));
    out.extend(sigma.0[pos..].iter().map(|&v| lift(v)));
    Ok(Permutation(out))
}

/// Inverse of [`inflate`]: collapses positions `a+1..=a+l` of `sp`, whose
/// values must form an interval, back to one entry.
pub fn deflate(sp: &Permutation, a: usize, l: usize) -> Result<(Permutation, Permutation)> {
    let n = sp.len();
    if l == 0 {
        return Err(Error::EmptyPermutation { op: "deflate" });
    }
    if a + l > n {
        return Err(Error::PositionOutOfRange { pos: a + l, len: n });
    }
    let block = &sp.0[a..a + l];
    let lo = *block.iter().min().unwrap();
    let hi = *block.iter().max().unwrap();
    if hi - lo + 1 != l {
        return Err(Error::NotAnInterval {
            start: a + 1,
            end: a + l,
        });
    }
    let alpha = std_distinct(block);
    let mut collapsed = Vec::with_capacity(n - l + 1);
    collapsed.extend_from_slice(&sp.0[..a]);
    collapsed.push(lo);
    collapsed.extend_from_slice(&sp.0[a + l..]);
    Ok((std_distinct(&collapsed), alpha))
}

/// Largest `l` such that the values at positions `a+1..=a+l` form an
/// interval.
pub fn max_block_extent(sp: &Permutation, a: usize) -> Result<usize> {
    let n = sp.len();
    if a >= n {
        return Err(Error::PositionOutOfRange { pos: a + 1, len: n });
    }
    let (mut lo, mut hi) = (usize::MAX, 0);
    let mut best = 1;
    for (len, &v) in sp.0[a..].iter().enumerate().map(|(i, v)| (i + 1, v)) {
        lo = lo.min(v);
        hi = hi.max(v);
        if hi - lo + 1 == len {
            best = len;
        }
    }
    Ok(best)
}

/// Removes the value `n`, returning the remainder and the 1-based position
/// it occupied.
pub fn delete_max(p: &Permutation) -> Result<(Permutation, usize)> {
    let n = p.len();
    let pos = p
        .position_of(n)
        .ok_or(Error::EmptyPermutation { op: "delete_max" })?;
    let mut rest = p.0.clone();
    rest.remove(pos - 1);
    Ok((Permutation(rest), pos))
}

/// Inserts the new maximum `n = |p|+1` at 1-based position `pos`.
pub fn insert_max(p: &Permutation, pos: usize) -> Result<Permutation> {
    let n = p.len() + 1;
    if pos == 0 || pos > n {
        return Err(Error::PositionOutOfRange { pos, len: n });
    }
    let mut values = p.0.clone();
    values.insert(pos - 1, n);
    Ok(Permutation(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms_agree() {
        assert_eq!(perm("2413").values(), &[2, 4, 1, 3]);
        assert_eq!(perm("2 4 1 3"), perm("2,4,1,3"));
        assert_eq!(perm(" 2, 4 ,1 3 "), perm("2413"));
        assert_eq!(perm("1").values(), &[1]);
        let fig = perm("10 12 13 8 6 11 5 3 1 9 7 4 2");
        assert_eq!(fig.len(), 13);
        assert_eq!(fig.at(3), 13);
    }

    #[test]
    fn parse_errors_name_the_token() {
        assert_eq!(
            "2 2 1".parse::<Permutation>(),
            Err(Error::Duplicate { token: "2".into() })
        );
        assert_eq!(
            "1 x 2".parse::<Permutation>(),
            Err(Error::InvalidToken { token: "x".into() })
        );
        assert_eq!(
            "1 -2".parse::<Permutation>(),
            Err(Error::NonPositive { token: "-2".into() })
        );
        assert_eq!(
            "1023".parse::<Permutation>(),
            Err(Error::NonPositive { token: "0".into() })
        );
        assert_eq!(
            "1 4 2".parse::<Permutation>(),
            Err(Error::Gap {
                token: "4".into(),
                len: 3,
                missing: 3
            })
        );
        assert_eq!(
            "1.5 1".parse::<Permutation>().unwrap_err(),
            Error::InvalidToken {
                token: "1.5".into()
            }
        );
        assert_eq!("".parse::<Permutation>(), Err(Error::EmptyInput));
        assert_eq!(" , ".parse::<Permutation>(), Err(Error::EmptyInput));
        // multi-digit values need delimiters
        assert!("10 12".parse::<Permutation>().is_err());
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(perm("2413").to_string(), "2 4 1 3");
        assert_eq!(Permutation::empty().to_string(), "");
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[2, 6, 9, 3]).unwrap(), perm("1342"));
        assert_eq!(
            standardize(&[1, 2, 3, 4, 5]).unwrap(),
            Permutation::identity(5)
        );
        assert_eq!(
            standardize(&[10, 12, 13, 8, 6, 11, 9, 7]).unwrap(),
            perm("57831642")
        );
        assert_eq!(standardize(&[-3, 7, 0]).unwrap(), perm("132"));
        assert_eq!(
            standardize(&[4, 1, 4]),
            Err(Error::Duplicate { token: "4".into() })
        );
        assert_eq!(standardize::<i32>(&[]).unwrap(), Permutation::empty());
    }

    #[test]
    fn reverse_and_complement() {
        assert_eq!(perm("1423").reverse(), perm("3241"));
        assert_eq!(perm("1").reverse(), perm("1"));
        assert_eq!(perm("1423").complement(), perm("4132"));
        assert_eq!(perm("1423").complement().reverse(), perm("2314"));
        assert_eq!(perm("2413").complement().reverse(), perm("2413"));
        for p in Permutation::all(5) {
            assert_eq!(p.reverse().reverse(), p);
            assert_eq!(p.complement().complement(), p);
        }
        for p in Permutation::all(6) {
            assert_eq!(p.reverse().complement(), p.complement().reverse());
        }
    }

    #[test]
    fn lex_enumeration() {
        let s3: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(s3, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2", "3 2 1"]);
        assert_eq!(Permutation::all(6).count(), 720);
        assert_eq!(
            Permutation::all(0).collect::<Vec<_>>(),
            vec![Permutation::empty()]
        );
    }

    #[test]
    fn inflate_examples() {
        assert_eq!(
            inflate(&perm("316542"), &perm("531642"), 4).unwrap(),
            perm("3 1 11 9 7 5 10 8 6 4 2")
        );
        assert_eq!(
            inflate(&perm("27853641"), &perm("531642"), 7).unwrap(),
            perm("2 12 13 10 3 11 8 6 4 9 7 5 1")
        );
        let p = perm("35142");
        for k in 1..=5 {
            assert_eq!(inflate(&p, &perm("1"), k).unwrap(), p);
        }
        assert_eq!(
            inflate(&p, &perm("21"), 6),
            Err(Error::PositionOutOfRange { pos: 6, len: 5 })
        );
        assert!(inflate(&p, &perm("21"), 0).is_err());
        assert!(inflate(&p, &Permutation::empty(), 1).is_err());
    }

    #[test]
    fn deflate_examples() {
        let sp = perm("2 12 13 10 3 11 8 6 4 9 7 5 1");
        assert_eq!(
            deflate(&sp, 6, 6).unwrap(),
            (perm("27853641"), perm("531642"))
        );
        let p = perm("35142");
        for k in 1..=5 {
            assert_eq!(deflate(&p, k - 1, 1).unwrap(), (p.clone(), perm("1")));
        }
        assert_eq!(
            deflate(&perm("1423"), 1, 2),
            Err(Error::NotAnInterval { start: 2, end: 3 })
        );
        assert!(deflate(&p, 4, 2).is_err());
    }

    #[test]
    fn block_extent_examples() {
        let sp = perm("2 12 13 10 3 11 8 6 4 9 7 5 1");
        assert_eq!(max_block_extent(&sp, 6).unwrap(), 6);
        assert_eq!(max_block_extent(&sp, 12).unwrap(), 1);
        // {4,2} is not an interval but {4,2,3} is
        assert_eq!(max_block_extent(&perm("1423"), 1).unwrap(), 3);
        assert_eq!(max_block_extent(&perm("1423"), 0).unwrap(), 4);
        assert_eq!(max_block_extent(&perm("2413"), 0).unwrap(), 4);
        assert_eq!(max_block_extent(&perm("2413"), 1).unwrap(), 1);
        assert!(max_block_extent(&sp, 13).is_err());
    }

    #[test]
    fn max_insertion_and_deletion() {
        assert_eq!(delete_max(&perm("231")).unwrap(), (perm("21"), 2));
        assert_eq!(delete_max(&perm("1")).unwrap(), (Permutation::empty(), 1));
        assert!(delete_max(&Permutation::empty()).is_err());
        assert_eq!(insert_max(&perm("21"), 2).unwrap(), perm("231"));
        assert_eq!(insert_max(&Permutation::empty(), 1).unwrap(), perm("1"));
        assert_eq!(insert_max(&perm("12"), 1).unwrap(), perm("312"));
        assert!(insert_max(&perm("12"), 4).is_err());
        for p in Permutation::all(5) {
            let (rest, pos) = delete_max(&p).unwrap();
            assert_eq!(insert_max(&rest, pos).unwrap(), p);
        }
    }

    #[test]
    fn new_validates() {
        assert!(Permutation::new(vec![3, 1, 2]).is_ok());
        assert!(Permutation::new(vec![]).is_ok());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }
}
