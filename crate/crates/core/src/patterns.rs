//! Pattern containment and enumeration of avoidance classes `S_n(τ₁, τ₂, …)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Search plan for one pattern. For slot `j` (pattern position, left to
/// right), `below[j]`/`above[j]` name the earlier slot holding the closest
/// smaller/larger pattern value; the text value chosen for slot `j` must sit
/// strictly between the values already chosen for those slots.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Matcher {
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Matcher {
    fn new(pat: &[usize]) -> Self {
        let k = pat.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for j in 0..k {
            below[j] = (0..j).filter(|&s| pat[s] < pat[j]).max_by_key(|&s| pat[s]);
            above[j] = (0..j).filter(|&s| pat[s] > pat[j]).min_by_key(|&s| pat[s]);
        }
        Matcher { below, above }
    }

    /// Finds an occurrence in `text`, returning 0-based positions. With
    /// `anchored`, the last pattern entry must land on the last text entry.
    fn find(&self, text: &[usize], anchored: bool) -> Option<Vec<usize>> {
        let k = self.below.len();
        if k > text.len() {
            return None;
        }
        let mut chosen = Vec::with_capacity(k);
        self.extend(text, anchored, 0, &mut chosen)
            .then_some(chosen)
    }

    fn extend(
        &self,
        text: &[usize],
        anchored: bool,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let k = self.below.len();
        let slot = chosen.len();
        if slot == k {
            return true;
        }
        let lo = self.below[slot].map_or(0, |s| text[chosen[s]]);
        let hi = self.above[slot].map_or(usize::MAX, |s| text[chosen[s]]);
        // leave room for the remaining slots
        let last = text.len() - (k - slot);
        let range = if anchored && slot + 1 == k {
            last..=last
        } else {
            start..=last
        };
        for i in range {
            if i < start {
                continue;
            }
            let v = text[i];
            if lo < v && v < hi {
                chosen.push(i);
                if self.extend(text, anchored, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// 1-based positions of some occurrence of `pat` in `p`, if any.
pub fn find_occurrence(p: &Permutation, pat: &Permutation) -> Result<Option<Vec<usize>>> {
    if pat.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(Matcher::new(pat.values())
        .find(p.values(), false)
        .map(|pos| pos.into_iter().map(|i| i + 1).collect()))
}

/// Whether some subsequence of `p` is order-isomorphic to `pat`.
pub fn contains(p: &Permutation, pat: &Permutation) -> Result<bool> {
    Ok(find_occurrence(p, pat)?.is_some())
}

pub fn avoids(p: &Permutation, pat: &Permutation) -> Result<bool> {
    contains(p, pat).map(|c| !c)
}

/// Fails with [`Error::ContainsPattern`] when `p` contains `pat`.
pub(crate) fn require_avoids(op: &'static str, p: &Permutation, pat: &Permutation) -> Result<()> {
    match find_occurrence(p, pat)? {
        None => Ok(()),
        Some(positions) => Err(Error::ContainsPattern {
            op,
            pattern: pat.clone(),
            perm: p.clone(),
            positions,
        }),
    }
}

/// A non-empty, duplicate-free list of non-empty patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
    matchers: Vec<Matcher>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() || patterns.iter().any(Permutation::is_empty) {
            return Err(Error::EmptyPattern);
        }
        let mut unique: Vec<Permutation> = Vec::with_capacity(patterns.len());
        for p in patterns {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        let matchers = unique.iter().map(|p| Matcher::new(p.values())).collect();
        Ok(PatternSet {
            patterns: unique,
            matchers,
        })
    }

    pub fn single(pattern: Permutation) -> Result<Self> {
        PatternSet::new(vec![pattern])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn is_avoided_by(&self, p: &Permutation) -> bool {
        self.matchers
            .iter()
            .all(|m| m.find(p.values(), false).is_none())
    }

    /// Whether appending the last entry of `prefix` created an occurrence.
    /// Valid when `prefix[..len-1]` already avoids every pattern.
    fn last_entry_completes(&self, prefix: &[usize]) -> bool {
        self.matchers.iter().any(|m| m.find(prefix, true).is_some())
    }
}

/// `1423,2413` or `"1 4 2 3, 2 4 1 3"`.
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let patterns = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        PatternSet::new(patterns)
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.values().iter().all(|&v| v <= 9) {
                for v in p.values() {
                    write!(f, "{v}")?;
                }
            } else {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// Lexicographic stream of the permutations of length `n` avoiding every
/// pattern in a [`PatternSet`].
///
/// Prefixes are extended one value at a time and abandoned as soon as the new
/// entry completes an occurrence, so only the avoidance tree is visited.
#[derive(Debug, Clone)]
pub struct Avoiders<'a> {
    n: usize,
    patterns: &'a PatternSet,
    prefix: Vec<usize>,
    used: Vec<bool>,
    /// smallest value still to try at each depth
    cursor: Vec<usize>,
    /// depth below which the prefix is fixed
    floor: usize,
    done: bool,
}

impl<'a> Avoiders<'a> {
    fn rooted(n: usize, patterns: &'a PatternSet, root: &[usize]) -> Self {
        let mut used = vec![false; n + 2];
        for &v in root {
            used[v] = true;
        }
        let mut it = Avoiders {
            n,
            patterns,
            prefix: root.to_vec(),
            used,
            cursor: vec![1; n + 1],
            floor: root.len(),
            done: false,
        };
        // the root itself must avoid every pattern
        it.done = (1..=root.len()).any(|k| it.patterns.last_entry_completes(&root[..k]));
        it
    }

    fn backtrack(&mut self) {
        if self.prefix.len() <= self.floor {
            self.done = true;
            return;
        }
        let v = self.prefix.pop().unwrap();
        self.used[v] = false;
    }
}

impl Iterator for Avoiders<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation::from_vec_unchecked(self.prefix.clone());
                self.backtrack();
                return Some(out);
            }
            let mut placed = false;
            let mut v = self.cursor[depth];
            while v <= self.n {
                if !self.used[v] {
                    self.prefix.push(v);
                    if self.patterns.last_entry_completes(&self.prefix) {
                        self.prefix.pop();
                    } else {
                        self.used[v] = true;
                        self.cursor[depth] = v + 1;
                        self.cursor[depth + 1] = 1;
                        placed = true;
                        break;
                    }
                }
                v += 1;
            }
            if !placed {
                self.cursor[depth] = 1;
                self.backtrack();
            }
        }
    }
}

pub fn enumerate_avoiders(n: usize, patterns: &PatternSet) -> Avoiders<'_> {
    Avoiders::rooted(n, patterns, &[])
}

/// Same sequence as [`enumerate_avoiders`], built by splitting the prefix
/// tree on the first entry across worker threads.
pub fn collect_avoiders(n: usize, patterns: &PatternSet) -> Vec<Permutation> {
    if n < 2 {
        return enumerate_avoiders(n, patterns).collect();
    }
    (1..=n)
        .into_par_iter()
        .map(|first| Avoiders::rooted(n, patterns, &[first]).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn count_avoiders(n: usize, patterns: &PatternSet) -> u64 {
    if n < 2 {
        return enumerate_avoiders(n, patterns).count() as u64;
    }
    (1..=n)
        .into_par_iter()
        .map(|first| Avoiders::rooted(n, patterns, &[first]).count() as u64)
        .sum()
}
