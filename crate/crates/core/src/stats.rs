//! Descents, major index, right-to-left maxima, left-to-right minima, steps
//! and the positions of the two largest values.
//!
//! All index sets are 1-based and kept strictly ascending.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A strictly ascending set of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Maps every index through `f`, re-sorting the result.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> IndexSet {
        IndexSet::new(self.0.iter().map(|&i| f(i)).collect())
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

/// `{3,4,6}`
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub fn descent_set(p: &Permutation) -> IndexSet {
    let v = p.values();
    IndexSet((1..v.len()).filter(|&i| v[i - 1] > v[i]).collect())
}

pub fn major_index(p: &Permutation) -> usize {
    descent_set(p).sum()
}

/// Indices whose value exceeds every later value.
pub fn rl_maxima(p: &Permutation) -> IndexSet {
    let v = p.values();
    let mut out = Vec::new();
    let mut best = 0;
    for i in (0..v.len()).rev() {
        if v[i] > best {
            best = v[i];
            out.push(i + 1);
        }
    }
    out.reverse();
    IndexSet(out)
}

/// Indices whose value is below every earlier value.
pub fn lr_minima(p: &Permutation) -> IndexSet {
    let mut out = Vec::new();
    let mut best = usize::MAX;
    for (i, &x) in p.values().iter().enumerate() {
        if x < best {
            best = x;
            out.push(i + 1);
        }
    }
    IndexSet(out)
}

/// Indices `i` with `p_i - 1 = p_{i+1}`.
pub fn steps(p: &Permutation) -> IndexSet {
    let v = p.values();
    IndexSet((1..v.len()).filter(|&i| v[i - 1] == v[i] + 1).collect())
}

/// Positions of `n` and `n-1`.
pub fn positions_top_two(p: &Permutation) -> Result<(usize, usize)> {
    let n = p.len();
    if n < 2 {
        return Err(Error::TooShort {
            op: "positions_top_two",
            min: 2,
            len: n,
        });
    }
    Ok((p.position_of(n).unwrap(), p.position_of(n - 1).unwrap()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatisticProfile {
    pub des: IndexSet,
    pub maj: usize,
    pub rl_max: IndexSet,
    pub lr_min: IndexSet,
    pub steps: IndexSet,
    /// `None` only for the empty permutation.
    pub pos_n: Option<usize>,
    pub pos_n_minus_1: Option<usize>,
}

pub fn profile(p: &Permutation) -> StatisticProfile {
    let des = descent_set(p);
    let n = p.len();
    StatisticProfile {
        maj: des.sum(),
        des,
        rl_max: rl_maxima(p),
        lr_min: lr_minima(p),
        steps: steps(p),
        pos_n: p.position_of(n),
        pos_n_minus_1: n.checked_sub(1).and_then(|m| p.position_of(m)),
    }
}

impl StatisticProfile {
    /// Tab-separated `key=value` record, e.g.
    /// `perm=2 4 1 3\tdes={2}\tmaj=2\t...`. Absent positions print as `-`.
    pub fn record(&self, p: &Permutation) -> String {
        let pos = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |i| i.to_string());
        format!(
            "perm={p}\tdes={}\tmaj={}\trlmax={}\tlrmin={}\tsteps={}\tposn={}\tposn1={}",
            self.des,
            self.maj,
            self.rl_max,
            self.lr_min,
            self.steps,
            pos(self.pos_n),
            pos(self.pos_n_minus_1),
        )
    }
}
