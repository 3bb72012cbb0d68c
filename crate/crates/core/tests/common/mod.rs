//! Brute-force reference implementations used as oracles. Nothing here calls
//! into the library beyond constructing and reading `Permutation` values.

#![allow(dead_code)]

use itertools::Itertools;
use pattern_bijection::Permutation;

pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn from_values(v: Vec<usize>) -> Permutation {
    Permutation::new(v).unwrap()
}

/// All of `S_n`, via itertools, in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    (1..=n).permutations(n).map(from_values).collect()
}

/// Rank of every entry among the entries, by sorting.
pub fn naive_std(seq: &[usize]) -> Vec<usize> {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    seq.iter()
        .map(|x| sorted.iter().position(|y| y == x).unwrap() + 1)
        .collect()
}

/// Tries every subsequence of the right length.
pub fn naive_contains(p: &Permutation, pat: &[usize]) -> bool {
    p.values()
        .iter()
        .copied()
        .combinations(pat.len())
        .any(|sub| naive_std(&sub) == pat)
}

pub fn naive_class(n: usize, pats: &[&[usize]]) -> Vec<Permutation> {
    all_perms(n)
        .into_iter()
        .filter(|p| pats.iter().all(|pat| !naive_contains(p, pat)))
        .collect()
}

pub fn naive_des(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    (1..v.len()).filter(|&i| v[i - 1] > v[i]).collect()
}

pub fn naive_maj(p: &Permutation) -> usize {
    naive_des(p).iter().sum()
}

pub fn naive_rl(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    (1..=v.len())
        .filter(|&i| v[i..].iter().all(|&x| x < v[i - 1]))
        .collect()
}

pub fn naive_lr(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    (1..=v.len())
        .filter(|&i| v[..i - 1].iter().all(|&x| x > v[i - 1]))
        .collect()
}

pub fn naive_steps(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    (1..v.len()).filter(|&i| v[i - 1] == v[i] + 1).collect()
}

pub fn pos(p: &Permutation, value: usize) -> usize {
    p.values().iter().position(|&x| x == value).unwrap() + 1
}

/// Inflation written straight from its definition.
pub fn naive_inflate(sigma: &[usize], alpha: &[usize], a: usize) -> Vec<usize> {
    let l = alpha.len();
    let s = sigma[a];
    let hat = |x: usize| if x < s { x } else { x + l - 1 };
    let mut out: Vec<usize> = sigma[..a].iter().map(|&x| hat(x)).collect();
    out.extend(alpha.iter().map(|&x| x + s - 1));
    out.extend(sigma[a + 1..].iter().map(|&x| hat(x)));
    out
}

pub const P1423: &[usize] = &[1, 4, 2, 3];
pub const P2413: &[usize] = &[2, 4, 1, 3];
pub const P2314: &[usize] = &[2, 3, 1, 4];
