//! Library results checked against the plain reference implementations in
//! `common`.

mod common;

use std::collections::BTreeMap;

use common::*;
use pattern_bijection::oracle::{self, Statistic};
use pattern_bijection::*;

fn set(s: &str) -> PatternSet {
    s.parse().unwrap()
}

#[test]
fn enumeration_matches_naive_filter() {
    let cases: [(&str, &[&[usize]]); 5] = [
        ("1423", &[P1423]),
        ("2413", &[P2413]),
        ("2314", &[P2314]),
        ("1423,2413", &[P1423, P2413]),
        ("132,4321", &[&[1, 3, 2], &[4, 3, 2, 1]]),
    ];
    for (text, pats) in cases {
        let ps = set(text);
        for n in 0..=7 {
            let got: Vec<_> = enumerate_avoiders(n, &ps).collect();
            assert_eq!(got, naive_class(n, pats), "{text} n={n}");
        }
    }
}

#[test]
fn containment_matches_naive_on_s7() {
    for pat in [P1423, P2413, P2314, &[3, 1, 2][..], &[1][..]] {
        let pat_perm = from_values(pat.to_vec());
        for p in all_perms(7) {
            assert_eq!(
                contains(&p, &pat_perm).unwrap(),
                naive_contains(&p, pat),
                "{p} / {pat:?}"
            );
        }
    }
}

#[test]
fn class_sizes() {
    // frozen from the naive filter
    let sizes = [1u64, 2, 6, 23, 103, 512, 2740, 15485];
    for (n, &size) in (1..=8).zip(&sizes) {
        if n <= 7 {
            assert_eq!(naive_class(n, &[P1423]).len() as u64, size);
        }
        for pat in ["1423", "2413", "2314"] {
            assert_eq!(count_avoiders(n, &set(pat)), size, "{pat} n={n}");
        }
    }
    assert_eq!(count_avoiders(4, &set("2413")), 23);
    assert_eq!(count_avoiders(4, &set("1423,2413")), 22);
    assert_eq!(oracle::naive_count(6, &set("2314")), 512);
}

#[test]
fn avoidance_is_rc_symmetric_on_s6() {
    for pat in [P1423, P2413, P2314] {
        let tau = from_values(pat.to_vec());
        let rc_tau = tau.complement().reverse();
        for p in all_perms(6) {
            let rc_p = p.complement().reverse();
            assert_eq!(
                contains(&p, &tau).unwrap(),
                contains(&rc_p, &rc_tau).unwrap()
            );
        }
    }
}

#[test]
fn statistics_match_naive_on_s7() {
    for p in all_perms(7) {
        assert_eq!(descent_set(&p).as_slice(), naive_des(&p));
        assert_eq!(major_index(&p), naive_maj(&p));
        assert_eq!(rl_maxima(&p).as_slice(), naive_rl(&p));
        assert_eq!(lr_minima(&p).as_slice(), naive_lr(&p));
        assert_eq!(steps(&p).as_slice(), naive_steps(&p));
        assert_eq!(positions_top_two(&p).unwrap(), (pos(&p, 7), pos(&p, 6)));
    }
}

#[test]
fn inflation_laws_exhaustive() {
    for sigma in all_perms(4) {
        for alpha in all_perms(3) {
            for a in 0..4 {
                let sp = inflate(&sigma, &alpha, a + 1).unwrap();
                assert_eq!(
                    sp.values(),
                    naive_inflate(sigma.values(), alpha.values(), a)
                );
                assert_eq!(sp.len(), sigma.len() + alpha.len() - 1);
                // the block is the value interval starting at sigma_{a+1}
                let mut block = sp.values()[a..a + 3].to_vec();
                block.sort_unstable();
                let s = sigma.at(a + 1);
                assert_eq!(block, vec![s, s + 1, s + 2]);
                assert_eq!(deflate(&sp, a, 3).unwrap(), (sigma.clone(), alpha.clone()));
            }
        }
    }
}

#[test]
fn inflating_2413_avoiders_avoids_2413() {
    for sigma in naive_class(4, &[P2413]) {
        for alpha in naive_class(3, &[P2413]) {
            for k in 1..=4 {
                let sp = inflate(&sigma, &alpha, k).unwrap();
                assert!(!naive_contains(&sp, P2413), "{sigma} ({alpha}, {k}) = {sp}");
            }
        }
    }
    // also with a longer block
    for sigma in naive_class(4, &[P2413]) {
        for alpha in naive_class(4, &[P2413]) {
            for k in 1..=4 {
                let sp = inflate(&sigma, &alpha, k).unwrap();
                assert!(!naive_contains(&sp, P2413));
            }
        }
    }
}

#[test]
fn standardize_is_idempotent_and_rank_preserving() {
    let seqs: [&[i64]; 4] = [
        &[2, 6, 9, 3],
        &[-5, 10, 0, 3, 7],
        &[100],
        &[9, 8, 7, 1000, -1],
    ];
    for s in seqs {
        let p = standardize(s).unwrap();
        assert_eq!(standardize(p.values()).unwrap(), p);
        let as_usize: Vec<usize> = s.iter().map(|&x| (x + 100) as usize).collect();
        assert_eq!(p.values(), naive_std(&as_usize));
    }
}

#[test]
fn theta_claims_against_naive_statistics() {
    for n in 1..=7 {
        let sources = naive_class(n, &[P1423]);
        let mut images = Vec::new();
        for p in &sources {
            let q = theta(p).unwrap();
            assert!(!naive_contains(&q, P2413), "{p} -> {q}");
            assert_eq!(naive_des(&q), naive_des(p));
            assert_eq!(naive_rl(&q), naive_rl(p));
            assert_eq!(naive_steps(&q), naive_steps(p));
            assert_eq!(pos(&q, n), pos(p, n));
            if n >= 2 {
                assert_eq!(pos(&q, n - 1), pos(p, n - 1));
            }
            if !naive_contains(p, P2413) {
                assert_eq!(&q, p);
            }
            assert_eq!(&theta_inverse(&q).unwrap(), p);
            images.push(q);
        }
        images.sort();
        images.dedup();
        assert_eq!(images, naive_class(n, &[P2413]), "n={n}");
    }
}

#[test]
fn omega_claims_against_naive_statistics() {
    for n in 1..=6 {
        let sources = naive_class(n, &[P2314]);
        let mut images = Vec::new();
        for p in &sources {
            let q = omega(p).unwrap();
            assert!(!naive_contains(&q, P2413));
            assert_eq!(naive_des(&q), naive_des(p));
            assert_eq!(naive_lr(&q), naive_lr(p));
            assert_eq!(naive_steps(&q), naive_steps(p));
            assert_eq!(pos(&q, 1), pos(p, 1));
            if n >= 2 {
                assert_eq!(pos(&q, 2), pos(p, 2));
            }
            if !naive_contains(p, P2413) {
                assert_eq!(&q, p);
            }
            assert_eq!(&omega_inverse(&q).unwrap(), p);
            images.push(q);
        }
        images.sort();
        images.dedup();
        assert_eq!(images, naive_class(n, &[P2413]));
    }
}

fn naive_multiset<K: Ord>(
    perms: &[Permutation],
    f: impl Fn(&Permutation) -> K,
) -> BTreeMap<K, u64> {
    let mut m = BTreeMap::new();
    for p in perms {
        *m.entry(f(p)).or_insert(0) += 1;
    }
    m
}

#[test]
fn distributions_match_naive() {
    let t = oracle::distribution(3, &set("2413"), Statistic::Maj);
    let naive = naive_multiset(&naive_class(3, &[P2413]), naive_maj);
    assert_eq!(naive, BTreeMap::from([(0, 1), (1, 2), (2, 2), (3, 1)]));
    let got: BTreeMap<usize, u64> = t
        .entries()
        .iter()
        .map(|(k, &v)| (k.to_string().parse().unwrap(), v))
        .collect();
    assert_eq!(got, naive);

    for n in 1..=7 {
        let a = naive_multiset(&naive_class(n, &[P1423]), naive_maj);
        let b = naive_multiset(&naive_class(n, &[P2413]), naive_maj);
        let c = naive_multiset(&naive_class(n, &[P2314]), naive_maj);
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn rlmax_negative_control_outcome() {
    // The rlmax multisets of S_n(1423) and S_n(2314) agree for n <= 3 and
    // first differ at n = 4 on {2,4}: two 1423-avoiders, three 2314-avoiders.
    for n in 1..=3 {
        let a = naive_multiset(&naive_class(n, &[P1423]), naive_rl);
        let b = naive_multiset(&naive_class(n, &[P2314]), naive_rl);
        assert_eq!(a, b);
    }
    let a = naive_multiset(&naive_class(4, &[P1423]), naive_rl);
    let b = naive_multiset(&naive_class(4, &[P2314]), naive_rl);
    let first = a
        .keys()
        .chain(b.keys())
        .filter(|k| a.get(*k) != b.get(*k))
        .min()
        .unwrap();
    assert_eq!(first, &vec![2, 4]);
    assert_eq!((a[first], b[first]), (2, 3));

    let classes = [set("1423"), set("2314")];
    let r = oracle::check_equidistribution(4, &classes, Statistic::RlMax);
    let c = r.counterexample.unwrap();
    assert_eq!(c.input, "n=4 rlmax={2,4}");
    assert_eq!(c.expected, "2 in S_n(1423)");
    assert_eq!(c.actual, "3 in S_n(2314)");
}

#[test]
fn fixed_points_match_intersection() {
    for n in 1..=6 {
        let both = naive_class(n, &[P1423, P2413]);
        assert_eq!(oracle::fixed_points(n), both.len() as u64);
    }
    assert_eq!(oracle::fixed_points(4), 22);
}
