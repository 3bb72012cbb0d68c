//! The decomposition `φ/χ/ρ`, the recursive map `Θ: S_n(1423) → S_n(2413)`,
//! its inverse, and the conjugate `Ω = cr∘Θ∘rc: S_n(2314) → S_n(2413)`.
//!
//! `Θ` dispatches on three cases, tried in this order:
//!
//! 1. `π` has a step: collapse the `21` block at the first step, map the
//!    shorter permutation, and re-inflate the block.
//! 2. no step and `a = 0`: the maximum sits at `b`; remove it, map the rest,
//!    and put it back at `b`.
//! 3. no step and `a > 0`: split `π` into `π⁽¹⁾` and `π⁽²⁾`, map both, and
//!    inflate position `a+1` of `Θ(π⁽¹⁾)` by `Θ(π⁽²⁾)`.
//!
//! Every case reduces the length, so recursion depth is bounded by `n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::patterns::require_avoids;
use crate::perm::{
    deflate, delete_max, inflate, insert_max, max_block_extent, std_distinct, Permutation,
};
use crate::stats::{descent_set, rl_maxima, steps, IndexSet};

/// `φ(π) = (a, b)`: `b` is the first index of the final run of
/// right-to-left maxima (so `π_b` is the smallest ascent top), and `a` is the
/// right-to-left maximum just before that run, or `0` if there is none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DecompositionPoint {
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub point: DecompositionPoint,
    /// largest value strictly between positions `a` and `b`
    pub chi: usize,
    /// right-to-left maxima after `b` whose value exceeds `chi`
    pub rho: usize,
    pub pi1: Permutation,
    pub pi2: Permutation,
}

pub fn phi(p: &Permutation) -> Result<DecompositionPoint> {
    if p.is_decreasing() {
        return Err(Error::Decreasing {
            op: "phi",
            perm: p.clone(),
        });
    }
    let rl = rl_maxima(p);
    let rl = rl.as_slice();
    let n = p.len();
    // rl is ascending and always ends at n; walk back over the final run
    let mut run = rl.len() - 1;
    while run > 0 && rl[run - 1] + 1 == rl[run] {
        run -= 1;
    }
    let b = rl[run];
    debug_assert!(b >= 2 && rl[run..].len() == n + 1 - b);
    let a = if run == 0 { 0 } else { rl[run - 1] };
    Ok(DecompositionPoint { a, b })
}

pub fn decompose(p: &Permutation) -> Result<Decomposition> {
    let point = phi(p)?;
    let DecompositionPoint { a, b } = point;
    let v = p.values();
    // positions a+1..=b-1, non-empty since b - a >= 2
    let chi = *v[a..b - 1].iter().max().expect("b - a >= 2");
    let rho = (b + 1..=p.len()).filter(|&i| v[i - 1] > chi).count();
    debug_assert!((b + 1..=b + rho).all(|i| v[i - 1] > chi));

    let mut first: Vec<usize> = v[..a].to_vec();
    first.extend_from_slice(&v[b - 1..b + rho]);
    let mut second: Vec<usize> = v[a..b].to_vec();
    second.extend_from_slice(&v[b + rho..]);

    Ok(Decomposition {
        point,
        chi,
        rho,
        pi1: std_distinct(&first),
        pi2: std_distinct(&second),
    })
}

/// Which definition of `Θ` to run. `WithoutStepCase` drops the step case
/// (decreasing inputs are returned unchanged so the map stays total); it is
/// not injective and exists to exercise the verification harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Standard,
    WithoutStepCase,
}

/// Facts about decomposition and inflation that the recursion relies on,
/// checked on every invocation of the corresponding case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    /// `π = π'(21, k)` for the collapsed `π'` in the step case.
    StepBlock,
    /// `|π⁽¹⁾| = a+ρ+1 < n`, `|π⁽²⁾| = n-a-ρ < n`.
    DecompositionSize,
    /// The entries moved into `π⁽²⁾` other than `π_b` are exactly `[1, χ]`
    /// and `χ = |π⁽²⁾| - 1`.
    DecompositionInterval,
    /// `RL(π⁽¹⁾) = (RL(π) ∩ [1,a]) ∪ [a+1,m]`, `RL(π⁽²⁾) = [b-a, l]`.
    DecompositionRl,
    /// Descent sets of `π⁽¹⁾` and `π⁽²⁾` in terms of `Des π`.
    DecompositionDescents,
    /// `stp π⁽¹⁾ ⊆ {a}` and `stp π⁽²⁾ = ∅`.
    DecompositionSteps,
    /// The inflated block occupies the value interval `[σ_{a+1}, σ_{a+1}+l-1]`.
    InflationInterval,
    /// Inflating 2413-avoiders yields a 2413-avoider.
    InflationAvoidance,
    /// `RL(σ') = RL(π)`.
    InflationRl,
    /// `Des σ' = Des π`.
    InflationDescents,
    /// `α_1 < l` and `stp σ' = ∅`.
    InflationSteps,
    /// `a + l` is the largest index with an interval block starting at `a+1`.
    InflationRecovery,
}

impl Lemma {
    pub const ALL: [Lemma; 12] = [
        Lemma::StepBlock,
        Lemma::DecompositionSize,
        Lemma::DecompositionInterval,
        Lemma::DecompositionRl,
        Lemma::DecompositionDescents,
        Lemma::DecompositionSteps,
        Lemma::InflationInterval,
        Lemma::InflationAvoidance,
        Lemma::InflationRl,
        Lemma::InflationDescents,
        Lemma::InflationSteps,
        Lemma::InflationRecovery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::StepBlock => "step-block",
            Lemma::DecompositionSize => "decomposition-size",
            Lemma::DecompositionInterval => "decomposition-interval",
            Lemma::DecompositionRl => "decomposition-rlmax",
            Lemma::DecompositionDescents => "decomposition-descents",
            Lemma::DecompositionSteps => "decomposition-steps",
            Lemma::InflationInterval => "inflation-interval",
            Lemma::InflationAvoidance => "inflation-avoids-2413",
            Lemma::InflationRl => "inflation-rlmax",
            Lemma::InflationDescents => "inflation-descents",
            Lemma::InflationSteps => "inflation-steps",
            Lemma::InflationRecovery => "inflation-recovery",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub checked: u64,
    /// first argument of `Θ` on which the lemma failed
    pub first_violation: Option<Permutation>,
}

/// Caller-owned sink for lemma checks made by [`theta_checked`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaLog {
    tallies: BTreeMap<Lemma, LemmaTally>,
}

impl LemmaLog {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, lemma: Lemma, input: &Permutation, holds: bool) {
        let tally = self.tallies.entry(lemma).or_default();
        tally.checked += 1;
        if !holds && tally.first_violation.is_none() {
            tally.first_violation = Some(input.clone());
        }
    }

    pub fn tally(&self, lemma: Lemma) -> LemmaTally {
        self.tallies.get(&lemma).cloned().unwrap_or_default()
    }

    pub fn all_hold(&self) -> bool {
        self.tallies.values().all(|t| t.first_violation.is_none())
    }

    /// Folds another log into this one; `other`'s violations only fill
    /// slots this log has not already claimed.
    pub fn merge(&mut self, other: &LemmaLog) {
        for (&lemma, t) in &other.tallies {
            let mine = self.tallies.entry(lemma).or_default();
            mine.checked += t.checked;
            if mine.first_violation.is_none() {
                mine.first_violation.clone_from(&t.first_violation);
            }
        }
    }
}

fn pattern(values: &[usize]) -> Permutation {
    Permutation::from_vec_unchecked(values.to_vec())
}

fn p1423() -> Permutation {
    pattern(&[1, 4, 2, 3])
}
fn p2413() -> Permutation {
    pattern(&[2, 4, 1, 3])
}
fn p2314() -> Permutation {
    pattern(&[2, 3, 1, 4])
}
fn p21() -> Permutation {
    pattern(&[2, 1])
}

/// `Θ(p)` for a 1423-avoiding `p`.
pub fn theta(p: &Permutation) -> Result<Permutation> {
    require_avoids("theta", p, &p1423())?;
    Ok(theta_rec(p, Variant::Standard, None))
}

/// `Θ(p)`, checking every decomposition and inflation lemma on the way.
pub fn theta_checked(p: &Permutation, log: &mut LemmaLog) -> Result<Permutation> {
    require_avoids("theta", p, &p1423())?;
    Ok(theta_rec(p, Variant::Standard, Some(log)))
}

pub fn theta_variant(p: &Permutation, variant: Variant) -> Result<Permutation> {
    require_avoids("theta", p, &p1423())?;
    Ok(theta_rec(p, variant, None))
}

fn theta_rec(p: &Permutation, variant: Variant, mut log: Option<&mut LemmaLog>) -> Permutation {
    if p.len() <= 1 {
        return p.clone();
    }
    let stp = steps(p);
    if variant == Variant::Standard {
        if let Some(k) = stp.first() {
            let (shorter, _) = deflate(p, k - 1, 2).expect("a step is an interval block");
            if let Some(log) = log.as_deref_mut() {
                let again = inflate(&shorter, &p21(), k).ok();
                log.record(Lemma::StepBlock, p, again.as_ref() == Some(p));
            }
            let image = theta_rec(&shorter, variant, log);
            return inflate(&image, &p21(), k).expect("k is in range");
        }
    } else if p.is_decreasing() {
        return p.clone();
    }

    let DecompositionPoint { a, b } = phi(p).expect("decreasing permutations have steps");
    if a == 0 {
        let (rest, _) = delete_max(p).expect("non-empty");
        let image = theta_rec(&rest, variant, log);
        return insert_max(&image, b).expect("b <= n");
    }

    let d = decompose(p).expect("not decreasing");
    if let Some(log) = log.as_deref_mut() {
        check_decomposition(p, &d, stp.is_empty(), log);
    }
    let sigma = theta_rec(&d.pi1, variant, log.as_deref_mut());
    let alpha = theta_rec(&d.pi2, variant, log.as_deref_mut());
    let image = inflate(&sigma, &alpha, a + 1).expect("a + 1 <= m");
    if let Some(log) = log {
        check_inflation(p, &d, &sigma, &alpha, &image, log);
    }
    image
}

fn interval(lo: usize, hi: usize) -> IndexSet {
    (lo..=hi).collect()
}

fn check_decomposition(p: &Permutation, d: &Decomposition, stepless: bool, log: &mut LemmaLog) {
    let n = p.len();
    let DecompositionPoint { a, b } = d.point;
    let (m, l) = (d.pi1.len(), d.pi2.len());
    let v = p.values();

    log.record(
        Lemma::DecompositionSize,
        p,
        m == a + d.rho + 1 && l == n - a - d.rho && m < n && l < n && b >= a + 2,
    );

    let mut moved: Vec<usize> = v[a..b - 1].to_vec();
    moved.extend_from_slice(&v[b + d.rho..]);
    moved.sort_unstable();
    let expected: Vec<usize> = (1..=d.chi).collect();
    log.record(
        Lemma::DecompositionInterval,
        p,
        moved == expected && d.chi == l - 1,
    );

    let rl = rl_maxima(p);
    let rl_head: IndexSet = rl.iter().filter(|&i| i <= a).collect();
    let rl1: IndexSet = rl_head.iter().chain(a + 1..=m).collect();
    log.record(
        Lemma::DecompositionRl,
        p,
        rl_maxima(&d.pi1) == rl1 && rl_maxima(&d.pi2) == interval(b - a, l),
    );

    let des = descent_set(p);
    let des1: IndexSet = des.iter().filter(|&i| i <= a).chain(a + 1..m).collect();
    let des2: IndexSet = des
        .iter()
        .filter(|&i| a < i && i < b)
        .map(|i| i - a)
        .chain(b - a..l)
        .collect();
    log.record(
        Lemma::DecompositionDescents,
        p,
        descent_set(&d.pi1) == des1 && descent_set(&d.pi2) == des2,
    );

    if stepless {
        log.record(
            Lemma::DecompositionSteps,
            p,
            steps(&d.pi1).iter().all(|i| i == a) && steps(&d.pi2).is_empty(),
        );
    }
}

fn check_inflation(
    p: &Permutation,
    d: &Decomposition,
    sigma: &Permutation,
    alpha: &Permutation,
    image: &Permutation,
    log: &mut LemmaLog,
) {
    let a = d.point.a;
    let l = alpha.len();
    let pivot = sigma.at(a + 1);

    let mut block = image.values()[a..a + l].to_vec();
    block.sort_unstable();
    log.record(
        Lemma::InflationInterval,
        p,
        block == (pivot..pivot + l).collect::<Vec<_>>(),
    );

    let inputs_avoid = [sigma, alpha]
        .iter()
        .all(|q| require_avoids("inflate", q, &p2413()).is_ok());
    if inputs_avoid {
        log.record(
            Lemma::InflationAvoidance,
            p,
            require_avoids("inflate", image, &p2413()).is_ok(),
        );
    }

    log.record(Lemma::InflationRl, p, rl_maxima(image) == rl_maxima(p));
    log.record(
        Lemma::InflationDescents,
        p,
        descent_set(image) == descent_set(p),
    );

    let premises = steps(alpha).is_empty() && steps(sigma).iter().all(|i| i == a);
    if premises {
        log.record(
            Lemma::InflationSteps,
            p,
            alpha.at(1) < l && steps(image).is_empty(),
        );
        log.record(
            Lemma::InflationRecovery,
            p,
            max_block_extent(image, a).ok() == Some(l),
        );
    }
}

/// The unique 1423-avoider that `Θ` sends to `q`.
pub fn theta_inverse(q: &Permutation) -> Result<Permutation> {
    require_avoids("theta_inverse", q, &p2413())?;
    Ok(theta_inverse_rec(q))
}

fn theta_inverse_rec(q: &Permutation) -> Permutation {
    let n = q.len();
    if n <= 1 {
        return q.clone();
    }
    // Θ preserves steps and φ, so the case is readable from the image.
    if let Some(k) = steps(q).first() {
        let (shorter, _) = deflate(q, k - 1, 2).expect("a step is an interval block");
        let pre = theta_inverse_rec(&shorter);
        return inflate(&pre, &p21(), k).expect("k is in range");
    }

    let DecompositionPoint { a, b } = phi(q).expect("decreasing permutations have steps");
    if a == 0 {
        let (rest, _) = delete_max(q).expect("non-empty");
        let pre = theta_inverse_rec(&rest);
        return insert_max(&pre, b).expect("b <= n");
    }

    let l = max_block_extent(q, a).expect("a < n");
    let (sigma, alpha) = deflate(q, a, l).expect("maximal block is an interval");
    let pi1 = theta_inverse_rec(&sigma);
    let pi2 = theta_inverse_rec(&alpha);
    reassemble(&pi1, &pi2, a, b, n)
}

/// Rebuilds `π` from `π⁽¹⁾`, `π⁽²⁾` and `φ(π) = (a, b)`.
///
/// `π⁽¹⁾ + (l-1)` fills positions `1..=a` and `b..=b+ρ`; `π⁽²⁾` with its
/// maximum `l` removed fills `a+1..b` and `b+ρ+1..=n`.
fn reassemble(pi1: &Permutation, pi2: &Permutation, a: usize, b: usize, n: usize) -> Permutation {
    let (m, l) = (pi1.len(), pi2.len());
    let rho = m - a - 1;
    let lifted: Vec<usize> = pi1.values().iter().map(|&v| v + l - 1).collect();
    let low: Vec<usize> = pi2.values().iter().copied().filter(|&v| v != l).collect();
    let gap = b - 1 - a;

    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&lifted[..a]);
    out.extend_from_slice(&low[..gap]);
    out.extend_from_slice(&lifted[a..]);
    out.extend_from_slice(&low[gap..]);
    debug_assert_eq!(out.len(), n);
    debug_assert_eq!(a + rho + 1, m);
    Permutation::from_vec_unchecked(out)
}

fn rc(p: &Permutation) -> Permutation {
    p.complement().reverse()
}

/// `Ω = cr∘Θ∘rc` on 2314-avoiders.
pub fn omega(p: &Permutation) -> Result<Permutation> {
    require_avoids("omega", p, &p2314())?;
    Ok(rc(&theta_rec(&rc(p), Variant::Standard, None)))
}

pub fn omega_inverse(q: &Permutation) -> Result<Permutation> {
    require_avoids("omega_inverse", q, &p2413())?;
    Ok(rc(&theta_inverse_rec(&rc(q))))
}
