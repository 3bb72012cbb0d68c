//! Exhaustive verification harness.
//!
//! Every check walks `n = 1, 2, …` in order and each class in lexicographic
//! order, so the reported counterexample is always the lexicographically
//! least failing input at the smallest failing `n`, whatever the thread
//! count.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bijection::{
    omega, omega_inverse, phi, theta_checked, theta_inverse, theta_variant, Lemma, LemmaLog,
    Variant,
};
use crate::error::{Error, Result};
use crate::patterns::{collect_avoiders, count_avoiders, PatternSet};
use crate::perm::{std_distinct, Permutation};
use crate::stats::{descent_set, lr_minima, rl_maxima, steps, IndexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    Maj,
    Des,
    RlMax,
    LrMin,
    Steps,
    PosN,
    PosN1,
}

impl Statistic {
    pub const ALL: [Statistic; 7] = [
        Statistic::Maj,
        Statistic::Des,
        Statistic::RlMax,
        Statistic::LrMin,
        Statistic::Steps,
        Statistic::PosN,
        Statistic::PosN1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Maj => "maj",
            Statistic::Des => "des",
            Statistic::RlMax => "rlmax",
            Statistic::LrMin => "lrmin",
            Statistic::Steps => "steps",
            Statistic::PosN => "posn",
            Statistic::PosN1 => "posn1",
        }
    }

    pub fn eval(self, p: &Permutation) -> StatValue {
        let n = p.len();
        let pos = |v: Option<usize>| v.map_or(StatValue::Absent, StatValue::Int);
        match self {
            Statistic::Maj => StatValue::Int(descent_set(p).sum()),
            Statistic::Des => StatValue::Set(descent_set(p)),
            Statistic::RlMax => StatValue::Set(rl_maxima(p)),
            Statistic::LrMin => StatValue::Set(lr_minima(p)),
            Statistic::Steps => StatValue::Set(steps(p)),
            Statistic::PosN => pos(p.position_of(n)),
            Statistic::PosN1 => pos(n.checked_sub(1).and_then(|m| p.position_of(m))),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "maj" => Statistic::Maj,
            "des" | "des-set" => Statistic::Des,
            "rlmax" | "rlmax-set" => Statistic::RlMax,
            "lrmin" | "lrmin-set" => Statistic::LrMin,
            "steps" | "steps-set" => Statistic::Steps,
            "posn" | "pos-n" => Statistic::PosN,
            "posn1" | "pos-n1" => Statistic::PosN1,
            other => return Err(Error::UnknownStatistic(other.to_string())),
        })
    }
}

/// A statistic value; sets compare by their ascending sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatValue {
    Int(usize),
    Set(IndexSet),
    Absent,
}

impl fmt::Display for StatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatValue::Int(v) => write!(f, "{v}"),
            StatValue::Set(s) => write!(f, "{s}"),
            StatValue::Absent => f.write_str("-"),
        }
    }
}

/// Multiset of one statistic over an avoidance class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub stat: Statistic,
    entries: BTreeMap<StatValue, u64>,
}

impl DistributionTable {
    pub fn from_perms<'a>(
        stat: Statistic,
        perms: impl IntoIterator<Item = &'a Permutation>,
    ) -> Self {
        let mut entries = BTreeMap::new();
        for p in perms {
            *entries.entry(stat.eval(p)).or_insert(0) += 1;
        }
        DistributionTable { stat, entries }
    }

    pub fn entries(&self) -> &BTreeMap<StatValue, u64> {
        &self.entries
    }

    pub fn get(&self, value: &StatValue) -> u64 {
        self.entries.get(value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Smallest value whose counts differ, with both counts.
    pub fn first_difference(&self, other: &DistributionTable) -> Option<(StatValue, u64, u64)> {
        let keys: std::collections::BTreeSet<&StatValue> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter()
            .map(|k| (k.clone(), self.get(k), other.get(k)))
            .find(|(_, x, y)| x != y)
    }
}

impl fmt::Display for DistributionTable {
    /// One `value<TAB>count` line per value, ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in &self.entries {
            writeln!(f, "{v}\t{c}")?;
        }
        Ok(())
    }
}

pub fn distribution(n: usize, patterns: &PatternSet, stat: Statistic) -> DistributionTable {
    DistributionTable::from_perms(stat, &collect_avoiders(n, patterns))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// failing input: a permutation, or a description for aggregate checks
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub property: String,
    pub range: RangeInclusive<usize>,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Tab-separated `key=value` record.
    pub fn record(&self) -> String {
        let (input, expected, actual) = match &self.counterexample {
            Some(c) => (c.input.as_str(), c.expected.as_str(), c.actual.as_str()),
            None => ("-", "-", "-"),
        };
        format!(
            "property={}\trange={}-{}\tpass={}\tinput={}\texpected={}\tactual={}\telapsed_ms={}",
            self.property,
            self.range.start(),
            self.range.end(),
            self.pass(),
            input,
            expected,
            actual,
            self.elapsed.as_millis()
        )
    }
}

/// Human-readable table of reports.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.property.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut out = format!(
        "{:<width$}  {:<7}  {:<6}  {:>9}  counterexample\n",
        "property", "n", "result", "time"
    );
    for r in reports {
        let n = format!("{}..{}", r.range.start(), r.range.end());
        let result = if r.pass() { "pass" } else { "FAIL" };
        let time = format!("{:.1}ms", r.elapsed.as_secs_f64() * 1e3);
        let cx = r.counterexample.as_ref().map_or_else(String::new, |c| {
            format!(
                "input [{}] expected [{}] actual [{}]",
                c.input, c.expected, c.actual
            )
        });
        out.push_str(&format!(
            "{:<width$}  {n:<7}  {result:<6}  {time:>9}  {cx}\n",
            r.property
        ));
    }
    out
}

/// Accumulates one property across a sweep of increasing `n`, keeping only
/// the first counterexample.
struct Check {
    property: String,
    lo: usize,
    hi: usize,
    counterexample: Option<Counterexample>,
    elapsed: Duration,
}

impl Check {
    fn new(property: impl Into<String>, lo: usize, hi: usize) -> Self {
        Check {
            property: property.into(),
            lo,
            hi,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Runs `f` unless an earlier `n` already failed.
    fn run(&mut self, f: impl FnOnce() -> Option<Counterexample>) {
        if self.counterexample.is_some() {
            return;
        }
        let start = Instant::now();
        self.counterexample = f();
        self.elapsed += start.elapsed();
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            property: self.property,
            range: self.lo..=self.hi,
            counterexample: self.counterexample,
            elapsed: self.elapsed,
        }
    }
}

fn single(pattern: &str) -> PatternSet {
    pattern.parse().expect("built-in pattern")
}

/// Equidistribution of `stat` over the given classes at one length.
pub fn check_equidistribution(
    n: usize,
    classes: &[PatternSet],
    stat: Statistic,
) -> VerificationReport {
    let name = classes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("/");
    let mut check = Check::new(format!("equidistribution.{stat}.{name}"), n, n);
    check.run(|| equidistribution_failure(n, classes, stat));
    check.finish()
}

fn equidistribution_failure(
    n: usize,
    classes: &[PatternSet],
    stat: Statistic,
) -> Option<Counterexample> {
    let (first, rest) = classes.split_first()?;
    let base = distribution(n, first, stat);
    rest.iter().find_map(|ps| {
        let other = distribution(n, ps, stat);
        base.first_difference(&other)
            .map(|(value, x, y)| Counterexample {
                input: format!("n={n} {stat}={value}"),
                expected: format!("{x} in S_n({first})"),
                actual: format!("{y} in S_n({ps})"),
            })
    })
}

/// A named statistic rendered as text, so values of any type compare.
type Preserved = (&'static str, fn(&Permutation) -> String);

/// Everything one bijection suite needs to know about its map.
struct Suite<'a> {
    prefix: &'static str,
    source: PatternSet,
    target: PatternSet,
    forward: &'a (dyn Fn(&Permutation) -> Permutation + Sync),
    inverse: &'a (dyn Fn(&Permutation) -> Permutation + Sync),
    preserved: &'a [Preserved],
}

fn describe_first<T>(
    items: &[T],
    f: impl Fn(&T) -> Option<Counterexample> + Sync + Send,
) -> Option<Counterexample>
where
    T: Sync,
{
    items.par_iter().find_map_first(f)
}

impl Suite<'_> {
    fn run(
        &self,
        range: RangeInclusive<usize>,
        lemmas: Option<&mut LemmaLog>,
    ) -> Vec<VerificationReport> {
        let p = self.prefix;
        let (lo, max_n) = (*range.start(), *range.end());
        let mut range = Check::new(format!("{p}.range"), lo, max_n);
        let mut injective = Check::new(format!("{p}.injective"), lo, max_n);
        let mut onto = Check::new(format!("{p}.surjective"), lo, max_n);
        let mut left = Check::new(format!("{p}.inverse-after-map"), lo, max_n);
        let mut right = Check::new(format!("{p}.map-after-inverse"), lo, max_n);
        let mut preserved: Vec<Check> = self
            .preserved
            .iter()
            .map(|(name, _)| Check::new(format!("{p}.preserves-{name}"), lo, max_n))
            .collect();
        let mut fixed = Check::new(format!("{p}.fixed-points"), lo, max_n);

        let both = PatternSet::new(
            self.source
                .patterns()
                .iter()
                .chain(self.target.patterns())
                .cloned()
                .collect(),
        )
        .expect("non-empty");
        let mut lemmas = lemmas;

        for n in lo..=max_n {
            let sources = collect_avoiders(n, &self.source);
            let targets = collect_avoiders(n, &self.target);
            let images: Vec<Permutation> = sources.par_iter().map(|s| (self.forward)(s)).collect();
            let pairs: Vec<(&Permutation, &Permutation)> = sources.iter().zip(&images).collect();

            if let Some(log) = lemmas.as_deref_mut() {
                // lemma checks are always against Θ; the suite's map may be a variant
                let logs: Vec<LemmaLog> = sources
                    .par_iter()
                    .map(|s| {
                        let mut l = LemmaLog::new();
                        theta_checked(s, &mut l).expect("source avoids 1423");
                        l
                    })
                    .collect();
                for l in &logs {
                    log.merge(l);
                }
            }

            range.run(|| {
                describe_first(&pairs, |(s, t)| {
                    (!self.target.is_avoided_by(t)).then(|| Counterexample {
                        input: s.to_string(),
                        expected: format!("image avoiding {}", self.target),
                        actual: t.to_string(),
                    })
                })
            });

            injective.run(|| {
                let mut seen: HashMap<&Permutation, &Permutation> = HashMap::new();
                pairs.iter().find_map(|&(s, t)| {
                    seen.insert(t, s).map(|earlier| Counterexample {
                        input: s.to_string(),
                        expected: format!("image distinct from that of {earlier}"),
                        actual: t.to_string(),
                    })
                })
            });

            onto.run(|| {
                let hit: HashSet<&Permutation> = images.iter().collect();
                targets
                    .iter()
                    .find(|t| !hit.contains(t))
                    .map(|t| Counterexample {
                        input: t.to_string(),
                        expected: "a preimage".into(),
                        actual: format!(
                            "none ({} sources, {} targets)",
                            sources.len(),
                            targets.len()
                        ),
                    })
            });

            left.run(|| {
                describe_first(&pairs, |(s, t)| {
                    let back = (self.inverse)(t);
                    (&back != *s).then(|| Counterexample {
                        input: s.to_string(),
                        expected: s.to_string(),
                        actual: back.to_string(),
                    })
                })
            });

            right.run(|| {
                describe_first(&targets, |t| {
                    let again = (self.forward)(&(self.inverse)(t));
                    (&again != t).then(|| Counterexample {
                        input: t.to_string(),
                        expected: t.to_string(),
                        actual: again.to_string(),
                    })
                })
            });

            for (check, (_, f)) in preserved.iter_mut().zip(self.preserved) {
                check.run(|| {
                    describe_first(&pairs, |(s, t)| {
                        let (x, y) = (f(s), f(t));
                        (x != y).then(|| Counterexample {
                            input: s.to_string(),
                            expected: x,
                            actual: format!("{y} for image {t}"),
                        })
                    })
                });
            }

            fixed.run(|| {
                describe_first(&pairs, |(s, t)| {
                    (both.is_avoided_by(s) && s != t).then(|| Counterexample {
                        input: s.to_string(),
                        expected: s.to_string(),
                        actual: t.to_string(),
                    })
                })
            });
        }

        let mut out = vec![range, injective, onto, left, right];
        out.extend(preserved);
        out.push(fixed);
        out.into_iter().map(Check::finish).collect()
    }
}

fn phi_string(p: &Permutation) -> String {
    match phi(p) {
        Ok(pt) => format!("({},{})", pt.a, pt.b),
        Err(_) => "decreasing".into(),
    }
}

/// Exhaustive checks of `Θ` over `S_n(1423)` for `n = 1..=max_n`.
pub fn verify_theta(max_n: usize, checked_mode: bool) -> Vec<VerificationReport> {
    verify_theta_variant(1..=max_n, checked_mode, Variant::Standard)
}

/// [`verify_theta`] over an arbitrary range of lengths, running the given
/// definition of `Θ`. Lemma checks always follow the standard definition.
pub fn verify_theta_variant(
    range: RangeInclusive<usize>,
    checked_mode: bool,
    variant: Variant,
) -> Vec<VerificationReport> {
    let forward = move |p: &Permutation| theta_variant(p, variant).expect("source avoids 1423");
    let inverse = |q: &Permutation| theta_inverse(q).expect("target avoids 2413");
    let preserved: [Preserved; 7] = [
        ("des", |p| Statistic::Des.eval(p).to_string()),
        ("rlmax", |p| Statistic::RlMax.eval(p).to_string()),
        ("steps", |p| Statistic::Steps.eval(p).to_string()),
        ("posn", |p| Statistic::PosN.eval(p).to_string()),
        ("posn1", |p| Statistic::PosN1.eval(p).to_string()),
        ("maj", |p| Statistic::Maj.eval(p).to_string()),
        ("phi", phi_string),
    ];

    let suite = Suite {
        prefix: "theta",
        source: single("1423"),
        target: single("2413"),
        forward: &forward,
        inverse: &inverse,
        preserved: &preserved,
    };
    let started = Instant::now();
    let mut log = LemmaLog::new();
    let mut reports = suite.run(range.clone(), checked_mode.then_some(&mut log));
    if checked_mode {
        let elapsed = started.elapsed();
        for lemma in Lemma::ALL {
            let tally = log.tally(lemma);
            reports.push(VerificationReport {
                property: format!("lemma.{lemma}"),
                range: range.clone(),
                counterexample: tally.first_violation.map(|p| Counterexample {
                    input: p.to_string(),
                    expected: "lemma holds".into(),
                    actual: "violated".into(),
                }),
                elapsed,
            });
        }
    }
    reports
}

/// Exhaustive checks of `Ω` over `S_n(2314)` for `n = 1..=max_n`.
pub fn verify_omega(max_n: usize) -> Vec<VerificationReport> {
    let forward = |p: &Permutation| omega(p).expect("source avoids 2314");
    let inverse = |q: &Permutation| omega_inverse(q).expect("target avoids 2413");
    let preserved: [Preserved; 6] = [
        ("des", |p| Statistic::Des.eval(p).to_string()),
        ("lrmin", |p| Statistic::LrMin.eval(p).to_string()),
        ("steps", |p| Statistic::Steps.eval(p).to_string()),
        ("pos1", |p| format!("{:?}", p.position_of(1))),
        ("pos2", |p| format!("{:?}", p.position_of(2))),
        ("maj", |p| Statistic::Maj.eval(p).to_string()),
    ];
    let suite = Suite {
        prefix: "omega",
        source: single("2314"),
        target: single("2413"),
        forward: &forward,
        inverse: &inverse,
        preserved: &preserved,
    };
    suite.run(1..=max_n, None)
}

/// Class-level checks: maj equidistributed over the three classes, descent
/// sets equidistributed over 1423/2413, equal class sizes, and agreement of
/// the pruned enumeration with a plain filter of `S_n` (up to `n = 7`).
pub fn verify_conjecture(max_n: usize) -> Vec<VerificationReport> {
    let three = [single("1423"), single("2413"), single("2314")];
    let mut maj = Check::new("conjecture.maj.1423/2413/2314", 1, max_n);
    let mut des = Check::new("conjecture.des.1423/2413", 1, max_n);
    let mut wilf = Check::new("wilf.counts.1423/2413/2314", 1, max_n);
    let naive_max = max_n.min(NAIVE_LIMIT);
    let mut naive = Check::new("wilf.naive-filter", 1, naive_max);
    for n in 1..=max_n {
        maj.run(|| equidistribution_failure(n, &three, Statistic::Maj));
        des.run(|| equidistribution_failure(n, &three[..2], Statistic::Des));
        wilf.run(|| {
            let counts: Vec<u64> = three.iter().map(|ps| count_avoiders(n, ps)).collect();
            (counts.iter().any(|&c| c != counts[0])).then(|| Counterexample {
                input: format!("n={n}"),
                expected: "equal class sizes".into(),
                actual: format!("{counts:?}"),
            })
        });
        if n <= naive_max {
            naive.run(|| {
                three.iter().find_map(|ps| {
                    let (fast, slow) = (count_avoiders(n, ps), naive_count(n, ps));
                    (fast != slow).then(|| Counterexample {
                        input: format!("n={n} S_n({ps})"),
                        expected: format!("{slow} (naive filter)"),
                        actual: format!("{fast} (pruned enumeration)"),
                    })
                })
            });
        }
    }
    vec![maj.finish(), des.finish(), wilf.finish(), naive.finish()]
}

/// Largest `n` at which [`verify_conjecture`] runs the naive `n!` filter.
pub const NAIVE_LIMIT: usize = 7;

/// `|{p ∈ S_n(1423) ∩ S_n(2413) : Θ(p) = p}|`.
pub fn fixed_points(n: usize) -> u64 {
    collect_avoiders(n, &single("1423,2413"))
        .par_iter()
        .filter(|p| theta_variant(p, Variant::Standard).ok().as_ref() == Some(*p))
        .count() as u64
}

/// Every image of `Θ` (under the given variant) hit by more than one
/// 1423-avoider of length `n`, with all its preimages in lexicographic
/// order. Sorted by image.
pub fn theta_collisions(n: usize, variant: Variant) -> Vec<(Permutation, Vec<Permutation>)> {
    let mut preimages: BTreeMap<Permutation, Vec<Permutation>> = BTreeMap::new();
    for p in collect_avoiders(n, &single("1423")) {
        let image = theta_variant(&p, variant).expect("source avoids 1423");
        preimages.entry(image).or_default().push(p);
    }
    preimages
        .into_iter()
        .filter(|(_, ps)| ps.len() > 1)
        .collect()
}

/// `|S_n(ps)|` by testing every permutation of `S_n` against every pattern
/// with a plain subset scan; shares no code with the pruned enumerator.
pub fn naive_count(n: usize, patterns: &PatternSet) -> u64 {
    Permutation::all(n)
        .filter(|p| {
            patterns
                .patterns()
                .iter()
                .all(|pat| !naive_contains(p, pat))
        })
        .count() as u64
}

/// Tries every `k`-subset of positions and standardizes it.
pub fn naive_contains(p: &Permutation, pat: &Permutation) -> bool {
    let (n, k) = (p.len(), pat.len());
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<usize> = idx.iter().map(|&i| p.values()[i]).collect();
        if std_distinct(&sub) == *pat {
            return true;
        }
        // next combination
        let Some(j) = (0..k).rev().find(|&j| idx[j] < n - k + j) else {
            return false;
        };
        idx[j] += 1;
        for t in j + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}
