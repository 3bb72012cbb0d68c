//! Statistic-preserving bijections between pattern-avoiding permutations.
//!
//! [`theta`] maps 1423-avoiders onto 2413-avoiders preserving the descent
//! set, right-to-left maxima, steps and the positions of `n` and `n-1`;
//! [`omega`] maps 2314-avoiders onto 2413-avoiders preserving the descent
//! set, left-to-right minima, steps and the positions of `1` and `2`. In
//! particular both preserve the major index. The [`oracle`] module checks
//! all of this exhaustively for small `n`.

pub mod bijection;
pub mod error;
pub mod oracle;
pub mod patterns;
pub mod perm;
pub mod stats;

pub use bijection::{
    decompose, omega, omega_inverse, phi, theta, theta_checked, theta_inverse, theta_variant,
    Decomposition, DecompositionPoint, Lemma, LemmaLog, Variant,
};
pub use error::{Error, Result};
pub use patterns::{
    collect_avoiders, contains, count_avoiders, enumerate_avoiders, find_occurrence, PatternSet,
};
pub use perm::{
    deflate, delete_max, inflate, insert_max, max_block_extent, standardize, Permutation,
};
pub use stats::{
    descent_set, lr_minima, major_index, positions_top_two, profile, rl_maxima, steps, IndexSet,
    StatisticProfile,
};
