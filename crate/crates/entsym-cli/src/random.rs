//! Seeded random inputs for the identity and deformation suites.
//!
//! Every trial gets its own ChaCha substream keyed by (seed, suite, trial),
//! so counterexamples are reproducible from the report alone and suites can
//! be parallelized per trial without coordination.

use entsym::entropy::{Distribution, JointTable, Mode};
use entsym::Rat;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

pub fn trial_rng(seed: u64, suite: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&suite.to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Random rational n/d with n ∈ [−200,200], d ∈ [1,200].
pub fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n: i64 = rng.gen_range(-200..=200);
    let d: i64 = rng.gen_range(1..=200);
    Rat::new(n.into(), d.into())
}

/// Rejection-sample a rational satisfying `ok`.
pub fn rand_rat_where(rng: &mut ChaCha8Rng, ok: impl Fn(&Rat) -> bool) -> Rat {
    loop {
        let r = rand_rat(rng);
        if ok(&r) {
            return r;
        }
    }
}


/// Rational avoiding 0 and 1 — the degenerate locus of β symbols and ⟨·⟩.
pub fn rand_rat_unit_avoiding(rng: &mut ChaCha8Rng) -> Rat {
    rand_rat_where(rng, |r| !r.is_zero() && !r.is_one())
}

/// Strictly positive distribution of size n with exact rational entries.
pub fn rand_distribution(rng: &mut ChaCha8Rng, n: usize) -> Distribution {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=50)).collect();
    let total: i64 = weights.iter().sum();
    let probs = weights
        .into_iter()
        .map(|w| Rat::new(w.into(), total.into()))
        .collect();
    Distribution::new(probs, Mode::Strict).expect("normalized by construction")
}

/// Strictly positive joint table with exact rational entries.
pub fn rand_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> JointTable {
    let weights: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(1..=50)).collect();
    let total: i64 = weights.iter().sum();
    let p = weights
        .into_iter()
        .map(|w| Rat::new(w.into(), total.into()))
        .collect();
    JointTable::new(rows, cols, p).expect("normalized by construction")
}
