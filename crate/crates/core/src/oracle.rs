//! Randomized exact identity testing: evaluate both sides on independently
//! seeded samples and compare.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;

pub const DEFAULT_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { samples: DEFAULT_SAMPLES, seed: 0 }
    }
}

impl OracleConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        OracleConfig { samples, seed }
    }

    /// The random source for sample `index`: a ChaCha stream keyed by the seed.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    /// A config with an independent seed, for auxiliary runs.
    pub fn derived(&self, salt: u64) -> OracleConfig {
        OracleConfig {
            samples: self.samples,
            seed: self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        }
    }
}

/// Outcome of an oracle comparison. `S` is the sample type (a
/// representation or a point), `E` the scalar type.
#[derive(Debug, Clone)]
pub enum Verdict<S, E> {
    Equal {
        samples: usize,
        seed: u64,
        /// Total degree used for the Schwartz–Zippel bound.
        degree: usize,
        /// `None` when the samples do not cover the whole parameter space
        /// (refutation-only mode).
        error_bound: Option<f64>,
    },
    Unequal {
        sample: usize,
        seed: u64,
        witness: S,
        lhs: Vec<E>,
        rhs: Vec<E>,
    },
}

impl<S, E> Verdict<S, E> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }
}

/// Schwartz–Zippel style bound `N·D/(|S|−1)` where `D` bounds the degree of
/// the pulled-back difference polynomial.
pub fn sz_bound(samples: usize, degree: usize, set_size: f64) -> f64 {
    (samples as f64 * degree as f64 / (set_size - 1.0)).min(1.0)
}

/// Run `eval` on `cfg.samples` independently drawn samples and report the
/// first (lowest-index) disagreement. Sampling and evaluation run in
/// parallel; the result does not depend on scheduling.
pub fn compare<S, E, Sm, Ev>(
    cfg: &OracleConfig,
    degree: usize,
    error_bound: Option<f64>,
    sample: Sm,
    eval: Ev,
) -> Result<Verdict<S, E>>
where
    S: Send,
    E: PartialEq + Send,
    Sm: Fn(usize, &mut ChaCha8Rng) -> Result<S> + Sync,
    Ev: Fn(&S) -> Result<(Vec<E>, Vec<E>)> + Sync,
{
    let outcomes: Vec<Result<Option<(usize, S, Vec<E>, Vec<E>)>>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.rng(i);
            let s = sample(i, &mut rng)?;
            let (l, r) = eval(&s)?;
            Ok(if l == r { None } else { Some((i, s, l, r)) })
        })
        .collect();
    for o in outcomes {
        if let Some((sample, witness, lhs, rhs)) = o? {
            return Ok(Verdict::Unequal { sample, seed: cfg.seed, witness, lhs, rhs });
        }
    }
    Ok(Verdict::Equal { samples: cfg.samples, seed: cfg.seed, degree, error_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn compare_finds_lowest_failing_sample() {
        let cfg = OracleConfig::new(64, 9);
        let v: Verdict<u64, u64> = compare(
            &cfg,
            1,
            None,
            |i, rng| Ok(rng.gen_range(0..4u64) + 10 * i as u64),
            |s| Ok((vec![*s % 10], vec![0])),
        )
        .unwrap();
        match v {
            Verdict::Unequal { sample, witness, .. } => {
                let first = (0..64)
                    .find(|&i| cfg.rng(i).gen_range(0..4u64) != 0)
                    .unwrap();
                assert_eq!(sample, first);
                assert_eq!(witness % 10, cfg.rng(first).gen_range(0..4u64));
            }
            Verdict::Equal { .. } => panic!("expected a disagreement"),
        }
    }

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let cfg = OracleConfig::new(2, 1);
        let a: u64 = cfg.rng(0).gen();
        let b: u64 = cfg.rng(1).gen();
        assert_ne!(a, b);
        assert_eq!(a, cfg.rng(0).gen::<u64>());
    }

    #[test]
    fn bound_is_capped() {
        assert_eq!(sz_bound(16, 1000, 3.0), 1.0);
        assert!(sz_bound(16, 10, 4.6e18) < 1e-15);
    }
}
