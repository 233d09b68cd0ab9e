use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{skeleton, theorem_outcome, RunOptions};
use crate::arith::{primes_in_range, Rational};
use crate::error::{Error, Result};
use crate::report::CongruenceReport;

/// Which `j0` values a sweep visits at each prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JPolicy {
    /// Every residue `0 <= j0 < p`, lifted to that integer.
    AllResidues,
    /// The same values at every prime, visited in ascending order.
    Explicit(Vec<Rational>),
    /// `n` distinct residues in `[1, p-1]` per prime, drawn from a generator
    /// seeded by `(seed, p)`.
    Random { n: usize, seed: u64 },
}

impl JPolicy {
    fn values(&self, p: u64) -> Vec<Rational> {
        match self {
            JPolicy::AllResidues => (0..p as i64).map(Rational::from_int).collect(),
            JPolicy::Explicit(list) => {
                let mut list = list.clone();
                list.sort();
                list.dedup();
                list
            }
            JPolicy::Random { n, seed } => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ p);
                let range = (p - 1) as usize;
                let mut picks: Vec<usize> = sample(&mut rng, range, (*n).min(range)).into_vec();
                picks.sort_unstable();
                picks
                    .into_iter()
                    .map(|i| Rational::from_int(i as i64 + 1))
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOutcome {
    /// Ordered by `p`, then `j0`.
    pub reports: Vec<CongruenceReport>,
    /// Some instance exceeded the point-count bound and was skipped.
    pub truncated: bool,
}

/// Runs the theorem check over every prime in `[p_min, p_max]`.
pub fn scan_range(
    p_min: u64,
    p_max: u64,
    policy: &JPolicy,
    opts: &RunOptions,
) -> Result<ScanOutcome> {
    if p_min < 5 || p_min > p_max {
        return Err(Error::Precondition(format!(
            "prime range [{p_min}, {p_max}] must satisfy 5 <= p_min <= p_max"
        )));
    }
    let tasks: Vec<(u64, Rational)> = primes_in_range(p_min, p_max)
        .into_iter()
        .flat_map(|p| policy.values(p).into_iter().map(move |j| (p, j)))
        .collect();
    let results = opts.map(tasks, |(p, j0)| {
        let mut hit_bound = false;
        let report = opts.report(|| {
            let outcome = theorem_outcome(&j0, p, opts.point_bound);
            hit_bound = matches!(outcome, Err(Error::ResourceLimit { .. }));
            skeleton("theorem", &j0, p).settle(outcome)
        });
        (report, hit_bound)
    });
    let truncated = results.iter().any(|(_, t)| *t);
    Ok(ScanOutcome {
        reports: results.into_iter().map(|(r, _)| r).collect(),
        truncated,
    })
}
