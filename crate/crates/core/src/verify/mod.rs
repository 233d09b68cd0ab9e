//! End-to-end verification of the trace congruence, prime sweeps, the
//! per-lemma suites and the mod-p² probe.

mod scan;
mod suite;

pub use scan::{scan_range, JPolicy, ScanOutcome};
pub use suite::{run_lemma_suite, SuiteId, SuiteParams};

use rayon::prelude::*;

use crate::arith::{Fp, PrimeField, Rational};
use crate::curves::{admissible_j, build_e0, count_points, z0_of, DEFAULT_POINT_BOUND};
use crate::error::{Error, Result};
use crate::hyperseries::{
    truncated_sum_mod_pk, truncated_sum_value, HypergeometricDatum, TruncationLevel,
};
use crate::report::{timed, Branch, CongruenceReport};

/// Check id of the mod-p² probe. The sign carried over from the mod-p
/// branch is an assumption, so it is part of the id.
pub const PROBE_ID: &str = "supercongruence_probe[sign=mod_p_branch]";

/// Execution settings shared by sweeps and suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub point_bound: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Record wall time per report. Off by default so output is reproducible.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            point_bound: DEFAULT_POINT_BOUND,
            workers: None,
            timing: false,
        }
    }
}

impl RunOptions {
    /// Maps `f` over `items` in parallel, keeping input order.
    pub(crate) fn map<T, R>(&self, items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R>
    where
        T: Send,
        R: Send,
    {
        let run = || items.into_par_iter().map(&f).collect();
        match self.workers {
            Some(n) => match rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
            {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            },
            None => run(),
        }
    }

    pub(crate) fn report(&self, f: impl FnOnce() -> CongruenceReport) -> CongruenceReport {
        if self.timing {
            timed(f)
        } else {
            f()
        }
    }
}

/// An admissible `(j0, p)`: `p >= 5`, `j0` outside `{0, 1728}` and
/// `v_p(j0) = 0 = v_p(j0 - 1728)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInstance {
    pub j0: Rational,
    pub p: u64,
    pub z0: Rational,
    pub branch: Branch,
}

impl TheoremInstance {
    pub fn new(j0: Rational, p: u64) -> Result<Self> {
        let field = admissible_j(&j0, p)?;
        let z0 = z0_of(&j0)?;
        let branch = match field.reduce(&z0)?.legendre() {
            1 => Branch::Split,
            _ => Branch::Inert,
        };
        Ok(TheoremInstance { j0, p, z0, branch })
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("checked on construction")
    }

    /// `+1` on the split branch, `-1` on the inert one.
    pub fn sign(&self) -> i64 {
        match self.branch {
            Branch::Split => 1,
            Branch::Inert => -1,
        }
    }

    /// Trace of Frobenius of `E0` reduced mod `p`.
    pub fn trace(&self, bound: u64) -> Result<i64> {
        Ok(count_points(&build_e0(&self.j0)?.reduce(self.field())?, bound)?.a)
    }

    /// `3F2(1/2,1/6,5/6;1,1 | 1728/j0)` truncated at `p - 1`, mod `p`.
    pub fn series_mod_p(&self) -> Result<Fp> {
        let arg = self
            .field()
            .reduce(&Rational::from_int(1728).checked_div(&self.j0)?)?;
        truncated_sum_value(
            &HypergeometricDatum::three_f_two(),
            arg,
            TruncationLevel::norm_minus_one(self.p, 1),
        )
    }

    fn report(&self, check_id: &str) -> CongruenceReport {
        CongruenceReport::new(check_id, self.p)
            .with_l(1)
            .with_j0(&self.j0)
            .with_z0(&self.z0)
            .with_branch(self.branch)
    }

    fn compare_signed(&self, check_id: &str, sign: i64, bound: u64) -> Result<CongruenceReport> {
        let field = self.field();
        let a = self.trace(bound)?;
        let rhs = self.series_mod_p()? * field.element(sign);
        Ok(self.report(check_id).compared(field.element(a * a), rhs))
    }
}

fn skeleton(check_id: &str, j0: &Rational, p: u64) -> CongruenceReport {
    CongruenceReport::new(check_id, p).with_l(1).with_j0(j0)
}

/// `a_p(E0)^2 = (z0/p) 3F2(1728/j0)_{p-1}` mod `p`. Hypothesis violations
/// become skips.
pub fn verify_theorem(j0: &Rational, p: u64) -> CongruenceReport {
    verify_theorem_with(j0, p, &RunOptions::default())
}

pub fn verify_theorem_with(j0: &Rational, p: u64, opts: &RunOptions) -> CongruenceReport {
    opts.report(|| skeleton("theorem", j0, p).settle(theorem_outcome(j0, p, opts.point_bound)))
}

pub(crate) fn theorem_outcome(j0: &Rational, p: u64, bound: u64) -> Result<CongruenceReport> {
    let inst = TheoremInstance::new(j0.clone(), p)?;
    let sign = inst.field().reduce(&inst.z0)?.legendre();
    inst.compare_signed("theorem", i64::from(sign), bound)
}

/// The branch-specific form: `a_p(E0)^2 = +3F2` when `z0` is a square mod
/// `p`, `-3F2` when it is not. Instances on the other branch are skipped.
pub fn check_final_branch(
    j0: &Rational,
    p: u64,
    branch: Branch,
    opts: &RunOptions,
) -> CongruenceReport {
    let id = match branch {
        Branch::Split => "final_split",
        Branch::Inert => "final_inert",
    };
    opts.report(|| {
        skeleton(id, j0, p).settle(TheoremInstance::new(j0.clone(), p).and_then(|inst| {
            if inst.branch != branch {
                return Err(Error::Precondition(format!(
                    "z0 = {} is on the other branch",
                    inst.z0
                )));
            }
            inst.compare_signed(id, inst.sign(), opts.point_bound)
        }))
    })
}

/// Whether `a_p(E0)^2 - 2p = +-3F2(1728/j0)_{p-1}` mod `p^2`, with the sign
/// of the mod-p branch. Informational: both verdicts are valid outcomes.
pub fn supercongruence_probe(j0: &Rational, p: u64, opts: &RunOptions) -> CongruenceReport {
    opts.report(|| {
        skeleton(PROBE_ID, j0, p).settle(TheoremInstance::new(j0.clone(), p).and_then(|inst| {
            let m = (p * p) as i64;
            let a = inst.trace(opts.point_bound)?;
            let lhs = (a * a - 2 * p as i64).rem_euclid(m);
            let arg = Rational::from_int(1728)
                .checked_div(j0)?
                .residue_mod(p * p)?;
            let sum = truncated_sum_mod_pk(
                &HypergeometricDatum::three_f_two(),
                arg,
                (p - 1) as usize,
                p,
                2,
            )?;
            let rhs = (inst.sign() * sum as i64).rem_euclid(m);
            Ok(inst.report(PROBE_ID).compared(lhs, rhs))
        }))
    })
}
