use std::fmt;
use std::str::FromStr;

use super::{check_final_branch, RunOptions};
use crate::arith::{primes_in_range, Rational};
use crate::curves::{
    admissible_j, build_e0, check_squares_equal, check_trace_as_series, check_trace_relation,
    check_twist_class, quadratic_twist, z0_of,
};
use crate::error::{Error, Result};
use crate::hyperseries::{
    check_factorial_congruence, check_inert_evaluation, check_p2_factorization,
    check_pochhammer_lift, check_reflection, check_term_vanishing, check_truncated_clausen,
};
use crate::report::{Branch, CongruenceReport};

/// The individually runnable congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    TwistClass,
    SquaredTraces,
    TraceRelation,
    FactorialCongruence,
    TraceAsSeries,
    TermVanishing,
    TruncatedClausen,
    PochhammerLift,
    Factorization,
    Reflection,
    InertEvaluation,
    FinalSplit,
    FinalInert,
}

impl SuiteId {
    pub const ALL: [SuiteId; 13] = [
        SuiteId::TwistClass,
        SuiteId::SquaredTraces,
        SuiteId::TraceRelation,
        SuiteId::FactorialCongruence,
        SuiteId::TraceAsSeries,
        SuiteId::TermVanishing,
        SuiteId::TruncatedClausen,
        SuiteId::PochhammerLift,
        SuiteId::Factorization,
        SuiteId::Reflection,
        SuiteId::InertEvaluation,
        SuiteId::FinalSplit,
        SuiteId::FinalInert,
    ];

    /// The numeric id accepted on the command line.
    pub fn id(self) -> &'static str {
        match self {
            SuiteId::TwistClass => "2.1",
            SuiteId::SquaredTraces => "2.2",
            SuiteId::TraceRelation => "3.2",
            SuiteId::FactorialCongruence => "3.3",
            SuiteId::TraceAsSeries => "3.4",
            SuiteId::TermVanishing => "4.vanish",
            SuiteId::TruncatedClausen => "4.3",
            SuiteId::PochhammerLift => "5.1",
            SuiteId::Factorization => "5.2",
            SuiteId::Reflection => "5.3",
            SuiteId::InertEvaluation => "5.4",
            SuiteId::FinalSplit => "final.4",
            SuiteId::FinalInert => "final.5",
        }
    }

    /// The descriptive alias, equal to the check id of its reports.
    pub fn name(self) -> &'static str {
        match self {
            SuiteId::TwistClass => "twist_class",
            SuiteId::SquaredTraces => "squared_traces",
            SuiteId::TraceRelation => "trace_relation",
            SuiteId::FactorialCongruence => "factorial_congruence",
            SuiteId::TraceAsSeries => "trace_as_2f1",
            SuiteId::TermVanishing => "term_vanishing",
            SuiteId::TruncatedClausen => "truncated_clausen",
            SuiteId::PochhammerLift => "pochhammer_lift",
            SuiteId::Factorization => "p2_factorization",
            SuiteId::Reflection => "reflection",
            SuiteId::InertEvaluation => "inert_evaluation",
            SuiteId::FinalSplit => "final_split",
            SuiteId::FinalInert => "final_inert",
        }
    }

    fn per_j(self) -> bool {
        matches!(
            self,
            SuiteId::TwistClass
                | SuiteId::SquaredTraces
                | SuiteId::TraceRelation
                | SuiteId::TraceAsSeries
                | SuiteId::InertEvaluation
                | SuiteId::FinalSplit
                | SuiteId::FinalInert
        )
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        SuiteId::ALL
            .into_iter()
            .find(|id| id.id() == s || id.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parameter grid of a suite run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteParams {
    pub p_min: u64,
    pub p_max: u64,
    /// Residue degrees `1..=l_max` for the checks that take one.
    pub l_max: u32,
    /// Also run the factorization at `l = 2` (degree `p^4 - 1`) when
    /// `l_max >= 2`.
    pub factorization_l2: bool,
    /// `j0` values for curve suites; `None` means `1..p` at each prime.
    pub j_values: Option<Vec<Rational>>,
    /// Twist parameters for the squared-trace suite.
    pub twists: Vec<i64>,
    /// Parameters `a` of the Pochhammer lift.
    pub lift_params: Vec<Rational>,
    /// Cap on `m` for the Pochhammer lift at `l = 2`.
    pub lift_m_max_l2: usize,
    pub options: RunOptions,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            p_min: 5,
            p_max: 37,
            l_max: 1,
            factorization_l2: false,
            j_values: None,
            twists: vec![-1, 2, 3],
            lift_params: vec![
                Rational::frac(1, 6),
                Rational::frac(5, 6),
                Rational::frac(1, 2),
            ],
            lift_m_max_l2: 200,
            options: RunOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
enum Task {
    Degree { p: u64, l: u32 },
    Lift { p: u64, l: u32, a: Rational },
    Curve { p: u64, j0: Rational },
    Twist { p: u64, j0: Rational, d: i64 },
}

fn tasks(suite: SuiteId, params: &SuiteParams) -> Vec<Task> {
    let primes = if params.p_min <= params.p_max {
        primes_in_range(params.p_min.max(5), params.p_max)
    } else {
        Vec::new()
    };
    let degrees = |suite: SuiteId| -> Vec<u32> {
        let cap = params.l_max.min(2);
        match suite {
            SuiteId::Factorization if !params.factorization_l2 => vec![1],
            _ => (1..=cap).collect(),
        }
    };
    let mut out = Vec::new();
    for &p in &primes {
        if suite.per_j() {
            let js = params
                .j_values
                .clone()
                .unwrap_or_else(|| (1..p as i64).map(Rational::from_int).collect());
            for j0 in js {
                if suite == SuiteId::SquaredTraces {
                    out.extend(params.twists.iter().map(|&d| Task::Twist {
                        p,
                        j0: j0.clone(),
                        d,
                    }));
                } else {
                    out.push(Task::Curve { p, j0 });
                }
            }
        } else if suite == SuiteId::PochhammerLift {
            for l in degrees(suite) {
                out.extend(
                    params
                        .lift_params
                        .iter()
                        .map(|a| Task::Lift { p, l, a: a.clone() }),
                );
            }
        } else {
            out.extend(degrees(suite).into_iter().map(|l| Task::Degree { p, l }));
        }
    }
    out
}

fn run_task(suite: SuiteId, task: Task, params: &SuiteParams) -> CongruenceReport {
    let opts = &params.options;
    let bound = opts.point_bound;
    match task {
        Task::Degree { p, l } => {
            let check = match suite {
                SuiteId::FactorialCongruence => check_factorial_congruence,
                SuiteId::TermVanishing => check_term_vanishing,
                SuiteId::TruncatedClausen => check_truncated_clausen,
                SuiteId::Factorization => check_p2_factorization,
                SuiteId::Reflection => check_reflection,
                _ => unreachable!("per-degree task for {suite:?}"),
            };
            opts.report(|| {
                CongruenceReport::new(suite.name(), p)
                    .with_l(l)
                    .settle(check(p, l))
            })
        }
        Task::Lift { p, l, a } => {
            let m_max = (l == 2).then_some(params.lift_m_max_l2);
            let id = format!("pochhammer_lift[a={a}]");
            opts.report(|| {
                CongruenceReport::new(id, p)
                    .with_l(l)
                    .settle(check_pochhammer_lift(&a, p, l, m_max))
            })
        }
        Task::Twist { p, j0, d } => {
            let id = format!("squared_traces[d={d}]");
            opts.report(|| {
                let outcome = admissible_j(&j0, p).and_then(|_| {
                    let e0 = build_e0(&j0)?;
                    let twist = quadratic_twist(&e0, &Rational::from_int(d))?;
                    let mut report = check_squares_equal(&e0, &twist, p, bound)?.report;
                    report.check_id = id.clone();
                    Ok(report)
                });
                CongruenceReport::new(id.clone(), p)
                    .with_l(1)
                    .with_j0(&j0)
                    .settle(outcome)
            })
        }
        Task::Curve { p, j0 } => opts.report(|| {
            let skeleton = CongruenceReport::new(suite.name(), p)
                .with_l(1)
                .with_j0(&j0);
            match suite {
                SuiteId::FinalSplit => check_final_branch(&j0, p, Branch::Split, opts),
                SuiteId::FinalInert => check_final_branch(&j0, p, Branch::Inert, opts),
                SuiteId::TwistClass => skeleton.settle(check_twist_class(&j0, p)),
                SuiteId::TraceRelation => skeleton.settle(check_trace_relation(&j0, p, bound)),
                SuiteId::TraceAsSeries => skeleton.settle(
                    admissible_j(&j0, p)
                        .and_then(|_| z0_of(&j0))
                        .and_then(|z0| check_trace_as_series(&z0, p, bound)),
                ),
                SuiteId::InertEvaluation => {
                    let mut report = skeleton.settle(
                        admissible_j(&j0, p)
                            .and_then(|_| z0_of(&j0))
                            .and_then(|z0| check_inert_evaluation(&z0, p)),
                    );
                    report.j0.get_or_insert_with(|| j0.to_string());
                    report
                }
                _ => unreachable!("per-curve task for {suite:?}"),
            }
        }),
    }
}

/// One report per parameter instance, ordered by `p`, then `l` or `j0`.
pub fn run_lemma_suite(suite: SuiteId, params: &SuiteParams) -> Vec<CongruenceReport> {
    params
        .options
        .map(tasks(suite, params), |task| run_task(suite, task, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(p_max: u64) -> SuiteParams {
        SuiteParams {
            p_max,
            ..SuiteParams::default()
        }
    }

    #[test]
    fn parse_ids() {
        for id in SuiteId::ALL {
            assert_eq!(id.id().parse::<SuiteId>().unwrap(), id);
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
        }
        assert!(matches!(
            "9.9".parse::<SuiteId>(),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn clausen_three_primes() {
        let reports = run_lemma_suite(SuiteId::TruncatedClausen, &small(11));
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.is_pass()));
    }

    #[test]
    fn factorial_suite_both_degrees() {
        let params = SuiteParams {
            p_max: 13,
            l_max: 2,
            ..SuiteParams::default()
        };
        let reports = run_lemma_suite(SuiteId::FactorialCongruence, &params);
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.is_pass()));
    }

    #[test]
    fn empty_grid() {
        let params = SuiteParams {
            p_min: 20,
            p_max: 10,
            ..SuiteParams::default()
        };
        assert!(run_lemma_suite(SuiteId::Reflection, &params).is_empty());
        let params = SuiteParams {
            j_values: Some(vec![]),
            ..small(13)
        };
        assert!(run_lemma_suite(SuiteId::TraceRelation, &params).is_empty());
    }

    #[test]
    fn factorization_l2_is_opt_in() {
        let params = SuiteParams {
            p_max: 5,
            l_max: 2,
            ..SuiteParams::default()
        };
        assert_eq!(run_lemma_suite(SuiteId::Factorization, &params).len(), 1);
        let params = SuiteParams {
            factorization_l2: true,
            ..params
        };
        let reports = run_lemma_suite(SuiteId::Factorization, &params);
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.is_pass()));
    }

    #[test]
    fn curve_suites_never_fail() {
        for suite in SuiteId::ALL.into_iter().filter(|s| s.per_j()) {
            let reports = run_lemma_suite(suite, &small(13));
            assert!(reports.iter().all(|r| !r.is_fail()), "{suite}: {reports:?}");
            assert!(reports.iter().any(|r| r.is_pass()), "{suite}");
            assert!(reports.iter().all(|r| r.j0.is_some()));
        }
    }

    #[test]
    fn lift_suite_skips_non_units() {
        let reports = run_lemma_suite(SuiteId::PochhammerLift, &small(7));
        assert_eq!(reports.len(), 6);
        // 5/6 is not a unit at 5
        let skipped: Vec<_> = reports
            .iter()
            .filter(|r| r.is_skip())
            .map(|r| (r.p, r.check_id.as_str()))
            .collect();
        assert_eq!(skipped, vec![(5, "pochhammer_lift[a=5/6]")]);
        assert!(reports.iter().all(|r| !r.is_fail()));
        let params = SuiteParams {
            lift_params: vec![Rational::frac(1, 5)],
            ..small(7)
        };
        let reports = run_lemma_suite(SuiteId::PochhammerLift, &params);
        assert!(reports[0].is_skip() && reports[1].is_pass());
    }
}
