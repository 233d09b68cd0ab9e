//! Structured outcome records shared by every check.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

/// Whether `z0` is a square in `F_p` (residue field `F_p`) or not
/// (residue field `F_{p^2}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Split,
    Inert,
}

/// One verification outcome. Field order is the serialized column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub check_id: String,
    pub p: u64,
    pub l: Option<u32>,
    pub j0: Option<String>,
    pub z0: Option<String>,
    pub branch: Option<Branch>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    pub skip_reason: Option<String>,
    pub ms: Option<f64>,
}

impl CongruenceReport {
    pub fn new(check_id: impl Into<String>, p: u64) -> Self {
        CongruenceReport {
            check_id: check_id.into(),
            p,
            l: None,
            j0: None,
            z0: None,
            branch: None,
            lhs: None,
            rhs: None,
            verdict: Verdict::Skip,
            skip_reason: Some("not evaluated".into()),
            ms: None,
        }
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = Some(l);
        self
    }

    pub fn with_j0(mut self, j0: impl ToString) -> Self {
        self.j0 = Some(j0.to_string());
        self
    }

    pub fn with_z0(mut self, z0: impl ToString) -> Self {
        self.z0 = Some(z0.to_string());
        self
    }

    pub fn with_branch(mut self, branch: Branch) -> Self {
        self.branch = Some(branch);
        self
    }

    /// Records both sides; the verdict is `pass` iff they are equal.
    pub fn compared(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        self.verdict = if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.skip_reason = None;
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Skip;
        self.skip_reason = Some(reason.into());
        self.lhs = None;
        self.rhs = None;
        self
    }

    /// A check that could not be completed for an internal reason.
    pub fn failed(mut self, reason: impl ToString) -> Self {
        self.verdict = Verdict::Fail;
        self.skip_reason = None;
        self.lhs = Some("error".into());
        self.rhs = Some(reason.to_string());
        self
    }

    /// Skip on hypothesis errors, fail on anything else.
    pub fn settle(self, result: crate::Result<CongruenceReport>) -> Self {
        match result {
            Ok(report) => report,
            Err(e) if e.is_hypothesis() => self.skipped(e.to_string()),
            Err(e) => self.failed(e),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn is_skip(&self) -> bool {
        self.verdict == Verdict::Skip
    }
}

/// Runs `f` and stores its wall time in the report.
pub fn timed(f: impl FnOnce() -> CongruenceReport) -> CongruenceReport {
    let start = Instant::now();
    let mut report = f();
    report.ms = Some(start.elapsed().as_secs_f64() * 1e3);
    report
}

/// Short, deterministic fingerprint for long coefficient lists.
pub(crate) fn fingerprint(values: impl IntoIterator<Item = u64>) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut n = 0usize;
    for v in values {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        n += 1;
    }
    format!("{n} coeffs #{h:016x}")
}
