use serde::{Deserialize, Serialize};

use super::WeierstrassCurve;
use crate::arith::{FieldElement, PrimeField};
use crate::error::{Error, Result};

/// Largest field size counted unless the caller raises the bound.
pub const DEFAULT_POINT_BOUND: u64 = 1_000_000;

/// `|E(F_q)|` and the trace `a = q + 1 - |E(F_q)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceRecord {
    pub q: u64,
    pub count: u64,
    pub a: i64,
}

/// Counts points by completing the square in `y` and summing the quadratic
/// character of the resulting cubic over every `x` in the field.
pub fn count_points<F: FieldElement>(
    curve: &WeierstrassCurve<F>,
    bound: u64,
) -> Result<TraceRecord> {
    let sample = curve.a4;
    let q = sample.order();
    if q > bound {
        return Err(Error::ResourceLimit { q, bound });
    }
    if curve.is_singular() {
        return Err(Error::Singular);
    }
    let chars = PrimeField::new(sample.characteristic())?.character_table();
    let chi = |v: F| i64::from(chars[v.norm_to_base().value() as usize]);

    let quarter = sample.of_int(4).inv().ok_or(Error::DivisionByZero)?;
    let half = sample.of_int(2).inv().ok_or(Error::DivisionByZero)?;
    let (a1, a3) = (curve.a1, curve.a3);
    let c2 = curve.a2 + a1 * a1 * quarter;
    let c1 = curve.a4 + a1 * a3 * half;
    let c0 = curve.a6 + a3 * a3 * quarter;

    let mut count: i64 = 1;
    for x in sample.field_elements() {
        let g = ((x + c2) * x + c1) * x + c0;
        count += 1 + chi(g);
    }
    let count = count as u64;
    let a = q as i64 + 1 - count as i64;
    if (a as i128) * (a as i128) > 4 * q as i128 {
        return Err(Error::HasseViolation { a, q });
    }
    Ok(TraceRecord { q, count, a })
}
