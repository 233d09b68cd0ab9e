//! Trace and twist checks on the reductions of `E0` and `E1`. Errors are
//! hypothesis violations; sweeps turn them into skip reports.

use super::models::z0_of;
use super::{build_e0, build_e1_reduced, count_points, twist_gamma, WeierstrassCurve};
use crate::arith::{
    legendre_symbol, sqrt_mod_p, FieldElement, Fp, PrimeField, QuadField, Rational,
};
use crate::error::{Error, Result};
use crate::hyperseries::{truncated_sum_value, HypergeometricDatum, TruncationLevel};
use crate::report::{Branch, CongruenceReport};

/// `y^2 = x^3 + d^2 A x + d^3 B`, the twist of a short model by `d`.
pub fn quadratic_twist(
    e: &WeierstrassCurve<Rational>,
    d: &Rational,
) -> Result<WeierstrassCurve<Rational>> {
    let (a, b) = e
        .short_coefficients()
        .ok_or_else(|| Error::Precondition("twist needs a short model".into()))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(WeierstrassCurve::short(a * &d.pow(2)?, b * &d.pow(3)?))
}

/// Outcome of comparing squared traces, with the finer twist relation
/// `a_p(E2) = (gamma/p) a_p(E1)` observed alongside. Only `report` gates.
#[derive(Clone, Debug, PartialEq)]
pub struct SquaresComparison {
    pub report: CongruenceReport,
    pub a1: i64,
    pub a2: i64,
    /// Legendre symbol of the twist class; 0 when it is not a `p`-unit.
    pub gamma_symbol: i8,
    pub twist_relation_holds: bool,
}

/// `a_p(E1)^2 = a_p(E2)^2` for curves over `Q` with a common `j` outside
/// `{0, 1728}`, both with good reduction at `p`.
pub fn check_squares_equal(
    e1: &WeierstrassCurve<Rational>,
    e2: &WeierstrassCurve<Rational>,
    p: u64,
    bound: u64,
) -> Result<SquaresComparison> {
    let field = PrimeField::new(p)?;
    let j = e1.j_invariant()?;
    if j != e2.j_invariant()? {
        return Err(Error::Precondition("j-invariants differ".into()));
    }
    if j.is_zero() || j == Rational::from_int(1728) {
        return Err(Error::ExcludedJ(j.to_string()));
    }
    let m1 = e1.minimal_short_model(p)?;
    let m2 = e2.minimal_short_model(p)?;
    let (r1, r2) = (m1.reduce(field)?, m2.reduce(field)?);
    if r1.is_singular() || r2.is_singular() {
        return Err(Error::Precondition(format!("bad reduction at {p}")));
    }
    let a1 = count_points(&r1, bound)?.a;
    let a2 = count_points(&r2, bound)?.a;
    let gamma_symbol = legendre_symbol(&twist_gamma(&m1, &m2)?, p).unwrap_or(0);
    let report = CongruenceReport::new("squared_traces", p)
        .with_l(1)
        .with_j0(&j)
        .compared(a1 * a1, a2 * a2);
    Ok(SquaresComparison {
        report,
        a1,
        a2,
        gamma_symbol,
        twist_relation_holds: a2 == i64::from(gamma_symbol) * a1,
    })
}

/// `p >= 5` prime, `j0` outside `{0, 1728}` and `v_p(j0) = 0 = v_p(j0 - 1728)`.
pub(crate) fn admissible_j(j0: &Rational, p: u64) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    z0_of(j0)?;
    if j0.valuation(p)? != 0 {
        return Err(Error::Precondition(format!("v_{p}(j0) != 0")));
    }
    if (j0 - &Rational::from_int(1728)).valuation(p)? != 0 {
        return Err(Error::Precondition(format!("v_{p}(j0 - 1728) != 0")));
    }
    Ok(field)
}

fn e1_trace<F: FieldElement>(z0: &Rational, s: F, bound: u64) -> Result<i64> {
    Ok(count_points(&build_e1_reduced(z0, s)?.short, bound)?.a)
}

/// Runs `side` at both square roots and joins the two sides with `;`.
fn at_both_roots<F: FieldElement>(
    root: F,
    mut side: impl FnMut(F) -> Result<(String, String)>,
) -> Result<(String, String)> {
    let (l1, r1) = side(root)?;
    let (l2, r2) = side(-root)?;
    Ok((format!("{l1};{l2}"), format!("{r1};{r2}")))
}

/// The twist class of `E0` against `E1'` equals `z0 sqrt(z0)` over the
/// residue field of the quadratic layer.
pub fn check_twist_class(j0: &Rational, p: u64) -> Result<CongruenceReport> {
    let field = admissible_j(j0, p)?;
    let z0 = z0_of(j0)?;
    let z = field.reduce(&z0)?;
    let e0 = build_e0(j0)?.reduce(field)?;
    fn side<F: FieldElement>(
        e0: &WeierstrassCurve<Fp>,
        z0: &Rational,
        s: F,
    ) -> Result<(String, String)> {
        let lifted = e0.map(|c| Ok(s.embed(*c)))?;
        let e1 = build_e1_reduced(z0, s)?.short;
        let z = s * s;
        Ok((twist_gamma(&lifted, &e1)?.to_string(), (z * s).to_string()))
    }
    let report = CongruenceReport::new("twist_class", p)
        .with_l(1)
        .with_j0(j0)
        .with_z0(&z0);
    let (branch, (lhs, rhs)) = match sqrt_mod_p(z) {
        Some(s) => (Branch::Split, at_both_roots(s, |r| side(&e0, &z0, r))?),
        None => {
            let s = QuadField::over(field).sqrt_of_base(z);
            (Branch::Inert, at_both_roots(s, |r| side(&e0, &z0, r))?)
        }
    };
    Ok(report.with_branch(branch).compared(lhs, rhs))
}

/// Split: `a_p(E0)^2 = a_P(E1)^2` over `F_p`. Inert:
/// `a_p(E0)^2 = -(-1/p) a_P(E1)` mod `p` with `E1` counted over `F_{p^2}`.
pub fn check_trace_relation(j0: &Rational, p: u64, bound: u64) -> Result<CongruenceReport> {
    let field = admissible_j(j0, p)?;
    let z0 = z0_of(j0)?;
    let z = field.reduce(&z0)?;
    let a0 = count_points(&build_e0(j0)?.reduce(field)?, bound)?.a;
    let report = CongruenceReport::new("trace_relation", p)
        .with_l(1)
        .with_j0(j0)
        .with_z0(&z0);
    match sqrt_mod_p(z) {
        Some(s) => {
            let (lhs, rhs) = at_both_roots(s, |r| {
                let a1 = e1_trace(&z0, r, bound)?;
                Ok(((a0 * a0).to_string(), (a1 * a1).to_string()))
            })?;
            Ok(report.with_branch(Branch::Split).compared(lhs, rhs))
        }
        None => {
            let sign = -i64::from(field.element(-1).legendre());
            let s = QuadField::over(field).sqrt_of_base(z);
            let (lhs, rhs) = at_both_roots(s, |r| {
                let a1 = e1_trace(&z0, r, bound)?;
                Ok((
                    field.element(a0 * a0).to_string(),
                    field.element(sign * a1).to_string(),
                ))
            })?;
            Ok(report.with_branch(Branch::Inert).compared(lhs, rhs))
        }
    }
}

/// `a_P(E1) = 2F1(1/6,5/6;1 | (1 - s)/2)` truncated at `(N(P) - 1)/6`, in
/// the residue field of the quadratic layer, for both roots `s`.
pub fn check_trace_as_series(z0: &Rational, p: u64, bound: u64) -> Result<CongruenceReport> {
    let field = PrimeField::new(p)?;
    if z0.valuation(p)? != 0 || (Rational::one() - z0).valuation(p)? != 0 {
        return Err(Error::Precondition(format!(
            "z0 = {z0} or 1 - z0 is not a {p}-unit"
        )));
    }
    let z = field.reduce(z0)?;
    let datum = HypergeometricDatum::two_f_one();
    fn side<F: FieldElement>(
        datum: &HypergeometricDatum,
        z0: &Rational,
        s: F,
        l: u32,
        bound: u64,
    ) -> Result<(String, String)> {
        let a = e1_trace(z0, s, bound)?;
        let half = s.of_int(2).inv().ok_or(Error::DivisionByZero)?;
        let t = (s.one_like() - s) * half;
        let series = truncated_sum_value(datum, t, TruncationLevel::sixth(s.characteristic(), l))?;
        Ok((s.of_int(a).to_string(), series.to_string()))
    }
    let j0 = Rational::from_int(1728).checked_div(&(Rational::one() - z0))?;
    let report = CongruenceReport::new("trace_as_2f1", p)
        .with_j0(&j0)
        .with_z0(z0);
    let (branch, l, (lhs, rhs)) = match sqrt_mod_p(z) {
        Some(s) => (
            Branch::Split,
            1,
            at_both_roots(s, |r| side(&datum, z0, r, 1, bound))?,
        ),
        None => {
            let s = QuadField::over(field).sqrt_of_base(z);
            (
                Branch::Inert,
                2,
                at_both_roots(s, |r| side(&datum, z0, r, 2, bound))?,
            )
        }
    };
    Ok(report.with_l(l).with_branch(branch).compared(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::DEFAULT_POINT_BOUND as B;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn squares_of_twists() {
        let e = WeierstrassCurve::short(q(1), q(1));
        let same = check_squares_equal(&e, &e, 7, B).unwrap();
        assert!(same.report.is_pass() && same.twist_relation_holds);
        let t = quadratic_twist(&e, &q(2)).unwrap();
        let c = check_squares_equal(&e, &t, 7, B).unwrap();
        assert!(c.report.is_pass());
        assert_eq!(c.gamma_symbol, 1);
        assert!(c.twist_relation_holds);
        let t = quadratic_twist(&e, &q(3)).unwrap();
        let c = check_squares_equal(&e, &t, 7, B).unwrap();
        assert!(c.report.is_pass());
        assert_eq!((c.gamma_symbol, c.a2), (-1, -c.a1));
    }

    #[test]
    fn squares_bad_reduction() {
        // disc(y^2 = x^3 + x + 1) = -496 = -16 * 31
        let e = WeierstrassCurve::short(q(1), q(1));
        assert!(matches!(
            check_squares_equal(&e, &e, 31, B),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn trace_relation_anchor() {
        let r = check_trace_relation(&q(2), 5, B).unwrap();
        assert_eq!(r.branch, Some(Branch::Inert));
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.lhs.as_deref(), Some("4;4"));
    }

    #[test]
    fn trace_relation_both_branches() {
        let mut seen = [false; 2];
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            for j in 1..p as i64 {
                match check_trace_relation(&q(j), p, B) {
                    Ok(r) => {
                        assert!(r.is_pass(), "{r:?}");
                        seen[(r.branch == Some(Branch::Inert)) as usize] = true;
                    }
                    Err(Error::Precondition(_)) | Err(Error::ExcludedJ(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn trace_as_series_examples() {
        let r = check_trace_as_series(&q(4), 5, B).unwrap();
        assert_eq!(r.branch, Some(Branch::Split));
        assert_eq!(r.rhs.as_deref(), Some("1;1"));
        assert!(r.is_pass(), "{r:?}");
        let r = check_trace_as_series(&q(2), 5, B).unwrap();
        assert_eq!(r.branch, Some(Branch::Inert));
        assert!(r.is_pass(), "{r:?}");
        for z in 2..7 {
            assert!(check_trace_as_series(&q(z), 7, B).unwrap().is_pass());
        }
        assert!(check_trace_as_series(&q(1), 7, B).is_err());
        assert!(check_trace_as_series(&q(7), 7, B).is_err());
    }

    #[test]
    fn twist_class_relation() {
        for p in [5u64, 7, 11, 13] {
            for j in 1..p as i64 {
                if let Ok(r) = check_twist_class(&q(j), p) {
                    assert!(r.is_pass(), "{r:?}");
                }
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(admissible_j(&q(3), 5).is_err());
        assert!(admissible_j(&q(10), 5).is_err());
        assert!(admissible_j(&q(0), 5).is_err());
        assert!(admissible_j(&q(2), 5).is_ok());
        assert!(admissible_j(&q(2), 3).is_err());
    }
}
