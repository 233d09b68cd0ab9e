//! Executable forms of the truncated-series congruences. Each check returns a
//! report whose two sides are equal exactly when the congruence holds; a
//! mismatch names the first differing index.

use super::{
    compute_bracket_and_prime, truncated_series_poly, FactorialTable, HypergeometricDatum,
    TruncationLevel,
};
use crate::arith::{
    DensePolynomial, FieldElement, PrimeField, QuadField, Rational, ValuatedResidue,
};
use crate::error::{Error, Result};
use crate::report::{fingerprint, Branch, CongruenceReport};

pub(crate) fn validate(p: u64, l: u32) -> Result<PrimeField> {
    if !(1..=2).contains(&l) {
        return Err(Error::Precondition(format!(
            "residue degree l = {l} not in {{1, 2}}"
        )));
    }
    PrimeField::new(p)
}

/// Equal sequences render identically (short ones in full, long ones as a
/// fingerprint); unequal ones render their first differing entry.
pub(crate) fn compare_sequences(
    report: CongruenceReport,
    index_label: &str,
    lhs: &[u64],
    rhs: &[u64],
) -> CongruenceReport {
    let n = lhs.len().max(rhs.len());
    let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    match (0..n).find(|&i| at(lhs, i) != at(rhs, i)) {
        None => {
            let shown = if lhs.len() <= 8 {
                format!(
                    "[{}]",
                    lhs.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            } else {
                fingerprint(lhs.iter().copied())
            };
            report.compared(&shown, &shown)
        }
        Some(i) => report.compared(
            format!("{index_label}{i}: {}", at(lhs, i)),
            format!("{index_label}{i}: {}", at(rhs, i)),
        ),
    }
}

fn compare_polys(
    report: CongruenceReport,
    lhs: &DensePolynomial,
    rhs: &DensePolynomial,
) -> CongruenceReport {
    let n = lhs.coefficients().len().max(rhs.coefficients().len());
    let coeffs = |p: &DensePolynomial| (0..n).map(|i| p.coeff(i).value()).collect::<Vec<_>>();
    compare_sequences(report, "t^", &coeffs(lhs), &coeffs(rhs))
}

/// Every coefficient with `(p^l - 1)/6 < r <= p^l - 1` of both fixed data
/// has positive `p`-adic valuation.
pub fn check_term_vanishing(p: u64, l: u32) -> Result<CongruenceReport> {
    validate(p, l)?;
    let n = p.pow(l) as usize;
    let lo = (n - 1) / 6 + 1;
    let hi = n - 1;
    let mut report = CongruenceReport::new("term_vanishing", p).with_l(l);
    for datum in [
        HypergeometricDatum::two_f_one(),
        HypergeometricDatum::three_f_two(),
    ] {
        let coeffs = datum.coefficients(hi, p, 1)?;
        if let Some(r) = (lo..=hi).find(|&r| coeffs[r].valuation().is_some_and(|v| v < 1)) {
            let v = coeffs[r].valuation().unwrap_or_default();
            return Ok(report.compared(
                format!("{} c_{r}: v_p = {v}", datum.label()),
                format!("{} c_{r}: v_p >= 1", datum.label()),
            ));
        }
    }
    let summary = if lo > hi {
        "empty range".to_string()
    } else {
        format!("v_p(c_r) >= 1 for r in {lo}..={hi}")
    };
    report = report.compared(&summary, &summary);
    Ok(report)
}

/// `2F1(t)_N^2 = 3F2(4t(1-t))_N` in `F_p[t]` with `N = floor((p^l-1)/6)`.
pub fn check_truncated_clausen(p: u64, l: u32) -> Result<CongruenceReport> {
    let field = validate(p, l)?;
    let trunc = TruncationLevel::sixth(p, l);
    let f2 = truncated_series_poly(&HypergeometricDatum::two_f_one(), trunc, field)?;
    let f3 = truncated_series_poly(&HypergeometricDatum::three_f_two(), trunc, field)?;
    let lhs = &f2 * &f2;
    let inner = DensePolynomial::from_ints(field, &[0, 4, -4]);
    let rhs = f3.compose(&inner);
    Ok(compare_polys(
        CongruenceReport::new("truncated_clausen", p).with_l(l),
        &lhs,
        &rhs,
    ))
}

/// `2F1(t)_{p^2l - 1} = 2F1(t)_{p^l - 1} * 2F1(t^{p^l})_{p^l - 1}` in `F_p[t]`.
pub fn check_p2_factorization(p: u64, l: u32) -> Result<CongruenceReport> {
    let field = validate(p, l)?;
    let datum = HypergeometricDatum::two_f_one();
    let lhs = truncated_series_poly(&datum, TruncationLevel::squared_norm_minus_one(p, l), field)?;
    let short = truncated_series_poly(&datum, TruncationLevel::norm_minus_one(p, l), field)?;
    let rhs = &short * &short.substitute_power(p.pow(l) as usize);
    Ok(compare_polys(
        CongruenceReport::new("p2_factorization", p).with_l(l),
        &lhs,
        &rhs,
    ))
}

/// `2F1(t)_N = (-1)^((p^l-1)/2) 2F1(1-t)_N` in `F_p[t]` with
/// `N = floor((p^l-1)/6)`.
pub fn check_reflection(p: u64, l: u32) -> Result<CongruenceReport> {
    let field = validate(p, l)?;
    let trunc = TruncationLevel::sixth(p, l);
    let lhs = truncated_series_poly(&HypergeometricDatum::two_f_one(), trunc, field)?;
    let sign = if ((p.pow(l) - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let one_minus_t = DensePolynomial::from_ints(field, &[1, -1]);
    let rhs = lhs.compose(&one_minus_t).scale(field.element(sign));
    Ok(compare_polys(
        CongruenceReport::new("reflection", p).with_l(l),
        &lhs,
        &rhs,
    ))
}

/// For a non-square `z0` mod `p` and `t = (1 - sqrt(z0))/2` in `F_{p^2}`:
/// `2F1(t)_{p^2-1} = (-1/p) 2F1(t)_{p-1}^2`, for both square roots.
pub fn check_inert_evaluation(z0: &Rational, p: u64) -> Result<CongruenceReport> {
    let base = PrimeField::new(p)?;
    let z = base.reduce(z0)?;
    if z.legendre() != -1 {
        return Err(Error::Precondition(format!(
            "z0 = {z0} is not a non-square mod {p}"
        )));
    }
    let quad = QuadField::over(base);
    let datum = HypergeometricDatum::two_f_one();
    let long = truncated_series_poly(&datum, TruncationLevel::squared_norm_minus_one(p, 1), base)?;
    let short = truncated_series_poly(&datum, TruncationLevel::norm_minus_one(p, 1), base)?;
    let minus_one_symbol = base.element(-1).legendre() as i64;
    let half = base.element(2).inv().expect("p odd");
    let root = quad.sqrt_of_base(z);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for s in [root, -root] {
        let t = (quad.one() - s) * quad.embed(half);
        let short_value = short.eval(t);
        lhs.push(long.eval(t).to_string());
        rhs.push((short_value * short_value * t.of_int(minus_one_symbol)).to_string());
    }
    Ok(CongruenceReport::new("inert_evaluation", p)
        .with_l(1)
        .with_z0(z0)
        .with_branch(Branch::Inert)
        .compared(lhs.join(";"), rhs.join(";")))
}

/// For `0 <= r <= (p^l-1)/6` and `H = (p^l-1)/2`:
/// `4^3r H! / (r! (2r)! (H-3r)!) = (-1)^3r (6r)! / (r! (2r)! (3r)!)` mod `p`.
pub fn check_factorial_congruence(p: u64, l: u32) -> Result<CongruenceReport> {
    validate(p, l)?;
    let n = p.pow(l) as usize;
    let half = (n - 1) / 2;
    let fact = FactorialTable::new(n - 1, p, 1);
    let four = ValuatedResidue::from_int(4, p, 1);
    let minus_one = ValuatedResidue::from_int(-1, p, 1);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..=(n - 1) / 6 {
        let common = fact.get(r) * fact.get(2 * r);
        let left = (four.pow(3 * r as u64) * fact.get(half))
            .checked_div(&(common * fact.get(half - 3 * r)))?;
        let right = (minus_one.pow(3 * r as u64) * fact.get(6 * r))
            .checked_div(&(common * fact.get(3 * r)))?;
        lhs.push(left.residue_mod_p()?);
        rhs.push(right.residue_mod_p()?);
    }
    Ok(compare_sequences(
        CongruenceReport::new("factorial_congruence", p).with_l(l),
        "r=",
        &lhs,
        &rhs,
    ))
}

/// `(a)_{m p^l} / (m p^l)! = (a')_m / m!` mod `p` for `0 <= m <= p^l - 1`,
/// optionally capped at `m_max`.
pub fn check_pochhammer_lift(
    a: &Rational,
    p: u64,
    l: u32,
    m_max: Option<usize>,
) -> Result<CongruenceReport> {
    validate(p, l)?;
    let param = compute_bracket_and_prime(a, p, l)?;
    let n = p.pow(l) as usize;
    let last = m_max.map_or(n - 1, |cap| cap.min(n - 1));
    let (a_num, a_den) = a.to_i128_parts().ok_or(Error::Overflow)?;
    let (b_num, b_den) = param.a_prime.to_i128_parts().ok_or(Error::Overflow)?;

    let mut long_poch = ValuatedResidue::one(p, 1);
    let mut long_fact = ValuatedResidue::one(p, 1);
    let mut short_poch = ValuatedResidue::one(p, 1);
    let mut short_fact = ValuatedResidue::one(p, 1);
    let mut lhs = Vec::with_capacity(last + 1);
    let mut rhs = Vec::with_capacity(last + 1);
    for m in 0..=last {
        if m > 0 {
            for j in ((m - 1) * n)..(m * n) {
                let j = j as i128;
                long_poch =
                    long_poch * ValuatedResidue::from_ratio(a_num + j * a_den, a_den, p, 1)?;
                long_fact = long_fact * ValuatedResidue::from_int(j + 1, p, 1);
            }
            let i = (m - 1) as i128;
            short_poch = short_poch * ValuatedResidue::from_ratio(b_num + i * b_den, b_den, p, 1)?;
            short_fact = short_fact * ValuatedResidue::from_int(i + 1, p, 1);
        }
        lhs.push(long_poch.checked_div(&long_fact)?.residue_mod_p()?);
        rhs.push(short_poch.checked_div(&short_fact)?.residue_mod_p()?);
    }
    Ok(compare_sequences(
        CongruenceReport::new(format!("pochhammer_lift[a={a}]"), p).with_l(l),
        "m=",
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clausen_small_cases() {
        let r = check_truncated_clausen(5, 1).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.lhs.as_deref(), Some("[1]"));
        let r = check_truncated_clausen(7, 1).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.lhs.as_deref(), Some("[1,3,4]"));
        assert!(check_truncated_clausen(11, 1).unwrap().is_pass());
    }

    #[test]
    fn reflection_small_cases() {
        let r = check_reflection(7, 1).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.lhs.as_deref(), Some("[1,5]"));
        assert_eq!(check_reflection(5, 1).unwrap().lhs.as_deref(), Some("[1]"));
        assert!(check_reflection(13, 1).unwrap().is_pass());
    }

    #[test]
    fn factorization_small_cases() {
        assert!(check_p2_factorization(5, 1).unwrap().is_pass());
        assert!(check_p2_factorization(7, 1).unwrap().is_pass());
    }

    #[test]
    fn vanishing_small_cases() {
        assert!(check_term_vanishing(5, 1).unwrap().is_pass());
        assert!(check_term_vanishing(7, 1).unwrap().is_pass());
        let r = check_term_vanishing(13, 1).unwrap();
        assert_eq!(r.lhs.as_deref(), Some("v_p(c_r) >= 1 for r in 3..=12"));
    }

    #[test]
    fn inert_evaluation_cases() {
        assert!(check_inert_evaluation(&Rational::from_int(2), 5)
            .unwrap()
            .is_pass());
        assert!(check_inert_evaluation(&Rational::from_int(3), 7)
            .unwrap()
            .is_pass());
        assert!(matches!(
            check_inert_evaluation(&Rational::from_int(4), 5),
            Err(Error::Precondition(_))
        ));
        let r = check_inert_evaluation(&Rational::from_int(2), 5).unwrap();
        assert_eq!(r.lhs.as_ref().unwrap().split(';').count(), 2);
    }

    #[test]
    fn factorial_congruence_cases() {
        let r = check_factorial_congruence(7, 1).unwrap();
        // r = 0: 1 and 1; r = 1: 192 = 3 and -60 = 3 mod 7
        assert_eq!(r.lhs.as_deref(), Some("[1,3]"));
        assert!(r.is_pass());
        assert!(check_factorial_congruence(13, 1).unwrap().is_pass());
    }

    #[test]
    fn pochhammer_lift_cases() {
        let r = check_pochhammer_lift(&Rational::frac(1, 6), 7, 1, Some(1)).unwrap();
        assert_eq!(r.lhs.as_deref(), Some("[1,6]"));
        assert!(r.is_pass());
        assert!(check_pochhammer_lift(&Rational::frac(5, 6), 7, 1, None)
            .unwrap()
            .is_pass());
        assert!(check_pochhammer_lift(&Rational::frac(1, 2), 5, 2, Some(10))
            .unwrap()
            .is_pass());
        // 5/6 is not a 5-adic unit
        assert!(matches!(
            check_pochhammer_lift(&Rational::frac(5, 6), 5, 1, None),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(check_reflection(9, 1).is_err());
        assert!(check_reflection(7, 3).is_err());
        assert!(check_reflection(3, 1).is_err());
    }

    #[test]
    fn mismatch_names_first_index() {
        let r = compare_sequences(CongruenceReport::new("x", 5), "t^", &[1, 2, 3], &[1, 2, 4]);
        assert!(r.is_fail());
        assert_eq!(r.lhs.as_deref(), Some("t^2: 3"));
        assert_eq!(r.rhs.as_deref(), Some("t^2: 4"));
    }
}
