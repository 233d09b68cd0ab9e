//! Pochhammer symbols, truncated hypergeometric sums and their congruences.
//!
//! Two data are used throughout:
//! `2F1(1/6, 5/6; 1 | t)` and `3F2(1/2, 1/6, 5/6; 1, 1 | z)`.
//! Term coefficients are computed as [`ValuatedResidue`]s by the Pochhammer
//! recurrence, and independently from the integer closed forms built on
//! `(6r)!`; see [`closed_form_term_identity_check`].

mod checks;
mod lift;
mod pochhammer;

pub use checks::{
    check_factorial_congruence, check_inert_evaluation, check_p2_factorization,
    check_pochhammer_lift, check_reflection, check_term_vanishing, check_truncated_clausen,
};
pub use lift::{compute_bracket_and_prime, ZpUnitParam};
pub use pochhammer::{
    closed_form_2f1_term, closed_form_3f2_term, closed_form_term_identity_check, pochhammer_valres,
    FactorialTable,
};

use crate::arith::{DensePolynomial, FieldElement, Fp, PrimeField, Rational, ValuatedResidue};
use crate::error::{Error, Result};

/// Parameters `(alpha; beta)` of an `nF(n-1)` series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricDatum {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl HypergeometricDatum {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() || beta.len() + 1 != alpha.len() {
            return Err(Error::Precondition(
                "datum needs n upper and n-1 lower parameters".into(),
            ));
        }
        if let Some(b) = beta
            .iter()
            .find(|b| b.is_integer() && (b.is_negative() || b.is_zero()))
        {
            return Err(Error::Precondition(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
        Ok(HypergeometricDatum { alpha, beta })
    }

    /// `((1/6, 5/6), (1))`.
    pub fn two_f_one() -> Self {
        HypergeometricDatum {
            alpha: vec![Rational::frac(1, 6), Rational::frac(5, 6)],
            beta: vec![Rational::one()],
        }
    }

    /// `((1/2, 1/6, 5/6), (1, 1))`.
    pub fn three_f_two() -> Self {
        HypergeometricDatum {
            alpha: vec![
                Rational::frac(1, 2),
                Rational::frac(1, 6),
                Rational::frac(5, 6),
            ],
            beta: vec![Rational::one(), Rational::one()],
        }
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn label(&self) -> String {
        let join = |v: &[Rational]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{}F{}({};{})",
            self.alpha.len(),
            self.beta.len(),
            join(&self.alpha),
            join(&self.beta)
        )
    }

    /// Term coefficients `c_0, ..., c_{r_max}` where
    /// `c_r = prod (alpha_i)_r / (prod (beta_j)_r * r!)`, as valuated residues.
    pub fn coefficients(&self, r_max: usize, p: u64, k: u32) -> Result<Vec<ValuatedResidue>> {
        let parts = |v: &[Rational]| -> Result<Vec<(i128, i128)>> {
            v.iter()
                .map(|x| x.to_i128_parts().ok_or(Error::Overflow))
                .collect()
        };
        let alpha = parts(&self.alpha)?;
        let beta = parts(&self.beta)?;
        for (a, &(_, den)) in self.alpha.iter().zip(&alpha) {
            if den % p as i128 == 0 {
                return Err(Error::NotIntegral {
                    value: a.to_string(),
                    p,
                });
            }
        }
        let mut out = Vec::with_capacity(r_max + 1);
        let mut c = ValuatedResidue::one(p, k);
        out.push(c);
        for r in 0..r_max {
            let r = r as i128;
            let mut num = ValuatedResidue::one(p, k);
            for &(n, d) in &alpha {
                let f = n
                    .checked_add(r.checked_mul(d).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
                num = num * ValuatedResidue::from_ratio(f, d, p, k)?;
            }
            let mut den = ValuatedResidue::from_int(r + 1, p, k);
            for &(n, d) in &beta {
                let f = n
                    .checked_add(r.checked_mul(d).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
                den = den * ValuatedResidue::from_ratio(f, d, p, k)?;
            }
            c = (c * num).checked_div(&den)?;
            out.push(c);
        }
        Ok(out)
    }

    /// Coefficients reduced mod `p`; positive valuation reduces to zero.
    pub fn coefficients_mod_p(&self, r_max: usize, field: PrimeField) -> Result<Vec<Fp>> {
        let p = field.modulus();
        self.coefficients(r_max, p, 1)?
            .iter()
            .enumerate()
            .map(|(r, c)| match c.residue_mod_p() {
                Ok(v) => Ok(field.from_u64(v)),
                Err(_) => Err(Error::IntegralityViolation {
                    r,
                    valuation: c.valuation().unwrap_or(0),
                    p,
                }),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruncationKind {
    Explicit,
    /// `floor((p^l - 1) / 6)`
    SixthOfNormMinusOne,
    /// `p^l - 1`
    NormMinusOne,
    /// `p^(2l) - 1`
    SquaredNormMinusOne,
}

/// Upper summation index of a truncated sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationLevel {
    pub r_max: usize,
    pub kind: TruncationKind,
}

fn norm(p: u64, l: u32) -> usize {
    p.checked_pow(l).expect("p^l overflow") as usize
}

impl TruncationLevel {
    pub fn explicit(r_max: usize) -> Self {
        TruncationLevel {
            r_max,
            kind: TruncationKind::Explicit,
        }
    }

    pub fn sixth(p: u64, l: u32) -> Self {
        TruncationLevel {
            r_max: (norm(p, l) - 1) / 6,
            kind: TruncationKind::SixthOfNormMinusOne,
        }
    }

    pub fn norm_minus_one(p: u64, l: u32) -> Self {
        TruncationLevel {
            r_max: norm(p, l) - 1,
            kind: TruncationKind::NormMinusOne,
        }
    }

    pub fn squared_norm_minus_one(p: u64, l: u32) -> Self {
        TruncationLevel {
            r_max: norm(p, 2 * l) - 1,
            kind: TruncationKind::SquaredNormMinusOne,
        }
    }

    pub fn is_consistent(&self, p: u64, l: u32) -> bool {
        let expected = match self.kind {
            TruncationKind::Explicit => return true,
            TruncationKind::SixthOfNormMinusOne => Self::sixth(p, l),
            TruncationKind::NormMinusOne => Self::norm_minus_one(p, l),
            TruncationKind::SquaredNormMinusOne => Self::squared_norm_minus_one(p, l),
        };
        expected.r_max == self.r_max
    }
}

/// `sum_{r <= r_max} (c_r mod p) z^r` in the field of `z`.
pub fn truncated_sum_value<F: FieldElement>(
    datum: &HypergeometricDatum,
    z: F,
    trunc: TruncationLevel,
) -> Result<F> {
    let field = PrimeField::new(z.characteristic())?;
    let coeffs = datum.coefficients_mod_p(trunc.r_max, field)?;
    Ok(coeffs
        .iter()
        .rev()
        .fold(z.zero_like(), |acc, &c| acc * z + z.embed(c)))
}

/// The truncated series as a polynomial in `t` over `F_p`.
pub fn truncated_series_poly(
    datum: &HypergeometricDatum,
    trunc: TruncationLevel,
    field: PrimeField,
) -> Result<DensePolynomial> {
    Ok(DensePolynomial::new(
        field,
        datum.coefficients_mod_p(trunc.r_max, field)?,
    ))
}

/// `sum_{r <= r_max} c_r z^r mod p^k` for an integer residue `z mod p^k`.
pub fn truncated_sum_mod_pk(
    datum: &HypergeometricDatum,
    z: u64,
    r_max: usize,
    p: u64,
    k: u32,
) -> Result<u64> {
    let m = p.pow(k) as u128;
    let coeffs = datum.coefficients(r_max, p, k)?;
    let mut acc: u128 = 0;
    for (r, c) in coeffs.iter().enumerate().rev() {
        let c = c
            .residue_mod_pk(k)
            .map_err(|_| Error::IntegralityViolation {
                r,
                valuation: c.valuation().unwrap_or(0),
                p,
            })? as u128;
        acc = (acc * z as u128 + c) % m;
    }
    Ok(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadField;

    #[test]
    fn datum_validation() {
        assert!(HypergeometricDatum::new(vec![Rational::one()], vec![]).is_ok());
        assert!(HypergeometricDatum::new(
            vec![Rational::one(), Rational::one()],
            vec![Rational::from_int(-2)]
        )
        .is_err());
        assert!(HypergeometricDatum::new(vec![Rational::one()], vec![Rational::one()]).is_err());
        assert_eq!(
            HypergeometricDatum::three_f_two().label(),
            "3F2(1/2,1/6,5/6;1,1)"
        );
    }

    #[test]
    fn first_coefficients() {
        // c_1 = 5/72 for 3F2 and 5/36 for 2F1, exactly
        for p in [5, 7, 11, 13] {
            let c3 = HypergeometricDatum::three_f_two()
                .coefficients(1, p, 2)
                .unwrap();
            assert!(c3[1].agrees_with(&ValuatedResidue::from_ratio(5, 72, p, 2).unwrap()));
            let c2 = HypergeometricDatum::two_f_one()
                .coefficients(1, p, 2)
                .unwrap();
            assert!(c2[1].agrees_with(&ValuatedResidue::from_ratio(5, 36, p, 2).unwrap()));
        }
        // 1728^-1 * 6!/3! = 120/1728 = 5/72
        let closed = closed_form_3f2_term(1, 11, 2);
        assert!(closed.agrees_with(&ValuatedResidue::from_ratio(5, 72, 11, 2).unwrap()));
    }

    #[test]
    fn sum_value_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let d3 = HypergeometricDatum::three_f_two();
        for z in f5.elements() {
            assert_eq!(
                truncated_sum_value(&d3, z, TruncationLevel::explicit(0)).unwrap(),
                f5.one()
            );
        }
        let v = truncated_sum_value(&d3, f5.element(4), TruncationLevel::explicit(4)).unwrap();
        assert_eq!(v, f5.one());
        let q = QuadField::new(5).unwrap();
        let v = truncated_sum_value(&d3, q.w(), TruncationLevel::norm_minus_one(5, 1)).unwrap();
        assert_eq!(v, q.one());
    }

    #[test]
    fn series_poly_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let d2 = HypergeometricDatum::two_f_one();
        let poly = truncated_series_poly(&d2, TruncationLevel::explicit(1), f7).unwrap();
        assert_eq!(poly, DensePolynomial::from_ints(f7, &[1, 5]));
        assert_eq!(TruncationLevel::sixth(5, 1).r_max, 0);
        let f5 = PrimeField::new(5).unwrap();
        let poly = truncated_series_poly(&d2, TruncationLevel::sixth(5, 1), f5).unwrap();
        assert_eq!(poly, DensePolynomial::from_ints(f5, &[1]));
        let poly = truncated_series_poly(
            &HypergeometricDatum::three_f_two(),
            TruncationLevel::explicit(0),
            f7,
        )
        .unwrap();
        assert_eq!(poly, DensePolynomial::from_ints(f7, &[1]));
    }

    #[test]
    fn integrality_violation_is_reported() {
        // 1F0(1/7;) has c_1 = 1/7
        let d = HypergeometricDatum::new(vec![Rational::frac(1, 7)], vec![]).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert!(matches!(
            d.coefficients_mod_p(3, f7),
            Err(Error::NotIntegral { .. })
        ));
        // 2F1(1, 1; 7) has c_1 = 1/7
        let d = HypergeometricDatum::new(
            vec![Rational::one(), Rational::one()],
            vec![Rational::from_int(7)],
        )
        .unwrap();
        assert_eq!(
            d.coefficients_mod_p(2, f7),
            Err(Error::IntegralityViolation {
                r: 1,
                valuation: -1,
                p: 7
            })
        );
    }

    #[test]
    fn truncation_consistency() {
        assert!(TruncationLevel::sixth(13, 2).is_consistent(13, 2));
        assert_eq!(TruncationLevel::sixth(13, 2).r_max, 28);
        assert!(!TruncationLevel::sixth(13, 2).is_consistent(13, 1));
        assert_eq!(TruncationLevel::squared_norm_minus_one(5, 1).r_max, 24);
    }

    #[test]
    fn mod_p2_sum_reduces_to_mod_p() {
        let d3 = HypergeometricDatum::three_f_two();
        for p in [5u64, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for z in 0..p * p {
                if z % 7 != 0 {
                    continue;
                }
                let s2 = truncated_sum_mod_pk(&d3, z, (p - 1) as usize, p, 2).unwrap();
                let s1 =
                    truncated_sum_value(&d3, f.from_u64(z), TruncationLevel::norm_minus_one(p, 1))
                        .unwrap();
                assert_eq!(s2 % p, s1.value());
            }
        }
    }
}
