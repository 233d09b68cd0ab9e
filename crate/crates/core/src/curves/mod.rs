//! Weierstrass models, twists, exhaustive point counting and the checks
//! relating Frobenius traces of the two auxiliary models of a `j`-invariant.

mod checks;
mod count;
mod models;

pub use checks::{
    check_squares_equal, check_trace_as_series, check_trace_relation, check_twist_class,
    quadratic_twist, SquaresComparison,
};
pub use count::{count_points, TraceRecord, DEFAULT_POINT_BOUND};
pub use models::{build_e0, build_e1, build_e1_reduced, twist_gamma, E1Reduction};

pub(crate) use checks::admissible_j;
pub(crate) use models::z0_of;

use std::fmt;

use crate::arith::{FieldElement, PrimeField, Rational};
use crate::error::{Error, Result};

/// Ring operations shared by rational and finite-field coefficients.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn divided(&self, other: &Self) -> Result<Self>;
    /// The integer `n` in the ring of `self`.
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_scalar(&self) -> bool;
}

impl<F: FieldElement> Scalar for F {
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn minus(&self, other: &Self) -> Self {
        *self - *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
    fn divided(&self, other: &Self) -> Result<Self> {
        Ok(*self * other.inv().ok_or(Error::DivisionByZero)?)
    }
    fn int_like(&self, n: i64) -> Self {
        self.of_int(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn divided(&self, other: &Self) -> Result<Self> {
        self.checked_div(other)
    }
    fn int_like(&self, n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveForm {
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
    General,
    /// `y^2 = x^3 + a4 x + a6`
    Short,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a6: T,
    pub form: CurveForm,
}

impl<T: Scalar> WeierstrassCurve<T> {
    pub fn short(a: T, b: T) -> Self {
        let zero = a.int_like(0);
        WeierstrassCurve {
            a1: zero.clone(),
            a2: zero.clone(),
            a3: zero,
            a4: a,
            a6: b,
            form: CurveForm::Short,
        }
    }

    pub fn general(a1: T, a2: T, a3: T, a4: T, a6: T) -> Self {
        let form = if a1.is_zero_scalar() && a2.is_zero_scalar() && a3.is_zero_scalar() {
            CurveForm::Short
        } else {
            CurveForm::General
        };
        WeierstrassCurve {
            a1,
            a2,
            a3,
            a4,
            a6,
            form,
        }
    }

    /// `(A, B)` of a short model.
    pub fn short_coefficients(&self) -> Option<(&T, &T)> {
        (self.form == CurveForm::Short).then_some((&self.a4, &self.a6))
    }

    fn b_invariants(&self) -> (T, T, T, T) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n = |k: i64| a1.int_like(k);
        let b2 = a1.times(a1).plus(&n(4).times(a2));
        let b4 = n(2).times(a4).plus(&a1.times(a3));
        let b6 = a3.times(a3).plus(&n(4).times(a6));
        let b8 = a1
            .times(a1)
            .times(a6)
            .plus(&n(4).times(a2).times(a6))
            .minus(&a1.times(a3).times(a4))
            .plus(&a2.times(a3).times(a3))
            .minus(&a4.times(a4));
        (b2, b4, b6, b8)
    }

    pub fn c4(&self) -> T {
        let (b2, b4, _, _) = self.b_invariants();
        b2.times(&b2).minus(&b2.int_like(24).times(&b4))
    }

    /// `-b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6`; equals
    /// `-16 (4A^3 + 27B^2)` on a short model.
    pub fn discriminant(&self) -> T {
        let (b2, b4, b6, b8) = self.b_invariants();
        let n = |k: i64| b2.int_like(k);
        n(0).minus(&b2.times(&b2).times(&b8))
            .minus(&n(8).times(&b4).times(&b4).times(&b4))
            .minus(&n(27).times(&b6).times(&b6))
            .plus(&n(9).times(&b2).times(&b4).times(&b6))
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero_scalar()
    }

    /// `c4^3 / disc`.
    pub fn j_invariant(&self) -> Result<T> {
        let disc = self.discriminant();
        if disc.is_zero_scalar() {
            return Err(Error::Singular);
        }
        let c4 = self.c4();
        c4.times(&c4).times(&c4).divided(&disc)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<WeierstrassCurve<U>> {
        Ok(WeierstrassCurve {
            a1: f(&self.a1)?,
            a2: f(&self.a2)?,
            a3: f(&self.a3)?,
            a4: f(&self.a4)?,
            a6: f(&self.a6)?,
            form: self.form,
        })
    }
}

impl<T: Scalar> fmt::Display for WeierstrassCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            CurveForm::Short => write!(f, "y^2 = x^3 + ({})x + ({})", self.a4, self.a6),
            CurveForm::General => write!(
                f,
                "y^2 + ({})xy + ({})y = x^3 + ({})x^2 + ({})x + ({})",
                self.a1, self.a3, self.a2, self.a4, self.a6
            ),
        }
    }
}

impl WeierstrassCurve<Rational> {
    /// Coefficient-wise reduction; every coefficient must be `p`-integral.
    pub fn reduce(&self, field: PrimeField) -> Result<WeierstrassCurve<crate::arith::Fp>> {
        self.map(|c| field.reduce(c))
    }

    /// The short model scaled by `(A, B) -> (p^4e A, p^6e B)` with the least
    /// `e` making both coefficients `p`-integral.
    pub fn minimal_short_model(&self, p: u64) -> Result<WeierstrassCurve<Rational>> {
        let (a, b) = self
            .short_coefficients()
            .ok_or_else(|| Error::Precondition("minimal model needs a short form".into()))?;
        let need = |x: &Rational, weight: i64| -> Result<Option<i64>> {
            if x.is_zero() {
                return Ok(None);
            }
            let v = x.valuation(p)?;
            // least e with v + weight*e >= 0
            Ok(Some(
                (-v).div_euclid(weight) + i64::from((-v).rem_euclid(weight) != 0),
            ))
        };
        let e = match (need(a, 4)?, need(b, 6)?) {
            (Some(x), Some(y)) => x.max(y),
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => return Err(Error::Singular),
        };
        let scale = |x: &Rational, w: i64| -> Result<Rational> {
            Ok(x * &Rational::from_int(p as i64).pow((w * e) as i32)?)
        };
        Ok(WeierstrassCurve::short(scale(a, 4)?, scale(b, 6)?))
    }

    /// Good reduction of the minimal short model at `p`.
    pub fn has_good_reduction(&self, p: u64) -> Result<bool> {
        let field = PrimeField::new(p)?;
        let model = self.minimal_short_model(p)?;
        Ok(!model.reduce(field)?.is_singular())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn j_examples() {
        assert_eq!(
            WeierstrassCurve::short(q(1), q(0)).j_invariant().unwrap(),
            q(1728)
        );
        assert_eq!(
            WeierstrassCurve::short(q(0), q(1)).j_invariant().unwrap(),
            q(0)
        );
        assert_eq!(
            WeierstrassCurve::short(q(0), q(0)).j_invariant(),
            Err(Error::Singular)
        );
        // short discriminant convention
        let e = WeierstrassCurve::short(q(2), q(3));
        assert_eq!(e.discriminant(), q(-16 * (4 * 8 + 27 * 9)));
    }

    #[test]
    fn general_form_j() {
        // y^2 + xy = x^3 - 1/864 * (1 - s) with s = 0: j = 1728 / (1 - 0)
        let e = WeierstrassCurve::general(q(1), q(0), q(0), q(0), Rational::frac(-1, 864));
        assert_eq!(e.form, CurveForm::General);
        assert_eq!(e.j_invariant().unwrap(), q(1728));
    }

    #[test]
    fn minimal_model_scaling() {
        let e = WeierstrassCurve::short(Rational::frac(1, 5), Rational::frac(1, 25));
        let m = e.minimal_short_model(5).unwrap();
        assert_eq!(m.a4, q(125));
        assert_eq!(m.a6, q(625));
        let big = WeierstrassCurve::short(q(5 * 5 * 5 * 5), q(5i64.pow(6) * 2));
        let m = big.minimal_short_model(5).unwrap();
        assert_eq!((m.a4.clone(), m.a6.clone()), (q(1), q(2)));
        assert!(big.has_good_reduction(5).unwrap());
        assert!(!WeierstrassCurve::short(q(5), q(5))
            .has_good_reduction(5)
            .unwrap());
    }
}
