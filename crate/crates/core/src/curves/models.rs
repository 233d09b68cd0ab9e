use super::{Scalar, WeierstrassCurve};
use crate::arith::{FieldElement, PrimeField, Rational};
use crate::error::{Error, Result};

/// `z0 = 1 - 1728/j0`, rejecting the excluded invariants.
pub(crate) fn z0_of(j0: &Rational) -> Result<Rational> {
    if j0.is_zero() || *j0 == Rational::from_int(1728) {
        return Err(Error::ExcludedJ(j0.to_string()));
    }
    Ok(Rational::one() - Rational::from_int(1728).checked_div(j0)?)
}

/// `y^2 = x^3 - x/(48 z0^3) + 1/(864 z0^4)` with `z0 = 1 - 1728/j0`.
pub fn build_e0(j0: &Rational) -> Result<WeierstrassCurve<Rational>> {
    let z0 = z0_of(j0)?;
    let a = Rational::from_int(-1).checked_div(&(Rational::from_int(48) * z0.pow(3)?))?;
    let b = Rational::one().checked_div(&(Rational::from_int(864) * z0.pow(4)?))?;
    Ok(WeierstrassCurve::short(a, b))
}

/// `y^2 + xy = x^3 - (1 - s)/864` for a square root `s` of `z0`.
pub fn build_e1<T: Scalar>(sqrt_z0: &T) -> Result<WeierstrassCurve<T>> {
    let n = |k: i64| sqrt_z0.int_like(k);
    let a6 = n(0).minus(&n(1).minus(sqrt_z0)).divided(&n(864))?;
    Ok(WeierstrassCurve::general(n(1), n(0), n(0), n(0), a6))
}

/// The three models of `E1` over a finite field: the original, the one after
/// `y -> y + x/2`, and the short model after `x -> x - 1/12`.
#[derive(Clone, Debug, PartialEq)]
pub struct E1Reduction<F> {
    pub original: WeierstrassCurve<F>,
    pub completed_square: WeierstrassCurve<F>,
    pub short: WeierstrassCurve<F>,
}

/// Reduces `E1` over the field of `sqrt_z0` to `y^2 = x^3 - x/48 + s/864`.
pub fn build_e1_reduced<F: FieldElement>(z0: &Rational, sqrt_z0: F) -> Result<E1Reduction<F>> {
    let base = PrimeField::new(sqrt_z0.characteristic())?;
    let z = sqrt_z0.embed(base.reduce(z0)?);
    if sqrt_z0 * sqrt_z0 != z {
        return Err(Error::BadRoot(format!("({sqrt_z0})^2 != {z}")));
    }
    let s = sqrt_z0;
    let n = |k: i64| s.of_int(k);
    let inv = |k: i64| n(k).inv().ok_or(Error::DivisionByZero);

    let original = build_e1(&s)?;
    // (y + x/2)^2 = y^2 + xy + x^2/4
    let completed_square = WeierstrassCurve::general(n(0), inv(4)?, n(0), n(0), original.a6);
    // x -> x - 1/12 kills the quadratic term
    let short = WeierstrassCurve::short(-inv(48)?, s * inv(864)?);

    let j0 = n(1728) * (n(1) - z).inv().ok_or(Error::DivisionByZero)?;
    for model in [&original, &completed_square, &short] {
        if model.j_invariant()? != j0 {
            return Err(Error::Precondition(format!(
                "model {model} does not have j = {j0}"
            )));
        }
    }
    Ok(E1Reduction {
        original,
        completed_square,
        short,
    })
}

/// The class `gamma = (A1/B1)/(A2/B2)` with `E2` isomorphic to `E1` over
/// the extension by `sqrt(gamma)`.
pub fn twist_gamma<T: Scalar>(e1: &WeierstrassCurve<T>, e2: &WeierstrassCurve<T>) -> Result<T> {
    let shape = || Error::Precondition("twist class needs short models with A, B != 0".into());
    let (a1, b1) = e1.short_coefficients().ok_or_else(shape)?;
    let (a2, b2) = e2.short_coefficients().ok_or_else(shape)?;
    if [a1, b1, a2, b2].iter().any(|c| c.is_zero_scalar()) {
        return Err(shape());
    }
    let (j1, j2) = (e1.j_invariant()?, e2.j_invariant()?);
    if j1 != j2 {
        return Err(Error::Precondition(format!(
            "j-invariants differ: {j1} vs {j2}"
        )));
    }
    let ra = a1.divided(a2)?;
    let rb = b1.divided(b2)?;
    if ra.times(&ra).times(&ra) != rb.times(&rb) {
        return Err(Error::Precondition("(A1/A2)^3 != (B1/B2)^2".into()));
    }
    a1.divided(b1)?.divided(&a2.divided(b2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{sqrt_mod_p, QuadField};

    fn q(n: i64) -> Rational {
        Rational::frac(n, 1)
    }

    #[test]
    fn e0_at_two() {
        let e = build_e0(&q(2)).unwrap();
        assert_eq!(e.j_invariant().unwrap(), q(2));
        let f5 = PrimeField::new(5).unwrap();
        let red = e.reduce(f5).unwrap();
        assert_eq!((red.a4.value(), red.a6.value()), (1, 4));
        // disc = 2^8 (-1726)^-9
        let expected = q(256) * q(-1726).pow(-9).unwrap();
        assert_eq!(e.discriminant(), expected);
    }

    #[test]
    fn e0_excluded() {
        assert!(matches!(build_e0(&q(0)), Err(Error::ExcludedJ(_))));
        assert!(matches!(build_e0(&q(1728)), Err(Error::ExcludedJ(_))));
    }

    #[test]
    fn e1_rational_with_square_z0() {
        // j0 = -1728/3 gives z0 = 4
        let j0 = Rational::frac(-576, 1);
        assert_eq!(z0_of(&j0).unwrap(), q(4));
        let e1 = build_e1(&q(2)).unwrap();
        assert_eq!(e1.j_invariant().unwrap(), j0);
        assert_eq!(e1.discriminant().inverse().unwrap(), j0);
    }

    #[test]
    fn e1_reduced_at_five() {
        let f = PrimeField::new(5).unwrap();
        let red = build_e1_reduced(&q(4), f.element(2)).unwrap();
        assert_eq!(red.completed_square.a2, f.element(4).inv().unwrap());
        // -1/48 = -1/3 = -2 = 3 mod 5; 2/864 = 2/4 = 3 mod 5
        assert_eq!((red.short.a4.value(), red.short.a6.value()), (3, 3));
        assert!(matches!(
            build_e1_reduced(&q(4), f.element(1)),
            Err(Error::BadRoot(_))
        ));
    }

    #[test]
    fn e1_reduced_over_quadratic_field() {
        let quad = QuadField::new(7).unwrap();
        let z = quad.base().element(3);
        assert_eq!(z.legendre(), -1);
        let s = quad.sqrt_of_base(z);
        for root in [s, -s] {
            let red = build_e1_reduced(&q(3), root).unwrap();
            assert!(!red.short.is_singular());
        }
    }

    #[test]
    fn gamma_examples() {
        let e = WeierstrassCurve::short(q(2), q(3));
        assert_eq!(twist_gamma(&e, &e).unwrap(), q(1));
        let t = WeierstrassCurve::short(q(8), q(24));
        assert_eq!(twist_gamma(&e, &t).unwrap(), q(2));
        let other = WeierstrassCurve::short(q(1), q(3));
        assert!(twist_gamma(&e, &other).is_err());
        let flat = WeierstrassCurve::short(q(1), q(0));
        assert!(twist_gamma(&flat, &flat).is_err());
    }

    #[test]
    fn gamma_e0_against_e1_short() {
        // p = 13, j0 = 5: z0 residue and its roots
        let f = PrimeField::new(13).unwrap();
        for j in 1..13i64 {
            let j0 = q(j);
            let Ok(z0) = z0_of(&j0) else { continue };
            let Ok(z) = f.reduce(&z0) else { continue };
            if z.is_zero() || (f.element(j) - f.element(1728)).is_zero() {
                continue;
            }
            let Some(s) = sqrt_mod_p(z) else { continue };
            let e0 = build_e0(&j0).unwrap().reduce(f).unwrap();
            let e1 = build_e1_reduced(&z0, s).unwrap().short;
            assert_eq!(twist_gamma(&e0, &e1).unwrap(), z * s);
        }
    }
}
