use crate::arith::Rational;
use crate::error::{Error, Result};

/// A `p`-adic unit `a` with its least residue `[a]_0` modulo `p^l` and the
/// shifted parameter `a' = p^-l (a + [-a]_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpUnitParam {
    pub a: Rational,
    pub p: u64,
    pub l: u32,
    /// `[a]_0`
    pub bracket_zero: u64,
    /// `[-a]_0`
    pub neg_bracket_zero: u64,
    pub a_prime: Rational,
}

pub fn compute_bracket_and_prime(a: &Rational, p: u64, l: u32) -> Result<ZpUnitParam> {
    if a.is_zero() || a.valuation(p)? != 0 {
        return Err(Error::Precondition(format!("{a} is not a {p}-adic unit")));
    }
    let pl = p.checked_pow(l).ok_or(Error::Overflow)?;
    let bracket_zero = a.residue_mod(pl)?;
    let neg_bracket_zero = (-a).residue_mod(pl)?;
    let shifted = a + &Rational::from_int(neg_bracket_zero as i64);
    let a_prime = shifted.checked_div(&Rational::from_int(pl as i64))?;
    if !a_prime.is_zero() && a_prime.valuation(p)? < 0 {
        return Err(Error::Precondition(format!(
            "a' = {a_prime} has negative valuation"
        )));
    }
    Ok(ZpUnitParam {
        a: a.clone(),
        p,
        l,
        bracket_zero,
        neg_bracket_zero,
        a_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = compute_bracket_and_prime(&Rational::frac(1, 6), 7, 1).unwrap();
        assert_eq!((x.bracket_zero, x.neg_bracket_zero), (6, 1));
        assert_eq!(x.a_prime, Rational::frac(1, 6));

        for (p, l) in [(5u64, 1u32), (7, 2), (13, 1)] {
            let one = compute_bracket_and_prime(&Rational::one(), p, l).unwrap();
            assert_eq!(one.bracket_zero, 1);
            assert_eq!(one.neg_bracket_zero, p.pow(l) - 1);
            assert_eq!(one.a_prime, Rational::one());
        }

        // 6^-1 = 6 mod 7, so 5/6 = 30 = 2 and -5/6 = 5; a' = (5/6 + 5)/7 = 5/6
        let x = compute_bracket_and_prime(&Rational::frac(5, 6), 7, 1).unwrap();
        assert_eq!((x.bracket_zero, x.neg_bracket_zero), (2, 5));
        assert_eq!(x.a_prime, Rational::frac(5, 6));

        assert!(compute_bracket_and_prime(&Rational::from_int(7), 7, 1).is_err());
        assert!(compute_bracket_and_prime(&Rational::frac(1, 7), 7, 1).is_err());
    }

    #[test]
    fn sixths_swap_or_stay() {
        // p = 5 is excluded: 5/6 is not a 5-adic unit there
        for p in [7u64, 11, 13, 17, 19, 23] {
            for l in [1, 2] {
                let a = compute_bracket_and_prime(&Rational::frac(1, 6), p, l).unwrap();
                let b = compute_bracket_and_prime(&Rational::frac(5, 6), p, l).unwrap();
                let mut primes = [a.a_prime.clone(), b.a_prime.clone()];
                primes.sort();
                assert_eq!(primes, [Rational::frac(1, 6), Rational::frac(5, 6)]);
                assert_eq!(a.neg_bracket_zero + b.neg_bracket_zero, p.pow(l) - 1);
                assert_eq!(
                    a.neg_bracket_zero.min(b.neg_bracket_zero),
                    (p.pow(l) - 1) / 6
                );
            }
        }
    }
}
