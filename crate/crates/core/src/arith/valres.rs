//! `p`-adic numbers known up to a finite precision.
//!
//! A [`ValuatedResidue`] is either `p^v * u` with `u` a unit known modulo
//! `p^k`, or a zero whose only information is that the value is divisible by
//! `p^N` for a known absolute precision `N`. Products and quotients keep the
//! unit precision; sums lift to the smaller valuation and renormalize, which
//! can lose precision when leading digits cancel.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;

use super::rational::{big_valuation, mod_inverse_u64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum State {
    Unit {
        valuation: i64,
        unit: u64,
        precision: u32,
    },
    Zero {
        absolute: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValuatedResidue {
    p: u64,
    state: State,
}

fn modulus(p: u64, k: u32) -> u64 {
    p.checked_pow(k)
        .filter(|m| *m < (1u64 << 63))
        .expect("p^k must fit in 63 bits")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(v_p(n), n / p^v_p(n))` for a nonzero machine integer.
pub fn int_valuation(mut n: i128, p: u64) -> (i64, i128) {
    assert!(n != 0, "valuation of zero");
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

impl ValuatedResidue {
    pub fn one(p: u64, k: u32) -> Self {
        modulus(p, k);
        ValuatedResidue {
            p,
            state: State::Unit {
                valuation: 0,
                unit: 1 % modulus(p, k),
                precision: k,
            },
        }
    }

    /// Exact zero: absorbing under multiplication at any precision.
    pub fn zero(p: u64, absolute_precision: i64) -> Self {
        ValuatedResidue {
            p,
            state: State::Zero {
                absolute: absolute_precision,
            },
        }
    }

    /// `p^valuation * unit` with the unit reduced modulo `p^k`.
    pub fn from_parts(p: u64, valuation: i64, unit: i128, k: u32) -> Result<Self> {
        let m = modulus(p, k);
        let u = unit.rem_euclid(m as i128) as u64;
        if u.is_multiple_of(p) {
            return Err(Error::Precondition(format!("{unit} is not a unit mod {p}")));
        }
        Ok(ValuatedResidue {
            p,
            state: State::Unit {
                valuation,
                unit: u,
                precision: k,
            },
        })
    }

    pub fn from_int(n: i128, p: u64, k: u32) -> Self {
        if n == 0 {
            return Self::zero(p, i64::MAX / 4);
        }
        let (v, u) = int_valuation(n, p);
        Self::from_parts(p, v, u, k).expect("stripped value is a unit")
    }

    /// `num / den` for machine integers.
    pub fn from_ratio(num: i128, den: i128, p: u64, k: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Self::from_int(num, p, k).checked_div(&Self::from_int(den, p, k))
    }

    pub fn from_rational(x: &Rational, p: u64, k: u32) -> Result<Self> {
        if x.is_zero() {
            return Ok(Self::zero(p, i64::MAX / 4));
        }
        let m = modulus(p, k);
        let strip = |n: &BigInt| -> (i64, u64) {
            let v = big_valuation(n, p);
            let pv = num_traits::pow(BigInt::from(p), v as usize);
            let q = n / pv;
            let r = num_integer::Integer::mod_floor(&q, &BigInt::from(m));
            (v, u64::try_from(r).expect("residue fits"))
        };
        let (vn, un) = strip(x.numerator());
        let (vd, ud) = strip(x.denominator());
        let inv = mod_inverse_u64(ud, m).expect("stripped denominator is a unit");
        Self::from_parts(p, vn - vd, mul_mod(un, inv, m) as i128, k)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.state, State::Zero { .. })
    }

    /// `None` for a zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.state {
            State::Unit { valuation, .. } => Some(valuation),
            State::Zero { .. } => None,
        }
    }

    pub fn unit(&self) -> Option<u64> {
        match self.state {
            State::Unit { unit, .. } => Some(unit),
            State::Zero { .. } => None,
        }
    }

    /// Unit precision `k` (digits known after the leading one).
    pub fn precision(&self) -> Option<u32> {
        match self.state {
            State::Unit { precision, .. } => Some(precision),
            State::Zero { .. } => None,
        }
    }

    /// The value is known modulo `p^absolute_precision`.
    pub fn absolute_precision(&self) -> i64 {
        match self.state {
            State::Unit {
                valuation,
                precision,
                ..
            } => valuation + precision as i64,
            State::Zero { absolute } => absolute,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed primes in valuated residues");
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other);
        match (self.state, other.state) {
            (_, State::Zero { .. }) => Err(Error::DivisionByZero),
            (State::Zero { absolute }, State::Unit { valuation, .. }) => {
                Ok(Self::zero(self.p, absolute.saturating_sub(valuation)))
            }
            (
                State::Unit {
                    valuation: v1,
                    unit: u1,
                    precision: k1,
                },
                State::Unit {
                    valuation: v2,
                    unit: u2,
                    precision: k2,
                },
            ) => {
                let k = k1.min(k2);
                let m = modulus(self.p, k);
                let inv = mod_inverse_u64(u2 % m, m).expect("unit");
                Ok(ValuatedResidue {
                    p: self.p,
                    state: State::Unit {
                        valuation: v1 - v2,
                        unit: mul_mod(u1 % m, inv, m),
                        precision: k,
                    },
                })
            }
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = match self.state {
            State::Unit { precision, .. } => Self::one(self.p, precision),
            State::Zero { .. } => Self::one(self.p, 1),
        };
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Sum, lifted to the smaller valuation and renormalized.
    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let n_abs = self.absolute_precision().min(other.absolute_precision());
        let v = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Self::zero(self.p, n_abs),
        };
        if v >= n_abs {
            return Self::zero(self.p, n_abs);
        }
        let k = (n_abs - v) as u32;
        let m = modulus(self.p, k);
        let lifted = |x: &Self| -> u64 {
            match x.state {
                State::Unit {
                    valuation, unit, ..
                } => {
                    let shift = (valuation - v) as u32;
                    if shift >= k {
                        0
                    } else {
                        mul_mod(unit % m, self.p.pow(shift), m)
                    }
                }
                State::Zero { .. } => 0,
            }
        };
        let s = (lifted(self) + lifted(other)) % m;
        if s == 0 {
            return Self::zero(self.p, n_abs);
        }
        let (e, u) = int_valuation(s as i128, self.p);
        let k_new = k - e as u32;
        ValuatedResidue {
            p: self.p,
            state: State::Unit {
                valuation: v + e,
                unit: (u as u64) % modulus(self.p, k_new),
                precision: k_new,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&-*other)
    }

    /// Residue modulo `p^k` of a `p`-integral value.
    pub fn residue_mod_pk(&self, k: u32) -> Result<u64> {
        let m = modulus(self.p, k);
        match self.state {
            State::Zero { absolute } => {
                if absolute >= k as i64 {
                    Ok(0)
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
            State::Unit {
                valuation,
                unit,
                precision,
            } => {
                if valuation < 0 {
                    return Err(Error::NotIntegral {
                        value: format!("{self}"),
                        p: self.p,
                    });
                }
                if valuation >= k as i64 {
                    return Ok(0);
                }
                if (valuation + precision as i64) < (k as i64) {
                    return Err(Error::PrecisionExhausted);
                }
                Ok(mul_mod(unit % m, self.p.pow(valuation as u32), m))
            }
        }
    }

    pub fn residue_mod_p(&self) -> Result<u64> {
        self.residue_mod_pk(1)
    }

    /// Equality of valuations and of units at the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.check(other);
        match (self.state, other.state) {
            (
                State::Unit {
                    valuation: v1,
                    unit: u1,
                    precision: k1,
                },
                State::Unit {
                    valuation: v2,
                    unit: u2,
                    precision: k2,
                },
            ) => {
                let m = modulus(self.p, k1.min(k2));
                v1 == v2 && u1 % m == u2 % m
            }
            (State::Zero { .. }, State::Zero { .. }) => true,
            _ => false,
        }
    }
}

impl Mul for ValuatedResidue {
    type Output = ValuatedResidue;

    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        match (self.state, rhs.state) {
            (State::Zero { absolute: a }, State::Zero { absolute: b }) => {
                Self::zero(self.p, a.saturating_add(b))
            }
            (State::Zero { absolute }, State::Unit { valuation, .. })
            | (State::Unit { valuation, .. }, State::Zero { absolute }) => {
                Self::zero(self.p, absolute.saturating_add(valuation))
            }
            (
                State::Unit {
                    valuation: v1,
                    unit: u1,
                    precision: k1,
                },
                State::Unit {
                    valuation: v2,
                    unit: u2,
                    precision: k2,
                },
            ) => {
                let k = k1.min(k2);
                let m = modulus(self.p, k);
                ValuatedResidue {
                    p: self.p,
                    state: State::Unit {
                        valuation: v1 + v2,
                        unit: mul_mod(u1 % m, u2 % m, m),
                        precision: k,
                    },
                }
            }
        }
    }
}

impl Neg for ValuatedResidue {
    type Output = ValuatedResidue;

    fn neg(self) -> Self {
        match self.state {
            State::Zero { .. } => self,
            State::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = modulus(self.p, precision);
                ValuatedResidue {
                    p: self.p,
                    state: State::Unit {
                        valuation,
                        unit: (m - unit % m) % m,
                        precision,
                    },
                }
            }
        }
    }
}

impl fmt::Display for ValuatedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.state {
            State::Unit {
                valuation,
                unit,
                precision,
            } => write!(
                f,
                "{}^{} * {} (mod {}^{})",
                self.p, valuation, unit, self.p, precision
            ),
            State::Zero { absolute } => write!(f, "0 (mod {}^{})", self.p, absolute),
        }
    }
}

impl fmt::Debug for ValuatedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(v_p(n!), n!/p^v mod p^k)`.
pub fn factorial_valres(n: u64, p: u64, k: u32) -> ValuatedResidue {
    let m = modulus(p, k);
    let mut valuation = 0i64;
    let mut q = n / p;
    while q > 0 {
        valuation += q as i64;
        q /= p;
    }
    let mut unit = 1u64 % m;
    for i in 2..=n {
        let (_, u) = int_valuation(i as i128, p);
        unit = mul_mod(unit, u as u64 % m, m);
    }
    ValuatedResidue {
        p,
        state: State::Unit {
            valuation,
            unit,
            precision: k,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_examples() {
        let f0 = factorial_valres(0, 7, 1);
        assert_eq!((f0.valuation(), f0.unit()), (Some(0), Some(1)));
        let f7 = factorial_valres(7, 7, 1);
        assert_eq!((f7.valuation(), f7.unit()), (Some(1), Some(6)));
        // 10! = 3628800 = 25 * 145152, and 145152 = 2 mod 5
        let f10 = factorial_valres(10, 5, 1);
        assert_eq!((f10.valuation(), f10.unit()), (Some(2), Some(2)));
        let f10 = factorial_valres(10, 5, 2);
        assert_eq!(f10.unit(), Some(145152 % 25));
    }

    #[test]
    fn products_add_valuations() {
        let a = ValuatedResidue::from_int(50, 5, 2); // 5^2 * 2
        let b = ValuatedResidue::from_ratio(3, 10, 5, 2).unwrap(); // 5^-1 * 3/2
        let c = a * b;
        assert_eq!(c.valuation(), Some(1));
        assert_eq!(c.residue_mod_pk(2).unwrap(), 15);
        assert_eq!((a.checked_div(&b).unwrap()).valuation(), Some(3));
    }

    #[test]
    fn zero_is_absorbing() {
        let z = ValuatedResidue::zero(7, 2);
        let x = ValuatedResidue::from_int(14, 7, 2);
        assert!((z * x).is_zero());
        assert_eq!((z * x).absolute_precision(), 3);
        assert_eq!(x.checked_div(&z), Err(Error::DivisionByZero));
        assert_eq!(z.residue_mod_p(), Ok(0));
    }

    #[test]
    fn addition_with_cancellation() {
        let p = 7;
        // 1 + 6 = 7: unit cancels, leaving 7^1 * 1 with one digit of precision lost
        let s = ValuatedResidue::from_int(1, p, 2).add(&ValuatedResidue::from_int(6, p, 2));
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.precision(), Some(1));
        assert_eq!(s.unit(), Some(1));
        // 1 + 48 = 49 = 0 mod 7^2
        let z = ValuatedResidue::from_int(1, p, 2).add(&ValuatedResidue::from_int(48, p, 2));
        assert!(z.is_zero());
        assert_eq!(z.residue_mod_pk(2), Ok(0));
        // mismatched valuations: 7 + 1/7 = 50/7
        let s = ValuatedResidue::from_int(7, p, 2)
            .add(&ValuatedResidue::from_ratio(1, 7, p, 2).unwrap());
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.unit(), Some(1)); // 50 = 1 mod 7^2
        assert_eq!(s.precision(), Some(2));
    }

    #[test]
    fn residues() {
        let x = ValuatedResidue::from_ratio(-1, 6, 7, 2).unwrap();
        assert_eq!(x.residue_mod_p(), Ok(1));
        assert_eq!(x.residue_mod_pk(2), Ok(8));
        let y = ValuatedResidue::from_ratio(1, 7, 7, 1).unwrap();
        assert!(matches!(y.residue_mod_p(), Err(Error::NotIntegral { .. })));
        let r = ValuatedResidue::from_rational(&Rational::frac(-350, 3), 5, 2).unwrap();
        assert_eq!(r.valuation(), Some(2));
        assert_eq!(r, ValuatedResidue::from_ratio(-350, 3, 5, 2).unwrap());
    }
}
