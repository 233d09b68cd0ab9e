use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::primes::is_prime;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A validated prime modulus `p >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Moduli are capped below 2^31 so products of two residues fit in `u64`.
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(5..Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> Fp {
        Fp::raw(0, self.p)
    }

    pub fn one(&self) -> Fp {
        Fp::raw(1, self.p)
    }

    pub fn element(&self, n: i64) -> Fp {
        Fp::raw(n.rem_euclid(self.p as i64) as u64, self.p)
    }

    pub fn from_u64(&self, n: u64) -> Fp {
        Fp::raw(n % self.p, self.p)
    }

    /// Reduction of a `p`-integral rational.
    pub fn reduce(&self, x: &Rational) -> Result<Fp> {
        x.residue_mod(self.p)
            .map(|v| Fp::raw(v, self.p))
            .map_err(|_| Error::NotIntegral {
                value: x.to_string(),
                p: self.p,
            })
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp> {
        let p = self.p;
        (0..p).map(move |v| Fp::raw(v, p))
    }

    pub fn nonresidue(&self) -> Fp {
        (2..self.p)
            .map(|n| Fp::raw(n, self.p))
            .find(|x| x.legendre() == -1)
            .expect("every odd prime has a non-residue")
    }

    /// `table[x] = (x / p)` for every residue `x`.
    pub fn character_table(&self) -> Vec<i8> {
        let p = self.p as usize;
        let mut table = vec![-1i8; p];
        table[0] = 0;
        for y in 1..=(p - 1) / 2 {
            table[(y * y) % p] = 1;
        }
        table
    }
}

/// Element of a prime field, stored as its representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub(crate) fn raw(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Value as a signed integer in `(-p/2, p/2]`.
    pub fn centered(&self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }

    pub fn pow(&self, mut e: u128) -> Fp {
        let mut base = *self;
        let mut acc = Fp::raw(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus as u128 - 2))
        }
    }

    /// Euler's criterion reduced to `{-1, 0, 1}`.
    pub fn legendre(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow(((self.modulus - 1) / 2) as u128);
        if e.value == 1 {
            1
        } else {
            -1
        }
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed prime-field moduli");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let s = self.value + rhs.value;
        Fp::raw(
            if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            self.modulus,
        )
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        Fp::raw(v, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp::raw(
            ((self.value as u128 * rhs.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp::raw(self.modulus - self.value, self.modulus)
        }
    }
}

/// Legendre-type symbol of a `p`-integral rational: 1 for a nonzero square,
/// -1 for a non-square, 0 when `a` reduces to zero.
pub fn legendre_symbol(a: &Rational, p: u64) -> Result<i8> {
    let field = PrimeField::new(p)?;
    Ok(field.reduce(a)?.legendre())
}

/// Square root by Tonelli-Shanks. Of the two roots the one whose
/// representative lies in `[0, (p-1)/2]` is returned.
pub fn sqrt_mod_p(a: Fp) -> Option<Fp> {
    if a.is_zero() {
        return Some(a);
    }
    if a.legendre() != 1 {
        return None;
    }
    let p = a.modulus;
    let field = a.field();
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = field.nonresidue();
    let mut m = s;
    let mut c = z.pow(q as u128);
    let mut t = a.pow(q as u128);
    let mut r = a.pow(q.div_ceil(2) as u128);
    while t.value != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2.value != 1 {
            t2 = t2 * t2;
            i += 1;
        }
        let b = c.pow(1u128 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    debug_assert_eq!(r * r, a);
    Some(if r.value > (p - 1) / 2 { -r } else { r })
}

/// Smallest positive quadratic non-residue mod `p`.
pub fn find_nonresidue(p: u64) -> Result<Fp> {
    Ok(PrimeField::new(p)?.nonresidue())
}
