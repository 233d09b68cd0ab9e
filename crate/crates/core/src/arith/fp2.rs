use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::{sqrt_mod_p, Fp, PrimeField};
use crate::error::Result;

/// `F_p[w] / (w^2 - n)` with `n` the smallest non-residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    base: PrimeField,
    nonresidue: Fp,
}

impl QuadField {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(Self::over(base))
    }

    pub fn over(base: PrimeField) -> Self {
        QuadField {
            base,
            nonresidue: base.nonresidue(),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> Fp {
        self.nonresidue
    }

    pub fn characteristic(&self) -> u64 {
        self.base.modulus()
    }

    pub fn order(&self) -> u64 {
        self.characteristic() * self.characteristic()
    }

    pub fn element(&self, a0: Fp, a1: Fp) -> Fp2 {
        Fp2 {
            a0,
            a1,
            nonresidue: self.nonresidue.value(),
        }
    }

    pub fn embed(&self, x: Fp) -> Fp2 {
        self.element(x, self.base.zero())
    }

    pub fn zero(&self) -> Fp2 {
        self.embed(self.base.zero())
    }

    pub fn one(&self) -> Fp2 {
        self.embed(self.base.one())
    }

    /// The generator `w` with `w^2 = n`.
    pub fn w(&self) -> Fp2 {
        self.element(self.base.zero(), self.base.one())
    }

    pub fn elements(&self) -> impl Iterator<Item = Fp2> {
        let this = *self;
        let base = self.base;
        base.elements()
            .flat_map(move |a1| base.elements().map(move |a0| (a0, a1)))
            .map(move |(a0, a1)| this.element(a0, a1))
    }

    /// A square root of a base-field element. Non-residues of `F_p` have
    /// roots `c*w` with `c^2 = z/n`; the returned root is the one with the
    /// canonical `F_p` coefficient. The other root is its negation.
    pub fn sqrt_of_base(&self, z: Fp) -> Fp2 {
        match sqrt_mod_p(z) {
            Some(r) => self.embed(r),
            None => {
                let ratio = z * self.nonresidue.inv().expect("nonzero");
                let c = sqrt_mod_p(ratio).expect("z/n is a residue when z and n are not");
                self.element(self.base.zero(), c)
            }
        }
    }
}

/// `a0 + a1*w` in `F_{p^2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    a0: Fp,
    a1: Fp,
    nonresidue: u64,
}

impl Fp2 {
    pub fn a0(&self) -> Fp {
        self.a0
    }

    pub fn a1(&self) -> Fp {
        self.a1
    }

    pub fn field(&self) -> QuadField {
        QuadField {
            base: self.a0.field(),
            nonresidue: self.a0.field().from_u64(self.nonresidue),
        }
    }

    fn n(&self) -> Fp {
        self.a0.field().from_u64(self.nonresidue)
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn in_base_field(&self) -> bool {
        self.a1.is_zero()
    }

    pub fn conjugate(&self) -> Fp2 {
        Fp2 {
            a1: -self.a1,
            ..*self
        }
    }

    /// `x * conj(x) = a0^2 - n a1^2`, the norm to `F_p`.
    pub fn norm(&self) -> Fp {
        self.a0 * self.a0 - self.n() * self.a1 * self.a1
    }

    pub fn pow(&self, mut e: u128) -> Fp2 {
        let mut base = *self;
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Fp2> {
        let norm_inv = self.norm().inv()?;
        let c = self.conjugate();
        Some(Fp2 {
            a0: c.a0 * norm_inv,
            a1: c.a1 * norm_inv,
            ..*self
        })
    }

    /// Quadratic character of `F_{p^2}`, computed through the norm.
    pub fn legendre(&self) -> i8 {
        self.norm().legendre()
    }

    fn check(&self, other: &Fp2) {
        assert_eq!(self.nonresidue, other.nonresidue, "mixed quadratic fields");
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*w", self.a0.value(), self.a1.value())
    }
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}*w (mod {}, w^2={})",
            self.a0.value(),
            self.a1.value(),
            self.a0.modulus(),
            self.nonresidue
        )
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        self.check(&rhs);
        Fp2 {
            a0: self.a0 + rhs.a0,
            a1: self.a1 + rhs.a1,
            ..self
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self.check(&rhs);
        Fp2 {
            a0: self.a0 - rhs.a0,
            a1: self.a1 - rhs.a1,
            ..self
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        self.check(&rhs);
        Fp2 {
            a0: self.a0 * rhs.a0 + self.n() * self.a1 * rhs.a1,
            a1: self.a0 * rhs.a1 + self.a1 * rhs.a0,
            ..self
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            a0: -self.a0,
            a1: -self.a1,
            ..self
        }
    }
}
