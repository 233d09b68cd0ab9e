use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::Fp;
use super::fp2::Fp2;

/// Common surface of `F_p` and `F_{p^2}` elements. Constants are produced
/// from an existing element so that the modulus travels with the value.
pub trait FieldElement:
    Copy
    + Eq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// The image of a base-field element in the field of `self`.
    fn embed(&self, x: Fp) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn pow(&self, e: u128) -> Self;
    fn characteristic(&self) -> u64;
    /// Number of elements of the field.
    fn order(&self) -> u64;
    /// Norm down to the prime field.
    fn norm_to_base(&self) -> Fp;
    /// All elements of the field of `self`.
    fn field_elements(&self) -> Box<dyn Iterator<Item = Self> + '_>;

    fn zero_like(&self) -> Self {
        self.embed(Fp::raw(0, self.characteristic()))
    }

    fn one_like(&self) -> Self {
        self.embed(Fp::raw(1, self.characteristic()))
    }

    fn of_int(&self, n: i64) -> Self {
        let p = self.characteristic();
        self.embed(Fp::raw(n.rem_euclid(p as i64) as u64, p))
    }

    /// Quadratic character of the field of `self`.
    fn quadratic_character(&self) -> i8 {
        self.norm_to_base().legendre()
    }
}

impl FieldElement for Fp {
    fn embed(&self, x: Fp) -> Self {
        assert_eq!(x.modulus(), self.modulus());
        x
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        Fp::inv(self)
    }
    fn pow(&self, e: u128) -> Self {
        Fp::pow(self, e)
    }
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn order(&self) -> u64 {
        self.modulus()
    }
    fn norm_to_base(&self) -> Fp {
        *self
    }
    fn field_elements(&self) -> Box<dyn Iterator<Item = Self> + '_> {
        let p = self.modulus();
        Box::new((0..p).map(move |v| Fp::raw(v, p)))
    }
}

impl FieldElement for Fp2 {
    fn embed(&self, x: Fp) -> Self {
        self.field().embed(x)
    }
    fn is_zero(&self) -> bool {
        Fp2::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        Fp2::inv(self)
    }
    fn pow(&self, e: u128) -> Self {
        Fp2::pow(self, e)
    }
    fn characteristic(&self) -> u64 {
        self.a0().modulus()
    }
    fn order(&self) -> u64 {
        self.characteristic() * self.characteristic()
    }
    fn norm_to_base(&self) -> Fp {
        self.norm()
    }
    fn field_elements(&self) -> Box<dyn Iterator<Item = Self> + '_> {
        let field = self.field();
        let p = field.characteristic();
        Box::new((0..p * p).map(move |i| {
            let b = field.base();
            field.element(b.from_u64(i % p), b.from_u64(i / p))
        }))
    }
}
