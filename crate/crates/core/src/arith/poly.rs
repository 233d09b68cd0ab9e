use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::FieldElement;
use super::fp::{Fp, PrimeField};

/// Dense polynomial over `F_p`; `coefficients[i]` multiplies `t^i`.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePolynomial {
    field: PrimeField,
    coefficients: Vec<Fp>,
}

impl DensePolynomial {
    pub fn new(field: PrimeField, coefficients: Vec<Fp>) -> Self {
        assert!(
            coefficients.iter().all(|c| c.modulus() == field.modulus()),
            "coefficients from a different field"
        );
        let mut poly = DensePolynomial {
            field,
            coefficients,
        };
        poly.normalize();
        poly
    }

    pub fn from_ints(field: PrimeField, coefficients: &[i64]) -> Self {
        Self::new(
            field,
            coefficients.iter().map(|&c| field.element(c)).collect(),
        )
    }

    pub fn zero(field: PrimeField) -> Self {
        DensePolynomial {
            field,
            coefficients: Vec::new(),
        }
    }

    pub fn constant(c: Fp) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// `c * t^degree`.
    pub fn monomial(c: Fp, degree: usize) -> Self {
        let field = c.field();
        let mut coefficients = vec![field.zero(); degree + 1];
        coefficients[degree] = c;
        Self::new(field, coefficients)
    }

    fn normalize(&mut self) {
        while self.coefficients.last().is_some_and(|c| c.is_zero()) {
            self.coefficients.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[Fp] {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize) -> Fp {
        self.coefficients
            .get(i)
            .copied()
            .unwrap_or(self.field.zero())
    }

    pub fn scale(&self, c: Fp) -> Self {
        Self::new(
            self.field,
            self.coefficients.iter().map(|&a| a * c).collect(),
        )
    }

    /// Keeps the terms of degree at most `m`.
    pub fn truncate(&self, m: usize) -> Self {
        Self::new(
            self.field,
            self.coefficients.iter().take(m + 1).copied().collect(),
        )
    }

    /// `f(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let Some(d) = self.degree() else {
            return self.clone();
        };
        let mut out = vec![self.field.zero(); d * k + 1];
        for (i, &c) in self.coefficients.iter().enumerate() {
            out[i * k] = c;
        }
        Self::new(self.field, out)
    }

    /// `f(g(t))` by Horner's rule.
    pub fn compose(&self, inner: &DensePolynomial) -> Self {
        let mut acc = Self::zero(self.field);
        for &c in self.coefficients.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c);
        }
        acc
    }

    pub fn eval<F: FieldElement>(&self, x: F) -> F {
        self.coefficients
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, &c| acc * x + x.embed(c))
    }

    /// Smallest index at which the coefficients differ.
    pub fn first_difference(&self, other: &DensePolynomial) -> Option<usize> {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n).find(|&i| self.coeff(i) != other.coeff(i))
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over F_{}", self, self.field.modulus())
    }
}

impl Add for &DensePolynomial {
    type Output = DensePolynomial;
    fn add(self, rhs: &DensePolynomial) -> DensePolynomial {
        assert_eq!(self.field, rhs.field);
        let n = self.coefficients.len().max(rhs.coefficients.len());
        DensePolynomial::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
        )
    }
}

impl Sub for &DensePolynomial {
    type Output = DensePolynomial;
    fn sub(self, rhs: &DensePolynomial) -> DensePolynomial {
        assert_eq!(self.field, rhs.field);
        let n = self.coefficients.len().max(rhs.coefficients.len());
        DensePolynomial::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
        )
    }
}

impl Neg for &DensePolynomial {
    type Output = DensePolynomial;
    fn neg(self) -> DensePolynomial {
        DensePolynomial::new(self.field, self.coefficients.iter().map(|&c| -c).collect())
    }
}

impl Mul for &DensePolynomial {
    type Output = DensePolynomial;
    fn mul(self, rhs: &DensePolynomial) -> DensePolynomial {
        assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero(self.field);
        }
        // Accumulate raw products in u128 and reduce once per output slot.
        let p = self.field.modulus() as u128;
        let n = self.coefficients.len() + rhs.coefficients.len() - 1;
        let mut acc = vec![0u128; n];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = a.value() as u128;
            for (j, b) in rhs.coefficients.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += a * b.value() as u128;
                if *slot >= 1u128 << 125 {
                    *slot %= p;
                }
            }
        }
        DensePolynomial::new(
            self.field,
            acc.into_iter()
                .map(|v| self.field.from_u64((v % p) as u64))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn normalization_and_degree() {
        let p = DensePolynomial::from_ints(f7(), &[1, 0, 7, 14]);
        assert_eq!(p.degree(), Some(0));
        assert!(DensePolynomial::from_ints(f7(), &[0, 0]).is_zero());
        assert_eq!(DensePolynomial::zero(f7()).degree(), None);
    }

    #[test]
    fn square_of_linear() {
        let p = DensePolynomial::from_ints(f7(), &[1, 5]);
        assert_eq!(&p * &p, DensePolynomial::from_ints(f7(), &[1, 3, 4]));
    }

    #[test]
    fn composition_and_substitution() {
        let f = f7();
        let p = DensePolynomial::from_ints(f, &[1, 5]);
        let one_minus_t = DensePolynomial::from_ints(f, &[1, -1]);
        // 1 + 5(1 - t) = 6 - 5t
        assert_eq!(
            p.compose(&one_minus_t),
            DensePolynomial::from_ints(f, &[6, 2])
        );
        let q = DensePolynomial::from_ints(f, &[1, 2, 3]);
        assert_eq!(
            q.substitute_power(3),
            DensePolynomial::from_ints(f, &[1, 0, 0, 2, 0, 0, 3])
        );
        assert_eq!(q.truncate(1), DensePolynomial::from_ints(f, &[1, 2]));
        assert_eq!(q.eval(f.element(2)), f.element(1 + 4 + 12));
    }

    #[test]
    fn first_difference() {
        let f = f7();
        let a = DensePolynomial::from_ints(f, &[1, 2, 3]);
        let b = DensePolynomial::from_ints(f, &[1, 2, 4]);
        assert_eq!(a.first_difference(&b), Some(2));
        assert_eq!(a.first_difference(&a), None);
        assert_eq!(a.first_difference(&a.truncate(1)), Some(2));
    }
}
