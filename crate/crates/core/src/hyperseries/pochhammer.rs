use crate::arith::{Rational, ValuatedResidue};
use crate::error::{Error, Result};

/// `(a)_m = a (a+1) ... (a+m-1)` as a valuated residue.
pub fn pochhammer_valres(a: &Rational, m: u64, p: u64, k: u32) -> Result<ValuatedResidue> {
    if !a.is_zero() && a.valuation(p)? < 0 {
        return Err(Error::NotIntegral {
            value: a.to_string(),
            p,
        });
    }
    let (num, den) = a.to_i128_parts().ok_or(Error::Overflow)?;
    let mut acc = ValuatedResidue::one(p, k);
    for j in 0..m as i128 {
        let f = j
            .checked_mul(den)
            .and_then(|x| x.checked_add(num))
            .ok_or(Error::Overflow)?;
        acc = acc * ValuatedResidue::from_int(f, p, k);
    }
    let den_pow = ValuatedResidue::from_int(den, p, k).pow(m);
    acc.checked_div(&den_pow)
}

/// `n!` for every `n <= n_max`, built incrementally.
#[derive(Clone, Debug)]
pub struct FactorialTable {
    values: Vec<ValuatedResidue>,
}

impl FactorialTable {
    pub fn new(n_max: usize, p: u64, k: u32) -> Self {
        let mut values = Vec::with_capacity(n_max + 1);
        let mut acc = ValuatedResidue::one(p, k);
        values.push(acc);
        for n in 1..=n_max {
            acc = acc * ValuatedResidue::from_int(n as i128, p, k);
            values.push(acc);
        }
        FactorialTable { values }
    }

    pub fn get(&self, n: usize) -> ValuatedResidue {
        self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn closed_form(
    r: usize,
    base: i128,
    den: &[usize],
    table: &FactorialTable,
    p: u64,
    k: u32,
) -> ValuatedResidue {
    let mut denom = ValuatedResidue::from_int(base, p, k).pow(r as u64);
    for &d in den {
        denom = denom * table.get(d);
    }
    table
        .get(6 * r)
        .checked_div(&denom)
        .expect("factorials and p-units are nonzero")
}

/// `432^-r (6r)! / (r! (2r)! (3r)!)`.
pub fn closed_form_2f1_term(r: usize, p: u64, k: u32) -> ValuatedResidue {
    let table = FactorialTable::new(6 * r, p, k);
    closed_form(r, 432, &[r, 2 * r, 3 * r], &table, p, k)
}

/// `1728^-r (6r)! / ((3r)! (r!)^3)`.
pub fn closed_form_3f2_term(r: usize, p: u64, k: u32) -> ValuatedResidue {
    let table = FactorialTable::new(6 * r, p, k);
    closed_form(r, 1728, &[3 * r, r, r, r], &table, p, k)
}

/// Checks both term identities at index `r`: the Pochhammer quotients of the
/// two fixed data against their factorial closed forms, exactly at precision
/// `k`.
pub fn closed_form_term_identity_check(r: usize, p: u64, k: u32) -> Result<bool> {
    if p.is_multiple_of(2) || p.is_multiple_of(3) {
        return Err(Error::InvalidModulus(p));
    }
    let poch = |a: Rational| pochhammer_valres(&a, r as u64, p, k);
    let fact = FactorialTable::new(6 * r, p, k);
    let r_fact = fact.get(r);
    let two = poch(Rational::frac(1, 6))? * poch(Rational::frac(5, 6))?;
    let two = two.checked_div(&(r_fact * r_fact))?;
    let three =
        poch(Rational::frac(1, 2))? * poch(Rational::frac(1, 6))? * poch(Rational::frac(5, 6))?;
    let three = three.checked_div(&(r_fact * r_fact * r_fact))?;
    let two_closed = closed_form(r, 432, &[r, 2 * r, 3 * r], &fact, p, k);
    let three_closed = closed_form(r, 1728, &[3 * r, r, r, r], &fact, p, k);
    Ok(two.agrees_with(&two_closed) && three.agrees_with(&three_closed))
}
