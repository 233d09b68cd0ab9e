//! Library kernels against independent brute-force computations.

use hgcong_core::arith::{factorial_valres, primes_in_range, Fp, PrimeField, Rational};
use hgcong_core::curves::{build_e0, count_points, WeierstrassCurve, DEFAULT_POINT_BOUND};
use hgcong_core::hyperseries::pochhammer_valres;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Points of the full Weierstrass equation, by trying every `(x, y)`.
fn pair_scan(p: u64, a: [u64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = a;
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

fn curve(f: PrimeField, a: [u64; 5]) -> WeierstrassCurve<Fp> {
    let e = |v: u64| f.from_u64(v);
    WeierstrassCurve::general(e(a[0]), e(a[1]), e(a[2]), e(a[3]), e(a[4]))
}

#[test]
fn short_curves_match_pair_scan() {
    for p in primes_in_range(5, 31) {
        let f = PrimeField::new(p).unwrap();
        for a4 in 0..p {
            for a6 in 0..p {
                let coeffs = [0, 0, 0, a4, a6];
                let e = curve(f, coeffs);
                if e.is_singular() {
                    continue;
                }
                let t = count_points(&e, DEFAULT_POINT_BOUND).unwrap();
                assert_eq!(t.count, pair_scan(p, coeffs), "p={p} A={a4} B={a6}");
            }
        }
    }
}

#[test]
fn general_curves_match_pair_scan() {
    // a deterministic spread of general models
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    for p in primes_in_range(5, 31) {
        let f = PrimeField::new(p).unwrap();
        for _ in 0..60 {
            let coeffs = [next(p), next(p), next(p), next(p), next(p)];
            let e = curve(f, coeffs);
            if e.is_singular() {
                continue;
            }
            let t = count_points(&e, DEFAULT_POINT_BOUND).unwrap();
            assert_eq!(t.count, pair_scan(p, coeffs), "p={p} {coeffs:?}");
        }
    }
}

#[test]
fn e0_at_two_mod_five() {
    let f = PrimeField::new(5).unwrap();
    let e = build_e0(&Rational::from_int(2)).unwrap().reduce(f).unwrap();
    assert_eq!(pair_scan(5, [0, 0, 0, 1, 4]), 9);
    assert_eq!(count_points(&e, DEFAULT_POINT_BOUND).unwrap().a, -3);
}

/// `(v_p(n), n / p^v mod p^k)` by long division.
fn split_power(n: &BigInt, p: u64, k: u32) -> (i64, u64) {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0i64;
    let chunk = 6u32;
    let big = BigInt::from(p.pow(chunk));
    while (&n % &big).is_zero() {
        n /= &big;
        v += chunk as i64;
    }
    let small = BigInt::from(p);
    while (&n % &small).is_zero() {
        n /= &small;
        v += 1;
    }
    let m = BigInt::from(p.pow(k));
    let r = ((n % &m) + &m) % &m;
    (v, r.to_u64().unwrap())
}

fn inverse_mod(u: u64, p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let phi = p.pow(k - 1) * (p - 1);
    BigInt::from(u)
        .modpow(&BigInt::from(phi - 1), &BigInt::from(m))
        .to_u64()
        .unwrap()
}

const SAMPLE_N: [u64; 9] = [0, 1, 7, 36, 121, 499, 1000, 4999, 10_000];

#[test]
fn factorials_match_big_integers() {
    let mut fact = BigInt::one();
    let mut done = 0u64;
    for &n in &SAMPLE_N {
        while done < n {
            done += 1;
            fact *= done;
        }
        for p in [5u64, 7, 13, 37] {
            for k in [1u32, 2, 3] {
                let got = factorial_valres(n, p, k);
                let (v, u) = split_power(&fact, p, k);
                assert_eq!(
                    (got.valuation(), got.unit()),
                    (Some(v), Some(u)),
                    "{n}! p={p} k={k}"
                );
            }
        }
    }
}

#[test]
fn pochhammer_matches_big_integers() {
    for (num, den) in [(1i64, 6i64), (5, 6), (1, 2), (1, 3)] {
        let a = Rational::frac(num, den);
        let mut top = BigInt::one();
        let mut done = 0u64;
        for &m in &SAMPLE_N {
            while done < m {
                top *= BigInt::from(num) + BigInt::from(den) * BigInt::from(done);
                done += 1;
            }
            let bottom = BigInt::from(den).pow(m as u32);
            for p in [5u64, 7, 11] {
                let k = 2;
                let got = pochhammer_valres(&a, m, p, k).unwrap();
                let (vt, ut) = split_power(&top, p, k);
                let (vb, ub) = split_power(&bottom, p, k);
                let unit = (ut as u128 * inverse_mod(ub, p, k) as u128 % p.pow(k) as u128) as u64;
                assert_eq!(got.valuation(), Some(vt - vb), "({a})_{m} p={p}");
                assert_eq!(got.unit(), Some(unit), "({a})_{m} p={p}");
            }
        }
    }
}
