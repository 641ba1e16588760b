//! Exact arithmetic: rationals, Q/Z, and cyclotomic fields Q(zeta_N).

mod cyclotomic;
mod field;
mod qmodz;

pub use cyclotomic::Cyclotomic;
pub use field::cyclotomic_polynomial;
pub use qmodz::QmodZ;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    CoefficientCount { order: u64, expected: usize, got: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("order {order} is not a multiple of {needed}")]
    NotDivisible { order: u64, needed: u64 },
    #[error("order {order} does not contain sqrt({prime})")]
    MissingSqrt { order: u64, prime: u64 },
    #[error("cannot factor {0} over small primes")]
    Factorization(String),
}

/// Parses `"n"` or `"n/d"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as `"n/d"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Prime factorization by trial division, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Factors a big natural number whose prime factors are all below 2^20.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(u64, u32)>, ExactError> {
    if n.is_zero() {
        return Err(ExactError::Factorization("0".into()));
    }
    let mut n = n.clone();
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small));
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_one() && p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if let Some(small) = n.to_u64() {
            if small < p.saturating_mul(p) || small == 1 {
                if small > 1 {
                    out.push((small, 1));
                }
                return Ok(out);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        Ok(out)
    } else {
        Err(ExactError::Factorization(n.to_string()))
    }
}

/// sqrt(n) in Q(zeta_order), the positive real root.
///
/// Uses sqrt(2) = zeta_8 + zeta_8^-1 and the quadratic Gauss sum
/// sum_a zeta_p^(a^2) = sqrt(p) or i sqrt(p) for odd p.
pub fn sqrt_natural(n: &BigUint, order: u64) -> Result<Cyclotomic, ExactError> {
    if order == 0 {
        return Err(ExactError::ZeroOrder);
    }
    let mut out = Cyclotomic::one(order);
    let mut square_part = BigUint::one();
    for (p, e) in factor_biguint(n)? {
        square_part *= BigUint::from(p).pow(e / 2);
        if e % 2 == 1 {
            out = &out * &sqrt_prime(p, order)?;
        }
    }
    Ok(out.scale(&Rational::from_integer(BigInt::from(square_part))))
}

/// sqrt(n)^exp for a signed exponent, staying inside Q(zeta_order).
pub fn sqrt_power(n: u64, exp: i64, order: u64) -> Result<Cyclotomic, ExactError> {
    let half = Rational::from_integer(BigInt::from(n)).pow(exp.div_euclid(2) as i32);
    let base = if exp.rem_euclid(2) == 1 {
        sqrt_natural(&BigUint::from(n), order)?
    } else {
        Cyclotomic::one(order)
    };
    Ok(base.scale(&half))
}

fn sqrt_prime(p: u64, order: u64) -> Result<Cyclotomic, ExactError> {
    let missing = || ExactError::MissingSqrt { order, prime: p };
    if p == 2 {
        if order % 8 != 0 {
            return Err(missing());
        }
        let k = (order / 8) as i64;
        return Ok(Cyclotomic::root_of_unity(k, order) + Cyclotomic::root_of_unity(-k, order));
    }
    if order % p != 0 || (p % 4 == 3 && order % 4 != 0) {
        return Err(missing());
    }
    let step = order / p;
    let mut g = Cyclotomic::zero(order);
    for a in 0..p {
        g.add_root(((a * a % p) * step) as i64, &BigInt::one());
    }
    if p % 4 == 1 {
        Ok(g)
    } else {
        Ok(&g * &Cyclotomic::root_of_unity(-((order / 4) as i64), order))
    }
}

/// base^exp mod m.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_formats() {
        let r = parse_rational("-6/8").unwrap();
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn phi_small_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), *e);
        }
    }

    #[test]
    fn sqrt_of_primes_squares_back() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let order = lcm(8, 4 * p);
            let s = sqrt_natural(&BigUint::from(p), order).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_integer(order, p as i64));
            let (re, im) = s.approx();
            assert!((re - (p as f64).sqrt()).abs() < 1e-9 && im.abs() < 1e-9);
        }
    }

    #[test]
    fn sqrt_composite() {
        let s = sqrt_natural(&BigUint::from(72u32), 24).unwrap();
        assert_eq!(&s * &s, Cyclotomic::from_integer(24, 72));
        assert!((s.approx().0 - 72f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn sqrt_needs_enough_roots() {
        assert!(matches!(
            sqrt_natural(&BigUint::from(3u32), 12),
            Ok(_)
        ));
        assert_eq!(
            sqrt_natural(&BigUint::from(3u32), 6).unwrap_err(),
            ExactError::MissingSqrt { order: 6, prime: 3 }
        );
        assert!(sqrt_natural(&BigUint::from(2u32), 4).is_err());
    }

    #[test]
    fn sqrt_power_negative() {
        let x = sqrt_power(3, -3, 24).unwrap();
        let y = sqrt_power(3, 3, 24).unwrap();
        assert_eq!(&x * &y, Cyclotomic::one(24));
    }

    #[test]
    fn factors_big() {
        let n = BigUint::from(2u32).pow(80) * BigUint::from(3u32).pow(7);
        assert_eq!(factor_biguint(&n).unwrap(), vec![(2, 80), (3, 7)]);
    }

    proptest! {
        #[test]
        fn factor_roundtrip(n in 1u64..200_000) {
            let f = factor_u64(n);
            prop_assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u64>(), n);
        }
    }
}
