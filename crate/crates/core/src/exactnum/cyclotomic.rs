use super::field::field;
use super::{format_rational, lcm, parse_rational, ExactError, QmodZ, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of Q(zeta_N), stored as a polynomial in zeta_N of degree
/// below phi(N) with a common positive denominator.
///
/// The representation is canonical for a fixed order, so equality of
/// elements of the same order is field-wise. Mixed-order arithmetic and
/// comparison lift both operands to the lcm order first.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let phi = field(order).phi;
        Cyclotomic { order, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u64, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = n.into();
        z
    }

    pub fn from_rational(order: u64, r: &Rational) -> Self {
        Self::one(order).scale(r)
    }

    /// zeta_order^k for any integer k.
    pub fn root_of_unity(k: i64, order: u64) -> Self {
        let mut z = Self::zero(order);
        z.add_root(k, &BigInt::one());
        z
    }

    /// e(q) = exp(2 pi i q), provided the denominator of q divides the order.
    pub fn exp_qmodz(q: &QmodZ, order: u64) -> Result<Self, ExactError> {
        let den = q.denom_u64();
        if order % den != 0 {
            return Err(ExactError::NotDivisible { order, needed: den });
        }
        Ok(Self::root_of_unity((q.numer_u64() * (order / den)) as i64, order))
    }

    /// Builds an element from coefficients on 1, zeta, ..., zeta^(phi - 1).
    pub fn from_coeffs(order: u64, coeffs: &[Rational]) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::ZeroOrder);
        }
        let phi = field(order).phi;
        if coeffs.len() != phi {
            return Err(ExactError::CoefficientCount { order, expected: phi, got: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut z = Cyclotomic { order, num, den };
        z.normalize();
        Ok(z)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Adds c * zeta^k in place.
    pub fn add_root(&mut self, k: i64, c: &BigInt) {
        let f = field(self.order);
        let k = k.rem_euclid(self.order as i64) as usize;
        let scaled = c * &self.den;
        for &(i, m) in &f.powers[k] {
            self.num[i] += &scaled * m;
        }
        self.normalize();
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let mut z = Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|n| n * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        z.normalize();
        z
    }

    /// Re-expresses the element in Q(zeta_m) for a multiple m of the order.
    pub fn lift(&self, m: u64) -> Result<Self, ExactError> {
        if m == 0 || m % self.order != 0 {
            return Err(ExactError::NotDivisible { order: m, needed: self.order });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = m / self.order;
        let f = field(m);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, v) in &f.powers[(k as u64 * step) as usize] {
                num[i] += c * v;
            }
        }
        let mut z = Cyclotomic { order: m, num, den: self.den.clone() };
        z.normalize();
        Ok(z)
    }

    /// Complex conjugate: zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let f = field(self.order);
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kk = (self.order as usize - k) % self.order as usize;
            for &(i, v) in &f.powers[kk] {
                num[i] += c * v;
            }
        }
        let mut z = Cyclotomic { order: self.order, num, den: self.den.clone() };
        z.normalize();
        z
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value (re, im).
    pub fn approx(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = std::f64::consts::TAU * k as f64 / self.order as f64;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re / den, im / den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |g, n| if g.is_one() { g } else { g.gcd(n) });
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n /= &g;
            }
            self.den /= &g;
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.order, b.order);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    fn add_same(a: &Self, b: &Self, sign: i32) -> Self {
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if sign > 0 { l + r } else { l - r }
            })
            .collect();
        let mut z = Cyclotomic { order: a.order, num, den: &a.den * &b.den };
        z.normalize();
        z
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let f = field(a.order);
        let phi = f.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = prod.drain(..phi).collect();
        for (off, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (phi + off) % a.order as usize;
            for &(i, v) in &f.powers[k] {
                num[i] += &c * v;
            }
        }
        let mut z = Cyclotomic { order: a.order, num, den: &a.den * &b.den };
        z.normalize();
        z
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; ", self.order)?;
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})z^{}", format_rational(&Rational::new(c.clone(), self.den.clone())), k)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "{re:.12} {} {:.12}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $body;
                if self.order == rhs.order {
                    f(self, rhs)
                } else {
                    let (a, b) = Cyclotomic::common(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Cyclotomic::add_same(a, b, 1));
binop!(Sub, sub, |a, b| Cyclotomic::add_same(a, b, -1));
binop!(Mul, mul, Cyclotomic::mul_same);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, num: self.num.iter().map(|n| -n).collect(), den: self.den.clone() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { order: self.order, coeffs: self.coeffs().iter().map(format_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Cyclotomic::from_coeffs(w.order, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn roots_multiply() {
        let z = Cyclotomic::root_of_unity(1, 12);
        assert_eq!(z.pow(12), Cyclotomic::one(12));
        assert_eq!(z.pow(6), Cyclotomic::from_integer(12, -1));
        assert_eq!(&Cyclotomic::root_of_unity(5, 12) * &Cyclotomic::root_of_unity(9, 12), Cyclotomic::root_of_unity(2, 12));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in [3u64, 8, 9, 12, 30] {
            let mut s = Cyclotomic::zero(n);
            for k in 0..n as i64 {
                s.add_root(k, &BigInt::one());
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn mixed_orders_lift() {
        let i4 = Cyclotomic::root_of_unity(1, 4);
        let i8 = Cyclotomic::root_of_unity(2, 8);
        assert_eq!(i4, i8);
        let w = Cyclotomic::root_of_unity(1, 3);
        let prod = &i4 * &w;
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, Cyclotomic::root_of_unity(7, 12));
    }

    #[test]
    fn conj_and_approx() {
        let z = Cyclotomic::root_of_unity(1, 8);
        let c = z.conj();
        assert_eq!(&z * &c, Cyclotomic::one(8));
        let (re, im) = c.approx();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-12 && (im + 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rational_scaling_normalizes() {
        let x = Cyclotomic::from_rational(5, &rat(6, 4)).scale(&rat(2, 3));
        assert_eq!(x, Cyclotomic::one(5));
        assert_eq!(x.coeffs()[0], rat(1, 1));
        assert!(x.is_one());
    }

    #[test]
    fn serde_roundtrip() {
        let x = Cyclotomic::root_of_unity(3, 8).scale(&rat(-2, 7)) + Cyclotomic::from_rational(8, &rat(1, 2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":8,"coeffs":["1/2","0/1","0/1","-2/7"]}"#);
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":8,"coeffs":["1/2"]}"#).is_err());
    }

    #[test]
    fn exp_of_qmodz() {
        let q = QmodZ::new(3, 4);
        assert_eq!(Cyclotomic::exp_qmodz(&q, 8).unwrap(), Cyclotomic::root_of_unity(6, 8));
        assert!(Cyclotomic::exp_qmodz(&q, 6).is_err());
    }

    fn arb_elem(order: u64) -> impl Strategy<Value = Cyclotomic> {
        let phi = super::super::euler_phi(order) as usize;
        prop::collection::vec((-20i64..20, 1i64..6), phi).prop_map(move |v| {
            let c: Vec<Rational> = v.into_iter().map(|(n, d)| rat(n, d)).collect();
            Cyclotomic::from_coeffs(order, &c).unwrap()
        })
    }

    fn to_complex(z: &Cyclotomic) -> (f64, f64) {
        z.approx()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(24), b in arb_elem(24), c in arb_elem(24)) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn matches_complex_arithmetic(a in arb_elem(20), b in arb_elem(20)) {
            let (ar, ai) = to_complex(&a);
            let (br, bi) = to_complex(&b);
            let (pr, pi) = to_complex(&(&a * &b));
            let scale = 1.0 + (ar.abs() + ai.abs()) * (br.abs() + bi.abs());
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9 * scale);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9 * scale);
        }

        #[test]
        fn lift_is_a_homomorphism(a in arb_elem(12), b in arb_elem(12)) {
            let la = a.lift(36).unwrap();
            let lb = b.lift(36).unwrap();
            prop_assert_eq!((&a * &b).lift(36).unwrap(), &la * &lb);
            prop_assert_eq!(&la, &a);
        }

        #[test]
        fn conj_is_an_involution(a in arb_elem(15), b in arb_elem(15)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn root_exponents_add(j in -50i64..50, k in -50i64..50, n in 1u64..40) {
            let p = &Cyclotomic::root_of_unity(j, n) * &Cyclotomic::root_of_unity(k, n);
            prop_assert_eq!(p, Cyclotomic::root_of_unity(j + k, n));
        }
    }
}
