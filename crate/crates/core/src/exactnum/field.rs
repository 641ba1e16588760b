use super::{euler_phi, factor_u64};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Per-order data: Phi_N and x^k mod Phi_N for 0 <= k < N.
pub(crate) struct FieldData {
    pub phi: usize,
    pub powers: Vec<Vec<(usize, i64)>>,
}

/// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let primes: Vec<u64> = factor_u64(n).into_iter().map(|(p, _)| p).collect();
    // Phi_N(x) = prod over squarefree d | rad(N) of (x^(N/d) - 1)^(mu(d))
    let mut num: Vec<i128> = vec![1];
    let mut dens: Vec<usize> = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let d: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| *p)
            .product();
        let deg = (n / d) as usize;
        if mask.count_ones() % 2 == 0 {
            let mut next = vec![0i128; num.len() + deg];
            for (i, c) in num.iter().enumerate() {
                next[i + deg] += c;
                next[i] -= c;
            }
            num = next;
        } else {
            dens.push(deg);
        }
    }
    for deg in dens {
        // exact division by x^deg - 1
        let qlen = num.len() - deg;
        let mut q = vec![0i128; qlen];
        for i in 0..qlen {
            q[i] = -num[i] + if i >= deg { q[i - deg] } else { 0 };
        }
        num = q;
    }
    debug_assert_eq!(num.len() as u64, euler_phi(n) + 1);
    num.into_iter().map(|c| c as i64).collect()
}

impl FieldData {
    fn new(order: u64) -> Self {
        let poly = cyclotomic_polynomial(order);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by x and reduce the overflow term with the monic Phi_N
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        FieldData { phi, powers }
    }
}

pub(crate) fn field(order: u64) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.read().unwrap().get(&order) {
        return f.clone();
    }
    let f = Arc::new(FieldData::new(order));
    cache.write().unwrap().entry(order).or_insert(f).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert_eq!(p105[7], -2);
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        for n in 1u64..40 {
            let mut prod = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                let f = cyclotomic_polynomial(d);
                let mut next = vec![0i64; prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn powers_wrap_around() {
        let f = field(12);
        assert_eq!(f.phi, 4);
        assert_eq!(f.powers[0], vec![(0, 1)]);
        // x^4 = x^2 - 1 mod x^4 - x^2 + 1
        assert_eq!(f.powers[4], vec![(0, -1), (2, 1)]);
    }
}
