/// Smallest x in [0, p^r) with x^2 = a mod p^r, found by exhaustive search.
pub fn sqrt_mod_prime_power(a: u64, p: u64, r: u32) -> Option<u64> {
    let m = p.pow(r);
    let a = a % m;
    (0..m).find(|&x| (x as u128 * x as u128 % m as u128) as u64 == a)
}

/// Legendre symbol (a / p) for an odd prime p, as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if crate::exactnum::mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The least positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&u| legendre(u as i64, p) == -1).expect("odd prime has a non-residue")
}
