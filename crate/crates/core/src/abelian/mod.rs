//! Finite abelian groups given as direct sums of prime-power cyclic groups,
//! integer Smith normal form, kernels of homomorphisms and bicharacters.

mod bichar;
mod matrix;

pub use bichar::{bichar_eval, radical_of, validate_bicharacter, BicharError, Bicharacter};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};

use crate::exactnum::factor_u64;
use matrix::{Reducer, Tracking};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coordinates of an element of a direct sum of cyclic groups.
pub type GroupElem = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("orders[{index}] = {order} is not a prime power greater than 1")]
    NotPrimePower { index: usize, order: u64 },
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(String),
}

/// A finite abelian group Z/m_1 + ... + Z/m_k with every m_i a prime power.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = GroupError;
    fn try_from(orders: Vec<u64>) -> Result<Self, GroupError> {
        FinAbGroup::new(orders)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Self {
        g.orders
    }
}

pub fn is_prime_power(n: u64) -> bool {
    n > 1 && factor_u64(n).len() == 1
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        if let Some((index, &order)) = orders.iter().enumerate().find(|(_, &m)| !is_prime_power(m)) {
            return Err(GroupError::NotPrimePower { index, order });
        }
        Ok(FinAbGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, m| a.lcm(m))
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.rank()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> GroupElem {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), m)| (a + b) % m).collect()
    }

    pub fn neg(&self, x: &[u64]) -> GroupElem {
        x.iter().zip(&self.orders).map(|(a, m)| (m - a % m) % m).collect()
    }

    pub fn scale(&self, k: i64, x: &[u64]) -> GroupElem {
        x.iter()
            .zip(&self.orders)
            .map(|(a, &m)| ((k as i128 * *a as i128).rem_euclid(m as i128)) as u64)
            .collect()
    }

    /// Mixed-radix index of an element, first coordinate least significant.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.orders).rev().fold(0usize, |acc, (a, m)| acc * *m as usize + *a as usize)
    }

    /// All elements, in mixed-radix order matching [`index_of`](Self::index_of).
    pub fn elements(&self) -> Vec<GroupElem> {
        let n = self.size() as usize;
        (0..n)
            .map(|mut i| {
                self.orders
                    .iter()
                    .map(|&m| {
                        let c = (i % m as usize) as u64;
                        i /= m as usize;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&a, &m)| acc.lcm(&(m / a.gcd(&m))))
    }
}

/// A subgroup of an ambient direct sum, presented by independent generators
/// of prime-power order: the subgroup is the direct sum of the cyclic groups
/// they generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub ambient: Vec<u64>,
    pub generators: Vec<GroupElem>,
    pub cyclic_orders: Vec<u64>,
}

impl SubgroupPresentation {
    pub fn order(&self) -> BigUint {
        self.cyclic_orders.iter().map(|&m| BigUint::from(m)).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The ambient element sum_i c_i g_i.
    pub fn combine(&self, coeffs: &[u64]) -> GroupElem {
        let mut out = vec![0u64; self.ambient.len()];
        for (g, &c) in self.generators.iter().zip(coeffs) {
            for ((o, x), m) in out.iter_mut().zip(g).zip(&self.ambient) {
                *o = ((*o as u128 + c as u128 * *x as u128) % *m as u128) as u64;
            }
        }
        out
    }
}

fn lcm_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1, |a, m| a.lcm(&m))
}

fn to_u64_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Kernel of x -> M x from (+)Z/col_orders to (+)Z/row_orders.
///
/// The map must be well defined: col_orders[j] * M[i][j] = 0 mod row_orders[i].
pub fn kernel_mod_orders(m: &IntegerMatrix, row_orders: &[u64], col_orders: &[u64]) -> SubgroupPresentation {
    assert_eq!(m.rows(), row_orders.len());
    assert_eq!(m.cols(), col_orders.len());
    let (rows, cols) = (m.rows(), m.cols());
    let n = lcm_all(row_orders.iter().chain(col_orders).copied());
    let mut aug = IntegerMatrix::zeros(rows, cols + rows);
    for i in 0..rows {
        for j in 0..cols {
            aug.set(i, j, m.get(i, j).mod_floor(&BigInt::from(row_orders[i])));
        }
        aug.set(i, cols + i, row_orders[i]);
    }
    let modulus = BigInt::from(n);
    let red = Reducer::run(&aug, Tracking { v: false, v_inv: false, u_modulus: Some(&modulus) });
    let rank = red.diagonal().iter().filter(|x| !x.is_zero()).count();
    let gens: Vec<GroupElem> = (rank..cols + rows)
        .map(|k| (0..cols).map(|j| to_u64_mod(red.u.get(j, k), col_orders[j])).collect())
        .collect();
    subgroup_primary_decomposition(col_orders, &gens)
}

/// Rewrites the subgroup generated by `gens` as a direct sum of cyclic
/// groups of prime-power order.
pub fn subgroup_primary_decomposition(ambient: &[u64], gens: &[GroupElem]) -> SubgroupPresentation {
    let gens: Vec<&GroupElem> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    let k = gens.len();
    let d = ambient.len();
    let trivial = SubgroupPresentation { ambient: ambient.to_vec(), generators: vec![], cyclic_orders: vec![] };
    if k == 0 {
        return trivial;
    }
    let n = lcm_all(ambient.iter().copied());
    let modulus = BigInt::from(n);
    // relation lattice L = {c in Z^k : sum c_i g_i = 0}, which contains n Z^k
    let mut aug = IntegerMatrix::zeros(d, k + d);
    for (i, g) in gens.iter().enumerate() {
        for r in 0..d {
            aug.set(r, i, g[r]);
        }
    }
    for r in 0..d {
        aug.set(r, k + r, ambient[r]);
    }
    let red = Reducer::run(&aug, Tracking { v: false, v_inv: false, u_modulus: Some(&modulus) });
    let rank = red.diagonal().iter().filter(|x| !x.is_zero()).count();
    let mut rel = IntegerMatrix::zeros(k, (k + d - rank) + k);
    for (c, col) in (rank..k + d).enumerate() {
        for i in 0..k {
            rel.set(i, c, red.u.get(i, col).clone());
        }
    }
    for i in 0..k {
        rel.set(i, (k + d - rank) + i, n);
    }
    let cyclic = cyclic_factors(&rel, n, |coeffs| {
        let mut g = vec![0u64; d];
        for (c, gen) in coeffs.iter().zip(&gens) {
            for r in 0..d {
                g[r] = ((g[r] as u128 + *c as u128 * gen[r] as u128) % ambient[r] as u128) as u64;
            }
        }
        g
    });
    SubgroupPresentation {
        ambient: ambient.to_vec(),
        generators: cyclic.iter().map(|c| c.0.clone()).collect(),
        cyclic_orders: cyclic.iter().map(|c| c.1).collect(),
    }
}

/// Decomposes Z^k / (column span of `rel`) into prime-power cyclic factors.
/// `n` must annihilate the quotient. Each factor's generator is a coefficient
/// vector mod n, mapped through `embed`. Factors are sorted by prime.
fn cyclic_factors<F>(rel: &IntegerMatrix, n: u64, embed: F) -> Vec<(GroupElem, u64)>
where
    F: Fn(&[u64]) -> GroupElem,
{
    let modulus = BigInt::from(n);
    let quot = Reducer::run(rel, Tracking { v: false, v_inv: true, u_modulus: Some(&modulus) });
    let v_inv = quot.v_inv.as_ref().unwrap();
    let k = rel.rows();
    let mut out: Vec<(u64, usize, GroupElem, u64)> = Vec::new();
    for (i, dii) in quot.diagonal().iter().enumerate() {
        let dii = dii.to_u64().expect("invariant factor divides the exponent");
        if dii <= 1 {
            continue;
        }
        let coeffs: Vec<u64> = (0..k).map(|j| to_u64_mod(v_inv.get(j, i), n)).collect();
        for (p, e) in factor_u64(dii) {
            let pe = p.pow(e);
            let cofactor = dii / pe;
            let scaled: Vec<u64> = coeffs.iter().map(|&c| ((c as u128 * cofactor as u128) % n as u128) as u64).collect();
            out.push((p, i, embed(&scaled), pe));
        }
    }
    out.sort_by_key(|(p, i, _, _)| (*p, *i));
    out.into_iter().map(|(_, _, g, m)| (g, m)).collect()
}

/// The quotient of (+)Z/ambient by the subgroup generated by `relations`,
/// presented by lifts of independent prime-power generators.
pub fn quotient_presentation(ambient: &[u64], relations: &[GroupElem]) -> SubgroupPresentation {
    let k = ambient.len();
    let n = lcm_all(ambient.iter().copied());
    let mut rel = IntegerMatrix::zeros(k, k + relations.len());
    for i in 0..k {
        rel.set(i, i, ambient[i]);
    }
    for (c, r) in relations.iter().enumerate() {
        for i in 0..k {
            rel.set(i, k + c, r[i]);
        }
    }
    let cyclic = cyclic_factors(&rel, n, |coeffs| coeffs.iter().zip(ambient).map(|(c, m)| c % m).collect());
    SubgroupPresentation {
        ambient: ambient.to_vec(),
        generators: cyclic.iter().map(|c| c.0.clone()).collect(),
        cyclic_orders: cyclic.iter().map(|c| c.1).collect(),
    }
}
