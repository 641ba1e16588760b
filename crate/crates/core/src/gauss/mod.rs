//! Quadratic Gauss sums on finite abelian groups with a quadratic function.
//!
//! A pre-metric group is a direct sum of prime-power cyclic groups with a
//! quadratic function q and its associated symmetric form
//! b(x, y) = q(x + y) - q(x) - q(y). The normalized Gauss sum
//! Theta(G, q) = |G|^(-1/2) sum_x e(q(x)) is computed by splitting off the
//! radical of b and decomposing the rest into orthogonal blocks.

mod residue;

pub use residue::{legendre, smallest_nonresidue, sqrt_mod_prime_power};

use crate::abelian::{is_prime_power, quotient_presentation, GroupElem, SubgroupPresentation};
use crate::exactnum::{factor_u64, sqrt_natural, Cyclotomic, ExactError, QmodZ, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("orders[{index}] = {order} is not a prime power greater than 1")]
    NotPrimePower { index: usize, order: u64 },
    #[error("expected {expected} entries in {field}, got {got}")]
    Shape { field: &'static str, expected: usize, got: usize },
    #[error("gram[{i}][{j}] = {a} but gram[{j}][{i}] = {b}")]
    NotSymmetric { i: usize, j: usize, a: QmodZ, b: QmodZ },
    #[error("gram[{i}][{i}] = {gram} is not 2 * q[{i}] = 2 * {q}")]
    DiagonalMismatch { i: usize, gram: QmodZ, q: QmodZ },
    #[error("gram[{i}][{j}] = {value} is not killed by the generator order {order}")]
    Incompatible { i: usize, j: usize, value: QmodZ, order: u64 },
    #[error("q[{i}] = {value} is not well defined on a cyclic group of order {order}")]
    IllDefinedQ { i: usize, value: QmodZ, order: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A finite abelian group (+)Z/orders[i] with a quadratic function, given by
/// q on the generators and the Gram matrix of its polarization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreMetricGroup {
    orders: Vec<u64>,
    q: Vec<QmodZ>,
    gram: Vec<Vec<QmodZ>>,
    #[serde(skip)]
    int: IntForm,
}

/// q and b scaled to integers modulo a common denominator.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct IntForm {
    den: u64,
    q: Vec<u64>,
    b: Vec<Vec<u64>>,
}

impl IntForm {
    fn new(q: &[QmodZ], gram: &[Vec<QmodZ>]) -> Self {
        let den = q
            .iter()
            .chain(gram.iter().flatten())
            .fold(1u64, |acc, x| acc.lcm(&x.denom_u64()));
        let sc = |x: &QmodZ| x.numer_u64() * (den / x.denom_u64());
        IntForm { den, q: q.iter().map(sc).collect(), b: gram.iter().map(|r| r.iter().map(sc).collect()).collect() }
    }

    fn to_qmodz(&self, v: u128) -> QmodZ {
        QmodZ::new((v % self.den as u128) as i64, self.den as i64)
    }

    fn eval_q(&self, x: &[u64]) -> u128 {
        let d = self.den as u128;
        let mut acc = 0u128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as u128 % d;
            acc = (acc + xi * xi % d * self.q[i] as u128) % d;
            let mut cross = 0u128;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    cross = (cross + (x[j] as u128 % d) * self.b[i][j] as u128) % d;
                }
            }
            acc = (acc + xi * cross) % d;
        }
        acc
    }

    /// b(-, y) as a vector over the generators.
    fn apply_b(&self, y: &[u64]) -> Vec<u128> {
        let d = self.den as u128;
        (0..self.b.len())
            .map(|i| {
                y.iter()
                    .enumerate()
                    .filter(|(_, &yj)| yj != 0)
                    .fold(0u128, |acc, (j, &yj)| (acc + (yj as u128 % d) * self.b[i][j] as u128) % d)
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for PreMetricGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            orders: Vec<u64>,
            q: Vec<QmodZ>,
            gram: Vec<Vec<QmodZ>>,
        }
        let w = Wire::deserialize(d)?;
        PreMetricGroup::new(w.orders, w.q, w.gram).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Nondegenerate,
    /// q vanishes on the nontrivial radical.
    Tame,
    /// q is nonzero on this radical element, so the Gauss sum is zero.
    Wild { witness: GroupElem },
}

/// Orthogonal summands of a nondegenerate p-primary pre-metric group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Block {
    /// Z/p^r with q(x) = alpha (p^r + 1) / (2 p^r) x^2, alpha in {1, u_p}.
    CyclicOdd { p: u64, r: u32, alpha: u64 },
    /// Z/2^r with q(x) = alpha x^2 / 2^(r + 1), alpha in {1, -1, 5, -5}.
    TwoCyclic { r: u32, alpha: i64 },
    /// (Z/2^r)^2 with q(x, y) = xy / 2^r.
    Hyperbolic { r: u32 },
    /// (Z/2^r)^2 with q(x, y) = (x^2 + xy + y^2) / 2^r.
    Elliptic { r: u32 },
}

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

impl PreMetricGroup {
    pub fn new(orders: Vec<u64>, q: Vec<QmodZ>, gram: Vec<Vec<QmodZ>>) -> Result<Self, GaussError> {
        let n = orders.len();
        if let Some((index, &order)) = orders.iter().enumerate().find(|(_, &m)| !is_prime_power(m)) {
            return Err(GaussError::NotPrimePower { index, order });
        }
        if q.len() != n {
            return Err(GaussError::Shape { field: "q", expected: n, got: q.len() });
        }
        if gram.len() != n {
            return Err(GaussError::Shape { field: "gram", expected: n, got: gram.len() });
        }
        if let Some(r) = gram.iter().find(|r| r.len() != n) {
            return Err(GaussError::Shape { field: "gram row", expected: n, got: r.len() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(GaussError::NotSymmetric { i, j, a: gram[i][j].clone(), b: gram[j][i].clone() });
                }
            }
            if gram[i][i] != &q[i] * 2 {
                return Err(GaussError::DiagonalMismatch { i, gram: gram[i][i].clone(), q: q[i].clone() });
            }
            for j in 0..n {
                if !gram[i][j].mul_int(&int(orders[i])).is_zero() {
                    return Err(GaussError::Incompatible { i, j, value: gram[i][j].clone(), order: orders[i] });
                }
            }
            if !q[i].mul_int(&(int(orders[i]) * int(orders[i]))).is_zero() {
                return Err(GaussError::IllDefinedQ { i, value: q[i].clone(), order: orders[i] });
            }
        }
        let int = IntForm::new(&q, &gram);
        Ok(PreMetricGroup { orders, q, gram, int })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_values(&self) -> &[QmodZ] {
        &self.q
    }

    pub fn gram(&self) -> &[Vec<QmodZ>] {
        &self.gram
    }

    pub fn size(&self) -> BigUint {
        self.orders.iter().map(|&m| BigUint::from(m)).product()
    }

    /// q(x) = sum_i x_i^2 q_i + sum_{i<j} x_i x_j b_ij.
    pub fn eval_q(&self, x: &[u64]) -> QmodZ {
        self.int.to_qmodz(self.int.eval_q(x))
    }

    /// b(x, y) via the Gram matrix.
    pub fn eval_b(&self, x: &[u64], y: &[u64]) -> QmodZ {
        let by = self.int.apply_b(y);
        let d = self.int.den as u128;
        self.int.to_qmodz(x.iter().zip(&by).fold(0u128, |acc, (&xi, &v)| (acc + (xi as u128 % d) * v) % d))
    }

    fn from_parts(orders: Vec<u64>, q: Vec<QmodZ>, gram: Vec<Vec<QmodZ>>) -> Self {
        let int = IntForm::new(&q, &gram);
        PreMetricGroup { orders, q, gram, int }
    }

    /// Restricts to the given generators.
    fn restrict(&self, idx: &[usize]) -> PreMetricGroup {
        PreMetricGroup::from_parts(
            idx.iter().map(|&i| self.orders[i]).collect(),
            idx.iter().map(|&i| self.q[i].clone()).collect(),
            idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect()).collect(),
        )
    }
}

/// Mutable copy of a pre-metric group used while splitting off blocks.
struct Work {
    q: Vec<QmodZ>,
    gram: Vec<Vec<QmodZ>>,
}

impl Work {
    /// Replaces generator k by g_k + sum c_l g_l (l != k), updating q and
    /// the Gram matrix.
    fn substitute(&mut self, k: usize, combo: &[(usize, BigInt)]) {
        let mut new_q = self.q[k].clone();
        for (a, (l, c)) in combo.iter().enumerate() {
            new_q = &new_q + &self.q[l.to_owned()].mul_int(&(c * c));
            new_q = &new_q + &self.gram[k][*l].mul_int(c);
            for (l2, c2) in &combo[a + 1..] {
                new_q = &new_q + &self.gram[*l][*l2].mul_int(&(c * c2));
            }
        }
        let n = self.q.len();
        for m in (0..n).filter(|&m| m != k) {
            let mut v = self.gram[k][m].clone();
            for (l, c) in combo {
                v = &v + &self.gram[*l][m].mul_int(c);
            }
            self.gram[k][m] = v.clone();
            self.gram[m][k] = v;
        }
        self.gram[k][k] = &new_q * 2;
        self.q[k] = new_q;
    }
}

/// The radical of b and whether q vanishes on it.
pub fn radical_and_classify(g: &PreMetricGroup) -> (SubgroupPresentation, Classification) {
    let rad = crate::abelian::radical_of(&g.orders, &g.gram);
    if rad.is_trivial() {
        return (rad, Classification::Nondegenerate);
    }
    // q restricted to the radical is additive, so checking generators suffices
    let class = match rad.generators.iter().find(|r| !g.eval_q(r).is_zero()) {
        Some(w) => Classification::Wild { witness: w.clone() },
        None => Classification::Tame,
    };
    (rad, class)
}

/// G / radical with the induced quadratic function. Only meaningful when q
/// vanishes on the radical.
pub fn quotient_by_radical(g: &PreMetricGroup, rad: &SubgroupPresentation) -> PreMetricGroup {
    let quot = quotient_presentation(&g.orders, &rad.generators);
    let lifts = &quot.generators;
    let d = g.int.den as u128;
    let images: Vec<Vec<u128>> = lifts.iter().map(|y| g.int.apply_b(y)).collect();
    let gram = lifts
        .iter()
        .map(|x| {
            images
                .iter()
                .map(|by| g.int.to_qmodz(x.iter().zip(by).fold(0, |acc, (&xi, &v)| (acc + xi as u128 % d * v) % d)))
                .collect()
        })
        .collect();
    PreMetricGroup::from_parts(quot.cyclic_orders.clone(), lifts.iter().map(|x| g.eval_q(x)).collect(), gram)
}

/// Splits a group into its p-primary parts, primes ascending. Generators of
/// coprime order are automatically orthogonal.
pub fn split_p_parts(g: &PreMetricGroup) -> Vec<(u64, PreMetricGroup)> {
    let mut primes: Vec<u64> = g.orders.iter().map(|&m| factor_u64(m)[0].0).collect();
    primes.sort_unstable();
    primes.dedup();
    primes
        .into_iter()
        .map(|p| {
            let idx: Vec<usize> = (0..g.orders.len()).filter(|&i| g.orders[i] % p == 0).collect();
            (p, g.restrict(&idx))
        })
        .collect()
}

fn p_valuation(mut n: BigInt, p: u64) -> u32 {
    let p = int(p);
    let mut e = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        e += 1;
    }
    e
}

fn den_exp(x: &QmodZ, p: u64) -> u32 {
    p_valuation(x.denom().clone(), p)
}

/// x * p^r as an integer; x must have denominator dividing p^r.
fn scaled(x: &QmodZ, pr: u64) -> BigInt {
    let v = x.as_rational() * Rational::from_integer(int(pr));
    debug_assert!(v.is_integer());
    v.to_integer()
}

fn inv_mod(a: &BigInt, m: u64) -> BigInt {
    let m = int(m);
    let e = a.mod_floor(&m).extended_gcd(&m);
    assert!(e.gcd.is_one(), "pivot is not a unit");
    e.x.mod_floor(&m)
}

/// Orthogonal block decomposition of a nondegenerate p-primary group.
pub fn normalize_blocks(g: &PreMetricGroup, p: u64) -> Vec<Block> {
    let mut w = Work { q: g.q.clone(), gram: g.gram.clone() };
    let mut active: Vec<usize> = (0..g.orders.len()).collect();
    let mut blocks = Vec::new();
    while !active.is_empty() {
        let r = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .map(|(i, j)| den_exp(&w.gram[i][j], p))
            .max()
            .unwrap();
        assert!(r > 0, "pre-metric group is degenerate");
        let pr = p.pow(r);
        let diag = active.iter().copied().find(|&i| den_exp(&w.gram[i][i], p) == r);
        let off = || {
            active
                .iter()
                .enumerate()
                .flat_map(|(a, &i)| active[a + 1..].iter().map(move |&j| (i, j)))
                .find(|&(i, j)| den_exp(&w.gram[i][j], p) == r)
                .expect("maximal denominator is attained")
        };
        if p != 2 {
            let i = match diag {
                Some(i) => i,
                None => {
                    let (i, j) = off();
                    w.substitute(i, &[(j, BigInt::one())]);
                    i
                }
            };
            let inv = inv_mod(&scaled(&w.gram[i][i], pr), pr);
            for &j in active.iter().filter(|&&j| j != i) {
                let c = (scaled(&w.gram[i][j], pr) * &inv).mod_floor(&int(pr));
                if !c.is_zero() {
                    w.substitute(j, &[(i, -c)]);
                }
            }
            let n = scaled(&w.q[i], pr);
            let alpha = if legendre((BigInt::from(2) * n).mod_floor(&int(p)).to_i64().unwrap(), p) == 1 {
                1
            } else {
                smallest_nonresidue(p)
            };
            blocks.push(Block::CyclicOdd { p, r, alpha });
            active.retain(|&k| k != i);
        } else if let Some(i) = diag {
            let inv = inv_mod(&scaled(&w.gram[i][i], pr), pr);
            for &j in active.iter().filter(|&&j| j != i) {
                let c = (scaled(&w.gram[i][j], pr) * &inv).mod_floor(&int(pr));
                if !c.is_zero() {
                    w.substitute(j, &[(i, -c)]);
                }
            }
            let a = scaled(&w.q[i], 2 * pr).mod_floor(&int(8)).to_i64().unwrap();
            let alpha = match a {
                1 => 1,
                7 => -1,
                5 => 5,
                3 => -5,
                _ => unreachable!("diagonal pivot has odd numerator"),
            };
            blocks.push(Block::TwoCyclic { r, alpha });
            active.retain(|&k| k != i);
        } else {
            let (i, j) = off();
            let nii = scaled(&w.gram[i][i], pr);
            let njj = scaled(&w.gram[j][j], pr);
            let nij = scaled(&w.gram[i][j], pr);
            let det_inv = inv_mod(&(&nii * &njj - &nij * &nij), pr);
            let m = int(pr);
            for &k in active.iter().filter(|&&k| k != i && k != j) {
                let nki = scaled(&w.gram[k][i], pr);
                let nkj = scaled(&w.gram[k][j], pr);
                let x = ((&njj * &nki - &nij * &nkj) * &det_inv).mod_floor(&m);
                let y = ((&nii * &nkj - &nij * &nki) * &det_inv).mod_floor(&m);
                if !(x.is_zero() && y.is_zero()) {
                    w.substitute(k, &[(i, -x), (j, -y)]);
                }
            }
            let s = scaled(&w.q[i], pr);
            let t = scaled(&w.q[j], pr);
            if (s * t).is_even() {
                blocks.push(Block::Hyperbolic { r });
            } else {
                blocks.push(Block::Elliptic { r });
            }
            active.retain(|&k| k != i && k != j);
        }
    }
    blocks
}

/// Normalized Gauss sum of a single block, in Q(zeta_8).
pub fn theta_block(b: &Block) -> Cyclotomic {
    match *b {
        Block::CyclicOdd { p, r, alpha } => {
            let sign = legendre(2 * alpha as i64, p).pow(r);
            let eps = if p.pow(r) % 4 == 1 { Cyclotomic::one(8) } else { Cyclotomic::root_of_unity(2, 8) };
            if sign < 0 {
                -eps
            } else {
                eps
            }
        }
        Block::TwoCyclic { r, alpha } => {
            let z = Cyclotomic::root_of_unity(alpha, 8);
            if (r as i64 * (alpha * alpha - 1) / 8) % 2 == 1 {
                -z
            } else {
                z
            }
        }
        Block::Hyperbolic { .. } => Cyclotomic::one(8),
        Block::Elliptic { r } => Cyclotomic::from_integer(8, if r % 2 == 1 { -1 } else { 1 }),
    }
}

/// Result of evaluating a Gauss sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussSum {
    pub classification: Classification,
    pub radical_order: BigUint,
    /// Blocks of the nondegenerate quotient, empty when wild.
    pub blocks: Vec<Block>,
    /// Theta of the nondegenerate quotient; zero when wild.
    pub quotient_theta: Cyclotomic,
}

impl GaussSum {
    /// Theta(G, q) = sqrt(|radical|) * Theta(G / radical).
    pub fn theta(&self, order: u64) -> Result<Cyclotomic, ExactError> {
        if self.quotient_theta.is_zero() {
            return Ok(Cyclotomic::zero(order));
        }
        Ok(&sqrt_natural(&self.radical_order, order)? * &self.quotient_theta)
    }
}

pub fn gauss_sum(g: &PreMetricGroup) -> GaussSum {
    let (rad, classification) = radical_and_classify(g);
    if let Classification::Wild { .. } = classification {
        return GaussSum {
            classification,
            radical_order: rad.order(),
            blocks: Vec::new(),
            quotient_theta: Cyclotomic::zero(8),
        };
    }
    let quotient = if rad.is_trivial() { g.clone() } else { quotient_by_radical(g, &rad) };
    let mut blocks = Vec::new();
    for (p, part) in split_p_parts(&quotient) {
        blocks.extend(normalize_blocks(&part, p));
    }
    let theta = blocks.iter().fold(Cyclotomic::one(8), |acc, b| &acc * &theta_block(b));
    GaussSum { classification, radical_order: rad.order(), blocks, quotient_theta: theta }
}

/// sum_x e(q(x)) = sqrt(|G|) Theta(G, q), computed in Q(zeta_order).
pub fn gauss_sum_value(g: &PreMetricGroup, order: u64) -> Result<Cyclotomic, ExactError> {
    let theta = gauss_sum(g).theta(order)?;
    if theta.is_zero() {
        return Ok(theta);
    }
    Ok(&sqrt_natural(&g.size(), order)? * &theta)
}

/// Direct summation over all elements; for testing and small groups.
pub fn gauss_sum_exhaustive(g: &PreMetricGroup, order: u64) -> Result<Cyclotomic, ExactError> {
    let group = crate::abelian::FinAbGroup::new(g.orders.clone()).expect("validated orders");
    let mut acc = Cyclotomic::zero(order);
    let mut counts: std::collections::BTreeMap<QmodZ, u64> = Default::default();
    for x in group.elements() {
        *counts.entry(g.eval_q(&x)).or_default() += 1;
    }
    for (v, c) in counts {
        let den = v.denom().to_u64().unwrap();
        if order % den != 0 {
            return Err(ExactError::NotDivisible { order, needed: den });
        }
        let k = v.numer().to_u64().unwrap() * (order / den);
        acc.add_root(k as i64, &BigInt::from(c));
    }
    Ok(acc)
}
