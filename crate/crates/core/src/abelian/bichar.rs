use super::{kernel_mod_orders, FinAbGroup, GroupElem, IntegerMatrix};
use crate::exactnum::QmodZ;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BicharError {
    #[error("gram must be {rank}x{rank}, got {rows} rows (row {bad_row} has wrong length)")]
    Shape { rank: usize, rows: usize, bad_row: usize },
    #[error("gram[{i}][{j}] = {a} but gram[{j}][{i}] = {b}")]
    NotSymmetric { i: usize, j: usize, a: QmodZ, b: QmodZ },
    #[error("gram[{i}][{j}] = {value} is not killed by the generator order {order}")]
    Incompatible { i: usize, j: usize, value: QmodZ, order: u64 },
    #[error("bicharacter is degenerate, {witness:?} pairs trivially with everything")]
    Degenerate { witness: GroupElem },
}

/// A symmetric nondegenerate bicharacter chi(x, y) = e(b(x, y)) on A,
/// stored through its Gram matrix b(g_i, g_j) in Q/Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: FinAbGroup,
    gram: Vec<Vec<QmodZ>>,
}

impl Bicharacter {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<QmodZ>] {
        &self.gram
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> QmodZ {
        bichar_eval(&self.gram, x, y)
    }
}

/// b(x, y) = sum_ij x_i y_j gram[i][j].
pub fn bichar_eval(gram: &[Vec<QmodZ>], x: &[u64], y: &[u64]) -> QmodZ {
    let mut acc = QmodZ::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 && !gram[i][j].is_zero() {
                acc = &acc + &gram[i][j].mul_int(&BigInt::from(xi as u128 * yj as u128));
            }
        }
    }
    acc
}

/// Elements x with b(x, -) identically zero, for a Gram matrix on (+)Z/orders.
pub fn radical_of(orders: &[u64], gram: &[Vec<QmodZ>]) -> super::SubgroupPresentation {
    let e = orders.iter().fold(1u64, |a, &m| num_integer::lcm(a, m));
    let rank = orders.len();
    let mut m = IntegerMatrix::zeros(rank, rank);
    for j in 0..rank {
        for i in 0..rank {
            // b_ij * e is an integer since the denominator divides the exponent
            let v = gram[i][j].as_rational() * num_rational::BigRational::from_integer(BigInt::from(e));
            m.set(j, i, v.to_integer());
        }
    }
    kernel_mod_orders(&m, &vec![e; rank], orders)
}

pub fn validate_bicharacter(group: &FinAbGroup, gram: Vec<Vec<QmodZ>>) -> Result<Bicharacter, BicharError> {
    let rank = group.rank();
    if gram.len() != rank || gram.iter().any(|r| r.len() != rank) {
        let bad_row = gram.iter().position(|r| r.len() != rank).unwrap_or(gram.len().min(rank));
        return Err(BicharError::Shape { rank, rows: gram.len(), bad_row });
    }
    for i in 0..rank {
        for j in i + 1..rank {
            if gram[i][j] != gram[j][i] {
                return Err(BicharError::NotSymmetric { i, j, a: gram[i][j].clone(), b: gram[j][i].clone() });
            }
        }
    }
    for i in 0..rank {
        let order = group.orders()[i];
        for j in 0..rank {
            if !gram[i][j].mul_int(&BigInt::from(order)).is_zero() {
                return Err(BicharError::Incompatible { i, j, value: gram[i][j].clone(), order });
            }
        }
    }
    let rad = radical_of(group.orders(), &gram);
    if let Some(w) = rad.generators.first() {
        return Err(BicharError::Degenerate { witness: w.clone() });
    }
    debug_assert!(rad.order().to_u64() == Some(1));
    Ok(Bicharacter { group: group.clone(), gram })
}
