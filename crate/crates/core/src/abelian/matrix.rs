use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix over Z.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().cloned().map(Into::into).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i][j] = v.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Integer determinant via fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {:?}", r.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Smith normal form D = V * M * U with U, V unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.data[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let r = Reducer::run(m, Tracking { v: true, v_inv: false, u_modulus: None });
    SmithForm { u: r.u, d: IntegerMatrix { rows: m.rows, cols: m.cols, data: r.a }, v: r.v.unwrap() }
}

#[derive(Clone, Copy)]
pub(crate) struct Tracking<'a> {
    pub v: bool,
    pub v_inv: bool,
    pub u_modulus: Option<&'a BigInt>,
}

pub(crate) struct Reducer<'a> {
    pub a: Vec<Vec<BigInt>>,
    pub u: IntegerMatrix,
    pub v: Option<IntegerMatrix>,
    pub v_inv: Option<IntegerMatrix>,
    modulus: Option<&'a BigInt>,
    rows: usize,
    cols: usize,
}

impl<'a> Reducer<'a> {
    pub fn run(m: &IntegerMatrix, t: Tracking<'a>) -> Self {
        let mut r = Reducer {
            a: m.data.clone(),
            u: IntegerMatrix::identity(m.cols),
            v: t.v.then(|| IntegerMatrix::identity(m.rows)),
            v_inv: t.v_inv.then(|| IntegerMatrix::identity(m.rows)),
            modulus: t.u_modulus,
            rows: m.rows,
            cols: m.cols,
        };
        r.reduce();
        r
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(v) = &mut self.v {
            v.data.swap(i, j);
        }
        if let Some(w) = &mut self.v_inv {
            for row in &mut w.data {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.u.data {
            row.swap(i, j);
        }
    }

    /// row_i += q * row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        let (src, dst) = pick(&mut self.a, t, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
        if let Some(v) = &mut self.v {
            let (src, dst) = pick(&mut v.data, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d += q * s;
            }
        }
        if let Some(w) = &mut self.v_inv {
            // col_t -= q * col_i
            for row in &mut w.data {
                let x = q * &row[i];
                row[t] -= x;
                if let Some(m) = self.modulus {
                    row[t] = row[t].mod_floor(m);
                }
            }
        }
    }

    /// col_j += q * col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[t].is_zero() {
                let x = q * &row[t];
                row[j] += x;
            }
        }
        for row in &mut self.u.data {
            if !row[t].is_zero() {
                let x = q * &row[t];
                row[j] += x;
                if let Some(m) = self.modulus {
                    row[j] = row[j].mod_floor(m);
                }
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.a[t] {
            *x = -&*x;
        }
        if let Some(v) = &mut self.v {
            for x in &mut v.data[t] {
                *x = -&*x;
            }
        }
        if let Some(w) = &mut self.v_inv {
            for row in &mut w.data {
                row[t] = -&row[t];
                if let Some(m) = self.modulus {
                    row[t] = row[t].mod_floor(m);
                }
            }
        }
    }

    fn reduce(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            // smallest nonzero entry in the remaining block, row-major first
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    let x = &self.a[i][j];
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.magnitude() < self.a[bi][bj].magnitude()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    self.move_min_to_pivot(t);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn move_min_to_pivot(&mut self, t: usize) {
        let mut best = (t, t);
        for i in t + 1..self.rows {
            let x = &self.a[i][t];
            if !x.is_zero() && x.magnitude() < self.a[best.0][best.1].magnitude() {
                best = (i, t);
            }
        }
        for j in t + 1..self.cols {
            let x = &self.a[t][j];
            if !x.is_zero() && x.magnitude() < self.a[best.0][best.1].magnitude() {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }
}

fn pick<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}
