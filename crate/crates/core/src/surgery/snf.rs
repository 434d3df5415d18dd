//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl Snf {
    /// Diagonal of `d`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len))).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn from_i64(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigInt::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn det(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
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
    sign * &a[n - 1][n - 1]
}

struct State {
    m: Matrix,
    u: Matrix,
    v: Matrix,
}

impl State {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.m {
            r.swap(a, b);
        }
        for r in &mut self.v {
            r.swap(a, b);
        }
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for mat in [&mut self.m, &mut self.u] {
            let s = mat[src].clone();
            for (x, y) in mat[dst].iter_mut().zip(&s) {
                *x += k * y;
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for mat in [&mut self.m, &mut self.v] {
            for r in mat.iter_mut() {
                let y = r[src].clone();
                r[dst] += k * y;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for mat in [&mut self.m, &mut self.u] {
            for x in mat[r].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

pub fn smith_normal_form(m: &Matrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut st = State { m: m.clone(), u: identity(rows), v: identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !st.m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| st.m[i][j].abs() < st.m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let k = st.m[i][t].div_floor(&st.m[t][t]);
                if !k.is_zero() {
                    st.add_row(i, t, &-k);
                }
                clean &= st.m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let k = st.m[t][j].div_floor(&st.m[t][t]);
                if !k.is_zero() {
                    st.add_col(j, t, &-k);
                }
                clean &= st.m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.m[i][j].is_multiple_of(&st.m[t][t])));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.m[t][t].is_negative() {
            st.negate_row(t);
        }
    }
    Snf { d: st.m, u: st.u, v: st.v }
}
