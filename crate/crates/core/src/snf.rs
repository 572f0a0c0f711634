//! Smith normal form and fraction-free determinants over arbitrary-precision
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(BigInt::zero(), |acc, (r, v)| acc + r * v))
        .collect()
}

/// `left * input * right == diagonal`, with `left`, `right` unimodular and the
/// nonzero diagonal entries positive, each dividing the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub left: Matrix,
    pub right: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(input: &Matrix) -> Smith {
    let m = input.len();
    let n = input.first().map_or(0, Vec::len);
    let mut a = input.clone();
    let mut left = identity(m);
    let mut right = identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_nonzero(&a, t) else {
                return finish(a, left, right);
            };
            a.swap(t, pi);
            left.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut right, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    add_row_multiple(&mut a, i, t, &q);
                    add_row_multiple(&mut left, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    add_col_multiple(&mut a, j, t, &q);
                    add_col_multiple(&mut right, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    add_row_multiple(&mut a, t, i, &minus_one);
                    add_row_multiple(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(a, left, right)
}

fn finish(a: Matrix, left: Matrix, right: Matrix) -> Smith {
    let k = a.len().min(a.first().map_or(0, Vec::len));
    Smith {
        diagonal: (0..k).map(|i| a[i][i].clone()).collect(),
        left,
        right,
    }
}

fn min_nonzero(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut Matrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// row[target] -= q * row[source]
fn add_row_multiple(a: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// col[target] -= q * col[source]
fn add_col_multiple(a: &mut Matrix, target: usize, source: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

/// Determinant by Bareiss elimination; exact on integers.
pub fn determinant(input: &Matrix) -> BigInt {
    let n = input.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = input.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
