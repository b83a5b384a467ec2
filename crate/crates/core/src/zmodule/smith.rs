//! Exact integer linear algebra: integer kernels and Smith invariants.
//!
//! Matrices are dense, column major, with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: Vec<Vec<BigInt>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix { rows, cols: vec![vec![BigInt::zero(); rows]; cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> DenseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = DenseMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.cols[j][i] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.cols[j][i] = v;
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.cols[j]
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, a) in self.cols[j].iter().enumerate() {
                if !a.is_zero() {
                    out[i] += a * xj;
                }
            }
        }
        out
    }
}

// col_dst -= q * col_src, in both the matrix and its companion
fn axpy(cols: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Column echelon reduction. Returns the number of nonzero columns and the
/// unimodular transform whose trailing columns span the integer kernel.
fn column_echelon(m: &DenseMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let c = m.cols();
    let mut a = m.cols.clone();
    let mut u: Vec<Vec<BigInt>> =
        (0..c).map(|j| (0..c).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut piv = 0;
    for i in 0..m.rows {
        if piv == c {
            break;
        }
        loop {
            // smallest nonzero entry of row i among the free columns
            let best = (piv..c).filter(|&j| !a[j][i].is_zero()).min_by(|&x, &y| a[x][i].abs().cmp(&a[y][i].abs()));
            let Some(b) = best else { break };
            a.swap(piv, b);
            u.swap(piv, b);
            let p = a[piv][i].clone();
            let mut done = true;
            for j in piv + 1..c {
                if a[j][i].is_zero() {
                    continue;
                }
                let q = a[j][i].div_floor(&p);
                axpy(&mut a, j, piv, &q);
                axpy(&mut u, j, piv, &q);
                if !a[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    (piv, u.split_off(piv))
}

/// A saturated basis of the integer kernel.
pub fn integer_kernel(m: &DenseMatrix) -> Vec<Vec<BigInt>> {
    column_echelon(m).1
}

pub fn rank(m: &DenseMatrix) -> usize {
    column_echelon(m).0
}

/// Nonzero invariant factors d1 | d2 | ... of the Smith normal form.
pub fn smith_invariants(m: &DenseMatrix) -> Vec<BigInt> {
    let r = m.rows();
    let c = m.cols();
    // row major working copy
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|i| (0..c).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // pivot: smallest nonzero magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(top[t].iter()).skip(t) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    if !y.is_zero() {
                        row[j] -= &q * &y;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the whole remaining block
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // add the offending row to the pivot row and retry
                        let (top, rest) = a.split_at_mut(i);
                        for (x, y) in top[t].iter_mut().zip(rest[0].iter()).skip(t) {
                            *x += y;
                        }
                    }
                }
            } else {
                // move the smallest leftover entry of row/column t into the pivot spot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..r {
                    if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs()) {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..c {
                    if !a[t][j].is_zero() && (a[bi][bj].is_zero() || a[t][j].abs() < a[bi][bj].abs()) {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
