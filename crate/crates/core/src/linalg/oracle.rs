//! Brute-force reference computations.
//!
//! Every closed-form determinant, cofactor sum and inverse elsewhere in the
//! crate is checked against these routines, which know nothing about graphs
//! or bags.

use num::{BigInt, Integer, One, Signed, Zero};

use super::matrix::RMatrix;
use super::rational::Rational;
use super::LinalgError;

fn require_square(a: &RMatrix, op: &'static str) -> Result<(), LinalgError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(LinalgError::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled to integers by the lcm of its denominators, the
/// integer determinant is computed with exact divisions only, and the row
/// scales are divided back out at the end. Zero pivots are handled by a row
/// swap; a column without any nonzero pivot candidate means the determinant
/// is zero. The empty matrix has determinant one.
///
/// Panics if `a` is not square.
pub fn det_bareiss(a: &RMatrix) -> Rational {
    require_square(a, "det_bareiss").unwrap();
    let n = a.order();
    if n == 0 {
        return Rational::one();
    }

    let (mut m, scales) = integer_rows(a);
    let scale: BigInt = scales.iter().product();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let det = Rational::new(m[n - 1][n - 1].clone(), scale);
    if negate {
        -det
    } else {
        det
    }
}

/// Rows of `a` scaled to integers, with the per-row scale factors.
fn integer_rows(a: &RMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    (0..a.rows())
        .map(|i| {
            let row = a.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            (ints, lcm)
        })
        .unzip()
}

/// Exact inverse by fraction-free Gauss-Jordan elimination. Labels are
/// preserved.
///
/// With `M = S A` the row-scaled integer matrix, `[M | I]` is reduced with
/// the Bareiss update applied above and below the pivot, so every division
/// is exact. At the end the left half is `p I` and the right half is
/// `p M⁻¹` for the last pivot `p`; then `A⁻¹ = M⁻¹ S`.
pub fn inverse_exact(a: &RMatrix) -> Result<RMatrix, LinalgError> {
    require_square(a, "inverse_exact")?;
    let n = a.order();
    let (mut m, scales) = integer_rows(a);
    for (i, row) in m.iter_mut().enumerate() {
        row.extend((0..n).map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }));
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(LinalgError::Singular)?;
        m.swap(k, pivot_row);
        let (pivot_line, others) = {
            let (head, tail) = m.split_at_mut(k);
            let (line, rest) = tail.split_first_mut().expect("k < n");
            (line, head.iter_mut().chain(rest.iter_mut()))
        };
        let pivot = pivot_line[k].clone();
        for row in others {
            let f = std::mem::take(&mut row[k]);
            for j in (0..2 * n).filter(|&j| j != k) {
                let t = &row[j] * &pivot - &f * &pivot_line[j];
                row[j] = t / &prev;
            }
        }
        prev = pivot;
    }

    let inv = RMatrix::from_fn(n, n, |i, j| {
        Rational::new(&m[i][n + j] * &scales[j], prev.clone())
    });
    match a.labels() {
        Some(l) => inv.with_labels(l.to_vec()),
        None => Ok(inv),
    }
}

/// Classical adjugate: entry `(j, i)` is `(-1)^(i+j) det(A(i|j))`.
///
/// Computed from all `n²` minors, so it needs no invertibility.
pub fn adjugate(a: &RMatrix) -> RMatrix {
    require_square(a, "adjugate").unwrap();
    let n = a.order();
    if n == 1 {
        return RMatrix::identity(1);
    }
    let mut adj = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = det_bareiss(&a.minor(i, j));
            adj[(j, i)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Sum of all `n²` cofactors, `jᵀ adj(A) j`.
///
/// Uses the rank-one determinant identity `det(A + t J) = det(A) + t cof(A)`
/// at `t = 1`, which holds for singular `A` as well and costs two
/// determinants instead of `n²`.
pub fn cofactor_sum(a: &RMatrix) -> Rational {
    require_square(a, "cofactor_sum").unwrap();
    let n = a.order();
    if n == 0 {
        return Rational::zero();
    }
    let shifted = a.add(&RMatrix::ones(n)).expect("same order");
    det_bareiss(&shifted) - det_bareiss(a)
}

/// Rank of `a`, used by structural checks such as rank-one remainders.
pub fn rank(a: &RMatrix) -> usize {
    let mut m = a.clone().without_labels();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] / &piv;
            for j in c..cols {
                let t = &m[(r, j)] * &f;
                m[(i, j)] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Largest absolute entry; zero for an empty matrix.
pub(crate) fn max_abs_entry(a: &RMatrix) -> Option<(usize, usize, Rational)> {
    a.entries()
        .filter(|(_, _, x)| !x.is_zero())
        .max_by(|x, y| x.2.abs().cmp(&y.2.abs()))
        .map(|(i, j, x)| (i, j, x.clone()))
}
