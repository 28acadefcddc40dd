//! Dense Gaussian elimination over exact rationals.

use super::{Rational, RationalVector};

/// Row-reduced echelon form of `rows` together with the pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Unique solution of the square or overdetermined system `a x = b`,
/// `None` when inconsistent or underdetermined.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = rref(&aug);
    if piv.contains(&n) || piv.len() < n {
        return None;
    }
    Some(red.iter().map(|row| row[n].clone()).collect())
}

/// Basis of the null space `{ x : a x = 0 }`.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<RationalVector> {
    let (red, piv) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in red.iter().zip(&piv) {
                v[pc] = -&row[f];
            }
            RationalVector(v)
        })
        .collect()
}

/// Echelon basis of the span of `vectors`.
pub fn span_basis(vectors: &[RationalVector]) -> Vec<RationalVector> {
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.clone()).collect();
    rref(&rows).0.into_iter().map(RationalVector).collect()
}
