//! Exact linear programming over ℚ.

use num_traits::{One, Signed, Zero};

use crate::polyforms::Rational;

/// Maximizes `c·x` subject to `A x ≤ b`, `x ≥ 0`, for `b ≥ 0`.
///
/// The origin is feasible, so no phase one is needed. Returns the optimal
/// value and point, or `None` when unbounded. Pivots follow Bland's rule.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|v| !v.is_negative()));
    // tableau columns: n originals, m slacks, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rational::one();
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    let mut obj: Vec<Rational> = c.iter().map(|v| -v.clone()).collect();
    obj.resize(width, Rational::zero());
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(col) = (0..width - 1).find(|&j| obj[j].is_negative()) {
        let mut best: Option<(Rational, usize)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[width - 1] / &row[col];
                let better = match &best {
                    None => true,
                    Some((r, bi)) => ratio < *r || (ratio == *r && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        let (_, r) = best?;
        let piv = t[r][col].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        if !obj[col].is_zero() {
            let f = obj[col].clone();
            for (v, p) in obj.iter_mut().zip(&prow) {
                *v = &*v - &(&f * p);
            }
        }
        basis[r] = col;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some((obj[width - 1].clone(), x))
}

/// Solves a square system exactly; `None` when singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let piv = a[col][col].clone();
        let prow = a[col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &piv;
                for (v, p) in a[r].iter_mut().zip(&prow).skip(col) {
                    *v = &*v - &(&f * p);
                }
                let v = &f * &b[col];
                b[r] = &b[r] - &v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
