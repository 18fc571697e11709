//! Exact feasibility test for `A x = b, x >= 0` over the rationals
//! (phase one of the simplex method with Bland's rule).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn feasible(a: &[Vec<i64>], b: &[i64]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));

    // Tableau over variables x (n) and artificials (m); rows normalised to b >= 0.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let sign = if b[i] < 0 { -1 } else { 1 };
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = q(sign * a[i][j]);
        }
        row[n + i] = BigRational::one();
        row[width - 1] = q(sign * b[i]);
        t.push(row);
    }
    // Objective: minimise the sum of artificials, stored as reduced costs.
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let best = &t[l][width - 1] / &t[l][enter];
                        ratio < best || (ratio == best && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else {
            // unbounded direction cannot happen for a bounded-below objective
            break;
        };
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
        basis[r] = enter;
    }
    obj[width - 1].is_zero()
}
