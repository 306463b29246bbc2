//! Exact feasibility of `A x = b, x >= 0` by the phase-one simplex method
//! over arbitrary-precision rationals, with Bland's rule for termination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A nonnegative solution of `A x = b`, if one exists. `a` is given by rows
/// and every row must have the same length. The solution is checked by
/// substitution before it is returned.
pub fn nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "one right-hand side per row");
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n), "rectangular matrix");

    // Columns 0..n are structural, n..n+m artificial, n+m the right-hand side.
    let width = n + m + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[n + i] = Rational::one();
        t[n + m] = if flip { -rhs.clone() } else { rhs.clone() };
        rows.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Rational::zero(); width];
    for row in &rows {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[n + m] -= &row[n + m];
    }

    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[n + m] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.expect("phase-one objective is bounded below by zero");
        pivot(&mut rows, &mut cost, p, enter);
        basis[p] = enter;
    }

    if !cost[n + m].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rows[i][n + m].clone();
        }
    }
    assert!(satisfies(a, b, &x), "simplex returned a point that fails substitution");
    Some(x)
}

fn pivot(rows: &mut [Vec<Rational>], cost: &mut [Rational], p: usize, q: usize) {
    let inv = rows[p][q].recip();
    for v in rows[p].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = rows[p].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i != p && !row[q].is_zero() {
            let factor = row[q].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
    }
    if !cost[q].is_zero() {
        let factor = cost[q].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &factor * pv;
            }
        }
    }
}

/// Whether `x >= 0` and `A x = b`.
pub fn satisfies(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, rhs)| {
            let lhs: Rational = row.iter().zip(x).map(|(c, v)| c * v).sum();
            lhs == *rhs
        })
}
