//! Exact feasibility for convex-hull membership (phase-one simplex over the rationals).

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Whether `x` is a convex combination of `points`. All vectors share one length.
#[allow(clippy::needless_range_loop)]
pub fn in_convex_hull(points: &[Vec<Rational>], x: &[Rational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = x.len();
    let k = points.len();
    let m = n + 1;
    // rows: coordinates, then the affine row sum(l) = 1
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut b: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..n {
        a.push(points.iter().map(|p| p[i]).collect());
        b.push(x[i]);
    }
    a.push(vec![Rational::from_integer(1); k]);
    b.push(Rational::from_integer(1));
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i];
            for v in a[i].iter_mut() {
                *v = -*v;
            }
        }
    }
    // tableau columns: k structural, m artificial
    let cols = k + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| Rational::from_integer((i == j) as i64)));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..cols).collect();
    let mut cost: Vec<Rational> = (0..cols)
        .map(|j| {
            if j < k {
                -(0..m).map(|i| t[i][j]).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut value: Rational = b.iter().sum();

    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter] > Rational::zero() {
                let ratio = b[i] / t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so an entering column always has a pivot row
        let Some((r, _)) = leave else { break };
        let piv = t[r][enter];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        b[r] /= piv;
        for i in 0..m {
            if i != r && !t[i][enter].is_zero() {
                let f = t[i][enter];
                for j in 0..cols {
                    let d = f * t[r][j];
                    t[i][j] -= d;
                }
                let d = f * b[r];
                b[i] -= d;
            }
        }
        let f = cost[enter];
        for j in 0..cols {
            let d = f * t[r][j];
            cost[j] -= d;
        }
        value += f * b[r];
        basis[r] = enter;
    }
    value.is_zero()
}
