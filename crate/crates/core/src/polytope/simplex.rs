//! Phase-1 simplex over exact rationals with Bland's rule.
//!
//! Decides whether `A x = b, x ≥ 0` has a solution by minimising the sum of
//! one artificial variable per row. An optimum of zero yields a feasible
//! `x`; a positive optimum comes with a Farkas vector `y` satisfying
//! `yᵀA ≤ 0` and `yᵀb > 0`.

use num_traits::{Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseOne {
    Feasible(Vec<Rational>),
    Infeasible {
        optimum: Rational,
        farkas: Vec<Rational>,
    },
}

/// Solves the phase-1 problem for `rows · x = rhs`, `x ≥ 0`. `num_vars` is
/// the number of columns (needed when there are no rows).
pub fn phase_one(rows: &[Vec<Rational>], rhs: &[Rational], num_vars: usize) -> PhaseOne {
    let m = rows.len();
    let n = num_vars;
    assert_eq!(rhs.len(), m, "one right-hand side per row");
    let width = n + m + 1;
    let last = n + m;

    let mut flipped = vec![false; m];
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        assert_eq!(row.len(), n, "row {i} has the wrong length");
        let sign = if b.is_negative() {
            flipped[i] = true;
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        };
        let mut t = vec![Rational::zero(); width];
        for (dst, a) in t.iter_mut().zip(row) {
            *dst = a * &sign;
        }
        t[n + i] = Rational::from_integer(1.into());
        t[last] = b * &sign;
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs; the last entry holds minus the objective value.
    let mut cost = vec![Rational::zero(); width];
    for t in &tableau {
        for j in 0..n {
            cost[j] -= &t[j];
        }
        cost[last] -= &t[last];
    }

    while let Some(enter) = (0..last).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tableau[i][enter].is_positive() {
                continue;
            }
            let ratio = &tableau[i][last] / &tableau[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-1 objective is bounded below by zero, so some row
        // always limits the step.
        let (r, _) = leave.expect("phase-1 problem is bounded");
        pivot(&mut tableau, &mut cost, r, enter);
        basis[r] = enter;
    }

    let optimum = -cost[last].clone();
    if optimum.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = tableau[i][last].clone();
            }
        }
        PhaseOne::Feasible(x)
    } else {
        // The artificial column of row i has cost 1, so y_i = 1 - reduced cost.
        let farkas = (0..m)
            .map(|i| {
                let y = Rational::from_integer(1.into()) - &cost[n + i];
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        PhaseOne::Infeasible { optimum, farkas }
    }
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, enter: usize) {
    let head = tableau[r][enter].clone();
    for entry in tableau[r].iter_mut() {
        if !entry.is_zero() {
            *entry /= &head;
        }
    }
    let pivot_row = tableau[r].clone();
    let eliminate = |row: &mut [Rational]| {
        if row[enter].is_zero() {
            return;
        }
        let factor = row[enter].clone();
        for (entry, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *entry -= &factor * p;
            }
        }
    };
    for (i, row) in tableau.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(cost);
}
