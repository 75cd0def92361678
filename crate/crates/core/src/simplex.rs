//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `maximize c·x  s.t.  A x = b, x >= 0`. Phase one minimises the sum
//! of one artificial variable per row; when that optimum is positive the
//! phase-one duals give a Farkas certificate `f` with `f·A_j >= 0` for every
//! column and `f·b < 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible { farkas: Vec<Rational> },
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
}

struct Tableau {
    /// `m` rows of `n + m + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, with `-z` in the last entry.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    n: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the columns accepted by `allowed`. Returns
    /// false when the objective is unbounded below.
    fn optimise(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(enter) = (0..rhs).find(|&j| allowed(j) && self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational], objective: Option<&[Rational]>) -> LpOutcome {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == m);
    let width = n + m + 1;

    let mut sign = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    for (i, (ar, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        if flip {
            sign[i] = -Rational::one();
        }
        let mut row = Vec::with_capacity(width);
        row.extend(ar.iter().map(|v| if flip { -v } else { v.clone() }));
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(if flip { -bi } else { bi.clone() });
        rows.push(row);
    }
    let mut cost = vec![Rational::zero(); width];
    for j in (0..n).chain(core::iter::once(width - 1)) {
        cost[j] = -rows.iter().map(|r| &r[j]).sum::<Rational>();
    }
    let mut t = Tableau { rows, cost, basis: (n..n + m).collect(), n };

    let bounded = t.optimise(|_| true);
    debug_assert!(bounded, "phase one is bounded below by zero");
    let rhs = width - 1;
    if !t.cost[rhs].is_zero() {
        // cost[rhs] = -w with w > 0; duals y_k = 1 - d_{n+k}.
        let farkas = (0..m).map(|k| -(&sign[k] * (Rational::one() - &t.cost[n + k]))).collect();
        return LpOutcome::Infeasible { farkas };
    }

    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    let value = match objective {
        None => Rational::zero(),
        Some(c) => {
            let cost_of = |j: usize| if j < n { -&c[j] } else { Rational::zero() };
            let mut reduced = vec![Rational::zero(); width];
            for (j, d) in reduced.iter_mut().enumerate() {
                let base = if j == rhs { Rational::zero() } else { cost_of(j) };
                let dot: Rational = t
                    .rows
                    .iter()
                    .zip(&t.basis)
                    .filter(|(row, _)| !row[j].is_zero())
                    .map(|(row, &bj)| cost_of(bj) * &row[j])
                    .sum();
                *d = base - dot;
            }
            t.cost = reduced;
            let n = t.n;
            if !t.optimise(|j| j < n) {
                return LpOutcome::Unbounded;
            }
            Rational::zero()
        }
    };

    let mut x = vec![Rational::zero(); n];
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        if bj < n {
            x[bj] = row[rhs].clone();
        }
    }
    let value = match objective {
        Some(c) => c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum(),
        None => value,
    };
    LpOutcome::Optimal { x, value }
}
