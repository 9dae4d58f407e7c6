//! Dense exact-rational simplex for `max c·x  s.t.  A x <= b, x >= 0` with
//! `b >= 0`, so the slack basis is a feasible start and no phase one is
//! needed. Bland's rule picks both the entering and the leaving variable,
//! which rules out cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Vec<Rational>>,
    pub bounds: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint; optimal for the dual `min b·y, Aᵀy >= c, y >= 0`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

impl LinearProgram {
    /// `max Σx  s.t.  Σ_{j in row} x_j <= 1` for each row.
    pub fn packing(rows: &[Vec<usize>], num_cols: usize) -> Self {
        let constraints = rows
            .iter()
            .map(|row| {
                let mut coeffs = vec![Rational::zero(); num_cols];
                for &j in row {
                    coeffs[j] = rational::int(1);
                }
                coeffs
            })
            .collect();
        LinearProgram {
            objective: vec![rational::int(1); num_cols],
            constraints,
            bounds: vec![rational::int(1); rows.len()],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.constraints.len() != self.bounds.len() {
            return Err(Error::LengthMismatch {
                expected: self.constraints.len(),
                got: self.bounds.len(),
            });
        }
        if let Some(row) = self.constraints.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if self.bounds.iter().any(|b| b.is_negative()) {
            return Err(Error::InvalidParams(
                "right-hand sides must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    pub fn maximize(&self) -> Result<LpSolution> {
        self.validate()?;
        let n = self.num_vars();
        let m = self.num_constraints();
        let width = n + m;
        let mut rows: Vec<Vec<Rational>> = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, coeffs)| {
                let mut row = coeffs.clone();
                row.resize(width, Rational::zero());
                row[n + i] = rational::int(1);
                row
            })
            .collect();
        let mut rhs = self.bounds.clone();
        let mut basis: Vec<usize> = (n..width).collect();
        // Reduced costs z_j - c_j; optimal once none is negative.
        let mut reduced: Vec<Rational> = self.objective.iter().map(|c| -c).collect();
        reduced.resize(width, Rational::zero());
        let mut value = Rational::zero();
        let mut pivots = 0usize;

        while let Some(enter) = reduced.iter().position(|d| d.is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                if !rows[i][enter].is_positive() {
                    continue;
                }
                let ratio = &rhs[i] / &rows[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (p, _) = leave.ok_or(Error::UnboundedModel)?;
            pivot(&mut rows, &mut rhs, &mut reduced, &mut value, p, enter);
            basis[p] = enter;
            pivots += 1;
        }

        let mut primal = vec![Rational::zero(); n];
        for (i, &var) in basis.iter().enumerate() {
            if var < n {
                primal[var] = rhs[i].clone();
            }
        }
        let dual = reduced[n..].to_vec();
        Ok(LpSolution {
            value,
            primal,
            dual,
            pivots,
        })
    }

    /// Objective value of a point, or `None` if it violates a constraint.
    pub fn evaluate(&self, x: &[Rational]) -> Option<Rational> {
        if x.len() != self.num_vars() || x.iter().any(|v| v.is_negative()) {
            return None;
        }
        for (row, b) in self.constraints.iter().zip(&self.bounds) {
            if dot(row, x) > *b {
                return None;
            }
        }
        Some(dot(&self.objective, x))
    }

    /// Dual objective of `y`, or `None` if `y` is not dual feasible.
    pub fn evaluate_dual(&self, y: &[Rational]) -> Option<Rational> {
        if y.len() != self.num_constraints() || y.iter().any(|v| v.is_negative()) {
            return None;
        }
        for j in 0..self.num_vars() {
            let col: Rational = self
                .constraints
                .iter()
                .zip(y)
                .map(|(row, yi)| &row[j] * yi)
                .sum();
            if col < self.objective[j] {
                return None;
            }
        }
        Some(dot(&self.bounds, y))
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pivot(
    rows: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    reduced: &mut [Rational],
    value: &mut Rational,
    p: usize,
    enter: usize,
) {
    let inv = rows[p][enter].recip();
    for v in rows[p].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    rhs[p] *= &inv;
    let support: Vec<usize> = (0..rows[p].len())
        .filter(|&j| !rows[p][j].is_zero())
        .collect();
    let (pivot_row, pivot_rhs) = (rows[p].clone(), rhs[p].clone());
    for (i, row) in rows.iter_mut().enumerate() {
        if i == p || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for &j in &support {
            row[j] -= &f * &pivot_row[j];
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    if !reduced[enter].is_zero() {
        let f = reduced[enter].clone();
        for &j in &support {
            reduced[j] -= &f * &pivot_row[j];
        }
        *value -= &f * &pivot_rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let lp = LinearProgram {
            objective: vec![int(3), int(5)],
            constraints: vec![
                vec![int(1), int(0)],
                vec![int(0), int(2)],
                vec![int(3), int(2)],
            ],
            bounds: vec![int(4), int(12), int(18)],
        };
        let s = lp.maximize().unwrap();
        assert_eq!(s.value, int(36));
        assert_eq!(s.primal, vec![int(2), int(6)]);
        assert_eq!(lp.evaluate_dual(&s.dual), Some(int(36)));
        assert_eq!(s.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn packing_on_two_disjoint_edges() {
        // Rows are the four maximal independent sets of two disjoint edges.
        let rows = vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]];
        let lp = LinearProgram::packing(&rows, 4);
        let s = lp.maximize().unwrap();
        assert_eq!(s.value, int(2));
        assert_eq!(lp.evaluate(&s.primal), Some(int(2)));
        assert_eq!(lp.evaluate_dual(&s.dual), Some(int(2)));
    }

    #[test]
    fn five_cycle_is_fractional() {
        // Maximal independent sets of C5: {i, i+2}.
        let rows: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
        let lp = LinearProgram::packing(&rows, 5);
        let s = lp.maximize().unwrap();
        assert_eq!(s.value, ratio(5, 2));
    }

    #[test]
    fn unbounded_and_malformed() {
        let lp = LinearProgram {
            objective: vec![int(1)],
            constraints: vec![vec![int(-1)]],
            bounds: vec![int(1)],
        };
        assert_eq!(lp.maximize().unwrap_err(), Error::UnboundedModel);
        let bad = LinearProgram {
            objective: vec![int(1)],
            constraints: vec![vec![int(1)]],
            bounds: vec![int(-1)],
        };
        assert!(bad.maximize().is_err());
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example under the largest-coefficient rule.
        let lp = LinearProgram {
            objective: vec![ratio(3, 4), int(-150), ratio(1, 50), int(-6)],
            constraints: vec![
                vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
                vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
                vec![int(0), int(0), int(1), int(0)],
            ],
            bounds: vec![int(0), int(0), int(1)],
        };
        let s = lp.maximize().unwrap();
        assert_eq!(s.value, ratio(1, 20));
        assert_eq!(lp.evaluate_dual(&s.dual), Some(ratio(1, 20)));
    }
}
