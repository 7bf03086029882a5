//! Exact linear programming over the rationals.
//!
//! A small two-phase simplex with Bland's rule, used for interior-point
//! certificates (grading covectors), nonnegative-combination certificates
//! (semi-Fano checks), proper-intersection tests during fan validation, and
//! bounding boxes for lattice enumeration. Problem sizes here are tiny, so
//! clarity wins over sparse cleverness.

use crate::error::{Error, Result};
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// `sum_j coeffs[j] x_j  (cmp)  rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub cmp: Cmp,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        objective: BigRational,
        solution: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

/// Maximize `objective . x` subject to `constraints`, all variables
/// implicitly `x_j >= 0`. Free variables must be split by the caller.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> Result<LpOutcome> {
    let n = objective.len();
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(Error::LinearProgram(format!(
                "constraint arity {} != {} variables",
                c.coeffs.len(),
                n
            )));
        }
    }

    // Standard form: A x + slack = b with b >= 0.
    let m = constraints.len();
    let mut slack_count = 0usize;
    for c in constraints {
        if matches!(c.cmp, Cmp::Le | Cmp::Ge) {
            slack_count += 1;
        }
    }
    let total = n + slack_count;
    let mut a = vec![vec![BigRational::zero(); total]; m];
    let mut b = vec![BigRational::zero(); m];
    let mut slack_idx = n;
    for (i, c) in constraints.iter().enumerate() {
        let flip = c.rhs.is_negative();
        let sign = if flip {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        for j in 0..n {
            a[i][j] = &sign * &c.coeffs[j];
        }
        b[i] = &sign * &c.rhs;
        let effective = match (&c.cmp, flip) {
            (Cmp::Eq, _) => Cmp::Eq,
            (Cmp::Le, false) | (Cmp::Ge, true) => Cmp::Le,
            (Cmp::Ge, false) | (Cmp::Le, true) => Cmp::Ge,
        };
        match effective {
            Cmp::Le => {
                a[i][slack_idx] = BigRational::one();
                slack_idx += 1;
            }
            Cmp::Ge => {
                a[i][slack_idx] = -BigRational::one();
                slack_idx += 1;
            }
            Cmp::Eq => {}
        }
    }

    // Phase 1: artificial variables, minimize their sum.
    let art_start = total;
    let width = total + m;
    let mut tableau = vec![vec![BigRational::zero(); width + 1]; m];
    let mut basis = vec![0usize; m];
    for i in 0..m {
        for j in 0..total {
            tableau[i][j] = a[i][j].clone();
        }
        tableau[i][art_start + i] = BigRational::one();
        tableau[i][width] = b[i].clone();
        basis[i] = art_start + i;
    }
    let phase1_cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j >= art_start {
                -BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let val = run_simplex(&mut tableau, &mut basis, &phase1_cost, width)?;
    if !val.is_zero() {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive remaining artificial variables out of the basis when possible.
    for i in 0..m {
        if basis[i] >= art_start {
            if let Some(j) = (0..total).find(|&j| !tableau[i][j].is_zero()) {
                pivot(&mut tableau, &mut basis, i, j);
            }
            // else: redundant row, harmless
        }
    }

    // Phase 2 on the original objective.
    let phase2_cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if j < n {
                objective[j].clone()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    // Forbid artificial columns from re-entering: zero them out.
    for row in tableau.iter_mut() {
        for j in art_start..width {
            row[j] = BigRational::zero();
        }
    }
    match run_simplex_opt(&mut tableau, &mut basis, &phase2_cost, art_start)? {
        None => Ok(LpOutcome::Unbounded),
        Some(_) => {
            let mut x = vec![BigRational::zero(); n];
            for (i, &bj) in basis.iter().enumerate() {
                if bj < n {
                    x[bj] = tableau[i][width].clone();
                }
            }
            let objective_value = objective
                .iter()
                .zip(&x)
                .map(|(c, v)| c * v)
                .fold(BigRational::zero(), |acc, t| acc + t);
            Ok(LpOutcome::Optimal {
                objective: objective_value,
                solution: x,
            })
        }
    }
}

/// Simplex loop, maximizing `cost`; returns the objective value. Used for
/// phase 1 where unboundedness is impossible.
fn run_simplex(
    tableau: &mut [Vec<BigRational>],
    basis: &mut [usize],
    cost: &[BigRational],
    ncols: usize,
) -> Result<BigRational> {
    match run_simplex_opt(tableau, basis, cost, ncols)? {
        Some(v) => Ok(v),
        None => Err(Error::LinearProgram(
            "phase-1 problem unbounded (internal error)".into(),
        )),
    }
}

/// Returns `None` on unboundedness. Bland's rule guarantees termination.
fn run_simplex_opt(
    tableau: &mut [Vec<BigRational>],
    basis: &mut [usize],
    cost: &[BigRational],
    ncols: usize,
) -> Result<Option<BigRational>> {
    let m = tableau.len();
    let width = tableau.first().map_or(0, |r| r.len() - 1);
    loop {
        // reduced costs: c_j - c_B . B^{-1} A_j
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j].clone();
            for i in 0..m {
                if !tableau[i][j].is_zero() {
                    rc -= &cost[basis[i]] * &tableau[i][j];
                }
            }
            if rc.is_positive() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else {
            let mut obj = BigRational::zero();
            for i in 0..m {
                obj += &cost[basis[i]] * &tableau[i][width];
            }
            return Ok(Some(obj));
        };
        // ratio test, Bland tie-break on basis index
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tableau[i][j].is_positive() {
                let ratio = &tableau[i][width] / &tableau[i][j];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leave else {
            return Ok(None);
        };
        pivot(tableau, basis, i, j);
    }
}

fn pivot(tableau: &mut [Vec<BigRational>], basis: &mut [usize], row: usize, col: usize) {
    let m = tableau.len();
    let inv = tableau[row][col].recip();
    for x in tableau[row].iter_mut() {
        *x = &*x * &inv;
    }
    for i in 0..m {
        if i != row && !tableau[i][col].is_zero() {
            let f = tableau[i][col].clone();
            for j in 0..tableau[i].len() {
                let sub = &f * &tableau[row][j];
                tableau[i][j] -= sub;
            }
        }
    }
    basis[row] = col;
}

/// Feasibility of `A x = b, x >= 0`; returns a witness when feasible.
pub fn nonnegative_solution(
    a_rows: &[Vec<BigRational>],
    b: &[BigRational],
) -> Result<Option<Vec<BigRational>>> {
    let n = a_rows.first().map_or(0, Vec::len);
    let constraints: Vec<Constraint> = a_rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| Constraint {
            coeffs: row.clone(),
            cmp: Cmp::Eq,
            rhs: rhs.clone(),
        })
        .collect();
    let objective = vec![BigRational::zero(); n];
    match maximize(&objective, &constraints)? {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::LinearProgram(
            "feasibility problem reported unbounded".into(),
        )),
    }
}

/// Strictly positive solution of `A x = b` maximizing the minimum
/// coordinate, capped at 1. Returns `(x, margin)`; positivity holds iff
/// `margin > 0`.
pub fn positive_solution(
    a_rows: &[Vec<BigRational>],
    b: &[BigRational],
) -> Result<Option<(Vec<BigRational>, BigRational)>> {
    // variables: x_0..x_{n-1}, s; maximize s with x_j - s >= 0.
    let n = a_rows.first().map_or(0, Vec::len);
    let mut constraints: Vec<Constraint> = a_rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut coeffs = row.clone();
            coeffs.push(BigRational::zero());
            Constraint {
                coeffs,
                cmp: Cmp::Eq,
                rhs: rhs.clone(),
            }
        })
        .collect();
    for j in 0..n {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[j] = BigRational::one();
        coeffs[n] = -BigRational::one();
        constraints.push(Constraint {
            coeffs,
            cmp: Cmp::Ge,
            rhs: BigRational::zero(),
        });
    }
    let mut cap = vec![BigRational::zero(); n + 1];
    cap[n] = BigRational::one();
    constraints.push(Constraint {
        coeffs: cap.clone(),
        cmp: Cmp::Le,
        rhs: BigRational::one(),
    });
    match maximize(&cap, &constraints)? {
        LpOutcome::Optimal {
            objective,
            mut solution,
        } => {
            solution.truncate(n);
            Ok(Some((solution, objective)))
        }
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::LinearProgram(
            "capped problem reported unbounded".into(),
        )),
    }
}
