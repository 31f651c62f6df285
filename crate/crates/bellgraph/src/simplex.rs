//! Dense two-phase simplex over exact rationals, with Bland's rule.
//!
//! Problem sizes here are tiny (at most a few thousand constraints), so a
//! dense tableau with `BigRational` pivots is both simple and certifiably
//! exact; no floating-point certification step is needed.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn le(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint {
            coeffs,
            rel: Relation::Eq,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        solution: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Maximizes `objective · x` subject to the constraints and `x ≥ 0`.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> Result<LpOutcome> {
    let n = objective.len();
    for c in constraints {
        if c.coeffs.len() != n {
            return Err(Error::Lp(format!(
                "constraint width {} != variable count {n}",
                c.coeffs.len()
            )));
        }
    }
    let m = constraints.len();
    if m == 0 {
        // only x ≥ 0: either the zero point is optimal or the LP is unbounded
        if objective.iter().any(|c| c.is_positive()) {
            return Ok(LpOutcome::Unbounded);
        }
        return Ok(LpOutcome::Optimal {
            value: BigRational::zero(),
            solution: vec![BigRational::zero(); n],
        });
    }

    // Layout: x (n) | slack (one per Le row) | artificial (as needed) | rhs.
    let slack_count = constraints
        .iter()
        .filter(|c| matches!(c.rel, Relation::Le))
        .count();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut slack_col = n;
    let mut needs_artificial = Vec::with_capacity(m);
    for c in constraints {
        let negate = c.rhs.is_negative();
        let sign = if negate { -BigRational::one() } else { BigRational::one() };
        let mut row = vec![BigRational::zero(); n + slack_count];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = a * &sign;
        }
        let mut basic_slack = false;
        if matches!(c.rel, Relation::Le) {
            row[slack_col] = sign.clone();
            basic_slack = !negate; // +1 slack can start in the basis
            slack_col += 1;
        }
        row.push(&c.rhs * &sign);
        rows.push(row);
        needs_artificial.push(!basic_slack);
    }

    let art_count = needs_artificial.iter().filter(|&&b| b).count();
    let total = n + slack_count + art_count;
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    let mut art_col = n + slack_count;
    let mut next_slack = n;
    for (r, mut row) in rows.into_iter().enumerate() {
        let rhs = row.pop().expect("row has rhs");
        row.resize(total, BigRational::zero());
        row.push(rhs);
        if needs_artificial[r] {
            row[art_col] = BigRational::one();
            basis[r] = art_col;
            art_col += 1;
        }
        tableau.push(row);
    }
    // identify slack basis columns for Le rows with nonnegative rhs
    for (r, c) in constraints.iter().enumerate() {
        if matches!(c.rel, Relation::Le) {
            if basis[r] == usize::MAX {
                basis[r] = next_slack;
            }
            next_slack += 1;
        }
    }
    debug_assert!(basis.iter().all(|&b| b != usize::MAX));

    // Phase 1: maximize −Σ artificials.
    if art_count > 0 {
        let mut obj = vec![BigRational::zero(); total + 1];
        for (r, row) in tableau.iter().enumerate() {
            if basis[r] >= n + slack_count {
                for j in 0..=total {
                    let v = row[j].clone();
                    obj[j] += v;
                }
            }
        }
        // artificial columns themselves must not re-enter
        for cell in obj.iter_mut().skip(n + slack_count).take(art_count) {
            *cell = BigRational::zero();
        }
        let banned = n + slack_count;
        if !run_simplex(&mut tableau, &mut basis, &mut obj, banned)? {
            return Ok(LpOutcome::Unbounded); // cannot happen: phase 1 is bounded
        }
        if !obj[total].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // pivot lingering artificials out of the basis (rows are degenerate)
        for r in 0..m {
            if basis[r] >= banned {
                if let Some(j) = (0..banned).find(|&j| !tableau[r][j].is_zero()) {
                    pivot(&mut tableau, &mut basis, &mut vec![BigRational::zero(); total + 1], r, j);
                }
            }
        }
    }

    // Phase 2.
    let banned = n + slack_count; // artificial columns stay out
    let mut obj = vec![BigRational::zero(); total + 1];
    for (j, c) in objective.iter().enumerate() {
        obj[j] = c.clone();
    }
    for r in 0..m {
        if basis[r] < banned && !obj[basis[r]].is_zero() {
            let factor = obj[basis[r]].clone();
            for j in 0..=total {
                let v = &tableau[r][j] * &factor;
                obj[j] -= v;
            }
        }
    }
    if !run_simplex(&mut tableau, &mut basis, &mut obj, banned)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut solution = vec![BigRational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            solution[b] = tableau[r][total].clone();
        }
    }
    // obj[total] holds −value after eliminations
    Ok(LpOutcome::Optimal {
        value: -obj[total].clone(),
        solution,
    })
}

/// Feasibility of `Ax {≤,=} b, x ≥ 0`: a point if one exists.
pub fn feasible_point(
    var_count: usize,
    constraints: &[Constraint],
) -> Result<Option<Vec<BigRational>>> {
    let zero_obj = vec![BigRational::zero(); var_count];
    match maximize(&zero_obj, constraints)? {
        LpOutcome::Optimal { solution, .. } => Ok(Some(solution)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Bland's rule iterations; returns false on unboundedness.
fn run_simplex(
    tableau: &mut Vec<Vec<BigRational>>,
    basis: &mut Vec<usize>,
    obj: &mut Vec<BigRational>,
    banned_from: usize,
) -> Result<bool> {
    let total = obj.len() - 1;
    loop {
        // entering: lowest-index improving column
        let entering = (0..total)
            .filter(|&j| j < banned_from || j >= total)
            .find(|&j| obj[j].is_positive());
        let Some(e) = entering else {
            return Ok(true);
        };
        // leaving: min ratio, ties by lowest basic variable index
        let mut best: Option<(BigRational, usize, usize)> = None; // (ratio, basic var, row)
        for (r, row) in tableau.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[total] / &row[e];
                let key = (ratio, basis[r], r);
                best = match best {
                    None => Some(key),
                    Some(prev) => {
                        if (key.0.clone(), key.1) < (prev.0.clone(), prev.1) {
                            Some(key)
                        } else {
                            Some(prev)
                        }
                    }
                };
            }
        }
        let Some((_, _, row)) = best else {
            return Ok(false);
        };
        pivot(tableau, basis, obj, row, e);
    }
}

fn pivot(
    tableau: &mut [Vec<BigRational>],
    basis: &mut [usize],
    obj: &mut [BigRational],
    r: usize,
    c: usize,
) {
    let total = tableau[r].len() - 1;
    let inv = tableau[r][c].recip();
    for j in 0..=total {
        tableau[r][j] *= &inv;
    }
    for r2 in 0..tableau.len() {
        if r2 != r && !tableau[r2][c].is_zero() {
            let factor = tableau[r2][c].clone();
            for j in 0..=total {
                let v = &tableau[r][j] * &factor;
                tableau[r2][j] -= v;
            }
        }
    }
    if !obj[c].is_zero() {
        let factor = obj[c].clone();
        for j in 0..=total {
            let v = &tableau[r][j] * &factor;
            obj[j] -= v;
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_max() {
        // max x + y st x + 2y <= 4, x <= 3
        let out = maximize(
            &[integer(1), integer(1)],
            &[
                Constraint::le(vec![integer(1), integer(2)], integer(4)),
                Constraint::le(vec![integer(1), integer(0)], integer(3)),
            ],
        )
        .unwrap();
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, rational(7, 2));
                assert_eq!(solution, vec![integer(3), rational(1, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_constraints() {
        // max x - y st x + y = 2
        let out = maximize(
            &[integer(1), integer(-1)],
            &[Constraint::eq(vec![integer(1), integer(1)], integer(2))],
        )
        .unwrap();
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, integer(2));
                assert_eq!(solution, vec![integer(2), integer(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x + y = -1 with x, y >= 0
        let out = maximize(
            &[integer(1), integer(0)],
            &[Constraint::eq(vec![integer(1), integer(1)], integer(-1))],
        )
        .unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let out = maximize(
            &[integer(1), integer(0)],
            &[Constraint::le(vec![integer(0), integer(1)], integer(5))],
        )
        .unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_le() {
        // -x <= -2  (i.e. x >= 2), max -x  => x = 2, value -2
        let out = maximize(
            &[integer(-1)],
            &[Constraint::le(vec![integer(-1)], integer(-2))],
        )
        .unwrap();
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, integer(-2));
                assert_eq!(solution, vec![integer(2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_fractional_packing() {
        // C5 edge constraints: alpha* = 5/2 at x_i = 1/2
        let mut constraints = Vec::new();
        for i in 0..5usize {
            let mut row = vec![integer(0); 5];
            row[i] = integer(1);
            row[(i + 1) % 5] = integer(1);
            constraints.push(Constraint::le(row, integer(1)));
        }
        let out = maximize(&vec![integer(1); 5], &constraints).unwrap();
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rational(5, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn feasibility_helper() {
        let p = feasible_point(
            2,
            &[Constraint::eq(vec![integer(1), integer(1)], integer(1))],
        )
        .unwrap();
        let p = p.unwrap();
        assert_eq!(&p[0] + &p[1], integer(1));
        let none = feasible_point(
            1,
            &[
                Constraint::le(vec![integer(1)], integer(1)),
                Constraint::eq(vec![integer(1)], integer(2)),
            ],
        )
        .unwrap();
        assert!(none.is_none());
    }
}
