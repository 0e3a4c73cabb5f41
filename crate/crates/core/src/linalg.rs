//! Exact Gaussian elimination over a field.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<F> {
    pub solution: Vec<F>,
    pub rank: usize,
    /// Number of equations left after removing exact duplicates.
    pub distinct_rows: usize,
}

fn dedup_rows<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Vec<(Vec<F>, F)> {
    let mut out: Vec<(Vec<F>, F)> = Vec::new();
    for (r, b) in rows.iter().zip(rhs) {
        if !out.iter().any(|(q, c)| q == r && c == b) {
            out.push((r.clone(), b.clone()));
        }
    }
    out
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// columns, considering only the first `cols` columns for pivots.
fn reduce<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..m[r].len() {
                    let sub = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    reduce(&mut m, cols).len()
}

/// Solves `rows · x = rhs` exactly, requiring a consistent system with a
/// unique solution.
pub fn solve_unique<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Result<LinearSolution<F>> {
    if rows.len() != rhs.len() {
        return Err(Error::Dimension { expected: rows.len(), found: rhs.len() });
    }
    let unknowns = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != unknowns) {
        return Err(Error::Dimension { expected: unknowns, found: bad.len() });
    }
    let distinct = dedup_rows(rows, rhs);
    let mut m: Vec<Vec<F>> = distinct
        .iter()
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = reduce(&mut m, unknowns);
    if let Some(r) = m[pivots.len()..].iter().position(|row| !row[unknowns].is_zero()) {
        return Err(Error::Inconsistent(format!(
            "after elimination row {} reads 0 = {}",
            pivots.len() + r + 1,
            m[pivots.len() + r][unknowns]
        )));
    }
    if pivots.len() < unknowns {
        return Err(Error::Degenerate { rank: pivots.len(), unknowns });
    }
    let solution = (0..unknowns).map(|k| m[k][unknowns].clone()).collect();
    Ok(LinearSolution { solution, rank: pivots.len(), distinct_rows: distinct.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = rows(&[&[2, 1], &[1, 3], &[2, 1]]);
        let b = vec![q(3), q(5), q(3)];
        let s = solve_unique(&a, &b).unwrap();
        assert_eq!(s.solution, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
        assert_eq!((s.rank, s.distinct_rows), (2, 2));
    }

    #[test]
    fn detects_inconsistency_and_degeneracy() {
        let a = rows(&[&[1, 1], &[2, 2]]);
        assert!(matches!(solve_unique(&a, &[q(1), q(3)]), Err(Error::Inconsistent(_))));
        assert_eq!(solve_unique(&a, &[q(1), q(2)]), Err(Error::Degenerate { rank: 1, unknowns: 2 }));
        assert!(solve_unique(&a, &[q(1)]).is_err());
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&rows(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn works_over_small_rationals() {
        use num_rational::Ratio;
        let a: Vec<Vec<Ratio<i64>>> = vec![vec![Ratio::from(1), Ratio::from(2)], vec![Ratio::from(3), Ratio::from(4)]];
        let s = solve_unique(&a, &[Ratio::from(5), Ratio::from(6)]).unwrap();
        assert_eq!(s.solution, vec![Ratio::from(-4), Ratio::new(9, 2)]);
    }
}
