//! Exact rational linear-program feasibility for small dense systems.
//!
//! Problem sizes here are tiny (a handful of rows, at most a few dozen
//! columns), so a dense phase-1 simplex over `BigRational` with Bland's
//! anticycling rule is both exact and fast. No floating point anywhere.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rational_uint(n: u64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Decides whether `{ x >= 0 : A x = b }` is nonempty, exactly.
///
/// Rows with negative right-hand side are negated first; one artificial
/// variable per row gives the identity starting basis, and feasibility
/// is equivalent to driving the artificial objective to zero.
pub fn equality_system_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return true;
    }
    let cols = a[0].len();

    // Tableau: structural columns, artificial columns, rhs.
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        let mut row: Vec<Rational> = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for j in 0..cols {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..rows {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // Objective: minimize the sum of artificials. Reduced-cost row is the
    // negated sum of the constraint rows on structural columns.
    let mut obj: Vec<Rational> = alloc::vec![Rational::zero(); width];
    for row in t.iter() {
        for j in 0..cols {
            obj[j] -= &row[j];
        }
        let rhs = row[width - 1].clone();
        obj[width - 1] -= rhs;
    }
    t.push(obj);

    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let entering = (0..cols + rows).find(|&j| t[rows][j].is_negative());
        let Some(enter) = entering else { break };

        // Ratio test, ties broken by lowest basis index (Bland).
        let mut pivot: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &pivot {
                    None => true,
                    Some((pi, pr)) => ratio < *pr || (ratio == *pr && basis[i] < basis[*pi]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let Some((prow, _)) = pivot else {
            // Unbounded phase-1 objective cannot happen; treat defensively
            // as infeasible-free exit.
            break;
        };

        // Pivot.
        let p = t[prow][enter].clone();
        for v in t[prow].iter_mut() {
            *v /= &p;
        }
        for i in 0..=rows {
            if i != prow && !t[i][enter].is_zero() {
                let factor = t[i][enter].clone();
                for j in 0..width {
                    let delta = &factor * &t[prow][j];
                    t[i][j] -= delta;
                }
            }
        }
        basis[prow] = enter;
    }

    // Feasible iff the artificial objective reached zero.
    t[rows][width - 1].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        rational_int(n)
    }

    #[test]
    fn trivial_systems() {
        assert!(equality_system_feasible(&[], &[]));
        // x = 1 with x >= 0.
        assert!(equality_system_feasible(&[alloc::vec![r(1)]], &[r(1)]));
        // x = -1 with x >= 0: infeasible.
        assert!(!equality_system_feasible(&[alloc::vec![r(1)]], &[r(-1)]));
    }

    #[test]
    fn two_variable_balance() {
        // x + y = 1, x - y = 0 -> x = y = 1/2.
        assert!(equality_system_feasible(
            &[alloc::vec![r(1), r(1)], alloc::vec![r(1), r(-1)]],
            &[r(1), r(0)],
        ));
        // x + y = 1, x + y = 2: inconsistent.
        assert!(!equality_system_feasible(
            &[alloc::vec![r(1), r(1)], alloc::vec![r(1), r(1)]],
            &[r(1), r(2)],
        ));
    }

    #[test]
    fn requires_nonnegativity() {
        // x - y = 5 with x, y >= 0 is feasible; x + y = -5 is not.
        assert!(equality_system_feasible(&[alloc::vec![r(1), r(-1)]], &[r(5)]));
        assert!(!equality_system_feasible(&[alloc::vec![r(1), r(1)]], &[r(-5)]));
    }
}
