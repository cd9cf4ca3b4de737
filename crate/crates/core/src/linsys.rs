//! Exact affine solving over the rationals.
//!
//! Gauss-Jordan elimination with the first nonzero entry in each column as
//! pivot, so the reduced form, the particular solution and the kernel basis
//! are all deterministic functions of the input. Inconsistent systems are
//! reported as `None` rather than by any numerical tolerance: a row is
//! contradictory exactly when its coefficients are all zero and its right
//! hand side is not.

use crate::polyring::Rat;
use num_traits::{One, Zero};

/// Solution set of `A x = b` written as `particular + span(kernel)`.
///
/// The kernel basis has one vector per free column, ordered by column index;
/// each basis vector carries a 1 in its free coordinate. The particular
/// solution sets every free coordinate to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Solves `A x = b` exactly. Returns `None` when the system is
/// inconsistent. `matrix` is row-major; every row must have `b.len()`
/// matching and equal column counts.
pub fn solve_rational(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Option<AffineSolution> {
    assert_eq!(matrix.len(), rhs.len(), "one right-hand side entry per row");
    let ncols = matrix.first().map_or(0, Vec::len);
    for row in matrix {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }

    // augmented working copy
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let mut b: Vec<Rat> = rhs.to_vec();
    let nrows = a.len();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, src);
        b.swap(pivot_row, src);
        let inv = a[pivot_row][col].recip();
        for entry in &mut a[pivot_row] {
            *entry = &*entry * &inv;
        }
        b[pivot_row] = &b[pivot_row] * &inv;
        for r in 0..nrows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..ncols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] = &a[r][c] - &delta;
            }
            let delta = &factor * &b[pivot_row];
            b[r] = &b[r] - &delta;
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }

    // inconsistency: zero row with nonzero right-hand side
    for r in pivot_row..nrows {
        if !b[r].is_zero() {
            return None;
        }
    }

    let free_cols: Vec<usize> =
        (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();

    let mut particular = vec![Rat::zero(); ncols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = b[r].clone();
    }

    let mut kernel = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); ncols];
        v[fc] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[r][fc].clone();
        }
        kernel.push(v);
    }

    Some(AffineSolution { particular, kernel })
}
