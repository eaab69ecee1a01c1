//! Two-dimensional encodings and their helper constructions.

mod colspan;
mod foursided;
mod onesided;
mod staircase;
mod threesided;
mod twosided;

pub use colspan::ColSpan2D;
pub use foursided::{default_side, FourSidedBlocked};
pub use onesided::OneSided2D;
pub use staircase::{path_bits, staircases, Staircase, TwoSidedStaircase};
pub use threesided::{ck_array, ThreeSidedCk};
pub use twosided::TwoSidedGeneral;

use crate::error::{Error, Result};
use crate::model::{Array2D, Candidate, Grid, Pos2D, Symbol, TieBreakPolicy};

/// Answers of every 2-sided query `[1,i] x [1,j]`, by the recurrence
/// `ans(i,j) = min{ans(i-1,j), ans(i,j-1), (A[i][j], (i,j))}`.
pub fn answers_dp<T: Ord + Copy>(grid: &Grid<T>, policy: TieBreakPolicy) -> Grid<Pos2D> {
    let (m, n) = (grid.rows(), grid.cols());
    let mut best: Vec<Candidate<T>> = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in 1..=n {
            let mut c = Candidate::new(grid.get(i, j), Pos2D::new(i, j));
            if i > 1 {
                let up = best[(i - 2) * n + j - 1];
                if up.cmp_under(&c, policy).is_lt() {
                    c = up;
                }
            }
            if j > 1 {
                let left = best[(i - 1) * n + j - 2];
                if left.cmp_under(&c, policy).is_lt() {
                    c = left;
                }
            }
            best.push(c);
        }
    }
    Grid::from_vec(m, n, best.into_iter().map(|c| c.pos).collect()).expect("dims match")
}

pub(crate) fn values_u64<S: Symbol>(a: &Array2D<S>) -> Grid<u64> {
    a.grid().map(|v| v.as_u64())
}

pub(crate) fn require_policy(
    structure: &'static str,
    policy: TieBreakPolicy,
    supported: &[TieBreakPolicy],
) -> Result<()> {
    if supported.contains(&policy) {
        Ok(())
    } else {
        Err(Error::UnsupportedPolicy { structure, policy })
    }
}

pub(crate) fn check_cell(i: usize, j: usize, m: usize, n: usize) -> Result<()> {
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, len: m });
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    Ok(())
}
