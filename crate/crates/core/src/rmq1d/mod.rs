//! One-dimensional structures: Cartesian trees, the general and the
//! bounded-alphabet RMQ encodings, the prefix (1-sided) encoding and the
//! binary-array structure.

mod auto;
mod binary;
mod bounded;
mod cartesian;
mod general;
mod onesided;
pub mod shapes;

pub use auto::{Rmq1DAuto, SMALL_SIGMA};
pub use binary::BinaryRmq;
pub use bounded::{default_block_size, Rmq1DBounded};
pub use cartesian::{cartesian_tree, left_height, Tree, TreeShape};
pub use general::Rmq1DGeneral;
pub use onesided::OneSided1D;

use crate::error::{Error, Result};

/// Range-minimum over a 1D sequence, leftmost position on ties.
pub trait Rmq1D {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Leftmost minimum in `[i, j]` for `1 <= i <= j <= len()`.
    fn rmq_unchecked(&self, i: usize, j: usize) -> usize;

    fn query(&self, i: usize, j: usize) -> Result<usize> {
        check_range(i, j, self.len())?;
        Ok(self.rmq_unchecked(i, j))
    }
}

pub(crate) fn check_range(i: usize, j: usize, n: usize) -> Result<()> {
    if i > j {
        return Err(Error::RangeInverted { lo: i, hi: j });
    }
    if i == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            index: if i == 0 { 0 } else { j },
            len: n,
        });
    }
    Ok(())
}

pub(crate) fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    Ok(())
}
