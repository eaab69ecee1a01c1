use super::{check_cell, require_policy, values_u64};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::Result;
use crate::model::{Array2D, Pos2D, Symbol, TieBreakPolicy};
use crate::rmq1d::{check_range, Rmq1D, Rmq1DGeneral};
use crate::space::SpaceNode;

/// 2-sided encoding for unbounded alphabets (leftmost-column answers).
///
/// `A_i[j]` is the minimum of column `j` over rows `1..=i`. The answer
/// column is the leftmost minimum of `A_i[1..=j]`, and the answer row the
/// topmost minimum of that column over rows `1..=i`. All `A_i` share one
/// general structure over their concatenation, and all columns another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedGeneral {
    m: usize,
    n: usize,
    rows: Rmq1DGeneral,
    cols: Rmq1DGeneral,
}

impl TwoSidedGeneral {
    pub const POLICIES: [TieBreakPolicy; 1] = [TieBreakPolicy::ColMajor];

    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        require_policy("twosided_general", policy, &Self::POLICIES)?;
        let g = values_u64(a);
        let (m, n) = (a.m(), a.n());
        let mut prefix = Vec::with_capacity(m * n);
        let mut cur: Vec<u64> = g.row(1).to_vec();
        prefix.extend_from_slice(&cur);
        for i in 2..=m {
            for (c, &v) in cur.iter_mut().zip(g.row(i)) {
                *c = (*c).min(v);
            }
            prefix.extend_from_slice(&cur);
        }
        let columns: Vec<u64> = (1..=n).flat_map(|j| g.column(j)).collect();
        Ok(TwoSidedGeneral {
            m,
            n,
            rows: Rmq1DGeneral::new(&prefix)?,
            cols: Rmq1DGeneral::new(&columns)?,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Answer of `[1,i] x [j1,j2]`.
    #[inline]
    pub fn three_sided_unchecked(&self, i: usize, j1: usize, j2: usize) -> Pos2D {
        let base = (i - 1) * self.n;
        let col = self.rows.rmq_unchecked(base + j1, base + j2) - base;
        let cbase = (col - 1) * self.m;
        let row = self.cols.rmq_unchecked(cbase + 1, cbase + i) - cbase;
        Pos2D::new(row, col)
    }

    #[inline]
    pub fn query_unchecked(&self, i: usize, j: usize) -> Pos2D {
        self.three_sided_unchecked(i, 1, j)
    }

    pub fn query(&self, i: usize, j: usize) -> Result<Pos2D> {
        check_cell(i, j, self.m, self.n)?;
        Ok(self.query_unchecked(i, j))
    }

    pub fn query_three_sided(&self, i: usize, j1: usize, j2: usize) -> Result<Pos2D> {
        check_range(j1, j2, self.n)?;
        check_cell(i, j2, self.m, self.n)?;
        Ok(self.three_sided_unchecked(i, j1, j2))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![self.rows.space("prefix_rows"), self.cols.space("columns")],
        )
    }
}

impl Codec for TwoSidedGeneral {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        w.usize(self.n);
        self.rows.encode(w);
        self.cols.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let n = r.usize()?;
        let rows = Rmq1DGeneral::decode(r)?;
        let cols = Rmq1DGeneral::decode(r)?;
        expect(
            rows.len() == m * n && cols.len() == m * n,
            "two-sided layout mismatch",
        )?;
        Ok(TwoSidedGeneral { m, n, rows, cols })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn examples() {
        let a = Array2D::from_rows(vec![vec![1u32, 0], vec![0, 0]], 2).unwrap();
        let s = TwoSidedGeneral::new(&a, TieBreakPolicy::ColMajor).unwrap();
        assert_eq!(s.query(2, 2), Ok(Pos2D::new(2, 1)));
        assert_eq!(s.query(1, 2), Ok(Pos2D::new(1, 2)));
        assert_eq!(s.query(1, 1), Ok(Pos2D::new(1, 1)));
        assert_eq!(s.query_three_sided(2, 2, 2), Ok(Pos2D::new(1, 2)));
        assert!(matches!(
            TwoSidedGeneral::new(&a, TieBreakPolicy::RowMajor),
            Err(Error::UnsupportedPolicy { .. })
        ));
    }
}
