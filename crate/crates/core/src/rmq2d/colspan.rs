use super::{require_policy, values_u64};
use crate::bitseq::PackedArray;
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::Result;
use crate::model::{Array2D, Pos2D, Symbol, TieBreakPolicy};
use crate::rmq1d::{check_range, Rmq1D, Rmq1DAuto};
use crate::space::SpaceNode;

/// Column-span encoding `[1,m] x [j1,j2]` (leftmost-column answers).
///
/// `W_1` holds the column minima behind a 1D RMQ; `W_2` holds the topmost
/// row of each column minimum, packed over base `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColSpan2D {
    m: usize,
    w1: Rmq1DAuto,
    w2: PackedArray,
}

impl ColSpan2D {
    pub const POLICIES: [TieBreakPolicy; 1] = [TieBreakPolicy::ColMajor];

    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        require_policy("colspan", policy, &Self::POLICIES)?;
        let (w1, w2) = Self::columns(a);
        let w2: Vec<u64> = w2.into_iter().map(|r| r - 1).collect();
        Ok(ColSpan2D {
            m: a.m(),
            w1: Rmq1DAuto::new(&w1, a.sigma())?,
            w2: PackedArray::new(&w2, a.m().max(2) as u64)?,
        })
    }

    /// Column minima and their topmost rows (`W_1`, `W_2`).
    pub fn columns<S: Symbol>(a: &Array2D<S>) -> (Vec<u64>, Vec<u64>) {
        let g = values_u64(a);
        (1..=a.n())
            .map(|j| {
                let mut best = (g.get(1, j), 1u64);
                for i in 2..=a.m() {
                    if g.get(i, j) < best.0 {
                        best = (g.get(i, j), i as u64);
                    }
                }
                best
            })
            .unzip()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.w1.len())
    }

    #[inline]
    pub fn query_unchecked(&self, j1: usize, j2: usize) -> Pos2D {
        let col = self.w1.rmq_unchecked(j1, j2);
        Pos2D::new(self.w2.get(col) as usize + 1, col)
    }

    pub fn query(&self, j1: usize, j2: usize) -> Result<Pos2D> {
        check_range(j1, j2, self.w1.len())?;
        Ok(self.query_unchecked(j1, j2))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(name, vec![self.w1.space("W_1"), self.w2.space("W_2")])
    }

    pub fn derived_space(&self) -> Option<SpaceNode> {
        self.w1.derived_space()
    }
}

impl Codec for ColSpan2D {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        self.w1.encode(w);
        self.w2.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let w1 = Rmq1DAuto::decode(r)?;
        let w2 = PackedArray::decode(r)?;
        expect(
            m >= 1 && w1.len() == w2.len() && w2.base() == m.max(2) as u64,
            "column-span layout mismatch",
        )?;
        Ok(ColSpan2D { m, w1, w2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn examples() {
        let a = Array2D::from_rows(vec![vec![2u32, 1], vec![0, 3]], 4).unwrap();
        assert_eq!(ColSpan2D::columns(&a), (vec![0, 1], vec![2, 1]));
        let s = ColSpan2D::new(&a, TieBreakPolicy::ColMajor).unwrap();
        assert_eq!(s.query(1, 2), Ok(Pos2D::new(2, 1)));
        assert_eq!(s.query(2, 2), Ok(Pos2D::new(1, 2)));
        assert!(matches!(
            ColSpan2D::new(&a, TieBreakPolicy::RowMajor),
            Err(Error::UnsupportedPolicy { .. })
        ));
        let col = Array2D::from_rows(vec![vec![3u32], vec![1], vec![1]], 4).unwrap();
        let s = ColSpan2D::new(&col, TieBreakPolicy::ColMajor).unwrap();
        assert_eq!(s.query(1, 1), Ok(Pos2D::new(2, 1)));
    }
}
