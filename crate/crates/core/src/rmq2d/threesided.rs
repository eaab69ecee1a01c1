use super::{check_cell, require_policy, values_u64};
use crate::bitseq::PackedArray;
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::Result;
use crate::model::{Array2D, Pos2D, Symbol, TieBreakPolicy};
use crate::rmq1d::{check_range, Rmq1D, Rmq1DGeneral};
use crate::space::SpaceNode;

/// `C_k` as literally defined: the topmost row holding `k` with only
/// larger values above it, `0` if every `k` has a smaller value above, and
/// `m+1` if the column has no `k`.
///
/// Kept for reference; its presence test is not monotone in `k`, so the
/// encoding below stores the cumulative variant instead.
pub fn ck_array<S: Symbol>(a: &Array2D<S>, k: u64) -> Vec<u64> {
    let m = a.m();
    (1..=a.n())
        .map(|j| {
            let col = a.column_values(j);
            match col.iter().position(|&v| v == k) {
                None => m as u64 + 1,
                Some(r) if col[..r].iter().all(|&v| v > k) => r as u64 + 1,
                Some(_) => 0,
            }
        })
        .collect()
}

/// 3-sided encoding `[1,i] x [j1,j2]` (topmost-row answers).
///
/// For every symbol `k`, `C_k[j]` is the topmost row of column `j` with a
/// value `<= k` (`m+1` if none). All `sigma` arrays are packed together and
/// share one general RMQ over the concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSidedCk {
    m: usize,
    n: usize,
    sigma: u64,
    c: PackedArray,
    rmq: Rmq1DGeneral,
}

impl ThreeSidedCk {
    pub const POLICIES: [TieBreakPolicy; 1] = [TieBreakPolicy::RowMajor];

    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        require_policy("threesided", policy, &Self::POLICIES)?;
        let g = values_u64(a);
        let (m, n, sigma) = (a.m(), a.n(), a.sigma());
        let none = m as u64 + 1;
        let mut flat = vec![none; sigma as usize * n];
        for j in 1..=n {
            let mut low = sigma;
            for i in 1..=m {
                let v = g.get(i, j);
                if v < low {
                    for k in v..low {
                        flat[k as usize * n + j - 1] = i as u64;
                    }
                    low = v;
                }
            }
        }
        Ok(ThreeSidedCk {
            m,
            n,
            sigma,
            c: PackedArray::new(&flat, m as u64 + 2)?,
            rmq: Rmq1DGeneral::new(&flat)?,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Cumulative `C_k` as stored.
    pub fn cumulative(&self, k: u64) -> Vec<u64> {
        let base = k as usize * self.n;
        (1..=self.n).map(|j| self.c.get(base + j)).collect()
    }

    #[inline]
    fn probe(&self, k: usize, j1: usize, j2: usize) -> (usize, u64) {
        let base = k * self.n;
        let at = self.rmq.rmq_unchecked(base + j1, base + j2);
        (at - base, self.c.get(at))
    }

    /// Answer plus the number of presence tests made.
    pub fn query_counted(&self, i: usize, j1: usize, j2: usize) -> (Pos2D, usize) {
        let (mut lo, mut hi) = (0usize, self.sigma as usize - 1);
        let mut tests = 0;
        while lo < hi {
            let mid = (lo + hi) / 2;
            tests += 1;
            if self.probe(mid, j1, j2).1 <= i as u64 {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let (col, row) = self.probe(lo, j1, j2);
        (Pos2D::new(row as usize, col), tests)
    }

    #[inline]
    pub fn query_unchecked(&self, i: usize, j1: usize, j2: usize) -> Pos2D {
        self.query_counted(i, j1, j2).0
    }

    pub fn query(&self, i: usize, j1: usize, j2: usize) -> Result<Pos2D> {
        check_range(j1, j2, self.n)?;
        check_cell(i, j2, self.m, self.n)?;
        Ok(self.query_unchecked(i, j1, j2))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(name, vec![self.c.space("C"), self.rmq.space("rmq")])
    }
}

impl Codec for ThreeSidedCk {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        w.usize(self.n);
        w.u64(self.sigma);
        self.c.encode(w);
        self.rmq.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let n = r.usize()?;
        let sigma = r.u64()?;
        let c = PackedArray::decode(r)?;
        let rmq = Rmq1DGeneral::decode(r)?;
        expect(
            sigma >= 1
                && c.len() == sigma as usize * n
                && rmq.len() == c.len()
                && c.base() == m as u64 + 2,
            "3-sided layout mismatch",
        )?;
        Ok(ThreeSidedCk {
            m,
            n,
            sigma,
            c,
            rmq,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::model::Grid;
    use crate::oracle::oracle_rmq;

    #[test]
    fn ck_examples() {
        let a = Array2D::from_rows(vec![vec![1u32, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(ck_array(&a, 0), vec![2, 1]);
        assert_eq!(ck_array(&a, 1), vec![1, 0]);
        let b = Array2D::from_rows(vec![vec![1u32, 0], vec![1, 0]], 3).unwrap();
        assert_eq!(ck_array(&b, 2), vec![3, 3]);
    }

    #[test]
    fn literal_ck_presence_test_is_wrong() {
        // column [5,0,1]: C_1 = 0 <= 1 claims a 1 within row 1, but A[1][1] = 5
        let a = Array2D::from_rows(vec![vec![5u32], vec![0], vec![1]], 6).unwrap();
        assert_eq!(ck_array(&a, 1), vec![0]);
        let s = ThreeSidedCk::new(&a, TieBreakPolicy::RowMajor).unwrap();
        assert_eq!(s.cumulative(1), vec![2]);
        assert_eq!(s.query(1, 1, 1), Ok(Pos2D::new(1, 1)));
    }

    #[test]
    fn query_examples() {
        let a = Array2D::from_rows(vec![vec![1u32, 0], vec![0, 1]], 2).unwrap();
        let s = ThreeSidedCk::new(&a, TieBreakPolicy::RowMajor).unwrap();
        assert_eq!(s.query(2, 1, 2), Ok(Pos2D::new(1, 2)));
        assert_eq!(s.query(1, 2, 2), Ok(Pos2D::new(1, 2)));
        assert_eq!(s.query(2, 1, 1), Ok(Pos2D::new(2, 1)));
        assert!(matches!(s.query(1, 2, 1), Err(Error::RangeInverted { .. })));
        assert!(matches!(
            ThreeSidedCk::new(&a, TieBreakPolicy::ColMajor),
            Err(Error::UnsupportedPolicy { .. })
        ));
    }

    #[test]
    fn exhaustive_small() {
        for (m, n, sigma) in [(2usize, 3usize, 3u64), (3, 2, 3), (3, 3, 2)] {
            for code in 0..sigma.pow((m * n) as u32) {
                let mut c = code;
                let vals: Vec<u64> = (0..m * n)
                    .map(|_| {
                        let v = c % sigma;
                        c /= sigma;
                        v
                    })
                    .collect();
                let g = Grid::from_vec(m, n, vals.clone()).unwrap();
                let a = Array2D::new(g.map(|v| v as u32), sigma).unwrap();
                let s = ThreeSidedCk::new(&a, TieBreakPolicy::RowMajor).unwrap();
                for k in 0..sigma {
                    for j in 1..=n {
                        let want = (1..=m)
                            .find(|&i| g.get(i, j) <= k)
                            .map_or(m as u64 + 1, |i| i as u64);
                        assert_eq!(s.cumulative(k)[j - 1], want);
                    }
                }
                for rect in crate::model::QueryClass::ThreeSided.queries(m, n) {
                    let want = oracle_rmq(&g, &rect, TieBreakPolicy::RowMajor).unwrap();
                    let (got, tests) = s.query_counted(rect.r2, rect.c1, rect.c2);
                    assert_eq!(got, want, "{:?} {:?}", vals, rect);
                    assert!(tests <= 64 - (sigma - 1).leading_zeros() as usize);
                }
            }
        }
    }
}
