use std::collections::HashSet;

use super::{answers_dp, check_cell, values_u64};
use crate::bitseq::BitVec;
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::model::{Array2D, Pos2D, Symbol, TieBreakPolicy};
use crate::space::SpaceNode;

/// Level-`l` staircase: the minimal points of the 2-sided answers whose
/// value is at most `l`, by increasing column and decreasing row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub level: u64,
    pub points: Vec<Pos2D>,
}

impl Staircase {
    /// Checks the strict column-increasing, row-decreasing shape.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        for p in &self.points {
            if p.row == 0 || p.row > m || p.col == 0 || p.col > n {
                return Err(Error::InvalidStaircase(format!(
                    "point ({}, {}) outside {}x{}",
                    p.row, p.col, m, n
                )));
            }
        }
        for w in self.points.windows(2) {
            if !(w[0].col < w[1].col && w[0].row > w[1].row) {
                return Err(Error::InvalidStaircase(format!(
                    "({}, {}) then ({}, {}) is not a staircase step",
                    w[0].row, w[0].col, w[1].row, w[1].col
                )));
            }
        }
        Ok(())
    }
}

/// Staircases of levels `0..sigma` under `policy`.
pub fn staircases<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Vec<Staircase> {
    let g = values_u64(a);
    let dp = answers_dp(&g, policy);
    let mut seen = HashSet::new();
    let mut pts: Vec<(Pos2D, u64)> = dp
        .cells()
        .iter()
        .filter(|p| seen.insert(**p))
        .map(|&p| (p, g.at(p)))
        .collect();
    pts.sort_by_key(|&(p, _)| (p.col, p.row));
    (0..a.sigma())
        .map(|level| Staircase {
            level,
            points: minimal_points(&pts, level),
        })
        .collect()
}

fn minimal_points(sorted: &[(Pos2D, u64)], level: u64) -> Vec<Pos2D> {
    let mut out = Vec::new();
    let mut best = usize::MAX;
    for &(p, v) in sorted {
        if v <= level && p.row < best {
            best = p.row;
            out.push(p);
        }
    }
    out
}

/// Lattice path of a staircase from `(m+1, 0)`: a 1 per eastward step,
/// a 0 per northward step, `m+n+2` steps in total.
pub fn path_bits(s: &Staircase, m: usize, n: usize) -> Result<Vec<bool>> {
    s.validate(m, n)?;
    let mut bits = Vec::with_capacity(m + n + 2);
    let (mut x, mut y) = (0usize, m + 1);
    for p in &s.points {
        bits.extend(std::iter::repeat_n(true, p.col - x));
        bits.extend(std::iter::repeat_n(false, y - p.row));
        x = p.col;
        y = p.row;
    }
    bits.extend(std::iter::repeat_n(true, n + 1 - x));
    bits.extend(std::iter::repeat_n(false, y));
    Ok(bits)
}

/// 2-sided encoding over a bounded alphabet: all `sigma` staircase paths
/// in one bitvector, queried by binary search over levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedStaircase {
    m: usize,
    n: usize,
    sigma: u64,
    policy: TieBreakPolicy,
    paths: BitVec,
}

impl TwoSidedStaircase {
    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        let (m, n) = (a.m(), a.n());
        let mut bits = Vec::with_capacity(a.sigma() as usize * (m + n + 2));
        for s in staircases(a, policy) {
            bits.extend(path_bits(&s, m, n)?);
        }
        Ok(TwoSidedStaircase {
            m,
            n,
            sigma: a.sigma(),
            policy,
            paths: BitVec::from_bits(bits),
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn policy(&self) -> TieBreakPolicy {
        self.policy
    }

    fn path_len(&self) -> usize {
        self.m + self.n + 2
    }

    /// Is some point of level `l` inside `[1,i] x [1,j]`?
    #[inline]
    fn test(&self, l: usize, i: usize, j: usize) -> bool {
        let q = self.paths.select1(l * (self.n + 1) + j + 1);
        let zeros = q - l * self.path_len() - 1 - j;
        i + zeros > self.m
    }

    /// Answer plus the number of level tests made.
    pub fn query_counted(&self, i: usize, j: usize) -> (Pos2D, usize) {
        let (mut lo, mut hi) = (0usize, self.sigma as usize - 1);
        let mut tests = 0;
        while lo < hi {
            let mid = (lo + hi) / 2;
            tests += 1;
            if self.test(mid, i, j) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (self.extract(lo, i, j), tests)
    }

    fn extract(&self, l: usize, i: usize, j: usize) -> Pos2D {
        let (one_base, zero_base) = (l * (self.n + 1), l * (self.m + 1));
        match self.policy {
            TieBreakPolicy::RowMajor => {
                let q = self.paths.select1(one_base + j + 1);
                let before = self.paths.rank0(q);
                let z = self.paths.select0(before);
                Pos2D::new(
                    self.m + 1 - (before - zero_base),
                    self.paths.rank1(z) - one_base,
                )
            }
            TieBreakPolicy::ColMajor => {
                let z = self.paths.select0(zero_base + self.m + 1 - i);
                let col = self.paths.rank1(z);
                let q = self.paths.select1(col + 1);
                Pos2D::new(
                    self.m + 1 - (self.paths.rank0(q) - zero_base),
                    col - one_base,
                )
            }
        }
    }

    #[inline]
    pub fn query_unchecked(&self, i: usize, j: usize) -> Pos2D {
        self.query_counted(i, j).0
    }

    pub fn query(&self, i: usize, j: usize) -> Result<Pos2D> {
        check_cell(i, j, self.m, self.n)?;
        Ok(self.query_unchecked(i, j))
    }

    /// Decoded staircase of level `l`.
    pub fn staircase(&self, l: u64) -> Result<Staircase> {
        if l >= self.sigma {
            return Err(Error::IndexOutOfRange {
                index: l as usize,
                len: self.sigma as usize,
            });
        }
        let start = l as usize * self.path_len();
        let mut points = Vec::new();
        let (mut x, mut y) = (0, self.m + 1);
        let mut pending = false;
        for p in start + 1..=start + self.path_len() {
            if self.paths.get(p) {
                if pending {
                    points.push(Pos2D::new(y, x));
                    pending = false;
                }
                x += 1;
            } else {
                y -= 1;
                pending = x <= self.n;
            }
        }
        Ok(Staircase { level: l, points })
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(name, vec![self.paths.space("paths")])
    }
}

impl Codec for TwoSidedStaircase {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        w.usize(self.n);
        w.u64(self.sigma);
        w.u8(self.policy.code());
        self.paths.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let n = r.usize()?;
        let sigma = r.u64()?;
        let policy = TieBreakPolicy::from_code(r.u8()?)?;
        let paths = BitVec::decode(r)?;
        let l = m + n + 2;
        expect(
            sigma >= 1
                && paths.len() == sigma as usize * l
                && paths.count_ones() == sigma as usize * (n + 1),
            "staircase path layout mismatch",
        )?;
        Ok(TwoSidedStaircase {
            m,
            n,
            sigma,
            policy,
            paths,
        })
    }
}

/// Smallest level whose staircase is on or below `(i, j)`; used by tests.
#[cfg(test)]
pub(crate) fn level_of(stairs: &[Staircase], i: usize, j: usize) -> Option<u64> {
    stairs
        .iter()
        .find(|s| s.points.iter().any(|p| p.row <= i && p.col <= j))
        .map(|s| s.level)
}

#[cfg(test)]
pub(crate) fn grid_of(a: &Array2D<u32>) -> crate::model::Grid<u64> {
    values_u64(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_rmq;
    use crate::model::Rect;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn path_examples() {
        let s = Staircase {
            level: 0,
            points: vec![Pos2D::new(1, 1)],
        };
        assert_eq!(path_bits(&s, 1, 1).unwrap(), bits("1010"));
        let empty = Staircase {
            level: 0,
            points: vec![],
        };
        assert_eq!(path_bits(&empty, 1, 1).unwrap(), bits("1100"));
        assert_eq!(path_bits(&s, 1, 2).unwrap(), bits("10110"));
        let bad = Staircase {
            level: 0,
            points: vec![Pos2D::new(1, 1), Pos2D::new(2, 2)],
        };
        assert!(matches!(path_bits(&bad, 2, 2), Err(Error::InvalidStaircase(_))));
    }

    #[test]
    fn staircase_levels() {
        let a = Array2D::from_rows(vec![vec![1u32, 0], vec![0, 0]], 2).unwrap();
        let st = staircases(&a, TieBreakPolicy::RowMajor);
        assert_eq!(st[0].points, vec![Pos2D::new(2, 1), Pos2D::new(1, 2)]);
        assert_eq!(st[1].points, vec![Pos2D::new(1, 1)]);
        // the query (1,1) has minimum 1 and must find level 1
        assert_eq!(level_of(&st, 1, 1), Some(1));
    }

    #[test]
    fn query_examples() {
        let a = Array2D::from_rows(vec![vec![1u32, 0], vec![0, 0]], 2).unwrap();
        let s = TwoSidedStaircase::new(&a, TieBreakPolicy::RowMajor).unwrap();
        assert_eq!(s.query(2, 2), Ok(Pos2D::new(1, 2)));
        assert_eq!(s.query(1, 1), Ok(Pos2D::new(1, 1)));
        let s = TwoSidedStaircase::new(&a, TieBreakPolicy::ColMajor).unwrap();
        assert_eq!(s.query(2, 2), Ok(Pos2D::new(2, 1)));
        let one = Array2D::from_rows(vec![vec![0u32]], 1).unwrap();
        let s = TwoSidedStaircase::new(&one, TieBreakPolicy::RowMajor).unwrap();
        assert_eq!(s.space("x").bits_at("paths/payload"), 4);
    }

    #[test]
    fn exhaustive_small() {
        for (m, n, sigma) in [(2usize, 2usize, 3u64), (2, 3, 2), (3, 2, 2), (1, 4, 3)] {
            let cells = m * n;
            for code in 0..sigma.pow(cells as u32) {
                let mut c = code;
                let vals: Vec<u32> = (0..cells)
                    .map(|_| {
                        let v = (c % sigma) as u32;
                        c /= sigma;
                        v
                    })
                    .collect();
                let rows = vals.chunks(n).map(|r| r.to_vec()).collect();
                let a = Array2D::from_rows(rows, sigma).unwrap();
                let g = grid_of(&a);
                for p in TieBreakPolicy::ALL {
                    let s = TwoSidedStaircase::new(&a, p).unwrap();
                    for (l, st) in staircases(&a, p).iter().enumerate() {
                        assert_eq!(&s.staircase(l as u64).unwrap(), st);
                    }
                    for i in 1..=m {
                        for j in 1..=n {
                            let want = oracle_rmq(&g, &Rect::two_sided(m, n, i, j).unwrap(), p).unwrap();
                            let (got, tests) = s.query_counted(i, j);
                            assert_eq!(got, want, "{:?} {:?} ({},{})", vals, p, i, j);
                            assert!(tests <= 64 - (sigma - 1).leading_zeros() as usize);
                        }
                    }
                }
            }
        }
    }
}
