//! Lower-bound instance families and the tree-counting behind the 1D bound.

mod counting;

pub use counting::{
    catalan, count_distinct_cartesian, count_trees, count_trees_table, r_const,
    MAX_ENUMERATED_ARRAYS,
};

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Array2D, Grid, QueryClass, TieBreakPolicy};
use crate::rmq1d::TreeShape;
use crate::WideArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    OneSidedGen,
    OneSidedBounded,
    TwoSidedRows,
    TwoSidedParallelogram,
    ThreeSidedCols,
    ColspanBinary,
    ColspanGeneral,
    FourSidedBlocks,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::OneSidedGen,
        FamilyKind::OneSidedBounded,
        FamilyKind::TwoSidedRows,
        FamilyKind::TwoSidedParallelogram,
        FamilyKind::ThreeSidedCols,
        FamilyKind::ColspanBinary,
        FamilyKind::ColspanGeneral,
        FamilyKind::FourSidedBlocks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::OneSidedGen => "one_sided_gen",
            FamilyKind::OneSidedBounded => "one_sided_bounded",
            FamilyKind::TwoSidedRows => "two_sided_rows",
            FamilyKind::TwoSidedParallelogram => "two_sided_parallelogram",
            FamilyKind::ThreeSidedCols => "three_sided_cols",
            FamilyKind::ColspanBinary => "colspan_binary",
            FamilyKind::ColspanGeneral => "colspan_general",
            FamilyKind::FourSidedBlocks => "four_sided_blocks",
        }
    }

    /// The query class whose answers tell family members apart.
    pub fn query_class(self) -> QueryClass {
        match self {
            FamilyKind::OneSidedGen | FamilyKind::OneSidedBounded => QueryClass::OneSided,
            FamilyKind::TwoSidedRows | FamilyKind::TwoSidedParallelogram => QueryClass::TwoSided,
            FamilyKind::ThreeSidedCols => QueryClass::ThreeSided,
            FamilyKind::ColspanBinary | FamilyKind::ColspanGeneral => QueryClass::ColSpan,
            FamilyKind::FourSidedBlocks => QueryClass::FourSided,
        }
    }

    /// Policy used when comparing answer tables.
    pub fn policy(self) -> TieBreakPolicy {
        match self.query_class() {
            QueryClass::ColSpan => TieBreakPolicy::ColMajor,
            _ => TieBreakPolicy::RowMajor,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{}'", s)))
    }
}

/// Free choices of one family member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Choices {
    /// Row of the single small entry of every column.
    Rows(Vec<usize>),
    /// `(row, col)` of value `k`, for `k = 0..sigma-1`, columns decreasing.
    Placements(Vec<(usize, usize)>),
    /// Per row, per column `2..=n`: does the row step down by one.
    Steps(Vec<Vec<bool>>),
    /// Per level, increasing column offsets in its window (bottom row first).
    Subsets(Vec<Vec<usize>>),
    /// Per column, rows `i_0 > i_1 > ...` of the values `0, 1, ...`.
    ColumnRows(Vec<Vec<usize>>),
    /// Per column, the row of its single zero, if any (never row 1).
    Zeros(Vec<Option<usize>>),
    /// Column minima `w` over `0..sigma-1` and the row of each.
    Spread { w: Vec<u64>, rows: Vec<usize> },
    /// Permutation rank per (full block, full anti-diagonal).
    Perms(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub kind: FamilyKind,
    pub m: usize,
    pub n: usize,
    pub sigma: u64,
    pub choices: Choices,
}

/// A generated member: bounded alphabet, or signed cells for ladder rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyArray {
    Bounded(Array2D<u32>),
    Wide(WideArray),
}

impl FamilyArray {
    pub fn wide(&self) -> WideArray {
        match self {
            FamilyArray::Bounded(a) => a.grid().map(|v| v as i64),
            FamilyArray::Wide(g) => g.clone(),
        }
    }

    /// Shifts cells to start at 0 and returns a bounded array.
    pub fn to_bounded(&self) -> Result<Array2D<u32>> {
        match self {
            FamilyArray::Bounded(a) => Ok(a.clone()),
            FamilyArray::Wide(g) => {
                let lo = *g.cells().iter().min().unwrap();
                let hi = *g.cells().iter().max().unwrap();
                let span = u32::try_from(hi - lo)
                    .map_err(|_| Error::AlphabetTooLarge(format!("cell span {}", hi - lo)))?;
                Array2D::new(g.map(|v| (v - lo) as u32), span as u64 + 1)
            }
        }
    }
}

fn infeasible(what: impl Into<String>) -> Error {
    Error::InfeasibleParams(what.into())
}

/// Column window width of the parallelogram layout, or an error.
fn parallelogram_width(m: usize, n: usize, sigma: u64) -> Result<usize> {
    if sigma < 2 {
        return Err(infeasible("two_sided_parallelogram needs sigma >= 2"));
    }
    if 4.0 * (sigma as f64 + 4.0) >= n as f64 {
        return Err(infeasible(format!(
            "two_sided_parallelogram needs sigma < n/4 - 4 (sigma={}, n={})",
            sigma, n
        )));
    }
    let levels = sigma as usize - 1;
    let w = (n - 1 - 4 * (levels - 1)) / levels;
    if w < m {
        return Err(infeasible(format!(
            "two_sided_parallelogram window width {} < m={}",
            w, m
        )));
    }
    Ok(w)
}

fn parallelogram_start(w: usize, sigma: u64, level: usize) -> usize {
    2 + (sigma as usize - 2 - level) * (w + 4)
}

/// Side `sqrt(sigma)` of the 4-sided blocks, or an error.
fn block_root(m: usize, n: usize, sigma: u64) -> Result<usize> {
    let s = (sigma as f64).sqrt().round() as usize;
    if s * s != sigma as usize || s == 0 || !s.is_multiple_of(2) {
        return Err(infeasible(format!(
            "four_sided_blocks needs sigma a square with even root (sigma={})",
            sigma
        )));
    }
    if s > m || 2 * s > n {
        return Err(infeasible(format!(
            "four_sided_blocks needs sqrt(sigma) <= min(m, n/2) (sqrt={}, m={}, n={})",
            s, m, n
        )));
    }
    Ok(s)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Full-length anti-diagonals per bottom-right sub-block and their length.
fn anti_diagonals(s: usize) -> (usize, usize) {
    let h = s / 2;
    (s - h + 1, h)
}

fn full_blocks(m: usize, n: usize, s: usize) -> usize {
    (m / s) * (n / (2 * s))
}

/// Permutation of `0..len` with Lehmer rank `rank`.
fn unrank_perm(mut rank: u64, len: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..len).collect();
    let mut out = Vec::with_capacity(len);
    for i in (0..len).rev() {
        let f = factorial(i);
        out.push(pool.remove((rank / f) as usize));
        rank %= f;
    }
    out
}

impl FamilyParams {
    /// Checks the kind's feasibility rule and the shape of the choices.
    pub fn validate(&self) -> Result<()> {
        let (m, n, sigma) = (self.m, self.n, self.sigma);
        if m == 0 || n == 0 {
            return Err(infeasible("empty dimensions"));
        }
        let bad = |what: &str| Err(infeasible(format!("{}: {}", self.kind, what)));
        match (&self.kind, &self.choices) {
            (FamilyKind::OneSidedGen, Choices::Rows(r)) => {
                if r.len() != n || r.iter().any(|&x| x == 0 || x > m) {
                    return bad("need one row in 1..=m per column");
                }
            }
            (FamilyKind::OneSidedBounded, Choices::Placements(p)) => {
                if sigma < 2 || sigma as usize - 1 > n {
                    return bad("needs 2 <= sigma <= n + 1");
                }
                if p.len() != sigma as usize - 1
                    || p.iter().any(|&(r, c)| r == 0 || r > m || c == 0 || c > n)
                    || p.windows(2).any(|w| w[0].1 <= w[1].1)
                {
                    return bad("need sigma-1 placements with strictly decreasing columns");
                }
            }
            (FamilyKind::TwoSidedRows, Choices::Steps(s)) => {
                if s.len() != m || s.iter().any(|r| r.len() != n - 1) {
                    return bad("need m rows of n-1 steps");
                }
            }
            (FamilyKind::TwoSidedParallelogram, Choices::Subsets(sets)) => {
                let w = parallelogram_width(m, n, sigma)?;
                if sets.len() != sigma as usize - 1
                    || sets.iter().any(|s| {
                        s.len() != m || s.windows(2).any(|p| p[0] >= p[1]) || s.iter().any(|&c| c >= w)
                    })
                {
                    return bad("need per level m increasing offsets inside the window");
                }
            }
            (FamilyKind::ThreeSidedCols, Choices::ColumnRows(cols)) => {
                if sigma < 1 || sigma as usize > m {
                    return bad("needs sigma <= m");
                }
                if cols.len() != n
                    || cols.iter().any(|c| {
                        c.len() != sigma as usize - 1
                            || c.windows(2).any(|p| p[0] <= p[1])
                            || c.iter().any(|&r| r < 2 || r > m)
                    })
                {
                    return bad("need per column sigma-1 decreasing rows in 2..=m");
                }
            }
            (FamilyKind::ColspanBinary, Choices::Zeros(z)) => {
                if z.len() != n || z.iter().flatten().any(|&r| r < 2 || r > m) {
                    return bad("need per column an optional row in 2..=m");
                }
            }
            (FamilyKind::ColspanGeneral, Choices::Spread { w, rows }) => {
                if sigma < 2 {
                    return bad("needs sigma >= 2");
                }
                if w.len() != n || rows.len() != n || w.iter().any(|&v| v + 1 >= sigma) {
                    return bad("need n values in 0..sigma-1 and n rows");
                }
                if rows.iter().any(|&r| r == 0 || r > m) {
                    return bad("rows must lie in 1..=m");
                }
            }
            (FamilyKind::FourSidedBlocks, Choices::Perms(p)) => {
                let s = block_root(m, n, sigma)?;
                let (diags, len) = anti_diagonals(s);
                if p.len() != full_blocks(m, n, s) * diags || p.iter().any(|&r| r >= factorial(len)) {
                    return bad("need one permutation rank per block and anti-diagonal");
                }
            }
            _ => return bad("choices do not match the family kind"),
        }
        Ok(())
    }

    /// Identity of the member: equal keys give equal arrays up to the
    /// family's intended equivalence (Cartesian shape for `colspan_general`).
    pub fn key(&self) -> String {
        match &self.choices {
            Choices::Spread { w, rows } => {
                format!("{:?}|{:?}", TreeShape::from_values(w), rows)
            }
            c => format!("{:?}", c),
        }
    }

    /// Uniformly random free choices.
    pub fn sample<R: Rng>(kind: FamilyKind, m: usize, n: usize, sigma: u64, rng: &mut R) -> Result<Self> {
        let choices = match kind {
            FamilyKind::OneSidedGen => Choices::Rows((0..n).map(|_| rng.gen_range(1..=m)).collect()),
            FamilyKind::OneSidedBounded => {
                if sigma < 2 || sigma as usize - 1 > n {
                    return Err(infeasible("one_sided_bounded needs 2 <= sigma <= n + 1"));
                }
                let mut cols: Vec<usize> = sample(rng, n, sigma as usize - 1).into_iter().map(|c| c + 1).collect();
                cols.sort_unstable_by(|a, b| b.cmp(a));
                Choices::Placements(cols.into_iter().map(|c| (rng.gen_range(1..=m), c)).collect())
            }
            FamilyKind::TwoSidedRows => Choices::Steps(
                (0..m).map(|_| (1..n).map(|_| rng.gen_bool(0.5)).collect()).collect(),
            ),
            FamilyKind::TwoSidedParallelogram => {
                let w = parallelogram_width(m, n, sigma)?;
                Choices::Subsets(
                    (0..sigma as usize - 1)
                        .map(|_| {
                            let mut s = sample(rng, w, m).into_vec();
                            s.sort_unstable();
                            s
                        })
                        .collect(),
                )
            }
            FamilyKind::ThreeSidedCols => {
                if sigma < 1 || sigma as usize > m {
                    return Err(infeasible("three_sided_cols needs sigma <= m"));
                }
                Choices::ColumnRows(
                    (0..n)
                        .map(|_| {
                            let mut r: Vec<usize> =
                                sample(rng, m - 1, sigma as usize - 1).into_iter().map(|x| x + 2).collect();
                            r.sort_unstable_by(|a, b| b.cmp(a));
                            r
                        })
                        .collect(),
                )
            }
            FamilyKind::ColspanBinary => Choices::Zeros(
                (0..n)
                    .map(|_| match rng.gen_range(1..=m) {
                        1 => None,
                        r => Some(r),
                    })
                    .collect(),
            ),
            FamilyKind::ColspanGeneral => {
                if sigma < 2 {
                    return Err(infeasible("colspan_general needs sigma >= 2"));
                }
                Choices::Spread {
                    w: (0..n).map(|_| rng.gen_range(0..sigma - 1)).collect(),
                    rows: (0..n).map(|_| rng.gen_range(1..=m)).collect(),
                }
            }
            FamilyKind::FourSidedBlocks => {
                let s = block_root(m, n, sigma)?;
                let (diags, len) = anti_diagonals(s);
                let f = factorial(len);
                Choices::Perms((0..full_blocks(m, n, s) * diags).map(|_| rng.gen_range(0..f)).collect())
            }
        };
        Ok(FamilyParams {
            kind,
            m,
            n,
            sigma,
            choices,
        })
    }

    /// Every member of the family, refusing more than `limit`.
    pub fn enumerate(kind: FamilyKind, m: usize, n: usize, sigma: u64, limit: usize) -> Result<Vec<Self>> {
        let guard = |count: f64| {
            if count > limit as f64 {
                Err(Error::ExplosionGuard(format!("{} has {} members (limit {})", kind, count, limit)))
            } else {
                Ok(())
            }
        };
        let mk = |choices| FamilyParams {
            kind,
            m,
            n,
            sigma,
            choices,
        };
        let out: Vec<Self> = match kind {
            FamilyKind::OneSidedGen => {
                guard((m as f64).powi(n as i32))?;
                product(&vec![(1..=m).collect::<Vec<_>>(); n])
                    .into_iter()
                    .map(|r| mk(Choices::Rows(r)))
                    .collect()
            }
            FamilyKind::OneSidedBounded => {
                if sigma < 2 || sigma as usize - 1 > n {
                    return Err(infeasible("one_sided_bounded needs 2 <= sigma <= n + 1"));
                }
                let k = sigma as usize - 1;
                guard(binomial(n, k) * (m as f64).powi(k as i32))?;
                let mut out = Vec::new();
                for mut cols in combinations(n, k) {
                    cols.reverse();
                    for rows in product(&vec![(1..=m).collect::<Vec<_>>(); k]) {
                        let p = rows.into_iter().zip(cols.iter().map(|c| c + 1)).collect();
                        out.push(mk(Choices::Placements(p)));
                    }
                }
                out
            }
            FamilyKind::TwoSidedRows => {
                guard(2f64.powi((m * (n - 1)) as i32))?;
                product(&vec![vec![false, true]; m * (n - 1)])
                    .into_iter()
                    .map(|bits| {
                        let rows = if n > 1 {
                            bits.chunks(n - 1).map(|c| c.to_vec()).collect()
                        } else {
                            vec![Vec::new(); m]
                        };
                        mk(Choices::Steps(rows))
                    })
                    .collect()
            }
            FamilyKind::ThreeSidedCols => {
                if sigma < 1 || sigma as usize > m {
                    return Err(infeasible("three_sided_cols needs sigma <= m"));
                }
                let k = sigma as usize - 1;
                let per: Vec<Vec<usize>> = combinations(m - 1, k)
                    .into_iter()
                    .map(|c| c.into_iter().rev().map(|r| r + 2).collect())
                    .collect();
                guard((per.len() as f64).powi(n as i32))?;
                let idx: Vec<usize> = (0..per.len()).collect();
                product(&vec![idx; n])
                    .into_iter()
                    .map(|pick| mk(Choices::ColumnRows(pick.into_iter().map(|i| per[i].clone()).collect())))
                    .collect()
            }
            FamilyKind::ColspanBinary => {
                guard((m as f64).powi(n as i32))?;
                let opts: Vec<Option<usize>> = std::iter::once(None).chain((2..=m).map(Some)).collect();
                product(&vec![opts; n])
                    .into_iter()
                    .map(|z| mk(Choices::Zeros(z)))
                    .collect()
            }
            FamilyKind::FourSidedBlocks => {
                let s = block_root(m, n, sigma)?;
                let (diags, len) = anti_diagonals(s);
                let slots = full_blocks(m, n, s) * diags;
                guard((factorial(len) as f64).powi(slots as i32))?;
                let ranks: Vec<u64> = (0..factorial(len)).collect();
                product(&vec![ranks; slots])
                    .into_iter()
                    .map(|p| mk(Choices::Perms(p)))
                    .collect()
            }
            FamilyKind::TwoSidedParallelogram | FamilyKind::ColspanGeneral => {
                return Err(Error::InvalidParameter(format!(
                    "{} is sampled, not enumerated",
                    kind
                )))
            }
        };
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Cartesian product of the option lists, first list varying slowest.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Increasing `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Builds the member array of `params`.
pub fn gen_family(params: &FamilyParams) -> Result<FamilyArray> {
    params.validate()?;
    let (m, n, sigma) = (params.m, params.n, params.sigma);
    let bounded = |g: Grid<u32>, sigma: u64| Array2D::new(g, sigma).map(FamilyArray::Bounded);
    match &params.choices {
        Choices::Rows(rows) => {
            // column j holds n+1-j once, so each column brings a new prefix minimum
            let mut g = Grid::filled(m, n, n as i64 + 1)?;
            for (j, &r) in rows.iter().enumerate() {
                g.set(r, j + 1, (n - j) as i64);
            }
            Ok(FamilyArray::Wide(g))
        }
        Choices::Placements(p) => {
            let mut g = Grid::filled(m, n, sigma as u32 - 1)?;
            for (k, &(r, c)) in p.iter().enumerate() {
                g.set(r, c, k as u32);
            }
            bounded(g, sigma)
        }
        Choices::Steps(steps) => {
            // row i follows a ladder starting at n*(m-i+1)-1; lower rows are smaller
            let mut g = Grid::filled(m, n, 0i64)?;
            for i in 1..=m {
                let mut v = (n * (m - i + 1)) as i64 - 1;
                g.set(i, 1, v);
                for j in 2..=n {
                    if steps[i - 1][j - 2] {
                        v -= 1;
                    }
                    g.set(i, j, v);
                }
            }
            Ok(FamilyArray::Wide(g))
        }
        Choices::Subsets(sets) => {
            let w = parallelogram_width(m, n, sigma)?;
            let mut g = Grid::filled(m, n, sigma as u32 - 1)?;
            for (level, offs) in sets.iter().enumerate() {
                let start = parallelogram_start(w, sigma, level);
                for (k, &o) in offs.iter().enumerate() {
                    g.set(m - k, start + o, level as u32);
                }
            }
            bounded(g, sigma)
        }
        Choices::ColumnRows(cols) => {
            let mut g = Grid::filled(m, n, sigma as u32 - 1)?;
            for (j, rows) in cols.iter().enumerate() {
                for (k, &r) in rows.iter().enumerate() {
                    g.set(r, j + 1, k as u32);
                }
            }
            bounded(g, sigma)
        }
        Choices::Zeros(z) => {
            let mut g = Grid::filled(m, n, 1u32)?;
            for (j, r) in z.iter().enumerate() {
                if let Some(r) = r {
                    g.set(*r, j + 1, 0);
                }
            }
            bounded(g, 2)
        }
        Choices::Spread { w, rows } => {
            let mut g = Grid::filled(m, n, sigma as u32 - 1)?;
            for j in 0..n {
                g.set(rows[j], j + 1, w[j] as u32);
            }
            bounded(g, sigma)
        }
        Choices::Perms(ranks) => four_sided_blocks(m, n, sigma, ranks),
    }
}

fn four_sided_blocks(m: usize, n: usize, sigma: u64, ranks: &[u64]) -> Result<FamilyArray> {
    let s = block_root(m, n, sigma)?;
    let h = s / 2;
    let (diags, len) = anti_diagonals(s);
    let top = sigma as u32;
    let mut g = Grid::filled(m, n, top)?;
    let mut next = ranks.iter();
    for bi in 0..m / s {
        for bj in 0..n / (2 * s) {
            let (r0, c0) = (bi * s, bj * 2 * s);
            // upper-left: odd values increasing in row-major order
            for r in 0..h {
                for c in 0..s {
                    g.set(r0 + r + 1, c0 + c + 1, (2 * (r * s + c) + 1) as u32);
                }
            }
            // bottom-right: even values, larger on anti-diagonals further left
            let mut value = sigma as i64 - 2;
            for d in 0..h + s - 1 {
                let cells: Vec<(usize, usize)> = (0..h)
                    .filter(|&r| d >= r && d - r < s)
                    .map(|r| (r, d - r))
                    .collect();
                let vals: Vec<i64> = (0..cells.len() as i64).map(|t| value - 2 * t).collect();
                value -= 2 * cells.len() as i64;
                let order = if cells.len() == len && d + 1 >= h && d < s {
                    unrank_perm(*next.next().expect("rank count checked"), len)
                } else {
                    (0..cells.len()).collect()
                };
                for (t, &(r, c)) in cells.iter().enumerate() {
                    g.set(r0 + h + r + 1, c0 + s + c + 1, vals[order[t]] as u32);
                }
            }
        }
    }
    debug_assert!(next.next().is_none());
    debug_assert_eq!(diags * full_blocks(m, n, s), ranks.len());
    Ok(FamilyArray::Bounded(Array2D::new(g, sigma + 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::distinct_tables;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(kind: FamilyKind, m: usize, n: usize, sigma: u64, choices: Choices) -> FamilyParams {
        FamilyParams {
            kind,
            m,
            n,
            sigma,
            choices,
        }
    }

    #[test]
    fn examples() {
        let a = gen_family(&p(FamilyKind::OneSidedGen, 2, 2, 0, Choices::Rows(vec![2, 1]))).unwrap();
        assert_eq!(a.wide(), Grid::from_rows(vec![vec![3, 1], vec![2, 3]]).unwrap());
        let a = gen_family(&p(FamilyKind::TwoSidedRows, 1, 2, 0, Choices::Steps(vec![vec![false]]))).unwrap();
        assert_eq!(a.wide(), Grid::from_rows(vec![vec![1, 1]]).unwrap());
        let a = gen_family(&p(FamilyKind::ColspanBinary, 2, 1, 2, Choices::Zeros(vec![Some(2)]))).unwrap();
        assert_eq!(a.wide(), Grid::from_rows(vec![vec![1], vec![0]]).unwrap());
    }

    #[test]
    fn infeasible_params_are_named() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = FamilyParams::sample(FamilyKind::TwoSidedParallelogram, 2, 20, 3, &mut rng).unwrap_err();
        assert!(e.to_string().contains("sigma < n/4 - 4"));
        let e = FamilyParams::sample(FamilyKind::FourSidedBlocks, 4, 16, 9, &mut rng).unwrap_err();
        assert!(e.to_string().contains("even root"));
        let e = FamilyParams::sample(FamilyKind::FourSidedBlocks, 2, 16, 16, &mut rng).unwrap_err();
        assert!(e.to_string().contains("min(m, n/2)"));
        assert!(gen_family(&p(FamilyKind::OneSidedGen, 2, 2, 0, Choices::Zeros(vec![None]))).is_err());
    }

    #[test]
    fn four_sided_block_layout() {
        let a = gen_family(&p(FamilyKind::FourSidedBlocks, 4, 8, 16, Choices::Perms(vec![0, 0, 0]))).unwrap();
        let g = a.wide();
        assert_eq!(g.row(1), &[1, 3, 5, 7, 16, 16, 16, 16]);
        assert_eq!(g.row(2), &[9, 11, 13, 15, 16, 16, 16, 16]);
        assert_eq!(g.row(3), &[16, 16, 16, 16, 14, 12, 8, 4]);
        assert_eq!(g.row(4), &[16, 16, 16, 16, 10, 6, 2, 0]);
        let b = gen_family(&p(FamilyKind::FourSidedBlocks, 4, 8, 16, Choices::Perms(vec![1, 0, 0]))).unwrap();
        assert_eq!(b.wide().get(3, 6), 10);
        assert_eq!(b.wide().get(4, 5), 12);
    }

    #[test]
    fn small_families_are_distinguishable() {
        for (kind, m, n, sigma, want) in [
            (FamilyKind::OneSidedGen, 2, 3, 0, 8),
            (FamilyKind::TwoSidedRows, 2, 2, 0, 4),
            (FamilyKind::OneSidedBounded, 2, 3, 3, 12),
            (FamilyKind::ColspanBinary, 2, 3, 2, 8),
            (FamilyKind::ThreeSidedCols, 3, 2, 2, 4),
        ] {
            let members = FamilyParams::enumerate(kind, m, n, sigma, 1000).unwrap();
            assert_eq!(members.len(), want, "{}", kind);
            let grids: Vec<WideArray> = members.iter().map(|p| gen_family(p).unwrap().wide()).collect();
            assert_eq!(distinct_tables(&grids, kind.query_class(), kind.policy()), Ok(want), "{}", kind);
        }
    }

    #[test]
    fn sampled_members_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in FamilyKind::ALL {
            let (m, n, sigma) = match kind {
                FamilyKind::TwoSidedParallelogram => (3, 40, 3),
                FamilyKind::FourSidedBlocks => (4, 16, 16),
                FamilyKind::ThreeSidedCols => (4, 4, 3),
                _ => (3, 5, 3),
            };
            for _ in 0..20 {
                let params = FamilyParams::sample(kind, m, n, sigma, &mut rng).unwrap();
                let a = gen_family(&params).unwrap();
                assert_eq!(a.wide().rows(), m);
                assert!(a.to_bounded().is_ok());
            }
        }
        assert_eq!("TWO_SIDED_ROWS".parse::<FamilyKind>(), Ok(FamilyKind::TwoSidedRows));
    }
}
