//! Shared domain types: arrays, positions, query rectangles and tie-break
//! policies.
//!
//! All indices at this surface are 1-based and ranges are inclusive.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

use crate::error::{Error, Result};

/// Unsigned cell type of a bounded-alphabet array.
pub trait Symbol:
    PrimInt + Unsigned + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
    fn from_u64(v: u64) -> Option<Self> {
        <Self as num_traits::NumCast>::from(v)
    }

    fn as_u64(self) -> u64 {
        self.to_u64().expect("unsigned symbol fits u64")
    }
}

impl<T> Symbol for T where
    T: PrimInt + Unsigned + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
}

/// Dense row-major grid of arbitrary cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

impl<T: Copy> Grid<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::EmptyArray);
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::EmptyArray);
        }
        let mut cells = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            cells.extend(row);
        }
        Ok(Grid { rows: m, cols: n, cells })
    }

    pub fn from_vec(rows: usize, cols: usize, cells: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyArray);
        }
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} cells for a {}x{} grid",
                cells.len(),
                rows,
                cols
            )));
        }
        Ok(Grid { rows, cols, cells })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Result<Self> {
        Self::from_vec(rows, cols, vec![value; rows * cols])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cell at 1-based `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        debug_assert!(row >= 1 && row <= self.rows && col >= 1 && col <= self.cols);
        self.cells[(row - 1) * self.cols + (col - 1)]
    }

    #[inline]
    pub fn at(&self, p: Pos2D) -> T {
        self.get(p.row, p.col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.cells[(row - 1) * self.cols + (col - 1)] = value;
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.cells[(row - 1) * self.cols..row * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (1..=self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn transposed(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in 1..=self.cols {
            for r in 1..=self.rows {
                cells.push(self.get(r, c));
            }
        }
        Grid {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Grid<U> {
        Grid {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// An `m x n` array over the alphabet `{0, .., sigma-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Array2D<S = u32> {
    grid: Grid<S>,
    sigma: u64,
}

impl<S: Symbol> Array2D<S> {
    pub fn new(grid: Grid<S>, sigma: u64) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::MalformedHeader("sigma must be at least 1".into()));
        }
        for r in 1..=grid.rows() {
            for c in 1..=grid.cols() {
                let v = grid.get(r, c).as_u64();
                if v >= sigma {
                    return Err(Error::CellOutOfAlphabet {
                        row: r,
                        col: c,
                        value: v,
                        sigma,
                    });
                }
            }
        }
        Ok(Array2D { grid, sigma })
    }

    pub fn from_rows(rows: Vec<Vec<S>>, sigma: u64) -> Result<Self> {
        Self::new(Grid::from_rows(rows)?, sigma)
    }

    /// A `1 x n` array.
    pub fn from_slice(values: &[S], sigma: u64) -> Result<Self> {
        Self::new(Grid::from_vec(1, values.len(), values.to_vec())?, sigma)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.grid.rows()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.grid.cols()
    }

    #[inline]
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> S {
        self.grid.get(row, col)
    }

    #[inline]
    pub fn value(&self, row: usize, col: usize) -> u64 {
        self.grid.get(row, col).as_u64()
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    pub fn transposed(&self) -> Self {
        Array2D {
            grid: self.grid.transposed(),
            sigma: self.sigma,
        }
    }

    /// Column `col` as plain values, top to bottom.
    pub fn column_values(&self, col: usize) -> Vec<u64> {
        (1..=self.m()).map(|r| self.value(r, col)).collect()
    }

    pub fn row_values(&self, row: usize) -> Vec<u64> {
        self.grid.row(row).iter().map(|v| v.as_u64()).collect()
    }

    pub fn cast<T: Symbol>(&self) -> Result<Array2D<T>> {
        let mut cells = Vec::with_capacity(self.m() * self.n());
        for &v in self.grid.cells() {
            cells.push(T::from_u64(v.as_u64()).ok_or_else(|| {
                Error::InvalidParameter(format!("value {} does not fit target symbol type", v))
            })?);
        }
        Ok(Array2D {
            grid: Grid::from_vec(self.m(), self.n(), cells)?,
            sigma: self.sigma,
        })
    }
}

/// 1-based position `(row, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos2D {
    pub row: usize,
    pub col: usize,
}

impl Pos2D {
    pub const fn new(row: usize, col: usize) -> Self {
        Pos2D { row, col }
    }
}

impl fmt::Display for Pos2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.row, self.col)
    }
}

impl From<(usize, usize)> for Pos2D {
    fn from((row, col): (usize, usize)) -> Self {
        Pos2D { row, col }
    }
}

/// Total order used to break ties between equal values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieBreakPolicy {
    /// Topmost, then leftmost.
    RowMajor,
    /// Leftmost, then topmost.
    ColMajor,
}

impl TieBreakPolicy {
    pub const ALL: [TieBreakPolicy; 2] = [TieBreakPolicy::RowMajor, TieBreakPolicy::ColMajor];

    #[inline]
    pub fn cmp_pos(self, a: Pos2D, b: Pos2D) -> Ordering {
        match self {
            TieBreakPolicy::RowMajor => (a.row, a.col).cmp(&(b.row, b.col)),
            TieBreakPolicy::ColMajor => (a.col, a.row).cmp(&(b.col, b.row)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TieBreakPolicy::RowMajor => "row_major",
            TieBreakPolicy::ColMajor => "col_major",
        }
    }

    pub fn code(self) -> u8 {
        match self {
            TieBreakPolicy::RowMajor => 0,
            TieBreakPolicy::ColMajor => 1,
        }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        match code {
            0 => Ok(TieBreakPolicy::RowMajor),
            1 => Ok(TieBreakPolicy::ColMajor),
            _ => Err(Error::Decode(format!("unknown policy code {}", code))),
        }
    }
}

impl FromStr for TieBreakPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "row_major" | "row-major" | "row" => Ok(TieBreakPolicy::RowMajor),
            "col_major" | "col-major" | "col" => Ok(TieBreakPolicy::ColMajor),
            other => Err(Error::InvalidParameter(format!("unknown policy '{}'", other))),
        }
    }
}

/// A value together with the position it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Candidate<T> {
    pub value: T,
    pub pos: Pos2D,
}

impl<T: Ord> Candidate<T> {
    pub fn new(value: T, pos: Pos2D) -> Self {
        Candidate { value, pos }
    }

    /// Canonical order: value first, then the policy order on positions.
    #[inline]
    pub fn cmp_under(&self, other: &Self, policy: TieBreakPolicy) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| policy.cmp_pos(self.pos, other.pos))
    }
}

/// The canonical minimum of `cands` under `policy`.
pub fn policy_min<T: Ord + Copy>(
    cands: &[Candidate<T>],
    policy: TieBreakPolicy,
) -> Result<Candidate<T>> {
    cands
        .iter()
        .copied()
        .min_by(|a, b| a.cmp_under(b, policy))
        .ok_or(Error::EmptyCandidateList)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QueryClass {
    /// `[1,m] x [1,j]`
    OneSided,
    /// `[1,i] x [1,j]`
    TwoSided,
    /// `[1,i] x [j1,j2]`
    ThreeSided,
    /// `[1,m] x [j1,j2]`
    ColSpan,
    /// `[r1,r2] x [c1,c2]`
    FourSided,
}

impl QueryClass {
    pub const ALL: [QueryClass; 5] = [
        QueryClass::OneSided,
        QueryClass::TwoSided,
        QueryClass::ThreeSided,
        QueryClass::ColSpan,
        QueryClass::FourSided,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryClass::OneSided => "one_sided",
            QueryClass::TwoSided => "two_sided",
            QueryClass::ThreeSided => "three_sided",
            QueryClass::ColSpan => "col_span",
            QueryClass::FourSided => "four_sided",
        }
    }

    /// Number of distinct queries of this class on an `m x n` array.
    pub fn query_count(self, m: usize, n: usize) -> usize {
        let pairs = |k: usize| k * (k + 1) / 2;
        match self {
            QueryClass::OneSided => n,
            QueryClass::TwoSided => m * n,
            QueryClass::ThreeSided => m * pairs(n),
            QueryClass::ColSpan => pairs(n),
            QueryClass::FourSided => pairs(m) * pairs(n),
        }
    }

    /// All queries of this class in canonical order.
    pub fn queries(self, m: usize, n: usize) -> Vec<Rect> {
        let mut out = Vec::with_capacity(self.query_count(m, n));
        match self {
            QueryClass::OneSided => {
                for j in 1..=n {
                    out.push(Rect::raw(self, 1, m, 1, j));
                }
            }
            QueryClass::TwoSided => {
                for i in 1..=m {
                    for j in 1..=n {
                        out.push(Rect::raw(self, 1, i, 1, j));
                    }
                }
            }
            QueryClass::ThreeSided => {
                for i in 1..=m {
                    for j1 in 1..=n {
                        for j2 in j1..=n {
                            out.push(Rect::raw(self, 1, i, j1, j2));
                        }
                    }
                }
            }
            QueryClass::ColSpan => {
                for j1 in 1..=n {
                    for j2 in j1..=n {
                        out.push(Rect::raw(self, 1, m, j1, j2));
                    }
                }
            }
            QueryClass::FourSided => {
                for r1 in 1..=m {
                    for r2 in r1..=m {
                        for c1 in 1..=n {
                            for c2 in c1..=n {
                                out.push(Rect::raw(self, r1, r2, c1, c2));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// A uniformly drawn range per side (each endpoint pair uniform over
    /// ordered pairs), constrained to this class.
    pub fn random_query<R: rand::Rng + ?Sized>(self, m: usize, n: usize, rng: &mut R) -> Rect {
        let span = |k: usize, rng: &mut R| {
            let a = rng.gen_range(1..=k);
            let b = rng.gen_range(1..=k);
            (a.min(b), a.max(b))
        };
        let (c1, c2) = span(n, rng);
        match self {
            QueryClass::OneSided => Rect::raw(self, 1, m, 1, c2),
            QueryClass::TwoSided => Rect::raw(self, 1, rng.gen_range(1..=m), 1, rng.gen_range(1..=n)),
            QueryClass::ThreeSided => Rect::raw(self, 1, rng.gen_range(1..=m), c1, c2),
            QueryClass::ColSpan => Rect::raw(self, 1, m, c1, c2),
            QueryClass::FourSided => {
                let (r1, r2) = span(m, rng);
                Rect::raw(self, r1, r2, c1, c2)
            }
        }
    }
}

impl FromStr for QueryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "one_sided" | "1" => Ok(QueryClass::OneSided),
            "two_sided" | "2" => Ok(QueryClass::TwoSided),
            "three_sided" | "3" => Ok(QueryClass::ThreeSided),
            "col_span" | "colspan" => Ok(QueryClass::ColSpan),
            "four_sided" | "4" => Ok(QueryClass::FourSided),
            other => Err(Error::InvalidParameter(format!(
                "unknown query class '{}'",
                other
            ))),
        }
    }
}

/// Inclusive rectangle `[r1,r2] x [c1,c2]` tagged with its query class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub r1: usize,
    pub r2: usize,
    pub c1: usize,
    pub c2: usize,
    pub class: QueryClass,
}

impl Rect {
    pub(crate) const fn raw(class: QueryClass, r1: usize, r2: usize, c1: usize, c2: usize) -> Self {
        Rect {
            r1,
            r2,
            c1,
            c2,
            class,
        }
    }

    /// Validated constructor against an `m x n` array.
    pub fn new(
        class: QueryClass,
        r1: usize,
        r2: usize,
        c1: usize,
        c2: usize,
        m: usize,
        n: usize,
    ) -> Result<Self> {
        if r1 > r2 {
            return Err(Error::RangeInverted { lo: r1, hi: r2 });
        }
        if c1 > c2 {
            return Err(Error::RangeInverted { lo: c1, hi: c2 });
        }
        if r1 == 0 || r2 > m {
            return Err(Error::IndexOutOfRange {
                index: if r1 == 0 { 0 } else { r2 },
                len: m,
            });
        }
        if c1 == 0 || c2 > n {
            return Err(Error::IndexOutOfRange {
                index: if c1 == 0 { 0 } else { c2 },
                len: n,
            });
        }
        let rect = Rect::raw(class, r1, r2, c1, c2);
        rect.check_class(m)?;
        Ok(rect)
    }

    fn check_class(&self, m: usize) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::ClassViolation {
                class: self.class,
                reason: reason.to_string(),
            })
        };
        match self.class {
            QueryClass::OneSided if self.r1 != 1 || self.c1 != 1 || self.r2 != m => {
                bad("requires r1=c1=1 and r2=m")
            }
            QueryClass::TwoSided if self.r1 != 1 || self.c1 != 1 => bad("requires r1=c1=1"),
            QueryClass::ThreeSided if self.r1 != 1 => bad("requires r1=1"),
            QueryClass::ColSpan if self.r1 != 1 || self.r2 != m => bad("requires r1=1 and r2=m"),
            _ => Ok(()),
        }
    }

    pub fn one_sided(m: usize, n: usize, j: usize) -> Result<Self> {
        Rect::new(QueryClass::OneSided, 1, m, 1, j, m, n)
    }

    pub fn two_sided(m: usize, n: usize, i: usize, j: usize) -> Result<Self> {
        Rect::new(QueryClass::TwoSided, 1, i, 1, j, m, n)
    }

    pub fn three_sided(m: usize, n: usize, i: usize, j1: usize, j2: usize) -> Result<Self> {
        Rect::new(QueryClass::ThreeSided, 1, i, j1, j2, m, n)
    }

    pub fn col_span(m: usize, n: usize, j1: usize, j2: usize) -> Result<Self> {
        Rect::new(QueryClass::ColSpan, 1, m, j1, j2, m, n)
    }

    pub fn four_sided(m: usize, n: usize, r1: usize, r2: usize, c1: usize, c2: usize) -> Result<Self> {
        Rect::new(QueryClass::FourSided, r1, r2, c1, c2, m, n)
    }

    /// Same rectangle viewed as a query of another (compatible) class.
    pub fn with_class(self, class: QueryClass, m: usize) -> Result<Self> {
        let r = Rect { class, ..self };
        r.check_class(m)?;
        Ok(r)
    }

    pub fn contains(&self, p: Pos2D) -> bool {
        (self.r1..=self.r2).contains(&p.row) && (self.c1..=self.c2).contains(&p.col)
    }

    pub fn cell_count(&self) -> usize {
        (self.r2 - self.r1 + 1) * (self.c2 - self.c1 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u32, r: usize, col: usize) -> Candidate<u32> {
        Candidate::new(v, Pos2D::new(r, col))
    }

    #[test]
    fn policy_min_examples() {
        let tie = [c(0, 1, 2), c(0, 2, 1)];
        assert_eq!(
            policy_min(&tie, TieBreakPolicy::RowMajor).unwrap().pos,
            Pos2D::new(1, 2)
        );
        assert_eq!(
            policy_min(&tie, TieBreakPolicy::ColMajor).unwrap().pos,
            Pos2D::new(2, 1)
        );
        let distinct = [c(1, 1, 1), c(0, 2, 2)];
        for p in TieBreakPolicy::ALL {
            assert_eq!(policy_min(&distinct, p).unwrap().pos, Pos2D::new(2, 2));
        }
        assert_eq!(
            policy_min::<u32>(&[], TieBreakPolicy::RowMajor),
            Err(Error::EmptyCandidateList)
        );
    }

    #[test]
    fn policy_orders_are_total() {
        let pts: Vec<Pos2D> = (1..=3)
            .flat_map(|r| (1..=3).map(move |c| Pos2D::new(r, c)))
            .collect();
        for p in TieBreakPolicy::ALL {
            for &a in &pts {
                for &b in &pts {
                    let ab = p.cmp_pos(a, b);
                    let ba = p.cmp_pos(b, a);
                    if a == b {
                        assert_eq!(ab, Ordering::Equal);
                    } else {
                        assert_ne!(ab, Ordering::Equal);
                        assert_eq!(ab, ba.reverse());
                    }
                }
            }
        }
    }

    #[test]
    fn query_counts_match_enumeration() {
        for m in 1..=3 {
            for n in 1..=4 {
                for class in QueryClass::ALL {
                    let qs = class.queries(m, n);
                    assert_eq!(qs.len(), class.query_count(m, n));
                    for q in qs {
                        Rect::new(class, q.r1, q.r2, q.c1, q.c2, m, n).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn rect_class_checks() {
        assert!(matches!(
            Rect::new(QueryClass::TwoSided, 2, 2, 1, 1, 3, 3),
            Err(Error::ClassViolation { .. })
        ));
        assert!(matches!(
            Rect::three_sided(3, 3, 2, 3, 1),
            Err(Error::RangeInverted { lo: 3, hi: 1 })
        ));
        assert!(matches!(
            Rect::one_sided(2, 3, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn array_rejects_out_of_alphabet() {
        let err = Array2D::<u32>::from_rows(vec![vec![5]], 2).unwrap_err();
        assert!(matches!(err, Error::CellOutOfAlphabet { value: 5, .. }));
    }
}
