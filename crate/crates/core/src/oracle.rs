//! Brute-force ground truth: direct range scans, complete answer tables per
//! query class, and exact distinguishability counts.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{policy_min, Candidate, Grid, Pos2D, QueryClass, Rect, TieBreakPolicy};

/// Default cell limit for materializing three- and four-sided tables.
pub const DEFAULT_MAX_CELLS: usize = 64;

fn check_rect<T: Copy>(grid: &Grid<T>, rect: &Rect) -> Result<()> {
    if rect.r1 > rect.r2 {
        return Err(Error::RangeInverted {
            lo: rect.r1,
            hi: rect.r2,
        });
    }
    if rect.c1 > rect.c2 {
        return Err(Error::RangeInverted {
            lo: rect.c1,
            hi: rect.c2,
        });
    }
    if rect.r1 == 0 || rect.r2 > grid.rows() {
        return Err(Error::IndexOutOfRange {
            index: rect.r2,
            len: grid.rows(),
        });
    }
    if rect.c1 == 0 || rect.c2 > grid.cols() {
        return Err(Error::IndexOutOfRange {
            index: rect.c2,
            len: grid.cols(),
        });
    }
    Ok(())
}

/// Canonical answer of `rect` by a full scan.
pub fn oracle_rmq<T: Ord + Copy>(grid: &Grid<T>, rect: &Rect, policy: TieBreakPolicy) -> Result<Pos2D> {
    check_rect(grid, rect)?;
    let mut best = Candidate::new(grid.get(rect.r1, rect.c1), Pos2D::new(rect.r1, rect.c1));
    for r in rect.r1..=rect.r2 {
        for c in rect.c1..=rect.c2 {
            let cand = Candidate::new(grid.get(r, c), Pos2D::new(r, c));
            if cand.cmp_under(&best, policy).is_lt() {
                best = cand;
            }
        }
    }
    Ok(best.pos)
}

/// Second, independent formulation: materialize the cell list and take
/// `policy_min` over it.
pub fn oracle_rmq_flat<T: Ord + Copy>(grid: &Grid<T>, rect: &Rect, policy: TieBreakPolicy) -> Result<Pos2D> {
    check_rect(grid, rect)?;
    let cells: Vec<Candidate<T>> = grid
        .cells()
        .iter()
        .enumerate()
        .map(|(k, &v)| Candidate::new(v, Pos2D::new(k / grid.cols() + 1, k % grid.cols() + 1)))
        .filter(|c| rect.contains(c.pos))
        .collect();
    Ok(policy_min(&cells, policy)?.pos)
}

/// Complete query-to-answer map of one class, in canonical query order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnswerTable {
    pub class: QueryClass,
    pub policy: TieBreakPolicy,
    pub m: usize,
    pub n: usize,
    pub answers: Vec<Pos2D>,
}

impl AnswerTable {
    pub fn queries(&self) -> Vec<Rect> {
        self.class.queries(self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }
}

pub fn answer_table<T: Ord + Copy>(grid: &Grid<T>, class: QueryClass, policy: TieBreakPolicy) -> Result<AnswerTable> {
    answer_table_guarded(grid, class, policy, DEFAULT_MAX_CELLS)
}

/// Like [`answer_table`], refusing three- and four-sided tables on arrays
/// with more than `max_cells` cells.
pub fn answer_table_guarded<T: Ord + Copy>(
    grid: &Grid<T>,
    class: QueryClass,
    policy: TieBreakPolicy,
    max_cells: usize,
) -> Result<AnswerTable> {
    let (m, n) = (grid.rows(), grid.cols());
    if matches!(class, QueryClass::ThreeSided | QueryClass::FourSided) && m * n > max_cells {
        return Err(Error::ExplosionGuard(format!(
            "{} table on {}x{} exceeds {} cells",
            class.name(),
            m,
            n,
            max_cells
        )));
    }
    let better = |a: Candidate<T>, b: Candidate<T>| if b.cmp_under(&a, policy).is_lt() { b } else { a };
    let cell = |r: usize, c: usize| Candidate::new(grid.get(r, c), Pos2D::new(r, c));
    let mut answers = Vec::with_capacity(class.query_count(m, n));

    // running minima over rows r1..=r2 of each column
    let span_rows = |r1: usize, r2: usize| -> Vec<Candidate<T>> {
        (1..=n)
            .map(|c| (r1 + 1..=r2).fold(cell(r1, c), |acc, r| better(acc, cell(r, c))))
            .collect()
    };
    let push_intervals = |cols: &[Candidate<T>], answers: &mut Vec<Pos2D>| {
        for j1 in 0..n {
            let mut acc = cols[j1];
            for (j2, &col) in cols.iter().enumerate().skip(j1) {
                if j2 > j1 {
                    acc = better(acc, col);
                }
                answers.push(acc.pos);
            }
        }
    };

    match class {
        QueryClass::OneSided => {
            let cols = span_rows(1, m);
            let mut acc = cols[0];
            for (j, &col) in cols.iter().enumerate() {
                if j > 0 {
                    acc = better(acc, col);
                }
                answers.push(acc.pos);
            }
        }
        QueryClass::TwoSided => {
            for i in 1..=m {
                let cols = span_rows(1, i);
                let mut acc = cols[0];
                for (j, &col) in cols.iter().enumerate() {
                    if j > 0 {
                        acc = better(acc, col);
                    }
                    answers.push(acc.pos);
                }
            }
        }
        QueryClass::ThreeSided => {
            for i in 1..=m {
                push_intervals(&span_rows(1, i), &mut answers);
            }
        }
        QueryClass::ColSpan => push_intervals(&span_rows(1, m), &mut answers),
        QueryClass::FourSided => {
            for r1 in 1..=m {
                for r2 in r1..=m {
                    push_intervals(&span_rows(r1, r2), &mut answers);
                }
            }
        }
    }
    Ok(AnswerTable {
        class,
        policy,
        m,
        n,
        answers,
    })
}

/// Number of pairwise-distinct answer tables among `grids` (exact).
pub fn distinct_tables<T: Ord + Copy>(grids: &[Grid<T>], class: QueryClass, policy: TieBreakPolicy) -> Result<usize> {
    distinct_tables_guarded(grids, class, policy, DEFAULT_MAX_CELLS)
}

pub fn distinct_tables_guarded<T: Ord + Copy>(
    grids: &[Grid<T>],
    class: QueryClass,
    policy: TieBreakPolicy,
    max_cells: usize,
) -> Result<usize> {
    let Some(first) = grids.first() else {
        return Ok(0);
    };
    let (m, n) = (first.rows(), first.cols());
    let mut seen: HashSet<Vec<Pos2D>> = HashSet::new();
    for g in grids {
        if (g.rows(), g.cols()) != (m, n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{}, found {}x{}",
                m,
                n,
                g.rows(),
                g.cols()
            )));
        }
        seen.insert(answer_table_guarded(g, class, policy, max_cells)?.answers);
    }
    Ok(seen.len())
}
