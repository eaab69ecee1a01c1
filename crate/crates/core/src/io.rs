//! Text formats for arrays, queries and answers.
//!
//! Array file: first non-comment line `m n sigma`, then `m` lines of `n`
//! whitespace-separated integers. Lines starting with `#` are comments.
//!
//! Query file, one query per line:
//!
//! | class         | line             |
//! |---------------|------------------|
//! | `FOUR_SIDED`  | `r1 r2 c1 c2`    |
//! | `THREE_SIDED` | `i j1 j2`        |
//! | `TWO_SIDED`   | `i j`            |
//! | `COL_SPAN`    | `j1 j2`          |
//! | `ONE_SIDED`   | `j`              |
//!
//! Answer file: one `r c` per line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Array2D, Grid, Pos2D, QueryClass, Rect, Symbol};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_array<S: Symbol>(text: &str) -> Result<Array2D<S>> {
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("missing header line".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::MalformedHeader(format!(
            "expected 'm n sigma', found '{}'",
            header
        )));
    }
    let parse_dim = |s: &str, what: &str| -> Result<u64> {
        s.parse::<u64>()
            .map_err(|_| Error::MalformedHeader(format!("{} '{}' is not a non-negative integer", what, s)))
    };
    let m = parse_dim(fields[0], "m")? as usize;
    let n = parse_dim(fields[1], "n")? as usize;
    let sigma = parse_dim(fields[2], "sigma")?;
    if m == 0 || n == 0 || sigma == 0 {
        return Err(Error::MalformedHeader("m, n and sigma must be positive".into()));
    }

    let mut cells = Vec::with_capacity(m * n);
    let mut rows = 0usize;
    for (line_no, line) in lines {
        rows += 1;
        if rows > m {
            return Err(Error::DimensionMismatch(format!(
                "more than {} rows (line {})",
                m, line_no
            )));
        }
        let mut count = 0usize;
        for tok in line.split_whitespace() {
            count += 1;
            let v: u64 = tok.parse().map_err(|_| Error::MalformedLine {
                line: line_no,
                reason: format!("'{}' is not a non-negative integer", tok),
            })?;
            if v >= sigma {
                return Err(Error::CellOutOfAlphabet {
                    row: rows,
                    col: count,
                    value: v,
                    sigma,
                });
            }
            let s = S::from_u64(v).ok_or_else(|| {
                Error::AlphabetViolation(format!("value {} does not fit the symbol type", v))
            })?;
            cells.push(s);
        }
        if count != n {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} cells, expected {}",
                rows, count, n
            )));
        }
    }
    if rows != m {
        return Err(Error::DimensionMismatch(format!(
            "found {} rows, expected {}",
            rows, m
        )));
    }
    Array2D::new(Grid::from_vec(m, n, cells)?, sigma)
}

pub fn emit_array<S: Symbol>(a: &Array2D<S>) -> String {
    emit_array_with_comments(a, &[])
}

pub fn emit_array_with_comments<S: Symbol>(a: &Array2D<S>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {}", c);
    }
    let _ = writeln!(out, "{} {} {}", a.m(), a.n(), a.sigma());
    for r in 1..=a.m() {
        let row: Vec<String> = a.grid().row(r).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Parses a query file for `class` against an `m x n` array.
pub fn parse_queries(text: &str, class: QueryClass, m: usize, n: usize) -> Result<Vec<Rect>> {
    let arity = match class {
        QueryClass::OneSided => 1,
        QueryClass::TwoSided | QueryClass::ColSpan => 2,
        QueryClass::ThreeSided => 3,
        QueryClass::FourSided => 4,
    };
    let mut out = Vec::new();
    for (line_no, line) in content_lines(text) {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::MalformedLine {
                line: line_no,
                reason: format!("non-integer field in '{}'", line),
            })?;
        if nums.len() != arity {
            return Err(Error::MalformedLine {
                line: line_no,
                reason: format!(
                    "{} expects {} fields, found {}",
                    class.name(),
                    arity,
                    nums.len()
                ),
            });
        }
        let rect = match class {
            QueryClass::OneSided => Rect::one_sided(m, n, nums[0]),
            QueryClass::TwoSided => Rect::two_sided(m, n, nums[0], nums[1]),
            QueryClass::ThreeSided => Rect::three_sided(m, n, nums[0], nums[1], nums[2]),
            QueryClass::ColSpan => Rect::col_span(m, n, nums[0], nums[1]),
            QueryClass::FourSided => Rect::four_sided(m, n, nums[0], nums[1], nums[2], nums[3]),
        }?;
        out.push(rect);
    }
    Ok(out)
}

pub fn emit_query(rect: &Rect) -> String {
    match rect.class {
        QueryClass::OneSided => format!("{}", rect.c2),
        QueryClass::TwoSided => format!("{} {}", rect.r2, rect.c2),
        QueryClass::ThreeSided => format!("{} {} {}", rect.r2, rect.c1, rect.c2),
        QueryClass::ColSpan => format!("{} {}", rect.c1, rect.c2),
        QueryClass::FourSided => format!("{} {} {} {}", rect.r1, rect.r2, rect.c1, rect.c2),
    }
}

pub fn emit_queries(rects: &[Rect]) -> String {
    let mut out = String::new();
    for r in rects {
        let _ = writeln!(out, "{}", emit_query(r));
    }
    out
}

pub fn emit_answers(answers: &[Pos2D]) -> String {
    let mut out = String::with_capacity(answers.len() * 6);
    for p in answers {
        let _ = writeln!(out, "{} {}", p.row, p.col);
    }
    out
}

pub fn parse_answers(text: &str) -> Result<Vec<Pos2D>> {
    content_lines(text)
        .map(|(line_no, line)| {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::MalformedLine {
                    line: line_no,
                    reason: "non-integer field".into(),
                })?;
            match nums.as_slice() {
                [r, c] => Ok(Pos2D::new(*r, *c)),
                _ => Err(Error::MalformedLine {
                    line: line_no,
                    reason: "expected 'r c'".into(),
                }),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_array_examples() {
        let a: Array2D = parse_array("1 1 4\n2\n").unwrap();
        assert_eq!((a.m(), a.n(), a.sigma(), a.value(1, 1)), (1, 1, 4, 2));

        let b: Array2D = parse_array("2 2 2\n1 0\n0 0\n").unwrap();
        assert_eq!(b.row_values(1), vec![1, 0]);
        assert_eq!(b.row_values(2), vec![0, 0]);

        let err = parse_array::<u32>("1 1 2\n5\n").unwrap_err();
        assert!(matches!(err, Error::CellOutOfAlphabet { value: 5, sigma: 2, .. }));
    }

    #[test]
    fn parse_array_errors() {
        assert!(matches!(
            parse_array::<u32>("2 2\n0 0\n"),
            Err(Error::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_array::<u32>("2 2 2\n0 0\n"),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            parse_array::<u32>("1 2 2\n0 0 1\n"),
            Err(Error::DimensionMismatch(_))
        ));
        let commented: Array2D = parse_array("# kind=random\n# seed=3\n1 2 3\n2 1\n").unwrap();
        assert_eq!(commented.row_values(1), vec![2, 1]);
    }

    #[test]
    fn parse_queries_examples() {
        let q = parse_queries("1 2 1 2\n", QueryClass::FourSided, 2, 2).unwrap();
        assert_eq!((q[0].r1, q[0].r2, q[0].c1, q[0].c2), (1, 2, 1, 2));

        let q = parse_queries("3\n", QueryClass::OneSided, 4, 5).unwrap();
        assert_eq!((q[0].r1, q[0].r2, q[0].c1, q[0].c2), (1, 4, 1, 3));

        let err = parse_queries("2 3 1\n", QueryClass::ThreeSided, 3, 3).unwrap_err();
        assert_eq!(err, Error::RangeInverted { lo: 3, hi: 1 });

        assert!(matches!(
            parse_queries("1 2 3\n", QueryClass::TwoSided, 3, 3),
            Err(Error::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn query_emit_round_trip() {
        for class in QueryClass::ALL {
            let qs = class.queries(2, 3);
            let text = emit_queries(&qs);
            assert_eq!(parse_queries(&text, class, 2, 3).unwrap(), qs);
        }
    }

    proptest! {
        #[test]
        fn array_round_trip(m in 1usize..5, n in 1usize..6, sigma in 1u64..9, seed in any::<u64>()) {
            let mut s = seed;
            let cells: Vec<u32> = (0..m * n)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((s >> 33) % sigma) as u32
                })
                .collect();
            let a = Array2D::new(Grid::from_vec(m, n, cells).unwrap(), sigma).unwrap();
            let back: Array2D = parse_array(&emit_array(&a)).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
