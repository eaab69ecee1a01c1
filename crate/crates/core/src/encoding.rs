//! One tagged envelope over every encoding, used for files and reports.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::model::{Array2D, Pos2D, QueryClass, Rect, Symbol, TieBreakPolicy};
use crate::rmq1d::{BinaryRmq, OneSided1D, Rmq1D, Rmq1DBounded, Rmq1DGeneral};
use crate::rmq2d::{ColSpan2D, FourSidedBlocked, OneSided2D, ThreeSidedCk, TwoSidedGeneral, TwoSidedStaircase};
use crate::space::SpaceReport;

const MAGIC: &[u8; 4] = b"RMQE";
const VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    OneSided1D,
    BinaryRmq,
    General1D,
    Bounded1D,
    OneSided2D,
    TwoSidedStaircase,
    TwoSidedGeneral,
    ThreeSided,
    ColSpan,
    FourSided,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 10] = [
        EncodingKind::OneSided1D,
        EncodingKind::BinaryRmq,
        EncodingKind::General1D,
        EncodingKind::Bounded1D,
        EncodingKind::OneSided2D,
        EncodingKind::TwoSidedStaircase,
        EncodingKind::TwoSidedGeneral,
        EncodingKind::ThreeSided,
        EncodingKind::ColSpan,
        EncodingKind::FourSided,
    ];

    pub fn tag(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_tag(tag: u8) -> Result<Self> {
        EncodingKind::ALL
            .get((tag as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::Decode(format!("unknown structure tag {}", tag)))
    }

    pub fn name(self) -> &'static str {
        match self {
            EncodingKind::OneSided1D => "onesided1d",
            EncodingKind::BinaryRmq => "binary_rmq",
            EncodingKind::General1D => "general1d",
            EncodingKind::Bounded1D => "bounded1d",
            EncodingKind::OneSided2D => "onesided2d",
            EncodingKind::TwoSidedStaircase => "twosided_staircase",
            EncodingKind::TwoSidedGeneral => "twosided_general",
            EncodingKind::ThreeSided => "threesided",
            EncodingKind::ColSpan => "colspan",
            EncodingKind::FourSided => "foursided",
        }
    }

    pub fn is_1d(self) -> bool {
        matches!(
            self,
            EncodingKind::OneSided1D | EncodingKind::BinaryRmq | EncodingKind::General1D | EncodingKind::Bounded1D
        )
    }

    /// The class of queries the encoding is built for.
    pub fn query_class(self) -> QueryClass {
        match self {
            EncodingKind::OneSided1D | EncodingKind::OneSided2D => QueryClass::OneSided,
            EncodingKind::TwoSidedStaircase | EncodingKind::TwoSidedGeneral => QueryClass::TwoSided,
            EncodingKind::ThreeSided => QueryClass::ThreeSided,
            EncodingKind::ColSpan => QueryClass::ColSpan,
            EncodingKind::BinaryRmq | EncodingKind::General1D | EncodingKind::Bounded1D | EncodingKind::FourSided => {
                QueryClass::FourSided
            }
        }
    }

    /// Policies the encoding can be built under. On a single row both
    /// policies pick the leftmost minimum, so 1D encodings accept either.
    pub fn policies(self) -> &'static [TieBreakPolicy] {
        match self {
            EncodingKind::TwoSidedGeneral => &TwoSidedGeneral::POLICIES,
            EncodingKind::ThreeSided => &ThreeSidedCk::POLICIES,
            EncodingKind::ColSpan => &ColSpan2D::POLICIES,
            _ => &TieBreakPolicy::ALL,
        }
    }

    pub fn native_policy(self) -> TieBreakPolicy {
        self.policies()[0]
    }

    /// Whether an `m x n` array over `sigma` can be encoded at all.
    pub fn supports(self, m: usize, _n: usize, sigma: u64) -> bool {
        match self {
            EncodingKind::BinaryRmq => m == 1 && sigma <= 2,
            k if k.is_1d() => m == 1,
            _ => true,
        }
    }
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        EncodingKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown encoding '{}'", s)))
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
enum Inner {
    OneSided1D(OneSided1D),
    BinaryRmq(BinaryRmq),
    General1D(Rmq1DGeneral),
    Bounded1D(Rmq1DBounded),
    OneSided2D(OneSided2D),
    TwoSidedStaircase(TwoSidedStaircase),
    TwoSidedGeneral(TwoSidedGeneral),
    ThreeSided(ThreeSidedCk),
    ColSpan(ColSpan2D),
    FourSided(FourSidedBlocked),
}

/// A built encoding with its dimensions and policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnyEncoding {
    kind: EncodingKind,
    m: usize,
    n: usize,
    sigma: u64,
    policy: TieBreakPolicy,
    inner: Inner,
}

fn single_row<S: Symbol>(kind: EncodingKind, a: &Array2D<S>) -> Result<Vec<u64>> {
    if a.m() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} needs a single-row array, got {} rows",
            kind,
            a.m()
        )));
    }
    Ok(a.row_values(1))
}

impl AnyEncoding {
    pub fn build<S: Symbol>(kind: EncodingKind, a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        if kind.is_1d() && !kind.policies().contains(&policy) {
            return Err(Error::UnsupportedPolicy {
                structure: kind.name(),
                policy,
            });
        }
        let inner = match kind {
            EncodingKind::OneSided1D => Inner::OneSided1D(OneSided1D::new(&single_row(kind, a)?)?),
            EncodingKind::BinaryRmq => Inner::BinaryRmq(BinaryRmq::new(&single_row(kind, a)?)?),
            EncodingKind::General1D => Inner::General1D(Rmq1DGeneral::new(&single_row(kind, a)?)?),
            EncodingKind::Bounded1D => Inner::Bounded1D(Rmq1DBounded::new(&single_row(kind, a)?, a.sigma())?),
            EncodingKind::OneSided2D => Inner::OneSided2D(OneSided2D::new(a, policy)?),
            EncodingKind::TwoSidedStaircase => Inner::TwoSidedStaircase(TwoSidedStaircase::new(a, policy)?),
            EncodingKind::TwoSidedGeneral => Inner::TwoSidedGeneral(TwoSidedGeneral::new(a, policy)?),
            EncodingKind::ThreeSided => Inner::ThreeSided(ThreeSidedCk::new(a, policy)?),
            EncodingKind::ColSpan => Inner::ColSpan(ColSpan2D::new(a, policy)?),
            EncodingKind::FourSided => Inner::FourSided(FourSidedBlocked::new(a, policy)?),
        };
        Ok(AnyEncoding {
            kind,
            m: a.m(),
            n: a.n(),
            sigma: a.sigma(),
            policy,
            inner,
        })
    }

    /// 4-sided encoding with an explicit block side.
    pub fn build_four_sided<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy, side: usize) -> Result<Self> {
        Ok(AnyEncoding {
            kind: EncodingKind::FourSided,
            m: a.m(),
            n: a.n(),
            sigma: a.sigma(),
            policy,
            inner: Inner::FourSided(FourSidedBlocked::with_side(a, policy, side)?),
        })
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn policy(&self) -> TieBreakPolicy {
        self.policy
    }

    /// Whether a rectangle of `class` can be asked of this encoding.
    pub fn accepts(&self, class: QueryClass) -> bool {
        match self.kind {
            EncodingKind::FourSided | EncodingKind::BinaryRmq | EncodingKind::General1D | EncodingKind::Bounded1D => {
                true
            }
            EncodingKind::TwoSidedGeneral => matches!(class, QueryClass::TwoSided | QueryClass::ThreeSided),
            k => k.query_class() == class,
        }
    }

    /// Answer for an already validated rectangle inside the array.
    #[inline]
    pub fn query_unchecked(&self, q: &Rect) -> Pos2D {
        match &self.inner {
            Inner::OneSided1D(s) => Pos2D::new(1, s.query_unchecked(q.c2)),
            Inner::BinaryRmq(s) => Pos2D::new(1, s.rmq_unchecked(q.c1, q.c2)),
            Inner::General1D(s) => Pos2D::new(1, s.rmq_unchecked(q.c1, q.c2)),
            Inner::Bounded1D(s) => Pos2D::new(1, s.rmq_unchecked(q.c1, q.c2)),
            Inner::OneSided2D(s) => s.query_unchecked(q.c2),
            Inner::TwoSidedStaircase(s) => s.query_unchecked(q.r2, q.c2),
            Inner::TwoSidedGeneral(s) if q.c1 == 1 => s.query_unchecked(q.r2, q.c2),
            Inner::TwoSidedGeneral(s) => s.three_sided_unchecked(q.r2, q.c1, q.c2),
            Inner::ThreeSided(s) => s.query_unchecked(q.r2, q.c1, q.c2),
            Inner::ColSpan(s) => s.query_unchecked(q.c1, q.c2),
            Inner::FourSided(s) => s.query_unchecked(q.r1, q.r2, q.c1, q.c2),
        }
    }

    pub fn query(&self, q: &Rect) -> Result<Pos2D> {
        let checked = Rect::new(q.class, q.r1, q.r2, q.c1, q.c2, self.m, self.n)?;
        if !self.accepts(q.class) {
            return Err(Error::ClassViolation {
                class: q.class,
                reason: format!("{} does not answer this class", self.kind),
            });
        }
        Ok(self.query_unchecked(&checked))
    }

    /// Level or presence tests made by one query, where the encoding
    /// counts them (staircase, 3-sided and 4-sided fragments).
    pub fn query_cost(&self, q: &Rect) -> Option<usize> {
        match &self.inner {
            Inner::TwoSidedStaircase(s) => Some(s.query_counted(q.r2, q.c2).1),
            Inner::ThreeSided(s) => Some(s.query_counted(q.r2, q.c1, q.c2).1),
            Inner::FourSided(s) => Some(s.query_counted(q.r1, q.r2, q.c1, q.c2).1),
            _ => None,
        }
    }

    pub fn measure(&self) -> SpaceReport {
        let name = self.kind.name();
        let (root, derived) = match &self.inner {
            Inner::OneSided1D(s) => (s.space(name), None),
            Inner::BinaryRmq(s) => (s.space(name), None),
            Inner::General1D(s) => (s.space(name), None),
            Inner::Bounded1D(s) => (s.space(name), Some(s.derived_space())),
            Inner::OneSided2D(s) => (s.space(name), None),
            Inner::TwoSidedStaircase(s) => (s.space(name), None),
            Inner::TwoSidedGeneral(s) => (s.space(name), None),
            Inner::ThreeSided(s) => (s.space(name), None),
            Inner::ColSpan(s) => (s.space(name), s.derived_space()),
            Inner::FourSided(s) => (s.space(name), Some(s.derived_space())),
        };
        let mut report = SpaceReport::new(name, root, (self.m * self.n) as u64)
            .with_context("m", self.m)
            .with_context("n", self.n)
            .with_context("sigma", self.sigma)
            .with_context("policy", self.policy.name());
        if let Inner::FourSided(s) = &self.inner {
            report = report.with_context("c", s.side());
        }
        if let Inner::Bounded1D(s) = &self.inner {
            report = report.with_context("b", s.block_size());
        }
        match derived {
            Some(d) => report.with_derived(d),
            None => report,
        }
    }

    /// Serialized bytes and the number of accounted payload bits.
    pub fn to_bytes_counted(&self) -> (Vec<u8>, u64) {
        let mut w = Writer::new();
        for &b in MAGIC {
            w.u8(b);
        }
        w.u8(VERSION);
        w.u8(self.kind.tag());
        w.u8(self.policy.code());
        w.usize(self.m);
        w.usize(self.n);
        w.u64(self.sigma);
        match &self.inner {
            Inner::OneSided1D(s) => s.encode(&mut w),
            Inner::BinaryRmq(s) => s.encode(&mut w),
            Inner::General1D(s) => s.encode(&mut w),
            Inner::Bounded1D(s) => s.encode(&mut w),
            Inner::OneSided2D(s) => s.encode(&mut w),
            Inner::TwoSidedStaircase(s) => s.encode(&mut w),
            Inner::TwoSidedGeneral(s) => s.encode(&mut w),
            Inner::ThreeSided(s) => s.encode(&mut w),
            Inner::ColSpan(s) => s.encode(&mut w),
            Inner::FourSided(s) => s.encode(&mut w),
        }
        let bits = w.payload_bits();
        (w.into_bytes(), bits)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.to_bytes_counted().0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let mut magic = [0u8; 4];
        for b in magic.iter_mut() {
            *b = r.u8()?;
        }
        expect(&magic == MAGIC, "not an encoding file")?;
        let version = r.u8()?;
        expect(version == VERSION, "unsupported encoding version")?;
        let kind = EncodingKind::from_tag(r.u8()?)?;
        let policy = TieBreakPolicy::from_code(r.u8()?)?;
        let m = r.usize()?;
        let n = r.usize()?;
        let sigma = r.u64()?;
        let inner = match kind {
            EncodingKind::OneSided1D => Inner::OneSided1D(OneSided1D::decode(&mut r)?),
            EncodingKind::BinaryRmq => Inner::BinaryRmq(BinaryRmq::decode(&mut r)?),
            EncodingKind::General1D => Inner::General1D(Rmq1DGeneral::decode(&mut r)?),
            EncodingKind::Bounded1D => Inner::Bounded1D(Rmq1DBounded::decode(&mut r)?),
            EncodingKind::OneSided2D => Inner::OneSided2D(OneSided2D::decode(&mut r)?),
            EncodingKind::TwoSidedStaircase => Inner::TwoSidedStaircase(TwoSidedStaircase::decode(&mut r)?),
            EncodingKind::TwoSidedGeneral => Inner::TwoSidedGeneral(TwoSidedGeneral::decode(&mut r)?),
            EncodingKind::ThreeSided => Inner::ThreeSided(ThreeSidedCk::decode(&mut r)?),
            EncodingKind::ColSpan => Inner::ColSpan(ColSpan2D::decode(&mut r)?),
            EncodingKind::FourSided => Inner::FourSided(FourSidedBlocked::decode(&mut r)?),
        };
        expect(r.is_exhausted(), "trailing bytes after encoding")?;
        let len = match &inner {
            Inner::OneSided1D(s) => Some(s.len()),
            Inner::BinaryRmq(s) => Some(s.len()),
            Inner::General1D(s) => Some(s.len()),
            Inner::Bounded1D(s) => Some(s.len()),
            _ => None,
        };
        expect(len.is_none_or(|l| m == 1 && l == n), "1D length mismatch")?;
        Ok(AnyEncoding {
            kind,
            m,
            n,
            sigma,
            policy,
            inner,
        })
    }
}

/// Median over `rounds` timed passes of the mean nanoseconds per query.
pub fn median_latency_ns(enc: &AnyEncoding, queries: &[Rect], rounds: usize) -> f64 {
    let mut samples: Vec<f64> = (0..rounds.max(1))
        .map(|_| {
            let start = Instant::now();
            let mut acc = 0usize;
            for q in queries {
                let p = enc.query_unchecked(black_box(q));
                acc = acc.wrapping_add(p.row ^ p.col);
            }
            black_box(acc);
            start.elapsed().as_nanos() as f64 / queries.len().max(1) as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}
