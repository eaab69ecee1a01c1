use super::values_u64;
use crate::bitseq::{bits_for, BitSeq, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::Result;
use crate::model::{Array2D, Candidate, Pos2D, Symbol, TieBreakPolicy};
use crate::rmq1d::check_index;
use crate::space::SpaceNode;

/// 1-sided 2D encoding: the columns where the answer of `[1,m] x [1,j]`
/// changes, and the answer row at each of them.
///
/// A changed answer always lies in the new column, so one row index per
/// change column suffices and the query is one rank, one select and one
/// read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneSided2D {
    m: usize,
    policy: TieBreakPolicy,
    b: BitSeq,
    rows: IntVec,
}

impl OneSided2D {
    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        let g = values_u64(a);
        let (m, n) = (a.m(), a.n());
        let mut bits = Vec::with_capacity(n);
        let mut rows = Vec::new();
        let mut acc: Option<Candidate<u64>> = None;
        for j in 1..=n {
            let mut col = Candidate::new(g.get(1, j), Pos2D::new(1, j));
            for i in 2..=m {
                if g.get(i, j) < col.value {
                    col = Candidate::new(g.get(i, j), Pos2D::new(i, j));
                }
            }
            let changed = match acc {
                None => true,
                Some(prev) => col.cmp_under(&prev, policy).is_lt(),
            };
            bits.push(changed);
            if changed {
                acc = Some(col);
                rows.push(col.pos.row as u64 - 1);
            }
        }
        let threshold = (usize::BITS - 1 - n.leading_zeros()) as usize;
        Ok(OneSided2D {
            m,
            policy,
            b: BitSeq::choose(&bits, threshold),
            rows: IntVec::from_values(bits_for(m as u64 - 1), rows),
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.b.len())
    }

    pub fn policy(&self) -> TieBreakPolicy {
        self.policy
    }

    pub fn change_columns(&self) -> usize {
        self.b.count_ones()
    }

    #[inline]
    pub fn query_unchecked(&self, j: usize) -> Pos2D {
        let k = self.b.rank1(j);
        Pos2D::new(self.rows.get(k - 1) as usize + 1, self.b.select1(k))
    }

    pub fn query(&self, j: usize) -> Result<Pos2D> {
        check_index(j, self.b.len())?;
        Ok(self.query_unchecked(j))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![
                self.b.space("B"),
                SpaceNode::leaf("rows", self.rows.payload_bits()),
            ],
        )
    }
}

impl Codec for OneSided2D {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        w.u8(self.policy.code());
        self.b.encode(w);
        self.rows.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let policy = TieBreakPolicy::from_code(r.u8()?)?;
        let b = BitSeq::decode(r)?;
        let rows = IntVec::decode(r)?;
        expect(
            m >= 1 && rows.len() == b.count_ones() && !b.is_empty() && b.get(1),
            "one-sided layout mismatch",
        )?;
        Ok(OneSided2D { m, policy, b, rows })
    }
}
