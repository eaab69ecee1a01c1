use super::cartesian::TreeShape;
use super::Rmq1D;
use crate::bitseq::{bits_for, BitVec, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

const BLOCK: usize = 512;

/// Per byte: total excess change, minimum prefix excess over its 8 steps,
/// and the rightmost step (1..=8) reaching that minimum.
const BYTE_EXCESS: [(i8, i8, u8); 256] = {
    let mut t = [(0i8, 0i8, 0u8); 256];
    let mut b = 0;
    while b < 256 {
        let mut cur = 0i8;
        let mut min = i8::MAX;
        let mut arg = 0u8;
        let mut k = 0;
        while k < 8 {
            cur += if (b >> k) & 1 == 1 { 1 } else { -1 };
            if cur <= min {
                min = cur;
                arg = k as u8 + 1;
            }
            k += 1;
        }
        t[b] = (cur, min, arg);
        b += 1;
    }
    t
};

/// General 1D RMQ encoding: the parenthesis sequence of the Cartesian tree
/// plus an excess-minimum directory.
///
/// With `E(q)` the excess of the first `q` parentheses, `rmq(i, j)` is one
/// plus the number of pushes before the rightmost minimum of `E` over
/// `[select1(i)-1, select1(j)-1]`. The directory keeps, per 512-parenthesis
/// block, the depth of its excess minimum below the block start, and a
/// sparse table of rightmost-minimum blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rmq1DGeneral {
    n: usize,
    bp: BitVec,
    block_drop: IntVec,
    sparse: IntVec,
    /// Start of each sparse-table level inside `sparse`; rebuilt on load.
    level_start: Vec<usize>,
}

fn level_layout(nb: usize) -> Vec<usize> {
    let mut starts = vec![0, 0];
    let mut k = 1;
    while (1usize << k) <= nb {
        let last = *starts.last().unwrap();
        starts.push(last + nb + 1 - (1 << k));
        k += 1;
    }
    starts
}

impl Rmq1DGeneral {
    pub fn new<T: Ord>(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyArray);
        }
        let shape = TreeShape::from_values(values);
        Ok(Self::from_shape(&shape))
    }

    pub fn from_shape(shape: &TreeShape) -> Self {
        let n = shape.len();
        let bp = BitVec::from_bits(shape.bits());
        let positions = 2 * n + 1;
        let nb = positions.div_ceil(BLOCK);

        let mut drops = Vec::with_capacity(nb);
        let mut mins = Vec::with_capacity(nb);
        let mut cur = 0i64;
        for blk in 0..nb {
            let start = blk * BLOCK;
            let end = (start + BLOCK).min(positions);
            let base = cur;
            let mut min = cur;
            for q in start..end - 1 {
                cur += if bp.bit(q) { 1 } else { -1 };
                min = min.min(cur);
            }
            if end < positions {
                cur += if bp.bit(end - 1) { 1 } else { -1 };
            }
            drops.push((base - min) as u64);
            mins.push(min);
        }
        let block_drop = IntVec::from_values(bits_for(BLOCK as u64), drops);

        let starts = level_layout(nb);
        let width = bits_for(nb.saturating_sub(1) as u64);
        let total = *starts.last().unwrap();
        let mut sparse = IntVec::new(width, total);
        let better = |a: usize, b: usize| if mins[b] <= mins[a] { b } else { a };
        for k in 1..starts.len() - 1 {
            let half = 1usize << (k - 1);
            for blk in 0..nb + 1 - (1 << k) {
                let (a, b) = if k == 1 {
                    (blk, blk + 1)
                } else {
                    (
                        sparse.get(starts[k - 1] + blk) as usize,
                        sparse.get(starts[k - 1] + blk + half) as usize,
                    )
                };
                sparse.set(starts[k] + blk, better(a, b) as u64);
            }
        }

        Rmq1DGeneral {
            n,
            bp,
            block_drop,
            sparse,
            level_start: starts,
        }
    }

    pub fn bp(&self) -> &BitVec {
        &self.bp
    }

    #[inline]
    fn excess(&self, q: usize) -> i64 {
        2 * self.bp.rank1(q) as i64 - q as i64
    }

    #[inline]
    fn block_min(&self, blk: usize) -> i64 {
        self.excess(blk * BLOCK) - self.block_drop.get(blk) as i64
    }

    /// Rightmost minimum of `E` over `[a, b]`, given `E(a)`.
    fn scan(&self, a: usize, b: usize, ea: i64) -> (i64, usize) {
        let words = self.bp.words();
        let mut best = (ea, a);
        let mut cur = ea;
        let mut q = a;
        while q < b {
            if q.is_multiple_of(8) && q + 8 <= b {
                let byte = ((words[q / 64] >> (q % 64)) & 0xff) as usize;
                let (tot, min, arg) = BYTE_EXCESS[byte];
                if cur + min as i64 <= best.0 {
                    best = (cur + min as i64, q + arg as usize);
                }
                cur += tot as i64;
                q += 8;
            } else {
                cur += if self.bp.bit(q) { 1 } else { -1 };
                q += 1;
                if cur <= best.0 {
                    best = (cur, q);
                }
            }
        }
        best
    }

    /// Rightmost-minimum block among `[x, y]`.
    fn block_query(&self, x: usize, y: usize) -> usize {
        let len = y - x + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        if k == 0 {
            return x;
        }
        let a = self.sparse.get(self.level_start[k] + x) as usize;
        let b = self.sparse.get(self.level_start[k] + y + 1 - (1 << k)) as usize;
        if self.block_min(b) <= self.block_min(a) {
            b
        } else {
            a
        }
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![
                self.bp.space("bp"),
                SpaceNode::group(
                    "excess_directory",
                    vec![
                        SpaceNode::leaf("block_minima", self.block_drop.payload_bits()),
                        SpaceNode::leaf("sparse_table", self.sparse.payload_bits()),
                    ],
                ),
            ],
        )
    }
}

impl Rmq1D for Rmq1DGeneral {
    fn len(&self) -> usize {
        self.n
    }

    fn rmq_unchecked(&self, i: usize, j: usize) -> usize {
        if i == j {
            return i;
        }
        let lo = self.bp.select1(i) - 1;
        let hi = self.bp.select1(j) - 1;
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        let best = if bl == bh {
            self.scan(lo, hi, self.excess(lo))
        } else {
            let mut best = self.scan(lo, bl * BLOCK + BLOCK - 1, self.excess(lo));
            if bh > bl + 1 {
                let blk = self.block_query(bl + 1, bh - 1);
                if self.block_min(blk) <= best.0 {
                    let start = blk * BLOCK;
                    best = self.scan(start, start + BLOCK - 1, self.excess(start));
                }
            }
            let start = bh * BLOCK;
            let right = self.scan(start, hi, self.excess(start));
            if right.0 <= best.0 {
                best = right;
            }
            best
        };
        self.bp.rank1(best.1) + 1
    }
}

impl Codec for Rmq1DGeneral {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.n);
        self.bp.encode(w);
        self.block_drop.encode(w);
        self.sparse.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.usize()?;
        let bp = BitVec::decode(r)?;
        let block_drop = IntVec::decode(r)?;
        let sparse = IntVec::decode(r)?;
        expect(
            bp.len() == 2 * n && bp.count_ones() == n,
            "parenthesis sequence length mismatch",
        )?;
        let nb = (2 * n + 1).div_ceil(BLOCK);
        let level_start = level_layout(nb);
        expect(
            block_drop.len() == nb && sparse.len() == *level_start.last().unwrap(),
            "excess directory layout mismatch",
        )?;
        Ok(Rmq1DGeneral {
            n,
            bp,
            block_drop,
            sparse,
            level_start,
        })
    }
}
