use super::binary::BinaryRmq;
use super::cartesian::TreeShape;
use super::general::Rmq1DGeneral;
use super::shapes::{ShapeMemo, TreeCounts};
use super::Rmq1D;
use crate::bitseq::{bits_for, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Largest alphabet accepted by the blocked structure.
pub const MAX_SIGMA: u64 = 256;
const MAX_BLOCK: usize = 32;

/// Binomial coefficients `C(x, y)` for `x < rows`, `y < cols`, saturating.
#[derive(Clone, Debug)]
struct Binom {
    cols: usize,
    t: Vec<u64>,
}

impl Binom {
    fn new(rows: usize, cols: usize) -> Self {
        let mut t = vec![0u64; rows * cols];
        for x in 0..rows {
            t[x * cols] = 1;
            for y in 1..cols.min(x + 1) {
                let a = t[(x - 1) * cols + y - 1];
                let b = if y < x { t[(x - 1) * cols + y] } else { 0 };
                t[x * cols + y] = a.saturating_add(b);
            }
        }
        Binom { cols, t }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u64 {
        if y > x {
            0
        } else {
            self.t[x * self.cols + y]
        }
    }

    /// Largest `e` in `[lo, hi]` with `C(e, y) <= rem`, given `C(lo, y) <= rem`.
    #[inline]
    fn floor(&self, y: usize, rem: u64, lo: usize, hi: usize) -> usize {
        if y == 1 {
            return (rem as usize).min(hi);
        }
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.get(mid, y) <= rem {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    fn memory_bits(&self) -> u64 {
        64 * self.t.len() as u64
    }
}

fn binom_u128(x: u64, y: u64) -> u128 {
    let y = y.min(x - y);
    let mut acc: u128 = 1;
    for k in 0..y {
        acc = match acc.checked_mul((x - k) as u128) {
            Some(v) => v / (k as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Code counts `(right spine, left spine)` for block size `b`, or `None`
/// when either exceeds 64 bits.
fn code_counts(b: usize, sigma: u64) -> Option<(u64, u64)> {
    let right = binom_u128(b as u64 - 1 + sigma - 1, sigma - 1);
    let lmax = (sigma - 1).min(b as u64 - 1);
    let left = (0..=lmax).map(|l| binom_u128(sigma - 1, l)).max().unwrap_or(1);
    let fits = |c: u128| c <= u64::MAX as u128;
    (fits(right) && fits(left)).then_some((right as u64, left as u64))
}

/// `max(4, ceil(log2 n))`, capped at 32 and reduced until the spine codes
/// of alphabet `sigma` fit in 64 bits.
pub fn default_block_size(n: usize, sigma: u64) -> usize {
    let log = (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize;
    let mut b = log.clamp(4, MAX_BLOCK);
    while b > 1 && code_counts(b, sigma.max(1)).is_none() {
        b -= 1;
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Minima {
    /// Binary alphabets: the 0/1 block minima double as their own RMQ.
    Binary(BinaryRmq),
    General { values: IntVec, rmq: Rmq1DGeneral },
}

impl Minima {
    fn new(m: &[u64], sigma: u64) -> Self {
        if sigma <= 2 {
            Minima::Binary(BinaryRmq::new(m).expect("binary block minima"))
        } else {
            Minima::General {
                values: IntVec::from_values(bits_for(sigma - 1), m.iter().copied()),
                rmq: Rmq1DGeneral::new(m).expect("nonempty block minima"),
            }
        }
    }

    #[inline]
    fn value(&self, blk: usize) -> u64 {
        match self {
            Minima::Binary(b) => b.value(blk + 1),
            Minima::General { values, .. } => values.get(blk),
        }
    }

    /// 0-based block of the leftmost minimum among blocks `[x, y]` (0-based).
    #[inline]
    fn rmq(&self, x: usize, y: usize) -> usize {
        match self {
            Minima::Binary(b) => b.rmq_unchecked(x + 1, y + 1) - 1,
            Minima::General { rmq, .. } => rmq.rmq_unchecked(x + 1, y + 1) - 1,
        }
    }

    fn space(&self) -> SpaceNode {
        match self {
            Minima::Binary(b) => SpaceNode::group("block_minima", vec![b.space("values")]),
            Minima::General { values, rmq } => SpaceNode::group(
                "block_minima",
                vec![SpaceNode::leaf("values", values.payload_bits()), rmq.space("rmq")],
            ),
        }
    }
}

/// Blocked 1D RMQ encoding for alphabets of size `sigma`.
///
/// Each block of `b` cells stores the rank of its Cartesian tree among
/// trees with left height at most `sigma - 1`. In-block answers come from
/// per-type stack masks, rebuilt on load for the types that occur. To
/// compare fragments across blocks, each block also stores the values its
/// type leaves open: those of the right spine (suffix minima) as a rank of
/// their count profile, and those of the left spine (prefix minima) as a
/// rank of a subset of `1..sigma`. Block minima carry their own RMQ.
#[derive(Clone, Debug)]
pub struct Rmq1DBounded {
    n: usize,
    sigma: u64,
    b: usize,
    types: IntVec,
    rcodes: IntVec,
    lcodes: IntVec,
    minima: Minima,
    memo: ShapeMemo,
    binom: Binom,
}

impl PartialEq for Rmq1DBounded {
    fn eq(&self, o: &Self) -> bool {
        (self.n, self.sigma, self.b) == (o.n, o.sigma, o.b)
            && self.types == o.types
            && self.rcodes == o.rcodes
            && self.lcodes == o.lcodes
            && self.minima == o.minima
    }
}

impl Eq for Rmq1DBounded {}

fn left_bound(sigma: u64, b: usize) -> usize {
    ((sigma - 1) as usize).min(b)
}

impl Rmq1DBounded {
    pub fn new(values: &[u64], sigma: u64) -> Result<Self> {
        Self::with_block(values, sigma, default_block_size(values.len(), sigma))
    }

    pub fn with_block(values: &[u64], sigma: u64, b: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyArray);
        }
        if sigma == 0 || sigma > MAX_SIGMA {
            return Err(Error::AlphabetTooLarge(format!(
                "blocked structure supports 1 <= sigma <= {}, got {}",
                MAX_SIGMA, sigma
            )));
        }
        if let Some(p) = values.iter().position(|&v| v >= sigma) {
            return Err(Error::AlphabetViolation(format!(
                "value {} at position {} is not below sigma = {}",
                values[p],
                p + 1,
                sigma
            )));
        }
        if b == 0 || b > MAX_BLOCK {
            return Err(Error::InvalidParameter(format!(
                "block size must be in 1..={}, got {}",
                MAX_BLOCK, b
            )));
        }
        let (rcount, lcount) = code_counts(b, sigma).ok_or_else(|| {
            Error::AlphabetTooLarge(format!(
                "spine codes for sigma = {} and b = {} exceed 64 bits; use a smaller block",
                sigma, b
            ))
        })?;

        let k = left_bound(sigma, b);
        let counts = TreeCounts::new(b, k);
        let n = values.len();
        let nb = n.div_ceil(b);
        let mut memo = ShapeMemo::new(b);
        let binom = Binom::new(b + sigma as usize, sigma as usize);
        let mut types = IntVec::new(bits_for(counts.get(b, k as i64) - 1), nb);
        let mut rcodes = IntVec::new(bits_for(rcount - 1), nb);
        let mut lcodes = IntVec::new(bits_for(lcount - 1), nb);
        let mut minima = Vec::with_capacity(nb);
        let mut vals = vec![0u64; b];

        for blk in 0..nb {
            for (o, slot) in vals.iter_mut().enumerate() {
                *slot = values.get(blk * b + o).copied().unwrap_or(sigma - 1);
            }
            let shape = TreeShape::from_values(&vals);
            let id = counts.rank(&shape.tree(), k);
            memo.insert_with(id, || shape.canonical_array());
            types.set(blk, id);
            let (masks, pm) = memo.get(id);

            let spine = masks[b - 1];
            let root = spine.trailing_zeros() as usize;
            minima.push(vals[root]);

            // right spine after the root: nondecreasing values
            let mut c = vec![0usize; sigma as usize - 1];
            let mut rest = spine & (spine - 1);
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                for cu in c.iter_mut().skip(vals[p] as usize) {
                    *cu += 1;
                }
                rest &= rest - 1;
            }
            let rcode: u64 = c.iter().enumerate().map(|(u, &cu)| binom.get(cu + u, u + 1)).sum();
            rcodes.set(blk, rcode);

            // left spine above the root: positions descending = values ascending
            let mut lcode = 0u64;
            let mut above = pm & !(1u32 << root);
            let mut s = 0;
            while above != 0 {
                let p = 31 - above.leading_zeros() as usize;
                s += 1;
                lcode += binom.get(vals[p] as usize - 1, s);
                above &= !(1u32 << p);
            }
            lcodes.set(blk, lcode);
        }

        Ok(Rmq1DBounded {
            n,
            sigma,
            b,
            types,
            rcodes,
            lcodes,
            minima: Minima::new(&minima, sigma),
            memo,
            binom,
        })
    }

    pub fn block_size(&self) -> usize {
        self.b
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// Stored type id of 0-based block `blk`.
    pub fn type_id(&self, blk: usize) -> u64 {
        self.types.get(blk)
    }

    pub fn distinct_types(&self) -> usize {
        self.memo.distinct()
    }

    /// Value of right-spine node `s >= 1` of a block with `t` such nodes.
    fn right_value(&self, code: u64, t: usize, s: usize) -> u64 {
        let mut rem = code;
        let mut hi = t + self.sigma as usize - 2;
        for u in (0..self.sigma as usize - 1).rev() {
            let e = self.binom.floor(u + 1, rem, u, hi);
            if e - u < s {
                return u as u64 + 1;
            }
            rem -= self.binom.get(e, u + 1);
            hi = e.saturating_sub(1);
        }
        0
    }

    /// Value of left-spine node `s >= 1` of a block with `l` such nodes.
    fn left_value(&self, code: u64, l: usize, s: usize) -> u64 {
        let mut rem = code;
        let mut hi = self.sigma as usize - 2;
        let mut q = l;
        loop {
            let y = self.binom.floor(q, rem, q - 1, hi);
            if q == s {
                return y as u64 + 1;
            }
            rem -= self.binom.get(y, q);
            hi = y - 1;
            q -= 1;
        }
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![
                SpaceNode::leaf("type_ids", self.types.payload_bits()),
                SpaceNode::leaf("right_spine_codes", self.rcodes.payload_bits()),
                SpaceNode::leaf("left_spine_codes", self.lcodes.payload_bits()),
                self.minima.space(),
            ],
        )
    }

    /// In-memory tables rebuilt on load (not stored).
    pub fn derived_space(&self) -> SpaceNode {
        SpaceNode::group(
            "shape_tables",
            vec![
                SpaceNode::leaf("stack_masks", self.memo.memory_bits()),
                SpaceNode::leaf("binomials", self.binom.memory_bits()),
            ],
        )
    }
}

impl Rmq1D for Rmq1DBounded {
    fn len(&self) -> usize {
        self.n
    }

    fn rmq_unchecked(&self, i: usize, j: usize) -> usize {
        let b = self.b;
        let (bi, oi) = ((i - 1) / b, (i - 1) % b);
        let (bj, oj) = ((j - 1) / b, (j - 1) % b);
        let (masks_j, pm_j) = self.memo.get(self.types.get(bj));
        if bi == bj {
            return bi * b + (masks_j[oj] & (u32::MAX << oi)).trailing_zeros() as usize + 1;
        }

        let (masks_i, _) = self.memo.get(self.types.get(bi));
        let spine = masks_i[b - 1] as u64;
        let p = (spine & (u64::MAX << oi)).trailing_zeros() as usize;
        let s = (spine & ((1u64 << p) - 1)).count_ones() as usize;
        let value = if s == 0 {
            self.minima.value(bi)
        } else {
            self.right_value(self.rcodes.get(bi), spine.count_ones() as usize - 1, s)
        };
        let mut best = (value, bi * b + p + 1);

        if bj > bi + 1 {
            let k = self.minima.rmq(bi + 1, bj - 1);
            let v = self.minima.value(k);
            if v < best.0 {
                let (masks_k, _) = self.memo.get(self.types.get(k));
                best = (v, k * b + masks_k[b - 1].trailing_zeros() as usize + 1);
            }
        }

        let p = masks_j[oj].trailing_zeros() as usize;
        let pm = pm_j as u64;
        let s = (pm & !((2u64 << p) - 1)).count_ones() as usize;
        let value = if s == 0 {
            self.minima.value(bj)
        } else {
            self.left_value(self.lcodes.get(bj), pm.count_ones() as usize - 1, s)
        };
        if value < best.0 {
            best = (value, bj * b + p + 1);
        }
        best.1
    }
}

impl Codec for Rmq1DBounded {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.n);
        w.u64(self.sigma);
        w.usize(self.b);
        self.types.encode(w);
        self.rcodes.encode(w);
        self.lcodes.encode(w);
        match &self.minima {
            Minima::Binary(bin) => {
                w.u8(0);
                bin.encode(w);
            }
            Minima::General { values, rmq } => {
                w.u8(1);
                values.encode(w);
                rmq.encode(w);
            }
        }
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let n = r.usize()?;
        let sigma = r.u64()?;
        let b = r.usize()?;
        expect(
            n >= 1 && (1..=MAX_SIGMA).contains(&sigma) && (1..=MAX_BLOCK).contains(&b),
            "blocked structure parameters out of range",
        )?;
        let types = IntVec::decode(r)?;
        let rcodes = IntVec::decode(r)?;
        let lcodes = IntVec::decode(r)?;
        let minima = match r.u8()? {
            0 => Minima::Binary(BinaryRmq::decode(r)?),
            1 => Minima::General {
                values: IntVec::decode(r)?,
                rmq: Rmq1DGeneral::decode(r)?,
            },
            t => return Err(Error::Decode(format!("unknown minima kind {}", t))),
        };
        let nb = n.div_ceil(b);
        expect(
            types.len() == nb && rcodes.len() == nb && lcodes.len() == nb,
            "blocked structure length mismatch",
        )?;
        let k = left_bound(sigma, b);
        let counts = TreeCounts::new(b, k);
        let limit = counts.get(b, k as i64);
        let mut memo = ShapeMemo::new(b);
        for blk in 0..nb {
            let id = types.get(blk);
            expect(id < limit, "type id out of range")?;
            memo.insert_with(id, || counts.unrank(id, b, k));
        }
        Ok(Rmq1DBounded {
            n,
            sigma,
            b,
            types,
            rcodes,
            lcodes,
            minima,
            memo,
            binom: Binom::new(b + sigma as usize, sigma as usize),
        })
    }
}
