use rustc_hash::FxHashMap;

use super::values_u64;
use crate::bitseq::{bits_for, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::model::{Array2D, Candidate, Pos2D, Rect, Symbol, TieBreakPolicy};
use crate::rmq1d::{Rmq1D, Rmq1DGeneral};
use crate::space::SpaceNode;

/// Largest block side; keeps in-block offsets in a byte and tables small.
pub const MAX_SIDE: usize = 8;

/// Default block side: `max(2, floor(sqrt(log2(mn) / log2 sigma) / 2))`,
/// shrunk until `c^2 * max(1, ceil(log2 sigma)) <= 28`.
pub fn default_side(m: usize, n: usize, sigma: u64) -> usize {
    let lg_cells = ((m * n).max(2) as f64).log2();
    let ratio = if sigma >= 2 {
        lg_cells / (sigma as f64).log2()
    } else {
        lg_cells
    };
    let per_cell = bits_for(sigma.saturating_sub(1)).max(1) as usize;
    let mut c = ((0.5 * ratio.sqrt()).floor() as usize).max(2);
    while c > 1 && c * c * per_cell > 28 {
        c -= 1;
    }
    c
}

#[derive(Clone, Copy, Debug)]
enum Seg {
    /// Cells `lo..=hi` (1-based) inside block `blk`.
    Partial { blk: usize, lo: usize, hi: usize },
    /// Whole blocks `b1..=b2` (0-based).
    Aligned { b1: usize, b2: usize },
}

/// Splits `[lo, hi]` into at most a partial head, an aligned run of whole
/// blocks and a partial tail.
fn segments(lo: usize, hi: usize, c: usize, len: usize) -> ([Seg; 3], usize) {
    let start = |a: usize| a * c + 1;
    let end = |a: usize| ((a + 1) * c).min(len);
    let (a1, a2) = ((lo - 1) / c, (hi - 1) / c);
    let mut out = [Seg::Aligned { b1: 0, b2: 0 }; 3];
    let mut k = 0;
    if a1 == a2 {
        out[0] = if lo == start(a1) && hi == end(a1) {
            Seg::Aligned { b1: a1, b2: a1 }
        } else {
            Seg::Partial { blk: a1, lo, hi }
        };
        return (out, 1);
    }
    let mut first = a1;
    if lo != start(a1) {
        out[k] = Seg::Partial {
            blk: a1,
            lo,
            hi: end(a1),
        };
        k += 1;
        first += 1;
    }
    let mut last = a2 as isize;
    let tail = hi != end(a2);
    if tail {
        last -= 1;
    }
    if first as isize <= last {
        out[k] = Seg::Aligned {
            b1: first,
            b2: last as usize,
        };
        k += 1;
    }
    if tail {
        out[k] = Seg::Partial {
            blk: a2,
            lo: start(a2),
            hi,
        };
        k += 1;
    }
    (out, k)
}

/// Per-content answer tables of every local rectangle, rebuilt on load.
#[derive(Clone, Debug, Default)]
struct BlockTables {
    slot: FxHashMap<u64, u32>,
    table: Vec<u8>,
}

/// 4-sided encoding over `c x c` blocks.
///
/// Block contents are stored as mixed-radix codes; the code indexes a
/// memoized table of in-block answers. `A_r` (row minima per block column),
/// `A_c` (column minima per block row) and `A_rc` (block minima) cover the
/// strips and the aligned core of a query.
#[derive(Clone, Debug)]
pub struct FourSidedBlocked {
    m: usize,
    n: usize,
    sigma: u64,
    c: usize,
    policy: TieBreakPolicy,
    bm: usize,
    bn: usize,
    blocks: IntVec,
    ar_vals: IntVec,
    ar_rmq: Rmq1DGeneral,
    ac_vals: IntVec,
    ac_rmq: Rmq1DGeneral,
    arc_vals: IntVec,
    sparse: IntVec,
    // derived
    pow: Vec<u64>,
    level_start: Vec<usize>,
    tables: BlockTables,
}

impl PartialEq for FourSidedBlocked {
    fn eq(&self, o: &Self) -> bool {
        (self.m, self.n, self.sigma, self.c, self.policy) == (o.m, o.n, o.sigma, o.c, o.policy)
            && self.blocks == o.blocks
            && self.ar_vals == o.ar_vals
            && self.ar_rmq == o.ar_rmq
            && self.ac_vals == o.ac_vals
            && self.ac_rmq == o.ac_rmq
            && self.arc_vals == o.arc_vals
            && self.sparse == o.sparse
    }
}

impl Eq for FourSidedBlocked {}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

fn check_side(c: usize, sigma: u64) -> Result<()> {
    if c == 0 || c > MAX_SIDE {
        return Err(Error::InvalidParameter(format!(
            "block side {} outside 1..={}",
            c, MAX_SIDE
        )));
    }
    let codes = (sigma.max(1) as u128).checked_pow((c * c) as u32);
    if codes.is_none_or(|x| x > 1u128 << 64) {
        return Err(Error::AlphabetTooLarge(format!(
            "sigma^(c^2) = {}^{} exceeds 2^64",
            sigma,
            c * c
        )));
    }
    Ok(())
}

impl FourSidedBlocked {
    pub fn new<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy) -> Result<Self> {
        Self::with_side(a, policy, default_side(a.m(), a.n(), a.sigma()))
    }

    pub fn with_side<S: Symbol>(a: &Array2D<S>, policy: TieBreakPolicy, c: usize) -> Result<Self> {
        let sigma = a.sigma();
        check_side(c, sigma)?;
        let g = values_u64(a);
        let (m, n) = (a.m(), a.n());
        let (bm, bn) = (m.div_ceil(c), n.div_ceil(c));
        let pow = powers(sigma, c);
        let width = bits_for(sigma - 1);

        let mut codes = Vec::with_capacity(bm * bn);
        for br in 0..bm {
            for bc in 0..bn {
                let mut code = 0u64;
                for t in (0..c * c).rev() {
                    let (i, j) = (br * c + t / c + 1, bc * c + t % c + 1);
                    let v = if i <= m && j <= n { g.get(i, j) } else { sigma - 1 };
                    code = code.wrapping_mul(sigma).wrapping_add(v);
                }
                codes.push(code);
            }
        }
        let code_width = bits_for(((sigma.max(1) as u128).pow((c * c) as u32) - 1) as u64);
        let blocks = IntVec::from_values(code_width, codes.iter().copied());

        // A_r: row i, block column b (row-major); A_c: column j, block row a (column-major)
        let mut ar = vec![u64::MAX; m * bn];
        for i in 1..=m {
            for j in 1..=n {
                let s = &mut ar[(i - 1) * bn + (j - 1) / c];
                *s = (*s).min(g.get(i, j));
            }
        }
        let mut ac = vec![u64::MAX; n * bm];
        for i in 1..=m {
            for j in 1..=n {
                let s = &mut ac[(j - 1) * bm + (i - 1) / c];
                *s = (*s).min(g.get(i, j));
            }
        }
        let mut arc = vec![u64::MAX; bm * bn];
        for i in 1..=m {
            for j in 1..=n {
                let s = &mut arc[((i - 1) / c) * bn + (j - 1) / c];
                *s = (*s).min(g.get(i, j));
            }
        }

        let mut s = FourSidedBlocked {
            m,
            n,
            sigma,
            c,
            policy,
            bm,
            bn,
            blocks,
            ar_rmq: Rmq1DGeneral::new(&ar)?,
            ar_vals: IntVec::from_values(width, ar),
            ac_rmq: Rmq1DGeneral::new(&ac)?,
            ac_vals: IntVec::from_values(width, ac),
            arc_vals: IntVec::from_values(width, arc),
            sparse: IntVec::new(0, 0),
            pow,
            level_start: Vec::new(),
            tables: BlockTables::default(),
        };
        s.build_tables();
        s.level_start = level_starts(bm, bn);
        s.sparse = s.build_sparse();
        Ok(s)
    }

    pub fn side(&self) -> usize {
        self.c
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn policy(&self) -> TieBreakPolicy {
        self.policy
    }

    fn build_tables(&mut self) {
        let c = self.c;
        let per = c * c * c * c;
        let mut t = BlockTables::default();
        for code in self.blocks.iter() {
            if t.slot.contains_key(&code) {
                continue;
            }
            t.slot.insert(code, t.slot.len() as u32);
            let vals: Vec<u64> = (0..c * c).map(|k| self.digit(code, k)).collect();
            let base = t.table.len();
            t.table.resize(base + per, 0);
            let mut best = vec![0u8; c * c];
            for r1 in 0..c {
                for c1 in 0..c {
                    for r2 in r1..c {
                        for c2 in c1..c {
                            let here = r2 * c + c2;
                            let mut w = here;
                            let cand = |o: usize| Candidate::new(vals[o], Pos2D::new(o / c, o % c));
                            if r2 > r1 {
                                let up = best[(r2 - 1) * c + c2] as usize;
                                if cand(up).cmp_under(&cand(w), self.policy).is_lt() {
                                    w = up;
                                }
                            }
                            if c2 > c1 {
                                let left = best[r2 * c + c2 - 1] as usize;
                                if cand(left).cmp_under(&cand(w), self.policy).is_lt() {
                                    w = left;
                                }
                            }
                            best[here] = w as u8;
                            t.table[base + ((r1 * c + r2) * c + c1) * c + c2] = w as u8;
                        }
                    }
                }
            }
        }
        self.tables = t;
    }

    #[inline]
    fn digit(&self, code: u64, k: usize) -> u64 {
        if self.sigma <= 1 {
            0
        } else {
            (code / self.pow[k]) % self.sigma
        }
    }

    /// Policy minimum of the local rectangle of block `(a, b)`.
    #[inline]
    fn local(&self, a: usize, b: usize, r1: usize, r2: usize, c1: usize, c2: usize) -> Candidate<u64> {
        let c = self.c;
        let code = self.blocks.get(a * self.bn + b);
        let slot = self.tables.slot[&code] as usize;
        let off = self.tables.table[slot * c * c * c * c + ((r1 * c + r2) * c + c1) * c + c2] as usize;
        Candidate::new(
            self.digit(code, off),
            Pos2D::new(a * c + off / c + 1, b * c + off % c + 1),
        )
    }

    fn block_rows(&self, a: usize) -> usize {
        ((a + 1) * self.c).min(self.m) - a * self.c
    }

    fn block_cols(&self, b: usize) -> usize {
        ((b + 1) * self.c).min(self.n) - b * self.c
    }

    /// Policy minimum of the whole block `k = a * bn + b`.
    fn block_min(&self, k: usize) -> Candidate<u64> {
        let (a, b) = (k / self.bn, k % self.bn);
        self.local(a, b, 0, self.block_rows(a) - 1, 0, self.block_cols(b) - 1)
    }

    fn build_sparse(&self) -> IntVec {
        let (bm, bn) = (self.bm, self.bn);
        let total = *self.level_start.last().unwrap();
        let mut out = IntVec::new(bits_for((bm * bn - 1) as u64), total);
        let cands: Vec<Candidate<u64>> = (0..bm * bn).map(|k| self.block_min(k)).collect();
        let (lp, lq) = (floor_log2(bm), floor_log2(bn));
        for p in 0..=lp {
            for q in 0..=lq {
                if p == 0 && q == 0 {
                    continue;
                }
                let (h, w) = (bm - (1 << p) + 1, bn - (1 << q) + 1);
                for a in 0..h {
                    for b in 0..w {
                        let (x, y) = if p > 0 {
                            let half = 1 << (p - 1);
                            (self.sparse_at(&out, p - 1, q, a, b), self.sparse_at(&out, p - 1, q, a + half, b))
                        } else {
                            let half = 1 << (q - 1);
                            (self.sparse_at(&out, p, q - 1, a, b), self.sparse_at(&out, p, q - 1, a, b + half))
                        };
                        let win = if cands[y].cmp_under(&cands[x], self.policy).is_lt() { y } else { x };
                        out.set(self.level_start[p * (lq + 1) + q] + a * w + b, win as u64);
                    }
                }
            }
        }
        out
    }

    #[inline]
    fn sparse_at(&self, t: &IntVec, p: usize, q: usize, a: usize, b: usize) -> usize {
        if p == 0 && q == 0 {
            return a * self.bn + b;
        }
        let lq = floor_log2(self.bn);
        let w = self.bn - (1 << q) + 1;
        t.get(self.level_start[p * (lq + 1) + q] + a * w + b) as usize
    }

    fn core(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> Candidate<u64> {
        let p = floor_log2(a2 - a1 + 1);
        let q = floor_log2(b2 - b1 + 1);
        let (a3, b3) = (a2 + 1 - (1 << p), b2 + 1 - (1 << q));
        let mut best = None;
        for (a, b) in [(a1, b1), (a3, b1), (a1, b3), (a3, b3)] {
            let k = self.sparse_at(&self.sparse, p, q, a, b);
            let mut x = self.block_min(k);
            x.value = self.arc_vals.get(k);
            best = Some(self.pick(best, x));
        }
        best.unwrap()
    }

    #[inline]
    fn pick(&self, best: Option<Candidate<u64>>, c: Candidate<u64>) -> Candidate<u64> {
        match best {
            Some(b) if !c.cmp_under(&b, self.policy).is_lt() => b,
            _ => c,
        }
    }

    /// Answer plus the number of fragments evaluated.
    pub fn query_counted(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> (Pos2D, usize) {
        let c = self.c;
        let (rs, nr) = segments(r1, r2, c, self.m);
        let (cs, nc) = segments(c1, c2, c, self.n);
        let mut best: Option<Candidate<u64>> = None;
        let mut frags = 0;
        for rseg in &rs[..nr] {
            for cseg in &cs[..nc] {
                match (*rseg, *cseg) {
                    (Seg::Partial { blk: a, lo: rl, hi: rh }, Seg::Partial { blk: b, lo: cl, hi: ch }) => {
                        frags += 1;
                        let x = self.local(a, b, rl - a * c - 1, rh - a * c - 1, cl - b * c - 1, ch - b * c - 1);
                        best = Some(self.pick(best, x));
                    }
                    (Seg::Partial { blk: a, lo: rl, hi: rh }, Seg::Aligned { b1, b2 }) => {
                        for i in rl..=rh {
                            frags += 1;
                            let base = (i - 1) * self.bn;
                            let k = self.ar_rmq.rmq_unchecked(base + b1 + 1, base + b2 + 1) - 1;
                            let b = k - base;
                            let lr = i - a * c - 1;
                            let mut x = self.local(a, b, lr, lr, 0, self.block_cols(b) - 1);
                            x.value = self.ar_vals.get(k);
                            best = Some(self.pick(best, x));
                        }
                    }
                    (Seg::Aligned { b1: a1, b2: a2 }, Seg::Partial { blk: b, lo: cl, hi: ch }) => {
                        for j in cl..=ch {
                            frags += 1;
                            let base = (j - 1) * self.bm;
                            let k = self.ac_rmq.rmq_unchecked(base + a1 + 1, base + a2 + 1) - 1;
                            let a = k - base;
                            let lc = j - b * c - 1;
                            let mut x = self.local(a, b, 0, self.block_rows(a) - 1, lc, lc);
                            x.value = self.ac_vals.get(k);
                            best = Some(self.pick(best, x));
                        }
                    }
                    (Seg::Aligned { b1: a1, b2: a2 }, Seg::Aligned { b1, b2 }) => {
                        frags += 1;
                        best = Some(self.pick(best, self.core(a1, a2, b1, b2)));
                    }
                }
            }
        }
        (best.expect("nonempty rectangle").pos, frags)
    }

    #[inline]
    pub fn query_unchecked(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> Pos2D {
        self.query_counted(r1, r2, c1, c2).0
    }

    pub fn query(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> Result<Pos2D> {
        Rect::four_sided(self.m, self.n, r1, r2, c1, c2)?;
        Ok(self.query_unchecked(r1, r2, c1, c2))
    }

    /// Upper bound on fragments per query.
    pub fn max_fragments(&self) -> usize {
        4 + 4 * (self.c - 1) + 1
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![
                SpaceNode::leaf("blocks", self.blocks.payload_bits()),
                SpaceNode::group(
                    "A_r",
                    vec![
                        SpaceNode::leaf("values", self.ar_vals.payload_bits()),
                        self.ar_rmq.space("rmq"),
                    ],
                ),
                SpaceNode::group(
                    "A_c",
                    vec![
                        SpaceNode::leaf("values", self.ac_vals.payload_bits()),
                        self.ac_rmq.space("rmq"),
                    ],
                ),
                SpaceNode::group(
                    "A_rc",
                    vec![
                        SpaceNode::leaf("values", self.arc_vals.payload_bits()),
                        SpaceNode::leaf("sparse_table", self.sparse.payload_bits()),
                    ],
                ),
            ],
        )
    }

    /// In-memory block tables (rebuilt on load, not stored).
    pub fn derived_space(&self) -> SpaceNode {
        let distinct = self.tables.slot.len() as u64;
        SpaceNode::group(
            "block_tables",
            vec![
                SpaceNode::leaf("answers", 8 * self.tables.table.len() as u64),
                SpaceNode::leaf("content_index", distinct * 96),
            ],
        )
    }

    pub fn distinct_blocks(&self) -> usize {
        self.tables.slot.len()
    }
}

fn powers(sigma: u64, c: usize) -> Vec<u64> {
    let mut p = Vec::with_capacity(c * c);
    let mut x = 1u64;
    for _ in 0..c * c {
        p.push(x);
        x = x.wrapping_mul(sigma.max(1));
    }
    p
}

fn level_starts(bm: usize, bn: usize) -> Vec<usize> {
    let (lp, lq) = (floor_log2(bm), floor_log2(bn));
    let mut starts = Vec::with_capacity((lp + 1) * (lq + 1) + 1);
    let mut acc = 0;
    for p in 0..=lp {
        for q in 0..=lq {
            starts.push(acc);
            if p > 0 || q > 0 {
                acc += (bm - (1 << p) + 1) * (bn - (1 << q) + 1);
            }
        }
    }
    starts.push(acc);
    starts
}

impl Codec for FourSidedBlocked {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.m);
        w.usize(self.n);
        w.u64(self.sigma);
        w.usize(self.c);
        w.u8(self.policy.code());
        self.blocks.encode(w);
        self.ar_vals.encode(w);
        self.ar_rmq.encode(w);
        self.ac_vals.encode(w);
        self.ac_rmq.encode(w);
        self.arc_vals.encode(w);
        self.sparse.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let m = r.usize()?;
        let n = r.usize()?;
        let sigma = r.u64()?;
        let c = r.usize()?;
        let policy = TieBreakPolicy::from_code(r.u8()?)?;
        expect(m >= 1 && n >= 1 && sigma >= 1, "4-sided dimensions")?;
        check_side(c, sigma).map_err(|e| Error::Decode(e.to_string()))?;
        let (bm, bn) = (m.div_ceil(c), n.div_ceil(c));
        let blocks = IntVec::decode(r)?;
        let ar_vals = IntVec::decode(r)?;
        let ar_rmq = Rmq1DGeneral::decode(r)?;
        let ac_vals = IntVec::decode(r)?;
        let ac_rmq = Rmq1DGeneral::decode(r)?;
        let arc_vals = IntVec::decode(r)?;
        let sparse = IntVec::decode(r)?;
        let level_start = level_starts(bm, bn);
        expect(
            blocks.len() == bm * bn
                && ar_vals.len() == m * bn
                && ar_rmq.len() == m * bn
                && ac_vals.len() == n * bm
                && ac_rmq.len() == n * bm
                && arc_vals.len() == bm * bn
                && sparse.len() == *level_start.last().unwrap(),
            "4-sided layout mismatch",
        )?;
        let mut s = FourSidedBlocked {
            m,
            n,
            sigma,
            c,
            policy,
            bm,
            bn,
            blocks,
            ar_vals,
            ar_rmq,
            ac_vals,
            ac_rmq,
            arc_vals,
            sparse,
            pow: powers(sigma, c),
            level_start,
            tables: BlockTables::default(),
        };
        s.build_tables();
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Grid, QueryClass};
    use crate::oracle::oracle_rmq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let a = Array2D::from_rows(vec![vec![0u32, 1], vec![1, 0]], 2).unwrap();
        for p in TieBreakPolicy::ALL {
            let s = FourSidedBlocked::with_side(&a, p, 2).unwrap();
            assert_eq!(s.query(1, 2, 1, 2), Ok(Pos2D::new(1, 1)));
        }
        let a = Array2D::from_rows(vec![vec![1u32, 1, 0, 1], vec![1, 1, 1, 1]], 2).unwrap();
        let s = FourSidedBlocked::with_side(&a, TieBreakPolicy::RowMajor, 2).unwrap();
        assert_eq!(s.query(1, 2, 2, 3), Ok(Pos2D::new(1, 3)));
        assert_eq!(s.query(2, 2, 4, 4), Ok(Pos2D::new(2, 4)));
    }

    #[test]
    fn segments_cover_range() {
        for len in 1..20 {
            for c in 1..5 {
                for lo in 1..=len {
                    for hi in lo..=len {
                        let (segs, k) = segments(lo, hi, c, len);
                        let mut cells = Vec::new();
                        let mut partial_cells = 0;
                        for s in &segs[..k] {
                            match *s {
                                Seg::Partial { blk, lo, hi } => {
                                    assert!(hi - lo + 1 < c.min(len));
                                    assert!((lo - 1) / c == blk && (hi - 1) / c == blk);
                                    partial_cells += hi - lo + 1;
                                    cells.extend(lo..=hi);
                                }
                                Seg::Aligned { b1, b2 } => {
                                    cells.extend(b1 * c + 1..=((b2 + 1) * c).min(len));
                                }
                            }
                        }
                        assert_eq!(cells, (lo..=hi).collect::<Vec<_>>());
                        assert!(partial_cells <= 2 * (c.max(1) - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn default_sides() {
        assert_eq!(default_side(1024, 1024, 4), 2);
        assert!(default_side(1 << 20, 1 << 20, 2) >= 2);
        assert_eq!(default_side(8, 8, 1 << 20), 1);
        for sigma in [1u64, 2, 3, 4, 16, 256] {
            let c = default_side(64, 64, sigma);
            assert!(c * c * (bits_for(sigma.saturating_sub(1)).max(1) as usize) <= 28);
        }
    }

    #[test]
    fn random_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let m = rng.gen_range(1..=13);
            let n = rng.gen_range(1..=13);
            let sigma = [1u64, 2, 3, 5][rng.gen_range(0..4)];
            let c = rng.gen_range(1..=4);
            let vals: Vec<u64> = (0..m * n).map(|_| rng.gen_range(0..sigma)).collect();
            let g = Grid::from_vec(m, n, vals).unwrap();
            let a = Array2D::new(g.map(|v| v as u32), sigma).unwrap();
            for p in TieBreakPolicy::ALL {
                let s = FourSidedBlocked::with_side(&a, p, c).unwrap();
                for rect in QueryClass::FourSided.queries(m, n) {
                    let want = oracle_rmq(&g, &rect, p).unwrap();
                    let (got, frags) = s.query_counted(rect.r1, rect.r2, rect.c1, rect.c2);
                    assert_eq!(got, want, "m={} n={} c={} {:?}", m, n, c, rect);
                    assert!(frags <= s.max_fragments());
                }
            }
        }
    }

    #[test]
    fn rejects_oversized_blocks() {
        let a = Array2D::from_rows(vec![vec![0u32; 4]; 4], 256).unwrap();
        assert!(matches!(
            FourSidedBlocked::with_side(&a, TieBreakPolicy::RowMajor, 3),
            Err(Error::AlphabetTooLarge(_))
        ));
        assert!(matches!(
            FourSidedBlocked::with_side(&a, TieBreakPolicy::RowMajor, 0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
