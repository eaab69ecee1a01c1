use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

const SUPER_BITS: usize = 2048;
const BLOCK_BITS: usize = 256;
const BLOCKS_PER_SUPER: usize = SUPER_BITS / BLOCK_BITS;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const SELECT_SAMPLE: usize = 4096;

/// Plain bitvector with constant-time rank and near-constant-time select.
///
/// Positions are 1-based at the API surface: `rank1(i)` counts ones in
/// `[1, i]` and `select1(k)` returns the position of the `k`-th one.
/// The rank directory keeps an absolute count every 2048 bits and a 16-bit
/// relative count every 256 bits; select samples every 4096th occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    samples1: Vec<u32>,
    samples0: Vec<u32>,
    ones: usize,
}

impl BitVec {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len.is_multiple_of(64) {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from raw little-endian words; bits past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let mut v = BitVec {
            len,
            words,
            supers: Vec::new(),
            blocks: Vec::new(),
            samples1: Vec::new(),
            samples0: Vec::new(),
            ones: 0,
        };
        v.build_directory();
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(s.chars().map(|c| c == '1'))
    }

    fn build_directory(&mut self) {
        let n_blocks = self.len.div_ceil(BLOCK_BITS) + 1;
        let n_supers = self.len.div_ceil(SUPER_BITS) + 1;
        self.supers = Vec::with_capacity(n_supers);
        self.blocks = Vec::with_capacity(n_blocks);
        let mut total = 0u64;
        let mut in_super = 0u64;
        for blk in 0..n_blocks {
            if blk % BLOCKS_PER_SUPER == 0 {
                self.supers.push(total);
                in_super = 0;
            }
            self.blocks.push(in_super as u16);
            for w in blk * WORDS_PER_BLOCK..((blk + 1) * WORDS_PER_BLOCK).min(self.words.len()) {
                let c = self.words[w].count_ones() as u64;
                total += c;
                in_super += c;
            }
        }
        self.ones = total as usize;

        self.samples1.clear();
        self.samples0.clear();
        let (mut seen1, mut seen0) = (0usize, 0usize);
        for (s, chunk) in self.words.chunks(SUPER_BITS / 64).enumerate() {
            let bits_here = (self.len - s * SUPER_BITS).min(SUPER_BITS);
            let ones_here: usize = chunk.iter().map(|w| w.count_ones() as usize).sum();
            let zeros_here = bits_here - ones_here;
            // sample k = t*SAMPLE + 1 lives in the superblock where the count crosses it
            while self.samples1.len() * SELECT_SAMPLE < seen1 + ones_here {
                self.samples1.push(s as u32);
            }
            while self.samples0.len() * SELECT_SAMPLE < seen0 + zeros_here {
                self.samples0.push(s as u32);
            }
            seen1 += ones_here;
            seen0 += zeros_here;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        let p = i - 1;
        (self.words[p / 64] >> (p % 64)) & 1 == 1
    }

    /// Bit at 0-based offset `p`.
    #[inline]
    pub(crate) fn bit(&self, p: usize) -> bool {
        (self.words[p / 64] >> (p % 64)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |p| self.bit(p))
    }

    /// Ones in `[1, i]`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let blk = i / BLOCK_BITS;
        let mut r = self.supers[i / SUPER_BITS] as usize + self.blocks[blk] as usize;
        let first = blk * WORDS_PER_BLOCK;
        let last = i / 64;
        for w in &self.words[first..last] {
            r += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[last] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th one, `1 <= k <= count_ones()`.
    #[inline]
    pub fn select1(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.ones);
        self.select_impl::<true>(k)
    }

    /// Position of the `k`-th zero, `1 <= k <= count_zeros()`.
    #[inline]
    pub fn select0(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.count_zeros());
        self.select_impl::<false>(k)
    }

    #[inline]
    fn super_rank<const ONE: bool>(&self, s: usize) -> usize {
        let r = self.supers[s] as usize;
        if ONE {
            r
        } else {
            s * SUPER_BITS - r
        }
    }

    fn select_impl<const ONE: bool>(&self, k: usize) -> usize {
        let samples = if ONE { &self.samples1 } else { &self.samples0 };
        let t = (k - 1) / SELECT_SAMPLE;
        let mut lo = samples[t] as usize;
        let mut hi = match samples.get(t + 1) {
            Some(&s) => s as usize + 1,
            None => self.len.div_ceil(SUPER_BITS),
        };
        // last superblock in [lo, hi) whose preceding count is < k
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.super_rank::<ONE>(mid) < k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut rem = k - self.super_rank::<ONE>(lo);
        let first_blk = lo * BLOCKS_PER_SUPER;
        let last_blk = (first_blk + BLOCKS_PER_SUPER).min(self.blocks.len());
        let mut blk = first_blk;
        while blk + 1 < last_blk {
            let c = self.blocks[blk + 1] as usize;
            let c = if ONE { c } else { (blk + 1 - first_blk) * BLOCK_BITS - c };
            if c >= rem {
                break;
            }
            blk += 1;
        }
        let c = self.blocks[blk] as usize;
        rem -= if ONE { c } else { (blk - first_blk) * BLOCK_BITS - c };
        let mut w = blk * WORDS_PER_BLOCK;
        loop {
            let word = if ONE { self.words[w] } else { !self.words[w] };
            let c = word.count_ones() as usize;
            if c >= rem {
                return w * 64 + select_in_word(word, rem) + 1;
            }
            rem -= c;
            w += 1;
        }
    }

    /// Checked rank for bit `b`.
    pub fn rank(&self, b: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(if b { self.rank1(i) } else { self.rank0(i) })
    }

    /// Checked select for bit `b`.
    pub fn select(&self, b: bool, k: usize) -> Result<usize> {
        let available = if b { self.ones } else { self.count_zeros() };
        if k == 0 || k > available {
            return Err(Error::SelectOutOfRange {
                bit: b as u8,
                k,
                available,
            });
        }
        Ok(if b { self.select1(k) } else { self.select0(k) })
    }

    pub fn directory_bits(&self) -> u64 {
        64 * self.supers.len() as u64
            + 16 * self.blocks.len() as u64
            + 32 * (self.samples1.len() + self.samples0.len()) as u64
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(
            name,
            vec![
                SpaceNode::leaf("payload", self.len as u64),
                SpaceNode::group(
                    "directory",
                    vec![
                        SpaceNode::leaf("rank_super", 64 * self.supers.len() as u64),
                        SpaceNode::leaf("rank_block", 16 * self.blocks.len() as u64),
                        SpaceNode::leaf(
                            "select_samples",
                            32 * (self.samples1.len() + self.samples0.len()) as u64,
                        ),
                    ],
                ),
            ],
        )
    }
}

/// 0-based offset of the `k`-th set bit of `w` (`k >= 1`).
#[inline]
pub(crate) fn select_in_word(mut w: u64, k: usize) -> usize {
    let mut k = k;
    let mut base = 0;
    loop {
        let c = (w & 0xff).count_ones() as usize;
        if c >= k {
            break;
        }
        k -= c;
        w >>= 8;
        base += 8;
    }
    for _ in 1..k {
        w &= w - 1;
    }
    base + w.trailing_zeros() as usize
}

impl Codec for BitVec {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.len);
        w.words(&self.words, self.len as u64);
        w.words(&self.supers, 64 * self.supers.len() as u64);
        w.u16s(&self.blocks);
        w.u32s(&self.samples1);
        w.u32s(&self.samples0);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let words = r.words()?;
        expect(words.len() == len.div_ceil(64), "bitvector word count mismatch")?;
        let supers = r.words()?;
        let blocks = r.u16s()?;
        let samples1 = r.u32s()?;
        let samples0 = r.u32s()?;
        let rebuilt = BitVec::from_words(words, len);
        expect(
            rebuilt.supers == supers
                && rebuilt.blocks == blocks
                && rebuilt.samples1 == samples1
                && rebuilt.samples0 == samples0,
            "bitvector directory does not match payload",
        )?;
        Ok(rebuilt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_check(bits: &[bool]) {
        let v = BitVec::from_bits(bits.iter().copied());
        let (mut r1, mut k1, mut k0) = (0, 0, 0);
        assert_eq!(v.rank1(0), 0);
        for (p, &b) in bits.iter().enumerate() {
            let i = p + 1;
            if b {
                r1 += 1;
                k1 += 1;
                assert_eq!(v.select1(k1), i);
            } else {
                k0 += 1;
                assert_eq!(v.select0(k0), i);
            }
            assert_eq!(v.rank1(i), r1, "rank1({})", i);
            assert_eq!(v.rank0(i), i - r1);
            assert_eq!(v.get(i), b);
        }
        assert_eq!(v.count_ones(), k1);
        assert!(v.select(true, k1 + 1).is_err());
        assert!(v.select(false, k0 + 1).is_err());
    }

    #[test]
    fn small_examples() {
        let v = BitVec::from_str_bits("0110");
        assert_eq!(v.rank1(4), 2);
        assert_eq!(v.rank1(3), 2);
        assert_eq!(v.rank0(4), 2);
        assert_eq!(v.select1(2), 3);
        assert_eq!(v.select0(2), 4);
        assert_eq!(
            v.select(true, 3),
            Err(Error::SelectOutOfRange {
                bit: 1,
                k: 3,
                available: 2
            })
        );

        let e = BitVec::from_bits(std::iter::empty());
        assert_eq!((e.len(), e.rank1(0)), (0, 0));

        let full = BitVec::from_bits(std::iter::repeat_n(true, 64));
        assert_eq!(full.rank1(64), 64);
        assert_eq!(full.select1(64), 64);
        assert_eq!(full.rank(true, 65), Err(Error::IndexOutOfRange { index: 65, len: 64 }));
    }

    #[test]
    fn exhaustive_against_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(len, density) in &[
            (1usize, 0.5),
            (63, 0.5),
            (64, 0.5),
            (65, 0.5),
            (2047, 0.3),
            (2048, 0.7),
            (5000, 0.01),
            (9000, 0.99),
            (1 << 16, 0.5),
            (1 << 16, 0.001),
            (1 << 16, 0.999),
        ] {
            let bits: Vec<bool> = (0..len).map(|_| rng.gen_bool(density)).collect();
            naive_check(&bits);
        }
        naive_check(&vec![false; 20_000]);
        naive_check(&vec![true; 20_000]);
    }

    #[test]
    fn round_trip() {
        let v = BitVec::from_bits((0..10_000).map(|i| i % 3 == 0));
        let mut w = Writer::new();
        v.encode(&mut w);
        assert_eq!(w.payload_bits(), v.space("b").bits);
        let bytes = w.into_bytes();
        let back = BitVec::decode(&mut Reader::new(&bytes)).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn directory_overhead_bound() {
        let v = BitVec::from_bits((0..1usize << 16).map(|i| i % 5 < 2));
        assert!(v.directory_bits() as f64 <= 0.25 * v.len() as f64);
    }

    proptest! {
        #[test]
        fn select_inverts_rank(bits in proptest::collection::vec(any::<bool>(), 0..3000)) {
            naive_check(&bits);
        }

        #[test]
        fn select_in_word_matches(w in any::<u64>()) {
            let mut k = 0;
            for p in 0..64 {
                if (w >> p) & 1 == 1 {
                    k += 1;
                    prop_assert_eq!(select_in_word(w, k), p);
                }
            }
        }
    }
}
