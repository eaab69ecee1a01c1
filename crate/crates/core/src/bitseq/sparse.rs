use super::intvec::{bits_for, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Bitvector stored as the sorted list of its one-positions.
///
/// Intended for the few-ones regime: `k` ones over length `n` take
/// `k * ceil(log2 n)` bits. Select1 is a direct read; rank and select0 use
/// binary search, so they cost `O(log k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBits {
    len: usize,
    /// 0-based offsets of the ones, strictly increasing.
    pos: IntVec,
}

impl SparseBits {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut len = 0;
        let mut ones = Vec::new();
        for b in bits {
            if b {
                ones.push(len as u64);
            }
            len += 1;
        }
        Self::from_offsets(len, &ones)
    }

    /// `offsets` are 0-based, strictly increasing and below `len`.
    pub fn from_offsets(len: usize, offsets: &[u64]) -> Self {
        debug_assert!(offsets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(offsets.last().is_none_or(|&p| (p as usize) < len));
        let width = bits_for(len.saturating_sub(1) as u64);
        SparseBits {
            len,
            pos: IntVec::from_values(width, offsets.iter().copied()),
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
        self.pos.len()
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.pos.len()
    }

    pub fn get(&self, i: usize) -> bool {
        let r = self.rank1(i);
        r > 0 && self.pos.get(r - 1) as usize == i - 1
    }

    /// Ones in `[1, i]`.
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        // number of stored offsets < i
        let (mut lo, mut hi) = (0, self.pos.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if (self.pos.get(mid) as usize) < i {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    #[inline]
    pub fn select1(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.pos.len());
        self.pos.get(k - 1) as usize + 1
    }

    pub fn select0(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.count_zeros());
        // ones t with (zeros before the t-th one) < k, i.e. pos[t-1] - (t-1) < k
        let (mut lo, mut hi) = (0, self.pos.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if (self.pos.get(mid) as usize) - mid < k {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        k + lo
    }

    pub fn rank(&self, b: bool, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(if b { self.rank1(i) } else { self.rank0(i) })
    }

    pub fn select(&self, b: bool, k: usize) -> Result<usize> {
        let available = if b {
            self.count_ones()
        } else {
            self.count_zeros()
        };
        if k == 0 || k > available {
            return Err(Error::SelectOutOfRange {
                bit: b as u8,
                k,
                available,
            });
        }
        Ok(if b { self.select1(k) } else { self.select0(k) })
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(name, vec![SpaceNode::leaf("positions", self.pos.payload_bits())])
    }
}

impl Codec for SparseBits {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.len);
        self.pos.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let len = r.usize()?;
        let pos = IntVec::decode(r)?;
        expect(
            pos.iter().zip(pos.iter().skip(1)).all(|(a, b)| a < b)
                && pos.iter().last().is_none_or(|p| (p as usize) < len),
            "sparse positions not strictly increasing within length",
        )?;
        Ok(SparseBits { len, pos })
    }
}

#[cfg(test)]
mod tests {
    use super::super::BitVec;
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_plain(bits in proptest::collection::vec(proptest::bool::weighted(0.05), 0..2000)) {
            let s = SparseBits::from_bits(bits.iter().copied());
            let p = BitVec::from_bits(bits.iter().copied());
            for i in 0..=bits.len() {
                prop_assert_eq!(s.rank1(i), p.rank1(i));
            }
            for k in 1..=p.count_ones() {
                prop_assert_eq!(s.select1(k), p.select1(k));
            }
            for k in 1..=p.count_zeros() {
                prop_assert_eq!(s.select0(k), p.select0(k));
            }
            for i in 1..=bits.len() {
                prop_assert_eq!(s.get(i), bits[i - 1]);
            }
        }
    }

    #[test]
    fn space_bound() {
        let n = 1usize << 16;
        let offsets: Vec<u64> = (0..40).map(|t| t * 1000 + 7).collect();
        let s = SparseBits::from_offsets(n, &offsets);
        assert_eq!(s.space("s").bits, 40 * 16);
    }
}
