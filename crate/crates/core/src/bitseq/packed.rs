use super::intvec::{bits_for, IntVec};
use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Base-`b` symbols grouped `t` per chunk, each chunk stored as one
/// mixed-radix integer (first symbol most significant).
///
/// Payload is `ceil(count/t) * ceil(log2 b^t)` bits, which stays within
/// `count * log2 b + ceil(count/t) + O(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedArray {
    count: usize,
    base: u64,
    chunk: usize,
    codes: IntVec,
    /// `base^(chunk-1-d)` for digit `d`; rebuilt on load.
    weights: Vec<u64>,
}

/// Largest `t` with `base^t <= 2^63`.
pub fn default_chunk(base: u64) -> usize {
    let mut t = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(base) {
        if next > 1u64 << 63 {
            break;
        }
        acc = next;
        t += 1;
    }
    t.max(1)
}

fn weights(base: u64, chunk: usize) -> Vec<u64> {
    let mut w = vec![1u64; chunk];
    for d in (0..chunk.saturating_sub(1)).rev() {
        w[d] = w[d + 1] * base;
    }
    w
}

impl PackedArray {
    pub fn new(values: &[u64], base: u64) -> Result<Self> {
        Self::with_chunk(values, base, default_chunk(base))
    }

    pub fn with_chunk(values: &[u64], base: u64, chunk: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidParameter(format!("packed base {} < 2", base)));
        }
        if chunk == 0 {
            return Err(Error::InvalidParameter("packed chunk must be positive".into()));
        }
        let span = base
            .checked_pow(chunk as u32)
            .ok_or_else(|| Error::InvalidParameter(format!("{}^{} overflows 64 bits", base, chunk)))?;
        if let Some(&v) = values.iter().find(|&&v| v >= base) {
            return Err(Error::ValueOutOfBase { value: v, base });
        }
        let w = weights(base, chunk);
        let width = bits_for(span - 1);
        let codes = IntVec::from_values(
            width,
            values
                .chunks(chunk)
                .map(|c| c.iter().zip(&w).map(|(&v, &wt)| v * wt).sum::<u64>()),
        );
        Ok(PackedArray {
            count: values.len(),
            base,
            chunk,
            codes,
            weights: w,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn chunk(&self) -> usize {
        self.chunk
    }

    pub fn chunk_width(&self) -> u32 {
        self.codes.width()
    }

    /// Raw code of chunk `c` (0-based).
    pub fn chunk_code(&self, c: usize) -> u64 {
        self.codes.get(c)
    }

    /// Symbol at 1-based `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i >= 1 && i <= self.count);
        let p = i - 1;
        (self.codes.get(p / self.chunk) / self.weights[p % self.chunk]) % self.base
    }

    pub fn checked_get(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.count {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.count,
            });
        }
        Ok(self.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.count).map(move |i| self.get(i))
    }

    pub fn payload_bits(&self) -> u64 {
        self.codes.payload_bits()
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::leaf(name, self.payload_bits())
    }
}

impl Codec for PackedArray {
    fn encode(&self, w: &mut Writer) {
        w.usize(self.count);
        w.u64(self.base);
        w.usize(self.chunk);
        self.codes.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let count = r.usize()?;
        let base = r.u64()?;
        let chunk = r.usize()?;
        let codes = IntVec::decode(r)?;
        expect(base >= 2 && chunk >= 1, "packed parameters out of range")?;
        let span = base
            .checked_pow(chunk as u32)
            .ok_or_else(|| Error::Decode("packed span overflows".into()))?;
        expect(
            codes.len() == count.div_ceil(chunk) && codes.width() == bits_for(span - 1),
            "packed layout mismatch",
        )?;
        Ok(PackedArray {
            count,
            base,
            chunk,
            codes,
            weights: weights(base, chunk),
        })
    }
}
