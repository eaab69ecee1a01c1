use crate::codec::{expect, Codec, Reader, Writer};
use crate::error::Result;

/// Fixed-width unsigned integers packed back to back into 64-bit words.
///
/// Widths from 0 to 64 bits are supported; a zero-width vector stores
/// nothing and reads back zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVec {
    len: usize,
    width: u32,
    words: Vec<u64>,
}

#[inline]
fn mask(width: u32) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Bits needed to store every value in `0..=max`.
pub fn bits_for(max: u64) -> u32 {
    64 - max.leading_zeros()
}

impl IntVec {
    pub fn new(width: u32, len: usize) -> Self {
        assert!(width <= 64, "width {} exceeds 64", width);
        let total = width as usize * len;
        IntVec {
            len,
            width,
            words: vec![0; total.div_ceil(64)],
        }
    }

    pub fn from_values(width: u32, values: impl IntoIterator<Item = u64>) -> Self {
        let vals: Vec<u64> = values.into_iter().collect();
        let mut v = IntVec::new(width, vals.len());
        for (i, x) in vals.into_iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    /// Narrowest vector holding `values`.
    pub fn fit(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        Self::from_values(bits_for(max), values.iter().copied())
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
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Logical payload bits: `len * width`.
    pub fn payload_bits(&self) -> u64 {
        self.len as u64 * self.width as u64
    }

    /// Entry at 0-based `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        let lo = self.words[w] >> off;
        if off + self.width <= 64 {
            lo & mask(self.width)
        } else {
            (lo | (self.words[w + 1] << (64 - off))) & mask(self.width)
        }
    }

    pub fn set(&mut self, i: usize, value: u64) {
        assert!(i < self.len);
        if self.width == 0 {
            debug_assert_eq!(value, 0);
            return;
        }
        assert!(
            value <= mask(self.width),
            "value {} exceeds width {}",
            value,
            self.width
        );
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        let m = mask(self.width);
        self.words[w] = (self.words[w] & !(m << off)) | (value << off);
        if off + self.width > 64 {
            let spill = 64 - off;
            let hi_mask = m >> spill;
            self.words[w + 1] = (self.words[w + 1] & !hi_mask) | (value >> spill);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl Codec for IntVec {
    fn encode(&self, w: &mut Writer) {
        w.u64(self.width as u64);
        w.usize(self.len);
        w.words(&self.words, self.payload_bits());
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let width = r.u64()?;
        expect(width <= 64, "intvec width exceeds 64")?;
        let len = r.usize()?;
        let words = r.words()?;
        expect(
            words.len() == (width as usize * len).div_ceil(64),
            "intvec word count mismatch",
        )?;
        Ok(IntVec {
            len,
            width: width as u32,
            words,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_width_reads_zero() {
        let v = IntVec::new(0, 10);
        assert_eq!(v.payload_bits(), 0);
        assert!(v.iter().all(|x| x == 0));
    }

    #[test]
    fn bits_for_edges() {
        assert_eq!(bits_for(0), 0);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(26), 5);
        assert_eq!(bits_for(u64::MAX), 64);
    }

    proptest! {
        #[test]
        fn get_returns_set(width in 0u32..=64, raw in proptest::collection::vec(any::<u64>(), 0..200)) {
            let vals: Vec<u64> = raw.iter().map(|&x| x & mask(width)).collect();
            let v = IntVec::from_values(width, vals.iter().copied());
            prop_assert_eq!(v.iter().collect::<Vec<_>>(), vals);
        }
    }
}
