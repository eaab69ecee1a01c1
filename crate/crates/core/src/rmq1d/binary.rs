use super::Rmq1D;
use crate::bitseq::BitVec;
use crate::codec::{Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// RMQ over a 0/1 array: the array itself plus rank/select.
///
/// The answer is the first zero in `[i, j]` if there is one, else `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRmq {
    bits: BitVec,
}

impl BinaryRmq {
    pub fn new(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyArray);
        }
        if let Some(p) = values.iter().position(|&v| v > 1) {
            return Err(Error::AlphabetViolation(format!(
                "binary structure got value {} at position {}",
                values[p],
                p + 1
            )));
        }
        Ok(BinaryRmq {
            bits: BitVec::from_bits(values.iter().map(|&v| v == 1)),
        })
    }

    /// Value at 1-based `i`.
    #[inline]
    pub fn value(&self, i: usize) -> u64 {
        self.bits.get(i) as u64
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        self.bits.space(name)
    }
}

impl Rmq1D for BinaryRmq {
    fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    fn rmq_unchecked(&self, i: usize, j: usize) -> usize {
        let before = self.bits.rank0(i - 1);
        if self.bits.rank0(j) > before {
            self.bits.select0(before + 1)
        } else {
            i
        }
    }
}

impl Codec for BinaryRmq {
    fn encode(&self, w: &mut Writer) {
        self.bits.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(BinaryRmq {
            bits: BitVec::decode(r)?,
        })
    }
}
