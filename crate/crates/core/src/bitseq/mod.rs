//! Bit-level building blocks with exact bit accounting.

mod bitvec;
mod intvec;
mod packed;
mod sparse;

pub use bitvec::BitVec;
pub use intvec::{bits_for, IntVec};
pub use packed::{default_chunk, PackedArray};
pub use sparse::SparseBits;

use crate::codec::{Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Either a plain or a sparse bitvector, chosen by density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BitSeq {
    Plain(BitVec),
    Sparse(SparseBits),
}

macro_rules! dispatch {
    ($self:ident, $v:ident => $e:expr) => {
        match $self {
            BitSeq::Plain($v) => $e,
            BitSeq::Sparse($v) => $e,
        }
    };
}

impl BitSeq {
    /// Sparse when the number of ones is at most `max_sparse_ones`.
    pub fn choose(bits: &[bool], max_sparse_ones: usize) -> Self {
        let ones = bits.iter().filter(|&&b| b).count();
        if ones <= max_sparse_ones {
            BitSeq::Sparse(SparseBits::from_bits(bits.iter().copied()))
        } else {
            BitSeq::Plain(BitVec::from_bits(bits.iter().copied()))
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, BitSeq::Sparse(_))
    }

    pub fn len(&self) -> usize {
        dispatch!(self, v => v.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_ones(&self) -> usize {
        dispatch!(self, v => v.count_ones())
    }

    pub fn get(&self, i: usize) -> bool {
        dispatch!(self, v => v.get(i))
    }

    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        dispatch!(self, v => v.rank1(i))
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        dispatch!(self, v => v.rank0(i))
    }

    #[inline]
    pub fn select1(&self, k: usize) -> usize {
        dispatch!(self, v => v.select1(k))
    }

    #[inline]
    pub fn select0(&self, k: usize) -> usize {
        dispatch!(self, v => v.select0(k))
    }

    pub fn rank(&self, b: bool, i: usize) -> Result<usize> {
        dispatch!(self, v => v.rank(b, i))
    }

    pub fn select(&self, b: bool, k: usize) -> Result<usize> {
        dispatch!(self, v => v.select(b, k))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        dispatch!(self, v => v.space(name))
    }
}

impl Codec for BitSeq {
    fn encode(&self, w: &mut Writer) {
        match self {
            BitSeq::Plain(v) => {
                w.u8(0);
                v.encode(w);
            }
            BitSeq::Sparse(v) => {
                w.u8(1);
                v.encode(w);
            }
        }
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.u8()? {
            0 => Ok(BitSeq::Plain(BitVec::decode(r)?)),
            1 => Ok(BitSeq::Sparse(SparseBits::decode(r)?)),
            t => Err(Error::Decode(format!("unknown bit sequence kind {}", t))),
        }
    }
}
