use super::{Rmq1D, Rmq1DBounded, Rmq1DGeneral};
use crate::codec::{Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Alphabets up to this size get the blocked structure.
pub const SMALL_SIGMA: u64 = 16;

/// The blocked structure for small alphabets, the general one otherwise.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rmq1DAuto {
    General(Rmq1DGeneral),
    Bounded(Rmq1DBounded),
}

impl Rmq1DAuto {
    pub fn new(values: &[u64], sigma: u64) -> Result<Self> {
        if sigma <= SMALL_SIGMA {
            Ok(Rmq1DAuto::Bounded(Rmq1DBounded::new(values, sigma)?))
        } else {
            Ok(Rmq1DAuto::General(Rmq1DGeneral::new(values)?))
        }
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        match self {
            Rmq1DAuto::General(s) => s.space(name),
            Rmq1DAuto::Bounded(s) => s.space(name),
        }
    }

    pub fn derived_space(&self) -> Option<SpaceNode> {
        match self {
            Rmq1DAuto::General(_) => None,
            Rmq1DAuto::Bounded(s) => Some(s.derived_space()),
        }
    }
}

impl Rmq1D for Rmq1DAuto {
    fn len(&self) -> usize {
        match self {
            Rmq1DAuto::General(s) => s.len(),
            Rmq1DAuto::Bounded(s) => s.len(),
        }
    }

    #[inline]
    fn rmq_unchecked(&self, i: usize, j: usize) -> usize {
        match self {
            Rmq1DAuto::General(s) => s.rmq_unchecked(i, j),
            Rmq1DAuto::Bounded(s) => s.rmq_unchecked(i, j),
        }
    }
}

impl Codec for Rmq1DAuto {
    fn encode(&self, w: &mut Writer) {
        match self {
            Rmq1DAuto::General(s) => {
                w.u8(0);
                s.encode(w);
            }
            Rmq1DAuto::Bounded(s) => {
                w.u8(1);
                s.encode(w);
            }
        }
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        match r.u8()? {
            0 => Ok(Rmq1DAuto::General(Rmq1DGeneral::decode(r)?)),
            1 => Ok(Rmq1DAuto::Bounded(Rmq1DBounded::decode(r)?)),
            t => Err(Error::Decode(format!("unknown 1D structure kind {}", t))),
        }
    }
}
