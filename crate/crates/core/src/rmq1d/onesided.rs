use super::check_index;
use crate::bitseq::BitSeq;
use crate::codec::{Codec, Reader, Writer};
use crate::error::{Error, Result};
use crate::space::SpaceNode;

/// Prefix-minimum encoding: `B[i] = 1` iff `A[i]` is smaller than every
/// earlier value, so the answer for `[1, j]` is the last one in `B[1..j]`.
///
/// `B` is stored sparse when it has at most `log2 n` ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneSided1D {
    b: BitSeq,
}

impl OneSided1D {
    pub fn new<T: Ord + Copy>(values: &[T]) -> Result<Self> {
        let first = *values.first().ok_or(Error::EmptyArray)?;
        let mut cur = first;
        let bits: Vec<bool> = values
            .iter()
            .enumerate()
            .map(|(p, &v)| {
                if p == 0 || v < cur {
                    cur = v;
                    true
                } else {
                    false
                }
            })
            .collect();
        let threshold = (usize::BITS - 1 - values.len().leading_zeros()) as usize;
        Ok(OneSided1D {
            b: BitSeq::choose(&bits, threshold),
        })
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn bits(&self) -> &BitSeq {
        &self.b
    }

    #[inline]
    pub fn query_unchecked(&self, j: usize) -> usize {
        self.b.select1(self.b.rank1(j))
    }

    pub fn query(&self, j: usize) -> Result<usize> {
        check_index(j, self.len())?;
        Ok(self.query_unchecked(j))
    }

    pub fn space(&self, name: &str) -> SpaceNode {
        SpaceNode::group(name, vec![self.b.space("B")])
    }
}

impl Codec for OneSided1D {
    fn encode(&self, w: &mut Writer) {
        self.b.encode(w);
    }

    fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Ok(OneSided1D {
            b: BitSeq::decode(r)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = OneSided1D::new(&[1, 0, 1]).unwrap();
        let bits: Vec<bool> = (1..=3).map(|i| s.bits().get(i)).collect();
        assert_eq!(bits, vec![true, true, false]);
        assert_eq!(s.query(3), Ok(2));
        assert_eq!(s.query(1), Ok(1));
        assert_eq!(OneSided1D::new(&[0, 1, 1]).unwrap().query(3), Ok(1));
        assert!(matches!(s.query(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn dense_and_sparse_agree() {
        let desc: Vec<u32> = (0..1000).rev().collect();
        let s = OneSided1D::new(&desc).unwrap();
        assert!(!s.bits().is_sparse());
        for j in 1..=1000 {
            assert_eq!(s.query_unchecked(j), j);
        }
        let few: Vec<u32> = (0..1000).map(|i| if i == 500 { 0 } else { 5 }).collect();
        let s = OneSided1D::new(&few).unwrap();
        assert!(s.bits().is_sparse());
        assert_eq!(s.query_unchecked(500), 1);
        assert_eq!(s.query_unchecked(501), 501);
    }
}
