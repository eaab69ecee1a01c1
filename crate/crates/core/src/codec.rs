//! Length-prefixed little-endian component layout.
//!
//! The writer tracks the number of *logical payload bits* (the bits that a
//! structure's space report accounts for) separately from framing bytes such
//! as lengths, scalar parameters and word padding.

use crate::error::{Error, Result};

#[derive(Default, Debug)]
pub struct Writer {
    buf: Vec<u8>,
    payload_bits: u64,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn usize(&mut self, v: usize) {
        self.u64(v as u64);
    }

    /// Word array holding `logical_bits` accounted bits.
    pub fn words(&mut self, words: &[u64], logical_bits: u64) {
        self.usize(words.len());
        for w in words {
            self.buf.extend_from_slice(&w.to_le_bytes());
        }
        self.payload_bits += logical_bits;
    }

    /// Array of 16-bit entries, each accounted as 16 bits.
    pub fn u16s(&mut self, vals: &[u16]) {
        self.usize(vals.len());
        for v in vals {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
        self.payload_bits += 16 * vals.len() as u64;
    }

    /// Array of 32-bit entries, each accounted as 32 bits.
    pub fn u32s(&mut self, vals: &[u32]) {
        self.usize(vals.len());
        for v in vals {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
        self.payload_bits += 32 * vals.len() as u64;
    }

    pub fn payload_bits(&self) -> u64 {
        self.payload_bits
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.pos + k > self.buf.len() {
            return Err(Error::Decode(format!(
                "unexpected end of input at byte {} (need {})",
                self.pos, k
            )));
        }
        let s = &self.buf[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u64(&mut self) -> Result<u64> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes(b.try_into().expect("8 bytes")))
    }

    pub fn usize(&mut self) -> Result<usize> {
        let v = self.u64()?;
        usize::try_from(v).map_err(|_| Error::Decode(format!("length {} overflows usize", v)))
    }

    fn len_prefix(&mut self, elem: usize) -> Result<usize> {
        let len = self.usize()?;
        if len.saturating_mul(elem) > self.buf.len() - self.pos {
            return Err(Error::Decode(format!("array length {} exceeds input", len)));
        }
        Ok(len)
    }

    pub fn words(&mut self) -> Result<Vec<u64>> {
        let len = self.len_prefix(8)?;
        let raw = self.take(len * 8)?;
        Ok(raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect())
    }

    pub fn u16s(&mut self) -> Result<Vec<u16>> {
        let len = self.len_prefix(2)?;
        let raw = self.take(len * 2)?;
        Ok(raw
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes(c.try_into().expect("2 bytes")))
            .collect())
    }

    pub fn u32s(&mut self) -> Result<Vec<u32>> {
        let len = self.len_prefix(4)?;
        let raw = self.take(len * 4)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect())
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.buf.len()
    }
}

/// Component-level (de)serialization.
pub trait Codec: Sized {
    fn encode(&self, w: &mut Writer);
    fn decode(r: &mut Reader<'_>) -> Result<Self>;
}

pub(crate) fn expect(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Decode(what.to_string()))
    }
}
