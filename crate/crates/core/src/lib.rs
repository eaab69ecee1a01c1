//! Range minimum query encodings for 1D and 2D arrays over bounded alphabets,
//! with brute-force oracles, lower-bound instance families and bit-exact
//! space accounting.

pub mod bitseq;
pub mod codec;
pub mod error;
pub mod io;
pub mod model;
pub mod rmq1d;
pub mod space;
pub mod oracle;
pub mod rmq2d;
pub mod encoding;
pub mod hardness;

pub type Array2D8 = model::Array2D<u8>;
pub type Array2D16 = model::Array2D<u16>;
pub type Array2D32 = model::Array2D<u32>;
/// Signed cells, used by generated families that need more than the alphabet.
pub type WideArray = model::Grid<i64>;

pub use encoding::{AnyEncoding, EncodingKind};
pub use error::{Error, Result};
pub use model::{Array2D, Candidate, Grid, Pos2D, QueryClass, Rect, TieBreakPolicy};
pub use space::{emit_report, SpaceNode, SpaceReport};
