//! Locally recoverable codes from Vandermonde-structured parity-check
//! matrices.
//!
//! A family of `(r+1)`-subsets `A_1..A_m` of GF(q) whose unions grow fast
//! enough ([`setfam`]) gives a parity-check matrix ([`lrc`]) of a code with
//! length `m(r+1)`, locality `r` and minimum distance `d`. [`codec`] encodes,
//! repairs single erasures from `r` symbols and decodes up to `d - 1`
//! erasures.
//!
//! ```
//! use std::sync::Arc;
//! use vandlrc::{codec::Code, gf::FieldContext, setfam::SetFamily};
//!
//! let field = Arc::new(FieldContext::new(13).unwrap());
//! let family = SetFamily::new(13, 4, 2, vec![
//!     vec![0, 1, 2, 3, 4],
//!     vec![0, 5, 6, 7, 8],
//!     vec![1, 5, 9, 10, 11],
//! ]).unwrap();
//! let code = Code::from_family(field, &family, 5).unwrap();
//! assert_eq!((code.n(), code.k()), (15, 9));
//! ```

pub mod codec;
pub mod error;
pub mod format;
pub mod gf;
pub mod lrc;
pub mod setfam;

pub use error::{Error, Result};
