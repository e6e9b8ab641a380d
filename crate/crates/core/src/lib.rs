//! Local-dimension-invariant (LDI) forms of qudit stabilizer codes.
//!
//! The crate converts a stabilizer code given over a prime local-dimension
//! `q` into a generator tableau whose pairwise symplectic products vanish over
//! the integers, so the same generators define a commuting group at every
//! prime. It then evaluates the cutoff values above which the code distance
//! is guaranteed to survive, and verifies distances at concrete primes.
//!
//! ```
//! use qldi_core::{io::parse_code, ldi::{ldi_transform, LVariant}};
//!
//! let code = parse_code("n=2 k=0 q=2\nXX\nZZ\n").unwrap();
//! let ldi = ldi_transform(&code, LVariant::Full).unwrap();
//! assert!(qldi_core::ldi::is_ldi(&ldi.tableau));
//! ```

pub mod bounds;
pub mod code;
pub mod distance;
mod error;
pub mod io;
pub mod ldi;
pub mod linalg;
pub mod primes;
pub mod surd;
pub mod symplectic;

pub use code::StabilizerCode;
pub use error::{Error, Result};
pub use symplectic::{Context, PauliWord, Tableau};
