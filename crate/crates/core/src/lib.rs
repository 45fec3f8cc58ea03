//! Superclass functions on the unipotent upper-triangular groups and the
//! Malvenuto–Reutenauer Hopf algebra of permutations.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutations, inversion tables, codes, Rothe diagrams and
//!   covering inversions.
//! - [`lattice`]: the componentwise order on inversion tables.
//! - [`shuffle`]: shifted shuffles, deconcatenation and the column shuffle.
//! - [`hopf`]: linear combinations in the supercharacter and
//!   permutation-character bases, with product, coproduct, `⋆` and antipode.
//! - [`pcbasis`]: the covering-inversion formula for permutation-character
//!   products.
//! - [`oracle`]: literal class functions on `ut_n(F_q)` for small `n`, `q`.
//! - [`verify`]: the invariant suites driven by the command line tool.

pub mod error;
pub mod hopf;
pub mod lattice;
pub mod oracle;
pub mod pcbasis;
pub mod perm;
pub mod shuffle;
pub mod verify;

pub use error::{Error, Result};
pub use hopf::{Basis, Rational, ScfElement, TensorScfElement};
pub use perm::{CoveringInversion, DualInvTable, InvTable, Permutation, RotheDiagram};
pub use shuffle::PositionSet;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    pub mod permutations {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    pub mod lattice {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    pub mod hopf {}
    #[doc = include_str!("../../../book/src/permutation_characters.md")]
    pub mod permutation_characters {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
