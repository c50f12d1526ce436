//! Computational companion to Gauss genus theory and the 2-torsion of
//! double covers.
//!
//! * [`intkit`]: factorization, Kronecker symbol, continued fractions.
//! * [`quadfield`]: `Q(sqrt d)`, its discriminant, ramified primes and units.
//! * [`bqf`]: binary quadratic forms and the narrow class group.
//! * [`genus`]: the map from subsets of ramified primes onto `Cl+[2]`.
//! * [`keylemma`]: `Ker phi / <e>` for branch configurations of double covers.
//! * [`nodesets`]: even sets of nodes and weight-restricted binary codes.

pub mod bqf;
pub mod error;
pub mod genus;
pub mod gf2;
pub mod intkit;
pub mod keylemma;
pub mod nodesets;
pub mod quadfield;
pub(crate) mod serde_str;

pub use error::{Error, Result};
