//! Finite trirings: rings `R = R0 ⊕ R1` whose odd part carries its own
//! commutative local product `♯`, together with their triideals, prime
//! spectra, Zariski-type topology, localizations and structure presheaf.
//!
//! Every structure here is finite and table driven, so every law can be
//! checked by exhaustion.

pub mod corpus;
pub mod error;
pub mod fraction;
pub mod homomorphism;
pub mod ideal;
pub mod io;
pub mod localization;
pub mod prime;
pub mod quotient;
pub mod radical;
pub mod rational;
pub mod ring;
pub mod sheaf;
pub mod spectrum;
pub mod triring;
pub mod validate;
pub mod verify;

pub use error::{Error, Result};
pub use ideal::Triideal;
pub use ring::{FiniteCommutativeRing, IndexSet};
pub use triring::{FiniteTriring, Generator, TriringElement};
