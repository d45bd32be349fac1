//! ER-pointlike subsets of finite semigroups.
//!
//! The pointlikes are computed as a least fixed point over the lattice of
//! S-complexes ([`construct`]) and certified from above by an explicit flow
//! automaton whose transition semigroup lies in ER ([`automaton`],
//! [`verify`]).

pub mod activator;
mod bitset;
pub mod catalog;
pub mod complex;
pub mod construct;
pub mod error;
pub mod green;
pub mod io;
pub mod kernel;
pub mod limits;
pub mod named;
pub mod semigroup;
pub mod stable;
pub mod subset;
pub mod transform;
pub mod automaton;
pub mod verify;

pub use complex::{complex_closure, AbstractComplex, Complex};
pub use error::{Error, Result};
pub use limits::Limits;
pub use semigroup::Semigroup;
pub use subset::{setwise_product, Subset};
