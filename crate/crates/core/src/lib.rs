//! Exact algebra for cubic threefolds: singularity classification,
//! curve constructions and Pfaffian representations.

pub mod change;
pub mod commands;
pub mod curve;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod mono;
pub mod parse;
pub mod pfaff;
pub mod points;
pub mod poly;
pub mod polymatrix;
pub mod quadric;
pub mod segre;

/// Seeded generator used for every random choice.
pub type Rng64 = rand_chacha::ChaCha8Rng;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use poly::{HomogeneousForm, MultiPoly};
