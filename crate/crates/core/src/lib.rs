//! Exact spectra of normal Cayley graphs on the symmetric group, Hoffman-type
//! bounds for intersecting families of permutations, and brute-force
//! verification of the extremal and stability statements at small `n`.

pub mod bitset;
pub mod certified;
pub mod counting;
pub mod error;
pub mod families;
pub mod group;
pub mod group_algebra;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod report;
pub mod sampling;
pub mod repr;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Result, SpectraError};
pub use families::PermFamily;
pub use group_algebra::GroupAlgebraVector;
pub use partition::{partitions_of, Partition};
pub use perm::Permutation;
pub use scalar::Scalar;

/// Exact rational scalar used for every theorem-level comparison.
pub type Rational = num_rational::BigRational;

/// Group-algebra vector with exact coordinates.
pub type ExactVector = GroupAlgebraVector<Rational>;

/// Group-algebra vector with `f64` coordinates.
pub type FloatVector = GroupAlgebraVector<f64>;
