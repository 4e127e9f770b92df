//! Lifted Kakeya-type line sets and polynomial-method lower bounds.
//!
//! Planar seed configurations are lifted to `n`-dimensional affine space by
//! span/meet recursions in homogeneous coordinates; the resulting line and
//! point sets are re-verified from raw coordinates, and the Hasse-derivative
//! machinery computes and certifies the matching lower bounds exactly.

pub mod construction;
pub mod linalg;
pub mod polymethod;
pub mod projgeom;
pub mod records;
pub mod scalar;
pub mod seeds;
pub mod verify;

pub use construction::{assemble, build_frame, ConstructionError, KakeyaSet, Lifter};
pub use projgeom::{AffineLine, GeomError, PointIndex, ProjPoint, Subspace};
pub use scalar::{binomial, FieldSpec, Scalar, ScalarError};
pub use seeds::{seed_report, PlanarSeed, SeedRegistry, SeedReport};
