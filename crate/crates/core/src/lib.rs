//! Exact computations with numerical exceptional collections on del Pezzo surfaces.
//!
//! The crate models the numerical Grothendieck group of the ten del Pezzo
//! surfaces, mutations of exceptional collections, the associated lattice
//! polygons (Gale duals of toric systems), quiver mutations and a bounded
//! enumerator of minimal block-complete collections.
//!
//! All arithmetic is exact: integers for classes and `Ratio<i128>` for
//! slopes and polygon geometry.

pub mod class;
pub mod classifier;
pub mod collection;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod mutation;
pub mod polygon;
pub mod quiver;
pub mod surface;
pub mod svg;
pub mod weyl;

pub use class::{NumClass, Slope};
pub use collection::{Blocks, Collection};
pub use error::{Error, Result};
pub use polygon::{Point, Polygon};
pub use quiver::Quiver;
pub use surface::{Surface, SurfaceKind};

/// Exact rational number used for slopes and plane geometry.
pub type Q = num_rational::Ratio<i128>;
