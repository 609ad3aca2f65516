//! Untangling planar graph drawings with exact arithmetic.
//!
//! The crate builds adversarial clustered instances together with tangled
//! drawings on convex point sets, certifies how many vertices any
//! crossing-free straight-line redrawing can keep in place, produces actual
//! redrawings via barycentric embeddings, and runs Planarity Game sessions
//! over all of it.

pub mod bounds;
pub mod construction;
pub mod drawing;
pub mod embed;
pub mod error;
pub mod game;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod interchange;
pub mod sequences;

pub use bounds::{BoundCertificate, BoundMethod, FixReport};
pub use construction::{ClusterStyle, ClusteredInstance, ConvexPointSet, Family};
pub use drawing::{count_crossings, crossings, is_plane_drawing, Crossing, Drawing};
pub use embed::{Move, MoveSequence};
pub use error::{Error, Result};
pub use game::{GameSource, GameState};
pub use geometry::Point;
pub use num_rational::BigRational;
pub use graph::PlanarGraph;
pub use interchange::InstanceDoc;
pub use sequences::{BlockParams, CircularSequence};
