//! Combinatorics of framed flower-quiver varieties and the chamber
//! classification of finite-dimensional simples over the slice algebra of the
//! minimal relevant leaf.
//!
//! All arithmetic is exact (`Rational` wraps a big rational).

pub mod error;
pub mod hypertoric;
pub mod linalg;
pub mod modelgeom;
pub mod polyhedra;
pub mod rational;
pub mod rootlat;
pub mod strata;

pub use error::{Error, Result};
pub use hypertoric::{
    build_full, build_reduced, chamber_status, chamber_to_ordering, classify, enumerate_bounded, reduce_chamber,
    reference_count, sn_act, Arrangement, Chamber, ClassificationReport, ConeCache, EnumerationOptions,
    FullArrangement, Permutation, ReducedArrangement, Sign, SignVector,
};
pub use linalg::Matrix;
pub use modelgeom::{frame_i, frame_j, is_unipotent, symplectic_form, transition_matrix, Frame, LeafPoint};
pub use polyhedra::{Constraint, Engine, Polyhedron, Status};
pub use rational::Rational;
pub use rootlat::{Character, DimVector, FramedSetting, Quiver};
pub use strata::{FlowerLeafSpec, LeafDescriptor, Part, RepresentationType, SliceQuiverData};
