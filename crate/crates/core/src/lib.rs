//! Combinatorial calculus for circle-free open book foliations on the 2-sphere.
//!
//! A foliation is stored as a [`FoliationMovie`]: an initial slice of arcs
//! (each joining a positive to a negative elliptic point) followed by a
//! cyclically ordered list of signed saddle events. The separatrix
//! map, the G₊₊ graph and the dividing-set counts are all derived.
//!
//! The crate is organised by concern:
//!
//! * [`foliation`]: data model, validation, slicing, counts.
//! * [`embedding`]: face tracing for slices and for the derived separatrix map.
//! * [`iso`]: canonical forms and movie isomorphism.
//! * [`tightness`]: the G₊₊ graph, tree test and dividing-circle count.
//! * [`moves`]: reversible local rewrites and move scripts.
//! * [`realization`]: the inductive realization algorithm and the
//!   exhaustive enumeration oracle.
//! * [`norm`]: page Euler characteristics and support-norm arithmetic.
//! * [`random`]: seeded generation of valid movies.

pub mod embedding;
pub mod error;
pub mod foliation;
pub mod iso;
pub mod moves;
pub mod norm;
pub mod random;
pub mod realization;
pub mod tightness;

mod frame;

pub use error::{Error, Result};
pub use foliation::{
    Arc, ArcId, EllipticId, EllipticPoint, FoliationMovie, Location, Resolution, SaddleEvent,
    Side, Sign, SingularityCounts, Slice, ValidationReport, Violation,
};
pub use iso::{canonical_form, is_isomorphic, CanonicalForm};
pub use moves::{apply, apply_script, applicable, inverse, ChangeVariant, FingerData, Move, MoveScript};
pub use realization::{base_movie, enumerate_movies, realize, verify_realization, RealizationResult};
pub use tightness::{build_gpp, dividing_circle_count, is_tree, tightness_verdict, GppGraph, Verdict};
