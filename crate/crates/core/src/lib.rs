//! Combinatorics of compactified Jacobians of nodal curves, carried out on
//! the dual graph: spanning-tree counts and degree class groups, rational
//! polarizations, semistable and quasistable multidegrees with their
//! reduction algorithm, and the stratification by edge subsets.

mod error;
pub mod graph;
pub mod lattice;
pub mod polarization;
pub mod quasistable;
pub mod snf;
pub mod strata;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Multigraph, VertexSet};
pub use lattice::{complexity, picard_group, same_class, Cochain, LatticeQuotient, PicardGroup};
pub use polarization::Polarization;
pub use quasistable::{equality_witness, DefectReport, Kind, Reduction, StratumContext};
pub use strata::{
    blowup_decomposition, pushforward_multidegree, strata_report, stratum_multidegrees, BlowupDecomposition,
    StrataReport, DEFAULT_GUARD_EDGES,
};
