//! Exact cohomology tables, Chow rings and instanton-sheaf checks on a catalog of
//! polarized varieties.

pub mod arith;
pub mod chow;
pub mod classify;
#[cfg(feature = "cli")]
pub mod cli;
pub mod cohomology;
pub mod instanton;
pub mod monads;
pub mod rr;

pub use chow::{preset_ring, ChowClass, ChowRing, Variety};
pub use cohomology::{build_table, BundleFamily, CohVector, CohomologyTable, LineBundle, VarietyEntry, Window};
pub use instanton::{check_instanton, InstantonVerdict};
pub use classify::{ClassificationReport, StabilityVerdict};
pub use monads::MonadShape;
pub use rr::ChernData;
