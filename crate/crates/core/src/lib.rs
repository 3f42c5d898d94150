//! Finite frames and their sublocales.
//!
//! A finite frame is stored as a table-backed complete Heyting algebra
//! ([`frame`]). Sublocales are subsets of its elements ([`sublocale`]). The
//! [`demorgan`] module computes the Booleanization `B_L` and the
//! DeMorganization `M_L` and checks them against brute-force enumeration of
//! every sublocale. [`spec`], [`analysis`], [`corpus`] and [`dot`] provide
//! the file formats and sweeps used by the command-line tool.

pub mod analysis;
pub mod builders;
pub mod corpus;
pub mod demorgan;
pub mod dot;
pub mod element_set;
pub mod frame;
pub mod laws;
pub mod spec;
pub mod sublocale;

pub use analysis::{analyze, verify, AnalysisError, OracleMode, Report};
pub use builders::{fixtures, BuildError, PosetSpec, StandardFamily, TopologySpec};
pub use demorgan::{booleanization, demorganization, DemorganError};
pub use element_set::ElementSet;
pub use frame::{build_frame, ElementId, Frame, FrameError};
pub use spec::{parse_frame_spec, FrameSpec, SpecError};
pub use sublocale::{Sublocale, SublocaleError};
