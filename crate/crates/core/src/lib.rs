//! Temporal constraint satisfaction over Allen intervals combined with
//! qualitative spatial constraints (RCC8, cyclic ternary orientation).

pub mod allen;
pub mod bounds;
pub mod cyct;
pub mod domain;
pub mod error;
pub mod rcc8;
pub mod reasoner;
pub mod stp;
pub mod tbox;

pub use allen::{AllenAtom, EndpointRole, PartitionRelation};
pub use bounds::{Bound, ConvexSet, ExtRational, Rational};
pub use domain::{AtomSet, ConcreteDomain, QualNetwork, Scenario};
pub use error::{DomainError, ReasonerError, StpError, SyntaxError};
pub use stp::StpNetwork;
pub use tbox::{parse_tbox, Concept, TBox};
pub use reasoner::{decide, decide_with, verify_witness, SearchOptions, Verdict, Witness};
