//! Double Grothendieck and Schubert polynomials, the orthodontia formula,
//! Lascoux expansions and the orthodontic sort order.

pub mod diagrams;
pub mod diffops;
pub mod error;
pub mod families;
pub mod lascouxbasis;
pub mod permcomb;
pub mod pipedreams;
pub mod polyring;
pub mod sortorder;
pub mod suites;

pub use diagrams::{Diagram, OrthodonticSequence};
pub use error::{Error, ParseError, Result};
pub use families::{InnerOmega, LascouxCache, PathChoice};
pub use lascouxbasis::{LascouxExpansion, ScanRecord, Verdict};
pub use permcomb::{Composition, Permutation};
pub use pipedreams::PipeDream;
pub use polyring::{Coeff, Monomial, Polynomial, Var};
pub use sortorder::{OsEndpoint, PrimaryColumnData};
pub use suites::{AmbiguityReport, Suite, SuiteOptions, SuiteReport};
