//! Product sets `BC` in torsion-free groups: exact group models, product-set
//! statistics and isoperimetric searches, product-set graphs, relator case
//! analysis and group-algebra certificates.

pub mod algebra;
pub mod error;
pub mod group;
pub mod presentation;
pub mod productset;
pub mod psgraph;
pub mod caselab;
pub mod scalar;

pub use error::{PslError, Result};
pub use group::{ball, Element, Group, Model, ModelKind};
pub use presentation::{Presentation, Word};
pub use scalar::Coord;

/// The Klein bottle group over machine integers.
pub type Klein = group::KleinBottle<i64>;
/// `Z^2` over machine integers.
pub type Zsq = group::FreeAbelian2<i64>;
/// The integer Heisenberg group over machine integers.
pub type Heis = group::Heisenberg<i64>;
pub use group::Free2;
