//! Containment orders, exact width parameters and bounded obstruction-set
//! computation for small graphs and multigraphs.

pub mod error;
pub mod families;
pub mod graph;
pub mod obstructions;
pub mod omnivore;
pub mod parameters;
pub mod poset;
pub mod relations;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Mode, MultiGraph};
pub use relations::{Containment, GraphSet, Relation};
