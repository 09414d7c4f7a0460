//! polycox: coherent presentations of monoids by polygraphs.
//!
//! The crate is layered bottom-up:
//!
//! * [`word`] and [`order`]: words, rewriting rules and termination orders;
//! * [`path`]: composite 2-cells and their equality;
//! * [`cells`]: 3-cells, (3,1)-polygraphs and 3-spheres;
//! * [`completion`]: critical branchings and homotopical completion;
//! * [`tietze`]: collapsible parts and homotopical reduction;
//! * [`coxeter`]: finite Coxeter groups (Todd–Coxeter, reduced words, gcds);
//! * [`garside`]: the Garside presentation of a spherical Artin monoid and
//!   its coherent completion;
//! * [`artin`]: the reduced coherent presentation of an Artin monoid;
//! * [`json`] and [`render`]: serialization and human-readable output.

pub mod artin;
pub mod cells;
pub mod completion;
pub mod coxeter;
pub mod error;
pub mod garside;
pub mod json;
pub mod order;
pub mod path;
pub mod render;
pub mod tietze;
pub mod word;

pub use cells::{Polygraph31, Sphere3, SphereEntry, ThreeCell};
pub use error::{Error, Result};
pub use order::{Comparison, TerminationOrder};
pub use path::{Path2, Step};
pub use word::{Dir, Letter, Polygraph2, Rule, RuleId, Word};
