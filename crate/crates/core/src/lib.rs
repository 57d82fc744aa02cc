//! Constructions of finite 2-groups and exact computation of
//! `alpha(G) = |L1(G)| / |G|`, the number of cyclic subgroups divided by
//! the group order.
//!
//! The crate is organized bottom-up:
//!
//! * [`group`] builds groups from construction parameters (cyclic and
//!   abelian groups, the metacyclic 2-groups, generalized dihedral and
//!   dicyclic extensions, direct and central products, quotients);
//! * [`census`] analyses a group by exhaustive enumeration;
//! * [`formulas`] evaluates closed-form counts in exact arithmetic;
//! * [`verify`] runs classification campaigns that pit the two against
//!   each other;
//! * [`descriptor`] parses the group-expression language and
//!   [`cache`] persists computed records.

pub mod alpha;
pub mod cache;
pub mod census;
pub mod descriptor;
pub mod error;
pub mod formulas;
pub mod group;
pub mod shape;
pub mod verify;

pub use alpha::AlphaValue;
pub use census::{CyclicCensus, Limits, OrderProfile};
pub use descriptor::{parse_descriptor, Descriptor, ParseError};
pub use error::GroupError;
pub use group::{Element, ElementSet, Group, GroupKind};
pub use shape::AbelianShape;
