//! Chain semigroups, chain algebras and chain polytopes of finite pure
//! posets.
//!
//! A pure poset is read from its Hasse diagram ([`Poset`]) and certified
//! into a [`RankedPoset`], whose elements are indexed level by level. A
//! [`WeightFunction`] assigns a nonnegative integer to every element; the
//! chain semigroup `C_P` consists of the sums of characteristic vectors of
//! maximal chains.

pub mod canonical;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod format;
pub mod level;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod polytope;
pub mod poset;
pub mod semigroup;
pub mod weight;
pub mod width2;

pub use enumerate::{Budget, GradedPiece};
pub use error::{Error, Result};
pub use level::{Component, HallCertificate, LevelGraph};
pub use poset::{BuildOptions, Chain, Poset, RankedPoset};
pub use semigroup::{MembershipResult, NonMembership};
pub use weight::WeightFunction;
