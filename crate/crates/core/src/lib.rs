//! treng-core: a computational engine for automorphisms of spherically
//! homogeneous rooted trees.
//!
//! The crate computes with words over wreath-recursive and label-function
//! generators: actions, labels, sections and portraits (`autom`), a
//! memoized word-problem solver and element orders (`wordprob`), orbit
//! machinery with totally splitting orbits, fundamental systems and the
//! infinite-order certificate (`orbitlab`), reduced trees (`reduce`),
//! iterated Engel commutators and the Engel-set harnesses (`engel`), exact
//! cyclic wreath products as brute-force oracles (`wreathlab`), a catalog of
//! named groups (`catalog`), finite truncations (`truncation`), a group
//! definition file format (`groupfile`), and a registry of verification
//! checks (`checks`).

pub mod autom;
pub mod catalog;
pub mod checks;
pub mod engel;
pub mod error;
pub mod groupfile;
pub mod orbitlab;
pub mod perm;
pub mod reduce;
pub mod tree;
pub mod truncation;
pub mod util;
pub mod wordprob;
pub mod wreathlab;

pub use autom::{GroupBuilder, GroupDef, LabelElem, Portrait, RistVerdict, Word};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use tree::{DegreeSequence, Vertex};
pub use wordprob::{OrderPolicy, OrderResult, Solver, TrivialityVerdict};
