//! Combinatorics of 321-avoiding permutations: block statistics, a
//! statistic-trading bijection, standard Young tableaux with RSK, exact
//! quasi-symmetric/Schur expansions, and ballot-number arithmetic, plus the
//! verification drivers behind the `catalan-blocks` CLI.

pub mod bijection;
pub mod catalan;
pub mod perm;
pub mod symfun;
pub mod tableaux;
pub mod verify;

pub use perm::{Permutation, PositionSet};
