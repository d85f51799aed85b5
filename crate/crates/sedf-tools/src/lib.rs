//! Toolkit for α-valuations of complete bipartite graphs `K_{a,b}` and the
//! `(a²+1, 2, a, 1)` strong external difference families (SEDFs) they induce
//! in `Z_{a²+1}`, together with the known dihedral-group constructions.
//!
//! - [`zmod`]: residue arithmetic, symmetric sets, affine maps mod `v`.
//! - [`valuation`]: α-valuations, their classification into the two
//!   structural types, blowups, projections and decomposition.
//! - [`sedf`]: SEDF verification, symmetric translates, affine canonical
//!   forms and equivalence testing.
//! - [`cover`]: a bitmask exact-cover solver.
//! - [`enumeration`]: exhaustive, isomorph-rejected enumeration of all
//!   inequivalent SEDFs for a given `a`, and the blowup-sequence coverage
//!   of the resulting classes.
//! - [`dihedral`]: dihedral groups, near-factorizations, the two published
//!   constructions and their explicit equivalence.

pub mod cover;
pub mod dihedral;
pub mod enumeration;
pub mod sedf;
pub mod valuation;
pub mod zmod;
