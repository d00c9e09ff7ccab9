//! Finite lattices, ortholattices and their dual digraph spaces.
//!
//! The primal side ([`lattice`]) holds bounded lattices with an optional
//! orthocomplement. [`dual`] turns one into a digraph whose vertices are
//! maximal disjoint filter-ideal pairs, [`mpm`] goes back by collecting the
//! maximal partial edge-preserving maps into `{0, 1}`, [`axioms`] checks the
//! structural conditions on digraphs, and [`roundtrip`] certifies that both
//! trips return an isomorphic copy.
//!
//! All topologies here are on finite sets. Abstract digraphs carry the
//! discrete topology unless a closed subbasis is supplied.

#![no_std]

extern crate alloc;

pub mod axioms;
pub mod bitset;
pub mod digraph;
pub mod dual;
pub mod family;
pub mod lattice;
pub mod mpm;
pub mod roundtrip;

pub use axioms::{check_all, Axiom, AxiomEntry, AxiomReport, Outcome, Subject, Witness};
pub use bitset::BitSet;
pub use digraph::{concept_pairs, polar, ConceptPair, Digraph, Side, Topology};
pub use dual::{build_dual, build_lattice_dual, enumerate_mdfips, DualSpace, EdgeMode, Mdfip};
pub use family::Family;
pub use lattice::{check_law, product, Lattice, LatticeError, Law, LawReport, OrthoLattice};
pub use mpm::{dual_ortholattice, enumerate_mpms, is_mpm, mpm_lattice, Method, MpmLattice, PartialTwoMap};
pub use roundtrip::{check_dual_iso, check_primal_iso, IsoCertificate};
