//! Verification and search toolkit for induced-saturated graphs.
//!
//! A graph `G` is `P_n`-induced-saturated if it contains no induced path on
//! `n` vertices, yet removing any edge or adding any non-edge creates one.
//! This crate builds the 16-vertex Cayley-graph witness over GF(16) showing
//! that `P_6` has this property, verifies saturation exhaustively (with
//! optional automorphism-orbit reduction), emits machine-checkable witness
//! certificates, and searches small graph families for further examples.
//!
//! The pieces:
//!
//! - [`gf2k`]: arithmetic in GF(2^k), including the cube subgroup used as a
//!   Cayley connection set.
//! - [`graph`]: bitset graphs on up to 64 vertices, Cayley/circulant
//!   constructions, edge toggling, and exact induced-path search.
//! - [`graph6`]: the standard compact text encoding for interchange.
//! - [`symmetry`]: affine maps, automorphism checks, pair orbits.
//! - [`saturation`]: the verifier and its certificates.
//! - [`search`]: exhaustive family search with deterministic parallelism.

pub mod gf2k;
pub mod graph;
pub mod graph6;
pub mod saturation;
pub mod search;
pub mod symmetry;

pub use gf2k::{BinaryField, FieldElement};
pub use graph::{cayley_graph, circulant_graph, Graph, PathWitness, VertexPair};
pub use saturation::{
    check_certificate, is_path_free, verify_induced_saturated, witness_function,
    SaturationCertificate, SaturationVerdict,
};
pub use search::{run_search, GraphFamily, SearchReport, SearchSpace};
pub use symmetry::{affine_group, is_automorphism, pair_orbits, AffineMap, PairOrbit};
