//! Graph products of groups at desk scale: exact Cayley-ball enumeration,
//! rational growth-series reconstruction and asymptotic profiling,
//! structural centralisers, and degree-of-commutativity sequences.
//!
//! The building blocks are:
//!
//! - [`vertex`]: vertex groups (finite multiplication tables or ℤ) with
//!   geodesic lengths, centralisers and ball counts;
//! - [`graph`]: the presentation graph and the graph product it defines,
//!   links, complement components and special subgroups;
//! - [`element`]: canonical Green normal forms and the group law;
//! - [`cyclic`]: cyclic reduction and cyclic normalization;
//! - [`enumeration`]: breadth-first ball/sphere enumeration, commuting-pair
//!   counting, support-filtered counts;
//! - [`series`]: exact rational-series reconstruction from integer
//!   sequences and dominant-singularity asymptotics;
//! - [`centraliser`]: structural centralisers with exact ball counts and
//!   brute-force cross-validation.
//!
//! Everything that feeds a reported number is exact (big-integer/rational)
//! arithmetic unless explicitly flagged as numeric root isolation.

pub mod centraliser;
pub mod cyclic;
pub mod element;
pub mod enumeration;
pub mod graph;
mod par;
pub mod poly;
pub mod series;
pub mod vertex;

pub use par::{configure_threads, parallel_enabled, set_parallel};
