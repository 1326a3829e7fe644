//! Matchmaking between typed service descriptions.
//!
//! A service is described by its name and its ordered lists of typed input
//! and output parameters. Two services are compared by reducing each side
//! (inputs against inputs, outputs against outputs) to a bipartite flow
//! network whose edge capacities come from a datatype compatibility table,
//! then computing an integer maximum flow. The per-direction flow value,
//! normalised by the number of requested parameters, gives a similarity
//! score between 0 (no compatibility) and 10 (complete match); the overall
//! score is the exact mean of the two directions.
//!
//! Module map:
//!
//! - [`descriptor`] — the `.svc` profile format: parse, serialize, validate.
//! - [`simrules`] — the 5×5 requested-vs-advertised datatype weight table.
//! - [`flownet`] — integer max-flow with residual networks and augmenting
//!   paths, plus a brute-force min-cut oracle for testing.
//! - [`matcher`] — bipartite reduction and similarity scoring.
//! - [`registry`] — file-backed profile collections and the discovery scan.
//! - [`score`] — exact rational scores on the 0–10 scale.

#![forbid(unsafe_code)]

pub mod descriptor;
pub mod flownet;
pub mod matcher;
pub mod registry;
pub mod score;
pub mod simrules;
