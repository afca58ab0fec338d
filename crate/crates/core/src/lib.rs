//! Analysis of `k`-uniform set families under the `(d, s)`-conditionally
//! intersecting condition: no `d` members with union of size at most `s` and
//! empty common intersection.

pub mod binom;
pub mod bounds;
pub mod cache;
pub mod cluster;
pub mod corpus;
pub mod family;
pub mod io;
pub mod kset;
pub mod search;
pub mod structure;

pub use binom::{binomial, BigCount};
pub use cluster::{find_violation, is_conditionally_intersecting, is_d_wise_intersecting, ClusterWitness};
pub use family::{make_family, FamilyError, FamilySpec, SetFamily};
pub use kset::{KSet, VertexSet, MAX_VERTICES};
pub use search::{max_family, max_nonintersecting, Enumerate, Mode, SearchConfig, SearchResult};
pub use structure::{decompose, verify_decomposition, Decomposition};
