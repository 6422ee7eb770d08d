//! Exact enumeration and verification toolkit for maximal sum-free sets in
//! finite abelian groups.
//!
//! The library represents finite abelian groups in canonical primary
//! decomposition, provides exhaustive oracles for sum-free and maximal
//! sum-free sets, constructs the link graph `L_S[B]` of a generator set `S`
//! on a base set `B`, counts maximal independent sets exactly with
//! arbitrary-precision arithmetic, and evaluates every applicable counting
//! bound in the log2 domain for certified comparisons.
//!
//! Entry points by topic:
//!
//! - [`group`]: group arithmetic, classification, the largest sum-free
//!   cardinality formula, solutions of `2x = g`, homomorphisms to `Z_p`.
//! - [`partition`]: integer partitions and abelian group counting.
//! - [`set`]: dense element sets over a fixed mixed-radix element order.
//! - [`sumfree`]: Schur-triple predicates, exhaustive enumeration and the
//!   stability-cover search.
//! - [`linkgraph`]: link-graph construction, typed edges, degree claims,
//!   triangle structure and hitting sets.
//! - [`mis`]: exact maximal-independent-set counting on loop-decorated
//!   graphs.
//! - [`bounds`]: log2-domain counting bounds and the combined report.
//! - [`census`]: group enumeration, census rows, and the named verification
//!   suites backing the CLI.

pub mod bounds;
pub mod census;
pub mod config;
pub mod error;
pub mod group;
pub mod linkgraph;
pub mod mis;
pub mod partition;
pub mod set;
pub mod sumfree;

pub use config::Caps;
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec, GroupType};
pub use set::ElementSet;
