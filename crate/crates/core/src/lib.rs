//! Verification toolkit for coset partitions of finite groups and
//! harmonic tuples of integers.
//!
//! The crate is organized around five pipelines:
//!
//! * [`exact`]: exact integer and rational arithmetic (factorization,
//!   divisors, reciprocal sums) with 64-bit overflow checks;
//! * [`egyptian`]: enumeration of admissible subgroup-index tuples for a
//!   given group order (unit-fraction decompositions over the divisors,
//!   pairwise non-coprime) and the pattern filters that eliminate them;
//! * [`zharm`]: a decision procedure for Z-harmonic tuples: integers
//!   `(a_1,...,a_n)` admitting residues `m_i` such that the arithmetic
//!   progressions `m_i + a_i Z` are pairwise disjoint;
//! * [`group`]: a from-scratch finite group engine over permutations:
//!   subgroup enumeration, cosets, product sets, double cosets;
//! * [`gharm`]: searches for G-harmonic configurations, coset-partition
//!   certificates, and a harness that checks the structural lemmas about
//!   subgroup products on concrete groups.
//!
//! Everything is exact; there is no floating point anywhere in the crate.

pub mod egyptian;
pub mod exact;
pub mod gharm;
pub mod group;
pub mod zharm;

/// Error type shared by all modules.
///
/// The three variants mirror the process exit conventions of the CLI:
/// domain and usage errors are caller mistakes, resource errors mean a
/// configured cap or budget was exceeded.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid call (mismatched parent groups, unknown names).
    #[error("usage error: {0}")]
    Usage(String),
    /// A search or closure exceeded a configured cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
