//! Modular character rings of finite groups.
//!
//! Given a finite group `G` (as a permutation group or an ingested character
//! table) and a prime `p`, this crate builds the commutative algebra
//! `k ⊗ R(G)` over a splitting field `k` of characteristic `p` and computes its
//! radical, Loewy series, block decomposition, Cartan numbers and Ext
//! dimensions, together with combinatorial closed forms used as oracles.

pub mod chartab;
pub mod closedform;
pub mod cyclonum;
pub mod error;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod modring;
pub mod numtheory;
pub mod permgroup;
pub mod poly;
pub mod report;
pub mod sections;

pub use error::{Error, Result};

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// Cyclotomic numbers with rational coefficients.
pub type Cyclotomic = cyclonum::CyclotomicNumber<Rational>;
/// Cyclotomic integers; character values live here.
pub type CyclotomicInteger = cyclonum::CyclotomicNumber<i64>;
