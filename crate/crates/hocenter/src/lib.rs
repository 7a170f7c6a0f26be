//! Centers of groupoid-enriched categories.
//!
//! The library computes three flavors of center for a small category
//! enriched in finite groupoids — the strict center, the center of the
//! homotopy category, and the homotopy coherent center — and the
//! truncated spectral sequence that connects the latter two. Everything
//! is exact: groups are finite, levels are finitely generated abelian,
//! and every advertised identification is re-checked against a brute
//! force enumeration where one is feasible.

pub mod band;
pub mod cochain;
pub mod coherent;
pub mod enriched;
pub mod error;
pub mod finab;
pub mod fixture;
pub mod group;
pub mod groupoid;
pub mod randgen;
pub mod report;
pub mod zlat;

pub use error::{Error, Result};
