//! Copies of countable ordinals, computed exactly.
//!
//! - [`ordinal`]: Cantor normal form arithmetic below ε₀.
//! - [`cube`]: eventually periodic subsets of `ω^n`, their order types and
//!   the Fubini ideals `Fin^n`.
//! - [`natset`]: eventually periodic subsets of `ω`.
//! - [`layered`]: subsets of the ladder `⋃ₙ Lₙ` of type `ω^ω` and the ideal
//!   of sets missing some `S^m`.
//! - [`poset`]: separative modification and quotient of finite pre-orders.
//! - [`factor`]: symbolic forcing factorization of `sq⟨P(α), ⊂⟩`.
//! - [`verify`]: seeded property suites, run through [`exec::Exec`].
//! - [`cli`]: the `ordcopies` command line.

pub mod cli;
pub mod cube;
pub mod exec;
pub mod factor;
pub mod gen;
pub mod layered;
pub mod limits;
pub mod natset;
pub mod ordinal;
pub mod poset;
pub mod verify;

pub use cube::{CubeSet, Point};
pub use exec::Exec;
pub use factor::{factorize, ForcingExpr};
pub use layered::LayeredSet;
pub use natset::NatSet;
pub use ordinal::Ordinal;
pub use poset::FinPoset;
