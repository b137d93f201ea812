//! Finite residuated-lattice duality.
//!
//! Finite MTL-, GMTL- and sbp-algebras are represented by order and product
//! tables. The crate computes their prime-filter spectra with the partial
//! filter product, decomposes sbp-algebras into quadruples of a Boolean
//! algebra, a radical hoop, an external join and a nucleus, and checks both
//! the algebraic and the dual reconstructions on every finite instance.

pub mod algebra;
pub mod dual_quadruple;
pub mod duality;
pub mod filter_pairs;
pub mod filters;
pub mod fixtures;
pub(crate) mod iso;
pub(crate) mod parse;
pub mod quadruple;
pub mod report;
pub mod subset;
pub mod verify;

pub use algebra::{Algebra, AlgebraError, AlgebraSpec, Mode};
pub use parse::ParseError;
pub use subset::Subset;
