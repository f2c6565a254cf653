//! Finite inverse semigroup actions, étale groupoids, and the adjunction
//! between them.
//!
//! Inverse semigroup actions on finite spaces form a category whose morphisms
//! run "backwards" on spaces. Étale groupoids form a category whose morphisms
//! are couples `[φ, ψ; K]`, equivalence classes of spans with a fibrewise
//! bijective left leg. The transformation groupoid construction is left
//! adjoint to the slice-action construction, and the spectral action composed
//! with it gives the universal groupoid of an inverse semigroup. Every object
//! here is finite, so each statement can be checked by direct computation.

pub mod bits;
pub mod error;
pub mod functors;
pub mod groupoid;
pub mod guards;
pub mod json;
pub mod laws;
pub mod semigroup;
pub mod star_algebra;
pub mod topology;

pub(crate) mod fault;

pub use bits::PointSet;
pub use error::{Error, Result};
pub use guards::Guards;
