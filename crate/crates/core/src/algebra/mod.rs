//! Quivers and their path algebras over ℚ.

mod element;
mod necklace;
mod path;
mod quiver;

pub use element::AlgebraElement;
pub use necklace::{NecklaceElement, NecklaceKey};
pub use path::{paths_up_to, Path};
pub use quiver::{double_quiver, double_quiver_with_suffix, Arrow, DimensionVector, Quiver, DEFAULT_SUFFIX};

pub(crate) use element::same_quiver as element_same_quiver;
