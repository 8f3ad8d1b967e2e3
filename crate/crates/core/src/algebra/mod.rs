//! Quiver algebras with monomial relations and their representations.

pub mod iso;
pub mod module;
pub mod quiver;
pub mod structure;

pub use iso::{find_iso, IsoOutcome};
pub use module::{
    cokernel_module, direct_sum, hom_module, image_module, kernel_module, quotient_module, same_algebra,
    submodule, DirectSum, HomSpace, ModMap, ModuleRep,
};
pub use quiver::{path_algebra, Algebra, Arrow, Path, Presentation, Quiver};
pub use structure::{
    injective, is_projective, loewy_label, nakayama_projective, projective, radical, radical_layers,
    regular_module, simple, socle, top, top_vector, QuiverTwist,
};
