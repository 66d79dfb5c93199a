//! Finite right modules: lattices, invariants, hom-sets and isomorphism.

mod catalog;
mod hom;
mod lattice;
mod module;
mod paired;
mod profile;

pub use catalog::{direct_sums_up_to, indecomposable_subquotients, is_indecomposable};
pub use hom::{
    find_isomorphism, greedy_generators, hom_count, hom_enumerate, HomPlan, HomSearch, ModuleMap,
    SearchStats,
};
pub use lattice::{cyclic_submodules, is_essential, lattice, maximal_submodules, minimal_submodules};
pub use module::{Quotient, Restricted, RightModule, Submodule};
pub use paired::{all_matrices, realize_paired};
pub use profile::{
    composition_length, is_isomorphic, is_local, is_semisimple, is_simple, is_uniserial,
    local_length_two_modules, radical, radical_by_maximals, radical_layers, right_socle,
    simples_up_to_iso, singular, singular_by_essentiality, socle, structure_profile, SimpleClass,
    StructureProfile,
};
