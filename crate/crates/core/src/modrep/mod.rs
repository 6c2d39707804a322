//! Small-group modular representation theory: groups, modules, the MeatAxe,
//! partitions and symmetrizers.

mod group;
mod meataxe;
mod module;
mod partition;

pub use group::{FiniteGroup, SymmetricGroup};
pub use meataxe::{
    composition_factors, find_submodule, is_irreducible, multiplicities, regular_accounting, simple_modules,
};
pub use module::{find_isomorphism, iso_modules, GroupModule, ModuleFile};
pub use partition::{
    column_antisymmetrizer, epsilon_lambda, epsilon_module, epsilon_with_tableau, left_ideal_module,
    p_regular_partitions, partitions, permutation_matrix, place_permutation, right_action, row_symmetrizer,
    symmetric_group, GroupAlgebraElement, Partition, SymmetrizerOrder,
};

#[cfg(test)]
mod tests;
