//! Permutations and permutation groups.

mod classes;
mod group;
mod hom;
mod ops;
mod permutation;
pub mod search;

pub use classes::{conjugacy_classes, ConjugacyClasses};
pub use group::{ElementIndex, PermutationGroup, ELEMENT_CAP};
pub use hom::GroupHomomorphism;
pub use ops::{center, derived_subgroup, normal_closure, quotient_group};
pub(crate) use ops::normal_closure_unchecked;
pub use permutation::Permutation;
pub use search::{
    are_conjugate, centralizer, centralizer_brute, centralizer_of_subgroup, conjugator,
    conjugator_brute, is_normal, normalizer, subgroup_conjugator,
};
