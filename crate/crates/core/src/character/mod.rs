//! Exact character theory over cyclotomic fields.

mod class_function;
pub mod cyclotomic;
mod effective;
pub mod modp;
mod table;

pub use class_function::{ClassData, ClassFunction, ClassFunctionRepr, CLASS_CAP};
pub use cyclotomic::{Cyclotomic, CyclotomicRepr, Rational};
pub use effective::{fusion_partition, is_p_effective, p_effective_report, respects_fusion, EffectivenessReport};
pub(crate) use effective::trivial_multiplicity;
pub use table::{character_table, CharacterTable};
