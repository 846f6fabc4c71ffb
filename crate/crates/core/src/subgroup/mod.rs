//! p-local structure: Sylow subgroups, ranks, cores, radicals, lattices and
//! 2-group shapes.

mod abelian;
mod cores;
mod elementary;
mod lattice;
mod radical;
mod sylow;
mod twogroup;

pub use abelian::{abelian_invariants, abelianization_invariants, is_homocyclic};
pub use cores::{
    is_p_centric, is_p_nilpotent, normal_subgroups, o_p_core, o_p_prime_core,
};
pub use elementary::{
    elementary_abelian_layers, maximal_rank_elementary_abelians, p_rank, ranks, RankReport,
    ELEMENTARY_RANK_CAP,
};
pub use lattice::{subgroup_lattice, Bits, MulTable, SubgroupLattice, LATTICE_CAP};
pub use radical::principal_p_radical_subgroups;
pub use sylow::{omega1, sylow_subgroup};
pub use twogroup::{classify_two_group, TwoGroupKind, TwoGroupShape};

use crate::arith::{is_prime, log_p};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn is_p_group(g: &PermutationGroup, p: u64) -> bool {
    log_p(g.order(), p).is_some()
}

pub(crate) fn require_p_group(g: &PermutationGroup, p: u64) -> Result<()> {
    require_prime(p)?;
    if is_p_group(g, p) {
        Ok(())
    } else {
        Err(Error::NotPGroup { p, order: g.order() })
    }
}
