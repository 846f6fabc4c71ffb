//! The groups `Qd(p) = (Z/p)^2 ⋊ SL_2(p)` and their appearance as sections.

mod fusion;
mod involve;
mod iso;

pub use fusion::{qdp_witness_from_fusion, FusionOutcome, FusionWitness, FusionWitnessRepr};
pub use involve::{p_prime_involves_qdp, InvolvementRepr, InvolvementWitness, INVOLVEMENT_CAP};
pub use iso::{is_isomorphic, ISO_CAP};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::families::{affine, SL2_GENERATORS};
use crate::perm::PermutationGroup;

/// `Qd(p)` acting on `F_p^2` by affine maps with linear part in `SL_2(p)`.
pub fn build_qdp(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) || p == 2 {
        return Err(Error::BadFamily(format!("Qd(p) needs an odd prime, got {p}")));
    }
    affine(p as usize, &SL2_GENERATORS)
}
