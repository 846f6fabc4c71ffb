//! Construction and decision of p-effective characters.

mod closure;
mod construct;
mod decide;
mod lp;
mod report;

pub use closure::{find_central_strongly_closed, is_strongly_closed};
pub use construct::{dihedral_sd_character, dihedral_sd_closed_form, scs_character, wreathed_character};
pub use decide::{
    p_effective_decide, CertificateRepr, Infeasibility, PEffectiveCertificate, Route, Verdict,
    CIRCUIT_BUDGET, CIRCUIT_MAX_IRREDUCIBLES, NORMALIZE_BUDGET,
};
pub use report::{theorem_iff_report, PrimeEntry, TheoremReport};

use crate::character::{is_p_effective, ClassFunction};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;
use crate::subgroup::{classify_two_group, ranks, sylow_subgroup, TwoGroupKind};

fn constructed(p: u64, sylow: PermutationGroup, route: Route, chi: ClassFunction) -> PEffectiveCertificate {
    PEffectiveCertificate {
        p,
        verdict: Verdict::Exists,
        route: Some(route),
        sylow,
        witness: Some(chi),
        multiplicities: None,
        admissible: Vec::new(),
        fused_pairs: Vec::new(),
        degree_minimal: false,
        fallback_agrees: None,
        infeasibility: None,
    }
}

/// A 2-effective character for a group with `rk_2(G) = rk(G) = 2`, from a
/// central strongly closed subgroup when one exists and otherwise from the
/// shape of the Sylow 2-subgroup.
///
/// Failing every route is reported as an error: such a group would
/// contradict the existence statement.
pub fn two_effective_character(g: &PermutationGroup) -> Result<PEffectiveCertificate> {
    let r = ranks(g)?;
    if r.rank != 2 || r.p_rank(2) != 2 {
        return Err(Error::Precondition(format!(
            "requires rk_2 = rk = 2, found rk_2 = {} and rk = {}",
            r.p_rank(2),
            r.rank
        )));
    }
    let s = sylow_subgroup(g, 2)?;
    if let Some(h) = find_central_strongly_closed(g, 2)? {
        let chi = scs_character(g, 2, &h)?;
        if !is_p_effective(&chi, g, 2)? {
            return Err(Error::Internal("strongly closed construction is not 2-effective".into()));
        }
        return Ok(constructed(2, s, Route::StronglyClosed, chi));
    }
    let shape = classify_two_group(&s)?;
    let route = match shape.kind {
        TwoGroupKind::Dihedral | TwoGroupKind::Semidihedral => Route::DihedralSemidihedral,
        TwoGroupKind::Wreathed => Route::Wreathed,
        _ => {
            return Err(Error::Internal(format!(
                "no strongly closed central subgroup and Sylow shape {:?} has no construction",
                shape.kind
            )))
        }
    };
    let chi = construct::shape_character(&s, &shape)?.expect("shape has a construction");
    if !is_p_effective(&chi, g, 2)? {
        return Err(Error::Internal(format!("{route:?} construction is not 2-effective")));
    }
    Ok(constructed(2, s, route, chi))
}

/// An explicit `p`-effective character: the two-prime routes for `p = 2`,
/// otherwise induction from a central strongly closed subgroup. Returns
/// `Ok(None)` for odd `p` when no such subgroup exists.
pub fn p_effective_construct(g: &PermutationGroup, p: u64) -> Result<Option<PEffectiveCertificate>> {
    if p == 2 {
        return two_effective_character(g).map(Some);
    }
    let Some(h) = find_central_strongly_closed(g, p)? else {
        return Ok(None);
    };
    let chi = scs_character(g, p, &h)?;
    if !is_p_effective(&chi, g, p)? {
        return Err(Error::Internal("strongly closed construction is not p-effective".into()));
    }
    Ok(Some(constructed(p, sylow_subgroup(g, p)?, Route::StronglyClosed, chi)))
}
