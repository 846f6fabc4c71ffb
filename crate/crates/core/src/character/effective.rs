use serde::{Deserialize, Serialize};

use crate::arith::p_part;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, PermutationGroup};
use crate::subgroup::{is_p_group, maximal_rank_elementary_abelians, ranks};

use super::class_function::{ClassData, ClassFunction};
use super::cyclotomic::{Cyclotomic, Rational};
use super::table::character_table;

/// Classes of `P` grouped by the `G`-class they fall into; each group is
/// sorted and groups are ordered by their smallest member.
pub fn fusion_partition(p_data: &ClassData, g: &PermutationGroup) -> Result<Vec<Vec<usize>>> {
    if !p_data.group().is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let g_classes = conjugacy_classes(g)?;
    let mut by_class: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (c, rep) in p_data.classes().reps().iter().enumerate() {
        let gc = g_classes.class_of(rep).ok_or(Error::NotSubgroup)?;
        by_class.entry(gc).or_default().push(c);
    }
    let mut groups: Vec<Vec<usize>> = by_class.into_values().collect();
    groups.sort();
    Ok(groups)
}

/// Whether `χ` takes equal values on elements of its group that are conjugate in `G`.
pub fn respects_fusion(chi: &ClassFunction, g: &PermutationGroup) -> Result<bool> {
    let groups = fusion_partition(chi.data(), g)?;
    let v = chi.values();
    Ok(groups.iter().all(|grp| grp.iter().all(|&c| v[c] == v[grp[0]])))
}

/// Everything checked by [`is_p_effective`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivenessReport {
    pub p: u64,
    pub respects_fusion: bool,
    pub rank: usize,
    pub p_rank: usize,
    /// No elementary abelian subgroup of full rank exists, so the restriction
    /// condition holds trivially.
    pub vacuous: bool,
    /// `⟨χ|_E, 1_E⟩` for each maximal-rank elementary abelian `E`.
    pub restriction_multiplicities: Vec<String>,
    pub holds: bool,
}

/// `(1/|E|) Σ_{e ∈ E} χ(e)`.
pub(crate) fn trivial_multiplicity(chi: &ClassFunction, e: &PermutationGroup) -> Result<Rational> {
    let elems = e.element_index()?;
    let mut acc = Cyclotomic::zero();
    for x in &elems.elements {
        acc = &acc + chi.value_at(x)?;
    }
    acc.scale(&Rational::new(1.into(), (e.order() as i64).into()))
        .to_rational()
        .ok_or_else(|| Error::NotACharacter("restriction multiplicity is not rational".into()))
}

pub(crate) fn require_sylow(pg: &PermutationGroup, g: &PermutationGroup, p: u64) -> Result<()> {
    if !pg.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !is_p_group(pg, p) || pg.order() != p_part(g.order(), p) {
        return Err(Error::Precondition("class function is not on a Sylow subgroup".into()));
    }
    Ok(())
}

pub fn p_effective_report(chi: &ClassFunction, g: &PermutationGroup, p: u64) -> Result<EffectivenessReport> {
    let pg = chi.group();
    require_sylow(pg, g, p)?;
    character_table(chi.data())?.character_multiplicities(chi)?;
    let fusion_ok = respects_fusion(chi, g)?;
    let rep = ranks(g)?;
    let p_rank = rep.p_rank(p);
    let vacuous = p_rank < rep.rank;
    let mut mults = Vec::new();
    if !vacuous {
        for e in maximal_rank_elementary_abelians(pg, p)? {
            mults.push(trivial_multiplicity(chi, &e)?);
        }
    }
    let holds = fusion_ok && mults.iter().all(num::Zero::is_zero);
    Ok(EffectivenessReport {
        p,
        respects_fusion: fusion_ok,
        rank: rep.rank,
        p_rank,
        vacuous,
        restriction_multiplicities: mults.iter().map(|q| q.to_string()).collect(),
        holds,
    })
}

/// A genuine character of a Sylow `p`-subgroup that respects `G`-fusion and
/// has no trivial constituent on any elementary abelian subgroup of rank
/// `rk(G)`. Rejects virtual characters and the zero function.
pub fn is_p_effective(chi: &ClassFunction, g: &PermutationGroup, p: u64) -> Result<bool> {
    Ok(p_effective_report(chi, g, p)?.holds)
}
