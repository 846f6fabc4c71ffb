use std::collections::HashSet;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::p_part;
use crate::error::{check_cap, Error, Result};
use crate::par;
use crate::perm::{conjugacy_classes, is_normal, quotient_group, GroupHomomorphism, PermutationGroup};
use crate::subgroup::{o_p_prime_core, require_prime};

use super::{build_qdp, is_isomorphic};

/// Groups above this order are not searched.
pub const INVOLVEMENT_CAP: u64 = 20_000;

/// `H ≤ G` and `K ⊴ H` with `K` a `p'`-group and `H/K ≅ Qd(p)`.
#[derive(Clone, Debug)]
pub struct InvolvementWitness {
    pub p: u64,
    pub h: PermutationGroup,
    pub k: PermutationGroup,
    /// `H/K` as a permutation group (`H` itself when `K` is trivial).
    pub quotient: PermutationGroup,
    /// Isomorphism from `quotient` onto the reference `Qd(p)`.
    pub iso: GroupHomomorphism,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvolvementRepr {
    pub p: u64,
    pub h_order: u64,
    pub h_generators: Vec<String>,
    pub k_order: u64,
    pub k_generators: Vec<String>,
    pub quotient_generators: Vec<String>,
    pub iso_images: Vec<String>,
}

impl InvolvementWitness {
    /// Re-checks every defining property against `G`.
    pub fn validate(&self, g: &PermutationGroup) -> Result<bool> {
        let qd = build_qdp(self.p)?;
        let ok = self.h.is_subgroup_of(g)
            && is_normal(&self.h, &self.k)
            && p_part(self.k.order(), self.p) == 1
            && self.h.order() == self.k.order() * qd.order()
            && self.iso.is_isomorphism()
            && self.iso.target().same_group(&qd)
            && self.iso.source().same_group(&self.quotient);
        if !ok {
            return Ok(false);
        }
        if self.k.is_trivial() {
            return Ok(self.quotient.same_group(&self.h));
        }
        let (q, _) = quotient_group(&self.h, &self.k)?;
        Ok(q.order() == self.quotient.order())
    }

    pub fn to_repr(&self) -> InvolvementRepr {
        let s = |g: &PermutationGroup| g.generators().iter().map(|x| x.to_string()).collect();
        InvolvementRepr {
            p: self.p,
            h_order: self.h.order(),
            h_generators: s(&self.h),
            k_order: self.k.order(),
            k_generators: s(&self.k),
            quotient_generators: s(&self.quotient),
            iso_images: self.iso.generator_images().iter().map(|x| x.to_string()).collect(),
        }
    }
}

/// Tests `H/O_{p'}(H) ≅ Qd(p)` for one candidate `H`.
pub(crate) fn section_witness(h: &PermutationGroup, p: u64, qd: &PermutationGroup) -> Result<Option<InvolvementWitness>> {
    let k = o_p_prime_core(h, p)?;
    if h.order() != k.order() * qd.order() {
        return Ok(None);
    }
    let quotient = if k.is_trivial() { h.clone() } else { quotient_group(h, &k)?.0 };
    Ok(is_isomorphic(&quotient, qd)?.map(|iso| InvolvementWitness { p, h: h.clone(), k, quotient, iso }))
}

/// Searches for a section `H/K ≅ Qd(p)` with `K` a `p'`-group.
///
/// `Qd(p)` is two-generated and has no nontrivial normal `p'`-subgroup, so
/// `H` may be taken two-generated with `K = O_{p'}(H)`; the first generator
/// runs over class representatives. `Ok(None)` means the search was
/// exhaustive.
pub fn p_prime_involves_qdp(g: &PermutationGroup, p: u64) -> Result<Option<InvolvementWitness>> {
    require_prime(p)?;
    let qd = build_qdp(p)?;
    if !g.order().is_multiple_of(qd.order()) {
        return Ok(None);
    }
    check_cap("involvement search", g.order(), INVOLVEMENT_CAP)?;
    let sylow_part = p_part(qd.order(), p);
    let classes = conjugacy_classes(g)?;
    let elems = classes.elements().clone();
    let seen: Mutex<HashSet<Vec<u32>>> = Mutex::new(HashSet::new());
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let reps: Vec<_> = classes.reps().iter().filter(|x| !x.is_identity()).cloned().collect();
    let found = par::find_map_first(&reps, |x| {
        for y in &elems.elements {
            let h = PermutationGroup::build(g.degree(), vec![x.clone(), y.clone()]);
            if !h.order().is_multiple_of(qd.order()) || p_part(h.order(), p) != sylow_part {
                continue;
            }
            let key = match h.element_index() {
                Ok(ix) => {
                    let mut k: Vec<u32> = ix.elements.iter().map(|e| elems.index[e] as u32).collect();
                    k.sort_unstable();
                    k
                }
                Err(e) => {
                    *failure.lock().unwrap() = Some(e);
                    return None;
                }
            };
            if !seen.lock().unwrap().insert(key) {
                continue;
            }
            match section_witness(&h, p, &qd) {
                Ok(Some(w)) => return Some(w),
                Ok(None) => {}
                Err(e) => {
                    *failure.lock().unwrap() = Some(e);
                    return None;
                }
            }
        }
        None
    });
    if let Some(w) = found {
        return Ok(Some(w));
    }
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(None),
    }
}
