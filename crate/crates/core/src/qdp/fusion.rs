use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{linear2, sl2, Mat2};
use crate::perm::{
    center, centralizer, centralizer_of_subgroup, normalizer, quotient_group, GroupHomomorphism, Permutation,
    PermutationGroup,
};
use crate::peff::is_strongly_closed;
use crate::subgroup::{
    abelian_invariants, is_homocyclic, o_p_core, o_p_prime_core, omega1, p_rank, principal_p_radical_subgroups,
    require_prime, sylow_subgroup,
};

use super::{build_qdp, is_isomorphic};

/// A copy of `Qd(p)` inside `H = N_G(P)/O_{p'}(C_G(P))` for a proper
/// homocyclic radical `P`.
#[derive(Clone, Debug)]
pub struct FusionWitness {
    pub p: u64,
    pub radical: PermutationGroup,
    pub h: PermutationGroup,
    /// Image of the radical in `H`.
    pub p_bar: PermutationGroup,
    /// Involution of `H` inverting `p_bar`.
    pub beta: Permutation,
    /// Subgroup of `C_H(β)` isomorphic to `SL_2(p)`.
    pub l: PermutationGroup,
    /// `⟨L, Ω1(p_bar)⟩`.
    pub q: PermutationGroup,
    pub iso: GroupHomomorphism,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionWitnessRepr {
    pub p: u64,
    pub radical_order: u64,
    pub radical_generators: Vec<String>,
    pub h_order: u64,
    pub beta: String,
    pub l_generators: Vec<String>,
    pub q_generators: Vec<String>,
}

impl FusionWitness {
    pub fn to_repr(&self) -> FusionWitnessRepr {
        let s = |g: &PermutationGroup| g.generators().iter().map(|x| x.to_string()).collect();
        FusionWitnessRepr {
            p: self.p,
            radical_order: self.radical.order(),
            radical_generators: s(&self.radical),
            h_order: self.h.order(),
            beta: self.beta.to_string(),
            l_generators: s(&self.l),
            q_generators: s(&self.q),
        }
    }
}

#[derive(Clone, Debug)]
pub enum FusionOutcome {
    Witness(Box<FusionWitness>),
    /// Every principal radical equals the Sylow subgroup.
    NoProperRadical,
    /// Proper radicals exist but no step of the construction went through;
    /// one reason per radical tried.
    Failed(Vec<String>),
}

/// Builds `Qd(p)` as a section of `G` from the failure of `Ω1(Z(G_p))` to be
/// strongly closed, for `p` odd and `rk_p(G) = 2`.
pub fn qdp_witness_from_fusion(g: &PermutationGroup, p: u64) -> Result<FusionOutcome> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::Precondition("p must be odd".into()));
    }
    if p_rank(g, p)? != 2 {
        return Err(Error::Precondition("requires rk_p(G) = 2".into()));
    }
    let s = sylow_subgroup(g, p)?;
    let z = omega1(&center(&s)?, p)?;
    if is_strongly_closed(g, &z, &s)? {
        return Err(Error::Precondition("Ω1(Z(G_p)) is strongly closed".into()));
    }
    let proper: Vec<PermutationGroup> =
        principal_p_radical_subgroups(g, p)?.into_iter().filter(|r| r.order() < s.order()).collect();
    if proper.is_empty() {
        return Ok(FusionOutcome::NoProperRadical);
    }
    let mut reasons = Vec::new();
    for radical in proper {
        match from_radical(g, p, &radical)? {
            Ok(w) => return Ok(FusionOutcome::Witness(Box::new(w))),
            Err(reason) => reasons.push(format!("radical of order {}: {reason}", radical.order())),
        }
    }
    Ok(FusionOutcome::Failed(reasons))
}

fn from_radical(
    g: &PermutationGroup,
    p: u64,
    radical: &PermutationGroup,
) -> Result<std::result::Result<FusionWitness, String>> {
    let inv = abelian_invariants(radical).ok();
    if !radical.is_abelian() || !is_homocyclic(radical)? || inv.as_ref().map(Vec::len) != Some(2) {
        return Ok(Err("not homocyclic of rank 2".into()));
    }
    let exponent = inv.unwrap()[0];
    if p != 3 && exponent != p {
        return Ok(Err(format!("homocyclic of exponent {exponent} with p = {p}")));
    }
    let n = normalizer(g, radical)?;
    let c = centralizer_of_subgroup(g, radical)?;
    let c_prime = o_p_prime_core(&c, p)?;
    let (h, p_bar) = if c_prime.is_trivial() {
        (n, radical.clone())
    } else {
        let (h, proj) = quotient_group(&n, &c_prime)?;
        let p_bar = proj.map_subgroup(radical)?;
        (h, p_bar)
    };
    if !o_p_core(&h, p)?.same_group(&p_bar) {
        return Ok(Err("O_p(H) differs from the image of the radical".into()));
    }
    if !o_p_prime_core(&h, p)?.is_trivial() {
        return Ok(Err("O_p'(H) is nontrivial".into()));
    }
    if !centralizer_of_subgroup(&h, &p_bar)?.is_subgroup_of(&p_bar) {
        return Ok(Err("C_H(P) is not contained in P".into()));
    }
    if p_bar.order() == crate::arith::p_part(h.order(), p) {
        return Ok(Err("the radical is Sylow in H".into()));
    }
    let omega = omega1(&p_bar, p)?;
    if !action_contains_sl2(&h, &omega, p)? {
        return Ok(Err("the action on Ω1(P) does not contain SL_2(p)".into()));
    }
    let h_elems = h.element_index()?;
    let Some(beta) = h_elems.elements.iter().find(|b| {
        b.order() == 2 && p_bar.generators().iter().all(|x| b.conjugate(x) == x.inverse())
    }) else {
        return Ok(Err("no involution inverts the radical".into()));
    };
    let cb = centralizer(&h, std::slice::from_ref(beta))?;
    let sl = sl2(p)?;
    let Some(l) = find_subgroup_isomorphic_to(&cb, &sl, p)? else {
        return Ok(Err("C_H(β) has no subgroup isomorphic to SL_2(p)".into()));
    };
    let q = l.join(&omega);
    let qd = build_qdp(p)?;
    let Some(iso) = is_isomorphic(&q, &qd)? else {
        return Ok(Err("⟨L, Ω1(P)⟩ is not isomorphic to Qd(p)".into()));
    };
    Ok(Ok(FusionWitness { p, radical: radical.clone(), h, p_bar, beta: beta.clone(), l, q, iso }))
}

/// Whether the conjugation action of `H` on the elementary abelian `omega`
/// of rank 2, read as matrices over `F_p`, contains `SL_2(p)`.
fn action_contains_sl2(h: &PermutationGroup, omega: &PermutationGroup, p: u64) -> Result<bool> {
    let elems = omega.element_index()?;
    let e1 = elems.elements.iter().find(|x| !x.is_identity()).unwrap().clone();
    let e2 = elems.elements.iter().find(|x| !x.is_identity() && !(0..p as i64).any(|k| e1.pow(k) == **x)).unwrap().clone();
    let mut coords: HashMap<Permutation, (i64, i64)> = HashMap::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            coords.insert(e1.pow(a).mul(&e2.pow(b)), (a, b));
        }
    }
    let mats: Vec<Mat2> = h
        .generators()
        .iter()
        .map(|t| {
            let (a, c) = coords[&t.conjugate(&e1)];
            let (b, d) = coords[&t.conjugate(&e2)];
            [a, b, c, d]
        })
        .collect();
    let image = linear2(p, &mats)?;
    Ok(sl2(p)?.is_subgroup_of(&image))
}

/// A two-generated subgroup of `c` isomorphic to `target`, with the first
/// generator of order `p`.
fn find_subgroup_isomorphic_to(
    c: &PermutationGroup,
    target: &PermutationGroup,
    p: u64,
) -> Result<Option<PermutationGroup>> {
    if !c.order().is_multiple_of(target.order()) {
        return Ok(None);
    }
    let elems = c.element_index()?;
    for x in elems.elements.iter().filter(|x| x.order() == p) {
        for y in &elems.elements {
            let l = PermutationGroup::build(c.degree(), vec![x.clone(), y.clone()]);
            if l.order() == target.order() && is_isomorphic(&l, target)?.is_some() {
                return Ok(Some(l));
            }
        }
    }
    Ok(None)
}
