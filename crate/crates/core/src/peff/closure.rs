use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::{center, conjugacy_classes, PermutationGroup};
use crate::subgroup::{elementary_abelian_layers, omega1, require_prime, sylow_subgroup};

/// `H` is strongly closed in `K` with respect to `G`: no element of `H` is
/// `G`-conjugate to an element of `K ∖ H`.
pub fn is_strongly_closed(g: &PermutationGroup, h: &PermutationGroup, k: &PermutationGroup) -> Result<bool> {
    if !h.is_subgroup_of(k) || !k.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    let classes = conjugacy_classes(g)?;
    let h_classes: HashSet<usize> = h
        .element_index()?
        .elements
        .iter()
        .map(|x| classes.class_of(x).expect("H ⊆ G"))
        .collect();
    Ok(k.element_index()?
        .elements
        .iter()
        .filter(|x| !h.contains_unchecked(x))
        .all(|x| !h_classes.contains(&classes.class_of(x).expect("K ⊆ G"))))
}

/// Largest nontrivial subgroup of `Ω1(Z(G_p))` strongly closed in `G_p` with
/// respect to `G`, for the Sylow subgroup returned by [`sylow_subgroup`].
pub fn find_central_strongly_closed(g: &PermutationGroup, p: u64) -> Result<Option<PermutationGroup>> {
    require_prime(p)?;
    crate::arith::require_divides(g.order(), p)?;
    let s = sylow_subgroup(g, p)?;
    let z = omega1(&center(&s)?, p)?;
    let layers = elementary_abelian_layers(&z, p)?;
    for layer in layers.iter().skip(1).rev() {
        for h in layer {
            if is_strongly_closed(g, h, &s)? {
                return Ok(Some(h.clone()));
            }
        }
    }
    Ok(None)
}
