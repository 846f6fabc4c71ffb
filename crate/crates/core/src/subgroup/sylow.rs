use crate::arith::p_part;
use crate::error::{Error, Result};
use crate::par;
use crate::perm::PermutationGroup;

use super::{require_p_group, require_prime};

/// A Sylow `p`-subgroup, grown one step of order `p` at a time.
///
/// Each step adds the first element (in sorted order) that normalises the
/// current subgroup `S`, lies outside it, and has `p`-th power in `S`. Such an
/// element exists whenever `S` is not yet Sylow.
pub fn sylow_subgroup(g: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    require_prime(p)?;
    let target = p_part(g.order(), p);
    let mut s = PermutationGroup::trivial(g.degree());
    if target == 1 {
        return Ok(s);
    }
    let elems = g.element_index()?;
    while s.order() < target {
        let x = par::find_map_first(&elems.elements, |t| {
            (!s.contains_unchecked(t)
                && s.contains_unchecked(&t.pow(p as i64))
                && s.generators().iter().all(|h| s.contains_unchecked(&t.conjugate(h))))
            .then(|| t.clone())
        })
        .ok_or_else(|| Error::Internal("Sylow climb found no extending element".into()))?;
        s = s.extend(&x);
    }
    Ok(s)
}

/// Subgroup generated by the elements of order `p` of a `p`-group.
pub fn omega1(pg: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    require_p_group(pg, p)?;
    let elems = pg.element_index()?;
    let mut out = PermutationGroup::trivial(pg.degree());
    for x in &elems.elements {
        if x.order() == p && !out.contains_unchecked(x) {
            out = out.extend(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sylows_of_s4() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order(), 3);
        assert_eq!(sylow_subgroup(&s4, 5).unwrap().order(), 1);
        assert_eq!(sylow_subgroup(&s4, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn omega1_of_cyclic_four() {
        let c4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(omega1(&c4, 2).unwrap().order(), 2);
        assert!(omega1(&c4, 3).is_err());
    }
}
