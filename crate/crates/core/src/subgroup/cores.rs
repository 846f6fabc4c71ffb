use std::collections::HashSet;

use crate::arith::p_part;
use crate::error::{Error, Result};
use crate::perm::{center, centralizer_of_subgroup, conjugacy_classes, normal_closure_unchecked, PermutationGroup};

use super::{is_p_group, require_p_group, require_prime};

/// Join of the normal closures of class representatives satisfying `keep`
/// whose normal closure also satisfies `keep_closure`.
fn core_from_classes(
    g: &PermutationGroup,
    keep: impl Fn(u64) -> bool,
    keep_closure: impl Fn(&PermutationGroup) -> bool,
) -> Result<PermutationGroup> {
    let classes = conjugacy_classes(g)?;
    let mut core = PermutationGroup::trivial(g.degree());
    for (rep, &ord) in classes.reps().iter().zip(classes.orders()) {
        if ord == 1 || !keep(ord) || core.contains_unchecked(rep) {
            continue;
        }
        let n = normal_closure_unchecked(g, std::slice::from_ref(rep));
        if keep_closure(&n) {
            core = core.join(&n);
        }
    }
    Ok(core)
}

/// `O_p(G)`: generated by the elements whose normal closure is a `p`-group.
pub fn o_p_core(g: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    require_prime(p)?;
    core_from_classes(g, |o| p_part(o, p) == o, |n| is_p_group(n, p))
}

/// `O_{p'}(G)`: generated by the elements whose normal closure has order prime to `p`.
pub fn o_p_prime_core(g: &PermutationGroup, p: u64) -> Result<PermutationGroup> {
    require_prime(p)?;
    core_from_classes(g, |o| o % p != 0, |n| n.order() % p != 0)
}

/// Whether `G` has a normal `p`-complement.
pub fn is_p_nilpotent(g: &PermutationGroup, p: u64) -> Result<bool> {
    let k = o_p_prime_core(g, p)?;
    Ok(k.order() * p_part(g.order(), p) == g.order())
}

/// `Z(P)` is a Sylow `p`-subgroup of `C_G(P)`.
pub fn is_p_centric(g: &PermutationGroup, pg: &PermutationGroup, p: u64) -> Result<bool> {
    if !pg.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    require_p_group(pg, p)?;
    let c = centralizer_of_subgroup(g, pg)?;
    Ok(center(pg)?.order() == p_part(c.order(), p))
}

/// Every normal subgroup, as joins of normal closures of class representatives,
/// sorted by order then element list.
pub fn normal_subgroups(g: &PermutationGroup) -> Result<Vec<PermutationGroup>> {
    let classes = conjugacy_classes(g)?;
    let mut found: Vec<PermutationGroup> = Vec::new();
    let mut keys: HashSet<Vec<u32>> = HashSet::new();
    let key = |h: &PermutationGroup| -> Result<Vec<u32>> {
        let elems = classes.elements();
        let mut k: Vec<u32> = h.element_index()?.elements.iter().map(|x| elems.index[x] as u32).collect();
        k.sort_unstable();
        Ok(k)
    };
    let trivial = PermutationGroup::trivial(g.degree());
    keys.insert(key(&trivial)?);
    found.push(trivial);
    let mut closures = Vec::new();
    for rep in classes.reps().iter().skip(1) {
        let n = normal_closure_unchecked(g, std::slice::from_ref(rep));
        if keys.insert(key(&n)?) {
            closures.push(n.clone());
            found.push(n);
        }
    }
    let mut head = 1;
    while head < found.len() {
        let h = found[head].clone();
        head += 1;
        for c in &closures {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let j = h.join(c);
            if keys.insert(key(&j)?) {
                found.push(j);
            }
        }
    }
    let mut keyed: Vec<(u64, Vec<u32>, PermutationGroup)> =
        found.into_iter().map(|h| Ok((h.order(), key(&h)?, h))).collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, h)| h).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::subgroup::sylow_subgroup;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cores_of_s4() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(o_p_prime_core(&s4, 2).unwrap().order(), 1);
        assert_eq!(o_p_core(&s4, 2).unwrap().order(), 4);
        assert_eq!(o_p_prime_core(&s4, 3).unwrap().order(), 4);
        let orders: Vec<u64> = normal_subgroups(&s4).unwrap().iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn s3_nilpotency() {
        let s3 = PermutationGroup::from_generators(3, &[p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap();
        assert!(is_p_nilpotent(&s3, 2).unwrap());
        assert!(!is_p_nilpotent(&s3, 3).unwrap());
    }

    #[test]
    fn sylow_is_centric() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let s = sylow_subgroup(&s4, 2).unwrap();
        assert!(is_p_centric(&s4, &s, 2).unwrap());
        assert!(!is_p_centric(&s4, &PermutationGroup::trivial(4), 2).unwrap());
    }
}
