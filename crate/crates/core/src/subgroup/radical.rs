use crate::error::Result;
use crate::perm::{centralizer_of_subgroup, normalizer, quotient_group, subgroup_conjugator, PermutationGroup};

use super::{is_p_centric, o_p_core, require_prime, subgroup_lattice, sylow_subgroup};

/// Principal `p`-radical subgroups of `G` inside one Sylow subgroup, one per
/// `G`-conjugacy class, in increasing order.
///
/// `P` qualifies when it is `p`-centric and `O_p(N_G(P) / P·C_G(P)) = 1`.
pub fn principal_p_radical_subgroups(g: &PermutationGroup, p: u64) -> Result<Vec<PermutationGroup>> {
    require_prime(p)?;
    let s = sylow_subgroup(g, p)?;
    let lattice = subgroup_lattice(&s)?;
    let mut kept: Vec<PermutationGroup> = Vec::new();
    for pg in lattice.groups() {
        if !is_p_centric(g, &pg, p)? {
            continue;
        }
        let mut fresh = true;
        for q in kept.iter().filter(|q| q.order() == pg.order()) {
            if subgroup_conjugator(g, &pg, q)?.is_some() {
                fresh = false;
                break;
            }
        }
        if !fresh {
            continue;
        }
        let n = normalizer(g, &pg)?;
        let pc = pg.join(&centralizer_of_subgroup(g, &pg)?);
        let (q, _) = quotient_group(&n, &pc)?;
        if o_p_core(&q, p)?.is_trivial() {
            kept.push(pg);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn s4_radicals() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let rads = principal_p_radical_subgroups(&s4, 2).unwrap();
        let orders: Vec<u64> = rads.iter().map(|r| r.order()).collect();
        assert_eq!(orders, vec![4, 8]);
        let abelian = PermutationGroup::from_generators(5, &[p(5, &[&[1, 2]]), p(5, &[&[3, 4, 5]])]).unwrap();
        let rads = principal_p_radical_subgroups(&abelian, 2).unwrap();
        assert_eq!(rads.len(), 1);
        assert_eq!(rads[0].order(), 2);
    }
}
