use std::collections::HashMap;

use crate::error::{Error, Result};

use super::search::{centralizer, is_normal};
use super::{GroupHomomorphism, Permutation, PermutationGroup};

/// Smallest normal subgroup of `G` containing the elements `s`.
pub fn normal_closure(g: &PermutationGroup, s: &[Permutation]) -> Result<PermutationGroup> {
    for x in s {
        if !g.contains(x)? {
            return Err(Error::NotSubgroup);
        }
    }
    Ok(normal_closure_unchecked(g, s))
}

pub(crate) fn normal_closure_unchecked(g: &PermutationGroup, s: &[Permutation]) -> PermutationGroup {
    let mut n = PermutationGroup::build(g.degree(), s.to_vec());
    loop {
        let mut grew = false;
        let gens = n.generators().to_vec();
        for x in &gens {
            for t in g.generators() {
                let y = t.conjugate(x);
                if !n.contains_unchecked(&y) {
                    n = n.extend(&y);
                    grew = true;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}

pub fn center(g: &PermutationGroup) -> Result<PermutationGroup> {
    centralizer(g, g.generators())
}

/// Commutator subgroup `[G, G]`.
pub fn derived_subgroup(g: &PermutationGroup) -> PermutationGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].inverse().mul(&gens[j].inverse()).mul(&gens[i]).mul(&gens[j]);
            comms.push(c);
        }
    }
    normal_closure_unchecked(g, &comms)
}

/// `G/N` realised as the action of `G` on left cosets of `N`, with the projection.
pub fn quotient_group(
    g: &PermutationGroup,
    n: &PermutationGroup,
) -> Result<(PermutationGroup, GroupHomomorphism)> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let n_elems = n.element_index()?;
    let coset_key = |x: &Permutation| -> Permutation {
        n_elems.elements.iter().map(|m| x.mul(m)).min().unwrap()
    };
    let mut reps = vec![g.identity()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(coset_key(&g.identity()), 0);
    let mut actions: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        for (k, t) in g.generators().iter().enumerate() {
            let y = t.mul(&r);
            let key = coset_key(&y);
            let next = reps.len();
            let j = *index.entry(key).or_insert_with(|| {
                reps.push(y.clone());
                next
            });
            actions[k].push(j as u32);
        }
        head += 1;
    }
    let m = reps.len();
    if m as u64 * n.order() != g.order() {
        return Err(Error::Internal("coset count does not match the index".into()));
    }
    let images: Vec<Permutation> =
        actions.into_iter().map(Permutation::from_images_unchecked).collect();
    let q = PermutationGroup::build(m, images.clone());
    if q.order() != m as u64 {
        return Err(Error::Internal("coset action is not faithful on the quotient".into()));
    }
    let proj = GroupHomomorphism::new(g, &q, images)?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s4() -> PermutationGroup {
        PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap()
    }

    #[test]
    fn normal_closure_of_three_cycle_is_a4() {
        let g = s4();
        assert_eq!(normal_closure(&g, &[p(4, &[&[1, 2, 3]])]).unwrap().order(), 12);
        assert_eq!(normal_closure(&g, &[g.identity()]).unwrap().order(), 1);
    }

    #[test]
    fn s4_mod_klein_is_s3() {
        let g = s4();
        let v4 = g.subgroup(&[p(4, &[&[1, 2], &[3, 4]]), p(4, &[&[1, 3], &[2, 4]])]).unwrap();
        let (q, proj) = quotient_group(&g, &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(proj.kernel().unwrap().same_group(&v4));
        let (t, _) = quotient_group(&g, &g).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let g = s4();
        let h = g.subgroup(&[p(4, &[&[1, 2]])]).unwrap();
        assert_eq!(quotient_group(&g, &h).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn center_of_dihedral_eight() {
        let d8 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        assert_eq!(center(&d8).unwrap().order(), 2);
        assert_eq!(derived_subgroup(&d8).order(), 2);
        assert_eq!(derived_subgroup(&s4()).order(), 12);
    }
}
