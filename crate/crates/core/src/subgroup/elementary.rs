use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};

use super::{require_p_group, sylow_subgroup};

/// Elementary abelian subgroups above this rank are not enumerated.
pub const ELEMENTARY_RANK_CAP: usize = 4;

/// One elementary abelian subgroup during enumeration: its generators and its
/// members as positions in the parent's element list.
struct Candidate {
    gens: Vec<Permutation>,
    members: Vec<u32>,
}

/// All elementary abelian subgroups of a `p`-group, grouped by rank
/// (`layers[r]` holds the subgroups of rank `r`, `layers[0]` the trivial one).
///
/// Layer `r + 1` is obtained from layer `r` by adjoining a commuting element of
/// order `p`; duplicates are removed by member set.
pub fn elementary_abelian_layers(pg: &PermutationGroup, p: u64) -> Result<Vec<Vec<PermutationGroup>>> {
    require_p_group(pg, p)?;
    let elems = pg.element_index()?;
    let order_p: Vec<u32> = (0..elems.elements.len() as u32)
        .filter(|&i| elems.elements[i as usize].order() == p)
        .collect();
    let identity = elems.index[&pg.identity()] as u32;
    let mut layers: Vec<Vec<Candidate>> = vec![vec![Candidate { gens: Vec::new(), members: vec![identity] }]];
    loop {
        let last = layers.last().unwrap();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut next = Vec::new();
        for e in last {
            for &xi in &order_p {
                if e.members.binary_search(&xi).is_ok() {
                    continue;
                }
                let x = &elems.elements[xi as usize];
                if !e.gens.iter().all(|g| g.commutes_with(x)) {
                    continue;
                }
                let mut members = e.members.clone();
                let mut xk = x.clone();
                for _ in 1..p {
                    for &m in &e.members {
                        members.push(elems.index[&xk.mul(&elems.elements[m as usize])] as u32);
                    }
                    xk = xk.mul(x);
                }
                members.sort_unstable();
                if seen.insert(members.clone()) {
                    let mut gens = e.gens.clone();
                    gens.push(x.clone());
                    next.push(Candidate { gens, members });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if layers.len() > ELEMENTARY_RANK_CAP {
            return Err(Error::CapExceeded {
                what: "elementary abelian rank",
                size: layers.len() as u64,
                cap: ELEMENTARY_RANK_CAP as u64,
            });
        }
        next.sort_by(|a, b| a.members.cmp(&b.members));
        layers.push(next);
    }
    Ok(layers
        .into_iter()
        .map(|layer| {
            layer.into_iter().map(|c| PermutationGroup::build(pg.degree(), c.gens)).collect()
        })
        .collect())
}

/// All elementary abelian subgroups of maximal rank in a `p`-group.
pub fn maximal_rank_elementary_abelians(pg: &PermutationGroup, p: u64) -> Result<Vec<PermutationGroup>> {
    Ok(elementary_abelian_layers(pg, p)?.pop().unwrap())
}

/// `rk_p(G)`, computed inside one Sylow subgroup.
pub fn p_rank(g: &PermutationGroup, p: u64) -> Result<usize> {
    let s = sylow_subgroup(g, p)?;
    Ok(elementary_abelian_layers(&s, p)?.len() - 1)
}

/// Per-prime ranks and their maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub per_prime: BTreeMap<u64, usize>,
    pub rank: usize,
}

impl RankReport {
    pub fn p_rank(&self, p: u64) -> usize {
        self.per_prime.get(&p).copied().unwrap_or(0)
    }
}

pub fn ranks(g: &PermutationGroup) -> Result<RankReport> {
    let mut per_prime = BTreeMap::new();
    for p in prime_divisors(g.order()) {
        per_prime.insert(p, p_rank(g, p)?);
    }
    let rank = per_prime.values().copied().max().unwrap_or(0);
    Ok(RankReport { per_prime, rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn klein_subgroups_of_d8() {
        let d8 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        let es = maximal_rank_elementary_abelians(&d8, 2).unwrap();
        assert_eq!(es.len(), 2);
        assert!(es.iter().all(|e| e.order() == 4));
    }

    #[test]
    fn ranks_of_s4() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let r = ranks(&s4).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.p_rank(2), 2);
        assert_eq!(r.p_rank(3), 1);
        assert_eq!(r.p_rank(5), 0);
        let t = ranks(&PermutationGroup::trivial(3)).unwrap();
        assert!(t.per_prime.is_empty());
        assert_eq!(t.rank, 0);
    }
}
