//! Brute-force oracles shared by the integration targets. They use only
//! element lists and direct multiplication, never the stabilizer chain.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use peffect::character::{character_table, ClassData, Cyclotomic, Rational};
use peffect::perm::{Permutation, PermutationGroup};

/// Every product of generators, by breadth-first search.
pub fn naive_closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn elements(g: &PermutationGroup) -> Vec<Permutation> {
    naive_closure(g.degree(), g.generators()).into_iter().collect()
}

/// Normal closure of one element inside the element list of `G`.
fn naive_normal_closure(all: &[Permutation], x: &Permutation) -> HashSet<Permutation> {
    let conj: BTreeSet<Permutation> = all.iter().map(|t| t.conjugate(x)).collect();
    naive_closure(x.degree(), &conj.into_iter().collect::<Vec<_>>())
}

/// `O_{p'}(G)` as the join of the normal closures of all `p'`-elements whose
/// normal closure is a `p'`-group.
pub fn brute_o_p_prime_order(g: &PermutationGroup, p: u64) -> u64 {
    let all = elements(g);
    let mut gens = Vec::new();
    for x in &all {
        if x.order() % p == 0 || x.is_identity() {
            continue;
        }
        let n = naive_normal_closure(&all, x);
        if !(n.len() as u64).is_multiple_of(p) {
            gens.push(x.clone());
        }
    }
    naive_closure(g.degree(), &gens).len() as u64
}

/// Elementary abelian subgroups of order `p^2` of a `p`-group, as element sets.
fn rank_two_elementary(s: &[Permutation], p: u64) -> Vec<Vec<Permutation>> {
    let order_p: Vec<&Permutation> = s.iter().filter(|x| x.order() == p).collect();
    let mut found: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    for a in &order_p {
        for b in &order_p {
            if !a.commutes_with(b) {
                continue;
            }
            let mut e: Vec<Permutation> = naive_closure(a.degree(), &[(*a).clone(), (*b).clone()]).into_iter().collect();
            if e.len() as u64 == p * p {
                e.sort();
                found.insert(e);
            }
        }
    }
    found.into_iter().collect()
}

/// Searches multiplicity vectors over the Sylow irreducibles with
/// `1 ≤ Σ a_i ≤ max_sum` for a combination that is constant on `G`-conjugate
/// Sylow elements and sums to zero over every rank-two elementary abelian
/// subgroup. Intended for `rk_p(G) = rk(G) = 2`.
pub fn brute_effective_search(g: &PermutationGroup, sylow: &PermutationGroup, p: u64, max_sum: u64) -> Option<Vec<u64>> {
    let all = elements(g);
    let s_elems = elements(sylow);
    let data = ClassData::new(sylow).unwrap();
    let table = character_table(&data).unwrap();
    let irr = table.irreducibles();

    // Pairs (s, t) of Sylow elements fused in `G`.
    let s_set: HashSet<&Permutation> = s_elems.iter().collect();
    let mut fused = Vec::new();
    for s in &s_elems {
        let orbit: BTreeSet<Permutation> = all.iter().map(|t| t.conjugate(s)).filter(|c| s_set.contains(c)).collect();
        for t in orbit {
            fused.push((s.clone(), t));
        }
    }
    let es = rank_two_elementary(&s_elems, p);
    let value = |a: &[u64], x: &Permutation| -> Cyclotomic {
        irr.iter()
            .zip(a)
            .filter(|(_, &m)| m > 0)
            .map(|(chi, &m)| chi.value_at(x).unwrap().scale(&Rational::from_integer((m as i64).into())))
            .sum()
    };
    let ok = |a: &[u64]| {
        fused.iter().all(|(s, t)| value(a, s) == value(a, t))
            && es.iter().all(|e| e.iter().map(|x| value(a, x)).sum::<Cyclotomic>().is_zero())
    };
    let mut a = vec![0u64; irr.len()];
    search(&mut a, 0, max_sum, &ok)
}

fn search(a: &mut Vec<u64>, from: usize, budget: u64, ok: &dyn Fn(&[u64]) -> bool) -> Option<Vec<u64>> {
    for i in from..a.len() {
        a[i] += 1;
        if ok(a) {
            return Some(a.clone());
        }
        if budget > 1 {
            if let Some(found) = search(a, i, budget - 1, ok) {
                return Some(found);
            }
        }
        a[i] -= 1;
    }
    None
}
