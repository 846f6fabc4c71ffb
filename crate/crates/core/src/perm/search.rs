//! Backtrack searches over the stabilizer chain, plus brute-force variants
//! used as cross-checks on small groups.

use crate::error::{Error, Result};
use crate::par;

use super::{Permutation, PermutationGroup};

/// Constraint "t ∘ a = b ∘ t" for each (a, b) pair, evaluated on base images.
struct ConjugacyConstraint<'a> {
    pairs: &'a [(Permutation, Permutation)],
    base: Vec<usize>,
    base_pos: Vec<Option<usize>>,
}

impl<'a> ConjugacyConstraint<'a> {
    fn new(group: &PermutationGroup, pairs: &'a [(Permutation, Permutation)]) -> Self {
        let base = group.base();
        let mut base_pos = vec![None; group.degree()];
        for (i, &b) in base.iter().enumerate() {
            base_pos[b] = Some(i);
        }
        ConjugacyConstraint { pairs, base, base_pos }
    }

    /// Necessary conditions once the images of base points `0..=depth` are fixed.
    fn consistent(&self, t: &Permutation, depth: usize) -> bool {
        let beta = self.base[depth];
        let img = t.apply(beta);
        for (a, b) in self.pairs {
            if a.cycle_len(beta) != b.cycle_len(img) {
                return false;
            }
            // t(a(β_i)) = b(t(β_i)) whenever both sides are known
            for i in 0..=depth {
                let bi = self.base[i];
                if let Some(m) = self.base_pos[a.apply(bi)] {
                    if m <= depth && t.apply(self.base[m]) != b.apply(t.apply(bi)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn satisfied(&self, t: &Permutation) -> bool {
        self.pairs.iter().all(|(a, b)| t.mul(a) == b.mul(t))
    }
}

/// Depth-first traversal of `u_0 ∘ u_1 ∘ …` with pruning; `visit` returns
/// `true` to stop the search.
fn backtrack(
    group: &PermutationGroup,
    constraint: &ConjugacyConstraint<'_>,
    depth: usize,
    prefix: &Permutation,
    visit: &mut dyn FnMut(&Permutation) -> bool,
) -> bool {
    if depth == group.levels.len() {
        return constraint.satisfied(prefix) && visit(prefix);
    }
    let level = &group.levels[depth];
    for &pt in &level.orbit {
        let t = prefix.mul(level.transversal[pt].as_ref().unwrap());
        if constraint.consistent(&t, depth) && backtrack(group, constraint, depth + 1, &t, visit) {
            return true;
        }
    }
    false
}

fn require_member(g: &PermutationGroup, x: &Permutation) -> Result<()> {
    if !g.contains(x)? {
        return Err(Error::NotInGroup);
    }
    Ok(())
}

/// Some `t ∈ G` with `t a t⁻¹ = b`, found by backtracking over the chain.
pub fn conjugator(g: &PermutationGroup, a: &Permutation, b: &Permutation) -> Result<Option<Permutation>> {
    require_member(g, a)?;
    require_member(g, b)?;
    if a.cycle_type() != b.cycle_type() {
        return Ok(None);
    }
    if g.levels.is_empty() {
        return Ok((a == b).then(|| g.identity()));
    }
    let pairs = [(a.clone(), b.clone())];
    let constraint = ConjugacyConstraint::new(g, &pairs);
    let mut found = None;
    backtrack(g, &constraint, 0, &g.identity(), &mut |t| {
        found = Some(t.clone());
        true
    });
    Ok(found)
}

/// Brute-force conjugator over the element list.
pub fn conjugator_brute(
    g: &PermutationGroup,
    a: &Permutation,
    b: &Permutation,
) -> Result<Option<Permutation>> {
    require_member(g, a)?;
    require_member(g, b)?;
    let elems = g.element_index()?;
    Ok(par::find_map_first(&elems.elements, |t| (t.conjugate(a) == *b).then(|| t.clone())))
}

pub fn are_conjugate(g: &PermutationGroup, a: &Permutation, b: &Permutation) -> Result<bool> {
    Ok(conjugator(g, a, b)?.is_some())
}

/// Incrementally grows a subgroup from a stream of members.
fn grow(degree: usize, members: impl IntoIterator<Item = Permutation>) -> PermutationGroup {
    let mut h = PermutationGroup::trivial(degree);
    for x in members {
        if !h.contains_unchecked(&x) {
            h = h.extend(&x);
        }
    }
    h
}

/// Centralizer in `G` of a set of elements of `G`.
pub fn centralizer(g: &PermutationGroup, s: &[Permutation]) -> Result<PermutationGroup> {
    for x in s {
        require_member(g, x)?;
    }
    let s: Vec<&Permutation> = s.iter().filter(|x| !x.is_identity()).collect();
    if s.is_empty() || g.levels.is_empty() {
        return Ok(g.clone());
    }
    let pairs: Vec<(Permutation, Permutation)> = s.iter().map(|x| ((*x).clone(), (*x).clone())).collect();
    let constraint = ConjugacyConstraint::new(g, &pairs);
    let mut c = PermutationGroup::trivial(g.degree());
    backtrack(g, &constraint, 0, &g.identity(), &mut |t| {
        if !c.contains_unchecked(t) {
            c = c.extend(t);
        }
        false
    });
    Ok(c)
}

pub fn centralizer_of_subgroup(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    centralizer(g, h.generators())
}

pub fn centralizer_brute(g: &PermutationGroup, s: &[Permutation]) -> Result<PermutationGroup> {
    for x in s {
        require_member(g, x)?;
    }
    let elems = g.element_index()?;
    let members = par::filter(&elems.elements, |t| s.iter().all(|x| t.commutes_with(x)));
    Ok(grow(g.degree(), members))
}

/// Normalizer of `H` in `G`: every element is tested, in parallel.
pub fn normalizer(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if h.is_trivial() || h.order() == g.order() {
        return Ok(g.clone());
    }
    let elems = g.element_index()?;
    let members = par::filter(&elems.elements, |t| {
        !h.contains_unchecked(t) && h.generators().iter().all(|x| h.contains_unchecked(&t.conjugate(x)))
    });
    let mut n = h.clone();
    for x in members {
        if !n.contains_unchecked(&x) {
            n = n.extend(&x);
        }
    }
    Ok(n)
}

pub fn is_normal(g: &PermutationGroup, h: &PermutationGroup) -> bool {
    h.is_subgroup_of(g)
        && g.generators()
            .iter()
            .all(|t| h.generators().iter().all(|x| h.contains_unchecked(&t.conjugate(x))))
}

/// Whether two subgroups are conjugate in `G`; returns a conjugating element.
pub fn subgroup_conjugator(
    g: &PermutationGroup,
    a: &PermutationGroup,
    b: &PermutationGroup,
) -> Result<Option<Permutation>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.same_group(b) {
        return Ok(Some(g.identity()));
    }
    let elems = g.element_index()?;
    Ok(par::find_map_first(&elems.elements, |t| {
        a.generators()
            .iter()
            .all(|x| b.contains_unchecked(&t.conjugate(x)))
            .then(|| t.clone())
    }))
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
    fn transpositions_conjugate_in_s3() {
        let s3 = PermutationGroup::from_generators(3, &[p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap();
        let a = p(3, &[&[1, 2]]);
        let b = p(3, &[&[1, 3]]);
        let t = conjugator(&s3, &a, &b).unwrap().unwrap();
        assert_eq!(t.conjugate(&a), b);
        assert!(conjugator(&s3, &a, &a).unwrap().is_some());
    }

    #[test]
    fn nonmember_is_error() {
        let a4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3]]), p(4, &[&[2, 3, 4]])]).unwrap();
        let t = p(4, &[&[1, 2]]);
        assert_eq!(conjugator(&a4, &t, &t), Err(Error::NotInGroup));
    }

    #[test]
    fn three_cycles_split_in_a4() {
        let a4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3]]), p(4, &[&[2, 3, 4]])]).unwrap();
        let a = p(4, &[&[1, 2, 3]]);
        let b = p(4, &[&[1, 3, 2]]);
        assert!(conjugator(&a4, &a, &b).unwrap().is_none());
        assert!(conjugator_brute(&a4, &a, &b).unwrap().is_none());
    }

    #[test]
    fn centralizer_of_transposition_in_s4() {
        let g = s4();
        let c = centralizer(&g, &[p(4, &[&[1, 2]])]).unwrap();
        assert_eq!(c.order(), 4);
        assert!(c.same_group(&centralizer_brute(&g, &[p(4, &[&[1, 2]])]).unwrap()));
        assert!(centralizer(&g, &[g.identity()]).unwrap().same_group(&g));
    }

    #[test]
    fn normalizer_of_four_cycle_in_s4() {
        let g = s4();
        let h = g.subgroup(&[p(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(normalizer(&g, &h).unwrap().order(), 8);
        assert!(normalizer(&g, &g).unwrap().same_group(&g));
    }
}
