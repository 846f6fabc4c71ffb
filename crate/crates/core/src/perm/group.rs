use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{check_cap, Error, Result};

use super::Permutation;

/// Largest group whose elements we are willing to materialise.
pub const ELEMENT_CAP: u64 = 1_000_000;

/// One level of a stabilizer chain.
#[derive(Clone)]
pub(crate) struct Level {
    pub(crate) base_point: usize,
    pub(crate) gens: Vec<Permutation>,
    /// `transversal[γ] = u` with `u(base_point) = γ`, for γ in the basic orbit.
    pub(crate) transversal: Vec<Option<Permutation>>,
    pub(crate) orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level { base_point, gens, transversal: Vec::new(), orbit: Vec::new() };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for s in &self.gens {
                let img = s.apply(pt);
                if transversal[img].is_none() {
                    let u = s.mul(transversal[pt].as_ref().unwrap());
                    transversal[img] = Some(u);
                    orbit.push(img);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// A permutation group with a base and strong generating set.
///
/// Groups are immutable once built. Subgroups keep the parent's degree, so
/// membership tests across subgroup boundaries need no re-indexing.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
    order: u64,
    elements: Arc<OnceLock<Arc<ElementIndex>>>,
}

/// Materialised element list with a reverse index.
pub struct ElementIndex {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
            order: 1,
            elements: Arc::new(OnceLock::new()),
        }
    }

    /// Builds the group generated by `gens` via deterministic Schreier–Sims.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
        }
        Ok(Self::build(degree, gens.to_vec()))
    }

    pub(crate) fn build(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        let levels = schreier_sims(degree, &generators);
        let order = levels.iter().map(|l| l.orbit.len() as u64).product();
        PermutationGroup { degree, generators, levels, order, elements: Arc::new(OnceLock::new()) }
    }

    /// Subgroup of the same degree generated by `gens`.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<Self> {
        Self::from_generators(self.degree, gens)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Basic orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sifts `g` through the chain; returns the residue and the level where it stopped.
    pub(crate) fn strip(&self, g: &Permutation) -> (Permutation, usize) {
        strip(&self.levels, g, 0)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        Ok(self.contains_unchecked(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        let (r, _) = self.strip(g);
        r.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order <= other.order
            && other.order.is_multiple_of(self.order)
            && self.generators.iter().all(|g| other.contains_unchecked(g))
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &PermutationGroup) -> PermutationGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::build(self.degree, gens)
    }

    /// Subgroup generated by `self` and one more element.
    pub fn extend(&self, g: &Permutation) -> PermutationGroup {
        if self.contains_unchecked(g) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        Self::build(self.degree, gens)
    }

    pub fn conjugate_by(&self, t: &Permutation) -> PermutationGroup {
        let gens: Vec<_> = self.generators.iter().map(|g| t.conjugate(g)).collect();
        Self::build(self.degree, gens)
    }

    /// Every element as a product `u_1 ∘ u_2 ∘ … ∘ u_k` of transversal representatives.
    pub fn element_index(&self) -> Result<Arc<ElementIndex>> {
        check_cap("group order for element enumeration", self.order, ELEMENT_CAP)?;
        Ok(self
            .elements
            .get_or_init(|| {
                let mut elements = Vec::with_capacity(self.order as usize);
                enumerate(&self.levels, 0, &self.identity(), &mut elements);
                elements.sort();
                let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
                Arc::new(ElementIndex { elements, index })
            })
            .clone())
    }

    /// All elements in sorted (lexicographic image) order.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        Ok(self.element_index()?.elements.clone())
    }

    /// Orbit of a 0-based point.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for g in &self.generators {
                let img = g.apply(pt);
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Canonical key: the sorted element list.
    pub fn canonical_key(&self) -> Result<Vec<Permutation>> {
        self.elements()
    }

    /// Exponent (lcm of element orders).
    pub fn exponent(&self) -> Result<u64> {
        let idx = self.element_index()?;
        Ok(idx.elements.iter().fold(1u64, |acc, g| num::integer::lcm(acc, g.order())))
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {}, gens [", self.order, self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn strip(levels: &[Level], g: &Permutation, start: usize) -> (Permutation, usize) {
    let mut h = g.clone();
    for (i, level) in levels.iter().enumerate().skip(start) {
        let gamma = h.apply(level.base_point);
        match &level.transversal[gamma] {
            None => return (h, i),
            Some(u) => h = u.inverse().mul(&h),
        }
    }
    (h, levels.len())
}

fn enumerate(levels: &[Level], depth: usize, prefix: &Permutation, out: &mut Vec<Permutation>) {
    if depth == levels.len() {
        out.push(prefix.clone());
        return;
    }
    let level = &levels[depth];
    for &pt in &level.orbit {
        let u = level.transversal[pt].as_ref().unwrap();
        enumerate(levels, depth + 1, &prefix.mul(u), out);
    }
}

fn fixes_all(g: &Permutation, points: &[usize]) -> bool {
    points.iter().all(|&b| g.apply(b) == b)
}

fn new_base_point(g: &Permutation, base: &[usize]) -> usize {
    (0..g.degree())
        .find(|&p| g.apply(p) != p && !base.contains(&p))
        .expect("non-identity permutation fixing the base moves some other point")
}

fn schreier_sims(degree: usize, gens: &[Permutation]) -> Vec<Level> {
    let mut base: Vec<usize> = Vec::new();
    for g in gens {
        if fixes_all(g, &base) {
            base.push(new_base_point(g, &base));
        }
    }
    let mut levels: Vec<Level> = Vec::new();
    for i in 0..base.len() {
        let level_gens: Vec<Permutation> =
            gens.iter().filter(|g| fixes_all(g, &base[..i])).cloned().collect();
        levels.push(Level::new(degree, base[i], level_gens));
    }

    let mut i = levels.len() as isize - 1;
    'outer: while i >= 0 {
        let iu = i as usize;
        let orbit = levels[iu].orbit.clone();
        let level_gens = levels[iu].gens.clone();
        for &gamma in &orbit {
            for s in &level_gens {
                let u_gamma = levels[iu].transversal[gamma].as_ref().unwrap();
                let sg = s.apply(gamma);
                let u_sg = levels[iu].transversal[sg].as_ref().unwrap();
                let h = u_sg.inverse().mul(&s.mul(u_gamma));
                if h.is_identity() {
                    continue;
                }
                let (r, j) = strip(&levels, &h, iu + 1);
                if r.is_identity() {
                    continue;
                }
                if j == levels.len() {
                    let bp = new_base_point(&r, &base);
                    base.push(bp);
                    levels.push(Level::new(degree, bp, Vec::new()));
                }
                for level in levels.iter_mut().take(j + 1).skip(iu + 1) {
                    level.gens.push(r.clone());
                    level.rebuild(degree);
                }
                i = j as isize;
                continue 'outer;
            }
        }
        i -= 1;
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn symmetric_four() {
        let g = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])])
            .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.elements().unwrap().len(), 24);
    }

    #[test]
    fn dihedral_eight() {
        let g = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])])
            .unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.contains(&p(4, &[&[1, 2]])).unwrap());
    }

    #[test]
    fn trivial_and_empty() {
        let g = PermutationGroup::from_generators(5, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(5)).unwrap());
        assert!(g.base().is_empty());
    }

    #[test]
    fn alternating_four_excludes_transposition() {
        let a4 = PermutationGroup::from_generators(
            4,
            &[p(4, &[&[1, 2, 3]]), p(4, &[&[2, 3, 4]])],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.contains(&p(4, &[&[1, 2]])).unwrap());
        assert!(a4.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn order_is_product_of_orbit_lengths() {
        let g = PermutationGroup::from_generators(
            7,
            &[p(7, &[&[1, 2, 3, 4, 5, 6, 7]]), p(7, &[&[2, 3, 5], &[4, 7, 6]])],
        )
        .unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.orbit_lengths().iter().product::<usize>(), 21);
    }
}
