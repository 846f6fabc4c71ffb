use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{check_cap, Result};
use crate::par;
use crate::perm::{ElementIndex, Permutation, PermutationGroup};

/// Largest group whose full subgroup lattice is enumerated.
pub const LATTICE_CAP: u64 = 5000;
const SUBGROUP_COUNT_CAP: u64 = 200_000;

/// Fixed-size bitset over element positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// Cayley table of a small group over its sorted element list.
pub struct MulTable {
    elements: Arc<ElementIndex>,
    n: usize,
    table: Vec<u16>,
    identity: u16,
}

impl MulTable {
    /// Builds row `s∘a` from row `a` by composing with left multiplication by
    /// a generator, so only `n · |gens|` permutation products are needed.
    pub fn new(g: &PermutationGroup) -> Result<Self> {
        check_cap("group order for subgroup lattice", g.order(), LATTICE_CAP)?;
        let elements = g.element_index()?;
        let n = elements.elements.len();
        let gens = g.generators();
        let left: Vec<Vec<u16>> = par::map(gens, |s| {
            elements.elements.iter().map(|b| elements.index[&s.mul(b)] as u16).collect()
        });
        let identity = elements.index[&g.identity()] as u16;
        let mut table = vec![0u16; n * n];
        let mut done = vec![false; n];
        let mut queue = vec![identity as usize];
        done[identity as usize] = true;
        for b in 0..n {
            table[identity as usize * n + b] = b as u16;
        }
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for l in &left {
                let sa = l[a] as usize;
                if !done[sa] {
                    done[sa] = true;
                    for b in 0..n {
                        table[sa * n + b] = l[table[a * n + b] as usize];
                    }
                    queue.push(sa);
                }
            }
        }
        Ok(MulTable { elements, n, table, identity })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> &Arc<ElementIndex> {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.index.get(g).copied()
    }

    /// Subgroup generated by the given element positions.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut bits = Bits::new(self.n);
        let mut list = vec![self.identity()];
        bits.insert(self.identity());
        let mut head = 0;
        while head < list.len() {
            let e = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul(e, s);
                if bits.insert(y) {
                    list.push(y);
                }
            }
        }
        bits
    }

    pub fn group(&self, degree: usize, gens: &[usize]) -> PermutationGroup {
        PermutationGroup::build(degree, gens.iter().map(|&i| self.elements.elements[i].clone()).collect())
    }
}

/// One subgroup in a lattice: its member set and a generating set.
#[derive(Clone)]
pub struct SubgroupRecord {
    pub bits: Bits,
    pub generators: Vec<usize>,
    pub order: usize,
}

/// Every subgroup of a group, sorted by order then member set.
pub struct SubgroupLattice {
    degree: usize,
    table: MulTable,
    subgroups: Vec<SubgroupRecord>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn records(&self) -> &[SubgroupRecord] {
        &self.subgroups
    }

    pub fn group(&self, i: usize) -> PermutationGroup {
        self.table.group(self.degree, &self.subgroups[i].generators)
    }

    pub fn groups(&self) -> Vec<PermutationGroup> {
        (0..self.len()).map(|i| self.group(i)).collect()
    }
}

/// Complete subgroup lattice by join-closure of the cyclic subgroups of
/// prime-power order. Every subgroup is generated by such cyclic subgroups, so
/// the closure is complete.
pub fn subgroup_lattice(g: &PermutationGroup) -> Result<SubgroupLattice> {
    let table = MulTable::new(g)?;
    let elems = table.elements().clone();
    let n = table.len();
    let mut index: HashMap<Bits, usize> = HashMap::new();
    let mut subgroups: Vec<SubgroupRecord> = Vec::new();
    let trivial = table.closure(&[]);
    index.insert(trivial.clone(), 0);
    subgroups.push(SubgroupRecord { bits: trivial, generators: Vec::new(), order: 1 });
    let mut cyclic: Vec<usize> = Vec::new();
    for x in 0..n {
        let o = elems.elements[x].order();
        if o == 1 || crate::arith::prime_divisors(o).len() != 1 {
            continue;
        }
        let bits = table.closure(&[x]);
        if !index.contains_key(&bits) {
            index.insert(bits.clone(), subgroups.len());
            subgroups.push(SubgroupRecord { order: bits.count(), bits, generators: vec![x] });
            cyclic.push(x);
        }
    }
    let mut head = 1;
    while head < subgroups.len() {
        let h = subgroups[head].clone();
        head += 1;
        let joins: Vec<Option<(Bits, Vec<usize>)>> = par::map(&cyclic, |&x| {
            if h.bits.contains(x) {
                return None;
            }
            let mut gens = h.generators.clone();
            gens.push(x);
            Some((table.closure(&gens), gens))
        });
        for (bits, gens) in joins.into_iter().flatten() {
            if !index.contains_key(&bits) {
                index.insert(bits.clone(), subgroups.len());
                subgroups.push(SubgroupRecord { order: bits.count(), bits, generators: gens });
                check_cap("subgroup count", subgroups.len() as u64, SUBGROUP_COUNT_CAP)?;
            }
        }
    }
    subgroups.sort_by(|a, b| (a.order, &a.bits).cmp(&(b.order, &b.bits)));
    Ok(SubgroupLattice { degree: g.degree(), table, subgroups })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn table_matches_composition() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let t = MulTable::new(&s4).unwrap();
        let e = t.elements().clone();
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(e.elements[t.mul(a, b)], e.elements[a].mul(&e.elements[b]));
            }
        }
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let lat = subgroup_lattice(&s4).unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.records()[0].order, 1);
        assert_eq!(lat.records()[29].order, 24);
        for (i, r) in lat.records().iter().enumerate() {
            assert_eq!(lat.group(i).order(), r.order as u64);
        }
    }
}
