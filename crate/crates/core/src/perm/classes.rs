use std::sync::Arc;

use crate::error::Result;

use super::{ElementIndex, Permutation, PermutationGroup};

/// Conjugacy classes of a group with a full element → class map.
///
/// Classes are sorted by (element order, class size, representative), and each
/// representative is the smallest element of its class, so the identity class
/// is always first.
#[derive(Clone)]
pub struct ConjugacyClasses {
    elements: Arc<ElementIndex>,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    /// Indexed by position in the sorted element list.
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Element order of each class.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn elements(&self) -> &Arc<ElementIndex> {
        &self.elements
    }

    /// Class index of a group element, `None` if it is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.elements.index.get(g).map(|&i| self.class_of[i] as usize)
    }

    /// Class index of the element at position `i` of the element list.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    /// Element-list positions of the members of class `c`.
    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    /// `|C_G(g)|` for `g` in class `c`.
    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.elements.elements.len() as u64 / self.sizes[c]
    }

    /// Class of `g^k` for `g` in class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(&self.reps[c].pow(k)).expect("powers stay in the group")
    }

    /// Class of the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power_class(c, -1)
    }
}

/// Partition of the group into conjugacy classes, by orbit enumeration under
/// conjugation by the generators.
pub fn conjugacy_classes(g: &PermutationGroup) -> Result<ConjugacyClasses> {
    let elements = g.element_index()?;
    let n = elements.elements.len();
    let mut raw_class = vec![u32::MAX; n];
    let mut raw_members: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if raw_class[start] != u32::MAX {
            continue;
        }
        let c = raw_members.len() as u32;
        raw_class[start] = c;
        let mut orbit = vec![start as u32];
        let mut head = 0;
        while head < orbit.len() {
            let x = &elements.elements[orbit[head] as usize];
            head += 1;
            for t in g.generators() {
                let y = t.conjugate(x);
                let j = elements.index[&y];
                if raw_class[j] == u32::MAX {
                    raw_class[j] = c;
                    orbit.push(j as u32);
                }
            }
        }
        orbit.sort_unstable();
        raw_members.push(orbit);
    }
    // the element list is sorted, so each orbit's first member is its minimum
    let mut order: Vec<usize> = (0..raw_members.len()).collect();
    let key = |c: usize| {
        let rep = &elements.elements[raw_members[c][0] as usize];
        (rep.order(), raw_members[c].len(), rep.clone())
    };
    order.sort_by_cached_key(|&c| key(c));
    let mut relabel = vec![0u32; order.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new as u32;
    }
    let class_of = raw_class.iter().map(|&c| relabel[c as usize]).collect();
    let members: Vec<Vec<u32>> = order.iter().map(|&c| std::mem::take(&mut raw_members[c])).collect();
    let reps: Vec<Permutation> = members.iter().map(|m| elements.elements[m[0] as usize].clone()).collect();
    let sizes = members.iter().map(|m| m.len() as u64).collect();
    let orders = reps.iter().map(Permutation::order).collect();
    Ok(ConjugacyClasses { elements, reps, sizes, orders, class_of, members })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn s3_and_d8() {
        let s3 = PermutationGroup::from_generators(3, &[p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap();
        let cl = conjugacy_classes(&s3).unwrap();
        assert_eq!(cl.sizes(), &[1, 3, 2]);
        assert!(cl.reps()[0].is_identity());
        let d8 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        let cl = conjugacy_classes(&d8).unwrap();
        assert_eq!(cl.len(), 5);
        assert_eq!(cl.sizes().iter().sum::<u64>(), 8);
        for c in 0..cl.len() {
            assert_eq!(cl.power_class(c, 1), c);
        }
    }
}
