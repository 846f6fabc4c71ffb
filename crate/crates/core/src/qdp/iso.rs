use std::collections::BTreeMap;

use crate::error::{check_cap, Result};
use crate::par;
use crate::perm::{
    center, conjugacy_classes, derived_subgroup, ConjugacyClasses, GroupHomomorphism, Permutation,
    PermutationGroup,
};
use crate::subgroup::abelianization_invariants;

/// Groups above this order are not compared.
pub const ISO_CAP: u64 = 5000;
/// Pairs tried when looking for a two-element generating set.
const TWO_GENERATOR_ATTEMPTS: usize = 50_000;

/// (element order, class size) of every element, by element-list position.
fn signatures(classes: &ConjugacyClasses) -> Vec<(u64, u64)> {
    (0..classes.elements().elements.len())
        .map(|i| {
            let c = classes.class_of_index(i);
            (classes.orders()[c], classes.sizes()[c])
        })
        .collect()
}

/// (order, class size) histogram, `|Z|`, `|G'|` and abelianization invariants.
type Invariants = (BTreeMap<(u64, u64), usize>, u64, u64, Vec<u64>);

fn invariants(g: &PermutationGroup, classes: &ConjugacyClasses) -> Result<Invariants> {
    let mut hist = BTreeMap::new();
    for c in 0..classes.len() {
        *hist.entry((classes.orders()[c], classes.sizes()[c])).or_insert(0) += 1;
    }
    Ok((hist, center(g)?.order(), derived_subgroup(g).order(), abelianization_invariants(g)?))
}

/// A short generating set: two elements when such a pair turns up within the
/// attempt budget, otherwise the greedy set from the element list.
pub(crate) fn small_generating_set(g: &PermutationGroup, classes: &ConjugacyClasses) -> Vec<Permutation> {
    if g.is_trivial() {
        return Vec::new();
    }
    if g.generators().len() <= 2 {
        return g.generators().to_vec();
    }
    let elems = &classes.elements().elements;
    let mut by_order: Vec<&Permutation> = elems.iter().collect();
    by_order.sort_by_key(|x| std::cmp::Reverse(x.order()));
    let mut reps: Vec<&Permutation> = classes.reps().iter().collect();
    reps.sort_by_key(|x| std::cmp::Reverse(x.order()));
    let mut attempts = 0;
    for x in &reps {
        if PermutationGroup::build(g.degree(), vec![(*x).clone()]).order() == g.order() {
            return vec![(*x).clone()];
        }
        for y in &by_order {
            attempts += 1;
            if attempts > TWO_GENERATOR_ATTEMPTS {
                break;
            }
            if PermutationGroup::build(g.degree(), vec![(*x).clone(), (*y).clone()]).order() == g.order() {
                return vec![(*x).clone(), (*y).clone()];
            }
        }
    }
    let mut h = PermutationGroup::trivial(g.degree());
    let mut gens = Vec::new();
    for x in by_order {
        if !h.contains_unchecked(x) {
            h = h.extend(x);
            gens.push(x.clone());
        }
    }
    gens
}

/// An isomorphism `a → b`, or `None` when the groups are not isomorphic.
///
/// Cheap invariants are compared first; then the images of a short generating
/// set of `a` are chosen by backtracking, the first image only among class
/// representatives, with element signatures and product signatures checked
/// pairwise. Each complete assignment is validated as a homomorphism.
pub fn is_isomorphic(a: &PermutationGroup, b: &PermutationGroup) -> Result<Option<GroupHomomorphism>> {
    check_cap("isomorphism test", a.order().max(b.order()), ISO_CAP)?;
    if a.order() != b.order() {
        return Ok(None);
    }
    let ca = conjugacy_classes(a)?;
    let cb = conjugacy_classes(b)?;
    if invariants(a, &ca)? != invariants(b, &cb)? {
        return Ok(None);
    }
    let gens = small_generating_set(a, &ca);
    let source = PermutationGroup::build(a.degree(), gens.clone());
    if gens.is_empty() {
        return Ok(Some(GroupHomomorphism::new(&source, b, Vec::new())?));
    }
    let sig_a = signatures(&ca);
    let sig_b = signatures(&cb);
    let sig_of_a = |x: &Permutation| sig_a[ca.elements().index[x]];
    let sig_of_b = |x: &Permutation| sig_b[cb.elements().index[x]];
    let gen_sigs: Vec<(u64, u64)> = gens.iter().map(sig_of_a).collect();
    let product_sigs: Vec<Vec<(u64, u64)>> = (0..gens.len())
        .map(|j| (0..j).map(|i| sig_of_a(&gens[i].mul(&gens[j]))).collect())
        .collect();
    let candidates: Vec<Vec<Permutation>> = gen_sigs
        .iter()
        .map(|s| cb.elements().elements.iter().filter(|y| sig_of_b(y) == *s).cloned().collect())
        .collect();
    let first: Vec<Permutation> = cb.reps().iter().filter(|y| sig_of_b(y) == gen_sigs[0]).cloned().collect();

    let extend = |images: &mut Vec<Permutation>| -> Option<GroupHomomorphism> {
        fn go(
            images: &mut Vec<Permutation>,
            candidates: &[Vec<Permutation>],
            product_sigs: &[Vec<(u64, u64)>],
            sig_of_b: &dyn Fn(&Permutation) -> (u64, u64),
            leaf: &dyn Fn(&[Permutation]) -> Option<GroupHomomorphism>,
        ) -> Option<GroupHomomorphism> {
            let j = images.len();
            if j == candidates.len() {
                return leaf(images);
            }
            for y in &candidates[j] {
                if (0..j).all(|i| sig_of_b(&images[i].mul(y)) == product_sigs[j][i]) {
                    images.push(y.clone());
                    if let Some(h) = go(images, candidates, product_sigs, sig_of_b, leaf) {
                        return Some(h);
                    }
                    images.pop();
                }
            }
            None
        }
        let leaf = |imgs: &[Permutation]| -> Option<GroupHomomorphism> {
            let hom = GroupHomomorphism::new(&source, b, imgs.to_vec()).ok()?;
            hom.is_isomorphism().then_some(hom)
        };
        go(images, &candidates, &product_sigs, &sig_of_b, &leaf)
    };
    Ok(par::find_map_first(&first, |y| extend(&mut vec![y.clone()])))
}
