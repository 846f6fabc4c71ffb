use crate::error::{Error, Result};

use super::{Permutation, PermutationGroup};

/// A homomorphism given by the images of the source generators.
///
/// Internally it keeps the graph `{(g, φ(g))}` as a permutation group on the
/// disjoint union of both point sets; the map is well defined exactly when
/// that graph has the same order as the source.
#[derive(Clone, Debug)]
pub struct GroupHomomorphism {
    source: PermutationGroup,
    target: PermutationGroup,
    generator_images: Vec<Permutation>,
    graph: PermutationGroup,
}

impl GroupHomomorphism {
    pub fn new(
        source: &PermutationGroup,
        target: &PermutationGroup,
        generator_images: Vec<Permutation>,
    ) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::InvalidHomomorphism(format!(
                "{} generators but {} images",
                source.generators().len(),
                generator_images.len()
            )));
        }
        for img in &generator_images {
            if !target.contains(img)? {
                return Err(Error::InvalidHomomorphism("image outside target".into()));
            }
        }
        let graph = graph_group(source, target, source.generators(), &generator_images);
        if graph.order() != source.order() {
            return Err(Error::InvalidHomomorphism(
                "generator images do not respect the relations".into(),
            ));
        }
        Ok(GroupHomomorphism {
            source: source.clone(),
            target: target.clone(),
            generator_images,
            graph,
        })
    }

    pub fn source(&self) -> &PermutationGroup {
        &self.source
    }

    pub fn target(&self) -> &PermutationGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// Image of an arbitrary source element.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let d1 = self.source.degree();
        if g.degree() != d1 {
            return Err(Error::DegreeMismatch { left: d1, right: g.degree() });
        }
        let mut cur = g.clone();
        let mut acc = self.graph.identity();
        for level in &self.graph.levels {
            let beta = level.base_point;
            if beta >= d1 {
                return Err(Error::Internal("graph base point outside source".into()));
            }
            let gamma = cur.apply(beta);
            let u = level.transversal[gamma].as_ref().ok_or(Error::NotInGroup)?;
            acc = acc.mul(u);
            cur = u.restrict(0, d1).inverse().mul(&cur);
        }
        if !cur.is_identity() {
            return Err(Error::NotInGroup);
        }
        Ok(acc.restrict(d1, self.target.degree()))
    }

    pub fn image_group(&self) -> PermutationGroup {
        PermutationGroup::build(self.target.degree(), self.generator_images.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.image_group().order() == self.source.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_group().order() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }

    /// Kernel, found by mapping every source element.
    pub fn kernel(&self) -> Result<PermutationGroup> {
        let elems = self.source.element_index()?;
        let mut k = PermutationGroup::trivial(self.source.degree());
        for g in &elems.elements {
            if !k.contains_unchecked(g) && self.image(g)?.is_identity() {
                k = k.extend(g);
            }
        }
        Ok(k)
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        let gens = h.generators().iter().map(|g| self.image(g)).collect::<Result<Vec<_>>>()?;
        Ok(PermutationGroup::build(self.target.degree(), gens))
    }

    /// Preimage of an element (some element mapping to it), by scanning the source.
    pub fn preimage(&self, y: &Permutation) -> Result<Option<Permutation>> {
        let elems = self.source.element_index()?;
        for g in &elems.elements {
            if self.image(g)? == *y {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }
}

/// `⟨(a_i, b_i)⟩` acting on the disjoint union of both point sets.
fn graph_group(
    source: &PermutationGroup,
    target: &PermutationGroup,
    a: &[Permutation],
    b: &[Permutation],
) -> PermutationGroup {
    let d1 = source.degree();
    let d = d1 + target.degree();
    let gens: Vec<Permutation> = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let mut images: Vec<u32> = x.images().to_vec();
            images.extend(y.images().iter().map(|&i| i + d1 as u32));
            Permutation::from_images_unchecked(images)
        })
        .collect();
    PermutationGroup::build(d, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sign_map_of_s4() {
        let s4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let c2 = PermutationGroup::from_generators(2, &[p(2, &[&[1, 2]])]).unwrap();
        let sign = GroupHomomorphism::new(&s4, &c2, vec![p(2, &[&[1, 2]]), p(2, &[&[1, 2]])]).unwrap();
        assert_eq!(sign.kernel().unwrap().order(), 12);
        assert!(sign.image(&p(4, &[&[1, 2, 3]])).unwrap().is_identity());
        assert!(!sign.image(&p(4, &[&[1, 3]])).unwrap().is_identity());
    }

    #[test]
    fn bad_images_rejected() {
        let c4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]])]).unwrap();
        let c3 = PermutationGroup::from_generators(3, &[p(3, &[&[1, 2, 3]])]).unwrap();
        assert!(GroupHomomorphism::new(&c4, &c3, vec![p(3, &[&[1, 2, 3]])]).is_err());
    }
}
