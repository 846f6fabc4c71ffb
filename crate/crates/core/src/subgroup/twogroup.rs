use serde::{Deserialize, Serialize};

use crate::arith::log_p;
use crate::error::Result;
use crate::perm::{Permutation, PermutationGroup};

use super::require_p_group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoGroupKind {
    Cyclic,
    Dihedral,
    Semidihedral,
    Wreathed,
    Quaternion,
    Other,
}

/// Recognised presentation of a 2-group with its generator witnesses.
///
/// The parameter `n` follows each presentation: `|P| = 2^n` for cyclic,
/// dihedral, quaternion and unrecognised groups; `x` has order `2^n` for
/// semidihedral and wreathed groups (so `|P|` is `2^{n+1}` and `2^{2n+1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGroupShape {
    pub kind: TwoGroupKind,
    pub n: u32,
    pub x: Option<Permutation>,
    pub y: Option<Permutation>,
    pub z: Option<Permutation>,
}

impl TwoGroupShape {
    /// Re-checks the defining relations and that the witnesses generate `P`.
    pub fn verify(&self, pg: &PermutationGroup) -> bool {
        let id = pg.identity();
        let gen_order = |gens: &[&Permutation]| {
            PermutationGroup::build(pg.degree(), gens.iter().map(|g| (*g).clone()).collect()).order()
        };
        let full = |gens: &[&Permutation]| gens.iter().all(|g| pg.contains_unchecked(g)) && gen_order(gens) == pg.order();
        let n = self.n;
        match (self.kind, &self.x, &self.y, &self.z) {
            (TwoGroupKind::Cyclic, Some(x), None, None) => x.order() == 1 << n && full(&[x]),
            (TwoGroupKind::Dihedral, Some(x), Some(y), None) => {
                n >= 3
                    && x.order() == 1 << (n - 1)
                    && y.pow(2) == id
                    && y.conjugate(x) == x.inverse()
                    && pg.order() == 1 << n
                    && full(&[x, y])
            }
            (TwoGroupKind::Quaternion, Some(x), Some(y), None) => {
                n >= 3
                    && x.order() == 1 << (n - 1)
                    && y.pow(2) == x.pow(1 << (n - 2))
                    && y.conjugate(x) == x.inverse()
                    && pg.order() == 1 << n
                    && full(&[x, y])
            }
            (TwoGroupKind::Semidihedral, Some(x), Some(y), None) => {
                n >= 3
                    && x.order() == 1 << n
                    && y.pow(2) == id
                    && y.conjugate(x) == x.pow(-1 + (1 << (n - 1)))
                    && pg.order() == 1 << (n + 1)
                    && full(&[x, y])
            }
            (TwoGroupKind::Wreathed, Some(x), Some(y), Some(z)) => {
                n >= 2
                    && x.pow(1 << n) == id
                    && y.pow(1 << n) == id
                    && z.pow(2) == id
                    && x.commutes_with(y)
                    && z.conjugate(x) == *y
                    && pg.order() == 1 << (2 * n + 1)
                    && full(&[x, y, z])
            }
            (TwoGroupKind::Other, None, None, None) => true,
            _ => false,
        }
    }
}

/// Recognises cyclic, dihedral, semidihedral, quaternion and wreathed 2-groups
/// by scanning for presentation witnesses in sorted element order.
///
/// Witnesses that satisfy the relations and generate a group of the
/// presentation's order prove the isomorphism, since the presented group has
/// exactly that order.
pub fn classify_two_group(pg: &PermutationGroup) -> Result<TwoGroupShape> {
    require_p_group(pg, 2)?;
    let m = log_p(pg.order(), 2).unwrap();
    let elems = pg.element_index()?;
    let id = pg.identity();
    let shape = |kind, n, x: Option<&Permutation>, y: Option<&Permutation>, z: Option<&Permutation>| TwoGroupShape {
        kind,
        n,
        x: x.cloned(),
        y: y.cloned(),
        z: z.cloned(),
    };
    if let Some(x) = elems.elements.iter().find(|x| x.order() == pg.order()) {
        return Ok(shape(TwoGroupKind::Cyclic, m, Some(x), None, None));
    }
    if pg.is_trivial() {
        return Ok(shape(TwoGroupKind::Cyclic, 0, Some(&id), None, None));
    }
    if m >= 3 {
        let half = pg.order() / 2;
        for x in elems.elements.iter().filter(|x| x.order() == half) {
            let cyc = PermutationGroup::build(pg.degree(), vec![x.clone()]);
            let outside = || elems.elements.iter().filter(|y| !cyc.contains_unchecked(y));
            if let Some(y) = outside().find(|y| y.pow(2) == id && y.conjugate(x) == x.inverse()) {
                return Ok(shape(TwoGroupKind::Dihedral, m, Some(x), Some(y), None));
            }
            if m >= 4 {
                let target = x.pow(-1 + (1 << (m - 2)));
                if let Some(y) = outside().find(|y| y.pow(2) == id && y.conjugate(x) == target) {
                    return Ok(shape(TwoGroupKind::Semidihedral, m - 1, Some(x), Some(y), None));
                }
            }
            let x_half = x.pow(1 << (m - 2));
            if let Some(y) = outside().find(|y| y.pow(2) == x_half && y.conjugate(x) == x.inverse()) {
                return Ok(shape(TwoGroupKind::Quaternion, m, Some(x), Some(y), None));
            }
        }
    }
    if m >= 5 && m % 2 == 1 {
        let n = (m - 1) / 2;
        let involutions: Vec<&Permutation> = elems.elements.iter().filter(|z| z.order() == 2).collect();
        for x in elems.elements.iter().filter(|x| x.order() == 1 << n) {
            for z in &involutions {
                let y = z.conjugate(x);
                if y.commutes_with(x) {
                    let gens = vec![x.clone(), y.clone(), (*z).clone()];
                    if PermutationGroup::build(pg.degree(), gens).order() == pg.order() {
                        return Ok(shape(TwoGroupKind::Wreathed, n, Some(x), Some(&y), Some(z)));
                    }
                }
            }
        }
    }
    Ok(shape(TwoGroupKind::Other, m, None, None, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_shapes() {
        let c8 = PermutationGroup::from_generators(8, &[p(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]])]).unwrap();
        let s = classify_two_group(&c8).unwrap();
        assert_eq!((s.kind, s.n), (TwoGroupKind::Cyclic, 3));
        assert!(s.verify(&c8));
        let d8 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        let s = classify_two_group(&d8).unwrap();
        assert_eq!((s.kind, s.n), (TwoGroupKind::Dihedral, 3));
        assert!(s.verify(&d8));
        let v4 = PermutationGroup::from_generators(4, &[p(4, &[&[1, 2]]), p(4, &[&[3, 4]])]).unwrap();
        assert_eq!(classify_two_group(&v4).unwrap().kind, TwoGroupKind::Other);
    }

    #[test]
    fn quaternion_eight() {
        // regular representation of Q8 on 8 points
        let i = p(8, &[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        let j = p(8, &[&[1, 5, 3, 7], &[2, 8, 4, 6]]);
        let q8 = PermutationGroup::from_generators(8, &[i, j]).unwrap();
        assert_eq!(q8.order(), 8);
        let s = classify_two_group(&q8).unwrap();
        assert_eq!(s.kind, TwoGroupKind::Quaternion);
        assert!(s.verify(&q8));
    }
}
