use std::fmt;

use crate::error::{Error, Result};

/// A bijection of the points `1..=degree`, stored densely (0-based internally).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPermutation(format!("image {} out of range", i + 1)));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(format!("image {} repeated", i + 1)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if used[pt - 1] {
                    return Err(Error::InvalidPermutation(format!("point {pt} repeated")));
                }
                used[pt - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition `self ∘ other`.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ x ∘ self⁻¹`.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (i, &xi) in x.images.iter().enumerate() {
            out[self.images[i] as usize] = self.images[xi as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: i64) -> Permutation {
        let mut base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            self.clone()
        };
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images.iter().enumerate().all(|(i, &a)| {
            self.images[other.images[i] as usize] == other.images[a as usize]
        })
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num::integer::lcm(acc, c.len() as u64))
    }

    /// Length of the cycle through a 0-based point.
    pub fn cycle_len(&self, point: usize) -> usize {
        let mut len = 1;
        let mut cur = self.apply(point);
        while cur != point {
            cur = self.apply(cur);
            len += 1;
        }
        len
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted multiset of cycle lengths (including fixed points).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.apply(cur);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }

    /// Re-embeds into a larger degree, shifting points by `offset`.
    pub fn embed(&self, degree: usize, offset: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[i + offset] = j + offset as u32;
        }
        Permutation { images }
    }

    /// Restricts to the points `offset..offset+degree`, which must be invariant.
    pub fn restrict(&self, offset: usize, degree: usize) -> Permutation {
        Permutation {
            images: (offset..offset + degree).map(|i| self.images[i] - offset as u32).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    /// GAP-style cycle notation with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = cyc(3, &[&[1, 2]]);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = cyc(3, &[&[1, 2, 3]]);
        let b = cyc(3, &[&[1, 2]]);
        let ab = a.compose(&b).unwrap();
        // pointwise: i -> a(b(i))
        for i in 0..3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        // 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
        assert_eq!(ab, cyc(3, &[&[1, 3]]));
    }

    #[test]
    fn identity_is_neutral() {
        let a = cyc(5, &[&[1, 4, 2], &[3, 5]]);
        let e = Permutation::identity(5);
        assert_eq!(a.compose(&e).unwrap(), a);
        assert_eq!(e.compose(&a).unwrap(), a);
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn repeated_point_rejected() {
        let err = Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).unwrap_err();
        assert!(err.to_string().contains("point 2 repeated"));
    }

    #[test]
    fn conjugate_matches_definition() {
        let a = cyc(5, &[&[1, 2, 3]]);
        let t = cyc(5, &[&[1, 4], &[2, 5]]);
        let direct = t.mul(&a).mul(&t.inverse());
        assert_eq!(t.conjugate(&a), direct);
        assert_eq!(a.order(), 3);
        assert_eq!(a.pow(-1), a.inverse());
    }
}
