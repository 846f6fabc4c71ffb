//! Dense linear algebra over a prime field `F_ℓ`, `ℓ < 2^32`.

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub modulus: u64,
}

impl Field {
    pub fn new(modulus: u64) -> Self {
        debug_assert!(modulus < 1 << 32);
        Field { modulus }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        crate::arith::pow_mod(a, e, self.modulus)
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.modulus));
        self.pow(a, self.modulus - 2)
    }

    /// Reduces a signed integer.
    pub fn from_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    /// Smallest primitive root.
    pub fn primitive_root(self) -> u64 {
        let phi = self.modulus - 1;
        let factors = crate::arith::prime_divisors(phi);
        (2..self.modulus)
            .find(|&g| factors.iter().all(|&q| self.pow(g, phi / q) != 1))
            .expect("prime fields have primitive roots")
    }

    /// Basis of the right null space `{c : A c = 0}` of a `rows × cols` matrix.
    pub fn nullspace(self, a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = a.to_vec();
        let rows = m.len();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for k in c..cols {
                        let v = self.mul(f, m[r][k]);
                        m[i][k] = self.sub(m[i][k], v);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (i, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = self.sub(0, m[i][f]);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_small() {
        let f = Field::new(7);
        // x + 2y + 3z = 0
        let ns = f.nullspace(&[vec![1, 2, 3]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
        assert_eq!(f.primitive_root(), 3);
        assert_eq!(f.mul(f.inv(3), 3), 1);
    }
}
