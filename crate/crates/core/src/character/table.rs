use std::sync::Arc;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::par;

use super::class_function::{rational_is_nonneg_integer, ClassData, ClassFunction};
use super::cyclotomic::{Cyclotomic, Rational};
use super::modp::Field;

/// The irreducible characters of a group: trivial character first, the rest
/// sorted by degree and then by values.
#[derive(Clone)]
pub struct CharacterTable {
    data: Arc<ClassData>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn data(&self) -> &Arc<ClassData> {
        &self.data
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles
            .iter()
            .map(|c| c.degree().to_integer().and_then(|d| u64::try_from(d).ok()).unwrap_or(0))
            .collect()
    }

    /// Inner products with each irreducible.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<Rational>> {
        self.irreducibles.iter().map(|irr| chi.inner_product(irr)).collect()
    }

    /// Multiplicities of a genuine character; an error for virtual or
    /// non-characters and for the zero function.
    pub fn character_multiplicities(&self, chi: &ClassFunction) -> Result<Vec<u64>> {
        let m = self.decompose(chi)?;
        if !m.iter().all(rational_is_nonneg_integer) {
            return Err(Error::NotACharacter("multiplicities are not nonnegative integers".into()));
        }
        let m: Vec<u64> = m.iter().map(|q| u64::try_from(q.to_integer()).unwrap()).collect();
        if m.iter().all(|&x| x == 0) {
            return Err(Error::NotACharacter("zero class function".into()));
        }
        Ok(m)
    }

    /// Row and column orthogonality, and `Σ χ(1)² = |G|`.
    pub fn orthogonality_holds(&self) -> Result<bool> {
        let k = self.len();
        if k != self.data.num_classes() {
            return Ok(false);
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.irreducibles[i].inner_product_cyclotomic(&self.irreducibles[j])?;
                let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != expected {
                    return Ok(false);
                }
            }
        }
        let classes = self.data.classes();
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclotomic::zero();
                for chi in &self.irreducibles {
                    acc = &acc + &(&chi.values()[a] * &chi.values()[b].conj());
                }
                let expected = if a == b {
                    Cyclotomic::from_integer(classes.centralizer_order(a) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if acc != expected {
                    return Ok(false);
                }
            }
        }
        let sum: u64 = self.degrees().iter().map(|d| d * d).sum();
        Ok(sum == self.data.order())
    }

    /// Σ m_i χ_i.
    pub fn combination(&self, m: &[Rational]) -> ClassFunction {
        let mut out = ClassFunction::zero(&self.data);
        for (mi, chi) in m.iter().zip(&self.irreducibles) {
            if !num::Zero::is_zero(mi) {
                out = out.add(&chi.scale(mi)).expect("same group");
            }
        }
        out
    }
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|`.
fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut l = exponent + 1;
    while !(is_prime(l) && (l as f64) > bound) {
        l += exponent;
    }
    l
}

/// Character table by the class-sum eigenvector method: the central
/// characters are the common eigenvectors of the class multiplication
/// matrices, found over `F_ℓ` and lifted to cyclotomic values through the
/// eigenvalue multiplicities of each element.
pub fn character_table(data: &Arc<ClassData>) -> Result<CharacterTable> {
    let classes = data.classes();
    let k = classes.len();
    let order = data.order();
    let elems = classes.elements();
    let exponent = classes.orders().iter().fold(1u64, |a, &o| num::integer::lcm(a, o));
    let field = Field::new(dixon_prime(exponent, order));

    // c[i][j][t] = #{x ∈ C_i : x⁻¹ g_t ∈ C_j}, the structure constants of the class sums
    let per_target: Vec<Vec<u32>> = par::map_range(k, |t| {
        let gt = &classes.reps()[t];
        let mut counts = vec![0u32; k * k];
        for (xi, x) in elems.elements.iter().enumerate() {
            let y = x.inverse().mul(gt);
            let i = classes.class_of_index(xi);
            let j = classes.class_of(&y).expect("closed under products");
            counts[i * k + j] += 1;
        }
        counts
    });
    // matrices[i][j][t]: action of class sum i, M_i ω = ω_i ω
    let matrices: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|t| per_target[t][i * k + j] as u64 % field.modulus).collect()).collect())
        .collect();

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|r| {
            let mut v = vec![0; k];
            v[r] = 1;
            v
        })
        .collect()];
    for m in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let split: Vec<Vec<Vec<Vec<u64>>>> = par::map(&spaces, |basis| split_space(field, m, basis));
        spaces = split.into_iter().flatten().collect();
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Internal("class sums did not split into one-dimensional eigenspaces".into()));
    }

    let sizes = classes.sizes();
    let inverse: Vec<usize> = (0..k).map(|c| classes.inverse_class(c)).collect();
    let z = field.pow(field.primitive_root(), (field.modulus - 1) / exponent);
    let sqrt_bound = (order as f64).sqrt().floor() as u64 + 1;
    let power_classes: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let o = classes.orders()[c];
            (0..o as i64).map(|r| classes.power_class(c, r)).collect()
        })
        .collect();

    let mut irreducibles = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        let inv0 = field.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| field.mul(x, inv0)).collect();
        // χ(1)² = |G| / Σ_j ω_j ω_{j*} / h_j
        let mut s = 0;
        for j in 0..k {
            let term = field.mul(field.mul(omega[j], omega[inverse[j]]), field.inv(sizes[j] % field.modulus));
            s = field.add(s, term);
        }
        let d2 = field.mul(order % field.modulus, field.inv(s));
        let d = (1..=sqrt_bound)
            .find(|&d| d * d % field.modulus == d2)
            .ok_or_else(|| Error::Internal("no degree matches the central character".into()))?;
        let modular: Vec<u64> =
            (0..k).map(|j| field.mul(field.mul(omega[j], d), field.inv(sizes[j] % field.modulus))).collect();
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes.orders()[c];
            let zo = field.pow(z, exponent / o);
            let inv_o = field.inv(o % field.modulus);
            let mut mult = vec![0i64; o as usize];
            for (kk, m) in mult.iter_mut().enumerate() {
                let mut acc = 0;
                for r in 0..o as usize {
                    let e = (r * kk) % o as usize;
                    let w = field.pow(zo, (o as usize - e) as u64 % o);
                    acc = field.add(acc, field.mul(modular[power_classes[c][r]], w));
                }
                let val = field.mul(acc, inv_o);
                if val > d {
                    return Err(Error::Internal("eigenvalue multiplicity out of range".into()));
                }
                *m = val as i64;
            }
            values.push(Cyclotomic::from_exponent_multiplicities(o as u32, &mult).canonical());
        }
        irreducibles.push(ClassFunction::new(data, values)?);
    }

    irreducibles.sort_by(|a, b| {
        let key = |c: &ClassFunction| (!c.values().iter().all(|v| *v == Cyclotomic::one()), c.degree().clone());
        key(a).cmp(&key(b)).then_with(|| a.values().cmp(b.values()))
    });
    Ok(CharacterTable { data: data.clone(), irreducibles })
}

/// Splits an invariant subspace into eigenspaces of `m`, trying every
/// eigenvalue in the field until the dimensions add up.
fn split_space(field: Field, m: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<Vec<u64>>> {
    let k = m.len();
    let d = basis.len();
    if d == 1 {
        return vec![basis.to_vec()];
    }
    // columns m·b_t
    let mb: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..k).map(|r| (0..k).fold(0, |acc, c| field.add(acc, field.mul(m[r][c], b[c])))).collect())
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..field.modulus {
        // rows r, columns t: (m b_t − λ b_t)[r]
        let a: Vec<Vec<u64>> = (0..k)
            .map(|r| (0..d).map(|t| field.sub(mb[t][r], field.mul(lambda, basis[t][r]))).collect())
            .collect();
        let ns = field.nullspace(&a, d);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        let sub: Vec<Vec<u64>> = ns
            .iter()
            .map(|c| {
                (0..k)
                    .map(|r| (0..d).fold(0, |acc, t| field.add(acc, field.mul(c[t], basis[t][r]))))
                    .collect()
            })
            .collect();
        out.push(sub);
        if found == d {
            break;
        }
    }
    out
}
