//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_N)` is stored as its coefficient vector in the power
//! basis `1, ζ, …, ζ^{φ(N)-1}`, i.e. as a polynomial reduced modulo the N-th
//! cyclotomic polynomial. For a fixed conductor this form is unique; values of
//! different conductors are compared after lifting both to the lcm.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = num::BigRational;

/// `x^k mod Φ_N` for every `0 ≤ k < N`.
struct Reduction {
    phi: usize,
    powers: Vec<Vec<i64>>,
}

fn reduction(n: u32) -> Arc<Reduction> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Reduction>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let r = Arc::new(build_reduction(n));
    cache.lock().unwrap().insert(n, r.clone());
    r
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    let mut denominators = Vec::new();
    for &d in &divisors {
        match mobius(n / d) {
            1 => poly = poly_mul_xd_minus_one(&poly, d as usize),
            -1 => denominators.push(d as usize),
            _ => {}
        }
    }
    for d in denominators {
        poly = poly_div_xd_minus_one(&poly, d);
    }
    poly
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn poly_div_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    // exact division: q * (x^d - 1) = p, solved from the top down
    let qlen = p.len() - d;
    let mut rem = p.to_vec();
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + d];
        q[i] = c;
        rem[i + d] -= c;
        rem[i] += c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn build_reduction(n: u32) -> Reduction {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    if phi == 0 {
        unreachable!("cyclotomic polynomials have positive degree");
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce using the monic Φ_n
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        for i in 0..phi {
            next[i] -= top * phi_poly[i];
        }
        cur = next;
    }
    Reduction { phi, powers }
}

pub fn euler_phi(n: u32) -> usize {
    reduction(n).phi
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let r = reduction(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic { conductor: n, coeffs: r.powers[k].iter().map(|&c| int(c)).collect() }
    }

    /// `Σ_k m_k ζ_n^k` for integer multiplicities `m`.
    pub fn from_exponent_multiplicities(n: u32, m: &[i64]) -> Self {
        let r = reduction(n);
        let mut acc = vec![0i64; r.phi];
        for (k, &mk) in m.iter().enumerate() {
            if mk != 0 {
                for (a, &c) in acc.iter_mut().zip(&r.powers[k % n as usize]) {
                    *a += mk * c;
                }
            }
        }
        Cyclotomic { conductor: n, coeffs: acc.into_iter().map(int).collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients at the stored conductor.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Re-expresses the value over `Q(ζ_l)`; `l` must be a multiple of the conductor.
    pub fn lift(&self, l: u32) -> Cyclotomic {
        assert!(l.is_multiple_of(self.conductor), "lift target must be a multiple of the conductor");
        if l == self.conductor {
            return self.clone();
        }
        let step = (l / self.conductor) as usize;
        let r = reduction(l);
        let mut acc = vec![Rational::zero(); r.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&r.powers[(i * step) % l as usize]) {
                if p != 0 {
                    *a += c * int(p);
                }
            }
        }
        Cyclotomic { conductor: l, coeffs: acc }
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l), other.lift(l))
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Image under `ζ ↦ ζ^a`, `a` coprime to the conductor.
    pub fn galois(&self, a: i64) -> Cyclotomic {
        let n = self.conductor;
        let r = reduction(n);
        let mut acc = vec![Rational::zero(); r.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (i as i64 * a).rem_euclid(n as i64) as usize;
            for (x, &p) in acc.iter_mut().zip(&r.powers[k]) {
                if p != 0 {
                    *x += c * int(p);
                }
            }
        }
        Cyclotomic { conductor: n, coeffs: acc }
    }

    /// Complex conjugate, `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Whether the value lies in `Q(ζ_m)` for `m | conductor`, and if so its form there.
    fn restrict_to(&self, m: u32) -> Option<Cyclotomic> {
        let n = self.conductor;
        let step = (n / m) as usize;
        let rn = reduction(n);
        let rm = reduction(m);
        // columns: images of ζ_m^j, j < φ(m)
        let rows = rn.phi;
        let cols = rm.phi;
        let mut a: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> =
                    (0..cols).map(|j| int(rn.powers[(j * step) % n as usize][r])).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_consistent(&mut a, cols)?;
        Some(Cyclotomic { conductor: m, coeffs: sol })
    }

    /// Same value expressed over the smallest possible conductor.
    pub fn canonical(&self) -> Cyclotomic {
        if self.is_rational() {
            return Cyclotomic::from_rational(self.coeffs[0].clone());
        }
        let mut cur = self.clone();
        'descend: loop {
            for q in prime_factors(cur.conductor) {
                if let Some(c) = cur.restrict_to(cur.conductor / q) {
                    cur = c;
                    continue 'descend;
                }
            }
            return cur;
        }
    }

    /// Serialisable form (canonical conductor, power-basis coefficients as strings).
    pub fn to_repr(&self) -> CyclotomicRepr {
        let c = self.canonical();
        CyclotomicRepr {
            conductor: c.conductor,
            coeffs: c.coeffs.iter().map(|q| q.to_string()).collect(),
        }
    }

    pub fn from_repr(repr: &CyclotomicRepr) -> Option<Cyclotomic> {
        let phi = euler_phi(repr.conductor);
        if repr.coeffs.len() != phi {
            return None;
        }
        let coeffs =
            repr.coeffs.iter().map(|s| s.parse::<Rational>().ok()).collect::<Option<Vec<_>>>()?;
        Some(Cyclotomic { conductor: repr.conductor, coeffs })
    }
}

/// Row-reduces an augmented system and returns a solution if it is consistent.
/// The system here always has full column rank.
fn solve_consistent(a: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let rows = a.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(pivot_row, r);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !a[r2][c].is_zero() {
                let f = a[r2][c].clone();
                for k in 0..=cols {
                    let v = &a[pivot_row][k] * &f;
                    a[r2][k] -= v;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = a[r][cols].clone();
    }
    Some(sol)
}

#[inline]
fn int(i: i64) -> Rational {
    Rational::from_integer(BigInt::from(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Ord for Cyclotomic {
    /// Total order on canonical forms: conductor first, then coefficients.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let a = self.canonical();
        let b = other.canonical();
        a.conductor.cmp(&b.conductor).then_with(|| a.coeffs.cmp(&b.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = self.common(rhs);
        let n = a.conductor;
        let r = reduction(n);
        let mut raw = vec![Rational::zero(); 2 * r.phi];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut acc = vec![Rational::zero(); r.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, &p) in acc.iter_mut().zip(&r.powers[k % n as usize]) {
                if p != 0 {
                    *x += c * int(p);
                }
            }
        }
        Cyclotomic { conductor: n, coeffs: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Cyclotomic {
    /// Sum of terms `c*E(N)^k` over the canonical power basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.is_rational() {
            return write!(f, "{}", c.coeffs[0]);
        }
        let mut first = true;
        for (k, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}*")?;
            }
            write!(f, "E({})", c.conductor)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Small helper for tests and callers holding `i64` data.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Nearest `f64` approximation of a rational, for diagnostics only.
pub fn approx(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn i_plus_minus_i() {
        assert!((&z(4, 1) + &z(4, 3)).is_zero());
    }

    #[test]
    fn zeta8_squared_is_i() {
        let sq = &z(8, 1) * &z(8, 1);
        assert_eq!(sq, z(4, 1));
        assert_eq!(sq.canonical().conductor(), 4);
    }

    #[test]
    fn polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn conductor_two_mod_four_reduces() {
        // ζ_6 = -ζ_3^2
        let a = z(6, 1);
        assert_eq!(a, -z(3, 2));
        assert_eq!(a.canonical().conductor(), 3);
    }

    #[test]
    fn minus_one_is_rational() {
        assert_eq!(z(2, 1).to_integer(), Some(BigInt::from(-1)));
        assert_eq!(z(8, 4).to_rational(), Some(rational(-1, 1)));
    }

    #[test]
    fn real_subfield_element() {
        // ζ_8 + ζ_8^{-1} = √2 lives in Q(ζ_8) but not Q(ζ_4)
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(s.canonical().conductor(), 8);
        assert_eq!(&s * &s, Cyclotomic::from_integer(2));
        assert_eq!(s.conj(), s);
    }

    #[test]
    fn display_and_repr_round_trip() {
        let v = &Cyclotomic::from_integer(-1) + &z(4, 1).scale(&rational(2, 1));
        assert_eq!(v.to_string(), "-1+2*E(4)");
        let back = Cyclotomic::from_repr(&v.to_repr()).unwrap();
        assert_eq!(back, v);
    }

    fn arb() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15]), prop::collection::vec(-3i64..=3, 1..6))
            .prop_map(|(n, m)| Cyclotomic::from_exponent_multiplicities(n, &m))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn canonical_is_idempotent(a in arb()) {
            let c = a.canonical();
            prop_assert_eq!(&c, &a);
            let cc = c.canonical();
            prop_assert_eq!(cc.conductor(), c.conductor());
            prop_assert_eq!(cc.coefficients(), c.coefficients());
        }
    }
}
