//! Constructors for standard group families and a small spec language such
//! as `direct_product(qd(3), cyclic(2))`.

use crate::arith::{is_prime, log_p};
use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::subgroup::sylow_subgroup;

/// Largest group built through its regular representation.
pub const TABLE_CAP: usize = 2000;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadFamily(msg.into())
}

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("family constructors build bijections")
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &a) in pts.iter().enumerate() {
        images[a] = pts[(i + 1) % pts.len()] as u32;
    }
    perm(images)
}

pub fn cyclic(m: usize) -> Result<PermutationGroup> {
    if m == 0 {
        return Err(bad("cyclic group needs positive order"));
    }
    Ok(PermutationGroup::build(m, vec![cycle(m, 0..m)]))
}

pub fn elementary_abelian(p: u64, r: usize) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    let p = p as usize;
    let d = p * r;
    Ok(PermutationGroup::build(d.max(1), (0..r).map(|i| cycle(d, i * p..(i + 1) * p)).collect()))
}

pub fn symmetric(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(bad("degree must be positive"));
    }
    if n == 1 {
        return Ok(PermutationGroup::trivial(1));
    }
    Ok(PermutationGroup::build(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)]))
}

pub fn alternating(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(bad("degree must be positive"));
    }
    if n < 3 {
        return Ok(PermutationGroup::trivial(n));
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    Ok(PermutationGroup::build(n, vec![cycle(n, [0, 1, 2]), long]))
}

/// `⟨x, y⟩` acting on `Z/m` by `x: i ↦ i+1`, `y: i ↦ a·i`; order `2m` when `a² = 1 ≠ a`.
fn metacyclic_on_residues(m: usize, a: i64) -> PermutationGroup {
    let x = cycle(m, 0..m);
    let y = perm((0..m).map(|i| (a * i as i64).rem_euclid(m as i64) as u32).collect());
    PermutationGroup::build(m, vec![x, y])
}

fn two_power(order: usize, min_exp: u32, what: &str) -> Result<u32> {
    match log_p(order as u64, 2) {
        Some(n) if n >= min_exp => Ok(n),
        _ => Err(bad(format!("{what} order must be 2^n with n ≥ {min_exp}"))),
    }
}

/// Dihedral group of the given order `2m`, acting on `m` points.
pub fn dihedral(order: usize) -> Result<PermutationGroup> {
    if order < 6 || order % 2 == 1 {
        return Err(bad("dihedral order must be even and at least 6"));
    }
    Ok(metacyclic_on_residues(order / 2, -1))
}

/// Semidihedral group of order `2^n`, `n ≥ 4`: `y x y⁻¹ = x^{-1 + 2^{n-2}}`.
pub fn semidihedral(order: usize) -> Result<PermutationGroup> {
    two_power(order, 4, "semidihedral")?;
    let m = order / 2;
    Ok(metacyclic_on_residues(m, -1 + (m / 2) as i64))
}

/// Generalised quaternion group of order `2^n`, `n ≥ 3`, via its regular representation.
pub fn quaternion(order: usize) -> Result<PermutationGroup> {
    two_power(order, 3, "quaternion")?;
    let m = order / 2;
    // element x^i y^j has index i + m·j
    let mul = |a: usize, b: usize| {
        let (i1, j1, i2, j2) = (a % m, a / m, b % m, b / m);
        let (i, j) = match (j1, j2) {
            (0, _) => (i1 + i2, j2),
            (_, 0) => (i1 + m - i2, 1),
            _ => (i1 + m - i2 + m / 2, 0),
        };
        i % m + m * j
    };
    regular_representation(order, mul, &[1, m])
}

/// Wreathed 2-group `(Z/2^n × Z/2^n) ⋊ Z/2`, order `2·4^n`, on `2^{n+1}` points.
pub fn wreathed(n: u32) -> Result<PermutationGroup> {
    if !(2..=5).contains(&n) {
        return Err(bad("wreathed parameter must be between 2 and 5"));
    }
    let m = 1usize << n;
    let d = 2 * m;
    let x = cycle(d, 0..m);
    let y = cycle(d, m..d);
    let z = perm((0..d).map(|i| ((i + m) % d) as u32).collect());
    Ok(PermutationGroup::build(d, vec![x, y, z]))
}

/// Extraspecial group of order `p^3` and exponent `p` (odd `p`), as
/// unitriangular matrices acting on `F_p^2` by `(x, y) ↦ (x + a·y + c, y + b)`.
pub fn extraspecial(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) || p == 2 {
        return Err(bad("extraspecial groups of exponent p need an odd prime"));
    }
    let p = p as usize;
    let pt = |x: usize, y: usize| (x % p + p * (y % p)) as u32;
    let a = perm((0..p * p).map(|i| pt(i % p + i / p, i / p)).collect());
    let b = perm((0..p * p).map(|i| pt(i % p, i / p + 1)).collect());
    let c = perm((0..p * p).map(|i| pt(i % p + 1, i / p)).collect());
    Ok(PermutationGroup::build(p * p, vec![a, b, c]))
}

/// 2×2 matrix `[[a, b], [c, d]]` over `Z/m`, row-major.
pub type Mat2 = [i64; 4];

fn mat_apply(m: usize, a: &Mat2, v: (usize, usize)) -> (usize, usize) {
    let (x, y) = (v.0 as i64, v.1 as i64);
    let mm = m as i64;
    (((a[0] * x + a[1] * y).rem_euclid(mm)) as usize, ((a[2] * x + a[3] * y).rem_euclid(mm)) as usize)
}

/// `⟨translations, matrices⟩` acting on `(Z/m)^2` by `v ↦ A v + b`; point `(x, y)` is `x + m·y`.
pub fn affine(m: usize, matrices: &[Mat2]) -> Result<PermutationGroup> {
    if m < 2 {
        return Err(bad("affine modulus must be at least 2"));
    }
    let d = m * m;
    let pt = |v: (usize, usize)| (v.0 + m * v.1) as u32;
    let mut gens = vec![
        perm((0..d).map(|i| pt(((i % m + 1) % m, i / m))).collect()),
        perm((0..d).map(|i| pt((i % m, (i / m + 1) % m))).collect()),
    ];
    for a in matrices {
        let images: Vec<u32> = (0..d).map(|i| pt(mat_apply(m, a, (i % m, i / m)))).collect();
        gens.push(Permutation::from_images(images).map_err(|_| bad("matrix is not invertible"))?);
    }
    Ok(PermutationGroup::build(d, gens))
}

/// `SL_2(F_p)` transvection generators.
pub const SL2_GENERATORS: [Mat2; 2] = [[1, 1, 0, 1], [1, 0, 1, 1]];

/// Affine general linear group `AGL_2(F_p)`.
pub fn agl2(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    let g = crate::character::modp::Field::new(p).primitive_root() as i64;
    affine(p as usize, &[SL2_GENERATORS[0], SL2_GENERATORS[1], [g, 0, 0, 1]])
}

/// `⟨matrices⟩ ≤ GL_2(F_p)` on the nonzero vectors of `F_p^2`; vector `(x, y)` is point `x + p·y - 1`.
pub fn linear2(p: u64, matrices: &[Mat2]) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    let pu = p as usize;
    let vectors: Vec<(usize, usize)> = (1..pu * pu).map(|i| (i % pu, i / pu)).collect();
    let index = |v: (usize, usize)| (v.0 + pu * v.1 - 1) as u32;
    let mut gens = Vec::new();
    for a in matrices {
        let images = vectors.iter().map(|&v| index(mat_apply(pu, a, v))).collect();
        gens.push(Permutation::from_images(images).map_err(|_| bad("matrix is not invertible"))?);
    }
    Ok(PermutationGroup::build(vectors.len(), gens))
}

/// `GL_2(F_p)` on the nonzero vectors of `F_p^2`.
pub fn gl2(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    let g = if p == 2 { 1 } else { crate::character::modp::Field::new(p).primitive_root() as i64 };
    linear2(p, &[SL2_GENERATORS[0], SL2_GENERATORS[1], [g, 0, 0, 1]])
}

/// `SL_2(F_p)` on the nonzero vectors of `F_p^2`.
pub fn sl2(p: u64) -> Result<PermutationGroup> {
    linear2(p, &SL2_GENERATORS)
}

/// `PSL_2(F_p)` on the projective line (`∞` is point `p`).
pub fn psl2(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) || p < 5 {
        return Err(bad("psl2 needs a prime p ≥ 5"));
    }
    let f = crate::character::modp::Field::new(p);
    let pu = p as usize;
    let t = perm((0..=pu).map(|z| if z == pu { pu } else { (z + 1) % pu } as u32).collect());
    let s = perm(
        (0..=pu)
            .map(|z| match z {
                _ if z == pu => 0,
                0 => pu,
                _ => f.sub(0, f.inv(z as u64)) as usize,
            } as u32)
            .collect(),
    );
    Ok(PermutationGroup::build(pu + 1, vec![t, s]))
}

/// `PSL_3(F_p)` on the points of the projective plane, generated by the six
/// elementary transvections.
pub fn psl3(p: u64) -> Result<PermutationGroup> {
    if !is_prime(p) {
        return Err(bad(format!("{p} is not prime")));
    }
    let f = crate::character::modp::Field::new(p);
    let mut points: Vec<[u64; 3]> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            points.push([1, a, b]);
        }
    }
    for b in 0..p {
        points.push([0, 1, b]);
    }
    points.push([0, 0, 1]);
    let normalise = |v: [u64; 3]| -> [u64; 3] {
        let lead = *v.iter().find(|&&c| c != 0).expect("nonzero vector");
        let inv = f.inv(lead);
        [f.mul(v[0], inv), f.mul(v[1], inv), f.mul(v[2], inv)]
    };
    let index: std::collections::HashMap<[u64; 3], u32> =
        points.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                // row i += row j
                let images = points
                    .iter()
                    .map(|&v| {
                        let mut w = v;
                        w[i] = f.add(w[i], w[j]);
                        index[&normalise(w)]
                    })
                    .collect();
                gens.push(perm(images));
            }
        }
    }
    Ok(PermutationGroup::build(points.len(), gens))
}

/// Left regular representation of a group given by its multiplication table.
///
/// `mul` must define a group on `0..n`; every generator row is checked to be
/// a permutation and the generated group is checked to have order `n`.
pub fn regular_representation(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
) -> Result<PermutationGroup> {
    if n == 0 || n > TABLE_CAP {
        return Err(Error::CapExceeded { what: "multiplication table size", size: n as u64, cap: TABLE_CAP as u64 });
    }
    let mut perms = Vec::new();
    for &g in gens {
        let images: Vec<u32> = (0..n).map(|h| mul(g, h) as u32).collect();
        perms.push(Permutation::from_images(images).map_err(|_| bad("table row is not a permutation"))?);
    }
    let grp = PermutationGroup::build(n, perms);
    if grp.order() != n as u64 {
        return Err(bad("generators do not act regularly"));
    }
    Ok(grp)
}

/// `(Z/m)^2 ⋊ ⟨A⟩` through the regular representation of its multiplication
/// table; elements `(v, k)` multiply as `(v, k)(w, l) = (v + A^k w, k + l)`.
pub fn semidirect(m: usize, a: Mat2) -> Result<PermutationGroup> {
    if m < 2 {
        return Err(bad("modulus must be at least 2"));
    }
    // powers of A until the identity
    let mut powers: Vec<Mat2> = vec![[1, 0, 0, 1]];
    loop {
        let last = *powers.last().unwrap();
        let next: Mat2 = [
            (a[0] * last[0] + a[1] * last[2]).rem_euclid(m as i64),
            (a[0] * last[1] + a[1] * last[3]).rem_euclid(m as i64),
            (a[2] * last[0] + a[3] * last[2]).rem_euclid(m as i64),
            (a[2] * last[1] + a[3] * last[3]).rem_euclid(m as i64),
        ];
        if next == [1, 0, 0, 1] {
            break;
        }
        powers.push(next);
        if powers.len() > TABLE_CAP {
            return Err(bad("matrix has no finite order"));
        }
    }
    let k = powers.len();
    let mm = m * m;
    let n = mm * k;
    let decode = |e: usize| ((e % mm) % m, (e % mm) / m, e / mm);
    let mul = |e1: usize, e2: usize| {
        let (x1, y1, k1) = decode(e1);
        let (x2, y2, k2) = decode(e2);
        let (ax, ay) = mat_apply(m, &powers[k1], (x2, y2));
        ((x1 + ax) % m) + m * ((y1 + ay) % m) + mm * ((k1 + k2) % k)
    };
    regular_representation(n, mul, &[1, m, mm])
}

/// Direct product acting on the disjoint union of both point sets.
pub fn direct_product(a: &PermutationGroup, b: &PermutationGroup) -> PermutationGroup {
    let d = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.embed(d, 0)).collect();
    gens.extend(b.generators().iter().map(|g| g.embed(d, a.degree())));
    PermutationGroup::build(d, gens)
}

/// Parsed family expression.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Int(i64),
    Call(String, Vec<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.ws();
        let start = self.pos;
        if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos].is_ascii_digit()) {
            self.pos += 1;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            return text.parse().map(Expr::Int).map_err(|_| bad(format!("bad integer at {start}")));
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(bad(format!("expected a family name at {start}")));
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_ascii_lowercase();
        self.ws();
        let mut args = Vec::new();
        if self.pos < self.s.len() && self.s[self.pos] == b'(' {
            self.pos += 1;
            self.ws();
            if self.pos < self.s.len() && self.s[self.pos] == b')' {
                self.pos += 1;
            } else {
                loop {
                    args.push(self.expr()?);
                    self.ws();
                    match self.s.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(bad(format!("expected ',' or ')' at {}", self.pos))),
                    }
                }
            }
        }
        Ok(Expr::Call(name, args))
    }
}

fn int_arg(args: &[Expr], i: usize) -> Result<i64> {
    match args.get(i) {
        Some(Expr::Int(v)) => Ok(*v),
        _ => Err(bad(format!("argument {} must be an integer", i + 1))),
    }
}

fn uint_arg(args: &[Expr], i: usize) -> Result<usize> {
    usize::try_from(int_arg(args, i)?).map_err(|_| bad(format!("argument {} must be nonnegative", i + 1)))
}

fn matrices(args: &[Expr]) -> Result<Vec<Mat2>> {
    let rest = &args[1..];
    if !rest.len().is_multiple_of(4) {
        return Err(bad("matrix entries must come in groups of four"));
    }
    (0..rest.len() / 4)
        .map(|k| Ok([int_arg(rest, 4 * k)?, int_arg(rest, 4 * k + 1)?, int_arg(rest, 4 * k + 2)?, int_arg(rest, 4 * k + 3)?]))
        .collect()
}

fn eval(e: &Expr) -> Result<PermutationGroup> {
    let Expr::Call(name, args) = e else { return Err(bad("expected a family, found an integer")) };
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(format!("{name} takes {n} argument(s)")))
        }
    };
    match name.as_str() {
        "cyclic" => {
            arity(1)?;
            cyclic(uint_arg(args, 0)?)
        }
        "elementary_abelian" => {
            arity(2)?;
            elementary_abelian(uint_arg(args, 0)? as u64, uint_arg(args, 1)?)
        }
        "symmetric" => {
            arity(1)?;
            symmetric(uint_arg(args, 0)?)
        }
        "alternating" => {
            arity(1)?;
            alternating(uint_arg(args, 0)?)
        }
        "dihedral" => {
            arity(1)?;
            dihedral(uint_arg(args, 0)?)
        }
        "semidihedral" => {
            arity(1)?;
            semidihedral(uint_arg(args, 0)?)
        }
        "quaternion" => {
            arity(1)?;
            quaternion(uint_arg(args, 0)?)
        }
        "wreathed" => {
            arity(1)?;
            wreathed(uint_arg(args, 0)? as u32)
        }
        "extraspecial" => {
            arity(1)?;
            extraspecial(uint_arg(args, 0)? as u64)
        }
        "qd" => {
            arity(1)?;
            crate::qdp::build_qdp(uint_arg(args, 0)? as u64)
        }
        "agl2" => {
            arity(1)?;
            agl2(uint_arg(args, 0)? as u64)
        }
        "gl2" => {
            arity(1)?;
            gl2(uint_arg(args, 0)? as u64)
        }
        "sl2" => {
            arity(1)?;
            sl2(uint_arg(args, 0)? as u64)
        }
        "psl2" => {
            arity(1)?;
            psl2(uint_arg(args, 0)? as u64)
        }
        "psl3" => {
            arity(1)?;
            psl3(uint_arg(args, 0)? as u64)
        }
        "affine" => {
            if args.is_empty() {
                return Err(bad("affine needs a modulus"));
            }
            affine(uint_arg(args, 0)?, &matrices(args)?)
        }
        "semidirect" => {
            arity(5)?;
            semidirect(uint_arg(args, 0)?, matrices(args)?[0])
        }
        "direct_product" => {
            if args.len() < 2 {
                return Err(bad("direct_product needs at least two factors"));
            }
            let mut g = eval(&args[0])?;
            for a in &args[1..] {
                g = direct_product(&g, &eval(a)?);
            }
            Ok(g)
        }
        "sylow" => {
            arity(2)?;
            let g = eval(&args[0])?;
            let p = uint_arg(args, 1)? as u64;
            sylow_subgroup(&g, p)
        }
        other => Err(bad(format!("unknown family '{other}'"))),
    }
}

/// Builds a group from a family expression such as `dihedral(16)`,
/// `affine(3, 0, 2, 1, 0)` or `direct_product(qd(3), cyclic(2))`.
pub fn build_family(spec: &str) -> Result<PermutationGroup> {
    let mut parser = Parser { s: spec.as_bytes(), pos: 0 };
    let e = parser.expr()?;
    parser.ws();
    if parser.pos != spec.len() {
        return Err(bad(format!("unexpected trailing input at {}", parser.pos)));
    }
    eval(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            ("cyclic(12)", 12),
            ("elementary_abelian(3, 2)", 9),
            ("symmetric(4)", 24),
            ("alternating(6)", 360),
            ("dihedral(16)", 16),
            ("semidihedral(16)", 16),
            ("quaternion(16)", 16),
            ("wreathed(2)", 32),
            ("wreathed(3)", 128),
            ("extraspecial(3)", 27),
            ("agl2(3)", 432),
            ("gl2(3)", 48),
            ("psl2(7)", 168),
            ("psl3(3)", 5616),
            ("affine(4, 0, -1, 1, -1, 0, 1, 1, 0)", 96),
            ("semidirect(3, 0, 2, 1, 0)", 36),
            ("direct_product(cyclic(2), cyclic(3))", 6),
            ("sylow(symmetric(4), 2)", 8),
        ];
        for (spec, order) in cases {
            assert_eq!(build_family(spec).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(build_family("nosuch(3)"), Err(Error::BadFamily(_))));
        assert!(matches!(build_family("cyclic(3"), Err(Error::BadFamily(_))));
        assert!(matches!(build_family("cyclic(3) x"), Err(Error::BadFamily(_))));
        assert!(matches!(build_family("semidihedral(8)"), Err(Error::BadFamily(_))));
    }
}
