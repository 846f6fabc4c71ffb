use std::collections::HashMap;
use std::sync::Arc;

use crate::character::{character_table, ClassData, ClassFunction, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::perm::{center, Permutation, PermutationGroup};
use crate::subgroup::{classify_two_group, omega1, sylow_subgroup, TwoGroupKind, TwoGroupShape};

use super::closure::is_strongly_closed;

fn int(i: i64) -> Rational {
    Rational::from_integer(i.into())
}

/// The induced character `φ = Ind_K^{G_p}(Σ nontrivial irreducibles of K)` for
/// `K = Ω1(H)`, where `H ⊆ Z(G_p)` is nontrivial and strongly closed.
///
/// Since `K` is central, `φ` is `[G_p:K](|K|-1)` at the identity,
/// `-[G_p:K]` on `K ∖ {1}` and zero elsewhere.
pub fn scs_character(g: &PermutationGroup, p: u64, h: &PermutationGroup) -> Result<ClassFunction> {
    let s = sylow_subgroup(g, p)?;
    if h.is_trivial() {
        return Err(Error::Precondition("subgroup is trivial".into()));
    }
    if !h.is_subgroup_of(&center(&s)?) {
        return Err(Error::Precondition("subgroup is not central in the Sylow subgroup".into()));
    }
    if !is_strongly_closed(g, h, &s)? {
        return Err(Error::Precondition("subgroup is not strongly closed".into()));
    }
    let k = omega1(h, p)?;
    let k_data = ClassData::new(&k)?;
    // Σ_{ψ ≠ 1} ψ = regular − trivial
    let chi = ClassFunction::regular(&k_data).sub(&ClassFunction::trivial(&k_data))?;
    let s_data = ClassData::new(&s)?;
    let phi = chi.induce(&s_data)?;
    let index = (s.order() / k.order()) as i64;
    let expected = ClassFunction::from_fn(&s_data, |x| {
        if x.is_identity() {
            Cyclotomic::from_integer(index * (k.order() as i64 - 1))
        } else if k.contains_unchecked(x) {
            Cyclotomic::from_integer(-index)
        } else {
            Cyclotomic::zero()
        }
    });
    if phi != expected {
        return Err(Error::Internal("induced character differs from its closed form".into()));
    }
    Ok(phi)
}

/// Values of the constructed character on a group of order `2^n`, `u = 2^{n-3}`:
/// `3u` at the identity, `-u` on involutions, and `u` elsewhere, except that
/// in the semidihedral case elements of order `2^{n-1}` take `-u`.
///
/// With `+u` there the function is not a character of a semidihedral group.
pub fn dihedral_sd_closed_form(data: &Arc<ClassData>, semidihedral: bool) -> ClassFunction {
    let n = crate::arith::log_p(data.order(), 2).expect("2-group");
    let u = 1i64 << (n - 3);
    let top = data.order() / 2;
    ClassFunction::from_fn(data, |x| match x.order() {
        1 => Cyclotomic::from_integer(3 * u),
        2 => Cyclotomic::from_integer(-u),
        o if semidihedral && o == top => Cyclotomic::from_integer(-u),
        _ => Cyclotomic::from_integer(u),
    })
}

/// The character `2^{n-3} φ + ψ` on a dihedral or semidihedral group of order
/// `2^n`, `n ≥ 3`, built by inducing the degree-two character of `D_8` up a
/// chain of dihedral subgroups, and checked against the closed form.
pub fn dihedral_sd_character(pg: &PermutationGroup) -> Result<ClassFunction> {
    let shape = classify_two_group(pg)?;
    dihedral_sd_character_with(pg, &shape)
}

pub(crate) fn dihedral_sd_character_with(pg: &PermutationGroup, shape: &TwoGroupShape) -> Result<ClassFunction> {
    if !matches!(shape.kind, TwoGroupKind::Dihedral | TwoGroupKind::Semidihedral) {
        return Err(Error::Precondition("group is neither dihedral nor semidihedral".into()));
    }
    let n = crate::arith::log_p(pg.order(), 2).unwrap();
    if n < 3 {
        return Err(Error::Precondition("order must be at least 8".into()));
    }
    let x = shape.x.as_ref().unwrap();
    let y = shape.y.as_ref().unwrap();
    let data = ClassData::new(pg)?;

    // φ: linear, 1 on Z(P), -1 on every noncentral involution, and -1 on x
    // when semidihedral (the other choice breaks constancy on element orders)
    let semidihedral = shape.kind == TwoGroupKind::Semidihedral;
    let table = character_table(&data)?;
    let z = center(pg)?;
    let phi = table
        .irreducibles()
        .iter()
        .find(|lam| {
            *lam.degree() == Cyclotomic::one()
                && (!semidihedral || *lam.value_at(x).unwrap() == Cyclotomic::from_integer(-1))
                && lam.class_reps().iter().zip(lam.values()).all(|(r, v)| {
                    if z.contains_unchecked(r) {
                        *v == Cyclotomic::one()
                    } else if r.order() == 2 {
                        *v == Cyclotomic::from_integer(-1)
                    } else {
                        true
                    }
                })
        })
        .ok_or_else(|| Error::Internal("no linear character with the required signs".into()))?
        .clone();

    // D_{2^k} = ⟨x^{2^{n-k}}, y⟩; the top of the chain is P itself when dihedral
    let top = if semidihedral { n - 1 } else { n };
    let dihedral_sub = |k: u32| -> PermutationGroup {
        PermutationGroup::build(pg.degree(), vec![x.pow(1 << (n - k)), y.clone()])
    };
    let d8 = dihedral_sub(3);
    let d8_data = ClassData::new(&d8)?;
    let d8_center = center(&d8)?;
    let mut psi = ClassFunction::from_fn(&d8_data, |g| {
        if g.is_identity() {
            Cyclotomic::from_integer(2)
        } else if d8_center.contains_unchecked(g) {
            Cyclotomic::from_integer(-2)
        } else {
            Cyclotomic::zero()
        }
    });
    for k in 4..=top {
        let dk = if k == n { pg.clone() } else { dihedral_sub(k) };
        psi = psi.induce(&ClassData::new(&dk)?)?;
    }
    if top < n {
        psi = psi.induce(&data)?;
    }
    let chi = phi.scale(&int(1 << (n - 3))).add(&psi)?;
    if chi != dihedral_sd_closed_form(&data, semidihedral) {
        return Err(Error::Internal("recursive construction differs from the closed-form values".into()));
    }
    Ok(chi)
}

/// `ν = tr κ` for a wreathed group with witnesses `x, y, z`:
/// `ν(x^k y^l) = α^{k+l} + α^{k-2l} + α^{-2k+l}` and `ν(x^k y^l z) = -α^{k+l}`,
/// with `α = ζ_{2^n}`.
pub fn wreathed_character(
    pg: &PermutationGroup,
    x: &Permutation,
    y: &Permutation,
    z: &Permutation,
) -> Result<ClassFunction> {
    let m = x.order();
    let n = crate::arith::log_p(m, 2).filter(|&n| n >= 2).ok_or_else(|| {
        Error::Precondition("x must have order 2^n with n ≥ 2".into())
    })?;
    let shape = TwoGroupShape {
        kind: TwoGroupKind::Wreathed,
        n,
        x: Some(x.clone()),
        y: Some(y.clone()),
        z: Some(z.clone()),
    };
    if !shape.verify(pg) {
        return Err(Error::Precondition("witnesses do not satisfy the wreathed relations".into()));
    }
    let m = m as i64;
    let alpha = |e: i64| Cyclotomic::root_of_unity(m as u32, e.rem_euclid(m));
    let mut coords: HashMap<Permutation, (i64, i64, bool)> = HashMap::new();
    let mut xk = pg.identity();
    for k in 0..m {
        let mut xkyl = xk.clone();
        for l in 0..m {
            coords.insert(xkyl.clone(), (k, l, false));
            coords.insert(xkyl.mul(z), (k, l, true));
            xkyl = xkyl.mul(y);
        }
        xk = xk.mul(x);
    }
    let nu = |g: &Permutation| -> Cyclotomic {
        let (k, l, has_z) = coords[g];
        if has_z {
            -alpha(k + l)
        } else {
            &(&alpha(k + l) + &alpha(k - 2 * l)) + &alpha(-2 * k + l)
        }
    };
    let data = ClassData::new(pg)?;
    for (c, rep) in data.classes().reps().iter().enumerate() {
        let v = nu(rep);
        for &i in data.classes().members(c) {
            if nu(&data.classes().elements().elements[i as usize]) != v {
                return Err(Error::Internal("trace is not constant on a conjugacy class".into()));
            }
        }
    }
    Ok(ClassFunction::from_fn(&data, nu))
}

/// Shape-specific 2-effective candidate for a Sylow 2-subgroup, if its shape has one.
pub(crate) fn shape_character(s: &PermutationGroup, shape: &TwoGroupShape) -> Result<Option<ClassFunction>> {
    match shape.kind {
        TwoGroupKind::Dihedral | TwoGroupKind::Semidihedral => Ok(Some(dihedral_sd_character_with(s, shape)?)),
        TwoGroupKind::Wreathed => Ok(Some(wreathed_character(
            s,
            shape.x.as_ref().unwrap(),
            shape.y.as_ref().unwrap(),
            shape.z.as_ref().unwrap(),
        )?)),
        _ => Ok(None),
    }
}
