use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::require_divides;
use crate::character::{
    character_table, fusion_partition, is_p_effective, ClassData, ClassFunction, ClassFunctionRepr,
    Cyclotomic, Rational,
};
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;
use crate::subgroup::{maximal_rank_elementary_abelians, ranks, require_prime, sylow_subgroup};

use super::lp::{circuit_search, cone_lp, rref, CircuitSearch};

/// The circuit cross-check runs only up to this many admissible irreducibles.
pub const CIRCUIT_MAX_IRREDUCIBLES: usize = 20;
/// Supports examined by the circuit cross-check before it is skipped.
pub const CIRCUIT_BUDGET: u64 = 200_000;
/// Search nodes spent looking for a minimum-degree witness.
pub const NORMALIZE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
    /// `rk_p(G) < rk(G)`: every fusion-respecting character qualifies.
    Vacuous,
}

/// How a witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    StronglyClosed,
    DihedralSemidihedral,
    Wreathed,
    Certifier,
}

/// Data proving that no combination of admissible irreducibles respects fusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasibility {
    /// Independent linear constraints on the multiplicities of the admissible set.
    pub constraint_rows: Vec<Vec<Rational>>,
    /// Maximum of `Σ a_i` over `{A a = 0, 0 ≤ a ≤ 1}`; zero here.
    pub lp_optimum: Rational,
}

impl Infeasibility {
    /// Re-solves the program from the stored rows.
    pub fn recheck(&self, admissible: usize) -> bool {
        cone_lp(&self.constraint_rows, admissible).0.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct PEffectiveCertificate {
    pub p: u64,
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub sylow: PermutationGroup,
    pub witness: Option<ClassFunction>,
    /// Witness multiplicities over the Sylow subgroup's irreducibles, in table order.
    pub multiplicities: Option<Vec<u64>>,
    /// Irreducibles with no trivial constituent on any maximal-rank elementary abelian.
    pub admissible: Vec<usize>,
    /// Pairs of Sylow classes fused in `G`.
    pub fused_pairs: Vec<(usize, usize)>,
    pub degree_minimal: bool,
    /// Agreement of the circuit enumeration with the simplex; `None` when skipped.
    pub fallback_agrees: Option<bool>,
    pub infeasibility: Option<Infeasibility>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateRepr {
    pub schema: u32,
    pub p: u64,
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub sylow_order: u64,
    pub sylow_generators: Vec<String>,
    pub witness: Option<ClassFunctionRepr>,
    pub multiplicities: Option<Vec<u64>>,
    pub admissible: Vec<usize>,
    pub fused_pairs: Vec<(usize, usize)>,
    pub degree_minimal: bool,
    pub fallback_agrees: Option<bool>,
    pub constraint_rows: Option<Vec<Vec<String>>>,
    pub lp_optimum: Option<String>,
}

impl PEffectiveCertificate {
    pub fn to_repr(&self) -> CertificateRepr {
        CertificateRepr {
            schema: 1,
            p: self.p,
            verdict: self.verdict,
            route: self.route,
            sylow_order: self.sylow.order(),
            sylow_generators: self.sylow.generators().iter().map(|g| g.to_string()).collect(),
            witness: self.witness.as_ref().map(|w| w.to_repr()),
            multiplicities: self.multiplicities.clone(),
            admissible: self.admissible.clone(),
            fused_pairs: self.fused_pairs.clone(),
            degree_minimal: self.degree_minimal,
            fallback_agrees: self.fallback_agrees,
            constraint_rows: self
                .infeasibility
                .as_ref()
                .map(|inf| inf.constraint_rows.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()),
            lp_optimum: self.infeasibility.as_ref().map(|inf| inf.lp_optimum.to_string()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("certificate serializes")
    }

    /// Re-derives the verdict from the stored data.
    pub fn verify(&self, g: &PermutationGroup) -> Result<bool> {
        match self.verdict {
            Verdict::Exists => match &self.witness {
                Some(w) => is_p_effective(w, g, self.p),
                None => Ok(false),
            },
            Verdict::NotExists => Ok(self
                .infeasibility
                .as_ref()
                .is_some_and(|inf| inf.recheck(self.admissible.len()))),
            Verdict::Vacuous => {
                let r = ranks(g)?;
                Ok(r.p_rank(self.p) < r.rank)
            }
        }
    }
}

/// Decides whether `G` has a `p`-effective character by exact linear
/// programming over the admissible irreducibles of a Sylow subgroup.
///
/// A witness, when one exists, has minimum degree among integer solutions and
/// is lexicographically smallest among those, unless the normalization search
/// runs out of budget (`degree_minimal = false`).
pub fn p_effective_decide(g: &PermutationGroup, p: u64) -> Result<PEffectiveCertificate> {
    require_prime(p)?;
    require_divides(g.order(), p)?;
    let s = sylow_subgroup(g, p)?;
    let rep = ranks(g)?;
    let mut cert = PEffectiveCertificate {
        p,
        verdict: Verdict::Vacuous,
        route: None,
        sylow: s.clone(),
        witness: None,
        multiplicities: None,
        admissible: Vec::new(),
        fused_pairs: Vec::new(),
        degree_minimal: false,
        fallback_agrees: None,
        infeasibility: None,
    };
    if rep.p_rank(p) < rep.rank {
        return Ok(cert);
    }
    cert.route = Some(Route::Certifier);

    let data = ClassData::new(&s)?;
    let table = character_table(&data)?;
    let es = maximal_rank_elementary_abelians(&s, p)?;
    let mut admissible = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let mut ok = true;
        for e in &es {
            if !crate::character::trivial_multiplicity(chi, e)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            admissible.push(i);
        }
    }
    for grp in fusion_partition(&data, g)? {
        for &c in &grp[1..] {
            cert.fused_pairs.push((grp[0], c));
        }
    }
    let k = admissible.len();
    let rows = constraint_rows(&table_values(table.irreducibles(), &admissible), &cert.fused_pairs, k);
    cert.admissible = admissible.clone();

    let (opt, point) = cone_lp(&rows, k);
    let exists = opt.is_positive();
    if k <= CIRCUIT_MAX_IRREDUCIBLES {
        let agrees = match circuit_search(&rows, k, CIRCUIT_BUDGET) {
            CircuitSearch::Found => Some(exists),
            CircuitSearch::Empty => Some(!exists),
            CircuitSearch::Skipped => None,
        };
        if agrees == Some(false) {
            return Err(Error::Internal("simplex and circuit enumeration disagree".into()));
        }
        cert.fallback_agrees = agrees;
    }
    if !exists {
        cert.verdict = Verdict::NotExists;
        cert.infeasibility = Some(Infeasibility { constraint_rows: rows, lp_optimum: opt });
        return Ok(cert);
    }

    let degrees: Vec<u64> = admissible.iter().map(|&i| table.degrees()[i]).collect();
    let lp_witness = primitive_integer(&point);
    let (mults, minimal) = match minimum_degree_witness(&rows, &degrees, &lp_witness) {
        Some(m) => (m, true),
        None => (lp_witness, false),
    };
    let mut full = vec![0u64; table.len()];
    for (&i, &m) in admissible.iter().zip(&mults) {
        full[i] = m;
    }
    let chi = table.combination(&full.iter().map(|&m| Rational::from_integer(m.into())).collect::<Vec<_>>());
    if !is_p_effective(&chi, g, p)? {
        return Err(Error::Internal("certified combination is not p-effective".into()));
    }
    cert.verdict = Verdict::Exists;
    cert.witness = Some(chi);
    cert.multiplicities = Some(full);
    cert.degree_minimal = minimal;
    Ok(cert)
}

fn table_values(irr: &[ClassFunction], admissible: &[usize]) -> Vec<Vec<Cyclotomic>> {
    admissible.iter().map(|&i| irr[i].values().to_vec()).collect()
}

/// One rational row per power-basis coordinate of `χ(c) - χ(c')` for each fused pair.
fn constraint_rows(values: &[Vec<Cyclotomic>], pairs: &[(usize, usize)], k: usize) -> Vec<Vec<Rational>> {
    let conductor = values
        .iter()
        .flatten()
        .map(|v| v.conductor())
        .fold(1u32, |a, b| a.lcm(&b));
    let mut rows = Vec::new();
    for &(c0, c1) in pairs {
        let diffs: Vec<Cyclotomic> = values.iter().map(|v| (&v[c0] - &v[c1]).lift(conductor)).collect();
        let width = diffs.iter().map(|d| d.coefficients().len()).max().unwrap_or(0);
        for t in 0..width {
            rows.push(
                diffs.iter().map(|d| d.coefficients().get(t).cloned().unwrap_or_else(Rational::zero)).collect(),
            );
        }
    }
    rref(&rows, k).0
}

/// Scales a nonnegative rational vector to the primitive integer vector on its ray.
fn primitive_integer(v: &[Rational]) -> Vec<u64> {
    let den = v.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    ints.iter().map(|x| (x / &g).to_u64().expect("multiplicity fits in u64")).collect()
}

/// Lexicographically smallest nonnegative integer solution of least degree,
/// searched up to the degree of `upper`. `None` if the budget runs out or the
/// rows do not fit machine integers.
fn minimum_degree_witness(rows: &[Vec<Rational>], degrees: &[u64], upper: &[u64]) -> Option<Vec<u64>> {
    let k = degrees.len();
    // columns as integer vectors after clearing each row's denominators
    let mut cols = vec![Vec::with_capacity(rows.len()); k];
    for row in rows {
        let den = row.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        for (j, x) in row.iter().enumerate() {
            cols[j].push((x * Rational::from_integer(den.clone())).to_integer().to_i64()?);
        }
    }
    let max_degree: u64 = upper.iter().zip(degrees).map(|(a, d)| a * d).sum();
    let mut budget = NORMALIZE_BUDGET;
    let mut a = vec![0u64; k];
    let mut residual = vec![0i64; rows.len()];
    for target in 1..=max_degree {
        match search(0, target, degrees, &cols, &mut a, &mut residual, &mut budget) {
            Some(true) => return Some(a),
            Some(false) => {}
            None => return None,
        }
    }
    Some(upper.to_vec())
}

fn search(
    i: usize,
    remaining: u64,
    degrees: &[u64],
    cols: &[Vec<i64>],
    a: &mut [u64],
    residual: &mut [i64],
    budget: &mut u64,
) -> Option<bool> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if i == degrees.len() {
        return Some(remaining == 0 && residual.iter().all(|&r| r == 0));
    }
    let max = remaining / degrees[i];
    for m in 0..=max {
        a[i] = m;
        if search(i + 1, remaining - m * degrees[i], degrees, cols, a, residual, budget)? {
            return Some(true);
        }
        for (r, c) in residual.iter_mut().zip(&cols[i]) {
            *r += c;
        }
    }
    for (r, c) in residual.iter_mut().zip(&cols[i]) {
        *r -= c * (max as i64 + 1);
    }
    a[i] = 0;
    Some(false)
}
