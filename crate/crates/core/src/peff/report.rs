use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::error::{Error, Result};
use crate::perm::PermutationGroup;
use crate::qdp::p_prime_involves_qdp;
use crate::subgroup::ranks;

use super::{p_effective_decide, two_effective_character, Route, Verdict};

/// Outcome for one prime dividing the group order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub p_rank: usize,
    pub verdict: Verdict,
    /// Route of the explicit construction for `p = 2`.
    pub construction: Option<Route>,
    /// Whether `Qd(p)` is `p'`-involved; `None` when not searched.
    pub involves_qdp: Option<bool>,
    /// Agreement with the predicted equivalence; `None` when not decidable here.
    pub consistent: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub order: u64,
    pub rank: usize,
    pub entries: Vec<PrimeEntry>,
    /// No entry contradicts the equivalence.
    pub consistent: bool,
}

/// For a group of rank 2, compares for each prime `p` of `p`-rank 2 the
/// existence of a `p`-effective character with the absence of a `p'`-involved
/// `Qd(p)`; for `p = 2` existence is predicted outright and checked against
/// the explicit construction.
pub fn theorem_iff_report(g: &PermutationGroup) -> Result<TheoremReport> {
    let r = ranks(g)?;
    if r.rank != 2 {
        return Err(Error::Precondition(format!("requires rk(G) = 2, found {}", r.rank)));
    }
    let mut entries = Vec::new();
    for p in prime_divisors(g.order()) {
        let p_rank = r.p_rank(p);
        let cert = p_effective_decide(g, p)?;
        let mut entry = PrimeEntry {
            p,
            p_rank,
            verdict: cert.verdict,
            construction: None,
            involves_qdp: None,
            consistent: None,
            note: None,
        };
        if p_rank < 2 {
            entry.note = Some("p-rank below the rank".into());
        } else if p == 2 {
            match two_effective_character(g) {
                Ok(c) => {
                    entry.construction = c.route;
                    entry.consistent = Some(cert.verdict == Verdict::Exists);
                }
                Err(Error::Internal(msg)) => {
                    entry.consistent = Some(false);
                    entry.note = Some(msg);
                }
                Err(e) => return Err(e),
            }
        } else {
            match p_prime_involves_qdp(g, p) {
                Ok(w) => {
                    let involved = w.is_some();
                    entry.involves_qdp = Some(involved);
                    entry.consistent = Some((cert.verdict == Verdict::Exists) != involved);
                }
                Err(e @ Error::CapExceeded { .. }) => entry.note = Some(e.to_string()),
                Err(e) => return Err(e),
            }
        }
        entries.push(entry);
    }
    let consistent = entries.iter().all(|e| e.consistent != Some(false));
    Ok(TheoremReport { schema: 1, order: g.order(), rank: r.rank, entries, consistent })
}
