use std::collections::BTreeMap;

use crate::arith::{log_p, prime_divisors};
use crate::error::{Error, Result};
use crate::perm::{derived_subgroup, quotient_group, PermutationGroup};

/// Prime-power invariant factors of an abelian group, sorted ascending.
///
/// For each prime `p`, the number of cyclic factors of order at least `p^k`
/// is `log_p(n_k / n_{k-1})` where `n_k` counts elements with `x^{p^k} = 1`.
pub fn abelian_invariants(g: &PermutationGroup) -> Result<Vec<u64>> {
    if !g.is_abelian() {
        return Err(Error::Precondition("group is not abelian".into()));
    }
    let elems = g.element_index()?;
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for x in &elems.elements {
        *hist.entry(x.order()).or_default() += 1;
    }
    let mut out = Vec::new();
    for p in prime_divisors(g.order()) {
        let n_k = |k: u32| -> u64 {
            let pk = p.pow(k);
            hist.iter().filter(|(&o, _)| pk % o == 0).map(|(_, &c)| c).sum()
        };
        // at_least[k-1] = number of factors of order ≥ p^k
        let mut at_least = Vec::new();
        let mut prev = 1u64;
        let mut k = 1;
        loop {
            let cur = n_k(k);
            if cur == prev {
                break;
            }
            at_least.push(log_p(cur / prev, p).expect("ratio is a power of p") as usize);
            prev = cur;
            k += 1;
        }
        for (i, &c) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            out.extend(std::iter::repeat_n(p.pow(i as u32 + 1), c - next));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Invariant factors of `G/[G,G]`.
pub fn abelianization_invariants(g: &PermutationGroup) -> Result<Vec<u64>> {
    let d = derived_subgroup(g);
    if d.is_trivial() {
        return abelian_invariants(g);
    }
    let (q, _) = quotient_group(g, &d)?;
    abelian_invariants(&q)
}

/// Abelian of rank two with equal invariant factors.
pub fn is_homocyclic(g: &PermutationGroup) -> Result<bool> {
    if !g.is_abelian() {
        return Ok(false);
    }
    let inv = abelian_invariants(g)?;
    Ok(inv.len() == 2 && inv[0] == inv[1])
}
