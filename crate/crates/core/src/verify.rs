//! The end-to-end sweep over a corpus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::character::{character_table, ClassData};
use crate::corpus::{Corpus, CorpusEntry};
use crate::error::{Error, Result};
use crate::par;
use crate::peff::{find_central_strongly_closed, is_strongly_closed, p_effective_decide, two_effective_character, Verdict};
use crate::perm::{center, PermutationGroup};
use crate::qdp::{p_prime_involves_qdp, qdp_witness_from_fusion, FusionOutcome};
use crate::subgroup::{
    classify_two_group, elementary_abelian_layers, is_p_group, omega1, ranks, sylow_subgroup, TwoGroupKind,
};

/// Character tables are checked for groups up to this order.
pub const CHARTAB_CHECK_CAP: u64 = 2000;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyFlags {
    /// Process entries marked long-running.
    pub long: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub order: Option<u64>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl VerifyReport {
    /// 0 when everything passed, 1 on any failure, 3 when `strict` and
    /// something was skipped.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.failed > 0 {
            1
        } else if strict && self.skipped > 0 {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let order = e.order.map_or("?".to_string(), |o| o.to_string());
            writeln!(f, "{} (order {order})", e.name)?;
            for c in &e.checks {
                match &c.outcome {
                    Outcome::Pass => writeln!(f, "  PASS {}", c.name)?,
                    Outcome::Fail(why) => writeln!(f, "  FAIL {}: {why}", c.name)?,
                    Outcome::Skip(why) => writeln!(f, "  SKIP {}: {why}", c.name)?,
                }
            }
        }
        write!(f, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }
}

struct Recorder(Vec<Check>);

impl Recorder {
    fn push(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.0.push(Check { name: name.into(), outcome });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail(why()) };
        self.push(name, outcome);
    }

    /// Records an error: caps become skips, anything else a failure.
    fn error(&mut self, name: impl Into<String>, e: Error) {
        let outcome = match e {
            Error::CapExceeded { .. } => Outcome::Skip(e.to_string()),
            _ => Outcome::Fail(e.to_string()),
        };
        self.push(name, outcome);
    }
}

/// Checks every entry of the corpus; entries run in parallel and the report
/// keeps corpus order.
pub fn run_verify_all(corpus: &Corpus, flags: VerifyFlags) -> VerifyReport {
    let entries = par::map(&corpus.entries, |e| verify_entry(corpus, e, flags));
    let mut report = VerifyReport { schema: 1, entries, passed: 0, failed: 0, skipped: 0 };
    for c in report.entries.iter().flat_map(|e| &e.checks) {
        match c.outcome {
            Outcome::Pass => report.passed += 1,
            Outcome::Fail(_) => report.failed += 1,
            Outcome::Skip(_) => report.skipped += 1,
        }
    }
    report
}

fn verify_entry(corpus: &Corpus, entry: &CorpusEntry, flags: VerifyFlags) -> EntryReport {
    let mut rec = Recorder(Vec::new());
    if entry.long && !flags.long {
        rec.push("entry", Outcome::Skip("long-running entry; enable with --long".into()));
        return EntryReport { name: entry.name.clone(), order: entry.order, checks: rec.0 };
    }
    let g = match corpus.group(entry) {
        Ok(g) => g,
        Err(e) => {
            rec.error("load", e);
            return EntryReport { name: entry.name.clone(), order: entry.order, checks: rec.0 };
        }
    };
    rec.push("load", Outcome::Pass);
    if let Err(e) = check_entry(&g, entry, &mut rec) {
        rec.error("entry", e);
    }
    EntryReport { name: entry.name.clone(), order: Some(g.order()), checks: rec.0 }
}

fn check_entry(g: &PermutationGroup, entry: &CorpusEntry, rec: &mut Recorder) -> Result<()> {
    let r = ranks(g)?;
    if let Some(expected) = entry.rank {
        rec.check("rank", r.rank == expected, || format!("expected {expected}, computed {}", r.rank));
    }
    for exp in &entry.expect {
        if !g.order().is_multiple_of(exp.p) {
            rec.push(format!("p={} expectation", exp.p), Outcome::Fail("prime does not divide the order".into()));
        }
    }

    for p in prime_divisors(g.order()) {
        let cert = match p_effective_decide(g, p) {
            Ok(c) => c,
            Err(e) => {
                rec.error(format!("p={p} decide"), e);
                continue;
            }
        };
        rec.check(format!("p={p} certificate"), cert.verify(g)?, || "certificate does not re-verify".into());
        if let Some(exp) = entry.expect.iter().find(|e| e.p == p) {
            rec.check(format!("p={p} expected verdict"), cert.verdict == exp.verdict, || {
                format!("expected {:?} ({:?}), decided {:?}", exp.verdict, exp.source, cert.verdict)
            });
        }
        let p_rank = r.p_rank(p);
        if p == 2 && p_rank == 2 && r.rank == 2 {
            match two_effective_character(g) {
                Ok(c) => rec.check(format!("p=2 construction ({:?})", c.route.unwrap()), c.verify(g)?, || {
                    "constructed character is not 2-effective".into()
                }),
                Err(e) => rec.error("p=2 construction", e),
            }
            rec.check("p=2 existence", cert.verdict == Verdict::Exists, || format!("decided {:?}", cert.verdict));
        }
        if p != 2 && p_rank == 2 {
            check_odd_prime(g, p, r.rank, cert.verdict, rec)?;
        }
    }

    if g.order() <= CHARTAB_CHECK_CAP {
        let table = character_table(&ClassData::new(g)?)?;
        rec.check("character table orthogonality", table.orthogonality_holds()?, || {
            "orthogonality relations fail".into()
        });
    }
    if let Some(&p) = prime_divisors(g.order()).first().filter(|_| prime_divisors(g.order()).len() == 1) {
        check_p_group(g, p, rec)?;
    }
    if r.p_rank(2) == 2 {
        let s = sylow_subgroup(g, 2)?;
        let z = omega1(&center(&s)?, 2)?;
        if !is_strongly_closed(g, &z, &s)? {
            let kind = classify_two_group(&s)?.kind;
            rec.check(
                "2-shape when the centre is not strongly closed",
                matches!(kind, TwoGroupKind::Dihedral | TwoGroupKind::Semidihedral | TwoGroupKind::Wreathed),
                || format!("Sylow 2-subgroup has shape {kind:?}"),
            );
        }
    }
    Ok(())
}

fn check_odd_prime(g: &PermutationGroup, p: u64, rank: usize, verdict: Verdict, rec: &mut Recorder) -> Result<()> {
    let involvement = match p_prime_involves_qdp(g, p) {
        Ok(w) => Some(w),
        Err(e) => {
            rec.error(format!("p={p} involvement"), e);
            None
        }
    };
    if let Some(w) = &involvement {
        if let Some(w) = w {
            rec.check(format!("p={p} involvement witness"), w.validate(g)?, || "witness does not re-validate".into());
        }
        if rank == 2 {
            rec.check(format!("p={p} existence iff no Qd involvement"), (verdict == Verdict::Exists) != w.is_some(), || {
                format!("decided {verdict:?}, involvement {}", w.is_some())
            });
        }
    }
    let s = sylow_subgroup(g, p)?;
    let z = omega1(&center(&s)?, p)?;
    if !is_strongly_closed(g, &z, &s)? {
        if let Some(w) = &involvement {
            rec.check(format!("p={p} fusion failure implies involvement"), w.is_some(), || {
                "centre not strongly closed but no involvement found".into()
            });
        }
        match qdp_witness_from_fusion(g, p) {
            Ok(FusionOutcome::Witness(_)) => rec.push(format!("p={p} fusion witness"), Outcome::Pass),
            Ok(FusionOutcome::NoProperRadical) => {
                rec.push(format!("p={p} fusion witness"), Outcome::Fail("no proper principal radical".into()))
            }
            Ok(FusionOutcome::Failed(reasons)) => {
                rec.push(format!("p={p} fusion witness"), Outcome::Fail(reasons.join("; ")))
            }
            Err(e) => rec.error(format!("p={p} fusion witness"), e),
        }
    } else if find_central_strongly_closed(g, p)?.is_none() {
        rec.push(format!("p={p} strongly closed search"), Outcome::Fail("centre is strongly closed but search found nothing".into()));
    }
    Ok(())
}

/// For a `p`-group: `Ω1(Z(P))` lies in every maximal elementary abelian
/// subgroup, and when `rk(P) = rk(Z(P))` it is the only one and equals `Ω1(P)`.
fn check_p_group(g: &PermutationGroup, p: u64, rec: &mut Recorder) -> Result<()> {
    debug_assert!(is_p_group(g, p));
    let z = omega1(&center(g)?, p)?;
    let layers = elementary_abelian_layers(g, p)?;
    let maximal: Vec<&PermutationGroup> = layers
        .iter()
        .enumerate()
        .flat_map(|(r, layer)| {
            let next = layers.get(r + 1);
            layer.iter().filter(move |e| next.is_none_or(|n| !n.iter().any(|f| e.is_subgroup_of(f))))
        })
        .collect();
    rec.check("centre in every maximal elementary abelian", maximal.iter().all(|e| z.is_subgroup_of(e)), || {
        "Ω1(Z(P)) missing from a maximal elementary abelian subgroup".into()
    });
    let rank = layers.len() - 1;
    let z_rank = crate::arith::log_p(z.order(), p).unwrap() as usize;
    if rank == z_rank {
        let omega = omega1(g, p)?;
        rec.check(
            "unique maximal elementary abelian",
            maximal.len() == 1 && maximal[0].same_group(&z) && omega.same_group(&z),
            || format!("{} maximal elementary abelian subgroups", maximal.len()),
        );
    }
    Ok(())
}
