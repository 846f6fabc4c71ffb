mod common;

use peffect::character::{character_table, is_p_effective, p_effective_report, ClassData, ClassFunction, Cyclotomic, Rational};
use peffect::families::{build_family, wreathed};
use peffect::peff::{
    dihedral_sd_character, dihedral_sd_closed_form, find_central_strongly_closed, is_strongly_closed,
    p_effective_decide, scs_character, two_effective_character, wreathed_character, Route, Verdict,
};
use peffect::perm::{center, PermutationGroup};
use peffect::subgroup::{classify_two_group, omega1, sylow_subgroup};

fn g(spec: &str) -> PermutationGroup {
    build_family(spec).unwrap()
}

#[test]
fn strongly_closed_examples() {
    let a6 = g("alternating(6)");
    let s = sylow_subgroup(&a6, 3).unwrap();
    let h = find_central_strongly_closed(&a6, 3).unwrap().unwrap();
    assert!(h.same_group(&omega1(&s, 3).unwrap()));
    let chi = scs_character(&a6, 3, &h).unwrap();
    assert!(is_p_effective(&chi, &a6, 3).unwrap());

    let qd = g("qd(3)");
    let s = sylow_subgroup(&qd, 3).unwrap();
    let z = omega1(&center(&s).unwrap(), 3).unwrap();
    assert!(!is_strongly_closed(&qd, &z, &s).unwrap());
    assert!(find_central_strongly_closed(&qd, 3).unwrap().is_none());
}

#[test]
fn center_is_strongly_closed_in_a_p_group() {
    let e = g("extraspecial(3)");
    let h = find_central_strongly_closed(&e, 3).unwrap().unwrap();
    assert_eq!(h.order(), 3);
}

#[test]
fn dihedral_and_semidihedral_closed_forms() {
    for spec in ["dihedral(8)", "dihedral(16)", "dihedral(32)", "semidihedral(16)", "semidihedral(32)"] {
        let p = g(spec);
        let chi = dihedral_sd_character(&p).unwrap();
        let semidihedral = spec.starts_with("semi");
        assert_eq!(chi, dihedral_sd_closed_form(chi.data(), semidihedral), "{spec}");
        assert!(is_p_effective(&chi, &p, 2).unwrap(), "{spec}");
    }
}

#[test]
fn uniform_values_are_not_a_character_of_semidihedral_groups() {
    for spec in ["semidihedral(16)", "semidihedral(32)"] {
        let p = g(spec);
        let data = ClassData::new(&p).unwrap();
        let uniform = dihedral_sd_closed_form(&data, false);
        let table = character_table(&data).unwrap();
        assert!(table.character_multiplicities(&uniform).is_err(), "{spec}");
    }
}

#[test]
fn wreathed_trace_is_effective() {
    for n in [2, 3] {
        let p = wreathed(n).unwrap();
        let shape = classify_two_group(&p).unwrap();
        let chi = wreathed_character(
            &p,
            shape.x.as_ref().unwrap(),
            shape.y.as_ref().unwrap(),
            shape.z.as_ref().unwrap(),
        )
        .unwrap();
        assert_eq!(chi.degree(), &Cyclotomic::from_integer(3));
        let report = p_effective_report(&chi, &p, 2).unwrap();
        assert!(report.holds, "n = {n}: {report:?}");
    }
}

#[test]
fn two_effective_routes() {
    let cases = [
        ("symmetric(4)", Route::DihedralSemidihedral),
        ("gl2(3)", Route::StronglyClosed),
        ("psl3(3)", Route::DihedralSemidihedral),
        ("dihedral(8)", Route::StronglyClosed),
        ("psl2(7)", Route::DihedralSemidihedral),
        ("alternating(6)", Route::DihedralSemidihedral),
    ];
    for (spec, route) in cases {
        let grp = g(spec);
        let cert = two_effective_character(&grp).unwrap();
        assert_eq!(cert.route, Some(route), "{spec}");
        assert!(cert.verify(&grp).unwrap());
    }
}

#[test]
fn decide_verdicts() {
    let cases = [
        ("symmetric(4)", 2, Verdict::Exists),
        ("alternating(6)", 3, Verdict::Exists),
        ("alternating(6)", 2, Verdict::Exists),
        ("qd(3)", 3, Verdict::NotExists),
        ("qd(3)", 2, Verdict::Vacuous),
        ("extraspecial(3)", 3, Verdict::Exists),
        ("cyclic(12)", 3, Verdict::Exists),
        ("elementary_abelian(3, 2)", 3, Verdict::Exists),
    ];
    for (spec, p, verdict) in cases {
        let grp = g(spec);
        let cert = p_effective_decide(&grp, p).unwrap();
        assert_eq!(cert.verdict, verdict, "{spec} p={p}");
        assert!(cert.verify(&grp).unwrap(), "{spec} p={p}");
        if verdict == Verdict::Exists {
            assert!(cert.degree_minimal);
        }
    }
}

#[test]
fn extraspecial_witness_has_degree_three() {
    let grp = g("extraspecial(3)");
    let cert = p_effective_decide(&grp, 3).unwrap();
    assert_eq!(cert.witness.unwrap().degree(), &Cyclotomic::from_integer(3));
}

#[test]
fn negative_trivial_is_rejected() {
    let grp = g("dihedral(8)");
    let data = ClassData::new(&grp).unwrap();
    let chi = ClassFunction::trivial(&data).scale(&Rational::from_integer((-1).into()));
    assert!(is_p_effective(&chi, &grp, 2).is_err());
}

fn corpus() -> Vec<(String, PermutationGroup)> {
    let c = peffect::corpus::Corpus::default_corpus();
    c.entries.iter().filter(|e| !e.long).map(|e| (e.name.clone(), c.group(e).unwrap())).collect()
}

#[test]
fn constructions_are_effective_and_agree_with_the_decision() {
    for (name, grp) in corpus() {
        let r = peffect::subgroup::ranks(&grp).unwrap();
        for p in peffect::arith::prime_divisors(grp.order()) {
            let decided = p_effective_decide(&grp, p).unwrap();
            if let Some(h) = find_central_strongly_closed(&grp, p).unwrap() {
                let chi = scs_character(&grp, p, &h).unwrap();
                assert!(is_p_effective(&chi, &grp, p).unwrap(), "{name} p={p}");
                assert_ne!(decided.verdict, Verdict::NotExists, "{name} p={p}");
            }
            if p == 2 && r.rank == 2 && r.p_rank(2) == 2 {
                let cert = two_effective_character(&grp).unwrap();
                assert!(cert.verify(&grp).unwrap(), "{name}");
                assert_eq!(decided.verdict, Verdict::Exists, "{name}");
            }
        }
    }
}

#[test]
fn certifier_agrees_with_bounded_brute_force() {
    let mut negatives = 0;
    for (name, grp) in corpus() {
        let r = peffect::subgroup::ranks(&grp).unwrap();
        if r.rank != 2 {
            continue;
        }
        for (&p, &k) in &r.per_prime {
            if k != 2 {
                continue;
            }
            let cert = p_effective_decide(&grp, p).unwrap();
            let irr = character_table(&ClassData::new(&cert.sylow).unwrap()).unwrap().len();
            if irr > 14 {
                continue;
            }
            let brute = common::brute_effective_search(&grp, &cert.sylow, p, 3);
            match cert.verdict {
                Verdict::NotExists => {
                    assert!(brute.is_none(), "{name} p={p}: {brute:?}");
                    negatives += 1;
                }
                Verdict::Exists => {
                    if cert.multiplicities.as_ref().unwrap().iter().sum::<u64>() <= 3 {
                        assert!(brute.is_some(), "{name} p={p}");
                    }
                }
                Verdict::Vacuous => unreachable!(),
            }
        }
    }
    assert!(negatives >= 3);
}
