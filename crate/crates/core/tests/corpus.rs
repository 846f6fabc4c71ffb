use peffect::corpus::Corpus;
use peffect::verify::{run_verify_all, Outcome, VerifyFlags};

const NEGATIVE_CONTROL: &str = r#"
[[entry]]
name = "Qd(3)"
family = "qd(3)"
order = 216
expect = [{ p = 3, verdict = "exists", source = "trivial" }]
"#;

#[test]
fn default_corpus_has_the_required_entries() {
    let corpus = Corpus::default_corpus();
    let names: Vec<&str> = corpus.entries.iter().map(|e| e.name.as_str()).collect();
    for required in [
        "S4", "A6", "D8", "D16", "SD16", "wreathed(2)", "extraspecial(3)", "Z3^2:Z4", "Qd(3)", "Qd(3)xZ2",
        "Syl2(S4)", "Syl3(S4)", "Syl2(A6)", "Syl3(A6)", "Syl3(Qd(3))", "Syl2(Qd(3))", "Syl2(Qd(3)xZ2)", "Syl3(Z3^2:Z4)",
    ] {
        assert!(names.contains(&required), "{required}");
    }
    for e in &corpus.entries {
        assert!(!e.expect.is_empty(), "{}", e.name);
        assert_eq!(corpus.group(e).unwrap().order(), e.order.unwrap(), "{}", e.name);
    }
}

#[test]
fn default_corpus_passes_deterministically() {
    let corpus = Corpus::default_corpus();
    let a = run_verify_all(&corpus, VerifyFlags::default());
    assert_eq!(a.failed, 0, "{a}");
    assert_eq!(a.exit_code(false), 0);
    assert_eq!(a.exit_code(true), 3);
    for c in a.entries.iter().flat_map(|e| &e.checks) {
        if let Outcome::Skip(why) = &c.outcome {
            assert!(!why.is_empty());
        }
    }
    let b = run_verify_all(&corpus, VerifyFlags::default());
    assert_eq!(a, b);
}

#[test]
fn long_sweep_covers_psl33() {
    let report = run_verify_all(&Corpus::default_corpus(), VerifyFlags { long: true });
    assert_eq!((report.failed, report.skipped), (0, 0), "{report}");
    assert_eq!(report.exit_code(true), 0);
}

#[test]
fn negative_control_is_a_falsification() {
    let corpus = Corpus::parse(NEGATIVE_CONTROL, Vec::new()).unwrap();
    let report = run_verify_all(&corpus, VerifyFlags::default());
    assert!(report.failed > 0);
    assert_eq!(report.exit_code(false), 1);
}

#[test]
fn expectations_require_a_source() {
    let text = NEGATIVE_CONTROL.replace(", source = \"trivial\"", "");
    assert!(Corpus::parse(&text, Vec::new()).is_err());
    let both = NEGATIVE_CONTROL.replace("family = \"qd(3)\"", "family = \"qd(3)\"\nfile = \"x.group\"");
    assert!(Corpus::parse(&both, Vec::new()).is_err());
}
