use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use peffect::character::{character_table, ClassData};
use peffect::corpus::Corpus;
use peffect::families::build_family;
use peffect::io::{parse_group_file, serialize_group_file, GroupFile};
use peffect::peff::{find_central_strongly_closed, p_effective_construct, p_effective_decide};
use peffect::perm::PermutationGroup;
use peffect::qdp::{build_qdp, p_prime_involves_qdp, qdp_witness_from_fusion, FusionOutcome};
use peffect::subgroup::{classify_two_group, ranks, sylow_subgroup, LATTICE_CAP};
use peffect::verify::{run_verify_all, VerifyFlags};
use peffect::Error;

/// Groups above this order need `--long` outside of `order`, `ranks` and `sylow`.
const DEFAULT_ORDER_CAP: u64 = LATTICE_CAP;

#[derive(Parser)]
#[command(name = "peffect", version, about = "p-effective characters and Qd(p) involvement for permutation groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Allow computations above the default order cap.
    #[arg(long, global = true)]
    long: bool,
    /// Exit with status 3 when any check was skipped.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Group file in cycle notation.
    file: Option<PathBuf>,
    /// Standard family, e.g. `dihedral(16)` or `qd(3)`.
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
}

#[derive(Args)]
struct PrimeGroupArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(short, long)]
    p: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Group order.
    Order(GroupArgs),
    /// p-rank for every prime dividing the order.
    Ranks(GroupArgs),
    /// A Sylow p-subgroup.
    Sylow(PrimeGroupArgs),
    /// Shape of the Sylow 2-subgroup.
    Classify2(GroupArgs),
    #[command(subcommand)]
    Fusion(FusionCommand),
    /// Character table.
    Chartab(GroupArgs),
    #[command(subcommand)]
    Peff(PeffCommand),
    #[command(subcommand)]
    Qdp(QdpCommand),
    /// Run the corpus sweep.
    Verify {
        /// Corpus file; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FusionCommand {
    /// Largest strongly closed subgroup of Ω1(Z(G_p)).
    StronglyClosed(PrimeGroupArgs),
}

#[derive(Subcommand)]
enum PeffCommand {
    /// Explicit p-effective character.
    Construct(PrimeGroupArgs),
    /// Decide existence with a certificate.
    Decide(PrimeGroupArgs),
}

#[derive(Subcommand)]
enum QdpCommand {
    /// Qd(p) as a group file.
    Build {
        #[arg(short, long)]
        p: u64,
    },
    /// Search for a p'-section isomorphic to Qd(p).
    Involved(PrimeGroupArgs),
}

/// Failure modes mapped to exit statuses.
enum Failure {
    Usage(String),
    Falsified(String),
    Skipped(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::BadFamily(_) | Error::NotPrime(_) | Error::Precondition(_) => {
                Failure::Usage(e.to_string())
            }
            Error::CapExceeded { .. } => Failure::Skipped(e.to_string()),
            _ => Failure::Falsified(e.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn load(args: &GroupArgs) -> Result<PermutationGroup, Failure> {
    match (&args.file, &args.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(parse_group_file(&text)?.group()?)
        }
        (None, Some(spec)) => Ok(build_family(spec)?),
        _ => Err(Failure::Usage("give a group file or --family".into())),
    }
}

fn load_capped(cli: &Cli, args: &GroupArgs) -> Result<PermutationGroup, Failure> {
    let g = load(args)?;
    if !cli.long && g.order() > DEFAULT_ORDER_CAP {
        return Err(Failure::Skipped(format!(
            "order {} exceeds {DEFAULT_ORDER_CAP}; rerun with --long",
            g.order()
        )));
    }
    Ok(g)
}

fn gens(g: &PermutationGroup) -> Vec<String> {
    g.generators().iter().map(|x| x.to_string()).collect()
}

fn emit(cli: &Cli, value: serde_json::Value, text: impl FnOnce() -> String) {
    let out = if cli.json { serde_json::to_string_pretty(&value).expect("json serializes") } else { text() };
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{out}");
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Order(a) => {
            let g = load(a)?;
            emit(cli, json!({"schema": 1, "order": g.order()}), || g.order().to_string());
        }
        Command::Ranks(a) => {
            let g = load(a)?;
            let r = ranks(&g)?;
            emit(cli, json!({"schema": 1, "per_prime": r.per_prime, "rank": r.rank}), || {
                let mut s: Vec<String> = r.per_prime.iter().map(|(p, k)| format!("rk_{p} = {k}")).collect();
                s.push(format!("rk = {}", r.rank));
                s.join("\n")
            });
        }
        Command::Sylow(a) => {
            let g = load(&a.group)?;
            let s = sylow_subgroup(&g, a.p)?;
            let file = GroupFile::from_group(Some(format!("Sylow {}-subgroup", a.p)), &s);
            emit(cli, json!({"schema": 1, "p": a.p, "order": s.order(), "generators": gens(&s)}), || {
                serialize_group_file(&file)
            });
        }
        Command::Classify2(a) => {
            let g = load_capped(cli, a)?;
            let s = sylow_subgroup(&g, 2)?;
            let shape = classify_two_group(&s)?;
            let w = |x: &Option<peffect::perm::Permutation>| x.as_ref().map(|x| x.to_string());
            emit(
                cli,
                json!({"schema": 1, "order": s.order(), "kind": shape.kind, "n": shape.n,
                       "x": w(&shape.x), "y": w(&shape.y), "z": w(&shape.z)}),
                || {
                    let mut s = format!("{:?} n = {}", shape.kind, shape.n);
                    for (name, x) in [("x", &shape.x), ("y", &shape.y), ("z", &shape.z)] {
                        if let Some(x) = x {
                            s.push_str(&format!("\n{name} = {x}"));
                        }
                    }
                    s
                },
            );
        }
        Command::Fusion(FusionCommand::StronglyClosed(a)) => {
            let g = load_capped(cli, &a.group)?;
            let h = find_central_strongly_closed(&g, a.p)?;
            emit(
                cli,
                json!({"schema": 1, "p": a.p, "order": h.as_ref().map(|h| h.order()),
                       "generators": h.as_ref().map(gens)}),
                || match &h {
                    Some(h) => format!("order {}: {}", h.order(), gens(h).join(" ")),
                    None => "none".into(),
                },
            );
        }
        Command::Chartab(a) => {
            let g = load_capped(cli, a)?;
            let data = ClassData::new(&g)?;
            let t = character_table(&data)?;
            let rows: Vec<Vec<String>> =
                t.irreducibles().iter().map(|chi| chi.values().iter().map(|v| v.to_string()).collect()).collect();
            let reps: Vec<String> = data.classes().reps().iter().map(|r| r.to_string()).collect();
            emit(
                cli,
                json!({"schema": 1, "class_reps": reps, "class_sizes": data.classes().sizes(), "rows": rows}),
                || rows.iter().map(|r| r.join("\t")).collect::<Vec<_>>().join("\n"),
            );
        }
        Command::Peff(PeffCommand::Construct(a)) => {
            let g = load_capped(cli, &a.group)?;
            match p_effective_construct(&g, a.p)? {
                Some(cert) => emit(cli, serde_json::to_value(cert.to_repr()).expect("json serializes"), || {
                    let w = cert.witness.as_ref().expect("constructed certificates carry a witness");
                    let values: Vec<String> = w.values().iter().map(|v| v.to_string()).collect();
                    format!("route {:?}\ndegree {}\nvalues {}", cert.route.unwrap(), w.degree(), values.join(" "))
                }),
                None => {
                    return Err(Failure::Usage(format!(
                        "no strongly closed central subgroup for p = {}; use `peff decide`",
                        a.p
                    )))
                }
            }
        }
        Command::Peff(PeffCommand::Decide(a)) => {
            let g = load_capped(cli, &a.group)?;
            let cert = p_effective_decide(&g, a.p)?;
            if !cert.verify(&g)? {
                return Err(Failure::Falsified("certificate does not re-verify".into()));
            }
            emit(cli, serde_json::to_value(cert.to_repr()).expect("json serializes"), || {
                let mut s = format!("{:?}", cert.verdict);
                if let Some(w) = &cert.witness {
                    s.push_str(&format!("\nwitness degree {}", w.degree()));
                }
                if let Some(m) = &cert.multiplicities {
                    s.push_str(&format!("\nmultiplicities {m:?}"));
                }
                s.push_str(&format!("\nadmissible {:?}", cert.admissible));
                s
            });
        }
        Command::Qdp(QdpCommand::Build { p }) => {
            let q = build_qdp(*p)?;
            let file = GroupFile::from_group(Some(format!("Qd({p})")), &q);
            emit(cli, json!({"schema": 1, "p": p, "degree": q.degree(), "order": q.order(), "generators": gens(&q)}), || {
                serialize_group_file(&file)
            });
        }
        Command::Qdp(QdpCommand::Involved(a)) => {
            let g = load_capped(cli, &a.group)?;
            let found = p_prime_involves_qdp(&g, a.p)?;
            if let Some(w) = &found {
                if !w.validate(&g)? {
                    return Err(Failure::Falsified("involvement witness does not validate".into()));
                }
            }
            let fusion = if a.p != 2 && ranks(&g)?.p_rank(a.p) == 2 {
                Some(qdp_witness_from_fusion(&g, a.p))
            } else {
                None
            };
            let fusion_json = match &fusion {
                Some(Ok(FusionOutcome::Witness(w))) => json!(w.to_repr()),
                Some(Ok(other)) => json!(format!("{other:?}")),
                Some(Err(e)) => json!(e.to_string()),
                None => serde_json::Value::Null,
            };
            emit(
                cli,
                json!({"schema": 1, "p": a.p, "involved": found.is_some(),
                       "witness": found.as_ref().map(|w| w.to_repr()), "fusion": fusion_json}),
                || match &found {
                    Some(w) => format!("involved: |H| = {}, |K| = {}", w.h.order(), w.k.order()),
                    None => "not involved".into(),
                },
            );
        }
        Command::Verify { corpus } => {
            let corpus = match corpus {
                Some(path) => Corpus::load(path)?,
                None => Corpus::default_corpus(),
            };
            let report = run_verify_all(&corpus, VerifyFlags { long: cli.long });
            emit(cli, serde_json::to_value(&report).expect("json serializes"), || report.to_string());
            return Ok(report.exit_code(cli.strict));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Falsified(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Skipped(m)) => {
            eprintln!("skipped: {m}");
            if cli.strict {
                3
            } else {
                0
            }
        }
    };
    ExitCode::from(code as u8)
}
