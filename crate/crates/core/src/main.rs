use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rldual::algebra::{
    boolean_skeleton, classify, enumerate_mtl_chains, parse_algebra, print_algebra,
    radical_algebra, validate, AlgebraSpec,
};
use rldual::dual_quadruple::{extract_dual_quadruple, rotate, DualQuadruple};
use rldual::duality::spectrum;
use rldual::filter_pairs::{alpha, build_bowtie};
use rldual::filters::Spectrum;
use rldual::quadruple::{compose, extract_quadruple, parse_quadruple, print_quadruple};
use rldual::verify::{self, SuiteRun, SUITES};
use rldual::{fixtures, Algebra};

#[derive(Parser)]
#[command(
    name = "rldual",
    version,
    about = "Finite residuated-lattice duality toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebra file or built-in fixture name (g3, nm4, ...). Repeatable.
    #[arg(long = "input", global = true, value_name = "PATH")]
    inputs: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Verification suite to run.
    #[arg(long, global = true, value_name = "NAME")]
    suite: Option<String>,
    /// Run every suite, over the fixtures and all MTL chains up to --max-size.
    #[arg(long, global = true)]
    all: bool,
    #[arg(long, global = true, value_name = "N", default_value_t = 5)]
    max_size: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra axioms and report violations.
    Validate,
    /// Report which identities and classes an algebra satisfies.
    Classify,
    /// The Boolean skeleton B(A).
    Skeleton,
    /// The radical R(A) as a GMTL-algebra.
    Radical,
    /// Prime filters with the partial product.
    Spectrum,
    /// The filter-pair space F⋈(A) and the map α.
    Bowtie,
    /// The quadruple (B(A), R(A), ∨, ¬¬).
    QuadExtract,
    /// Rebuild an algebra from a quadruple file.
    QuadCompose,
    /// The dual quadruple (S(B(A)), S(R(A)), μ, Δ) as JSON.
    DualquadExtract,
    /// Rotation of a dual quadruple (JSON file) or of an algebra's extraction.
    Rotate,
    /// Run verification suites.
    Verify,
    /// Count the MTL-chains with n elements.
    Enumerate { n: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A property failed: exit 1, with the output that shows it.
    Falsified(String),
}

type Outcome = Result<String, Failure>;

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load(name: &str) -> Result<Algebra, Failure> {
    if let Some(a) = fixtures::by_name(name) {
        return Ok(a);
    }
    let spec = parse_algebra(&read(name)?).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
    Algebra::new(spec).map_err(|e| Failure::Input(format!("{name}: {e}")))
}

fn load_all(cli: &Cli) -> Result<Vec<Algebra>, Failure> {
    if cli.inputs.is_empty() {
        return Err(Failure::Input("no --input given".into()));
    }
    cli.inputs.iter().map(|p| load(p)).collect()
}

fn spec_json(s: &AlgebraSpec) -> Value {
    json!({
        "name": s.name,
        "mode": s.mode().keyword(),
        "size": s.size(),
        "leq": s.leq,
        "mul": s.mul,
        "one": s.one,
        "zero": s.zero,
    })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn no_dot(cli: &Cli, what: &str) -> Result<(), Failure> {
    if cli.format == Format::Dot {
        return Err(Failure::Input(format!("{what} has no DOT rendering")));
    }
    Ok(())
}

fn per_algebra(cli: &Cli, f: impl Fn(&Algebra) -> Outcome) -> Outcome {
    let mut out = String::new();
    let mut failed = false;
    for a in load_all(cli)? {
        match f(&a) {
            Ok(s) => out += &s,
            Err(Failure::Falsified(s)) => {
                failed = true;
                out += &s;
            }
            Err(e) => return Err(e),
        }
    }
    if failed {
        Err(Failure::Falsified(out))
    } else {
        Ok(out)
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate => {
            no_dot(cli, "validate")?;
            let mut out = String::new();
            let mut failed = false;
            for p in &cli.inputs {
                let spec = match fixtures::by_name(p) {
                    Some(a) => a.spec(),
                    None => {
                        parse_algebra(&read(p)?).map_err(|e| Failure::Input(format!("{p}: {e}")))?
                    }
                };
                let report = validate(&spec).map_err(input)?;
                failed |= !report.passed();
                if cli.format == Format::Json {
                    let v: Vec<String> =
                        report.violations.iter().map(ToString::to_string).collect();
                    out += &pretty(
                        &json!({"name": spec.name, "valid": report.passed(), "violations": v}),
                    );
                } else if report.passed() {
                    writeln!(out, "{}: valid", spec.name).unwrap();
                } else {
                    writeln!(out, "{}: invalid", spec.name).unwrap();
                    for v in &report.violations {
                        writeln!(out, "  {v}").unwrap();
                    }
                }
            }
            if cli.inputs.is_empty() {
                return Err(Failure::Input("no --input given".into()));
            }
            if failed {
                Err(Failure::Falsified(out))
            } else {
                Ok(out)
            }
        }
        Command::Classify => {
            no_dot(cli, "classify")?;
            per_algebra(cli, |a| {
                let r = classify(a);
                Ok(if cli.format == Format::Json {
                    let rows: serde_json::Map<String, Value> = r
                        .rows()
                        .into_iter()
                        .map(|(k, f)| {
                            let v = f.map_or(
                                Value::Null,
                                |f| json!({"holds": f.holds, "witness": f.witness}),
                            );
                            (k.to_string(), v)
                        })
                        .collect();
                    pretty(&json!({"name": a.name(), "classes": rows}))
                } else {
                    let mut s = format!("{}\n", a.name());
                    for (k, f) in r.rows() {
                        let v = f.map_or("n/a".to_string(), ToString::to_string);
                        writeln!(s, "  {k}: {v}").unwrap();
                    }
                    s
                })
            })
        }
        Command::Skeleton | Command::Radical => {
            no_dot(cli, "a subalgebra")?;
            let skeleton = matches!(cli.command, Command::Skeleton);
            per_algebra(cli, |a| {
                let sub = if skeleton {
                    boolean_skeleton(a)
                } else {
                    radical_algebra(a)
                }
                .map_err(input)?;
                let spec = sub.algebra.spec();
                Ok(if cli.format == Format::Json {
                    pretty(&json!({"algebra": spec_json(&spec), "embedding": sub.embedding}))
                } else {
                    let mut s = print_algebra(&spec);
                    let e: Vec<String> = sub.embedding.iter().map(ToString::to_string).collect();
                    writeln!(s, "# embedding: {}", e.join(" ")).unwrap();
                    s
                })
            })
        }
        Command::Spectrum => per_algebra(cli, |a| {
            let sp = Spectrum::new(a).map_err(input)?;
            Ok(match cli.format {
                Format::Dot => spectrum(a).map_err(input)?.to_dot(),
                Format::Json => pretty(&sp.to_json().map_err(input)?),
                Format::Text => {
                    let x = spectrum(a).map_err(input)?;
                    let mut s = format!("S({}): {} points\n", a.name(), x.len());
                    for p in x.points() {
                        let star = x
                            .star_point(p)
                            .map(|q| x.label(q).to_string())
                            .unwrap_or_else(|_| "-".into());
                        writeln!(s, "  {}  star {}", x.label(p), star).unwrap();
                    }
                    s
                }
            })
        }),
        Command::Bowtie => per_algebra(cli, |a| {
            let x = build_bowtie(a).map_err(input)?;
            Ok(match cli.format {
                Format::Dot => x.to_dot().map_err(|e| Failure::Falsified(e.to_string()))?,
                Format::Json => {
                    pretty(&x.to_json().map_err(|e| Failure::Falsified(e.to_string()))?)
                }
                Format::Text => {
                    let map = alpha(&x).map_err(|e| Failure::Falsified(e.to_string()))?;
                    let sp = &x.parts().spectrum;
                    let mut s = format!("F⋈({}): {} points\n", a.name(), x.len());
                    for f in sp.ids() {
                        writeln!(s, "  α({}) = {}", sp.filter(f), x.label(map[f])).unwrap();
                    }
                    s
                }
            })
        }),
        Command::QuadExtract => {
            no_dot(cli, "a quadruple")?;
            per_algebra(cli, |a| {
                let q = extract_quadruple(a).map_err(input)?;
                Ok(if cli.format == Format::Json {
                    pretty(&json!({
                        "boolean": spec_json(&q.boolean.spec()),
                        "radical": spec_json(&q.radical.spec()),
                        "ext_join": q.ext_join,
                        "delta": q.delta,
                    }))
                } else {
                    print_quadruple(&q)
                })
            })
        }
        Command::QuadCompose => {
            no_dot(cli, "an algebra")?;
            if cli.inputs.is_empty() {
                return Err(Failure::Input("no --input given".into()));
            }
            let mut out = String::new();
            for p in &cli.inputs {
                let q =
                    parse_quadruple(&read(p)?).map_err(|e| Failure::Input(format!("{p}: {e}")))?;
                let c = compose(&q).map_err(|e| Failure::Falsified(e.to_string()))?;
                let spec = c.algebra.spec();
                out += &if cli.format == Format::Json {
                    pretty(&spec_json(&spec))
                } else {
                    print_algebra(&spec)
                };
            }
            Ok(out)
        }
        Command::DualquadExtract => {
            no_dot(cli, "a dual quadruple")?;
            per_algebra(cli, |a| {
                Ok(extract_dual_quadruple(a).map_err(input)?.to_json() + "\n")
            })
        }
        Command::Rotate => {
            if cli.inputs.is_empty() {
                return Err(Failure::Input("no --input given".into()));
            }
            let mut out = String::new();
            for p in &cli.inputs {
                let dq = match fixtures::by_name(p) {
                    Some(a) => extract_dual_quadruple(&a).map_err(input)?,
                    None => {
                        let text = read(p)?;
                        if text.trim_start().starts_with('{') {
                            DualQuadruple::from_json(&text)
                                .map_err(|e| Failure::Input(format!("{p}: {e}")))?
                        } else {
                            extract_dual_quadruple(&load(p)?).map_err(input)?
                        }
                    }
                };
                let rot = rotate(&dq).map_err(input)?;
                out += &match cli.format {
                    Format::Dot => rot.to_dot(),
                    Format::Json => pretty(&rot.to_space().record()),
                    Format::Text => {
                        let mut s = format!("S⊗X({}): {} points\n", dq.name, rot.len());
                        for i in 0..rot.len() {
                            writeln!(s, "  {}", rot.label(i)).unwrap();
                        }
                        s
                    }
                };
            }
            Ok(out)
        }
        Command::Verify => verify_command(cli),
        Command::Enumerate { n } => {
            no_dot(cli, "enumerate")?;
            let chains = enumerate_mtl_chains(*n, cli.max_size).map_err(input)?;
            let noun = if chains.len() == 1 { "chain" } else { "chains" };
            Ok(if cli.format == Format::Json {
                let algs: Vec<Value> = chains.iter().map(|a| spec_json(&a.spec())).collect();
                pretty(&json!({"n": n, "count": chains.len(), "algebras": algs}))
            } else {
                format!("{} {noun}\n", chains.len())
            })
        }
    }
}

fn verify_command(cli: &Cli) -> Outcome {
    no_dot(cli, "verify")?;
    let suites: Vec<&str> = match (&cli.suite, cli.all) {
        (Some(s), false) => vec![s.as_str()],
        (None, true) => SUITES.to_vec(),
        (Some(_), true) => return Err(Failure::Input("give either --suite or --all".into())),
        (None, false) => return Err(Failure::Input("verify needs --suite NAME or --all".into())),
    };
    let inputs: Vec<Algebra> = cli
        .inputs
        .iter()
        .map(|p| load(p))
        .collect::<Result<_, _>>()?;
    let mut corpus = if inputs.is_empty() || cli.all {
        fixtures::all()
    } else {
        Vec::new()
    };
    corpus.extend(inputs.iter().cloned());
    if cli.all {
        for n in 1..=cli.max_size {
            corpus.extend(enumerate_mtl_chains(n, cli.max_size).map_err(input)?);
        }
    }
    let mut runs: Vec<SuiteRun> = Vec::new();
    for suite in suites {
        for a in &corpus {
            match verify::run_suite(suite, a) {
                Ok(r) => runs.push(r),
                Err(verify::VerifyError::NotApplicable { .. })
                    if cli.all || !inputs.iter().any(|b| b == a) => {}
                Err(e) => return Err(input(e)),
            }
        }
    }
    let failed = runs.iter().filter(|r| !r.passed()).count();
    let out = if cli.format == Format::Json {
        let v: Vec<Value> = runs
            .iter()
            .map(|r| json!({"suite": r.suite, "algebra": r.algebra, "passed": r.passed(), "checks": r.checks, "summary": r.summary}))
            .collect();
        pretty(&json!({"runs": v, "failed": failed}))
    } else {
        let mut s: String = runs.iter().map(ToString::to_string).collect();
        writeln!(s, "{} suite runs, {} failed", runs.len(), failed).unwrap();
        s
    };
    if failed > 0 {
        Err(Failure::Falsified(out))
    } else {
        Ok(out)
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(t) => (t, 0),
        Err(Failure::Falsified(t)) => (t, 1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
