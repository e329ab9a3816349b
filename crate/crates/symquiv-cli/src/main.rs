use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use symquiv::catalog::{evaluate_generator, list_generators, plus_character};
use symquiv::decomposition::{
    generic_decompose, orthogonal_generic, regular_decompose, symplectic_generic, SymmetricDecomposition,
};
use symquiv::io::{dim_from_labels, parse_dim, QuiverFile, RepFile, SCHEMA};
use symquiv::oracle::{invariance_test, invariant_dims, subalgebra_dims};
use symquiv::reflections::{coxeter_dim, reduce_to_canonical, tube_data, Direction, TubeData};
use symquiv::representations::{check_form, random_q, random_rep, Flavor};
use symquiv::{build_canonical, classify, defect, null_root, region_of, DimVector, Error, SymmetricQuiver, TameType};
use symquiv_exact::{q_to_string, Matrix, Q};

#[derive(Parser)]
#[command(name = "symquiv", version, about = "Symmetric quivers of tame type: forms, tubes, decompositions, semi-invariants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build, classify and validate symmetric quivers.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Euler form, defect, Coxeter transform and duality on dimension vectors.
    #[command(subcommand)]
    Dim(DimCmd),
    /// Non-homogeneous tubes of a canonical quiver.
    #[command(subcommand)]
    Tube(TubeCmd),
    /// Reflect an orientation to the canonical one.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Generic decompositions of regular dimension vectors.
    #[command(subcommand)]
    Decomp(DecompCmd),
    /// Semi-invariant generators: list, evaluate, weights.
    #[command(subcommand)]
    Gens(GensCmd),
    /// Independent checks: group invariance, Pfaffian identities, invariant counts.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Clone)]
struct Source {
    /// Canonical type, e.g. `A11:0,6`.
    #[arg(long = "type", conflicts_with = "quiver")]
    ty: Option<String>,
    /// Quiver file (JSON).
    #[arg(long)]
    quiver: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct DimArgs {
    /// Dimension vector: `2,2,0` in vertex order or `name=2,...`.
    #[arg(long, conflicts_with = "labels")]
    dim: Option<String>,
    /// Tube labels; the vector is `p·h + Σ labels_i e_i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    labels: Option<Vec<i64>>,
    #[arg(long, default_value_t = 0)]
    p: i64,
    #[arg(long, default_value_t = 0)]
    tube: usize,
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Print the canonical quiver of a type as a quiver file.
    Build {
        #[arg(long = "type")]
        ty: String,
    },
    /// Tame type, null root and orientation.
    Classify(Source),
    /// Check that a quiver file describes a symmetric quiver.
    Validate(Source),
}

#[derive(Subcommand)]
enum DimCmd {
    /// Euler form of two vectors.
    Euler {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        other: String,
    },
    /// Defect and region.
    Defect {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: String,
    },
    /// Coxeter transformation `C⁺` (or `C⁻`).
    Coxeter {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        minus: bool,
    },
    /// The involution on dimension vectors.
    Delta {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        dim: String,
    },
}

#[derive(Subcommand)]
enum TubeCmd {
    /// Nonhomogeneous tubes of a canonical quiver.
    Data(Source),
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Admissible sink sequence reaching the canonical orientation.
    Canonical(Source),
}

#[derive(Subcommand)]
enum DecompCmd {
    /// Tube polygons, labels and arcs of the regular part.
    Regular(DecompArgs),
    /// Generic decomposition in the plain representation space.
    Generic(DecompArgs),
    /// Generic decomposition in the symplectic representation space.
    Symplectic(DecompArgs),
    /// Generic decomposition in the orthogonal representation space.
    Orthogonal(DecompArgs),
}

#[derive(Args)]
struct DecompArgs {
    #[command(flatten)]
    src: Source,
    #[command(flatten)]
    dim: DimArgs,
    /// Flavor for `regular`.
    #[arg(long, default_value = "plain")]
    flavor: String,
}

#[derive(Args)]
struct GensArgs {
    #[command(flatten)]
    src: Source,
    #[command(flatten)]
    dim: DimArgs,
    #[arg(long, default_value = "orthogonal")]
    flavor: String,
}

#[derive(Subcommand)]
enum GensCmd {
    /// Generators of the semi-invariant ring.
    List(GensArgs),
    /// Evaluate every generator at a representation (random if no file).
    Eval {
        #[command(flatten)]
        args: GensArgs,
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Evaluate only this generator.
        #[arg(long)]
        label: Option<String>,
    },
    /// Weights of the generators.
    Weights(GensArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Random group elements leave every generator unchanged.
    Invariance {
        #[command(flatten)]
        args: GensArgs,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// `pf² = det` and `pf(BABᵀ) = det(B)·pf(A)` on random skew matrices.
    Pf {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Invariant dimensions against the span of generator products.
    Oracle {
        #[command(flatten)]
        args: GensArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
    },
}

/// Result of one subcommand: JSON payload, table text, and whether a
/// verification failed.
struct Output {
    value: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(value: Value, text: String) -> Output {
        Output { value, text, failed: false }
    }
}

type Res<T> = Result<T, Error>;

fn load(src: &Source) -> Res<(SymmetricQuiver, Option<DimVector>)> {
    if let Some(t) = &src.ty {
        return Ok((build_canonical(TameType::parse(t)?)?, None));
    }
    let path = src.quiver.as_ref().ok_or_else(|| Error::Malformed("give --type or --quiver".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let f = QuiverFile::parse(&text)?;
    let qs = f.to_quiver()?;
    let dim = match &f.dim {
        Some(m) => Some(qs.quiver().dim_from_map(&m.iter().map(|(k, v)| (k.clone(), *v)).collect())?),
        None => None,
    };
    Ok((qs, dim))
}

fn tubes(qs: &SymmetricQuiver) -> Res<TubeData> {
    tube_data(qs)
}

fn resolve_dim(qs: &SymmetricQuiver, td: Option<&TubeData>, file_dim: Option<DimVector>, args: &DimArgs) -> Res<DimVector> {
    if let Some(s) = &args.dim {
        return parse_dim(qs.quiver(), s);
    }
    if let Some(labels) = &args.labels {
        let td = td.ok_or_else(|| Error::Precondition("labels need tube data".into()))?;
        return dim_from_labels(td, args.tube, args.p, labels);
    }
    file_dim.ok_or_else(|| Error::Malformed("give --dim, --labels, or a dim in the quiver file".into()))
}

fn qs_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(q_to_string(x))).collect())
}

fn fmt_vec(v: &[i64]) -> String {
    format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn fmt_qvec(v: &[Q]) -> String {
    format!("({})", v.iter().map(q_to_string).collect::<Vec<_>>().join(","))
}

fn run(cli: &Cli) -> Res<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Quiver(QuiverCmd::Build { ty }) => {
            let qs = build_canonical(TameType::parse(ty)?)?;
            let f = QuiverFile::from_quiver(&qs);
            let value = serde_json::to_value(&f).expect("serializable");
            let text = serde_json::to_string_pretty(&f).expect("serializable");
            Ok(Output::ok(value, text))
        }
        Command::Quiver(QuiverCmd::Classify(src)) => {
            let (qs, _) = load(src)?;
            let ty = classify(&qs)?;
            let h = null_root(qs.quiver())?;
            let canonical = symquiv::types::is_canonical_orientation(&qs, ty);
            let value = json!({ "type": ty, "name": ty.to_string(), "null_root": h, "canonical": canonical });
            Ok(Output::ok(value, format!("type {ty}\nnull root {}\ncanonical orientation: {canonical}", fmt_vec(&h))))
        }
        Command::Quiver(QuiverCmd::Validate(src)) => {
            let (qs, _) = load(src)?;
            let q = qs.quiver();
            if !q.is_acyclic() {
                return Err(Error::Malformed("quiver has an oriented cycle".into()));
            }
            let ty = classify(&qs).ok();
            let value = json!({ "valid": true, "vertices": q.num_vertices(), "arrows": q.num_arrows(), "tame_type": ty.map(|t| t.to_string()) });
            let text = format!(
                "valid symmetric quiver: {} vertices, {} arrows, {}",
                q.num_vertices(),
                q.num_arrows(),
                ty.map_or("not of a supported tame type".to_string(), |t| format!("type {t}"))
            );
            Ok(Output::ok(value, text))
        }
        Command::Dim(cmd) => run_dim(cmd),
        Command::Tube(TubeCmd::Data(src)) => {
            let (qs, _) = load(src)?;
            let td = tubes(&qs)?;
            let mut text = format!("h = {}\n", fmt_vec(&td.null_root));
            for (t, tube) in td.tubes.iter().enumerate() {
                text.push_str(&format!("tube {t} (period {}, δ-partner {}):\n", tube.period(), tube.partner));
                for (i, e) in tube.elements.iter().enumerate() {
                    text.push_str(&format!(
                        "  e{} = {}  δ ↦ e{}  {:?}{}\n",
                        i + 1,
                        fmt_vec(e),
                        tube.sigma_i[i] + 1,
                        tube.parts[i],
                        tube.fixed_kind[i].map_or(String::new(), |k| format!(" {k:?}"))
                    ));
                }
            }
            Ok(Output::ok(serde_json::to_value(&td).expect("serializable"), text.trim_end().to_string()))
        }
        Command::Reduce(ReduceCmd::Canonical(src)) => {
            let (qs, _) = load(src)?;
            let (seq, canon) = reduce_to_canonical(&qs)?;
            let value = json!({ "sequence": seq.steps, "quiver": QuiverFile::from_quiver(&canon) });
            let text = if seq.is_empty() { "already canonical".into() } else { format!("sinks: {}", seq.steps.join(" → ")) };
            Ok(Output::ok(value, text))
        }
        Command::Decomp(cmd) => {
            let (args, which) = match cmd {
                DecompCmd::Regular(a) => (a, "regular"),
                DecompCmd::Generic(a) => (a, "generic"),
                DecompCmd::Symplectic(a) => (a, "symplectic"),
                DecompCmd::Orthogonal(a) => (a, "orthogonal"),
            };
            let (qs, fd) = load(&args.src)?;
            let td = tubes(&qs)?;
            let d = resolve_dim(&qs, Some(&td), fd, &args.dim)?;
            if which == "regular" {
                let reg = regular_decompose(&qs, &td, &d, Flavor::parse(&args.flavor)?)?;
                let mut text = format!("p = {}", reg.p);
                for poly in &reg.polygons {
                    text.push_str(&format!("\ntube {} labels {}", poly.tube, fmt_vec(&poly.labels)));
                }
                return Ok(Output::ok(serde_json::to_value(&reg).expect("serializable"), text));
            }
            let dec: SymmetricDecomposition = match which {
                "generic" => generic_decompose(&qs, &td, &d)?,
                "symplectic" => symplectic_generic(&qs, &td, &d)?,
                _ => orthogonal_generic(&qs, &td, &d)?,
            };
            let mut value = serde_json::to_value(&dec).expect("serializable");
            value["rendered"] = Value::String(dec.render());
            Ok(Output::ok(value, dec.render()))
        }
        Command::Gens(cmd) => run_gens(cmd, &mut rng),
        Command::Verify(cmd) => run_verify(cmd, &mut rng),
    }
}

fn run_dim(cmd: &DimCmd) -> Res<Output> {
    match cmd {
        DimCmd::Euler { src, dim, other } => {
            let (qs, _) = load(src)?;
            let (a, b) = (parse_dim(qs.quiver(), dim)?, parse_dim(qs.quiver(), other)?);
            let e = qs.quiver().euler(&a, &b);
            Ok(Output::ok(json!({ "euler": e }), format!("⟨{}, {}⟩ = {e}", fmt_vec(&a), fmt_vec(&b))))
        }
        DimCmd::Defect { src, dim } => {
            let (qs, _) = load(src)?;
            let a = parse_dim(qs.quiver(), dim)?;
            let df = defect(qs.quiver(), &a)?;
            let region = region_of(qs.quiver(), &a)?;
            Ok(Output::ok(json!({ "defect": df, "region": region }), format!("defect {df} ({region:?})")))
        }
        DimCmd::Coxeter { src, dim, minus } => {
            let (qs, _) = load(src)?;
            let a = parse_dim(qs.quiver(), dim)?;
            let dir = if *minus { Direction::Minus } else { Direction::Plus };
            let c = coxeter_dim(qs.quiver(), &a, dir)?;
            Ok(Output::ok(json!({ "result": c }), fmt_vec(&c)))
        }
        DimCmd::Delta { src, dim } => {
            let (qs, _) = load(src)?;
            let a = parse_dim(qs.quiver(), dim)?;
            let d = qs.delta(&a);
            Ok(Output::ok(json!({ "result": d }), fmt_vec(&d)))
        }
    }
}

fn gens_setup(args: &GensArgs) -> Res<(SymmetricQuiver, TubeData, DimVector, Flavor)> {
    let (qs, fd) = load(&args.src)?;
    let td = tubes(&qs)?;
    let d = resolve_dim(&qs, Some(&td), fd, &args.dim)?;
    Ok((qs, td, d, Flavor::parse(&args.flavor)?))
}

fn run_gens(cmd: &GensCmd, rng: &mut ChaCha8Rng) -> Res<Output> {
    match cmd {
        GensCmd::List(args) => {
            let (qs, td, d, flavor) = gens_setup(args)?;
            let list = list_generators(&qs, &td, &d, flavor)?;
            let mut text = String::new();
            if let Some(n) = &list.note {
                text.push_str(n);
                text.push('\n');
            }
            for g in &list.generators {
                text.push_str(&format!("{:<12} {:?}  dim {}\n    {}\n", g.label, g.kind, fmt_vec(&g.alpha), g.recipe.replace('\n', "\n    ")));
            }
            Ok(Output::ok(serde_json::to_value(&list).expect("serializable"), text.trim_end().to_string()))
        }
        GensCmd::Eval { args, rep, label } => {
            let (qs, td, d, flavor) = gens_setup(args)?;
            let w = match rep {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
                    let w = RepFile::parse(&text)?.to_rep(qs.quiver())?;
                    if w.dim_vector() != d {
                        return Err(Error::Precondition("representation dimension differs from the requested one".into()));
                    }
                    if flavor != Flavor::Plain && !check_form(&qs, &w, flavor).ok() {
                        return Err(Error::Precondition(format!("representation is not {flavor:?}")));
                    }
                    w
                }
                None => random_rep(&qs, &d, flavor, rng)?,
            };
            let list = list_generators(&qs, &td, &d, flavor)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for g in list.generators.iter().filter(|g| label.as_ref().is_none_or(|l| *l == g.label)) {
                let v = evaluate_generator(&qs, g, &w)?;
                text.push_str(&format!("{:<12} {}\n", g.label, q_to_string(&v)));
                rows.push(json!({ "label": g.label, "value": q_to_string(&v) }));
            }
            let value = json!({ "values": rows, "representation": RepFile::from_rep(qs.quiver(), &w) });
            Ok(Output::ok(value, text.trim_end().to_string()))
        }
        GensCmd::Weights(args) => {
            let (qs, td, d, flavor) = gens_setup(args)?;
            let list = list_generators(&qs, &td, &d, flavor)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for g in &list.generators {
                let ch = plus_character(&qs, &g.weight);
                text.push_str(&format!("{:<12} weight {}  character {}\n", g.label, fmt_qvec(&g.weight), fmt_qvec(&ch)));
                rows.push(json!({ "label": g.label, "weight": qs_json(&g.weight), "character": qs_json(&ch) }));
            }
            Ok(Output::ok(Value::Array(rows), text.trim_end().to_string()))
        }
    }
}

fn random_skew(n: usize, rng: &mut ChaCha8Rng) -> Matrix<Q> {
    let mut a = Matrix::<Q>::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = random_q(rng);
            a[(i, j)] = v.clone();
            a[(j, i)] = -v;
        }
    }
    a
}

fn run_verify(cmd: &VerifyCmd, rng: &mut ChaCha8Rng) -> Res<Output> {
    match cmd {
        VerifyCmd::Invariance { args, trials } => {
            let (qs, td, d, flavor) = gens_setup(args)?;
            let list = list_generators(&qs, &td, &d, flavor)?;
            let mut checks = Vec::new();
            let mut text = String::new();
            let mut failed = false;
            for g in &list.generators {
                let r = invariance_test(&qs, g, &d, flavor, *trials as usize, rng)?;
                failed |= !r.passed();
                text.push_str(&format!(
                    "{} {:<12} {} trials, {} failures, {} vanishing\n",
                    if r.passed() { "pass" } else { "FAIL" },
                    r.label,
                    r.trials,
                    r.failures,
                    r.vanishing
                ));
                checks.push(json!({ "check": r.label, "pass": r.passed(), "report": r }));
            }
            Ok(Output { value: json!({ "checks": checks }), text: text.trim_end().to_string(), failed })
        }
        VerifyCmd::Pf { size, trials } => {
            let mut text = String::new();
            let mut checks = Vec::new();
            let mut failed = false;
            for t in 0..*trials {
                let n = 2 * (1 + (t as usize) % (*size as usize / 2).max(1));
                let a = random_skew(n, rng);
                let b = Matrix::from_fn(n, n, |_, _| random_q(rng));
                let pf = a.pf();
                let square = &pf * &pf == a.det();
                let congruence = b.mul(&a).mul(&b.transpose()).pf() == b.det() * &pf;
                let pass = square && congruence;
                failed |= !pass;
                let mut check = json!({ "check": format!("trial {t}"), "size": n, "pass": pass });
                if !pass {
                    check["counterexample"] = json!({ "a": a.to_rows().iter().map(|r| qs_json(r)).collect::<Vec<_>>() });
                }
                checks.push(check);
                text.push_str(&format!("{} trial {t}: {n}×{n}\n", if pass { "pass" } else { "FAIL" }));
            }
            Ok(Output { value: json!({ "checks": checks }), text: text.trim_end().to_string(), failed })
        }
        VerifyCmd::Oracle { args, degree } => {
            let (qs, td, d, flavor) = gens_setup(args)?;
            let inv = invariant_dims(&qs, &d, flavor, *degree)?;
            let gens = list_generators(&qs, &td, &d, flavor)?.generators;
            let sub = subalgebra_dims(&qs, &gens, &d, flavor, *degree)?;
            let failed = inv != sub;
            let text = format!(
                "{} invariant dims {:?}\n  generated dims {:?}",
                if failed { "FAIL" } else { "pass" },
                inv,
                sub
            );
            let value = json!({ "checks": [{ "check": "oracle-dims", "pass": !failed, "invariant_dims": inv, "subalgebra_dims": sub }] });
            Ok(Output { value, text, failed })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Quiver(QuiverCmd::Build { .. }) => "quiver build",
        Command::Quiver(QuiverCmd::Classify(_)) => "quiver classify",
        Command::Quiver(QuiverCmd::Validate(_)) => "quiver validate",
        Command::Dim(DimCmd::Euler { .. }) => "dim euler",
        Command::Dim(DimCmd::Defect { .. }) => "dim defect",
        Command::Dim(DimCmd::Coxeter { .. }) => "dim coxeter",
        Command::Dim(DimCmd::Delta { .. }) => "dim delta",
        Command::Tube(_) => "tube data",
        Command::Reduce(_) => "reduce canonical",
        Command::Decomp(DecompCmd::Regular(_)) => "decomp regular",
        Command::Decomp(DecompCmd::Generic(_)) => "decomp generic",
        Command::Decomp(DecompCmd::Symplectic(_)) => "decomp symplectic",
        Command::Decomp(DecompCmd::Orthogonal(_)) => "decomp orthogonal",
        Command::Gens(GensCmd::List(_)) => "gens list",
        Command::Gens(GensCmd::Eval { .. }) => "gens eval",
        Command::Gens(GensCmd::Weights(_)) => "gens weights",
        Command::Verify(VerifyCmd::Invariance { .. }) => "verify invariance",
        Command::Verify(VerifyCmd::Pf { .. }) => "verify pf",
        Command::Verify(VerifyCmd::Oracle { .. }) => "verify oracle",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let env = json!({ "schema": SCHEMA, "command": name, "seed": cli.seed, "ok": !out.failed, "result": out.value });
                    println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
                }
                Format::Table => println!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let env = json!({ "schema": SCHEMA, "command": name, "ok": false, "error": e.to_string(), "exit_code": e.exit_code() });
                    println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
                }
                Format::Table => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
