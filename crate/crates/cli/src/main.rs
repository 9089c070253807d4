//! `qschubert`: classical and quantum Schubert tables, quantum products and
//! Gromov–Witten coefficients for a Weyl group given by type or Cartan matrix.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qschubert::algebra::{display_scalar, format_scalar, Polynomial};
use qschubert::classical::SchubertExpansion;
use qschubert::engine::Engine;
use qschubert::fixtures::{parse_top_class, Dictionary};
use qschubert::rootsystem::{CartanMatrix, GroupSpec, RootDatum};
use qschubert::verify::{verify, SuiteOptions};
use qschubert::weyl::{parse_word, ElementId, GroupDump, WeylGroup, WordDisplay, DEFAULT_SIZE_LIMIT};
use qschubert::{Error, SCHEMA};

#[derive(Parser)]
#[command(name = "qschubert", version, about = "Quantum Schubert calculus on G/B with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, reflection lengths and the quantum operator terms.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        /// Also write the Weyl group as JSON to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// `c_w` for every `w`.
    ClassicalTable {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// `ĉ_w` and `ĉ_w − c_w` for every `w`.
    QuantumTable {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// `σ_u ∘ σ_v` in the Schubert basis.
    Product {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Coefficient of `q^d σ_w` in `σ_u ∘ σ_v`.
    Gw {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        /// Degree as comma-separated exponents, e.g. `1,0`.
        #[arg(long, conflicts_with = "all_d", required_unless_present = "all_d")]
        d: Option<String>,
        /// Every degree with a nonzero coefficient.
        #[arg(long)]
        all_d: bool,
    },
    /// Property suite, plus the bundled golden data for B2.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
        /// Random inputs per randomized check.
        #[arg(long, default_value_t = SuiteOptions::default().random_samples)]
        samples: usize,
        /// Check every product pair even for large groups.
        #[arg(long)]
        full_tables: bool,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Type label such as `B2` or `G2`.
    #[arg(long = "type", value_name = "LABEL", group = "source")]
    type_label: Option<String>,
    /// JSON file `{"cartan": [[...]]}` with `A[i][j] = α_j(α_i∨)`.
    #[arg(long, value_name = "FILE", group = "source")]
    cartan: Option<PathBuf>,
    /// Weyl group JSON written by `info --dump`.
    #[arg(long, value_name = "FILE", group = "source")]
    load: Option<PathBuf>,
    /// Allow types beyond the default set (E6, E7, E8 and ranks above 8).
    #[arg(long)]
    allow_large: bool,
    #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
    size_limit: usize,
    /// Top-class file; defaults to the product of positive roots over |W|.
    #[arg(long, value_name = "FILE")]
    top: Option<PathBuf>,
    /// Extra rendering coordinates, e.g. `x1=2*l1-l2,x2=l2`.
    #[arg(long, value_name = "ASSIGNMENTS")]
    dict: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Input(String),
    Resource(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimitExceeded { .. } | Error::LargeType(_) => Failure::Resource(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

struct Context {
    engine: Engine,
    label: String,
    dict: Option<Dictionary>,
    format: Format,
}

#[derive(serde::Deserialize)]
struct CartanFile {
    cartan: Vec<Vec<i64>>,
    #[serde(rename = "type")]
    type_label: Option<String>,
}

fn read(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn build_group(args: &GroupArgs) -> CliResult<(WeylGroup, String)> {
    if let Some(label) = &args.type_label {
        let spec = GroupSpec::from_label(label, args.allow_large)?;
        let datum = RootDatum::build(&spec)?;
        let label = datum.type_label().unwrap_or(label).to_string();
        return Ok((WeylGroup::generate(datum, args.size_limit)?, label));
    }
    if let Some(path) = &args.cartan {
        let file: CartanFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let label = file.type_label.clone().unwrap_or_else(|| "custom".into());
        let datum = RootDatum::from_cartan(CartanMatrix::new(file.cartan)?, file.type_label)?;
        return Ok((WeylGroup::generate(datum, args.size_limit)?, label));
    }
    if let Some(path) = &args.load {
        let dump: GroupDump = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let label = dump.type_label.clone().unwrap_or_else(|| "custom".into());
        return Ok((WeylGroup::from_dump(&dump, args.size_limit)?, label));
    }
    Err(Failure::Input("one of --type, --cartan or --load is required".into()))
}

fn context(args: &GroupArgs) -> CliResult<Context> {
    let (group, label) = build_group(args)?;
    let rank = group.rank();
    let top = match &args.top {
        Some(path) => Some(parse_top_class(&read(path)?, rank)?),
        None => None,
    };
    let dict = match &args.dict {
        Some(text) => Some(Dictionary::parse_assignments(rank, text)?),
        None => None,
    };
    Ok(Context {
        engine: Engine::from_group(group, top)?,
        label,
        dict,
        format: args.format,
    })
}

impl Context {
    fn group(&self) -> &WeylGroup {
        self.engine.group()
    }

    /// Parses a reduced word; non-reduced words are rejected.
    fn element(&self, text: &str) -> CliResult<ElementId> {
        let word = parse_word(text, self.group().rank())?;
        let w = self.group().from_word(&word)?;
        if self.group().length(w) != word.len() {
            return Err(Failure::Input(format!("`{text}` is not a reduced word")));
        }
        Ok(w)
    }

    fn word(&self, w: ElementId) -> String {
        WordDisplay(self.group().word(w)).to_string()
    }

    fn poly_json(&self, f: &Polynomial) -> CliResult<Value> {
        let mut v = json!({ "text": f.to_string(), "terms": f.to_json_terms() });
        if let Some(d) = &self.dict {
            v["dict_text"] = json!(d.render(f)?);
        }
        Ok(v)
    }

    fn poly_text(&self, f: &Polynomial) -> CliResult<String> {
        Ok(match &self.dict {
            Some(d) => format!("{f}    [{}]", d.render(f)?),
            None => f.to_string(),
        })
    }

    fn expansion_text(&self, e: &SchubertExpansion) -> Vec<String> {
        if e.is_empty() {
            return vec!["0".into()];
        }
        e.coords()
            .iter()
            .map(|(&w, c)| format!("σ[{}]  {c}", self.word(w)))
            .collect()
    }

    fn emit(&self, text: Vec<String>, json: Value) {
        match self.format {
            Format::Text => {
                for line in text {
                    println!("{line}");
                }
            }
            Format::Json => {
                let mut json = json;
                json["schema"] = json!(SCHEMA);
                println!("{}", serde_json::to_string_pretty(&json).expect("JSON values serialize"));
            }
        }
    }
}

fn info(ctx: &Context, dump: Option<&PathBuf>) -> CliResult<()> {
    let group = ctx.group();
    let datum = group.datum();
    let ops = ctx.engine.ops();
    if let Some(path) = dump {
        let text = serde_json::to_string_pretty(&group.to_dump()).expect("dump serializes");
        fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let mut text = vec![
        format!("type {}", ctx.label),
        format!("rank {}", group.rank()),
        format!("cartan {:?}", datum.cartan().entries()),
        format!("order {}", group.len()),
        format!("longest {} (length {})", ctx.word(group.longest()), group.length(group.longest())),
        "positive roots (root coords | coroot coords | l(s_α) | quantum):".into(),
    ];
    let mut roots = Vec::new();
    for (k, root) in datum.positive_roots().iter().enumerate() {
        let tilde = root.is_tilde == Some(true);
        let len = group.length(group.reflection(k));
        text.push(format!(
            "  {:?} | {:?} | {len} | {}",
            root.root_coords,
            root.coroot_coords,
            if tilde { "yes" } else { "no" }
        ));
        roots.push(json!({
            "root": root.root_coords,
            "coroot": root.coroot_coords,
            "reflection_length": len,
            "quantum": tilde,
        }));
    }
    let mut operators = Vec::new();
    for i in 0..group.rank() {
        let mut parts = vec![format!("l{}", i + 1)];
        let mut terms = Vec::new();
        for t in ops.tilde_terms(i) {
            let q = Polynomial::term(t.q.clone(), t.coefficient.clone());
            parts.push(format!("({q}) Δ[{}]", ctx.word(t.reflection)));
            terms.push(json!({
                "coeff": format_scalar(&t.coefficient),
                "q": t.q.q_exponents(),
                "word": group.word(t.reflection).iter().map(|i| i + 1).collect::<Vec<_>>(),
            }));
        }
        text.push(format!("Λ{} = {}", i + 1, parts.join(" + ")));
        operators.push(json!({ "index": i + 1, "terms": terms }));
    }
    ctx.emit(
        text,
        json!({
            "type": ctx.label,
            "rank": group.rank(),
            "cartan": datum.cartan().entries(),
            "order": group.len(),
            "longest": group.element_json(group.longest()),
            "positive_roots": roots,
            "operators": operators,
        }),
    );
    Ok(())
}

fn classical_table(ctx: &Context) -> CliResult<()> {
    let group = ctx.group();
    let family = ctx.engine.classical();
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for w in group.ids() {
        let c = family.member(w);
        text.push(format!("{}\t{}", ctx.word(w), ctx.poly_text(c)?));
        rows.push(json!({ "element": group.element_json(w), "poly": ctx.poly_json(c)? }));
    }
    ctx.emit(text, json!({ "type": ctx.label, "table": "classical", "rows": rows }));
    Ok(())
}

fn quantum_table(ctx: &Context) -> CliResult<()> {
    let group = ctx.group();
    let family = ctx.engine.quantum()?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for w in group.ids() {
        let hat = family.hat(w);
        let correction = hat - family.classical().member(w);
        text.push(format!(
            "{}\t{}\tcorrection {}",
            ctx.word(w),
            ctx.poly_text(hat)?,
            ctx.poly_text(&correction)?
        ));
        rows.push(json!({
            "element": group.element_json(w),
            "poly": ctx.poly_json(hat)?,
            "correction": ctx.poly_json(&correction)?,
        }));
    }
    ctx.emit(text, json!({ "type": ctx.label, "table": "quantum", "rows": rows }));
    Ok(())
}

fn product(ctx: &Context, u: &str, v: &str) -> CliResult<()> {
    let (u, v) = (ctx.element(u)?, ctx.element(v)?);
    let e = ctx.engine.quantum_product(u, v)?;
    let mut text = vec![format!("σ[{}] ∘ σ[{}] =", ctx.word(u), ctx.word(v))];
    text.extend(ctx.expansion_text(&e).into_iter().map(|l| format!("  {l}")));
    let group = ctx.group();
    ctx.emit(
        text,
        json!({
            "type": ctx.label,
            "u": group.element_json(u),
            "v": group.element_json(v),
            "product": e.to_json(group),
        }),
    );
    Ok(())
}

fn parse_degree(text: &str, rank: usize) -> CliResult<Vec<u32>> {
    let d = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Input(format!("invalid degree `{text}`")))?;
    if d.len() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: d.len(),
        }
        .into());
    }
    Ok(d)
}

fn gw(ctx: &Context, u: &str, v: &str, w: &str, d: Option<&str>) -> CliResult<()> {
    let group = ctx.group();
    let (u, v, w) = (ctx.element(u)?, ctx.element(v)?, ctx.element(w)?);
    let header = format!("⟨σ[{}] | σ[{}] | σ_w0 w⟩ for w = {}", ctx.word(u), ctx.word(v), ctx.word(w));
    let mut text = vec![header];
    let mut entries = Vec::new();
    match d {
        Some(d) => {
            let d = parse_degree(d, group.rank())?;
            let value = ctx.engine.gw_invariant(u, v, w, &d)?;
            text.push(format!("  d = {d:?}: {}", display_scalar(&value)));
            entries.push(json!({ "d": d, "value": format_scalar(&value) }));
        }
        None => {
            let product = ctx.engine.quantum_product(u, v)?;
            if let Some(coeff) = product.coeff(w) {
                for (m, c) in coeff.terms() {
                    text.push(format!("  d = {:?}: {}", m.q_exponents(), display_scalar(c)));
                    entries.push(json!({ "d": m.q_exponents(), "value": format_scalar(c) }));
                }
            }
            if entries.is_empty() {
                text.push("  all degrees: 0".into());
            }
        }
    }
    ctx.emit(
        text,
        json!({
            "type": ctx.label,
            "u": group.element_json(u),
            "v": group.element_json(v),
            "w": group.element_json(w),
            "invariants": entries,
        }),
    );
    Ok(())
}

fn run_verify(ctx: &Context, opts: &SuiteOptions) -> CliResult<()> {
    let report = verify(&ctx.engine, &ctx.label, opts);
    let mut text = Vec::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        text.push(format!("[{status}] {}: {}", c.name, c.detail));
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    text.push(format!(
        "{}: {}/{} checks passed",
        report.group,
        report.checks.len() - failed,
        report.checks.len()
    ));
    ctx.emit(text, serde_json::to_value(&report).expect("report serializes"));
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Info { group, dump } => info(&context(&group)?, dump.as_ref()),
        Command::ClassicalTable { group } => classical_table(&context(&group)?),
        Command::QuantumTable { group } => quantum_table(&context(&group)?),
        Command::Product { group, u, v } => product(&context(&group)?, &u, &v),
        Command::Gw { group, u, v, w, d, .. } => gw(&context(&group)?, &u, &v, &w, d.as_deref()),
        Command::Verify {
            group,
            seed,
            samples,
            full_tables,
        } => run_verify(
            &context(&group)?,
            &SuiteOptions {
                seed,
                random_samples: samples,
                full_tables,
            },
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
