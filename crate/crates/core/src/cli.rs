//! Command-line front end. [`run`] parses arguments, executes one verb and
//! returns the exit code with the captured output, so tests can drive it
//! without spawning a process.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails (the
//! report carries a witness), 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{AlgebraTable, Signature};
use crate::balbes::verify_representation;
use crate::balg::{parse_balg, parse_plonka_spec, print_balg, print_plonka_spec};
use crate::builtin::BuiltinName;
use crate::corpus::{enumerate_exhaustive, generate_plonka, CorpusMode, CorpusSpec};
use crate::dot::{hasse_dot, twospace_dot};
use crate::duality::{
    algebra_of_2space, build_2space, build_2space_star, check_2space, check_2space_star, FiniteFspace, StarGrade,
    TwoSpace,
};
use crate::filters::{filters, ideals, prime_filters, prime_ideals};
use crate::hom::{enumerate_homomorphisms, find_isomorphism};
use crate::kleene::{
    consequence, evaluate, format_valuation, is_tautology, no_tautology_probe, parse_formula, Formula, Logic, Tv,
    Valuation,
};
use crate::laws::{
    check_absorption, check_bounded, check_demorgan, check_distributive, check_involutive, check_reduct,
    classify_variety, in_variety, LawError, VarietyTag, Verdict,
};
use crate::order::{induced_order, OrderKind};
use crate::plonka::plonka_sum;
use crate::report::{Outcome, Report};
use crate::subset::Subset;

#[derive(Parser, Debug)]
#[command(name = "bisem", version, about = "Finite distributive bisemilattices: checks, representation and duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckVariety {
    Dbs,
    Bdbs,
    Ddbs,
    Idbs,
}

impl From<CheckVariety> for VarietyTag {
    fn from(v: CheckVariety) -> Self {
        match v {
            CheckVariety::Dbs => VarietyTag::Dbs,
            CheckVariety::Bdbs => VarietyTag::Bdbs,
            CheckVariety::Ddbs => VarietyTag::Ddbs,
            CheckVariety::Idbs => VarietyTag::Idbs,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Meet,
    Join,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignatureArg {
    Lattice,
    Bounded,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an algebra and check its laws
    Check {
        file: String,
        #[arg(long, value_enum)]
        variety: Option<CheckVariety>,
    },
    /// List filters and ideals
    Filters {
        file: String,
        #[arg(long)]
        prime: bool,
    },
    /// Verify the set representation x -> up(x)
    Represent { file: String },
    /// Build and check the dual 2space
    Dualize {
        file: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Algebra -> 2space -> algebra, up to isomorphism
    Roundtrip { file: String },
    /// Enumerate homomorphisms between two algebras
    Homs {
        a: String,
        b: String,
        #[arg(long, value_enum)]
        signature: Option<SignatureArg>,
    },
    /// Generate a corpus of algebras
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        variety: VarietyTag,
        #[arg(long, default_value = "exhaustive")]
        mode: CorpusMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Write .balg files and a manifest here instead of printing them
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-valued Kleene logics
    Logic {
        #[command(subcommand)]
        action: LogicCommand,
    },
    /// Build the Płonka sum described by a spec file
    Plonka { spec: PathBuf },
    /// Covering relation of an induced order
    Hasse {
        file: String,
        #[arg(long, value_enum)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum LogicCommand {
    /// Is the formula valid?
    Taut {
        #[arg(long)]
        logic: Logic,
        formula: String,
    },
    /// Evaluate under a valuation (exit 0 when the value is designated)
    Eval {
        #[arg(long)]
        logic: Logic,
        formula: String,
        /// Binding such as p=h; repeat per variable
        #[arg(long = "val", value_parser = parse_binding)]
        vals: Vec<(String, Tv)>,
    },
    /// Does the conclusion follow from the premises?
    Cons {
        #[arg(long)]
        logic: Logic,
        #[arg(long = "premise")]
        premises: Vec<String>,
        conclusion: String,
    },
    /// Sample constant-free formulas and evaluate them at all-h under the weak tables
    Probe {
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_binding(s: &str) -> Result<(String, Tv), String> {
    let (var, value) = s.split_once('=').ok_or_else(|| format!("expected var=value, got {s:?}"))?;
    Ok((var.to_string(), value.parse().map_err(|e: crate::kleene::LogicError| e.to_string())?))
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<Output, UsageError>;

enum Output {
    Report(Report),
    /// Raw text (DOT) with an exit code.
    Raw(String, i32),
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Report(r)) => {
            CliOutput { code: r.outcome.exit_code(), stdout: r.to_string(), stderr: String::new() }
        }
        Ok(Output::Raw(text, code)) => CliOutput { code, stdout: text, stderr: String::new() },
        Err(UsageError(msg)) => CliOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Check { file, variety } => check(&file, variety.map(Into::into)),
        Command::Filters { file, prime } => filters_verb(&file, prime),
        Command::Represent { file } => represent(&file),
        Command::Dualize { file, format } => dualize(&file, format),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Homs { a, b, signature } => homs(&a, &b, signature),
        Command::Enumerate { size, variety, mode, seed, count, out } => {
            enumerate(CorpusSpec { size, variety, mode, seed, count }, out.as_deref())
        }
        Command::Logic { action } => logic(action),
        Command::Plonka { spec } => plonka(&spec),
        Command::Hasse { file, order, format } => hasse(&file, order, format),
    }
}

/// Reads an algebra from a path, or from `builtin:<name>`.
fn load(arg: &str) -> Result<(AlgebraTable, Vec<u8>), UsageError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        let name: BuiltinName = name.parse()?;
        let alg = crate::builtin::builtin(name);
        let bytes = print_balg(&alg).into_bytes();
        return Ok((alg, bytes));
    }
    let bytes = fs::read(arg).map_err(|e| UsageError(format!("{arg}: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| UsageError(format!("{arg}: not UTF-8")))?;
    let alg = parse_balg(&text).map_err(|e| UsageError(format!("{arg}: {e}")))?;
    Ok((alg, bytes))
}

fn start(verb: &str, file: &str) -> Result<(Report, AlgebraTable), UsageError> {
    let (alg, bytes) = load(file)?;
    let mut r = Report::new(verb);
    r.input(file, &bytes);
    Ok((r, alg))
}

fn verdict_text(alg: &AlgebraTable, v: &Verdict) -> String {
    match v.violation() {
        None => "holds".to_string(),
        Some(v) => v.describe(alg),
    }
}

fn optional_verdict(alg: &AlgebraTable, v: Result<Verdict, LawError>) -> String {
    match v {
        Ok(v) => verdict_text(alg, &v),
        Err(e) => format!("n/a ({e})"),
    }
}

fn tags_line(tags: &std::collections::BTreeSet<VarietyTag>) -> String {
    let names: Vec<&str> = tags.iter().map(|t| t.as_str()).collect();
    if names.is_empty() {
        "varieties: none".into()
    } else {
        format!("varieties: {}", names.join(" "))
    }
}

fn check(file: &str, variety: Option<VarietyTag>) -> CliResult {
    let (mut r, alg) = start("check", file)?;
    let meet = check_reduct(&alg, crate::algebra::BinOp::Meet);
    let join = check_reduct(&alg, crate::algebra::BinOp::Join);
    r.line(format!("elements: {}", alg.names().join(" ")));
    r.line(format!("signature: {}", alg.signature()));
    r.line(format!("meet semilattice: {}", verdict_text(&alg, &meet)));
    r.line(format!("join semilattice: {}", verdict_text(&alg, &join)));
    if meet.holds() && join.holds() {
        r.line(format!("distributive: {}", verdict_text(&alg, &check_distributive(&alg))));
        r.line(format!("absorption: {}", verdict_text(&alg, &check_absorption(&alg))));
        r.line(format!("bounded: {}", optional_verdict(&alg, check_bounded(&alg))));
        r.line(format!("de morgan: {}", optional_verdict(&alg, check_demorgan(&alg))));
        r.line(format!("involutive: {}", optional_verdict(&alg, check_involutive(&alg))));
    }
    let tags = classify_variety(&alg);
    r.line(tags_line(&tags));
    let target = variety.unwrap_or(VarietyTag::Dbs);
    r.line(format!("requested: {target}"));
    let holds = in_variety(&alg, target);
    if !holds && !target.signature().is_subset_of(alg.signature()) {
        r.line(format!("missing operations: {} requires {}", target, target.signature()));
    }
    r.outcome = Outcome::from_bool(holds);
    Ok(Output::Report(r))
}

fn filters_verb(file: &str, prime: bool) -> CliResult {
    let (mut r, alg) = start("filters", file)?;
    for kind in [OrderKind::Meet, OrderKind::Join] {
        if let Err(e) = induced_order(&alg, kind) {
            r.line(format!("{kind} reduct: {}", e.violation.describe(&alg)));
            r.fail();
            return Ok(Output::Report(r));
        }
    }
    let show = |s: Subset| s.display_with(|i| alg.name(i));
    let (fs, is): (Vec<Subset>, Vec<Subset>) = if prime {
        (
            prime_filters(&alg).iter().map(|f| f.members()).collect(),
            prime_ideals(&alg).iter().map(|i| i.members()).collect(),
        )
    } else {
        (filters(&alg).iter().map(|f| f.members()).collect(), ideals(&alg).iter().map(|i| i.members()).collect())
    };
    let adjective = if prime { "prime " } else { "" };
    r.line(format!("{adjective}filters: {}", fs.len()));
    for (k, f) in fs.iter().enumerate() {
        r.line(format!("  F{} = {}", k + 1, show(*f)));
    }
    r.line(format!("{adjective}ideals: {}", is.len()));
    for (k, i) in is.iter().enumerate() {
        r.line(format!("  I{} = {}", k + 1, show(*i)));
    }
    Ok(Output::Report(r))
}

fn represent(file: &str) -> CliResult {
    let (mut r, alg) = start("represent", file)?;
    match verify_representation(&alg) {
        Ok(cert) => r.block(&cert.to_string()),
        Err(e) => {
            r.line(format!("representation: {e}"));
            r.fail();
        }
    }
    Ok(Output::Report(r))
}

fn describe_space(r: &mut Report, title: &str, fs: &FiniteFspace, basic: &str) {
    r.line(format!("{title}: {} points", fs.points().len()));
    for p in 0..fs.points().len() {
        let member: Vec<&str> = (0..fs.subbasis().len())
            .filter(|&a| fs.subbasis()[a].contains(p))
            .map(|a| fs.labels()[a].as_str())
            .collect();
        r.line(format!("  P{} = {}  in {basic}_a for a in {{{}}}", p + 1, fs.point_label(p), member.join(", ")));
    }
}

fn describe_2space(r: &mut Report, ts: &TwoSpace) {
    describe_space(r, "filter space", &ts.left, "X");
    describe_space(r, "ideal space", &ts.right, "Y");
    r.line("rho:");
    for (a, &c) in ts.rho.iter().enumerate() {
        r.line(format!("  X_{} -> Ybar_{}", ts.left.labels()[a], ts.right.labels()[c]));
    }
}

fn dualize(file: &str, format: Format) -> CliResult {
    let (mut r, alg) = start("dualize", file)?;
    let tags = classify_variety(&alg);
    if !tags.contains(&VarietyTag::Dbs) {
        r.line("2space: algebra is not a distributive bisemilattice");
        r.fail();
        return Ok(Output::Report(r));
    }
    let ts = build_2space(&alg)?;
    let star = if tags.contains(&VarietyTag::Ddbs) { Some(build_2space_star(&alg)?) } else { None };
    if format == Format::Dot {
        return Ok(Output::Raw(twospace_dot(&ts), 0));
    }
    describe_2space(&mut r, &ts);
    let verdict = match &star {
        Some(s) => {
            r.line("star:");
            for (c, &a) in s.star.iter().enumerate() {
                r.line(format!("  Ybar_{} -> X_{}", ts.right.labels()[c], ts.left.labels()[a]));
            }
            r.line(format!("bottom: Ybar_{}", ts.right.labels()[s.bottom]));
            let grade = if tags.contains(&VarietyTag::Idbs) { StarGrade::Involutive } else { StarGrade::DeMorgan };
            r.line(format!("grade: {}", if grade == StarGrade::Involutive { "involutive" } else { "de morgan" }));
            check_2space_star(s, grade)
        }
        None => check_2space(&ts),
    };
    match verdict {
        Ok(()) => r.line("2space checks: holds"),
        Err(e) => {
            r.line(format!("2space checks: {e}"));
            r.fail();
        }
    }
    Ok(Output::Report(r))
}

fn roundtrip(file: &str) -> CliResult {
    let (mut r, alg) = start("roundtrip", file)?;
    let cert = match verify_representation(&alg) {
        Ok(cert) => cert,
        Err(e) => {
            r.line(format!("representation: {e}"));
            r.fail();
            return Ok(Output::Report(r));
        }
    };
    r.line(format!("representation: x -> up(x) is an isomorphism onto the set algebra ({})", cert.level));
    let ts = build_2space(&alg)?;
    if let Err(e) = check_2space(&ts) {
        r.line(format!("2space checks: {e}"));
        r.fail();
        return Ok(Output::Report(r));
    }
    r.line("2space checks: holds");
    let back = algebra_of_2space(&ts)?;
    match find_isomorphism(&back, &alg.reduct(Signature::LATTICE)) {
        Some(iso) => {
            r.line("isomorphism: x -> up(x)");
            for (a, &b) in iso.map().iter().enumerate() {
                let up = ts.left.subbasis()[a];
                let pts: Vec<String> = up.iter().map(|p| ts.left.point_label(p)).collect();
                r.line(format!("  {} -> X_{} = {{{}}}", alg.name(b), back.name(a), pts.join(", ")));
            }
        }
        None => {
            r.line("isomorphism: none found");
            r.fail();
        }
    }
    Ok(Output::Report(r))
}

fn homs(a: &str, b: &str, signature: Option<SignatureArg>) -> CliResult {
    let (src, src_bytes) = load(a)?;
    let (dst, dst_bytes) = load(b)?;
    let mut r = Report::new("homs");
    r.input(a, &src_bytes);
    r.input(b, &dst_bytes);
    let sig = match signature {
        None => src.signature().intersection(dst.signature()),
        Some(SignatureArg::Lattice) => Signature::LATTICE,
        Some(SignatureArg::Bounded) => Signature::BOUNDED,
        Some(SignatureArg::Full) => Signature::FULL,
    };
    let found = enumerate_homomorphisms(&src, &dst, sig)?;
    r.line(format!("signature: {sig}"));
    r.line(format!("homomorphisms: {}", found.len()));
    for (k, h) in found.iter().enumerate() {
        r.line(format!("  f{} = {}", k + 1, h.describe(&src, &dst)));
    }
    Ok(Output::Report(r))
}

fn enumerate(spec: CorpusSpec, out: Option<&Path>) -> CliResult {
    let mut r = Report::new("enumerate");
    r.line(format!("mode: {}", spec.mode));
    r.line(format!("variety: {}", spec.variety));
    let mut files: Vec<(String, String)> = Vec::new();
    match spec.mode {
        CorpusMode::Exhaustive => {
            r.line(format!("size: {}", spec.size));
            let algs = enumerate_exhaustive(spec.size, spec.variety)?;
            r.line(format!("count: {}", algs.len()));
            for (k, alg) in algs.iter().enumerate() {
                let name = format!("{}_{}_{:03}.balg", spec.variety.as_str().to_lowercase(), spec.size, k + 1);
                files.push((name, print_balg(alg)));
            }
        }
        CorpusMode::PlonkaRandom => {
            r.line(format!("max size: {}", spec.size));
            r.line(format!("seed: {}", spec.seed));
            let instances = generate_plonka(&spec)?;
            r.line(format!("count: {}", instances.len()));
            for (k, inst) in instances.iter().enumerate() {
                let stem = format!("plonka_{:03}", k + 1);
                let index_file = format!("{stem}_index.balg");
                let comp_files: Vec<String> =
                    (0..inst.system.components.len()).map(|i| format!("{stem}_c{}.balg", i + 1)).collect();
                files.push((format!("{stem}.balg"), print_balg(&inst.sum)));
                files.push((format!("{stem}.spec"), print_plonka_spec(&inst.system, &index_file, &comp_files)));
                files.push((index_file, print_balg(&inst.system.index)));
                for (name, comp) in comp_files.iter().zip(&inst.system.components) {
                    files.push((name.clone(), print_balg(comp)));
                }
            }
        }
    }
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| UsageError(format!("{}: {e}", dir.display())))?;
            let mut manifest = format!(
                "mode {}\nvariety {}\nsize {}\nseed {}\nfiles {}\n",
                spec.mode,
                spec.variety,
                spec.size,
                spec.seed,
                files.len()
            );
            for (name, text) in &files {
                fs::write(dir.join(name), text).map_err(|e| UsageError(format!("{name}: {e}")))?;
                manifest.push_str(&format!("{name} sha256:{}\n", crate::report::sha256_hex(text.as_bytes())));
            }
            fs::write(dir.join("manifest.txt"), &manifest).map_err(|e| UsageError(format!("manifest: {e}")))?;
            r.line(format!("wrote {} files and manifest.txt", files.len()));
        }
        None => {
            for (name, text) in &files {
                r.line(format!("--- {name}"));
                r.block(text);
            }
        }
    }
    Ok(Output::Report(r))
}

fn formula_arg(text: &str) -> Result<Formula, UsageError> {
    parse_formula(text).map_err(|e| UsageError(format!("{text:?}: {e}")))
}

fn logic(action: LogicCommand) -> CliResult {
    match action {
        LogicCommand::Taut { logic, formula } => {
            let f = formula_arg(&formula)?;
            let mut r = Report::new("logic taut");
            r.line(format!("logic: {logic}"));
            r.line(format!("formula: {f}"));
            match is_tautology(&f, logic)? {
                None => r.line("tautology: yes"),
                Some(v) => {
                    r.line("tautology: no");
                    r.line(format!("countervaluation: {}", format_valuation(&v)));
                    r.fail();
                }
            }
            Ok(Output::Report(r))
        }
        LogicCommand::Eval { logic, formula, vals } => {
            let f = formula_arg(&formula)?;
            let v: Valuation = vals.into_iter().collect();
            let value = evaluate(&f, &v, logic.matrix())?;
            let mut r = Report::new("logic eval");
            r.line(format!("logic: {logic}"));
            r.line(format!("formula: {f}"));
            r.line(format!("valuation: {}", format_valuation(&v)));
            r.line(format!("value: {value}"));
            let designated = logic.designated(value);
            r.line(format!("designated: {}", if designated { "yes" } else { "no" }));
            r.outcome = Outcome::from_bool(designated);
            Ok(Output::Report(r))
        }
        LogicCommand::Cons { logic, premises, conclusion } => {
            let premises: Vec<Formula> = premises.iter().map(|p| formula_arg(p)).collect::<Result<_, _>>()?;
            let conclusion = formula_arg(&conclusion)?;
            let mut r = Report::new("logic cons");
            r.line(format!("logic: {logic}"));
            for p in &premises {
                r.line(format!("premise: {p}"));
            }
            r.line(format!("conclusion: {conclusion}"));
            match consequence(&premises, &conclusion, logic)? {
                None => r.line("consequence: yes"),
                Some(v) => {
                    r.line("consequence: no");
                    r.line(format!("countervaluation: {}", format_valuation(&v)));
                    r.fail();
                }
            }
            Ok(Output::Report(r))
        }
        LogicCommand::Probe { depth, samples, seed } => {
            let report = no_tautology_probe(depth, samples, seed);
            let mut r = Report::new("logic probe");
            r.block(&report.to_string());
            r.outcome = Outcome::from_bool(report.violations.is_empty());
            Ok(Output::Report(r))
        }
    }
}

fn plonka(spec_path: &Path) -> CliResult {
    let text = fs::read_to_string(spec_path).map_err(|e| UsageError(format!("{}: {e}", spec_path.display())))?;
    let base = spec_path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut r = Report::new("plonka");
    r.input(&spec_path.display().to_string(), text.as_bytes());
    let mut included: Vec<(String, Vec<u8>)> = Vec::new();
    let system = parse_plonka_spec(&text, |rel| {
        let body = fs::read_to_string(base.join(rel)).map_err(|e| e.to_string())?;
        included.push((rel.to_string(), body.clone().into_bytes()));
        Ok(body)
    })
    .map_err(|e| UsageError(format!("{}: {e}", spec_path.display())))?;
    for (name, bytes) in &included {
        r.input(name, bytes);
    }
    match plonka_sum(&system) {
        Ok(sum) => {
            r.line(tags_line(&classify_variety(&sum)));
            r.line("sum:");
            r.block(&print_balg(&sum));
        }
        Err(e) => {
            r.line(format!("plonka sum: {e}"));
            r.fail();
        }
    }
    Ok(Output::Report(r))
}

fn hasse(file: &str, order: OrderArg, format: Format) -> CliResult {
    let (mut r, alg) = start("hasse", file)?;
    let kind = match order {
        OrderArg::Meet => OrderKind::Meet,
        OrderArg::Join => OrderKind::Join,
    };
    if format == Format::Dot {
        return match hasse_dot(&alg, kind) {
            Ok(dot) => Ok(Output::Raw(dot, 0)),
            Err(e) => Err(UsageError(e.to_string())),
        };
    }
    match induced_order(&alg, kind) {
        Ok(ord) => {
            let covers = ord.covers();
            r.line(format!("{kind} order covers: {}", covers.len()));
            for (a, b) in covers {
                r.line(format!("  {} < {}", alg.name(a), alg.name(b)));
            }
        }
        Err(e) => {
            r.line(format!("{kind} reduct: {}", e.violation.describe(&alg)));
            r.fail();
        }
    }
    Ok(Output::Report(r))
}
