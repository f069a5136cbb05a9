//! Batch front end: one job per invocation, human-readable or line-delimited
//! JSON output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::json;
use thiserror::Error;

use crate::bracket::{self, Family3, Laurent, Specialization};
use crate::code::{MarkedGaussCode, Symbol};
use crate::labels::{compute_labels, LabeledDiagram};
use crate::lifting::{lift_degree0, lift_degreek, CoveringLinkCode};
use crate::moves::{apply, equivalent_bounded, Equivalence, MoveSite};
use crate::quandle::{self, count_colorings, CertifiedQuandle, LabeledQuandle};
use crate::records::RecordWriter;
use crate::sample::random_planar_knot;
use crate::text::{format_code, parse_code, ParseError};
use crate::unknotting::unknotting_report;

/// Environment variable naming the quandle search cache directory.
pub const CACHE_DIR_VAR: &str = "SGKNOT_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "sgknot", version, about = "Marked Gauss codes for links in S_g x S^1")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Clone, Debug, Args)]
pub struct QuandleSource {
    /// JSON file with one structure.
    #[arg(long, conflicts_with_all = ["q", "n"])]
    pub quandle: Option<PathBuf>,
    /// Carrier size for a search.
    #[arg(long, requires = "n")]
    pub q: Option<usize>,
    /// Number of indices for a search.
    #[arg(long, requires = "q")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Clone, Debug, Args)]
pub struct SpecSource {
    /// TOML specialization file.
    #[arg(long, conflicts_with = "kauffman")]
    pub spec: Option<PathBuf>,
    /// Use A, A^-1 and -A^2 - A^-2.
    #[arg(long)]
    pub kauffman: bool,
    /// Label window for `--kauffman`.
    #[arg(long)]
    pub window: Option<i64>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Check that a code is well formed.
    Validate { input: PathBuf },
    /// Arc and crossing labels.
    Label { input: PathBuf },
    /// Per-component degree.
    Degree { input: PathBuf },
    /// Lift to the infinite cyclic cover (`--from`, `--to`) or the k-fold cover.
    Lift {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true, requires = "to", conflicts_with = "k")]
        from: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "from")]
        to: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Count colorings by a given structure or by every structure a search finds.
    Colorings {
        input: PathBuf,
        #[command(flatten)]
        source: QuandleSource,
    },
    /// Enumerate labeled quandles up to isomorphism.
    QuandleSearch {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// State sum, optionally specialized.
    Bracket {
        input: PathBuf,
        #[command(flatten)]
        spec: SpecSource,
    },
    /// Check the relation families for a specialization.
    CheckRelations {
        #[command(flatten)]
        spec: SpecSource,
    },
    /// Upper bound on the unknotting number of a planar knot diagram.
    UnknotBound { input: PathBuf },
    /// Apply a JSON list of move sites in order.
    MovesApply {
        input: PathBuf,
        #[arg(long)]
        moves: PathBuf,
    },
    /// Search for a move sequence between two codes.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_symbols: Option<i64>,
        #[arg(long, default_value_t = 100_000)]
        max_states: i64,
    },
    /// Random planar knot diagrams from braid closures.
    Sample {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, default_value_t = 0)]
        marks: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Label { .. } => "label",
            Command::Degree { .. } => "degree",
            Command::Lift { .. } => "lift",
            Command::Colorings { .. } => "colorings",
            Command::QuandleSearch { .. } => "quandle-search",
            Command::Bracket { .. } => "bracket",
            Command::CheckRelations { .. } => "check-relations",
            Command::UnknotBound { .. } => "unknot-bound",
            Command::MovesApply { .. } => "moves-apply",
            Command::Equiv { .. } => "equiv",
            Command::Sample { .. } => "sample",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{}:{}: {}", .error.line, .error.column, .error.message)]
    Parse { path: String, error: ParseError },
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    Module(String),
}

impl CliError {
    /// 2 for bad parameters, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Param(_) => 2,
            _ => 1,
        }
    }
}

fn module<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Module(e.to_string())
}

/// The report and the exit status it warrants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.display().to_string(), message: e.to_string() };
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load_code(path: &Path) -> Result<MarkedGaussCode, CliError> {
    parse_code(&read(path)?).map_err(|error| CliError::Parse { path: path.display().to_string(), error })
}

fn load_labeled(path: &Path) -> Result<LabeledDiagram, CliError> {
    compute_labels(&load_code(path)?).map_err(module)
}

fn max_label(d: &LabeledDiagram) -> i64 {
    d.position_labels.iter().flatten().map(|l| l.abs()).max().unwrap_or(0)
}

fn load_spec(s: &SpecSource, fallback_window: i64) -> Result<Option<Specialization>, CliError> {
    if let Some(w) = s.window {
        if w < 0 {
            return Err(CliError::Param(format!("window must be nonnegative, got {}", w)));
        }
    }
    match (&s.spec, s.kauffman) {
        (Some(p), _) => Specialization::load(p).map(Some).map_err(module),
        (None, true) => Ok(Some(Specialization::kauffman(s.window.unwrap_or(fallback_window)))),
        (None, false) => Ok(None),
    }
}

fn symbol_text(s: &Symbol) -> String {
    crate::text::format_component(std::slice::from_ref(s), usize::MAX)
}

/// Table of symbols with labels, crossings with labels, and degrees.
pub fn pretty_labels(d: &LabeledDiagram) -> String {
    let mut out = String::new();
    for (c, seq) in d.code.components.iter().enumerate() {
        writeln!(out, "component {}  degree {}", c, d.degrees[c]).unwrap();
        if seq.is_empty() {
            writeln!(out, "  (no symbols)  label 0").unwrap();
        }
        for i in d.code.traversal(c) {
            let base = if i == d.code.base_points[c] { "*" } else { " " };
            writeln!(out, "  {}{:<3} {:<5} label {}", base, i, symbol_text(&seq[i]), d.position_labels[c][i]).unwrap();
        }
        let arcs: Vec<String> = d.arc_labels[c].iter().map(|a| a.to_string()).collect();
        writeln!(out, "  arc labels: {}", arcs.join(" ")).unwrap();
    }
    let k = d.label_modulus();
    if !d.crossing_labels.is_empty() {
        let extra = if k != 0 { format!("  mod {}", k) } else { String::new() };
        writeln!(out, "crossing  label  under  over  sign{}", extra).unwrap();
        let crossings = d.code.crossings();
        for (id, &l) in &d.crossing_labels {
            let (u, o) = d.crossing_arc_labels(*id).expect("known crossing");
            write!(out, "c{:<8} {:<6} {:<6} {:<5} {}", id, l, u, o, crossings[id].sign.char()).unwrap();
            if k != 0 {
                write!(out, "     {}", l.rem_euclid(k)).unwrap();
            }
            out.push('\n');
        }
    }
    writeln!(out, "total degree {}", d.total_degree()).unwrap();
    out
}

fn lift_report(l: &CoveringLinkCode, fmt: Format) -> String {
    match fmt {
        Format::Human => l.to_text(),
        Format::Structured => {
            let mut w = RecordWriter::new("lift");
            w.push("window", &l.window);
            for c in &l.components {
                w.push("component", &json!({"sheet": c.sheet, "base_component": c.base_component, "code": crate::text::format_component(&c.symbols, 0)}));
            }
            for c in &l.crossings {
                w.push("crossing", c);
            }
            for b in &l.boundary {
                w.push("boundary", b);
            }
            w.finish()
        }
    }
}

fn structures(src: &QuandleSource) -> Result<Vec<CertifiedQuandle>, CliError> {
    if let Some(p) = &src.quandle {
        let qd: LabeledQuandle = serde_json::from_str(&read(p)?).map_err(module)?;
        let f = quandle::certify(&qd);
        if !f.is_empty() {
            return Err(CliError::Module(format!("{}: structure fails {} axiom instances, first {:?}", p.display(), f.len(), f[0])));
        }
        return Ok(vec![CertifiedQuandle::new(qd).expect("certified")]);
    }
    let (Some(q), Some(n)) = (src.q, src.n) else {
        return Err(CliError::Param("give --quandle FILE or --q and --n".into()));
    };
    Ok(search(q, n, src.budget)?.structures)
}

fn search(q: usize, n: usize, budget: u64) -> Result<quandle::SearchOutcome, CliError> {
    if !(1..=8).contains(&q) || !(1..=8).contains(&n) {
        return Err(CliError::Param("need 1 <= q <= 8 and 1 <= n <= 8".into()));
    }
    match std::env::var_os(CACHE_DIR_VAR) {
        Some(dir) => quandle::search_cached(q, n, budget, Path::new(&dir)).map_err(module),
        None => Ok(quandle::search(q, n, budget)),
    }
}

fn fmt_poly(s: &Specialization, p: &Laurent) -> String {
    s.fmt_laurent(p)
}

/// Runs one job.
pub fn run(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let fmt = cfg.format;
    let name = cfg.command.name();
    let mut w = RecordWriter::new(name);
    let mut h = String::new();
    let mut status = 0;
    match &cfg.command {
        Command::Validate { input } => {
            let code = load_code(input)?;
            let v = code.validate();
            status = if v.is_empty() { 0 } else { 1 };
            w.push("validation", &json!({"valid": v.is_empty(), "violations": v.iter().map(|x| x.to_string()).collect::<Vec<_>>()}));
            if v.is_empty() {
                writeln!(h, "valid").unwrap();
            }
            for x in &v {
                writeln!(h, "{}", x).unwrap();
            }
        }
        Command::Label { input } => {
            let d = load_labeled(input)?;
            w.push("labels", &d);
            let k = d.label_modulus();
            if k != 0 {
                let reduced: std::collections::BTreeMap<_, _> = d.crossing_labels.iter().map(|(id, l)| (id, l.rem_euclid(k))).collect();
                w.push("labels_mod", &json!({"modulus": k, "crossing_labels": reduced}));
            }
            h = pretty_labels(&d);
        }
        Command::Degree { input } => {
            let d = load_labeled(input)?;
            for (c, deg) in d.degrees.iter().enumerate() {
                w.push("degree", &json!({"component": c, "degree": deg}));
            }
            w.push("total", &json!({"degree": d.total_degree()}));
            if d.degrees.len() == 1 {
                writeln!(h, "{}", d.degrees[0]).unwrap();
            } else {
                for (c, deg) in d.degrees.iter().enumerate() {
                    writeln!(h, "component {}: {}", c, deg).unwrap();
                }
                writeln!(h, "total: {}", d.total_degree()).unwrap();
            }
        }
        Command::Lift { input, from, to, k } => {
            let d = load_labeled(input)?;
            let l = match (from, to, k) {
                (Some(a), Some(b), None) => lift_degree0(&d, *a, *b),
                (None, None, Some(k)) => lift_degreek(&d, *k),
                _ => return Err(CliError::Param("give --from and --to, or --k".into())),
            }
            .map_err(module)?;
            return finish(cfg, lift_report(&l, fmt), 0);
        }
        Command::Colorings { input, source } => {
            let d = load_labeled(input)?;
            for s in structures(source)? {
                let count = count_colorings(&d, &s);
                let value = match &count {
                    Ok(c) => json!({"structure": s.get(), "colorings": c}),
                    Err(e) => json!({"structure": s.get(), "error": e.to_string()}),
                };
                w.push("colorings", &value);
                match count {
                    Ok(c) => writeln!(h, "{}  S={:?}  colorings {}", serde_json::to_string(&s.get().circ).unwrap(), s.s, c),
                    Err(e) => writeln!(h, "{}  S={:?}  {}", serde_json::to_string(&s.get().circ).unwrap(), s.s, e),
                }
                .unwrap();
            }
        }
        Command::QuandleSearch { q, n, budget } => {
            let r = search(*q, *n, *budget)?;
            w.push("search", &json!({"q": q, "n": n, "budget": budget, "complete": r.complete, "nodes": r.nodes, "count": r.structures.len()}));
            for s in &r.structures {
                w.push("structure", s);
            }
            writeln!(h, "q={} n={} structures={} complete={} nodes={}", q, n, r.structures.len(), r.complete, r.nodes).unwrap();
            for s in &r.structures {
                writeln!(h, "{}", serde_json::to_string(s).unwrap()).unwrap();
            }
        }
        Command::Bracket { input, spec } => {
            let d = load_labeled(input)?;
            let p = bracket::state_sum(&d);
            w.push("bracket", &p.records());
            writeln!(h, "{}", p).unwrap();
            if let Some(s) = load_spec(spec, max_label(&d))? {
                let v = bracket::evaluate(&p, &s).map_err(module)?;
                w.push("value", &json!({"variable": s.variable, "terms": v.terms().collect::<Vec<_>>(), "text": fmt_poly(&s, &v)}));
                writeln!(h, "value: {}", fmt_poly(&s, &v)).unwrap();
            }
        }
        Command::CheckRelations { spec } => {
            let s = load_spec(spec, 2)?.ok_or_else(|| CliError::Param("give --spec FILE or --kauffman".into()))?;
            let r = bracket::check_relations(&s).map_err(module)?;
            status = if r.families_1_2_hold() { 0 } else { 1 };
            w.push("relations", &r);
            writeln!(h, "window [-{}, {}]", r.window, r.window).unwrap();
            for (fam, fails) in [(1, &r.family1), (2, &r.family2)] {
                writeln!(h, "family {}: {}", fam, if fails.is_empty() { "satisfied".to_string() } else { format!("{} failing instances", fails.len()) }).unwrap();
                for f in fails.iter().take(20) {
                    writeln!(h, "  {:?}  residual {}{}", f.indices, fmt_poly(&s, &f.residual), if f.cleared { " (cleared)" } else { "" }).unwrap();
                }
            }
            match &r.family3 {
                Family3::Checked { failures } => {
                    writeln!(h, "family 3: {}", if failures.is_empty() { "satisfied".into() } else { format!("{} failing instances", failures.len()) }).unwrap();
                }
                Family3::Solved { solutions } => {
                    writeln!(h, "family 3 (C, D solved per (a, b)):").unwrap();
                    for ((a, b), sol) in solutions {
                        let text = match sol {
                            bracket::Solve::Solved { c, d } => format!("C = {}, D = {}", fmt_poly(&s, c), fmt_poly(&s, d)),
                            other => format!("{:?}", other).to_lowercase(),
                        };
                        writeln!(h, "  ({}, {}): {}", a, b, text).unwrap();
                    }
                }
            }
        }
        Command::UnknotBound { input } => {
            let code = load_code(input)?;
            let r = unknotting_report(&code).map_err(module)?;
            w.push("unknotting", &json!({
                "bound": r.total,
                "base_point": r.base_point,
                "target_gap": r.target_gap,
                "phase1_changes": r.phase1_changes,
                "phase2_changes": r.phase2_changes,
                "final_code": format_code(&r.final_code),
            }));
            writeln!(h, "upper bound {}", r.total).unwrap();
            writeln!(h, "base point {}, marks collected at gap {}", r.base_point, r.target_gap).unwrap();
            writeln!(h, "phase 1 changes: {:?}", r.phase1_changes).unwrap();
            writeln!(h, "phase 2 changes: {:?}", r.phase2_changes).unwrap();
            write!(h, "final code:\n{}", format_code(&r.final_code)).unwrap();
        }
        Command::MovesApply { input, moves } => {
            let mut code = load_code(input)?;
            let sites: Vec<MoveSite> = serde_json::from_str(&read(moves)?).map_err(|e| CliError::Param(format!("{}: {}", moves.display(), e)))?;
            for (k, site) in sites.iter().enumerate() {
                let t = apply(&code, site).map_err(|e| CliError::Module(format!("move {} ({}): {}", k, site, e)))?;
                w.push("move", &json!({"site": t.site, "relation": t.relation, "holds": t.relation.holds(), "label_delta": t.label_delta, "after": format_code(&t.after)}));
                writeln!(h, "{}  {:?}", site, t.relation).unwrap();
                code = t.after;
            }
            write!(h, "{}", format_code(&code)).unwrap();
        }
        Command::Equiv { a, b, max_symbols, max_states } => {
            let (ca, cb) = (load_code(a)?, load_code(b)?);
            let ms = max_symbols.unwrap_or((ca.num_symbols().max(cb.num_symbols()) + 4) as i64);
            let r = equivalent_bounded(&ca, &cb, ms, *max_states).map_err(module)?;
            w.push("equivalence", &r);
            match &r {
                Equivalence::Equivalent { certificate, states } => {
                    writeln!(h, "equivalent: {} moves, {} states", certificate.len(), states).unwrap();
                    for s in &certificate.steps {
                        writeln!(h, "  {}", s.site).unwrap();
                    }
                }
                Equivalence::NotFound { states, degree_mismatch: true } => {
                    writeln!(h, "not equivalent: degrees differ ({} states)", states).unwrap()
                }
                Equivalence::NotFound { states, .. } => writeln!(h, "not found within budget ({} states)", states).unwrap(),
            }
        }
        Command::Sample { count, max_strands, max_crossings, marks } => {
            if *max_strands == 0 {
                return Err(CliError::Param("--max-strands must be positive".into()));
            }
            let mut rng = rand::rngs::StdRng::seed_from_u64(cfg.seed);
            for _ in 0..*count {
                let c = random_planar_knot(&mut rng, *max_strands, *max_crossings, *marks);
                let text = format_code(&c);
                w.push("code", &text);
                h.push_str(&text);
            }
        }
    }
    let text = match fmt {
        Format::Human => h,
        Format::Structured => w.finish(),
    };
    finish(cfg, text, status)
}

fn finish(cfg: &JobConfig, text: String, status: i32) -> Result<Outcome, CliError> {
    if let Some(p) = &cfg.output {
        std::fs::write(p, &text).map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
        return Ok(Outcome { text: String::new(), status });
    }
    Ok(Outcome { text, status })
}
