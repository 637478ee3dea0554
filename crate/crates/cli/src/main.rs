//! Workbench binary: builds presentations, verifies Hopf structure and the
//! copy/wreath dictionaries, tabulates fusion rules, evaluates the Haar
//! state, brute-forces classical points, and persists completed rewrite
//! systems. Exit code 0 means success, 1 a failed verification, 2 a usage
//! or input error.

mod expr;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use freewreath::fusion::{all_labels, commutativity_check, o2_table, tensor_decompose};
use freewreath::graphs::{classical_automorphisms, classical_points, Graph};
use freewreath::groups::{GroupSpec, GroupTable};
use freewreath::hopf_verify::{verify_presentation, CheckReport, HopfReport};
use freewreath::presentations::{
    a_n_g, free_wreath, graph_aut, graph_aut_combined, group_algebra, magic_unitary, AnGVariant,
    GraphVariant, Presentation, PresentationDoc,
};
use freewreath::rewrite::{
    complete, orient, Bounds, BoundsOverride, RewriteSystem, RewriteSystemDoc, Verdict,
};
use freewreath::wreath_iso::{verify_group_iso, verify_iso};

#[derive(Parser)]
#[command(name = "freewreath", version, about = "Free wreath product workbench")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Include rule lists and reduction-trace certificates in the output.
    #[arg(long, global = true)]
    trace: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation and emit its serialized form.
    Present {
        #[command(flatten)]
        builder: BuilderArgs,
    },
    /// Free wreath product of a base presentation by the magic n x n algebra.
    ///
    /// The base comes from --graph (its combined quantum symmetry algebra)
    /// or from --group (its group algebra).
    Wreath {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Fusion table, commutativity verdict, and (for order-two groups) the
    /// O(2) comparison.
    Fusion {
        /// Group: z2 | z3 | z | zp:P | table:FILE.
        #[arg(long)]
        group: String,
        /// Largest reduced-word length to tabulate.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Evaluate the Haar state on a model expression such as
    /// "chi(1:1 2:1) * star(chi(1:1 2:1))".
    Haar {
        /// Group: z2 | z3 | z | zp:P | table:FILE.
        #[arg(long)]
        group: String,
        expression: String,
    },
    /// Verify the comultiplication, counit, and antipode of a presentation
    /// by bounded ideal membership.
    VerifyHopf {
        #[command(flatten)]
        builder: BuilderArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Verify the dictionary between copies and the free wreath product,
    /// for a graph (--graph) or a finite group (--group).
    VerifyIso {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Brute-force classical automorphisms of a graph and compare them with
    /// the zero-one points of its quantum symmetry presentation.
    Classical {
        /// Graph: path to an edge-list file, or inline text with ';' breaks.
        #[arg(long)]
        graph: String,
        /// Which relation family to use for the zero-one points.
        #[arg(long, value_enum, default_value_t = Variant::Combined)]
        variant: Variant,
    },
    /// Complete a presentation's rewrite system and optionally persist it;
    /// an existing output file with a matching content hash is reused.
    Complete {
        #[command(flatten)]
        builder: BuilderArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Where to store the completed system.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Group: z2 | z3 | z | zp:P | table:FILE.
    #[arg(long)]
    group: Option<String>,

    /// Graph: path to an edge-list file, or inline text with ';' breaks.
    #[arg(long)]
    graph: Option<String>,

    /// Matrix size or number of copies.
    #[arg(long, default_value_t = 2)]
    n: usize,

    /// Relation family for graph presentations.
    #[arg(long, value_enum, default_value_t = Variant::Combined)]
    variant: Variant,
}

#[derive(Args)]
struct BuilderArgs {
    /// Presentation family.
    #[arg(long, value_enum, default_value_t = Builder::Magic)]
    builder: Builder,

    #[command(flatten)]
    input: InputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    /// Magic unitary on an n x n grid.
    Magic,
    /// Group algebra of a finite group.
    GroupAlgebra,
    /// Grid algebra over a finite group, element-indexed generators.
    AnG,
    /// Grid algebra over a cyclic group or Z, one generator per cell.
    AnGSpecialized,
    /// Quantum symmetry algebra of a graph.
    GraphAut,
    /// Free wreath product of the graph or group base by the magic algebra.
    Wreath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Standard,
    Prime,
    Combined,
}

#[derive(Args)]
struct BoundArgs {
    /// Completion degree cap (overrides FREEWREATH_MAX_DEGREE and the
    /// presentation-derived default).
    #[arg(long)]
    max_degree: Option<usize>,

    /// Completion rule-count cap (overrides FREEWREATH_MAX_RULES).
    #[arg(long)]
    max_rules: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(passed) => {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Present { builder } => {
            let p = build_presentation(builder)?;
            emit_presentation(&cli, &p)?;
            Ok(true)
        }
        Command::Wreath { input } => {
            let p = free_wreath(&base_presentation(input)?, input.n)?;
            emit_presentation(&cli, &p)?;
            Ok(true)
        }
        Command::Fusion { group, max_len } => run_fusion(&cli, &parse_group(group)?, *max_len),
        Command::Haar { group, expression } => run_haar(&cli, &parse_group(group)?, expression),
        Command::VerifyHopf { builder, bounds } => {
            let p = build_presentation(builder)?;
            run_verify_hopf(&cli, &p, bounds)
        }
        Command::VerifyIso { input, bounds } => run_verify_iso(&cli, input, bounds),
        Command::Classical { graph, variant } => run_classical(&cli, graph, *variant),
        Command::Complete {
            builder,
            bounds,
            out,
        } => {
            let p = build_presentation(builder)?;
            run_complete(&cli, &p, bounds, out.as_deref())
        }
    }
}

fn parse_group(s: &str) -> Result<GroupSpec> {
    match s {
        "z2" => Ok(GroupSpec::Cyclic(2)),
        "z3" => Ok(GroupSpec::Cyclic(3)),
        "z" => Ok(GroupSpec::InfiniteCyclic),
        _ => {
            if let Some(p) = s.strip_prefix("zp:") {
                let p: u32 = p.parse().context("order in zp:P must be a number")?;
                return Ok(GroupSpec::cyclic(p)?);
            }
            if let Some(path) = s.strip_prefix("table:") {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading group table {path}"))?;
                let doc: GroupTableDoc = serde_json::from_str(&text)
                    .with_context(|| format!("parsing group table {path}"))?;
                let table = GroupTable::new(&doc.name, doc.names, doc.table)?;
                return Ok(GroupSpec::Table(Arc::new(table)));
            }
            bail!("unknown group {s:?} (expected z2, z3, z, zp:P, or table:FILE)")
        }
    }
}

/// JSON form of a finite group: element names and the multiplication table
/// as indices into them.
#[derive(Deserialize)]
struct GroupTableDoc {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

fn parse_graph(s: &str) -> Result<Graph> {
    let text = if s.contains(';') {
        s.replace(';', "\n")
    } else {
        fs::read_to_string(s).with_context(|| format!("reading graph {s}"))?
    };
    Ok(Graph::parse(&text)?)
}

fn require_group(input: &InputArgs) -> Result<GroupSpec> {
    match &input.group {
        Some(g) => parse_group(g),
        None => bail!("this command needs --group"),
    }
}

fn graph_presentation(g: &Graph, variant: Variant) -> Result<Presentation> {
    Ok(match variant {
        Variant::Standard => graph_aut(g, GraphVariant::Standard)?,
        Variant::Prime => graph_aut(g, GraphVariant::Prime)?,
        Variant::Combined => graph_aut_combined(g)?,
    })
}

fn base_presentation(input: &InputArgs) -> Result<Presentation> {
    if let Some(graph) = &input.graph {
        graph_presentation(&parse_graph(graph)?, input.variant)
    } else {
        Ok(group_algebra(&require_group(input)?)?)
    }
}

fn build_presentation(args: &BuilderArgs) -> Result<Presentation> {
    let input = &args.input;
    Ok(match args.builder {
        Builder::Magic => magic_unitary(input.n)?,
        Builder::GroupAlgebra => group_algebra(&require_group(input)?)?,
        Builder::AnG => a_n_g(&require_group(input)?, input.n, AnGVariant::Finite)?,
        Builder::AnGSpecialized => a_n_g(&require_group(input)?, input.n, AnGVariant::Specialized)?,
        Builder::GraphAut => {
            let graph = input
                .graph
                .as_deref()
                .ok_or_else(|| anyhow::anyhow!("--builder graph-aut needs --graph"))?;
            graph_presentation(&parse_graph(graph)?, input.variant)?
        }
        Builder::Wreath => free_wreath(&base_presentation(input)?, input.n)?,
    })
}

fn env_bound(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(v) => {
            let parsed = v
                .parse()
                .with_context(|| format!("{name} must be a number, got {v:?}"))?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(None),
    }
}

/// Flag beats environment beats the presentation-derived default.
fn resolve_bounds(rs: &RewriteSystem, args: &BoundArgs) -> Result<Bounds> {
    let mut bounds = rs.default_bounds();
    if let Some(d) = args.max_degree.or(env_bound("FREEWREATH_MAX_DEGREE")?) {
        bounds.max_degree = d;
    }
    if let Some(r) = args.max_rules.or(env_bound("FREEWREATH_MAX_RULES")?) {
        bounds.max_rules = r;
    }
    Ok(bounds)
}

fn complete_with(p: &Presentation, args: &BoundArgs) -> Result<(RewriteSystem, Bounds)> {
    let rs = orient(p)?;
    let bounds = resolve_bounds(&rs, args)?;
    Ok((complete(&rs, bounds)?, bounds))
}

fn emit<T: Serialize>(cli: &Cli, payload: &T, text: &str) -> Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(payload)?);
    } else {
        print!("{text}");
    }
    Ok(())
}

fn emit_presentation(cli: &Cli, p: &Presentation) -> Result<()> {
    let doc = p.to_doc();
    let mut text = String::new();
    let _ = writeln!(text, "presentation: {}", doc.label);
    let _ = writeln!(text, "generators ({}):", doc.generators.len());
    for g in &doc.generators {
        let star = if g.selfadjoint { " (selfadjoint)" } else { "" };
        let idx: Vec<String> = g.indices.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(text, "  {}({}){}", g.name, idx.join(","), star);
    }
    let _ = writeln!(text, "relations ({}):", doc.relations.len());
    for r in &doc.relations {
        let _ = writeln!(text, "  {r} = 0");
    }
    match &doc.hopf {
        Some(h) => {
            let _ = writeln!(text, "hopf structure:");
            for (g, d) in &h.delta {
                let _ = writeln!(text, "  delta {g} = {d}");
            }
            for (g, c) in &h.counit {
                let _ = writeln!(text, "  counit {g} = {c}");
            }
            for (g, s) in &h.antipode {
                let _ = writeln!(text, "  antipode {g} = {s}");
            }
        }
        None => {
            let _ = writeln!(text, "hopf structure: none");
        }
    }
    emit(cli, &doc, &text)
}

#[derive(Serialize)]
struct FusionRowOut {
    left: String,
    right: String,
    decomposition: String,
}

#[derive(Serialize)]
struct O2RowOut {
    left: String,
    right: String,
    product: String,
    expected: String,
    matches: bool,
}

#[derive(Serialize)]
struct O2Out {
    passed: bool,
    rows: Vec<O2RowOut>,
}

#[derive(Serialize)]
struct FusionOut {
    group: String,
    max_len: usize,
    commutative: bool,
    commutativity: String,
    table: Vec<FusionRowOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    o2: Option<O2Out>,
}

fn run_fusion(cli: &Cli, group: &GroupSpec, max_len: usize) -> Result<bool> {
    let labels = all_labels(group, max_len)?;
    let mut table = Vec::new();
    for a in &labels {
        for b in &labels {
            table.push(FusionRowOut {
                left: a.render(),
                right: b.render(),
                decomposition: tensor_decompose(a, b)?.render(),
            });
        }
    }
    let commutativity = commutativity_check(group, max_len)?;
    let o2 = if group.order() == Some(2) {
        let report = o2_table(group, max_len)?;
        Some(O2Out {
            passed: report.passed(),
            rows: report
                .rows
                .into_iter()
                .map(|r| O2RowOut {
                    left: r.left,
                    right: r.right,
                    product: r.product,
                    expected: r.expected,
                    matches: r.matches,
                })
                .collect(),
        })
    } else {
        None
    };

    let payload = FusionOut {
        group: group.describe(),
        max_len,
        commutative: commutativity.is_commutative(),
        commutativity: commutativity.render(),
        table,
        o2,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "group: {}, labels up to length {max_len}",
        payload.group
    );
    let _ = writeln!(text, "commutativity: {}", payload.commutativity);
    let _ = writeln!(text, "fusion table ({} rows):", payload.table.len());
    for row in &payload.table {
        let _ = writeln!(
            text,
            "  {} (x) {} = {}",
            row.left, row.right, row.decomposition
        );
    }
    if let Some(o2) = &payload.o2 {
        let _ = writeln!(
            text,
            "O(2) comparison: {} rows, {}",
            o2.rows.len(),
            if o2.passed { "all match" } else { "MISMATCH" }
        );
        for row in &o2.rows {
            let _ = writeln!(
                text,
                "  {} (x) {} = {} expected {} {}",
                row.left,
                row.right,
                row.product,
                row.expected,
                if row.matches { "ok" } else { "MISMATCH" }
            );
        }
    }
    let passed = payload.o2.as_ref().is_none_or(|o| o.passed);
    emit(cli, &payload, &text)?;
    Ok(passed)
}

#[derive(Serialize)]
struct HaarOut {
    group: String,
    expression: String,
    value: String,
}

fn run_haar(cli: &Cli, group: &GroupSpec, expression: &str) -> Result<bool> {
    let element = expr::parse(group, expression)?;
    let payload = HaarOut {
        group: group.describe(),
        expression: expression.to_string(),
        value: element.haar().to_string(),
    };
    let text = format!(
        "h({}) = {} over {}\n",
        payload.expression, payload.value, payload.group
    );
    emit(cli, &payload, &text)?;
    Ok(true)
}

fn render_check_report(text: &mut String, report: &CheckReport, trace: bool) {
    let zero = report
        .items
        .iter()
        .filter(|i| i.verdict == Verdict::Zero)
        .count();
    let _ = writeln!(
        text,
        "{}: {}/{} Zero",
        report.label,
        zero,
        report.items.len()
    );
    for item in &report.items {
        let verdict = match item.verdict {
            Verdict::Zero => "zero",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        let _ = writeln!(text, "  {verdict} {}: {}", item.check, item.subject);
        if let Some(residual) = &item.residual {
            let _ = writeln!(text, "    residual: {residual}");
        }
        if trace {
            if let Some(t) = &item.trace {
                for line in t.lines() {
                    let _ = writeln!(text, "    | {line}");
                }
            }
        }
    }
}

fn scrub_report(report: &mut CheckReport) {
    for item in &mut report.items {
        item.trace = None;
    }
}

fn run_verify_hopf(cli: &Cli, p: &Presentation, bounds: &BoundArgs) -> Result<bool> {
    let rs = orient(p)?;
    let resolved = resolve_bounds(&rs, bounds)?;
    let mut report = verify_presentation(p, Some(resolved))?;
    if !cli.trace {
        scrub_report(&mut report.well_defined);
        scrub_report(&mut report.axioms);
    }
    let text = render_hopf_report(&report, cli.trace);
    emit(cli, &report, &text)?;
    Ok(report.passed())
}

fn render_hopf_report(report: &HopfReport, trace: bool) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "presentation: {}", report.label);
    let _ = writeln!(
        text,
        "completion: degree {}, saturated: {}",
        report.completion_degree, report.saturated
    );
    render_check_report(&mut text, &report.well_defined, trace);
    render_check_report(&mut text, &report.axioms, trace);
    let _ = writeln!(
        text,
        "result: {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    text
}

fn run_verify_iso(cli: &Cli, input: &InputArgs, bounds: &BoundArgs) -> Result<bool> {
    // Unset caps fall back to each side's own defaults inside the verifier.
    let over = BoundsOverride {
        max_degree: bounds.max_degree.or(env_bound("FREEWREATH_MAX_DEGREE")?),
        max_rules: bounds.max_rules.or(env_bound("FREEWREATH_MAX_RULES")?),
    };
    let mut report = if let Some(graph) = &input.graph {
        verify_iso(&parse_graph(graph)?, input.n, over)?
    } else if input.group.is_some() {
        verify_group_iso(&require_group(input)?, input.n, over)?
    } else {
        bail!("verify-iso needs --graph or --group");
    };
    if !cli.trace {
        scrub_report(&mut report.phi);
        scrub_report(&mut report.psi);
        scrub_report(&mut report.inverse);
        if let Some(l) = &mut report.lemmas {
            scrub_report(l);
        }
        scrub_report(&mut report.coaction);
    }
    let mut text = String::new();
    let _ = writeln!(text, "dictionary: {}", report.label);
    let _ = writeln!(
        text,
        "source completion: degree {}, saturated: {}",
        report.source_completion_degree, report.source_saturated
    );
    let _ = writeln!(
        text,
        "target completion: degree {}, saturated: {}",
        report.target_completion_degree, report.target_saturated
    );
    for section in report.reports() {
        render_check_report(&mut text, section, cli.trace);
    }
    let _ = writeln!(
        text,
        "result: {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    emit(cli, &report, &text)?;
    Ok(report.passed())
}

#[derive(Serialize)]
struct ClassicalOut {
    graph: String,
    presentation: String,
    automorphism_count: usize,
    automorphisms: Vec<String>,
    points_match: bool,
}

fn run_classical(cli: &Cli, graph: &str, variant: Variant) -> Result<bool> {
    let g = parse_graph(graph)?;
    let p = graph_presentation(&g, variant)?;
    let automorphisms = classical_automorphisms(&g)?;
    let points = classical_points(&p, &g)?;
    let payload = ClassicalOut {
        graph: g.render().trim_end().replace('\n', "; "),
        presentation: p.label.clone(),
        automorphism_count: automorphisms.len(),
        automorphisms: automorphisms.iter().map(|a| a.render()).collect(),
        points_match: points == automorphisms,
    };
    let mut text = String::new();
    let _ = writeln!(text, "graph: {}", payload.graph);
    let _ = writeln!(text, "presentation: {}", payload.presentation);
    let _ = writeln!(text, "automorphisms ({}):", payload.automorphism_count);
    for a in &payload.automorphisms {
        let _ = writeln!(text, "  {a}");
    }
    let _ = writeln!(
        text,
        "zero-one points match automorphisms: {}",
        payload.points_match
    );
    emit(cli, &payload, &text)?;
    Ok(payload.points_match)
}

/// On-disk form of a persisted completion: the presentation, a hash binding
/// the rules to it, and the rules themselves.
#[derive(Serialize, Deserialize)]
struct StoredCompletion {
    presentation: PresentationDoc,
    presentation_sha256: String,
    system: RewriteSystemDoc,
}

#[derive(Serialize)]
struct CompleteOut {
    label: String,
    presentation_sha256: String,
    rules: usize,
    completion_degree: usize,
    saturated: bool,
    cached: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule_list: Option<Vec<String>>,
}

fn run_complete(
    cli: &Cli,
    p: &Presentation,
    bounds: &BoundArgs,
    out: Option<&std::path::Path>,
) -> Result<bool> {
    let hash = hex_digest(&p.to_json());
    let cached = out.and_then(|path| {
        let text = fs::read_to_string(path).ok()?;
        let stored: StoredCompletion = serde_json::from_str(&text).ok()?;
        (stored.presentation_sha256 == hash).then_some(stored.system)
    });
    let (system, was_cached) = match cached {
        Some(doc) => (doc, true),
        None => {
            let (rs, _) = complete_with(p, bounds)?;
            let doc = rs.to_doc();
            if let Some(path) = out {
                let stored = StoredCompletion {
                    presentation: p.to_doc(),
                    presentation_sha256: hash.clone(),
                    system: doc.clone(),
                };
                fs::write(path, serde_json::to_string_pretty(&stored)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            (doc, false)
        }
    };

    let payload = CompleteOut {
        label: p.label.clone(),
        presentation_sha256: hash,
        rules: system.rules.len(),
        completion_degree: system.completion_degree,
        saturated: system.saturated,
        cached: was_cached,
        out: out.map(|p| p.display().to_string()),
        rule_list: cli.trace.then(|| {
            system
                .rules
                .iter()
                .map(|r| format!("{} -> {}", r.lhs, r.rhs))
                .collect()
        }),
    };
    let mut text = String::new();
    let _ = writeln!(text, "presentation: {}", payload.label);
    let _ = writeln!(text, "sha256: {}", payload.presentation_sha256);
    let _ = writeln!(
        text,
        "rules: {}, degree {}, saturated: {}",
        payload.rules, payload.completion_degree, payload.saturated
    );
    let _ = writeln!(
        text,
        "cache: {}",
        match (&payload.out, payload.cached) {
            (Some(path), true) => format!("reused {path}"),
            (Some(path), false) => format!("wrote {path}"),
            (None, _) => "not persisted".to_string(),
        }
    );
    if let Some(rules) = &payload.rule_list {
        let _ = writeln!(text, "rule list:");
        for r in rules {
            let _ = writeln!(text, "  {r}");
        }
    }
    emit(cli, &payload, &text)?;
    Ok(true)
}

fn hex_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
