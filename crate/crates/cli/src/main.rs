use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sphsys::catalog;
use sphsys::enumerate::{self, EnumerationQuery};
use sphsys::format::{format_roots, format_vector, parse_root_list, parse_systems, print_system};
use sphsys::quotient::{self, QuotientReport, SubsetKind};
use sphsys::rootkit::{RootSet, RootSystem};
use sphsys::structure::{self, Marker, ReductionNode, StepTag};
use sphsys::system::{self, ColorSet, ColorTable, SphericalSystem};

#[derive(Parser)]
#[command(
    name = "sphsys",
    version,
    about = "Exact combinatorics of spherical systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// System file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms; exits 1 when violated.
    Validate(Input),
    /// Rank, defect, verdicts and the color table.
    Info(Input),
    /// The color table with its pairing matrix.
    Colors(Input),
    /// Reports on every nonempty subset of colors.
    Quotients {
        #[command(flatten)]
        input: Input,
        /// Only (*)-distinguished subsets.
        #[arg(long)]
        star: bool,
        /// Only inclusion-minimal subsets of the selected kind.
        #[arg(long)]
        minimal: bool,
        /// Only homogeneous subsets.
        #[arg(long)]
        homogeneous: bool,
    },
    /// Quotient by a (*)-distinguished subset of colors.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<String>,
    },
    /// Localization in simple roots or in spherical roots.
    Localize {
        #[command(flatten)]
        input: Input,
        /// Simple roots to keep, e.g. `a1,a3`.
        #[arg(long, conflicts_with = "roots")]
        simple: Option<String>,
        /// 1-based positions of the spherical roots to keep.
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<usize>>,
    },
    /// Tails of the system.
    Tails(Input),
    /// Primitivity verdict; exits 1 when not primitive.
    Primitive(Input),
    /// Reduction to primitive systems.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Expand the whole tree instead of a single step.
        #[arg(long)]
        tree: bool,
    },
    /// All valid systems of a root system.
    Enumerate {
        /// Root system, e.g. `B3` or `A1xA2`.
        roots: String,
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        cuspidal: bool,
        #[arg(long)]
        reductive: bool,
        #[arg(long)]
        defect: Option<i64>,
        #[arg(long)]
        max_rank: Option<usize>,
        /// Print only the number of systems.
        #[arg(long)]
        count: bool,
        /// List distinguished subsets that are not (*)-distinguished.
        #[arg(long)]
        probe_star: bool,
        /// Identify systems exchanged by the Dynkin involution.
        #[arg(long)]
        mod_aut: bool,
        /// Stop after this many systems.
        #[arg(long)]
        limit: Option<usize>,
        /// Largest root system rank accepted.
        #[arg(long, default_value_t = enumerate::DEFAULT_RANK_CAP)]
        rank_cap: usize,
    },
    /// Lattice, weights and dimension of the center for a minimal homogeneous subset.
    Center {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<String>,
    },
    /// Weight monoid generators for a homogeneous subset.
    Monoid {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<String>,
    },
    /// Spherical roots of a root system, optionally those compatible with `--sp`.
    Catalog {
        roots: String,
        #[arg(long)]
        sp: Option<String>,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Bad input: unreadable file, syntax error, invalid system, bad option.
    Input(String),
}

type Outcome = Result<bool, Failure>;

fn input_err(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<SphericalSystem, Failure> {
    let text = read_input(&input.file)?;
    let mut systems = parse_systems(&text).map_err(input_err)?;
    if systems.len() != 1 {
        return Err(input_err(format!(
            "expected one system block, found {}",
            systems.len()
        )));
    }
    Ok(systems.remove(0))
}

/// Loads a system and insists that it satisfies the axioms.
fn load_valid(input: &Input) -> Result<(SphericalSystem, ColorTable), Failure> {
    let sys = load(input)?;
    let violations = system::validate(&sys);
    if let Some(v) = violations.first() {
        return Err(input_err(format!("invalid system: {v}")));
    }
    let table = system::build_colors(&sys).map_err(input_err)?;
    Ok((sys, table))
}

fn lookup(table: &ColorTable, names: &[String]) -> Result<ColorSet, Failure> {
    table
        .lookup(names.iter().map(String::as_str))
        .map_err(input_err)
}

struct Out {
    json: bool,
    buf: io::BufWriter<io::StdoutLock<'static>>,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(self.buf, "{}", s.as_ref());
    }

    fn value(&mut self, v: Value) {
        let text = serde_json::to_string_pretty(&v).expect("json values serialize");
        self.line(text);
    }
}

fn color_json(table: &ColorTable) -> Value {
    Value::Array(
        table
            .colors
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "kind": c.kind.to_string(),
                    "moved_by": c.moved_by.iter().map(RootSystem::root_name).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn color_lines(out: &mut Out, table: &ColorTable) {
    for c in &table.colors {
        let row: Vec<String> = c.row.iter().map(|x| format!("{x:>3}")).collect();
        out.line(format!(
            "  {:<6} {:<3} {:<10} [{}]",
            c.name,
            c.kind.to_string(),
            format_roots(c.moved_by),
            row.join("")
        ));
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_json(r: &QuotientReport) -> Value {
    json!({
        "colors": r.names,
        "flags": {
            "distinguished": r.distinguished,
            "star": r.star,
            "smooth": r.smooth,
            "homogeneous": r.homogeneous,
        },
        "witness": r.witness,
        "quotient": r.quotient.as_ref().map(print_system),
    })
}

fn report_line(r: &QuotientReport) -> String {
    let mut flags = Vec::new();
    for (on, name) in [
        (r.distinguished, "distinguished"),
        (r.star, "star"),
        (r.smooth, "smooth"),
        (r.homogeneous, "homogeneous"),
    ] {
        if on {
            flags.push(name);
        }
    }
    let mut s = format!("{{{}}}", r.names.join(","));
    if flags.is_empty() {
        s.push_str(" not distinguished");
    } else {
        s.push(' ');
        s.push_str(&flags.join(" "));
    }
    if let Some(w) = &r.witness {
        s.push_str(&format!(" witness {w:?}"));
    }
    if let Some(q) = &r.quotient {
        let sigma: Vec<String> = q.sigma().iter().map(format_vector).collect();
        s.push_str(&format!(
            " -> sp {} sigma {}",
            format_roots(q.sp()),
            if sigma.is_empty() {
                "-".into()
            } else {
                sigma.join(", ")
            }
        ));
    }
    s
}

fn marker_json(m: &Marker) -> Value {
    match m {
        Marker::Tail {
            root,
            shape,
            colors,
        } => json!({
            "tail": { "root": format_vector(root), "shape": shape.to_string(), "colors": colors }
        }),
        Marker::HigherDefect { colors, jump } => json!({
            "higher_defect": { "colors": colors, "jump": jump }
        }),
    }
}

fn marker_text(m: &Marker) -> String {
    match m {
        Marker::Tail {
            root,
            shape,
            colors,
        } => {
            format!(
                "tail {} {} {{{}}}",
                format_vector(root),
                shape,
                colors.join(",")
            )
        }
        Marker::HigherDefect { colors, jump } => {
            format!("higher-defect {{{}}} jump {}", colors.join(","), jump)
        }
    }
}

fn tag_json(tag: &StepTag) -> Value {
    match tag {
        StepTag::ParabolicInduction { s_prime } => json!({
            "step": tag.label(),
            "roots": s_prime.iter().map(RootSystem::root_name).collect::<Vec<_>>(),
        }),
        StepTag::FiberProduct { d1, d2, d3 } => {
            json!({ "step": tag.label(), "colors": [d1, d2, d3] })
        }
        StepTag::ProjectiveFibration { color } => json!({ "step": tag.label(), "colors": [color] }),
        StepTag::Primitive { markers } => json!({
            "step": tag.label(),
            "markers": markers.iter().map(marker_json).collect::<Vec<_>>(),
        }),
        StepTag::Closed | StepTag::Unreduced => json!({ "step": tag.label() }),
    }
}

fn tag_text(tag: &StepTag) -> String {
    match tag {
        StepTag::ParabolicInduction { s_prime } => {
            format!("{} {}", tag.label(), format_roots(*s_prime))
        }
        StepTag::FiberProduct { d1, d2, d3 } => format!(
            "{} {{{}}} {{{}}} {{{}}}",
            tag.label(),
            d1.join(","),
            d2.join(","),
            d3.join(",")
        ),
        StepTag::ProjectiveFibration { color } => format!("{} {color}", tag.label()),
        StepTag::Primitive { markers } if !markers.is_empty() => format!(
            "{} ({})",
            tag.label(),
            markers
                .iter()
                .map(marker_text)
                .collect::<Vec<_>>()
                .join("; ")
        ),
        _ => tag.label().to_string(),
    }
}

fn summary(sys: &SphericalSystem) -> String {
    let sigma: Vec<String> = sys.sigma().iter().map(format_vector).collect();
    format!(
        "{} sp {} sigma {}",
        sys.root_system(),
        format_roots(sys.sp()),
        if sigma.is_empty() {
            "-".to_string()
        } else {
            sigma.join(", ")
        }
    )
}

fn node_json(n: &ReductionNode) -> Value {
    json!({
        "system": print_system(&n.system),
        "tag": tag_json(&n.tag),
        "children": n.children.iter().map(node_json).collect::<Vec<_>>(),
    })
}

fn node_lines(out: &mut Out, n: &ReductionNode, depth: usize) {
    let pad = "  ".repeat(depth);
    out.line(format!(
        "{pad}- {}: {}",
        tag_text(&n.tag),
        summary(&n.system)
    ));
    for c in &n.children {
        node_lines(out, c, depth + 1);
    }
}

fn run(cli: Cli, out: &mut Out) -> Outcome {
    match cli.command {
        Command::Validate(input) => {
            let sys = load(&input)?;
            let v = system::validate(&sys);
            if out.json {
                out.value(json!({
                    "valid": v.is_empty(),
                    "violations": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }));
            } else if v.is_empty() {
                out.line("ok");
            } else {
                for x in &v {
                    out.line(format!("violation: {x}"));
                }
            }
            Ok(v.is_empty())
        }
        Command::Info(input) => {
            let (sys, table) = load_valid(&input)?;
            let defect = quotient::defect(&sys).map_err(input_err)?;
            let reductive = quotient::is_reductive(&sys).map_err(input_err)?;
            let prim = structure::is_primitive(&sys).map_err(input_err)?;
            let cuspidal = structure::is_cuspidal(&sys);
            let shared = enumerate::has_shared_colors(&sys);
            if out.json {
                out.value(json!({
                    "system": print_system(&sys),
                    "rank": sys.rank(),
                    "defect": defect,
                    "flags": {
                        "cuspidal": cuspidal,
                        "reductive": reductive.is_some(),
                        "primitive": prim.primitive,
                        "shared_colors": shared,
                    },
                    "colors": color_json(&table),
                    "matrix": table.matrix(),
                    "witness": reductive,
                }));
            } else {
                out.line(format!("roots      {}", sys.root_system()));
                out.line(format!("rank       {}", sys.rank()));
                out.line(format!("defect     {defect}"));
                out.line(format!("cuspidal   {}", yes(cuspidal)));
                match &reductive {
                    Some(w) => out.line(format!("reductive  yes (witness {w:?})")),
                    None => out.line("reductive  no"),
                }
                out.line(format!("primitive  {}", yes(prim.primitive)));
                if shared {
                    out.line("shared     yes");
                }
                out.line(format!("colors     {}", table.len()));
                color_lines(out, &table);
            }
            Ok(true)
        }
        Command::Colors(input) => {
            let (_, table) = load_valid(&input)?;
            if out.json {
                out.value(json!({ "colors": color_json(&table), "matrix": table.matrix() }));
            } else {
                color_lines(out, &table);
            }
            Ok(true)
        }
        Command::Quotients {
            input,
            star,
            minimal,
            homogeneous,
        } => {
            let (sys, table) = load_valid(&input)?;
            let reports: Vec<QuotientReport> = if minimal {
                let kind = if homogeneous {
                    SubsetKind::Homogeneous
                } else if star {
                    SubsetKind::Star
                } else {
                    SubsetKind::Distinguished
                };
                quotient::minimal_subsets_with(&sys, &table, kind)
                    .into_iter()
                    .map(|s| quotient::report_with(&sys, &table, s))
                    .collect()
            } else {
                quotient::all_reports_with(&sys, &table)
                    .into_iter()
                    .filter(|r| (!star || r.star) && (!homogeneous || r.homogeneous))
                    .collect()
            };
            if out.json {
                out.value(
                    json!({ "quotients": reports.iter().map(report_json).collect::<Vec<_>>() }),
                );
            } else {
                for r in &reports {
                    out.line(report_line(r));
                }
            }
            Ok(true)
        }
        Command::Quotient { input, colors } => {
            let (sys, table) = load_valid(&input)?;
            let set = lookup(&table, &colors)?;
            let q = quotient::quotient(&sys, set).map_err(input_err)?;
            if out.json {
                let r = quotient::report_with(&sys, &table, set);
                out.value(report_json(&r));
            } else {
                out.line(print_system(&q).trim_end());
            }
            Ok(true)
        }
        Command::Localize {
            input,
            simple,
            roots,
        } => {
            let (sys, _) = load_valid(&input)?;
            let local = match (simple, roots) {
                (Some(s), None) => {
                    let set = parse_root_list(&s, sys.root_system().rank(), 0)
                        .map_err(|e| input_err(e.message))?;
                    system::localize_simple(&sys, set)
                }
                (None, Some(r)) => {
                    if let Some(&bad) = r.iter().find(|&&j| j == 0 || j > sys.rank()) {
                        return Err(input_err(format!("no spherical root #{bad}")));
                    }
                    let keep: Vec<usize> = r.iter().map(|j| j - 1).collect();
                    system::localize_sigma(&sys, &keep)
                }
                _ => return Err(input_err("give exactly one of --simple or --roots")),
            };
            if out.json {
                out.value(json!({ "system": print_system(&local) }));
            } else {
                out.line(print_system(&local).trim_end());
            }
            Ok(true)
        }
        Command::Tails(input) => {
            let (sys, _) = load_valid(&input)?;
            let tails = structure::detect_tails(&sys).map_err(input_err)?;
            if out.json {
                let items: Vec<Value> = tails
                    .iter()
                    .map(|t| {
                        json!({
                            "root": format_vector(&t.root),
                            "shape": t.shape.to_string(),
                            "colors": t.names,
                            "quotient": print_system(&t.quotient),
                        })
                    })
                    .collect();
                out.value(json!({ "tails": items }));
            } else if tails.is_empty() {
                out.line("no tails");
            } else {
                for t in &tails {
                    out.line(format!(
                        "{} {} {{{}}}",
                        format_vector(&t.root),
                        t.shape,
                        t.names.join(",")
                    ));
                }
            }
            Ok(true)
        }
        Command::Primitive(input) => {
            let (sys, _) = load_valid(&input)?;
            let p = structure::is_primitive(&sys).map_err(input_err)?;
            if out.json {
                out.value(json!({
                    "primitive": p.primitive,
                    "flags": {
                        "cuspidal": p.cuspidal,
                        "projective": !p.projective.is_empty(),
                        "decomposable": p.decomposing_pair.is_some(),
                    },
                    "colors": p.projective,
                    "witness": p.decomposing_pair,
                    "markers": p.markers.iter().map(marker_json).collect::<Vec<_>>(),
                }));
            } else {
                let mut reasons = Vec::new();
                if !p.cuspidal {
                    reasons.push("not cuspidal".to_string());
                }
                if !p.projective.is_empty() {
                    reasons.push(format!("projective {}", p.projective.join(",")));
                }
                if let Some((a, b)) = &p.decomposing_pair {
                    reasons.push(format!(
                        "decomposed by {{{}}} {{{}}}",
                        a.join(","),
                        b.join(",")
                    ));
                }
                if p.primitive {
                    out.line("primitive");
                } else {
                    out.line(format!("not primitive: {}", reasons.join("; ")));
                }
                for m in &p.markers {
                    out.line(format!("  {}", marker_text(m)));
                }
            }
            Ok(p.primitive)
        }
        Command::Reduce { input, tree } => {
            let (sys, _) = load_valid(&input)?;
            let node = if tree {
                structure::reduction_tree(&sys).map_err(input_err)?
            } else {
                let step = structure::reduction_step(&sys).map_err(input_err)?;
                ReductionNode {
                    system: sys.clone(),
                    tag: step.tag,
                    children: step
                        .children
                        .into_iter()
                        .map(|c| ReductionNode {
                            system: c,
                            tag: StepTag::Unreduced,
                            children: Vec::new(),
                        })
                        .collect(),
                }
            };
            if out.json {
                out.value(node_json(&node));
            } else if tree {
                node_lines(out, &node, 0);
            } else {
                out.line(tag_text(&node.tag));
                for c in &node.children {
                    out.line(print_system(&c.system).trim_end());
                }
            }
            Ok(true)
        }
        Command::Enumerate {
            roots,
            primitive,
            cuspidal,
            reductive,
            defect,
            max_rank,
            count,
            probe_star,
            mod_aut,
            limit,
            rank_cap,
        } => {
            let rs = RootSystem::parse(&roots).map_err(input_err)?;
            let mut q = EnumerationQuery::new(rs);
            q.primitive = primitive;
            q.cuspidal = cuspidal;
            q.reductive = reductive;
            q.defect = defect;
            q.max_rank = max_rank;
            q.limit = limit;
            q.rank_cap = rank_cap;
            if probe_star {
                let hits = enumerate::probe_distinguished_not_star(&q).map_err(input_err)?;
                if out.json {
                    let items: Vec<Value> = hits
                        .iter()
                        .map(|(s, set)| {
                            let t =
                                system::build_colors(s).expect("enumerated systems have colors");
                            json!({ "system": print_system(s), "colors": t.names(*set) })
                        })
                        .collect();
                    out.value(json!({ "counterexamples": items }));
                } else if hits.is_empty() {
                    out.line("no counterexamples");
                } else {
                    for (s, set) in &hits {
                        let t = system::build_colors(s).expect("enumerated systems have colors");
                        out.line(format!(
                            "# distinguished, not (*): {{{}}}",
                            t.names(*set).join(",")
                        ));
                        out.line(print_system(s));
                    }
                }
                return Ok(true);
            }
            let mut seen = std::collections::HashSet::new();
            let mut n = 0usize;
            let mut first = true;
            let json_mode = out.json;
            if json_mode && !count {
                // Streamed by hand so large enumerations never sit in memory.
                out.line("{\"systems\": [");
            }
            let truncated = enumerate::enumerate_each(&q, |s| {
                let s = if mod_aut {
                    let c = enumerate::canonical_mod_aut(&s);
                    if !seen.insert(print_system(&c)) {
                        return true;
                    }
                    c
                } else {
                    s
                };
                n += 1;
                if count {
                    return true;
                }
                let shared = enumerate::has_shared_colors(&s);
                if json_mode {
                    let item = json!({
                        "system": print_system(&s),
                        "flags": { "shared_colors": shared },
                    });
                    let sep = if first { "" } else { "," };
                    out.line(format!("{sep}{item}"));
                } else {
                    if !first {
                        out.line("");
                    }
                    if shared {
                        out.line("# shared colors");
                    }
                    out.line(print_system(&s).trim_end());
                }
                first = false;
                true
            })
            .map_err(input_err)?;
            if json_mode {
                if count {
                    out.value(json!({ "count": n, "truncated": truncated }));
                } else {
                    out.line(format!("], \"truncated\": {truncated}}}"));
                }
            } else {
                if count {
                    out.line(n.to_string());
                }
                if truncated {
                    let _ = out.buf.flush();
                    eprintln!("sphsys: output truncated at {n} systems");
                }
            }
            Ok(true)
        }
        Command::Center { input, q } => {
            let (sys, table) = load_valid(&input)?;
            let set = lookup(&table, &q)?;
            let c = quotient::center_data(&sys, set).map_err(input_err)?;
            if out.json {
                out.value(json!({
                    "colors": table.names(set),
                    "n_basis": c.n_basis,
                    "lambda_weights": c.lambda_weights,
                    "dim_c": c.dim_c,
                }));
            } else {
                out.line(format!("colors  {{{}}}", table.names(set).join(",")));
                if c.n_basis.is_empty() {
                    out.line("lattice 0");
                }
                for (v, w) in c.n_basis.iter().zip(&c.lambda_weights) {
                    out.line(format!("lattice {v:?} weight {w:?}"));
                }
                out.line(format!("dim_c   {}", c.dim_c));
            }
            Ok(true)
        }
        Command::Monoid { input, q } => {
            let (sys, table) = load_valid(&input)?;
            let set = lookup(&table, &q)?;
            let gens = quotient::weight_monoid(&sys, set).map_err(input_err)?;
            if out.json {
                out.value(json!({
                    "colors": table.names(set),
                    "generators": gens.iter().map(format_vector).collect::<Vec<_>>(),
                }));
            } else {
                for g in &gens {
                    out.line(format_vector(g));
                }
            }
            Ok(true)
        }
        Command::Catalog { roots, sp } => {
            let rs = RootSystem::parse(&roots).map_err(input_err)?;
            match sp {
                Some(sp) => {
                    let set: RootSet =
                        parse_root_list(&sp, rs.rank(), 0).map_err(|e| input_err(e.message))?;
                    let roots = catalog::compatible_roots(&rs, set);
                    if out.json {
                        out.value(
                            json!({ "roots": roots.iter().map(format_vector).collect::<Vec<_>>() }),
                        );
                    } else {
                        for r in &roots {
                            out.line(format_vector(r));
                        }
                    }
                }
                None => {
                    let lines = catalog::describe(&rs);
                    if out.json {
                        out.value(json!({ "entries": lines }));
                    } else {
                        for l in &lines {
                            out.line(l);
                        }
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout: &'static io::Stdout = Box::leak(Box::new(io::stdout()));
    let mut out = Out {
        json: cli.format == OutputFormat::Json,
        buf: io::BufWriter::new(stdout.lock()),
    };
    let result = run(cli, &mut out);
    let _ = out.buf.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("sphsys: {msg}");
            ExitCode::from(2)
        }
    }
}
