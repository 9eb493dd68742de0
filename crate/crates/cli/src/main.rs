use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thompson_cantor::cantor_model::{box_count_estimate, check_genericity, hausdorff_dimension_central, Clause, Point, Verdict};
use thompson_cantor::format::*;
use thompson_cantor::nv_patterns::{stabilizer_rank, tangent_hull_type, NVElement};
use thompson_cantor::pl_action::{extend_multigerm, germ_compose, germ_extend, germ_maximal, stabilizer, PLMap};
use thompson_cantor::tree_calculus::GroupElement;
use thompson_cantor::{svg, Error, Ifs, Rational};

#[derive(Parser)]
#[command(name = "thompson-cantor", version, about = "Thompson-like groups acting on self-similar Cantor sets")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Primary input file.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// First operand.
    #[arg(long, global = true)]
    a: Option<PathBuf>,
    /// Second operand.
    #[arg(long, global = true)]
    b: Option<PathBuf>,
    /// Element file (alias of --file for element verbs).
    #[arg(long, global = true)]
    elem: Option<PathBuf>,
    /// Point file: an address, or a dust address for nv verbs.
    #[arg(long, global = true)]
    point: Option<PathBuf>,
    /// IFS file; defaults to the middle-thirds set where optional.
    #[arg(long, global = true)]
    ifs: Option<PathBuf>,
    /// Generation depth.
    #[arg(long, global = true, default_value_t = 3)]
    gen: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Group {
    /// Iterated function systems.
    Ifs {
        #[command(subcommand)]
        verb: IfsVerb,
    },
    /// Tree-pair group elements.
    Elem {
        #[command(subcommand)]
        verb: ElemVerb,
    },
    /// Standard germs and multi-germs.
    Germ {
        #[command(subcommand)]
        verb: GermVerb,
    },
    /// Germ stabilizers.
    Stab {
        #[command(subcommand)]
        verb: StabVerb,
    },
    /// Higher-dimensional elements.
    Nv {
        #[command(subcommand)]
        verb: NvVerb,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum IfsVerb {
    Check,
    Gaps,
    Sparse,
    Genericity,
    Dimension,
}

#[derive(Subcommand, Clone, Copy)]
enum ElemVerb {
    Parse,
    Compose,
    Inverse,
    Reduce,
    Classify,
    Abelianize,
    Eval,
    Render,
}

#[derive(Subcommand, Clone, Copy)]
enum GermVerb {
    Compose,
    Extend,
    ExtendMulti,
}

#[derive(Subcommand, Clone, Copy)]
enum StabVerb {
    Point,
}

#[derive(Subcommand, Clone, Copy)]
enum NvVerb {
    Compose,
    Inverse,
    Apply,
    Rank,
    Render,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Output(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Report {
    text: String,
    json: Value,
    svg: Option<String>,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Report {
        Report {
            text: text.into(),
            json,
            svg: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e @ Error::Parse { .. })) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(Failure::Output(m)) => {
            eprintln!("cannot write output: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome<()> {
    let (name, report) = match &cli.group {
        Group::Ifs { verb } => (format!("ifs {}", ifs_name(*verb)), ifs_cmd(cli, *verb)?),
        Group::Elem { verb } => (format!("elem {}", elem_name(*verb)), elem_cmd(cli, *verb)?),
        Group::Germ { verb } => (format!("germ {}", germ_name(*verb)), germ_cmd(cli, *verb)?),
        Group::Stab { verb: StabVerb::Point } => ("stab point".to_string(), stab_cmd(cli)?),
        Group::Nv { verb } => (format!("nv {}", nv_name(*verb)), nv_cmd(cli, *verb)?),
    };
    let body = match cli.format {
        Format::Text => {
            let mut t = report.text;
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Json => {
            let doc = json!({"schema": 1, "command": name, "result": report.json});
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Svg => report
            .svg
            .ok_or_else(|| Failure::Usage(format!("`{name}` has no SVG rendering")))?,
    };
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Output(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_json(&text)?)
}

fn need<'a>(flag: &str, v: &'a Option<PathBuf>) -> Outcome<&'a Path> {
    v.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn primary(cli: &Cli) -> Outcome<&Path> {
    cli.file
        .as_deref()
        .or(cli.elem.as_deref())
        .ok_or_else(|| Failure::Usage("missing --file".into()))
}

fn ifs_arg(cli: &Cli) -> Outcome<Ifs> {
    match &cli.ifs {
        Some(p) => Ok(ifs_from_json(&read_json(p)?)?),
        None => Ok(Ifs::central(&Rational::from_integer(3.into()))?),
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn point_text(p: &Point) -> String {
    match p {
        Point::Periodic(a) => a.to_string(),
        Point::Aperiodic { prefix } => format!("{prefix}… (aperiodic)"),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Fails(w) => {
            let clause = match &w.clause {
                Clause::ScaledGap { alpha, beta } => format!("scaled gap g{alpha} -> g{beta}"),
                Clause::GapPermutation { sigma } => format!("gap permutation {sigma:?}"),
            };
            let relaxed = if w.positivity_relaxed { ", positivity relaxed" } else { "" };
            format!("Fails ({clause}, k = {:?}{relaxed})", w.k)
        }
        other => other.label().to_string(),
    }
}

fn ifs_name(v: IfsVerb) -> &'static str {
    match v {
        IfsVerb::Check => "check",
        IfsVerb::Gaps => "gaps",
        IfsVerb::Sparse => "sparse",
        IfsVerb::Genericity => "genericity",
        IfsVerb::Dimension => "dimension",
    }
}

fn ifs_cmd(cli: &Cli, verb: IfsVerb) -> Outcome<Report> {
    let ifs = ifs_from_json(&read_json(primary(cli)?)?)?;
    let g = cli.gen;
    Ok(match verb {
        IfsVerb::Check => {
            let sigma = ifs.sparseness_bound(g)?;
            let verdict = check_genericity(&ifs)?;
            Report::new(
                format!("valid; sparse σ{} = {sigma}; genericity: {}", subscript(g), verdict_text(&verdict)),
                json!({"valid": true, "generation": g, "sparseness": sigma.to_string(), "genericity": verdict}),
            )
        }
        IfsVerb::Gaps => {
            let gaps = ifs.gaps_up_to(g);
            let text: Vec<String> = gaps
                .iter()
                .map(|x| {
                    let parent = if x.parent.is_empty() { "ε".to_string() } else { x.parent.to_string() };
                    format!("gen {} parent {parent} slot {}: ({}, {}) length {}", x.generation, x.slot, x.left, x.right, x.length())
                })
                .collect();
            let items: Vec<Value> = gaps
                .iter()
                .map(|x| {
                    json!({"generation": x.generation, "parent": x.parent.to_string(), "slot": x.slot,
                           "left": x.left.to_string(), "right": x.right.to_string()})
                })
                .collect();
            let mut r = Report::new(text.join("\n"), json!({"gaps": items}));
            r.svg = Some(svg::render_ifs(&ifs, g));
            r
        }
        IfsVerb::Sparse => {
            let sigma = ifs.sparseness_bound(g)?;
            Report::new(
                format!("σ{} = {sigma}", subscript(g)),
                json!({"generation": g, "sparseness": sigma.to_string()}),
            )
        }
        IfsVerb::Genericity => {
            let verdict = check_genericity(&ifs)?;
            Report::new(verdict_text(&verdict), json!({"genericity": verdict}))
        }
        IfsVerb::Dimension => {
            let depth = g.max(2);
            let estimate = box_count_estimate(&ifs, depth)?;
            let ratios = ifs.ratios();
            let central = ifs.arity() == 2 && ratios[0] == ratios[1] && ifs.is_palindromic();
            let mut text = Vec::new();
            let mut doc = json!({"box_count": {"depth": depth, "approximate": estimate}});
            if central {
                let d = hausdorff_dimension_central(&ratios[0].recip())?;
                match &d.exact {
                    Some(q) => text.push(format!("hausdorff dimension = {q} (exact)")),
                    None => text.push(format!("hausdorff dimension ≈ {:.6} (approximate)", d.value)),
                }
                doc["hausdorff"] = json!({"exact": d.exact.map(|q| q.to_string()), "approximate": d.value});
            }
            text.push(format!("box-count estimate (depth {depth}) ≈ {estimate:.6} (approximate)"));
            Report::new(text.join("\n"), doc)
        }
    })
}

fn elem_name(v: ElemVerb) -> &'static str {
    match v {
        ElemVerb::Parse => "parse",
        ElemVerb::Compose => "compose",
        ElemVerb::Inverse => "inverse",
        ElemVerb::Reduce => "reduce",
        ElemVerb::Classify => "classify",
        ElemVerb::Abelianize => "abelianize",
        ElemVerb::Eval => "eval",
        ElemVerb::Render => "render",
    }
}

fn element_report(e: &GroupElement) -> Report {
    let mut r = Report::new(format!("{} ({})", e.symbol(), e.variant()), element_to_json(e));
    r.svg = Some(svg::render_symbol(e.symbol()));
    r
}

fn load_element(path: &Path) -> Outcome<GroupElement> {
    Ok(element_from_json(&read_json(path)?)?)
}

fn elem_cmd(cli: &Cli, verb: ElemVerb) -> Outcome<Report> {
    Ok(match verb {
        ElemVerb::Compose => {
            let a = load_element(need("a", &cli.a)?)?;
            let b = load_element(need("b", &cli.b)?)?;
            let v = a.variant().max(b.variant());
            element_report(&a.widen(v)?.compose(&b.widen(v)?)?)
        }
        ElemVerb::Reduce => {
            let raw = symbol_from_json(&read_json(primary(cli)?)?)?;
            let reduced = raw.reduce();
            let removed = raw.leaf_count() - reduced.leaf_count();
            let mut r = Report::new(
                format!("{reduced}\nremoved {removed} caret pair(s)"),
                json!({"symbol": symbol_to_json(&reduced), "removed": removed}),
            );
            r.svg = Some(svg::render_symbol(&reduced));
            r
        }
        ElemVerb::Eval => {
            let e = load_element(primary(cli)?)?;
            let p = point_from_json(&read_json(need("point", &cli.point)?)?, "$")?;
            let image = e.apply(&p)?;
            let mut text = format!("{} -> {}", point_text(&p), point_text(&image));
            let mut doc = json!({"point": point_to_json(&p), "image": point_to_json(&image)});
            if let (Some(_), Point::Periodic(a)) = (&cli.ifs, &p) {
                let ifs = ifs_arg(cli)?;
                let x = ifs.evaluate_address(a);
                let y = PLMap::from_symbol(&e, &ifs)?.eval(&x)?;
                text.push_str(&format!("\nvalue {x} -> {y}"));
                doc["value"] = json!({"point": x.to_string(), "image": y.to_string()});
            }
            Report::new(text, doc)
        }
        _ => {
            let e = load_element(primary(cli)?)?;
            match verb {
                ElemVerb::Parse | ElemVerb::Render => element_report(&e),
                ElemVerb::Inverse => element_report(&e.inverse()),
                ElemVerb::Classify => {
                    let v = e.classify();
                    Report::new(v.name(), json!({"class": v.name()}))
                }
                ElemVerb::Abelianize => {
                    let (l, r) = e.abelianization_f()?;
                    Report::new(format!("({l}, {r})"), json!({"abelianization": [l, r]}))
                }
                _ => unreachable!("handled above"),
            }
        }
    })
    .map(|mut r| {
        if matches!(verb, ElemVerb::Render) {
            // render always produces the diagram, whatever --format says
            r.text = r.svg.clone().unwrap_or_default();
        }
        r
    })
}

fn germ_name(v: GermVerb) -> &'static str {
    match v {
        GermVerb::Compose => "compose",
        GermVerb::Extend => "extend",
        GermVerb::ExtendMulti => "extend-multi",
    }
}

fn germ_cmd(cli: &Cli, verb: GermVerb) -> Outcome<Report> {
    Ok(match verb {
        GermVerb::Compose => {
            let g1 = germ_from_json(&read_json(need("a", &cli.a)?)?, "$")?;
            let g2 = germ_from_json(&read_json(need("b", &cli.b)?)?, "$")?;
            let g = germ_compose(&g1, &g2)?;
            Report::new(g.to_string(), germ_to_json(&g))
        }
        GermVerb::Extend => {
            let g = germ_from_json(&read_json(primary(cli)?)?, "$")?;
            let step = germ_extend(&g);
            let max = germ_maximal(&g);
            let step_text = step.as_ref().map_or("none".to_string(), |s| s.to_string());
            Report::new(
                format!("extension: {step_text}\nmaximal: {max}"),
                json!({"extension": step.as_ref().map(germ_to_json), "maximal": germ_to_json(&max)}),
            )
        }
        GermVerb::ExtendMulti => {
            let mg = multigerm_from_json(&read_json(primary(cli)?)?)?;
            let ext = extend_multigerm(&mg);
            let germs: Vec<String> = ext.result.germs().iter().map(|g| g.to_string()).collect();
            Report::new(
                format!("{}\nsteps: {}", germs.join(" "), ext.steps),
                json!({"result": multigerm_to_json(&ext.result), "steps": ext.steps}),
            )
        }
    })
}

fn stab_cmd(cli: &Cli) -> Outcome<Report> {
    let ifs = ifs_arg(cli)?;
    let p = point_from_json(&read_json(need("point", &cli.point)?)?, "$")?;
    let d = stabilizer(&ifs, &p)?;
    let (text, generator) = match &d.generator {
        Some(g) => (
            format!("InfiniteCyclic, generated by germ {} with scale Λ^{}", g.germ, g.scale),
            json!({"point": address_to_json(&g.point), "germ": germ_to_json(&g.germ), "scale": scale_to_json(&g.scale)}),
        ),
        None => ("Trivial (declared aperiodic)".to_string(), Value::Null),
    };
    Ok(Report::new(text, json!({"kind": d.kind, "generator": generator, "computed": d.computed})))
}

fn nv_name(v: NvVerb) -> &'static str {
    match v {
        NvVerb::Compose => "compose",
        NvVerb::Inverse => "inverse",
        NvVerb::Apply => "apply",
        NvVerb::Rank => "rank",
        NvVerb::Render => "render",
    }
}

fn nv_text(f: &NVElement) -> String {
    let perm: Vec<String> = f.perm().iter().map(|p| (p + 1).to_string()).collect();
    let mut text = format!("dim {} source {} target {} perm [{}]", f.dim(), f.source(), f.target(), perm.join(","));
    if !f.is_plain() {
        let syms: Vec<String> = f.syms().iter().map(|s| s.to_string()).collect();
        text.push_str(&format!(" syms [{}]", syms.join(", ")));
    }
    text
}

fn nv_report(f: &NVElement) -> Outcome<Report> {
    let mut r = Report::new(nv_text(f), nv_to_json(f));
    if f.dim() == 2 {
        r.svg = Some(svg::render_nv(f)?);
    }
    Ok(r)
}

fn load_nv(path: &Path) -> Outcome<NVElement> {
    Ok(nv_from_json(&read_json(path)?)?)
}

fn nv_cmd(cli: &Cli, verb: NvVerb) -> Outcome<Report> {
    match verb {
        NvVerb::Compose => {
            let f = load_nv(need("a", &cli.a)?)?;
            let g = load_nv(need("b", &cli.b)?)?;
            nv_report(&f.compose(&g)?)
        }
        NvVerb::Inverse => nv_report(&load_nv(primary(cli)?)?.inverse()),
        NvVerb::Apply => {
            let f = load_nv(primary(cli)?)?;
            let a = dust_from_json(&read_json(need("point", &cli.point)?)?)?;
            let image = f.apply(&a)?;
            let coords: Vec<String> = image.coords.iter().map(point_text).collect();
            Ok(Report::new(format!("({})", coords.join(", ")), dust_to_json(&image)))
        }
        NvVerb::Rank => {
            let ifs = ifs_arg(cli)?;
            let a = dust_from_json(&read_json(need("point", &cli.point)?)?)?;
            let r = stabilizer_rank(&a);
            let k = tangent_hull_type(&ifs, &a)?;
            let n = a.dim();
            Ok(Report::new(
                format!("stabilizer rank {r} (Z^{r}); tangent hull L_{{{k},{n}}}"),
                json!({"rank": r, "tangent_hull": {"k": k, "n": n}}),
            ))
        }
        NvVerb::Render => {
            let f = load_nv(primary(cli)?)?;
            let svg = svg::render_nv(&f)?;
            let mut r = Report::new(svg.clone(), nv_to_json(&f));
            r.svg = Some(svg);
            Ok(r)
        }
    }
}
