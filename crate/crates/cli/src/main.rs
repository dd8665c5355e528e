use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eulerlat::bond::{
    build_bond_lattice, characteristic_polynomial_of_lattice, chromatic_polynomial, chromatic_polynomial_whitney,
    mu_explicit, nbc_bases, orientation_counts_vs_chromatic, unique_sink_orientations, EdgeOrder,
};
use eulerlat::harary::{
    associated_coefficient, associated_coefficient_via_rootings, charpoly_determinant_oracle, decomposition_classes,
    decompositions, elementary_subgraph_formula, hs_characteristic_polynomial, weight, VeblenMultigraph,
};
use eulerlat::heaps::{count_full_pyramids, full_pyramids, Heap, PieceSystem};
use eulerlat::io::{parse_graph_file, ParsedGraph};
use eulerlat::lattice::{
    cancellation_from, identity_from, las_vergnas_divisibility, martin_from_counts, out_degree_factorial_product,
    EulerianSemilattice, Fault,
};
use eulerlat::trails::{count_circuits_best, eulerian_circuits};
use eulerlat::verify::{bijection_check, edge_orders, run_verification_suite, VerifyConfig, SCHEMA_VERSION};
use eulerlat::{Digraph, Error, IntPolynomial, Integer, Labels, Multigraph, SetPartition, SimpleGraph};

#[derive(Parser)]
#[command(name = "eulerlat", version, about = "Circuit-partition invariants of Eulerian digraphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random edge orders.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest accepted input (edges), or the corpus edge bound for `verify`.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hs,
    Elementary,
    Det,
}

#[derive(Subcommand)]
enum Command {
    /// List the Eulerian circuits of a digraph.
    Circuits { file: PathBuf },
    /// Circuit partition counts and the Martin polynomials.
    Martin { file: PathBuf },
    /// Alternating sum of the circuit partition counts.
    Cancellation { file: PathBuf },
    /// The Martin polynomial against the intersection-graph chromatic terms.
    Identity { file: PathBuf },
    /// Every element of the Eulerian partition semilattice with its F and G values.
    LatticeDump { file: PathBuf },
    /// NBC bases of a simple graph and their unique-sink orientations.
    Nbc {
        file: PathBuf,
        /// Comma-separated edge ids, smallest first. Defaults to file order.
        #[arg(long)]
        order: Option<String>,
        /// Sink vertex. Defaults to the first vertex.
        #[arg(long)]
        sink: Option<String>,
    },
    /// Check the NBC/orientation bijections on every vertex and several edge orders.
    BijectionCheck {
        file: PathBuf,
        /// Number of random edge orders besides the file order.
        #[arg(long, default_value_t = 3)]
        orders: usize,
    },
    /// Chromatic polynomial by two routes, with orientation counts.
    Chromatic { file: PathBuf },
    /// Full pyramids of the piece system given by a concurrency graph.
    Pyramids {
        file: PathBuf,
        /// Apex piece (a vertex name).
        #[arg(long)]
        piece: String,
    },
    /// Characteristic polynomial of the adjacency matrix.
    Charpoly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Hs)]
        method: Method,
    },
    /// Weight and associated coefficient of a Veblen multigraph.
    Weight {
        file: PathBuf,
        /// Number of variables; defaults to the vertex count.
        #[arg(short = 'n')]
        n: Option<u32>,
    },
    /// Run the exhaustive small-instance verification suite.
    Verify {
        /// Largest simple graphs in the corpus (vertices).
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn int(n: &Integer) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn ints(ns: &[Integer]) -> Value {
    Value::Array(ns.iter().map(int).collect())
}

fn join(ns: &[Integer]) -> String {
    ns.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn poly(p: &IntPolynomial) -> Value {
    ints(p.coeffs())
}

fn partition(p: &SetPartition, names: &[String]) -> Value {
    let blocks: Vec<Vec<&str>> = p
        .blocks()
        .iter()
        .map(|&b| (0..names.len()).filter(|&x| b >> x & 1 == 1).map(|x| names[x].as_str()).collect())
        .collect();
    json!(blocks)
}

fn arcs(d: &Digraph, labels: &Labels) -> Value {
    let list: Vec<Value> = d
        .arcs()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| json!([labels.edge(e), labels.vertex(u), labels.vertex(v)]))
        .collect();
    Value::Array(list)
}

fn arcs_text(d: &Digraph, labels: &Labels) -> String {
    d.arcs()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| format!("{}:{}->{}", labels.edge(e), labels.vertex(u), labels.vertex(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn edge_set(mask: u64, labels: &Labels) -> Vec<String> {
    (0..labels.edges.len()).filter(|&e| mask >> e & 1 == 1).map(|e| labels.edge(e).to_string()).collect()
}

fn load(path: &Path, max_edges: Option<usize>, default_cap: usize) -> Result<ParsedGraph> {
    let g = parse_graph_file(path).with_context(|| format!("cannot read graph file {}", path.display()))?;
    let cap = max_edges.unwrap_or(default_cap);
    if g.edge_count() > cap {
        bail!("{} has {} edges, above the limit of {cap} (raise it with --max-edges)", path.display(), g.edge_count());
    }
    Ok(g)
}

fn load_digraph(path: &Path, max_edges: Option<usize>) -> Result<(Digraph, Labels)> {
    match load(path, max_edges, 16)? {
        ParsedGraph::Digraph(d, l) => Ok((d, l)),
        ParsedGraph::Multigraph(..) => bail!("{} is a multigraph file; this command needs a digraph", path.display()),
    }
}

fn load_multigraph(path: &Path, max_edges: Option<usize>, cap: usize) -> Result<(Multigraph, Labels)> {
    match load(path, max_edges, cap)? {
        ParsedGraph::Multigraph(x, l) => Ok((x, l)),
        ParsedGraph::Digraph(..) => bail!("{} is a digraph file; this command needs a multigraph", path.display()),
    }
}

fn load_simple(path: &Path, max_edges: Option<usize>, cap: usize) -> Result<(SimpleGraph, Labels)> {
    let (x, l) = load_multigraph(path, max_edges, cap)?;
    let g = SimpleGraph::new(x.vertex_count(), x.edges().to_vec())
        .with_context(|| format!("{} must describe a simple graph", path.display()))?;
    Ok((g, l))
}

fn semilattice(d: &Digraph) -> Result<EulerianSemilattice> {
    if !d.is_eulerian() {
        return Err(Error::NotEulerian.into());
    }
    Ok(EulerianSemilattice::build(d)?)
}

fn circuits(file: &Path, cli: &Cli) -> Result<Output> {
    let (d, l) = load_digraph(file, cli.max_edges)?;
    if !d.is_eulerian() {
        return Err(Error::NotEulerian.into());
    }
    let list = eulerian_circuits(&d);
    let best = count_circuits_best(&d)?;
    let seqs: Vec<Vec<&str>> = list.iter().map(|c| c.edges().iter().map(|&e| l.edge(e)).collect()).collect();
    let mut text = format!("{} Eulerian circuits (BEST count {best})\n", seqs.len());
    for s in &seqs {
        text += &format!("  {}\n", s.join(" "));
    }
    Ok(Output::new(json!({"count": seqs.len(), "best_count": int(&best), "circuits": seqs}), text))
}

fn martin(file: &Path, cli: &Cli) -> Result<Output> {
    let (d, _) = load_digraph(file, cli.max_edges)?;
    let t = semilattice(&d)?;
    let f = t.circuit_partition_counts();
    let m = martin_from_counts(&f);
    let s2 = m.s.eval(&Integer::from(2));
    let prod = out_degree_factorial_product(&d);
    let lv = match las_vergnas_divisibility(&d) {
        Ok(r) => json!({"delta": r.delta, "divisible": r.divisible(), "quotient": poly(&r.quotient)}),
        Err(Error::DegreeTooSmall(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let text = format!("f = {}\nr(t) = {}\ns(t) = {}\ns(2) = {s2}\nprod deg+! = {prod}\n", join(&f), m.r, m.s);
    Ok(Output::new(
        json!({"f": ints(&f), "r": poly(&m.r), "s": poly(&m.s), "s_at_2": int(&s2),
               "out_degree_factorial_product": int(&prod), "divisibility": lv}),
        text,
    ))
}

fn cancellation(file: &Path, cli: &Cli) -> Result<Output> {
    let (d, _) = load_digraph(file, cli.max_edges)?;
    let r = cancellation_from(&semilattice(&d)?);
    let text = format!(
        "f = {}\nalternating sum = {}\nsingle cycle = {}\nholds = {}\n",
        join(&r.f),
        r.alternating_sum,
        r.single_cycle,
        r.holds()
    );
    Ok(Output::new(
        json!({"f": ints(&r.f), "alternating_sum": int(&r.alternating_sum),
               "single_cycle": r.single_cycle, "holds": r.holds()}),
        text,
    ))
}

fn identity(file: &Path, cli: &Cli) -> Result<Output> {
    let (d, l) = load_digraph(file, cli.max_edges)?;
    let r = identity_from(&semilattice(&d)?)?;
    let mut text = format!("s(t) = {}\n", r.s);
    let terms: Vec<Value> = r
        .terms
        .iter()
        .map(|(a, chi, p)| {
            text += &format!("  {}: chi = {chi}, P = {p}\n", a.display_with(&l.edges));
            json!({"partition": partition(a, &l.edges), "chi": poly(chi), "chromatic": poly(p)})
        })
        .collect();
    text += &format!("s(1-t) = {}\nsum = {}\nholds = {}\n", r.s_lhs, r.s_rhs, r.holds());
    Ok(Output::new(
        json!({"s": poly(&r.s), "terms": terms, "s_lhs": poly(&r.s_lhs), "s_rhs": poly(&r.s_rhs),
               "r_lhs": poly(&r.r_lhs), "r_rhs": poly(&r.r_rhs), "holds": r.holds()}),
        text,
    ))
}

fn lattice_dump(file: &Path, cli: &Cli) -> Result<Output> {
    let (d, l) = load_digraph(file, cli.max_edges)?;
    let t = semilattice(&d)?;
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by_key(|&i| (t.elements()[i].len(), t.elements()[i].display_with(&l.edges)));
    let mut text = format!("{} elements\n{:<32} {:>6} {:>6}\n", t.len(), "partition", "F", "G");
    let rows: Vec<Value> = order
        .iter()
        .map(|&i| {
            let b = &t.elements()[i];
            let g = t.g(i);
            text += &format!("{:<32} {:>6} {:>6}\n", b.display_with(&l.edges), t.f(i).to_string(), g.to_string());
            json!({"partition": partition(b, &l.edges), "blocks": b.len(), "minimal": t.minimal().contains(&i),
                   "F": int(t.f(i)), "G": int(&g)})
        })
        .collect();
    let (top, inv) = t.mobius_inversion();
    text += &format!("F(top) = {top}, sum mu(b,top) G(b) = {inv}\n");
    Ok(Output::new(
        json!({"elements": rows, "top_F": int(&top), "mobius_inversion": int(&inv), "join_closed": t.is_join_closed()}),
        text,
    ))
}

fn parse_order(spec: Option<&str>, l: &Labels) -> Result<EdgeOrder> {
    let Some(spec) = spec else {
        return Ok(EdgeOrder::identity(l.edges.len()));
    };
    let perm = spec
        .split(',')
        .map(|s| l.edge_id(s.trim()).ok_or_else(|| anyhow!("--order names unknown edge {:?}", s.trim())))
        .collect::<Result<Vec<_>>>()?;
    if perm.len() != l.edges.len() {
        bail!("--order must list every edge exactly once ({} given, {} edges)", perm.len(), l.edges.len());
    }
    EdgeOrder::new(perm).map_err(|_| anyhow!("--order must list every edge exactly once"))
}

fn vertex(name: &str, l: &Labels, flag: &str) -> Result<usize> {
    l.vertex_id(name).ok_or_else(|| anyhow!("{flag} names unknown vertex {name:?}"))
}

fn nbc(file: &Path, order: Option<&str>, sink: Option<&str>, cli: &Cli) -> Result<Output> {
    let (g, l) = load_simple(file, cli.max_edges, 20)?;
    let ord = parse_order(order, &l)?;
    let x = match sink {
        Some(s) => vertex(s, &l, "--sink")?,
        None => 0,
    };
    let bases = nbc_bases(&g, &ord)?;
    let usos = unique_sink_orientations(&g, x)?;
    let mut text =
        format!("{} NBC bases, {} acyclic orientations with unique sink {}\n", bases.len(), usos.len(), l.vertex(x));
    let rows = bases
        .iter()
        .map(|&t| {
            let o = mu_explicit(t, &g, x, &ord)?;
            text += &format!("  {{{}}} -> {}\n", edge_set(t, &l).join(","), arcs_text(&o, &l));
            Ok(json!({"edges": edge_set(t, &l), "orientation": arcs(&o, &l)}))
        })
        .collect::<Result<Vec<_>>>()?;
    let perm: Vec<&str> = ord.perm().iter().map(|&e| l.edge(e)).collect();
    Ok(Output::new(
        json!({"order": perm, "sink": l.vertex(x), "bases": rows, "unique_sink_orientations": usos.len()}),
        text,
    ))
}

fn bijection(file: &Path, orders: usize, cli: &Cli) -> Result<Output> {
    let (g, l) = load_simple(file, cli.max_edges, 16)?;
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let ords = edge_orders(&g, orders, cli.seed);
    let failures = bijection_check(&g, &ords)?;
    let nbc = nbc_bases(&g, &ords[0])?.len();
    let perms: Vec<Vec<&str>> = ords.iter().map(|o| o.perm().iter().map(|&e| l.edge(e)).collect()).collect();
    let mut text = format!("{} NBC bases; {} edge orders checked at every vertex\n", nbc, ords.len());
    for f in &failures {
        text += &format!("  FAIL {f}\n");
    }
    text += if failures.is_empty() { "all bijection checks pass\n" } else { "bijection checks failed\n" };
    let mut out = Output::new(
        json!({"nbc_bases": nbc, "orders": perms, "passed": failures.is_empty(), "failures": failures}),
        text,
    );
    out.ok = failures.is_empty();
    Ok(out)
}

fn chromatic(file: &Path, cli: &Cli) -> Result<Output> {
    let (g, _) = load_simple(file, cli.max_edges, 20)?;
    let p = chromatic_polynomial(&g);
    let whitney = chromatic_polynomial_whitney(&g, &EdgeOrder::identity(g.edge_count()))?;
    let chi = characteristic_polynomial_of_lattice(&build_bond_lattice(&g));
    let mut text = format!("P(t) = {p}\nWhitney expansion agrees = {}\nchi(t) = {chi}\n", p == whitney);
    let counts = if g.is_connected() && g.edge_count() < 32 {
        let c = orientation_counts_vs_chromatic(&g)?;
        text += &format!(
            "acyclic orientations = {} (|P(-1)| = {})\nunique-sink per vertex = {:?} (|[t]P| = {})\n",
            c.acyclic_total, c.chromatic_at_minus_one_abs, c.unique_sink, c.linear_coefficient_abs
        );
        json!({"acyclic_total": c.acyclic_total, "unique_sink": c.unique_sink,
               "chromatic_at_minus_one_abs": int(&c.chromatic_at_minus_one_abs),
               "linear_coefficient_abs": int(&c.linear_coefficient_abs),
               "total_matches_minus_one": c.total_matches_minus_one,
               "total_matches_linear": c.total_matches_linear,
               "unique_sink_matches_minus_one": c.unique_sink_matches_minus_one,
               "unique_sink_matches_linear": c.unique_sink_matches_linear})
    } else {
        Value::Null
    };
    Ok(Output::new(
        json!({"chromatic": poly(&p), "whitney_agrees": p == whitney, "characteristic": poly(&chi),
               "orientation_counts": counts}),
        text,
    ))
}

fn heap_json(h: &Heap, l: &Labels) -> Value {
    let labels: Vec<&str> = h.ids().iter().map(|&id| l.vertex(h.label(id).unwrap())).collect();
    json!({"elements": h.ids(), "covers": h.covers(), "labels": labels})
}

fn pyramids(file: &Path, piece: &str, cli: &Cli) -> Result<Output> {
    let (g, l) = load_simple(file, cli.max_edges, 20)?;
    if g.vertex_count() > 10 {
        return Err(Error::SizeCap { what: "pieces for pyramid listing", actual: g.vertex_count(), cap: 10 }.into());
    }
    let beta = vertex(piece, &l, "--piece")?;
    let ps = PieceSystem::from_graph(&g);
    if !ps.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let list = full_pyramids(&ps, beta)?;
    let counts = (0..ps.len()).map(|b| count_full_pyramids(&ps, b)).collect::<eulerlat::Result<Vec<_>>>()?;
    let mut text = format!("{} full pyramids with apex {piece}\n", list.len());
    for h in &list {
        let labels: Vec<&str> = h.ids().iter().map(|&id| l.vertex(h.label(id).unwrap())).collect();
        let covers: Vec<String> = h.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
        text += &format!("  labels [{}] covers [{}]\n", labels.join(" "), covers.join(" "));
    }
    text += &format!("counts per apex = {counts:?}\n");
    let counts: Vec<Value> =
        counts.iter().map(|&c| u64::try_from(c).map_or_else(|_| json!(c.to_string()), |c| json!(c))).collect();
    Ok(Output::new(
        json!({"apex": piece, "count": list.len(), "pyramids": list.iter().map(|h| heap_json(h, &l)).collect::<Vec<_>>(),
               "counts_per_apex": counts}),
        text,
    ))
}

fn charpoly(file: &Path, method: Method, cli: &Cli) -> Result<Output> {
    let (g, _) = load_simple(file, cli.max_edges, 40)?;
    let (name, p) = match method {
        Method::Hs => ("hs", hs_characteristic_polynomial(&g)?),
        Method::Elementary => ("elementary", elementary_subgraph_formula(&g)?),
        Method::Det => ("det", charpoly_determinant_oracle(&g)),
    };
    Ok(Output::new(json!({"method": name, "polynomial": poly(&p)}), format!("{p}\n")))
}

fn weight_cmd(file: &Path, n: Option<u32>, cli: &Cli) -> Result<Output> {
    let (x, _) = load_multigraph(file, cli.max_edges, 10)?;
    let n = n.unwrap_or(x.vertex_count() as u32);
    let v = VeblenMultigraph::new(x)?;
    let w = weight(&v, n)?;
    let decomps = decompositions(&v)?.len();
    let classes = decomposition_classes(&v)?.len();
    let mut text = format!("w = {w}\ndecompositions = {decomps} ({classes} classes)\n");
    let coeff = if v.edge_count() > 0 && v.is_connected() {
        let a = associated_coefficient(&v)?;
        let b = associated_coefficient_via_rootings(&v)?;
        text += &format!("C = {a} (rootings: {b})\n");
        json!({"circuits": a.to_string(), "rootings": b.to_string()})
    } else {
        Value::Null
    };
    Ok(Output::new(
        json!({"n": n, "weight": w.to_string(), "decompositions": decomps, "decomposition_classes": classes,
               "connected": v.is_connected(), "associated_coefficient": coeff}),
        text,
    ))
}

fn verify(max_vertices: usize, inject_fault: bool, cli: &Cli) -> Result<Output> {
    if max_vertices == 0 || max_vertices > 7 {
        bail!("--max-vertices must be between 1 and 7");
    }
    let edges = cli.max_edges.unwrap_or(8);
    if edges == 0 || edges > 10 {
        bail!("--max-edges for verify must be between 1 and 10");
    }
    let cfg = VerifyConfig {
        seed: cli.seed,
        max_digraph_edges: edges,
        max_veblen_edges: edges,
        max_graph_vertices: max_vertices,
        fault: if inject_fault { Fault::FlipTwoBlockSign } else { Fault::None },
        ..Default::default()
    };
    let report = run_verification_suite(&cfg);
    let mut text = format!("seed {}\n", cfg.seed);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        text += &format!("{status} {:<28} {} cases, {} failures\n", c.name, c.cases, c.failures);
        for s in &c.failure_samples {
            text += &format!("    {s}\n");
        }
        for s in &c.cap_violations {
            text += &format!("    cap: {s}\n");
        }
    }
    text += if report.passed { "all checks passed\n" } else { "verification failed\n" };
    let ok = report.passed;
    let mut out = Output::new(serde_json::to_value(&report)?, text);
    out.ok = ok;
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Circuits { file } => circuits(file, cli),
        Command::Martin { file } => martin(file, cli),
        Command::Cancellation { file } => cancellation(file, cli),
        Command::Identity { file } => identity(file, cli),
        Command::LatticeDump { file } => lattice_dump(file, cli),
        Command::Nbc { file, order, sink } => nbc(file, order.as_deref(), sink.as_deref(), cli),
        Command::BijectionCheck { file, orders } => bijection(file, *orders, cli),
        Command::Chromatic { file } => chromatic(file, cli),
        Command::Pyramids { file, piece } => pyramids(file, piece, cli),
        Command::Charpoly { file, method } => charpoly(file, *method, cli),
        Command::Weight { file, n } => weight_cmd(file, *n, cli),
        Command::Verify { max_vertices, inject_fault } => verify(*max_vertices, *inject_fault, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let mut json = json!({"schema": SCHEMA_VERSION});
                    if let (Value::Object(head), Value::Object(body)) = (&mut json, out.json) {
                        head.extend(body);
                    }
                    serde_json::to_string_pretty(&json).expect("JSON values serialize") + "\n"
                }
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
