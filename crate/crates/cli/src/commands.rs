use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ArgMatches;
use lk_core::design::{
    chainmail, chainmail_random, enumerate_orbits, spanning_tree_knot, tighten, GroupMode, OrbitReport,
    PredicateKind, TwistAssignment,
};
use lk_core::document::{validate_document, LkmDocument, StrandReport};
use lk_core::geometry::{
    export_obj, fitted_radius, linking_matrix, min_separation, realize, LinkingMatrix, RealizeParams, TubeStyle,
};
use lk_core::mesh::{connectivity_report, ConnectivityReport, EdgeKey};
use lk_core::periodic::{
    periodic_document, periodic_from_document, periodic_scaffold, tile, trace_periodic, Lattice, PeriodicKind,
    PeriodicMesh,
};
use lk_core::strands::{edge_orbit_laws, OrbitLaw};
use lk_core::{trace, Exec, LabeledMesh, LkError};
use serde::Serialize;

use crate::args::{Command, DesignOutput, Report, Scaffold};
use crate::error::CliError;
use crate::labels::{apply_mesh, apply_periodic, ordered_ops, parse_edge};

type Outcome = Result<(), CliError>;

/// Run one parsed command. `m` holds the subcommand's matches, used to
/// recover the order of label flags.
pub fn run(command: Command, m: &ArgMatches) -> Outcome {
    match command {
        Command::Validate { input, report } => validate(&input.input, &report),
        Command::Analyze { input, labels: _, report } => analyze(&input.input, m, &report),
        Command::Trace { input, labels: _, report, out } => trace_cmd(&input.input, m, &report, out.as_deref()),
        Command::DesignKnot { input, seed, odd, even, design } => {
            let mesh = load(&input.input)?;
            let a = spanning_tree_knot(&mesh, seed, odd, even)?;
            design_output(&mesh, &a, &design)
        }
        Command::DesignChainmail { input, seed, sign, multiple, design } => {
            let mesh = load(&input.input)?;
            let a = match seed {
                Some(s) => chainmail_random(&mesh, s)?,
                None => {
                    if sign != 1 && sign != -1 {
                        return Err(CliError::usage("--sign must be 1 or -1"));
                    }
                    let signs: BTreeMap<EdgeKey, i8> =
                        mesh.edges().iter().filter(|e| e.degree() >= 2).map(|e| (e.key, sign)).collect();
                    chainmail(&mesh, &signs, |_, k| multiple * k as u64)?
                }
            };
            design_output(&mesh, &a, &design)
        }
        Command::Tighten { input, labels: _, edge, m: times, design } => {
            let mesh = labeled(&input.input, m)?;
            let a = tighten(&TwistAssignment::of_mesh(&mesh), &mesh, parse_edge(&edge)?, times)?;
            design_output(&mesh, &a, &design)
        }
        Command::Orbits { input, palette, predicate, group, sequential, report } => {
            orbits(&input.input, &palette, &predicate, &group, sequential, &report)
        }
        Command::Lattice { scaffold, trace, out, report } => lattice(&scaffold, m, trace, out.as_deref(), &report),
        Command::Tile { scaffold, extent, out, report } => tile_cmd(&scaffold, m, &extent, &out, &report),
        Command::Realize { input, labels: _, out, tube_radius, tube_sides, inset, polylines, geometry, report } => {
            let params = RealizeParams { inset, tube_radius, tube_sides, ..RealizeParams::default() };
            realize_cmd(&input.input, m, &params, &out, polylines, geometry.as_deref(), &report)
        }
        Command::Serve { input, port, save_dir, ui } => serve(input.as_deref(), port, save_dir, ui),
    }
}

fn read_doc(path: &Path) -> Result<LkmDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(path.display(), e))?;
    Ok(LkmDocument::parse(&text)?)
}

fn load(path: &Path) -> Result<LabeledMesh, CliError> {
    let doc = read_doc(path)?;
    if doc.periodic.is_some() {
        return Err(CliError::usage(format!(
            "{} is periodic; use `lk lattice` or `lk tile`",
            path.display()
        )));
    }
    Ok(doc.to_mesh()?)
}

fn labeled(path: &Path, m: &ArgMatches) -> Result<LabeledMesh, CliError> {
    let mut mesh = load(path)?;
    apply_mesh(&mut mesh, &ordered_ops(m)?)?;
    Ok(mesh)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(report: &Report, value: &T) -> Outcome {
    match &report.report {
        Some(p) if p.as_os_str() == "-" => print!("{}", json(value)),
        Some(p) => std::fs::write(p, json(value))?,
        None => {}
    }
    Ok(())
}

/// Human-readable output goes to stdout unless the report does.
fn say(report: &Report, text: &str) {
    if report.report.as_ref().is_none_or(|p| p.as_os_str() != "-") {
        print!("{text}");
    }
}

fn validate(path: &Path, report: &Report) -> Outcome {
    let doc = read_doc(path)?;
    let r = validate_document(&doc);
    emit(report, &r)?;
    say(report, &connectivity_text(&r));
    match r.errors.first() {
        Some(e) => Err(CliError::Validation(LkError::Malformed(e.clone()))),
        None => Ok(()),
    }
}

fn connectivity_text(r: &ConnectivityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", r.vertex_count);
    let _ = writeln!(s, "faces: {}", r.face_count);
    let _ = writeln!(s, "edges: {}", r.edge_count);
    let hist: Vec<String> = r.degree_histogram.iter().map(|(k, n)| format!("K={k}: {n}")).collect();
    let _ = writeln!(s, "edge degrees: {}", hist.join(", "));
    let _ = writeln!(s, "dual components: {}", r.edge_components);
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    for e in &r.errors {
        let _ = writeln!(s, "error: {e}");
    }
    s
}

#[derive(Serialize)]
struct EdgeSummary {
    edge: [usize; 2],
    #[serde(flatten)]
    law: OrbitLaw,
}

#[derive(Serialize)]
struct Analysis {
    connectivity: ConnectivityReport,
    edges: Vec<EdgeSummary>,
    count: usize,
    cycles: usize,
    paths: usize,
    lengths: Vec<usize>,
}

fn analyze(path: &Path, m: &ArgMatches, report: &Report) -> Outcome {
    let mesh = labeled(path, m)?;
    let strands = trace(&mesh);
    let edges: Vec<EdgeSummary> = mesh
        .edges()
        .iter()
        .zip(edge_orbit_laws(&mesh))
        .map(|(e, law)| EdgeSummary { edge: e.key.pair(), law })
        .collect();
    let a = Analysis {
        connectivity: connectivity_report(&mesh),
        count: strands.count(),
        cycles: strands.cycles().count(),
        paths: strands.paths().count(),
        lengths: strands.lengths(),
        edges,
    };
    emit(report, &a)?;
    let mut s = connectivity_text(&a.connectivity);
    for e in &a.edges {
        let _ = writeln!(
            s,
            "edge {},{}: K={} t={} orbits={} length={}",
            e.edge[0], e.edge[1], e.law.degree, e.law.twist, e.law.orbit_count, e.law.orbit_length
        );
    }
    let _ = writeln!(s, "count: {}", a.count);
    let _ = writeln!(s, "cycles: {}, paths: {}", a.cycles, a.paths);
    let _ = writeln!(s, "lengths: {:?}", a.lengths);
    say(report, &s);
    Ok(())
}

fn strand_text(r: &StrandReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "count: {}", r.count);
    for (i, c) in r.components.iter().enumerate() {
        let kind = serde_json::to_value(c.kind).expect("kind serializes");
        let _ = writeln!(s, "component {i}: {} of length {}", kind.as_str().unwrap_or("?"), c.length);
    }
    s
}

fn trace_cmd(path: &Path, m: &ArgMatches, report: &Report, out: Option<&Path>) -> Outcome {
    let mesh = labeled(path, m)?;
    let r = StrandReport::new(&mesh, &trace(&mesh));
    if let Some(out) = out {
        LkmDocument::from_mesh(&mesh).write(out)?;
    }
    emit(report, &r)?;
    say(report, &strand_text(&r));
    Ok(())
}

#[derive(Serialize)]
struct DesignReport<'a> {
    twists: &'a TwistAssignment,
    count: usize,
}

fn design_output(mesh: &LabeledMesh, a: &TwistAssignment, d: &DesignOutput) -> Outcome {
    let result = a.apply(mesh)?;
    if let Some(p) = &d.out {
        std::fs::write(p, a.to_json())?;
    }
    if let Some(p) = &d.lkm_out {
        LkmDocument::from_mesh(&result).write(p)?;
    }
    let count = trace(&result).count();
    emit(&d.report, &DesignReport { twists: a, count })?;
    let mut s = String::new();
    let nonzero = a.twists.values().filter(|&&t| t != 0).count();
    let _ = writeln!(s, "twisted edges: {nonzero} of {}", mesh.edge_count());
    if d.trace {
        let _ = writeln!(s, "count: {count}");
    }
    if d.out.is_none() && d.lkm_out.is_none() && d.report.report.is_none() {
        s.push_str(&a.to_json());
    }
    say(&d.report, &s);
    Ok(())
}

fn orbits(path: &Path, palette: &str, predicate: &str, group: &str, sequential: bool, report: &Report) -> Outcome {
    let mesh = load(path)?;
    let palette: Vec<i64> = palette
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::usage(format!("bad palette entry `{x}`"))))
        .collect::<Result<_, _>>()?;
    let pred: PredicateKind = predicate.parse()?;
    let modes: Vec<GroupMode> = if group == "all" { GroupMode::ALL.to_vec() } else { vec![group.parse()?] };
    let faces = mesh.face_count();
    let keep = move |s: &lk_core::StrandSet| pred.evaluate(s, faces);
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let reports: Vec<OrbitReport> = modes
        .iter()
        .map(|&mode| enumerate_orbits(&mesh, &palette, &keep, mode, exec))
        .collect::<Result<_, _>>()?;
    emit(report, &reports)?;
    let mut s = String::new();
    for r in &reports {
        let _ = writeln!(
            s,
            "{}: group order {}, {} of {} assignments accepted, {} orbits (Burnside {})",
            r.group.name(),
            r.group_order,
            r.accepted_assignments,
            r.total_assignments,
            r.orbit_count,
            r.burnside
        );
    }
    say(report, &s);
    if let Some(r) = reports.iter().find(|r| !r.consistent()) {
        return Err(CliError::Internal(format!(
            "{}: orbit count {} disagrees with Burnside average {}",
            r.group.name(),
            r.orbit_count,
            r.burnside
        )));
    }
    Ok(())
}

fn read_generators(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(path.display(), e))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(LkError::Malformed(e.to_string())))?;
    let list = v.get("generators").cloned().unwrap_or(v);
    serde_json::from_value(list).map_err(|e| CliError::Validation(LkError::Malformed(format!("generators: {e}"))))
}

fn scaffold(s: &Scaffold, m: &ArgMatches) -> Result<PeriodicMesh, CliError> {
    let mut pmesh = match (&s.preset, &s.input) {
        (Some(name), None) => {
            let lattice = Lattice::preset(name)?;
            let gens = match &s.generators {
                Some(p) => read_generators(p)?,
                None => vec![vec![0.0; lattice.dim()]],
            };
            periodic_scaffold(&lattice, &gens)?
        }
        (None, Some(p)) => periodic_from_document(&read_doc(p)?)?
            .ok_or_else(|| CliError::usage(format!("{} has no periodic block", p.display())))?,
        _ => return Err(CliError::usage("give exactly one of --preset or --in")),
    };
    apply_periodic(&mut pmesh, &ordered_ops(m)?)?;
    Ok(pmesh)
}

#[derive(Serialize)]
struct PeriodicComponent {
    kind: PeriodicKind,
    length: usize,
    closure_offset: Vec<i64>,
    direction: Option<Vec<i64>>,
    repeat_box: Vec<usize>,
}

#[derive(Serialize)]
struct LatticeReport {
    dim: usize,
    class_count: usize,
    class_degrees: Vec<usize>,
    class_twists: Vec<i64>,
    count: usize,
    closed: usize,
    infinite: usize,
    direction_classes: Vec<Vec<i64>>,
    repeat_box: Vec<usize>,
    components: Vec<PeriodicComponent>,
}

fn lattice(s: &Scaffold, m: &ArgMatches, show: bool, out: Option<&Path>, report: &Report) -> Outcome {
    let pmesh = scaffold(s, m)?;
    let strands = trace_periodic(&pmesh);
    let r = LatticeReport {
        dim: pmesh.dim(),
        class_count: pmesh.class_count(),
        class_degrees: pmesh.edges().iter().map(|e| e.degree()).collect(),
        class_twists: pmesh.twists().to_vec(),
        count: strands.count(),
        closed: strands.closed_count(),
        infinite: strands.infinite_count(),
        direction_classes: strands.direction_classes().into_iter().collect(),
        repeat_box: strands.structure_repeat_box(),
        components: strands
            .components
            .iter()
            .map(|c| PeriodicComponent {
                kind: c.kind,
                length: c.slots.len(),
                closure_offset: c.closure_offset.clone(),
                direction: c.direction_class(),
                repeat_box: c.repeat_box.clone(),
            })
            .collect(),
    };
    if let Some(p) = out {
        periodic_document(&pmesh).write(p)?;
    }
    emit(report, &r)?;
    let mut text = String::new();
    let _ = writeln!(text, "faces: {}", pmesh.faces().len());
    let _ = writeln!(text, "edge classes: {} (degrees {:?})", r.class_count, r.class_degrees);
    let _ = writeln!(text, "class twists: {:?}", r.class_twists);
    if show {
        let _ = writeln!(text, "count: {}", r.count);
        let _ = writeln!(text, "closed: {}, infinite: {}", r.closed, r.infinite);
        let _ = writeln!(text, "repeat box: {}", boxed(&r.repeat_box));
        for (i, c) in r.components.iter().enumerate() {
            let _ = writeln!(
                text,
                "component {i}: {:?}, length {}, offset {:?}, repeat box {}",
                c.kind,
                c.length,
                c.closure_offset,
                boxed(&c.repeat_box)
            );
        }
    }
    say(report, &text);
    Ok(())
}

fn boxed(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("x")
}

#[derive(Serialize)]
struct TileReport {
    extent: Vec<usize>,
    faces: usize,
    edges: usize,
    count: usize,
    cycles: usize,
    paths: usize,
}

fn tile_cmd(s: &Scaffold, m: &ArgMatches, extent: &str, out: &Path, report: &Report) -> Outcome {
    let pmesh = scaffold(s, m)?;
    let ext: Vec<usize> = extent
        .split('x')
        .map(|x| x.trim().parse().map_err(|_| CliError::usage(format!("bad extent `{extent}`"))))
        .collect::<Result<_, _>>()?;
    let mesh = tile(&pmesh, &ext)?;
    LkmDocument::from_mesh(&mesh).write(out)?;
    let strands = trace(&mesh);
    let r = TileReport {
        extent: ext,
        faces: mesh.face_count(),
        edges: mesh.edge_count(),
        count: strands.count(),
        cycles: strands.cycles().count(),
        paths: strands.paths().count(),
    };
    emit(report, &r)?;
    say(
        report,
        &format!("faces: {}\nedges: {}\ncount: {} ({} closed, {} open)\n", r.faces, r.edges, r.count, r.cycles, r.paths),
    );
    Ok(())
}

#[derive(Serialize)]
struct RealizeReport {
    count: usize,
    closed: usize,
    min_separation: Option<f64>,
    tube_radius: f64,
    linking: Option<LinkingMatrix>,
    warnings: Vec<String>,
}

fn realize_cmd(
    path: &Path,
    m: &ArgMatches,
    params: &RealizeParams,
    out: &Path,
    polylines: bool,
    geometry: Option<&Path>,
    report: &Report,
) -> Outcome {
    let mesh = labeled(path, m)?;
    params.validate()?;
    let geom = realize(&mesh, &trace(&mesh), params)?;
    let requested = params.radius_for(&mesh);
    let radius = fitted_radius(&geom, requested, Exec::Parallel);
    let mut warnings = Vec::new();
    if radius < requested {
        let w = format!("tube radius reduced from {requested:.6} to {radius:.6} to keep strands apart");
        log::warn!("{w}");
        warnings.push(w);
    }
    let style = (!polylines).then_some(TubeStyle { radius, sides: params.tube_sides });
    export_obj(out, &geom, style)?;
    if let Some(p) = geometry {
        std::fs::write(p, geom.to_json())?;
    }
    let linking = match linking_matrix(&geom, Exec::Parallel) {
        Ok(l) => {
            warnings.extend(l.warnings.iter().cloned());
            Some(l)
        }
        Err(e) => {
            warnings.push(format!("linking numbers unavailable: {e}"));
            None
        }
    };
    let sep = min_separation(&geom, Exec::Parallel);
    let r = RealizeReport {
        count: geom.components.len(),
        closed: geom.components.iter().filter(|c| c.closed).count(),
        min_separation: sep.is_finite().then_some(sep),
        tube_radius: radius,
        linking,
        warnings,
    };
    emit(report, &r)?;
    let mut s = format!("components: {} ({} closed)\ntube radius: {:.6}\n", r.count, r.closed, r.tube_radius);
    if let Some(l) = &r.linking {
        for row in &l.values {
            let _ = writeln!(s, "{}", row.iter().map(|v| format!("{v:>3}")).collect::<String>());
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    say(report, &s);
    Ok(())
}

fn serve(input: Option<&Path>, port: u16, save_dir: Option<PathBuf>, ui: Option<PathBuf>) -> Outcome {
    let initial = input.map(load).transpose()?;
    let config = lk_service::ServiceConfig { port, save_dir, ui_dir: ui, ..Default::default() };
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    rt.block_on(lk_service::serve(config, initial))?;
    Ok(())
}
