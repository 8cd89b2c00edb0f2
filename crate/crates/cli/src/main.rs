mod family;
mod render;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthopath::bijection::GammaSpec;
use orthopath::lecturehall::{self, LambdaWeights, Parity, SePath, SlhPoint, WeightSystem};
use orthopath::motzkin::{self, EnumOptions, MotzkinPath};
use orthopath::orthopoly::{default_transfer_dim, lin_rows, transfer_power, MomentTable, RecurrenceSpec, Route};
use orthopath::quantum::{self, HydrogenState, QhoState, HYDROGEN_ROUTES, QHO_ROUTES};
use orthopath::{verify, Error, Poly, Rat};

use family::Family;

#[derive(Parser)]
#[command(name = "orthopath", version, about = "Exact moments of orthogonal polynomials via lattice paths")]
struct Cli {
    /// Ceiling on the number of paths one enumeration may visit.
    #[arg(long, global = true, env = "ORTHOPATH_ENUM_CAP", default_value_t = orthopath::DEFAULT_ENUM_CAP)]
    cap: u64,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linearization coefficients σ_{n,m,k}, cross-checked across routes.
    Moments(MomentsArgs),
    /// Position moments of the harmonic oscillator.
    Qho(QhoArgs),
    /// Radial position moments of the hydrogen atom.
    Hydrogen(HydrogenArgs),
    /// Count or list paths.
    Paths {
        #[command(subcommand)]
        action: PathsAction,
    },
    /// Run an identity suite and print a pass/fail report.
    Verify(VerifyArgs),
    /// Draw a Motzkin path or the lecture hall graph as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => Ok(io::stdout().lock().write_all(text.as_bytes())?),
        }
    }
}

#[derive(Args)]
struct MomentsArgs {
    #[arg(long, default_value = "symbolic")]
    family: Family,
    /// Start height m.
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// A single cell: σ_{n,m,k}.
    #[arg(long, requires = "k")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    k: Option<usize>,
    /// Comma-separated routes, or `all`.
    #[arg(long, default_value = "recurrence,motzkin")]
    routes: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct QhoArgs {
    /// Energy level.
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// A single power n of x̂.
    #[arg(long)]
    power: Option<usize>,
    /// Table over levels 0..=max_m (defaults to m alone).
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_power: usize,
    #[arg(long, default_value = "all")]
    routes: String,
    /// Label the output as momentum moments, which coincide with position moments.
    #[arg(long)]
    momentum: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct HydrogenArgs {
    /// Principal quantum number.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Azimuthal quantum number.
    #[arg(long, default_value_t = 0)]
    l: usize,
    #[arg(long)]
    power: Option<usize>,
    /// Table over all states with principal number ≤ max_m.
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long, default_value_t = 6)]
    max_power: usize,
    #[arg(long, default_value = "all")]
    routes: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum PathsAction {
    Count {
        #[command(subcommand)]
        kind: PathKind,
    },
    List {
        #[command(subcommand)]
        kind: PathKind,
        /// Print each path's weight in this family.
        #[arg(long, global = true)]
        family: Option<Family>,
    },
}

#[derive(Subcommand, Clone)]
enum PathKind {
    /// Motzkin paths from height `start` to `end` with `len` steps.
    Motzkin {
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        end: usize,
        #[arg(long)]
        len: usize,
        /// Up and down steps only.
        #[arg(long)]
        dyck: bool,
    },
    /// South-east paths in the lecture hall graph, e.g. --from T,1 --to 0,4,0.
    Slh {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Weight system for `list --family`: even or odd.
        #[arg(long, value_enum, default_value = "even")]
        parity: ParityArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm35,
    Thm38,
    Prop33,
    Prop36,
    Cor37,
    Lemmas,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct RenderArgs {
    /// A lecture hall path such as "T,1;1,1,1;1,2,1". Empty draws the bare graph.
    #[arg(long, conflicts_with = "motzkin")]
    path: Option<String>,
    /// A Motzkin path such as "UHD" or "m=1:UDD".
    #[arg(long)]
    motzkin: Option<String>,
    /// Columns to draw; defaults to the last column the path visits, at least 1.
    #[arg(long)]
    columns: Option<usize>,
    /// Label steps with this family's weights.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, value_enum, default_value = "even")]
    parity: ParityArg,
    #[command(flatten)]
    out: Output,
}

/// Failure classes mapped to exit codes 1 and 2.
enum Failure {
    Mismatch(String),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.cap == 0 {
        eprintln!("error: --cap must be positive");
        return ExitCode::from(2);
    }
    std::env::set_var(orthopath::ENUM_CAP_ENV, cli.cap.to_string());
    let result = match cli.cmd {
        Command::Moments(a) => moments(a, cli.cap),
        Command::Qho(a) => qho(a),
        Command::Hydrogen(a) => hydrogen(a),
        Command::Paths { action } => paths(action, cli.cap).map_err(Failure::from),
        Command::Verify(a) => run_verify(a, cli.cap),
        Command::Render(a) => run_render(a).map_err(Failure::from),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(report)) => {
            eprintln!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_routes(s: &str, all: &[Route]) -> Result<Vec<Route>> {
    if s.trim() == "all" {
        return Ok(all.to_vec());
    }
    let mut out = BTreeSet::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let r: Route = part.parse()?;
        if !all.contains(&r) {
            bail!("route `{r}` does not apply here; choose from {}", names(all));
        }
        out.insert(r);
    }
    if out.is_empty() {
        bail!("no routes given");
    }
    Ok(out.into_iter().collect())
}

fn names(routes: &[Route]) -> String {
    routes.iter().map(|r| r.name()).collect::<Vec<_>>().join(",")
}

fn moment_routes(fam: &Family, m: usize) -> Vec<Route> {
    let mut r = vec![Route::Recurrence, Route::Motzkin, Route::Transfer];
    if m == 0 && !matches!(fam, Family::Symbolic) {
        r.push(Route::LectureHall);
    }
    if m == 0 && matches!(fam, Family::Hermite | Family::Laguerre(_)) {
        r.push(Route::ClosedForm);
    }
    r
}

/// σ_{n,0,k} as a lecture hall sum: w_e/w_o when b ≡ 0, w_γ for Laguerre.
fn sigma_lecturehall(fam: &Family, n: usize, k: usize, cap: u64) -> Result<Poly, Error> {
    if k > n {
        return Ok(Poly::zero());
    }
    if let Family::Laguerre(a) = fam {
        let g = GammaSpec::laguerre(a.clone());
        return lecturehall::partial_weight_sum(&g.weights(), SlhPoint::Top(k), lecturehall::level0_bottom(n), cap);
    }
    if (n + k) % 2 == 1 {
        return Ok(Poly::zero());
    }
    let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let ws = LambdaWeights::new(fam.spec(), parity);
    lecturehall::partial_weight_sum(&ws, SlhPoint::Top(k / 2), lecturehall::level0_bottom(n / 2), cap)
}

fn sigma_closed(fam: &Family, n: usize, k: usize) -> Poly {
    match fam {
        Family::Laguerre(a) => quantum::laguerre_mixed_closed(n, k, a),
        _ if (n + k) % 2 == 1 || k > n => Poly::zero(),
        _ => {
            let parity = if n.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
            Poly::constant(quantum::hermite_mixed_closed(n / 2, k / 2, parity))
        }
    }
}

fn table_by(fam: &Family, spec: &RecurrenceSpec, m: usize, max_n: usize, route: Route, cap: u64) -> Result<MomentTable, Error> {
    let rows: Vec<Vec<Poly>> = match route {
        Route::Recurrence => lin_rows(spec, max_n, m),
        Route::Motzkin => (0..=max_n)
            .map(|n| {
                (0..=m + n)
                    .map(|k| motzkin::sigma_by_enumeration(spec, n, m, k, EnumOptions::default().with_cap(cap)))
                    .collect()
            })
            .collect::<Result<_, _>>()?,
        Route::Transfer => (0..=max_n)
            .map(|n| {
                let t = transfer_power(spec, n, default_transfer_dim(n, m, m + n));
                (0..=m + n).map(|k| t.entry(k, m).cloned()).collect()
            })
            .collect::<Result<_, _>>()?,
        Route::LectureHall => (0..=max_n)
            .map(|n| (0..=n).map(|k| sigma_lecturehall(fam, n, k, cap)).collect())
            .collect::<Result<_, _>>()?,
        Route::ClosedForm => (0..=max_n).map(|n| (0..=n).map(|k| sigma_closed(fam, n, k)).collect()).collect(),
        other => return Err(Error::UnsupportedRoute(other.to_string())),
    };
    Ok(MomentTable::from_rows(fam.to_string(), m, rows, route))
}

fn mismatch_report(ms: &[orthopath::orthopoly::Mismatch]) -> String {
    let mut s = format!("route disagreement in {} cells:\n", ms.len());
    for m in ms {
        s.push_str(&format!("  {m}\n"));
    }
    s
}

fn moments(a: MomentsArgs, cap: u64) -> Result<(), Failure> {
    let spec = a.family.spec();
    let routes = parse_routes(&a.routes, &moment_routes(&a.family, a.m))?;
    let max_n = a.n.unwrap_or(a.max_n);
    let mut table = table_by(&a.family, &spec, a.m, max_n, routes[0], cap)?;
    for &r in &routes[1..] {
        let other = table_by(&a.family, &spec, a.m, max_n, r, cap)?;
        table.merge(&other).map_err(|ms| Failure::Mismatch(mismatch_report(&ms)))?;
    }
    let text = match (a.n, a.k) {
        (Some(n), Some(k)) => {
            let value = table.get(n, k).cloned().unwrap_or_else(Poly::zero);
            let tags = table.routes(n, k).map_or_else(|| names(&routes), |t| names(&t.iter().copied().collect::<Vec<_>>()));
            match a.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&json!({
                    "family": a.family.to_string(),
                    "n": n, "m": a.m, "k": k,
                    "value": value.to_string(),
                    "routes": tags,
                })),
                Format::Csv => format!("n,m,k,value,routes\n{n},{},{k},{},{}\n", a.m, csv(&value.to_string()), tags.replace(',', "+")),
                Format::Text => format!("{value}\t[{tags}]\n"),
            }
        }
        _ => match a.format.unwrap_or(Format::Csv) {
            Format::Json => pretty(&table.to_json()),
            _ => table.to_csv(),
        },
    };
    a.out.emit(&text)?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One value computed along several routes; all must agree.
struct Cell {
    key: Vec<(&'static str, usize)>,
    value: Rat,
    routes: Vec<Route>,
}

fn agree(key: Vec<(&'static str, usize)>, routes: &[Route], mut f: impl FnMut(Route) -> Result<Rat, Error>) -> Result<Cell, Failure> {
    let mut value: Option<(Rat, Route)> = None;
    for &r in routes {
        let v = f(r)?;
        match &value {
            None => value = Some((v, r)),
            Some((w, first)) if *w != v => {
                let at: Vec<String> = key.iter().map(|(k, v)| format!("{k}={v}")).collect();
                return Err(Failure::Mismatch(format!("route disagreement at {}: {first}={w} vs {r}={v}", at.join(" "))));
            }
            _ => {}
        }
    }
    let (value, _) = value.expect("at least one route");
    Ok(Cell { key, value, routes: routes.to_vec() })
}

fn render_cells(cells: &[Cell], label: &str, format: Format) -> String {
    match format {
        Format::Text => cells
            .iter()
            .map(|c| {
                let at: Vec<String> = c.key.iter().map(|(k, v)| format!("{k}={v}")).collect();
                if cells.len() == 1 {
                    format!("{}\t[{}]\n", c.value, names(&c.routes))
                } else {
                    format!("{}\t{}\t[{}]\n", at.join(" "), c.value, names(&c.routes))
                }
            })
            .collect(),
        Format::Csv => {
            let mut s = cells[0].key.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(",");
            s.push_str(",value,routes\n");
            for c in cells {
                let ks: Vec<String> = c.key.iter().map(|(_, v)| v.to_string()).collect();
                s.push_str(&format!("{},{},{}\n", ks.join(","), c.value, names(&c.routes).replace(',', "+")));
            }
            s
        }
        Format::Json => {
            let entries: Vec<Value> = cells
                .iter()
                .map(|c| {
                    let mut o = serde_json::Map::new();
                    for (k, v) in &c.key {
                        o.insert((*k).into(), json!(v));
                    }
                    o.insert("value".into(), json!(c.value.to_string()));
                    o.insert("routes".into(), json!(c.routes.iter().map(|r| r.name()).collect::<Vec<_>>()));
                    Value::Object(o)
                })
                .collect();
            pretty(&json!({ "quantity": label, "entries": entries }))
        }
    }
}

fn qho(a: QhoArgs) -> Result<(), Failure> {
    let routes = parse_routes(&a.routes, &QHO_ROUTES)?;
    let levels: Vec<usize> = match a.max_m {
        Some(mm) => (0..=mm).collect(),
        None => vec![a.m],
    };
    let powers: Vec<usize> = match a.power {
        Some(p) => vec![p],
        None => (0..=a.max_power).collect(),
    };
    let moment = if a.momentum { quantum::qho_momentum_moment } else { quantum::qho_moment };
    let mut cells = Vec::new();
    for &m in &levels {
        for &n in &powers {
            cells.push(agree(vec![("m", m), ("n", n)], &routes, |r| moment(QhoState::new(m), n, r))?);
        }
    }
    let label = if a.momentum { "qho momentum moment" } else { "qho position moment" };
    a.out.emit(&render_cells(&cells, label, a.format))?;
    Ok(())
}

fn hydrogen(a: HydrogenArgs) -> Result<(), Failure> {
    let routes = parse_routes(&a.routes, &HYDROGEN_ROUTES)?;
    let states: Vec<HydrogenState> = match a.max_m {
        Some(mm) => (1..=mm)
            .flat_map(|m| (0..m).map(move |l| HydrogenState::new(m, l)))
            .collect::<Result<_, _>>()?,
        None => vec![HydrogenState::new(a.m, a.l)?],
    };
    let powers: Vec<usize> = match a.power {
        Some(p) => vec![p],
        None => (0..=a.max_power).collect(),
    };
    let mut cells = Vec::new();
    for &s in &states {
        for &n in &powers {
            cells.push(agree(vec![("m", s.m()), ("l", s.l()), ("n", n)], &routes, |r| {
                quantum::hydrogen_moment_by(s, n, r)
            })?);
        }
    }
    a.out.emit(&render_cells(&cells, "hydrogen radial moment", a.format))?;
    Ok(())
}

fn parse_vertex(s: &str) -> Result<lecturehall::SlhVertex> {
    match s.parse::<SlhPoint>()? {
        SlhPoint::Vertex(v) => Ok(v),
        SlhPoint::Top(_) => bail!("a path cannot end at a top point"),
    }
}

fn paths(action: PathsAction, cap: u64) -> Result<()> {
    let mut out = io::stdout().lock();
    match action {
        PathsAction::Count { kind } => {
            let n = match kind {
                PathKind::Motzkin { start, end, len, dyck } => motzkin::count(start, end, len, !dyck),
                PathKind::Slh { from, to, .. } => lecturehall::se_count(from.parse()?, parse_vertex(&to)?),
            };
            writeln!(out, "{n}")?;
        }
        PathsAction::List { kind, family } => {
            let spec = family.as_ref().map(Family::spec);
            match kind {
                PathKind::Motzkin { start, end, len, dyck } => {
                    let opts = EnumOptions { allow_horizontal: !dyck, cap };
                    for p in motzkin::enumerate(start, end, len, opts)? {
                        match &spec {
                            Some(s) => writeln!(out, "{p}\t{}", motzkin::weight(s, &p))?,
                            None => writeln!(out, "{p}")?,
                        }
                    }
                }
                PathKind::Slh { from, to, parity } => {
                    let ws = spec.map(|s| LambdaWeights::new(s, parity.into()));
                    for p in lecturehall::se_enumerate(from.parse()?, parse_vertex(&to)?, cap)? {
                        match &ws {
                            Some(w) => writeln!(out, "{p}\t{}", lecturehall::se_weight(w, &p))?,
                            None => writeln!(out, "{p}")?,
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn run_verify(a: VerifyArgs, cap: u64) -> Result<(), Failure> {
    let fam = a.family.clone();
    let report = match a.suite {
        Suite::Thm35 => {
            let fam = fam.unwrap_or(Family::Symbolic);
            let f = fam.b_zero().ok_or_else(|| anyhow!("family {fam} has b != 0"))?;
            verify::thm35(&f.spec(), a.max_n.unwrap_or(6), cap)?
        }
        Suite::Thm38 => {
            let fam = fam.unwrap_or(Family::Laguerre(Poly::var(orthopath::Indet::Alpha)));
            let (spec, g) = fam.gamma().ok_or_else(|| anyhow!("no gamma decomposition for family {fam}"))?;
            verify::thm38(&spec, &g, a.max_n.unwrap_or(6), cap)?
        }
        Suite::Prop33 => verify::prop33(a.max_n.unwrap_or(10), cap)?,
        Suite::Prop36 => verify::prop36(a.max_n.unwrap_or(7), cap)?,
        Suite::Cor37 => verify::cor37(a.max_n.unwrap_or(6), cap)?,
        Suite::Lemmas => verify::lemmas(a.max_n.unwrap_or(7), cap)?,
    };
    let text = match a.format {
        Format::Json => pretty(&report.to_json()),
        Format::Text => format!("{report}\n"),
        Format::Csv => format!(
            "suite,status,cells,failures,first_failure\n{},{},{},{},{}\n",
            csv(&report.name),
            if report.passed() { "pass" } else { "fail" },
            report.cells,
            report.failures,
            csv(report.first_failure.as_deref().unwrap_or(""))
        ),
    };
    a.out.emit(&text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch(report.to_string()))
    }
}

fn run_render(a: RenderArgs) -> Result<()> {
    let svg = if let Some(m) = &a.motzkin {
        let p: MotzkinPath = m.parse()?;
        let spec = a.family.as_ref().map(Family::spec);
        render::motzkin_svg(&p, spec.as_ref())
    } else {
        let path: Option<SePath> = match a.path.as_deref().map(str::trim) {
            None | Some("") => None,
            Some(s) => Some(s.parse()?),
        };
        let last = path.as_ref().map_or(1, |p| p.points().map(|q| q.column()).max().unwrap_or(0).max(1));
        let columns = a.columns.unwrap_or(last);
        let ws = a.family.as_ref().map(|f| LambdaWeights::new(f.spec(), a.parity.into()));
        render::lecture_hall_svg(columns, path.as_ref(), ws.as_ref().map(|w| w as &dyn WeightSystem))
    };
    a.out.emit(&svg)
}
