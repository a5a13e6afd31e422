//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the exit code with the report text, so it can be driven from
//! tests without spawning a process.
//!
//! Exit codes: 0 when every reported check passes, 1 when a check fails,
//! 2 on input or usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::action::{self, GroupAction};
use crate::complex::{FlagComplex, VertexSet};
use crate::cover::{self, ColumnPermutation, GenParams, HeightFamily};
use crate::dismantle;
use crate::error::{Error, Result};
use crate::homology;
use crate::io::{self, Instance};
use crate::projection::{self, CheckReport, ProjectionStructure, DEFAULT_VERTEX_CAP};

/// Environment variable consulted when `--jobs` is absent.
pub const JOBS_ENV: &str = "KAKIMIZU_JOBS";

pub const BENCH_HEADER: &str = "check,size,seed,vertices,cases,millis,status";

const CHECK_GROUPS: &[&str] = &[
    "projection",
    "order",
    "domination",
    "chain",
    "ball",
    "basis",
    "model",
];

#[derive(Debug, Parser)]
#[command(
    name = "kakimizu",
    version,
    about = "Height-function flag complexes: checks, dismantling, homology, fixed points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Worker threads (defaults to $KAKIMIZU_JOBS, then all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Largest instance accepted.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap_vertices: usize,
    /// Also write the output to this file.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a convex-closed height family.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        columns: usize,
        #[arg(long, default_value_t = 3)]
        max_height: i64,
        /// Number of random heights drawn before closing.
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Make the family invariant under swapping the first two columns.
        #[arg(long)]
        symmetric: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the exhaustive property checkers on a height family or table.
    Check {
        /// `all` or a comma list of: projection, order, domination, chain, ball, basis, model.
        #[arg(long, default_value = "all")]
        axioms: String,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dismantle from a base vertex; flag complexes use the greedy recognizer.
    Dismantle {
        #[arg(long)]
        base: Option<usize>,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced integral homology.
    Homology {
        #[arg(long)]
        max_dim: Option<usize>,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Convex hull of a vertex set, or its σ-convex hull with --base.
    Hull {
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<usize>,
        #[arg(long)]
        base: Option<usize>,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Find a simplex invariant under a group action.
    Fixpoint {
        /// Vertex whose orbit seeds the search.
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        /// Action file; defaults to the family's column symmetries.
        #[arg(long)]
        action: Option<PathBuf>,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the complex of minimal invariant simplices and dismantle it.
    Fixcomplex {
        #[arg(long)]
        action: Option<PathBuf>,
        /// Fix-vertex to dismantle toward; all of them when absent.
        #[arg(long)]
        base: Option<usize>,
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Time the checkers on generated families; CSV output.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        columns: usize,
        #[arg(long, default_value_t = 5)]
        max_height: i64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Gen { common, .. }
            | Command::Check { common, .. }
            | Command::Dismantle { common, .. }
            | Command::Homology { common, .. }
            | Command::Hull { common, .. }
            | Command::Fixpoint { common, .. }
            | Command::Fixcomplex { common, .. }
            | Command::Bench { common, .. } => common,
        }
    }
}

/// Report text and whether every check in it passed.
struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }

    fn reports(mut reports: Vec<CheckReport>) -> Self {
        reports.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = reports.iter().all(|r| r.passed);
        let mut text = String::new();
        for r in &reports {
            writeln!(text, "{r}").unwrap();
        }
        Output { text, passed }
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (u8, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let common = cli.command.common();
    let jobs = common
        .jobs
        .or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.parse().ok()));
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return (2, format!("error: {e}\n")),
    };
    let result = pool.install(|| execute(&cli.command));
    match result.and_then(|out| write_output(common.output.as_deref(), &cli.command, out)) {
        Ok(out) => (if out.passed { 0 } else { 1 }, out.text),
        Err(e) => (exit_code(&e), failure_text(&e)),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Structural { .. } | Error::ModelViolation(_) => 1,
        _ => 2,
    }
}

fn failure_text(e: &Error) -> String {
    match e {
        Error::Structural { message, witness } => {
            let ids: Vec<String> = witness.iter().map(usize::to_string).collect();
            format!("FAIL structural {} ({message})\n", ids.join(" "))
        }
        other => format!("error: {other}\n"),
    }
}

fn write_output(path: Option<&Path>, command: &Command, out: Output) -> Result<Output> {
    let Some(path) = path else {
        return Ok(out);
    };
    std::fs::write(path, &out.text)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    if matches!(command, Command::Gen { .. }) {
        let vertices = out
            .text
            .lines()
            .filter(|l| l.starts_with("vertex "))
            .count();
        return Ok(Output::ok(format!(
            "wrote {} ({vertices} vertices)\n",
            path.display()
        )));
    }
    Ok(out)
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    io::parse_instance(&text).map_err(|e| match e {
        Error::Parse { .. } => Error::Input(format!("{}: {e}", path.display())),
        other => other,
    })
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "instance vertex",
            limit: cap,
        });
    }
    Ok(())
}

fn structure(instance: Instance, cap: usize) -> Result<ProjectionStructure> {
    match instance {
        Instance::Family(fam) => ProjectionStructure::from_family_capped(&fam, cap),
        Instance::Table(ps) => {
            check_size(ps.vertex_count(), cap)?;
            Ok(ps)
        }
        _ => Err(Error::Input(
            "expected a height family or projection table".into(),
        )),
    }
}

fn execute(command: &Command) -> Result<Output> {
    let cap = command.common().cap_vertices;
    match command {
        Command::Gen {
            seed,
            columns,
            max_height,
            count,
            symmetric,
            ..
        } => {
            let mut params = GenParams::new(*columns, *count, *max_height, *seed);
            params.max_vertices = params.max_vertices.min(cap);
            let fam = if *symmetric {
                cover::generate_symmetric(&params, &first_swap(*columns)?)?
            } else {
                cover::generate_random(&params)?
            };
            Ok(Output::ok(io::serialize_height_family(&fam)))
        }
        Command::Check { axioms, file, .. } => {
            let groups = parse_axioms(axioms)?;
            let ps = structure(read_instance(file)?, cap)?;
            let reports = projection::run_all_checks(&ps)
                .into_iter()
                .filter(|r| groups.iter().any(|g| group_of(&r.name) == *g))
                .collect();
            Ok(Output::reports(reports))
        }
        Command::Dismantle { base, file, .. } => match read_instance(file)? {
            Instance::Complex(c) => {
                check_size(c.vertex_count(), cap)?;
                if base.is_some() {
                    return Err(Error::Input(
                        "--base needs a height family or projection table".into(),
                    ));
                }
                greedy_output(&c)
            }
            other => {
                let ps = structure(other, cap)?;
                let sigma = base.unwrap_or(0);
                if sigma >= ps.vertex_count() {
                    return Err(Error::Input(format!("base {sigma} out of range")));
                }
                let order = dismantle::projection_dismantle(&ps, sigma)?;
                let report = dismantle::verify_dismantling(ps.complex(), &order)?;
                let passed = report.passed;
                Ok(Output {
                    text: format!("{order}\n{report}\n"),
                    passed,
                })
            }
        },
        Command::Homology { max_dim, file, .. } => {
            let c = complex_of(read_instance(file)?)?;
            check_size(c.vertex_count(), cap)?;
            let profile = homology::reduced_homology(&c, *max_dim)?;
            Ok(Output::ok(format!("{profile}\n")))
        }
        Command::Hull {
            vertices,
            base,
            file,
            ..
        } => {
            let ps = structure(read_instance(file)?, cap)?;
            if let Some(&v) = vertices.iter().find(|&&v| v >= ps.vertex_count()) {
                return Err(Error::Input(format!("vertex {v} out of range")));
            }
            // a σ-convex hull always contains σ
            let seed: VertexSet = vertices.iter().copied().chain(*base).collect();
            hull_output(&ps, &seed, *base)
        }
        Command::Fixpoint {
            vertex,
            action,
            file,
            ..
        } => {
            let (ps, a) = structure_and_action(file, action.as_deref(), cap)?;
            let found = action::find_invariant_simplex(&ps, &a, *vertex)?;
            let mut text = format!("orbit {}\nhull {}\n", a.orbit(*vertex), found.hull);
            for (i, step) in found.trace.iter().enumerate() {
                writeln!(
                    text,
                    "step {i} diameter {} l {} removed {} -> diameter {} l {}",
                    step.diameter,
                    step.layer_chain,
                    step.removed,
                    step.next_diameter,
                    step.next_layer_chain
                )
                .unwrap();
            }
            writeln!(text, "simplex {}", found.simplex).unwrap();
            writeln!(
                text,
                "PASS fix.invariant-simplex steps={}",
                found.trace.len()
            )
            .unwrap();
            Ok(Output::ok(text))
        }
        Command::Fixcomplex {
            action, base, file, ..
        } => {
            let (ps, a) = structure_and_action(file, action.as_deref(), cap)?;
            fixcomplex_output(&ps, &a, *base)
        }
        Command::Bench {
            sizes,
            seed,
            columns,
            max_height,
            ..
        } => bench(sizes, *seed, *columns, *max_height, cap).map(Output::ok),
    }
}

/// Transposition of the first two columns.
pub fn first_swap(columns: usize) -> Result<ColumnPermutation> {
    if columns < 2 {
        return Err(Error::Input(
            "--symmetric needs at least two columns".into(),
        ));
    }
    let mut p: Vec<usize> = (0..columns).collect();
    p.swap(0, 1);
    Ok(ColumnPermutation(p))
}

fn parse_axioms(list: &str) -> Result<Vec<&'static str>> {
    if list == "all" {
        return Ok(CHECK_GROUPS.to_vec());
    }
    list.split(',')
        .map(|g| {
            CHECK_GROUPS
                .iter()
                .copied()
                .find(|&known| known == g.trim())
                .ok_or_else(|| {
                    Error::Input(format!(
                        "unknown axiom group `{g}` (expected all or {})",
                        CHECK_GROUPS.join(", ")
                    ))
                })
        })
        .collect()
}

fn group_of(check: &str) -> &str {
    check.split('.').next().unwrap_or(check)
}

fn complex_of(instance: Instance) -> Result<FlagComplex> {
    match instance {
        Instance::Complex(c) => Ok(c),
        Instance::Family(fam) => Ok(fam.complex().clone()),
        Instance::Table(ps) => Ok(ps.complex().clone()),
        Instance::Action(_) => Err(Error::Input("an action file has no complex".into())),
    }
}

fn greedy_output(c: &FlagComplex) -> Result<Output> {
    match dismantle::greedy_dismantle(c) {
        Some(order) => {
            let report = dismantle::verify_dismantling(c, &order)?;
            Ok(Output {
                passed: report.passed,
                text: format!("{order}\n{report}\n"),
            })
        }
        None => Ok(Output {
            text: "FAIL dismantling.greedy (no dominated vertex left)\n".into(),
            passed: false,
        }),
    }
}

fn hull_output(ps: &ProjectionStructure, seed: &VertexSet, base: Option<usize>) -> Result<Output> {
    let hull = match base {
        Some(sigma) => dismantle::sigma_convex_hull(ps, seed, sigma)?,
        None => projection::convex_hull(ps, seed),
    };
    let diameter = |s: &VertexSet| {
        s.iter()
            .flat_map(|u| s.iter().map(move |v| ps.dist(u, v)))
            .max()
            .unwrap_or(0)
    };
    let (before, after) = (diameter(seed), diameter(&hull));
    let mut text = format!("hull {hull}\ndiameter {before} -> {after}\n");
    if base.is_none() {
        let report = if before == after {
            CheckReport::pass("hull.diameter", 1)
        } else {
            CheckReport::fail("hull.diameter", 1, seed.as_slice().to_vec())
                .with_detail(format!("{before} became {after}"))
        };
        writeln!(text, "{report}").unwrap();
        return Ok(Output {
            passed: report.passed,
            text,
        });
    }
    Ok(Output::ok(text))
}

fn structure_and_action(
    file: &Path,
    action_file: Option<&Path>,
    cap: usize,
) -> Result<(ProjectionStructure, GroupAction)> {
    let instance = read_instance(file)?;
    let family: Option<HeightFamily> = match &instance {
        Instance::Family(f) => Some(f.clone()),
        _ => None,
    };
    let ps = structure(instance, cap)?;
    let a = match (action_file, family) {
        (Some(path), _) => match read_instance(path)? {
            Instance::Action(generators) => GroupAction::new(ps.vertex_count(), generators)?,
            _ => {
                return Err(Error::Input(format!(
                    "{} is not an action file",
                    path.display()
                )))
            }
        },
        (None, Some(fam)) => GroupAction::from_columns(&fam, &cover::column_symmetries(&fam)?)?,
        (None, None) => GroupAction::trivial(ps.vertex_count()),
    };
    let report = action::check_action(&ps, &a);
    if !report.passed {
        return Err(Error::structural(
            format!(
                "action is not equivariant: {}",
                report.detail.unwrap_or_default()
            ),
            report.witness.unwrap_or_default(),
        ));
    }
    Ok((ps, a))
}

fn fixcomplex_output(
    ps: &ProjectionStructure,
    a: &GroupAction,
    base: Option<usize>,
) -> Result<Output> {
    let fix = action::fix_complex(ps.complex(), a);
    let mut text = String::new();
    for (i, s) in fix.simplices.iter().enumerate() {
        writeln!(text, "fixvertex {i} {s}").unwrap();
    }
    for &(u, v) in fix.complex.edges() {
        writeln!(text, "fixedge {u} {v}").unwrap();
    }
    if fix.vertex_count() == 0 {
        text.push_str("fix complex is empty\n");
        return Ok(Output::ok(text));
    }
    let bases: Vec<usize> = match base {
        Some(b) if b >= fix.vertex_count() => {
            return Err(Error::Input(format!("fix-vertex {b} out of range")))
        }
        Some(b) => vec![b],
        None => (0..fix.vertex_count()).collect(),
    };
    let mut reports = Vec::new();
    let mut sum_cases = 0;
    let mut sum_failure = None;
    for &b in &bases {
        let mut dismantled = CheckReport::pass("fix.dismantling", 1);
        if let Err(e) = action::fix_dismantle(ps, a, &fix, b) {
            dismantled =
                CheckReport::fail("fix.dismantling", 1, vec![b]).with_detail(e.to_string());
        }
        if !dismantled.passed && reports.is_empty() {
            reports.push(dismantled);
        }
        for d in (0..fix.vertex_count()).filter(|&d| d != b) {
            let r =
                action::verify_distance_sum_decrease(ps, a, &fix.simplices[b], &fix.simplices[d]);
            sum_cases += r.cases;
            if !r.passed && sum_failure.is_none() {
                sum_failure = Some(r.with_detail(format!("fix-vertices {b} -> {d}")));
            }
        }
    }
    if reports.is_empty() {
        reports.push(CheckReport::pass("fix.dismantling", bases.len() as u64));
    }
    reports.push(sum_failure.unwrap_or_else(|| CheckReport::pass("fix.distance-sum", sum_cases)));
    let point = homology::is_homology_point(&fix.complex)?;
    reports.push(if point {
        CheckReport::pass("fix.homology-point", 1)
    } else {
        CheckReport::fail("fix.homology-point", 1, vec![])
    });
    let out = Output::reports(reports);
    text.push_str(&out.text);
    Ok(Output {
        text,
        passed: out.passed,
    })
}

/// Smallest generated family with at least `size` vertices, drawing more
/// heights until the closure is large enough.
fn family_of_size(
    size: usize,
    seed: u64,
    columns: usize,
    max_height: i64,
    cap: usize,
) -> Result<HeightFamily> {
    let mut best: Option<HeightFamily> = None;
    for count in 2..=4 * size.max(2) {
        let mut params = GenParams::new(columns, count, max_height, seed);
        params.max_vertices = cap;
        match cover::generate_random(&params) {
            Ok(fam) if fam.len() >= size => return Ok(fam),
            Ok(fam) => best = Some(fam),
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    best.ok_or(Error::CapExceeded {
        what: "instance vertex",
        limit: cap,
    })
}

fn bench(
    sizes: &[usize],
    seed: u64,
    columns: usize,
    max_height: i64,
    cap: usize,
) -> Result<String> {
    type Timed = fn(&ProjectionStructure) -> Result<(u64, bool)>;
    fn reports(rs: Vec<CheckReport>) -> Result<(u64, bool)> {
        Ok((
            rs.iter().map(|r| r.cases).sum(),
            rs.iter().all(|r| r.passed),
        ))
    }
    let checks: [(&str, Timed); 8] = [
        ("projection", |ps| {
            reports(vec![projection::verify_projection_decrement(ps)])
        }),
        ("order", |ps| reports(projection::verify_order_axioms(ps))),
        ("domination", |ps| {
            reports(projection::verify_domination(ps))
        }),
        ("chain", |ps| {
            reports(vec![projection::chain_length_stats(ps)?.report])
        }),
        ("ball", |ps| {
            reports(vec![projection::verify_ball_retention(ps)])
        }),
        ("basis", |ps| {
            reports(vec![projection::verify_change_of_basis(ps)])
        }),
        ("dismantle", |ps| {
            let order = dismantle::projection_dismantle(ps, 0)?;
            reports(vec![dismantle::verify_dismantling(ps.complex(), &order)?])
        }),
        ("homology", |ps| {
            let point = homology::is_homology_point(ps.complex())?;
            Ok((ps.vertex_count() as u64, point))
        }),
    ];
    let mut out = format!("{BENCH_HEADER}\n");
    for &size in sizes {
        let instance = if size > cap {
            None
        } else {
            match family_of_size(size, seed, columns, max_height, cap) {
                Ok(fam) => Some(ProjectionStructure::from_family_capped(&fam, cap)?),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            }
        };
        for (name, run) in checks {
            let Some(ps) = &instance else {
                writeln!(out, "{name},{size},{seed},0,0,0,SKIPPED(cap)").unwrap();
                continue;
            };
            let start = Instant::now();
            let (cases, status) = match run(ps) {
                Ok((cases, true)) => (cases, "PASS".to_string()),
                Ok((cases, false)) => (cases, "FAIL".to_string()),
                Err(e) => (0, format!("ERROR({})", e.to_string().replace(',', ";"))),
            };
            let millis = start.elapsed().as_millis();
            writeln!(
                out,
                "{name},{size},{seed},{},{cases},{millis},{status}",
                ps.vertex_count()
            )
            .unwrap();
        }
    }
    Ok(out)
}
