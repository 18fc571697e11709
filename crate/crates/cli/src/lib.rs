//! Command implementations behind the `torfan` binary. Each command returns
//! its output and exit code instead of printing, so the binary stays a thin
//! wrapper and the commands are testable in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use torfan::fan::{Completeness, Smoothness};
use torfan::pi1::{self, AbelianVerdict, Pi1Error, Which};
use torfan::present::ExportFormat;
use torfan::racg::{CommutationGraph, Order, DEFAULT_BALL_CAP};
use torfan::topology;
use torfan::{Fan, Word};

/// Environment variable overriding the ball enumeration cap.
pub const BALL_RADIUS_VAR: &str = "TORFAN_BALL_RADIUS";

/// Radius of the `[W, W]` torsion sample in `analyze`, before capping.
const SAMPLE_RADIUS: usize = 4;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "torfan",
    version,
    about = "Topology of real toric varieties from smooth fans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a fan file and check smoothness and completeness.
    Validate { path: PathBuf },
    /// Full report: validation, connectivity, fundamental group, arrangement.
    Analyze {
        path: PathBuf,
        /// Emit canonical JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print a presentation of the fundamental group.
    Present {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = WhichArg::Full)]
        which: WhichArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Write the barycentric refinement of a fan.
    Refine { path: PathBuf, out: PathBuf },
    /// Operations on words in the right-angled Coxeter group of a fan.
    Word {
        path: PathBuf,
        #[arg(value_enum)]
        op: WordOp,
        /// Whitespace-separated generator indices, e.g. "0 2 0 2".
        word: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Full,
    Simplified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WordOp {
    Reduce,
    Order,
    InPi1,
    InCommutator,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Settings read from the environment.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub ball_radius: Option<String>,
}

impl Env {
    pub fn from_process() -> Self {
        Env {
            ball_radius: std::env::var(BALL_RADIUS_VAR).ok(),
        }
    }

    fn ball_cap(&self) -> Result<usize, String> {
        match &self.ball_radius {
            None => Ok(DEFAULT_BALL_CAP),
            Some(s) => s.trim().parse().map_err(|_| {
                format!("{BALL_RADIUS_VAR} must be a non-negative integer, got `{s}`")
            }),
        }
    }
}

pub fn run<I, T>(args: I, env: &Env) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, text)
            };
        }
    };
    match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Analyze { path, json } => analyze(&path, json, env),
        Command::Present {
            path,
            which,
            format,
        } => present(&path, which, format),
        Command::Refine { path, out } => refine(&path, &out),
        Command::Word { path, op, word: w } => word(&path, op, &w),
    }
}

fn load(path: &Path) -> Result<Fan, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("cannot read {}: {e}\n", path.display())))?;
    Fan::parse(&text).map_err(|e| Outcome::fail(EXIT_INPUT, format!("{}: {e}\n", path.display())))
}

pub fn validate(path: &Path) -> Outcome {
    let fan = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let complete = fan.is_complete();
    match fan.check_smooth() {
        Smoothness::Smooth => Outcome::ok(format!(
            "smooth: true\ncomplete: {complete}\nrays: {}\nmaximal cones: {}\n",
            fan.ray_count(),
            fan.max_cones().len()
        )),
        Smoothness::Singular(cone) => Outcome {
            code: EXIT_SEMANTIC,
            stdout: format!("smooth: false\ncomplete: {complete}\n"),
            stderr: format!("cone {cone} is not smooth\n"),
        },
    }
}

fn cone_counts(fan: &Fan) -> Vec<usize> {
    let mut counts = vec![0; fan.dim() + 1];
    for c in fan.faces() {
        counts[c.dim()] += 1;
    }
    counts
}

fn order_name(o: Order) -> &'static str {
    match o {
        Order::One => "1",
        Order::Two => "2",
        Order::Infinite => "infinite",
    }
}

/// Builds the analysis report. The second value is the refusal message when
/// part of the pipeline could not run.
pub fn analysis_report(fan: &Fan, env: &Env) -> Result<(Value, Option<String>), String> {
    let cap = env.ball_cap()?;
    let smooth = fan.is_smooth();
    let complete = matches!(fan.check_complete(), Completeness::Complete);
    let flag_like = fan.is_flag_like();
    let mut warnings: Vec<String> = Vec::new();
    let mut error: Option<String> = None;
    if !smooth {
        warnings.push("fan is not smooth; topological conclusions do not apply".into());
    }

    let report = pi1::analyze(fan, true);
    let conn = report.connectedness;
    let components = match conn.component_count() {
        Some(c) => json!(c),
        None => json!(format!("2^{}", conn.deficiency)),
    };

    let pi1_value = if !conn.connected {
        error = Some(
            Pi1Error::DisconnectedFan {
                deficiency: conn.deficiency,
            }
            .to_string(),
        );
        Value::Null
    } else {
        let basis = report.basis.as_ref().expect("connected fans have a basis");
        let mut obj = serde_json::Map::new();
        obj.insert("basis".into(), json!(basis.basis_ray_indices));
        obj.insert("permutation".into(), json!(basis.permutation));
        obj.insert(
            "basis_pairwise_conical".into(),
            json!(basis.basis_is_pairwise_conical),
        );
        let counts = |p: &Option<torfan::Presentation>| match p {
            Some(p) => json!({"generators": p.generators().len(), "relators": p.relators().len()}),
            None => Value::Null,
        };
        obj.insert(
            "presentation_full".into(),
            counts(&report.presentation_full),
        );
        obj.insert(
            "presentation_simplified".into(),
            counts(&report.presentation_simplified),
        );
        if report.presentation_full.is_none() {
            warnings.push(format!(
                "dimension {} exceeds {}; presentations omitted",
                fan.dim(),
                pi1::MAX_PRESENTATION_DIM
            ));
        }
        match &report.abelian {
            Some(verdict) => {
                obj.insert("abelian".into(), json!(verdict.is_abelian()));
                obj.insert("case".into(), json!(verdict.tag()));
                if let AbelianVerdict::NonAbelian { witness } = verdict {
                    obj.insert("witness".into(), json!(witness.to_string()));
                }
            }
            None => {
                obj.insert("abelian".into(), Value::Null);
                obj.insert("case".into(), Value::Null);
                warnings
                    .push("basis rays do not pairwise span cones; abelianness undecided".into());
            }
        }
        obj.insert(
            "structure".into(),
            match &report.structure {
                Some(s) => json!(s.to_string()),
                None => Value::Null,
            },
        );
        obj.insert("generator_orders".into(), torsion_note(fan));
        Value::Object(obj)
    };

    let arrangement_value = match topology::pi1_arrangement(fan) {
        Ok(group) => {
            let arrangement = topology::arrangement(fan).expect("checked by pi1_arrangement");
            if arrangement.incomplete_fan {
                warnings.push(
                    "fan is not complete; arrangement admitted because rays contain a basis mod 2"
                        .into(),
                );
            }
            let radius = SAMPLE_RADIUS.min(cap);
            let ball = group
                .graph
                .enumerate_ball_with_cap(radius, cap)
                .expect("radius clamped to cap");
            let torsion_free = ball
                .iter()
                .filter(|w| !w.is_identity() && group.contains(w.word()))
                .all(|w| group.graph.order(w.word()) == Order::Infinite);
            json!({
                "subspaces": arrangement.subspaces.iter().map(|s| json!({
                    "zero_coordinates": s.zero_coordinates,
                    "codimension": s.codimension,
                })).collect::<Vec<_>>(),
                "k_pi_1": arrangement.is_k_pi_1(),
                "commutator_normal_generators": group.normal_generators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "commutator_free_rank": group.free_rank,
                "torsion_free_sample": {"radius": radius, "torsion_free": torsion_free},
            })
        }
        Err(e) => {
            warnings.push(format!("arrangement: {e}"));
            Value::Null
        }
    };

    let mut value = json!({
        "fan_summary": {
            "n": fan.dim(),
            "d": fan.ray_count(),
            "cone_counts": cone_counts(fan),
        },
        "validation": {"smooth": smooth, "complete": complete, "flag_like": flag_like},
        "aspherical": smooth && topology::is_aspherical(fan),
        "connectivity": {"connected": conn.connected, "components": components},
        "pi1": pi1_value,
        "arrangement": arrangement_value,
        "warnings": warnings,
    });
    if let Some(e) = &error {
        value["error"] = json!(e);
    }
    Ok((value, error))
}

/// Order of each `S_j` (non-basis `j`); order 2 exactly when ray `j` spans a
/// cone with every basis ray.
fn torsion_note(fan: &Fan) -> Value {
    let Ok(gens) = pi1::pi1_generators_in_w(fan) else {
        return Value::Null;
    };
    let graph = CommutationGraph::from_fan(fan);
    let size = 1usize << fan.dim();
    let basis = pi1::choose_basis(fan).expect("connected");
    let mut orders = serde_json::Map::new();
    for (k, w) in gens.iter().step_by(size).enumerate() {
        let ray = basis.permutation[basis.rank() + k];
        orders.insert(ray.to_string(), json!(order_name(graph.order(w))));
    }
    Value::Object(orders)
}

fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

pub fn analyze(path: &Path, as_json: bool, env: &Env) -> Outcome {
    let fan = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let (value, error) = match analysis_report(&fan, env) {
        Ok(r) => r,
        Err(msg) => return Outcome::fail(EXIT_INPUT, format!("{msg}\n")),
    };
    let stdout = if as_json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("json values serialize")
        )
    } else {
        render_text(&value)
    };
    Outcome {
        code: if error.is_some() {
            EXIT_SEMANTIC
        } else {
            EXIT_OK
        },
        stdout,
        stderr: error.map(|e| format!("{e}\n")).unwrap_or_default(),
    }
}

pub fn present(path: &Path, which: WhichArg, format: FormatArg) -> Outcome {
    let fan = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let which = match which {
        WhichArg::Full => Which::Full,
        WhichArg::Simplified => Which::Simplified,
    };
    let fail = |e: Pi1Error| Outcome::fail(EXIT_SEMANTIC, format!("{e}\n"));
    let report = match pi1::verify_presentation(&fan, which.clone()) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if let Some(f) = report.failure {
        return Outcome::fail(
            EXIT_SEMANTIC,
            format!("presentation failed verification: {f}\n"),
        );
    }
    let presentation = match which {
        Which::Full => pi1::rs_presentation(&fan),
        Which::Simplified => pi1::simplified_presentation(&fan),
    };
    let p = match presentation {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let format = match format {
        FormatArg::Plain => ExportFormat::Plain,
        FormatArg::Machine => ExportFormat::Machine,
    };
    let mut text = p.export(format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Outcome::ok(text)
}

pub fn refine(path: &Path, out: &Path) -> Outcome {
    let fan = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let refined = fan.barycentric_refine();
    match fs::write(out, format!("{}\n", refined.to_json())) {
        Ok(()) => Outcome::ok(format!(
            "wrote {} ({} rays, {} maximal cones, flag-like: {})\n",
            out.display(),
            refined.ray_count(),
            refined.max_cones().len(),
            refined.is_flag_like()
        )),
        Err(e) => Outcome::fail(EXIT_INPUT, format!("cannot write {}: {e}\n", out.display())),
    }
}

pub fn word(path: &Path, op: WordOp, text: &str) -> Outcome {
    let fan = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let graph = CommutationGraph::from_fan(&fan);
    let w = match text.parse::<Word>().and_then(|w| graph.check(&w)) {
        Ok(w) => w,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{e}\n")),
    };
    let answer = match op {
        WordOp::Reduce => graph.reduce(&w).to_string(),
        WordOp::Order => order_name(graph.order(&w)).to_string(),
        WordOp::InCommutator => graph.in_commutator_subgroup(&w).to_string(),
        WordOp::InPi1 => match pi1::choose_basis(&fan) {
            Ok(basis) => pi1::in_pi1(&pi1::char_matrix(&fan, &basis), &w).to_string(),
            Err(e) => return Outcome::fail(EXIT_SEMANTIC, format!("{e}\n")),
        },
    };
    Outcome::ok(format!("{answer}\n"))
}
