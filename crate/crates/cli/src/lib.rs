//! Configuration, dispatch and report emission for the `qslice` binary.
//!
//! Reports are JSON objects with sorted keys and rationals as `"p/q"`
//! strings, so parsing a report and printing it again reproduces it byte for
//! byte. Every report embeds the configuration that produced it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::ValueEnum;
use qslice::hypertoric::ChamberReport;
use qslice::modelgeom::{model_check, transition_matrix};
use qslice::polyhedra::trace_elimination;
use qslice::rootlat::{p_form, positive_roots_below};
use qslice::strata::{flower_leaf_report, moment_map_flat, slice_quiver};
use qslice::{
    build_full, build_reduced, chamber_status, chamber_to_ordering, classify, reference_count, Arrangement,
    ConeCache, DimVector, Engine, EnumerationOptions, FlowerLeafSpec, FramedSetting, LeafPoint, Quiver, Rational,
    SignVector, Status,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Exit status for a run whose internal cross-checks disagreed.
pub const EXIT_MISMATCH: u8 = 3;
/// Exit status for an invalid configuration.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for any other failure (I/O, malformed input files).
pub const EXIT_FAILURE: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Positive roots below a bound, with their `p` values.
    Roots,
    /// Flatness of the moment map for the flower setting.
    FlatCheck,
    /// Every leaf of the flower setting with dimension and boundary codimension.
    Leaves,
    /// Slice quiver at the minimal relevant leaf.
    Slice,
    /// Bounded chambers, their orderings, and the closed-form count.
    Classify,
    /// Status of every sign vector of the arrangement.
    Chambers,
    /// Counts over a window of integer parameters.
    Sweep,
    /// Darboux frames and unipotent transition on random leaf points.
    Modelcheck,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Which realization of the arrangement `chambers` scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ArrangementKind {
    #[default]
    Reduced,
    Full,
}

/// Engine choice on the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EngineArg {
    Fm,
    #[default]
    Simplex,
    Verified,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Fm => Engine::FourierMotzkin,
            EngineArg::Simplex => Engine::Simplex,
            EngineArg::Verified => Engine::Verified,
        }
    }
}

/// Inclusive integer range written `a:b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub start: i64,
    pub end: i64,
}

impl FromStr for Window {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("window `{s}` is not of the form a:b"))?;
        let start = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
        let end = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
        if start > end {
            return Err(format!("window `{s}` is empty"));
        }
        Ok(Window { start, end })
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: u32,
    pub loops: u32,
    pub framing: u32,
    pub lambda: Option<Rational>,
    pub format: Format,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub quiver: Option<PathBuf>,
    pub window: Option<Window>,
    pub samples: usize,
    pub engine: EngineArg,
    pub arrangement: ArrangementKind,
    /// Leaf point `s_1..s_l, t_1..t_l` for printing one transition matrix.
    pub point: Option<Vec<Rational>>,
    /// Attach elimination traces to bounded chambers.
    pub trace: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: 2,
            loops: 2,
            framing: 1,
            lambda: None,
            format: Format::Json,
            seed: 0,
            jobs: None,
            quiver: None,
            window: None,
            samples: 20,
            engine: EngineArg::Simplex,
            arrangement: ArrangementKind::Reduced,
            point: None,
            trace: false,
        }
    }

    /// Per-command checks that the argument parser cannot express.
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.loops < 2 && self.quiver.is_none() {
            return usage(format!("--loops must be at least 2, got {}", self.loops));
        }
        if self.framing < 1 && self.quiver.is_none() {
            return usage("--framing must be at least 1".into());
        }
        if self.jobs == Some(0) {
            return usage("--jobs must be positive".into());
        }
        match self.command {
            Command::Classify | Command::Chambers => {
                if self.lambda.is_none() {
                    return usage(format!("{} needs --lambda", self.command_name()));
                }
                if self.n < 2 {
                    return usage("the arrangement needs --n at least 2".into());
                }
                if self.n > 5 {
                    return usage(format!("--n {} gives too many sign vectors to scan", self.n));
                }
            }
            Command::Sweep => {
                if self.window.is_none() {
                    return usage("sweep needs --window a:b".into());
                }
                if !(2..=5).contains(&self.n) {
                    return usage("sweep needs --n between 2 and 5".into());
                }
            }
            Command::Slice | Command::Leaves | Command::FlatCheck => {
                if self.n < 1 {
                    return usage("--n must be positive".into());
                }
            }
            Command::Modelcheck => {
                if let Some(p) = &self.point {
                    if p.len() != 2 * self.loops as usize {
                        return usage(format!("--point needs {} coordinates for --loops {}", 2 * self.loops, self.loops));
                    }
                }
            }
            Command::Roots => {}
        }
        if self.arrangement == ArrangementKind::Full && self.command != Command::Chambers {
            return usage("--arrangement applies only to chambers".into());
        }
        Ok(())
    }

    fn command_name(&self) -> String {
        self.command.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qslice::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("worker pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// A finished run: the JSON document, a human summary, and whether every
/// cross-check agreed.
#[derive(Clone, Debug)]
pub struct Report {
    pub document: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => canonical_json(&self.document),
            Format::Text => self.text.clone(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.ok {
            0
        } else {
            EXIT_MISMATCH
        }
    }
}

/// Pretty JSON with sorted keys, newline terminated.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    log::info!("running {} with seed {}", config.command_name(), config.seed);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Pool(e.to_string()))?;
    let (result, text, ok) = pool.install(|| dispatch(config))?;
    let document = json!({
        "command": config.command_name(),
        "config": config,
        "ok": ok,
        "result": result,
    });
    // Round trip through text so the held value has the same key order and
    // number forms a reader would see.
    let document: Value = serde_json::from_str(&canonical_json(&document)).expect("own output parses");
    Ok(Report { document, text, ok })
}

type Outcome = (Value, String, bool);

fn dispatch(c: &RunConfig) -> Result<Outcome, CliError> {
    match c.command {
        Command::Roots => roots(c),
        Command::FlatCheck => flat_check(c),
        Command::Leaves => leaves(c),
        Command::Slice => slice(c),
        Command::Classify => classify_cmd(c),
        Command::Chambers => chambers(c),
        Command::Sweep => sweep(c),
        Command::Modelcheck => modelcheck(c),
    }
}

/// Quiver file: either a bare quiver or `{"quiver": .., "bound": {..}}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum QuiverFile {
    WithBound { quiver: Quiver, bound: BTreeMap<String, i64> },
    Bare(Quiver),
}

fn read_quiver(path: &PathBuf) -> Result<(Quiver, Option<BTreeMap<String, i64>>), CliError> {
    let raw = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let file: QuiverFile = serde_json::from_str(&raw).map_err(|source| CliError::Json {
        path: path.clone(),
        source,
    })?;
    Ok(match file {
        QuiverFile::WithBound { quiver, bound } => (quiver, Some(bound)),
        QuiverFile::Bare(q) => (q, None),
    })
}

fn roots(c: &RunConfig) -> Result<Outcome, CliError> {
    let (quiver, bound) = match &c.quiver {
        Some(path) => {
            let (q, b) = read_quiver(path)?;
            let bound = match b {
                Some(b) => DimVector::from_labeled(&q, &b)?,
                None => DimVector::new(vec![c.n as i64; q.num_vertices()])?,
            };
            (q, bound)
        }
        None => {
            let q = Quiver::extended_flower(c.loops as usize, c.framing as usize);
            let bound = DimVector::new(vec![c.n as i64, 1])?;
            (q, bound)
        }
    };
    let found = positive_roots_below(&quiver, &bound)?;
    let mut text = format!("{} positive roots below {:?}\n", found.len(), bound.labeled(&quiver));
    let mut list = Vec::new();
    for r in &found {
        let p = p_form(&quiver, r)?;
        let _ = writeln!(text, "{:?}  p = {p}", r.labeled(&quiver));
        list.push(json!({ "root": r.labeled(&quiver), "p": p }));
    }
    let result = json!({
        "quiver": quiver,
        "bound": bound.labeled(&quiver),
        "tits_matrix": quiver.tits_matrix(),
        "roots": list,
    });
    Ok((result, text, true))
}

fn flat_check(c: &RunConfig) -> Result<Outcome, CliError> {
    let s = FramedSetting::flower(c.n as i64, c.loops as usize, c.framing as i64)?;
    let flat = moment_map_flat(&s)?;
    let text = format!(
        "moment map for n={}, loops={}, framing={}: {}\n",
        c.n,
        c.loops,
        c.framing,
        if flat { "flat" } else { "not flat" }
    );
    Ok((json!({ "flat": flat }), text, true))
}

fn leaves(c: &RunConfig) -> Result<Outcome, CliError> {
    let report = flower_leaf_report(c.n, c.loops, c.framing)?;
    let mut text = format!("{} representation types\n", report.len());
    for leaf in &report {
        let codim = match &leaf["boundary_codim"] {
            Value::Null => "-".to_string(),
            v => v.to_string(),
        };
        let _ = writeln!(
            text,
            "dim {:>3}  relevant {:<5}  boundary codim {:>2}  {}",
            leaf["dim"].to_string(),
            leaf["relevant"].to_string(),
            codim,
            leaf["tau"]
        );
    }
    Ok((json!({ "count": report.len(), "leaves": report }), text, true))
}

fn minimal_slice(c: &RunConfig) -> Result<qslice::SliceQuiverData, CliError> {
    let spec = FlowerLeafSpec::minimal(c.n, c.loops, c.framing)?;
    let q = Quiver::extended_flower(c.loops as usize, c.framing as usize);
    Ok(slice_quiver(&q, &spec.rep_type())?)
}

fn slice(c: &RunConfig) -> Result<Outcome, CliError> {
    let data = minimal_slice(c)?;
    let stripped = data.without_loops()?;
    let pairs = c.n as usize * (c.n as usize - 1) / 2;
    let arrows = stripped.quiver.arrows().len();
    // Expected shape: 2l-2 arrows per pair of vertices and no loops after
    // stripping.
    let ok = arrows == pairs * (2 * c.loops as usize - 2);
    let text = format!(
        "slice quiver: {} vertices, {} arrows ({} loops removed), framing {:?}\n",
        stripped.quiver.num_vertices(),
        arrows,
        data.quiver.arrows().len() - arrows,
        stripped.w.as_slice()
    );
    Ok((json!({ "slice": data.to_json(), "without_loops": stripped.to_json() }), text, ok))
}

fn options(c: &RunConfig, lattice: bool, cache: Arc<ConeCache>) -> EnumerationOptions {
    EnumerationOptions {
        engine: c.engine.into(),
        prune: false,
        verify: false,
        lattice,
        cache,
    }
}

fn classify_cmd(c: &RunConfig) -> Result<Outcome, CliError> {
    let lambda = c.lambda.clone().expect("validated");
    let opts = options(c, true, Arc::new(ConeCache::new()));
    let report = classify(c.n as usize, c.loops as usize, c.framing as usize, &lambda, &opts)?;
    let ok = report.matches();
    let mut text = format!("count: {} (expected {})\n", report.count, report.expected);
    for ch in &report.chambers {
        let _ = writeln!(text, "{}  {}", ch.ordering, signs_line(ch));
    }
    if !ok {
        let _ = writeln!(text, "MISMATCH: enumeration and closed form disagree");
    }
    let mut result = serde_json::to_value(&report).expect("report serializes");
    if !ok {
        result["diff"] = json!({ "found": report.count, "expected": report.expected });
    }
    Ok((result, text, ok))
}

fn signs_line(ch: &ChamberReport) -> String {
    ch.signs.iter().map(|(k, s)| format!("{k}{}", s.as_str())).collect::<Vec<_>>().join(" ")
}

fn chambers(c: &RunConfig) -> Result<Outcome, CliError> {
    let lambda = c.lambda.clone().expect("validated");
    match c.arrangement {
        ArrangementKind::Reduced => {
            let arr = build_reduced(c.n as usize, c.loops as usize, c.framing as usize, lambda)?;
            scan_all(c, &arr)
        }
        ArrangementKind::Full => {
            let slice = minimal_slice(c)?.without_loops()?;
            let arr = build_full(&slice, lambda)?;
            scan_all(c, &arr)
        }
    }
}

fn scan_all<A: Arrangement>(c: &RunConfig, arr: &A) -> Result<Outcome, CliError> {
    use rayon::prelude::*;
    let vars = arr.sign_variables();
    if vars.len() > 20 {
        return Err(CliError::Usage(format!("{} sign variables is too many to list", vars.len())));
    }
    let engine: Engine = c.engine.into();
    let rows: Vec<Value> = (0..1u64 << vars.len())
        .into_par_iter()
        .map(|idx| -> Result<Value, CliError> {
            let alpha = SignVector::from_index(vars, idx);
            let ch = chamber_status(arr, &alpha, engine)?;
            let mut row = json!({ "signs": alpha, "status": ch.status });
            if ch.status == Status::Bounded {
                row["lattice_points"] = json!(ch.lattice.unwrap_or_default());
                if c.trace {
                    let (_, steps) = trace_elimination(&arr.working_polyhedron(alpha.signs())?);
                    row["trace"] = json!(steps);
                }
            }
            Ok(row)
        })
        .collect::<Result<_, _>>()?;
    let bounded = rows.iter().filter(|r| r["status"] == "bounded").count();
    let empty = rows.iter().filter(|r| r["status"] == "empty").count();
    let text = format!(
        "{} sign vectors: {} bounded, {} empty, {} unbounded\n",
        rows.len(),
        bounded,
        empty,
        rows.len() - bounded - empty
    );
    Ok((json!({ "bounded": bounded, "chambers": rows }), text, true))
}

fn sweep(c: &RunConfig) -> Result<Outcome, CliError> {
    let window = c.window.expect("validated");
    let cache = Arc::new(ConeCache::new());
    let (n, ell, w) = (c.n as usize, c.loops as usize, c.framing as usize);
    let mut rows = Vec::new();
    let mut text = String::from("lambda  count  expected\n");
    let mut ok = true;
    for l in window.start..=window.end {
        let lambda = Rational::from(l);
        let arr = build_reduced(n, ell, w, lambda.clone())?;
        let found = qslice::enumerate_bounded(&arr, &options(c, false, cache.clone()))?;
        let mut orderings = Vec::new();
        for ch in &found {
            orderings.push(chamber_to_ordering(&ch.sign, n)?);
        }
        orderings.sort();
        orderings.dedup();
        let expected = reference_count(n as u64, ell as u64, w as u64, &lambda);
        // Above and below the gap the orderings must be all distinct.
        let row_ok = found.len() as u64 == expected && orderings.len() == found.len();
        ok &= row_ok;
        let _ = writeln!(
            text,
            "{l:>6}  {:>5}  {:>8}{}",
            found.len(),
            expected,
            if row_ok { "" } else { "  MISMATCH" }
        );
        rows.push(json!({
            "lambda": lambda,
            "count": found.len(),
            "expected": expected,
            "distinct_orderings": orderings.len(),
            "ok": row_ok,
        }));
    }
    Ok((json!({ "rows": rows }), text, ok))
}

fn modelcheck(c: &RunConfig) -> Result<Outcome, CliError> {
    let ell = c.loops as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let summary = model_check(&mut rng, ell, c.samples)?;
    let mut text = format!(
        "unipotent: {u}/{s}, darboux: {d}/{s}\ninvertible: {i}/{s}, closed form: {f}/{s}\n",
        u = summary.unipotent,
        d = summary.darboux,
        i = summary.invertible,
        f = summary.closed_form,
        s = summary.samples
    );
    let mut result = json!({ "summary": summary });
    if let Some(coords) = &c.point {
        let p = LeafPoint::from_coordinates(coords)?;
        let m = transition_matrix(&p)?;
        for row in m.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(text, "[{}]", cells.join(", "));
        }
        result["transition_matrix"] = json!(m.to_rows());
    }
    Ok((result, text, summary.passed()))
}
