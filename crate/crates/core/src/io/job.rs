//! One job per invocation: load inputs, dispatch, render a report and an
//! exit status. In text mode the summary is printed as `#` comments ahead of
//! the artifact, so a report is itself a valid input file.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::embedding::{
    brute_force_embedding_search, build_partition_embedding, check_lattice_model, check_lattice_model_graph,
    pipeline_embed_thin, EmbeddingError, PartitionEmbedding, BRUTE_FORCE_JI_BOUND,
};
use crate::lattice::{classify, extract_mopls, ji_bound, maximal_congruences, Lattice, LatticeError};
use crate::matroid::{check_circuit_friendly, check_rank_model, graph_trigger_check, LabeledGraph, MatroidError};
use crate::modeling::{
    model_recognized_augmented_ump, naive_glue_search, standard_graph_ump, AugmentMode, GlueSearch, ModelingError,
};
use crate::pls::{classify_pls, classify_with_bound, Pls, PlsError, DEFAULT_CYCLE_POINT_BOUND};

use super::fixtures::fixtures;
use super::formats::{
    embedding_to_text, graph_json, graph_to_text, parse_embedding, parse_graph, parse_lattice, parse_matroid, parse_pls,
    pls_json, pls_to_text, EmbeddingFile, FormatError,
};

/// Directory searched for input files not found as given.
pub const FIXTURE_DIR_ENV: &str = "TIGHTEMBED_FIXTURE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    AnalyzeLattice,
    Mopls,
    ClassifyPls,
    Model,
    Embed,
    Verify,
    Search,
    TriggerCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Input paths. A path that does not exist is looked up in the fixture
/// directory, then among built-in fixtures by file stem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Inputs {
    pub lattice: Option<String>,
    pub pls: Option<String>,
    pub graph: Option<String>,
    pub matroid: Option<String>,
    pub embedding: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Options {
    /// Most points per enumerated cycle; default [`DEFAULT_CYCLE_POINT_BOUND`].
    pub bound_cycles: Option<usize>,
    /// Ground size n of Part(n) for `search`; default d(L) + 1.
    pub bound_search: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub command: Command,
    pub inputs: Inputs,
    pub options: Options,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Success,
    CertifiedNegative,
    BoundExceeded,
    InputError,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::CertifiedNegative => 1,
            ExitStatus::BoundExceeded => 2,
            ExitStatus::InputError => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutput {
    pub status: ExitStatus,
    pub report: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("input error: {0}")]
    Input(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
}

impl JobError {
    pub fn status(&self) -> ExitStatus {
        match self {
            JobError::Input(_) => ExitStatus::InputError,
            JobError::Bound(_) => ExitStatus::BoundExceeded,
        }
    }
}

impl From<FormatError> for JobError {
    fn from(e: FormatError) -> Self {
        JobError::Input(e.to_string())
    }
}

impl From<LatticeError> for JobError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::TooManyJoinIrreducibles(_) | LatticeError::LineTooLarge(..) => JobError::Bound(e.to_string()),
            _ => JobError::Input(e.to_string()),
        }
    }
}

impl From<PlsError> for JobError {
    fn from(e: PlsError) -> Self {
        match e {
            PlsError::BoundExceeded(_) | PlsError::TooManyPoints(_) => JobError::Bound(e.to_string()),
            _ => JobError::Input(e.to_string()),
        }
    }
}

impl From<MatroidError> for JobError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::BoundExceeded(_) | MatroidError::TooManyElements(_) => JobError::Bound(e.to_string()),
            MatroidError::Pls(p) => p.into(),
            _ => JobError::Input(e.to_string()),
        }
    }
}

impl From<ModelingError> for JobError {
    fn from(e: ModelingError) -> Self {
        match e {
            ModelingError::BoundExceeded(_) => JobError::Bound(e.to_string()),
            ModelingError::Pls(p) => p.into(),
            ModelingError::Matroid(m) => m.into(),
            _ => JobError::Input(e.to_string()),
        }
    }
}

impl From<EmbeddingError> for JobError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::BoundExceeded(_) => JobError::Bound(e.to_string()),
            EmbeddingError::Lattice(l) => l.into(),
            EmbeddingError::Matroid(m) => m.into(),
            _ => JobError::Input(e.to_string()),
        }
    }
}

/// Reads `arg` as a path, else under the fixture directory, else as the
/// canonical text of the built-in fixture named by its stem.
pub fn load_input(arg: &str) -> Result<String, JobError> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| JobError::Input(format!("{}: {e}", p.display())));
    let direct = PathBuf::from(arg);
    if direct.is_file() {
        return read(&direct);
    }
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_ENV) {
        let p = Path::new(&dir).join(arg);
        if p.is_file() {
            return read(&p);
        }
    }
    let stem = direct.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    fixtures()
        .get(stem)
        .map(|f| f.to_text())
        .ok_or_else(|| JobError::Input(format!("{arg}: no such file or fixture")))
}

enum Artifact {
    Pls(Pls),
    Graph(LabeledGraph),
    Embedding(EmbeddingFile),
}

impl Artifact {
    fn text(&self) -> String {
        match self {
            Artifact::Pls(p) => pls_to_text(p),
            Artifact::Graph(g) => graph_to_text(g),
            Artifact::Embedding(f) => embedding_to_text(f),
        }
    }

    fn json(&self) -> Value {
        let v = match self {
            Artifact::Pls(p) => serde_json::to_value(pls_json(p)),
            Artifact::Graph(g) => serde_json::to_value(graph_json(g)),
            Artifact::Embedding(f) => serde_json::to_value(f),
        };
        v.expect("plain data serializes")
    }
}

struct Outcome {
    status: ExitStatus,
    summary: Map<String, Value>,
    artifact: Option<Artifact>,
}

impl Outcome {
    fn new(status: ExitStatus) -> Self {
        Outcome { status, summary: Map::new(), artifact: None }
    }

    fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.summary.insert(key.to_string(), serde_json::to_value(v).expect("plain data serializes"));
        self
    }

    fn artifact(mut self, a: Artifact) -> Self {
        self.artifact = Some(a);
        self
    }
}

pub fn run(job: &Job) -> JobOutput {
    let (status, summary, artifact) = match execute(job) {
        Ok(o) => (o.status, o.summary, o.artifact),
        Err(e) => {
            let mut m = Map::new();
            m.insert("error".into(), Value::String(e.to_string()));
            (e.status(), m, None)
        }
    };
    let report = match job.format {
        OutputFormat::Json => {
            let mut v = json!({ "status": status.code(), "summary": summary });
            if let Some(a) = &artifact {
                v["artifact"] = a.json();
            }
            serde_json::to_string_pretty(&v).expect("plain data serializes") + "\n"
        }
        OutputFormat::Text => {
            let mut out = format!("# status: {}\n", status.code());
            for (k, v) in &summary {
                out.push_str(&format!("# {k}: {}\n", scalar_text(v)));
            }
            if let Some(a) = &artifact {
                out.push_str(&a.text());
            }
            out
        }
    };
    JobOutput { status, report }
}

/// Scalars print bare, arrays space-separated, anything else as JSON.
fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if !items.is_empty() && items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar_text).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, JobError> {
    v.as_deref().ok_or_else(|| JobError::Input(format!("--{flag} is required")))
}

fn lattice_input(job: &Job) -> Result<Lattice, JobError> {
    Ok(parse_lattice(&load_input(require(&job.inputs.lattice, "lattice")?)?)?)
}

fn pls_input(job: &Job) -> Result<Pls, JobError> {
    Ok(parse_pls(&load_input(require(&job.inputs.pls, "pls")?)?)?)
}

fn execute(job: &Job) -> Result<Outcome, JobError> {
    match job.command {
        Command::AnalyzeLattice => analyze_lattice(&lattice_input(job)?),
        Command::Mopls => mopls(&lattice_input(job)?),
        Command::ClassifyPls => classify_space(&pls_input(job)?, job.options.bound_cycles),
        Command::Model => model(&pls_input(job)?),
        Command::Embed => embed(job),
        Command::Verify => verify(job),
        Command::Search => search(&lattice_input(job)?, job.options.bound_search),
        Command::TriggerCheck => trigger_check(&pls_input(job)?),
    }
}

fn analyze_lattice(l: &Lattice) -> Result<Outcome, JobError> {
    let profile = classify(l);
    let mut o = Outcome::new(ExitStatus::Success)
        .with("elements", l.len())
        .with("covers", l.covers().len())
        .with("join_irreducibles", l.join_irreducibles().len())
        .with("profile", profile);
    if profile.modular {
        o = o.with("maximal_congruences", maximal_congruences(l)?.s).with("ji_bound", ji_bound(l)?);
    }
    Ok(o)
}

fn mopls(l: &Lattice) -> Result<Outcome, JobError> {
    if !classify(l).modular {
        return Ok(Outcome::new(ExitStatus::CertifiedNegative).with("reason", "lattice is not modular"));
    }
    let p = extract_mopls(l)?.to_pls();
    let cr = p.components_and_rank();
    Ok(Outcome::new(ExitStatus::Success)
        .with("points", p.n_points())
        .with("lines", p.n_lines())
        .with("rank", cr.rk)
        .with("components", cr.c)
        .artifact(Artifact::Pls(p)))
}

fn classify_space(p: &Pls, bound: Option<usize>) -> Result<Outcome, JobError> {
    let bound = bound.unwrap_or(DEFAULT_CYCLE_POINT_BOUND);
    let profile = classify_with_bound(p, bound)?;
    let ordering: Option<Vec<String>> = profile
        .sparse_ordering
        .as_ref()
        .map(|ord| ord.iter().map(|&l| format!("{{{}}}", p.line_names(l).join(","))).collect());
    let cr = p.components_and_rank();
    Ok(Outcome::new(ExitStatus::Success)
        .with("points", p.n_points())
        .with("lines", p.n_lines())
        .with("rank", cr.rk)
        .with("components", cr.c)
        .with("cycle_point_bound", bound)
        .with("profile", &profile)
        .with("sparse_ordering", ordering))
}

/// Standard graph for a UMP, else the augmented construction, else the
/// exhaustive gluing search for a rank-preserving graph.
fn model(p: &Pls) -> Result<Outcome, JobError> {
    let (method, graph) = if classify_pls(p)?.ump {
        ("standard", standard_graph_ump(p)?.graph)
    } else if let Some(m) = model_recognized_augmented_ump(p, AugmentMode::SmallGirth)? {
        ("augmented", m.graph)
    } else {
        match naive_glue_search(p, true)? {
            GlueSearch::Found(m) => ("gluing", m.graph),
            GlueSearch::Exhausted => {
                return Ok(Outcome::new(ExitStatus::CertifiedNegative)
                    .with("reason", "no gluing of line triangles rank-models the space"))
            }
        }
    };
    let rank = check_rank_model(p, &graph)?;
    let cf = check_circuit_friendly(p, &graph)?;
    let status = if rank.ok && rank.line_pres { ExitStatus::Success } else { ExitStatus::CertifiedNegative };
    Ok(Outcome::new(status)
        .with("method", method)
        .with("rank_model", rank)
        .with("circuit_friendly", cf.ok)
        .with("offending_circuits", cf.offending_circuits)
        .artifact(Artifact::Graph(graph)))
}

fn embedded(e: &PartitionEmbedding) -> Outcome {
    let status = if e.is_tight() { ExitStatus::Success } else { ExitStatus::CertifiedNegative };
    Outcome::new(status).with("n", e.n).with("certificate", e.certificate).artifact(Artifact::Embedding(EmbeddingFile::of(e)))
}

fn embed(job: &Job) -> Result<Outcome, JobError> {
    let l = lattice_input(job)?;
    if let Some(g) = &job.inputs.graph {
        let g = parse_graph(&load_input(g)?)?;
        let check = check_lattice_model_graph(&l, &g)?;
        if !check.ok {
            return Ok(Outcome::new(ExitStatus::CertifiedNegative).with("lattice_model", check));
        }
        return Ok(embedded(&build_partition_embedding(&l, &g)?).with("method", "given_graph"));
    }
    let profile = classify(&l);
    if !profile.modular {
        return Err(JobError::Input("embedding requires a modular lattice".into()));
    }
    let report = pipeline_embed_thin(&l);
    let base = |o: Outcome| o.with("thin", report.thin).with("attempts", &report.attempts);
    if let Some(e) = &report.embedding {
        return Ok(base(embedded(e)).with("method", report.branch));
    }
    if let Some(d) = &report.divergence {
        eprintln!("DIVERGENCE: {d}");
        return Ok(base(Outcome::new(ExitStatus::CertifiedNegative))
            .with("divergence", d)
            .with("reason", &report.reason));
    }
    if !profile.thin {
        return Ok(base(Outcome::new(ExitStatus::CertifiedNegative)).with("reason", &report.reason));
    }
    // no branch applied: settle the question by exhaustive search
    match brute_force_embedding_search(&l, l.height() + 1)? {
        Some(e) => Ok(base(embedded(&e)).with("method", "exhaustive_search")),
        None => Ok(base(Outcome::new(ExitStatus::CertifiedNegative))
            .with("reason", "exhaustive search found no graph model, so no tight embedding exists")),
    }
}

fn verify(job: &Job) -> Result<Outcome, JobError> {
    let l = lattice_input(job)?;
    let i = &job.inputs;
    let given = [i.embedding.is_some(), i.graph.is_some(), i.matroid.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(JobError::Input("verify takes exactly one of --embedding, --graph, --matroid".into()));
    }
    if let Some(path) = &i.embedding {
        let f = parse_embedding(&load_input(path)?)?;
        return Ok(embedded(&f.certify(&l)?));
    }
    let check = if let Some(path) = &i.graph {
        check_lattice_model_graph(&l, &parse_graph(&load_input(path)?)?)?
    } else {
        let path = i.matroid.as_deref().expect("exactly one input is present");
        check_lattice_model(&l, &parse_matroid(&load_input(path)?)?)?
    };
    let status = if check.ok { ExitStatus::Success } else { ExitStatus::CertifiedNegative };
    Ok(Outcome::new(status).with("lattice_model", check))
}

fn search(l: &Lattice, n: Option<usize>) -> Result<Outcome, JobError> {
    let n = n.unwrap_or(l.height() + 1);
    let found = brute_force_embedding_search(l, n)?;
    let o = |s| Outcome::new(s).with("n", n).with("ji_bound", BRUTE_FORCE_JI_BOUND);
    Ok(match found {
        Some(e) => {
            assert!(e.is_tight() && e.n > l.height(), "search outputs are certified");
            embedded(&e).with("n", n).with("ji_bound", BRUTE_FORCE_JI_BOUND)
        }
        None if n <= l.height() => {
            o(ExitStatus::CertifiedNegative).with("reason", "a tight embedding needs n > height")
        }
        None => o(ExitStatus::CertifiedNegative).with("reason", "no graph model exists, so no Part(m) admits a tight embedding"),
    })
}

fn trigger_check(p: &Pls) -> Result<Outcome, JobError> {
    let t = graph_trigger_check(p)?;
    let status = if t.is_trigger { ExitStatus::Success } else { ExitStatus::CertifiedNegative };
    Ok(Outcome::new(status).with("is_trigger", t.is_trigger).with("vacuous", t.vacuous).with("models", t.models))
}
