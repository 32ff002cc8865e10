use serde::Serialize;

use crate::lattice::{classify, extract_mopls, Lattice};
use crate::matroid::{
    check_circuit_friendly, check_rank_model, enumerate_binary_models, graph_trigger_check, is_graphic, GraphicResult,
    LabeledGraph,
};
use crate::modeling::{enumerate_glue_models, model_recognized_augmented_ump, standard_graph_ump, AugmentMode};
use crate::pls::{classify_pls, Pls};

use super::graph_embed::{build_partition_embedding, connect_components};
use super::model::check_lattice_model_graph;
use super::PartitionEmbedding;

/// Gluings examined by the naive branch.
pub const PIPELINE_GLUE_LIMIT: usize = 2_000;
/// Binary models examined by the graph-trigger branch.
pub const PIPELINE_TRIGGER_LIMIT: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Ump,
    AugmentedType1,
    NaiveGluing,
    GraphTrigger,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchAttempt {
    pub branch: Branch,
    pub outcome: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub modular: bool,
    pub thin: bool,
    pub height: usize,
    pub mopls_points: Option<usize>,
    pub mopls_lines: Option<usize>,
    pub mopls_rank: Option<i64>,
    pub attempts: Vec<BranchAttempt>,
    /// Branch whose model produced the embedding.
    pub branch: Option<Branch>,
    /// A circuit-friendly rank model that fails the lattice check. Such a
    /// model would separate line-pres rank modeling from lattice modeling.
    pub divergence: Option<String>,
    pub reason: Option<String>,
    #[serde(skip)]
    pub embedding: Option<PartitionEmbedding>,
}

impl PipelineReport {
    pub fn succeeded(&self) -> bool {
        self.embedding.is_some()
    }
}

enum Outcome {
    Embedded(PartitionEmbedding),
    Diverged(String),
    Skipped(String),
}

/// Tries a circuit-friendly rank model of the space on the lattice.
fn try_model(l: &Lattice, p: &Pls, g: &LabeledGraph) -> Outcome {
    let rank = match check_rank_model(p, g) {
        Ok(r) => r,
        Err(e) => return Outcome::Skipped(e.to_string()),
    };
    if !rank.ok {
        return Outcome::Skipped(format!("not a rank model: mrk {} vs rk {}", rank.mrk, rank.rk));
    }
    match check_circuit_friendly(p, g) {
        Ok(r) if r.ok => {}
        Ok(r) => return Outcome::Skipped(format!("not circuit-friendly: {:?}", r.offending_circuits)),
        Err(e) => return Outcome::Skipped(e.to_string()),
    }
    lattice_check_and_build(l, g)
}

fn lattice_check_and_build(l: &Lattice, g: &LabeledGraph) -> Outcome {
    let g = connect_components(g);
    match check_lattice_model_graph(l, &g) {
        Ok(r) if r.ok => {}
        Ok(r) => return Outcome::Diverged(format!("lattice check failed: {:?}", r.failure)),
        Err(e) => return Outcome::Skipped(e.to_string()),
    }
    match build_partition_embedding(l, &g) {
        Ok(e) if e.is_tight() => Outcome::Embedded(e),
        Ok(e) => Outcome::Diverged(format!("certificate failed: {:?}", e.certificate)),
        Err(e) => Outcome::Skipped(e.to_string()),
    }
}

/// Thin lattice → MoPLS → graph model → partition embedding. Branches run in
/// the order UMP, augmented of type 1, naive gluing, graph trigger; the
/// first certified embedding wins. Never fails: problems land in the report.
pub fn pipeline_embed_thin(l: &Lattice) -> PipelineReport {
    let profile = classify(l);
    let mut report = PipelineReport {
        modular: profile.modular,
        thin: profile.thin,
        height: l.height(),
        mopls_points: None,
        mopls_lines: None,
        mopls_rank: None,
        attempts: Vec::new(),
        branch: None,
        divergence: None,
        reason: None,
        embedding: None,
    };
    if !profile.modular {
        report.reason = Some("lattice is not modular".into());
        return report;
    }
    if !profile.thin {
        report.reason = Some("lattice is not thin, so no tight partition embedding exists".into());
        return report;
    }
    let p = match extract_mopls(l) {
        Ok(m) => m.to_pls(),
        Err(e) => {
            report.reason = Some(format!("MoPLS extraction failed: {e}"));
            return report;
        }
    };
    report.mopls_points = Some(p.n_points());
    report.mopls_lines = Some(p.n_lines());
    report.mopls_rank = Some(p.rank());

    type Runner = fn(&Lattice, &Pls) -> Result<Outcome, String>;
    let branches: [(Branch, Runner); 4] = [
        (Branch::Ump, ump_branch),
        (Branch::AugmentedType1, augmented_branch),
        (Branch::NaiveGluing, naive_branch),
        (Branch::GraphTrigger, trigger_branch),
    ];
    for (branch, run) in branches {
        let outcome = match run(l, &p) {
            Ok(o) => o,
            Err(msg) => Outcome::Skipped(msg),
        };
        match outcome {
            Outcome::Embedded(e) => {
                report.attempts.push(BranchAttempt { branch, outcome: "certified tight embedding".into() });
                report.branch = Some(branch);
                report.embedding = Some(e);
                return report;
            }
            Outcome::Diverged(msg) => {
                report.attempts.push(BranchAttempt { branch, outcome: format!("DIVERGENCE: {msg}") });
                report.divergence = Some(msg);
                report.reason = Some("a circuit-friendly rank model failed the lattice check".into());
                return report;
            }
            Outcome::Skipped(msg) => report.attempts.push(BranchAttempt { branch, outcome: msg }),
        }
    }
    report.reason = Some("no branch produced a circuit-friendly rank model".into());
    report
}

fn ump_branch(l: &Lattice, p: &Pls) -> Result<Outcome, String> {
    if !classify_pls(p).map_err(|e| e.to_string())?.ump {
        return Ok(Outcome::Skipped("MoPLS is not a UMP".into()));
    }
    let m = standard_graph_ump(p).map_err(|e| e.to_string())?;
    Ok(try_model(l, p, &m.graph))
}

fn augmented_branch(l: &Lattice, p: &Pls) -> Result<Outcome, String> {
    match model_recognized_augmented_ump(p, AugmentMode::Type1).map_err(|e| e.to_string())? {
        Some(m) => Ok(try_model(l, &m.pls, &m.graph)),
        None => Ok(Outcome::Skipped("MoPLS is not an augmented UMP of type 1".into())),
    }
}

fn naive_branch(l: &Lattice, p: &Pls) -> Result<Outcome, String> {
    let models = enumerate_glue_models(p, true, PIPELINE_GLUE_LIMIT).map_err(|e| e.to_string())?;
    let count = models.len();
    let mut last = None;
    for m in models {
        match try_model(l, p, &m.graph) {
            Outcome::Skipped(msg) => last = Some(msg),
            other => return Ok(other),
        }
    }
    Ok(Outcome::Skipped(match last {
        None => "naive gluing exhausted with no rank model".into(),
        Some(msg) if count < PIPELINE_GLUE_LIMIT => format!("{count} rank-preserving gluings, none usable; last: {msg}"),
        Some(_) => format!("gluing limit {PIPELINE_GLUE_LIMIT} reached without a usable model"),
    }))
}

/// Every binary model of a graph-trigger is graphic, and one of them
/// lattice-models L; the lattice check is run on each realization.
fn trigger_branch(l: &Lattice, p: &Pls) -> Result<Outcome, String> {
    let t = graph_trigger_check(p).map_err(|e| e.to_string())?;
    if !t.is_trigger || t.vacuous {
        return Ok(Outcome::Skipped(if t.vacuous { "no binary model at full rank" } else { "MoPLS is not a graph-trigger" }.into()));
    }
    let models = enumerate_binary_models(p, Some(p.rank()), PIPELINE_TRIGGER_LIMIT).map_err(|e| e.to_string())?;
    for m in &models {
        if let GraphicResult::Graphic(g) = is_graphic(m).map_err(|e| e.to_string())? {
            if let Outcome::Embedded(e) = lattice_check_and_build(l, &g) {
                return Ok(Outcome::Embedded(e));
            }
        }
    }
    Ok(Outcome::Skipped(format!("none of {} graphic models lattice-models the lattice", models.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::families;

    #[test]
    fn m3_and_the_product_go_through_the_ump_branch() {
        let r = pipeline_embed_thin(&families::m_n(3));
        assert_eq!(r.branch, Some(Branch::Ump));
        assert_eq!(r.embedding.unwrap().n, 3);
        let prod = families::product(&families::m_n(3), &families::chain(2));
        let r = pipeline_embed_thin(&prod);
        assert_eq!(r.branch, Some(Branch::Ump), "{:?}", r.attempts);
        assert_eq!((r.mopls_points, r.mopls_lines), (Some(4), Some(1)));
        let e = r.embedding.unwrap();
        assert!(e.is_tight() && e.n == 4);
    }

    #[test]
    fn non_thin_inputs_stop_early() {
        for l in [families::m_n(4), families::subspace_lattice(3)] {
            let r = pipeline_embed_thin(&l);
            assert!(!r.thin && !r.succeeded() && r.attempts.is_empty());
        }
    }

    #[test]
    fn distributive_lattices_embed() {
        let r = pipeline_embed_thin(&families::boolean(3));
        assert!(r.succeeded());
        assert_eq!(r.embedding.unwrap().n, 4);
    }
}
