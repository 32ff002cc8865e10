use serde::{Deserialize, Serialize};

use crate::bits;
use crate::matroid::{check_circuit_friendly, check_rank_model, wheel_of, LabeledGraph, Matroid};
use crate::pls::{recognize_augmented_ump, AugmentRecord, Cycle, Pls, PlsError};

use super::{extend_graph_with_path, standard_graph_ump, ModelingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AugmentMode {
    /// Type-2 links must attach to cycles of at most four lines whose image
    /// is a wheel, so the two endpoint edges are incident rims.
    SmallGirth,
    /// Every link must be of type 1.
    Type1,
}

#[derive(Debug, Clone)]
pub struct AugmentedModel {
    pub pls: Pls,
    pub graph: LabeledGraph,
    pub mrk: usize,
    pub rk: i64,
    pub rank_model: bool,
    pub line_pres: bool,
    pub circuit_friendly: bool,
    pub offending_circuits: Vec<Vec<String>>,
    /// Vertices added by each link.
    pub steps: Vec<usize>,
}

/// Standard graph of `base`, then one dented wheel per link of `history`.
pub fn model_augmented_ump(
    base: &Pls,
    history: &[AugmentRecord],
    mode: AugmentMode,
) -> Result<AugmentedModel, ModelingError> {
    let mut cur = base.clone();
    let mut graph = standard_graph_ump(base)?.graph;
    let mut steps = Vec::with_capacity(history.len());
    for rec in history {
        if rec.link.len() < 2 || rec.midpoints.len() + 1 != rec.link.len() {
            return Err(ModelingError::InvalidPath(format!("malformed link {:?}", rec.link)));
        }
        match (mode, rec.kind) {
            (_, 1) => {}
            (AugmentMode::Type1, k) => {
                return Err(ModelingError::ModeViolation(format!("link {:?} has type {k}", rec.link)));
            }
            (AugmentMode::SmallGirth, _) => small_girth_step(&cur, &graph, rec)?,
        }
        let ext = extend_graph_with_path(&cur, &graph, &rec.link, Some(&rec.midpoints))?;
        steps.push(ext.mu);
        cur = ext.pls;
        graph = ext.graph;
    }
    let rank = check_rank_model(&cur, &graph)?;
    let friendly = check_circuit_friendly(&cur, &graph)?;
    Ok(AugmentedModel {
        mrk: rank.mrk,
        rk: rank.rk,
        rank_model: rank.ok,
        line_pres: rank.line_pres,
        circuit_friendly: friendly.ok,
        offending_circuits: friendly.offending_circuits,
        pls: cur,
        graph,
        steps,
    })
}

/// The link's cycle has at most four lines and its points form a wheel in
/// the current graph.
fn small_girth_step(p: &Pls, g: &LabeledGraph, rec: &AugmentRecord) -> Result<(), ModelingError> {
    let junctions = rec
        .cycle
        .iter()
        .map(|n| p.index_of(n).ok_or_else(|| PlsError::UnknownPoint(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let c = Cycle::from_junctions(p, &junctions)
        .ok_or_else(|| ModelingError::InvalidPath(format!("{:?} is not a cycle", rec.cycle)))?;
    if c.len() > 4 {
        return Err(ModelingError::ModeViolation(format!("cycle {:?} has {} lines", rec.cycle, c.len())));
    }
    let image = bits::from_iter(bits::ones(c.support).filter_map(|x| g.element_index(p.name(x))));
    if wheel_of(g, image).is_none() {
        return Err(ModelingError::ModeViolation(format!("cycle {:?} does not map to a wheel", rec.cycle)));
    }
    Ok(())
}

/// Recognizes `p` as an augmented UMP and models it; `Ok(None)` when no
/// removal sequence exists.
pub fn model_recognized_augmented_ump(p: &Pls, mode: AugmentMode) -> Result<Option<AugmentedModel>, ModelingError> {
    let r = recognize_augmented_ump(p, mode == AugmentMode::Type1)?;
    match r.base {
        Some(base) if r.yes => model_augmented_ump(&base, &r.history, mode).map(Some),
        _ => Ok(None),
    }
}
