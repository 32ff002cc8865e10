//! Text and JSON formats. Text files ignore blank lines and `#` comments.
//! Printers are canonical: labels in natural order, so printing a parsed
//! value reproduces the printed text byte for byte.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::embedding::{Certificate, EmbeddingError, Partition, PartitionEmbedding};
use crate::lattice::{Lattice, LatticeError};
use crate::matroid::{BinaryMatroid, LabeledGraph, MatroidError};
use crate::names::natural_cmp;
use crate::pls::{AugmentRecord, Pls, PlsError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("empty input")]
    Empty,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Pls(#[from] PlsError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// JSON when the first significant character opens an object or array.
pub fn sniff(s: &str) -> Format {
    match s.trim_start().chars().next() {
        Some('{') | Some('[') => Format::Json,
        _ => Format::Text,
    }
}

/// Significant lines with their 1-based line numbers.
fn content_lines(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn sort_natural(v: &mut [String]) {
    v.sort_by(|a, b| natural_cmp(a, b));
}

// ---------------------------------------------------------------- lattices

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

/// Relabels onto naturally sorted names with sorted covers, so that equal
/// labeled lattices become equal values.
pub fn canonical_lattice(l: &Lattice) -> Lattice {
    let j = lattice_json(l);
    lattice_from_json(&j).expect("a lattice stays a lattice under relabeling")
}

pub fn lattice_json(l: &Lattice) -> LatticeJson {
    let mut elements = l.names().to_vec();
    sort_natural(&mut elements);
    let pos: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut covers: Vec<[usize; 2]> =
        l.named_covers().iter().map(|(a, b)| [pos[a.as_str()], pos[b.as_str()]]).collect();
    covers.sort_unstable();
    LatticeJson { elements, covers }
}

fn lattice_from_json(j: &LatticeJson) -> Result<Lattice, FormatError> {
    let n = j.elements.len();
    if let Some(c) = j.covers.iter().find(|c| c[0] >= n || c[1] >= n) {
        return Err(syntax(0, format!("cover {:?} indexes past {n} elements", c)));
    }
    let mut elements = j.elements.clone();
    sort_natural(&mut elements);
    let pos: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if pos.len() != n {
        return Err(syntax(0, "duplicate element names"));
    }
    let mut covers: Vec<(usize, usize)> =
        j.covers.iter().map(|c| (pos[j.elements[c[0]].as_str()], pos[j.elements[c[1]].as_str()])).collect();
    covers.sort_unstable();
    Ok(Lattice::from_covers(elements, &covers)?)
}

/// One cover pair `lower upper` per line.
pub fn parse_lattice_text(s: &str) -> Result<Lattice, FormatError> {
    let mut elements: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut covers = Vec::new();
    for (ln, line) in content_lines(s) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(ln, "expected `lower upper`"));
        }
        let mut id = |t: &str| {
            *index.entry(t.to_string()).or_insert_with(|| {
                elements.push(t.to_string());
                elements.len() - 1
            })
        };
        let (a, b) = (id(toks[0]), id(toks[1]));
        covers.push([a, b]);
    }
    if elements.is_empty() {
        return Err(FormatError::Empty);
    }
    lattice_from_json(&LatticeJson { elements, covers })
}

pub fn lattice_to_text(l: &Lattice) -> String {
    l.named_covers().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

pub fn parse_lattice(s: &str) -> Result<Lattice, FormatError> {
    match sniff(s) {
        Format::Json => lattice_from_json(&serde_json::from_str(s)?),
        Format::Text => parse_lattice_text(s),
    }
}

pub fn lattice_to_json(l: &Lattice) -> String {
    serde_json::to_string_pretty(&lattice_json(l)).expect("plain data serializes")
}

// ------------------------------------------------------ partial linear spaces

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlsJson {
    pub points: Vec<String>,
    pub lines: Vec<[String; 3]>,
}

pub fn pls_json(p: &Pls) -> PlsJson {
    let mut lines: Vec<[String; 3]> = (0..p.n_lines()).map(|l| p.line_names(l)).collect();
    for l in &mut lines {
        l.sort_by(|a, b| natural_cmp(a, b));
    }
    lines.sort_by(|x, y| {
        x.iter().zip(y.iter()).map(|(a, b)| natural_cmp(a, b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    PlsJson { points: p.names().to_vec(), lines }
}

/// `points: a b c …` first, then one `line: x y z` per line.
pub fn parse_pls_text(s: &str) -> Result<Pls, FormatError> {
    let mut points: Option<Vec<String>> = None;
    let mut lines = Vec::new();
    for (ln, line) in content_lines(s) {
        let (key, rest) = line.split_once(':').ok_or_else(|| syntax(ln, "expected `points:` or `line:`"))?;
        let toks: Vec<String> = rest.split_whitespace().map(String::from).collect();
        match key.trim() {
            "points" if points.is_none() && lines.is_empty() => points = Some(toks),
            "points" => return Err(syntax(ln, "`points:` must come first and only once")),
            "line" => {
                let t: [String; 3] = toks.try_into().map_err(|_| syntax(ln, "a line has exactly 3 points"))?;
                lines.push(t);
            }
            other => return Err(syntax(ln, format!("unknown key `{other}`"))),
        }
    }
    let points = points.ok_or(FormatError::Empty)?;
    Ok(Pls::new(&points, &lines)?)
}

pub fn pls_to_text(p: &Pls) -> String {
    let j = pls_json(p);
    let mut out = format!("points: {}\n", j.points.join(" "));
    for l in &j.lines {
        out.push_str(&format!("line: {}\n", l.join(" ")));
    }
    out
}

pub fn parse_pls(s: &str) -> Result<Pls, FormatError> {
    match sniff(s) {
        Format::Json => {
            let j: PlsJson = serde_json::from_str(s)?;
            Ok(Pls::new(&j.points, &j.lines)?)
        }
        Format::Text => parse_pls_text(s),
    }
}

pub fn pls_to_json(p: &Pls) -> String {
    serde_json::to_string_pretty(&pls_json(p)).expect("plain data serializes")
}

// ------------------------------------------------------------------ graphs

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    /// `[u, v, label]`
    pub edges: Vec<[String; 3]>,
}

/// Vertices in natural order, edges ordered by label.
pub fn canonical_graph(g: &LabeledGraph) -> LabeledGraph {
    graph_from_json(&graph_json(g)).expect("relabeling keeps a simple graph simple")
}

pub fn graph_json(g: &LabeledGraph) -> GraphJson {
    let mut vertices = g.vertex_names().to_vec();
    sort_natural(&mut vertices);
    let mut edges: Vec<[String; 3]> = (0..g.n_edges())
        .map(|e| {
            let (u, v) = g.edge(e);
            let (mut a, mut b) = (g.vertex_name(u).to_string(), g.vertex_name(v).to_string());
            if natural_cmp(&a, &b).is_gt() {
                std::mem::swap(&mut a, &mut b);
            }
            [a, b, g.label(e).to_string()]
        })
        .collect();
    edges.sort_by(|x, y| natural_cmp(&x[2], &y[2]));
    GraphJson { vertices, edges }
}

fn graph_from_json(j: &GraphJson) -> Result<LabeledGraph, FormatError> {
    let mut vertices = j.vertices.clone();
    sort_natural(&mut vertices);
    let mut edges: Vec<(&str, &str, &str)> = j.edges.iter().map(|e| (e[0].as_str(), e[1].as_str(), e[2].as_str())).collect();
    edges.sort_by(|x, y| natural_cmp(x.2, y.2));
    Ok(LabeledGraph::with_vertices(&vertices, &edges)?)
}

/// One `u v label` per edge; an optional leading `vertices:` line adds
/// isolated vertices.
pub fn parse_graph_text(s: &str) -> Result<LabeledGraph, FormatError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (ln, line) in content_lines(s) {
        if let Some(rest) = line.strip_prefix("vertices:") {
            vertices.extend(rest.split_whitespace().map(String::from));
            continue;
        }
        let toks: Vec<String> = line.split_whitespace().map(String::from).collect();
        let e: [String; 3] = toks.try_into().map_err(|_| syntax(ln, "expected `u v label`"))?;
        for v in &e[..2] {
            if !vertices.contains(v) {
                vertices.push(v.clone());
            }
        }
        edges.push(e);
    }
    if vertices.is_empty() {
        return Err(FormatError::Empty);
    }
    graph_from_json(&GraphJson { vertices, edges })
}

pub fn graph_to_text(g: &LabeledGraph) -> String {
    let j = graph_json(g);
    let mut out = String::new();
    let isolated: Vec<&str> =
        j.vertices.iter().filter(|v| !j.edges.iter().any(|e| &e[0] == *v || &e[1] == *v)).map(String::as_str).collect();
    if !isolated.is_empty() {
        out.push_str(&format!("vertices: {}\n", isolated.join(" ")));
    }
    for e in &j.edges {
        out.push_str(&format!("{} {} {}\n", e[0], e[1], e[2]));
    }
    out
}

pub fn parse_graph(s: &str) -> Result<LabeledGraph, FormatError> {
    match sniff(s) {
        Format::Json => graph_from_json(&serde_json::from_str(s)?),
        Format::Text => parse_graph_text(s),
    }
}

pub fn graph_to_json(g: &LabeledGraph) -> String {
    serde_json::to_string_pretty(&graph_json(g)).expect("plain data serializes")
}

// ---------------------------------------------------------- binary matroids

/// `[name, bits]` per element, in ground order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub columns: Vec<[String; 2]>,
}

pub fn matroid_json(m: &BinaryMatroid) -> MatroidJson {
    MatroidJson { columns: (0..m.names().len()).map(|e| [m.names()[e].clone(), m.bit_string(e)]).collect() }
}

/// One `name bits` per element; the bit string is the GF(2) column.
pub fn parse_matroid_text(s: &str) -> Result<BinaryMatroid, FormatError> {
    let mut cols = Vec::new();
    for (ln, line) in content_lines(s) {
        let toks: Vec<String> = line.split_whitespace().map(String::from).collect();
        let c: [String; 2] = toks.try_into().map_err(|_| syntax(ln, "expected `name bits`"))?;
        cols.push(c);
    }
    if cols.is_empty() {
        return Err(FormatError::Empty);
    }
    matroid_from_json(&MatroidJson { columns: cols })
}

fn matroid_from_json(j: &MatroidJson) -> Result<BinaryMatroid, FormatError> {
    let cols: Vec<(&str, &str)> = j.columns.iter().map(|c| (c[0].as_str(), c[1].as_str())).collect();
    Ok(BinaryMatroid::from_bit_strings(&cols)?)
}

pub fn matroid_to_text(m: &BinaryMatroid) -> String {
    matroid_json(m).columns.iter().map(|c| format!("{} {}\n", c[0], c[1])).collect()
}

pub fn parse_matroid(s: &str) -> Result<BinaryMatroid, FormatError> {
    match sniff(s) {
        Format::Json => matroid_from_json(&serde_json::from_str(s)?),
        Format::Text => parse_matroid_text(s),
    }
}

pub fn matroid_to_json(m: &BinaryMatroid) -> String {
    serde_json::to_string_pretty(&matroid_json(m)).expect("plain data serializes")
}

// --------------------------------------------------- augmentation histories

pub fn parse_history(s: &str) -> Result<Vec<AugmentRecord>, FormatError> {
    Ok(serde_json::from_str(s)?)
}

pub fn history_to_json(h: &[AugmentRecord]) -> String {
    serde_json::to_string_pretty(h).expect("plain data serializes")
}

// -------------------------------------------------------------- embeddings

/// Images by element name in Part(n). A certificate read from a file is
/// kept for display only; consumers re-certify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub n: usize,
    pub map: BTreeMap<String, Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl EmbeddingFile {
    pub fn of(e: &PartitionEmbedding) -> EmbeddingFile {
        let r = e.report();
        EmbeddingFile { n: r.n, map: r.map, certificate: Some(r.certificate) }
    }

    pub fn certify(&self, l: &Lattice) -> Result<PartitionEmbedding, EmbeddingError> {
        PartitionEmbedding::from_named(l, self.n, &self.map)
    }

    fn sorted(&self) -> Vec<(&String, &Partition)> {
        let mut v: Vec<_> = self.map.iter().collect();
        v.sort_by(|a, b| natural_cmp(a.0, b.0));
        v
    }
}

/// `part: n` first, then one `element partition` per element.
pub fn parse_embedding_text(s: &str) -> Result<EmbeddingFile, FormatError> {
    let mut n: Option<usize> = None;
    let mut map = BTreeMap::new();
    for (ln, line) in content_lines(s) {
        if let Some(rest) = line.strip_prefix("part:") {
            if n.is_some() || !map.is_empty() {
                return Err(syntax(ln, "`part:` must come first and only once"));
            }
            n = Some(rest.trim().parse().map_err(|_| syntax(ln, "`part:` takes a ground size"))?);
            continue;
        }
        let size = n.ok_or_else(|| syntax(ln, "missing `part: n` header"))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [name, text] = toks[..] else { return Err(syntax(ln, "expected `element partition`")) };
        let q: Partition = text.parse()?;
        if q.ground_size() != size {
            return Err(syntax(ln, format!("partition {text} is not on {size} elements")));
        }
        if map.insert(name.to_string(), q).is_some() {
            return Err(syntax(ln, format!("element {name} listed twice")));
        }
    }
    let n = n.ok_or(FormatError::Empty)?;
    Ok(EmbeddingFile { n, map, certificate: None })
}

pub fn embedding_to_text(f: &EmbeddingFile) -> String {
    let mut out = format!("part: {}\n", f.n);
    for (name, q) in f.sorted() {
        out.push_str(&format!("{name} {q}\n"));
    }
    out
}

pub fn parse_embedding(s: &str) -> Result<EmbeddingFile, FormatError> {
    match sniff(s) {
        Format::Json => {
            let f: EmbeddingFile = serde_json::from_str(s)?;
            if let Some((name, q)) = f.map.iter().find(|(_, q)| q.ground_size() != f.n) {
                return Err(syntax(0, format!("image of {name} ({q}) is not on {} elements", f.n)));
            }
            Ok(f)
        }
        Format::Text => parse_embedding_text(s),
    }
}

pub fn embedding_to_json(f: &EmbeddingFile) -> String {
    serde_json::to_string_pretty(f).expect("plain data serializes")
}
