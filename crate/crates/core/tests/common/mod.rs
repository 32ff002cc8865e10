//! Seeded generators and property checks shared by the property suite and
//! the acceptance runner. Every check takes a seed and returns `Err` with a
//! description of the counterexample.
#![allow(dead_code)]

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tightembed::embedding::{
    brute_force_graph_model, build_partition_embedding, check_lattice_model, check_lattice_model_graph,
    direct_partition_search, extract_model_from_embedding,
};
use tightembed::io::{self, fixtures};
use tightembed::lattice::{classify, extract_mopls, families, ji_bound, Lattice};
use tightembed::matroid::{
    check_cycle_preserving, check_line_pres, enumerate_binary_models, wheel_of, LabeledGraph, Matroid,
};
use tightembed::modeling::enumerate_glue_models;
use tightembed::pls::{add_path, classify_pls, enumerate_cycles, midpoint_links, split_rank, LinkType, Pls};
use tightembed::BinaryMatroid;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Random lines on `n_points` points, each kept only if it meets every
/// earlier line in at most one point.
pub fn random_pls(r: &mut ChaCha8Rng, n_points: usize, max_lines: RangeInclusive<usize>) -> Pls {
    let max_lines = r.gen_range(max_lines);
    let pts: Vec<usize> = (0..n_points).collect();
    let mut lines: Vec<[usize; 3]> = Vec::new();
    for _ in 0..max_lines * 3 {
        if lines.len() == max_lines {
            break;
        }
        let t: Vec<usize> = pts.choose_multiple(r, 3).copied().collect();
        let t = [t[0], t[1], t[2]];
        if lines.iter().all(|l| l.iter().filter(|x| t.contains(x)).count() <= 1) {
            lines.push(t);
        }
    }
    build(n_points, &lines)
}

/// Connected growth: every new line reuses one or two existing points.
pub fn random_connected_pls(r: &mut ChaCha8Rng, n_lines: RangeInclusive<usize>, reuse_two: f64) -> Pls {
    let n_lines = r.gen_range(n_lines);
    let mut n = 3;
    let mut lines = vec![[0, 1, 2]];
    let mut tries = 0;
    while lines.len() < n_lines && tries < 50 * n_lines {
        tries += 1;
        let shared = if r.gen_bool(reuse_two) && n >= 2 { 2 } else { 1 };
        let old: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(r, shared).copied().collect();
        let mut t = old.clone();
        while t.len() < 3 {
            t.push(n + t.len() - old.len());
        }
        let t = [t[0], t[1], t[2]];
        if lines.iter().all(|l| l.iter().filter(|x| t.contains(x)).count() <= 1) {
            n += 3 - shared;
            lines.push(t);
        }
    }
    build(n, &lines)
}

/// A forest of lines: each new line meets the existing points in at most
/// one point, so no cycle ever forms. At most `max_points` points.
pub fn random_acyclic_pls(r: &mut ChaCha8Rng, max_points: usize) -> Pls {
    let mut n = 3;
    let mut lines = vec![[0, 1, 2]];
    while n + 2 <= max_points {
        if r.gen_bool(0.2) {
            break;
        }
        if n + 3 <= max_points && r.gen_bool(0.15) {
            lines.push([n, n + 1, n + 2]);
            n += 3;
        } else {
            let a = r.gen_range(0..n);
            lines.push([a, n, n + 1]);
            n += 2;
        }
    }
    build(n, &lines)
}

pub fn build(n: usize, lines: &[[usize; 3]]) -> Pls {
    let pts = names(n);
    let named: Vec<[String; 3]> = lines.iter().map(|l| l.map(|x| pts[x].clone())).collect();
    Pls::new(&pts, &named).expect("generated lines pairwise meet in at most one point")
}

/// Products and glued sums of small modular lattices.
pub fn random_modular_lattice(r: &mut ChaCha8Rng, max_len: usize) -> Lattice {
    let base = |r: &mut ChaCha8Rng| match r.gen_range(0..5) {
        0 => families::chain(2),
        1 => families::chain(3),
        2 => families::m_n(3),
        3 => families::m_n(4),
        _ => families::boolean(2),
    };
    let mut l = base(r);
    for _ in 0..r.gen_range(0..3) {
        let b = base(r);
        let next = if r.gen_bool(0.5) { families::product(&l, &b) } else { families::glued_sum(&l, &b) };
        if next.len() > max_len {
            break;
        }
        l = next;
    }
    l
}

/// Like [`random_modular_lattice`] without M4 pieces, so the result is thin.
pub fn random_thin_lattice(r: &mut ChaCha8Rng, max_len: usize) -> Lattice {
    loop {
        let l = random_modular_lattice(r, max_len);
        if classify(&l).thin {
            return l;
        }
    }
}

fn edge_mask(g: &LabeledGraph, p: &Pls, points: u64) -> u64 {
    tightembed::bits::ones(points)
        .map(|x| g.element_index(p.name(x)).expect("models label every point"))
        .fold(0, |m, e| m | tightembed::bits::bit(e))
}

fn fail<T: std::fmt::Debug>(what: &str, x: T) -> Check {
    Err(format!("{what}: {x:?}"))
}

// ------------------------------------------------------------------ checks

/// QIMP ⇒ sparse and UMP ⇒ NMPL ⇒ BMPL.
pub fn implication_chain(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = if r.gen_bool(0.5) {
        let n = r.gen_range(3..=10);
        random_pls(&mut r, n, 1..=6)
    } else {
        random_connected_pls(&mut r, 1..=6, 0.3)
    };
    let c = classify_pls(&p).map_err(|e| e.to_string())?;
    if c.qimp && !c.sparse {
        return fail("QIMP but not sparse", io::pls_to_text(&p));
    }
    if (c.ump && !c.nmpl) || (c.nmpl && !c.bmpl) {
        return fail("UMP/NMPL/BMPL chain broken", (&c, io::pls_to_text(&p)));
    }
    Ok(())
}

/// Growing a connected space line by line changes rk by 2 − |S| where S is
/// the set of the new line's points already present.
pub fn rank_increments(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = random_connected_pls(&mut r, 2..=7, 0.4);
    // a random order in which each line meets the earlier ones
    let mut order = vec![r.gen_range(0..p.n_lines())];
    let mut seen = p.line_mask(order[0]);
    while order.len() < p.n_lines() {
        let mut cand: Vec<usize> =
            (0..p.n_lines()).filter(|l| !order.contains(l) && p.line_mask(*l) & seen != 0).collect();
        cand.shuffle(&mut r);
        let l = cand[0];
        order.push(l);
        seen |= p.line_mask(l);
    }
    let mut lines = 0u64;
    let mut points = 0u64;
    let mut prev = 0i64;
    for (i, &l) in order.iter().enumerate() {
        let s = (p.line_mask(l) & points).count_ones() as i64;
        lines |= 1 << l;
        points |= p.line_mask(l);
        let rk = p.restrict(points, lines).rank();
        if i > 0 && rk - prev != 2 - s {
            return fail("rank increment", (order.clone(), l, s, prev, rk));
        }
        prev = rk;
    }
    Ok(())
}

/// A benign type-1 midpoint-link keeps a BMPL a BMPL; if every link of the
/// start is of type 1, so is every link of the result.
pub fn type1_closure(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = loop {
        let p = random_connected_pls(&mut r, 2..=6, 0.35);
        if classify_pls(&p).map_err(|e| e.to_string())?.bmpl && !enumerate_cycles(&p, None).unwrap().is_empty() {
            break p;
        }
    };
    let cycles = enumerate_cycles(&p, None).map_err(|e| e.to_string())?;
    let c = cycles.choose(&mut r).unwrap();
    let i = r.gen_range(0..c.len());
    let j = if r.gen_bool(0.5) { i } else { (i + 1) % c.len() };
    let (q, x) = (p.name(c.midpoints[i]).to_string(), p.name(c.junctions[j]).to_string());
    let inner = r.gen_range(1..=2);
    let added = add_path(&p, &q, &x, inner).map_err(|e| e.to_string())?;
    let rec = added.record.as_ref().ok_or("link not recognized as benign")?;
    if rec.kind != 1 {
        return fail("expected a type-1 record", rec);
    }
    if !classify_pls(&added.pls).map_err(|e| e.to_string())?.bmpl {
        return fail("BMPL lost", io::pls_to_text(&added.pls));
    }
    let only_type1 = |s: &Pls| {
        enumerate_cycles(s, None).unwrap().iter().all(|c| midpoint_links(s, c).iter().all(|m| m.kind == LinkType::Type1))
    };
    if only_type1(&p) && !only_type1(&added.pls) {
        return fail("type-2 link appeared", io::pls_to_text(&added.pls));
    }
    Ok(())
}

fn line_pres_models(p: &Pls, limit: usize) -> Result<(Vec<LabeledGraph>, Vec<BinaryMatroid>), String> {
    let graphs: Vec<LabeledGraph> = enumerate_glue_models(p, false, limit)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|m| m.graph)
        .filter(|g| check_line_pres(p, g).unwrap_or(false))
        .collect();
    let binary = enumerate_binary_models(p, None, limit).map_err(|e| e.to_string())?;
    Ok((graphs, binary))
}

/// mrk ≤ rk for every line-preserving model of a sparse space.
pub fn sparse_rank_bound(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = loop {
        let p = random_connected_pls(&mut r, 1..=5, 0.3);
        if classify_pls(&p).unwrap().sparse {
            break p;
        }
    };
    let (graphs, binary) = line_pres_models(&p, 24)?;
    for g in &graphs {
        if g.rank() as i64 > p.rank() {
            return fail("graph model exceeds rk", (io::graph_to_text(g), p.rank()));
        }
    }
    for m in binary.iter().filter(|m| check_line_pres(&p, *m).unwrap_or(false)) {
        if m.rank() as i64 > p.rank() {
            return fail("binary model exceeds rk", (io::matroid_to_text(m), p.rank()));
        }
    }
    Ok(())
}

/// Under line preservation, a cycle whose support has matroid rank
/// rk(C*, Λ*) = |Λ*| maps onto a wheel.
pub fn wheel_conclusion(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = loop {
        let p = random_connected_pls(&mut r, 3..=6, 0.45);
        if !enumerate_cycles(&p, None).unwrap().is_empty() {
            break p;
        }
    };
    let (graphs, _) = line_pres_models(&p, 16)?;
    for g in &graphs {
        for c in enumerate_cycles(&p, None).map_err(|e| e.to_string())? {
            let mask = edge_mask(g, &p, c.support);
            if g.rank_of(mask) == c.len() && wheel_of(g, mask).is_none() {
                return fail("rank-tight cycle without a wheel", (c.junction_names(&p), io::graph_to_text(g)));
            }
        }
    }
    Ok(())
}

/// A space with a cycle-preserving graph model is a BMPL.
pub fn cycle_pres_implies_bmpl(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = random_connected_pls(&mut r, 2..=6, 0.45);
    let (graphs, _) = line_pres_models(&p, 16)?;
    for g in &graphs {
        if check_cycle_preserving(&p, g).map_err(|e| e.to_string())?.ok && !classify_pls(&p).unwrap().bmpl {
            return fail("cycle-preserving model of a non-BMPL", (io::pls_to_text(&p), io::graph_to_text(g)));
        }
    }
    Ok(())
}

/// rk = |Λ| − r* + c against the splitting oracle, with at most 8 lines.
pub fn split_identity(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = if r.gen_bool(0.5) {
        let n = r.gen_range(3..=9);
        random_pls(&mut r, n, 0..=8)
    } else {
        random_connected_pls(&mut r, 1..=6, 0.4)
    };
    if p.n_lines() > 8 {
        return Ok(());
    }
    let s = split_rank(&p).map_err(|e| e.to_string())?;
    let cr = p.components_and_rank();
    let rhs = p.n_lines() as i64 - s.r_star as i64 + cr.c as i64;
    if cr.rk != rhs || !s.identity_holds || !s.acyclic_witness.is_acyclic() {
        return fail("splitting identity", (cr.rk, p.n_lines(), s.r_star, cr.c, io::pls_to_text(&p)));
    }
    Ok(())
}

/// |J| ≥ 2·d − s on modular lattices.
pub fn ji_inequality(seed: u64) -> Check {
    let mut r = rng(seed);
    let l = random_modular_lattice(&mut r, 60);
    let b = ji_bound(&l).map_err(|e| e.to_string())?;
    if (b.lhs as i64) < b.rhs {
        return fail("join-irreducible bound", (b, io::lattice_to_text(&l)));
    }
    Ok(())
}

fn thin_corpus() -> Vec<Lattice> {
    fixtures().values().filter_map(|f| f.lattice().cloned()).filter(|l| classify(l).thin).collect()
}

/// rk(MoPLS) = d(L) on thin lattices: the corpus plus a random one.
pub fn mopls_rank(seed: u64) -> Check {
    let mut r = rng(seed);
    let corpus = thin_corpus();
    let l = if r.gen_bool(0.3) { corpus.choose(&mut r).unwrap().clone() } else { random_thin_lattice(&mut r, 40) };
    let p = extract_mopls(&l).map_err(|e| e.to_string())?.to_pls();
    if p.rank() != l.height() as i64 {
        return fail("MoPLS rank vs height", (p.rank(), l.height(), io::lattice_to_text(&l)));
    }
    Ok(())
}

/// The closure form and the chordless-circuit form of the lattice-model
/// check agree, on found models and on random labelled graphs.
pub fn lattice_checks_agree(seed: u64) -> Check {
    let mut r = rng(seed);
    let l = random_thin_lattice(&mut r, 30);
    let ji = l.join_irreducibles();
    let labels: Vec<String> = ji.elems.iter().map(|&a| l.name(a).to_string()).collect();
    let g = match brute_force_graph_model(&l).map_err(|e| e.to_string())? {
        Some(g) if r.gen_bool(0.5) => g,
        _ => {
            let n = l.height() + 1;
            let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            if pairs.len() < labels.len() {
                return Ok(());
            }
            pairs.shuffle(&mut r);
            let edges: Vec<(usize, usize, &str)> =
                pairs.iter().zip(&labels).map(|(&(a, b), s)| (a, b, s.as_str())).collect();
            LabeledGraph::new(&names(n), &edges).map_err(|e| e.to_string())?
        }
    };
    let a = check_lattice_model(&l, &g).map_err(|e| e.to_string())?;
    let b = check_lattice_model_graph(&l, &g).map_err(|e| e.to_string())?;
    if a.ok != b.ok {
        return fail("lattice-model checks disagree", (a, b, io::graph_to_text(&g), io::lattice_to_text(&l)));
    }
    Ok(())
}

/// The graph search finds a model exactly when the direct search over
/// Part(d + 1) finds an embedding.
pub fn searches_agree(seed: u64) -> Check {
    let mut r = rng(seed);
    let l = loop {
        let l = random_modular_lattice(&mut r, 24);
        if l.height() <= 4 {
            break l;
        }
    };
    let by_graph = brute_force_graph_model(&l).map_err(|e| e.to_string())?;
    let direct = direct_partition_search(&l, l.height() + 1).map_err(|e| e.to_string())?;
    if by_graph.is_some() != direct.is_some() {
        return fail("searches disagree", (by_graph.is_some(), io::lattice_to_text(&l)));
    }
    if direct.as_ref().is_some_and(|e| !e.is_tight()) {
        return fail("direct search returned an untight map", io::lattice_to_text(&l));
    }
    Ok(())
}

/// Extracting a graph from a tight embedding and rebuilding gives a tight
/// embedding on d + 1 points.
pub fn extract_round_trip(seed: u64) -> Check {
    let mut r = rng(seed);
    let l = random_thin_lattice(&mut r, 30);
    let Some(g) = brute_force_graph_model(&l).map_err(|e| e.to_string())? else { return Ok(()) };
    let e = build_partition_embedding(&l, &g).map_err(|e| e.to_string())?;
    let pad = r.gen_range(0..=2);
    let e = e.padded(e.n + pad).map_err(|e| e.to_string())?;
    let x = extract_model_from_embedding(&l, &e).map_err(|e| e.to_string())?;
    if x.graph.n_vertices() != l.height() + 1 {
        return fail("extracted graph size", (x.graph.n_vertices(), l.height()));
    }
    let back = build_partition_embedding(&l, &x.graph).map_err(|e| e.to_string())?;
    if !back.is_tight() || back.n != l.height() + 1 {
        return fail("rebuilt embedding", back.certificate);
    }
    Ok(())
}

/// Canonical text and JSON printers are inverse to the parsers.
pub fn format_round_trips(seed: u64) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(3..=10);
    let p = random_pls(&mut r, n, 0..=6);
    for t in [io::pls_to_text(&p), io::pls_to_json(&p)] {
        let back = io::parse_pls(&t).map_err(|e| e.to_string())?;
        if back != p || io::pls_to_text(&back) != io::pls_to_text(&p) {
            return fail("pls round trip", t);
        }
    }
    let l = io::canonical_lattice(&random_modular_lattice(&mut r, 40));
    for t in [io::lattice_to_text(&l), io::lattice_to_json(&l)] {
        if io::parse_lattice(&t).map_err(|e| e.to_string())? != l {
            return fail("lattice round trip", t);
        }
    }
    if let Ok(mut gs) = enumerate_glue_models(&p, false, 1) {
        if let Some(m) = gs.pop() {
            let g = io::canonical_graph(&m.graph);
            for t in [io::graph_to_text(&g), io::graph_to_json(&g)] {
                if io::parse_graph(&t).map_err(|e| e.to_string())? != g {
                    return fail("graph round trip", t);
                }
            }
        }
    }
    if let Some(m) = enumerate_binary_models(&p, None, 1).map_err(|e| e.to_string())?.pop() {
        for t in [io::matroid_to_text(&m), io::matroid_to_json(&m)] {
            if io::parse_matroid(&t).map_err(|e| e.to_string())? != m {
                return fail("matroid round trip", t);
            }
        }
    }
    Ok(())
}

pub const PROPERTIES: &[(&str, fn(u64) -> Check)] = &[
    ("qimp_sparse_and_ump_nmpl_bmpl_chain", implication_chain),
    ("rank_increments_by_shared_points", rank_increments),
    ("benign_type1_links_keep_bmpl", type1_closure),
    ("sparse_models_have_rank_at_most_rk", sparse_rank_bound),
    ("rank_tight_cycles_map_to_wheels", wheel_conclusion),
    ("cycle_preserving_models_force_bmpl", cycle_pres_implies_bmpl),
    ("splitting_identity", split_identity),
    ("join_irreducible_bound", ji_inequality),
    ("mopls_rank_equals_height_when_thin", mopls_rank),
];
