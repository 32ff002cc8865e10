//! Built-in corpus. Each fixture is stored in the on-disk text format and
//! parsed on demand, so the shipped files and the corpus cannot drift.

use std::collections::BTreeMap;

use crate::lattice::{families, Lattice};
use crate::pls::Pls;

use super::formats::{lattice_to_text, parse_lattice_text, parse_pls_text, pls_to_text};

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureData {
    Lattice(Lattice),
    Pls(Pls),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub data: FixtureData,
    pub provenance: &'static str,
    /// Completed by choice where the source data is only partly determined.
    pub reconstructed: bool,
}

impl Fixture {
    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.data {
            FixtureData::Lattice(l) => Some(l),
            FixtureData::Pls(_) => None,
        }
    }

    pub fn pls(&self) -> Option<&Pls> {
        match &self.data {
            FixtureData::Pls(p) => Some(p),
            FixtureData::Lattice(_) => None,
        }
    }

    /// `<name>.lat` or `<name>.pls`.
    pub fn file_name(&self) -> String {
        match self.data {
            FixtureData::Lattice(_) => format!("{}.lat", self.name),
            FixtureData::Pls(_) => format!("{}.pls", self.name),
        }
    }

    /// Canonical text with the provenance as a leading comment.
    pub fn to_text(&self) -> String {
        let body = match &self.data {
            FixtureData::Lattice(l) => lattice_to_text(l),
            FixtureData::Pls(p) => pls_to_text(p),
        };
        let flag = if self.reconstructed { "\n# reconstructed" } else { "" };
        format!("# {}: {}{flag}\n{body}", self.name, self.provenance)
    }
}

fn lat(covers: &str) -> FixtureData {
    FixtureData::Lattice(parse_lattice_text(covers).expect("fixture lattice parses"))
}

fn pls(text: &str) -> FixtureData {
    FixtureData::Pls(parse_pls_text(text).expect("fixture space parses"))
}

fn fam(l: Lattice) -> FixtureData {
    FixtureData::Lattice(super::formats::canonical_lattice(&l))
}

pub fn fixtures() -> BTreeMap<&'static str, Fixture> {
    let entries: Vec<(&'static str, FixtureData, &'static str, bool)> = vec![
        ("m3", fam(families::m_n(3)), "diamond: bottom, three atoms, top", false),
        ("m4", fam(families::m_n(4)), "four atoms; modular but not thin", false),
        ("d2", fam(families::chain(2)), "two-element chain", false),
        ("chain3", fam(families::chain(3)), "three-element chain", false),
        ("chain4", fam(families::chain(4)), "four-element chain", false),
        ("boolean2", fam(families::boolean(2)), "subsets of a 2-set", false),
        ("boolean3", fam(families::boolean(3)), "subsets of a 3-set", false),
        (
            "m3xd2",
            lat("0 p\n0 r\n0 s\n0 q\np prs\nr prs\ns prs\np pq\nr rq\ns sq\nq pq\nq rq\nq sq\nprs 1\npq 1\nrq 1\nsq 1\n"),
            "product of the diamond (atoms p r s) with the two-element chain (atom q); MoPLS is one line plus an isolated point",
            false,
        ),
        (
            "l2",
            lat("0 q\nq p\nq r\nq s\np 1\nr 1\ns 1\n"),
            "two-element chain glued below the diamond; embeds into Part(4)",
            true,
        ),
        (
            "lm_gf2_3",
            fam(families::subspace_lattice(3)),
            "subspaces of GF(2)^3; modular, not 2-distributive",
            false,
        ),
        (
            "lambda1",
            pls("points: 1 2 3 4 5 6 7 8 9\nline: 1 2 3\nline: 3 4 5\nline: 5 6 7\nline: 7 8 1\nline: 2 9 5\n"),
            "nine points, five lines: a 4-cycle of lines with a chord line through 2 9 5; sparse, not a BMPL",
            false,
        ),
        (
            "j2",
            pls(
                "points: 1 2 3 4 5 6 7 8 9 10 11 12 13 14\n\
                 line: 1 2 3\nline: 3 4 5\nline: 5 6 1\nline: 6 7 8\nline: 8 9 10\nline: 10 11 5\n\
                 line: 1 12 13\nline: 13 14 7\n",
            ),
            "triangle augmented by a type-2 link then a type-1 link; exactly four cycles",
            true,
        ),
        (
            "fano",
            pls(
                "points: 1 2 3 4 5 6 7\nline: 1 2 3\nline: 1 4 5\nline: 1 6 7\nline: 2 4 6\nline: 2 5 7\n\
                 line: 3 4 7\nline: 3 5 6\n",
            ),
            "projective plane of order 2; points are the nonzero vectors of GF(2)^3",
            false,
        ),
        (
            "qimp1",
            pls("points: m12 m13 p1 p2 p3 q\nline: p1 m12 p2\nline: p1 m13 p3\nline: p2 q p3\n"),
            "triangle QIMP on six points; standard graph has four vertices",
            true,
        ),
        (
            "qimp2",
            pls("points: m12' m23' p1' p2' p3'\nline: p1' m12' p2'\nline: p2' m23' p3'\n"),
            "two-line QIMP on five points; standard graph has four vertices",
            true,
        ),
        (
            "j5",
            pls(
                "points: m12 m13 p1 p2 p3 q m12' m23' p2' p3'\n\
                 line: p1 m12 p2\nline: p1 m13 p3\nline: p2 q p3\nline: q m12' p2'\nline: p2' m23' p3'\n",
            ),
            "UMP gluing qimp1 and qimp2 at q (playing p1' of qimp2)",
            true,
        ),
        (
            "acyclic_tree",
            pls("points: 1 2 3 4 5 6 7 8 9\nline: 1 2 3\nline: 3 4 5\nline: 3 6 7\nline: 5 8 9\n"),
            "four lines forming a tree; acyclic",
            false,
        ),
    ];
    entries
        .into_iter()
        .map(|(name, data, provenance, reconstructed)| (name, Fixture { name, data, provenance, reconstructed }))
        .collect()
}
