//! A benign type-1 midpoint-link added to a BMPL can create a non-benign
//! link of another cycle. Found by the seeded property suite; every step is
//! re-derived here by direct set arithmetic.

use tightembed::io::parse_pls;
use tightembed::pls::{add_path, classify_pls, enumerate_cycles, Cycle, Pls};

fn start() -> Pls {
    parse_pls("points: 1 2 3 4 5 6 7 8 9 10\nline: 1 2 3\nline: 1 5 7\nline: 2 4 5\nline: 3 4 6\nline: 3 8 10\nline: 7 8 9\n")
        .unwrap()
}

fn mask(p: &Pls, pts: &[&str]) -> u64 {
    pts.iter().fold(0, |m, x| m | 1 << p.index_of(x).unwrap())
}

fn line_of(p: &Pls, a: &str, b: &str) -> u64 {
    let (a, b) = (p.index_of(a).unwrap(), p.index_of(b).unwrap());
    p.line_mask(p.line_through(a, b).expect("points are collinear"))
}

#[test]
fn start_is_a_bmpl_and_the_link_is_benign_type_1() {
    let p = start();
    assert!(classify_pls(&p).unwrap().bmpl);
    let c = Cycle::from_junctions(&p, &[p.index_of("1").unwrap(), p.index_of("2").unwrap(), p.index_of("5").unwrap()])
        .unwrap();
    let added = add_path(&p, "3", "1", 2).unwrap();
    let rec = added.record.expect("benign link");
    assert_eq!(rec.kind, 1);
    // 3 is the midpoint of the cycle line {1,2,3} and 1 a junction on it
    assert_eq!(line_of(&p, "1", "2"), mask(&p, &["1", "2", "3"]));
    assert!(c.midpoint_mask() & mask(&p, &["3"]) != 0);
}

#[test]
fn the_result_has_a_non_benign_link_of_a_pentagon() {
    let q = add_path(&start(), "3", "1", 2).unwrap();
    let (s, path) = (&q.pls, &q.path);
    assert_eq!(path, &["3", "12", "14", "1"].map(String::from));
    // pentagon (3,4,5,7,8): lines pairwise meet only when consecutive
    let js = ["3", "4", "5", "7", "8"];
    let lines: Vec<u64> = (0..5).map(|i| line_of(s, js[i], js[(i + 1) % 5])).collect();
    for i in 0..5 {
        for j in i + 1..5 {
            let adjacent = j == i + 1 || (i == 0 && j == 4);
            assert_eq!(lines[i] & lines[j] != 0, adjacent);
        }
    }
    let support = lines.iter().fold(0, |m, l| m | l);
    assert_eq!(support.count_ones(), 10);
    // the added path meets the support exactly in its ends 1 and 3
    let link = (0..3).fold(0, |m, i| m | line_of(s, &path[i], &path[i + 1]));
    assert_eq!(link & support, mask(s, &["1", "3"]));
    // 1 is the midpoint of the pentagon line {1,5,7}, which misses junction 3
    assert_eq!(lines[2], mask(s, &["1", "5", "7"]));
    assert_eq!(lines[2] & mask(s, &["3"]), 0);
    let pentagon = enumerate_cycles(s, None).unwrap().into_iter().any(|c| c.support == support);
    assert!(pentagon);
    assert!(!classify_pls(s).unwrap().bmpl);
}
