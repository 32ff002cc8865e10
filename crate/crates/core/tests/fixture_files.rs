//! The shipped `fixtures/` directory must match the built-in corpus byte for
//! byte. Run with TIGHTEMBED_BLESS=1 to rewrite the files from the corpus.

use std::fs;
use std::path::PathBuf;

use tightembed::io::fixtures;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn shipped_files_match_corpus() {
    let bless = std::env::var_os("TIGHTEMBED_BLESS").is_some();
    if bless {
        fs::create_dir_all(dir()).unwrap();
    }
    let corpus = fixtures();
    for f in corpus.values() {
        let path = dir().join(f.file_name());
        let want = f.to_text();
        if bless {
            fs::write(&path, &want).unwrap();
            continue;
        }
        let got = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(got, want, "{} drifted from the corpus", path.display());
    }
    let on_disk = fs::read_dir(dir()).unwrap().count();
    assert_eq!(on_disk, corpus.len(), "stray files in fixtures/");
}
