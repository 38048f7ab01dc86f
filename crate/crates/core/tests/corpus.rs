use std::collections::BTreeSet;
use std::path::Path;

use tcl_core::proofgraph::{read_proof, write_proof};
use tcl_core::samples;

fn corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

#[test]
fn corpus_files_match_the_builders() {
    let built = samples::corpus();
    for (stem, g) in &built {
        let path = corpus_dir().join(format!("{stem}.tcp"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, write_proof(g), "{stem}: regenerate with `cargo run --example build_corpus`");
        assert_eq!(&read_proof(&text).unwrap(), g);
    }
    let on_disk: BTreeSet<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tcp"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    let expected: BTreeSet<String> = built.into_iter().map(|(s, _)| s).collect();
    assert_eq!(on_disk, expected);
}

#[test]
fn corpus_verdicts() {
    for (stem, g) in samples::corpus() {
        let theory = samples::theory_named(&g.theory).unwrap();
        g.validate(&theory).unwrap_or_else(|e| panic!("{stem}: {e:?}"));
        let report = tcl_core::tracecheck::check_global_trace_condition(&g);
        assert_eq!(report.is_accepted(), !stem.starts_with("bad_"), "{stem}");
    }
}
