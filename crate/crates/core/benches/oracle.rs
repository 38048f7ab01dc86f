use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tcl_core::semantics::{find_counter_model_with, SearchLimits};
use tcl_core::syntax::{parse_sequent, Signature};

/// Valid sequents, so the search has to enumerate every model.
fn goals() -> Vec<(&'static str, tcl_core::syntax::Sequent, usize)> {
    let sig = Signature::new().with_pred("p", 2).with_pred("q", 1);
    let trans = "(rtc x y. p(x, y))(a, b), (rtc x y. p(x, y))(b, c) |- (rtc x y. p(x, y))(a, c)";
    let guarded = "(rtc x y. p(x, y) /\\ q(y))(a, b) |- (rtc x y. p(x, y))(a, b)";
    vec![
        ("transitivity", parse_sequent(trans, &sig).unwrap(), 3),
        ("guarded_closure", parse_sequent(guarded, &sig).unwrap(), 3),
    ]
}

fn counter_model_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("counter_model_search");
    group.sample_size(10);
    for (name, goal, size) in goals() {
        for (mode, parallel) in [("parallel", true), ("sequential", false)] {
            let limits = SearchLimits { parallel, ..SearchLimits::default() };
            group.bench_with_input(BenchmarkId::new(mode, name), &goal, |b, goal| {
                b.iter(|| find_counter_model_with(goal, size, &[], limits).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, counter_model_search);
criterion_main!(benches);
