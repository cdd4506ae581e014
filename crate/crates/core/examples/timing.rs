// scratch: full pipeline timing
use std::time::Instant;
use weyl3::classify::{ClassifyConfig, classify, compare_golden};
use weyl3::search::SearchConfig;

fn main() {
    let max_roots: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let cfg = ClassifyConfig {
        search: SearchConfig { max_roots, parallel_depth: 0, ..SearchConfig::default() },
        ..ClassifyConfig::default()
    };
    let t = Instant::now();
    let out = classify(&cfg).expect("classification runs");
    println!(
        "emitted {} ({} invalid) -> {} systems in {:.1?}",
        out.emitted,
        out.invalid,
        out.records.len(),
        t.elapsed()
    );
    let diffs = compare_golden(&out.records);
    println!("golden diffs: {}", diffs.len());
    for d in diffs.iter().take(10) {
        println!("  {d}");
    }
}
