// scratch: tree size as a function of the depth cap
use std::time::Instant;
use weyl3::search::{SearchConfig, enumerate};

fn main() {
    let caps: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let caps = if caps.is_empty() { vec![37, 40, 44, 48] } else { caps };
    for cap in caps {
        let cfg = SearchConfig { max_roots: cap, parallel_depth: 0, ..SearchConfig::default() };
        let t = Instant::now();
        let emitted = enumerate(&cfg);
        println!("cap {cap}: {} emitted, {:.1?}", emitted.len(), t.elapsed());
    }
}
