// scratch: capture one runaway branch
use std::sync::Mutex;
use std::sync::atomic::{AtomicBool, Ordering};
use weyl3::fragment::Fragment;
use weyl3::lattice::Root;
use weyl3::search::{AppendVerdict, RequiredOutcome, SearchConfig, append_root, required_root, seed};
use weyl3::words::emit_word;

static DUMPED: AtomicBool = AtomicBool::new(false);

fn run(roots: Vec<Root>, b: Fragment, hat: Root, required: Option<Root>, cfg: &SearchConfig, sink: &Mutex<Vec<Vec<Root>>>) {
    if roots.len() > 45 {
        if !DUMPED.swap(true, Ordering::SeqCst) {
            println!("runaway branch with {} roots:", roots.len());
            let words: Vec<String> = roots.iter().map(|&r| emit_word(r).unwrap_or(format!("{r}"))).collect();
            println!("{}", words.join(", "));
            println!("planes: {}", b.plane_count());
            println!("s_r: {} vs 3(#planes-1) = {}", b.s_r(), 3 * (b.plane_count() - 1));
            let mut hist = std::collections::BTreeMap::new();
            for p in b.planes() { *hist.entry(p.len()).or_insert(0usize) += 1; }
            println!("plane histogram: {hist:?}");
            println!("finished planes: {}", b.planes().filter(|p| p.finished()).count());
            println!("required_root: {:?}", required_root(&b, hat));
        }
        return;
    }
    if b.completeness() { sink.lock().unwrap().push(roots.clone()); }
    if required.is_none() && cfg.use_required_root {
        match required_root(&b, hat) {
            RequiredOutcome::Impossible => return,
            RequiredOutcome::Found(eps) => { run(roots, b, hat, Some(eps), cfg, sink); return; }
            RequiredOutcome::NotFound => {}
        }
    }
    let mut current = b;
    let mut seen: Vec<Root> = Vec::new();
    let mut children = Vec::new();
    for i in 0..current.plane_count() {
        if current.plane(i).finished() { continue; }
        let first = current.plane(i).candidate_roots().partition_point(|&z| z <= hat);
        let total = current.plane(i).candidate_roots().len();
        let mut live = (total - first) as i64;
        for idx in first..total {
            let zeta = current.plane(i).candidate_roots()[idx];
            if seen.contains(&zeta) { continue; }
            seen.push(zeta);
            if required.is_none_or(|beta| beta > zeta) {
                match append_root(zeta, &current, hat, cfg) {
                    AppendVerdict::Accepted(next) => {
                        let mut r = roots.clone(); r.push(zeta);
                        children.push((r, next, zeta, required));
                    }
                    AppendVerdict::Rejected => live -= 1,
                    AppendVerdict::Deferred => {}
                }
            }
        }
        if live == 0 { current = current.mark_finished(i); }
    }
    if let Some(beta) = required {
        if let AppendVerdict::Accepted(next) = append_root(beta, &current, hat, cfg) {
            let mut r = roots.clone(); r.push(beta);
            children.push((r, next, beta, None));
        }
    }
    for (r, f, h, req) in children {
        if DUMPED.load(Ordering::SeqCst) { return; }
        run(r, f, h, req, cfg, sink);
    }
}

fn main() {
    let cfg = SearchConfig { max_roots: 64, parallel_depth: 0, ..SearchConfig::default() };
    let (frag, hat) = seed();
    let sink = Mutex::new(Vec::new());
    run(frag.roots().to_vec(), frag, hat, None, &cfg, &sink);
    println!("(emitted so far: {})", sink.lock().unwrap().len());
}
