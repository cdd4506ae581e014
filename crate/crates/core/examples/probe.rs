// scratch: how deep does one runaway subtree go without the cap?
use std::sync::atomic::{AtomicU64, Ordering};
use weyl3::fragment::Fragment;
use weyl3::lattice::Root;
use weyl3::search::{AppendVerdict, RequiredOutcome, SearchConfig, append_root, required_root, seed};

static NODES: AtomicU64 = AtomicU64::new(0);
static MAXDEPTH: AtomicU64 = AtomicU64::new(0);
static EMITTED: AtomicU64 = AtomicU64::new(0);

fn dfs(roots: Vec<Root>, b: Fragment, hat: Root, required: Option<Root>, cfg: &SearchConfig) {
    NODES.fetch_add(1, Ordering::Relaxed);
    MAXDEPTH.fetch_max(roots.len() as u64, Ordering::Relaxed);
    if NODES.load(Ordering::Relaxed) % 2_000_000 == 0 {
        eprintln!("... nodes {}M, max depth {}", NODES.load(Ordering::Relaxed) / 1_000_000, MAXDEPTH.load(Ordering::Relaxed));
    }
    if b.completeness() { EMITTED.fetch_add(1, Ordering::Relaxed); }
    if required.is_none() && cfg.use_required_root {
        match required_root(&b, hat) {
            RequiredOutcome::Impossible => return,
            RequiredOutcome::Found(eps) => { dfs(roots, b, hat, Some(eps), cfg); return; }
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
    for (r, f, h, req) in children { dfs(r, f, h, req, cfg); }
}

fn find_deep(roots: Vec<Root>, b: Fragment, hat: Root, required: Option<Root>, cfg: &SearchConfig) -> Option<(Vec<Root>, Fragment, Root, Option<Root>)> {
    if roots.len() >= 40 { return Some((roots, b, hat, required)); }
    if required.is_none() && cfg.use_required_root {
        match required_root(&b, hat) {
            RequiredOutcome::Impossible => return None,
            RequiredOutcome::Found(eps) => return find_deep(roots, b, hat, Some(eps), cfg),
            RequiredOutcome::NotFound => {}
        }
    }
    let mut current = b;
    let mut seen: Vec<Root> = Vec::new();
    for i in 0..current.plane_count() {
        if current.plane(i).finished() { continue; }
        let first = current.plane(i).candidate_roots().partition_point(|&z| z <= hat);
        let total = current.plane(i).candidate_roots().len();
        for idx in first..total {
            let zeta = current.plane(i).candidate_roots()[idx];
            if seen.contains(&zeta) { continue; }
            seen.push(zeta);
            if required.is_none_or(|beta| beta > zeta) {
                if let AppendVerdict::Accepted(next) = append_root(zeta, &current, hat, cfg) {
                    let mut r = roots.clone(); r.push(zeta);
                    if let Some(found) = find_deep(r, next, zeta, required, cfg) { return Some(found); }
                }
            }
        }
    }
    if let Some(beta) = required {
        if let AppendVerdict::Accepted(next) = append_root(beta, &current, hat, cfg) {
            let mut r = roots.clone(); r.push(beta);
            return find_deep(r, next, beta, None, cfg);
        }
    }
    None
}

fn main() {
    let cfg = SearchConfig { max_roots: 10_000, parallel_depth: 0, ..SearchConfig::default() };
    let (frag, hat) = seed();
    let (r, b, h, req) = find_deep(frag.roots().to_vec(), frag, hat, None, &cfg).expect("deep");
    eprintln!("probing subtree from a {}-root state...", r.len());
    dfs(r, b, h, req, &cfg);
    eprintln!(
        "subtree done: {} nodes, max depth {}, emitted {}",
        NODES.load(Ordering::Relaxed),
        MAXDEPTH.load(Ordering::Relaxed),
        EMITTED.load(Ordering::Relaxed)
    );
}
