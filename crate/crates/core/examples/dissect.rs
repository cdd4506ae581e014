// scratch: dissect a deep junk node — why is it still alive?
use weyl3::fragment::Fragment;
use weyl3::lattice::Root;
use weyl3::search::{AppendVerdict, RequiredOutcome, SearchConfig, append_root, required_root, seed};
use weyl3::words::emit_word;

fn find_deep(roots: Vec<Root>, b: Fragment, hat: Root, required: Option<Root>, cfg: &SearchConfig, target: usize)
    -> Option<(Vec<Root>, Fragment, Root, Option<Root>)>
{
    if roots.len() >= target { return Some((roots, b, hat, required)); }
    if required.is_none() && cfg.use_required_root {
        match required_root(&b, hat) {
            RequiredOutcome::Impossible => return None,
            RequiredOutcome::Found(eps) => return find_deep(roots, b, hat, Some(eps), cfg, target),
            RequiredOutcome::NotFound => {}
        }
    }
    let mut current = b;
    let mut seen: Vec<Root> = Vec::new();
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
                        if let Some(f) = find_deep(r, next, zeta, required, cfg, target) { return Some(f); }
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
            return find_deep(r, next, beta, None, cfg, target);
        }
    }
    None
}

fn main() {
    let target: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(50);
    let cfg = SearchConfig { max_roots: 10_000, parallel_depth: 0, ..SearchConfig::default() };
    let (frag, hat) = seed();
    let Some((roots, b, hat, req)) = find_deep(frag.roots().to_vec(), frag, hat, None, &cfg, target) else {
        println!("no branch reaches depth {target}");
        return;
    };
    println!("node at depth {} (required = {req:?})", roots.len());
    let words: Vec<String> = roots.iter().map(|&r| emit_word(r).unwrap()).collect();
    println!("roots: {}", words.join(", "));
    println!("required_root here: {:?}", required_root(&b, hat));
    println!("planes: {} ({} finished), s_r {} vs {}", b.plane_count(),
        b.planes().filter(|p| p.finished()).count(), b.s_r(), 3 * (b.plane_count() - 1));
    // verdicts over live candidates
    let (mut acc, mut rej, mut def, mut expired) = (0, 0, 0, 0);
    let mut seen: Vec<Root> = Vec::new();
    for i in 0..b.plane_count() {
        if b.plane(i).finished() { continue; }
        for &zeta in b.plane(i).candidate_roots() {
            if zeta <= hat { expired += 1; continue; }
            if seen.contains(&zeta) { continue; }
            seen.push(zeta);
            match append_root(zeta, &b, hat, &cfg) {
                AppendVerdict::Accepted(_) => acc += 1,
                AppendVerdict::Rejected => rej += 1,
                AppendVerdict::Deferred => def += 1,
            }
        }
    }
    println!("distinct candidates > hat: {} accepted, {} rejected, {} deferred ({} expired occurrences)", acc, rej, def, expired);
    // 2-member plane count (drives RequiredRoot)
    let pairs = b.planes().filter(|p| p.len() == 2).count();
    println!("2-member planes: {pairs}");
}
