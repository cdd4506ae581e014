//! The enumeration engine: candidate roots are appended one at a time in
//! strictly increasing lex order, with plane bookkeeping deciding for each
//! candidate whether it may be appended now, can never be appended, or must
//! wait for a smaller root.

use std::sync::Mutex;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::fragment::Fragment;
use crate::lattice::{ALPHA1, ALPHA2, ALPHA3, Root, vol3};

/// Outcome of trying to append one root to a fragment.
///
/// `Deferred` means the root cannot be decided yet: if it belongs to the
/// final system, some root strictly between the current frontier and it
/// must be appended first.
#[derive(Clone)]
pub enum AppendVerdict {
    Accepted(Fragment),
    Rejected,
    Deferred,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Root strings longer than this certify an out-of-range Cartan entry;
    /// 7 is the theorem bound, 6 the empirically sharp one.
    pub cartan_bound: i64,
    /// Safety net; no branch ever reaches it at the default of 64.
    pub max_roots: usize,
    /// Enable the required-root shortcut. Disabling it must not change the
    /// classification, only the running time.
    pub use_required_root: bool,
    /// Recursion levels whose branches are handed to worker threads.
    pub parallel_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { cartan_bound: 7, max_roots: 64, use_required_root: true, parallel_depth: 5 }
    }
}

/// The irreducible starting state and its frontier root.
///
/// Every connected simply connected rank-three scheme with a finite
/// irreducible root system has an object whose positive roots below the
/// frontier are exactly this set, so growing it upward finds at least one
/// object of every scheme.
pub fn seed() -> (Fragment, Root) {
    let mut roots = vec![
        ALPHA3,
        ALPHA2,
        ALPHA2 + ALPHA3,
        ALPHA1,
        ALPHA1 + ALPHA2,
        ALPHA1 + ALPHA2 + ALPHA3,
    ];
    roots.sort();
    let hat = *roots.last().unwrap();
    (Fragment::build(&roots).expect("seed is a valid fragment"), hat)
}

// v or -v among the known positive roots. The callers pass v = alpha - gamma
// with alpha lex-greater than every known root, so v is lex-positive and -v
// can never be a known root; membership needs v componentwise nonnegative.
fn in_root_set(b: &Fragment, v: Root) -> bool {
    debug_assert!(Root::new(0, 0, 0) < v);
    v.is_positive() && b.roots().binary_search(&v).is_ok()
}

/// Try to append `alpha` to `b`, where `alpha` exceeds every known root and
/// every positive root up to `hat` is known.
///
/// Scanning the planes: a plane through `alpha` must extend to an
/// F-sequence (a finished or non-extendable plane defers the root); a plane
/// whose base pair spans a unimodular triple with `alpha` forces one of the
/// two differences to be a root, so if both are decided-missing the root is
/// rejected and if one is still undecided it is deferred. An accepted root
/// must keep every touched root string within the Cartan bound.
pub fn append_root(alpha: Root, b: &Fragment, hat: Root, cfg: &SearchConfig) -> AppendVerdict {
    debug_assert!(alpha.is_positive() && alpha > hat);
    debug_assert!(b.roots().iter().all(|&r| r <= hat));
    match scan_planes(alpha, b, hat) {
        ScanOutcome::Rejected => AppendVerdict::Rejected,
        ScanOutcome::Deferred => AppendVerdict::Deferred,
        ScanOutcome::Extend(extensions) => {
            let next = b.insert(alpha, &extensions).expect("prevalidated insert");
            if !strings_within_bound(&next, &extensions, cfg) {
                return AppendVerdict::Rejected;
            }
            AppendVerdict::Accepted(next)
        }
    }
}

enum ScanOutcome {
    Extend(Vec<(usize, usize)>),
    Rejected,
    Deferred,
}

/// The plane scan of the append step, shared by the persistent and the
/// in-place paths.
fn scan_planes(alpha: Root, b: &Fragment, hat: Root) -> ScanOutcome {
    let mut extensions: Vec<(usize, usize)> = Vec::new();
    for (i, normal) in b.normals().iter().enumerate() {
        let g = normal.dot(alpha);
        if g == 0 {
            let rec = b.plane(i);
            if rec.finished() {
                return ScanOutcome::Deferred;
            }
            let Some(z) = b.plane_coords_of(i, alpha) else {
                return ScanOutcome::Deferred;
            };
            match rec.coords().try_insert(z).expect("alpha is nonzero") {
                Some(pos) => extensions.push((i, pos)),
                None => return ScanOutcome::Deferred,
            }
        } else if g.abs() == 1 {
            let (gamma1, gamma2) = b.plane_endpoints(i);
            let d1 = alpha - gamma1;
            let d2 = alpha - gamma2;
            if !in_root_set(b, d1) && !in_root_set(b, d2) {
                // alpha is not simple, so {gamma1, gamma2, alpha} cannot be
                // a base: one of d1, d2 must be a root of any completion
                let decided_missing = |d: Root| !d.is_positive() || d <= hat;
                return if decided_missing(d1) && decided_missing(d2) {
                    ScanOutcome::Rejected
                } else {
                    ScanOutcome::Deferred
                };
            }
        }
    }
    ScanOutcome::Extend(extensions)
}

/// Cartan bound on the planes touched by an insert; only touched planes
/// change, so this bounds every plane inductively.
fn strings_within_bound(b: &Fragment, extensions: &[(usize, usize)], cfg: &SearchConfig) -> bool {
    for &(i, _) in extensions {
        if !b.plane(i).coords().max_string(cfg.cartan_bound) {
            return false;
        }
    }
    debug_assert!(
        cfg.cartan_bound > 7
            || extensions.iter().all(|&(i, _)| b.plane(i).coords().max_string(7)),
        "accepted state holds a Cartan entry below -7"
    );
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RequiredOutcome {
    NotFound,
    Found(Root),
    Impossible,
}

/// Look for a smallest root that any completion must contain, assuming all
/// roots up to `hat` are known.
///
/// For a root g1 on two distinct two-member planes {g1, g2} and {g1, g3}
/// with Vol_3(g1, g2, g3) = 1, one of g1+g2, g1+g3 is a root of any
/// completion. If one sum is decided-missing the other is required — and if
/// it cannot be added (also below the frontier, or its plane is finished)
/// the whole configuration is impossible.
pub fn required_root(b: &Fragment, hat: Root) -> RequiredOutcome {
    // bucket the two-member planes by their member roots
    let mut incidence: Vec<(u32, u32)> = Vec::new();
    for (pi, rec) in b.planes().enumerate() {
        if rec.len() == 2 {
            let m = rec.members();
            incidence.push((m[0], pi as u32));
            incidence.push((m[1], pi as u32));
        }
    }
    incidence.sort_unstable();
    let mut best: Option<Root> = None;
    let mut start = 0;
    while start < incidence.len() {
        let g1_id = incidence[start].0;
        let mut end = start;
        while end < incidence.len() && incidence[end].0 == g1_id {
            end += 1;
        }
        let g1 = b.roots()[g1_id as usize];
        let other = |pi: u32| {
            let m = b.plane(pi as usize).members();
            let id = if m[0] == g1_id { m[1] } else { m[0] };
            b.roots()[id as usize]
        };
        for a in start..end {
            for c in a + 1..end {
                let (pj, pk) = (incidence[a].1, incidence[c].1);
                let (gamma2, gamma3) = (other(pj), other(pk));
                if vol3(g1, gamma2, gamma3) != 1 {
                    continue;
                }
                let xi2 = g1 + gamma2;
                let xi3 = g1 + gamma3;
                if xi2 <= hat {
                    if xi3 <= hat || b.plane(pk as usize).finished() {
                        return RequiredOutcome::Impossible;
                    }
                    best = Some(best.map_or(xi3, |e| e.min(xi3)));
                } else if xi3 <= hat {
                    if b.plane(pj as usize).finished() {
                        return RequiredOutcome::Impossible;
                    }
                    best = Some(best.map_or(xi2, |e| e.min(xi2)));
                }
            }
        }
        start = end;
    }
    best.map_or(RequiredOutcome::NotFound, RequiredOutcome::Found)
}

/// Grow `b` through every completion, feeding each state that passes the
/// completeness test to `emit`. `required` carries the pending root from
/// the shortcut: while set, only candidates below it are explored, and the
/// node ends by appending it.
pub fn complete(
    roots: Vec<Root>,
    b: Fragment,
    hat: Root,
    required: Option<Root>,
    cfg: &SearchConfig,
    depth: usize,
    emit: &(dyn Fn(&[Root]) + Sync),
) {
    let aborted = AtomicUsize::new(0);
    let ctx = Ctx { cfg, emit, stop: None, aborted: &aborted };
    let mut roots = roots;
    let mut b = b;
    complete_inner(&mut roots, &mut b, hat, required, depth, &ctx);
}

struct Ctx<'a> {
    cfg: &'a SearchConfig,
    emit: &'a (dyn Fn(&[Root]) + Sync),
    stop: Option<(&'a AtomicBool, Instant)>,
    aborted: &'a AtomicUsize,
}

/// The recursion works in place: each append is undone on return, and the
/// finished flags a node sets are cleared when it exits, so the caller
/// always gets its state back unchanged. Branches dispatched to worker
/// threads (above `parallel_depth`) get their own clone instead.
fn complete_inner(
    roots: &mut Vec<Root>,
    b: &mut Fragment,
    hat: Root,
    required: Option<Root>,
    depth: usize,
    ctx: &Ctx<'_>,
) {
    let cfg = ctx.cfg;
    if let Some((flag, deadline)) = ctx.stop {
        if flag.load(Ordering::Relaxed) || Instant::now() > deadline {
            flag.store(true, Ordering::Relaxed);
            return;
        }
    }
    if roots.len() > cfg.max_roots {
        // safety net for junk branches that only die deep; counted and
        // reported once by the driver
        ctx.aborted.fetch_add(1, Ordering::Relaxed);
        return;
    }
    if b.completeness() {
        (ctx.emit)(roots);
    }
    if required.is_none() && cfg.use_required_root {
        match required_root(b, hat) {
            RequiredOutcome::Impossible => return,
            RequiredOutcome::Found(eps) => {
                complete_inner(roots, b, hat, Some(eps), depth, ctx);
                return;
            }
            RequiredOutcome::NotFound => {}
        }
    }

    let spawn = depth < cfg.parallel_depth;
    let mut spawned: Vec<(Vec<Root>, Fragment, Root, Option<Root>)> = Vec::new();
    // A child is entered right where it is accepted, so it sees the
    // finished flags accumulated at this node so far; the flags are
    // branch-local and cleared below.
    let mut flipped: Vec<usize> = Vec::new();
    let mut seen: Vec<Root> = Vec::new();
    let mut descend = |roots: &mut Vec<Root>, b: &mut Fragment, zeta: Root, req: Option<Root>, spawned: &mut Vec<_>| {
        // returns false when the candidate is rejected
        match scan_planes(zeta, b, hat) {
            ScanOutcome::Rejected => false,
            ScanOutcome::Deferred => true,
            ScanOutcome::Extend(ext) => {
                let patch = b.insert_mut(zeta, &ext).expect("prevalidated insert");
                let ok = strings_within_bound(b, &ext, cfg);
                if ok {
                    roots.push(zeta);
                    if spawn {
                        spawned.push((roots.clone(), b.clone(), zeta, req));
                    } else {
                        complete_inner(roots, b, zeta, req, depth + 1, ctx);
                    }
                    roots.pop();
                }
                b.undo_insert(patch);
                ok
            }
        }
    };
    for i in 0..b.plane_count() {
        if b.plane(i).finished() {
            continue;
        }
        let cands = b.plane(i).candidate_roots();
        let first = cands.partition_point(|&z| z <= hat);
        let total = cands.len();
        let mut live = (total - first) as i64;
        for idx in first..total {
            let zeta = b.plane(i).candidate_roots()[idx];
            if seen.contains(&zeta) {
                continue;
            }
            seen.push(zeta);
            if required.is_none_or(|beta| beta > zeta)
                && !descend(roots, b, zeta, required, &mut spawned)
            {
                live -= 1;
            }
        }
        if live == 0 {
            b.set_finished(i);
            flipped.push(i);
        }
    }
    if let Some(beta) = required {
        descend(roots, b, beta, None, &mut spawned);
    }
    for i in flipped {
        b.clear_finished(i);
    }

    if !spawned.is_empty() {
        spawned.into_par_iter().for_each(|(mut r, mut f, h, req)| {
            complete_inner(&mut r, &mut f, h, req, depth + 1, ctx)
        });
    }
}

fn run_search(cfg: &SearchConfig, stop: Option<(&AtomicBool, Instant)>) -> (Vec<Vec<Root>>, usize) {
    let (frag, hat) = seed();
    let sink: Mutex<Vec<Vec<Root>>> = Mutex::new(Vec::new());
    let emit = |r: &[Root]| sink.lock().unwrap().push(r.to_vec());
    let aborted = AtomicUsize::new(0);
    let ctx = Ctx { cfg, emit: &emit, stop, aborted: &aborted };
    let mut roots = frag.roots().to_vec();
    let mut frag = frag;
    complete_inner(&mut roots, &mut frag, hat, None, 0, &ctx);
    let mut out = sink.into_inner().unwrap();
    out.sort();
    out.dedup();
    (out, aborted.into_inner())
}

/// Run the whole search from the seed. Returns the emitted candidate
/// positive systems, lex-sorted and deduplicated; they still need to be
/// verified and canonicalized.
pub fn enumerate(cfg: &SearchConfig) -> Vec<Vec<Root>> {
    let (out, aborted) = run_search(cfg, None);
    if aborted > 0 {
        eprintln!("search: abandoned {aborted} branches at the {}-root safety net", cfg.max_roots);
    }
    out
}

/// Like [`enumerate`], but abandon the search once `deadline` passes;
/// `None` means the budget expired before the search finished.
pub fn enumerate_until(cfg: &SearchConfig, deadline: Instant) -> Option<Vec<Vec<Root>>> {
    let expired = AtomicBool::new(false);
    let (out, _) = run_search(cfg, Some((&expired, deadline)));
    (!expired.load(Ordering::Relaxed)).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed_hat() -> Root {
        ALPHA1 + ALPHA2 + ALPHA3
    }

    #[test]
    fn seed_state() {
        let (frag, hat) = seed();
        assert_eq!(frag.roots().len(), 6);
        assert_eq!(hat, seed_hat());
        assert!(frag.completeness());
        assert!(frag.roots().iter().all(|&r| r <= hat));
    }

    #[test]
    fn append_accepts_traced_example() {
        let (frag, hat) = seed();
        match append_root(ALPHA1 + 2 * ALPHA2, &frag, hat, &SearchConfig::default()) {
            AppendVerdict::Accepted(next) => {
                assert_eq!(next.roots().len(), 7);
                assert_eq!(next.s_r(), 25);
            }
            _ => panic!("expected acceptance"),
        }
    }

    #[test]
    fn append_defers_traced_example() {
        let (frag, hat) = seed();
        let alpha = 2 * ALPHA1 + ALPHA2 + ALPHA3;
        assert!(matches!(
            append_root(alpha, &frag, hat, &SearchConfig::default()),
            AppendVerdict::Deferred
        ));
    }

    #[test]
    fn append_rejects_long_string() {
        // one plane holding the chain a1 + k*a2 for k = 0..=7
        let mut roots = vec![ALPHA2];
        for k in 0..=7 {
            roots.push(ALPHA1 + k * ALPHA2);
        }
        roots.sort();
        let frag = Fragment::build(&roots).unwrap();
        let hat = *roots.last().unwrap();
        assert_eq!(hat, ALPHA1 + 7 * ALPHA2);
        let alpha = ALPHA1 + 8 * ALPHA2;
        assert!(matches!(
            append_root(alpha, &frag, hat, &SearchConfig::default()),
            AppendVerdict::Rejected
        ));
        // with the chain stopping at k = 6 the same step is fine
        let frag = Fragment::build(&roots[..roots.len() - 1]).unwrap();
        assert!(matches!(
            append_root(ALPHA1 + 7 * ALPHA2, &frag, ALPHA1 + 6 * ALPHA2, &SearchConfig::default()),
            AppendVerdict::Accepted(_)
        ));
    }

    #[test]
    fn required_root_on_seed() {
        let (frag, hat) = seed();
        assert_eq!(required_root(&frag, hat), RequiredOutcome::NotFound);
    }

    #[test]
    fn required_root_traced_example() {
        let roots = {
            let mut r = vec![ALPHA3, ALPHA2, ALPHA1 + ALPHA2];
            r.sort();
            r
        };
        let frag = Fragment::build(&roots).unwrap();
        assert_eq!(
            required_root(&frag, ALPHA1 + ALPHA2),
            RequiredOutcome::Found(ALPHA1 + ALPHA2 + ALPHA3)
        );
        assert_eq!(required_root(&frag, seed_hat()), RequiredOutcome::Impossible);
    }

    /// A deferred root can become acceptable after a smaller root lands.
    #[test]
    fn deferred_roots_replay() {
        let (frag, hat) = seed();
        let cfg = SearchConfig::default();
        let mut deferred: Vec<Root> = Vec::new();
        for i in 0..frag.plane_count() {
            for &zeta in frag.plane(i).candidate_roots() {
                if zeta > hat && matches!(append_root(zeta, &frag, hat, &cfg), AppendVerdict::Deferred) {
                    deferred.push(zeta);
                }
            }
        }
        let mut flipped = false;
        for i in 0..frag.plane_count() {
            for &mid in frag.plane(i).candidate_roots() {
                if mid <= hat {
                    continue;
                }
                if let AppendVerdict::Accepted(next) = append_root(mid, &frag, hat, &cfg) {
                    for &zeta in &deferred {
                        if zeta > mid
                            && !next.roots().contains(&zeta)
                            && next.planes().all(|p| p.normal().dot(zeta) != 0 || !p.finished())
                            && matches!(append_root(zeta, &next, mid, &cfg), AppendVerdict::Accepted(_))
                        {
                            flipped = true;
                        }
                    }
                }
            }
        }
        assert!(flipped, "no deferred root ever became acceptable");
    }

    #[test]
    fn bounded_enumeration_smoke() {
        let cfg = SearchConfig { max_roots: 8, parallel_depth: 0, ..SearchConfig::default() };
        let emitted = enumerate(&cfg);
        assert!(!emitted.is_empty());
        let (seed_frag, _) = seed();
        for set in &emitted {
            assert!(set.len() <= 8 && set.len() >= 6);
            assert!(set.windows(2).all(|w| w[0] < w[1]), "emitted sets are lex-sorted");
            for r in seed_frag.roots() {
                assert!(set.contains(r));
            }
            // every non-simple member is a sum of two members
            for &r in set.iter() {
                if [ALPHA1, ALPHA2, ALPHA3].contains(&r) {
                    continue;
                }
                assert!(
                    set.iter().any(|&a| set.contains(&(r - a)) && a < r && (r - a) < r),
                    "{r} is not a sum of two members"
                );
            }
        }
        // the parallel run agrees with the sequential one
        let par = enumerate(&SearchConfig { max_roots: 8, parallel_depth: 3, ..SearchConfig::default() });
        assert_eq!(emitted, par);
    }
}
