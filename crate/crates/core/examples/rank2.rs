// scratch: true rank-2 Cartan entries of the runaway branch's planes,
// via 2D reflection closure of the plane F-sequences
use std::collections::BTreeSet;

type V2 = (i64, i64);

fn closure_min_entry(pos: &[V2]) -> Option<i64> {
    // object = sorted positive set; simple roots e1=(1,0), e2=(0,1)
    let start: BTreeSet<V2> = pos.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut queue = vec![start];
    let mut min_entry = 0i64;
    while let Some(obj) = queue.pop() {
        if !seen.insert(obj.clone()) { continue; }
        if seen.len() > 10000 { return None; }
        // strings through the simple roots
        let maxk = |from: V2, dir: V2| {
            let mut k = 0;
            while obj.contains(&(from.0 + (k + 1) * dir.0, from.1 + (k + 1) * dir.1)) { k += 1; }
            k
        };
        if !obj.contains(&(1, 0)) || !obj.contains(&(0, 1)) { return None; }
        let c12 = -maxk((0, 1), (1, 0)); // string of e2 through e1
        let c21 = -maxk((1, 0), (0, 1));
        min_entry = min_entry.min(c12).min(c21);
        for (ci, i) in [(c12, 0usize), (c21, 1usize)] {
            // sigma_i: e_j -> e_j - c_ij e_i, e_i -> -e_i
            let refl = |v: V2| -> V2 {
                match i {
                    0 => (-v.0 - ci * v.1, v.1),
                    _ => (v.0, -v.1 - ci * v.0),
                }
            };
            let mut img = BTreeSet::new();
            let mut ok = true;
            for &v in &obj {
                let w = refl(v);
                let w = if w.0 <= 0 && w.1 <= 0 { (-w.0, -w.1) } else { w };
                if w.0 < 0 || w.1 < 0 { ok = false; break; }
                img.insert(w);
            }
            if ok && !seen.contains(&img) { queue.push(img); }
        }
    }
    Some(min_entry)
}

fn main() {
    // the 11-member plane of the runaway branch, reconstructed from the dump:
    // compute via the fragment machinery instead
    use weyl3::fragment::Fragment;
    use weyl3::lattice::Root;
    use weyl3::search::{AppendVerdict, RequiredOutcome, SearchConfig, append_root, required_root, seed};
    // rebuild the runaway branch by replaying the same DFS until 46 roots
    fn run(roots: Vec<Root>, b: Fragment, hat: Root, required: Option<Root>, cfg: &SearchConfig) -> Option<Fragment> {
        if roots.len() >= 40 { return Some(b); }
        if required.is_none() && cfg.use_required_root {
            match required_root(&b, hat) {
                RequiredOutcome::Impossible => return None,
                RequiredOutcome::Found(eps) => return run(roots, b, hat, Some(eps), cfg),
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
                        let mut r = roots.clone();
                        r.push(zeta);
                        if let Some(f) = run(r, next, zeta, required, cfg) { return Some(f); }
                    }
                }
            }
        }
        if let Some(beta) = required {
            if let AppendVerdict::Accepted(next) = append_root(beta, &current, hat, cfg) {
                let mut r = roots.clone();
                r.push(beta);
                return run(r, next, beta, None, cfg);
            }
        }
        None
    }
    let cfg = SearchConfig { parallel_depth: 0, ..SearchConfig::default() };
    let (frag, hat) = seed();
    let deep = run(frag.roots().to_vec(), frag, hat, None, &cfg).expect("deep branch");
    println!("branch with {} roots", deep.roots().len());
    let mut worst = 0i64;
    for p in deep.planes() {
        if p.len() < 4 { continue; }
        let coords: Vec<V2> = p.coords().as_slice().iter().map(|z| (z.a1, z.a2)).collect();
        // plane coords (a1,a2) mean a2*p + a1*q; as 2D vectors use (a2, a1) w.r.t. basis (p,q)
        let pos: Vec<V2> = coords.iter().map(|&(a1, a2)| (a2, a1)).collect();
        let min = closure_min_entry(&pos);
        if p.len() >= 8 {
            println!("plane size {}: min rank-2 entry {:?}, fseq {:?}", p.len(), min, coords);
        }
        if let Some(m) = min { worst = worst.min(m); }
    }
    println!("worst rank-2 entry over planes of the branch: {worst}");
}
