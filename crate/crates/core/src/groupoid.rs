//! Verification and invariants: Cartan matrices, simple reflections, orbit
//! closure, canonical forms, Hom groups, the simply connected cover with
//! its Euler characteristic, plane census and DOT export.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::lattice::{PlaneNormal, Root, S3, SIMPLE, plane_normal};
use crate::{Error, Result};

pub type Mat3 = [[i64; 3]; 3];

pub const MAT_IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0i64; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|t| a[r][t] * b[t][c]).sum();
        }
    }
    out
}

pub fn mat_apply(m: &Mat3, v: Root) -> Root {
    let c = v.coords();
    Root::from_coords([0, 1, 2].map(|r| (0..3).map(|t| m[r][t] * c[t]).sum()))
}

pub fn mat_det(m: &Mat3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse of a matrix with determinant +-1.
pub fn mat_inv(m: &Mat3) -> Mat3 {
    let det = mat_det(m);
    debug_assert!(det == 1 || det == -1);
    let cof = |r: usize, c: usize| {
        let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
        let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
        m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
    };
    let mut out = [[0i64; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = cof(c, r) * det; // adjugate transposed, divided by det
        }
    }
    out
}

/// A generalized Cartan matrix read off a positive system by root strings.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix(pub [[i64; 3]; 3]);

impl CartanMatrix {
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn min_entry(&self) -> i64 {
        self.0.iter().flatten().copied().min().unwrap()
    }

    /// The simple reflection s_i as a matrix on root coefficients:
    /// a_j maps to a_j - c_ij a_i.
    pub fn reflection(&self, i: usize) -> Mat3 {
        let mut m = MAT_IDENTITY;
        for c in 0..3 {
            m[i][c] = if c == i { -1 } else { -self.0[i][c] };
        }
        m
    }
}

/// Compute the Cartan matrix of a lex-sorted positive system:
/// c_ij = -max{k >= 0 : a_j + k a_i in R} for i != j. Errors when a simple
/// root is missing, a string has a gap, axiom (M2) fails, or an entry drops
/// below the rank-three bound of -7.
pub fn cartan_matrix(roots: &[Root]) -> Result<CartanMatrix> {
    for (idx, s) in SIMPLE.iter().enumerate() {
        if roots.binary_search(s).is_err() {
            return Err(Error::MissingSimple(idx + 1));
        }
    }
    let limit = roots.iter().flat_map(|r| r.coords()).max().unwrap_or(0);
    let mut c = [[0i64; 3]; 3];
    let mut hits = [[0i64; 3]; 3];
    for i in 0..3 {
        c[i][i] = 2;
        for j in 0..3 {
            if i == j {
                continue;
            }
            let on_string: Vec<i64> = (0..=limit)
                .filter(|&k| roots.binary_search(&(SIMPLE[j] + k * SIMPLE[i])).is_ok())
                .collect();
            c[i][j] = -on_string.last().unwrap(); // k = 0 always hits
            hits[i][j] = on_string.len() as i64;
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if (c[i][j] == 0) != (c[j][i] == 0) {
                let (i, j) = if c[i][j] == 0 { (i, j) } else { (j, i) };
                return Err(Error::CartanM2 { i: i + 1, j: j + 1, val: c[j][i] });
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j && hits[i][j] != -c[i][j] + 1 {
                return Err(Error::RootStringGap { i: i + 1, j: j + 1 });
            }
        }
    }
    if let Some((i, j)) = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).find(|&(i, j)| c[i][j] < -7) {
        return Err(Error::CartanBound { i: i + 1, j: j + 1, val: c[i][j] });
    }
    Ok(CartanMatrix(c))
}

/// Apply the simple reflection s_i to a whole positive system. `None` when
/// some image has mixed signs, in which case the input is not a root
/// system; otherwise the image with negatives flipped, lex-sorted.
pub fn reflect(roots: &[Root], i: usize) -> Result<Option<Vec<Root>>> {
    let cm = cartan_matrix(roots)?;
    Ok(reflect_with(roots, &cm, i))
}

pub(crate) fn reflect_with(roots: &[Root], cm: &CartanMatrix, i: usize) -> Option<Vec<Root>> {
    let m = cm.reflection(i);
    let mut out = Vec::with_capacity(roots.len());
    for &r in roots {
        let y = mat_apply(&m, r);
        if y.is_mixed() {
            return None;
        }
        out.push(if y.is_positive() { y } else { -y });
    }
    out.sort();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "reflection must stay injective");
    Some(out)
}

/// Why a candidate system failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invalid {
    Input(Error),
    Cartan { object: usize, source: Error },
    MixedSign { object: usize, label: usize },
    TooLarge(usize),
    Inconsistent(Error),
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalid::Input(e) => write!(f, "bad input: {e}"),
            Invalid::Cartan { object, source } => {
                write!(f, "object {object}: {source}")
            }
            Invalid::MixedSign { object, label } => {
                write!(f, "object {object}: reflection {label} produces a mixed-sign vector")
            }
            Invalid::TooLarge(n) => write!(f, "orbit exceeds {n} objects"),
            Invalid::Inconsistent(e) => write!(f, "inconsistency: {e}"),
        }
    }
}

const ORBIT_CAP: usize = 100_000;

/// The closure of a positive system under its simple reflections: all
/// distinct positive systems of the scheme (the objects of the quotient),
/// with the labelled neighbour of each object under each reflection.
pub struct Orbit {
    objects: Vec<Vec<Root>>,
    cartans: Vec<CartanMatrix>,
    edges: Vec<[usize; 3]>,
}

impl Orbit {
    pub fn objects(&self) -> &[Vec<Root>] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn cartan(&self, object: usize) -> &CartanMatrix {
        &self.cartans[object]
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }
}

pub fn orbit(roots: &[Root]) -> Result<Orbit, Invalid> {
    let mut first = roots.to_vec();
    first.sort();
    first.dedup();
    for &r in &first {
        if !r.is_positive() {
            return Err(Invalid::Input(Error::BadRootList(format!("{r} is not positive"))));
        }
    }
    for (i, &a) in first.iter().enumerate() {
        for &b in &first[i + 1..] {
            if a.cross(b).is_zero() {
                return Err(Invalid::Input(Error::BadRootList(format!("{a} and {b} collinear"))));
            }
        }
    }
    let mut index: HashMap<Vec<Root>, usize> = HashMap::new();
    index.insert(first.clone(), 0);
    let mut objects = vec![first];
    let mut cartans: Vec<CartanMatrix> = Vec::new();
    let mut edges: Vec<[usize; 3]> = Vec::new();
    let mut next = 0;
    while next < objects.len() {
        let obj = objects[next].clone();
        let cm = cartan_matrix(&obj).map_err(|source| Invalid::Cartan { object: next, source })?;
        cartans.push(cm);
        let mut out = [0usize; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let img = reflect_with(&obj, &cm, i)
                .ok_or(Invalid::MixedSign { object: next, label: i + 1 })?;
            *slot = *index.entry(img.clone()).or_insert_with(|| {
                objects.push(img);
                objects.len() - 1
            });
        }
        edges.push(out);
        if objects.len() > ORBIT_CAP {
            return Err(Invalid::TooLarge(ORBIT_CAP));
        }
        next += 1;
    }
    Ok(Orbit { objects, cartans, edges })
}

/// Root orderings used for canonical sequences.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrderKey {
    /// Height first, then descending (n3, n2, n1): the ordering of the
    /// published listings.
    HeightLex,
    /// Plain lexicographic order, kept as a fallback switch.
    Lex,
}

impl OrderKey {
    pub fn key(self, r: Root) -> [i64; 4] {
        match self {
            OrderKey::HeightLex => [r.height(), -r.n3, -r.n2, -r.n1],
            OrderKey::Lex => [r.n1, r.n2, r.n3, 0],
        }
    }

    pub fn sort(self, seq: &mut [Root]) {
        seq.sort_by_key(|&r| self.key(r));
    }

    pub fn seq_cmp(self, a: &[Root], b: &[Root]) -> std::cmp::Ordering {
        let ka = a.iter().map(|&r| self.key(r));
        let kb = b.iter().map(|&r| self.key(r));
        ka.cmp(kb)
    }
}

/// The canonical representative: the minimum, over all objects of the orbit
/// and all six coordinate permutations, of the lex-sorted root sequence
/// under the sequence-lexicographic order. The winning set is returned
/// sorted by `key`, the ordering of the published listings.
pub fn canonical_form(orbit: &Orbit, key: OrderKey) -> Vec<Root> {
    let mut best: Option<Vec<Root>> = None;
    for obj in &orbit.objects {
        for perm in S3 {
            let mut seq: Vec<Root> = obj.iter().map(|r| r.permuted(perm)).collect();
            seq.sort();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    let mut out = best.expect("orbit is nonempty");
    key.sort(&mut out);
    out
}

fn plane_partition(roots: &[Root]) -> HashMap<PlaneNormal, usize> {
    let mut members: HashMap<PlaneNormal, Vec<usize>> = HashMap::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let key = plane_normal(roots[i], roots[j]).expect("roots pairwise independent").primitive();
            let entry = members.entry(key).or_default();
            for id in [i, j] {
                if !entry.contains(&id) {
                    entry.push(id);
                }
            }
        }
    }
    members.into_iter().map(|(k, v)| (k, v.len())).collect()
}

/// Histogram {plane size -> multiplicity} over the maximal coplanar subsets
/// with at least two members, plus the number of planes.
pub fn plane_census(roots: &[Root]) -> (BTreeMap<usize, usize>, usize) {
    let part = plane_partition(roots);
    let mut hist = BTreeMap::new();
    for size in part.values() {
        *hist.entry(*size).or_insert(0) += 1;
    }
    (hist, part.len())
}

/// Hom(a, a) of the quotient at object 0, generated by the closed-walk
/// matrices of the object change diagram.
pub struct HomGroup {
    pub order: usize,
    pub name: String,
    pub elements: Vec<Mat3>,
}

fn element_order(m: &Mat3) -> usize {
    let mut p = *m;
    for k in 1..=96 {
        if p == MAT_IDENTITY {
            return k - 1 + 1; // k applications reached identity
        }
        p = mat_mul(&p, m);
    }
    usize::MAX
}

fn identify_group(elements: &[Mat3]) -> Result<String> {
    let order = elements.len();
    let orders: Vec<usize> = elements.iter().map(element_order).collect();
    let has = |k: usize| orders.contains(&k);
    let abelian = elements.iter().enumerate().all(|(i, a)| {
        elements[i + 1..].iter().all(|b| mat_mul(a, b) == mat_mul(b, a))
    });
    let name = match order {
        1 => "1",
        2 => "A1",
        4 if abelian && !has(4) => "A1×A1",
        6 if !abelian => "A2",
        8 if abelian => "A1×A1×A1",
        8 if has(4) => "B2",
        12 => "A1×A2",
        16 => "B2×A1",
        24 if has(6) => "G2×A1",
        24 => "A3",
        48 => "B3",
        n => return Err(Error::InconsistentCover(format!("Hom group of order {n} matches no known name"))),
    };
    Ok(name.to_string())
}

pub fn hom_group(orbit: &Orbit) -> Result<HomGroup> {
    let n = orbit.len();
    // spanning tree of path matrices from object 0
    let mut path: Vec<Option<Mat3>> = vec![None; n];
    path[0] = Some(MAT_IDENTITY);
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        for i in 0..3 {
            let c = orbit.edges[b][i];
            if path[c].is_none() {
                path[c] = Some(mat_mul(&orbit.cartans[b].reflection(i), &path[b].unwrap()));
                queue.push_back(c);
            }
        }
    }
    // every edge contributes a closed walk; tree edges give the identity
    let mut gens: Vec<Mat3> = Vec::new();
    for b in 0..n {
        for i in 0..3 {
            let c = orbit.edges[b][i];
            let loop_matrix = mat_mul(
                &mat_inv(&path[c].unwrap()),
                &mat_mul(&orbit.cartans[b].reflection(i), &path[b].unwrap()),
            );
            if loop_matrix != MAT_IDENTITY && !gens.contains(&loop_matrix) {
                gens.push(loop_matrix);
            }
        }
    }
    let mut elements: Vec<Mat3> = vec![MAT_IDENTITY];
    let mut frontier = vec![MAT_IDENTITY];
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let p = mat_mul(&m, g);
            if !elements.contains(&p) {
                if elements.len() >= 48 {
                    return Err(Error::HomTooLarge);
                }
                elements.push(p);
                frontier.push(p);
            }
        }
    }
    elements.sort();
    let name = identify_group(&elements)?;
    Ok(HomGroup { order: elements.len(), name, elements })
}

/// The simply connected cover: one state per morphism out of object 0,
/// keyed by its matrix, with labelled edges.
pub struct Cover {
    matrices: Vec<Mat3>,
    objects: Vec<usize>,
    edges: Vec<[usize; 3]>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.matrices.len()
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn object(&self, state: usize) -> usize {
        self.objects[state]
    }
}

pub fn cover(orbit: &Orbit) -> Cover {
    let mut index: HashMap<Mat3, usize> = HashMap::new();
    index.insert(MAT_IDENTITY, 0);
    let mut matrices = vec![MAT_IDENTITY];
    let mut objects = vec![0usize];
    let mut edges: Vec<[usize; 3]> = Vec::new();
    let mut next = 0;
    while next < matrices.len() {
        let (w, b) = (matrices[next], objects[next]);
        let mut out = [0usize; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let m = mat_mul(&orbit.cartans[b].reflection(i), &w);
            let target_obj = orbit.edges[b][i];
            *slot = *index.entry(m).or_insert_with(|| {
                matrices.push(m);
                objects.push(target_obj);
                matrices.len() - 1
            });
        }
        edges.push(out);
        next += 1;
    }
    Cover { matrices, objects, edges }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub e: usize,
    pub k: usize,
    pub f: usize,
    pub ok: bool,
    pub detail: Option<String>,
}

/// Euler characteristic of the cover's object change diagram: e - k + f = 2
/// and k = 3f - 6, with f counted from the alternating (i, j)-cycles. Each
/// pair of opposite faces is matched to a plane of the base object and the
/// face sizes are cross-checked against the plane sizes.
pub fn euler_check(orbit: &Orbit, cov: &Cover, census: &BTreeMap<usize, usize>) -> Result<EulerReport> {
    let e = cov.size();
    if 3 * e % 2 != 0 {
        return Err(Error::InconsistentCover("odd total edge count".into()));
    }
    let k = 3 * e / 2;
    let plane_sizes = plane_partition(&orbit.objects[0]);
    let mut fail: Option<String> = None;
    let mut faces_per_plane: HashMap<PlaneNormal, Vec<usize>> = HashMap::new();
    let mut f = 0usize;
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mut seen = vec![false; e];
        for start in 0..e {
            if seen[start] {
                continue;
            }
            // orbit of `start` under the alternating i- and j-edges
            let mut cycle = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for t in [cov.edges[s][i], cov.edges[s][j]] {
                    if !seen[t] {
                        seen[t] = true;
                        cycle.push(t);
                        stack.push(t);
                    }
                }
            }
            f += 1;
            if cycle.len() % 2 != 0 {
                return Err(Error::InconsistentCover(format!(
                    "odd face of size {} for labels ({}, {})",
                    cycle.len(),
                    i + 1,
                    j + 1
                )));
            }
            // the plane of this face at the base object
            let winv = mat_inv(&cov.matrices[start]);
            let v1 = Root::new(winv[0][i], winv[1][i], winv[2][i]);
            let v2 = Root::new(winv[0][j], winv[1][j], winv[2][j]);
            let key = plane_normal(v1, v2)
                .map_err(|e| Error::InconsistentCover(e.to_string()))?
                .primitive();
            faces_per_plane.entry(key).or_default().push(cycle.len() / 2);
        }
    }
    if e as i64 - k as i64 + f as i64 != 2 {
        fail.get_or_insert(format!("e - k + f = {}", e as i64 - k as i64 + f as i64));
    }
    if k != 3 * f - 6 {
        fail.get_or_insert(format!("k = {k} but 3f - 6 = {}", 3 * f - 6));
    }
    if faces_per_plane.len() != plane_sizes.len() {
        fail.get_or_insert("face planes differ from root planes".to_string());
    }
    for (key, sizes) in &faces_per_plane {
        let expect = plane_sizes.get(key).copied();
        if sizes.len() != 2 || expect.is_none() || sizes.iter().any(|&s| Some(s) != expect) {
            fail.get_or_insert(format!("face sizes {sizes:?} for a plane of {expect:?} roots"));
        }
    }
    let census_total: usize = census.values().sum();
    if f != 2 * census_total {
        fail.get_or_insert(format!("f = {f} but census lists {census_total} planes"));
    }
    Ok(EulerReport { e, k, f, ok: fail.is_none(), detail: fail })
}

/// The full groupoid record of one positive system.
pub struct OrbitRecord {
    pub orbit: Orbit,
    pub e: usize,
    pub k: usize,
    pub f: usize,
    pub hom_order: usize,
    pub hom_name: String,
    pub hom_elements: Vec<Mat3>,
    pub cover_size: usize,
}

impl OrbitRecord {
    pub fn compute(roots: &[Root]) -> Result<OrbitRecord, Invalid> {
        let orb = orbit(roots)?;
        let hom = hom_group(&orb).map_err(Invalid::Inconsistent)?;
        let cov = cover(&orb);
        if cov.size() != orb.len() * hom.order {
            return Err(Invalid::Inconsistent(Error::InconsistentCover(format!(
                "cover has {} states, expected {} x {}",
                cov.size(),
                orb.len(),
                hom.order
            ))));
        }
        // the cover states sitting over object 0 are exactly Hom(a, a)
        let mut at_base: Vec<Mat3> = (0..cov.size())
            .filter(|&s| cov.objects[s] == 0)
            .map(|s| cov.matrices[s])
            .collect();
        at_base.sort();
        if at_base != hom.elements {
            return Err(Invalid::Inconsistent(Error::InconsistentCover(
                "cover states over the base disagree with the Hom group".into(),
            )));
        }
        let (census, _) = plane_census(&orb.objects()[0]);
        let report = euler_check(&orb, &cov, &census).map_err(Invalid::Inconsistent)?;
        if !report.ok {
            return Err(Invalid::Inconsistent(Error::InconsistentCover(
                report.detail.unwrap_or_default(),
            )));
        }
        Ok(OrbitRecord {
            orbit: orb,
            e: report.e,
            k: report.k,
            f: report.f,
            hom_order: hom.order,
            hom_name: hom.name,
            hom_elements: hom.elements,
            cover_size: cov.size(),
        })
    }
}

fn dot_graph(edges: &[[usize; 3]], name: &str) -> String {
    let mut out = format!("graph {name} {{\n  node [shape=circle];\n");
    for (b, nb) in edges.iter().enumerate() {
        for (i, &c) in nb.iter().enumerate() {
            if b < c {
                out.push_str(&format!("  {b} -- {c} [label=\"{}\"];\n", i + 1));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Object change diagram of the quotient as DOT text; self-loops (r_i(a) = a)
/// carry no edge.
pub fn quotient_dot(orbit: &Orbit) -> String {
    dot_graph(&orbit.edges, "quotient")
}

/// Object change diagram of the simply connected cover as DOT text.
pub fn cover_dot(cov: &Cover) -> String {
    dot_graph(&cov.edges, "cover")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::golden_system;
    use crate::lattice::{ALPHA1, ALPHA2, ALPHA3};
    use crate::search::seed;

    fn nr(n: usize) -> Vec<Root> {
        let mut r = golden_system(n).unwrap().roots();
        r.sort();
        r
    }

    #[test]
    fn cartan_of_nr1() {
        let cm = cartan_matrix(&nr(1)).unwrap();
        assert_eq!(cm.0, [[2, 0, -1], [0, 2, -1], [-1, -1, 2]]);
    }

    #[test]
    fn cartan_of_simples_is_diagonal() {
        let mut roots = vec![ALPHA1, ALPHA2, ALPHA3];
        roots.sort();
        let cm = cartan_matrix(&roots).unwrap();
        assert_eq!(cm.0, [[2, 0, 0], [0, 2, 0], [0, 0, 2]]);
    }

    #[test]
    fn cartan_rejects_m2_violation() {
        // c_21 = -2 via the root a1 + 2 a2, but c_12 = 0
        let mut roots = vec![ALPHA1, ALPHA2, ALPHA3, ALPHA1 + 2 * ALPHA2];
        roots.sort();
        assert_eq!(cartan_matrix(&roots).unwrap_err(), Error::CartanM2 { i: 1, j: 2, val: -2 });
    }

    #[test]
    fn cartan_rejects_string_gap() {
        // a1 + k a2 present for k = 0, 1, 3 but not k = 2
        let mut roots =
            vec![ALPHA1, ALPHA2, ALPHA3, ALPHA1 + ALPHA2, ALPHA1 + 3 * ALPHA2];
        roots.sort();
        assert_eq!(cartan_matrix(&roots).unwrap_err(), Error::RootStringGap { i: 2, j: 1 });
    }

    #[test]
    fn reflect_fixes_nr1() {
        let roots = nr(1);
        for i in 0..3 {
            let img = reflect(&roots, i).unwrap().unwrap();
            assert_eq!(img, roots);
        }
    }

    #[test]
    fn reflect_detects_mixed_sign() {
        // c_12 = -1 and the extra root 2a1 + a2 + a3 maps under s_1 to a
        // vector with a -1 alongside positive entries
        let mut roots = vec![ALPHA1, ALPHA2, ALPHA3, ALPHA1 + ALPHA2, 2 * ALPHA1 + ALPHA2 + ALPHA3];
        roots.sort();
        assert!(cartan_matrix(&roots).is_ok());
        assert_eq!(reflect(&roots, 0).unwrap(), None);
        assert!(matches!(orbit(&roots), Err(Invalid::MixedSign { .. })));
    }

    #[test]
    fn reflect_is_involution_on_seed() {
        let (frag, _) = seed();
        let roots = frag.roots().to_vec();
        for i in 0..3 {
            let img = reflect(&roots, i).unwrap().unwrap();
            let back = reflect(&img, i).unwrap().unwrap();
            assert_eq!(back, roots);
        }
    }

    #[test]
    fn orbit_sizes_match_table() {
        for (n, objects) in [(1, 1), (15, 56), (45, 420)] {
            assert_eq!(orbit(&nr(n)).unwrap().len(), objects, "nr {n}");
        }
    }

    #[test]
    fn hom_groups_match_table() {
        for (n, order, name) in [(1, 24, "A3"), (45, 1, "1"), (55, 48, "B3")] {
            let orb = orbit(&nr(n)).unwrap();
            let hom = hom_group(&orb).unwrap();
            assert_eq!((hom.order, hom.name.as_str()), (order, name), "nr {n}");
            let cov = cover(&orb);
            assert_eq!(cov.size(), orb.len() * hom.order);
        }
        assert_eq!(cover(&orbit(&nr(55)).unwrap()).size(), 720);
    }

    #[test]
    fn census_examples() {
        let (hist, m) = plane_census(&nr(1));
        assert_eq!(hist, BTreeMap::from([(2, 3), (3, 4)]));
        assert_eq!(m, 7);
        let (hist, _) = plane_census(&nr(55));
        assert_eq!(hist, BTreeMap::from([(2, 72), (3, 72), (4, 24), (6, 10), (8, 3)]));
        let (hist, m) = plane_census(&[ALPHA1, ALPHA2, ALPHA3]);
        assert_eq!(hist, BTreeMap::from([(2, 3)]));
        assert_eq!(m, 3);
    }

    #[test]
    fn euler_examples() {
        for (n, e, k, f) in [(1, 24, 36, 14), (15, 112, 168, 58), (45, 420, 630, 212)] {
            let orb = orbit(&nr(n)).unwrap();
            let cov = cover(&orb);
            let (census, _) = plane_census(&orb.objects()[0]);
            let report = euler_check(&orb, &cov, &census).unwrap();
            assert!(report.ok, "nr {n}: {:?}", report.detail);
            assert_eq!((report.e, report.k, report.f), (e, k, f), "nr {n}");
        }
    }

    #[test]
    fn canonical_form_of_seed_is_nr1() {
        let (frag, _) = seed();
        let orb = orbit(frag.roots()).unwrap();
        let canon = canonical_form(&orb, OrderKey::HeightLex);
        assert_eq!(canon, golden_system(1).unwrap().roots());
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        for n in [3, 14] {
            let base = nr(n);
            let orb = orbit(&base).unwrap();
            let canon = canonical_form(&orb, OrderKey::HeightLex);
            assert_eq!(canon, golden_system(n).unwrap().roots(), "nr {n} listing");
            for perm in S3 {
                let mut permuted: Vec<Root> = base.iter().map(|r| r.permuted(perm)).collect();
                permuted.sort();
                let orb2 = orbit(&permuted).unwrap();
                assert_eq!(canonical_form(&orb2, OrderKey::HeightLex), canon);
            }
        }
    }

    #[test]
    fn minus_six_is_attained() {
        // the sharp bound: a 7-root string through a simple pair sits in
        // the canonical object of system 52 (the twin of 53)
        let roots = nr(52);
        let cm = cartan_matrix(&roots).unwrap();
        assert_eq!(cm.min_entry(), -6);
        let orb = orbit(&roots).unwrap();
        let min = (0..orb.len()).map(|o| orb.cartan(o).min_entry()).min().unwrap();
        assert_eq!(min, -6);
        // its neighbour in the listing stays at -4
        let orb = orbit(&nr(53)).unwrap();
        let min = (0..orb.len()).map(|o| orb.cartan(o).min_entry()).min().unwrap();
        assert_eq!(min, -4);
    }

    #[test]
    fn dot_output_shape() {
        let orb = orbit(&nr(2)).unwrap();
        let dot = quotient_dot(&orb);
        assert!(dot.starts_with("graph quotient {"));
        // 4 objects; count undirected non-loop edges
        let lines = dot.lines().filter(|l| l.contains("--")).count();
        assert!(lines > 0);
        let cov = cover(&orb);
        let cdot = cover_dot(&cov);
        assert_eq!(cdot.lines().filter(|l| l.contains("--")).count(), 3 * cov.size() / 2);
    }
}
