//! Weyl groups acting on root coefficient vectors: full enumeration keyed by
//! the image of a regular vector, conjugacy classes, reflection subsystems
//! fixed by a torus point, subsystem normalizers, class fusion, and the
//! Smith-normal-form computation of the subsystem-kernel torus.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::smith_normal_form;
use crate::par;
use crate::poly::{char_poly, IPoly};
use crate::rootdata::{CartanType, RootSystem, TorusPoint};

/// Padded rank bound; all supported types have rank <= 7.
const MAXR: usize = 8;

type Key = [i16; MAXR];

/// Default element budget for full enumeration.
pub const DEFAULT_BUDGET: usize = 3_000_000;

/// A complete enumeration of W. Elements are 7x7 (rank x rank) integer
/// matrices in the simple-root coordinate basis, keyed by the image of the
/// regular vector 2rho (sum of the positive roots), with parent links giving
/// reduced words.
pub struct WeylStore {
    pub rs: RootSystem,
    rank: usize,
    mats: Vec<i8>,
    keys: Vec<Key>,
    parent: Vec<(u32, u8)>,
    pub inverse: Vec<u32>,
    index: HashMap<Key, u32>,
    rho2: [i16; MAXR],
    gen_mats: Vec<Vec<i8>>,
    /// padded coefficient vector -> positive root index (1-based)
    root_index: HashMap<[i8; MAXR], u16>,
}

fn pad_coeffs(coeffs: &[i64]) -> [i8; MAXR] {
    let mut c = [0i8; MAXR];
    for (i, &x) in coeffs.iter().enumerate() {
        c[i] = i8::try_from(x).expect("root coefficient fits i8");
    }
    c
}

/// `v' = M v` for a rank x rank matrix over the padded vector.
fn apply_key(mat: &[i8], rank: usize, v: &Key) -> Key {
    let mut out = [0i16; MAXR];
    for i in 0..rank {
        let mut s = 0i32;
        for j in 0..rank {
            s += i32::from(mat[i * rank + j]) * i32::from(v[j]);
        }
        out[i] = i16::try_from(s).expect("key entry fits i16");
    }
    out
}

fn apply_root(mat: &[i8], rank: usize, v: &[i8; MAXR]) -> [i8; MAXR] {
    let mut out = [0i8; MAXR];
    for i in 0..rank {
        let mut s = 0i32;
        for j in 0..rank {
            s += i32::from(mat[i * rank + j]) * i32::from(v[j]);
        }
        out[i] = i8::try_from(s).expect("root image fits i8");
    }
    out
}

fn mat_mul(a: &[i8], b: &[i8], rank: usize) -> Vec<i8> {
    let mut out = vec![0i8; rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            let mut s = 0i32;
            for k in 0..rank {
                s += i32::from(a[i * rank + k]) * i32::from(b[k * rank + j]);
            }
            out[i * rank + j] = i8::try_from(s).expect("matrix entry fits i8");
        }
    }
    out
}

/// Matrix of the reflection at an arbitrary root, in root coordinates:
/// s_beta(c) = c - (c^T A b) b for the (symmetric, simply-laced) Cartan A.
pub fn reflection_matrix(rs: &RootSystem, root_index: usize) -> Vec<i8> {
    let rank = rs.rank();
    let b = &rs.root(root_index).coeffs;
    let a = &rs.ctype.matrix;
    let ab: Vec<i64> = (0..rank)
        .map(|j| (0..rank).map(|i| a[i][j] * b[i]).sum())
        .collect();
    let mut m = vec![0i8; rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            let v = i64::from(i == j) - b[i] * ab[j];
            m[i * rank + j] = i8::try_from(v).expect("reflection entry fits i8");
        }
    }
    m
}

impl WeylStore {
    pub fn len(&self) -> usize {
        self.mats.len() / (self.rank * self.rank)
    }

    pub fn is_empty(&self) -> bool {
        false // always contains the identity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mat(&self, id: u32) -> &[i8] {
        let rr = self.rank * self.rank;
        &self.mats[id as usize * rr..(id as usize + 1) * rr]
    }

    pub fn key(&self, id: u32) -> &Key {
        &self.keys[id as usize]
    }

    pub fn id_of_key(&self, key: &Key) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn id_of_mat(&self, mat: &[i8]) -> Option<u32> {
        self.id_of_key(&apply_key(mat, self.rank, &self.rho2))
    }

    /// Reduced word (0-based simple reflection indices).
    pub fn word(&self, id: u32) -> Vec<u8> {
        let mut w = Vec::new();
        let mut cur = id;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    /// id of g*h given ids; uses key(g*h) = M_g key(h).
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        let k = apply_key(self.mat(g), self.rank, self.key(h));
        *self.index.get(&k).expect("group closed under products")
    }

    pub fn order_of(&self, id: u32) -> u32 {
        let mut cur = id;
        let mut n = 1;
        while cur != 0 {
            cur = self.mul(id, cur);
            n += 1;
        }
        n
    }

    pub fn pow(&self, id: u32, k: u32) -> u32 {
        let mut cur = 0u32;
        for _ in 0..k {
            cur = self.mul(id, cur);
        }
        cur
    }

    /// Signed 1-based index of w(alpha_{root_index}).
    pub fn root_image(&self, id: u32, root_index: usize) -> i64 {
        let c = pad_coeffs(&self.rs.root(root_index).coeffs);
        let img = apply_root(self.mat(id), self.rank, &c);
        self.signed_root_index(&img)
    }

    fn signed_root_index(&self, c: &[i8; MAXR]) -> i64 {
        if let Some(&i) = self.root_index.get(c) {
            return i64::from(i);
        }
        let neg = c.map(|x| -x);
        match self.root_index.get(&neg) {
            Some(&i) => -i64::from(i),
            None => panic!("image is not a root"),
        }
    }

    /// Full element view: reduced word and the signed permutation of the
    /// positive roots.
    pub fn element(&self, id: u32) -> WeylElement {
        let n = self.rs.num_positive();
        let mat = self.mat(id);
        let perm = (1..=n)
            .map(|r| {
                let c = pad_coeffs(&self.rs.root(r).coeffs);
                self.signed_root_index(&apply_root(mat, self.rank, &c))
            })
            .collect();
        WeylElement {
            word: self.word(id),
            perm,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeylElement {
    /// Reduced word in 0-based simple reflection indices.
    pub word: Vec<u8>,
    /// Signed 1-based image of each positive root.
    pub perm: Vec<i64>,
}

/// Enumerate W by breadth-first closure over right multiplication by simple
/// reflections; deterministic (new elements of each length sorted by key).
pub fn enumerate_group(rs: &RootSystem, budget: usize) -> Result<WeylStore> {
    let rank = rs.rank();
    assert!(rank <= 7, "rank above 7 not supported");
    let a = &rs.ctype.matrix;
    let mut gen_mats = Vec::with_capacity(rank);
    for s in 0..rank {
        let mut m = vec![0i8; rank * rank];
        for j in 0..rank {
            for i in 0..rank {
                let v = i64::from(i == j) - if i == s { a[j][s] } else { 0 };
                m[i * rank + j] = v as i8;
            }
        }
        gen_mats.push(m);
    }
    let mut rho2 = [0i16; MAXR];
    for rt in &rs.positive_roots {
        for (i, &c) in rt.coeffs.iter().enumerate() {
            rho2[i] += 2 * c as i16;
        }
    }
    // 2rho is regular, so keys are faithful.
    let gen_keys: Vec<Key> = gen_mats
        .iter()
        .map(|m| apply_key(m, rank, &rho2))
        .collect();

    let root_index: HashMap<[i8; MAXR], u16> = rs
        .positive_roots
        .iter()
        .map(|rt| (pad_coeffs(&rt.coeffs), rt.index as u16))
        .collect();

    let mut store = WeylStore {
        rs: rs.clone(),
        rank,
        mats: {
            let mut id = vec![0i8; rank * rank];
            for i in 0..rank {
                id[i * rank + i] = 1;
            }
            id
        },
        keys: vec![rho2],
        parent: vec![(0, u8::MAX)],
        inverse: vec![0],
        index: HashMap::new(),
        rho2,
        gen_mats,
        root_index,
    };
    store.index.insert(rho2, 0);

    let mut level: Vec<u32> = vec![0];
    while !level.is_empty() {
        let mut candidates: Vec<(Key, u32, u8)> = Vec::new();
        for &x in &level {
            let mx = store.mat(x).to_vec();
            for (s, _) in store.gen_mats.iter().enumerate() {
                let k = apply_key(&mx, rank, &gen_keys[s]);
                if !store.index.contains_key(&k) {
                    candidates.push((k, x, s as u8));
                }
            }
        }
        candidates.sort_unstable();
        let mut next: Vec<u32> = Vec::new();
        for (k, x, s) in candidates {
            if store.index.contains_key(&k) {
                continue;
            }
            let id = store.keys.len() as u32;
            if id as usize >= budget {
                return Err(Error::StoreBudget(budget));
            }
            let m = mat_mul(store.mat(x), &store.gen_mats[s as usize], rank);
            store.mats.extend_from_slice(&m);
            store.keys.push(k);
            store.parent.push((x, s));
            store.inverse.push(u32::MAX);
            store.index.insert(k, id);
            next.push(id);
        }
        // inverses: (x s)^-1 = s x^-1, and key(s x^-1) = M_s key(x^-1)
        for &id in &next {
            let (x, s) = store.parent[id as usize];
            let inv_x = store.inverse[x as usize];
            debug_assert_ne!(inv_x, u32::MAX);
            let k = apply_key(
                &store.gen_mats[s as usize],
                rank,
                store.key(inv_x),
            );
            let inv = *store.index.get(&k).expect("inverse present by level parity");
            store.inverse[id as usize] = inv;
        }
        level = next;
    }
    let expect = rs.weyl_order();
    if store.len() as u64 != expect {
        return Err(Error::TableInconsistency(format!(
            "enumerated {} elements, degree formula gives {expect}",
            store.len()
        )));
    }
    Ok(store)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjClassSet {
    /// Element ids; the representative is the element with lexicographically
    /// least key in its class.
    pub representatives: Vec<u32>,
    pub sizes: Vec<u64>,
    /// Per class: characteristic polynomial of the reflection representation
    /// (ascending coefficients) and sorted cycle type on the signed roots.
    pub invariant_keys: Vec<(IPoly, Vec<usize>)>,
    /// element id -> class index
    pub class_of: Vec<u32>,
    pub identity_class: usize,
}

/// Partition the store into conjugacy classes by orbit closure under
/// conjugation by the simple reflections. Classes are sorted by (size,
/// representative key).
pub fn conjugacy_classes(store: &WeylStore) -> ConjClassSet {
    let n = store.len();
    let rank = store.rank;
    let gen_keys: Vec<Key> = store
        .gen_mats
        .iter()
        .map(|m| apply_key(m, rank, &store.rho2))
        .collect();
    let mut class_of = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    for seed in 0..n as u32 {
        if class_of[seed as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        class_of[seed as usize] = c;
        stack.push(seed);
        let mut size = 0u64;
        let mut best = seed;
        while let Some(x) = stack.pop() {
            size += 1;
            if store.key(x) < store.key(best) {
                best = x;
            }
            let mx = store.mat(x);
            for s in 0..rank {
                // key(s x s) = M_s (M_x (M_s 2rho))
                let k = apply_key(
                    &store.gen_mats[s],
                    rank,
                    &apply_key(mx, rank, &gen_keys[s]),
                );
                let y = *store.index.get(&k).expect("conjugate in group");
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = c;
                    stack.push(y);
                }
            }
        }
        reps.push(best);
        sizes.push(size);
    }
    // canonical order: size ascending, then representative key
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| (sizes[i], *store.key(reps[i])));
    let mut remap = vec![0u32; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new as u32;
    }
    let representatives: Vec<u32> = order.iter().map(|&i| reps[i]).collect();
    let sizes: Vec<u64> = order.iter().map(|&i| sizes[i]).collect();
    for c in class_of.iter_mut() {
        *c = remap[*c as usize];
    }
    let invariant_keys = representatives
        .iter()
        .map(|&r| {
            let m: Vec<Vec<i128>> = (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| i128::from(store.mat(r)[i * rank + j]))
                        .collect()
                })
                .collect();
            (char_poly(&m), cycle_type(store, r))
        })
        .collect();
    let identity_class = class_of[0] as usize;
    ConjClassSet {
        representatives,
        sizes,
        invariant_keys,
        class_of,
        identity_class,
    }
}

/// Sorted (descending) cycle lengths of the action on the signed roots.
fn cycle_type(store: &WeylStore, id: u32) -> Vec<usize> {
    let n = store.rs.num_positive();
    // points 0..n = positive roots, n..2n = negatives
    let point = |signed: i64| -> usize {
        if signed > 0 {
            signed as usize - 1
        } else {
            n + (-signed) as usize - 1
        }
    };
    let mut img = vec![0usize; 2 * n];
    for r in 1..=n {
        let s = store.root_image(id, r);
        img[r - 1] = point(s);
        img[n + r - 1] = point(-s);
    }
    let mut seen = vec![false; 2 * n];
    let mut cycles = Vec::new();
    for p in 0..2 * n {
        if seen[p] {
            continue;
        }
        let mut len = 0;
        let mut q = p;
        while !seen[q] {
            seen[q] = true;
            len += 1;
            q = img[q];
        }
        cycles.push(len);
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    cycles
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsystemDescriptor {
    /// Ambient indices of the subsystem simple roots, ordered to match the
    /// nodes of `ctype`.
    pub simple_roots: Vec<usize>,
    pub ctype: CartanType,
    /// Ambient indices of the positive subsystem roots.
    pub all_roots: Vec<usize>,
}

/// The reflection subsystem {alpha : alpha(t) = 1} with a simple system and
/// type classification.
pub fn fixed_subsystem(rs: &RootSystem, t: &TorusPoint) -> Result<SubsystemDescriptor> {
    let mut all_roots = Vec::new();
    for rt in &rs.positive_roots {
        if crate::rootdata::eval_root_at(t, rt)? == 0 {
            all_roots.push(rt.index);
        }
    }
    if all_roots.is_empty() {
        return Ok(SubsystemDescriptor {
            simple_roots: vec![],
            ctype: CartanType {
                name: "empty".into(),
                rank: 0,
                matrix: vec![],
            },
            all_roots: vec![],
        });
    }
    // simple = not a sum of two positive subsystem roots
    let coeff_set: std::collections::HashSet<&Vec<i64>> = all_roots
        .iter()
        .map(|&i| &rs.root(i).coeffs)
        .collect();
    let mut simple: Vec<usize> = Vec::new();
    'outer: for &g in &all_roots {
        let gc = &rs.root(g).coeffs;
        for &a in &all_roots {
            let ac = &rs.root(a).coeffs;
            let diff: Vec<i64> = gc.iter().zip(ac).map(|(x, y)| x - y).collect();
            if diff.iter().all(|&x| x >= 0)
                && diff.iter().any(|&x| x > 0)
                && coeff_set.contains(&diff)
            {
                continue 'outer;
            }
        }
        simple.push(g);
    }
    // Cartan matrix of the simple system
    let k = simple.len();
    let cart: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let p = rs.pairing(&rs.root(simple[i]).coeffs, &rs.root(simple[j]).coeffs);
                    // simply laced: (alpha, beta^vee) = (alpha, beta)
                    p
                })
                .collect()
        })
        .collect();
    // connected components
    let mut comp = vec![usize::MAX; k];
    let mut ncomp = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if i != j && cart[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }
    // classify each component and order nodes Bourbaki-style
    struct Comp {
        ctype: CartanType,
        roots: Vec<usize>, // ambient indices in reference node order
    }
    let mut comps: Vec<Comp> = Vec::new();
    for c in 0..ncomp {
        let nodes: Vec<usize> = (0..k).filter(|&i| comp[i] == c).collect();
        let r = nodes.len();
        let sub: Vec<Vec<i64>> = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| cart[i][j]).collect())
            .collect();
        let mut found = None;
        let mut kinds = vec!['A'];
        if r >= 4 {
            kinds.push('D');
        }
        if (6..=8).contains(&r) {
            kinds.push('E');
        }
        'kind: for kind in kinds {
            let reference = CartanType::reference(kind, r)?;
            for p in permutations(r) {
                // node p[i] of the component plays reference node i
                if (0..r).all(|i| (0..r).all(|j| sub[p[i]][p[j]] == reference.matrix[i][j])) {
                    found = Some(Comp {
                        roots: p.iter().map(|&i| simple[nodes[i]]).collect(),
                        ctype: reference,
                    });
                    break 'kind;
                }
            }
        }
        comps.push(found.ok_or_else(|| {
            Error::NotFiniteType("subsystem component is not of type A, D or E".into())
        })?);
    }
    // deterministic order: rank descending, then type letter, then least root
    comps.sort_by_key(|c| {
        (
            usize::MAX - c.ctype.rank,
            c.ctype.name.clone(),
            c.roots.iter().min().copied(),
        )
    });
    let mut ctype = comps[0].ctype.clone();
    for c in &comps[1..] {
        ctype = ctype.direct_sum(&c.ctype)?;
    }
    let simple_roots: Vec<usize> = comps.iter().flat_map(|c| c.roots.iter().copied()).collect();
    Ok(SubsystemDescriptor {
        simple_roots,
        ctype,
        all_roots,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_rec(n, &mut p, &mut out);
    out
}

fn heap_rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_rec(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizerReport {
    pub stabilizer_order: u64,
    pub subgroup_order: u64,
    pub index_in_w: u64,
    pub equals_subgroup: bool,
}

/// Scan W for elements stabilizing the subsystem as a set of (unsigned)
/// roots; compare the stabilizer order with |W(subsystem)|.
pub fn normalizer_equals_subgroup(
    store: &WeylStore,
    sub: &SubsystemDescriptor,
) -> Result<NormalizerReport> {
    let rank = store.rank;
    let n_pos = store.rs.num_positive();
    let mut member = vec![false; n_pos + 1];
    for &r in &sub.all_roots {
        member[r] = true;
    }
    let simple_coeffs: Vec<[i8; MAXR]> = sub
        .simple_roots
        .iter()
        .map(|&r| pad_coeffs(&store.rs.root(r).coeffs))
        .collect();
    let all_coeffs: Vec<[i8; MAXR]> = sub
        .all_roots
        .iter()
        .map(|&r| pad_coeffs(&store.rs.root(r).coeffs))
        .collect();
    let stab = par::index_sum(store.len(), |id| {
        let m = store.mat(id as u32);
        // cheap rejection on the simple roots, then full verification
        for c in &simple_coeffs {
            let img = apply_root(m, rank, c);
            if !member[store.signed_root_index(&img).unsigned_abs() as usize] {
                return 0;
            }
        }
        for c in &all_coeffs {
            let img = apply_root(m, rank, c);
            if !member[store.signed_root_index(&img).unsigned_abs() as usize] {
                return 0;
            }
        }
        1
    });
    let sub_rs = crate::rootdata::build_root_system(sub.ctype.clone())?;
    let subgroup_order = sub_rs.weyl_order();
    let order = store.len() as u64;
    if order % stab != 0 {
        return Err(Error::TableInconsistency(
            "stabilizer order does not divide the group order".into(),
        ));
    }
    Ok(NormalizerReport {
        stabilizer_order: stab,
        subgroup_order,
        index_in_w: order / stab,
        equals_subgroup: stab == subgroup_order,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterStructure {
    /// Canonical elementary divisors of the subsystem coefficient matrix.
    pub divisors: Vec<i64>,
    /// Generators of the finite part, one per divisor > 1.
    pub generators: Vec<TorusPoint>,
    /// Rank of the positive-dimensional part (subsystem corank).
    pub free_rank: usize,
}

/// Structure of {x in T : alpha(x) = 1 for all subsystem roots alpha} in the
/// adjoint torus (character lattice = root lattice), via Smith normal form.
pub fn center_kernel_snf(rs: &RootSystem, sub: &SubsystemDescriptor) -> CenterStructure {
    let rows: Vec<Vec<i64>> = sub
        .all_roots
        .iter()
        .map(|&r| rs.root(r).coeffs.clone())
        .collect();
    let snf = smith_normal_form(&rows);
    let mut generators = Vec::new();
    for (i, &d) in snf.diagonal.iter().enumerate() {
        if d.abs() > 1 {
            let col: Vec<i64> = (0..rs.rank()).map(|j| snf.col_transform[j][i]).collect();
            generators.push(TorusPoint::new(d.unsigned_abs(), col));
        }
    }
    CenterStructure {
        divisors: snf.divisors.clone(),
        generators,
        free_rank: rs.rank() - snf.rank,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionMap {
    /// subgroup class index -> ambient class index
    pub map: Vec<usize>,
}

/// Fuse subgroup classes into ambient classes by embedding each subgroup
/// representative (as a word in the subsystem reflections) into the ambient
/// group and locating its class directly.
pub fn class_fusion(
    sub_store: &WeylStore,
    sub_classes: &ConjClassSet,
    sub: &SubsystemDescriptor,
    amb_store: &WeylStore,
    amb_classes: &ConjClassSet,
) -> Result<FusionMap> {
    let rank = amb_store.rank;
    let refl: Vec<Vec<i8>> = sub
        .simple_roots
        .iter()
        .map(|&r| reflection_matrix(&amb_store.rs, r))
        .collect();
    let mut map = Vec::with_capacity(sub_classes.representatives.len());
    for (ci, &rep) in sub_classes.representatives.iter().enumerate() {
        let word = sub_store.word(rep);
        let mut m = vec![0i8; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        for &s in &word {
            m = mat_mul(&m, &refl[s as usize], rank);
        }
        let amb_id = amb_store
            .id_of_mat(&m)
            .ok_or_else(|| Error::Fusion(format!("embedded class {ci} not found in ambient group")))?;
        if amb_store.order_of(amb_id) != sub_store.order_of(rep) {
            return Err(Error::Fusion(format!(
                "element order not preserved for class {ci}"
            )));
        }
        map.push(amb_classes.class_of[amb_id as usize] as usize);
    }
    Ok(FusionMap { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, WeightFunction};

    fn system(name: &str) -> RootSystem {
        build_root_system(CartanType::builtin(name).unwrap()).unwrap()
    }

    #[test]
    fn a1_two_elements() {
        let rs = system("A1");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        assert_eq!(store.len(), 2);
        let classes = conjugacy_classes(&store);
        assert_eq!(classes.sizes, vec![1, 1]);
    }

    #[test]
    fn a2_structure() {
        let rs = system("A2");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        assert_eq!(store.len(), 6);
        let classes = conjugacy_classes(&store);
        assert_eq!(classes.sizes, vec![1, 2, 3]);
        assert_eq!(classes.identity_class, 0);
        // inverses and words
        for id in 0..6u32 {
            assert_eq!(store.mul(id, store.inverse[id as usize]), 0);
            assert_eq!(store.word(id).len() as u32, {
                // reduced word length equals number of positive roots sent negative
                (1..=3)
                    .filter(|&r| store.root_image(id, r) < 0)
                    .count() as u32
            });
        }
    }

    #[test]
    fn d6_order_and_classes() {
        let rs = system("D6");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        assert_eq!(store.len(), 23040);
        let classes = conjugacy_classes(&store);
        assert_eq!(classes.representatives.len(), 37);
        assert_eq!(classes.sizes.iter().sum::<u64>(), 23040);
        for &s in &classes.sizes {
            assert_eq!(23040 % s, 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let rs = system("D6");
        match enumerate_group(&rs, 1000) {
            Err(Error::StoreBudget(1000)) => {}
            other => panic!("expected budget error, got {:?}", other.map(|s| s.len())),
        }
    }

    #[test]
    fn d6xa1_product_group() {
        let ct = CartanType::builtin("D6")
            .unwrap()
            .direct_sum(&CartanType::builtin("A1").unwrap())
            .unwrap();
        let rs = build_root_system(ct).unwrap();
        assert_eq!(rs.num_positive(), 31);
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        assert_eq!(store.len(), 46080);
        let classes = conjugacy_classes(&store);
        assert_eq!(classes.representatives.len(), 74);
    }

    #[test]
    fn fixed_subsystem_identity_gives_whole_system() {
        let rs = system("D6");
        let t = TorusPoint::identity(6);
        let sub = fixed_subsystem(&rs, &t).unwrap();
        assert_eq!(sub.all_roots.len(), 30);
        assert_eq!(sub.ctype.name, "D6");
        assert_eq!(sub.simple_roots.len(), 6);
    }

    #[test]
    fn subsystem_of_s1_in_e7() {
        let rs = system("E7");
        let sub = fixed_subsystem(&rs, &TorusPoint::s1()).unwrap();
        assert_eq!(sub.all_roots.len(), 31);
        assert_eq!(sub.ctype.name, "D6xA1");
        let mut simple = sub.simple_roots.clone();
        simple.sort_unstable();
        assert_eq!(simple, vec![2, 3, 5, 7, 14, 18, 28]);
        // the eight involved roots lie in the subsystem
        for r in crate::rootdata::INVOLVED_ROOTS {
            assert!(sub.all_roots.contains(&r));
        }
        // the A1 factor is root 28
        assert_eq!(sub.simple_roots[6], 28);
    }

    #[test]
    fn center_snf_for_d6xa1_in_e7() {
        let rs = system("E7");
        let sub = fixed_subsystem(&rs, &TorusPoint::s1()).unwrap();
        let center = center_kernel_snf(&rs, &sub);
        assert_eq!(center.free_rank, 0);
        assert_eq!(center.divisors, vec![1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(center.generators.len(), 1);
        let g = &center.generators[0];
        assert_eq!(g.modulus, 2);
        assert_eq!(g.exps, TorusPoint::s1().exps);
    }

    #[test]
    fn center_trivial_for_full_system() {
        let rs = system("E7");
        let sub = fixed_subsystem(&rs, &TorusPoint::identity(7)).unwrap();
        let center = center_kernel_snf(&rs, &sub);
        assert!(center.generators.is_empty());
        assert_eq!(center.free_rank, 0);
        assert_eq!(center.divisors, vec![1; 7]);
    }

    #[test]
    fn normalizer_of_full_system_is_whole_group() {
        let rs = system("D6");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let sub = fixed_subsystem(&rs, &TorusPoint::identity(6)).unwrap();
        let rep = normalizer_equals_subgroup(&store, &sub).unwrap();
        assert!(rep.equals_subgroup);
        assert_eq!(rep.index_in_w, 1);
        assert_eq!(rep.stabilizer_order, 23040);
    }

    #[test]
    fn single_root_stabilizer_exceeds_a1() {
        let rs = system("D6");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let sub = SubsystemDescriptor {
            simple_roots: vec![1],
            ctype: CartanType::builtin("A1").unwrap(),
            all_roots: vec![1],
        };
        let rep = normalizer_equals_subgroup(&store, &sub).unwrap();
        assert!(rep.stabilizer_order > 2);
        assert!(!rep.equals_subgroup);
        // orbit-stabilizer consistency
        assert_eq!(rep.stabilizer_order * rep.index_in_w, 23040);
    }

    #[test]
    fn fusion_small_case() {
        // A1 x A1 inside A3 at the torus point where only the outer simple
        // roots survive: exps (0,1,0) mod 2 kills alpha2 and the sums.
        let rs = system("A3");
        let amb = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let amb_classes = conjugacy_classes(&amb);
        assert_eq!(amb_classes.representatives.len(), 5);
        let t = TorusPoint::new(2, vec![0, 1, 0]);
        let sub = fixed_subsystem(&rs, &t).unwrap();
        assert_eq!(sub.ctype.name, "A1xA1");
        let sub_rs = build_root_system(sub.ctype.clone()).unwrap();
        let sub_store = enumerate_group(&sub_rs, DEFAULT_BUDGET).unwrap();
        let sub_classes = conjugacy_classes(&sub_store);
        assert_eq!(sub_classes.representatives.len(), 4);
        let fusion = class_fusion(&sub_store, &sub_classes, &sub, &amb, &amb_classes).unwrap();
        // identity fuses to identity
        let sub_id_class = sub_classes.class_of[0] as usize;
        assert_eq!(fusion.map[sub_id_class], amb_classes.identity_class);
        // the two reflection classes of A1xA1 fuse to the single
        // transposition class of S4 (all reflections conjugate)
        let mut refl_targets: Vec<usize> = (0..4)
            .filter(|&c| {
                let r = sub_classes.representatives[c];
                sub_store.order_of(r) == 2 && sub_classes.sizes[c] == 1 && r != 0
            })
            .map(|c| fusion.map[c])
            .collect();
        refl_targets.sort_unstable();
        assert!(!refl_targets.is_empty());
    }

    #[test]
    fn longest_element_is_central_in_d6() {
        let rs = system("D6");
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        // -1 is the element with key -2rho
        let neg = store.rho2.map(|x| -x);
        let w0 = store.id_of_key(&neg).unwrap();
        assert_eq!(store.order_of(w0), 2);
        let classes = conjugacy_classes(&store);
        let c = classes.class_of[w0 as usize] as usize;
        assert_eq!(classes.sizes[c], 1);
        // char poly (x+1)^6
        assert_eq!(classes.invariant_keys[c].0, vec![1, 6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn weight_layers_match_subsystem() {
        // d = 0 layer of the Table-1 diagram is exactly the s1 subsystem
        let rs = system("E7");
        let d = WeightFunction::table1();
        let sub = fixed_subsystem(&rs, &TorusPoint::s1()).unwrap();
        let zero_layer: Vec<usize> = rs
            .positive_roots
            .iter()
            .filter(|rt| crate::rootdata::extend_weight(&d, rt).unwrap() % 2 == 0)
            .map(|rt| rt.index)
            .collect();
        // alpha(s1) = 1 iff d(alpha) even
        assert_eq!(zero_layer, sub.all_roots);
    }
}
