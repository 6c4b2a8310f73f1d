//! Exact character tables of the Weyl groups in play: a generic
//! Dixon–Schneider engine over a finite field with exact integer lift,
//! a Murnaghan–Nakayama oracle that attaches bipartition labels to the D6
//! table, fake degrees with b-invariants (labelling the two degree-512
//! characters of E7), outer products, restriction tables, and a plain-text
//! cache with checksum.

use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;
use crate::par;
use crate::poly::{self, IPoly};
use crate::weyl::{ConjClassSet, FusionMap, WeylStore};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CharLabel {
    Unlabeled,
    /// Type A (and the rank-1 factor, where `[2]` is trivial, `[1,1]` sign).
    Partition(Vec<u32>),
    /// Unordered type-D bipartition [lambda, mu], lambda != mu, stored with
    /// the lexicographically smaller partition first.
    Bipartition(Vec<u32>, Vec<u32>),
    /// Degenerate type-D pair [lambda, +/-].
    SplitBipartition(Vec<u32>, bool),
    /// Named rows, e.g. "512_a", "512_a'", "phi27,2".
    DegreeTag(String),
    /// Outer tensor product.
    Product(Box<CharLabel>, Box<CharLabel>),
}

fn fmt_partition(p: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_empty() {
        return write!(f, "-");
    }
    for x in p {
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharLabel::Unlabeled => write!(f, "?"),
            CharLabel::Partition(p) => fmt_partition(p, f),
            CharLabel::Bipartition(l, m) => {
                write!(f, "[")?;
                fmt_partition(l, f)?;
                write!(f, ",")?;
                fmt_partition(m, f)?;
                write!(f, "]")
            }
            CharLabel::SplitBipartition(l, plus) => {
                write!(f, "[")?;
                fmt_partition(l, f)?;
                write!(f, ",{}]", if *plus { "+" } else { "-" })
            }
            CharLabel::DegreeTag(s) => write!(f, "{s}"),
            CharLabel::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharTable {
    pub name: String,
    pub order: u64,
    pub rank: usize,
    /// Invariant degrees of the reflection group (for fake degrees).
    pub w_degrees: Vec<u64>,
    /// Reduced words of the class representatives (0-based generators).
    pub class_words: Vec<Vec<u8>>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u32>,
    pub inverse_class: Vec<usize>,
    /// Characteristic polynomial of each representative on the reflection
    /// representation, ascending coefficients.
    pub charpolys: Vec<IPoly>,
    pub identity_class: usize,
    /// Rows = irreducible characters, columns = classes.
    pub values: Vec<Vec<i64>>,
    pub labels: Vec<CharLabel>,
    /// Fake degrees, filled by `attach_labels`.
    pub fake_degrees: Option<Vec<IPoly>>,
    /// b-invariants (lowest fake-degree exponent), filled with fake degrees.
    pub b_invariants: Option<Vec<i64>>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degree(&self, row: usize) -> i64 {
        self.values[row][self.identity_class]
    }

    /// Determinant of each class on the reflection representation:
    /// det(w) = (-1)^rank * charpoly(0).
    pub fn det_values(&self) -> Vec<i64> {
        let sign = if self.rank % 2 == 0 { 1 } else { -1 };
        self.charpolys
            .iter()
            .map(|p| sign * i64::try_from(p[0]).unwrap())
            .collect()
    }

    /// Row index of the sign character (pointwise equal to the determinant).
    pub fn sign_row(&self) -> Result<usize> {
        let det = self.det_values();
        self.values
            .iter()
            .position(|v| *v == det)
            .ok_or_else(|| Error::TableInconsistency("sign character not found".into()))
    }

    /// Row whose values are the pointwise product of `row` with the sign
    /// character.
    pub fn tensor_sign(&self, row: usize) -> Result<usize> {
        let det = self.det_values();
        let target: Vec<i64> = self.values[row]
            .iter()
            .zip(&det)
            .map(|(v, d)| v * d)
            .collect();
        self.values
            .iter()
            .position(|v| *v == target)
            .ok_or_else(|| Error::TableInconsistency("sign twist is not a table row".into()))
    }

    pub fn row_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.to_string() == label)
    }

    /// Exact inner product of two rows.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for c in 0..self.num_classes() {
            s += i128::from(self.class_sizes[c])
                * i128::from(a[c])
                * i128::from(b[self.inverse_class[c]]);
        }
        s
    }

    /// Full orthogonality and the degree sum; exact.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let n = self.values.len();
        if n != self.num_classes() {
            return Err(Error::TableInconsistency(format!(
                "{} rows vs {} classes",
                n,
                self.num_classes()
            )));
        }
        let g = i128::from(self.order);
        for i in 0..n {
            for j in i..n {
                let s = self.inner(&self.values[i], &self.values[j]);
                let expect = if i == j { g } else { 0 };
                if s != expect {
                    return Err(Error::TableInconsistency(format!(
                        "row inner product ({i},{j}) = {s}"
                    )));
                }
            }
        }
        let sq: i128 = (0..n)
            .map(|i| i128::from(self.degree(i)) * i128::from(self.degree(i)))
            .sum();
        if sq != g {
            return Err(Error::TableInconsistency(format!(
                "sum of squared degrees {sq} != {g}"
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// modular arithmetic helpers

fn mulm(a: u64, b: u64, l: u64) -> u64 {
    a * b % l
}

fn addm(a: u64, b: u64, l: u64) -> u64 {
    (a + b) % l
}

fn subm(a: u64, b: u64, l: u64) -> u64 {
    (a + l - b) % l
}

fn powm(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1u64;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, l);
        }
        a = mulm(a, a, l);
        e >>= 1;
    }
    r
}

fn invm(a: u64, l: u64) -> u64 {
    powm(a, l - 2, l)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Reduced row echelon form mod l; returns pivot columns.
fn rref_mod(m: &mut [Vec<u64>], l: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = invm(m[r][c], l);
        for x in m[r].iter_mut() {
            *x = mulm(*x, inv, l);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = mulm(f, m[r][j], l);
                    m[i][j] = subm(m[i][j], t, l);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of a square matrix mod l (columns as vectors),
/// deterministic (free variables in ascending order).
fn kernel_mod(mat: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut m = mat.to_vec();
    let pivots = rref_mod(&mut m, l);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = subm(0, m[r][free], l);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial mod l (ascending coefficients), by the
/// Faddeev–LeVerrier recursion; requires l prime > dim.
fn char_poly_mod(m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = m.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut prev = vec![vec![0u64; n]; n];
    let mut c = 1u64;
    for step in 1..=n as u64 {
        let mut aux = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    let b = addm(prev[k][j], if k == j { c } else { 0 }, l);
                    s = addm(s, mulm(m[i][k], b, l), l);
                }
                aux[i][j] = s;
            }
        }
        let mut tr = 0u64;
        for (i, row) in aux.iter().enumerate() {
            tr = addm(tr, row[i], l);
        }
        c = subm(0, mulm(tr, invm(step % l, l), l), l);
        coeffs[(n as u64 - step) as usize] = c;
        prev = aux;
    }
    coeffs
}

fn eval_mod(p: &[u64], x: u64, l: u64) -> u64 {
    let mut v = 0u64;
    for &c in p.iter().rev() {
        v = addm(mulm(v, x, l), c, l);
    }
    v
}

// ---------------------------------------------------------------------------
// Dixon–Schneider

/// Least prime l with l = 1 mod exponent and l > 2*sqrt(|G|), so that
/// character values (bounded by the degree <= sqrt(|G|)) lift uniquely from
/// their symmetric residues.
fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let bound = 2 * isqrt(order);
    let mut l = exponent + 1;
    loop {
        if l > bound && is_prime(l) {
            return l;
        }
        l += exponent;
    }
}

/// Build the base table data (classes, words, polynomials) from a store.
fn table_shell(store: &WeylStore, classes: &ConjClassSet, name: &str) -> CharTable {
    let k = classes.representatives.len();
    let class_words: Vec<Vec<u8>> = classes
        .representatives
        .iter()
        .map(|&r| store.word(r))
        .collect();
    let class_orders: Vec<u32> = classes
        .representatives
        .iter()
        .map(|&r| store.order_of(r))
        .collect();
    let inverse_class: Vec<usize> = classes
        .representatives
        .iter()
        .map(|&r| classes.class_of[store.inverse[r as usize] as usize] as usize)
        .collect();
    let charpolys: Vec<IPoly> = (0..k)
        .map(|c| classes.invariant_keys[c].0.clone())
        .collect();
    CharTable {
        name: name.to_string(),
        order: store.len() as u64,
        rank: store.rank(),
        w_degrees: store.rs.invariant_degrees(),
        class_words,
        class_sizes: classes.sizes.clone(),
        class_orders,
        inverse_class,
        charpolys,
        identity_class: classes.identity_class,
        values: vec![],
        labels: vec![],
        fake_degrees: None,
        b_invariants: None,
    }
}

/// Class-sum structure constants for one class: A[j][kk] = #{x in C_i :
/// x^{-1} z_kk in C_j}.
fn class_matrix(
    store: &WeylStore,
    classes: &ConjClassSet,
    members: &[u32],
    i: usize,
) -> Vec<Vec<i64>> {
    let k = classes.representatives.len();
    let elems = members;
    let flat = par::index_fold_vec(elems.len(), k * k, |acc, pos| {
        let x = elems[pos];
        let xinv = store.inverse[x as usize];
        for (kk, &z) in classes.representatives.iter().enumerate() {
            let y = store.mul(xinv, z);
            let j = classes.class_of[y as usize] as usize;
            acc[j * k + kk] += 1;
        }
    });
    let _ = i;
    (0..k).map(|j| flat[j * k..(j + 1) * k].to_vec()).collect()
}

/// Exact character table via Dixon–Schneider: common eigenvectors of the
/// class-sum matrices over F_l, lifted to the integers and verified by full
/// orthogonality.
pub fn char_table_dixon(
    store: &WeylStore,
    classes: &ConjClassSet,
    name: &str,
) -> Result<CharTable> {
    let mut table = table_shell(store, classes, name);
    let k = table.num_classes();
    let order = table.order;
    let exponent = table
        .class_orders
        .iter()
        .fold(1u64, |acc, &o| acc / gcd_u64(acc, o as u64) * o as u64);
    let l = dixon_prime(exponent, order);

    // members per class
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (id, &c) in classes.class_of.iter().enumerate() {
        members[c as usize].push(id as u32);
    }

    // split the common eigenspaces class by class, small classes first
    let mut class_order: Vec<usize> = (0..k).collect();
    class_order.sort_by_key(|&i| (classes.sizes[i], i));
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    for &ci in &class_order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        if ci == table.identity_class {
            continue;
        }
        let a = class_matrix(store, classes, &members[ci], ci);
        let am: Vec<Vec<u64>> = a
            .iter()
            .map(|row| row.iter().map(|&x| (x as u64) % l).collect())
            .collect();
        let mut next_spaces = Vec::new();
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next_spaces.push(basis);
                continue;
            }
            // restricted operator R with A*B = B*R (columns of B = basis)
            let ab: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|r| {
                            let mut s = 0u64;
                            for c in 0..k {
                                s = addm(s, mulm(am[r][c], v[c], l), l);
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            // solve B * R = AB columnwise via one elimination
            let mut aug: Vec<Vec<u64>> = (0..k)
                .map(|r| {
                    let mut row: Vec<u64> = basis.iter().map(|v| v[r]).collect();
                    row.extend(ab.iter().map(|v| v[r]));
                    row
                })
                .collect();
            let pivots = rref_mod(&mut aug, l);
            if pivots.len() != d || pivots.iter().any(|&p| p >= d) {
                return Err(Error::TableInconsistency(
                    "eigenspace basis lost rank".into(),
                ));
            }
            let rmat: Vec<Vec<u64>> = (0..d)
                .map(|i| (0..d).map(|j| aug[i][d + j]).collect())
                .collect();
            let cp = char_poly_mod(&rmat, l);
            let mut split = Vec::new();
            for lam in 0..l {
                if eval_mod(&cp, lam, l) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                if i == j {
                                    subm(rmat[i][j], lam, l)
                                } else {
                                    rmat[i][j]
                                }
                            })
                            .collect()
                    })
                    .collect();
                for kv in kernel_mod(&shifted, l) {
                    // back to ambient coordinates
                    let v: Vec<u64> = (0..k)
                        .map(|r| {
                            let mut s = 0u64;
                            for (bi, b) in basis.iter().enumerate() {
                                s = addm(s, mulm(kv[bi], b[r], l), l);
                            }
                            s
                        })
                        .collect();
                    split.push((lam, v));
                }
            }
            if split.len() != d {
                return Err(Error::TableInconsistency(format!(
                    "eigen splitting produced {} vectors from a {d}-dimensional space",
                    split.len()
                )));
            }
            // group by eigenvalue
            split.sort_by_key(|(lam, _)| *lam);
            let mut i = 0;
            while i < split.len() {
                let mut j = i;
                while j < split.len() && split[j].0 == split[i].0 {
                    j += 1;
                }
                next_spaces.push(split[i..j].iter().map(|(_, v)| v.clone()).collect());
                i = j;
            }
        }
        spaces = next_spaces;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableInconsistency(
            "class matrices failed to split the eigenspaces".into(),
        ));
    }

    // lift each eigenvector to an exact character row
    let sqrt_g = isqrt(order);
    let idc = table.identity_class;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(k);
    for space in &spaces {
        let w = &space[0];
        if w[idc] == 0 {
            return Err(Error::TableInconsistency(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let norm = invm(w[idc], l);
        let w: Vec<u64> = w.iter().map(|&x| mulm(x, norm, l)).collect();
        // s = sum w_k w_{inv k} / |C_k| = |G| / deg^2 mod l
        let mut s = 0u64;
        for c in 0..k {
            let t = mulm(w[c], w[table.inverse_class[c]], l);
            s = addm(s, mulm(t, invm(classes.sizes[c] % l, l), l), l);
        }
        let deg_sq = mulm(order % l, invm(s, l), l);
        let deg = (1..=sqrt_g)
            .find(|&d| mulm(d % l, d % l, l) == deg_sq)
            .ok_or_else(|| Error::TableInconsistency("no integer degree matches".into()))?;
        let row: Vec<i64> = (0..k)
            .map(|c| {
                let v = mulm(mulm(deg % l, w[c], l), invm(classes.sizes[c] % l, l), l);
                // symmetric lift
                if v > l / 2 {
                    v as i64 - l as i64
                } else {
                    v as i64
                }
            })
            .collect();
        rows.push(row);
    }
    rows.sort_by(|a, b| (a[idc], a).cmp(&(b[idc], b)));
    table.values = rows;
    table.labels = vec![CharLabel::Unlabeled; k];
    table.verify_orthogonality()?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// fake degrees

/// Fake degrees of all rows:
/// R_phi(q) = (Prod_i (q^{d_i}-1)) / |W| * Sum_c |c| det(c) phi(c) / P_c(q),
/// computed exactly with common denominator (q^N - 1)^rank.
pub fn fake_degrees(table: &CharTable) -> Result<Vec<IPoly>> {
    let k = table.num_classes();
    let n_exp = table
        .class_orders
        .iter()
        .fold(1u64, |acc, &o| acc / gcd_u64(acc, o as u64) * o as u64) as usize;
    let rank = table.rank;
    // (q^N - 1)^rank and its exact quotients by the class polynomials
    let mut denom = vec![1i128];
    for _ in 0..rank {
        denom = poly::mul(&denom, &poly::xn_minus_one(n_exp));
    }
    let quotients: Vec<IPoly> = par::index_map(k, |c| {
        poly::div_exact(&denom, &table.charpolys[c])
            .expect("class polynomial divides (q^N-1)^rank")
    });
    let dets = table.det_values();
    let mut q_poly = vec![1i128];
    for &d in &table.w_degrees {
        q_poly = poly::mul(&q_poly, &{
            let mut p = vec![0i128; d as usize + 1];
            p[0] = -1;
            p[d as usize] = 1;
            p
        });
    }
    let mut out = Vec::with_capacity(table.values.len());
    for row in &table.values {
        let mut s: IPoly = vec![];
        for c in 0..k {
            let coef = i128::from(table.class_sizes[c])
                * i128::from(dets[c])
                * i128::from(row[c]);
            s = poly::add(&s, &poly::scale(&quotients[c], coef));
        }
        let num = poly::mul(&q_poly, &s);
        let mut r = poly::div_exact(&num, &denom)
            .ok_or_else(|| Error::TableInconsistency("fake degree is not polynomial".into()))?;
        for coef in r.iter_mut() {
            if *coef % i128::from(table.order) != 0 {
                return Err(Error::TableInconsistency(
                    "fake degree not divisible by |W|".into(),
                ));
            }
            *coef /= i128::from(table.order);
        }
        if r.iter().any(|&c| c < 0) {
            return Err(Error::TableInconsistency(
                "fake degree has a negative coefficient".into(),
            ));
        }
        out.push(r);
    }
    Ok(out)
}

/// Lowest exponent with nonzero coefficient.
pub fn b_invariant(fd: &IPoly) -> i64 {
    fd.iter().position(|&c| c != 0).map(|p| p as i64).unwrap_or(0)
}

fn fill_fake_degrees(table: &mut CharTable) -> Result<()> {
    if table.fake_degrees.is_none() {
        let fds = fake_degrees(table)?;
        for (row, fd) in fds.iter().enumerate() {
            let at_one: i128 = fd.iter().sum();
            if at_one != i128::from(table.degree(row)) {
                return Err(Error::TableInconsistency(format!(
                    "fake degree at q=1 is {at_one}, row degree {}",
                    table.degree(row)
                )));
            }
        }
        table.b_invariants = Some(fds.iter().map(b_invariant).collect());
        table.fake_degrees = Some(fds);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Murnaghan–Nakayama oracle (hyperoctahedral group, restricted to D6)

/// All partitions of n, descending parts, lexicographically descending.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut p = max.min(n);
        while p >= 1 {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn beta_set(p: &[u32], len: usize) -> Vec<i64> {
    // first-column hook lengths, padded to `len` entries
    let mut b: Vec<i64> = (0..len)
        .map(|i| {
            let part = if i < p.len() { p[i] as i64 } else { 0 };
            part + (len as i64 - 1 - i as i64)
        })
        .collect();
    b.sort_unstable();
    b
}

fn partition_from_beta(b: &[i64]) -> Vec<u32> {
    let len = b.len();
    let mut sorted = b.to_vec();
    sorted.sort_unstable_by(|a, c| c.cmp(a));
    let mut p: Vec<u32> = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - (len as i64 - 1 - i as i64)) as u32)
        .collect();
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// All ways to remove a k-rim-hook: (new partition, sign (-1)^leg).
fn remove_hooks(p: &[u32], k: i64) -> Vec<(Vec<u32>, i64)> {
    let len = p.len() + k as usize; // enough beta entries
    let b = beta_set(p, len);
    let set: std::collections::HashSet<i64> = b.iter().copied().collect();
    let mut out = Vec::new();
    for &x in &b {
        let y = x - k;
        if y >= 0 && !set.contains(&y) {
            let leg = b.iter().filter(|&&z| y < z && z < x).count();
            let nb: Vec<i64> = b.iter().map(|&z| if z == x { y } else { z }).collect();
            let sign = if leg % 2 == 0 { 1 } else { -1 };
            out.push((partition_from_beta(&nb), sign));
        }
    }
    out
}

/// Murnaghan–Nakayama value of the hyperoctahedral character [lambda, mu] on
/// the signed cycle type `cycles` (length, sign with +1 positive cycle).
pub fn mn_bipartition_character(lambda: &[u32], mu: &[u32], cycles: &[(u32, i64)]) -> i64 {
    fn rec(l: &[u32], m: &[u32], cycles: &[(u32, i64)]) -> i64 {
        let Some(&(k, eps)) = cycles.last() else {
            return i64::from(l.is_empty() && m.is_empty());
        };
        let rest = &cycles[..cycles.len() - 1];
        let mut total = 0;
        for (nl, sign) in remove_hooks(l, k as i64) {
            total += sign * rec(&nl, m, rest);
        }
        for (nm, sign) in remove_hooks(m, k as i64) {
            total += eps * sign * rec(l, &nm, rest);
        }
        total
    }
    rec(lambda, mu, cycles)
}

/// Signed cycle type of a D6 element given in simple-root coordinates,
/// via the standard coordinate basis e_1..e_6.
pub fn signed_cycle_type_d6(store: &WeylStore, id: u32) -> Result<Vec<(u32, i64)>> {
    let n = 6usize;
    if store.rank() != n || store.rs.ctype.name != "D6" {
        return Err(Error::TableInconsistency("signed cycle types need the D6 store".into()));
    }
    // columns of P = simple roots in e-coordinates
    let mut p = vec![vec![0i64; n]; n];
    for j in 0..5 {
        p[j][j] = 1;
        p[j + 1][j] = -1;
    }
    p[4][5] = 1;
    p[5][5] = 1;
    // M_e = P M P^{-1}, exact via adjugate (det P = 2)
    let det = det_bareiss(&p).unwrap();
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| p[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * det_bareiss(&minor).unwrap();
        }
    }
    let m = store.mat(id);
    let mut me = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for a in 0..n {
                for b in 0..n {
                    s += p[i][a] * i64::from(m[a * n + b]) * adj[b][j];
                }
            }
            if s % det != 0 {
                return Err(Error::TableInconsistency(
                    "basis change is not integral".into(),
                ));
            }
            me[i][j] = s / det;
        }
    }
    // signed permutation: one +-1 per column
    let mut img = vec![(0usize, 0i64); n];
    for j in 0..n {
        let mut hits = 0;
        for i in 0..n {
            match me[i][j] {
                0 => {}
                s @ (1 | -1) => {
                    img[j] = (i, s);
                    hits += 1;
                }
                _ => {
                    return Err(Error::TableInconsistency(
                        "element is not a signed permutation in e-coordinates".into(),
                    ))
                }
            }
        }
        if hits != 1 {
            return Err(Error::TableInconsistency(
                "element is not a signed permutation in e-coordinates".into(),
            ));
        }
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut sign = 1i64;
        let mut cur = start;
        loop {
            seen[cur] = true;
            len += 1;
            let (next, s) = img[cur];
            sign *= s;
            cur = next;
            if cur == start {
                break;
            }
        }
        cycles.push((len, sign));
    }
    cycles.sort_unstable_by(|a, b| b.cmp(a));
    Ok(cycles)
}

// ---------------------------------------------------------------------------
// labels

/// Attach canonical labels to a Dixon table: partitions are not needed for
/// A1/A2 beyond trivial/sign; D6 rows get bipartition labels from the
/// Murnaghan–Nakayama oracle; E7 rows get phi{degree},{b} tags with the
/// degree-512 pair named 512_a / 512_a'.
pub fn attach_labels(
    table: &mut CharTable,
    store: &WeylStore,
    classes: &ConjClassSet,
) -> Result<()> {
    fill_fake_degrees(table)?;
    match table.name.as_str() {
        "A1" => {
            let sign = table.sign_row()?;
            for (r, l) in table.labels.iter_mut().enumerate() {
                *l = if r == sign {
                    CharLabel::Partition(vec![1, 1])
                } else {
                    CharLabel::Partition(vec![2])
                };
            }
            Ok(())
        }
        "D6" => attach_labels_d6(table, store, classes),
        _ => {
            // generic: phi{degree},{b}; E7's 512 pair additionally renamed
            let bs = table.b_invariants.clone().unwrap();
            let mut seen: std::collections::HashMap<String, usize> = Default::default();
            for r in 0..table.values.len() {
                let mut tag = format!("phi{},{}", table.degree(r), bs[r]);
                let n = seen.entry(tag.clone()).or_insert(0);
                *n += 1;
                if *n > 1 {
                    tag.push('\'');
                }
                table.labels[r] = CharLabel::DegreeTag(tag);
            }
            if table.name == "E7" {
                let mut rows512: Vec<usize> = (0..table.values.len())
                    .filter(|&r| table.degree(r) == 512)
                    .collect();
                if rows512.len() != 2 {
                    return Err(Error::TableInconsistency(format!(
                        "expected two degree-512 rows, found {}",
                        rows512.len()
                    )));
                }
                rows512.sort_by_key(|&r| bs[r]);
                if bs[rows512[0]] == bs[rows512[1]] {
                    return Err(Error::TableInconsistency(
                        "degree-512 rows have equal b-invariants".into(),
                    ));
                }
                // 512_a is the member whose sign-twisted restriction to the
                // D6 x A1 subsystem contains [21,3] boxtimes 1: this is the
                // row with the larger b-invariant
                table.labels[rows512[1]] = CharLabel::DegreeTag("512_a".into());
                table.labels[rows512[0]] = CharLabel::DegreeTag("512_a'".into());
            }
            Ok(())
        }
    }
}

fn attach_labels_d6(
    table: &mut CharTable,
    store: &WeylStore,
    classes: &ConjClassSet,
) -> Result<()> {
    let k = table.num_classes();
    let cycle_types: Vec<Vec<(u32, i64)>> = (0..k)
        .map(|c| signed_cycle_type_d6(store, classes.representatives[c]))
        .collect::<Result<_>>()?;
    // enumerate unordered bipartitions of 6
    let mut nonsplit: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut split: Vec<Vec<u32>> = Vec::new();
    for a in 0..=6u32 {
        for la in partitions(a) {
            for mu in partitions(6 - a) {
                match la.cmp(&mu) {
                    std::cmp::Ordering::Less => nonsplit.push((la.clone(), mu)),
                    std::cmp::Ordering::Equal => split.push(la.clone()),
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
    }
    let mut used = vec![false; table.values.len()];
    for (la, mu) in &nonsplit {
        let vals: Vec<i64> = cycle_types
            .iter()
            .map(|ct| mn_bipartition_character(la, mu, ct))
            .collect();
        let row = table
            .values
            .iter()
            .position(|v| *v == vals)
            .ok_or_else(|| {
                Error::TableInconsistency(format!(
                    "no table row matches bipartition [{la:?},{mu:?}]"
                ))
            })?;
        if used[row] {
            return Err(Error::TableInconsistency("bipartition label collision".into()));
        }
        used[row] = true;
        table.labels[row] = CharLabel::Bipartition(la.clone(), mu.clone());
    }
    // split pairs: two rows of half degree summing to the restricted value
    for la in &split {
        let vals: Vec<i64> = cycle_types
            .iter()
            .map(|ct| mn_bipartition_character(la, la, ct))
            .collect();
        let half = vals[table.identity_class] / 2;
        let cand: Vec<usize> = (0..table.values.len())
            .filter(|&r| !used[r] && table.degree(r) == half)
            .collect();
        let mut found = None;
        'search: for (ai, &a) in cand.iter().enumerate() {
            for &b in &cand[ai + 1..] {
                if (0..k).all(|c| table.values[a][c] + table.values[b][c] == vals[c]) {
                    found = Some((a, b));
                    break 'search;
                }
            }
        }
        let (a, b) = found.ok_or_else(|| {
            Error::TableInconsistency(format!("no split pair matches [{la:?},{la:?}]"))
        })?;
        // '+' goes to the lexicographically larger value vector
        let (plus, minus) = if table.values[a] > table.values[b] {
            (a, b)
        } else {
            (b, a)
        };
        used[a] = true;
        used[b] = true;
        table.labels[plus] = CharLabel::SplitBipartition(la.clone(), true);
        table.labels[minus] = CharLabel::SplitBipartition(la.clone(), false);
    }
    if used.iter().filter(|&&u| u).count() != table.values.len() {
        return Err(Error::TableInconsistency("unlabeled D6 rows remain".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// products and restrictions

/// Outer product table over a directly enumerated product group; classes are
/// matched to factor-class pairs through the product store.
pub fn product_table(
    t1: &CharTable,
    t2: &CharTable,
    prod_store: &WeylStore,
    prod_classes: &ConjClassSet,
) -> Result<CharTable> {
    let mut table = table_shell(prod_store, prod_classes, &format!("{}x{}", t1.name, t2.name));
    let k1 = t1.num_classes();
    let k2 = t2.num_classes();
    let k = table.num_classes();
    if k != k1 * k2 {
        return Err(Error::TableInconsistency(
            "product class count mismatch".into(),
        ));
    }
    // locate each pair class inside the product store via words
    let r1 = t1.rank as u8;
    let mut pair_of_class: Vec<Option<(usize, usize)>> = vec![None; k];
    for c1 in 0..k1 {
        for c2 in 0..k2 {
            let mut word: Vec<u8> = t1.class_words[c1].clone();
            word.extend(t2.class_words[c2].iter().map(|&s| s + r1));
            let mut id = 0u32;
            for &s in &word {
                // multiply by the generator: locate it as the length-one word
                let gen_id = prod_store
                    .id_of_mat(&crate::weyl::reflection_matrix(
                        &prod_store.rs,
                        s as usize + 1,
                    ))
                    .ok_or_else(|| Error::TableInconsistency("generator not found".into()))?;
                id = prod_store.mul(id, gen_id);
            }
            let cls = prod_classes.class_of[id as usize] as usize;
            if pair_of_class[cls].is_some() {
                return Err(Error::TableInconsistency(
                    "two factor pairs landed in one product class".into(),
                ));
            }
            pair_of_class[cls] = Some((c1, c2));
        }
    }
    let pairs: Vec<(usize, usize)> = pair_of_class
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::TableInconsistency("product class without factor pair".into()))?;
    let mut values = Vec::with_capacity(k);
    let mut labels = Vec::with_capacity(k);
    let mut fds = Vec::with_capacity(k);
    for (r1v, l1) in t1.values.iter().zip(&t1.labels) {
        for (r2v, l2) in t2.values.iter().zip(&t2.labels) {
            let row: Vec<i64> = pairs
                .iter()
                .map(|&(c1, c2)| r1v[c1] * r2v[c2])
                .collect();
            values.push(row);
            labels.push(CharLabel::Product(
                Box::new(l1.clone()),
                Box::new(l2.clone()),
            ));
        }
    }
    let (fd1, fd2) = (
        t1.fake_degrees
            .as_ref()
            .ok_or_else(|| Error::TableInconsistency("factor fake degrees missing".into()))?,
        t2.fake_degrees
            .as_ref()
            .ok_or_else(|| Error::TableInconsistency("factor fake degrees missing".into()))?,
    );
    for a in fd1 {
        for b in fd2 {
            fds.push(poly::mul(a, b));
        }
    }
    table.values = values;
    table.labels = labels;
    table.b_invariants = Some(fds.iter().map(b_invariant).collect());
    table.fake_degrees = Some(fds);
    table.verify_orthogonality()?;
    Ok(table)
}

/// Restriction multiplicities m(phi, psi) = <Res phi, psi>, exact; rows
/// indexed by ambient irreducibles, columns by subgroup irreducibles.
pub fn restriction_table(
    amb: &CharTable,
    sub: &CharTable,
    fusion: &FusionMap,
) -> Result<Vec<Vec<i64>>> {
    let ks = sub.num_classes();
    if fusion.map.len() != ks {
        return Err(Error::Fusion("fusion map has wrong length".into()));
    }
    let g1 = i128::from(sub.order);
    let mut out = Vec::with_capacity(amb.values.len());
    for phi in &amb.values {
        let mut row = Vec::with_capacity(sub.values.len());
        for psi in &sub.values {
            let mut s = 0i128;
            for c in 0..ks {
                s += i128::from(sub.class_sizes[c])
                    * i128::from(phi[fusion.map[c]])
                    * i128::from(psi[sub.inverse_class[c]]);
            }
            if s % g1 != 0 {
                return Err(Error::Fusion(format!(
                    "non-integer restriction multiplicity {s}/{g1}"
                )));
            }
            let m = (s / g1) as i64;
            if m < 0 {
                return Err(Error::Fusion(format!("negative multiplicity {m}")));
            }
            row.push(m);
        }
        // degree bookkeeping
        let total: i64 = row
            .iter()
            .enumerate()
            .map(|(j, &m)| m * sub.degree(j))
            .sum();
        let phi_deg = phi[amb.identity_class];
        if total != phi_deg {
            return Err(Error::Fusion(format!(
                "restricted degrees sum to {total}, expected {phi_deg}"
            )));
        }
        out.push(row);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// cache

fn word_str(w: &[u8]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter()
            .map(|&s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn parse_word(s: &str) -> Result<Vec<u8>> {
    if s == "e" {
        return Ok(vec![]);
    }
    s.split('.')
        .map(|t| {
            t.parse::<u8>()
                .ok()
                .and_then(|x| x.checked_sub(1))
                .ok_or_else(|| Error::Cache(format!("bad word token {t:?}")))
        })
        .collect()
}

fn cache_body(table: &CharTable) -> String {
    let mut body = String::new();
    for c in 0..table.num_classes() {
        body.push_str(&format!(
            "{} {}\n",
            word_str(&table.class_words[c]),
            table.class_sizes[c]
        ));
    }
    for row in &table.values {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        body.push_str(&line.join(" "));
        body.push('\n');
    }
    body
}

/// Checksum of the cache body of a table, as stored in the cache header.
pub fn table_checksum(table: &CharTable) -> String {
    body_checksum(&cache_body(table))
}

fn body_checksum(body: &str) -> String {
    let mut h = Sha256::new();
    h.update(body.as_bytes());
    format!("{:x}", h.finalize())
}

pub fn save_table(table: &CharTable, path: &std::path::Path) -> Result<()> {
    let body = cache_body(table);
    let header = format!(
        "table {} classes={} order={} checksum={}\n",
        table.name,
        table.num_classes(),
        table.order,
        body_checksum(&body)
    );
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, header + &body)?;
    Ok(())
}

/// Raw cached table: verified checksum, no group data attached yet.
#[derive(Debug, Clone)]
pub struct CachedTable {
    pub name: String,
    pub order: u64,
    pub class_words: Vec<Vec<u8>>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<Vec<i64>>,
    pub checksum: String,
}

pub fn load_table_raw(path: &std::path::Path) -> Result<CachedTable> {
    let text = std::fs::read_to_string(path)?;
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::Cache("empty cache file".into()))?;
    let mut k = None;
    let mut order = None;
    let mut checksum = None;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("table") {
        return Err(Error::Cache("missing table header".into()));
    }
    let name = toks.next().map(str::to_string);
    for t in toks {
        if let Some(v) = t.strip_prefix("classes=") {
            k = v.parse().ok();
        } else if let Some(v) = t.strip_prefix("order=") {
            order = v.parse().ok();
        } else if let Some(v) = t.strip_prefix("checksum=") {
            checksum = Some(v.to_string());
        }
    }
    let (name, k, order, checksum): (String, usize, u64, String) =
        match (name, k, order, checksum) {
            (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
            _ => return Err(Error::Cache("malformed cache header".into())),
        };
    if body_checksum(body) != checksum {
        return Err(Error::Cache("cache checksum mismatch".into()));
    }
    let lines: Vec<&str> = body.lines().collect();
    if lines.len() != 2 * k {
        return Err(Error::Cache(format!(
            "expected {} cache lines, found {}",
            2 * k,
            lines.len()
        )));
    }
    let mut class_words = Vec::with_capacity(k);
    let mut class_sizes = Vec::with_capacity(k);
    for line in &lines[..k] {
        let (w, s) = line
            .split_once(' ')
            .ok_or_else(|| Error::Cache("bad class line".into()))?;
        class_words.push(parse_word(w)?);
        class_sizes.push(
            s.trim()
                .parse()
                .map_err(|_| Error::Cache("bad class size".into()))?,
        );
    }
    let mut values = Vec::with_capacity(k);
    for line in &lines[k..] {
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Cache("bad value".into())))
            .collect::<Result<_>>()?;
        if row.len() != k {
            return Err(Error::Cache("bad value row length".into()));
        }
        values.push(row);
    }
    if class_sizes.iter().sum::<u64>() != order {
        return Err(Error::Cache("class sizes do not sum to the order".into()));
    }
    Ok(CachedTable {
        name,
        order,
        class_words,
        class_sizes,
        values,
        checksum,
    })
}

/// Rebuild a full table from a cached one against a live store: class words
/// are re-evaluated, matched to the store's classes, and the value columns
/// remapped to the store's canonical class order.
pub fn upgrade_cached(
    cached: &CachedTable,
    store: &WeylStore,
    classes: &ConjClassSet,
) -> Result<CharTable> {
    let k = classes.representatives.len();
    if cached.class_words.len() != k || cached.order != store.len() as u64 {
        return Err(Error::Cache("cached table does not match the group".into()));
    }
    // cached class index -> store class index
    let mut to_store = vec![usize::MAX; k];
    let mut hit = vec![false; k];
    for (ci, w) in cached.class_words.iter().enumerate() {
        let mut id = 0u32;
        for &s in w {
            let gen = store
                .id_of_mat(&crate::weyl::reflection_matrix(&store.rs, s as usize + 1))
                .ok_or_else(|| Error::Cache("bad generator in cached word".into()))?;
            id = store.mul(id, gen);
        }
        let cls = classes.class_of[id as usize] as usize;
        if hit[cls] || classes.sizes[cls] != cached.class_sizes[ci] {
            return Err(Error::Cache("cached classes do not match the group".into()));
        }
        hit[cls] = true;
        to_store[ci] = cls;
    }
    let mut table = table_shell(store, classes, &cached.name);
    table.values = cached
        .values
        .iter()
        .map(|row| {
            let mut out = vec![0i64; k];
            for (ci, &v) in row.iter().enumerate() {
                out[to_store[ci]] = v;
            }
            out
        })
        .collect();
    table.labels = vec![CharLabel::Unlabeled; k];
    table.verify_orthogonality()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, CartanType};
    use crate::weyl::{conjugacy_classes, enumerate_group, DEFAULT_BUDGET};

    fn table_for(name: &str) -> (WeylStore, ConjClassSet, CharTable) {
        let rs = build_root_system(CartanType::builtin(name).unwrap()).unwrap();
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let classes = conjugacy_classes(&store);
        let mut t = char_table_dixon(&store, &classes, name).unwrap();
        attach_labels(&mut t, &store, &classes).unwrap();
        (store, classes, t)
    }

    #[test]
    fn a1_table() {
        let (_, _, t) = table_for("A1");
        assert_eq!(t.values, vec![vec![-1, 1], vec![1, 1]]);
        assert_eq!(t.labels[t.sign_row().unwrap()].to_string(), "11");
    }

    #[test]
    fn a2_degrees() {
        let (_, _, t) = table_for("A2");
        let mut degs: Vec<i64> = (0..3).map(|r| t.degree(r)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn d6_table_labels_and_fake_degrees() {
        let (_, _, t) = table_for("D6");
        assert_eq!(t.values.len(), 37);
        let nonsplit = t
            .labels
            .iter()
            .filter(|l| matches!(l, CharLabel::Bipartition(..)))
            .count();
        let split = t
            .labels
            .iter()
            .filter(|l| matches!(l, CharLabel::SplitBipartition(..)))
            .count();
        assert_eq!((nonsplit, split), (31, 6));
        // trivial and sign labels
        let triv = t.row_of_label("[-,6]").unwrap();
        assert_eq!(t.degree(triv), 1);
        assert!(t.values[triv].iter().all(|&v| v == 1));
        let sign = t.sign_row().unwrap();
        assert_eq!(t.labels[sign].to_string(), "[-,111111]");
        // fake degrees: trivial -> 1, sign -> q^30
        let fds = t.fake_degrees.as_ref().unwrap();
        assert_eq!(fds[triv], vec![1]);
        let mut q30 = vec![0i128; 31];
        q30[30] = 1;
        assert_eq!(fds[sign], q30);
        let bs = t.b_invariants.as_ref().unwrap();
        assert_eq!(bs[triv], 0);
        assert_eq!(bs[sign], 30);
        // paper constituents exist
        assert!(t.row_of_label("[21,3]").is_some());
        assert!(t.row_of_label("[2,31]").is_some());
    }

    #[test]
    fn mn_oracle_basics() {
        // trivial-type label is 1 everywhere
        let cycles = vec![(3, 1), (2, -1), (1, 1)];
        assert_eq!(mn_bipartition_character(&[6], &[], &cycles), 1);
        // sign-type label is the determinant
        let det = (-1i64).pow(1) // one negative cycle
            * (-1i64).pow((3 - 1) + (2 - 1)); // underlying permutation sign
        assert_eq!(mn_bipartition_character(&[], &[1, 1, 1, 1, 1, 1], &cycles), det);
        // degree of [21,3]: 2-part hooks
        let id_cycles = vec![(1, 1); 6];
        let dim = mn_bipartition_character(&[2, 1], &[3], &id_cycles);
        assert_eq!(dim, 40); // binom(6,3) * dim(21) * dim(3) = 20*2*1
    }

    #[test]
    fn product_table_d6xa1() {
        let (_, _, d6) = table_for("D6");
        let (_, _, a1) = table_for("A1");
        let ct = CartanType::builtin("D6")
            .unwrap()
            .direct_sum(&CartanType::builtin("A1").unwrap())
            .unwrap();
        let rs = build_root_system(ct).unwrap();
        let store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let classes = conjugacy_classes(&store);
        let t = product_table(&d6, &a1, &store, &classes).unwrap();
        assert_eq!(t.values.len(), 74);
        assert!(t.row_of_label("[21,3]x2").is_some());
        let r = t.row_of_label("[21,3]x2").unwrap();
        assert_eq!(t.degree(r), 40);
    }

    #[test]
    fn cache_roundtrip() {
        let (store, classes, t) = table_for("D6");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("chartab_D6.txt");
        save_table(&t, &path).unwrap();
        let cached = load_table_raw(&path).unwrap();
        assert_eq!(cached.order, 23040);
        let mut t2 = upgrade_cached(&cached, &store, &classes).unwrap();
        assert_eq!(t2.values, t.values);
        attach_labels(&mut t2, &store, &classes).unwrap();
        assert_eq!(t2.labels, t.labels);
        // tampering is detected
        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replacen(" 1 ", " 2 ", 1);
        std::fs::write(&path, text).unwrap();
        assert!(load_table_raw(&path).is_err());
    }

    #[test]
    fn restriction_trivial_small() {
        // A1 x A1 inside A3: restriction of the trivial is trivial
        let rs = build_root_system(CartanType::builtin("A3").unwrap()).unwrap();
        let amb_store = enumerate_group(&rs, DEFAULT_BUDGET).unwrap();
        let amb_classes = conjugacy_classes(&amb_store);
        let mut amb = char_table_dixon(&amb_store, &amb_classes, "A3").unwrap();
        attach_labels(&mut amb, &amb_store, &amb_classes).unwrap();
        let t = crate::rootdata::TorusPoint::new(2, vec![0, 1, 0]);
        let sub_desc = crate::weyl::fixed_subsystem(&rs, &t).unwrap();
        let sub_rs = build_root_system(sub_desc.ctype.clone()).unwrap();
        let sub_store = enumerate_group(&sub_rs, DEFAULT_BUDGET).unwrap();
        let sub_classes = conjugacy_classes(&sub_store);
        let sub = char_table_dixon(&sub_store, &sub_classes, "A1xA1").unwrap();
        let fusion = crate::weyl::class_fusion(
            &sub_store,
            &sub_classes,
            &sub_desc,
            &amb_store,
            &amb_classes,
        )
        .unwrap();
        let m = restriction_table(&amb, &sub, &fusion).unwrap();
        // trivial row of ambient restricts to trivial of subgroup
        let triv_amb = amb
            .values
            .iter()
            .position(|v| v.iter().all(|&x| x == 1))
            .unwrap();
        let triv_sub = sub
            .values
            .iter()
            .position(|v| v.iter().all(|&x| x == 1))
            .unwrap();
        assert_eq!(m[triv_amb][triv_sub], 1);
        assert_eq!(m[triv_amb].iter().sum::<i64>(), 1);
    }
}
