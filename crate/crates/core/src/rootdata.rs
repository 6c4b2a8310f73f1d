//! Root systems from Cartan matrices: canonical root ordering, anchor
//! validation of the indexing convention, weighted Dynkin diagrams and
//! evaluation of roots on torus points.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::det_bareiss;

/// The eight positive roots involved in the unipotent representatives y74/y75.
pub const INVOLVED_ROOTS: [usize; 8] = [20, 21, 23, 24, 25, 28, 31, 36];
/// Root-index support of y74.
pub const Y74_SUPPORT: [usize; 5] = [20, 21, 23, 28, 31];
/// Root-index support of y75.
pub const Y75_SUPPORT: [usize; 7] = [20, 21, 23, 24, 25, 28, 36];
/// Exponent vector of the torus element t in units of the square root of the
/// prime-field generator; also the weighted-diagram values on simple roots.
pub const T_EXPS: [i64; 7] = [1, 0, 0, 1, 0, 1, 0];
/// Exponent vector of the one-parameter torus S(x) centralizing y74.
pub const S_CURVE_EXPS: [i64; 7] = [1, -2, -2, 3, -2, 1, 0];

/// Ten anchor roots with the printed coefficient vectors used to pin the
/// root-indexing convention.
pub const ANCHOR_ROOTS: [(usize, [i64; 7]); 10] = [
    (14, [1, 0, 1, 1, 0, 0, 0]),
    (18, [0, 0, 0, 1, 1, 1, 0]),
    (20, [1, 1, 1, 1, 0, 0, 0]),
    (21, [1, 0, 1, 1, 1, 0, 0]),
    (23, [0, 1, 0, 1, 1, 1, 0]),
    (24, [0, 0, 1, 1, 1, 1, 0]),
    (25, [0, 0, 0, 1, 1, 1, 1]),
    (28, [0, 1, 1, 2, 1, 0, 0]),
    (31, [0, 0, 1, 1, 1, 1, 1]),
    (36, [0, 1, 1, 1, 1, 1, 1]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanType {
    pub name: String,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanType {
    /// Parse the bundled plain-text format: first line `name rank`, then
    /// `rank` whitespace-separated matrix rows.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::CartanData("empty input".into()))?;
        let mut it = header.split_whitespace();
        let name = it
            .next()
            .ok_or_else(|| Error::CartanData("missing name".into()))?
            .to_string();
        let rank: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CartanData("missing or invalid rank".into()))?;
        if rank == 0 {
            return Err(Error::CartanData("rank must be positive".into()));
        }
        let mut matrix = Vec::with_capacity(rank);
        for _ in 0..rank {
            let line = lines
                .next()
                .ok_or_else(|| Error::CartanData("too few matrix rows".into()))?;
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::CartanData(format!("bad entry {s:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != rank {
                return Err(Error::CartanData(format!(
                    "row has {} entries, expected {rank}",
                    row.len()
                )));
            }
            matrix.push(row);
        }
        let ct = CartanType { name, rank, matrix };
        ct.validate()?;
        Ok(ct)
    }

    /// A bundled type by name: `E7`, `D6`, `A1`, `A2`, `A3`.
    pub fn builtin(name: &str) -> Result<Self> {
        let text = match name.to_ascii_uppercase().as_str() {
            "E7" => include_str!("../data/e7.cartan"),
            "D6" => include_str!("../data/d6.cartan"),
            "A1" => include_str!("../data/a1.cartan"),
            "A2" => include_str!("../data/a2.cartan"),
            "A3" => include_str!("../data/a3.cartan"),
            other => {
                return Err(Error::CartanData(format!("no bundled Cartan data for {other:?}")))
            }
        };
        Self::parse(text)
    }

    /// Reference Cartan matrix of a single irreducible type, Bourbaki node
    /// order. Used for subsystem classification.
    pub fn reference(kind: char, rank: usize) -> Result<Self> {
        let mut m = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            m[i][i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            m[i][j] = -1;
            m[j][i] = -1;
        };
        match (kind, rank) {
            ('A', r) if r >= 1 => {
                for i in 1..r {
                    link(i - 1, i);
                }
            }
            ('D', r) if r >= 3 => {
                for i in 1..(r - 2) {
                    link(i - 1, i);
                }
                link(r - 3, r - 2);
                link(r - 3, r - 1);
            }
            ('E', r) if (6..=8).contains(&r) => {
                // chain 1-3-4-5-...-r with node 2 attached to node 4
                link(0, 2);
                for i in 3..r {
                    link(i - 1, i);
                }
                link(1, 3);
            }
            _ => {
                return Err(Error::CartanData(format!(
                    "unsupported reference type {kind}{rank}"
                )))
            }
        }
        let ct = CartanType {
            name: format!("{kind}{rank}"),
            rank,
            matrix: m,
        };
        ct.validate()?;
        Ok(ct)
    }

    /// Block-diagonal sum, e.g. `D6 + A1 -> D6xA1`.
    pub fn direct_sum(&self, other: &CartanType) -> Result<Self> {
        let rank = self.rank + other.rank;
        let mut m = vec![vec![0i64; rank]; rank];
        for i in 0..self.rank {
            m[i][..self.rank].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..other.rank {
            m[self.rank + i][self.rank..].copy_from_slice(&other.matrix[i]);
        }
        let ct = CartanType {
            name: format!("{}x{}", self.name, other.name),
            rank,
            matrix: m,
        };
        ct.validate()?;
        Ok(ct)
    }

    /// Diagonal 2, off-diagonal <= 0, zero pattern symmetric, symmetrization
    /// positive definite (finite type).
    pub fn validate(&self) -> Result<()> {
        let a = &self.matrix;
        let r = self.rank;
        for i in 0..r {
            if a[i][i] != 2 {
                return Err(Error::CartanData(format!("diagonal entry ({i},{i}) != 2")));
            }
            for j in 0..r {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::CartanData(format!(
                            "positive off-diagonal entry at ({i},{j})"
                        )));
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(Error::CartanData(format!(
                            "asymmetric zero pattern at ({i},{j})"
                        )));
                    }
                }
            }
        }
        // symmetrizer d with d_i a_ij = d_j a_ji, by graph propagation
        let mut d = vec![(0i64, 0i64); r]; // rationals (num, den), 0/0 = unset
        d[0] = (1, 1);
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i != j && a[i][j] != 0 && d[j].1 == 0 {
                    // d_j = d_i * a_ij / a_ji
                    d[j] = (d[i].0 * a[i][j], d[i].1 * a[j][i]);
                    stack.push(j);
                }
            }
        }
        // disconnected pieces start fresh
        for s in 0..r {
            if d[s].1 == 0 {
                d[s] = (1, 1);
                let mut stack = vec![s];
                while let Some(i) = stack.pop() {
                    for j in 0..r {
                        if i != j && a[i][j] != 0 && d[j].1 == 0 {
                            d[j] = (d[i].0 * a[i][j], d[i].1 * a[j][i]);
                            stack.push(j);
                        }
                    }
                }
            }
        }
        // clear denominators; check positive definiteness of (d_i a_ij)
        let den: i64 = d.iter().map(|&(_, q)| q.abs()).product();
        let sym: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let di = d[i].0 * (den / d[i].1);
                (0..r).map(|j| di * a[i][j]).collect()
            })
            .collect();
        for k in 1..=r {
            let minor: Vec<Vec<i64>> = (0..k).map(|i| sym[i][..k].to_vec()).collect();
            let det = det_bareiss(&minor).ok_or_else(|| {
                Error::NotFiniteType("determinant overflow in finiteness check".into())
            })?;
            if det <= 0 {
                return Err(Error::NotFiniteType(format!(
                    "leading principal minor {k} of the symmetrization is not positive"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub height: i64,
    /// 1-based position in the canonical ordering.
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ctype: CartanType,
    pub positive_roots: Vec<Root>,
    /// `reflection_table[i][s]` = signed 1-based index of s_s(alpha_{i+1});
    /// negative means the image is a negative root.
    pub reflection_table: Vec<Vec<i64>>,
    index_of: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.positive_roots[index - 1]
    }

    /// Signed 1-based index of a coefficient vector, if it is a root.
    pub fn signed_index_of(&self, coeffs: &[i64]) -> Option<i64> {
        if let Some(&i) = self.index_of.get(coeffs) {
            return Some(i as i64);
        }
        let neg: Vec<i64> = coeffs.iter().map(|&c| -c).collect();
        self.index_of.get(&neg).map(|&i| -(i as i64))
    }

    /// Pairing <alpha, beta^vee> for coefficient vectors (simply laced).
    pub fn pairing(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let a = &self.ctype.matrix;
        let r = self.rank();
        let mut s = 0;
        for j in 0..r {
            for i in 0..r {
                s += alpha[i] * a[i][j] * beta[j];
            }
        }
        // (alpha, beta) with all roots of squared length 2: pairing = (alpha, beta)
        s
    }

    /// Number of positive roots per height, ascending heights.
    pub fn height_distribution(&self) -> Vec<usize> {
        let max_h = self
            .positive_roots
            .iter()
            .map(|r| r.height)
            .max()
            .unwrap_or(0) as usize;
        let mut counts = vec![0usize; max_h];
        for r in &self.positive_roots {
            counts[(r.height - 1) as usize] += 1;
        }
        counts
    }

    /// Degrees d_1 <= ... <= d_r of the basic invariants (exponents + 1),
    /// read off the height distribution by partition conjugation.
    pub fn invariant_degrees(&self) -> Vec<u64> {
        let counts = self.height_distribution();
        let rank = self.rank();
        let mut degrees = Vec::with_capacity(rank);
        for k in 0..rank {
            let exp = counts.iter().filter(|&&c| c > k).count() as u64;
            degrees.push(exp + 1);
        }
        degrees.sort_unstable();
        degrees
    }

    /// |W| = product of the invariant degrees.
    pub fn weyl_order(&self) -> u64 {
        self.invariant_degrees().iter().product()
    }
}

/// Construct the root system: closure of the simple roots under simple
/// reflections, then the canonical ordering (height ascending, coefficient
/// vectors lexicographically descending within a height).
pub fn build_root_system(ctype: CartanType) -> Result<RootSystem> {
    ctype.validate()?;
    let r = ctype.rank;
    let a = &ctype.matrix;
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let mut c = vec![0i64; r];
        c[i] = 1;
        seen.insert(c.clone(), ());
        queue.push(c);
    }
    while let Some(c) = queue.pop() {
        for s in 0..r {
            // s_s(alpha) = alpha - <alpha, alpha_s^vee> alpha_s
            let pair: i64 = (0..r).map(|j| c[j] * a[j][s]).sum();
            let mut img = c.clone();
            img[s] -= pair;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) {
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push(img);
                }
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_keys().collect();
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x)) // lex descending
    });
    let positive_roots: Vec<Root> = roots
        .into_iter()
        .enumerate()
        .map(|(i, coeffs)| Root {
            height: coeffs.iter().sum(),
            index: i + 1,
            coeffs,
        })
        .collect();
    let index_of: HashMap<Vec<i64>, usize> = positive_roots
        .iter()
        .map(|rt| (rt.coeffs.clone(), rt.index))
        .collect();
    let mut reflection_table = Vec::with_capacity(positive_roots.len());
    for rt in &positive_roots {
        let mut row = Vec::with_capacity(r);
        for s in 0..r {
            let pair: i64 = (0..r).map(|j| rt.coeffs[j] * a[j][s]).sum();
            let mut img = rt.coeffs.clone();
            img[s] -= pair;
            let si = if img.iter().all(|&x| x >= 0) {
                *index_of
                    .get(&img)
                    .ok_or_else(|| Error::NotFiniteType("closure failure".into()))?
                    as i64
            } else {
                let neg: Vec<i64> = img.iter().map(|&x| -x).collect();
                -(*index_of
                    .get(&neg)
                    .ok_or_else(|| Error::NotFiniteType("closure failure".into()))?
                    as i64)
            };
            row.push(si);
        }
        reflection_table.push(row);
    }
    let rs = RootSystem {
        ctype,
        positive_roots,
        reflection_table,
        index_of,
    };
    // simple roots must occupy indices 1..rank
    for i in 0..r {
        let rt = &rs.positive_roots[i];
        if rt.height != 1 || rt.coeffs[i] != 1 {
            return Err(Error::NotFiniteType(
                "canonical ordering does not place simple roots first".into(),
            ));
        }
    }
    Ok(rs)
}

/// Map from canonical indices to the printed anchor indices; expected to be
/// the identity on the ten anchors.
#[derive(Debug, Clone, Serialize)]
pub struct PaperIndexMap {
    /// (printed index, canonical index) per anchor.
    pub anchors: Vec<(usize, usize)>,
}

impl PaperIndexMap {
    pub fn is_identity(&self) -> bool {
        self.anchors.iter().all(|&(a, b)| a == b)
    }
}

pub fn validate_paper_indexing(rs: &RootSystem) -> Result<PaperIndexMap> {
    if rs.rank() != 7 {
        return Err(Error::RankMismatch {
            expected: 7,
            got: rs.rank(),
        });
    }
    let mut anchors = Vec::with_capacity(ANCHOR_ROOTS.len());
    for (printed, coeffs) in ANCHOR_ROOTS {
        let found = rs
            .signed_index_of(&coeffs)
            .filter(|&i| i > 0)
            .ok_or_else(|| {
                Error::Anchor(format!("anchor root {printed} with coefficients {coeffs:?} not found"))
            })?;
        anchors.push((printed, found as usize));
    }
    let map = PaperIndexMap { anchors };
    if !map.is_identity() {
        return Err(Error::Anchor(format!(
            "indexing convention broken: anchors map to {:?}",
            map.anchors
        )));
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    pub simple_weights: Vec<i64>,
}

impl WeightFunction {
    pub fn new(simple_weights: Vec<i64>) -> Result<Self> {
        if !simple_weights.iter().all(|w| (0..=2).contains(w)) {
            return Err(Error::CartanData(
                "weighted Dynkin diagram entries must be 0, 1 or 2".into(),
            ));
        }
        Ok(WeightFunction { simple_weights })
    }

    /// The Table 1 diagram on the simple roots of E7.
    pub fn table1() -> Self {
        WeightFunction {
            simple_weights: T_EXPS.to_vec(),
        }
    }
}

/// d(root) = coefficient-weighted sum of the simple weights.
pub fn extend_weight(d: &WeightFunction, root: &Root) -> Result<i64> {
    if d.simple_weights.len() != root.coeffs.len() {
        return Err(Error::RankMismatch {
            expected: d.simple_weights.len(),
            got: root.coeffs.len(),
        });
    }
    Ok(root
        .coeffs
        .iter()
        .zip(&d.simple_weights)
        .map(|(c, w)| c * w)
        .sum())
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerCounts {
    /// value -> number of positive roots with that weight
    pub counts: Vec<(i64, usize)>,
    /// half of #{d = 1}; the induced-index exponent
    pub m: usize,
}

pub fn layer_counts(rs: &RootSystem, d: &WeightFunction) -> Result<LayerCounts> {
    let mut map: std::collections::BTreeMap<i64, usize> = Default::default();
    for rt in &rs.positive_roots {
        *map.entry(extend_weight(d, rt)?).or_insert(0) += 1;
    }
    let ones = map.get(&1).copied().unwrap_or(0);
    if ones % 2 != 0 {
        return Err(Error::CheckFailed(format!(
            "#{{d=1}} = {ones} is odd; the induced index is not an integer power"
        )));
    }
    Ok(LayerCounts {
        counts: map.into_iter().collect(),
        m: ones / 2,
    })
}

/// A semisimple torus element as an exponent vector over an abstract cyclic
/// value group with fixed generator; `modulus == 0` means formal (no
/// reduction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusPoint {
    pub modulus: u64,
    pub exps: Vec<i64>,
}

impl TorusPoint {
    pub fn new(modulus: u64, exps: Vec<i64>) -> Self {
        let mut t = TorusPoint { modulus, exps };
        t.reduce();
        t
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint {
            modulus: 1,
            exps: vec![0; rank],
        }
    }

    /// s1 = h(-1,1,1,-1,1,-1,1) as an order-2 exponent vector.
    pub fn s1() -> Self {
        TorusPoint::new(2, T_EXPS.to_vec())
    }

    /// t = h(v,1,1,v,1,v,1) with v a square root of the prime-field
    /// generator; exponent units are that square root.
    pub fn t_element(p: u64) -> Self {
        TorusPoint::new(2 * (p - 1), T_EXPS.to_vec())
    }

    /// The one-parameter curve S(x) = h(x,x^-2,x^-2,x^3,x^-2,x,1), formal.
    pub fn s_curve() -> Self {
        TorusPoint {
            modulus: 0,
            exps: S_CURVE_EXPS.to_vec(),
        }
    }

    fn reduce(&mut self) {
        if self.modulus > 0 {
            let n = self.modulus as i64;
            for e in &mut self.exps {
                *e = e.rem_euclid(n);
            }
        }
    }
}

/// Exponent of the value of a root at a torus point.
pub fn eval_root_at(t: &TorusPoint, root: &Root) -> Result<i64> {
    if t.exps.len() != root.coeffs.len() {
        return Err(Error::RankMismatch {
            expected: t.exps.len(),
            got: root.coeffs.len(),
        });
    }
    let e: i64 = root.coeffs.iter().zip(&t.exps).map(|(c, x)| c * x).sum();
    Ok(if t.modulus > 0 {
        e.rem_euclid(t.modulus as i64)
    } else {
        e
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusReport {
    /// exponent of each involved root at t (expected 2 throughout)
    pub t_exponents: Vec<(usize, i64)>,
    /// number of positive roots with d = 0, all checked to evaluate trivially at t
    pub zero_weight_roots_checked: usize,
    /// exponent of each involved root at s1 (expected 0 mod 2)
    pub s1_exponents: Vec<(usize, i64)>,
    /// exponent of each y74-support root on the S-curve (expected 0)
    pub s_curve_exponents: Vec<(usize, i64)>,
}

/// Verify the torus claims for the Table 1 diagram: the involved roots see
/// the generator squared at t, zero-weight roots evaluate trivially at t,
/// s1 is trivial on the involved roots, and the S-curve kills y74's support.
pub fn check_torus_claims(rs: &RootSystem, d: &WeightFunction) -> Result<TorusReport> {
    let t = TorusPoint {
        modulus: 0,
        exps: T_EXPS.to_vec(),
    };
    let s1 = TorusPoint::s1();
    let s = TorusPoint::s_curve();
    let mut t_exponents = Vec::new();
    for idx in INVOLVED_ROOTS {
        let e = eval_root_at(&t, rs.root(idx))?;
        if e != 2 {
            return Err(Error::TorusClaim(format!(
                "root {idx} has t-exponent {e}, expected 2"
            )));
        }
        t_exponents.push((idx, e));
    }
    let mut zero_checked = 0;
    for rt in &rs.positive_roots {
        if extend_weight(d, rt)? == 0 {
            let e = eval_root_at(&t, rt)?;
            if e != 0 {
                return Err(Error::TorusClaim(format!(
                    "root {} has d = 0 but t-exponent {e}",
                    rt.index
                )));
            }
            zero_checked += 1;
        }
    }
    let mut s1_exponents = Vec::new();
    for idx in INVOLVED_ROOTS {
        let e = eval_root_at(&s1, rs.root(idx))?;
        if e != 0 {
            return Err(Error::TorusClaim(format!(
                "root {idx} has s1-exponent {e}, expected 0"
            )));
        }
        s1_exponents.push((idx, e));
    }
    let mut s_curve_exponents = Vec::new();
    for idx in Y74_SUPPORT {
        let e = eval_root_at(&s, rs.root(idx))?;
        if e != 0 {
            return Err(Error::TorusClaim(format!(
                "root {idx} has S-curve exponent {e}, expected 0"
            )));
        }
        s_curve_exponents.push((idx, e));
    }
    Ok(TorusReport {
        t_exponents,
        zero_weight_roots_checked: zero_checked,
        s1_exponents,
        s_curve_exponents,
    })
}

/// Render the indexed root list as plain text.
pub fn format_roots(rs: &RootSystem) -> String {
    let mut out = String::new();
    for rt in &rs.positive_roots {
        let _ = writeln!(
            out,
            "{:>3}  h={:<2} {:?}",
            rt.index, rt.height, rt.coeffs
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e7_has_63_positive_roots() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        assert_eq!(rs.num_positive(), 63);
        assert_eq!(rs.weyl_order(), 2_903_040);
        assert_eq!(rs.invariant_degrees(), vec![2, 6, 8, 10, 12, 14, 18]);
    }

    #[test]
    fn a1_single_root() {
        let rs = build_root_system(CartanType::builtin("A1").unwrap()).unwrap();
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.root(1).coeffs, vec![1]);
    }

    #[test]
    fn d6_counts_and_degrees() {
        let rs = build_root_system(CartanType::builtin("D6").unwrap()).unwrap();
        assert_eq!(rs.num_positive(), 30);
        assert_eq!(rs.invariant_degrees(), vec![2, 4, 6, 6, 8, 10]);
        assert_eq!(rs.weyl_order(), 23_040);
    }

    #[test]
    fn e7_root_28() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        assert_eq!(rs.root(28).coeffs, vec![0, 1, 1, 2, 1, 0, 0]);
    }

    #[test]
    fn anchors_are_identity() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        let map = validate_paper_indexing(&rs).unwrap();
        assert!(map.is_identity());
        // simple roots first
        assert_eq!(rs.root(7).coeffs, vec![0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn extend_weight_examples() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        let d = WeightFunction::table1();
        assert_eq!(extend_weight(&d, rs.root(28)).unwrap(), 2);
        assert_eq!(extend_weight(&d, rs.root(1)).unwrap(), 1);
        let highest = rs.positive_roots.last().unwrap();
        assert_eq!(highest.coeffs, vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(extend_weight(&d, highest).unwrap(), 8);
    }

    #[test]
    fn layer_counts_all_zero_and_all_two() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        let zero = WeightFunction::new(vec![0; 7]).unwrap();
        let lc = layer_counts(&rs, &zero).unwrap();
        assert_eq!(lc.counts, vec![(0, 63)]);
        let two = WeightFunction::new(vec![2; 7]).unwrap();
        let lc = layer_counts(&rs, &two).unwrap();
        assert_eq!(lc.counts.last(), Some(&(34, 1)));
        assert_eq!(lc.counts.iter().map(|&(_, c)| c).sum::<usize>(), 63);
    }

    #[test]
    fn table1_layer_counts_have_even_ones() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        let lc = layer_counts(&rs, &WeightFunction::table1()).unwrap();
        assert!(lc.m >= 1);
        // independent count of #{d = 1}
        let ones = rs
            .positive_roots
            .iter()
            .filter(|rt| {
                rt.coeffs
                    .iter()
                    .zip(T_EXPS.iter())
                    .map(|(c, w)| c * w)
                    .sum::<i64>()
                    == 1
            })
            .count();
        assert_eq!(ones % 2, 0);
        assert_eq!(lc.m, ones / 2);
    }

    #[test]
    fn torus_evaluations() {
        let rs = build_root_system(CartanType::builtin("E7").unwrap()).unwrap();
        let s1 = TorusPoint::s1();
        assert_eq!(eval_root_at(&s1, rs.root(20)).unwrap(), 0);
        assert_eq!(eval_root_at(&s1, rs.root(25)).unwrap(), 0);
        let s = TorusPoint::s_curve();
        assert_eq!(eval_root_at(&s, rs.root(25)).unwrap(), 2);
        assert_eq!(eval_root_at(&s, rs.root(20)).unwrap(), 0);
        let id = TorusPoint::identity(7);
        assert_eq!(eval_root_at(&id, rs.root(36)).unwrap(), 0);
        let report = check_torus_claims(&rs, &WeightFunction::table1()).unwrap();
        assert!(report.zero_weight_roots_checked > 0);
    }

    #[test]
    fn height_grading_matches_edges() {
        for name in ["A2", "A3", "D6", "E7"] {
            let ct = CartanType::builtin(name).unwrap();
            let edges: usize = (0..ct.rank)
                .map(|i| (i + 1..ct.rank).filter(|&j| ct.matrix[i][j] != 0).count())
                .sum();
            let rs = build_root_system(ct).unwrap();
            let dist = rs.height_distribution();
            assert_eq!(dist[0], rs.rank());
            if rs.rank() > 1 {
                assert_eq!(dist[1], edges);
            }
        }
    }

    #[test]
    fn rejects_non_finite_type() {
        // affine A1 tilde
        let text = "A1t 2\n2 -2\n-2 2\n";
        let ct = CartanType::parse(text);
        assert!(ct.is_err());
    }
}
