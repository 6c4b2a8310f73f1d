//! Lusztig symbol combinatorics for type D at rank 6 (optionally tensored
//! with the rank-1 factor): families, a-invariants, the small Fourier
//! matrices, and almost-character differences expanded in the unipotent
//! basis.

use serde::Serialize;

use crate::chartab::{CharLabel, CharTable};
use crate::error::{Error, Result};

/// A reduced two-row symbol; `rows.0 <= rows.1` lexicographically. The
/// defect is the absolute row-length difference.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub rows: (Vec<i64>, Vec<i64>),
}

impl Symbol {
    pub fn defect(&self) -> usize {
        self.rows.0.len().abs_diff(self.rows.1.len())
    }

    /// All entries with multiplicity, sorted: the family invariant.
    pub fn entry_multiset(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self
            .rows
            .0
            .iter()
            .chain(self.rows.1.iter())
            .copied()
            .collect();
        e.sort_unstable();
        e
    }

    pub fn is_degenerate(&self) -> bool {
        self.rows.0 == self.rows.1
    }

    fn normalize(mut top: Vec<i64>, mut bot: Vec<i64>) -> Symbol {
        top.sort_unstable();
        bot.sort_unstable();
        // reduction: strip common leading 0 and shift
        while top.first() == Some(&0) && bot.first() == Some(&0) {
            top.remove(0);
            bot.remove(0);
            for x in top.iter_mut().chain(bot.iter_mut()) {
                *x -= 1;
            }
        }
        if bot < top {
            std::mem::swap(&mut top, &mut bot);
        }
        Symbol { rows: (top, bot) }
    }

    pub fn display(&self) -> String {
        let fmt_row = |r: &[i64]| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("({};{})", fmt_row(&self.rows.0), fmt_row(&self.rows.1))
    }
}

fn beta_row(p: &[u32], len: usize) -> Vec<i64> {
    let mut b: Vec<i64> = (0..len)
        .map(|i| {
            let part = if i < p.len() { p[i] as i64 } else { 0 };
            part + (len as i64 - 1 - i as i64)
        })
        .collect();
    b.sort_unstable();
    b
}

/// The canonical reduced defect-0 symbol of a type-D bipartition.
pub fn symbol_of_bipartition(lambda: &[u32], mu: &[u32]) -> Result<Symbol> {
    let len = lambda.len().max(mu.len()).max(1);
    let s = Symbol::normalize(beta_row(lambda, len), beta_row(mu, len));
    if s.is_degenerate() {
        return Err(Error::Family(format!(
            "degenerate bipartition [{lambda:?},{lambda:?}] has no non-degenerate symbol"
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    pub symbol: Symbol,
    /// Table row when this member lies in Irr(W); `None` for the
    /// cuspidal-type defect-4 member.
    pub row: Option<usize>,
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub members: Vec<FamilyMember>,
    /// Indices into `members` of the Weyl-group rows.
    pub weyl_members: Vec<usize>,
    pub special_member: usize,
    pub a_value: i64,
}

impl Family {
    pub fn member_of_row(&self, row: usize) -> Option<usize> {
        self.members.iter().position(|m| m.row == Some(row))
    }
}

/// Bipartition part of a row label (D6 table or D6 x A1 product), plus the
/// factor tag distinguishing families of the product.
fn label_parts(label: &CharLabel) -> Option<(&CharLabel, String)> {
    match label {
        CharLabel::Bipartition(..) | CharLabel::SplitBipartition(..) => {
            Some((label, String::new()))
        }
        CharLabel::Product(a, b) => match a.as_ref() {
            CharLabel::Bipartition(..) | CharLabel::SplitBipartition(..) => {
                Some((a.as_ref(), b.to_string()))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Partition Irr into families: non-degenerate rows grouped by symbol entry
/// multiset (and product factor), degenerate (split) rows in singleton
/// families. Each size-3 Weyl group is completed by its defect-4
/// cuspidal-type member. a = min b over Weyl members, attained uniquely at
/// the special (interleaved) symbol.
pub fn families(table: &CharTable) -> Result<Vec<Family>> {
    let bs = table
        .b_invariants
        .as_ref()
        .ok_or_else(|| Error::Family("b-invariants not computed".into()))?;
    let mut groups: std::collections::BTreeMap<(Vec<i64>, String), Vec<(usize, Symbol)>> =
        Default::default();
    let mut singletons: Vec<(usize, Symbol)> = Vec::new();
    for (row, label) in table.labels.iter().enumerate() {
        let (bip, tag) = label_parts(label).ok_or_else(|| {
            Error::Family(format!("row {row} has no bipartition label: {label}"))
        })?;
        match bip {
            CharLabel::Bipartition(la, mu) => {
                let s = symbol_of_bipartition(la, mu)?;
                groups
                    .entry((s.entry_multiset(), tag))
                    .or_default()
                    .push((row, s));
            }
            CharLabel::SplitBipartition(la, _) => {
                let len = la.len().max(1);
                let s = Symbol::normalize(beta_row(la, len), beta_row(la, len));
                singletons.push((row, s));
            }
            _ => unreachable!(),
        }
    }
    let mut out = Vec::new();
    for ((entries, tag), mut rows) in groups {
        rows.sort_by(|a, b| a.1.cmp(&b.1));
        match rows.len() {
            1 => {
                let (row, symbol) = rows.pop().unwrap();
                out.push(Family {
                    members: vec![FamilyMember {
                        symbol,
                        row: Some(row),
                        name: table.labels[row].to_string(),
                    }],
                    weyl_members: vec![0],
                    special_member: 0,
                    a_value: bs[row],
                });
            }
            3 => {
                // four distinct singles; the special symbol interleaves them
                let mut singles: Vec<i64> = Vec::new();
                let mut doubles: Vec<i64> = Vec::new();
                let mut i = 0;
                while i < entries.len() {
                    if i + 1 < entries.len() && entries[i] == entries[i + 1] {
                        doubles.push(entries[i]);
                        i += 2;
                    } else {
                        singles.push(entries[i]);
                        i += 1;
                    }
                }
                if singles.len() != 4 {
                    return Err(Error::Family(format!(
                        "size-3 Weyl family with {} singles",
                        singles.len()
                    )));
                }
                let special_symbol = Symbol::normalize(
                    [singles[0], singles[2]]
                        .iter()
                        .chain(doubles.iter())
                        .copied()
                        .collect(),
                    [singles[1], singles[3]]
                        .iter()
                        .chain(doubles.iter())
                        .copied()
                        .collect(),
                );
                // min b must be attained once, at the interleaved symbol
                let min_b = rows.iter().map(|&(r, _)| bs[r]).min().unwrap();
                let argmin: Vec<&(usize, Symbol)> =
                    rows.iter().filter(|&&(r, _)| bs[r] == min_b).collect();
                if argmin.len() != 1 {
                    return Err(Error::Family(
                        "minimal b-invariant attained twice in one family".into(),
                    ));
                }
                let (srow, ssym) = (argmin[0].0, argmin[0].1.clone());
                if ssym != special_symbol {
                    return Err(Error::Family(format!(
                        "special member {} is not the interleaved symbol {}",
                        ssym.display(),
                        special_symbol.display()
                    )));
                }
                let mut members = Vec::new();
                members.push(FamilyMember {
                    symbol: ssym,
                    row: Some(srow),
                    name: table.labels[srow].to_string(),
                });
                for (r, s) in &rows {
                    if *r != srow {
                        members.push(FamilyMember {
                            symbol: s.clone(),
                            row: Some(*r),
                            name: table.labels[*r].to_string(),
                        });
                    }
                }
                let cusp = Symbol::normalize(
                    singles.iter().chain(doubles.iter()).copied().collect(),
                    doubles.clone(),
                );
                let cusp_name = if tag.is_empty() {
                    format!("cuspidal{}", cusp.display())
                } else {
                    format!("cuspidal{}x{}", cusp.display(), tag)
                };
                members.push(FamilyMember {
                    symbol: cusp,
                    row: None,
                    name: cusp_name,
                });
                let weyl_members = vec![0, 1, 2];
                out.push(Family {
                    members,
                    weyl_members,
                    special_member: 0,
                    a_value: min_b,
                });
            }
            n => {
                return Err(Error::Family(format!(
                    "unexpected family with {n} Weyl members"
                )))
            }
        }
    }
    for (row, symbol) in singletons {
        out.push(Family {
            members: vec![FamilyMember {
                symbol,
                row: Some(row),
                name: table.labels[row].to_string(),
            }],
            weyl_members: vec![0],
            special_member: 0,
            a_value: bs[row],
        });
    }
    // partition property
    let mut seen = vec![false; table.values.len()];
    for f in &out {
        for m in &f.members {
            if let Some(r) = m.row {
                if seen[r] {
                    return Err(Error::Family(format!("row {r} in two families")));
                }
                seen[r] = true;
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Family("row missing from all families".into()));
    }
    Ok(out)
}

/// a-invariant of a table row via its family.
pub fn a_invariant(fams: &[Family], row: usize) -> Result<i64> {
    fams.iter()
        .find(|f| f.member_of_row(row).is_some())
        .map(|f| f.a_value)
        .ok_or_else(|| Error::Family(format!("row {row} not in any family")))
}

/// Exact dyadic matrix: entries `num[i][j] / den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierMatrix {
    pub num: Vec<Vec<i64>>,
    pub den: i64,
}

impl FourierMatrix {
    pub fn size(&self) -> usize {
        self.num.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.num[i][j] == self.num[j][i]))
    }

    pub fn is_involution(&self) -> bool {
        let n = self.size();
        let d2 = self.den * self.den;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: i64 = (0..n).map(|k| self.num[i][k] * self.num[k][j]).sum();
                s == if i == j { d2 } else { 0 }
            })
        })
    }
}

/// Lusztig's pairing matrix for a family: trivial for singletons; the Z/2 x
/// Z/2 model for size 4, with members ordered [special, defect-0 pair in
/// canonical symbol order, defect-4] corresponding to the group-character
/// pairs (0,1), (0,e), (1,1), (1,e) and M((x,s),(y,t)) = s(y) t(x) / 2.
pub fn fourier_matrix(family: &Family) -> Result<FourierMatrix> {
    match family.members.len() {
        1 => Ok(FourierMatrix {
            num: vec![vec![1]],
            den: 1,
        }),
        4 => {
            // (x, sigma) with sigma(y) = (-1)^{sigma y}
            let idx = [(0i64, 0i64), (0, 1), (1, 0), (1, 1)];
            let num = idx
                .iter()
                .map(|&(x, s)| {
                    idx.iter()
                        .map(|&(y, t)| {
                            let sign = (s * y + t * x) % 2;
                            if sign == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            let m = FourierMatrix { num, den: 2 };
            if !m.is_symmetric() || !m.is_involution() {
                return Err(Error::Family("Fourier matrix sanity check failed".into()));
            }
            Ok(m)
        }
        n => Err(Error::Family(format!("unsupported family size {n}"))),
    }
}

/// Coefficients over the family members, entries `coeffs[i] / den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostCharExpression {
    pub coeffs: Vec<i64>,
    pub den: i64,
}

impl AlmostCharExpression {
    fn reduced(mut self) -> Self {
        while self.den % 2 == 0 && self.coeffs.iter().all(|c| c % 2 == 0) {
            self.den /= 2;
            for c in self.coeffs.iter_mut() {
                *c /= 2;
            }
        }
        self
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| self.coeffs[i] != 0)
            .collect()
    }
}

/// Expansion of R_{psi1} - R_{psi2} in the unipotent-character basis of the
/// family: the difference of the corresponding Fourier rows.
pub fn almost_difference(
    family: &Family,
    row1: usize,
    row2: usize,
) -> Result<AlmostCharExpression> {
    let m = fourier_matrix(family)?;
    let i1 = family
        .member_of_row(row1)
        .ok_or_else(|| Error::Family(format!("row {row1} not in this family")))?;
    let i2 = family
        .member_of_row(row2)
        .ok_or_else(|| Error::Family(format!("row {row2} not in this family")))?;
    let coeffs: Vec<i64> = (0..m.size())
        .map(|j| m.num[i1][j] - m.num[i2][j])
        .collect();
    Ok(AlmostCharExpression { coeffs, den: m.den }.reduced())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_of_the_paper_pair() {
        let s1 = symbol_of_bipartition(&[2, 1], &[3]).unwrap();
        assert_eq!(s1.rows, (vec![0, 4], vec![1, 3]));
        let s2 = symbol_of_bipartition(&[2], &[3, 1]).unwrap();
        assert_eq!(s2.rows, (vec![0, 3], vec![1, 4]));
        assert_eq!(s1.entry_multiset(), s2.entry_multiset());
        let s3 = symbol_of_bipartition(&[], &[3, 3]).unwrap();
        assert_eq!(s3.rows, (vec![0, 1], vec![3, 4]));
        assert_eq!(s3.entry_multiset(), s1.entry_multiset());
    }

    #[test]
    fn trivial_symbol() {
        let s = symbol_of_bipartition(&[], &[6]).unwrap();
        assert_eq!(s.rows, (vec![0], vec![6]));
        assert_eq!(s.defect(), 0);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(symbol_of_bipartition(&[2, 1], &[2, 1]).is_err());
    }

    #[test]
    fn fourier_four_model() {
        // synthetic family with the paper's symbols
        let mk = |rows: (Vec<i64>, Vec<i64>), row, name: &str| FamilyMember {
            symbol: Symbol { rows },
            row,
            name: name.into(),
        };
        let fam = Family {
            members: vec![
                mk((vec![0, 3], vec![1, 4]), Some(0), "[2,31]"),
                mk((vec![0, 1], vec![3, 4]), Some(1), "[-,33]"),
                mk((vec![0, 4], vec![1, 3]), Some(2), "[21,3]"),
                mk((vec![], vec![0, 1, 3, 4]), None, "cusp"),
            ],
            weyl_members: vec![0, 1, 2],
            special_member: 0,
            a_value: 4,
        };
        let m = fourier_matrix(&fam).unwrap();
        assert_eq!(
            m.num,
            vec![
                vec![1, 1, 1, 1],
                vec![1, 1, -1, -1],
                vec![1, -1, 1, -1],
                vec![1, -1, -1, 1],
            ]
        );
        assert!(m.is_symmetric() && m.is_involution());
        // R_{[21,3]} - R_{[2,31]} = -rho1 - rho2
        let d = almost_difference(&fam, 2, 0).unwrap();
        assert_eq!(d.den, 1);
        assert_eq!(d.coeffs, vec![0, -1, 0, -1]);
        assert_eq!(d.support().len(), 2);
        // trivial difference
        let z = almost_difference(&fam, 0, 0).unwrap();
        assert!(z.coeffs.iter().all(|&c| c == 0));
    }
}
