//! Small exact integer linear algebra: Smith normal form with column
//! transform, and unimodular matrix inversion.

/// Result of a Smith normal form computation for an `m x n` integer matrix.
///
/// `divisors` are the nonzero elementary divisors d_1 | d_2 | ... ;
/// `col_transform` is the accumulated unimodular column operation matrix `E`
/// (n x n) such that `M * E` is in Smith form up to row operations: the
/// solution set of `M x in Z^m` is spanned by the columns of `E` scaled by
/// `1/d_i` (and freely for columns beyond the rank).
#[derive(Debug, Clone)]
pub struct Snf {
    /// Canonical elementary divisors (divisibility chain enforced).
    pub divisors: Vec<i64>,
    /// Raw diagonal consistent with `col_transform` (no chain enforced).
    pub diagonal: Vec<i64>,
    pub col_transform: Vec<Vec<i64>>,
    pub rank: usize,
}

pub fn smith_normal_form(mat: &[Vec<i64>]) -> Snf {
    let m = mat.len();
    let n = if m == 0 { 0 } else { mat[0].len() };
    let mut a: Vec<Vec<i64>> = mat.to_vec();
    let mut e: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();

    let swap_cols = |a: &mut Vec<Vec<i64>>, e: &mut Vec<Vec<i64>>, c1: usize, c2: usize| {
        for row in a.iter_mut() {
            row.swap(c1, c2);
        }
        for row in e.iter_mut() {
            row.swap(c1, c2);
        }
    };
    // col[c2] += k * col[c1]
    let add_col = |a: &mut Vec<Vec<i64>>, e: &mut Vec<Vec<i64>>, c1: usize, c2: usize, k: i64| {
        for row in a.iter_mut() {
            row[c2] += k * row[c1];
        }
        for row in e.iter_mut() {
            row[c2] += k * row[c1];
        }
    };

    let mut t = 0usize; // current pivot position
    while t < m.min(n) {
        // find a nonzero pivot in the remaining block
        let mut pivot = None;
        'search: for i in t..m {
            for j in t..n {
                if a[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        if pj != t {
            swap_cols(&mut a, &mut e, t, pj);
        }
        loop {
            // clear the pivot row with column operations
            let mut done = true;
            for j in (t + 1)..n {
                if a[t][j] != 0 {
                    let k = a[t][j] / a[t][t];
                    add_col(&mut a, &mut e, t, j, -k);
                    if a[t][j] != 0 {
                        swap_cols(&mut a, &mut e, t, j);
                        done = false;
                    }
                }
            }
            // clear the pivot column with row operations
            for i in (t + 1)..m {
                if a[i][t] != 0 {
                    let k = a[i][t] / a[t][t];
                    let (head, tail) = a.split_at_mut(i);
                    for j in 0..n {
                        tail[0][j] -= k * head[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        t += 1;
    }
    let rank = t;
    // `col_transform` is consistent with the raw diagonal; the canonical
    // elementary divisors are obtained by gcd/lcm massaging of a copy.
    let diagonal: Vec<i64> = (0..rank).map(|i| a[i][i].abs()).collect();
    let mut divisors = diagonal.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..divisors.len().saturating_sub(1) {
            for j in (i + 1)..divisors.len() {
                if divisors[j] % divisors[i] != 0 {
                    let g = gcd(divisors[i], divisors[j]);
                    let l = divisors[i] / g * divisors[j];
                    divisors[i] = g;
                    divisors[j] = l;
                    changed = true;
                }
            }
        }
    }
    Snf {
        divisors,
        diagonal,
        col_transform: e,
        rank,
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of a unimodular integer matrix (det = ±1), by adjugate.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let det = det_bareiss(m)?;
    if det != 1 && det != -1 {
        return None;
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c])
                        .collect::<Vec<_>>()
                })
                .collect();
            let md = if minor.is_empty() {
                1
            } else {
                det_bareiss(&minor)?
            };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = sign * md * det; // det = ±1 so this is adj/det
        }
    }
    Some(inv)
}

/// Fraction-free determinant (Bareiss) of a small integer matrix.
pub fn det_bareiss(m: &[Vec<i64>]) -> Option<i64> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                debug_assert_eq!(num % prev, 0);
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let d = sign * a[n - 1][n - 1];
    i64::try_from(d).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_diag() {
        let m = vec![vec![2, 4], vec![6, 8]];
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![2, 4]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn snf_rect_rank_deficient() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, vec![1]);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(det_bareiss(&m), Some(1));
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![1, -1], vec![-1, 2]]);
    }
}
