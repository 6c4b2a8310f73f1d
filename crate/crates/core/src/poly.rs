//! Integer polynomial arithmetic (i128 coefficients) used by the fake-degree
//! formula, characteristic polynomials and cyclotomic reduction.

/// Coefficients in ascending degree order; the zero polynomial is `[]`.
pub type IPoly = Vec<i128>;

pub fn trim(p: &mut IPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &IPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn add(a: &IPoly, b: &IPoly) -> IPoly {
    let mut r = vec![0i128; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        r[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        r[i] += c;
    }
    trim(&mut r);
    r
}

pub fn scale(a: &IPoly, s: i128) -> IPoly {
    if s == 0 {
        return vec![];
    }
    a.iter().map(|&c| c * s).collect()
}

pub fn mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

/// Exact division; `None` if `b` does not divide `a` over the integers.
pub fn div_exact(a: &IPoly, b: &IPoly) -> Option<IPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.is_empty() {
        return Some(vec![]);
    }
    if rem.len() < b.len() {
        return None;
    }
    let lead = *b.last().unwrap();
    let mut quot = vec![0i128; rem.len() - b.len() + 1];
    for qd in (0..quot.len()).rev() {
        let c = rem[qd + b.len() - 1];
        if c % lead != 0 {
            return None;
        }
        let q = c / lead;
        quot[qd] = q;
        if q != 0 {
            for (j, &bc) in b.iter().enumerate() {
                rem[qd + j] -= q * bc;
            }
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub fn rem_monic(a: &IPoly, m: &IPoly) -> IPoly {
    assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut rem = a.clone();
    trim(&mut rem);
    while rem.len() >= m.len() {
        let q = *rem.last().unwrap();
        let shift = rem.len() - m.len();
        for (j, &mc) in m.iter().enumerate() {
            rem[shift + j] -= q * mc;
        }
        trim(&mut rem);
    }
    rem
}

pub fn eval(p: &IPoly, x: i128) -> i128 {
    let mut v = 0i128;
    for &c in p.iter().rev() {
        v = v * x + c;
    }
    v
}

/// `x^n - 1`.
pub fn xn_minus_one(n: usize) -> IPoly {
    let mut p = vec![0i128; n + 1];
    p[0] = -1;
    p[n] = 1;
    p
}

/// Characteristic polynomial `det(x I - M)` of a small integer matrix, by the
/// Faddeev–LeVerrier recursion (all divisions are exact over the integers).
pub fn char_poly(m: &[Vec<i128>]) -> IPoly {
    let n = m.len();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    // aux = M * (prev + c * I)
    let mut prev: Vec<Vec<i128>> = vec![vec![0; n]; n];
    let mut c = 1i128; // coefficient just computed, starts at leading 1
    for step in 1..=n {
        let mut aux = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for k in 0..n {
                    let b = prev[k][j] + if k == j { c } else { 0 };
                    s += m[i][k] * b;
                }
                aux[i][j] = s;
            }
        }
        let tr: i128 = (0..n).map(|i| aux[i][i]).sum();
        assert_eq!(tr % step as i128, 0);
        c = -tr / step as i128;
        coeffs[n - step] = c;
        prev = aux;
    }
    coeffs
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IPoly {
    let mut p = xn_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let cd = cyclotomic(d);
            p = div_exact(&p, &cd).expect("cyclotomic division is exact");
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_products_exactly() {
        let a = vec![-1i128, 1]; // x - 1
        let b = vec![1i128, 1, 1]; // x^2 + x + 1
        let p = mul(&a, &b);
        assert_eq!(p, xn_minus_one(3));
        assert_eq!(div_exact(&p, &b), Some(a));
    }

    #[test]
    fn char_poly_of_companion() {
        // companion matrix of x^2 - x - 1
        let m = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(char_poly(&m), vec![-1, -1, 1]);
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }
}
