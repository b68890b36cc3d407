//! Reference computations for the test suites, written against plain `i128`
//! coefficient vectors and closed formulas so they share no code with the
//! library beyond the types being compared.

#![allow(dead_code)]

use cohsys::exact::IntPoly;

pub type Series = Vec<i128>;

pub fn trim(mut a: Series) -> Series {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn mul(a: &[i128], b: &[i128]) -> Series {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &[i128], b: &[i128]) -> Series {
    let mut out = vec![0i128; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

pub fn neg(a: &[i128]) -> Series {
    a.iter().map(|x| -x).collect()
}

pub fn pow(a: &[i128], e: u32) -> Series {
    (0..e).fold(vec![1], |acc, _| mul(&acc, a))
}

pub fn t(e: i64) -> Series {
    let mut v = vec![0i128; e as usize + 1];
    v[e as usize] = 1;
    v
}

pub fn one_minus(e: i64) -> Series {
    add(&[1], &neg(&t(e)))
}

pub fn one_plus(e: i64) -> Series {
    add(&[1], &t(e))
}

/// `num / den` for `den` with constant term 1, by power-series inversion;
/// panics unless the division is exact.
pub fn div(num: &[i128], den: &[i128]) -> Series {
    assert_eq!(den.first(), Some(&1), "denominator must start with 1");
    let num = trim(num.to_vec());
    let den = trim(den.to_vec());
    if num.is_empty() {
        return Vec::new();
    }
    let len = num.len() + 1 - den.len();
    let mut q = vec![0i128; len];
    for i in 0..len {
        let mut c = num[i];
        for j in 1..den.len().min(i + 1) {
            c -= den[j] * q[i - j];
        }
        q[i] = c;
    }
    let q = trim(q);
    assert_eq!(mul(&q, &den), num, "division is not exact");
    q
}

pub fn to_series(p: &IntPoly) -> Series {
    p.coeffs()
        .iter()
        .map(|c| i128::try_from(c).expect("coefficient fits in i128"))
        .collect()
}

fn rank_two_numerator(g: i64) -> Series {
    let e = (2 * g) as u32;
    let jac = pow(&one_plus(1), e);
    mul(&jac, &add(&pow(&one_plus(3), e), &neg(&mul(&t(2 * g), &jac))))
}

/// `n = 3`, `d` odd, any chamber.
pub fn n3(d: i64, g: i64) -> Series {
    let num = mul(&rank_two_numerator(g), &one_minus(2 * (d + 2 * g - 2)));
    let den = mul(&pow(&one_minus(2), 2), &one_minus(4));
    div(&num, &den)
}

/// `n = 4`, `d` odd, above the wall at `(d - 2)/2`.
pub fn n4_high(d: i64, g: i64) -> Series {
    let num = mul(
        &mul(&rank_two_numerator(g), &one_minus(2 * (d + 2 * g - 3))),
        &one_minus(2 * (d + 2 * g - 2)),
    );
    let den = mul(&pow(&one_minus(2), 2), &pow(&one_minus(4), 2));
    div(&num, &den)
}

/// `n = 4`, `d` odd, below the wall at `(d - 2)/2`.
pub fn n4_low(d: i64, g: i64) -> Series {
    let lead = add(&t(2 * g), &neg(&t(6 * g + 2 * d - 10)));
    let num = mul(
        &mul(&mul(&lead, &one_minus(d - 3 + 2 * g)), &one_minus(d - 1 + 2 * g)),
        &pow(&one_plus(1), (4 * g) as u32),
    );
    let den = mul(&pow(&one_minus(2), 2), &one_minus(4));
    add(&n4_high(d, g), &div(&num, &den))
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `n^2(g-1) + 1 - k(k - d + n(g-1))`
pub fn beta(n: i64, d: i64, k: i64, g: i64) -> i64 {
    n * n * (g - 1) + 1 - k * (k - d + n * (g - 1))
}

/// `C21` for a wall with sub-system `(n1, d1, k1)` and quotient `(n2, d2, k2)`.
pub fn c21(n1: i64, d1: i64, k1: i64, n2: i64, d2: i64, k2: i64, g: i64) -> i64 {
    n1 * n2 * (g - 1) - d1 * n2 + d2 * n1 + k2 * d1 - k2 * n1 * (g - 1) - k1 * k2
}

pub fn c12(n1: i64, d1: i64, k1: i64, n2: i64, d2: i64, k2: i64, g: i64) -> i64 {
    c21(n2, d2, k2, n1, d1, k1, g)
}

/// Every `(n1, d1)` satisfying `2 n1 < n` and
/// `max{d + 2 n1 - n, 2 n1 d / n} < 2 d1 < d`, scanned over a wide box.
pub fn scan_walls(n: i64, d: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n1 in 1..n {
        if 2 * n1 >= n {
            continue;
        }
        for d1 in -2 * d - 10..=2 * d + 10 {
            let lower_a = 2 * d1 > d + 2 * n1 - n;
            let lower_b = 2 * d1 * n > 2 * n1 * d;
            let upper = 2 * d1 < d;
            if lower_a && lower_b && upper {
                out.push((n1, d1));
            }
        }
    }
    out
}

/// Both pieces `(n_i, d_i, n_i - 1)` of a `k = n - 2` wall admit stable
/// coherent systems: `d_i >= max{1, n_i - g}`.
pub fn pieces_nonempty(n1: i64, d1: i64, n2: i64, d2: i64, g: i64) -> bool {
    d1 >= 1.max(n1 - g) && d2 >= 1.max(n2 - g)
}

/// All partitions of `m` into positive parts, parts non-increasing.
pub fn partitions(m: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Minimum of `(g - 1) sum_{i<j} m_i m_j` over partitions with at least two parts.
pub fn partition_minimum(m: i64, g: i64) -> Option<i64> {
    partitions(m)
        .into_iter()
        .filter(|p| p.len() >= 2)
        .map(|p| {
            let mut s = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    s += p[i] * p[j];
                }
            }
            s * (g - 1)
        })
        .min()
}
