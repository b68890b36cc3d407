//! Critical values of the stability parameter and the numeric data of the
//! flips that happen there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{alpha_t, beta, ModuliError, SystemType};
use crate::exact::Rational;

/// A numeric destabilizing pattern `0 -> (n1,d1,k1) -> (n,d,k) -> (n2,d2,k2) -> 0`
/// whose two pieces have equal weighted slope at `alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WallPattern {
    pub n1: i64,
    pub d1: i64,
    pub k1: i64,
    pub n2: i64,
    pub d2: i64,
    pub k2: i64,
    pub alpha: Rational,
    pub c12: i64,
    pub c21: i64,
    /// `false` for purely numerical candidates, `true` for walls known to be
    /// realized by an actual flip.
    pub certified: bool,
}

impl WallPattern {
    /// Pattern with sub-type `(n1,d1,k1)` inside `s`, flip constants filled in.
    pub fn new(s: &SystemType, n1: i64, d1: i64, k1: i64, alpha: Rational, certified: bool) -> Self {
        let mut p = WallPattern {
            n1,
            d1,
            k1,
            n2: s.n - n1,
            d2: s.d - d1,
            k2: s.k - k1,
            alpha,
            c12: 0,
            c21: 0,
            certified,
        };
        let (c12, c21) = flip_constants(&p, s);
        p.c12 = c12;
        p.c21 = c21;
        p
    }

    /// The same wall with sub-system and quotient interchanged.
    pub fn swapped(&self) -> WallPattern {
        WallPattern {
            n1: self.n2,
            d1: self.d2,
            k1: self.k2,
            n2: self.n1,
            d2: self.d1,
            k2: self.k1,
            alpha: self.alpha.clone(),
            c12: self.c21,
            c21: self.c12,
            certified: self.certified,
        }
    }

    pub fn sub_type(&self, g: i64) -> SystemType {
        SystemType { n: self.n1, d: self.d1, k: self.k1, g }
    }

    pub fn quotient_type(&self, g: i64) -> SystemType {
        SystemType { n: self.n2, d: self.d2, k: self.k2, g }
    }

    /// Sums to `s` and the two weighted slopes agree at `alpha`.
    /// `d_i - k_i >= (k_i - n_i)(g - 1)` for both pieces, which every
    /// coherent system occurring in an extension at the wall satisfies.
    pub fn pieces_can_occur(&self, g: i64) -> bool {
        let ok = |n: i64, d: i64, k: i64| d - k >= (k - n) * (g - 1);
        ok(self.n1, self.d1, self.k1) && ok(self.n2, self.d2, self.k2)
    }

    pub fn is_consistent_with(&self, s: &SystemType) -> bool {
        if self.n1 + self.n2 != s.n || self.d1 + self.d2 != s.d || self.k1 + self.k2 != s.k {
            return false;
        }
        // (d1 + alpha k1)/n1 == (d + alpha k)/n, cross-multiplied
        let lhs = (Rational::from(self.d1) + &self.alpha * &Rational::from(self.k1))
            * Rational::from(s.n);
        let rhs = (Rational::from(s.d) + &self.alpha * &Rational::from(s.k))
            * Rational::from(self.n1);
        lhs == rhs && 0 < self.n1 && self.n1 < s.n
    }

    /// `k1/n1 < k/n`: the sub-system destabilizes just below `alpha`, so the
    /// pattern describes the locus removed when crossing downward.
    fn is_plus_oriented(&self, s: &SystemType) -> bool {
        self.k1 * s.n < s.k * self.n1
    }
}

/// All patterns sharing one critical value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValue {
    pub alpha: Rational,
    pub patterns: Vec<WallPattern>,
}

/// `(C12, C21)` for the pattern's sub-system and quotient.
pub fn flip_constants(p: &WallPattern, s: &SystemType) -> (i64, i64) {
    let g1 = s.g - 1;
    let (n1, d1, k1, n2, d2, k2) = (p.n1, p.d1, p.k1, p.n2, p.d2, p.k2);
    let c21 = n1 * n2 * g1 - d1 * n2 + d2 * n1 + k2 * d1 - k2 * n1 * g1 - k1 * k2;
    let c12 = n2 * n1 * g1 - d2 * n1 + d1 * n2 + k1 * d2 - k1 * n2 * g1 - k2 * k1;
    (c12, c21)
}

/// `C21` specialized to `k = n-2`, `k1 = n1-1`, `k2 = n2-1`.
pub fn c21_k_n_minus_2(n: i64, d: i64, g: i64, n1: i64, d1: i64) -> i64 {
    n1 * (g - 1) + d * n1 - d1 * (n1 + 1) - (n1 - 1) * (n - n1 - 1)
}

/// `C12` specialized to `k = n-2`, `k1 = n1-1`, `k2 = n2-1`.
pub fn c12_k_n_minus_2(n: i64, d: i64, g: i64, n1: i64, d1: i64) -> i64 {
    (n - n1) * (g - 1) - d + d1 * (n - n1 + 1) - (n1 - 1) * (n - n1 - 1)
}

/// Dimension data of the flip at one wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipLocusData {
    pub pattern: WallPattern,
    pub base_dim: i64,
    pub fibre_dim_plus: i64,
    pub fibre_dim_minus: i64,
    pub codim_plus: i64,
    pub codim_minus: i64,
}

impl FlipLocusData {
    pub fn new(pattern: &WallPattern, s: &SystemType) -> Self {
        let base_dim = beta(&pattern.sub_type(s.g)) + beta(&pattern.quotient_type(s.g));
        FlipLocusData {
            pattern: pattern.clone(),
            base_dim,
            fibre_dim_plus: pattern.c21 - 1,
            fibre_dim_minus: pattern.c12 - 1,
            codim_plus: pattern.c12,
            codim_minus: pattern.c21,
        }
    }

    /// `base + fibre + codim` on each side; both should equal `beta(n,d,k)`.
    pub fn total_dims(&self) -> (i64, i64) {
        (
            self.base_dim + self.fibre_dim_plus + self.codim_plus,
            self.base_dim + self.fibre_dim_minus + self.codim_minus,
        )
    }
}

/// Which flip locus an extension type belongs to: the one removed above the
/// wall (`Plus`) or the one removed below it (`Minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipSide {
    Plus,
    Minus,
}

/// The codimension inequality chain for `p` read as an extension type on the
/// given side:
///
/// * `Minus`: `C12 >= (n1-k1)(n2-k2)(g-1) + 1 >= g`
/// * `Plus`:  `C12 >= (g-1)(n1-k1)(n2-k2) + d1 n2 - d2 n1 + 1 >= g + 1`
pub fn codim_chain_holds(p: &WallPattern, s: &SystemType, side: FlipSide) -> bool {
    let g = s.g;
    let (c12, _) = flip_constants(p, s);
    let core = (p.n1 - p.k1) * (p.n2 - p.k2) * (g - 1);
    match side {
        FlipSide::Minus => {
            let mid = core + 1;
            c12 >= mid && mid >= g
        }
        FlipSide::Plus => {
            let mid = core + p.d1 * p.n2 - p.d2 * p.n1 + 1;
            c12 >= mid && mid > g
        }
    }
}

/// Both codimension chains for the wall carrying `p`.
///
/// The pattern is first oriented so its sub-system has the smaller section
/// ratio; the plus chain is checked on that orientation and the minus chain
/// on the interchanged one (whose `C12` is the original `C21`).
///
/// The chains constrain extension types that occur. If a piece violates
/// `d_i - k_i >= (k_i - n_i)(g - 1)` it has no stable coherent systems, the
/// flip loci at this wall are empty and the bounds hold vacuously.
pub fn check_codim_bounds(p: &WallPattern, s: &SystemType) -> bool {
    if !p.pieces_can_occur(s.g) {
        return true;
    }
    let plus = if p.is_plus_oriented(s) { p.clone() } else { p.swapped() };
    codim_chain_holds(&plus, s, FlipSide::Plus)
        && codim_chain_holds(&plus.swapped(), s, FlipSide::Minus)
}

/// Numerical candidates for critical values in the open interval `(lo, hi)`.
///
/// Every `(n1, d1, k1)` with `0 < n1 < n`, `0 <= k1 <= min(k, n1)`,
/// `k - k1 <= n - n1` and `k1/n1 != k/n` whose slope equation
/// `alpha = (n d1 - n1 d)/(n1 k - n k1)` lands in `(lo, hi)` is reported,
/// grouped by `alpha` in ascending order. None of these are certified.
pub fn candidate_critical_values(
    s: &SystemType,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<CriticalValue>, ModuliError> {
    s.require_k_below_n()?;
    s.require_positive_degree()?;
    let max = s.alpha_max()?;
    if lo >= hi || hi > &max {
        return Err(ModuliError::InvalidRange {
            lo: Box::new(lo.clone()),
            hi: Box::new(hi.clone()),
            max: Box::new(max),
        });
    }
    let n_r = Rational::from(s.n);
    let mut groups: BTreeMap<Rational, Vec<WallPattern>> = BTreeMap::new();
    for n1 in 1..s.n {
        let n2 = s.n - n1;
        for k1 in 0..=s.k.min(n1) {
            if s.k - k1 > n2 {
                continue;
            }
            let denom = n1 * s.k - s.n * k1;
            if denom == 0 {
                continue;
            }
            // n d1 = n1 d + alpha * denom; open interval for d1 from (lo, hi)
            let base = Rational::from(n1 * s.d);
            let denom_r = Rational::from(denom);
            let at_lo = (&base + &(lo * &denom_r)) / &n_r;
            let at_hi = (&base + &(hi * &denom_r)) / &n_r;
            let (a, b) = if denom > 0 { (at_lo, at_hi) } else { (at_hi, at_lo) };
            let first = a.floor() + 1;
            let last = b.ceil() - 1;
            let mut d1 = first;
            while d1 <= last {
                let d1_i = to_i64(&d1)?;
                let alpha = Rational::new(s.n * d1_i - n1 * s.d, denom);
                debug_assert!(&alpha > lo && &alpha < hi);
                groups
                    .entry(alpha.clone())
                    .or_default()
                    .push(WallPattern::new(s, n1, d1_i, k1, alpha, false));
                d1 += 1;
            }
        }
    }
    Ok(groups
        .into_iter()
        .map(|(alpha, mut patterns)| {
            patterns.sort_by_key(|p| (p.n1, p.d1, p.k1));
            CriticalValue { alpha, patterns }
        })
        .collect())
}

fn to_i64(x: &BigInt) -> Result<i64, ModuliError> {
    x.to_i64()
        .ok_or_else(|| ModuliError::InvalidType(format!("degree {x} does not fit in 64 bits")))
}

fn require_k_n_minus_2(s: &SystemType) -> Result<(), ModuliError> {
    if s.k != s.n - 2 || s.n < 3 {
        return Err(ModuliError::InvalidType(format!(
            "need k = n - 2 with n >= 3, got n = {}, k = {}",
            s.n, s.k
        )));
    }
    s.require_positive_degree()
}

/// Walls for `k = n-2` in `(alpha_T, d/2)` where a flip provably occurs.
///
/// These are the integer solutions of `2 n1 < n` and
/// `max{d + 2 n1 - n, 2 n1 d / n} < 2 d1 < d`, with
/// `alpha = (n d1 - n1 d)/(n - 2 n1)`, `k1 = n1 - 1` and `k2 = n2 - 1`.
/// Sorted by `alpha`, ties by `(n1, d1)`.
pub fn certified_walls_k_n_minus_2(s: &SystemType) -> Result<Vec<WallPattern>, ModuliError> {
    require_k_n_minus_2(s)?;
    let (n, d) = (s.n, s.d);
    let mut out = Vec::new();
    for n1 in (1..).take_while(|&n1| 2 * n1 < n) {
        // n d1 > n1 d forces d1 >= 1
        for d1 in 1..=(d - 1) / 2 {
            let lower_ok = 2 * d1 > d + 2 * n1 - n && n * d1 > n1 * d;
            if lower_ok && 2 * d1 < d {
                let alpha = Rational::new(n * d1 - n1 * d, n - 2 * n1);
                out.push(WallPattern::new(s, n1, d1, n1 - 1, alpha, true));
            }
        }
    }
    out.sort_by(|a, b| a.alpha.cmp(&b.alpha).then((a.n1, a.d1).cmp(&(b.n1, b.d1))));
    Ok(out)
}

/// An open interval of the stability parameter containing no certified wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub index: usize,
    pub lo: Rational,
    pub hi: Rational,
}

impl Chamber {
    pub fn sample(&self) -> Rational {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        alpha > &self.lo && alpha < &self.hi
    }
}

/// The chambers of `(alpha_T, d/2)` cut out by the certified walls, lowest
/// first. The last one is the large-parameter chamber.
pub fn chambers_k_n_minus_2(s: &SystemType) -> Result<Vec<Chamber>, ModuliError> {
    let walls = certified_walls_k_n_minus_2(s)?;
    let mut cuts = vec![alpha_t(s)?];
    for w in &walls {
        if cuts.last() != Some(&w.alpha) {
            cuts.push(w.alpha.clone());
        }
    }
    cuts.push(Rational::new(s.d, 2));
    Ok(cuts
        .windows(2)
        .enumerate()
        .map(|(index, w)| Chamber {
            index,
            lo: w[0].clone(),
            hi: w[1].clone(),
        })
        .collect())
}

/// Lower bound on the codimension of the strictly semistable locus:
/// `Infinite` when `n - k = 1`, otherwise `(n-k-1)(g-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodimD {
    Finite(i64),
    Infinite,
}

pub fn codim_d(nk: i64, g: i64) -> Result<CodimD, ModuliError> {
    if nk < 1 || g < 2 {
        return Err(ModuliError::InvalidType(format!(
            "need n - k >= 1 and g >= 2, got n - k = {nk}, g = {g}"
        )));
    }
    Ok(if nk == 1 {
        CodimD::Infinite
    } else {
        CodimD::Finite((nk - 1) * (g - 1))
    })
}
