//! Poincaré polynomials for `k = n - 2`.
//!
//! The large-parameter space `G_L` is a Grassmann bundle over the rank-2
//! moduli space `M(2, d)` when `d` is odd. Crossing each certified wall from
//! above changes the polynomial by
//! `(t^{2 C21} - t^{2 C12}) / (1 - t^2) * P_{n1,d1} * P_{n2,d2}`, where
//! `P_{r,e}` is the polynomial of the `k = r - 1` space of type `(r, e)`.
//! [`p_g_chamber`] sums those corrections for every wall above the query.
//!
//! [`closed_form`] holds the explicit formulas for `n = 3, 4`, kept separate
//! so they can check the wall-crossing engine.

pub mod closed_form;

use thiserror::Error;

use crate::exact::{cyclotomic_product, ExactError, IntPoly, Rational};
use crate::moduli::{self, alpha_t, ModuliError, SystemType, WallPattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoincareError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree d = {0} is even; the formula needs odd degree")]
    ParityError(i64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("alpha = {0} is a critical value")]
    CriticalAlpha(Rational),
    #[error("computed polynomial has a negative coefficient at t^{degree}")]
    NegativeCoefficient { degree: usize, poly: IntPoly },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Moduli(#[from] ModuliError),
}

type Result<T> = std::result::Result<T, PoincareError>;

fn exponent(x: i64) -> Result<usize> {
    usize::try_from(x).map_err(|_| PoincareError::InvalidParams(format!("negative exponent {x}")))
}

fn require_odd(d: i64) -> Result<()> {
    if d.rem_euclid(2) == 0 {
        return Err(PoincareError::ParityError(d));
    }
    Ok(())
}

/// `(1 + t)^{2g}`, the Poincaré polynomial of the Jacobian.
fn jacobian(g: i64) -> Result<IntPoly> {
    let e = u32::try_from(2 * g).map_err(|_| PoincareError::InvalidParams(format!("genus {g}")))?;
    Ok(IntPoly::from_i64s(&[1, 1]).pow(e))
}

/// Poincaré polynomial of the Grassmannian `Gr(k, N)` of `k`-planes in an
/// `N`-dimensional space: the Gaussian binomial `[N choose k]` in `t^2`.
pub fn p_grassmannian(k: i64, big_n: i64) -> Result<IntPoly> {
    if k < 0 || k > big_n {
        return Err(PoincareError::InvalidParams(format!(
            "Gr({k}, {big_n}) needs 0 <= k <= N"
        )));
    }
    let num: Vec<i64> = (big_n - k + 1..=big_n).map(|i| 2 * i).collect();
    let den: Vec<i64> = (1..=k).map(|i| 2 * i).collect();
    Ok(cyclotomic_product(&num)?.div_exact(&cyclotomic_product(&den)?)?)
}

/// Poincaré polynomial of `M(2, d)` for odd `d`:
/// `(1+t)^{2g} ((1+t^3)^{2g} - t^{2g} (1+t)^{2g}) / ((1-t^2)(1-t^4))`.
pub fn p_m2(d: i64, g: i64) -> Result<IntPoly> {
    require_odd(d)?;
    if g < 2 {
        return Err(PoincareError::InvalidParams(format!("genus g = {g} must be at least 2")));
    }
    let jac = jacobian(g)?;
    let two_g = exponent(2 * g)?;
    let cubes = IntPoly::one_plus_t_pow(3).pow(2 * g as u32);
    let bracket = &cubes - &jac.shift(two_g);
    let num = &jac * &bracket;
    Ok(num.div_exact(&cyclotomic_product(&[2, 4])?)?)
}

/// `P_{r,e}`: Poincaré polynomial of the `k = r - 1` space of type `(r, e)`,
/// a Grassmann bundle `Gr(r-1, e+g-1)` over the Jacobian.
///
/// Defined for `e >= max{1, r - g}`; below that the space is empty.
pub fn p_re(r: i64, e: i64, g: i64) -> Result<IntPoly> {
    if r < 1 || g < 2 {
        return Err(PoincareError::InvalidParams(format!(
            "need r >= 1 and g >= 2, got r = {r}, g = {g}"
        )));
    }
    if e < 1.max(r - g) {
        return Err(PoincareError::OutOfRange(format!(
            "P_{{r,e}} needs e >= max{{1, r - g}}, got r = {r}, e = {e}, g = {g}"
        )));
    }
    let num: Vec<i64> = (e + g - r + 1..=e + g - 1).map(|i| 2 * i).collect();
    let den: Vec<i64> = (1..r).map(|i| 2 * i).collect();
    let fibre = cyclotomic_product(&num)?.div_exact(&cyclotomic_product(&den)?)?;
    Ok(&jacobian(g)? * &fibre)
}

/// Like [`p_re`] but returns `0` for an empty space.
fn p_re_or_zero(r: i64, e: i64, g: i64) -> Result<IntPoly> {
    if e < 1.max(r - g) {
        return Ok(IntPoly::zero());
    }
    p_re(r, e, g)
}

/// Poincaré polynomial of the large-parameter space for `k = n - 2`, `d` odd:
/// `P(M(2, d)) * P(Gr(n - 2, d + 2g - 2))`.
pub fn p_gl(s: &SystemType) -> Result<IntPoly> {
    if s.n < 2 || s.k != s.n - 2 {
        return Err(PoincareError::InvalidParams(format!(
            "need k = n - 2 with n >= 2, got n = {}, k = {}",
            s.n, s.k
        )));
    }
    require_odd(s.d)?;
    if s.d <= 0 || !s.satisfies_section_bound() {
        return Err(PoincareError::OutOfRange(format!(
            "moduli space of type ({}, {}, {}) in genus {} is empty",
            s.n, s.d, s.k, s.g
        )));
    }
    Ok(&p_m2(s.d, s.g)? * &p_grassmannian(s.k, s.grassmann_dim())?)
}

/// Contribution of one certified wall:
/// `(t^{2 C21} - t^{2 C12}) / (1 - t^2) * P_{n1,d1} * P_{n2,d2}`.
///
/// Zero when one of the two pieces is empty, since the flip locus is then empty.
pub fn wall_term(w: &WallPattern, g: i64) -> Result<IntPoly> {
    let pieces = &p_re_or_zero(w.n1, w.d1, g)? * &p_re_or_zero(w.n2, w.d2, g)?;
    if pieces.is_zero() {
        return Ok(pieces);
    }
    let diff = &IntPoly::monomial(1, exponent(2 * w.c21)?) - &IntPoly::monomial(1, exponent(2 * w.c12)?);
    let ratio = diff.div_exact(&IntPoly::one_minus_t_pow(2))?;
    Ok(&ratio * &pieces)
}

/// A point `alpha'` in `(alpha_T, d/2)` for a type with `k = n - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberQuery {
    pub s: SystemType,
    pub alpha_prime: Rational,
}

impl ChamberQuery {
    /// Checks `k = n - 2`, `n >= 3`, `d > 0` and `alpha_T < alpha' < d/2`.
    /// Whether `alpha'` hits a wall is checked at evaluation time.
    pub fn new(s: SystemType, alpha_prime: Rational) -> Result<Self> {
        if s.n < 3 || s.k != s.n - 2 {
            return Err(PoincareError::InvalidParams(format!(
                "need k = n - 2 with n >= 3, got n = {}, k = {}",
                s.n, s.k
            )));
        }
        if s.d <= 0 {
            return Err(PoincareError::OutOfRange(format!("degree d = {} must be positive", s.d)));
        }
        let lo = alpha_t(&s)?;
        let hi = Rational::new(s.d, 2);
        if alpha_prime <= lo || alpha_prime >= hi {
            return Err(PoincareError::OutOfRange(format!(
                "alpha' = {alpha_prime} must lie in ({lo}, {hi})"
            )));
        }
        Ok(ChamberQuery { s, alpha_prime })
    }

    /// Certified walls above `alpha'`; fails if `alpha'` is itself a wall.
    pub fn walls_above(&self) -> Result<Vec<WallPattern>> {
        let walls = moduli::certified_walls_k_n_minus_2(&self.s)?;
        if walls.iter().any(|w| w.alpha == self.alpha_prime) {
            return Err(PoincareError::CriticalAlpha(self.alpha_prime.clone()));
        }
        Ok(walls.into_iter().filter(|w| w.alpha > self.alpha_prime).collect())
    }
}

/// `P(G(alpha')) - P(G_L)`: the sum of [`wall_term`] over the walls above
/// `alpha'`. Unlike [`p_g_chamber`] this does not need `d` odd.
pub fn wall_crossing_difference(q: &ChamberQuery) -> Result<IntPoly> {
    q.walls_above()?
        .iter()
        .try_fold(IntPoly::zero(), |acc, w| Ok(&acc + &wall_term(w, q.s.g)?))
}

/// Poincaré polynomial of the moduli space at a non-critical `alpha'` for
/// `k = n - 2` and odd `d`.
pub fn p_g_chamber(q: &ChamberQuery) -> Result<IntPoly> {
    require_odd(q.s.d)?;
    let diff = wall_crossing_difference(q)?;
    let poly = &p_gl(&q.s)? + &diff;
    if let Some(degree) = poly.coeffs().iter().position(|c| c < &Default::default()) {
        return Err(PoincareError::NegativeCoefficient { degree, poly });
    }
    Ok(poly)
}
