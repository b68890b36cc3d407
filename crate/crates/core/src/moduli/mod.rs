//! Numeric invariants of moduli spaces of coherent systems of type `(n, d, k)`
//! on a curve of genus `g`: expected dimension, thresholds in the stability
//! parameter, non-emptiness and the wall (critical value) structure.

mod walls;

pub use walls::{
    c12_k_n_minus_2, c21_k_n_minus_2, candidate_critical_values, certified_walls_k_n_minus_2,
    chambers_k_n_minus_2, check_codim_bounds, codim_chain_holds, codim_d, flip_constants, Chamber,
    CodimD, CriticalValue, FlipLocusData, FlipSide, WallPattern,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("invalid range: lo = {lo} must be below hi = {hi} and hi at most {max}")]
    InvalidRange {
        lo: Box<Rational>,
        hi: Box<Rational>,
        max: Box<Rational>,
    },
}

/// Numeric type `(n, d, k)` of a coherent system together with the genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SystemType {
    pub n: i64,
    pub d: i64,
    pub k: i64,
    pub g: i64,
}

impl SystemType {
    /// Checks `n >= 1`, `k >= 0` and `g >= 2`.
    pub fn new(n: i64, d: i64, k: i64, g: i64) -> Result<Self, ModuliError> {
        if n < 1 {
            return Err(ModuliError::InvalidType(format!("rank n = {n} must be at least 1")));
        }
        if k < 0 {
            return Err(ModuliError::InvalidType(format!("k = {k} must be non-negative")));
        }
        if g < 2 {
            return Err(ModuliError::InvalidType(format!("genus g = {g} must be at least 2")));
        }
        Ok(SystemType { n, d, k, g })
    }

    /// `N = d + (n-k)(g-1)`, the dimension of the space the sections live in.
    pub fn grassmann_dim(&self) -> i64 {
        self.d + (self.n - self.k) * (self.g - 1)
    }

    /// `n + (d-n)/g`, the largest admissible `k`.
    pub fn section_bound(&self) -> Rational {
        Rational::from(self.n) + Rational::new(self.d - self.n, self.g)
    }

    /// `k <= n + (d-n)/g`, evaluated without division.
    pub fn satisfies_section_bound(&self) -> bool {
        self.g * self.k <= self.g * self.n + self.d - self.n
    }

    /// `k = n + (d-n)/g` exactly.
    pub fn on_section_bound(&self) -> bool {
        self.g * self.k == self.g * self.n + self.d - self.n
    }

    /// `d/(n-k)`, the upper end of the allowable range of the parameter.
    pub fn alpha_max(&self) -> Result<Rational, ModuliError> {
        self.require_k_below_n()?;
        Ok(Rational::new(self.d, self.n - self.k))
    }

    pub(crate) fn require_k_below_n(&self) -> Result<(), ModuliError> {
        if self.k <= 0 || self.k >= self.n {
            return Err(ModuliError::InvalidType(format!(
                "need 0 < k < n, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        Ok(())
    }

    pub(crate) fn require_positive_degree(&self) -> Result<(), ModuliError> {
        if self.d <= 0 {
            return Err(ModuliError::InvalidType(format!(
                "degree d = {} must be positive",
                self.d
            )));
        }
        Ok(())
    }
}

/// Expected dimension `n²(g-1) + 1 - k(k - d + n(g-1))`.
pub fn beta(s: &SystemType) -> i64 {
    let SystemType { n, d, k, g } = *s;
    n * n * (g - 1) + 1 - k * (k - d + n * (g - 1))
}

/// Torsion-freeness threshold `max{(d-n)/(n-k), 0}`, defined for `0 < k < n`.
pub fn alpha_t(s: &SystemType) -> Result<Rational, ModuliError> {
    s.require_k_below_n()?;
    Ok(Rational::new(s.d - s.n, s.n - s.k).max(Rational::zero()))
}

/// Upper bound for the injectivity threshold,
/// `max{((k-1)(d-n) - nε) / (k(n-k+1)), 0}` with `ε = min{k-1, g}`.
///
/// For `k = 1` every stable system is injective and the bound is `0`.
pub fn alpha_i_bound(s: &SystemType) -> Result<Rational, ModuliError> {
    let SystemType { n, d, k, g } = *s;
    if k < 1 || k > n {
        return Err(ModuliError::InvalidType(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if k == 1 {
        return Ok(Rational::zero());
    }
    let eps = (k - 1).min(g);
    let bound = Rational::new((k - 1) * (d - n) - n * eps, k * (n - k + 1));
    Ok(bound.max(Rational::zero()))
}

/// Non-emptiness of the moduli space at `alpha` for `n >= 2`, `0 < k <= n`:
/// `alpha > 0`, `(n-k) alpha < d`, `k <= n + (d-n)/g` and `(n,d,k) != (n,n,n)`.
pub fn is_nonempty(s: &SystemType, alpha: &Rational) -> Result<bool, ModuliError> {
    let SystemType { n, d, k, .. } = *s;
    if n < 2 || k <= 0 || k > n {
        return Err(ModuliError::InvalidType(format!(
            "non-emptiness needs n >= 2 and 0 < k <= n, got n = {n}, k = {k}"
        )));
    }
    let below_max = &Rational::from(n - k) * alpha < Rational::from(d);
    let not_trivial = !(d == n && k == n);
    Ok(alpha.is_positive() && below_max && s.satisfies_section_bound() && not_trivial)
}

/// Non-emptiness for every allowable `alpha` at once; the answer does not
/// depend on `alpha` inside `(0, d/(n-k))`.
pub fn is_nonempty_type(s: &SystemType) -> Result<bool, ModuliError> {
    let probe = if s.k < s.n {
        if s.d <= 0 {
            return is_nonempty(s, &Rational::one()).map(|_| false);
        }
        Rational::new(s.d, s.n - s.k).midpoint(&Rational::zero())
    } else {
        Rational::one()
    };
    is_nonempty(s, &probe)
}
