//! Payload construction for the single-shot subcommands.

use cohsys::exact::{IntPoly, Rational};
use cohsys::moduli::{
    alpha_i_bound, alpha_t, beta, candidate_critical_values, certified_walls_k_n_minus_2,
    chambers_k_n_minus_2, is_nonempty_type, SystemType, WallPattern,
};
use cohsys::poincare::{p_g_chamber, ChamberQuery, PoincareError};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoPayload {
    #[serde(rename = "type")]
    pub system: SystemType,
    pub beta: i64,
    #[serde(rename = "alpha_T")]
    pub alpha_t: Option<Rational>,
    #[serde(rename = "alpha_I_bound")]
    pub alpha_i_bound: Option<Rational>,
    pub nonempty: Option<bool>,
    pub nonempty_range: Option<OpenInterval>,
}

/// `(lo, hi)`; a missing `hi` means unbounded above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenInterval {
    pub lo: Rational,
    pub hi: Option<Rational>,
}

pub fn info(s: SystemType) -> InfoPayload {
    let nonempty = is_nonempty_type(&s).ok();
    let nonempty_range = (nonempty == Some(true)).then(|| OpenInterval {
        lo: Rational::zero(),
        hi: s.alpha_max().ok(),
    });
    InfoPayload {
        system: s,
        beta: beta(&s),
        alpha_t: alpha_t(&s).ok(),
        alpha_i_bound: alpha_i_bound(&s).ok(),
        nonempty,
        nonempty_range,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternOut {
    pub n1: i64,
    pub d1: i64,
    pub k1: i64,
    pub c12: i64,
    pub c21: i64,
    pub certified: bool,
}

impl From<&WallPattern> for PatternOut {
    fn from(w: &WallPattern) -> Self {
        PatternOut {
            n1: w.n1,
            d1: w.d1,
            k1: w.k1,
            c12: w.c12,
            c21: w.c21,
            certified: w.certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallOut {
    pub alpha: Rational,
    pub patterns: Vec<PatternOut>,
}

/// Groups walls that arrive sorted by `alpha`.
pub fn group_walls(walls: &[WallPattern]) -> Vec<WallOut> {
    let mut out: Vec<WallOut> = Vec::new();
    for w in walls {
        match out.last_mut() {
            Some(last) if last.alpha == w.alpha => last.patterns.push(w.into()),
            _ => out.push(WallOut {
                alpha: w.alpha.clone(),
                patterns: vec![w.into()],
            }),
        }
    }
    out
}

pub fn certified(s: SystemType) -> Result<Vec<WallOut>, CliError> {
    Ok(group_walls(&certified_walls_k_n_minus_2(&s)?))
}

pub fn candidates(
    s: SystemType,
    lo: Option<Rational>,
    hi: Option<Rational>,
) -> Result<Vec<WallOut>, CliError> {
    let lo = lo.unwrap_or_else(Rational::zero);
    let hi = match hi {
        Some(hi) => hi,
        None => s.alpha_max()?,
    };
    Ok(candidate_critical_values(&s, &lo, &hi)?
        .iter()
        .map(|cv| WallOut {
            alpha: cv.alpha.clone(),
            patterns: cv.patterns.iter().map(PatternOut::from).collect(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincarePayload {
    pub alpha: Rational,
    pub coeffs: IntPoly,
    pub degree: i64,
    pub beta: i64,
    pub palindrome: bool,
}

pub enum AlphaChoice {
    Value(Rational),
    Chamber(usize),
}

/// The type `(n, d, n - 2)`, checked for odd `d` before anything else.
pub fn k_n_minus_2_type(n: i64, d: i64, g: i64) -> Result<SystemType, CliError> {
    if d.rem_euclid(2) == 0 {
        return Err(PoincareError::ParityError(d).into());
    }
    if n < 3 {
        return Err(CliError::Invalid(format!("need n >= 3 for k = n - 2, got n = {n}")));
    }
    Ok(SystemType::new(n, d, n - 2, g)?)
}

pub fn poincare(n: i64, d: i64, g: i64, choice: AlphaChoice) -> Result<PoincarePayload, CliError> {
    let s = k_n_minus_2_type(n, d, g)?;
    let alpha = match choice {
        AlphaChoice::Value(a) => a,
        AlphaChoice::Chamber(i) => {
            let chambers = chambers_k_n_minus_2(&s)?;
            let count = chambers.len();
            chambers
                .get(i)
                .ok_or_else(|| {
                    CliError::Invalid(format!("chamber {i} does not exist; there are {count}"))
                })?
                .sample()
        }
    };
    poincare_at(s, alpha)
}

pub fn poincare_at(s: SystemType, alpha: Rational) -> Result<PoincarePayload, CliError> {
    let poly = p_g_chamber(&ChamberQuery::new(s, alpha.clone())?)?;
    Ok(PoincarePayload {
        alpha,
        degree: poly.degree().map_or(-1, |d| d as i64),
        beta: beta(&s),
        palindrome: poly.is_palindromic(),
        coeffs: poly,
    })
}
