//! Explicit Poincaré polynomials for `n = 3` and `n = 4` with `k = n - 2` and
//! odd `d`, transcribed factor by factor from their rational expressions.
//!
//! These deliberately share nothing with the wall-crossing engine beyond
//! polynomial arithmetic, so agreement between the two is a real check.

use super::PoincareError;
use crate::exact::IntPoly;

/// Which chamber of `(max{(d-4)/2, 0}, d/2)` for `n = 4`: below or above the
/// single wall at `(d-2)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N4Chamber {
    Low,
    High,
}

fn t_pow(e: i64) -> IntPoly {
    IntPoly::monomial(1, e as usize)
}

fn one_minus(e: i64) -> IntPoly {
    &IntPoly::one() - &t_pow(e)
}

fn one_plus(e: i64) -> IntPoly {
    &IntPoly::one() + &t_pow(e)
}

fn check(d: i64, g: i64) -> Result<(), PoincareError> {
    if d.rem_euclid(2) == 0 {
        return Err(PoincareError::ParityError(d));
    }
    if d < 1 || g < 2 {
        return Err(PoincareError::InvalidParams(format!("need d >= 1, g >= 2; got d = {d}, g = {g}")));
    }
    Ok(())
}

/// `(1+t)^{2g} ((1+t^3)^{2g} - t^{2g} (1+t)^{2g})`, the common numerator.
fn rank_two_numerator(g: i64) -> IntPoly {
    let e = (2 * g) as u32;
    let jac = one_plus(1).pow(e);
    &jac * &(&one_plus(3).pow(e) - &(&t_pow(2 * g) * &jac))
}

/// `n = 3`, any `alpha'` in `(max{(d-3)/2, 0}, d/2)`:
/// numerator times `(1 - t^{2(d+2g-2)})` over `(1-t^2)^2 (1-t^4)`.
pub fn closed_form_n3(d: i64, g: i64) -> Result<IntPoly, PoincareError> {
    check(d, g)?;
    let num = &rank_two_numerator(g) * &one_minus(2 * (d + 2 * g - 2));
    let den = &(&one_minus(2) * &one_minus(2)) * &one_minus(4);
    Ok(num.div_exact(&den)?)
}

/// `n = 4`. The high chamber is the large-parameter space; the low chamber
/// adds the single flip at `(d-2)/2` and needs `d >= 3`.
pub fn closed_form_n4(d: i64, g: i64, chamber: N4Chamber) -> Result<IntPoly, PoincareError> {
    check(d, g)?;
    let num = &(&rank_two_numerator(g) * &one_minus(2 * (d + 2 * g - 3))) * &one_minus(2 * (d + 2 * g - 2));
    let den = &(&one_minus(2) * &one_minus(2)) * &one_minus(4).pow(2);
    let high = num.div_exact(&den)?;
    match chamber {
        N4Chamber::High => Ok(high),
        N4Chamber::Low => {
            if d < 3 {
                return Err(PoincareError::OutOfRange(format!(
                    "n = 4 has no lower chamber for d = {d}"
                )));
            }
            let corr_num = &(&(&(&t_pow(2 * g) - &t_pow(6 * g + 2 * d - 10)) * &one_minus(d - 3 + 2 * g))
                * &one_minus(d - 1 + 2 * g))
                * &one_plus(1).pow((4 * g) as u32);
            let corr_den = &(&one_minus(2) * &one_minus(2)) * &one_minus(4);
            Ok(&high + &corr_num.div_exact(&corr_den)?)
        }
    }
}
