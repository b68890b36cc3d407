//! Exact computations for moduli spaces of coherent systems on a curve of
//! genus `g >= 2`: wall structure in the stability parameter, flip data,
//! non-emptiness, topology reports and, for `k = n - 2`, Poincaré polynomials
//! in every chamber.

pub mod exact;
pub mod moduli;
pub mod poincare;
pub mod report;
