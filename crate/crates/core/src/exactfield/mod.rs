//! Exact scalars: rationals, cyclotomic fields ℚ(ζ_m) and the ħ-local ring
//! of rational functions regular at ħ = 0.

mod cyclotomic;
mod field;
mod hbar;
mod parse;
mod series;
mod upoly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, fmt_rational, CycNum, DEFAULT_CONDUCTOR};
pub use field::Scalar;
pub use hbar::{HbarError, HbarScalar, Valuation};
pub use series::{HbarSeries, SERIES_PRECISION};
pub use parse::{parse_cyc, parse_rational, ParseError};
pub use upoly::UPoly;

pub use num_rational::BigRational as Rational;

/// Canonical representative of Σ raw[k]·ζ_m^k.
pub fn cyc_normalize(raw: &[Rational], m: u32) -> CycNum {
    CycNum::from_raw(m, raw.to_vec())
}

/// ħ-adic valuation of an ħ-regular scalar.
pub fn hbar_valuation(s: &HbarScalar) -> Valuation {
    s.valuation()
}
