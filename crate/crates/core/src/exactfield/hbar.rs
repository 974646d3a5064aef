use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use super::cyclotomic::CycNum;
use super::field::Scalar;
use super::upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HbarError {
    #[error("denominator vanishes at hbar = 0")]
    DenominatorVanishesAtZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("valuation {found} is below the requested shift {needed}")]
    NotDivisible { found: u32, needed: u32 },
}

/// ħ-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, o: Valuation) -> Valuation {
        match (self, o) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// A rational function in ħ over the cyclotomic numbers whose denominator
/// does not vanish at ħ = 0, i.e. an element of the local ring 𝕜[ħ]_(ħ).
///
/// Canonical form: numerator and denominator coprime, denominator with
/// constant term 1.
#[derive(Clone, PartialEq)]
pub struct HbarScalar {
    num: UPoly<CycNum>,
    den: UPoly<CycNum>,
}

impl HbarScalar {
    pub fn new(num: UPoly<CycNum>, den: UPoly<CycNum>) -> Result<Self, HbarError> {
        if den.is_zero() {
            return Err(HbarError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let c0 = den.coeff(0);
        let inv = c0.inv().ok_or(HbarError::DenominatorVanishesAtZero)?;
        Ok(HbarScalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(num: UPoly<CycNum>) -> Self {
        HbarScalar {
            num,
            den: UPoly::constant(CycNum::int(1)),
        }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    /// a + b·ħ
    pub fn linear(a: CycNum, b: CycNum) -> Self {
        Self::from_poly(UPoly::from_coeffs(vec![a, b]))
    }

    /// ħ^k
    pub fn hbar_pow(k: usize) -> Self {
        Self::from_poly(UPoly::monomial(CycNum::int(1), k))
    }

    pub fn numerator(&self) -> &UPoly<CycNum> {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly<CycNum> {
        &self.den
    }

    pub fn valuation(&self) -> Valuation {
        match self.num.low_degree() {
            Some(v) => Valuation::Finite(v as u32),
            None => Valuation::Infinite,
        }
    }

    /// Specialization ħ ↦ 0.
    pub fn eval0(&self) -> CycNum {
        // den(0) = 1 by normalization
        self.num.coeff(0)
    }

    pub fn eval(&self, t: &CycNum) -> Option<CycNum> {
        let d = self.den.eval(t);
        d.inv().map(|di| Scalar::mul(&self.num.eval(t), &di))
    }

    /// Divide by ħ^k, which must divide the numerator.
    pub fn div_hbar_pow(&self, k: u32) -> Result<Self, HbarError> {
        match self.num.shift_down(k as usize) {
            Some(num) => Ok(HbarScalar {
                num,
                den: self.den.clone(),
            }),
            None => Err(HbarError::NotDivisible {
                found: self.valuation().finite().unwrap_or(u32::MAX),
                needed: k,
            }),
        }
    }

    fn den_is_one(&self) -> bool {
        self.den.degree() == Some(0)
    }

    fn build(num: UPoly<CycNum>, den: UPoly<CycNum>) -> Self {
        Self::new(num, den).expect("product of hbar-regular scalars is hbar-regular")
    }
}

impl fmt::Debug for HbarScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for HbarScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_is_one() {
            f.write_str(&self.num.fmt_with_var("h"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.fmt_with_var("h"),
                self.den.fmt_with_var("h")
            )
        }
    }
}

impl Scalar for HbarScalar {
    fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }
    fn one() -> Self {
        Self::constant(CycNum::int(1))
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(CycNum::int(v))
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::constant(CycNum::rational(q.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_unit(&self) -> bool {
        !self.num.coeff(0).is_zero_val()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den_is_one() && o.den_is_one() {
            return Self::from_poly(self.num.add(&o.num));
        }
        if self.den == o.den {
            return Self::build(self.num.add(&o.num), self.den.clone());
        }
        Self::build(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::add(self, &Scalar::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        if self.den_is_one() && o.den_is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::build(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        HbarScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        Some(Self::build(self.den.clone(), self.num.clone()))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        let (vs, vo) = (self.valuation(), o.valuation());
        match (vs, vo) {
            (_, Valuation::Infinite) => None,
            (Valuation::Infinite, _) => Some(Self::zero()),
            (Valuation::Finite(a), Valuation::Finite(b)) if a >= b => {
                let u = o.div_hbar_pow(b).ok()?;
                let inv = u.try_inv()?;
                Some(Scalar::mul(self, &inv).div_hbar_pow(b).ok()?)
            }
            _ => None,
        }
    }
    fn order(&self) -> u32 {
        self.valuation().finite().unwrap_or(0)
    }
    fn div_uniformizer(&self, k: u32) -> Self {
        self.div_hbar_pow(k).expect("divisible by the requested power of hbar")
    }
}
