use std::fmt;

use num_rational::BigRational;

use super::cyclotomic::CycNum;
use super::field::Scalar;
use super::hbar::{HbarError, HbarScalar, Valuation};

/// Relative precision given to inverses of non-constant exact units.
pub const SERIES_PRECISION: u32 = 16;

const EXACT: u32 = u32::MAX;

/// A power series Σ c_k ħ^k known modulo ħ^prec, or exactly when it is a
/// polynomial that has never been divided. Used as a fast stand-in for
/// [`HbarScalar`] when only finitely many ħ-adic digits matter.
#[derive(Clone)]
pub struct HbarSeries {
    c: Vec<CycNum>,
    prec: u32,
}

fn trim(mut c: Vec<CycNum>, prec: u32) -> Vec<CycNum> {
    if prec != EXACT && c.len() > prec as usize {
        c.truncate(prec as usize);
    }
    while c.last().map_or(false, |x| x.is_zero_val()) {
        c.pop();
    }
    c
}

impl HbarSeries {
    pub fn exact(c: Vec<CycNum>) -> Self {
        HbarSeries {
            c: trim(c, EXACT),
            prec: EXACT,
        }
    }

    pub fn with_precision(c: Vec<CycNum>, prec: u32) -> Self {
        HbarSeries {
            c: trim(c, prec),
            prec,
        }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::exact(vec![c])
    }

    /// a + b·ħ
    pub fn linear(a: CycNum, b: CycNum) -> Self {
        Self::exact(vec![a, b])
    }

    pub fn hbar_pow(k: usize) -> Self {
        let mut c = vec![CycNum::int(0); k + 1];
        c[k] = CycNum::int(1);
        Self::exact(c)
    }

    /// `None` for exact elements.
    pub fn precision(&self) -> Option<u32> {
        (self.prec != EXACT).then_some(self.prec)
    }

    pub fn coeff(&self, k: usize) -> CycNum {
        self.c.get(k).cloned().unwrap_or_else(|| CycNum::int(0))
    }

    /// Valuation of the known digits. A series whose known digits all vanish
    /// reports `Infinite`, even when it is only known to be O(ħ^prec).
    pub fn valuation(&self) -> Valuation {
        match self.c.iter().position(|x| !x.is_zero_val()) {
            Some(v) => Valuation::Finite(v as u32),
            None => Valuation::Infinite,
        }
    }

    fn val_or_prec(&self) -> u32 {
        self.valuation().finite().unwrap_or(self.prec)
    }

    pub fn eval0(&self) -> CycNum {
        self.coeff(0)
    }

    pub fn div_hbar_pow(&self, k: u32) -> Result<Self, HbarError> {
        let v = self.val_or_prec();
        if v < k {
            return Err(HbarError::NotDivisible { found: v, needed: k });
        }
        let c = self.c.iter().skip(k as usize).cloned().collect();
        let prec = if self.prec == EXACT { EXACT } else { self.prec - k };
        Ok(Self::with_precision(c, prec))
    }

    /// Expansion of an exact rational function regular at 0.
    pub fn from_hbar_scalar(s: &HbarScalar, prec: u32) -> Self {
        let num = Self::exact(s.numerator().coeffs().to_vec());
        let den = Self::exact(s.denominator().coeffs().to_vec());
        if den.c.len() <= 1 {
            return Scalar::mul(&num, &den.try_inv().unwrap());
        }
        let inv = den.inverse_to(prec);
        Scalar::mul(&num, &inv)
    }

    fn inverse_to(&self, prec: u32) -> Self {
        let a0inv = self.c[0].inv().expect("unit");
        let mut out = vec![a0inv.clone()];
        for k in 1..prec as usize {
            let mut s = CycNum::int(0);
            for j in 1..=k.min(self.c.len() - 1) {
                s = &s + &(&self.c[j] * &out[k - j]);
            }
            out.push(-(&s * &a0inv));
        }
        Self::with_precision(out, prec)
    }
}

impl PartialEq for HbarSeries {
    fn eq(&self, o: &Self) -> bool {
        Scalar::sub(self, o).is_zero()
    }
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero_val() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})*h"),
                _ => format!("({c})*h^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if self.prec != EXACT {
            parts.push(format!("O(h^{})", self.prec));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Scalar for HbarSeries {
    fn zero() -> Self {
        Self::exact(Vec::new())
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
        self.c.is_empty()
    }
    fn is_unit(&self) -> bool {
        self.c.first().map_or(false, |x| !x.is_zero_val())
    }
    fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect();
        Self::with_precision(c, prec)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::add(self, &Scalar::neg(o))
    }
    fn mul(&self, o: &Self) -> Self {
        let prec = if self.prec == EXACT && o.prec == EXACT {
            EXACT
        } else {
            let a = self.prec.saturating_add(o.val_or_prec());
            let b = o.prec.saturating_add(self.val_or_prec());
            a.min(b)
        };
        if self.c.is_empty() || o.c.is_empty() {
            return Self::with_precision(Vec::new(), prec);
        }
        let mut len = self.c.len() + o.c.len() - 1;
        if prec != EXACT {
            len = len.min(prec as usize);
        }
        let mut c = vec![CycNum::int(0); len];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_val() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::with_precision(c, prec)
    }
    fn neg(&self) -> Self {
        HbarSeries {
            c: self.c.iter().map(|x| -x).collect(),
            prec: self.prec,
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        if self.prec == EXACT && self.c.len() == 1 {
            return Some(Self::constant(self.c[0].inv()?));
        }
        let prec = if self.prec == EXACT { SERIES_PRECISION } else { self.prec };
        Some(self.inverse_to(prec))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        let b = o.valuation().finite()?;
        if self.val_or_prec() < b {
            return None;
        }
        let u = o.div_hbar_pow(b).ok()?.try_inv()?;
        Some(Scalar::mul(&self.div_hbar_pow(b).ok()?, &u))
    }
    fn order(&self) -> u32 {
        self.valuation().finite().unwrap_or(0)
    }
    fn div_uniformizer(&self, k: u32) -> Self {
        self.div_hbar_pow(k).expect("divisible by the requested power of hbar")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::UPoly;

    fn s(v: &[i64]) -> HbarSeries {
        HbarSeries::exact(v.iter().map(|&x| CycNum::int(x)).collect())
    }

    #[test]
    fn inverse_and_precision() {
        let a = s(&[1, 3]);
        let inv = a.try_inv().unwrap();
        assert_eq!(inv.precision(), Some(SERIES_PRECISION));
        assert_eq!(inv.coeff(2), CycNum::int(9));
        assert!(Scalar::mul(&a, &inv).is_one());
        let q = s(&[0, 0, 2]).div_hbar_pow(2).unwrap();
        assert_eq!(q, s(&[2]));
        assert!(s(&[0, 1]).try_inv().is_none());
        let lost = inv.div_uniformizer(0);
        assert_eq!(lost.precision(), Some(SERIES_PRECISION));
    }

    #[test]
    fn agrees_with_rational_functions() {
        // ħ²(3+ħ)/(1+2ħ)
        let num = UPoly::from_coeffs([0, 0, 3, 1].map(CycNum::int).to_vec());
        let den = UPoly::from_coeffs([1, 2].map(CycNum::int).to_vec());
        let r = HbarScalar::new(num, den).unwrap();
        let e = HbarSeries::from_hbar_scalar(&r, 8);
        assert_eq!(e.valuation(), Valuation::Finite(2));
        // 3 + ħ − 6ħ − … : coefficient of ħ³ is 1 − 6 = −5
        assert_eq!(e.coeff(3), CycNum::int(-5));
        assert_eq!(e.eval0(), r.eval0());
    }
}
