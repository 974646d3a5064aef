use std::fmt;

use super::field::Scalar;

/// Dense univariate polynomial, coefficients low-to-high, no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct UPoly<F: Scalar> {
    c: Vec<F>,
}

impl<F: Scalar> UPoly<F> {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(v: F) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// The monomial `coef * t^k`.
    pub fn monomial(coef: F, k: usize) -> Self {
        let mut c = vec![F::zero(); k + 1];
        c[k] = coef;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<F>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, t: &F) -> F {
        let mut acc = F::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(t);
            acc.add_assign(c);
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => out.push(a.add(b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UPoly {
            c: self.c.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j].add_mul_assign(a, b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x.mul(s)).collect())
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    /// Divide by t^k; the low k coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.c[..k.min(self.c.len())].iter().any(|x| !x.is_zero()) {
            return None;
        }
        if k >= self.c.len() {
            return Some(Self::zero());
        }
        Some(UPoly {
            c: self.c[k..].to_vec(),
        })
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.c[dd].try_inv().expect("leading coefficient must be a unit");
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                let p = c.mul(dj);
                r[k + j].sub_assign(&p);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.try_inv().expect("unit leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x.mul(&F::from_i64(k as i64)))
                .collect(),
        )
    }
}

impl<F: Scalar> UPoly<F> {
    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({})", cs) } else { cs };
            parts.push(match k {
                0 => cs,
                1 => format!("{}*{}", cs, var),
                _ => format!("{}*{}^{}", cs, var, k),
            });
        }
        parts.join(" + ")
    }
}

impl<F: Scalar> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::CycNum;

    fn p(v: &[i64]) -> UPoly<CycNum> {
        UPoly::from_coeffs(v.iter().map(|&x| CycNum::int(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[5, 0, 3, 1]);
        let b = p(&[1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }
}
