use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::Scalar;

use super::word::Word;

/// Element of the free algebra 𝕜⟨x, y, z⟩ with coefficients in `F`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct NCPoly<F: Scalar> {
    terms: BTreeMap<Word, F>,
}

impl<F: Scalar> Default for NCPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> NCPoly<F> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), F::one())
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    /// The generator x (0), y (1) or z (2).
    pub fn gen(l: u8) -> Self {
        Self::monomial(Word::letter(l), F::one())
    }

    pub fn x() -> Self {
        Self::gen(0)
    }
    pub fn y() -> Self {
        Self::gen(1)
    }
    pub fn z() -> Self {
        Self::gen(2)
    }

    /// Linear form c0·x + c1·y + c2·z.
    pub fn linear(c: [F; 3]) -> Self {
        let mut p = Self::zero();
        for (l, ci) in c.into_iter().enumerate() {
            p.add_term(Word::letter(l as u8), ci);
        }
        p
    }

    /// Build from (word string, coefficient) pairs; panics on a bad word.
    pub fn from_terms<S: AsRef<str>>(terms: impl IntoIterator<Item = (S, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            let w = Word::parse(w.as_ref()).expect("word over x, y, z");
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign(&c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word degree present (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |w| w.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|w| w.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Product in the free algebra (no reduction).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// [self, o] in the free algebra.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> NCPoly<G> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Apply the algebra map sending the generators to `images`.
    pub fn substitute(&self, images: &[NCPoly<F>; 3]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut prod = Self::one();
            for &l in w.letters() {
                prod = prod.mul(&images[l as usize]);
            }
            out = out.add(&prod.scale(c));
        }
        out
    }
}

impl<F: Scalar> fmt::Display for NCPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", w)?;
            } else {
                write!(f, "({})*{}", c, w)?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for NCPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::CycNum;

    #[test]
    fn commutator_of_generators() {
        let x = NCPoly::<CycNum>::x();
        let y = NCPoly::<CycNum>::y();
        let c = x.commutator(&y);
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff(&Word::parse("xy").unwrap()), CycNum::int(1));
        assert_eq!(c.coeff(&Word::parse("yx").unwrap()), CycNum::int(-1));
        assert!(x.commutator(&x).is_zero());
    }

    #[test]
    fn substitution_is_multiplicative() {
        let p = NCPoly::<CycNum>::from_terms([("xy", CycNum::int(2)), ("z", CycNum::int(1))]);
        let imgs = [NCPoly::y(), NCPoly::z(), NCPoly::x()];
        let q = p.substitute(&imgs);
        assert_eq!(
            q,
            NCPoly::from_terms([("yz", CycNum::int(2)), ("x", CycNum::int(1))])
        );
    }
}
