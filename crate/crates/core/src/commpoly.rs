//! Sparse commutative polynomials over ℚ(ζ_m), used for F, Φ, f₃ and the
//! Poisson brackets.

use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::{CycNum, Scalar};

/// Polynomial in `nvars` commuting variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, CycNum::int(1))
    }

    pub fn monomial(exps: Vec<u32>, c: CycNum) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: CycNum) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero_val() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero_val() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> CycNum {
        self.terms.get(exps).cloned().unwrap_or_else(|| CycNum::int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CPoly {
        self.scale(&CycNum::int(-1))
    }

    pub fn scale(&self, s: &CycNum) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut acc = CPoly::constant(self.nvars, CycNum::int(1));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * &CycNum::int(e[i] as i64));
            }
        }
        out
    }

    pub fn eval(&self, pt: &[CycNum]) -> CycNum {
        let mut s = CycNum::int(0);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            s = &s + &t;
        }
        s
    }

    /// Substitute polynomials (all in the same ring) for the variables.
    pub fn compose(&self, images: &[CPoly]) -> CPoly {
        let nv = images[0].nvars;
        let mut out = CPoly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = CPoly::constant(nv, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Weighted degree if every term has the same one.
    pub fn weighted_degree(&self, w: &[u32]) -> Option<u32> {
        let mut it = self
            .terms
            .keys()
            .map(|e| e.iter().zip(w).map(|(a, b)| a * b).sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Remainder modulo `f`, where `f` has leading term `var^k` with
    /// coefficient 1 in the variable `var`.
    pub fn rem_monic(&self, f: &CPoly, var: usize) -> CPoly {
        let k = f.degree_in(var);
        let mut lead = vec![0; self.nvars];
        lead[var] = k;
        assert!(f.coeff(&lead).is_one(), "divisor must be monic in var");
        assert!(
            f.terms.keys().all(|e| e[var] < k || *e == lead),
            "divisor leading term must be a pure power"
        );
        let tail = f.sub(&CPoly::monomial(lead, CycNum::int(1)));
        let mut p = self.clone();
        loop {
            let hit = p
                .terms
                .iter()
                .rev()
                .find(|(e, _)| e[var] >= k)
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = hit else { return p };
            p.add_term(e.clone(), c.neg());
            let mut rest = e;
            rest[var] -= k;
            p = p.sub(&tail.mul(&CPoly::monomial(rest, c)));
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CycNum) -> CycNum) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Render with the given variable names and conductor.
    pub fn to_string_with(&self, names: &[&str], m: u32) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let cs = c.to_string_in(m);
            let term = if mono.is_empty() {
                format!("({})", cs)
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("({})*{}", cs, mono.join("*"))
            };
            if n > 0 {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.to_string_with(&refs, 12))
    }
}
