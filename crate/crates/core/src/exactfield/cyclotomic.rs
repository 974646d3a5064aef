use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field;
use super::parse::{parse_cyc, ParseError};

/// Conductor used for documents and displays unless configured otherwise.
/// ℚ(ζ₁₂) contains both ζ₃ = ζ₁₂⁴ and i = ζ₁₂³.
pub const DEFAULT_CONDUCTOR: u32 = 12;

#[derive(Debug)]
pub(crate) struct CycloCtx {
    pub(crate) phi: usize,
    /// Φ_m, monic, low-to-high.
    pub(crate) modulus: Vec<BigInt>,
}

fn ctx_registry() -> &'static RwLock<HashMap<u32, Arc<CycloCtx>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<CycloCtx>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn ctx(m: u32) -> Arc<CycloCtx> {
    if let Some(c) = ctx_registry().read().unwrap().get(&m) {
        return c.clone();
    }
    let built = Arc::new(CycloCtx::new(m));
    ctx_registry().write().unwrap().entry(m).or_insert(built).clone()
}

fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut q = vec![BigInt::zero(); num.len() + 1 - dl];
    for k in (0..q.len()).rev() {
        let c = rem[k + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    q
}

/// Integer coefficients of the m-th cyclotomic polynomial, low-to-high.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

pub fn euler_phi(m: u32) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

impl CycloCtx {
    fn new(m: u32) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let phi = modulus.len() - 1;
        CycloCtx { phi, modulus }
    }

    /// Long division by the monic Φ_m.
    fn reduce(&self, mut raw: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.phi;
        if raw.len() > phi {
            for k in (phi..raw.len()).rev() {
                if raw[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut raw[k]);
                for (j, mj) in self.modulus[..phi].iter().enumerate() {
                    if !mj.is_zero() {
                        raw[k - phi + j] -= &c * BigRational::from_integer(mj.clone());
                    }
                }
            }
        }
        raw.resize(phi, BigRational::zero());
        raw
    }
}

/// An element of the cyclotomic field ℚ(ζ_m), stored in the power basis
/// 1, ζ, …, ζ^{φ(m)-1}.
///
/// Elements that happen to be rational are always stored with conductor 1,
/// which keeps the common rational case cheap. Arithmetic between different
/// conductors embeds both operands into ℚ(ζ_lcm).
#[derive(Clone)]
pub struct CycNum {
    m: u32,
    c: Vec<BigRational>,
}

impl CycNum {
    pub fn rational(q: BigRational) -> Self {
        CycNum { m: 1, c: vec![q] }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::from_raw(m, raw)
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// Primitive cube root of unity e^{2πi/3}.
    pub fn omega() -> Self {
        Self::zeta_pow(3, 1)
    }

    /// The imaginary unit e^{2πi/4}.
    pub fn imag() -> Self {
        Self::zeta_pow(4, 1)
    }

    /// Canonical representative of Σ raw[k] ζ_m^k modulo Φ_m.
    pub fn from_raw(m: u32, raw: Vec<BigRational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        if m == 1 {
            let s = raw.into_iter().fold(BigRational::zero(), |a, b| a + b);
            return Self::rational(s);
        }
        let cx = ctx(m);
        let c = cx.reduce(raw);
        CycNum { m, c }.demote()
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Coordinates in the power basis of the element's own conductor.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.m == 1 {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn demote(mut self) -> Self {
        if self.m != 1 && self.c[1..].iter().all(|x| x.is_zero()) {
            let q = std::mem::take(&mut self.c[0]);
            return CycNum { m: 1, c: vec![q] };
        }
        self
    }

    /// Power-basis coordinates in ℚ(ζ_target); `self.m` must divide `target`.
    pub fn coeffs_in(&self, target: u32) -> Vec<BigRational> {
        assert!(
            target % self.m == 0,
            "conductor {} does not divide {}",
            self.m,
            target
        );
        let phi = ctx(target).phi;
        if self.m == target {
            return self.c.clone();
        }
        if self.m == 1 {
            let mut v = vec![BigRational::zero(); phi];
            v[0] = self.c[0].clone();
            return v;
        }
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); (self.c.len() - 1) * step + 1];
        for (j, cj) in self.c.iter().enumerate() {
            raw[j * step] = cj.clone();
        }
        let mut v = ctx(target).reduce(raw);
        v.resize(phi, BigRational::zero());
        v
    }

    fn scale(&self, q: &BigRational) -> CycNum {
        if q.is_zero() {
            return CycNum::rational(BigRational::zero());
        }
        CycNum {
            m: self.m,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Exact equality test against zero.
    pub fn is_zero_val(&self) -> bool {
        self.m == 1 && self.c[0].is_zero()
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> CycNum {
        if self.m == 1 {
            return self.clone();
        }
        let m = self.m as usize;
        let mut raw = vec![BigRational::zero(); m];
        for (j, cj) in self.c.iter().enumerate() {
            raw[(m - j) % m] += cj;
        }
        CycNum::from_raw(self.m, raw)
    }

    /// Render in the power basis of ζ_m for `m` a multiple of the conductor,
    /// e.g. `(-3/2)*z^2 + 1/4`.
    pub fn to_string_in(&self, m: u32) -> String {
        let coeffs = self.coeffs_in(m);
        let mut terms: Vec<String> = Vec::new();
        for (k, q) in coeffs.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let t = if k == 0 {
                fmt_rational(q)
            } else {
                let zk = if k == 1 {
                    "z".to_string()
                } else {
                    format!("z^{}", k)
                };
                if q.is_one() {
                    zk
                } else if (-q).is_one() {
                    format!("-{}", zk)
                } else {
                    format!("({})*{}", fmt_rational(q), zk)
                }
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }

    pub fn parse_in(s: &str, m: u32) -> Result<CycNum, ParseError> {
        parse_cyc(s, m)
    }

    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero_val() {
            return None;
        }
        if self.m == 1 {
            return Some(CycNum::rational(self.c[0].recip()));
        }
        let cx = ctx(self.m);
        let a: Vec<BigRational> = self.c.clone();
        let f: Vec<BigRational> = cx
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // s*a + t*f = gcd = const
        let (g, s) = qpoly_ext_gcd(&a, &f);
        assert!(g.len() == 1, "Φ_m is irreducible, gcd must be constant");
        let ginv = g[0].recip();
        let raw: Vec<BigRational> = s.into_iter().map(|x| x * &ginv).collect();
        Some(CycNum::from_raw(self.m, raw))
    }
}

fn qtrim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    qtrim(&mut r);
    let mut b = b.to_vec();
    qtrim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    qtrim(&mut r);
    qtrim(&mut q);
    (q, r)
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    qtrim(&mut out);
    out
}

/// Returns (g, s) with s*a ≡ g (mod f).
fn qpoly_ext_gcd(a: &[BigRational], f: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    qtrim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = qdivrem(&r0, &r1);
        let s2 = qsub(&s0, &qmul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.c == other.c;
        }
        if self.m == 1 || other.m == 1 {
            // demotion guarantees a non-rational element never equals a rational one
            return false;
        }
        let l = self.m.lcm(&other.m);
        self.coeffs_in(l) == other.coeffs_in(l)
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.m, self.to_string_in(self.m))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m.lcm(&DEFAULT_CONDUCTOR);
        f.write_str(&self.to_string_in(m))
    }
}

fn lift_pair(a: &CycNum, b: &CycNum) -> (u32, Vec<BigRational>, Vec<BigRational>) {
    if a.m == b.m {
        return (a.m, a.c.clone(), b.c.clone());
    }
    let l = a.m.lcm(&b.m);
    (l, a.coeffs_in(l), b.coeffs_in(l))
}

impl field::Scalar for CycNum {
    fn zero() -> Self {
        CycNum::rational(BigRational::zero())
    }
    fn one() -> Self {
        CycNum::rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        CycNum::int(v)
    }
    fn from_rational(q: &BigRational) -> Self {
        CycNum::rational(q.clone())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_val()
    }
    fn is_one(&self) -> bool {
        self.m == 1 && self.c[0].is_one()
    }
    fn is_unit(&self) -> bool {
        !self.is_zero_val()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.m == 1 && rhs.m == 1 {
            return CycNum::rational(&self.c[0] + &rhs.c[0]);
        }
        if rhs.m == 1 {
            let mut out = self.clone();
            out.c[0] += &rhs.c[0];
            return out;
        }
        if self.m == 1 {
            let mut out = rhs.clone();
            out.c[0] += &self.c[0];
            return out;
        }
        let (m, mut a, b) = lift_pair(self, rhs);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        CycNum { m, c: a }.demote()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.m == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.m == 1 {
            return self.scale(&rhs.c[0]);
        }
        let (m, a, b) = lift_pair(self, rhs);
        let mut raw = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CycNum {
            m,
            c: ctx(m).reduce(raw),
        }
        .demote()
    }
    fn neg(&self) -> Self {
        CycNum {
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn add_assign(&mut self, rhs: &Self) {
        if self.m == 1 && rhs.m == 1 {
            self.c[0] += &rhs.c[0];
            return;
        }
        if rhs.m == 1 {
            self.c[0] += &rhs.c[0];
            return;
        }
        if self.m == rhs.m {
            for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
                *x += y;
            }
            let taken = std::mem::replace(self, CycNum::int(0));
            *self = taken.demote();
            return;
        }
        *self = field::Scalar::add(self, rhs);
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.m == 1 && b.m == 1 {
            self.c[0] += &a.c[0] * &b.c[0];
            return;
        }
        let p = a.mul(b);
        self.add_assign(&p);
    }
}

impl std::ops::Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        field::Scalar::add(self, rhs)
    }
}
impl std::ops::Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        field::Scalar::sub(self, rhs)
    }
}
impl std::ops::Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        field::Scalar::mul(self, rhs)
    }
}
impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        field::Scalar::neg(self)
    }
}
impl std::ops::Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        field::Scalar::add(&self, &rhs)
    }
}
impl std::ops::Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        field::Scalar::sub(&self, &rhs)
    }
}
impl std::ops::Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        field::Scalar::mul(&self, &rhs)
    }
}
impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        field::Scalar::neg(&self)
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::int(v)
    }
}

impl From<BigRational> for CycNum {
    fn from(q: BigRational) -> Self {
        CycNum::rational(q)
    }
}
