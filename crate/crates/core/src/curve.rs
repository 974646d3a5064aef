//! The point scheme E = V(φ) ⊂ ℙ², the automorphism σ and the chord-tangent
//! group law with origin [1:−1:0].

use std::fmt;

use thiserror::Error;

use crate::exactfield::{parse_cyc, CycNum, ParseError, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("parameters lie in the forbidden set: {0}")]
    Forbidden(&'static str),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point {0} is not on E")]
    NotOnCurve(String),
    #[error("degenerate line through {0} and {1}")]
    Degenerate(String, String),
    #[error("sigma order disagreement: group law gives {group:?}, iteration gives {iterate:?}")]
    OrderMismatch {
        group: Option<u32>,
        iterate: Option<u32>,
    },
    #[error("cannot parse parameters {input:?}: {reason}")]
    BadParams { input: String, reason: String },
}

impl From<ParseError> for CurveError {
    fn from(e: ParseError) -> Self {
        CurveError::BadParams {
            input: String::new(),
            reason: e.to_string(),
        }
    }
}

/// The Sklyanin parameters (a, b, c).
///
/// The triple is kept exactly as supplied: the central element g is a
/// degree-4 expression in a, b, c, so rescaling the triple rescales g.
/// Projective comparisons go through [`SklyaninParams::point`].
#[derive(Clone, Debug, PartialEq)]
pub struct SklyaninParams {
    pub a: CycNum,
    pub b: CycNum,
    pub c: CycNum,
}

impl SklyaninParams {
    pub fn new(a: CycNum, b: CycNum, c: CycNum) -> Result<Self, CurveError> {
        let p = SklyaninParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Result<Self, CurveError> {
        Self::new(CycNum::int(a), CycNum::int(b), CycNum::int(c))
    }

    /// Parse `"a,b,c"` with scalars over ℚ(ζ_m).
    pub fn parse(s: &str, m: u32) -> Result<Self, CurveError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(CurveError::BadParams {
                input: s.to_string(),
                reason: "expected three comma-separated scalars".into(),
            });
        }
        let mut v = Vec::new();
        for p in parts {
            v.push(parse_cyc(p.trim(), m).map_err(|e| CurveError::BadParams {
                input: s.to_string(),
                reason: e.to_string(),
            })?);
        }
        let c = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        Self::new(a, b, c)
    }

    /// Membership test for the forbidden set, naming the violated condition.
    pub fn validate(&self) -> Result<(), CurveError> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let zeros = [a, b, c].iter().filter(|v| v.is_zero_val()).count();
        if zeros >= 2 {
            return Err(CurveError::Forbidden("coordinate point"));
        }
        let (a3, b3, c3) = (a.pow(3), b.pow(3), c.pow(3));
        if a3 == b3 && b3 == c3 {
            return Err(CurveError::Forbidden("a^3 = b^3 = c^3"));
        }
        if zeros == 1 {
            return Err(CurveError::Forbidden("abc = 0"));
        }
        let abc = &(a * b) * c;
        let lhs = (&abc * &CycNum::int(3)).pow(3);
        let rhs = (&(&a3 + &b3) + &c3).pow(3);
        if lhs == rhs {
            return Err(CurveError::Forbidden("(3abc)^3 = (a^3+b^3+c^3)^3"));
        }
        Ok(())
    }

    pub fn triple(&self) -> [CycNum; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// [a:b:c] as a normalized projective point.
    pub fn point(&self) -> ProjPoint {
        ProjPoint::new(self.triple()).expect("valid parameters are nonzero")
    }

    /// Largest conductor among the coordinates.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.a.conductor().lcm(&self.b.conductor()).lcm(&self.c.conductor())
    }
}

impl fmt::Display for SklyaninParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// A point of ℙ², normalized so the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    v: [CycNum; 3],
}

impl ProjPoint {
    pub fn new(v: [CycNum; 3]) -> Result<Self, CurveError> {
        let k = (0..3)
            .rev()
            .find(|&i| !v[i].is_zero_val())
            .ok_or(CurveError::ZeroPoint)?;
        let inv = v[k].inv().expect("nonzero");
        Ok(ProjPoint {
            v: [&v[0] * &inv, &v[1] * &inv, &v[2] * &inv],
        })
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Self {
        Self::new([CycNum::int(a), CycNum::int(b), CycNum::int(c)]).unwrap()
    }

    pub fn coords(&self) -> &[CycNum; 3] {
        &self.v
    }

    pub fn to_string_in(&self, m: u32) -> String {
        format!(
            "[{}:{}:{}]",
            self.v[0].to_string_in(m),
            self.v[1].to_string_in(m),
            self.v[2].to_string_in(m)
        )
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.v[0], self.v[1], self.v[2])
    }
}

fn dot(u: &[CycNum; 3], v: &[CycNum; 3]) -> CycNum {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

fn comb(s: &CycNum, p: &[CycNum; 3], t: &CycNum, q: &[CycNum; 3]) -> [CycNum; 3] {
    [0, 1, 2].map(|i| &(s * &p[i]) + &(t * &q[i]))
}

/// E together with its origin and translation point.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub params: SklyaninParams,
    /// abc, the coefficient of v1³+v2³+v3³ in φ
    k3: CycNum,
    /// a³+b³+c³, the coefficient of −v1v2v3
    k1: CycNum,
    pub origin: ProjPoint,
    pub translation_point: ProjPoint,
}

impl CurveData {
    pub fn new(params: &SklyaninParams) -> Self {
        let (a, b, c) = (&params.a, &params.b, &params.c);
        let cd = CurveData {
            params: params.clone(),
            k3: &(a * b) * c,
            k1: &(&a.pow(3) + &b.pow(3)) + &c.pow(3),
            origin: ProjPoint::ints(1, -1, 0),
            translation_point: params.point(),
        };
        assert!(cd.on_curve(&cd.origin), "origin must lie on E");
        assert!(
            cd.on_curve(&cd.translation_point),
            "[a:b:c] must lie on E"
        );
        cd
    }

    /// φ(v) = abc(v1³+v2³+v3³) − (a³+b³+c³)v1v2v3.
    pub fn phi(&self, v: &[CycNum; 3]) -> CycNum {
        let cubes = &(&v[0].pow(3) + &v[1].pow(3)) + &v[2].pow(3);
        let prod = &(&v[0] * &v[1]) * &v[2];
        &(&self.k3 * &cubes) - &(&self.k1 * &prod)
    }

    fn grad(&self, v: &[CycNum; 3]) -> [CycNum; 3] {
        let three = CycNum::int(3);
        let k3x3 = &self.k3 * &three;
        [
            &(&k3x3 * &v[0].pow(2)) - &(&self.k1 * &(&v[1] * &v[2])),
            &(&k3x3 * &v[1].pow(2)) - &(&self.k1 * &(&v[0] * &v[2])),
            &(&k3x3 * &v[2].pow(2)) - &(&self.k1 * &(&v[0] * &v[1])),
        ]
    }

    pub fn on_curve(&self, p: &ProjPoint) -> bool {
        self.phi(&p.v).is_zero_val()
    }

    fn require(&self, p: &ProjPoint) -> Result<(), CurveError> {
        if self.on_curve(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve(p.to_string()))
        }
    }

    /// The third intersection of the line through p and q with E (the
    /// tangent line when p = q).
    pub fn third_point(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, CurveError> {
        let degenerate = || CurveError::Degenerate(p.to_string(), q.to_string());
        if p != q {
            // φ(s·p + t·q) = s·t·(B·s + C·t)
            let b = dot(&self.grad(&p.v), &q.v);
            let c = dot(&self.grad(&q.v), &p.v);
            return ProjPoint::new(comb(&c, &p.v, &b.neg(), &q.v)).map_err(|_| degenerate());
        }
        let g = self.grad(&p.v);
        let z = CycNum::int(0);
        let candidates = [
            [g[1].clone(), g[0].neg(), z.clone()],
            [g[2].clone(), z.clone(), g[0].neg()],
            [z, g[2].clone(), g[1].neg()],
        ];
        let r = candidates
            .into_iter()
            .filter_map(|r| ProjPoint::new(r).ok())
            .find(|r| r != p)
            .ok_or_else(degenerate)?;
        // φ(s·p + t·r) = t²·(C·s + D·t)
        let c = dot(&self.grad(&r.v), &p.v);
        let d = self.phi(&r.v);
        ProjPoint::new(comb(&d, &p.v, &c.neg(), &r.v)).map_err(|_| degenerate())
    }

    pub fn group_add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, CurveError> {
        self.require(p)?;
        self.require(q)?;
        let r = self.third_point(p, q)?;
        self.third_point(&self.origin, &r)
    }

    pub fn group_neg(&self, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
        self.require(p)?;
        let oo = self.third_point(&self.origin, &self.origin)?;
        self.third_point(p, &oo)
    }

    pub fn group_mul(&self, k: i64, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
        let base = if k < 0 { self.group_neg(p)? } else { p.clone() };
        let mut acc = self.origin.clone();
        for _ in 0..k.unsigned_abs() {
            acc = self.group_add(&acc, &base)?;
        }
        Ok(acc)
    }

    /// σ from the three quadrics, falling back to translation by [a:b:c]
    /// when they all vanish.
    pub fn sigma_apply(&self, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
        self.require(p)?;
        let (a, b, c) = (&self.params.a, &self.params.b, &self.params.c);
        let [v1, v2, v3] = &p.v;
        let img = [
            &(&(a * c) * &v2.pow(2)) - &(&b.pow(2) * &(v1 * v3)),
            &(&(b * c) * &v1.pow(2)) - &(&a.pow(2) * &(v2 * v3)),
            &(&(a * b) * &v3.pow(2)) - &(&c.pow(2) * &(v1 * v2)),
        ];
        match ProjPoint::new(img) {
            Ok(q) => Ok(q),
            Err(_) => self.group_add(p, &self.translation_point),
        }
    }

    /// The nine points with v1v2v3 = 0 on v1³+v2³+v3³ = 0. They lie on every E.
    pub fn hesse_points() -> Vec<ProjPoint> {
        let mut out = Vec::new();
        for k in 0..3 {
            let w = CycNum::omega().pow(k).neg();
            let one = CycNum::int(1);
            let zero = CycNum::int(0);
            out.push(ProjPoint::new([one.clone(), w.clone(), zero.clone()]).unwrap());
            out.push(ProjPoint::new([one.clone(), zero.clone(), w.clone()]).unwrap());
            out.push(ProjPoint::new([zero, one, w]).unwrap());
        }
        out
    }
}

/// Order of σ, or `None` when it exceeds `cap`. The group-law order of
/// [a:b:c] is cross-checked against iterating the quadric map on the origin.
pub fn sigma_order(params: &SklyaninParams, cap: u32) -> Result<Option<u32>, CurveError> {
    let cd = CurveData::new(params);
    let p = &cd.translation_point;
    let mut acc = p.clone();
    let mut group = None;
    for k in 1..=cap {
        if acc == cd.origin {
            group = Some(k);
            break;
        }
        acc = cd.group_add(&acc, p)?;
    }
    let mut it = cd.origin.clone();
    let mut iterate = None;
    for k in 1..=cap {
        it = cd.sigma_apply(&it)?;
        if it == cd.origin {
            iterate = Some(k);
            break;
        }
    }
    if group != iterate {
        return Err(CurveError::OrderMismatch { group, iterate });
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forbidden_set() {
        assert_eq!(
            SklyaninParams::ints(1, 0, 0),
            Err(CurveError::Forbidden("coordinate point"))
        );
        assert_eq!(
            SklyaninParams::ints(1, 1, 1),
            Err(CurveError::Forbidden("a^3 = b^3 = c^3"))
        );
        assert_eq!(
            SklyaninParams::ints(1, 2, 0),
            Err(CurveError::Forbidden("abc = 0"))
        );
        // 3abc = a³+b³+c³ at (1, 1, -2)
        assert_eq!(
            SklyaninParams::ints(1, 1, -2),
            Err(CurveError::Forbidden("(3abc)^3 = (a^3+b^3+c^3)^3"))
        );
        assert!(SklyaninParams::ints(1, 1, 2).is_ok());
    }

    #[test]
    fn sigma_of_origin_is_translation_point() {
        let p = SklyaninParams::ints(1, 2, 3).unwrap();
        let cd = CurveData::new(&p);
        assert_eq!(cd.sigma_apply(&cd.origin).unwrap(), ProjPoint::ints(1, 2, 3));
    }

    #[test]
    fn base_point_fallback() {
        let p = SklyaninParams::ints(1, 1, 2).unwrap();
        let cd = CurveData::new(&p);
        assert_eq!(
            cd.sigma_apply(&ProjPoint::ints(1, 1, 2)).unwrap(),
            cd.origin
        );
    }

    #[test]
    fn orders() {
        assert_eq!(sigma_order(&SklyaninParams::ints(1, 1, 2).unwrap(), 12), Ok(Some(2)));
        assert_eq!(sigma_order(&SklyaninParams::ints(1, -1, -1).unwrap(), 12), Ok(Some(6)));
        let tp = CurveData::new(&SklyaninParams::ints(1, 1, 2).unwrap()).translation_point;
        let cd = CurveData::new(&SklyaninParams::ints(1, 1, 2).unwrap());
        assert_eq!(cd.group_add(&tp, &tp).unwrap(), cd.origin);
    }

    #[test]
    fn rejects_off_curve() {
        let cd = CurveData::new(&SklyaninParams::ints(1, 2, 3).unwrap());
        assert!(matches!(
            cd.sigma_apply(&ProjPoint::ints(1, 1, 1)),
            Err(CurveError::NotOnCurve(_))
        ));
    }
}
