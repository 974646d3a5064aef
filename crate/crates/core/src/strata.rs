//! Geometry of Y = maxSpec Z: singular locus, the curves C_i, slices Y_γ,
//! the four strata, the Azumaya locus and discriminant zero sets.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::{extract_structural_data, CenterError, CenterPresentation, G};
use crate::commpoly::CPoly;
use crate::exactfield::{CycNum, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrataError {
    #[error("point {0} is not on Y")]
    NotOnY(String),
    #[error("singularity criteria disagree at {0}")]
    Falsified(String),
    #[error("the curves C_i exist only when 3 divides n (n = {0})")]
    NoCurves(u32),
    #[error("k = {k} is outside 1..={max}")]
    KOutOfRange { k: u32, max: u32 },
    #[error("sampling Y for n = {0} needs f3 with n/3 prime to 3")]
    NoSampler(u32),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// A point (z1, z2, z3, g) of 𝔸⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoint(pub [CycNum; 4]);

impl YPoint {
    pub fn ints(v: [i64; 4]) -> Self {
        YPoint(v.map(CycNum::int))
    }

    pub fn origin() -> Self {
        Self::ints([0, 0, 0, 0])
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|c| c.is_zero_val())
    }

    pub fn g(&self) -> &CycNum {
        &self.0[G]
    }

    /// (β^n z1, β^n z2, β^n z3, β³ g)
    pub fn dilate(&self, beta: &CycNum, n: u32) -> Self {
        let bn = beta.pow(n);
        let b3 = beta.pow(3);
        let p = &self.0;
        YPoint([&bn * &p[0], &bn * &p[1], &bn * &p[2], &b3 * &p[3]])
    }

    /// The ℤ₃ action z_i ↦ z_{i+1}.
    pub fn rotate(&self) -> Self {
        let p = &self.0;
        YPoint([p[2].clone(), p[0].clone(), p[1].clone(), p[3].clone()])
    }

    pub fn to_string_in(&self, m: u32) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string_in(m)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for YPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(12))
    }
}

/// F together with the data the stratification needs.
#[derive(Clone, Debug)]
pub struct YGeometry {
    pub n: u32,
    pub f: CPoly,
    pub partials: [CPoly; 4],
    /// α with ℓ = α(z1+z2+z3), present when 3 | n.
    pub alpha: Option<CycNum>,
    /// f₃ with g^{n/3} + f₃(u) = 0 and z_i = u_i³, present when 3 | n.
    pub f3: Option<CPoly>,
}

impl YGeometry {
    pub fn new(f: &CPoly, n: u32, f3: Option<CPoly>) -> Result<Self, StrataError> {
        let s = extract_structural_data(f, n)?;
        Ok(YGeometry {
            n,
            f: f.clone(),
            partials: [0, 1, 2, 3].map(|i| f.partial(i)),
            alpha: s.alpha,
            f3,
        })
    }

    pub fn from_center(cp: &CenterPresentation) -> Self {
        YGeometry {
            n: cp.n,
            f: cp.f.clone(),
            partials: cp.partials(),
            alpha: cp.structure.alpha.clone(),
            f3: cp.f3.clone(),
        }
    }

    pub fn on_y(&self, p: &YPoint) -> bool {
        self.f.eval(&p.0).is_zero_val()
    }

    fn require_on_y(&self, p: &YPoint) -> Result<(), StrataError> {
        if self.on_y(p) {
            Ok(())
        } else {
            Err(StrataError::NotOnY(p.to_string()))
        }
    }
}

/// All four partials vanish; checked against the three z-partials.
pub fn singular_test(geo: &YGeometry, p: &YPoint) -> Result<bool, StrataError> {
    geo.require_on_y(p)?;
    let vals: Vec<bool> = geo.partials.iter().map(|d| d.eval(&p.0).is_zero_val()).collect();
    let four = vals.iter().all(|&v| v);
    let three = vals[..3].iter().all(|&v| v);
    if four != three {
        return Err(StrataError::Falsified(p.to_string()));
    }
    Ok(four)
}

/// C_i = {g^{n/3} + α z_i = 0, z_{i+1} = z_{i+2} = 0}, parametrized by g.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveC {
    pub index: usize,
    pub alpha: CycNum,
    pub n: u32,
}

impl CurveC {
    pub fn point(&self, g: &CycNum) -> YPoint {
        let mut v = [CycNum::int(0), CycNum::int(0), CycNum::int(0), g.clone()];
        v[self.index] = -(&g.pow(self.n / 3) * &self.alpha.inv().unwrap());
        YPoint(v)
    }

    pub fn contains(&self, p: &YPoint) -> bool {
        let i = self.index;
        (1..3).all(|k| p.0[(i + k) % 3].is_zero_val())
            && (&p.g().pow(self.n / 3) + &(&self.alpha * &p.0[i])).is_zero_val()
    }
}

pub fn curves_c(geo: &YGeometry) -> Result<[CurveC; 3], StrataError> {
    match (&geo.alpha, geo.n % 3) {
        (Some(a), 0) => Ok([0, 1, 2].map(|index| CurveC {
            index,
            alpha: a.clone(),
            n: geo.n,
        })),
        _ => Err(StrataError::NoCurves(geo.n)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StratumTag {
    Y1,
    Y2,
    Y3,
    Y4,
}

impl fmt::Display for StratumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The symplectic core through a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Core {
    /// Y_γ minus its singular points.
    SmoothSlice { gamma: CycNum },
    Singleton(YPoint),
}

impl Core {
    pub fn describe(&self, m: u32) -> String {
        match self {
            Core::SmoothSlice { gamma } => format!("Y_gamma minus singular points, gamma = {}", gamma.to_string_in(m)),
            Core::Singleton(p) => format!("singleton {}", p.to_string_in(m)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub tag: StratumTag,
    pub core: Core,
}

pub fn classify_stratum(geo: &YGeometry, p: &YPoint) -> Result<Stratum, StrataError> {
    geo.require_on_y(p)?;
    let single = || Core::Singleton(p.clone());
    if p.is_origin() {
        return Ok(Stratum {
            tag: StratumTag::Y4,
            core: single(),
        });
    }
    let gamma = p.g().clone();
    if gamma.is_zero_val() {
        return Ok(Stratum {
            tag: StratumTag::Y3,
            core: Core::SmoothSlice { gamma },
        });
    }
    if let Ok(cs) = curves_c(geo) {
        if cs.iter().any(|c| c.contains(p)) {
            return Ok(Stratum {
                tag: StratumTag::Y2,
                core: single(),
            });
        }
    }
    Ok(Stratum {
        tag: StratumTag::Y1,
        core: Core::SmoothSlice { gamma },
    })
}

/// Irreducible representations over p have maximal dimension n.
pub fn azumaya_test(geo: &YGeometry, p: &YPoint) -> Result<bool, StrataError> {
    Ok(!singular_test(geo, p)?)
}

/// Singular points of the slice g = γ.
pub fn slice_singulars(geo: &YGeometry, gamma: &CycNum) -> Vec<YPoint> {
    if gamma.is_zero_val() {
        return vec![YPoint::origin()];
    }
    match curves_c(geo) {
        Ok(cs) => cs.iter().map(|c| c.point(gamma)).collect(),
        Err(_) => Vec::new(),
    }
}

/// Dimensions of the irreducible representations with central character p.
pub fn expected_irrep_profile(geo: &YGeometry, p: &YPoint) -> Result<Vec<u32>, StrataError> {
    let n = geo.n;
    Ok(match classify_stratum(geo, p)?.tag {
        StratumTag::Y1 | StratumTag::Y3 => vec![n],
        StratumTag::Y2 => vec![n / 3; 3],
        StratumTag::Y4 => vec![1],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSet {
    Empty,
    Origin,
    /// C₁ ∪ C₂ ∪ C₃, which contains the origin.
    Curves,
}

/// Σ dim² over the irreducibles of each stratum: the rank of the trace form.
pub fn trace_form_rank(n: u32, tag: StratumTag) -> u32 {
    match tag {
        StratumTag::Y1 | StratumTag::Y3 => n * n,
        StratumTag::Y2 => n * n / 3,
        StratumTag::Y4 => 1,
    }
}

/// Zero set of the k-th discriminant ideal: the points where the trace form
/// of the fibre has rank below k.
pub fn discriminant_zero_set(n: u32, k: u32) -> Result<ZeroSet, StrataError> {
    if k == 0 || k > n * n {
        return Err(StrataError::KOutOfRange { k, max: n * n });
    }
    let below = |t| trace_form_rank(n, t) < k;
    Ok(if n % 3 == 0 && below(StratumTag::Y2) {
        ZeroSet::Curves
    } else if below(StratumTag::Y4) {
        ZeroSet::Origin
    } else {
        ZeroSet::Empty
    })
}

fn small_rational(rng: &mut StdRng) -> CycNum {
    let num = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
    CycNum::frac(num, rng.gen_range(1..=3))
}

/// The nine base points of the Hesse pencil, all on Y_0 for these F.
fn hesse_flexes() -> Vec<[CycNum; 3]> {
    let w = CycNum::omega();
    let mut out = Vec::new();
    for k in 0..3u32 {
        let r = -w.pow(k);
        let (o, z) = (CycNum::int(1), CycNum::int(0));
        out.push([z.clone(), o.clone(), r.clone()]);
        out.push([r.clone(), z.clone(), o.clone()]);
        out.push([o, r, z]);
    }
    out
}

/// Exact points of Y, drawn with a seeded generator.
pub struct YSampler {
    rng: StdRng,
}

impl YSampler {
    pub fn new(seed: u64) -> Self {
        YSampler {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub fn nonzero_rational(&mut self) -> CycNum {
        small_rational(&mut self.rng)
    }

    /// A point with g ≠ 0 off the curves. For (n, 3) = 1, F = g^n + Φ(z) and
    /// z = s·v with s = (−Φ(v))^k r^n, 3k + 1 ≡ 0 (mod n), gives g^n = −s³Φ(v)
    /// an n-th power. For 3 | n the same trick on g^{n/3} + f₃(u) yields u and
    /// z_i = u_i³.
    pub fn generic(&mut self, geo: &YGeometry) -> Result<YPoint, StrataError> {
        if geo.n % 3 == 0 && (geo.f3.is_none() || geo.n % 9 == 0) {
            return Err(StrataError::NoSampler(geo.n));
        }
        loop {
            let v: Vec<CycNum> = (0..3).map(|_| small_rational(&mut self.rng)).collect();
            let r = small_rational(&mut self.rng);
            let (cubic, m) = match &geo.f3 {
                Some(f3) if geo.n % 3 == 0 => (f3.clone(), geo.n / 3),
                _ => {
                    let mut phi = CPoly::zero(3);
                    for (e, c) in crate::center::g_coefficient(&geo.f, 0).terms() {
                        phi.add_term(e[..3].to_vec(), c.clone());
                    }
                    (phi, geo.n)
                }
            };
            let phi = -cubic.eval(&v);
            if phi.is_zero_val() {
                continue;
            }
            let k = (0..m).find(|k| (3 * k + 1) % m == 0).unwrap();
            let s = &phi.pow(k) * &r.pow(m);
            let g = &phi.pow((3 * k + 1) / m) * &r.pow(3);
            let base: Vec<CycNum> = v.iter().map(|x| &s * x).collect();
            let z: Vec<CycNum> = if geo.f3.is_some() && geo.n % 3 == 0 {
                base.iter().map(|u| u.pow(3)).collect()
            } else {
                base
            };
            let p = YPoint([z[0].clone(), z[1].clone(), z[2].clone(), g]);
            if geo.on_y(&p) && !matches!(classify_stratum(geo, &p), Ok(Stratum { tag: StratumTag::Y2, .. })) {
                return Ok(p);
            }
        }
    }

    /// A nonzero point with g = 0: a dilated Hesse flex.
    pub fn on_y0(&mut self, geo: &YGeometry) -> YPoint {
        let flexes: Vec<[CycNum; 3]> = hesse_flexes()
            .into_iter()
            .filter(|f| geo.f.eval(&[f[0].clone(), f[1].clone(), f[2].clone(), CycNum::int(0)]).is_zero_val())
            .collect();
        let f = &flexes[self.rng.gen_range(0..flexes.len())];
        let t = small_rational(&mut self.rng);
        YPoint([&t * &f[0], &t * &f[1], &t * &f[2], CycNum::int(0)])
    }

    /// A point of C_i with g ≠ 0, for 3 | n.
    pub fn on_curve(&mut self, geo: &YGeometry, i: usize) -> Result<YPoint, StrataError> {
        let cs = curves_c(geo)?;
        let g = small_rational(&mut self.rng);
        Ok(cs[i].point(&g))
    }

    /// A mix over all strata: mostly Y1, with Y3, Y2 (when 3 | n) and the origin.
    pub fn mixed(&mut self, geo: &YGeometry) -> Result<YPoint, StrataError> {
        Ok(match self.rng.gen_range(0..10) {
            0 => YPoint::origin(),
            1 | 2 => self.on_y0(geo),
            3 | 4 if geo.n % 3 == 0 => {
                let i = self.rng.gen_range(0..3);
                self.on_curve(geo, i)?
            }
            _ => self.generic(geo)?,
        })
    }
}

/// A static sketch of the slices Y_γ, the curves C_i and the origin.
pub fn figure1_svg(n: u32) -> String {
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" viewBox=\"0 0 480 360\">\n");
    s.push_str("  <rect width=\"480\" height=\"360\" fill=\"white\"/>\n");
    let slices = [(60, "Y_0"), (180, "Y_gamma"), (300, "Y_gamma'")];
    for (y, label) in slices {
        s.push_str(&format!(
            "  <ellipse cx=\"240\" cy=\"{y}\" rx=\"170\" ry=\"34\" fill=\"none\" stroke=\"black\"/>\n  <text x=\"420\" y=\"{}\" font-size=\"14\">{label}</text>\n",
            y + 5
        ));
    }
    s.push_str("  <circle cx=\"240\" cy=\"60\" r=\"4\" fill=\"black\"/>\n  <text x=\"248\" y=\"52\" font-size=\"12\">0</text>\n");
    if n % 3 == 0 {
        let xs = [150, 240, 330];
        for (i, x) in xs.iter().enumerate() {
            s.push_str(&format!(
                "  <path d=\"M240 60 Q{x} 180 {x} 300\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n  <text x=\"{}\" y=\"330\" font-size=\"12\">C_{}</text>\n",
                x - 8,
                i + 1
            ));
            for y in [180, 300] {
                s.push_str(&format!("  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>\n"));
            }
        }
    }
    s.push_str(&format!(
        "  <text x=\"20\" y=\"350\" font-size=\"12\">n = {n}: singular points of each slice marked</text>\n</svg>\n"
    ));
    s
}
