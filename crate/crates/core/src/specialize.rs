//! Specialization ħ → 0 of a one-parameter deformation S_ħ = S(a+αħ, b+βħ, c+γħ):
//! level-N special derivations of S and the Poisson bracket they induce on Z.

use rayon::prelude::*;
use thiserror::Error;

use crate::center::{
    correction_count, express_central, g_normalizer, g_raw, nf_pow, CenterError,
    CenterPresentation, GoodBasis,
};
use crate::commpoly::CPoly;
use crate::curve::{sigma_order, CurveError, SklyaninParams};
use crate::exactfield::{CycNum, HbarError, HbarSeries, Scalar, Valuation};
use crate::freealg::{NCPoly, RewriteError, RewriteSystem};
use crate::linalg::{solve, Solution};
use crate::poisson::PoissonStructure;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecializeError {
    #[error(transparent)]
    Center(#[from] CenterError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Hbar(#[from] HbarError),
    #[error("direction is zero")]
    ZeroDirection,
    #[error("direction rejected: no sampled shift leaves the degree-{n} locus")]
    DirectionRejected { n: u32 },
    #[error("rule {lead} does not specialize to a relation of S at h = 0")]
    BadSpecialization { lead: String },
    #[error("lift of {z} does not commute with {w} at h = 0")]
    NotASection { z: String, w: char },
    #[error("all commutators vanish identically; the level is unbounded")]
    Unbounded,
    #[error("induced bracket vanishes at level {level} and no correction terms are available")]
    NoCorrection { level: u32 },
    #[error("no correction constants raise the level beyond {level}")]
    CorrectionInconsistent { level: u32 },
    #[error("level search exceeded the bound {bound}")]
    LevelBound { bound: u32 },
    #[error("∂_{z}({w}) is not central")]
    NotCentral { z: String, w: String },
    #[error("induced bracket is not proportional to the dF bracket: {0}")]
    Proportionality(String),
}

pub const LIFT_NAMES: [&str; 4] = ["z1", "z2", "z3", "g"];

fn lift(p: &NCPoly<CycNum>) -> NCPoly<HbarSeries> {
    p.map_coeffs(|c| HbarSeries::constant(c.clone()))
}

/// θ: set ħ = 0.
pub fn theta(p: &NCPoly<HbarSeries>) -> NCPoly<CycNum> {
    p.map_coeffs(|c| c.eval0())
}

fn min_valuation(p: &NCPoly<HbarSeries>) -> Valuation {
    p.terms()
        .map(|(_, c)| c.valuation())
        .min()
        .unwrap_or(Valuation::Infinite)
}

fn shifted(params: &SklyaninParams, dir: &[CycNum; 3], d: i64) -> [CycNum; 3] {
    let t = params.triple();
    let d = CycNum::int(d);
    [0, 1, 2].map(|i| &t[i] + &(&d * &dir[i]))
}

/// First d ∈ {1, −1, 2, −2, …} for which the shifted parameters are admissible
/// and σ has no order dividing n.
pub fn direction_witness(
    params: &SklyaninParams,
    direction: &[CycNum; 3],
    n: u32,
    samples: u32,
    order_cap: u32,
) -> Option<i64> {
    if direction.iter().all(|c| c.is_zero_val()) {
        return None;
    }
    for k in 1..=samples as i64 {
        let d = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
        let [a, b, c] = shifted(params, direction, d);
        let Ok(p) = SklyaninParams::new(a, b, c) else {
            continue;
        };
        match sigma_order(&p, order_cap) {
            Ok(Some(m)) if n % m == 0 => continue,
            Ok(_) => return Some(d),
            Err(_) => continue,
        }
    }
    None
}

pub fn check_direction(params: &SklyaninParams, direction: &[CycNum; 3], samples: u32) -> bool {
    match sigma_order(params, 12) {
        Ok(Some(n)) => direction_witness(params, direction, n, samples, 12).is_some(),
        _ => false,
    }
}

/// S(ã, b̃, c̃) over the ħ-local ring.
#[derive(Clone, Debug)]
pub struct HbarAlgebra {
    pub params: SklyaninParams,
    pub direction: [CycNum; 3],
    pub deformed: [HbarSeries; 3],
    pub n: u32,
    pub rs: RewriteSystem<HbarSeries>,
}

impl HbarAlgebra {
    /// Needs cap ≥ n + 1; the default used by [`specialize`] is max(n + 2, 5).
    pub fn new(
        params: &SklyaninParams,
        direction: &[CycNum; 3],
        n: u32,
        cap: usize,
    ) -> Result<Self, SpecializeError> {
        if direction_witness(params, direction, n, 8, 12).is_none() {
            return Err(SpecializeError::DirectionRejected { n });
        }
        Self::new_unchecked(params, direction, n, cap)
    }

    /// As [`HbarAlgebra::new`] without the genericity test on the direction.
    pub fn new_unchecked(
        params: &SklyaninParams,
        direction: &[CycNum; 3],
        n: u32,
        cap: usize,
    ) -> Result<Self, SpecializeError> {
        if direction.iter().all(|c| c.is_zero_val()) {
            return Err(SpecializeError::ZeroDirection);
        }
        let t = params.triple();
        let deformed = [0, 1, 2].map(|i| HbarSeries::linear(t[i].clone(), direction[i].clone()));
        let rs = RewriteSystem::new(deformed.clone(), cap)?;
        Ok(HbarAlgebra {
            params: params.clone(),
            direction: direction.clone(),
            deformed,
            n,
            rs,
        })
    }

    /// Every rule, with ħ set to 0, must vanish in S.
    pub fn check_specializes(&self, base: &RewriteSystem<CycNum>) -> Result<(), SpecializeError> {
        for r in self.rs.rules() {
            let rel = NCPoly::monomial(r.lead.clone(), HbarSeries::one()).sub(&r.tail);
            if !base.normal_form(&theta(&rel))?.is_zero() {
                return Err(SpecializeError::BadSpecialization {
                    lead: r.lead.to_string(),
                });
            }
        }
        Ok(())
    }

    /// g̃ = λ·g_raw(ã, b̃, c̃), with λ the constant normalizing g.
    pub fn g_tilde(&self) -> NCPoly<HbarSeries> {
        let [a, b, c] = &self.deformed;
        g_raw(a, b, c).scale(&HbarSeries::constant(g_normalizer(&self.params)))
    }

    fn nf_pow(&self, p: &NCPoly<HbarSeries>, k: u32) -> Result<NCPoly<HbarSeries>, RewriteError> {
        let p = self.rs.normal_form(p)?;
        let mut acc = NCPoly::one();
        for _ in 0..k {
            acc = self.rs.mul_nf(&acc, &p)?;
        }
        Ok(acc)
    }
}

/// A correction ι'(z_i) = ι(z_i) − ħ^level Σ_j c'_j g̃^j x̃_i^{n−3j}.
#[derive(Clone, Debug, PartialEq)]
pub struct Correction {
    pub level: u32,
    pub coeffs: Vec<CycNum>,
}

/// Lifts ι(z_i), ι(g) to S_ħ in normal form.
#[derive(Clone, Debug)]
pub struct GoodSection {
    pub basis: GoodBasis,
    pub c: Vec<CycNum>,
    pub corrections: Vec<Correction>,
    pub z: [NCPoly<HbarSeries>; 3],
    pub g: NCPoly<HbarSeries>,
}

impl GoodSection {
    /// x̃_i^n + Σ_j c_j g̃^j x̃_i^{n−3j}, with the c_j of the undeformed algebra.
    pub fn naive(alg: &HbarAlgebra, basis: &GoodBasis, c: &[CycNum]) -> Result<Self, SpecializeError> {
        Self::build(alg, basis, c, &[])
    }

    fn build(
        alg: &HbarAlgebra,
        basis: &GoodBasis,
        c: &[CycNum],
        corrections: &[Correction],
    ) -> Result<Self, SpecializeError> {
        let n = alg.n;
        let g = alg.rs.normal_form(&alg.g_tilde())?;
        let gp: Vec<NCPoly<HbarSeries>> = (0..=correction_count(n) as u32)
            .map(|j| alg.nf_pow(&g, j))
            .collect::<Result<_, _>>()?;
        let mut zs = Vec::new();
        for f in &basis.forms {
            let x = lift(&NCPoly::linear(f.clone()));
            let mut z = alg.nf_pow(&x, n)?;
            for (j, cj) in c.iter().enumerate() {
                let j = j as u32 + 1;
                let t = alg.rs.mul_nf(&gp[j as usize], &alg.nf_pow(&x, n - 3 * j)?)?;
                z = z.add(&t.scale(&HbarSeries::constant(cj.clone())));
            }
            for corr in corrections {
                let h = HbarSeries::hbar_pow(corr.level as usize);
                for (j, cj) in corr.coeffs.iter().enumerate() {
                    let j = j as u32 + 1;
                    let t = alg.rs.mul_nf(&gp[j as usize], &alg.nf_pow(&x, n - 3 * j)?)?;
                    z = z.sub(&t.scale(&h.mul(&HbarSeries::constant(cj.clone()))));
                }
            }
            zs.push(z);
        }
        Ok(GoodSection {
            basis: basis.clone(),
            c: c.to_vec(),
            corrections: corrections.to_vec(),
            z: zs.try_into().unwrap(),
            g,
        })
    }

    /// ι(z1), ι(z2), ι(z3), ι(g).
    pub fn lifts(&self) -> [&NCPoly<HbarSeries>; 4] {
        [&self.z[0], &self.z[1], &self.z[2], &self.g]
    }
}

/// Normal forms of [ι(z), w] for z ∈ {z1, z2, z3, g} and w ∈ {x, y, z}.
pub fn commutator_table(
    alg: &HbarAlgebra,
    section: &GoodSection,
) -> Result<Vec<Vec<NCPoly<HbarSeries>>>, SpecializeError> {
    let lifts = section.lifts();
    let pairs: Vec<(usize, u8)> = (0..4).flat_map(|z| (0..3u8).map(move |w| (z, w))).collect();
    let flat: Vec<NCPoly<HbarSeries>> = pairs
        .par_iter()
        .map(|&(z, w)| alg.rs.commutator_nf(lifts[z], &NCPoly::gen(w)))
        .collect::<Result<_, _>>()?;
    Ok(flat.chunks(3).map(|c| c.to_vec()).collect())
}

fn level_of(table: &[Vec<NCPoly<HbarSeries>>]) -> Result<u32, SpecializeError> {
    let mut level = Valuation::Infinite;
    for (zi, row) in table.iter().enumerate() {
        for (wi, p) in row.iter().enumerate() {
            let v = min_valuation(p);
            if v == Valuation::Finite(0) {
                return Err(SpecializeError::NotASection {
                    z: LIFT_NAMES[zi].into(),
                    w: crate::freealg::LETTERS[wi],
                });
            }
            level = level.min(v);
        }
    }
    level.finite().ok_or(SpecializeError::Unbounded)
}

/// The largest N with every [ι(z), w] ∈ ħ^N S_ħ.
pub fn commutator_level(alg: &HbarAlgebra, section: &GoodSection) -> Result<u32, SpecializeError> {
    level_of(&commutator_table(alg, section)?)
}

fn divide_and_specialize(
    p: &NCPoly<HbarSeries>,
    level: u32,
    base: &RewriteSystem<CycNum>,
) -> Result<NCPoly<CycNum>, SpecializeError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(w.clone(), c.div_hbar_pow(level)?.eval0());
    }
    Ok(base.normal_form(&out)?)
}

/// ∂_z(w) = θ([ι(z), w̃]/ħ^N) for an arbitrary lift w̃ of w; z indexes z1, z2, z3, g.
pub fn special_derivation_lift(
    alg: &HbarAlgebra,
    section: &GoodSection,
    base: &RewriteSystem<CycNum>,
    level: u32,
    z: usize,
    w_tilde: &NCPoly<HbarSeries>,
) -> Result<NCPoly<CycNum>, SpecializeError> {
    let w = alg.rs.normal_form(w_tilde)?;
    let c = alg.rs.commutator_nf(section.lifts()[z], &w)?;
    divide_and_specialize(&c, level, base)
}

/// ∂_z(w) using the constant lift of w.
pub fn special_derivation(
    alg: &HbarAlgebra,
    section: &GoodSection,
    base: &RewriteSystem<CycNum>,
    level: u32,
    z: usize,
    w: &NCPoly<CycNum>,
) -> Result<NCPoly<CycNum>, SpecializeError> {
    special_derivation_lift(alg, section, base, level, z, &lift(w))
}

/// Extend a derivation given on x, y, z to S by the Leibniz rule.
pub fn apply_derivation(
    base: &RewriteSystem<CycNum>,
    table: &[NCPoly<CycNum>],
    p: &NCPoly<CycNum>,
) -> Result<NCPoly<CycNum>, RewriteError> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let letters = w.letters();
        for j in 0..letters.len() {
            let mut t = base.normal_form(&NCPoly::monomial(
                crate::freealg::Word(letters[..j].to_vec()),
                c.clone(),
            ))?;
            t = base.mul_nf(&t, &table[letters[j] as usize])?;
            t = base.mul_nf(&t, &NCPoly::monomial(crate::freealg::Word(letters[j + 1..].to_vec()), CycNum::int(1)))?;
            out = out.add(&t);
        }
    }
    Ok(out)
}

/// Level, induced brackets and derivation tables of a specialization.
#[derive(Clone, Debug)]
pub struct PoissonOrderResult {
    pub level: u32,
    /// {z1,z2}, {z2,z3}, {z3,z1} as polynomials in z1, z2, z3, g.
    pub brackets: [CPoly; 3],
    /// derivations[z][w] = ∂_z(w) for z ∈ {z1, z2, z3, g}, w ∈ {x, y, z}.
    pub derivations: Vec<Vec<NCPoly<CycNum>>>,
    pub corrections: Vec<Correction>,
}

impl PoissonOrderResult {
    pub fn is_zero(&self) -> bool {
        self.brackets.iter().all(|b| b.is_zero())
    }
}

fn induced(
    center: &CenterPresentation,
    level: u32,
    derivations: Vec<Vec<NCPoly<CycNum>>>,
    corrections: Vec<Correction>,
) -> Result<PoissonOrderResult, SpecializeError> {
    let n = center.n;
    let mut brackets = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let b = apply_derivation(&center.rs, &derivations[i], &center.z[j])?;
        let p = express_central(&center.rs, &center.z, &center.g, n, &b, 2 * n)?.ok_or_else(|| {
            SpecializeError::NotCentral {
                z: LIFT_NAMES[i].into(),
                w: LIFT_NAMES[j].into(),
            }
        })?;
        brackets.push(p);
    }
    Ok(PoissonOrderResult {
        level,
        brackets: brackets.try_into().unwrap(),
        derivations,
        corrections,
    })
}

/// Derivation table and induced bracket for the current section.
pub fn evaluate_section(
    alg: &HbarAlgebra,
    section: &GoodSection,
    center: &CenterPresentation,
) -> Result<PoissonOrderResult, SpecializeError> {
    let table = commutator_table(alg, section)?;
    let level = level_of(&table)?;
    let derivations = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| divide_and_specialize(p, level, &center.rs))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    induced(center, level, derivations, section.corrections.clone())
}

/// Raise the level by correcting the section until the induced bracket is nonzero.
/// At most `bound` corrections are attempted.
pub fn maximize_level(
    alg: &HbarAlgebra,
    section: &GoodSection,
    center: &CenterPresentation,
    bound: u32,
) -> Result<(GoodSection, u32, PoissonOrderResult), SpecializeError> {
    let n = center.n;
    let m = correction_count(n);
    let mut section = section.clone();
    for _ in 0..=bound {
        let res = evaluate_section(alg, &section, center)?;
        if !res.is_zero() {
            return Ok((section.clone(), res.level, res));
        }
        if m == 0 {
            return Err(SpecializeError::NoCorrection { level: res.level });
        }
        // ∂_{z_i}(w) = Σ_j c'_j [g^j x_i^{n−3j}, w] for all generators w
        let xs = section.basis.elements();
        let d = n as usize + 1;
        let mut coeffs: Option<Vec<CycNum>> = None;
        for (i, x) in xs.iter().enumerate() {
            let mut cols = Vec::new();
            for j in 1..=m as u32 {
                let t = center.rs.mul_nf(
                    &nf_pow(&center.rs, &center.g, j)?,
                    &nf_pow(&center.rs, x, n - 3 * j)?,
                )?;
                cols.push(t);
            }
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for l in 0..3u8 {
                let w = NCPoly::gen(l);
                let cc: Vec<Vec<CycNum>> = cols
                    .iter()
                    .map(|t| Ok(center.rs.coords(&center.rs.commutator_nf(t, &w)?, d)))
                    .collect::<Result<_, RewriteError>>()?;
                let target = center.rs.coords(&res.derivations[i][l as usize], d);
                for r in 0..target.len() {
                    rows.push(cc.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
                    rhs.push(target[r].clone());
                }
            }
            let sol = match solve(&rows, &rhs, m) {
                Solution::Unique(v) => v,
                _ => return Err(SpecializeError::CorrectionInconsistent { level: res.level }),
            };
            match &coeffs {
                None => coeffs = Some(sol),
                Some(prev) if *prev == sol => {}
                Some(_) => return Err(SpecializeError::CorrectionInconsistent { level: res.level }),
            }
        }
        let mut corrections = section.corrections.clone();
        corrections.push(Correction {
            level: res.level,
            coeffs: coeffs.unwrap(),
        });
        section = GoodSection::build(alg, &section.basis, &section.c, &corrections)?;
    }
    Err(SpecializeError::LevelBound { bound })
}

/// The scalar η with induced {z_i, z_j} = η·{z_i, z_j}_F modulo F.
pub fn compare_to_df(result: &PoissonOrderResult, ps: &PoissonStructure) -> Result<CycNum, SpecializeError> {
    let mut eta: Option<CycNum> = None;
    for (k, (ind, df)) in result.brackets.iter().zip(&ps.brackets).enumerate() {
        let ind = ps.reduce(ind);
        let df = ps.reduce(df);
        if df.is_zero() {
            if !ind.is_zero() {
                return Err(SpecializeError::Proportionality(format!("bracket {k} has zero dF part")));
            }
            continue;
        }
        let (e, c) = df.terms().next().unwrap();
        let cand = &ind.coeff(e) * &c.inv().unwrap();
        if ind != df.scale(&cand) {
            return Err(SpecializeError::Proportionality(format!("bracket {k} is not a multiple")));
        }
        match &eta {
            None => eta = Some(cand),
            Some(prev) if *prev == cand => {}
            Some(prev) => {
                return Err(SpecializeError::Proportionality(format!(
                    "bracket {k} gives {cand}, earlier {prev}"
                )))
            }
        }
    }
    match eta {
        Some(e) if !e.is_zero_val() => Ok(e),
        _ => Err(SpecializeError::Proportionality("induced bracket is zero".into())),
    }
}

#[derive(Clone, Debug)]
pub struct SpecializeOptions {
    pub direction: [CycNum; 3],
    pub level_bound: u32,
    pub degree_cap: Option<usize>,
}

impl Default for SpecializeOptions {
    fn default() -> Self {
        SpecializeOptions {
            direction: [CycNum::int(0), CycNum::int(0), CycNum::int(1)],
            level_bound: 16,
            degree_cap: None,
        }
    }
}

/// Everything a specialization run reports.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub alg: HbarAlgebra,
    pub section: GoodSection,
    pub naive_level: u32,
    pub result: PoissonOrderResult,
    pub eta: CycNum,
}

pub fn specialize(
    center: &CenterPresentation,
    opts: &SpecializeOptions,
) -> Result<Specialization, SpecializeError> {
    let n = center.n;
    let cap = opts.degree_cap.unwrap_or((n as usize + 2).max(5));
    let alg = HbarAlgebra::new(&center.params, &opts.direction, n, cap)?;
    alg.check_specializes(&center.rs)?;
    let naive = GoodSection::naive(&alg, &center.basis, &center.c)?;
    let naive_level = commutator_level(&alg, &naive)?;
    let (section, _, result) = maximize_level(&alg, &naive, center, opts.level_bound)?;
    let ps = PoissonStructure::from_f(&center.f);
    let eta = compare_to_df(&result, &ps)?;
    Ok(Specialization {
        alg,
        section,
        naive_level,
        result,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::{compute_center, CenterOptions, H3Element};

    fn n2() -> CenterPresentation {
        compute_center(&SklyaninParams::ints(1, 1, 2).unwrap(), &CenterOptions::default()).unwrap()
    }

    fn dir(a: i64, b: i64, c: i64) -> [CycNum; 3] {
        [CycNum::int(a), CycNum::int(b), CycNum::int(c)]
    }

    fn run(center: &CenterPresentation, d: [CycNum; 3]) -> Specialization {
        let opts = SpecializeOptions {
            direction: d,
            ..SpecializeOptions::default()
        };
        specialize(center, &opts).unwrap()
    }

    #[test]
    fn directions() {
        let p = SklyaninParams::ints(1, 1, 2).unwrap();
        // a = b forces 2[a:b:c] = 0, so moving c alone never leaves the degree-2 locus
        assert_eq!(direction_witness(&p, &dir(0, 0, 1), 2, 8, 12), None);
        assert!(!check_direction(&p, &dir(0, 0, 1), 8));
        assert!(!check_direction(&p, &dir(0, 0, 0), 8));
        assert_eq!(direction_witness(&p, &dir(1, 0, 0), 2, 8, 12), Some(1));
        let q = SklyaninParams::ints(1, -1, -1).unwrap();
        assert!(check_direction(&q, &dir(0, 0, 1), 8));
    }

    #[test]
    fn rejected_direction_has_no_finite_level() {
        let center = n2();
        let err = specialize(&center, &SpecializeOptions::default()).unwrap_err();
        assert_eq!(err, SpecializeError::DirectionRejected { n: 2 });
        let alg = HbarAlgebra::new_unchecked(&center.params, &dir(0, 0, 1), 2, 5).unwrap();
        let sec = GoodSection::naive(&alg, &center.basis, &center.c).unwrap();
        assert_eq!(commutator_level(&alg, &sec), Err(SpecializeError::Unbounded));
    }

    #[test]
    fn degree_two_specialization() {
        let center = n2();
        let s = run(&center, dir(1, 0, 0));
        assert_eq!(s.naive_level, 1);
        assert_eq!(s.result.level, 1);
        assert!(s.result.corrections.is_empty());
        assert_eq!(s.eta, CycNum::frac(1, 7));
        for w in &s.result.derivations[3] {
            assert!(w.is_zero());
        }
        for i in 0..3 {
            let xi = NCPoly::linear(center.basis.forms[i].clone());
            let d = apply_derivation(&center.rs, &s.result.derivations[i], &xi).unwrap();
            assert!(d.is_zero(), "∂_z{}(x{}) ≠ 0", i + 1, i + 1);
        }
    }

    #[test]
    fn derivation_is_lift_independent_and_leibniz() {
        let center = n2();
        let s = run(&center, dir(1, 0, 0));
        let n = s.result.level;
        let h = HbarSeries::hbar_pow(1);
        let y = NCPoly::<CycNum>::y();
        let alt = lift(&NCPoly::x()).add(&lift(&y).scale(&h));
        for z in 0..4 {
            let d1 = special_derivation(&s.alg, &s.section, &center.rs, n, z, &NCPoly::x()).unwrap();
            let d2 = special_derivation_lift(&s.alg, &s.section, &center.rs, n, z, &alt).unwrap();
            assert_eq!(d1, d2);
            let xy = NCPoly::x().mul(&y);
            let direct = special_derivation(&s.alg, &s.section, &center.rs, n, z, &xy).unwrap();
            let leib = apply_derivation(&center.rs, &s.result.derivations[z], &xy).unwrap();
            assert_eq!(direct, leib);
        }
    }

    #[test]
    fn tau_equivariance() {
        let center = n2();
        let s = run(&center, dir(1, 0, 0));
        let tau: H3Element = center.basis.tau;
        for l in 0..3u8 {
            let w = NCPoly::gen(l);
            let lhs = center
                .rs
                .normal_form(&tau.apply(&s.result.derivations[0][l as usize]))
                .unwrap();
            let tw = tau.apply(&w);
            let rhs = apply_derivation(&center.rs, &s.result.derivations[1], &tw).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
