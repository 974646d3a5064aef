//! Finite-dimensional representations S(a, b, c) → M_d(𝕜) given by matrices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::CenterPresentation;
use crate::curve::{CurveError, SklyaninParams};
use crate::exactfield::{CycNum, ParseError};
use crate::freealg::NCPoly;
use crate::linalg::{identity, inverse, kernel, mat_mul, rref};
use crate::strata::{classify_stratum, expected_irrep_profile, trace_form_rank, StrataError, YGeometry, YPoint};

pub type Matrix = Vec<Vec<CycNum>>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("generator images must be three square matrices of one size")]
    Shape,
    #[error("representations have different dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("the good basis is not invertible")]
    SingularBasis,
    #[error("relation {index} fails with residue {residue}")]
    Relation { index: usize, residue: String },
    #[error("{element} does not act by a scalar")]
    NonScalar { element: String },
    #[error("representations have different central characters")]
    MixedCharacters,
    #[error("twist by zero")]
    ZeroTwist,
    #[error("bad scalar: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error("bad representation file: {0}")]
    File(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepBasis {
    Standard,
    /// Row i holds the (x, y, z)-coefficients of the i-th basis element.
    Good([[CycNum; 3]; 3]),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    pub dim: usize,
    pub basis: RepBasis,
    /// Images of the basis elements, in the order given by `basis`.
    pub images: [Matrix; 3],
}

pub fn zero_matrix(d: usize) -> Matrix {
    vec![vec![CycNum::int(0); d]; d]
}

fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

fn mat_scale(a: &Matrix, s: &CycNum) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| s * x).collect()).collect()
}

fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().flatten().all(|x| x.is_zero_val())
}

pub fn trace(a: &Matrix) -> CycNum {
    (0..a.len()).fold(CycNum::int(0), |s, i| &s + &a[i][i])
}

/// Some(λ) when a = λ·1.
pub fn scalar_value(a: &Matrix) -> Option<CycNum> {
    let d = a.len();
    if d == 0 {
        return Some(CycNum::int(0));
    }
    let lam = a[0][0].clone();
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { &lam } else { &CycNum::int(0) };
            if &a[i][j] != want {
                return None;
            }
        }
    }
    Some(lam)
}

pub fn det(a: &Matrix) -> CycNum {
    let mut m = a.clone();
    let d = m.len();
    let mut out = CycNum::int(1);
    for col in 0..d {
        let Some(p) = (col..d).find(|&r| !m[r][col].is_zero_val()) else {
            return CycNum::int(0);
        };
        if p != col {
            m.swap(p, col);
            out = -out;
        }
        let piv = m[col][col].clone();
        out = &out * &piv;
        let pinv = piv.inv().expect("nonzero pivot");
        for r in col + 1..d {
            let f = &m[r][col] * &pinv;
            if f.is_zero_val() {
                continue;
            }
            for c in col..d {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    out
}

fn matrix_to_string(a: &Matrix, m: u32) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string_in(m)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

impl MatrixRep {
    pub fn new(basis: RepBasis, images: [Matrix; 3]) -> Result<Self, RepError> {
        let d = images[0].len();
        if images.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(RepError::Shape);
        }
        if let RepBasis::Good(forms) = &basis {
            let m: Matrix = forms.iter().map(|r| r.to_vec()).collect();
            if inverse(&m).is_none() {
                return Err(RepError::SingularBasis);
            }
        }
        Ok(MatrixRep { dim: d, basis, images })
    }

    pub fn standard(images: [Matrix; 3]) -> Result<Self, RepError> {
        Self::new(RepBasis::Standard, images)
    }

    /// x, y, z ↦ 0 in dimension d.
    pub fn zero(d: usize) -> Self {
        MatrixRep {
            dim: d,
            basis: RepBasis::Standard,
            images: [zero_matrix(d), zero_matrix(d), zero_matrix(d)],
        }
    }

    /// Images of x, y, z.
    pub fn standard_images(&self) -> [Matrix; 3] {
        match &self.basis {
            RepBasis::Standard => self.images.clone(),
            RepBasis::Good(forms) => {
                let m: Matrix = forms.iter().map(|r| r.to_vec()).collect();
                // (x₁, x₂, x₃)ᵀ = M (x, y, z)ᵀ, so (x, y, z)ᵀ = M⁻¹ (x₁, x₂, x₃)ᵀ
                let inv = inverse(&m).expect("checked in new");
                [0, 1, 2].map(|r| {
                    (0..3).fold(zero_matrix(self.dim), |acc, i| mat_add(&acc, &mat_scale(&self.images[i], &inv[r][i])))
                })
            }
        }
    }

    pub fn to_standard(&self) -> Self {
        MatrixRep {
            dim: self.dim,
            basis: RepBasis::Standard,
            images: self.standard_images(),
        }
    }

    /// Image of a noncommutative polynomial in x, y, z.
    pub fn eval(&self, p: &NCPoly<CycNum>) -> Matrix {
        let gens = self.standard_images();
        let one: Matrix = identity(self.dim);
        let mut out = zero_matrix(self.dim);
        for (w, c) in p.terms() {
            let m = w.letters().iter().fold(one.clone(), |acc, &l| mat_mul(&acc, &gens[l as usize]));
            out = mat_add(&out, &mat_scale(&m, c));
        }
        out
    }

    /// T φ T⁻¹.
    pub fn conjugate(&self, t: &Matrix) -> Option<Self> {
        let ti = inverse(t)?;
        Some(MatrixRep {
            dim: self.dim,
            basis: self.basis.clone(),
            images: self.images.clone().map(|m| mat_mul(&mat_mul(t, &m), &ti)),
        })
    }

    /// Block-diagonal sum, in standard generators.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let (a, b) = (self.standard_images(), o.standard_images());
        let d = self.dim + o.dim;
        let images = [0, 1, 2].map(|k| {
            let mut m = zero_matrix(d);
            for i in 0..self.dim {
                m[i][..self.dim].clone_from_slice(&a[k][i]);
            }
            for i in 0..o.dim {
                m[self.dim + i][self.dim..].clone_from_slice(&b[k][i]);
            }
            m
        });
        MatrixRep {
            dim: d,
            basis: RepBasis::Standard,
            images,
        }
    }
}

/// The three relation matrices a·yz + b·zy + c·x², a·zx + b·xz + c·y²,
/// a·xy + b·yx + c·z².
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub residues: [Matrix; 3],
}

impl RelationCheck {
    pub fn ok(&self) -> bool {
        self.residues.iter().all(is_zero_matrix)
    }

    pub fn into_result(self, m: u32) -> Result<(), RepError> {
        match self.residues.iter().position(|r| !is_zero_matrix(r)) {
            None => Ok(()),
            Some(index) => Err(RepError::Relation {
                index,
                residue: matrix_to_string(&self.residues[index], m),
            }),
        }
    }
}

pub fn verify_relations(rep: &MatrixRep, params: &SklyaninParams) -> RelationCheck {
    let [a, b, c] = params.triple();
    let [x, y, z] = rep.standard_images();
    let rel = |p: &Matrix, q: &Matrix, r: &Matrix| {
        let t = mat_add(&mat_scale(&mat_mul(p, q), &a), &mat_scale(&mat_mul(q, p), &b));
        mat_add(&t, &mat_scale(&mat_mul(r, r), &c))
    };
    RelationCheck {
        residues: [rel(&y, &z, &x), rel(&z, &x, &y), rel(&x, &y, &z)],
    }
}

/// Scalars by which z1, z2, z3 and g act.
pub fn central_character(rep: &MatrixRep, cp: &CenterPresentation) -> Result<YPoint, RepError> {
    verify_relations(rep, &cp.params).into_result(12)?;
    let names = ["z1", "z2", "z3", "g"];
    let elems = [&cp.z[0], &cp.z[1], &cp.z[2], &cp.g];
    let mut out = Vec::with_capacity(4);
    for (e, name) in elems.iter().zip(names) {
        let v = scalar_value(&rep.eval(e)).ok_or_else(|| RepError::NonScalar {
            element: name.to_string(),
        })?;
        out.push(v);
    }
    Ok(YPoint(out.try_into().expect("four values")))
}

fn flatten(m: &Matrix) -> Vec<CycNum> {
    m.iter().flatten().cloned().collect()
}

/// Spanning set of the unital algebra generated by `gens`, grown by word
/// length until the dimension repeats. Returns the spanning matrices and
/// the number of rounds used.
fn span_closure(gens: &[Matrix], d: usize) -> (Vec<Matrix>, usize) {
    let mut basis: Vec<Matrix> = Vec::new();
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    let try_add = |m: Matrix, basis: &mut Vec<Matrix>, rows: &mut Vec<Vec<CycNum>>| {
        let mut cand = rows.clone();
        cand.push(flatten(&m));
        let mut work = cand.clone();
        if rref(&mut work).len() > rows.len() {
            *rows = cand;
            basis.push(m.clone());
            true
        } else {
            false
        }
    };
    let mut frontier = Vec::new();
    for m in std::iter::once(identity(d)).chain(gens.iter().cloned()) {
        if try_add(m.clone(), &mut basis, &mut rows) {
            frontier.push(m);
        }
    }
    let mut rounds = 1;
    while !frontier.is_empty() && basis.len() < d * d && rounds < d * d {
        rounds += 1;
        let mut next = Vec::new();
        for f in &frontier {
            for g in gens {
                let m = mat_mul(f, g);
                if try_add(m.clone(), &mut basis, &mut rows) {
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    (basis, rounds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Burnside {
    pub irreducible: bool,
    pub span_dim: usize,
}

/// Irreducible iff the generated algebra is all of M_d(𝕜).
pub fn burnside_irreducible(rep: &MatrixRep) -> Burnside {
    let (span, _) = span_closure(&rep.standard_images(), rep.dim);
    Burnside {
        irreducible: span.len() == rep.dim * rep.dim,
        span_dim: span.len(),
    }
}

/// Degree-one images scaled by λ.
pub fn twist(rep: &MatrixRep, lambda: &CycNum) -> Result<MatrixRep, RepError> {
    if lambda.is_zero_val() {
        return Err(RepError::ZeroTwist);
    }
    Ok(MatrixRep {
        dim: rep.dim,
        basis: rep.basis.clone(),
        images: rep.images.clone().map(|m| mat_scale(&m, lambda)),
    })
}

/// Compares the trace functionals of two semisimple representations on a
/// spanning set of their joint image algebra.
pub fn iso_test(r1: &MatrixRep, r2: &MatrixRep) -> Result<bool, RepError> {
    if r1.dim != r2.dim {
        return Err(RepError::DimensionMismatch(r1.dim, r2.dim));
    }
    let sum = r1.direct_sum(r2);
    let (span, _) = span_closure(&sum.images, sum.dim);
    let d = r1.dim;
    Ok(span.iter().all(|m| {
        let t1 = (0..d).fold(CycNum::int(0), |s, i| &s + &m[i][i]);
        let t2 = (d..2 * d).fold(CycNum::int(0), |s, i| &s + &m[i][i]);
        t1 == t2
    }))
}

/// Brute-force oracle: an invertible T with T φ₁(v) = φ₂(v) T for v = x, y, z.
pub fn find_conjugator(r1: &MatrixRep, r2: &MatrixRep) -> Option<Matrix> {
    if r1.dim != r2.dim {
        return None;
    }
    let d = r1.dim;
    let (a, b) = (r1.standard_images(), r2.standard_images());
    // unknown T[p][q] at column p·d + q
    let mut eqs = Vec::new();
    for k in 0..3 {
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![CycNum::int(0); d * d];
                for l in 0..d {
                    // (T A)_{ij} = Σ_l T_{il} A_{lj}
                    row[i * d + l] = &row[i * d + l] + &a[k][l][j];
                    // (B T)_{ij} = Σ_l B_{il} T_{lj}
                    row[l * d + j] = &row[l * d + j] - &b[k][i][l];
                }
                eqs.push(row);
            }
        }
    }
    let ker = kernel(&eqs, d * d);
    let to_mat = |v: &[CycNum]| -> Matrix { (0..d).map(|i| v[i * d..(i + 1) * d].to_vec()).collect() };
    // a generic combination is invertible when any member of the kernel is
    for t in 0..=ker.len() as i64 * 3 {
        let v = ker.iter().enumerate().fold(vec![CycNum::int(0); d * d], |acc, (idx, k)| {
            let w = CycNum::int((t + 1).pow(idx as u32));
            acc.iter().zip(k).map(|(x, y)| x + &(&w * y)).collect()
        });
        let m = to_mat(&v);
        if !det(&m).is_zero_val() {
            return Some(m);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    /// Dimensions of pairwise non-isomorphic members, sorted.
    pub dims: Vec<u32>,
    pub expected: Vec<u32>,
    pub sum_squares: u32,
    pub expected_sum_squares: u32,
    pub consistent: bool,
}

/// Compares the irreducibles over one central character with the profile
/// predicted by the stratum of that character.
pub fn profile_consistency(reps: &[MatrixRep], cp: &CenterPresentation) -> Result<ProfileReport, RepError> {
    let mut character: Option<YPoint> = None;
    for r in reps {
        let ch = central_character(r, cp)?;
        match &character {
            None => character = Some(ch),
            Some(c) if *c != ch => return Err(RepError::MixedCharacters),
            _ => {}
        }
    }
    let p = character.unwrap_or_else(YPoint::origin);
    let mut distinct: Vec<&MatrixRep> = Vec::new();
    for r in reps {
        let mut seen = false;
        for s in &distinct {
            if s.dim == r.dim && iso_test(s, r)? {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(r);
        }
    }
    let mut dims: Vec<u32> = distinct.iter().map(|r| r.dim as u32).collect();
    dims.sort_unstable();
    let geo = YGeometry::from_center(cp);
    let mut expected = expected_irrep_profile(&geo, &p)?;
    expected.sort_unstable();
    let tag = classify_stratum(&geo, &p)?.tag;
    let sum_squares = dims.iter().map(|d| d * d).sum();
    let expected_sum_squares = trace_form_rank(cp.n, tag);
    let irreducible = distinct.iter().all(|r| burnside_irreducible(r).irreducible);
    Ok(ProfileReport {
        consistent: irreducible && dims == expected && sum_squares == expected_sum_squares,
        dims,
        expected,
        sum_squares,
        expected_sum_squares,
    })
}

/// Output of `verify-rep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    pub relations_ok: bool,
    /// z1, z2, z3, g as scalar strings.
    pub central_character: Option<[String; 4]>,
    pub irreducible: bool,
    pub span_dim: usize,
    pub stratum: Option<String>,
    pub stratum_consistent: bool,
}

pub fn report(rep: &MatrixRep, cp: &CenterPresentation, m: u32) -> Result<RepReport, RepError> {
    let relations_ok = verify_relations(rep, &cp.params).ok();
    let b = burnside_irreducible(rep);
    if !relations_ok {
        return Ok(RepReport {
            relations_ok,
            central_character: None,
            irreducible: b.irreducible,
            span_dim: b.span_dim,
            stratum: None,
            stratum_consistent: false,
        });
    }
    let ch = central_character(rep, cp)?;
    let geo = YGeometry::from_center(cp);
    let tag = classify_stratum(&geo, &ch)?.tag;
    let profile = expected_irrep_profile(&geo, &ch)?;
    Ok(RepReport {
        relations_ok,
        central_character: Some(ch.0.clone().map(|c| c.to_string_in(m))),
        irreducible: b.irreducible,
        span_dim: b.span_dim,
        stratum: Some(tag.to_string()),
        stratum_consistent: b.irreducible && profile.contains(&(rep.dim as u32)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisDto {
    Standard,
    Good([[String; 3]; 3]),
}

/// JSON form of a representation; every scalar is a string over ℚ(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub conductor: u32,
    pub params: [String; 3],
    pub basis: BasisDto,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl RepFile {
    pub fn from_json(s: &str) -> Result<Self, RepError> {
        serde_json::from_str(s).map_err(|e| RepError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn decode(&self) -> Result<(SklyaninParams, MatrixRep), RepError> {
        let m = self.conductor;
        let p = |s: &String| CycNum::parse_in(s, m);
        let [a, b, c] = [p(&self.params[0])?, p(&self.params[1])?, p(&self.params[2])?];
        let params = SklyaninParams::new(a, b, c)?;
        if self.matrices.len() != 3 {
            return Err(RepError::File(format!("expected 3 matrices, found {}", self.matrices.len())));
        }
        let mut images = Vec::new();
        for mat in &self.matrices {
            let mut rows = Vec::new();
            for r in mat {
                rows.push(r.iter().map(p).collect::<Result<Vec<_>, _>>()?);
            }
            images.push(rows);
        }
        let basis = match &self.basis {
            BasisDto::Standard => RepBasis::Standard,
            BasisDto::Good(f) => {
                let mut rows = Vec::new();
                for r in f {
                    let row: Vec<CycNum> = r.iter().map(p).collect::<Result<_, _>>()?;
                    rows.push(<[CycNum; 3]>::try_from(row).expect("three entries"));
                }
                RepBasis::Good(rows.try_into().expect("three rows"))
            }
        };
        let rep = MatrixRep::new(basis, images.try_into().expect("three matrices"))?;
        Ok((params, rep))
    }

    pub fn encode(params: &SklyaninParams, rep: &MatrixRep, m: u32) -> Self {
        let s = |c: &CycNum| c.to_string_in(m);
        RepFile {
            conductor: m,
            params: params.triple().map(|c| s(&c)),
            basis: match &rep.basis {
                RepBasis::Standard => BasisDto::Standard,
                RepBasis::Good(f) => BasisDto::Good(f.clone().map(|r| r.map(|c| s(&c)))),
            },
            matrices: rep
                .images
                .iter()
                .map(|mat| mat.iter().map(|r| r.iter().map(s).collect()).collect())
                .collect(),
        }
    }
}

/// The bundled two-dimensional representation of S(1, −1, −1).
pub const PI6_DIM2_FIXTURE: &str = include_str!("../fixtures/pi6_dim2.json");

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (SklyaninParams, MatrixRep) {
        RepFile::from_json(PI6_DIM2_FIXTURE).unwrap().decode().unwrap()
    }

    fn ints(v: &[&[i64]]) -> Matrix {
        v.iter().map(|r| r.iter().map(|&x| CycNum::int(x)).collect()).collect()
    }

    #[test]
    fn fixture_relations() {
        let (params, rep) = fixture();
        assert_eq!(rep.dim, 2);
        assert!(verify_relations(&rep, &params).ok());
        let mut bad = rep.clone();
        bad.images[0][0][1] = &bad.images[0][0][1] + &CycNum::int(1);
        assert!(!verify_relations(&bad, &params).ok());
        assert!(verify_relations(&MatrixRep::zero(1), &params).ok());
    }

    #[test]
    fn good_basis_recovers_standard_generators() {
        let (_, rep) = fixture();
        let RepBasis::Good(forms) = &rep.basis else { panic!() };
        let std = rep.standard_images();
        // x₁ = Σ forms[0][r]·(generator r)
        for i in 0..3 {
            let back = (0..3).fold(zero_matrix(2), |acc, r| mat_add(&acc, &mat_scale(&std[r], &forms[i][r])));
            assert_eq!(back, rep.images[i]);
        }
    }

    #[test]
    fn burnside_examples() {
        let (_, rep) = fixture();
        assert_eq!(
            burnside_irreducible(&rep),
            Burnside {
                irreducible: true,
                span_dim: 4
            }
        );
        let one = MatrixRep::standard([ints(&[&[1]]), ints(&[&[2]]), ints(&[&[3]])]).unwrap();
        let sum = one.direct_sum(&MatrixRep::zero(1));
        assert!(!burnside_irreducible(&sum).irreducible);
        assert!(burnside_irreducible(&MatrixRep::zero(1)).irreducible);
    }

    #[test]
    fn twists_and_isomorphism() {
        let (params, rep) = fixture();
        let w = CycNum::omega();
        assert_eq!(twist(&rep, &CycNum::int(1)).unwrap(), rep);
        let t = twist(&rep, &w).unwrap();
        assert_eq!(trace(&t.images[0]), &w * &trace(&rep.images[0]));
        assert!(verify_relations(&t, &params).ok());
        assert!(!iso_test(&rep, &t).unwrap());
        assert!(find_conjugator(&rep, &t).is_none());
        let conj = rep.conjugate(&ints(&[&[2, 1], &[1, 1]])).unwrap();
        assert!(iso_test(&rep, &conj).unwrap());
        assert!(find_conjugator(&rep, &conj).is_some());
        assert!(twist(&rep, &CycNum::int(0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = RepFile::from_json(PI6_DIM2_FIXTURE).unwrap();
        let (params, rep) = f.decode().unwrap();
        let again = RepFile::encode(&params, &rep, 12);
        assert_eq!(again.decode().unwrap(), (params, rep));
        assert_eq!(RepFile::from_json(&again.to_json()).unwrap(), again);
    }
}
