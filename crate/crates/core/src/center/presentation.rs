use std::collections::HashMap;

use crate::commpoly::CPoly;
use crate::curve::{sigma_order, SklyaninParams};
use crate::exactfield::{CycNum, Scalar};
use crate::freealg::{Centrality, NCPoly, RewriteSystem};
use crate::linalg::{kernel, rank, solve, Solution};

use super::basis::{family_for_class, identify_rho, GoodBasis};
use super::CenterError;

/// Variable order of F: z1, z2, z3, g.
pub const Z_NAMES: [&str; 4] = ["z1", "z2", "z3", "g"];
pub const U_NAMES: [&str; 3] = ["u1", "u2", "u3"];
pub const G: usize = 3;

/// The degree-3 element before normalization:
/// c(c³−b³)y³ + b(c³−a³)yxz + a(b³−c³)xyz + c(a³−c³)x³.
pub fn g_raw<F: Scalar>(a: &F, b: &F, c: &F) -> NCPoly<F> {
    let (a3, b3, c3) = (a.pow(3), b.pow(3), c.pow(3));
    NCPoly::from_terms([
        ("yyy", c.mul(&c3.sub(&b3))),
        ("yxz", b.mul(&c3.sub(&a3))),
        ("xyz", a.mul(&b3.sub(&c3))),
        ("xxx", c.mul(&a3.sub(&c3))),
    ])
}

/// Scalar λ with g = λ·g_raw: 1/(c³−a³), or 1/(c³−b³) when c³ = a³.
pub fn g_normalizer(p: &SklyaninParams) -> CycNum {
    let c3 = p.c.pow(3);
    let d = &c3 - &p.a.pow(3);
    let d = if d.is_zero_val() { &c3 - &p.b.pow(3) } else { d };
    d.inv().expect("a^3 = b^3 = c^3 is excluded")
}

pub fn g_formula(p: &SklyaninParams) -> NCPoly<CycNum> {
    g_raw(&p.a, &p.b, &p.c).scale(&g_normalizer(p))
}

/// The central element g, certified central.
pub fn central_g(
    p: &SklyaninParams,
    rs: &RewriteSystem<CycNum>,
) -> Result<NCPoly<CycNum>, CenterError> {
    let g = g_formula(p);
    require_central(rs, &g, "g")?;
    rs.normal_form(&g).map_err(Into::into)
}

pub(crate) fn require_central(
    rs: &RewriteSystem<CycNum>,
    p: &NCPoly<CycNum>,
    what: &str,
) -> Result<(), CenterError> {
    match rs.is_central(p)? {
        Centrality::Central => Ok(()),
        Centrality::NotCentral {
            generator,
            commutator,
        } => Err(CenterError::NotCentral {
            what: what.to_string(),
            generator: crate::freealg::LETTERS[generator as usize],
            witness: commutator.to_string(),
        }),
    }
}

pub fn nf_pow(
    rs: &RewriteSystem<CycNum>,
    p: &NCPoly<CycNum>,
    k: u32,
) -> Result<NCPoly<CycNum>, CenterError> {
    let p = rs.normal_form(p)?;
    let mut acc = NCPoly::one();
    for _ in 0..k {
        acc = rs.mul_nf(&acc, &p)?;
    }
    Ok(acc)
}

/// The free-algebra element x^n + Σ_j c_j g^j x^{n−3j}.
pub fn z_formula<F: Scalar>(x: &NCPoly<F>, g: &NCPoly<F>, c: &[F], n: u32) -> NCPoly<F> {
    let mut z = x.pow(n);
    for (j, cj) in c.iter().enumerate() {
        let j = j as u32 + 1;
        z = z.add(&g.pow(j).mul(&x.pow(n - 3 * j)).scale(cj));
    }
    z
}

/// Number of correction coefficients c_j (1 ≤ j < n/3).
pub fn correction_count(n: u32) -> usize {
    ((n as usize) + 2) / 3 - 1
}

/// Solve for the shared c_j making z₁ central, then certify z₁, z₂, z₃.
pub fn central_z(
    rs: &RewriteSystem<CycNum>,
    g: &NCPoly<CycNum>,
    basis: &GoodBasis,
    n: u32,
) -> Result<([NCPoly<CycNum>; 3], Vec<CycNum>), CenterError> {
    let xs = basis.elements();
    let m = correction_count(n);
    // columns: the part without unknowns, then one column per c_j
    let mut parts = vec![nf_pow(rs, &xs[0], n)?];
    for j in 1..=m as u32 {
        let t = rs.mul_nf(&nf_pow(rs, g, j)?, &nf_pow(rs, &xs[0], n - 3 * j)?)?;
        parts.push(t);
    }
    let d = n as usize + 1;
    let mut rows: Vec<Vec<CycNum>> = Vec::new();
    let mut rhs = Vec::new();
    for l in 0..3u8 {
        let w = NCPoly::gen(l);
        let comms: Vec<Vec<CycNum>> = parts
            .iter()
            .map(|p| Ok(rs.coords(&rs.commutator_nf(p, &w)?, d)))
            .collect::<Result<_, CenterError>>()?;
        for r in 0..rs.basis(d).len() {
            rows.push((1..=m).map(|k| comms[k][r].clone()).collect());
            rhs.push(comms[0][r].neg());
        }
    }
    let c = if m == 0 {
        if rhs.iter().any(|v| !v.is_zero_val()) {
            return Err(CenterError::NoSolution);
        }
        Vec::new()
    } else {
        match solve(&rows, &rhs, m) {
            Solution::Unique(v) => v,
            Solution::Inconsistent => return Err(CenterError::NoSolution),
            Solution::Underdetermined(k) => return Err(CenterError::NonUnique(k)),
        }
    };
    let gp: Vec<NCPoly<CycNum>> = (1..=m as u32)
        .map(|j| nf_pow(rs, g, j))
        .collect::<Result<_, _>>()?;
    let mut zs = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let mut z = nf_pow(rs, x, n)?;
        for (j, cj) in c.iter().enumerate() {
            let t = rs.mul_nf(&gp[j], &nf_pow(rs, x, n - 3 * (j as u32 + 1))?)?;
            z = z.add(&t.scale(cj));
        }
        require_central(rs, &z, &format!("z{}", i + 1))?;
        zs.push(z);
    }
    Ok((zs.try_into().unwrap(), c))
}

/// Exponent vectors [l1, l2, l3, l0] with n·(l1+l2+l3) + 3·l0 = d.
pub fn weighted_monomials(n: u32, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for l0 in (0..=d / 3).rev() {
        let rest = d - 3 * l0;
        if rest % n != 0 {
            continue;
        }
        let k = rest / n;
        for l1 in (0..=k).rev() {
            for l2 in (0..=k - l1).rev() {
                out.push(vec![l1, l2, k - l1 - l2, l0]);
            }
        }
    }
    out
}

/// Normal forms of products of central elements, memoized by exponent.
pub struct CentralProducts<'a> {
    rs: &'a RewriteSystem<CycNum>,
    gens: [NCPoly<CycNum>; 4],
    memo: HashMap<Vec<u32>, NCPoly<CycNum>>,
}

impl<'a> CentralProducts<'a> {
    pub fn new(rs: &'a RewriteSystem<CycNum>, z: &[NCPoly<CycNum>; 3], g: &NCPoly<CycNum>) -> Self {
        CentralProducts {
            rs,
            gens: [z[0].clone(), z[1].clone(), z[2].clone(), g.clone()],
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, e: &[u32]) -> Result<NCPoly<CycNum>, CenterError> {
        if let Some(p) = self.memo.get(e) {
            return Ok(p.clone());
        }
        let Some(k) = (0..e.len()).rev().find(|&k| e[k] > 0) else {
            return Ok(NCPoly::one());
        };
        let mut prev = e.to_vec();
        prev[k] -= 1;
        let base = self.get(&prev)?;
        let p = self.rs.mul_nf(&base, &self.gens[k])?;
        self.memo.insert(e.to_vec(), p.clone());
        Ok(p)
    }

    /// Normal form of a polynomial in z1, z2, z3, g.
    pub fn eval(&mut self, f: &CPoly) -> Result<NCPoly<CycNum>, CenterError> {
        let mut out = NCPoly::zero();
        for (e, c) in f.terms() {
            out = out.add(&self.get(e)?.scale(c));
        }
        Ok(out)
    }
}

/// The relation F: the unique kernel vector of the map from weighted
/// monomials of degree 3n to S_{3n}, normalized so that g^n has coefficient 1.
pub fn central_relation_f(
    rs: &RewriteSystem<CycNum>,
    z: &[NCPoly<CycNum>; 3],
    g: &NCPoly<CycNum>,
    n: u32,
) -> Result<CPoly, CenterError> {
    let d = 3 * n;
    let monos = weighted_monomials(n, d);
    let mut prods = CentralProducts::new(rs, z, g);
    let mut cols = Vec::new();
    for e in &monos {
        cols.push(rs.coords(&prods.get(e)?, d as usize));
    }
    let rows: Vec<Vec<CycNum>> = (0..rs.basis(d as usize).len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ker = kernel(&rows, monos.len());
    if ker.len() != 1 {
        return Err(CenterError::KernelDim {
            degree: d,
            dim: ker.len(),
        });
    }
    let v = &ker[0];
    let gn = monos
        .iter()
        .position(|e| e == &vec![0, 0, 0, n])
        .expect("g^n is a weighted monomial");
    let inv = v[gn].inv().ok_or_else(|| {
        CenterError::Structure("the relation has no g^n term".into())
    })?;
    let mut f = CPoly::zero(4);
    for (e, c) in monos.iter().zip(v) {
        f.add_term(e.clone(), c * &inv);
    }
    Ok(f)
}

/// Write a central element of degree d < 3n as a polynomial in z1, z2, z3, g.
/// `None` when it is not in the span of the weighted monomials.
pub fn express_central(
    rs: &RewriteSystem<CycNum>,
    z: &[NCPoly<CycNum>; 3],
    g: &NCPoly<CycNum>,
    n: u32,
    elem: &NCPoly<CycNum>,
    d: u32,
) -> Result<Option<CPoly>, CenterError> {
    let mut out = CPoly::zero(4);
    if elem.is_zero() {
        return Ok(Some(out));
    }
    let monos = weighted_monomials(n, d);
    if monos.is_empty() {
        return Ok(None);
    }
    let mut prods = CentralProducts::new(rs, z, g);
    let mut cols = Vec::new();
    for e in &monos {
        cols.push(rs.coords(&prods.get(e)?, d as usize));
    }
    let target = rs.coords(&rs.normal_form(elem)?, d as usize);
    let rows: Vec<Vec<CycNum>> = (0..target.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    match solve(&rows, &target, monos.len()) {
        Solution::Unique(v) => {
            for (e, c) in monos.iter().zip(v) {
                out.add_term(e.clone(), c);
            }
            Ok(Some(out))
        }
        Solution::Inconsistent => Ok(None),
        Solution::Underdetermined(k) => Err(CenterError::NonUnique(k)),
    }
}

/// Rank of the monomials of weighted degree d below 3n equals their number.
pub fn independence_witness(
    rs: &RewriteSystem<CycNum>,
    z: &[NCPoly<CycNum>; 3],
    g: &NCPoly<CycNum>,
    n: u32,
    d: u32,
) -> Result<bool, CenterError> {
    let monos = weighted_monomials(n, d);
    if monos.is_empty() {
        return Ok(true);
    }
    let mut prods = CentralProducts::new(rs, z, g);
    let mut rows = Vec::new();
    for e in &monos {
        rows.push(rs.coords(&prods.get(e)?, d as usize));
    }
    Ok(rank(&rows) == monos.len())
}

/// ℓ, α and Φ read off F.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    pub ell: Option<CPoly>,
    pub alpha: Option<CycNum>,
    pub phi: CPoly,
}

/// The coefficient of g^k in F as a polynomial in z1, z2, z3 (still four variables).
pub fn g_coefficient(f: &CPoly, k: u32) -> CPoly {
    let mut out = CPoly::zero(4);
    for (e, c) in f.terms() {
        if e[G] == k {
            let mut e2 = e.clone();
            e2[G] = 0;
            out.add_term(e2, c.clone());
        }
    }
    out
}

pub fn extract_structural_data(f: &CPoly, n: u32) -> Result<Structure, CenterError> {
    let gpow = |k: u32| {
        let mut e = vec![0; 4];
        e[G] = k;
        CPoly::monomial(e, CycNum::int(1))
    };
    let phi = g_coefficient(f, 0);
    if n % 3 != 0 {
        let rest = f.sub(&gpow(n)).sub(&phi);
        if !rest.is_zero() {
            return Err(CenterError::Structure(format!(
                "F - g^{n} - Phi has mixed terms: {}",
                rest.to_string_with(&Z_NAMES, 12)
            )));
        }
        return Ok(Structure {
            ell: None,
            alpha: None,
            phi,
        });
    }
    let s = n / 3;
    let ell = g_coefficient(f, 2 * s).scale(&CycNum::frac(1, 3));
    let low = g_coefficient(f, s);
    let expect = ell.pow(2).scale(&CycNum::int(3));
    if low != expect {
        return Err(CenterError::Structure(format!(
            "coefficient of g^{s} is {} but 3*ell^2 = {}",
            low.to_string_with(&Z_NAMES, 12),
            expect.to_string_with(&Z_NAMES, 12)
        )));
    }
    let alpha = ell.coeff(&[1, 0, 0, 0]);
    let sum = CPoly::var(4, 0).add(&CPoly::var(4, 1)).add(&CPoly::var(4, 2));
    if alpha.is_zero_val() || ell != sum.scale(&alpha) {
        return Err(CenterError::Structure(format!(
            "ell = {} is not a nonzero multiple of z1+z2+z3",
            ell.to_string_with(&Z_NAMES, 12)
        )));
    }
    let rebuilt = gpow(n)
        .add(&ell.mul(&gpow(2 * s)).scale(&CycNum::int(3)))
        .add(&expect.mul(&gpow(s)))
        .add(&phi);
    if &rebuilt != f {
        let rest = f.sub(&rebuilt);
        return Err(CenterError::Structure(format!(
            "unexpected g-terms in F: {}",
            rest.to_string_with(&Z_NAMES, 12)
        )));
    }
    Ok(Structure {
        ell: Some(ell),
        alpha: Some(alpha),
        phi,
    })
}

/// Ordered cubic monomials u_i u_j u_k with i ≤ j ≤ k, as exponent vectors.
pub fn cubic_monomials() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            for k in j..3 {
                let mut e = vec![0u32; 3];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                out.push(e);
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// f(u₁, u₂, u₃) in S, each monomial multiplied in increasing index order.
pub fn eval_in_u(
    rs: &RewriteSystem<CycNum>,
    u: &[NCPoly<CycNum>; 3],
    f: &CPoly,
) -> Result<NCPoly<CycNum>, CenterError> {
    let mut out = NCPoly::zero();
    for (e, c) in f.terms() {
        let mut p = NCPoly::one();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                p = rs.mul_nf(&p, &u[i])?;
            }
        }
        out = out.add(&p.scale(c));
    }
    Ok(out)
}

/// Solve for the cubic f₃ with g^s + f₃(u) = 0 in S.
pub fn solve_f3(
    rs: &RewriteSystem<CycNum>,
    u: &[NCPoly<CycNum>; 3],
    g: &NCPoly<CycNum>,
    n: u32,
) -> Result<CPoly, CenterError> {
    let s = n / 3;
    let d = n as usize;
    let monos = cubic_monomials();
    let mut cols = Vec::new();
    for e in &monos {
        cols.push(rs.coords(&eval_in_u(rs, u, &CPoly::monomial(e.clone(), CycNum::int(1)))?, d));
    }
    let gs = rs.coords(&nf_pow(rs, g, s)?, d);
    let rows: Vec<Vec<CycNum>> = (0..rs.basis(d).len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rhs: Vec<CycNum> = gs.iter().map(|v| v.neg()).collect();
    match solve(&rows, &rhs, monos.len()) {
        Solution::Unique(v) => {
            let mut f = CPoly::zero(3);
            for (e, c) in monos.into_iter().zip(v) {
                f.add_term(e, c);
            }
            Ok(f)
        }
        Solution::Inconsistent => Err(CenterError::Veronese(
            "no cubic f3 satisfies g^s + f3(u) = 0".into(),
        )),
        Solution::Underdetermined(k) => Err(CenterError::Veronese(format!(
            "f3 is not unique ({k} free parameters)"
        ))),
    }
}

/// Certify g^s + f₃(u) = 0 and z_i = u_i³ in S. Returns the first nonzero residue.
pub fn veronese_residue(
    rs: &RewriteSystem<CycNum>,
    u: &[NCPoly<CycNum>; 3],
    z: &[NCPoly<CycNum>; 3],
    g: &NCPoly<CycNum>,
    f3: &CPoly,
    n: u32,
) -> Result<Option<NCPoly<CycNum>>, CenterError> {
    let r = eval_in_u(rs, u, f3)?.add(&nf_pow(rs, g, n / 3)?);
    if !r.is_zero() {
        return Ok(Some(r));
    }
    for i in 0..3 {
        let r = z[i].sub(&nf_pow(rs, &u[i], 3)?);
        if !r.is_zero() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct CenterOptions {
    pub order_cap: u32,
    pub max_n: u32,
    pub degree_cap: Option<usize>,
}

impl Default for CenterOptions {
    fn default() -> Self {
        CenterOptions {
            order_cap: 12,
            max_n: 6,
            degree_cap: None,
        }
    }
}

/// Everything the center computation produces for one S(a, b, c).
#[derive(Clone, Debug)]
pub struct CenterPresentation {
    pub params: SklyaninParams,
    pub n: u32,
    pub rs: RewriteSystem<CycNum>,
    pub g: NCPoly<CycNum>,
    pub basis: GoodBasis,
    pub rho: Option<super::H3Element>,
    pub z: [NCPoly<CycNum>; 3],
    pub c: Vec<CycNum>,
    pub f: CPoly,
    pub structure: Structure,
    pub u: Option<[NCPoly<CycNum>; 3]>,
    pub f3: Option<CPoly>,
}

impl CenterPresentation {
    pub fn degree_cap(&self) -> usize {
        self.rs.cap()
    }

    /// ∂F/∂v for v in z1, z2, z3, g.
    pub fn partials(&self) -> [CPoly; 4] {
        [0, 1, 2, 3].map(|i| self.f.partial(i))
    }
}

pub fn rewrite_for(
    params: &SklyaninParams,
    n: u32,
    degree_cap: Option<usize>,
) -> Result<RewriteSystem<CycNum>, CenterError> {
    let need = (3 * n as usize).max(n as usize + 1).max(4);
    let cap = degree_cap.unwrap_or(3 * n as usize + 2);
    if cap < need {
        return Err(CenterError::Rewrite(crate::freealg::RewriteError::CapExceeded {
            degree: need,
            cap,
        }));
    }
    Ok(RewriteSystem::new(params.triple(), cap)?)
}

pub fn compute_center(
    params: &SklyaninParams,
    opts: &CenterOptions,
) -> Result<CenterPresentation, CenterError> {
    let n = sigma_order(params, opts.order_cap)?.ok_or(CenterError::NotPi(opts.order_cap))?;
    if n > opts.max_n {
        return Err(CenterError::TooLarge { n, max: opts.max_n });
    }
    let rs = rewrite_for(params, n, opts.degree_cap)?;
    let g = central_g(params, &rs)?;
    let mut failures = Vec::new();
    let (candidates, rho) = if n % 3 == 0 {
        let rho = identify_rho(params, n)?;
        (vec![family_for_class(&rho)], Some(rho))
    } else {
        ((0..4).collect(), None)
    };
    for fam in candidates {
        let basis = GoodBasis::from_family(fam);
        let attempt = (|| {
            let (z, c) = central_z(&rs, &g, &basis, n)?;
            let f = central_relation_f(&rs, &z, &g, n)?;
            let structure = extract_structural_data(&f, n)?;
            Ok::<_, CenterError>((z, c, f, structure))
        })();
        match attempt {
            Ok((z, c, f, structure)) => {
                let (u, f3) = if n % 3 == 0 {
                    let xs = basis.elements();
                    let u = [0, 1, 2]
                        .map(|i| nf_pow(&rs, &xs[i], n / 3))
                        .into_iter()
                        .collect::<Result<Vec<_>, _>>()?;
                    let u: [NCPoly<CycNum>; 3] = u.try_into().unwrap();
                    let f3 = solve_f3(&rs, &u, &g, n)?;
                    if let Some(r) = veronese_residue(&rs, &u, &z, &g, &f3, n)? {
                        return Err(CenterError::Veronese(r.to_string()));
                    }
                    (Some(u), Some(f3))
                } else {
                    (None, None)
                };
                return Ok(CenterPresentation {
                    params: params.clone(),
                    n,
                    rs,
                    g,
                    basis,
                    rho,
                    z,
                    c,
                    f,
                    structure,
                    u,
                    f3,
                });
            }
            Err(e) => failures.push(format!("family {fam}: {e}")),
        }
    }
    Err(CenterError::NoGoodBasis(failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(weighted_monomials(2, 6).len(), 11);
        assert_eq!(weighted_monomials(6, 18).len(), 20);
        assert_eq!(correction_count(2), 0);
        assert_eq!(correction_count(4), 1);
        assert_eq!(correction_count(6), 1);
        assert_eq!(correction_count(7), 2);
        assert_eq!(cubic_monomials().len(), 10);
    }

    #[test]
    fn g_matches_degree_two_form() {
        let p = SklyaninParams::ints(1, 1, 2).unwrap();
        let expect = NCPoly::from_terms([
            ("yyy", CycNum::int(2)),
            ("yxz", CycNum::int(1)),
            ("xyz", CycNum::int(-1)),
            ("xxx", CycNum::int(-2)),
        ]);
        assert_eq!(g_formula(&p), expect);
    }
}
