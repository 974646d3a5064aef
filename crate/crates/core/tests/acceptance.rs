//! The twelve acceptance criteria, each checked literally. Every criterion
//! prints one PASS/FAIL line. Criteria 8 and 11 cannot hold as stated; for
//! those the suite asserts the exact way in which they fail.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sklyanin::center::{
    central_relation_f, compute_center, g_formula, veronese_residue, CenterOptions, CenterPresentation, G,
};
use sklyanin::commpoly::CPoly;
use sklyanin::curve::{sigma_order, CurveData, SklyaninParams};
use sklyanin::exactfield::{CycNum, Scalar};
use sklyanin::freealg::{NCPoly, RewriteSystem};
use sklyanin::poisson::{dilation_defect, euler_defect, PoissonStructure};
use sklyanin::reps::{
    burnside_irreducible, central_character, iso_test, profile_consistency, twist, verify_relations, RepFile,
    PI6_DIM2_FIXTURE,
};
use sklyanin::specialize::{
    commutator_level, specialize, GoodSection, HbarAlgebra, SpecializeError, SpecializeOptions,
};
use sklyanin::strata::{
    azumaya_test, classify_stratum, discriminant_zero_set, slice_singulars, StratumTag, YGeometry, YPoint,
    YSampler, ZeroSet,
};

type Outcome = Result<(), String>;

fn check(cond: bool, what: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn params(a: i64, b: i64, c: i64) -> SklyaninParams {
    SklyaninParams::ints(a, b, c).unwrap()
}

fn center(p: &SklyaninParams) -> CenterPresentation {
    compute_center(p, &CenterOptions::default()).unwrap()
}

fn q(n: i64, d: i64) -> CycNum {
    CycNum::frac(n, d)
}

fn zv(i: usize) -> CPoly {
    CPoly::var(4, i)
}

/// Divide by the coefficient of g^n.
fn monic_in_g(f: &CPoly, n: u32) -> CPoly {
    let lead = f.coeff(&[0, 0, 0, n]);
    f.scale(&lead.inv().expect("g^n occurs in F"))
}

fn printed_forms() -> [[CycNum; 3]; 3] {
    let w = CycNum::omega();
    let w2 = w.pow(2);
    let one = CycNum::int(1);
    [
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), w2.clone(), w.clone()],
        [one, w, w2],
    ]
}

fn criterion_1() -> Outcome {
    let expected = [1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66];
    for p in [params(1, 1, 2), params(1, -1, -1), params(1, 2, 3)] {
        let rs = RewriteSystem::new(p.triple(), 10).map_err(|e| e.to_string())?;
        let dims = rs.hilbert_dims(10).map_err(|e| e.to_string())?;
        check(dims == expected, format!("{p}: dims {dims:?}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for p in [params(1, 1, 2), params(1, -1, -1), params(1, 2, 3)] {
        let rs = RewriteSystem::new(p.triple(), 4).map_err(|e| e.to_string())?;
        let g = g_formula(&p);
        for w in [NCPoly::x(), NCPoly::y(), NCPoly::z()] {
            let c = rs.commutator_nf(&g, &w).map_err(|e| e.to_string())?;
            check(c.is_zero(), format!("{p}: [g, {w}] = {c}"))?;
        }
    }
    Ok(())
}

/// Iterate the quadric map on the origin [1:−1:0].
fn iterated_order(p: &SklyaninParams, cap: u32) -> Option<u32> {
    let cd = CurveData::new(p);
    let origin = sklyanin::curve::ProjPoint::ints(1, -1, 0);
    let mut it = origin.clone();
    for k in 1..=cap {
        it = cd.sigma_apply(&it).ok()?;
        if it == origin {
            return Some(k);
        }
    }
    None
}

fn criterion_3() -> Outcome {
    for (p, n) in [(params(1, 1, 2), 2), (params(1, -1, -1), 6)] {
        let o = sigma_order(&p, 12).map_err(|e| e.to_string())?;
        check(o == Some(n), format!("{p}: group-law order {o:?}"))?;
        let it = iterated_order(&p, 12);
        check(it == Some(n), format!("{p}: iterated order {it:?}"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let p = params(1, 1, 2);
    let cp = center(&p);
    check(cp.n == 2, format!("n = {}", cp.n))?;
    let gens = [NCPoly::x(), NCPoly::y(), NCPoly::z()];
    for i in 0..3 {
        let sq = cp.rs.mul_nf(&gens[i], &gens[i]).map_err(|e| e.to_string())?;
        check(cp.z[i] == sq, format!("z{} = {} is not the square of generator {i}", i + 1, cp.z[i]))?;
    }
    // g² − 4(z1³+z2³+z3³) − 4 z1z2z3
    let c = CycNum::int(2);
    let c2 = &c * &c;
    let c3m4 = &(&c2 * &c) - &CycNum::int(4);
    let cubes = zv(0).pow(3).add(&zv(1).pow(3)).add(&zv(2).pow(3));
    let expect = zv(G).pow(2).sub(&cubes.scale(&c2)).sub(&zv(0).mul(&zv(1)).mul(&zv(2)).scale(&c3m4));
    let f = monic_in_g(&cp.f, 2);
    check(f == expect, format!("F = {f:?}"))
}

fn criterion_5() -> Outcome {
    let p = params(1, -1, -1);
    let cp = center(&p);
    check(cp.n == 6, format!("n = {}", cp.n))?;
    let ell = zv(0).add(&zv(1)).add(&zv(2)).scale(&q(1, 108));
    let g2 = zv(G).pow(2);
    let expect = zv(G)
        .pow(6)
        .add(&ell.mul(&g2.pow(2)).scale(&CycNum::int(3)))
        .add(&ell.pow(2).mul(&g2).scale(&CycNum::int(3)))
        .add(&ell.pow(3))
        .sub(&zv(0).mul(&zv(1)).mul(&zv(2)).scale(&q(1331, 373248)));
    let f = monic_in_g(&cp.f, 6);
    check(f == expect, format!("F = {f:?}"))?;
    // the relation is the unique kernel vector in degree 18
    let again = central_relation_f(&cp.rs, &cp.z, &cp.g, 6).map_err(|e| e.to_string())?;
    check(monic_in_g(&again, 6) == expect, "kernel vector differs from F")
}

fn criterion_6() -> Outcome {
    let p = params(1, -1, -1);
    let cp = center(&p);
    let forms = printed_forms();
    let u: [NCPoly<CycNum>; 3] = [0, 1, 2].map(|i| {
        let xi = NCPoly::linear(forms[i].clone());
        cp.rs.mul_nf(&xi, &xi).unwrap()
    });
    // (1/108)(u1³+u2³+u3³ − (132ζ²/8) u1u2u3)
    let w2 = CycNum::omega().pow(2);
    let mut f3 = CPoly::zero(3);
    for i in 0..3 {
        let mut e = vec![0; 3];
        e[i] = 3;
        f3.add_term(e, q(1, 108));
    }
    f3.add_term(vec![1, 1, 1], &(&q(-132, 8) * &w2) * &q(1, 108));
    let r = veronese_residue(&cp.rs, &u, &cp.z, &cp.g, &f3, 6).map_err(|e| e.to_string())?;
    check(r.is_none(), format!("nonzero residue {r:?}"))
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [params(1, 1, 2), params(1, -1, -1)] {
        let cp = center(&p);
        let ps = PoissonStructure::from_f(&cp.f);
        for r in ps.jacobi_residues() {
            check(r.is_zero(), format!("{p}: Jacobi residue {r:?}"))?;
        }
        for i in 0..3 {
            let b = ps.reduce(&ps.bracket(&zv(G), &zv(i)));
            check(b.is_zero(), format!("{p}: {{g, z{}}} = {b:?}", i + 1))?;
        }
        check(euler_defect(&cp.f, cp.n).is_zero(), format!("{p}: F is not weighted homogeneous"))?;
        for _ in 0..50 {
            let mut r = || q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let beta = loop {
                let b = r();
                if !b.is_zero_val() {
                    break b;
                }
            };
            let pt = [r(), r(), r(), r()];
            let d = dilation_defect(&cp.f, cp.n, &beta, &pt);
            check(d.is_zero_val(), format!("{p}: dilation defect {d} at beta = {beta}"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let cp = center(&params(1, 1, 2));
    let sp = specialize(&cp, &SpecializeOptions::default()).map_err(|e| e.to_string())?;
    check(sp.result.level >= 1, format!("level {}", sp.result.level))?;
    check(!sp.eta.is_zero_val(), "eta = 0")?;
    let ps = PoissonStructure::from_f(&cp.f).scaled(&sp.eta);
    for k in 0..3 {
        let d = ps.reduce(&sp.result.brackets[k].sub(&ps.brackets[k]));
        check(d.is_zero(), format!("bracket {k} is not eta times the dF bracket"))?;
    }
    Ok(())
}

/// Direction (0,0,1) at (1,1,2): every shift (1,1,2+ħ) still has σ of
/// order 2, so the direction is rejected and no level exists.
fn criterion_8_failure_mode() {
    let cp = center(&params(1, 1, 2));
    let err = specialize(&cp, &SpecializeOptions::default()).unwrap_err();
    assert_eq!(err, SpecializeError::DirectionRejected { n: 2 });
    let dir = SpecializeOptions::default().direction;
    for d in 1..=4 {
        let shifted = params(1, 1, 2 + d);
        assert_eq!(sigma_order(&shifted, 12).unwrap(), Some(2));
    }
    let alg = HbarAlgebra::new_unchecked(&cp.params, &dir, 2, 5).unwrap();
    let section = GoodSection::naive(&alg, &cp.basis, &cp.c).unwrap();
    assert_eq!(commutator_level(&alg, &section).unwrap_err(), SpecializeError::Unbounded);
}

fn criterion_9() -> Outcome {
    let cp = center(&params(1, -1, -1));
    let geo = YGeometry::from_center(&cp);
    let partials = cp.partials();
    let mut s = YSampler::new(9);
    for i in 0..3 {
        for _ in 0..20 {
            let pt = s.on_curve(&geo, i).map_err(|e| e.to_string())?;
            check(cp.f.eval(&pt.0).is_zero_val(), format!("F ≠ 0 at {pt}"))?;
            for d in &partials {
                check(d.eval(&pt.0).is_zero_val(), format!("partial ≠ 0 at {pt}"))?;
            }
        }
    }
    for _ in 0..20 {
        let pt = s.generic(&geo).map_err(|e| e.to_string())?;
        check(cp.f.eval(&pt.0).is_zero_val(), format!("F ≠ 0 at {pt}"))?;
        check(partials.iter().any(|d| !d.eval(&pt.0).is_zero_val()), format!("{pt} is singular"))?;
    }
    let sl = slice_singulars(&geo, &CycNum::int(4));
    check(sl.len() == 3, format!("{} singular points at gamma = 4", sl.len()))?;
    check(sl.contains(&YPoint::ints([-1728, 0, 0, 4])), "(-1728, 0, 0, 4) missing")?;
    let geo2 = YGeometry::from_center(&center(&params(1, 1, 2)));
    for gamma in [CycNum::int(1), CycNum::int(4), q(-3, 2), CycNum::omega()] {
        check(slice_singulars(&geo2, &gamma).is_empty(), format!("n = 2 slice {gamma} has singular points"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let geo6 = YGeometry::from_center(&center(&params(1, -1, -1)));
    let geo2 = YGeometry::from_center(&center(&params(1, 1, 2)));
    let tag = |geo: &YGeometry, p: &YPoint| classify_stratum(geo, p).map(|s| s.tag).map_err(|e| e.to_string());
    check(tag(&geo6, &YPoint::origin())? == StratumTag::Y4, "origin is not Y4")?;
    check(
        tag(&geo6, &YPoint::ints([-1728, 0, 0, 4]))? == StratumTag::Y2,
        "(-1728,0,0,4) is not Y2",
    )?;
    check(tag(&geo2, &YPoint::ints([1, -1, 0, 0]))? == StratumTag::Y3, "(1,-1,0,0) is not Y3")?;
    let mut s = YSampler::new(10);
    let mut rng = StdRng::seed_from_u64(10);
    for k in 0..100 {
        let geo = if k % 2 == 0 { &geo6 } else { &geo2 };
        let p = s.mixed(geo).map_err(|e| e.to_string())?;
        let t = tag(geo, &p)?;
        let az = azumaya_test(geo, &p).map_err(|e| e.to_string())?;
        check(az == matches!(t, StratumTag::Y1 | StratumTag::Y3), format!("azumaya {az} for {t} at {p}"))?;
        check(tag(geo, &p.rotate())? == t, format!("rotation changes the stratum of {p}"))?;
        let beta = q(rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=4));
        check(tag(geo, &p.dilate(&beta, geo.n))? == t, format!("dilation by {beta} changes the stratum of {p}"))?;
    }
    Ok(())
}

fn pi6_rep() -> (SklyaninParams, sklyanin::reps::MatrixRep, CenterPresentation) {
    let (p, rep) = RepFile::from_json(PI6_DIM2_FIXTURE).unwrap().decode().unwrap();
    let cp = center(&p);
    (p, rep, cp)
}

/// All parts of criterion 11 except the central character value.
fn criterion_11_without_character(
    p: &SklyaninParams,
    rep: &sklyanin::reps::MatrixRep,
    cp: &CenterPresentation,
) -> Outcome {
    check(verify_relations(rep, p).ok(), "relations fail")?;
    let b = burnside_irreducible(rep);
    check(b.irreducible && b.span_dim == 4, format!("{b:?}"))?;
    let w = CycNum::omega();
    let fam: Vec<_> = (0..3).map(|k| twist(rep, &w.pow(k)).unwrap()).collect();
    let ch = central_character(rep, cp).map_err(|e| e.to_string())?;
    for i in 0..3 {
        check(central_character(&fam[i], cp).map_err(|e| e.to_string())? == ch, "characters differ")?;
        for j in i + 1..3 {
            check(!iso_test(&fam[i], &fam[j]).map_err(|e| e.to_string())?, format!("twists {i} and {j} are isomorphic"))?;
        }
    }
    let prof = profile_consistency(&fam, cp).map_err(|e| e.to_string())?;
    check(prof.dims == [2, 2, 2] && prof.sum_squares == 12 && prof.consistent, format!("{prof:?}"))
}

fn criterion_11() -> Outcome {
    let (p, rep, cp) = pi6_rep();
    criterion_11_without_character(&p, &rep, &cp)?;
    let ch = central_character(&rep, &cp).map_err(|e| e.to_string())?;
    check(ch == YPoint::ints([-1728, 0, 0, 4]), format!("central character {ch}"))
}

/// The printed matrices give g = −4; the twist by −1 carries the stated
/// character.
fn criterion_11_failure_mode() {
    let (p, rep, cp) = pi6_rep();
    criterion_11_without_character(&p, &rep, &cp).unwrap();
    assert_eq!(central_character(&rep, &cp).unwrap(), YPoint::ints([-1728, 0, 0, -4]));
    let neg = twist(&rep, &CycNum::int(-1)).unwrap();
    assert_eq!(central_character(&neg, &cp).unwrap(), YPoint::ints([-1728, 0, 0, 4]));
}

fn criterion_12() -> Outcome {
    let table = |n: u32, k: u32| -> ZeroSet {
        if k == 1 {
            ZeroSet::Empty
        } else if n % 3 == 0 && k > n * n / 3 {
            ZeroSet::Curves
        } else {
            ZeroSet::Origin
        }
    };
    for (n, ks) in [(2, vec![1, 2, 4]), (6, vec![1, 2, 12, 13, 36])] {
        for k in ks {
            let z = discriminant_zero_set(n, k).map_err(|e| e.to_string())?;
            check(z == table(n, k), format!("n = {n}, k = {k}: {z:?}"))?;
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let all = [
        Criterion { id: 1, name: "Hilbert dimensions", limit: secs(30), run: criterion_1 },
        Criterion { id: 2, name: "centrality of g", limit: secs(10), run: criterion_2 },
        Criterion { id: 3, name: "sigma order", limit: secs(5), run: criterion_3 },
        Criterion { id: 4, name: "n=2 center", limit: secs(30), run: criterion_4 },
        Criterion { id: 5, name: "n=6 center", limit: secs(600), run: criterion_5 },
        Criterion { id: 6, name: "Veronese identity", limit: secs(120), run: criterion_6 },
        Criterion { id: 7, name: "Poisson structure", limit: secs(60), run: criterion_7 },
        Criterion { id: 8, name: "specialization (0,0,1)", limit: secs(300), run: criterion_8 },
        Criterion { id: 9, name: "singular locus", limit: secs(60), run: criterion_9 },
        Criterion { id: 10, name: "strata and Azumaya locus", limit: secs(60), run: criterion_10 },
        Criterion { id: 11, name: "representations", limit: secs(30), run: criterion_11 },
        Criterion { id: 12, name: "discriminant zero sets", limit: secs(1), run: criterion_12 },
    ];
    let mut failed = Vec::new();
    for c in &all {
        let t = Instant::now();
        let mut out = (c.run)();
        let el = t.elapsed();
        if out.is_ok() && el > c.limit {
            out = Err(format!("took {el:.2?}, limit {:?}", c.limit));
        }
        match &out {
            Ok(()) => println!("criterion {:>2} {}: PASS ({el:.2?})", c.id, c.name),
            Err(why) => {
                println!("criterion {:>2} {}: FAIL ({el:.2?}): {why}", c.id, c.name);
                failed.push(c.id);
            }
        }
    }
    // 8 and 11 fail on the stated inputs; pin how
    criterion_8_failure_mode();
    criterion_11_failure_mode();
    assert_eq!(failed, vec![8, 11], "unexpected set of failing criteria");
    println!(
        "acceptance: {} PASS, {} FAIL; failure modes of 8 and 11 verified",
        all.len() - failed.len(),
        failed.len()
    );
}
