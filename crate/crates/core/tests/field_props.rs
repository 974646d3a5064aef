use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use sklyanin::exactfield::{CycNum, HbarScalar, HbarSeries, Scalar, UPoly, Valuation};

fn cyc(m: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..=4).prop_map(move |cs| {
        let mut x = CycNum::int(0);
        for (k, (n, d)) in cs.into_iter().enumerate() {
            x = &x + &(&CycNum::frac(n, d) * &CycNum::zeta_pow(m, k as i64));
        }
        x
    })
}

fn poly() -> impl Strategy<Value = Vec<CycNum>> {
    prop::collection::vec((-6i64..=6).prop_map(CycNum::int), 1..=4)
}

fn unit_poly() -> impl Strategy<Value = Vec<CycNum>> {
    (1i64..=5, poly()).prop_map(|(c0, mut rest)| {
        rest[0] = CycNum::int(c0);
        rest
    })
}

proptest! {
    #[test]
    fn field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero_val() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn mixed_conductors_agree(a in cyc(3), b in cyc(4)) {
        // ℚ(ζ₃) and ℚ(i) both embed in ℚ(ζ₁₂)
        let a12 = CycNum::parse_in(&a.to_string_in(12), 12).unwrap();
        let b12 = CycNum::parse_in(&b.to_string_in(12), 12).unwrap();
        prop_assert_eq!(&a * &b, &a12 * &b12);
    }

    #[test]
    fn print_parse_round_trip(a in cyc(12)) {
        prop_assert_eq!(CycNum::parse_in(&a.to_string_in(12), 12).unwrap(), a);
    }

    #[test]
    fn valuation_is_additive(p in poly(), q in poly(), i in 0usize..3, j in 0usize..3) {
        let sh = |v: &[CycNum], k: usize| {
            let mut out = vec![CycNum::int(0); k];
            out.extend(v.iter().cloned());
            HbarSeries::exact(out)
        };
        let (a, b) = (sh(&p, i), sh(&q, j));
        prop_assert_eq!(Scalar::mul(&a, &b).valuation(), a.valuation() + b.valuation());
    }

    #[test]
    fn eval0_is_a_homomorphism(p in poly(), q in unit_poly(), r in unit_poly()) {
        let a = HbarScalar::new(UPoly::from_coeffs(p), UPoly::from_coeffs(q)).unwrap();
        let b = HbarScalar::from_poly(UPoly::from_coeffs(r));
        prop_assert_eq!(Scalar::mul(&a, &b).eval0(), &a.eval0() * &b.eval0());
        prop_assert_eq!(Scalar::add(&a, &b).eval0(), &a.eval0() + &b.eval0());
    }

    #[test]
    fn series_match_rational_functions(p in poly(), q in unit_poly(), r in unit_poly()) {
        let a = HbarScalar::new(UPoly::from_coeffs(p), UPoly::from_coeffs(q.clone())).unwrap();
        let b = HbarScalar::new(UPoly::from_coeffs(q), UPoly::from_coeffs(r)).unwrap();
        let prec = 10;
        let (sa, sb) = (HbarSeries::from_hbar_scalar(&a, prec), HbarSeries::from_hbar_scalar(&b, prec));
        let prod = HbarSeries::from_hbar_scalar(&Scalar::mul(&a, &b), prec);
        let got = Scalar::mul(&sa, &sb);
        for k in 0..prec as usize {
            prop_assert_eq!(got.coeff(k), prod.coeff(k));
        }
        let inv = HbarSeries::from_hbar_scalar(&b.try_inv().unwrap(), prec);
        let sinv = sb.try_inv().unwrap();
        for k in 0..prec as usize {
            prop_assert_eq!(sinv.coeff(k), inv.coeff(k));
        }
    }
}

#[test]
fn rationals_and_roots() {
    let half = CycNum::rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
    assert_eq!(half, CycNum::frac(2, 4));
    let i = CycNum::zeta_pow(12, 3);
    assert_eq!(&i * &i, CycNum::int(-1));
    let w = CycNum::zeta_pow(12, 4);
    assert_eq!(&(&w * &w) + &(&w + &CycNum::int(1)), CycNum::int(0));
    assert_eq!(HbarSeries::hbar_pow(3).valuation(), Valuation::Finite(3));
}
