use std::sync::OnceLock;

use proptest::prelude::*;

use sklyanin::center::{compute_center, CenterOptions, CenterPresentation};
use sklyanin::exactfield::{CycNum, Scalar};
use sklyanin::reps::{
    burnside_irreducible, central_character, det, find_conjugator, iso_test, twist, verify_relations, Matrix,
    MatrixRep, RepFile, PI6_DIM2_FIXTURE,
};
use sklyanin::strata::YPoint;

fn fixture() -> &'static (MatrixRep, CenterPresentation) {
    static F: OnceLock<(MatrixRep, CenterPresentation)> = OnceLock::new();
    F.get_or_init(|| {
        let (p, rep) = RepFile::from_json(PI6_DIM2_FIXTURE).unwrap().decode().unwrap();
        let cp = compute_center(&p, &CenterOptions::default()).unwrap();
        (rep, cp)
    })
}

fn invertible() -> impl Strategy<Value = Matrix> {
    prop::array::uniform4(-4i64..=4)
        .prop_map(|[a, b, c, d]| vec![vec![CycNum::int(a), CycNum::int(b)], vec![CycNum::int(c), CycNum::int(d)]])
        .prop_filter("invertible", |m| !det(m).is_zero_val())
}

fn nonzero_rational() -> impl Strategy<Value = CycNum> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(n, d, s)| CycNum::frac(if s { n } else { -n }, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_invariance(t in invertible()) {
        let (rep, cp) = fixture();
        let c = rep.conjugate(&t).unwrap();
        prop_assert!(verify_relations(&c, &cp.params).ok());
        prop_assert_eq!(central_character(&c, cp).unwrap(), central_character(rep, cp).unwrap());
        prop_assert_eq!(burnside_irreducible(&c), burnside_irreducible(rep));
        prop_assert!(iso_test(rep, &c).unwrap());
        let s = find_conjugator(rep, &c).unwrap();
        // s φ(v) s⁻¹ = c(v) on the standard generators
        let back = rep.to_standard().conjugate(&s).unwrap();
        prop_assert_eq!(back.images, c.standard_images());
    }

    #[test]
    fn twist_covariance(lambda in nonzero_rational()) {
        let (rep, cp) = fixture();
        let YPoint(a) = central_character(rep, cp).unwrap();
        let YPoint(b) = central_character(&twist(rep, &lambda).unwrap(), cp).unwrap();
        let ln = lambda.pow(cp.n);
        for i in 0..3 {
            prop_assert_eq!(&b[i], &(&ln * &a[i]));
        }
        prop_assert_eq!(&b[3], &(&lambda.pow(3) * &a[3]));
    }

    #[test]
    fn iso_test_agrees_with_conjugator_search(k in 0u32..6, t in invertible()) {
        let (rep, _) = fixture();
        let lam = CycNum::zeta_pow(6, k as i64);
        let other = twist(rep, &lam).unwrap().conjugate(&t).unwrap();
        prop_assert_eq!(iso_test(rep, &other).unwrap(), find_conjugator(rep, &other).is_some());
        prop_assert_eq!(iso_test(rep, &other).unwrap(), k == 0);
    }
}

#[test]
fn trivial_representation() {
    let (_, cp) = fixture();
    let zero = MatrixRep::zero(1);
    assert_eq!(central_character(&zero, cp).unwrap(), YPoint::origin());
    assert!(burnside_irreducible(&zero).irreducible);
}

#[test]
fn reducible_sum_has_non_scalar_or_split_span() {
    let (rep, cp) = fixture();
    let sum = rep.direct_sum(&twist(rep, &CycNum::omega()).unwrap());
    assert!(verify_relations(&sum, &cp.params).ok());
    let b = burnside_irreducible(&sum);
    assert!(!b.irreducible);
    assert_eq!(b.span_dim, 8);
}
