use proptest::prelude::*;

use qortho::linalg::{antilinear_fixed_basis, signature, SqMat};
use qortho::qplane::{normal_form, plane_relations, NcPoly, Word};
use qortho::realforms::{
    canonical_d, classify, enumerate_autos, plane_conjugation_matrix, signature_in_basis, Base, ConjugationSpec,
    FamilyKind, RealFormKind,
};
use qortho::rmatrix::RData;
use qortho::scalars::{ConjRegime, GaussRat, Laurent, Scalar};

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, -4i64..=4)
        .prop_map(|(re, den, im)| &GaussRat::from_ratio(re, den) + &(&GaussRat::i() * &GaussRat::from_int(im)))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, gauss()), 0..4).prop_map(Laurent::from_terms)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent(), laurent(), any::<bool>()).prop_map(|(num, tnum, den, with_t)| {
        let den = if den.is_zero() { Laurent::one() } else { den };
        let tnum = if with_t { tnum } else { Laurent::zero() };
        Scalar::from_parts(num, tnum, den).unwrap()
    })
}

/// Scalars with no `t` and no pole at `s = 1`.
fn regular_scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(num, den)| {
        let den = if den.eval_at_one().is_zero() {
            Laurent::one()
        } else {
            den
        };
        Scalar::from_parts(num, Laurent::zero(), den).unwrap()
    })
}

fn regime() -> impl Strategy<Value = ConjRegime> {
    prop_oneof![Just(ConjRegime::RealQ), Just(ConjRegime::UnitModulusQ)]
}

fn int_matrix(n: usize) -> impl Strategy<Value = SqMat> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| SqMat::from_fn(n, |r, c| Scalar::from_int(v[(r - 1) * n + c - 1])))
}

/// Unit lower-triangular times unit upper-triangular: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = SqMat> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(-2i64..=2, n * n),
    )
        .prop_map(move |(l, u)| {
            let lo = SqMat::from_fn(n, |r, c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => Scalar::one(),
                std::cmp::Ordering::Greater => Scalar::from_int(l[(r - 1) * n + c - 1]),
                _ => Scalar::zero(),
            });
            let up = SqMat::from_fn(n, |r, c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => Scalar::one(),
                std::cmp::Ordering::Less => Scalar::from_int(u[(r - 1) * n + c - 1]),
                _ => Scalar::zero(),
            });
            lo.matmul(&up).unwrap()
        })
}

fn dprime_spec() -> impl Strategy<Value = (usize, usize, bool, bool)> {
    (3usize..=6, any::<prop::sample::Index>(), any::<bool>(), any::<bool>())
        .prop_map(|(n, idx, star, with_d)| (n, idx.index(1 << (n / 2)), star, with_d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bar_is_an_involution(a in scalar(), r in regime()) {
        prop_assert_eq!(a.bar(r).bar(r), a);
    }

    #[test]
    fn bar_is_multiplicative_and_additive(a in scalar(), b in scalar(), r in regime()) {
        prop_assert_eq!((&a * &b).bar(r), &a.bar(r) * &b.bar(r));
        prop_assert_eq!((&a + &b).bar(r), &a.bar(r) + &b.bar(r));
    }

    #[test]
    fn field_identities(a in scalar(), b in scalar()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn classical_limit_is_a_homomorphism(a in regular_scalar(), b in regular_scalar()) {
        let (la, lb) = (a.classical_limit().unwrap(), b.classical_limit().unwrap());
        prop_assert_eq!((&a * &b).classical_limit().unwrap(), &la * &lb);
        prop_assert_eq!((&a + &b).classical_limit().unwrap(), &la + &lb);
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn matmul_is_associative(a in int_matrix(3), b in int_matrix(3), c in int_matrix(3)) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_property(m in invertible(4), k in int_matrix(4)) {
        let minv = m.inverse().unwrap();
        prop_assert!(m.matmul(&minv).unwrap().is_identity());
        prop_assert!(minv.matmul(&m).unwrap().is_identity());
        let mk = m.matmul(&k).unwrap();
        prop_assert_eq!(minv.matmul(&mk).unwrap(), k);
    }

    #[test]
    fn signature_is_a_congruence_invariant(d in prop::collection::vec(prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)], 5),
                                            l in invertible(5)) {
        let diag = SqMat::from_diag(d.iter().map(|&v| Scalar::from_int(v)));
        let congruent = SqMat::product(&[&l.transpose(), &diag, &l]).unwrap();
        let sig = signature(&congruent).unwrap();
        prop_assert_eq!(sig.positive, d.iter().filter(|&&v| v > 0).count());
        prop_assert_eq!(sig.negative, d.iter().filter(|&&v| v < 0).count());
    }

    #[test]
    fn fixed_basis_signature_ignores_real_rebasing((n, pick, star, with_d) in dprime_spec(), l in invertible(6)) {
        let rdata = RData::new(n).unwrap();
        let family = enumerate_autos(n, FamilyKind::DPrime).unwrap();
        let mut autos = vec![family[pick % family.len()].clone()];
        if with_d {
            autos.insert(0, canonical_d(n).unwrap());
        }
        let base = if star { Base::Star } else { Base::Cross };
        let spec = ConjugationSpec::with_autos(base, autos, n).unwrap();
        let k1 = plane_conjugation_matrix(&spec, &rdata).unwrap().classical_limit().unwrap();
        let m = antilinear_fixed_basis(&k1, spec.regime).unwrap();
        let c1 = rdata.metric.classical_limit().unwrap();
        let l = SqMat::from_fn(n, |r, c| l.get(r, c));
        let rebased = l.matmul(&m).unwrap();
        prop_assert_eq!(signature_in_basis(&c1, &rebased).unwrap(), signature_in_basis(&c1, &m).unwrap());
        let cl = classify(&spec, &rdata).unwrap();
        match cl.label.kind {
            RealFormKind::SO { l, m } => prop_assert_eq!(l + m, n),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(
        words in prop::collection::vec(prop::collection::vec(1usize..=4, 0..5), 1..4),
        coeffs in prop::collection::vec(regular_scalar(), 4),
        k in regular_scalar(),
    ) {
        let rs = plane_relations(4).unwrap();
        let p = NcPoly::from_terms(words.iter().zip(&coeffs).map(|(w, c)| (Word::new(w.as_slice()), c.clone())));
        let r = NcPoly::monomial(Word::new(words[0].iter().rev().copied().collect::<Vec<_>>()), coeffs[3].clone());
        let np = normal_form(&p, &rs);
        prop_assert_eq!(normal_form(&np, &rs), np.clone());
        prop_assert!(np.terms().all(|(w, _)| w.is_normal_shape()));
        let lhs = normal_form(&p.scale(&k).add(&r), &rs);
        prop_assert_eq!(lhs, np.scale(&k).add(&normal_form(&r, &rs)));
    }
}
