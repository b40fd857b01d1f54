use qortho::linalg::{pair_index, SqMat};
use qortho::rmatrix::{
    braid_matrix, build_metric, build_projectors, build_r, check_char_eq, check_r_reality, check_ybe,
};
use qortho::scalars::{ConjRegime, Scalar};

#[test]
fn ybe_small_n() {
    for n in [3, 4, 5] {
        let out = check_ybe(&build_r(n).unwrap(), n).unwrap();
        assert!(out.pass, "N={n}: {:?}", out.witness);
    }
}

#[test]
fn metric_squares_to_identity() {
    for n in 3..=8 {
        let c = build_metric(n).unwrap();
        assert!(c.matmul(&c).unwrap().is_identity(), "N={n}");
    }
}

#[test]
fn projector_algebra() {
    for n in [3, 4, 5] {
        let p = build_projectors(n).unwrap();
        let nn = n * n;
        for (name, x) in [("P0", &p.p0), ("PA", &p.pa), ("PS", &p.ps)] {
            assert_eq!(x.matmul(x).unwrap(), *x, "{name} idempotent, N={n}");
        }
        assert!(p.pa.matmul(&p.p0).unwrap().is_zero());
        assert!(p.ps.matmul(&p.pa).unwrap().is_zero());
        assert!(p.p0.matmul(&p.ps).unwrap().is_zero());
        assert_eq!(p.p0.trace(), Scalar::one());
        assert_eq!(p.pa.rank(), n * (n - 1) / 2);
        assert_eq!(p.p0.rank(), 1);
        assert_eq!(p.ps.rank(), nn - 1 - n * (n - 1) / 2);

        let spectral =
            p.ps.scale(&Scalar::q())
                .sub(&p.pa.scale(&Scalar::q_pow(-1)))
                .unwrap()
                .add(&p.p0.scale(&Scalar::q_pow(1 - n as i32)))
                .unwrap();
        assert_eq!(spectral, p.rhat);
    }
}

#[test]
fn antisymmetrizer_rank_n4() {
    assert_eq!(build_projectors(4).unwrap().pa.rank(), 6);
}

#[test]
fn cubic_identity() {
    for n in [3, 4, 5, 6] {
        let rhat = braid_matrix(&build_r(n).unwrap(), n).unwrap();
        assert!(check_char_eq(&rhat, n).unwrap().pass, "N={n}");
    }
}

#[test]
fn reality_of_r() {
    for n in [3, 4, 5, 6] {
        let r = build_r(n).unwrap();
        assert!(check_r_reality(&r, ConjRegime::RealQ, n).unwrap().pass);
        assert!(check_r_reality(&r, ConjRegime::UnitModulusQ, n).unwrap().pass);
    }
}

#[test]
fn r_matches_closed_form_n3() {
    // Independent transcription of the seven entry families for N = 3.
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let lam = &q - &qi;
    let s = Scalar::s_pow;
    let idx = |a, b| pair_index(a, b, 3);
    let mut want = SqMat::zeros(9);
    want.set(idx(1, 1), idx(1, 1), q.clone());
    want.set(idx(3, 3), idx(3, 3), q.clone());
    want.set(idx(2, 2), idx(2, 2), Scalar::one());
    want.set(idx(1, 3), idx(1, 3), qi.clone());
    want.set(idx(3, 1), idx(3, 1), qi.clone());
    for (a, b) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
        want.set(idx(a, b), idx(a, b), Scalar::one());
    }
    want.set(idx(2, 1), idx(1, 2), lam.clone());
    want.set(idx(3, 2), idx(2, 3), lam.clone());
    // a > a' block: (3,1) -> (1,3) and (2,2) -> (2,2) is diagonal.
    want.set(idx(3, 1), idx(1, 3), &lam * &(Scalar::one() - qi.clone()));
    // a > b, b != a'
    want.add_to(idx(3, 1), idx(2, 2), &-(&lam * &s(-1)));
    want.add_to(idx(2, 2), idx(1, 3), &-(&lam * &s(-1)));
    assert_eq!(build_r(3).unwrap(), want);
}
