use super::*;
use crate::exact::qr;
use num_complex::Complex64;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap()).unwrap()
}

#[test]
fn dims() {
    let a1 = rs("A1");
    for twol in 0..10 {
        assert_eq!(
            dim_irrep(&a1, &a1.from_labels(&[twol])).unwrap(),
            BigInt::from(twol + 1)
        );
    }
    let a2 = rs("A2");
    assert_eq!(dim_irrep(&a2, a2.weyl_vector()).unwrap(), BigInt::from(8));
    assert_eq!(
        dim_irrep(&a2, &WeightVec::zero(3)).unwrap(),
        BigInt::from(1)
    );
    assert!(dim_irrep(&a2, &a2.from_labels(&[-1, 2])).is_err());
    let g2 = rs("G2");
    // adjoint of G2 has highest weight omega_2 in Bourbaki labelling
    assert_eq!(
        dim_irrep(&g2, &g2.from_labels(&[0, 1])).unwrap(),
        BigInt::from(14)
    );
    assert_eq!(
        dim_irrep(&g2, &g2.from_labels(&[1, 0])).unwrap(),
        BigInt::from(7)
    );
}

#[test]
fn su2_at_pi() {
    let a1 = rs("A1");
    let h = TorusPoint::from_simple_pairings(&a1, &[qi(1)]).unwrap();
    let c = char_regular(&a1, &a1.from_labels(&[2]), &h).unwrap();
    assert!((c.value - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn trivial_rep_is_one() {
    let a2 = rs("A2");
    let h = TorusPoint::from_simple_pairings(&a2, &[qr(1, 3), qr(2, 7)]).unwrap();
    let c = char_regular(&a2, &WeightVec::zero(3), &h).unwrap();
    assert!((c.value - Complex64::new(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn regular_rejects_singular_points() {
    let a2 = rs("A2");
    let h = TorusPoint::Exact(vec![qr(1, 5), qr(1, 5), qr(-2, 5)]);
    assert!(matches!(
        char_regular(&a2, a2.weyl_vector(), &h),
        Err(Error::SingularPoint { degenerate: 1 })
    ));
}

fn adjoint_oracle(a: f64) -> f64 {
    4.0 + 4.0 * (3.0 * a).cos()
}

#[test]
fn a2_adjoint_singular() {
    let a2 = rs("A2");
    for (p, q) in [(1, 5), (1, 7), (2, 9)] {
        let h = TorusPoint::Exact(vec![qr(p, q), qr(p, q), qr(-2 * p, q)]);
        let a = std::f64::consts::PI * p as f64 / q as f64;
        for route in [
            SingularRoute::Minimal,
            SingularRoute::Maximal,
            SingularRoute::FullOrbit,
        ] {
            let c =
                char_singular_with(&a2, a2.weyl_vector(), &h, route, &Caps::from_env()).unwrap();
            assert!(
                (c.value - Complex64::new(adjoint_oracle(a), 0.0)).norm() < 1e-12,
                "{route:?}"
            );
        }
    }
}

#[test]
fn singular_at_identity_is_dim() {
    for name in ["A2", "B2", "G2", "C3"] {
        let r = rs(name);
        let lam = r.from_labels(&vec![1; r.rank()]);
        let c = char_singular(&r, &lam, &TorusPoint::zero(&r)).unwrap();
        let d = crate::exact::bigint_to_f64(&dim_irrep(&r, &lam).unwrap());
        assert!(
            (c.value - Complex64::new(d, 0.0)).norm() < 1e-9 * d,
            "{name}"
        );
    }
}

#[test]
fn multiplicities_of_small_reps() {
    let a1 = rs("A1");
    let wm = weight_multiplicities(&a1, &a1.from_labels(&[2])).unwrap();
    let mut all = wm.all();
    all.sort();
    assert_eq!(all, vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]);
    let a2 = rs("A2");
    let wm = weight_multiplicities(&a2, a2.weyl_vector()).unwrap();
    assert_eq!(wm.total(), 8);
    assert_eq!(wm.get(&[0, 0]), 2);
    assert_eq!(wm.get(&[-1, 2]), 1);
    let z = weight_multiplicities(&a2, &WeightVec::zero(3)).unwrap();
    assert_eq!(z.all(), vec![(vec![0, 0], 1)]);
    let big = a2.from_labels(&[200, 200]);
    assert!(matches!(
        weight_multiplicities(&a2, &big),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn oracle_matches_singular_adjoint() {
    let a2 = rs("A2");
    let h = TorusPoint::Exact(vec![qr(1, 5), qr(1, 5), qr(-2, 5)]);
    let o = char_weightsum_oracle(&a2, a2.weyl_vector(), &h).unwrap();
    assert!((o.value.re - adjoint_oracle(std::f64::consts::PI / 5.0)).abs() < 1e-12);
    let z = char_weightsum_oracle(&a2, a2.weyl_vector(), &TorusPoint::zero(&a2)).unwrap();
    assert!((z.value.re - 8.0).abs() < 1e-14);
}

#[test]
fn float_point_snaps() {
    let a2 = rs("A2");
    let a = 1.0f64;
    let h = TorusPoint::Float(vec![a, a, -2.0 * a]);
    let c = character(&a2, a2.weyl_vector(), &h).unwrap();
    assert!((c.value.re - adjoint_oracle(a)).abs() < 1e-9);
    let tiny = TorusPoint::Float(vec![1e-7, 1e-7, -2e-7]);
    assert!(matches!(
        character(&a2, a2.weyl_vector(), &tiny),
        Err(Error::SnapFailed(_))
    ));
}

#[test]
fn richardson_recovers_singular_value() {
    let a2 = rs("A2");
    let h = TorusPoint::Exact(vec![qr(1, 5), qr(1, 5), qr(-2, 5)]);
    let delta = vec![qr(3, 11), qr(-1, 7), qr(-3, 11) + qr(1, 7)];
    let r = richardson_extrapolate(&a2, a2.weyl_vector(), &h, &delta, &qr(1, 1000)).unwrap();
    assert!((r.value.re - adjoint_oracle(std::f64::consts::PI / 5.0)).abs() < 1e-6 * 8.0);
}
