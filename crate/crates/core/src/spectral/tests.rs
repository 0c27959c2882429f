use super::*;
use crate::exact::{qi, qr, to_f64};
use crate::rootsys::RootSystemSpec;
use num_traits::Zero;

fn a1() -> RootSystem {
    RootSystem::new("A1".parse::<RootSystemSpec>().unwrap()).unwrap()
}

fn spin(l: i64) -> WeightVec {
    a1().from_labels(&[l])
}

#[test]
fn km_values() {
    assert_eq!(km_moment(4, 0), qi(1));
    assert_eq!(km_moment(4, 3), Q::zero());
    assert_eq!(km_moment(4, 2), qr(1, 4));
    assert_eq!(km_moment(4, 4), qr(7, 64));
    assert_eq!(km_moment(4, 6), qr(232, 4096));
    // s = 2 is the cycle Z: central binomial coefficients
    assert_eq!(km_moment(2, 6), qr(20, 64));
}

#[test]
fn delta_opt_values() {
    assert_eq!(delta_opt(2).unwrap(), 1.0);
    assert!((delta_opt(4).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!(delta_opt(1).is_err());
    let seq: Vec<f64> = [4, 9, 16, 25]
        .iter()
        .map(|&s| delta_opt(s).unwrap())
        .collect();
    assert!(seq.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn km_quadrature_and_bounds() {
    for s in [3u64, 4, 6] {
        let law = KestenMcKayLaw::new(s).unwrap();
        for m in 0..=12 {
            let exact = to_f64(&law.moment(m));
            assert!(
                (law.quadrature_moment(m, 2000) - exact).abs() < 1e-10,
                "s={s} m={m}"
            );
            assert!(exact <= law.support_radius.powi(m as i32) + 1e-15);
        }
    }
}

#[test]
fn km_hankel_is_psd() {
    let h = nalgebra::DMatrix::from_fn(5, 5, |i, j| to_f64(&km_moment(4, (i + j) as u32)));
    let eig = h.symmetric_eigenvalues();
    assert!(eig.iter().all(|&e| e > -1e-12), "{eig}");
}

#[test]
fn phases_of_diagonal_and_identity() {
    let id = DMatrix::<Complex64>::identity(3, 3);
    assert_eq!(
        conjugacy_phases(&id).unwrap().to_f64_radians(),
        vec![0.0; 3]
    );
    let a = 0.4;
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::from_polar(1.0, a),
        Complex64::from_polar(1.0, -2.0 * a),
        Complex64::from_polar(1.0, a),
    ]));
    let p = conjugacy_phases(&d).unwrap().to_f64_radians();
    for (x, y) in p.iter().zip([a, a, -2.0 * a]) {
        assert!((x - y).abs() < 1e-12);
    }
    // principal phases 2.5, 2.5, -5 + 2pi sum to 2pi: one lift needed
    let b = 2.5;
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::from_polar(1.0, b),
        Complex64::from_polar(1.0, b),
        Complex64::from_polar(1.0, -2.0 * b),
    ]));
    let p = conjugacy_phases(&d).unwrap().to_f64_radians();
    assert!(p.iter().sum::<f64>().abs() < 1e-12);
    let back: Complex64 = p.iter().map(|t| Complex64::from_polar(1.0, *t)).product();
    assert!((back - 1.0).norm() < 1e-12);
}

#[test]
fn phases_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rs = RootSystem::new("A2".parse::<RootSystemSpec>().unwrap()).unwrap();
    let lambda = rs.from_labels(&[2, 1]);
    for _ in 0..10 {
        let u = generators::haar_special_unitary(3, &mut rng);
        let v = generators::haar_special_unitary(3, &mut rng);
        let p = conjugacy_phases(&u).unwrap().to_f64_radians();
        let q = conjugacy_phases(&(&v * &u * v.adjoint()))
            .unwrap()
            .to_f64_radians();
        for (x, y) in p.iter().zip(&q) {
            assert!((x - y).abs() < 1e-9);
        }
        // character equals the trace in the defining representation
        let std = rs.from_labels(&[1, 0]);
        let chi = crate::charcalc::character(&rs, &std, &conjugacy_phases(&u).unwrap()).unwrap();
        assert!((chi.value - u.trace()).norm() < 1e-9);
        let _ = crate::charcalc::character(&rs, &lambda, &conjugacy_phases(&u).unwrap()).unwrap();
    }
}

#[test]
fn catalog_pair_is_valid() {
    let s = lps_free_pair();
    assert_eq!(s.len(), 4);
    assert_eq!(s.free.as_deref(), Some("asserted"));
    assert_eq!(
        s.inverse_indices(),
        vec![Some(1), Some(0), Some(3), Some(2)]
    );
    let round = GeneratorSet::from_json(&serde_json::to_string(&s.to_doc()).unwrap()).unwrap();
    assert_eq!(round.labels, s.labels);
}

#[test]
fn rejects_bad_generators() {
    let two = DMatrix::<Complex64>::identity(2, 2) * Complex64::new(2.0, 0.0);
    assert!(GeneratorSet::new(vec![two], vec!["x".into()], false, None, None).is_err());
    let s = lps_free_pair();
    let half = GeneratorSet::new(s.elements[..1].to_vec(), vec!["a".into()], true, None, None);
    assert!(half.is_err());
}

#[test]
fn low_moments() {
    let rs = a1();
    let s = lps_free_pair();
    assert_eq!(moment_exact(&rs, &spin(20), &s, 0).unwrap(), 1.0);
    for m in 0..4 {
        assert_eq!(moment_exact(&rs, &spin(0), &s, m).unwrap(), 1.0);
    }
    // m = 1: plain average of chi_l(g)/dim
    let direct: f64 = s
        .elements
        .iter()
        .map(|g| {
            crate::charcalc::character(&rs, &spin(20), &conjugacy_phases(g).unwrap())
                .unwrap()
                .value
                .re
                / 21.0
        })
        .sum::<f64>()
        / 4.0;
    assert!((moment_exact(&rs, &spin(20), &s, 1).unwrap() - direct).abs() < 1e-12);
    // defining rep, m = 2: every g has trace 2/sqrt5; chi(g g') averaged
    let m2 = moment_exact(&rs, &spin(1), &s, 2).unwrap();
    assert!(m2.abs() <= 1.0);
}

#[test]
fn identity_words_contribute_exactly_one() {
    let rs = a1();
    let s = lps_free_pair();
    let g = word_product(&s, &[0, 2, 3, 1]);
    let dim = 41.0;
    assert_eq!(
        normalized_character(&rs, &spin(40), &g, dim, &Caps::default()).unwrap(),
        Complex64::new(1.0, 0.0)
    );
}

#[test]
fn word_level_identity() {
    let rs = a1();
    let s = lps_free_pair();
    for l in [3, 10] {
        for m in [2usize, 4, 6] {
            let full = moment_exact(&rs, &spin(l), &s, m).unwrap();
            let excess = moment_excess(&rs, &spin(l), &s, m).unwrap();
            let km = to_f64(&km_moment(4, m as u32));
            assert!((full - km - excess).abs() < 1e-12, "l={l} m={m}");
        }
    }
    assert_eq!(
        reduce_word(&[0, 2, 3, 1], &[Some(1), Some(0), Some(3), Some(2)]),
        Vec::<usize>::new()
    );
    assert_eq!(
        reduce_word(&[0, 2, 1], &[Some(1), Some(0), Some(3), Some(2)]),
        vec![0, 2, 1]
    );
}

#[test]
fn conjugation_invariance_of_moments() {
    let rs = a1();
    let s = lps_free_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = generators::haar_special_unitary(2, &mut rng);
    let t = s.conjugated(&v);
    for m in [2usize, 3, 4] {
        let a = moment_exact(&rs, &spin(7), &s, m).unwrap();
        let b = moment_exact(&rs, &spin(7), &t, m).unwrap();
        assert!((a - b).abs() < 1e-8, "m={m}: {a} vs {b}");
    }
}

#[test]
fn sampled_matches_exact_and_is_deterministic() {
    let rs = a1();
    let s = lps_free_pair();
    let exact = moment_exact(&rs, &spin(10), &s, 4).unwrap();
    let (mean, err) = moment_sampled(&rs, &spin(10), &s, 4, 10_000, 42).unwrap();
    assert!(
        (mean - exact).abs() <= 3.0 * err,
        "{mean} +- {err} vs {exact}"
    );
    let again = moment_sampled(&rs, &spin(10), &s, 4, 10_000, 42).unwrap();
    assert_eq!(
        (mean.to_bits(), err.to_bits()),
        (again.0.to_bits(), again.1.to_bits())
    );
    assert_eq!(
        moment_sampled(&rs, &spin(10), &s, 0, 100, 1).unwrap(),
        (1.0, 0.0)
    );
    assert!(moment_sampled(&rs, &spin(10), &s, 2, 99, 1).is_err());
}

#[test]
fn haar_baseline_first_moment_vanishes() {
    // chi_3 / 4 has mean 0 and standard deviation 1/4 under Haar measure
    let rs = a1();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [100usize, 400, 1600] {
        let elements: Vec<_> = (0..n)
            .map(|_| generators::haar_special_unitary(2, &mut rng))
            .collect();
        let labels = (0..n).map(|i| format!("h{i}")).collect();
        let set = GeneratorSet::new(elements, labels, false, None, None).unwrap();
        let mean = moment_exact(&rs, &spin(3), &set, 1).unwrap();
        assert!(
            mean.abs() <= 3.0 * 0.25 / (n as f64).sqrt(),
            "n={n}: {mean}"
        );
        let (sampled, err) = moment_sampled(&rs, &spin(3), &set, 1, 2000, 9).unwrap();
        assert!((sampled - mean).abs() <= 3.0 * err);
    }
}

#[test]
fn word_cap_suggests_sampling() {
    let rs = a1();
    let err = moment_exact_with(
        &rs,
        &spin(2),
        &lps_free_pair(),
        11,
        DEFAULT_WORD_CAP,
        &Caps::default(),
    )
    .unwrap_err();
    assert!(err.to_string().contains("sampling"), "{err}");
}

#[test]
fn norm_estimate_on_known_measures() {
    for m_max in [5usize, 8, 12] {
        let km: Vec<f64> = (0..=m_max)
            .map(|m| to_f64(&km_moment(4, m as u32)))
            .collect();
        let est = norm_estimate_from(&km).unwrap();
        assert!(
            (est - delta_opt(4).unwrap()).abs() < 1e-9,
            "M={m_max}: {est}"
        );
    }
    // trivial representation: all moments 1
    assert_eq!(norm_estimate_from(&[1.0; 7]).unwrap(), 1.0);
    // two atoms at +-1/2
    let atoms: Vec<f64> = (0..7)
        .map(|m| if m % 2 == 0 { 0.5f64.powi(m) } else { 0.0 })
        .collect();
    assert!((norm_estimate_from(&atoms).unwrap() - 0.5).abs() < 1e-12);
    assert!(norm_estimate_from(&[1.0, 0.0, 0.5]).is_err());
}

#[test]
fn spectrum_report() {
    let rs = a1();
    let est = spectrum(&rs, &spin(6), &lps_free_pair(), 6, DEFAULT_WORD_CAP, None).unwrap();
    assert_eq!(est.moments[0].value, 1.0);
    assert_eq!(est.km_reference[4], "7/64");
    assert!((0.0..=1.0).contains(&est.norm_estimate));
    assert_eq!(norm_estimate(&est).unwrap(), est.norm_estimate);
}
