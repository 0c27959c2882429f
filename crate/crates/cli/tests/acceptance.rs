//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylchar_core::asymptotics::{
    decay_exponent, divergence_certificate, nonsimple_counterexample, normalized_char_sweep,
    predicted_exponents, product_sweep, WeightPath,
};
use weylchar_core::charcalc::{
    char_regular, char_singular, char_weightsum_oracle, dim_irrep, effective_subsystem,
    richardson_extrapolate, weight_multiplicities, Caps,
};
use weylchar_core::exact::{qi, qr, to_f64, Q};
use weylchar_core::spectral::{
    delta_opt, km_moment, lps_free_pair, spectrum, KestenMcKayLaw, DEFAULT_WORD_CAP,
};
use weylchar_core::torus::{alcove_strata, StratumKind};
use weylchar_core::weylgroup::{generate_weyl_group, stabilizer};
use weylchar_core::{Error, Family, RootSystem, RootSystemSpec, TorusPoint, WeightVec};

type Outcome = Result<String, String>;

fn rs(name: &str) -> RootSystem {
    RootSystem::new(name.parse().unwrap()).unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn random_weight(rs: &RootSystem, rng: &mut ChaCha8Rng, max_label: i64, max_dim: u64) -> WeightVec {
    loop {
        let labels: Vec<i64> = (0..rs.rank())
            .map(|_| rng.gen_range(0..=max_label))
            .collect();
        if labels.iter().all(|&a| a == 0) {
            continue;
        }
        let w = rs.from_labels(&labels);
        if dim_irrep(rs, &w).unwrap().to_u64().unwrap_or(u64::MAX) <= max_dim {
            return w;
        }
    }
}

fn random_regular(rs: &RootSystem, rng: &mut ChaCha8Rng) -> TorusPoint {
    loop {
        let t: Vec<_> = (0..rs.rank())
            .map(|_| qr(rng.gen_range(1..1000), 997))
            .collect();
        let h = TorusPoint::from_simple_pairings(rs, &t).unwrap();
        if rs.degenerate_split(&h).unwrap().is_regular() {
            return h;
        }
    }
}

fn proper_strata(rs: &RootSystem) -> Vec<TorusPoint> {
    alcove_strata(rs)
        .unwrap()
        .into_iter()
        .filter(|s| s.kind == StratumKind::Proper)
        .map(|s| s.point)
        .collect()
}

fn c1_su2_closed_form() -> Outcome {
    let a1 = rs("A1");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let thetas: Vec<f64> = (0..25)
        .map(|_| rng.gen_range(0.01..(std::f64::consts::TAU - 0.01)))
        .collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for l in 0..=50i64 {
        let lam = a1.from_labels(&[2 * l]);
        for &t in &thetas {
            let h = TorusPoint::Float(vec![t / 2.0, -t / 2.0]);
            let v = char_regular(&a1, &lam, &h)
                .map_err(|e| e.to_string())?
                .value;
            let expect = ((l as f64 + 0.5) * t).sin() / (t / 2.0).sin();
            let err = (v.re - expect).abs().max(v.im.abs()) / (2 * l + 1) as f64;
            worst = worst.max(err);
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    if worst <= 1e-9 {
        Ok(format!(
            "max error / dim = {worst:.1e} over l = 0..50, 25 angles"
        ))
    } else {
        Err(format!("max error / dim = {worst:.1e}"))
    }
}

fn c2_su3_adjoint() -> Outcome {
    let a2 = rs("A2");
    let adj = a2.from_labels(&[1, 1]);
    let oracle = |a: f64| 4.0 + 4.0 * (3.0 * a).cos();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (p, q) in [(1, 7), (1, 5)] {
        let h = TorusPoint::Exact(vec![qr(p, q), qr(p, q), qr(-2 * p, q)]);
        let v = char_singular(&a2, &adj, &h)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((v.re - oracle(std::f64::consts::PI * p as f64 / q as f64)).abs());
    }
    let h = TorusPoint::Float(vec![1.0, 1.0, -2.0]);
    let v = char_singular(&a2, &adj, &h)
        .map_err(|e| e.to_string())?
        .value;
    worst = worst.max((v.re - oracle(1.0)).abs());
    // a point off the wall by more than the snap tolerance cannot be snapped
    let off = TorusPoint::Float(vec![1e-7, 1e-7, -2e-7]);
    let failure = match char_singular(&a2, &adj, &off) {
        Err(Error::SnapFailed(_)) => true,
        _ => false,
    };
    within(start.elapsed(), Duration::from_secs(1))?;
    match (worst <= 1e-9, failure) {
        (true, true) => Ok(format!(
            "max error {worst:.1e} at a = pi/7, pi/5, 1; unsnappable point rejected"
        )),
        (false, _) => Err(format!("max error {worst:.1e}")),
        (true, false) => Err("unsnappable point was not rejected".into()),
    }
}

struct OracleInstance {
    rs: RootSystem,
    lambda: WeightVec,
}

fn criterion3_instances() -> Vec<OracleInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for name in ["A1", "A2", "A3", "B2", "C3", "G2"] {
        let r = rs(name);
        for _ in 0..10 {
            let lambda = random_weight(&r, &mut rng, 6, 5000);
            out.push(OracleInstance {
                rs: r.clone(),
                lambda,
            });
        }
    }
    out
}

fn c3_oracle_equivalence(instances: &[OracleInstance]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut evaluations = 0;
    for inst in instances {
        let (r, lam) = (&inst.rs, &inst.lambda);
        let dim = dim_irrep(r, lam).unwrap().to_f64().unwrap();
        let reg = random_regular(r, &mut rng);
        let a = char_regular(r, lam, &reg).map_err(|e| e.to_string())?.value;
        let b = char_weightsum_oracle(r, lam, &reg)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((a - b).norm() / dim);
        for s in alcove_strata(r).unwrap() {
            let a = char_singular(r, lam, &s.point)
                .map_err(|e| e.to_string())?
                .value;
            let b = char_weightsum_oracle(r, lam, &s.point)
                .map_err(|e| e.to_string())?
                .value;
            worst = worst.max((a - b).norm() / dim);
            evaluations += 1;
        }
        evaluations += 1;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    if worst <= 1e-8 {
        Ok(format!(
            "{} weights, {evaluations} points, max error / dim = {worst:.1e}",
            instances.len()
        ))
    } else {
        Err(format!("max error / dim = {worst:.1e}"))
    }
}

fn c4_richardson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let systems: Vec<RootSystem> = ["A2", "A3", "B2", "C3", "G2"]
        .iter()
        .map(|n| rs(n))
        .collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 20 {
        let r = &systems[rng.gen_range(0..systems.len())];
        let strata = proper_strata(r);
        let h0 = strata[rng.gen_range(0..strata.len())].clone();
        let lam = random_weight(r, &mut rng, 2, 500);
        let mut delta: Vec<Q> = (0..r.ambient_dim())
            .map(|_| qr(rng.gen_range(-20..=20), 17))
            .collect();
        if r.spec().family == Family::A {
            let s: Q = delta.iter().sum();
            let n = delta.len() as i64;
            for d in delta.iter_mut() {
                *d -= &s / qi(n);
            }
        }
        let dim = dim_irrep(r, &lam).unwrap().to_f64().unwrap();
        let ext = richardson_extrapolate(r, &lam, &h0, &delta, &qr(1, 1000));
        let ext = match ext {
            Ok(v) => v.value,
            // a direction staying inside a wall cannot be used; draw another
            Err(Error::SingularPoint { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let exact = char_singular(r, &lam, &h0)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((ext - exact).norm() / dim);
        count += 1;
    }
    if worst <= 1e-6 {
        Ok(format!("20 instances, max error / dim = {worst:.1e}"))
    } else {
        Err(format!("max error / dim = {worst:.1e}"))
    }
}

fn constructible_small() -> Vec<RootSystem> {
    let mut out = Vec::new();
    let families = [
        (Family::A, 1..=12),
        (Family::B, 2..=12),
        (Family::C, 3..=12),
        (Family::D, 3..=12),
        (Family::E, 6..=8),
        (Family::F, 4..=4),
        (Family::G, 2..=2),
    ];
    for (family, ranks) in families {
        for rank in ranks {
            let Ok(spec) = RootSystemSpec::new(family, rank) else {
                continue;
            };
            if spec.weyl_order() <= 3_000_000 {
                out.push(RootSystem::new(spec).unwrap());
            }
        }
    }
    out
}

fn c5_dimensions(instances: &[OracleInstance]) -> Outcome {
    let systems = constructible_small();
    for r in &systems {
        let theta = r.positive_roots()[r.highest_root()].clone();
        let d = dim_irrep(r, &theta).map_err(|e| e.to_string())?;
        let expect = 2 * r.positive_roots().len() + r.rank();
        if d != expect.into() {
            return Err(format!("{}: adjoint dim {d}, expected {expect}", r.spec()));
        }
    }
    for inst in instances {
        let d = dim_irrep(&inst.rs, &inst.lambda).unwrap().to_u64().unwrap();
        let total = weight_multiplicities(&inst.rs, &inst.lambda)
            .map_err(|e| e.to_string())?
            .total();
        if total != d {
            return Err(format!(
                "{} {}: multiplicities sum to {total}, dim {d}",
                inst.rs.spec(),
                inst.lambda
            ));
        }
    }
    let names: Vec<String> = systems.iter().map(|r| r.spec().to_string()).collect();
    Ok(format!(
        "adjoint dims on {} systems ({} .. {}); {} multiplicity totals",
        systems.len(),
        names.first().unwrap(),
        names.last().unwrap(),
        instances.len()
    ))
}

fn c6_stabilizers() -> Outcome {
    let mut checked = 0;
    for name in ["A1", "A2", "A3", "A4"] {
        let r = rs(name);
        let w = generate_weyl_group(&r, 1_000_000).unwrap();
        for s in alcove_strata(&r).unwrap() {
            let stab = stabilizer(&r, &w, &s.point).map_err(|e| e.to_string())?;
            let split = r.degenerate_split(&s.point).unwrap();
            let roots: Vec<WeightVec> = split
                .deg
                .iter()
                .map(|&i| r.positive_roots()[i].clone())
                .collect();
            let eff = effective_subsystem(&r, &roots).map_err(|e| e.to_string())?;
            if stab.order() as u128 != eff.weyl_order() {
                return Err(format!(
                    "{name} {:?}: |stabilizer| {} vs {}",
                    s.walls,
                    stab.order(),
                    eff.weyl_order()
                ));
            }
            checked += 1;
        }
    }
    let a4 = rs("A4");
    let w = generate_weyl_group(&a4, 1_000).unwrap();
    let t = 17;
    let h = TorusPoint::Exact(vec![qr(2, t), qr(2, t), qr(2, t), qr(-3, t), qr(-3, t)]);
    let stab = stabilizer(&a4, &w, &h).map_err(|e| e.to_string())?;
    let split = a4.degenerate_split(&h).unwrap();
    let roots: Vec<WeightVec> = split
        .deg
        .iter()
        .map(|&i| a4.positive_roots()[i].clone())
        .collect();
    let eff = effective_subsystem(&a4, &roots).map_err(|e| e.to_string())?;
    let comps: Vec<String> = eff.components.iter().map(|c| c.spec.to_string()).collect();
    if stab.order() != 12 || comps != ["A2", "A1"] && comps != ["A1", "A2"] {
        return Err(format!(
            "(a,a,a,b,b): order {}, components {comps:?}",
            stab.order()
        ));
    }
    Ok(format!(
        "{checked} strata; (a,a,a,b,b) stabilizer order 12 = |S3 x S2|"
    ))
}

struct Sweep {
    name: &'static str,
    slope: f64,
    m: usize,
    halves: (f64, f64),
}

fn decay_sweeps() -> Result<Vec<Sweep>, String> {
    let mut out = Vec::new();
    for name in ["A2", "A3", "B2", "C3", "G2"] {
        let r = rs(name);
        for h in proper_strata(&r) {
            let split = r.degenerate_split(&h).unwrap();
            let rho = r.weyl_vector().clone();
            let rep = normalized_char_sweep(&r, &WeightPath::multiples(rho.clone(), 20), &h)
                .map_err(|e| e.to_string())?;
            let slope = decay_exponent(&rep).map_err(|e| e.to_string())?;
            let (m, _) = predicted_exponents(&r, &split, &rho).map_err(|e| e.to_string())?;
            out.push(Sweep {
                name,
                slope,
                m,
                halves: rep.envelope_halves(),
            });
        }
    }
    Ok(out)
}

fn c7_decay(sweeps: &[Sweep], elapsed: Duration) -> Outcome {
    within(elapsed, Duration::from_secs(600))?;
    let worst = sweeps
        .iter()
        .map(|s| (s, (s.slope + s.m as f64).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    if worst.1 <= 0.1 {
        Ok(format!(
            "{} sweeps, max |slope + m| = {:.3} ({})",
            sweeps.len(),
            worst.1,
            worst.0.name
        ))
    } else {
        Err(format!(
            "{}: slope {:.3}, m = {}",
            worst.0.name, worst.0.slope, worst.0.m
        ))
    }
}

fn c8_envelope(sweeps: &[Sweep]) -> Outcome {
    // C fitted on k <= 10 must bound the ratio for k > 10 as well
    for s in sweeps {
        if s.halves.1 > s.halves.0 * (1.0 + 1e-12) {
            return Err(format!(
                "{}: C = {:.3e} on k <= 10 but {:.3e} needed later",
                s.name, s.halves.0, s.halves.1
            ));
        }
    }
    let max_c = sweeps.iter().map(|s| s.halves.0).fold(0.0, f64::max);
    Ok(format!(
        "{} sweeps bounded by C / |k lambda0|_inf, largest C = {max_c:.3}",
        sweeps.len()
    ))
}

fn c9_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut count = 0;
    let names = [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "D3", "D4", "G2", "F4",
    ];
    for name in names {
        let r = rs(name);
        let mut bases = vec![r.weyl_vector().clone()];
        for _ in 0..5 {
            bases.push(random_weight(&r, &mut rng, 3, u64::MAX));
        }
        for h in proper_strata(&r) {
            let split = r.degenerate_split(&h).unwrap();
            for b in &bases {
                let cert =
                    divergence_certificate(&r, &split, b).map_err(|e| format!("{name}: {e}"))?;
                if !split.ndeg.contains(&cert.root_index) {
                    return Err(format!("{name}: certified root is degenerate"));
                }
                let pairings: Vec<Q> = (0..=50).map(|k| cert.pairing_at(k)).collect();
                if !pairings.windows(2).all(|w| w[1] > w[0]) {
                    return Err(format!("{name}: pairing not strictly increasing"));
                }
                count += 1;
            }
        }
    }
    let d2 = rs("D2");
    let h = TorusPoint::from_simple_pairings(&d2, &[qr(1, 2), qi(0)]).unwrap();
    let split = d2.degenerate_split(&h).unwrap();
    match divergence_certificate(&d2, &split, d2.weyl_vector()) {
        Err(Error::Structural(m)) if m.contains("does not hold") => {}
        other => return Err(format!("D2 not refused: {other:?}")),
    }
    Ok(format!(
        "{count} certificates on {} systems, pairings strictly increasing; D2 refused",
        names.len()
    ))
}

fn c10_counterexample() -> Outcome {
    let factors = vec![rs("A1"), rs("A1")];
    let g = TorusPoint::from_simple_pairings(&factors[0], &[qr(1, 2)]).unwrap();
    let rep = nonsimple_counterexample(&factors, 0, &g, 50).map_err(|e| e.to_string())?;
    if !rep.entries.iter().all(|e| e.ratio == 1.0) {
        return Err("ratio is not identically 1".into());
    }
    if !rep.entries.windows(2).all(|w| w[1].dim > w[0].dim) {
        return Err("dimensions do not grow".into());
    }
    let last_dim = rep.entries.last().unwrap().dim.clone();
    // contrast: grow both factors, with g non-identity on both
    let points = vec![g.clone(), g];
    let bases: Vec<WeightVec> = factors.iter().map(|r| r.weyl_vector().clone()).collect();
    let ks: Vec<u64> = (1..=50).collect();
    let both = product_sweep(&factors, &points, &bases, &ks, &Caps::default())
        .map_err(|e| e.to_string())?;
    let at50 = both.entries.iter().find(|e| e.k == Some(50)).unwrap().ratio;
    if at50 < 1e-2 {
        Ok(format!(
            "ratio == 1 exactly up to dim {last_dim}; both grown: ratio {at50:.2e} at k = 50"
        ))
    } else {
        Err(format!("both grown: ratio {at50:.2e} at k = 50"))
    }
}

fn c11_kesten_mckay() -> Outcome {
    let law = KestenMcKayLaw::new(4).unwrap();
    let mut worst = 0.0f64;
    for m in 0..=12 {
        worst = worst.max((law.quadrature_moment(m, 2000) - to_f64(&km_moment(4, m))).abs());
    }
    let d = (delta_opt(4).unwrap() - 0.75f64.sqrt()).abs();
    let h = nalgebra::DMatrix::from_fn(5, 5, |i, j| to_f64(&km_moment(4, (i + j) as u32)));
    let min_eig = h.symmetric_eigenvalues().min();
    if worst <= 1e-8 && d <= 1e-12 && min_eig >= 0.0 {
        Ok(format!("quadrature error {worst:.1e}, delta_opt error {d:.1e}, Hankel min eigenvalue {min_eig:.2e}"))
    } else {
        Err(format!(
            "quadrature {worst:.1e}, delta_opt {d:.1e}, Hankel min eigenvalue {min_eig:.2e}"
        ))
    }
}

fn c12_spectral() -> Outcome {
    let a1 = rs("A1");
    let set = lps_free_pair();
    let start = Instant::now();
    let spins = [5i64, 10, 20, 40];
    let mut gaps: Vec<Vec<f64>> = Vec::new();
    let mut norm40 = 0.0;
    for &l in &spins {
        let est = spectrum(
            &a1,
            &a1.from_labels(&[2 * l]),
            &set,
            6,
            DEFAULT_WORD_CAP,
            None,
        )
        .map_err(|e| e.to_string())?;
        gaps.push(
            est.moments
                .iter()
                .map(|e| (e.value - to_f64(&km_moment(4, e.m as u32))).abs())
                .collect(),
        );
        norm40 = est.norm_estimate;
    }
    within(start.elapsed(), Duration::from_secs(600))?;
    let mut report = Vec::new();
    let mut monotone = true;
    for m in [2usize, 4, 6] {
        let seq: Vec<f64> = gaps.iter().map(|g| g[m]).collect();
        let ok = seq.windows(2).all(|w| w[1] < w[0]);
        monotone &= ok;
        let s: Vec<String> = seq.iter().map(|x| format!("{x:.2e}")).collect();
        report.push(format!(
            "m={m}: [{}]{}",
            s.join(", "),
            if ok { "" } else { " not decreasing" }
        ));
    }
    let dn = (norm40 - delta_opt(4).unwrap()).abs();
    let msg = format!(
        "{}; norm estimate at l=40 {norm40:.4} (|diff| {dn:.3})",
        report.join("; ")
    );
    if monotone && dn <= 0.1 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c13_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_weylchar");
    let runs: [&[&str]; 5] = [
        &[
            "char",
            "--group",
            "A3",
            "--weight",
            "2,1,1",
            "--point",
            "pi/3:pi/3:pi/3:-pi",
        ],
        &[
            "sweep", "--group", "B2", "--weight", "1,1", "--point", "pi/2:0", "--k-max", "16",
        ],
        &[
            "sweep",
            "--group",
            "A1xA1",
            "--weight",
            "1;1",
            "--point",
            "pi/2;pi/3",
            "--format",
            "csv",
        ],
        &[
            "certificate",
            "--group",
            "G2",
            "--weight",
            "0,1",
            "--point",
            "pi/2:0",
        ],
        &[
            "spectral",
            "--l",
            "10",
            "--moments",
            "6",
            "--samples",
            "2000",
            "--seed",
            "5",
            "--cap-words",
            "1000",
        ],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "3", "8"] {
            let out = Command::new(bin)
                .args(["--threads", threads])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "{args:?} failed: {}",
                    String::from_utf8_lossy(&out.stdout)
                ));
            }
            outputs.push(out.stdout);
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("{args:?}: output depends on --threads"));
        }
    }
    Ok(format!(
        "{} commands byte-identical across --threads 1, 3, 8",
        runs.len()
    ))
}

fn main() {
    let instances = criterion3_instances();
    let sweep_start = Instant::now();
    let sweeps = decay_sweeps();
    let sweep_time = sweep_start.elapsed();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "SU(2) closed form", c1_su2_closed_form()),
        (2, "singular SU(3) adjoint", c2_su3_adjoint()),
        (3, "oracle equivalence", c3_oracle_equivalence(&instances)),
        (4, "extrapolation consistency", c4_richardson()),
        (5, "dimension cross-checks", c5_dimensions(&instances)),
        (6, "stabilizer structure", c6_stabilizers()),
        (
            7,
            "decay exponents",
            sweeps
                .as_ref()
                .map_err(|e| e.clone())
                .and_then(|s| c7_decay(s, sweep_time)),
        ),
        (
            8,
            "universal envelope",
            sweeps
                .as_ref()
                .map_err(|e| e.clone())
                .and_then(|s| c8_envelope(s)),
        ),
        (9, "divergence certificates", c9_certificates()),
        (10, "non-simple counterexample", c10_counterexample()),
        (11, "Kesten-McKay engine", c11_kesten_mckay()),
        (12, "spectral convergence", c12_spectral()),
        (13, "determinism", c13_determinism()),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {n:>2} ({name}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n:>2} ({name}): {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
