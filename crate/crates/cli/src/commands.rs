//! Subcommand implementations. Each returns a JSON result plus a flat table
//! used by the CSV and table renderers.

use num_complex::Complex64;
use serde_json::{json, Value};

use weylchar_core::asymptotics::{
    decay_exponent, divergence_certificate, normalized_char_sweep_with, predicted_exponents,
    product_sweep, DecayReport, WeightPath,
};
use weylchar_core::charcalc::{char_singular_with, character_with, dim_irrep, Caps, SingularRoute};
use weylchar_core::exact::{format_rational, to_f64};
use weylchar_core::spectral::{delta_opt, lps_free_pair, spectrum_with, GeneratorSet};
use weylchar_core::torus::{snap, Snapped};
use weylchar_core::weylgroup::generate_weyl_group;
use weylchar_core::{Error, Result, RootSystem, TorusPoint, WeightVec};

use crate::config::{Command, Route, RunConfig};
use crate::parse::{parse_group, parse_points, parse_weights};

#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Summary values printed after the rows.
    pub footer: Vec<(String, String)>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            ..Table::default()
        }
    }

    fn scalar(pairs: Vec<(&str, String)>) -> Self {
        let mut t = Table::new(&["key", "value"]);
        t.rows = pairs
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect();
        t
    }
}

pub struct Output {
    pub result: Value,
    pub table: Table,
}

fn caps(cfg: &RunConfig) -> Caps {
    Caps {
        weyl: cfg.caps.weyl as u128,
        oracle_dim: cfg.caps.oracle_dim,
    }
}

fn need<'a>(v: &'a Option<String>, field: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse {
        field: field.into(),
        message: format!("--{field} is required"),
    })
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

pub fn run(cfg: &RunConfig) -> Result<Output> {
    let factors = parse_group(&cfg.group)?;
    match cfg.subcommand {
        Command::Roots => roots(&factors),
        Command::Weyl => weyl(cfg, &factors),
        Command::Dim => dim(cfg, &factors),
        Command::Char => char_value(cfg, &factors),
        Command::Sweep => sweep(cfg, &factors),
        Command::Certificate => certificate(cfg, &factors),
        Command::Spectral => spectral(cfg, &factors),
    }
}

fn roots(factors: &[RootSystem]) -> Result<Output> {
    let mut table = Table::new(&["factor", "index", "height", "coefficients", "ambient"]);
    let mut docs = Vec::new();
    for rs in factors {
        for (i, (root, coeffs)) in rs.positive_roots().iter().zip(rs.root_coeffs()).enumerate() {
            table.rows.push(vec![
                rs.spec().to_string(),
                i.to_string(),
                coeffs.iter().sum::<i64>().to_string(),
                join(coeffs.iter()),
                root.to_strings().join(","),
            ]);
        }
        docs.push(serde_json::to_value(rs.to_doc()).expect("serializable"));
    }
    let result = if docs.len() == 1 {
        docs.pop().unwrap()
    } else {
        json!({ "factors": docs })
    };
    Ok(Output { result, table })
}

fn join<T: ToString>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn weyl(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    let mut docs = Vec::new();
    let mut total: u128 = 1;
    let mut table = Table::new(&[
        "factor",
        "order",
        "positive_roots",
        "longest_length",
        "length_counts",
    ]);
    for rs in factors {
        let order = rs.spec().weyl_order();
        total = total.saturating_mul(order);
        let n_pos = rs.positive_roots().len();
        let mut doc = json!({
            "group": rs.spec().to_string(),
            "order": order.to_string(),
            "positive_roots": n_pos,
        });
        let mut counts_str = String::new();
        if !cfg.order_only {
            let w = generate_weyl_group(rs, cfg.caps.weyl as u128)?;
            let mut counts = vec![0u64; n_pos + 1];
            for u in 0..w.order() {
                counts[w.length(u)] += 1;
            }
            doc["enumerated"] = json!(w.order());
            doc["longest_length"] = json!(counts.len() - 1);
            doc["length_counts"] = json!(counts);
            counts_str = join(counts.iter());
        }
        table.rows.push(vec![
            rs.spec().to_string(),
            order.to_string(),
            n_pos.to_string(),
            if cfg.order_only {
                String::new()
            } else {
                n_pos.to_string()
            },
            counts_str,
        ]);
        docs.push(doc);
    }
    table.footer.push(("order".into(), total.to_string()));
    Ok(Output {
        result: json!({ "order": total.to_string(), "factors": docs }),
        table,
    })
}

fn dim(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    let weights = parse_weights(need(&cfg.weight, "weight")?, factors)?;
    let mut total = num_bigint::BigInt::from(1);
    let mut per = Vec::new();
    for (rs, w) in factors.iter().zip(&weights) {
        let d = dim_irrep(rs, w)?;
        per.push(json!({ "group": rs.spec().to_string(), "labels": rs.int_labels(w)?, "dim": d.to_string() }));
        total *= d;
    }
    Ok(Output {
        table: Table::scalar(vec![("dim", total.to_string())]),
        result: json!({ "dim": total.to_string(), "factors": per }),
    })
}

fn route(r: Option<Route>) -> SingularRoute {
    match r {
        None | Some(Route::Minimal) => SingularRoute::Minimal,
        Some(Route::Maximal) => SingularRoute::Maximal,
        Some(Route::FullOrbit) => SingularRoute::FullOrbit,
    }
}

fn char_value(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    let weights = parse_weights(need(&cfg.weight, "weight")?, factors)?;
    let points = parse_points(need(&cfg.point, "point")?, factors)?;
    let caps = caps(cfg);
    let mut value = Complex64::new(1.0, 0.0);
    let mut condition = 0.0f64;
    let mut total_dim = num_bigint::BigInt::from(1);
    let mut per = Vec::new();
    let mut degenerate = 0usize;
    for ((rs, w), h) in factors.iter().zip(&weights).zip(&points) {
        let snapped = snap(rs, h)?;
        let split = rs.degenerate_split(snapped.point())?;
        let chi = match (&snapped, cfg.route) {
            (Snapped::Singular(p), Some(r)) if !w.is_zero() => {
                char_singular_with(rs, w, p, route(Some(r)), &caps)?
            }
            _ => character_with(rs, w, h, &caps)?,
        };
        let d = dim_irrep(rs, w)?;
        condition =
            condition * chi.value.norm() + value.norm() * chi.condition + condition * chi.condition;
        value *= chi.value;
        degenerate += split.deg.len();
        per.push(json!({
            "group": rs.spec().to_string(),
            "value": [chi.value.re, chi.value.im],
            "dim": d.to_string(),
            "point": snapped.point().to_doc(),
            "singular": matches!(snapped, Snapped::Singular(_)),
            "degenerate_roots": split.deg.len(),
        }));
        total_dim *= d;
    }
    let dim_f = weylchar_core::exact::bigint_to_f64(&total_dim);
    let table = Table::scalar(vec![
        ("re", num(value.re)),
        ("im", num(value.im)),
        ("dim", total_dim.to_string()),
        ("normalized", num(value.norm() / dim_f)),
        ("degenerate_roots", degenerate.to_string()),
        ("condition", num(condition)),
    ]);
    let mut result = json!({
        "value": { "re": value.re, "im": value.im },
        "dim": total_dim.to_string(),
        "normalized_abs": value.norm() / dim_f,
        "degenerate_roots": degenerate,
        "condition": condition,
    });
    if factors.len() == 1 {
        result["point"] = per[0]["point"].clone();
        result["singular"] = per[0]["singular"].clone();
    } else {
        result["factors"] = json!(per);
    }
    Ok(Output { result, table })
}

fn sweep_report(
    cfg: &RunConfig,
    factors: &[RootSystem],
    weights: &[WeightVec],
    points: &[TorusPoint],
) -> Result<DecayReport> {
    let k_max = cfg.k_max.unwrap_or(20);
    if k_max == 0 {
        return Err(Error::Parse {
            field: "k_max".into(),
            message: "k_max must be positive".into(),
        });
    }
    let caps = caps(cfg);
    if factors.len() == 1 {
        normalized_char_sweep_with(
            &factors[0],
            &WeightPath::multiples(weights[0].clone(), k_max),
            &points[0],
            &caps,
        )
    } else {
        let ks: Vec<u64> = (1..=k_max).collect();
        let mut rep = product_sweep(factors, points, weights, &ks, &caps)?;
        if rep.entries.len() >= 5 && !rep.constant {
            rep.fitted_slope = decay_exponent(&rep).ok();
        }
        Ok(rep)
    }
}

fn sweep(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    let weights = parse_weights(need(&cfg.weight, "weight")?, factors)?;
    let points = parse_points(need(&cfg.point, "point")?, factors)?;
    let report = sweep_report(cfg, factors, &weights, &points)?;
    let mut result = serde_json::to_value(&report).expect("serializable");
    let (lo, hi) = report.envelope_halves();
    result["envelope_halves"] = json!([lo, hi]);
    let mut footer = vec![
        (
            "fitted_slope".to_string(),
            report.fitted_slope.map(num).unwrap_or_default(),
        ),
        ("bound_constant".to_string(), num(report.bound_constant)),
    ];
    if factors.len() == 1 && !report.constant {
        let rs = &factors[0];
        let split = rs.degenerate_split(snap(rs, &points[0])?.point())?;
        if !split.is_regular() || !split.ndeg.is_empty() {
            let (predicted, effective) = predicted_exponents(rs, &split, &weights[0])?;
            result["predicted_exponent"] = json!(predicted);
            result["predicted_exponent_effective"] = json!(effective);
            footer.push(("predicted_exponent".into(), predicted.to_string()));
            footer.push(("predicted_exponent_effective".into(), effective.to_string()));
        }
    }
    let mut table;
    if cfg.plot_data {
        let pairs: Vec<[f64; 2]> = report
            .entries
            .iter()
            .filter(|e| e.ratio > 0.0)
            .filter_map(|e| e.k.map(|k| [(k as f64).ln(), e.ratio.ln()]))
            .collect();
        table = Table::new(&["log_k", "log_ratio"]);
        table.rows = pairs.iter().map(|p| vec![num(p[0]), num(p[1])]).collect();
        result["plot_data"] = json!(pairs);
    } else {
        table = Table::new(&["k", "dim", "ratio_abs", "bound"]);
        table.rows = report
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.k.map(|k| k.to_string()).unwrap_or_default(),
                    e.dim.to_string(),
                    num(e.ratio),
                    num(e.bound),
                ]
            })
            .collect();
    }
    table.footer = footer;
    Ok(Output { result, table })
}

fn certificate(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    if factors.len() != 1 {
        return Err(Error::Structural(format!(
            "{} is not simple: a weight growing on one factor need not pair with any non-degenerate root, so the vanishing theorem does not hold",
            cfg.group
        )));
    }
    let rs = &factors[0];
    let weights = parse_weights(need(&cfg.weight, "weight")?, factors)?;
    let points = parse_points(need(&cfg.point, "point")?, factors)?;
    let split = rs.degenerate_split(snap(rs, &points[0])?.point())?;
    let cert = divergence_certificate(rs, &split, &weights[0])?;
    let k_max = cfg.k_max.unwrap_or(10);
    let pairings: Vec<_> = (0..=k_max).map(|k| cert.pairing_at(k)).collect();
    let increasing = pairings.windows(2).all(|w| w[1] > w[0]);
    let mut table = Table::new(&["k", "pairing"]);
    table.rows = pairings
        .iter()
        .enumerate()
        .map(|(k, p)| vec![k.to_string(), format_rational(p)])
        .collect();
    table.footer = vec![
        ("root".into(), cert.root.to_strings().join(",")),
        ("root_index".into(), cert.root_index.to_string()),
        ("strictly_increasing".into(), increasing.to_string()),
    ];
    Ok(Output {
        result: json!({
            "root": cert.root.to_strings(),
            "root_index": cert.root_index,
            "root_coefficients": rs.root_coeffs()[cert.root_index],
            "pairing": format_rational(&cert.pairing),
            "rho_pairing": format_rational(&cert.rho_pairing),
            "construction": cert.construction,
            "degenerate_roots": split.deg,
            "pairings": pairings.iter().map(format_rational).collect::<Vec<_>>(),
            "strictly_increasing": increasing,
        }),
        table,
    })
}

fn spectral(cfg: &RunConfig, factors: &[RootSystem]) -> Result<Output> {
    if factors.len() != 1 {
        return Err(Error::Domain(
            "spectral needs a single group of type A".into(),
        ));
    }
    let rs = &factors[0];
    let weight = parse_weights(need(&cfg.weight, "weight")?, factors)?.remove(0);
    let set = match &cfg.gens {
        None => {
            if rs.ambient_dim() != 2 {
                return Err(Error::Parse {
                    field: "gens".into(),
                    message:
                        "the built-in generator set lives in SU(2); pass --gens for other groups"
                            .into(),
                });
            }
            lps_free_pair()
        }
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                field: "gens".into(),
                message: format!("{path}: {e}"),
            })?;
            GeneratorSet::from_json(&text)?
        }
    };
    let sampling = match (cfg.samples, cfg.seed) {
        (Some(n), Some(seed)) => Some((n, seed)),
        (Some(_), None) => {
            return Err(Error::Parse {
                field: "seed".into(),
                message: "sampling requires --seed".into(),
            })
        }
        _ => None,
    };
    let m_max = cfg.moments.unwrap_or(8);
    let est = spectrum_with(
        rs,
        &weight,
        &set,
        m_max,
        cfg.caps.words,
        sampling,
        &caps(cfg),
    )?;
    let s = set.len() as u64;
    let d_opt = delta_opt(s).ok();
    let mut warnings = Vec::new();
    if !est.uniform {
        warnings.push(
            "non-uniform weights: the Kesten-McKay comparison only applies to the uniform average"
                .to_string(),
        );
    }
    if !set.symmetric {
        warnings.push("generator set is not symmetric".to_string());
    }
    let mut table = Table::new(&["m", "moment", "km", "abs_diff", "stderr"]);
    let mut rows = Vec::new();
    for (e, km) in est.moments.iter().zip(&est.km_reference) {
        let kmf = to_f64(&weylchar_core::exact::parse_rational(km)?);
        table.rows.push(vec![
            e.m.to_string(),
            num(e.value),
            km.clone(),
            num((e.value - kmf).abs()),
            e.stderr.map(num).unwrap_or_default(),
        ]);
        rows.push(json!({
            "m": e.m,
            "moment": e.value,
            "km": km,
            "abs_diff": (e.value - kmf).abs(),
            "stderr": e.stderr,
            "exact": e.exact,
        }));
    }
    table.footer = vec![
        ("delta_opt".into(), d_opt.map(num).unwrap_or_default()),
        ("norm_estimate".into(), num(est.norm_estimate)),
    ];
    Ok(Output {
        result: json!({
            "s": est.s,
            "lambda": est.lambda,
            "labels": rs.int_labels(&weight)?,
            "moments": rows,
            "delta_opt": d_opt,
            "norm_estimate": est.norm_estimate,
            "even_root_estimate": est.even_root_estimate,
            "generators": set.labels,
            "free": set.free,
            "warnings": warnings,
        }),
        table,
    })
}
