//! Sweeps of normalized characters `|chi_lambda(h0)| / dim V_lambda` along
//! growing highest weights, decay-exponent fits, divergence certificates and
//! the product-group counterexample.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::charcalc::{character_with, dim_irrep, dominant_labels, normalized_with_bound, Caps};
use crate::error::{Error, Result};
use crate::exact::{qi, to_f64, Q};
use crate::rootsys::{DegenerateSplit, RootSystem, WeightVec};
use crate::torus::{snap, TorusPoint};
use crate::weylgroup::{act_on_labels, generate_weyl_group};

#[derive(Clone, Debug)]
pub enum WeightPath {
    /// Weights `k * base` for each `k` in the schedule.
    Multiples {
        base: WeightVec,
        ks: Vec<u64>,
    },
    Explicit(Vec<WeightVec>),
}

impl WeightPath {
    pub fn multiples(base: WeightVec, k_max: u64) -> Self {
        WeightPath::Multiples {
            base,
            ks: (1..=k_max).collect(),
        }
    }

    fn weights(&self) -> Vec<(Option<u64>, WeightVec)> {
        match self {
            WeightPath::Multiples { base, ks } => ks
                .iter()
                .map(|&k| (Some(k), base.scale(&Q::from_integer(BigInt::from(k)))))
                .collect(),
            WeightPath::Explicit(ws) => ws.iter().map(|w| (None, w.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayEntry {
    pub k: Option<u64>,
    pub labels: Vec<i64>,
    #[serde(serialize_with = "ser_bigint")]
    pub dim: BigInt,
    /// `|chi| / dim`.
    pub ratio: f64,
    /// `sum_b |coset term| / dim`, an upper bound for `ratio` without
    /// cancellation between cosets.
    pub bound: f64,
    /// `|lambda|_inf` in ambient coordinates.
    pub sup_norm: f64,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub entries: Vec<DecayEntry>,
    /// Exponent of the coset envelope, see [`decay_exponent`].
    pub fitted_slope: Option<f64>,
    /// Same fit applied to the raw ratios (zeros dropped); informational.
    pub raw_slope: Option<f64>,
    /// Smallest `C` with `ratio <= C / |lambda|_inf` on every entry.
    pub bound_constant: f64,
    /// Every root is degenerate (identity or central point); ratios are constant.
    pub constant: bool,
}

impl DecayReport {
    fn finish(mut entries: Vec<DecayEntry>, constant: bool) -> Self {
        entries.sort_by(|a, b| a.dim.cmp(&b.dim));
        let bound_constant = entries
            .iter()
            .map(|e| e.ratio * e.sup_norm)
            .fold(0.0, f64::max);
        let mut r = DecayReport {
            entries,
            fitted_slope: None,
            raw_slope: None,
            bound_constant,
            constant,
        };
        if !constant {
            r.fitted_slope = decay_exponent(&r).ok();
            r.raw_slope = fit_exponent(&r, |e| e.ratio).ok();
        }
        r
    }

    /// `max ratio * |lambda|_inf` over the first and over the second half of
    /// the entries.
    pub fn envelope_halves(&self) -> (f64, f64) {
        let n = self.entries.len();
        let c = |s: &[DecayEntry]| s.iter().map(|e| e.ratio * e.sup_norm).fold(0.0, f64::max);
        (c(&self.entries[..n / 2]), c(&self.entries[n / 2..]))
    }
}

/// Normalized characters along a weight path.
pub fn normalized_char_sweep(
    rs: &RootSystem,
    path: &WeightPath,
    h0: &TorusPoint,
) -> Result<DecayReport> {
    normalized_char_sweep_with(rs, path, h0, &Caps::from_env())
}

pub fn normalized_char_sweep_with(
    rs: &RootSystem,
    path: &WeightPath,
    h0: &TorusPoint,
    caps: &Caps,
) -> Result<DecayReport> {
    let h0 = snap(rs, h0)?.point().clone();
    let split = rs.degenerate_split(&h0)?;
    let weights = path.weights();
    for (_, w) in &weights {
        dominant_labels(rs, w)?;
    }
    let entries: Vec<Result<DecayEntry>> = weights
        .par_iter()
        .map(|(k, w)| {
            let (ratio, bound) = normalized_with_bound(rs, w, &h0, caps)?;
            Ok(DecayEntry {
                k: *k,
                labels: rs.int_labels(w)?,
                dim: dim_irrep(rs, w)?,
                ratio,
                bound,
                sup_norm: to_f64(&w.max_abs()),
            })
        })
        .collect();
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(DecayReport::finish(entries, split.is_central()))
}

/// Exponent `s` in `bound ~ C k^s`, fitted on the last half of a `k * lambda0`
/// schedule with the model `ln bound = s ln k + c0 + c1/k + c2/k^2`.
///
/// The coset envelope is used rather than the raw ratio because the latter
/// has exact zeros and oscillates at rational points; the two share the same
/// power law whenever the leading coset terms do not cancel identically.
pub fn decay_exponent(report: &DecayReport) -> Result<f64> {
    fit_exponent(report, |e| e.bound)
}

fn fit_exponent(report: &DecayReport, f: impl Fn(&DecayEntry) -> f64) -> Result<f64> {
    if report.entries.len() < 5 || report.entries.iter().any(|e| e.k.is_none()) {
        return Err(Error::Domain(
            "need at least 5 entries on a k * lambda0 schedule".into(),
        ));
    }
    let mut pts: Vec<(f64, f64)> = report
        .entries
        .iter()
        .map(|e| (e.k.unwrap() as f64, f(e)))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let half = pts.split_off(pts.len() / 2);
    let pts: Vec<(f64, f64)> = half.into_iter().filter(|p| p.1 > 1e-300).collect();
    if pts.len() < 3 {
        return Err(Error::Domain("too few nonzero values to fit".into()));
    }
    let cols = 4.min(pts.len() - 1);
    let a = DMatrix::from_fn(pts.len(), cols, |i, j| {
        let k = pts[i].0;
        match j {
            0 => k.ln(),
            1 => 1.0,
            2 => 1.0 / k,
            _ => 1.0 / (k * k),
        }
    });
    let b = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1.ln()));
    let x = a
        .svd(true, true)
        .solve(&b, 1e-12)
        .map_err(|e| Error::Domain(format!("least squares failed: {e}")))?;
    Ok(x[0])
}

/// Decay exponents predicted for the path `k * lambda0`: the count of
/// non-degenerate roots not orthogonal to `lambda0`, and the exponent of the
/// largest coset term, `#{alpha : <lambda0, alpha^vee> != 0} - max_b
/// #{alpha in R_deg : <b^{-1} lambda0, alpha^vee> != 0}`. The two agree
/// when the identity coset dominates.
pub fn predicted_exponents(
    rs: &RootSystem,
    split: &DegenerateSplit,
    lambda0: &WeightVec,
) -> Result<(usize, usize)> {
    let l0 = dominant_labels(rs, lambda0)?;
    let n_pos = rs.positive_roots().len();
    let nonorth = |labels: &[i64], idx: usize| rs.coroot_pairing(labels, idx) != 0;
    let simple_count = split.ndeg.iter().filter(|&&i| nonorth(&l0, i)).count();
    let p_total = (0..n_pos).filter(|&i| nonorth(&l0, i)).count();
    let w = generate_weyl_group(rs, crate::weylgroup::weyl_cap_from_env())?;
    let mut best = 0;
    for u in 0..w.order() {
        let rho_img = w.rho_image(u);
        if !split
            .deg
            .iter()
            .all(|&a| rs.coroot_pairing(&rho_img, a) > 0)
        {
            continue;
        }
        let mut img = l0.clone();
        act_on_labels(rs.cartan(), &w.word(u), &mut img);
        let q = split.deg.iter().filter(|&&a| nonorth(&img, a)).count();
        best = best.max(q);
    }
    Ok((simple_count, p_total - best))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// A non-degenerate simple root pairing positively with `lambda0`.
    Direct { simple: usize },
    /// Dynkin chain from a simple root pairing positively with `lambda0` to a
    /// non-degenerate simple root; the certified root is the chain sum.
    Chain { chain: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceCertificate {
    pub root: WeightVec,
    pub root_index: usize,
    /// `(lambda0 | root)`.
    pub pairing: Q,
    /// `(rho | root)`.
    pub rho_pairing: Q,
    pub construction: Construction,
}

impl DivergenceCertificate {
    /// `(k lambda0 + rho | root)`, exactly.
    pub fn pairing_at(&self, k: u64) -> Q {
        &self.pairing * Q::from_integer(BigInt::from(k)) + &self.rho_pairing
    }
}

/// A non-degenerate positive root `alpha` with `(lambda0 | alpha) > 0`, so
/// that the factor `(k lambda0 + rho | alpha)` of the dimension grows without
/// bound while `alpha` contributes a bounded factor to the character.
pub fn divergence_certificate(
    rs: &RootSystem,
    split: &DegenerateSplit,
    lambda0: &WeightVec,
) -> Result<DivergenceCertificate> {
    if !rs.is_simple() {
        return Err(Error::Structural(format!(
            "{} is not simple: a weight growing on one factor need not pair with any non-degenerate root, so the vanishing theorem does not hold",
            rs.spec()
        )));
    }
    let l0 = dominant_labels(rs, lambda0)?;
    if l0.iter().all(|&a| a == 0) {
        return Err(Error::Domain("lambda0 must be nonzero".into()));
    }
    if split.is_central() {
        return Err(Error::Domain(
            "every root is degenerate (central point); nothing diverges".into(),
        ));
    }
    let n = rs.rank();
    let ndeg_simple: Vec<usize> = (0..n).filter(|i| split.ndeg.contains(i)).collect();
    let make = |idx: usize, construction: Construction| -> Result<DivergenceCertificate> {
        let root = rs.positive_roots()[idx].clone();
        let pairing = rs.inner(lambda0, &root)?;
        let rho_pairing = rs.inner(rs.weyl_vector(), &root)?;
        Ok(DivergenceCertificate {
            root,
            root_index: idx,
            pairing,
            rho_pairing,
            construction,
        })
    };
    if let Some(&i) = ndeg_simple.iter().find(|&&i| l0[i] > 0) {
        return make(i, Construction::Direct { simple: i });
    }
    let mut best: Option<Vec<usize>> = None;
    for src in (0..n).filter(|&i| l0[i] > 0) {
        for &dst in &ndeg_simple {
            let path = rs.dynkin_path(src, dst)?;
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    let chain = best.ok_or_else(|| Error::Structural("no non-degenerate simple root".into()))?;
    let root = rs.chain_sum_root(&chain)?;
    let idx = rs
        .positive_root_index(&root)
        .ok_or_else(|| Error::Structural("chain sum is not a positive root".into()))?;
    if !split.ndeg.contains(&idx) {
        return Err(Error::Structural(format!("chain sum {root} is degenerate")));
    }
    let cert = make(idx, Construction::Chain { chain })?;
    if !cert.pairing.is_positive() {
        return Err(Error::Structural(
            "chain sum is orthogonal to lambda0".into(),
        ));
    }
    Ok(cert)
}

/// Sweep over a product group `G_1 x ... x G_r`: the weight on factor `j` is
/// `k * bases[j]`, the point is `points[j]` on factor `j`.
pub fn product_sweep(
    factors: &[RootSystem],
    points: &[TorusPoint],
    bases: &[WeightVec],
    ks: &[u64],
    caps: &Caps,
) -> Result<DecayReport> {
    if factors.len() != points.len() || factors.len() != bases.len() {
        return Err(Error::DimensionMismatch {
            expected: factors.len(),
            got: points.len().min(bases.len()),
        });
    }
    let constant = factors.iter().zip(points).all(|(rs, h)| {
        rs.degenerate_split(h)
            .map(|s| s.is_central())
            .unwrap_or(false)
    });
    let entries: Vec<Result<DecayEntry>> = ks
        .par_iter()
        .map(|&k| {
            let kq = qi(k as i64);
            let mut ratio = 1.0;
            let mut bound = 1.0;
            let mut dim = BigInt::from(1);
            let mut labels = Vec::new();
            let mut sup = 0.0f64;
            for ((rs, h), b) in factors.iter().zip(points).zip(bases) {
                let w = b.scale(&kq);
                let d = dim_irrep(rs, &w)?;
                let df = d.to_f64().unwrap_or(f64::INFINITY);
                let chi = character_with(rs, &w, h, caps)?;
                ratio *= chi.value.norm() / df;
                let (_, bd) = if w.is_zero() {
                    (1.0, 1.0)
                } else {
                    normalized_with_bound(rs, &w, h, caps)?
                };
                bound *= bd;
                dim *= d;
                labels.extend(rs.int_labels(&w)?);
                sup = sup.max(to_f64(&w.max_abs()));
            }
            Ok(DecayEntry {
                k: Some(k),
                labels,
                dim,
                ratio,
                bound,
                sup_norm: sup,
            })
        })
        .collect();
    let entries = entries.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(DecayReport::finish(entries, constant))
}

/// Representations trivial on the `carrier` factor and `k rho` on the next
/// factor, evaluated at `g` on the carrier and the identity elsewhere. The
/// normalized character is identically 1 while the dimension diverges.
pub fn nonsimple_counterexample(
    factors: &[RootSystem],
    carrier: usize,
    g: &TorusPoint,
    k_max: u64,
) -> Result<DecayReport> {
    if factors.len() < 2 {
        return Err(Error::Domain("need at least two factors".into()));
    }
    if carrier >= factors.len() {
        return Err(Error::Domain(format!(
            "carrier index {carrier} out of range"
        )));
    }
    let crs = &factors[carrier];
    let g = snap(crs, g)?.point().clone();
    if crate::charcalc::is_identity(crs, &g)? {
        return Err(Error::Domain(
            "g must be a non-identity element of the carrier factor".into(),
        ));
    }
    let grown = (carrier + 1) % factors.len();
    let points: Vec<TorusPoint> = factors
        .iter()
        .enumerate()
        .map(|(j, rs)| {
            if j == carrier {
                g.clone()
            } else {
                TorusPoint::zero(rs)
            }
        })
        .collect();
    let bases: Vec<WeightVec> = factors
        .iter()
        .enumerate()
        .map(|(j, rs)| {
            if j == grown {
                rs.weyl_vector().clone()
            } else {
                WeightVec::zero(rs.ambient_dim())
            }
        })
        .collect();
    let ks: Vec<u64> = (1..=k_max).collect();
    let mut report = product_sweep(factors, &points, &bases, &ks, &Caps::from_env())?;
    report.constant = true;
    report.fitted_slope = None;
    report.raw_slope = None;
    Ok(report)
}
