//! Points of the maximal torus, written as Cartan-algebra elements `h` with
//! `g = exp(i h)`.
//!
//! Exact points store ambient coordinates as rational multiples of pi; float
//! points store ambient coordinates in radians. Internally most code works in
//! coroot coordinates `c_i = (omega_i | h) / pi`, so that an integral weight
//! with Dynkin labels `a` pairs as `(mu | h) = pi * sum_i a_i c_i`, and two
//! points are the same torus element iff their coroot coordinates differ by
//! even integers.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, qi, reconstruct_rational, rref, to_f64, Q};
use crate::rootsys::{Family, RootSystem, WeightVec};

/// Float points closer than this (in radians) to a root wall count as singular.
pub const SNAP_TOLERANCE: f64 = 1e-9;
/// Largest denominator accepted when rationalizing a snapped coordinate.
pub const SNAP_MAX_DENOMINATOR: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum TorusPoint {
    /// Ambient coordinates in units of pi.
    Exact(Vec<Q>),
    /// Ambient coordinates in radians.
    Float(Vec<f64>),
}

impl TorusPoint {
    pub fn zero(rs: &RootSystem) -> Self {
        TorusPoint::Exact(vec![Q::zero(); rs.ambient_dim()])
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TorusPoint::Exact(_))
    }

    pub fn dim(&self) -> usize {
        match self {
            TorusPoint::Exact(v) => v.len(),
            TorusPoint::Float(v) => v.len(),
        }
    }

    /// Exact point with `(alpha_i | h) = pi * t_i` for each simple root.
    pub fn from_simple_pairings(rs: &RootSystem, t: &[Q]) -> Result<Self> {
        check_len(rs.rank(), t.len())?;
        let mut h = WeightVec::zero(rs.ambient_dim());
        for ((ti, w), half) in t.iter().zip(rs.fundamental_weights()).zip(rs.half_norms()) {
            h = h.add(&w.scale(&(ti / half)));
        }
        Ok(TorusPoint::Exact(h.0))
    }

    pub fn from_simple_pairings_float(rs: &RootSystem, t: &[f64]) -> Result<Self> {
        check_len(rs.rank(), t.len())?;
        let mut h = vec![0.0; rs.ambient_dim()];
        for ((ti, w), half) in t.iter().zip(rs.fundamental_weights()).zip(rs.half_norms()) {
            let s = ti / to_f64(half);
            for (x, wk) in h.iter_mut().zip(&w.0) {
                *x += s * to_f64(wk);
            }
        }
        Ok(TorusPoint::Float(h))
    }

    fn validate(&self, rs: &RootSystem) -> Result<()> {
        check_len(rs.ambient_dim(), self.dim())?;
        if rs.spec().family == Family::A {
            match self {
                TorusPoint::Exact(v) => {
                    if !v.iter().sum::<Q>().is_zero() {
                        return Err(Error::Domain(
                            "type A torus coordinates must sum to zero".into(),
                        ));
                    }
                }
                TorusPoint::Float(v) => {
                    let s: f64 = v.iter().sum();
                    let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
                    if s.abs() > 1e-9 * scale {
                        return Err(Error::Domain(
                            "type A torus coordinates must sum to zero".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(alpha_i | h) / pi` for each simple root.
    pub fn simple_pairings_exact(&self, rs: &RootSystem) -> Result<Vec<Q>> {
        self.validate(rs)?;
        match self {
            TorusPoint::Exact(v) => {
                let h = WeightVec(v.clone());
                Ok(rs.simple_roots().iter().map(|a| rs.ip(a, &h)).collect())
            }
            TorusPoint::Float(_) => Err(Error::Domain("point is not exact".into())),
        }
    }

    /// `(alpha_i | h)` in radians for each simple root.
    pub fn simple_pairings_float(&self, rs: &RootSystem) -> Result<Vec<f64>> {
        self.validate(rs)?;
        Ok(match self {
            TorusPoint::Exact(_) => self
                .simple_pairings_exact(rs)?
                .iter()
                .map(|t| to_f64(t) * std::f64::consts::PI)
                .collect(),
            TorusPoint::Float(v) => rs
                .simple_roots()
                .iter()
                .map(|a| float_pairing(rs, &a.0, v))
                .collect(),
        })
    }

    /// Coroot coordinates `(omega_i | h) / pi`.
    pub fn coroot_coords_exact(&self, rs: &RootSystem) -> Result<Vec<Q>> {
        self.validate(rs)?;
        match self {
            TorusPoint::Exact(v) => {
                let h = WeightVec(v.clone());
                Ok(rs
                    .fundamental_weights()
                    .iter()
                    .map(|w| rs.ip(w, &h))
                    .collect())
            }
            TorusPoint::Float(_) => Err(Error::Domain("point is not exact".into())),
        }
    }

    pub fn coroot_coords_float(&self, rs: &RootSystem) -> Result<Vec<f64>> {
        self.validate(rs)?;
        Ok(match self {
            TorusPoint::Exact(_) => self.coroot_coords_exact(rs)?.iter().map(to_f64).collect(),
            TorusPoint::Float(v) => rs
                .fundamental_weights()
                .iter()
                .map(|w| float_pairing(rs, &w.0, v) / std::f64::consts::PI)
                .collect(),
        })
    }

    /// `(mu | h)` for an ambient weight, in units of pi when exact.
    pub fn pairing_exact(&self, rs: &RootSystem, mu: &WeightVec) -> Result<Q> {
        match self {
            TorusPoint::Exact(v) => rs.inner(mu, &WeightVec(v.clone())),
            TorusPoint::Float(_) => Err(Error::Domain("point is not exact".into())),
        }
    }

    /// Same torus element: coroot coordinates agree modulo 2 (exact points only).
    pub fn torus_eq(&self, other: &TorusPoint, rs: &RootSystem) -> Result<bool> {
        let a = self.coroot_coords_exact(rs)?;
        let b = other.coroot_coords_exact(rs)?;
        Ok(a.iter().zip(&b).all(|(x, y)| {
            let d = (x - y) / qi(2);
            d.is_integer()
        }))
    }

    pub fn to_f64_radians(&self) -> Vec<f64> {
        match self {
            TorusPoint::Exact(v) => v.iter().map(|x| to_f64(x) * std::f64::consts::PI).collect(),
            TorusPoint::Float(v) => v.clone(),
        }
    }

    pub fn to_doc(&self) -> TorusPointDoc {
        match self {
            TorusPoint::Exact(v) => TorusPointDoc {
                mode: "exact".into(),
                coords: v
                    .iter()
                    .map(|x| format!("{}*pi", format_rational(x)))
                    .collect(),
            },
            TorusPoint::Float(v) => TorusPointDoc {
                mode: "float".into(),
                coords: v.iter().map(|x| format!("{x:e}")).collect(),
            },
        }
    }
}

/// Serialized torus point: exact entries are `"p/q*pi"`, float entries are radians.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TorusPointDoc {
    pub mode: String,
    pub coords: Vec<String>,
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

fn float_pairing(rs: &RootSystem, x: &[Q], h: &[f64]) -> f64 {
    let g = rs.gram();
    let mut acc = 0.0;
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let xi = to_f64(xi);
        for (j, hj) in h.iter().enumerate() {
            if !g[i][j].is_zero() {
                acc += xi * to_f64(&g[i][j]) * hj;
            }
        }
    }
    acc
}

/// Distance from `x` to the nearest multiple of `2 pi`, with that multiple.
fn wall_distance(x: f64) -> (f64, i64) {
    let k = (x / std::f64::consts::TAU).round();
    ((x - k * std::f64::consts::TAU).abs(), k as i64)
}

/// Result of the snap policy applied to a float point.
#[derive(Clone, Debug, PartialEq)]
pub enum Snapped {
    /// No root within the snap tolerance of a wall; the point is left as is.
    Regular(TorusPoint),
    /// Rationalized onto the singular stratum.
    Singular(TorusPoint),
}

impl Snapped {
    pub fn point(&self) -> &TorusPoint {
        match self {
            Snapped::Regular(p) | Snapped::Singular(p) => p,
        }
    }
}

/// Applies the snap-or-fail policy. Exact inputs pass through unchanged.
///
/// For a float point, every positive root with `(alpha | h)` within
/// `SNAP_TOLERANCE` of `2 pi Z` becomes a linear constraint on the simple-root
/// pairings. The constraint system is solved exactly; each free pairing is
/// replaced by the least-denominator rational (denominator at most
/// `SNAP_MAX_DENOMINATOR`) within the tolerance. If that is impossible the
/// point is rejected.
pub fn snap(rs: &RootSystem, h: &TorusPoint) -> Result<Snapped> {
    if let TorusPoint::Exact(_) = h {
        h.validate(rs)?;
        let split = rs.degenerate_split(h)?;
        return Ok(if split.is_regular() {
            Snapped::Regular(h.clone())
        } else {
            Snapped::Singular(h.clone())
        });
    }
    let t = h.simple_pairings_float(rs)?;
    let n = rs.rank();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for m in rs.root_coeffs() {
        let x: f64 = m.iter().zip(&t).map(|(&mj, tj)| tj * mj as f64).sum();
        let (d, k) = wall_distance(x);
        if d < SNAP_TOLERANCE {
            let mut row: Vec<Q> = m.iter().map(|&c| qi(c)).collect();
            row.push(qi(2 * k));
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Snapped::Regular(h.clone()));
    }
    let (rr, pivots) = rref(&rows, n)
        .map_err(|_| Error::SnapFailed("near-wall constraints are inconsistent".into()))?;
    let tol = SNAP_TOLERANCE / std::f64::consts::PI;
    let t_pi: Vec<f64> = t.iter().map(|x| x / std::f64::consts::PI).collect();
    let mut sol: Vec<Option<Q>> = vec![None; n];
    for j in 0..n {
        if !pivots.contains(&j) {
            let q = reconstruct_rational(t_pi[j], tol, SNAP_MAX_DENOMINATOR).ok_or_else(|| {
                Error::SnapFailed(format!(
                    "pairing {:.3e} with simple root {} has no rational multiple of pi with denominator <= {} within tolerance",
                    t[j],
                    j + 1,
                    SNAP_MAX_DENOMINATOR
                ))
            })?;
            sol[j] = Some(q);
        }
    }
    for (row, &p) in rr.iter().zip(&pivots) {
        let mut val = row[n].clone();
        for j in p + 1..n {
            if !row[j].is_zero() {
                val -= &row[j] * sol[j].as_ref().expect("free variable set");
            }
        }
        sol[p] = Some(val);
    }
    let sol: Vec<Q> = sol
        .into_iter()
        .map(|x| x.expect("all variables set"))
        .collect();
    // the snapped point must stay close to the input
    for (q, x) in sol.iter().zip(&t_pi) {
        let dev = (to_f64(q) - x).abs();
        if dev > 1e3 * tol.max(f64::EPSILON * x.abs()) {
            return Err(Error::SnapFailed(format!(
                "snapped pairing moved by {:.3e} rad",
                dev * std::f64::consts::PI
            )));
        }
    }
    Ok(Snapped::Singular(TorusPoint::from_simple_pairings(
        rs, &sol,
    )?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumKind {
    /// The identity element.
    Identity,
    /// A central element: every root pairs into `2 pi Z` but `h != 0`.
    Central,
    /// Some roots degenerate, some not.
    Proper,
}

/// A face of the fundamental alcove, represented by its barycenter.
#[derive(Clone, Debug)]
pub struct Stratum {
    /// Alcove vertices spanning the face; 0 is the origin, `i` the vertex on
    /// the `i`-th fundamental coweight ray.
    pub vertices: Vec<usize>,
    /// Walls containing the face; 0 is the affine wall `(theta | h) = 2 pi`.
    pub walls: Vec<usize>,
    pub point: TorusPoint,
    pub kind: StratumKind,
}

/// All singular faces of the fundamental alcove (every face except its
/// interior), each with its barycenter as an exact representative.
pub fn alcove_strata(rs: &RootSystem) -> Result<Vec<Stratum>> {
    let n = rs.rank();
    let marks = &rs.root_coeffs()[rs.highest_root()];
    if rs.diagram_components().len() != 1 {
        return Err(Error::Structural(format!(
            "{} is not simple; the alcove is a product",
            rs.spec()
        )));
    }
    let mut out = Vec::new();
    let full: u32 = (1u32 << (n + 1)) - 1;
    for mask in 1..full {
        let vertices: Vec<usize> = (0..=n).filter(|&i| mask & (1 << i) != 0).collect();
        let walls: Vec<usize> = (0..=n).filter(|&i| mask & (1 << i) == 0).collect();
        let k = vertices.len() as i64;
        let t: Vec<Q> = (1..=n)
            .map(|i| {
                if vertices.contains(&i) {
                    Q::new(2.into(), (marks[i - 1] * k).into())
                } else {
                    Q::zero()
                }
            })
            .collect();
        let point = TorusPoint::from_simple_pairings(rs, &t)?;
        let split = rs.degenerate_split(&point)?;
        let kind = if t.iter().all(|x| x.is_zero()) {
            StratumKind::Identity
        } else if split.is_central() {
            StratumKind::Central
        } else {
            StratumKind::Proper
        };
        out.push(Stratum {
            vertices,
            walls,
            point,
            kind,
        });
    }
    Ok(out)
}

/// Largest absolute ambient coordinate, in units of pi.
pub fn max_abs_coord(h: &TorusPoint) -> f64 {
    match h {
        TorusPoint::Exact(v) => v
            .iter()
            .map(|x| x.abs().to_f64().unwrap_or(0.0))
            .fold(0.0, f64::max),
        TorusPoint::Float(v) => v
            .iter()
            .map(|x| x.abs() / std::f64::consts::PI)
            .fold(0.0, f64::max),
    }
}
