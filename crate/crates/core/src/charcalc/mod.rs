//! Characters of irreducible representations: the Weyl character formula at
//! regular points, its limit at singular points, and a weight-sum oracle.

mod effective;
mod freudenthal;
mod phase;

pub use effective::{
    classify_component, effective_subsystem, effective_weight, EffectiveSubsystem,
    EffectiveWeightData, SubComponent,
};
pub use freudenthal::{
    char_weightsum_oracle, char_weightsum_oracle_with, weight_multiplicities,
    weight_multiplicities_with, WeightMultiplicities,
};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::ddouble::{Dd, DdComplex};
use crate::error::{Error, Result};
use crate::exact::{qi, Q};
use crate::orbit::fold_orbit;
use crate::reduce::{pairwise_sum, Pairwise};
use crate::rootsys::{RootSystem, WeightVec};
use crate::torus::{snap, Snapped, TorusPoint};
use crate::weylgroup::{check_weyl_cap, weyl_cap_from_env};
use phase::{wall_factor_exact, wall_factor_float, Phases};

/// Default cap on `dim V_lambda` for the multiplicity oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 100_000;

/// Resource limits for character evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest Weyl-group order summed over.
    pub weyl: u128,
    /// Largest representation dimension for the weight-sum oracle.
    pub oracle_dim: u64,
}

impl Caps {
    pub fn from_env() -> Self {
        Caps {
            weyl: weyl_cap_from_env(),
            oracle_dim: DEFAULT_ORACLE_CAP,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Self::from_env()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CharacterValue {
    pub value: Complex64,
    /// Estimated absolute error bound.
    pub condition: f64,
}

/// Dynkin labels of a dominant integral weight, or a domain error.
pub fn dominant_labels(rs: &RootSystem, lambda: &WeightVec) -> Result<Vec<i64>> {
    let labels = rs.int_labels(lambda)?;
    if labels.iter().any(|&a| a < 0) {
        return Err(Error::Domain(format!("{lambda} is not dominant")));
    }
    Ok(labels)
}

/// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>` from labels.
pub(crate) fn dim_from_labels(rs: &RootSystem, labels: &[i64]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for cc in rs.coroot_coeffs() {
        let top: i64 = cc.iter().zip(labels).map(|(c, a)| c * (a + 1)).sum();
        let bottom: i64 = cc.iter().sum();
        num *= top;
        den *= bottom;
    }
    let q = Q::new(num, den);
    assert!(
        q.is_integer(),
        "Weyl dimension formula produced a non-integer"
    );
    q.to_integer()
}

/// Weyl dimension formula.
pub fn dim_irrep(rs: &RootSystem, lambda: &WeightVec) -> Result<BigInt> {
    let labels = dominant_labels(rs, lambda)?;
    Ok(dim_from_labels(rs, &labels))
}

fn rho_shift(labels: &[i64]) -> Vec<i64> {
    labels.iter().map(|a| a + 1).collect()
}

/// Alternating sum `sum_w sgn(w) e^{i (w eta | h)}` and `sum |terms|`.
fn alternating_sum(rs: &RootSystem, eta: &[i64], phases: &Phases) -> (DdComplex, f64) {
    let parts = fold_orbit(
        rs.cartan(),
        eta,
        || (Pairwise::<DdComplex>::new(), 0.0f64),
        |acc, v, depth| {
            let t = phases.eval(v);
            acc.0.push(if depth % 2 == 0 { t } else { -t });
            acc.1 += 1.0;
        },
    );
    let mut sums = Vec::with_capacity(parts.len());
    let mut count = 0.0;
    for (p, c) in parts {
        sums.push(p.finish(DdComplex::ZERO));
        count += c;
    }
    (pairwise_sum(&sums, DdComplex::ZERO), count)
}

/// Weyl character formula at a regular point.
pub fn char_regular(rs: &RootSystem, lambda: &WeightVec, h: &TorusPoint) -> Result<CharacterValue> {
    char_regular_with(rs, lambda, h, &Caps::from_env())
}

pub fn char_regular_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    h: &TorusPoint,
    caps: &Caps,
) -> Result<CharacterValue> {
    let labels = dominant_labels(rs, lambda)?;
    let split = rs.degenerate_split(h)?;
    if !split.is_regular() {
        return Err(Error::SingularPoint {
            degenerate: split.deg.len(),
        });
    }
    check_weyl_cap(rs, caps.weyl)?;
    let phases = Phases::new(rs, h)?;
    let eta = rho_shift(&labels);
    let (num, count) = alternating_sum(rs, &eta, &phases);
    let den = denominator(rs, h, &split.ndeg)?;
    let value = num.div(den);
    let amax = eta.iter().map(|&a| a as f64).fold(0.0, f64::max) * rs.rank() as f64;
    let den_abs = den.norm_f64();
    let condition =
        count * phases.phase_error(amax) / den_abs + 4.0 * f64::EPSILON * value.norm_f64();
    Ok(CharacterValue {
        value: value.to_c64(),
        condition,
    })
}

/// `prod (e^{i(alpha|h)/2} - e^{-i(alpha|h)/2})` over the given positive roots.
fn denominator(rs: &RootSystem, h: &TorusPoint, roots: &[usize]) -> Result<DdComplex> {
    let one = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };
    let mut den = one;
    match h {
        TorusPoint::Exact(_) => {
            let t = h.simple_pairings_exact(rs)?;
            for &idx in roots {
                let x: Q = rs.root_coeffs()[idx]
                    .iter()
                    .zip(&t)
                    .map(|(&m, tj)| tj * qi(m))
                    .sum();
                den = den * wall_factor_exact(&x);
            }
        }
        TorusPoint::Float(_) => {
            let t = h.simple_pairings_float(rs)?;
            for &idx in roots {
                let x: f64 = rs.root_coeffs()[idx]
                    .iter()
                    .zip(&t)
                    .map(|(&m, tj)| m as f64 * tj)
                    .sum();
                den = den * wall_factor_float(x);
            }
        }
    }
    Ok(den)
}

/// How the coset sum of the singular formula is organized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularRoute {
    /// Shortest coset representatives.
    Minimal,
    /// Longest coset representatives.
    Maximal,
    /// Whole Weyl group, divided by the stabilizer order.
    FullOrbit,
}

/// Character at a singular point, as the limit of the Weyl formula.
///
/// With `R_deg` the positive roots pairing into `2 pi Z` with `h0`,
///
/// ```text
/// chi(h0) = (-1)^{sum k_alpha} / prod_{ndeg} (2i sin((alpha|h0)/2))
///         * sum_{b in W/W0} sgn(b) e^{i(eta | b h0)} prod_{deg} <b^{-1} eta, alpha^vee> / <rho_deg, alpha^vee>
/// ```
///
/// where `(alpha|h0) = 2 pi k_alpha` on degenerate roots and `W0` is the
/// reflection group of `R_deg`.
pub fn char_singular(
    rs: &RootSystem,
    lambda: &WeightVec,
    h0: &TorusPoint,
) -> Result<CharacterValue> {
    char_singular_with(rs, lambda, h0, SingularRoute::Minimal, &Caps::from_env())
}

pub fn char_singular_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    h0: &TorusPoint,
    route: SingularRoute,
    caps: &Caps,
) -> Result<CharacterValue> {
    let labels = dominant_labels(rs, lambda)?;
    let h0 = match snap(rs, h0)? {
        Snapped::Regular(p) => return char_regular_with(rs, lambda, &p, caps),
        Snapped::Singular(p) => p,
    };
    check_weyl_cap(rs, caps.weyl)?;
    let split = rs.degenerate_split(&h0)?;
    let eta = rho_shift(&labels);
    let phases = Phases::new(rs, &h0)?;
    let deg_coroots: Vec<&Vec<i64>> = split.deg.iter().map(|&i| &rs.coroot_coeffs()[i]).collect();

    // <rho_deg, alpha^vee> for each degenerate alpha
    let mut rho_deg_pairing = Dd::ONE;
    for &a in &split.deg {
        let twice: i64 = split
            .deg
            .iter()
            .map(|&b| rs.coroot_pairing(&rs.root_labels(b), a))
            .sum();
        debug_assert!(twice > 0 && twice % 2 == 0);
        rho_deg_pairing = rho_deg_pairing * Dd::from_i128((twice / 2) as i128);
    }

    let n_deg = deg_coroots.len();
    let parts = fold_orbit(
        rs.cartan(),
        &eta,
        || (Pairwise::<DdComplex>::new(), 0.0f64, 0u64),
        |acc, v, depth| {
            let mut prod = Dd::ONE;
            let mut pos = 0usize;
            for cc in &deg_coroots {
                let p: i64 = cc.iter().zip(v).map(|(c, a)| c * a).sum();
                if p > 0 {
                    pos += 1;
                }
                prod = prod * Dd::from_i128(p as i128);
            }
            if pos == n_deg {
                acc.2 += 1;
            }
            let keep = match route {
                SingularRoute::Minimal => pos == n_deg,
                SingularRoute::Maximal => pos == 0,
                SingularRoute::FullOrbit => true,
            };
            if keep {
                let t = phases.eval(v).scale(prod);
                acc.0.push(if depth % 2 == 0 { t } else { -t });
                acc.1 += prod.to_f64().abs();
            }
        },
    );
    let mut sums = Vec::with_capacity(parts.len());
    let mut abs_sum = 0.0;
    let mut cosets = 0u64;
    for (p, a, c) in parts {
        sums.push(p.finish(DdComplex::ZERO));
        abs_sum += a;
        cosets += c;
    }
    let mut num = pairwise_sum(&sums, DdComplex::ZERO);
    let mut scale = rho_deg_pairing;
    if route == SingularRoute::FullOrbit {
        let w0 = rs.spec().weyl_order() / cosets as u128;
        scale = scale * Dd::from_i128(w0 as i128);
    }
    num = DdComplex {
        re: num.re.div(scale),
        im: num.im.div(scale),
    };
    let winding: i64 = split.windings.iter().sum();
    if winding.rem_euclid(2) == 1 {
        num = -num;
    }
    let den = denominator(rs, &h0, &split.ndeg)?;
    let value = num.div(den);
    let amax = eta.iter().map(|&a| a as f64).fold(0.0, f64::max) * rs.rank() as f64;
    let condition = abs_sum / scale.to_f64() * phases.phase_error(amax) / den.norm_f64()
        + 4.0 * f64::EPSILON * value.norm_f64();
    Ok(CharacterValue {
        value: value.to_c64(),
        condition,
    })
}

/// Character at any point: float inputs go through the snap policy, then
/// the regular or singular formula is used as appropriate.
pub fn character(rs: &RootSystem, lambda: &WeightVec, h: &TorusPoint) -> Result<CharacterValue> {
    character_with(rs, lambda, h, &Caps::from_env())
}

pub fn character_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    h: &TorusPoint,
    caps: &Caps,
) -> Result<CharacterValue> {
    let labels = dominant_labels(rs, lambda)?;
    if labels.iter().all(|&a| a == 0) {
        return Ok(CharacterValue {
            value: Complex64::new(1.0, 0.0),
            condition: 0.0,
        });
    }
    let snapped = snap(rs, h)?;
    if is_identity(rs, snapped.point())? {
        let d = crate::exact::bigint_to_f64(&dim_from_labels(rs, &labels));
        return Ok(CharacterValue {
            value: Complex64::new(d, 0.0),
            condition: 0.0,
        });
    }
    match snapped {
        Snapped::Regular(p) => char_regular_with(rs, lambda, &p, caps),
        Snapped::Singular(p) => char_singular_with(rs, lambda, &p, SingularRoute::Minimal, caps),
    }
}

/// True when an exact point is the identity element of the torus.
pub fn is_identity(rs: &RootSystem, h: &TorusPoint) -> Result<bool> {
    match h {
        TorusPoint::Exact(_) => Ok(h
            .coroot_coords_exact(rs)?
            .iter()
            .all(|c| (c / qi(2)).is_integer())),
        TorusPoint::Float(_) => Ok(false),
    }
}

/// Three-point Richardson extrapolation of the regular formula along
/// `h0 + e delta` for `e` in `{eps, eps/2, eps/4}`; removes the `O(e)` and
/// `O(e^2)` terms. `delta` is an exact ambient direction in units of pi.
pub fn richardson_extrapolate(
    rs: &RootSystem,
    lambda: &WeightVec,
    h0: &TorusPoint,
    delta: &[Q],
    eps: &Q,
) -> Result<CharacterValue> {
    let TorusPoint::Exact(base) = h0 else {
        return Err(Error::Domain(
            "extrapolation needs an exact base point".into(),
        ));
    };
    let eval = |e: Q| -> Result<CharacterValue> {
        let p: Vec<Q> = base.iter().zip(delta).map(|(b, d)| b + d * &e).collect();
        char_regular(rs, lambda, &TorusPoint::Exact(p))
    };
    let f1 = eval(eps.clone())?;
    let f2 = eval(eps / qi(2))?;
    let f4 = eval(eps / qi(4))?;
    let value = (f4.value * 8.0 - f2.value * 6.0 + f1.value) / 3.0;
    let condition = (8.0 * f4.condition + 6.0 * f2.condition + f1.condition) / 3.0;
    Ok(CharacterValue { value, condition })
}

/// `|pref * d_b|` summed over minimal coset representatives, divided by
/// `dim`: an upper bound for `|chi(h0)| / dim` that ignores cancellation
/// between cosets. Returns `(ratio, bound)`.
pub fn normalized_with_bound(
    rs: &RootSystem,
    lambda: &WeightVec,
    h0: &TorusPoint,
    caps: &Caps,
) -> Result<(f64, f64)> {
    let labels = dominant_labels(rs, lambda)?;
    let dim = dim_from_labels(rs, &labels);
    let dimf = crate::exact::bigint_to_f64(&dim);
    let h0 = snap(rs, h0)?.point().clone();
    let split = rs.degenerate_split(&h0)?;
    if split.is_central() {
        let chi = character_with(rs, lambda, &h0, caps)?;
        let r = chi.value.norm() / dimf;
        return Ok((r, r));
    }
    let chi = character_with(rs, lambda, &h0, caps)?;
    let eta = rho_shift(&labels);
    let deg_coroots: Vec<&Vec<i64>> = split.deg.iter().map(|&i| &rs.coroot_coeffs()[i]).collect();
    let mut rho_deg = 1.0f64;
    for &a in &split.deg {
        let twice: i64 = split
            .deg
            .iter()
            .map(|&b| rs.coroot_pairing(&rs.root_labels(b), a))
            .sum();
        rho_deg *= (twice / 2) as f64;
    }
    let parts = fold_orbit(
        rs.cartan(),
        &eta,
        || 0.0f64,
        |acc, v, _| {
            let mut prod = 1.0f64;
            for cc in &deg_coroots {
                let p: i64 = cc.iter().zip(v).map(|(c, a)| c * a).sum();
                if p <= 0 {
                    return;
                }
                prod *= p as f64;
            }
            *acc += prod;
        },
    );
    let coset_abs: f64 = parts.into_iter().sum::<f64>() / rho_deg;
    let den = denominator(rs, &h0, &split.ndeg)?.norm_f64();
    Ok((chi.value.norm() / dimf, coset_abs / den / dimf))
}

#[cfg(test)]
mod tests;
