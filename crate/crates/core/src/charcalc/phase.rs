//! Evaluation of `exp(i (mu | h))` for integral weights given by Dynkin labels.

use num_traits::ToPrimitive;

use crate::ddouble::{sin_cos_pi, sin_cos_pi_ratio, Dd, DdComplex};
use crate::error::Result;
use crate::exact::{lcm_all, Q};
use crate::rootsys::RootSystem;
use crate::torus::TorusPoint;

/// Coroot coordinates of a point, prepared for repeated phase evaluation.
#[derive(Clone, Debug)]
pub(crate) enum Phases {
    /// `c_i = num_i / den`, numerators reduced modulo `2 den`.
    Exact {
        num: Vec<i128>,
        den: i128,
    },
    /// Exact point whose denominators are too large for the integer path.
    Wide(Vec<Dd>),
    Float(Vec<f64>),
}

const MAX_DEN: i128 = 1 << 58;

impl Phases {
    pub fn new(rs: &RootSystem, h: &TorusPoint) -> Result<Self> {
        Ok(match h {
            TorusPoint::Exact(_) => Self::from_coroot(&h.coroot_coords_exact(rs)?),
            TorusPoint::Float(_) => Phases::Float(
                h.coroot_coords_float(rs)?
                    .into_iter()
                    .map(|x| x.rem_euclid(2.0))
                    .collect(),
            ),
        })
    }

    pub fn from_coroot(c: &[Q]) -> Self {
        let den = lcm_all(c.iter().map(|x| x.denom()));
        if let Some(d) = den.to_i128().filter(|d| *d <= MAX_DEN) {
            let num = c
                .iter()
                .map(|x| {
                    let v = (x * Q::from_integer(den.clone())).to_integer();
                    let m = num_bigint::BigInt::from(2 * d);
                    ((v % &m + &m) % &m).to_i128().expect("reduced below 2 den")
                })
                .collect();
            Phases::Exact { num, den: d }
        } else {
            let two = Q::from_integer(2.into());
            Phases::Wide(
                c.iter()
                    .map(|x| {
                        let r = crate::exact::rem_euclid(x, &two);
                        let hi = crate::exact::to_f64(&r);
                        let lo = crate::exact::to_f64(&(r - Q::from_float(hi).expect("finite")));
                        Dd { hi, lo } + Dd::ZERO
                    })
                    .collect(),
            )
        }
    }

    /// `exp(i pi sum_i a_i c_i)`.
    #[inline]
    pub fn eval(&self, labels: &[i64]) -> DdComplex {
        match self {
            Phases::Exact { num, den } => {
                let mut acc: i128 = 0;
                for (a, n) in labels.iter().zip(num) {
                    acc += *a as i128 * n;
                }
                DdComplex::from_polar_pi(acc, *den)
            }
            Phases::Wide(c) => {
                let mut acc = Dd::ZERO;
                for (a, x) in labels.iter().zip(c) {
                    if *a != 0 {
                        acc = acc + Dd::from_i128(*a as i128) * *x;
                    }
                }
                let (s, co) = sin_cos_pi(acc);
                DdComplex { re: co, im: s }
            }
            Phases::Float(c) => {
                let mut acc = 0.0;
                for (a, x) in labels.iter().zip(c) {
                    acc += *a as f64 * x;
                }
                let (s, co) = (std::f64::consts::PI * acc.rem_euclid(2.0)).sin_cos();
                DdComplex {
                    re: Dd::from_f64(co),
                    im: Dd::from_f64(s),
                }
            }
        }
    }

    /// Relative rounding error of one phase for a weight with labels bounded by `amax`.
    pub fn phase_error(&self, amax: f64) -> f64 {
        match self {
            Phases::Exact { .. } => 1e-31,
            Phases::Wide(c) => 1e-31 * (1.0 + amax * c.len() as f64),
            Phases::Float(c) => f64::EPSILON * 4.0 * (1.0 + amax * c.len() as f64),
        }
    }
}

/// `2 i sin(pi x / 2)` for rational `x`, i.e. `e^{i pi x/2} - e^{-i pi x/2}`.
pub(crate) fn wall_factor_exact(x: &Q) -> DdComplex {
    let num = x.numer().to_i128();
    let den = x.denom().to_i128();
    let s = match (num, den) {
        (Some(n), Some(d)) if d <= MAX_DEN => sin_cos_pi_ratio(n, 2 * d).0,
        _ => {
            let two = Q::from_integer(4.into());
            let r = crate::exact::rem_euclid(x, &two);
            sin_cos_pi(Dd::from_f64(crate::exact::to_f64(&r) / 2.0)).0
        }
    };
    DdComplex {
        re: Dd::ZERO,
        im: s * Dd::from_f64(2.0),
    }
}

pub(crate) fn wall_factor_float(theta: f64) -> DdComplex {
    DdComplex {
        re: Dd::ZERO,
        im: Dd::from_f64(2.0 * (theta / 2.0).sin()),
    }
}
