//! Weight multiplicities by Freudenthal's recursion, and the character as a
//! plain sum over weights.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::ddouble::DdComplex;
use crate::error::{Error, Result};
use crate::exact::{lcm_all, Q};
use crate::orbit::{fold_orbit, orbit_size, to_dominant};
use crate::reduce::{pairwise_sum, Pairwise};
use crate::rootsys::{RootSystem, WeightVec};
use crate::torus::TorusPoint;

use super::phase::Phases;
use super::{dim_from_labels, dominant_labels, Caps, CharacterValue};

/// Multiplicities of the dominant weights of `V_lambda`; the full weight
/// system is their Weyl orbits.
#[derive(Clone, Debug)]
pub struct WeightMultiplicities {
    /// `(Dynkin labels, multiplicity)`, by increasing depth below `lambda`.
    pub dominant: Vec<(Vec<i64>, u64)>,
    cartan: Vec<Vec<i64>>,
}

impl WeightMultiplicities {
    pub fn get(&self, labels: &[i64]) -> u64 {
        let (dom, _) = to_dominant(&self.cartan, labels);
        self.dominant
            .iter()
            .find(|(w, _)| *w == dom)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// `sum_mu mult(mu)`, counting whole orbits.
    pub fn total(&self) -> u64 {
        self.dominant
            .iter()
            .map(|(w, m)| m * orbit_size(&self.cartan, w))
            .sum()
    }

    /// Every weight with its multiplicity, orbit by orbit.
    pub fn all(&self) -> Vec<(Vec<i64>, u64)> {
        let mut out = Vec::new();
        for (w, m) in &self.dominant {
            for part in fold_orbit(
                &self.cartan,
                w,
                Vec::new,
                |acc: &mut Vec<Vec<i64>>, v, _| acc.push(v.to_vec()),
            ) {
                out.extend(part.into_iter().map(|v| (v, *m)));
            }
        }
        out
    }

    /// Ambient coordinates of every weight.
    pub fn all_ambient(&self, rs: &RootSystem) -> Vec<(WeightVec, u64)> {
        self.all()
            .into_iter()
            .map(|(l, m)| (rs.from_labels(&l), m))
            .collect()
    }
}

/// Integer Gram matrix of the fundamental weights, scaled by a common factor.
fn scaled_weight_gram(rs: &RootSystem) -> Vec<Vec<i128>> {
    let w = rs.fundamental_weights();
    let g: Vec<Vec<Q>> = w
        .iter()
        .map(|x| w.iter().map(|y| rs.ip(x, y)).collect())
        .collect();
    let d = lcm_all(g.iter().flatten().map(|x| x.denom()));
    let dq = Q::from_integer(d);
    g.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    (x * &dq)
                        .to_integer()
                        .to_i128()
                        .expect("small Gram entries")
                })
                .collect()
        })
        .collect()
}

fn form(g: &[Vec<i128>], x: &[i64], y: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            acc += *xi as i128 * g[i][j] * *yj as i128;
        }
    }
    acc
}

pub fn weight_multiplicities(rs: &RootSystem, lambda: &WeightVec) -> Result<WeightMultiplicities> {
    weight_multiplicities_with(rs, lambda, &Caps::from_env())
}

pub fn weight_multiplicities_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    caps: &Caps,
) -> Result<WeightMultiplicities> {
    let top = dominant_labels(rs, lambda)?;
    let dim = dim_from_labels(rs, &top);
    if dim > caps.oracle_dim.into() {
        return Err(Error::capacity(
            "weight multiplicities",
            dim,
            caps.oracle_dim,
        ));
    }
    let cartan = rs.cartan().to_vec();
    let n = rs.rank();
    let roots: Vec<Vec<i64>> = (0..rs.positive_roots().len())
        .map(|i| rs.root_labels(i))
        .collect();
    let heights: Vec<i64> = rs.root_coeffs().iter().map(|m| m.iter().sum()).collect();

    // dominant weights below lambda, reached by subtracting positive roots
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
    depth.insert(top.clone(), 0);
    let mut queue = vec![top.clone()];
    while let Some(mu) = queue.pop() {
        let d = depth[&mu];
        for (r, h) in roots.iter().zip(&heights) {
            let nu: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&x| x >= 0) && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                queue.push(nu);
            }
        }
    }
    let mut order: Vec<(i64, Vec<i64>)> = depth.into_iter().map(|(k, d)| (d, k)).collect();
    order.sort();

    let g = scaled_weight_gram(rs);
    let rho = vec![1i64; n];
    let shifted = |x: &[i64]| -> Vec<i64> { x.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top_norm = {
        let s = shifted(&top);
        form(&g, &s, &s)
    };
    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut dominant = Vec::with_capacity(order.len());
    for (_, mu) in order {
        let m = if mu == top {
            1
        } else {
            let mut acc: i128 = 0;
            for r in &roots {
                let mut k = 1i64;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a + k * b).collect();
                    let (dom, _) = to_dominant(&cartan, &nu);
                    match mult.get(&dom) {
                        Some(&mnu) => acc += mnu as i128 * form(&g, &nu, r),
                        None => break,
                    }
                    k += 1;
                }
            }
            let s = shifted(&mu);
            let den = top_norm - form(&g, &s, &s);
            let num = 2 * acc;
            if den <= 0 || num % den != 0 {
                return Err(Error::Structural(format!(
                    "Freudenthal recursion gave {num}/{den} at {mu:?}"
                )));
            }
            (num / den) as u64
        };
        if m > 0 {
            mult.insert(mu.clone(), m);
            dominant.push((mu, m));
        }
    }
    Ok(WeightMultiplicities { dominant, cartan })
}

/// `sum_mu mult(mu) e^{i (mu | h)}`; valid at every point.
pub fn char_weightsum_oracle(
    rs: &RootSystem,
    lambda: &WeightVec,
    h: &TorusPoint,
) -> Result<CharacterValue> {
    char_weightsum_oracle_with(rs, lambda, h, &Caps::from_env())
}

pub fn char_weightsum_oracle_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    h: &TorusPoint,
    caps: &Caps,
) -> Result<CharacterValue> {
    let wm = weight_multiplicities_with(rs, lambda, caps)?;
    let phases = Phases::new(rs, h)?;
    let mut sums = Vec::new();
    let mut count = 0.0;
    for (w, m) in &wm.dominant {
        let parts = fold_orbit(rs.cartan(), w, Pairwise::<DdComplex>::new, |acc, v, _| {
            acc.push(phases.eval(v));
        });
        let orbit: Vec<DdComplex> = parts
            .into_iter()
            .map(|p| p.finish(DdComplex::ZERO))
            .collect();
        let s = pairwise_sum(&orbit, DdComplex::ZERO);
        sums.push(s.scale(crate::ddouble::Dd::from_i128(*m as i128)));
        count += *m as f64;
    }
    let value = pairwise_sum(&sums, DdComplex::ZERO).to_c64();
    let amax = wm
        .dominant
        .first()
        .map(|(w, _)| w.iter().sum::<i64>() as f64)
        .unwrap_or(0.0);
    Ok(CharacterValue {
        value,
        condition: count * phases.phase_error(amax * rs.rank() as f64)
            + 4.0 * f64::EPSILON * value.norm(),
    })
}
