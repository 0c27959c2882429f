use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Q;

/// Return probability after `m` steps of simple random walk on the
/// `s`-regular tree, via the distance-from-root chain.
pub fn km_moment(s: u64, m: u32) -> Q {
    if m % 2 == 1 {
        return Q::zero();
    }
    let m = m as usize;
    // walks[d] = number of walks of the current length ending at distance d
    let mut walks = vec![BigInt::zero(); m / 2 + 2];
    walks[0] = BigInt::one();
    let s_big = BigInt::from(s);
    let out = BigInt::from(s.saturating_sub(1));
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); walks.len()];
        for (d, v) in next.iter_mut().enumerate() {
            if d > 0 {
                *v += &walks[d - 1] * if d == 1 { &s_big } else { &out };
            }
            if d + 1 < walks.len() {
                *v += &walks[d + 1];
            }
        }
        walks = next;
    }
    Q::new(walks[0].clone(), num_traits::pow(s_big, m))
}

/// `2 sqrt(s - 1) / s`.
pub fn delta_opt(s: u64) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("delta_opt needs s >= 2, got {s}")));
    }
    Ok(2.0 * ((s - 1) as f64).sqrt() / s as f64)
}

/// Spectral law of the normalized adjacency operator of the `s`-regular tree.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KestenMcKayLaw {
    pub s: u64,
    pub support_radius: f64,
}

impl KestenMcKayLaw {
    pub fn new(s: u64) -> Result<Self> {
        Ok(KestenMcKayLaw {
            s,
            support_radius: delta_opt(s)?,
        })
    }

    pub fn moment(&self, m: u32) -> Q {
        km_moment(self.s, m)
    }

    /// Density on `[-delta, delta]`. At `s = 2` the law is the arcsine
    /// distribution and the density blows up at the edges.
    pub fn density(&self, x: f64) -> f64 {
        let d = self.support_radius;
        if x.abs() >= d {
            return 0.0;
        }
        self.s as f64 * (d * d - x * x).sqrt() / (std::f64::consts::TAU * (1.0 - x * x))
    }

    /// `int x^m density(x) dx` by the trapezoid rule after `x = delta sin t`,
    /// which makes the integrand smooth and periodic.
    pub fn quadrature_moment(&self, m: u32, nodes: usize) -> f64 {
        let d = self.support_radius;
        let s = self.s as f64;
        let h = std::f64::consts::PI / nodes as f64;
        let mut acc = crate::reduce::Pairwise::<f64>::new();
        for i in 0..nodes {
            let t = -std::f64::consts::FRAC_PI_2 + (i as f64 + 0.5) * h;
            let (sn, cs) = t.sin_cos();
            let x = d * sn;
            acc.push(x.powi(m as i32) * d * d * cs * cs / (1.0 - x * x));
        }
        s / std::f64::consts::TAU * acc.finish(0.0) * h
    }
}
