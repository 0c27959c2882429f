//! Spectral moments of the averaging operator `T = sum_g nu(g) pi_lambda(g)`
//! over a finite generator set, compared with the Kesten–McKay law of the
//! infinite regular tree.

mod generators;
mod kesten_mckay;

pub use generators::{
    conjugacy_phases, haar_special_unitary, lps_free_pair, GeneratorSet, GeneratorSetDoc,
};
pub use kesten_mckay::{delta_opt, km_moment, KestenMcKayLaw};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::charcalc::{character_with, dim_irrep, Caps};
use crate::error::{Error, Result};
use crate::exact::Q;
use crate::reduce::{pairwise_sum, Pairwise};
use crate::rootsys::{RootSystem, WeightVec};

/// Default cap on the number of words enumerated by [`moment_exact`].
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

/// Matrix products are re-unitarized after this many multiplications.
const REUNITARIZE_EVERY: usize = 16;

/// Words per parallel task; fixed so results do not depend on thread count.
const CHUNK: u64 = 256;

/// Closest unitary matrix (polar factor).
pub fn reunitarize(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    u * v_t
}

/// Product `g_{w0} g_{w1} ...` accumulated left to right.
pub fn word_product(set: &GeneratorSet, word: &[usize]) -> DMatrix<Complex64> {
    let n = set.matrix_dim();
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    for (step, &i) in word.iter().enumerate() {
        acc *= &set.elements[i];
        if (step + 1) % REUNITARIZE_EVERY == 0 {
            acc = reunitarize(&acc);
        }
    }
    acc
}

/// `chi_lambda(g) / dim` through eigenphases and the snap-to-singular pipeline.
pub fn normalized_character(
    rs: &RootSystem,
    lambda: &WeightVec,
    g: &DMatrix<Complex64>,
    dim: f64,
    caps: &Caps,
) -> Result<Complex64> {
    let h = conjugacy_phases(g)?;
    Ok(character_with(rs, lambda, &h, caps)?.value / dim)
}

fn check_group(rs: &RootSystem, set: &GeneratorSet) -> Result<()> {
    if rs.spec().family != crate::rootsys::Family::A || rs.ambient_dim() != set.matrix_dim() {
        return Err(Error::Domain(format!(
            "generators are {}x{} matrices; expected the defining representation of {}",
            set.matrix_dim(),
            set.matrix_dim(),
            rs.spec()
        )));
    }
    Ok(())
}

fn word_of(mut index: u64, s: usize, m: usize) -> Vec<usize> {
    let mut w = vec![0usize; m];
    for slot in w.iter_mut().rev() {
        *slot = (index % s as u64) as usize;
        index /= s as u64;
    }
    w
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentValue {
    pub value: f64,
    /// Imaginary part before it was discarded.
    pub imag: f64,
}

/// `sigma^(m) = sum_{words} nu(g_1)...nu(g_m) chi(g_1...g_m) / dim`, enumerating
/// all `|S|^m` words in lexicographic order.
pub fn moment_exact(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
) -> Result<f64> {
    Ok(moment_exact_with(rs, lambda, set, m, DEFAULT_WORD_CAP, &Caps::from_env())?.value)
}

pub fn moment_exact_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
    word_cap: u64,
    caps: &Caps,
) -> Result<MomentValue> {
    word_sum(rs, lambda, set, m, word_cap, caps, |_| true)
}

/// Like [`moment_exact`] but summing only over words selected by `keep`.
pub(crate) fn word_sum(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
    word_cap: u64,
    caps: &Caps,
    keep: impl Fn(&[usize]) -> bool + Sync,
) -> Result<MomentValue> {
    check_group(rs, set)?;
    let s = set.len();
    let total = (s as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > word_cap as u128 {
        return Err(Error::capacity(
            format!("exact moment of order {m} (use sampling instead)"),
            total,
            word_cap,
        ));
    }
    let total = total as u64;
    let dim = dim_irrep(rs, lambda)?.to_f64().unwrap_or(f64::INFINITY);
    let weights = set.weights();
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let parts: Vec<Result<Complex64>> = chunks
        .par_iter()
        .map(|&c| {
            let mut acc = Pairwise::<Complex64>::new();
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let w = word_of(idx, s, m);
                if !keep(&w) {
                    continue;
                }
                let nu: f64 = w.iter().map(|&i| weights[i]).product();
                let g = word_product(set, &w);
                acc.push(normalized_character(rs, lambda, &g, dim, caps)? * nu);
            }
            Ok(acc.finish(Complex64::new(0.0, 0.0)))
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let v = pairwise_sum(&parts, Complex64::new(0.0, 0.0));
    if set.symmetric && set.is_uniform() && v.im.abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "imaginary residue {:.3e} for a symmetric generator set",
            v.im
        )));
    }
    Ok(MomentValue {
        value: v.re,
        imag: v.im,
    })
}

/// Monte Carlo estimate of the `m`-th moment over `n_samples` random words.
/// Sample `j` draws from its own ChaCha8 stream, so the result is independent
/// of the thread count. Returns `(mean, standard error)`.
pub fn moment_sampled(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
    n_samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    moment_sampled_with(rs, lambda, set, m, n_samples, seed, &Caps::from_env())
}

pub fn moment_sampled_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
    n_samples: u64,
    seed: u64,
    caps: &Caps,
) -> Result<(f64, f64)> {
    check_group(rs, set)?;
    if n_samples < 100 {
        return Err(Error::Domain("need at least 100 samples".into()));
    }
    if m == 0 {
        return Ok((1.0, 0.0));
    }
    let dim = dim_irrep(rs, lambda)?.to_f64().unwrap_or(f64::INFINITY);
    let cumulative: Vec<f64> = set
        .weights()
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let chunks: Vec<u64> = (0..n_samples.div_ceil(CHUNK)).collect();
    let parts: Vec<Result<(f64, f64)>> = chunks
        .par_iter()
        .map(|&c| {
            let mut sum = Pairwise::<f64>::new();
            let mut sq = Pairwise::<f64>::new();
            for j in c * CHUNK..((c + 1) * CHUNK).min(n_samples) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(j);
                let w: Vec<usize> = (0..m)
                    .map(|_| {
                        let u: f64 = rng.gen::<f64>() * cumulative[cumulative.len() - 1];
                        cumulative
                            .partition_point(|&x| x <= u)
                            .min(cumulative.len() - 1)
                    })
                    .collect();
                let g = word_product(set, &w);
                let x = normalized_character(rs, lambda, &g, dim, caps)?.re;
                sum.push(x);
                sq.push(x * x);
            }
            Ok((sum.finish(0.0), sq.finish(0.0)))
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    let s: Vec<f64> = parts.iter().map(|p| p.0).collect();
    let q: Vec<f64> = parts.iter().map(|p| p.1).collect();
    let n = n_samples as f64;
    let mean = pairwise_sum(&s, 0.0) / n;
    let var = ((pairwise_sum(&q, 0.0) / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

/// Free reduction of a word, given the index of each generator's inverse.
pub fn reduce_word(word: &[usize], inverse_of: &[Option<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(word.len());
    for &x in word {
        match out.last() {
            Some(&y) if inverse_of[y] == Some(x) => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

/// `s^{-m} sum chi/dim` over the words that do not freely reduce to the
/// empty word; for a free symmetric set this equals `moment - km_moment`.
pub fn moment_excess(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m: usize,
) -> Result<f64> {
    let inv = set.inverse_indices();
    Ok(word_sum(
        rs,
        lambda,
        set,
        m,
        DEFAULT_WORD_CAP,
        &Caps::from_env(),
        |w| !reduce_word(w, &inv).is_empty(),
    )?
    .value)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentEntry {
    pub m: usize,
    pub value: f64,
    pub stderr: Option<f64>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEstimate {
    pub moments: Vec<MomentEntry>,
    pub lambda: Vec<String>,
    pub s: usize,
    /// Kesten–McKay moments as `"p/q"` strings, aligned with `moments`.
    pub km_reference: Vec<String>,
    pub norm_estimate: f64,
    /// `max_k (sigma^(2k))^(1/2k)`, a lower estimate kept for comparison.
    pub even_root_estimate: f64,
    pub uniform: bool,
}

/// Exact moments `0..=m_max` (sampled above the word cap when a seed is given).
pub fn spectrum(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m_max: usize,
    word_cap: u64,
    sampling: Option<(u64, u64)>,
) -> Result<SpectrumEstimate> {
    spectrum_with(
        rs,
        lambda,
        set,
        m_max,
        word_cap,
        sampling,
        &Caps::from_env(),
    )
}

pub fn spectrum_with(
    rs: &RootSystem,
    lambda: &WeightVec,
    set: &GeneratorSet,
    m_max: usize,
    word_cap: u64,
    sampling: Option<(u64, u64)>,
    caps: &Caps,
) -> Result<SpectrumEstimate> {
    let s = set.len();
    let mut moments = Vec::new();
    for m in 0..=m_max {
        let words = (s as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        let entry = if m == 0 {
            MomentEntry {
                m,
                value: 1.0,
                stderr: None,
                exact: true,
            }
        } else if words <= word_cap as u128 {
            let v = moment_exact_with(rs, lambda, set, m, word_cap, caps)?;
            MomentEntry {
                m,
                value: v.value,
                stderr: None,
                exact: true,
            }
        } else if let Some((n, seed)) = sampling {
            let (v, e) = moment_sampled_with(rs, lambda, set, m, n, seed, caps)?;
            MomentEntry {
                m,
                value: v,
                stderr: Some(e),
                exact: false,
            }
        } else {
            return Err(Error::capacity(
                format!("exact moment of order {m}"),
                words,
                word_cap,
            ));
        };
        moments.push(entry);
    }
    let values: Vec<f64> = moments.iter().map(|e| e.value).collect();
    let km: Vec<Q> = (0..=m_max).map(|m| km_moment(s as u64, m as u32)).collect();
    Ok(SpectrumEstimate {
        norm_estimate: norm_estimate_from(&values)?,
        even_root_estimate: even_root_estimate(&values),
        moments,
        lambda: lambda.to_strings(),
        s,
        km_reference: km.iter().map(crate::exact::format_rational).collect(),
        uniform: set.is_uniform(),
    })
}

/// Operator-norm estimate from a spectrum estimate.
pub fn norm_estimate(est: &SpectrumEstimate) -> Result<f64> {
    let values: Vec<f64> = est.moments.iter().map(|e| e.value).collect();
    norm_estimate_from(&values)
}

fn even_root_estimate(moments: &[f64]) -> f64 {
    moments
        .iter()
        .enumerate()
        .skip(2)
        .step_by(2)
        .map(|(m, v)| v.max(0.0).powf(1.0 / m as f64))
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0)
}

/// Edge of the spectral measure from its first moments `mu_0..mu_M`
/// (`M >= 4`).
///
/// The moments determine the first Jacobi (three-term recurrence)
/// coefficients `a_k, b_k` of the measure. A measure supported on `[c-R,
/// c+R]` with a regular edge has `a_k -> c`, `b_k -> R/2`, so the edge is
/// estimated as `|a| + 2 b` from the last computed pair, or by the extreme
/// eigenvalue of the truncated Jacobi matrix when that is larger. A vanishing
/// `b_k` means the measure has finitely many atoms, and then the Jacobi
/// eigenvalues are exact. For the Kesten–McKay moments this returns
/// `delta_opt` exactly once `M >= 5`.
pub fn norm_estimate_from(moments: &[f64]) -> Result<f64> {
    if moments.len() < 5 {
        return Err(Error::Domain(
            "need moments up to order 4 (two even moments)".into(),
        ));
    }
    let mu0 = moments[0];
    if mu0 <= 0.0 {
        return Err(Error::Domain("zeroth moment must be positive".into()));
    }
    let mu: Vec<f64> = moments.iter().map(|x| x / mu0).collect();
    let n = (mu.len() / 2).max(2);
    let (a, b2) = chebyshev(&mu, n);
    let k = a.len();
    let jacobi = |k: usize| -> f64 {
        let mut j = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            j[(i, i)] = a[i];
            if i + 1 < k {
                let b = b2[i + 1].max(0.0).sqrt();
                j[(i, i + 1)] = b;
                j[(i + 1, i)] = b;
            }
        }
        j.symmetric_eigenvalues()
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    };
    let eig = jacobi(k);
    let last = b2[b2.len() - 1];
    let est = if b2.len() > 1 && last <= 1e-12 {
        eig
    } else {
        eig.max(a[k - 1].abs() + 2.0 * last.sqrt())
    };
    Ok(est.clamp(0.0, 1.0))
}

/// Chebyshev algorithm: recurrence coefficients `a_0..a_{k-1}` and
/// `b2_0..b2_k` (when available) from ordinary moments. Stops early if the
/// measure turns out to be finitely supported.
fn chebyshev(mu: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let len = mu.len();
    // sigma_{k}(l) = <p_k, x^l>
    let mut prev: Vec<f64> = vec![0.0; len];
    let mut cur: Vec<f64> = mu.to_vec();
    let mut a = Vec::new();
    let mut b2 = vec![mu[0]];
    for k in 0..n {
        if cur[k].abs() < 1e-300 {
            break;
        }
        if 2 * k + 1 >= len {
            break;
        }
        let ak = cur[k + 1] / cur[k] - if k > 0 { prev[k] / prev[k - 1] } else { 0.0 };
        a.push(ak);
        if 2 * k + 2 >= len {
            break;
        }
        let mut next = vec![0.0; len];
        for l in k + 1..len - 1 {
            let bk = if k > 0 { b2[k] } else { 0.0 };
            next[l] = cur[l + 1] - ak * cur[l] - bk * prev[l];
        }
        let b = next[k + 1] / cur[k];
        b2.push(b);
        if b <= 1e-12 {
            break;
        }
        prev = cur;
        cur = next;
    }
    (a, b2)
}

#[cfg(test)]
mod tests;
