//! The root subsystem of degenerate roots at a singular point and the
//! effective highest weights living on it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{invert, qi, qr, Q};
use crate::rootsys::{Family, RootSystem, RootSystemSpec, WeightVec};
use crate::weylgroup::WeylElement;

/// One simple factor of an effective subsystem.
#[derive(Clone, Debug)]
pub struct SubComponent {
    pub spec: RootSystemSpec,
    pub simple_roots: Vec<WeightVec>,
    pub positive_roots: Vec<WeightVec>,
    pub rho: WeightVec,
    pub weyl_order: u128,
}

/// A (possibly reducible) root subsystem, with the given roots as its
/// positive system.
#[derive(Clone, Debug)]
pub struct EffectiveSubsystem {
    pub positive_roots: Vec<WeightVec>,
    pub simple_roots: Vec<WeightVec>,
    pub components: Vec<SubComponent>,
    pub rho: WeightVec,
}

impl EffectiveSubsystem {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Product of the component Weyl-group orders.
    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| c.weyl_order).product()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_roots.is_empty()
    }
}

/// Identifies a simple root system from its rank, positive-root count and
/// root lengths. `D3` is reported as `A3`, `B2`/`C2` as `B2`.
pub fn classify_component(
    rank: usize,
    n_positive: usize,
    long: usize,
    short: usize,
) -> Result<RootSystemSpec> {
    let r = rank;
    let family = if short == 0 || long == 0 {
        // simply laced
        if n_positive == r * (r + 1) / 2 {
            Family::A
        } else if r >= 4 && n_positive == r * (r - 1) {
            Family::D
        } else if matches!((r, n_positive), (6, 36) | (7, 63) | (8, 120)) {
            Family::E
        } else {
            return Err(Error::Structural(format!(
                "no simply-laced system of rank {r} has {n_positive} positive roots"
            )));
        }
    } else if r == 2 && n_positive == 6 {
        Family::G
    } else if r == 4 && n_positive == 24 {
        Family::F
    } else if n_positive == r * r {
        if r == 2 || short == r {
            Family::B
        } else {
            Family::C
        }
    } else {
        return Err(Error::Structural(format!(
            "no root system of rank {r} has {n_positive} positive roots"
        )));
    };
    RootSystemSpec::new(family, r)
}

/// Builds the root subsystem with positive system `image_roots`. The input
/// must be closed under its own reflections and contain no pair `+-alpha`.
pub fn effective_subsystem(
    rs: &RootSystem,
    image_roots: &[WeightVec],
) -> Result<EffectiveSubsystem> {
    let dim = rs.ambient_dim();
    if image_roots.is_empty() {
        return Ok(EffectiveSubsystem {
            positive_roots: vec![],
            simple_roots: vec![],
            components: vec![],
            rho: WeightVec::zero(dim),
        });
    }
    for r in image_roots {
        if !rs.is_root(r) {
            return Err(Error::Structural(format!("{r} is not a root")));
        }
    }
    // a positive system: no root together with its negative, and the
    // indecomposable elements form a basis of the span
    let set: std::collections::HashSet<&WeightVec> = image_roots.iter().collect();
    if image_roots.iter().any(|r| set.contains(&r.neg())) {
        return Err(Error::Structural(
            "roots listed together with their negatives".into(),
        ));
    }
    let simple: Vec<WeightVec> = image_roots
        .iter()
        .filter(|r| {
            !image_roots
                .iter()
                .any(|a| a != *r && set.contains(&r.sub(a)))
        })
        .cloned()
        .collect();
    let span_rank = rank_of(rs, image_roots);
    if simple.len() != span_rank {
        return Err(Error::Structural(
            "roots do not form a positive system".into(),
        ));
    }
    // closedness: reflections in the given roots permute them up to sign
    for beta in image_roots {
        for gamma in image_roots {
            let k = rs.ip(gamma, beta) * qi(2) / rs.ip(beta, beta);
            let img = gamma.sub(&beta.scale(&k));
            if !set.contains(&img) && !set.contains(&img.neg()) {
                return Err(Error::Structural(format!(
                    "not closed: reflecting {gamma} in {beta} leaves the given roots"
                )));
            }
        }
    }
    let n = simple.len();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        comp_of[s] = id;
        let mut members = vec![];
        while let Some(u) = stack.pop() {
            members.push(u);
            for v in 0..n {
                if comp_of[v] == usize::MAX && !rs.ip(&simple[u], &simple[v]).is_zero() {
                    comp_of[v] = id;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut components = Vec::new();
    for members in &comps {
        let sroots: Vec<WeightVec> = members.iter().map(|&i| simple[i].clone()).collect();
        let proots: Vec<WeightVec> = image_roots
            .iter()
            .filter(|r| sroots.iter().any(|s| !rs.ip(r, s).is_zero()))
            .cloned()
            .collect();
        let norms: Vec<Q> = proots.iter().map(|r| rs.ip(r, r)).collect();
        let maxn = norms.iter().max().cloned().unwrap_or_else(Q::zero);
        let long = norms.iter().filter(|x| **x == maxn).count();
        let short = norms.len() - long;
        let spec = classify_component(sroots.len(), proots.len(), long, short)?;
        let rho = half_sum(dim, &proots);
        components.push(SubComponent {
            spec,
            weyl_order: spec.weyl_order(),
            simple_roots: sroots,
            positive_roots: proots,
            rho,
        });
    }
    Ok(EffectiveSubsystem {
        rho: half_sum(dim, image_roots),
        positive_roots: image_roots.to_vec(),
        simple_roots: simple,
        components,
    })
}

fn half_sum(dim: usize, roots: &[WeightVec]) -> WeightVec {
    roots
        .iter()
        .fold(WeightVec::zero(dim), |acc, r| acc.add(r))
        .scale(&qr(1, 2))
}

fn rank_of(rs: &RootSystem, vs: &[WeightVec]) -> usize {
    let rows: Vec<Vec<Q>> = vs
        .iter()
        .map(|v| {
            let mut r = v.0.clone();
            r.push(Q::zero());
            r
        })
        .collect();
    crate::exact::rref(&rows, rs.ambient_dim())
        .map(|(_, p)| p.len())
        .unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct EffectiveWeightData {
    pub coset_rep: WeylElement,
    /// `b R_deg^+`.
    pub image_roots: Vec<WeightVec>,
    pub lambda_prime: WeightVec,
    pub rho_prime: WeightVec,
    /// Weyl dimension formula on the subsystem; may be zero or negative when
    /// `lambda'` is not dominant for the positive system `b R_deg^+`.
    pub subdim: BigInt,
}

/// `lambda' + rho' = ` orthogonal projection of `lambda + rho` onto
/// `span(b R_deg)`, with `rho'` the half-sum of `b R_deg^+`.
pub fn effective_weight(
    rs: &RootSystem,
    lambda: &WeightVec,
    b: &WeylElement,
    sub: &EffectiveSubsystem,
) -> Result<EffectiveWeightData> {
    super::dominant_labels(rs, lambda)?;
    let eta = lambda.add(rs.weyl_vector());
    let basis = &sub.simple_roots;
    let n = basis.len();
    let proj = if n == 0 {
        WeightVec::zero(rs.ambient_dim())
    } else {
        let g: Vec<Vec<Q>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| rs.ip(x, y)).collect())
            .collect();
        let gi =
            invert(&g).ok_or_else(|| Error::Structural("subsystem basis is degenerate".into()))?;
        let rhs: Vec<Q> = basis.iter().map(|x| rs.ip(&eta, x)).collect();
        let mut p = WeightVec::zero(rs.ambient_dim());
        for i in 0..n {
            let coef: Q = (0..n).map(|j| &gi[i][j] * &rhs[j]).sum();
            p = p.add(&basis[i].scale(&coef));
        }
        p
    };
    let lambda_prime = proj.sub(&sub.rho);
    for s in basis {
        let k = rs.ip(&lambda_prime, s) * qi(2) / rs.ip(s, s);
        if !k.is_integer() {
            return Err(Error::Structural(format!(
                "effective weight {lambda_prime} is not integral for the subsystem"
            )));
        }
    }
    let mut num = Q::one();
    for beta in &sub.positive_roots {
        num *= rs.ip(&proj, beta) / rs.ip(&sub.rho, beta);
    }
    if !num.is_integer() {
        return Err(Error::Structural(
            "subsystem dimension is not an integer".into(),
        ));
    }
    Ok(EffectiveWeightData {
        coset_rep: b.clone(),
        image_roots: sub.positive_roots.clone(),
        lambda_prime,
        rho_prime: sub.rho.clone(),
        subdim: num.to_integer(),
    })
}
