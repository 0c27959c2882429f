//! Root systems of the compact simple Lie algebras, realized with exact
//! rational coordinates.
//!
//! Classical families live in their usual ambient spaces (`A_{n}` in the
//! sum-zero hyperplane of `Q^{n+1}` with the trace form, `B/C/D` in `Q^n` with
//! the dot product). Exceptional families use the simple-root basis with the
//! Cartan-matrix induced form, normalized so long roots have norm² 2.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{bilinear, format_rational, invert, qi, qr, Q};
use crate::torus::TorusPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C | Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Config(format!(
                "rank {rank} is out of bounds for family {family}"
            )));
        }
        Ok(RootSystemSpec { family, rank })
    }

    /// `false` only for `D2 = A1 x A1`.
    pub fn is_simple(&self) -> bool {
        !(self.family == Family::D && self.rank == 2)
    }

    /// Number of positive roots from the classification.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group from the classification.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::parse("group", format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse("group", format!("missing or invalid rank in {s:?}")))?;
        RootSystemSpec::new(family, rank)
    }
}

/// Exact rational coordinate vector in the ambient space of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec(pub Vec<Q>);

impl WeightVec {
    pub fn zero(dim: usize) -> Self {
        WeightVec(vec![Q::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        WeightVec(xs.iter().map(|&x| qi(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Q) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn coord_sum(&self) -> Q {
        self.0.iter().sum()
    }

    pub fn max_abs(&self) -> Q {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(crate::exact::to_f64).collect()
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Split of the positive roots by whether they pair with a torus point into
/// `2 pi Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateSplit {
    pub torus_point: TorusPoint,
    /// Indices into `RootSystem::positive_roots`.
    pub deg: Vec<usize>,
    pub ndeg: Vec<usize>,
    /// `(alpha | h0) = 2 pi * winding` for each degenerate root, aligned with `deg`.
    pub windings: Vec<i64>,
}

impl DegenerateSplit {
    pub fn is_regular(&self) -> bool {
        self.deg.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.ndeg.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    gram: Vec<Vec<Q>>,
    simple_roots: Vec<WeightVec>,
    positive_roots: Vec<WeightVec>,
    /// Simple-root coefficients of each positive root.
    root_coeffs: Vec<Vec<i64>>,
    /// Simple-coroot coefficients of each positive coroot.
    coroot_coeffs: Vec<Vec<i64>>,
    /// `cartan[i][j] = 2 (a_i | a_j) / (a_j | a_j)`.
    cartan: Vec<Vec<i64>>,
    half_norms: Vec<Q>,
    fundamental_weights: Vec<WeightVec>,
    weyl_vector: WeightVec,
    root_index: HashMap<Vec<i64>, usize>,
}

fn unit(dim: usize, i: usize, v: i64) -> Vec<Q> {
    let mut x = vec![Q::zero(); dim];
    x[i] = qi(v);
    x
}

fn classical_simple_roots(spec: RootSystemSpec) -> (usize, Vec<Vec<Q>>) {
    let n = spec.rank;
    let e = |dim: usize, i: usize, j: usize, s: i64| {
        let mut x = unit(dim, i, 1);
        x[j] = qi(s);
        x
    };
    match spec.family {
        Family::A => (n + 1, (0..n).map(|i| e(n + 1, i, i + 1, -1)).collect()),
        Family::B | Family::C | Family::D => {
            let mut s: Vec<Vec<Q>> = (0..n - 1).map(|i| e(n, i, i + 1, -1)).collect();
            s.push(match spec.family {
                Family::B => unit(n, n - 1, 1),
                Family::C => unit(n, n - 1, 2),
                _ => e(n, n - 2, n - 1, 1),
            });
            (n, s)
        }
        _ => unreachable!(),
    }
}

/// Bourbaki labelling, `cartan[i][j] = <a_i, a_j^vee>`, with half norms.
fn exceptional_cartan(spec: RootSystemSpec) -> (Vec<Vec<i64>>, Vec<Q>) {
    let n = spec.rank;
    match spec.family {
        Family::G => (vec![vec![2, -1], vec![-3, 2]], vec![qr(1, 3), qi(1)]),
        Family::F => (
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2],
            ],
            vec![qi(1), qi(1), qr(1, 2), qr(1, 2)],
        ),
        Family::E => {
            let mut c = vec![vec![0i64; n]; n];
            for (i, row) in c.iter_mut().enumerate() {
                row[i] = 2;
            }
            // 1-3-4-5-...-n chain, 2 attached to 4 (1-based)
            let mut link = |a: usize, b: usize| {
                c[a - 1][b - 1] = -1;
                c[b - 1][a - 1] = -1;
            };
            link(1, 3);
            link(2, 4);
            for k in 3..n {
                link(k, k + 1);
            }
            (c, vec![qi(1); n])
        }
        _ => unreachable!(),
    }
}

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Result<Self> {
        let spec = RootSystemSpec::new(spec.family, spec.rank)?;
        let n = spec.rank;
        let (gram, simple): (Vec<Vec<Q>>, Vec<Vec<Q>>) = match spec.family {
            Family::A | Family::B | Family::C | Family::D => {
                let (dim, simple) = classical_simple_roots(spec);
                (crate::exact::identity(dim), simple)
            }
            _ => {
                let (c, half) = exceptional_cartan(spec);
                let gram = (0..n)
                    .map(|i| (0..n).map(|j| qi(c[i][j]) * &half[j]).collect())
                    .collect();
                (gram, (0..n).map(|i| unit(n, i, 1)).collect())
            }
        };
        let simple: Vec<WeightVec> = simple.into_iter().map(WeightVec).collect();
        let half_norms: Vec<Q> = simple
            .iter()
            .map(|a| bilinear(&gram, &a.0, &a.0) / qi(2))
            .collect();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = bilinear(&gram, &simple[i].0, &simple[j].0) / &half_norms[j];
                debug_assert!(v.is_integer());
                cartan[i][j] = v.to_integer().to_i64().unwrap();
            }
        }
        let root_coeffs = positive_root_closure(&cartan);
        let dim = simple[0].dim();
        let positive_roots: Vec<WeightVec> = root_coeffs
            .iter()
            .map(|m| {
                let mut v = vec![Q::zero(); dim];
                for (j, &mj) in m.iter().enumerate() {
                    if mj != 0 {
                        for (k, x) in simple[j].0.iter().enumerate() {
                            v[k] += x * qi(mj);
                        }
                    }
                }
                WeightVec(v)
            })
            .collect();
        let coroot_coeffs = root_coeffs
            .iter()
            .zip(&positive_roots)
            .map(|(m, r)| {
                let half = bilinear(&gram, &r.0, &r.0) / qi(2);
                m.iter()
                    .zip(&half_norms)
                    .map(|(&mj, hj)| {
                        let c = qi(mj) * hj / &half;
                        c.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();
        let cq: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let cinv = invert(&cq).expect("Cartan matrix is invertible");
        let fundamental_weights = (0..n)
            .map(|i| {
                let mut v = vec![Q::zero(); dim];
                for (k, a) in simple.iter().enumerate() {
                    for (d, x) in a.0.iter().enumerate() {
                        v[d] += &cinv[i][k] * x;
                    }
                }
                WeightVec(v)
            })
            .collect();
        let mut rho = WeightVec::zero(dim);
        for r in &positive_roots {
            rho = rho.add(r);
        }
        let weyl_vector = rho.scale(&qr(1, 2));
        let root_index = root_coeffs
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(RootSystem {
            spec,
            gram,
            simple_roots: simple,
            positive_roots,
            root_coeffs,
            coroot_coeffs,
            cartan,
            half_norms,
            fundamental_weights,
            weyl_vector,
            root_index,
        })
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[WeightVec] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[WeightVec] {
        &self.positive_roots
    }

    pub fn root_coeffs(&self) -> &[Vec<i64>] {
        &self.root_coeffs
    }

    pub fn coroot_coeffs(&self) -> &[Vec<i64>] {
        &self.coroot_coeffs
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(a_i | a_i) / 2` for each simple root.
    pub fn half_norms(&self) -> &[Q] {
        &self.half_norms
    }

    pub fn fundamental_weights(&self) -> &[WeightVec] {
        &self.fundamental_weights
    }

    pub fn weyl_vector(&self) -> &WeightVec {
        &self.weyl_vector
    }

    pub fn is_simple(&self) -> bool {
        self.spec.is_simple()
    }

    /// Index of the highest root (largest height).
    pub fn highest_root(&self) -> usize {
        self.positive_roots.len() - 1
    }

    fn check_dim(&self, x: &WeightVec) -> Result<()> {
        if x.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn inner(&self, x: &WeightVec, y: &WeightVec) -> Result<Q> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(bilinear(&self.gram, &x.0, &y.0))
    }

    pub(crate) fn ip(&self, x: &WeightVec, y: &WeightVec) -> Q {
        bilinear(&self.gram, &x.0, &y.0)
    }

    /// True when `x` lies in the real span of the roots (the sum-zero
    /// hyperplane for type A, everything otherwise).
    pub fn in_root_span(&self, x: &WeightVec) -> bool {
        match self.spec.family {
            Family::A => x.coord_sum().is_zero(),
            _ => true,
        }
    }

    /// Dynkin labels `2 (x | a_i) / (a_i | a_i)`.
    pub fn labels(&self, x: &WeightVec) -> Result<Vec<Q>> {
        self.check_dim(x)?;
        Ok(self
            .simple_roots
            .iter()
            .zip(&self.half_norms)
            .map(|(a, h)| self.ip(x, a) / h)
            .collect())
    }

    /// Integer Dynkin labels of an integral weight in the root span.
    pub fn int_labels(&self, x: &WeightVec) -> Result<Vec<i64>> {
        if !self.in_root_span(x) {
            return Err(Error::Domain(format!(
                "{x} is not in the span of the roots"
            )));
        }
        self.labels(x)?
            .into_iter()
            .map(|l| {
                l.is_integer()
                    .then(|| l.to_integer().to_i64())
                    .flatten()
                    .ok_or_else(|| Error::Domain(format!("{x} is not an integral weight")))
            })
            .collect()
    }

    pub fn from_labels(&self, labels: &[i64]) -> WeightVec {
        let mut v = WeightVec::zero(self.ambient_dim());
        for (a, w) in labels.iter().zip(&self.fundamental_weights) {
            if *a != 0 {
                v = v.add(&w.scale(&qi(*a)));
            }
        }
        v
    }

    pub fn from_labels_q(&self, labels: &[Q]) -> WeightVec {
        let mut v = WeightVec::zero(self.ambient_dim());
        for (a, w) in labels.iter().zip(&self.fundamental_weights) {
            v = v.add(&w.scale(a));
        }
        v
    }

    /// Integrality: `2 (x | a) / (a | a)` is an integer for every simple
    /// root, hence for every root.
    pub fn is_integral_weight(&self, x: &WeightVec) -> bool {
        x.dim() == self.ambient_dim() && self.int_labels(x).is_ok()
    }

    pub fn is_dominant_integral(&self, x: &WeightVec) -> bool {
        self.int_labels(x)
            .map(|l| l.iter().all(|&a| a >= 0))
            .unwrap_or(false)
    }

    /// Dynkin labels of the positive roots, `label_i(alpha) = <alpha, a_i^vee>`.
    pub fn root_labels(&self, idx: usize) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.root_coeffs[idx][j] * self.cartan[j][i])
                    .sum()
            })
            .collect()
    }

    /// `<mu, alpha^vee>` for integer labels `mu` and positive root `idx`.
    pub fn coroot_pairing(&self, labels: &[i64], idx: usize) -> i64 {
        labels
            .iter()
            .zip(&self.coroot_coeffs[idx])
            .map(|(a, c)| a * c)
            .sum()
    }

    /// Index of a positive root given by its ambient vector.
    pub fn positive_root_index(&self, x: &WeightVec) -> Option<usize> {
        let coeffs = self.simple_coefficients(x)?;
        self.root_index.get(&coeffs).copied()
    }

    /// `Some((index, sign))` when `x` is a root.
    pub fn root_lookup(&self, x: &WeightVec) -> Option<(usize, i8)> {
        if let Some(i) = self.positive_root_index(x) {
            return Some((i, 1));
        }
        self.positive_root_index(&x.neg()).map(|i| (i, -1))
    }

    pub fn is_root(&self, x: &WeightVec) -> bool {
        self.root_lookup(x).is_some()
    }

    /// Integer simple-root coefficients of a vector in the root lattice.
    pub fn simple_coefficients(&self, x: &WeightVec) -> Option<Vec<i64>> {
        if x.dim() != self.ambient_dim() || !self.in_root_span(x) {
            return None;
        }
        self.fundamental_weights
            .iter()
            .zip(&self.half_norms)
            .map(|(w, h)| {
                let c = self.ip(x, w) / h;
                c.is_integer().then(|| c.to_integer().to_i64()).flatten()
            })
            .collect()
    }

    /// Connected components of the Dynkin diagram, each sorted.
    pub fn diagram_components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in 0..n {
                    if !seen[v] && self.cartan[u][v] != 0 {
                        seen[v] = true;
                        comp.push(v);
                        q.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn require_simple(&self) -> Result<()> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "{} is not simple (its Dynkin diagram is disconnected)",
                self.spec
            )))
        }
    }

    /// Shortest chain of simple roots joining `i` to `j` in the Dynkin
    /// diagram (breadth-first, lowest index first on ties).
    pub fn dynkin_path(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        self.require_simple()?;
        let n = self.rank();
        if i >= n || j >= n {
            return Err(Error::Domain(format!(
                "simple-root index out of range (rank {n})"
            )));
        }
        let mut prev = vec![usize::MAX; n];
        prev[i] = i;
        let mut q = VecDeque::from([i]);
        while let Some(u) = q.pop_front() {
            if u == j {
                break;
            }
            for v in 0..n {
                if prev[v] == usize::MAX && self.cartan[u][v] != 0 {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        if prev[j] == usize::MAX {
            return Err(Error::Structural("Dynkin diagram is disconnected".into()));
        }
        let mut path = vec![j];
        let mut u = j;
        while u != i {
            u = prev[u];
            path.push(u);
        }
        path.reverse();
        Ok(path)
    }

    /// Sum of the simple roots along a Dynkin chain; always a positive root.
    pub fn chain_sum_root(&self, chain: &[usize]) -> Result<WeightVec> {
        let n = self.rank();
        if chain.is_empty() || chain.iter().any(|&k| k >= n) {
            return Err(Error::Domain(
                "chain must be a nonempty list of simple-root indices".into(),
            ));
        }
        for w in chain.windows(2) {
            if self.cartan[w[0]][w[1]] >= 0 {
                return Err(Error::Domain(format!(
                    "simple roots {} and {} are not joined in the Dynkin diagram",
                    w[0], w[1]
                )));
            }
        }
        let mut coeffs = vec![0i64; n];
        for &k in chain {
            coeffs[k] += 1;
        }
        match self.root_index.get(&coeffs) {
            Some(&idx) => Ok(self.positive_roots[idx].clone()),
            None => Err(Error::Domain(
                "chain sum is not a root (chain repeats a node?)".into(),
            )),
        }
    }

    /// Degenerate / non-degenerate split of the positive roots at `h0`. Float
    /// points use the snap tolerance.
    pub fn degenerate_split(&self, h0: &TorusPoint) -> Result<DegenerateSplit> {
        let mut deg = Vec::new();
        let mut ndeg = Vec::new();
        let mut windings = Vec::new();
        match h0 {
            TorusPoint::Exact(_) => {
                let t = h0.simple_pairings_exact(self)?;
                for (idx, m) in self.root_coeffs.iter().enumerate() {
                    let v: Q = m.iter().zip(&t).map(|(&mj, tj)| tj * qi(mj)).sum();
                    // v = (alpha | h0) / pi
                    let half = v / qi(2);
                    if half.is_integer() {
                        deg.push(idx);
                        windings.push(half.to_integer().to_i64().unwrap_or(0));
                    } else {
                        ndeg.push(idx);
                    }
                }
            }
            TorusPoint::Float(_) => {
                let t = h0.simple_pairings_float(self)?;
                for (idx, m) in self.root_coeffs.iter().enumerate() {
                    let v: f64 = m.iter().zip(&t).map(|(&mj, tj)| tj * mj as f64).sum();
                    let k = (v / (2.0 * std::f64::consts::PI)).round();
                    if (v - 2.0 * std::f64::consts::PI * k).abs() < crate::torus::SNAP_TOLERANCE {
                        deg.push(idx);
                        windings.push(k as i64);
                    } else {
                        ndeg.push(idx);
                    }
                }
            }
        }
        Ok(DegenerateSplit {
            torus_point: h0.clone(),
            deg,
            ndeg,
            windings,
        })
    }

    pub fn to_doc(&self) -> RootSystemDoc {
        RootSystemDoc {
            family: self.spec.family.to_string(),
            rank: self.spec.rank,
            ambient_dim: self.ambient_dim(),
            simple_roots: self.simple_roots.iter().map(|r| r.to_strings()).collect(),
            positive_roots: self.positive_roots.iter().map(|r| r.to_strings()).collect(),
            cartan_matrix: self.cartan.clone(),
            weyl_vector: self.weyl_vector.to_strings(),
            simple: self.is_simple(),
        }
    }
}

/// Positive roots as simple-root coefficient vectors, ordered by height and
/// then lexicographically, built by closure under adding simple roots with
/// root-string bounds.
fn positive_root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = all.iter().cloned().collect();
    let mut level = all.clone();
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..n {
                // <beta, a_i^vee>
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

/// Canonical JSON document for a root system; rationals are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootSystemDoc {
    pub family: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub weyl_vector: Vec<String>,
    pub simple: bool,
}
