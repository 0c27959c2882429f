//! The Weyl group as an explicit list of elements, stabilizers of torus
//! points and coset transversals.
//!
//! An element `w` is stored through the Dynkin labels of `w rho`, which
//! determine it uniquely. Elements are listed breadth-first by length, and
//! within one length lexicographically by reduced word, where the reduced word
//! of `w` always starts with the smallest generator that shortens it.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bilinear, qi, Q};
use crate::orbit::{next_level, reflect_labels};
use crate::rootsys::{RootSystem, WeightVec};
use crate::torus::TorusPoint;

/// Default cap on the Weyl-group order (admits E7, excludes E8).
pub const DEFAULT_WEYL_CAP: u128 = 3_000_000;

/// Group-order cap, overridable through `WEYLCHAR_CAP_WEYL`.
pub fn weyl_cap_from_env() -> u128 {
    std::env::var("WEYLCHAR_CAP_WEYL")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_WEYL_CAP)
}

/// Fails with a capacity error when `|W|` exceeds `cap`.
pub fn check_weyl_cap(rs: &RootSystem, cap: u128) -> Result<()> {
    let order = rs.spec().weyl_order();
    if order > cap {
        return Err(Error::capacity(
            format!("Weyl group of {}", rs.spec()),
            order,
            cap,
        ));
    }
    Ok(())
}

/// `s_alpha(x) = x - 2 (x|alpha)/(alpha|alpha) alpha`.
pub fn reflect(rs: &RootSystem, alpha: &WeightVec, x: &WeightVec) -> Result<WeightVec> {
    let aa = rs.inner(alpha, alpha)?;
    if aa.is_zero() {
        return Err(Error::Domain("cannot reflect in the zero vector".into()));
    }
    let k = rs.inner(x, alpha)? * qi(2) / aa;
    Ok(x.sub(&alpha.scale(&k)))
}

/// Applies a word `s_{w0} s_{w1} ... ` to Dynkin labels (rightmost letter first).
pub fn act_on_labels(cartan: &[Vec<i64>], word: &[usize], labels: &mut [i64]) {
    for &i in word.iter().rev() {
        reflect_labels(cartan, labels, i);
    }
}

/// Simple reflection on coroot coordinates: `c_j <- c_j - sum_i C[j][i] c_i`.
pub fn reflect_coroot<T>(cartan: &[Vec<i64>], c: &mut [T], j: usize)
where
    T: Clone + std::ops::SubAssign + std::ops::Mul<Output = T> + std::iter::Sum + From<i64>,
{
    let t: T = cartan[j]
        .iter()
        .zip(c.iter())
        .filter(|(k, _)| **k != 0)
        .map(|(&k, x)| T::from(k) * x.clone())
        .sum();
    c[j] -= t;
}

/// Applies a word to coroot coordinates (rightmost letter first).
pub fn act_on_coroot<T>(cartan: &[Vec<i64>], word: &[usize], c: &mut [T])
where
    T: Clone + std::ops::SubAssign + std::ops::Mul<Output = T> + std::iter::Sum + From<i64>,
{
    for &j in word.iter().rev() {
        reflect_coroot(cartan, c, j);
    }
}

/// An element of `W` as an exact matrix on the ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylElement {
    /// Column `k` is the image of the `k`-th ambient basis vector.
    pub matrix: Vec<Vec<Q>>,
    pub sign: i8,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement {
            matrix: crate::exact::identity(dim),
            sign: 1,
            word: Vec::new(),
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let dim = rs.ambient_dim();
        let mut cols: Vec<WeightVec> = (0..dim)
            .map(|k| {
                let mut v = WeightVec::zero(dim);
                v.0[k] = Q::one();
                v
            })
            .collect();
        for &i in word.iter().rev() {
            let a = &rs.simple_roots()[i];
            for c in cols.iter_mut() {
                *c = reflect(rs, a, c).expect("simple roots are nonzero");
            }
        }
        let matrix = (0..dim)
            .map(|r| (0..dim).map(|k| cols[k].0[r].clone()).collect())
            .collect();
        WeylElement {
            matrix,
            sign: if word.len().is_multiple_of(2) { 1 } else { -1 },
            word: word.to_vec(),
        }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, x: &WeightVec) -> WeightVec {
        WeightVec(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&x.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn apply_point(&self, h: &TorusPoint) -> TorusPoint {
        match h {
            TorusPoint::Exact(v) => TorusPoint::Exact(self.apply(&WeightVec(v.clone())).0),
            TorusPoint::Float(v) => TorusPoint::Float(
                self.matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(v)
                            .map(|(a, b)| crate::exact::to_f64(a) * b)
                            .sum()
                    })
                    .collect(),
            ),
        }
    }

    /// `w^T G w == G`.
    pub fn preserves_form(&self, gram: &[Vec<Q>]) -> bool {
        let n = gram.len();
        let col = |k: usize| -> Vec<Q> { self.matrix.iter().map(|r| r[k].clone()).collect() };
        let cols: Vec<Vec<Q>> = (0..n).map(col).collect();
        (0..n).all(|i| (0..n).all(|j| bilinear(gram, &cols[i], &cols[j]) == gram[i][j]))
    }

    /// Exact determinant on the span of the roots (the ambient determinant
    /// for type A includes the fixed all-ones direction and agrees).
    pub fn determinant(&self) -> Q {
        let n = self.matrix.len();
        let mut a = self.matrix.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if !a[r][c].is_zero() {
                    let f = &a[r][c] / &piv;
                    for k in c..n {
                        let v = &a[c][k] * &f;
                        a[r][k] -= v;
                    }
                }
            }
        }
        det
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Dynkin labels of `w rho`, `rank` entries per element.
    images: Vec<i32>,
    /// Start offset of each length level in element order.
    level_starts: Vec<usize>,
    index: HashMap<Vec<i32>, usize>,
}

/// Enumerates `W` breadth-first by length.
pub fn generate_weyl_group(rs: &RootSystem, cap: u128) -> Result<WeylGroup> {
    check_weyl_cap(rs, cap)?;
    let n = rs.rank();
    let cartan = rs.cartan().to_vec();
    let mut images = Vec::new();
    let mut level_starts = Vec::new();
    let mut level = vec![vec![1i64; n]];
    let mut count = 0usize;
    while !level.is_empty() {
        level_starts.push(count);
        for v in &level {
            images.extend(v.iter().map(|&x| x as i32));
        }
        count += level.len();
        level = next_level(&cartan, &level);
    }
    if count as u128 != rs.spec().weyl_order() {
        return Err(Error::Structural(format!(
            "enumerated {count} elements, classification says {}",
            rs.spec().weyl_order()
        )));
    }
    let index = images
        .chunks(n)
        .enumerate()
        .map(|(i, c)| (c.to_vec(), i))
        .collect();
    Ok(WeylGroup {
        rank: n,
        cartan,
        images,
        level_starts,
        index,
    })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.images.len() / self.rank
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Dynkin labels of `w rho`.
    pub fn rho_image(&self, idx: usize) -> Vec<i64> {
        self.images[idx * self.rank..(idx + 1) * self.rank]
            .iter()
            .map(|&x| x as i64)
            .collect()
    }

    pub fn length(&self, idx: usize) -> usize {
        self.level_starts.partition_point(|&s| s <= idx) - 1
    }

    pub fn sign(&self, idx: usize) -> i8 {
        if self.length(idx).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Reduced word `[i1, i2, ...]` meaning `w = s_{i1} s_{i2} ...`.
    pub fn word(&self, idx: usize) -> Vec<usize> {
        let mut v = self.rho_image(idx);
        let mut w = Vec::new();
        while let Some(j) = v.iter().position(|&x| x < 0) {
            w.push(j);
            reflect_labels(&self.cartan, &mut v, j);
        }
        w
    }

    pub fn element(&self, rs: &RootSystem, idx: usize) -> WeylElement {
        WeylElement::from_word(rs, &self.word(idx))
    }

    /// Index of the element with the given `w rho` labels.
    pub fn index_of(&self, rho_image: &[i64]) -> Option<usize> {
        let key: Vec<i32> = rho_image.iter().map(|&x| x as i32).collect();
        self.index.get(&key).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `u v`.
    pub fn compose(&self, u: usize, v: usize) -> usize {
        let mut img = self.rho_image(v);
        act_on_labels(&self.cartan, &self.word(u), &mut img);
        self.index_of(&img).expect("group is closed")
    }

    pub fn inverse(&self, u: usize) -> usize {
        let mut w = self.word(u);
        w.reverse();
        let mut img = vec![1i64; self.rank];
        act_on_labels(&self.cartan, &w, &mut img);
        self.index_of(&img).expect("group is closed")
    }

    /// Index of the reflection in the positive root `idx`.
    pub fn reflection(&self, rs: &RootSystem, root: usize) -> usize {
        let height: i64 = rs.coroot_coeffs()[root].iter().sum();
        let labels = rs.root_labels(root);
        let img: Vec<i64> = labels.iter().map(|&a| 1 - height * a).collect();
        self.index_of(&img).expect("reflections are group elements")
    }

    /// `w h` in coroot coordinates scaled to integers (`c_i = num_i / den`).
    fn act_scaled(&self, idx: usize, c: &[i128]) -> Vec<i128> {
        let mut v = c.to_vec();
        act_on_coroot(&self.cartan, &self.word(idx), &mut v);
        v
    }
}

/// Coroot coordinates of an exact point as integers over a common denominator.
pub(crate) fn scaled_coroot(rs: &RootSystem, h0: &TorusPoint) -> Result<(Vec<i128>, i128)> {
    let c = h0.coroot_coords_exact(rs)?;
    let den = crate::exact::lcm_all(c.iter().map(|x| x.denom()));
    let den_i: i128 = num_traits::ToPrimitive::to_i128(&den)
        .filter(|d| *d < (1i128 << 60))
        .ok_or_else(|| Error::Domain("torus point denominators are too large".into()))?;
    let nums = c
        .iter()
        .map(|x| {
            let v = x * Q::from_integer(den.clone());
            num_traits::ToPrimitive::to_i128(&v.to_integer()).expect("fits")
        })
        .collect();
    Ok((nums, den_i))
}

fn same_point(a: &[i128], b: &[i128], den: i128) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).rem_euclid(2 * den) == 0)
}

#[derive(Clone, Debug)]
pub struct Stabilizer {
    /// Element indices into the parent group, in group order.
    pub elements: Vec<usize>,
    /// Degenerate positive roots whose reflections generate the stabilizer.
    pub generating_reflections: Vec<WeightVec>,
    pub parent_order: usize,
}

impl Stabilizer {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Elements up to this group order are filtered exhaustively.
pub const STABILIZER_FILTER_LIMIT: usize = 100_000;

/// `{w : w h0 = h0}` as torus points. Filters exhaustively for small groups
/// and closes the degenerate-root reflections otherwise.
pub fn stabilizer(rs: &RootSystem, w: &WeylGroup, h0: &TorusPoint) -> Result<Stabilizer> {
    if w.order() <= STABILIZER_FILTER_LIMIT {
        stabilizer_by_filter(rs, w, h0)
    } else {
        stabilizer_by_closure(rs, w, h0)
    }
}

pub fn stabilizer_by_filter(rs: &RootSystem, w: &WeylGroup, h0: &TorusPoint) -> Result<Stabilizer> {
    let (c, den) = scaled_coroot(rs, h0)?;
    let elements = (0..w.order())
        .filter(|&i| same_point(&w.act_scaled(i, &c), &c, den))
        .collect();
    Ok(Stabilizer {
        elements,
        generating_reflections: degenerate_roots(rs, h0)?,
        parent_order: w.order(),
    })
}

fn degenerate_roots(rs: &RootSystem, h0: &TorusPoint) -> Result<Vec<WeightVec>> {
    let split = rs.degenerate_split(h0)?;
    Ok(split
        .deg
        .iter()
        .map(|&i| rs.positive_roots()[i].clone())
        .collect())
}

/// Subgroup generated by the reflections in the degenerate roots.
pub fn stabilizer_by_closure(
    rs: &RootSystem,
    w: &WeylGroup,
    h0: &TorusPoint,
) -> Result<Stabilizer> {
    let split = rs.degenerate_split(h0)?;
    let gens: Vec<usize> = split.deg.iter().map(|&i| w.reflection(rs, i)).collect();
    let mut seen = vec![false; w.order()];
    seen[0] = true;
    let mut frontier = vec![0usize];
    let mut elements = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &g in &gens {
                let v = w.compose(u, g);
                if !seen[v] {
                    seen[v] = true;
                    next.push(v);
                    elements.push(v);
                }
            }
        }
        frontier = next;
    }
    elements.sort_unstable();
    Ok(Stabilizer {
        elements,
        generating_reflections: split
            .deg
            .iter()
            .map(|&i| rs.positive_roots()[i].clone())
            .collect(),
        parent_order: w.order(),
    })
}

#[derive(Clone, Debug)]
pub struct CosetTransversal {
    /// One element index per left coset `b W0`.
    pub reps: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalChoice {
    /// Shortest element of each coset (first in group order).
    Minimal,
    /// Longest element of each coset (last in group order).
    Maximal,
}

/// Representatives of the left cosets `b W0`.
pub fn coset_transversal(w: &WeylGroup, w0: &Stabilizer) -> Result<CosetTransversal> {
    coset_transversal_with(w, w0, TransversalChoice::Minimal)
}

pub fn coset_transversal_with(
    w: &WeylGroup,
    w0: &Stabilizer,
    choice: TransversalChoice,
) -> Result<CosetTransversal> {
    if w0.parent_order != w.order() || w0.elements.first() != Some(&0) {
        return Err(Error::Structural(
            "stabilizer does not belong to this group".into(),
        ));
    }
    let members: std::collections::HashSet<usize> = w0.elements.iter().copied().collect();
    for &a in &w0.elements {
        for &b in &w0.elements {
            if !members.contains(&w.compose(a, b)) {
                return Err(Error::Structural("W0 is not a subgroup".into()));
            }
        }
    }
    let mut coset_of = vec![usize::MAX; w.order()];
    let mut reps = Vec::new();
    let order: Box<dyn Iterator<Item = usize>> = match choice {
        TransversalChoice::Minimal => Box::new(0..w.order()),
        TransversalChoice::Maximal => Box::new((0..w.order()).rev()),
    };
    for u in order {
        if coset_of[u] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &s in &w0.elements {
            coset_of[w.compose(u, s)] = id;
        }
        reps.push(u);
    }
    if reps.len() * w0.order() != w.order() {
        return Err(Error::Structural("cosets do not partition W".into()));
    }
    Ok(CosetTransversal { reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qr;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let r = rs("A2");
        let a1 = r.simple_roots()[0].clone();
        let x = WeightVec::from_ints(&[1, 0, -1]);
        assert_eq!(
            reflect(&r, &a1, &x).unwrap(),
            WeightVec::from_ints(&[0, 1, -1])
        );
        assert_eq!(reflect(&r, &a1, &a1).unwrap(), a1.neg());
        let fixed = WeightVec(vec![qr(1, 3), qr(1, 3), qr(-2, 3)]);
        assert_eq!(reflect(&r, &a1, &fixed).unwrap(), fixed);
        assert!(reflect(&r, &WeightVec::zero(3), &x).is_err());
    }

    #[test]
    fn orders() {
        for (name, n) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("B3", 48),
            ("D4", 192),
            ("F4", 1152),
        ] {
            let g = generate_weyl_group(&rs(name), DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(g.order(), n, "{name}");
        }
        assert_eq!(
            generate_weyl_group(&rs("E6"), DEFAULT_WEYL_CAP)
                .unwrap()
                .order(),
            51840
        );
        let e8 = generate_weyl_group(&rs("E8"), DEFAULT_WEYL_CAP);
        match e8 {
            Err(Error::Capacity { required, .. }) => assert_eq!(required, "696729600"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ordering_is_by_length_then_word() {
        let r = rs("A3");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        let words: Vec<Vec<usize>> = (0..g.order()).map(|i| g.word(i)).collect();
        for pair in words.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
        assert_eq!(words[1], vec![0]);
    }

    #[test]
    fn elements_are_isometries_with_signs() {
        let r = rs("B2");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        for i in 0..g.order() {
            let e = g.element(&r, i);
            assert!(e.preserves_form(r.gram()));
            assert_eq!(e.determinant(), qi(e.sign as i64));
            assert_eq!(e.sign, g.sign(i));
        }
    }

    #[test]
    fn sign_is_a_homomorphism_and_inverse_works() {
        let r = rs("G2");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        for u in 0..g.order() {
            assert_eq!(g.compose(u, g.inverse(u)), 0);
            for v in 0..g.order() {
                assert_eq!(g.sign(g.compose(u, v)), g.sign(u) * g.sign(v));
            }
        }
    }

    #[test]
    fn a2_stabilizer_of_singular_point() {
        let r = rs("A2");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        let h0 = TorusPoint::Exact(vec![qr(1, 5), qr(1, 5), qr(-2, 5)]);
        let st = stabilizer(&r, &g, &h0).unwrap();
        assert_eq!(st.elements, vec![0, 1]);
        assert_eq!(g.word(1), vec![0]);
        let t = coset_transversal(&g, &st).unwrap();
        assert_eq!(t.reps.len(), 3);
        let reg = TorusPoint::from_simple_pairings(&r, &[qr(1, 3), qr(1, 7)]).unwrap();
        assert_eq!(stabilizer(&r, &g, &reg).unwrap().order(), 1);
    }

    #[test]
    fn a4_stabilizer_is_s3_times_s2() {
        let r = rs("A4");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        // (a,a,a,b,b) with 3a + 2b = 0
        let h0 = TorusPoint::Exact(vec![qr(2, 7), qr(2, 7), qr(2, 7), qr(-3, 7), qr(-3, 7)]);
        let f = stabilizer_by_filter(&r, &g, &h0).unwrap();
        let c = stabilizer_by_closure(&r, &g, &h0).unwrap();
        assert_eq!(f.order(), 12);
        assert_eq!(f.elements, c.elements);
    }

    #[test]
    fn a3_two_equal_pairs() {
        let r = rs("A3");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        let h0 = TorusPoint::Exact(vec![qr(1, 4), qr(1, 4), qr(-1, 4), qr(-1, 4)]);
        let st = stabilizer(&r, &g, &h0).unwrap();
        assert_eq!(st.order(), 4);
        let t = coset_transversal(&g, &st).unwrap();
        assert_eq!(t.reps.len(), 6);
        // exhaustive partition check
        let mut hit = vec![0; g.order()];
        for &b in &t.reps {
            for &s in &st.elements {
                hit[g.compose(b, s)] += 1;
            }
        }
        assert!(hit.iter().all(|&k| k == 1));
        let full = Stabilizer {
            elements: (0..g.order()).collect(),
            generating_reflections: vec![],
            parent_order: g.order(),
        };
        assert_eq!(coset_transversal(&g, &full).unwrap().reps, vec![0]);
    }

    #[test]
    fn non_subgroup_rejected() {
        let r = rs("A2");
        let g = generate_weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        let bad = Stabilizer {
            elements: vec![0, 1, 2],
            generating_reflections: vec![],
            parent_order: g.order(),
        };
        assert!(matches!(
            coset_transversal(&g, &bad),
            Err(Error::Structural(_))
        ));
    }
}
