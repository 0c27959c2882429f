use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::TorusPoint;

const UNITARY_TOL: f64 = 1e-10;

/// Finite generator set in the defining representation of `SU(N)`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub elements: Vec<DMatrix<Complex64>>,
    pub symmetric: bool,
    pub labels: Vec<String>,
    /// Probability weights; `None` means uniform.
    pub nu: Option<Vec<f64>>,
    /// Provenance of the freeness hypothesis, e.g. `"asserted"`.
    pub free: Option<String>,
}

/// JSON form: matrices as rows of `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSetDoc {
    pub labels: Vec<String>,
    pub elements: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub symmetric: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<String>,
}

fn dist(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

impl GeneratorSet {
    pub fn new(
        elements: Vec<DMatrix<Complex64>>,
        labels: Vec<String>,
        symmetric: bool,
        nu: Option<Vec<f64>>,
        free: Option<String>,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("generator set is empty".into()));
        }
        if labels.len() != elements.len() {
            return Err(Error::DimensionMismatch {
                expected: elements.len(),
                got: labels.len(),
            });
        }
        let n = elements[0].nrows();
        for (g, label) in elements.iter().zip(&labels) {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::Domain(format!("generator {label} is not {n}x{n}")));
            }
            let id = DMatrix::<Complex64>::identity(n, n);
            if dist(&(g.adjoint() * g), &id) > UNITARY_TOL {
                return Err(Error::Domain(format!("generator {label} is not unitary")));
            }
            if (g.determinant() - Complex64::new(1.0, 0.0)).norm() > UNITARY_TOL {
                return Err(Error::Domain(format!(
                    "generator {label} does not have determinant 1"
                )));
            }
        }
        if let Some(w) = &nu {
            if w.len() != elements.len() {
                return Err(Error::DimensionMismatch {
                    expected: elements.len(),
                    got: w.len(),
                });
            }
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::Domain(
                    "weights must be nonnegative with positive sum".into(),
                ));
            }
        }
        let set = GeneratorSet {
            elements,
            symmetric,
            labels,
            nu,
            free,
        };
        if symmetric {
            for (i, label) in set.labels.iter().enumerate() {
                if set.inverse_index(i).is_none() {
                    return Err(Error::Domain(format!(
                        "set is marked symmetric but the inverse of {label} is missing"
                    )));
                }
            }
        }
        Ok(set)
    }

    pub fn from_doc(doc: &GeneratorSetDoc) -> Result<Self> {
        let mut elements = Vec::new();
        for (m, label) in doc.elements.iter().zip(&doc.labels) {
            let n = m.len();
            if m.iter().any(|row| row.len() != n) {
                return Err(Error::parse(
                    "gens",
                    format!("generator {label} is not square"),
                ));
            }
            elements.push(DMatrix::from_fn(n, n, |i, j| {
                Complex64::new(m[i][j][0], m[i][j][1])
            }));
        }
        if elements.len() != doc.labels.len() {
            return Err(Error::parse(
                "gens",
                format!(
                    "{} labels for {} matrices",
                    doc.labels.len(),
                    doc.elements.len()
                ),
            ));
        }
        Self::new(
            elements,
            doc.labels.clone(),
            doc.symmetric,
            doc.weights.clone(),
            doc.free.clone(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GeneratorSetDoc =
            serde_json::from_str(text).map_err(|e| Error::parse("gens", e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GeneratorSetDoc {
        GeneratorSetDoc {
            labels: self.labels.clone(),
            elements: self
                .elements
                .iter()
                .map(|g| {
                    (0..g.nrows())
                        .map(|i| {
                            (0..g.ncols())
                                .map(|j| [g[(i, j)].re, g[(i, j)].im])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            symmetric: self.symmetric,
            weights: self.nu.clone(),
            free: self.free.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrix_dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn is_uniform(&self) -> bool {
        match &self.nu {
            None => true,
            Some(w) => w.iter().all(|x| (x - w[0]).abs() <= 1e-15 * w[0].abs()),
        }
    }

    /// Normalized weights.
    pub fn weights(&self) -> Vec<f64> {
        match &self.nu {
            None => vec![1.0 / self.len() as f64; self.len()],
            Some(w) => {
                let t: f64 = w.iter().sum();
                w.iter().map(|x| x / t).collect()
            }
        }
    }

    fn inverse_index(&self, i: usize) -> Option<usize> {
        let inv = self.elements[i].adjoint();
        self.elements
            .iter()
            .position(|h| dist(h, &inv) <= UNITARY_TOL)
    }

    /// For each generator, the index of its inverse within the set.
    pub fn inverse_indices(&self) -> Vec<Option<usize>> {
        (0..self.len()).map(|i| self.inverse_index(i)).collect()
    }

    /// Every generator replaced by `v g v^dagger`.
    pub fn conjugated(&self, v: &DMatrix<Complex64>) -> Self {
        GeneratorSet {
            elements: self.elements.iter().map(|g| v * g * v.adjoint()).collect(),
            ..self.clone()
        }
    }
}

fn quaternion_matrix(a: f64, b: f64, c: f64, d: f64) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(a, b),
            Complex64::new(c, d),
            Complex64::new(-c, d),
            Complex64::new(a, -b),
        ],
    )
}

/// The rotations `(1 + 2i)/sqrt 5` and `(1 + 2j)/sqrt 5` in `SU(2)` with
/// their inverses, labelled `a, A, b, B`. They come from the norm-5 integer
/// quaternions, which generate a free group; freeness is taken as given and
/// recorded as `free: "asserted"`.
pub fn lps_free_pair() -> GeneratorSet {
    let r = 1.0 / 5f64.sqrt();
    let elements = vec![
        quaternion_matrix(r, 2.0 * r, 0.0, 0.0),
        quaternion_matrix(r, -2.0 * r, 0.0, 0.0),
        quaternion_matrix(r, 0.0, 2.0 * r, 0.0),
        quaternion_matrix(r, 0.0, -2.0 * r, 0.0),
    ];
    GeneratorSet::new(
        elements,
        ["a", "A", "b", "B"].iter().map(|s| s.to_string()).collect(),
        true,
        None,
        Some("asserted".into()),
    )
    .expect("catalog entry is valid")
}

/// Haar-random element of `SU(n)`: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal absorbed, then the determinant divided out.
pub fn haar_special_unitary<R: Rng>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    let det = q.determinant();
    let root = Complex64::from_polar(1.0, -det.arg() / n as f64);
    q * root
}

/// Eigenphases of a special unitary matrix as an ambient torus point in
/// radians, sorted in descending order.
///
/// Each phase is first taken in `(-pi, pi]`. Their sum is then `2 pi k` for
/// an integer `k`; the `k` largest phases are lowered by `2 pi` (or the
/// `-k` smallest raised) so the sum vanishes without changing the element,
/// and the remaining rounding residue is spread evenly.
pub fn conjugacy_phases(g: &DMatrix<Complex64>) -> Result<TorusPoint> {
    let n = g.nrows();
    if g.ncols() != n || n == 0 {
        return Err(Error::Domain("expected a nonempty square matrix".into()));
    }
    let id = DMatrix::<Complex64>::identity(n, n);
    if dist(&(g.adjoint() * g), &id) > 1e-8 {
        return Err(Error::Domain("matrix is not unitary".into()));
    }
    if (g.determinant() - Complex64::new(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::Domain("matrix does not have determinant 1".into()));
    }
    let (_, t) = g.clone().schur().unpack();
    let mut phases: Vec<f64> = (0..n)
        .map(|i| {
            let a = t[(i, i)].arg();
            if a <= -std::f64::consts::PI {
                a + std::f64::consts::TAU
            } else {
                a
            }
        })
        .collect();
    phases.sort_by(|a, b| b.total_cmp(a));
    let k = (phases.iter().sum::<f64>() / std::f64::consts::TAU).round() as i64;
    if k > 0 {
        for p in phases.iter_mut().take(k as usize) {
            *p -= std::f64::consts::TAU;
        }
    } else if k < 0 {
        for p in phases.iter_mut().rev().take((-k) as usize) {
            *p += std::f64::consts::TAU;
        }
    }
    let residue = phases.iter().sum::<f64>() / n as f64;
    for p in phases.iter_mut() {
        *p -= residue;
    }
    phases.sort_by(|a, b| b.total_cmp(a));
    Ok(TorusPoint::Float(phases))
}
