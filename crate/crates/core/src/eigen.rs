//! Normalized eigenvectors of adjoints of positive operators, at finite
//! dimension.
//!
//! A positive linear operator `T` on the first `N` coordinates is an
//! entrywise-nonnegative matrix; its adjoint on weightings is the transpose.
//! [`invariant_structure`] searches for a discount vector `p` with
//! `T* p = λ p` by iterating `p ↦ T* p / ⟨1, T* p⟩`, and falls back to the
//! simplex part of the kernel when the normalizer vanishes.
//!
//! Truncation loses part of the infinite-dimensional picture: eigenvectors
//! that are purely finitely additive (zero mass on every single period) have
//! no finite counterpart. The cyclic delay keeps their finite shadow (the
//! uniform vector); the absorbing delay keeps only `e_0`.

use serde::{Deserialize, Serialize};

use crate::discounting::abel;
use crate::error::{Error, Result};
use crate::streams::{Permutation, Stream};

/// A square nonnegative matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl OperatorMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidOperator("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidOperator(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
                return Err(Error::InvalidOperator(format!(
                    "entry {v} in row {i} is not a finite nonnegative value"
                )));
            }
            entries.extend(row);
        }
        Ok(OperatorMatrix { dim, entries })
    }

    fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, v: f64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// The adjoint `M*`, i.e. the transpose.
    pub fn adjoint(&self) -> OperatorMatrix {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

impl TryFrom<Vec<Vec<f64>>> for OperatorMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        OperatorMatrix::from_rows(rows)
    }
}

impl From<OperatorMatrix> for Vec<Vec<f64>> {
    fn from(m: OperatorMatrix) -> Self {
        m.rows()
    }
}

/// Built-in truncations of the operators that appear in the invariance
/// principles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum BuiltinOperator {
    /// `(x_0, ..., x_{N-1}) ↦ (x_{N-1}, x_0, ..., x_{N-2})`.
    CyclicDelay { n: usize },
    /// `(x_0, ..., x_{N-1}) ↦ (0, x_0, ..., x_{N-2})`.
    AbsorbingDelay { n: usize },
    /// `x ↦ x_σ`, with `images[t] = σ(t)`.
    Permutation { n: usize, images: Vec<usize> },
    /// `x ↦ a x`.
    Scaling { n: usize, factor: f64 },
}

impl BuiltinOperator {
    pub fn matrix(&self) -> Result<OperatorMatrix> {
        let n = match self {
            BuiltinOperator::CyclicDelay { n }
            | BuiltinOperator::AbsorbingDelay { n }
            | BuiltinOperator::Permutation { n, .. }
            | BuiltinOperator::Scaling { n, .. } => *n,
        };
        if n == 0 {
            return Err(Error::InvalidOperator("dimension must be >= 1".into()));
        }
        let mut m = OperatorMatrix::zeros(n);
        match self {
            BuiltinOperator::CyclicDelay { .. } => {
                for i in 0..n {
                    m.set(i, (i + n - 1) % n, 1.0);
                }
            }
            BuiltinOperator::AbsorbingDelay { .. } => {
                for i in 1..n {
                    m.set(i, i - 1, 1.0);
                }
            }
            BuiltinOperator::Permutation { images, .. } => {
                let sigma = Permutation::from_images(images.clone())?;
                if sigma.support_bound() > n {
                    return Err(Error::InvalidPermutation(format!(
                        "permutation moves indices beyond dimension {n}"
                    )));
                }
                for t in 0..n {
                    m.set(t, sigma.apply(t), 1.0);
                }
            }
            BuiltinOperator::Scaling { factor, .. } => {
                if !(*factor >= 0.0 && factor.is_finite()) {
                    return Err(Error::InvalidScale(*factor));
                }
                for i in 0..n {
                    m.set(i, i, *factor);
                }
            }
        }
        Ok(m)
    }
}

/// Operator description as read from JSON: `{"builtin": {...}}` or
/// `{"matrix": [[...], ...]}`. Both describe `T`, not its adjoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorSpec {
    Builtin(BuiltinOperator),
    Matrix(Vec<Vec<f64>>),
}

impl OperatorSpec {
    pub fn matrix(&self) -> Result<OperatorMatrix> {
        match self {
            OperatorSpec::Builtin(b) => b.matrix(),
            OperatorSpec::Matrix(rows) => OperatorMatrix::from_rows(rows.clone()),
        }
    }
}

/// A finite discount structure: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DiscountVector {
    weights: Vec<f64>,
}

impl DiscountVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidOperator("empty discount vector".into()));
        }
        if weights.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidOperator("weights must be finite and >= 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidOperator(format!("weights sum to {total}, not 1")));
        }
        Ok(DiscountVector { weights })
    }

    pub fn uniform(n: usize) -> Self {
        DiscountVector {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut weights = vec![0.0; n];
        weights[k] = 1.0;
        DiscountVector { weights }
    }

    /// Scales a nonnegative vector with positive mass onto the simplex.
    fn normalized(v: Vec<f64>) -> Self {
        let total: f64 = v.iter().sum();
        DiscountVector {
            weights: v.into_iter().map(|w| w / total).collect(),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

impl TryFrom<Vec<f64>> for DiscountVector {
    type Error = Error;

    fn try_from(weights: Vec<f64>) -> Result<Self> {
        DiscountVector::new(weights)
    }
}

impl From<DiscountVector> for Vec<f64> {
    fn from(p: DiscountVector) -> Self {
        p.weights
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub cesaro_averaging: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: 100_000,
            cesaro_averaging: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub p: DiscountVector,
    pub lambda: f64,
    pub residual: f64,
    pub iters: usize,
}

/// Below this mass `T* p` is treated as zero.
const KERNEL_MASS: f64 = 1e-14;

/// `(λ, ‖M* p − λ p‖₁)` with `λ = ⟨1, M* p⟩`.
pub fn verify_eigen(mstar: &OperatorMatrix, p: &DiscountVector) -> (f64, f64) {
    let image = mstar.apply(p.weights());
    let lambda: f64 = image.iter().sum();
    let residual = image
        .iter()
        .zip(p.weights())
        .map(|(a, b)| (a - lambda * b).abs())
        .sum();
    (lambda, residual)
}

/// A simplex element of `ker M*`. Since `M* ≥ 0` and `p ≥ 0`, `M* p = 0`
/// exactly when `p` is supported on zero columns of `M*`; the current iterate
/// is kept when it already is.
fn kernel_element(mstar: &OperatorMatrix, current: &DiscountVector) -> Result<DiscountVector> {
    let n = mstar.dim();
    let zero_col: Vec<bool> = (0..n)
        .map(|j| (0..n).all(|i| mstar.get(i, j) == 0.0))
        .collect();
    let supported = current
        .weights()
        .iter()
        .zip(&zero_col)
        .all(|(w, zero)| *w == 0.0 || *zero);
    if supported {
        return Ok(current.clone());
    }
    let count = zero_col.iter().filter(|z| **z).count();
    if count == 0 {
        return Err(Error::NoInvariantFound);
    }
    Ok(DiscountVector {
        weights: zero_col
            .iter()
            .map(|&z| if z { 1.0 / count as f64 } else { 0.0 })
            .collect(),
    })
}

/// Fixed-point search for `p ∈ Δ` with `M* p = λ p`.
///
/// Iterates `p ↦ M* p / ⟨1, M* p⟩` from `start`; with Cesàro averaging the
/// running mean of the iterates is tested instead, which converges on
/// permutation operators where the raw iterates cycle.
pub fn invariant_structure(
    mstar: &OperatorMatrix,
    start: &DiscountVector,
    opts: &SolverOptions,
) -> Result<EigenResult> {
    if start.len() != mstar.dim() {
        return Err(Error::InvalidOperator(format!(
            "start vector has length {}, operator dimension is {}",
            start.len(),
            mstar.dim()
        )));
    }
    let mut p = start.clone();
    let mut sum = p.weights().to_vec();
    let mut last_residual = f64::INFINITY;

    for iter in 0..=opts.max_iter {
        let candidate = if opts.cesaro_averaging && iter > 0 {
            DiscountVector::normalized(sum.clone())
        } else {
            p.clone()
        };
        let (lambda, residual) = verify_eigen(mstar, &candidate);
        if lambda < KERNEL_MASS {
            let p = kernel_element(mstar, &candidate)?;
            let (lambda, residual) = verify_eigen(mstar, &p);
            return Ok(EigenResult {
                p,
                lambda,
                residual,
                iters: iter,
            });
        }
        if residual <= opts.tol {
            return Ok(EigenResult {
                p: candidate,
                lambda,
                residual,
                iters: iter,
            });
        }
        last_residual = residual;
        if iter == opts.max_iter {
            break;
        }

        let image = mstar.apply(p.weights());
        let mass: f64 = image.iter().sum();
        if mass < KERNEL_MASS {
            let p = kernel_element(mstar, &p)?;
            let (lambda, residual) = verify_eigen(mstar, &p);
            return Ok(EigenResult {
                p,
                lambda,
                residual,
                iters: iter + 1,
            });
        }
        p = DiscountVector::normalized(image);
        for (s, w) in sum.iter_mut().zip(p.weights()) {
            *s += w;
        }
    }
    Err(Error::NonConvergence {
        iters: opts.max_iter,
        residual: last_residual,
    })
}

/// `|D_δ((0, x)) − δ D_δ(x)|`, in closed form.
pub fn geometric_invariance_check(x: &Stream, delta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidDelta(delta));
    }
    Ok((abel(&x.delay(), delta) - delta * abel(x, delta)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtin(op: BuiltinOperator) -> OperatorMatrix {
        op.matrix().unwrap()
    }

    #[test]
    fn builtin_shapes() {
        let cyc = builtin(BuiltinOperator::CyclicDelay { n: 3 });
        assert_eq!(cyc.apply(&[1.0, 2.0, 3.0]), vec![3.0, 1.0, 2.0]);
        let abs = builtin(BuiltinOperator::AbsorbingDelay { n: 3 });
        assert_eq!(abs.apply(&[1.0, 2.0, 3.0]), vec![0.0, 1.0, 2.0]);
        let sc = builtin(BuiltinOperator::Scaling { n: 2, factor: 2.0 });
        assert_eq!(sc.rows(), vec![vec![2.0, 0.0], vec![0.0, 2.0]]);
        let perm = builtin(BuiltinOperator::Permutation {
            n: 3,
            images: vec![2, 0, 1],
        });
        assert_eq!(perm.apply(&[1.0, 2.0, 3.0]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn invalid_builtins() {
        assert!(matches!(
            BuiltinOperator::Permutation { n: 3, images: vec![0, 0, 1] }.matrix(),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(BuiltinOperator::Permutation { n: 2, images: vec![0, 2, 1] }.matrix().is_err());
        assert!(BuiltinOperator::CyclicDelay { n: 0 }.matrix().is_err());
        assert!(OperatorMatrix::from_rows(vec![vec![1.0, -1.0], vec![0.0, 1.0]]).is_err());
        assert!(OperatorMatrix::from_rows(vec![vec![1.0], vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let id = OperatorMatrix::identity(4);
        assert_eq!(id.adjoint(), id);
        let cyc = builtin(BuiltinOperator::CyclicDelay { n: 5 });
        // transpose of a cyclic shift is the inverse shift
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(cyc.adjoint().apply(&cyc.apply(&v)), v.to_vec());
    }

    #[test]
    fn verify_eigen_examples() {
        let p = DiscountVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(verify_eigen(&OperatorMatrix::identity(4), &p), (1.0, 0.0));
        let cyc = builtin(BuiltinOperator::CyclicDelay { n: 4 }).adjoint();
        assert_eq!(verify_eigen(&cyc, &DiscountVector::uniform(4)), (1.0, 0.0));

        let perm = builtin(BuiltinOperator::Permutation {
            n: 5,
            images: vec![1, 2, 0, 4, 3],
        })
        .adjoint();
        let p = DiscountVector::new(vec![1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.25, 0.25]).unwrap();
        let (lambda, residual) = verify_eigen(&perm, &p);
        assert!((lambda - 1.0).abs() <= 1e-15);
        assert!(residual <= 1e-15);
    }

    #[test]
    fn scaling_keeps_any_start() {
        let mstar = builtin(BuiltinOperator::Scaling { n: 3, factor: 2.0 }).adjoint();
        let start = DiscountVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        let r = invariant_structure(&mstar, &start, &SolverOptions::default()).unwrap();
        assert_eq!(r.p, start);
        assert_eq!(r.lambda, 2.0);
    }

    #[test]
    fn absorbing_delay_reaches_kernel() {
        for n in 1..=10 {
            let mstar = builtin(BuiltinOperator::AbsorbingDelay { n }).adjoint();
            let r = invariant_structure(&mstar, &DiscountVector::uniform(n), &SolverOptions::default())
                .unwrap();
            assert_eq!(r.p, DiscountVector::unit(n, 0), "n = {n}");
            assert_eq!(r.lambda, 0.0);
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn no_kernel_no_invariant() {
        // M* p = (p_1, 0): the iterate e_1 maps to e_0, then to zero
        let mstar = OperatorMatrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = invariant_structure(&mstar, &DiscountVector::unit(2, 1), &SolverOptions::default())
            .unwrap();
        assert_eq!(r.p, DiscountVector::unit(2, 0));

        let all_zero = OperatorMatrix::from_rows(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let r = invariant_structure(&all_zero, &DiscountVector::uniform(2), &SolverOptions::default())
            .unwrap();
        assert_eq!(r.lambda, 0.0);

        // mass vanishes but no column is exactly zero
        let dead = OperatorMatrix::from_rows(vec![vec![1e-300, 0.0], vec![0.0, 1e-300]]).unwrap();
        assert_eq!(
            invariant_structure(&dead, &DiscountVector::uniform(2), &SolverOptions::default()),
            Err(Error::NoInvariantFound)
        );
    }

    #[test]
    fn pure_iteration_cycles_on_permutations() {
        let mstar = builtin(BuiltinOperator::CyclicDelay { n: 3 }).adjoint();
        let opts = SolverOptions {
            max_iter: 50,
            ..SolverOptions::default()
        };
        let r = invariant_structure(&mstar, &DiscountVector::unit(3, 0), &opts);
        assert!(matches!(r, Err(Error::NonConvergence { iters: 50, .. })));

        let averaged = SolverOptions {
            cesaro_averaging: true,
            ..opts
        };
        let r = invariant_structure(&mstar, &DiscountVector::unit(3, 0), &averaged).unwrap();
        assert!(r.residual <= 1e-10);
        assert_eq!(r.iters, 2);
    }

    #[test]
    fn geometric_identity_is_exact() {
        let x = Stream::new(vec![1.5, -2.0], crate::streams::Tail::Periodic(vec![0.3, 0.7])).unwrap();
        assert_eq!(geometric_invariance_check(&x, 0.5).unwrap(), 0.0);
        assert_eq!(geometric_invariance_check(&Stream::constant(1.0), 0.9).unwrap(), 0.0);
        assert!(geometric_invariance_check(&x, 1.0).is_err());
    }

    #[test]
    fn operator_json() {
        let spec: OperatorSpec =
            serde_json::from_str(r#"{"builtin":{"name":"cyclic_delay","n":8}}"#).unwrap();
        assert_eq!(spec.matrix().unwrap().dim(), 8);
        let spec: OperatorSpec = serde_json::from_str(r#"{"matrix":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.matrix().unwrap().get(0, 1), 1.0);
        let spec: OperatorSpec = serde_json::from_str(
            r#"{"builtin":{"name":"permutation","n":5,"images":[1,2,0,4,3]}}"#,
        )
        .unwrap();
        assert!(spec.matrix().is_ok());
    }
}
