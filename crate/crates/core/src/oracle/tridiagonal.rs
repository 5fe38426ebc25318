//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for the
//! lowest eigenvalues and inverse iteration for their eigenvectors.

use crate::error::{Error, Result};

const MAX_INVERSE_ITERATIONS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    pub diagonal: Vec<f64>,
    /// Length `diagonal.len() - 1`.
    pub off_diagonal: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit 2-norm; the first component above 1e-3 of the maximum is positive.
    pub vector: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() {
            return Err(Error::invalid_argument("diagonal", "must be nonempty"));
        }
        if off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::invalid_argument(
                "off_diagonal",
                format!(
                    "length {} does not match diagonal length {}",
                    off_diagonal.len(),
                    diagonal.len()
                ),
            ));
        }
        Ok(SymTridiagonal {
            diagonal,
            off_diagonal,
        })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `lambda` (negative pivots of the
    /// LDL^T factorization of `T - lambda I`).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE
            * self
                .off_diagonal
                .iter()
                .fold(1.0f64, |acc, e| acc.max(e * e));
        let mut count = 0;
        let mut q = self.diagonal[0] - lambda;
        for i in 1..self.len() {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
            let e = self.off_diagonal[i - 1];
            q = (self.diagonal[i] - lambda) - e * e / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        count
    }

    /// The `k` lowest eigenvalues in ascending order, each bisected to an
    /// interval of width `tol` (or to the floating-point limit).
    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Result<Vec<f64>> {
        if k == 0 || k > self.len() {
            return Err(Error::invalid_argument(
                "k",
                format!("must lie in 1..={}, got {k}", self.len()),
            ));
        }
        if !(tol > 0.0) {
            return Err(Error::invalid_argument("tol", "must be positive"));
        }
        let (glo, ghi) = self.gershgorin();
        let pad = 2.0 * f64::EPSILON * self.norm() + f64::MIN_POSITIVE;
        let mut lower = vec![glo - pad; k];
        let mut upper = vec![ghi + pad; k];
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let (mut lo, mut hi) = (lower[j], upper[j]);
            loop {
                let mid = 0.5 * (lo + hi);
                if hi - lo <= tol || mid <= lo || mid >= hi {
                    break;
                }
                let c = self.sturm_count(mid);
                // c eigenvalues lie below mid: tighten every pending bracket
                for i in j..k {
                    if i < c {
                        upper[i] = upper[i].min(mid);
                    } else {
                        lower[i] = lower[i].max(mid);
                    }
                }
                if c > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            values.push(0.5 * (lo + hi));
        }
        Ok(values)
    }

    /// Eigenvector for an (accurate) eigenvalue by inverse iteration,
    /// orthogonalized against `previous`.
    pub fn inverse_iteration(
        &self,
        value: f64,
        previous: &[Vec<f64>],
        index: usize,
    ) -> Result<Vec<f64>> {
        let n = self.len();
        if n == 1 {
            return Ok(vec![1.0]);
        }
        let norm = self.norm();
        let lu = ShiftedLu::factor(self, value, f64::EPSILON * norm);

        // deterministic, non-symmetric start vector
        let mut state: u64 = 0x9E37_79B9_7F4A_7C15 ^ (index as u64);
        let mut x: Vec<f64> = (0..n)
            .map(|_| {
                state = state
                    .wrapping_mul(6_364_136_223_846_793_005)
                    .wrapping_add(1_442_695_040_888_963_407);
                0.5 + (state >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect();
        normalize(&mut x);

        let residual_tol = 64.0 * f64::EPSILON * norm * (n as f64).sqrt();
        for _ in 0..MAX_INVERSE_ITERATIONS {
            let mut y = lu.solve(&x);
            for p in previous {
                let overlap = dot(&y, p);
                for (yi, pi) in y.iter_mut().zip(p) {
                    *yi -= overlap * pi;
                }
            }
            normalize(&mut y);
            x = y;
            if self.residual(&x, value) <= residual_tol {
                fix_sign(&mut x);
                return Ok(x);
            }
        }
        Err(Error::EigenvectorNotConverged { index })
    }

    /// `|| T x - value x ||_2`
    pub fn residual(&self, x: &[f64], value: f64) -> f64 {
        let n = self.len();
        let mut sum = 0.0;
        for i in 0..n {
            let mut r = (self.diagonal[i] - value) * x[i];
            if i > 0 {
                r += self.off_diagonal[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                r += self.off_diagonal[i] * x[i + 1];
            }
            sum += r * r;
        }
        sum.sqrt()
    }

    /// The `k` lowest eigenpairs, ascending.
    pub fn lowest_eigenpairs(&self, k: usize, tol: f64) -> Result<Vec<Eigenpair>> {
        let values = self.lowest_eigenvalues(k, tol)?;
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
        for (index, &value) in values.iter().enumerate() {
            let v = self.inverse_iteration(value, &vectors, index)?;
            vectors.push(v);
        }
        Ok(values
            .into_iter()
            .zip(vectors)
            .map(|(value, vector)| Eigenpair { value, vector })
            .collect())
    }
}

/// LU factorization of `T - sigma I` with partial pivoting.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, sigma: f64, tiny: f64) -> Self {
        let n = t.len();
        let mut d: Vec<f64> = t.diagonal.iter().map(|v| v - sigma).collect();
        let mut dl = t.off_diagonal.clone();
        let mut du = t.off_diagonal.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let guard = |v: f64| if v == 0.0 { tiny } else { v };
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                d[i] = guard(d[i]);
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        d[n - 1] = guard(d[n - 1]);
        ShiftedLu {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut b = rhs.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
        // rescale to avoid overflow on the next solve
        let m = b.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if m > 0.0 && m.is_finite() {
            b.iter_mut().for_each(|v| *v /= m);
        }
        b
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let n = dot(x, x).sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}

fn fix_sign(x: &mut [f64]) {
    let max = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if let Some(first) = x.iter().find(|v| v.abs() > 1e-3 * max) {
        if *first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}
