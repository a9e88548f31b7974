//! Dense symmetric eigendecomposition and numerical-range extraction.
//!
//! The solver is the classical Householder tridiagonalization followed by
//! implicit QL iteration with Wilkinson-type shifts (the EISPACK `tred2` /
//! `tql2` pair). Every finite-dimensional bound in this crate reduces to the
//! extreme eigenvalues returned here.

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

/// QL sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS: usize = 30;

/// Default relative tolerance for decompositions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dense real symmetric matrix stored as its packed upper triangle (row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of the given size.
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![0.0; size * (size + 1) / 2],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from the packed upper triangle, rejecting non-finite values.
    pub fn from_upper(size: usize, entries: Vec<f64>) -> Result<Self> {
        if size == 0 {
            return Err(BoundError::InvalidInput("matrix size must be positive".into()));
        }
        if entries.len() != size * (size + 1) / 2 {
            return Err(BoundError::InvalidInput(format!(
                "expected {} packed entries for size {size}, got {}",
                size * (size + 1) / 2,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|x| !x.is_finite()) {
            return Err(BoundError::InvalidInput(format!(
                "non-finite entry at packed index {pos}"
            )));
        }
        Ok(Self { size, entries })
    }

    /// Builds a matrix from a full square array; only the upper triangle is read.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(BoundError::InvalidInput("matrix is not square".into()));
        }
        let mut entries = Vec::with_capacity(size * (size + 1) / 2);
        for (i, row) in rows.iter().enumerate() {
            entries.extend_from_slice(&row[i..]);
        }
        Self::from_upper(size, entries)
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in i..size {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..r hold size + (size-1) + ... + (size-r+1) entries
        r * self.size - r * r.saturating_sub(1) / 2 + (c - r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn packed(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[self.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.index(i, j);
        self.entries[k] = value;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.size {
            for j in i..self.size {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0.0)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Euclidean quadratic form vᵀ A v.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Row sums, i.e. A·1.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn scale(&mut self, c: f64) {
        for x in &mut self.entries {
            *x *= c;
        }
    }

    /// Matrix with entries A(perm[i], perm[j]), i.e. PᵀAP for the permutation matrix of `perm`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.size);
        SymMatrix::from_fn(self.size, |i, j| self.get(perm[i], perm[j]))
    }
}

/// Eigenvalues sorted non-increasing, optionally with eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Row-major n×n array; column `i` pairs with `eigenvalues[i]`.
    pub eigenvectors: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Column `i` of the eigenvector array.
    pub fn eigenvector(&self, i: usize) -> Option<Vec<f64>> {
        let n = self.eigenvalues.len();
        self.eigenvectors
            .as_ref()
            .map(|v| (0..n).map(|k| v[k * n + i]).collect())
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-14..=1e-6).contains(&tol) {
        return Err(BoundError::Domain(format!("tolerance {tol} outside [1e-14, 1e-6]")));
    }
    Ok(())
}

/// Full eigendecomposition with eigenvectors.
pub fn eigen_decompose(a: &SymMatrix, tol: f64) -> Result<Spectrum> {
    decompose(a, tol, true)
}

/// Eigenvalues only; skips the accumulation of the orthogonal transforms.
pub fn eigenvalues(a: &SymMatrix, tol: f64) -> Result<Vec<f64>> {
    decompose(a, tol, false).map(|s| s.eigenvalues)
}

/// Endpoints (m, M) of the numerical range, i.e. the extreme eigenvalues.
pub fn numerical_range(a: &SymMatrix, tol: f64) -> Result<(f64, f64)> {
    let ev = eigenvalues(a, tol)?;
    Ok((ev[ev.len() - 1], ev[0]))
}

fn decompose(a: &SymMatrix, tol: f64, vectors: bool) -> Result<Spectrum> {
    check_tol(tol)?;
    if a.entries.iter().any(|x| !x.is_finite()) {
        return Err(BoundError::InvalidInput("matrix has non-finite entries".into()));
    }
    let n = a.size;
    if n == 0 {
        return Err(BoundError::InvalidInput("empty matrix".into()));
    }
    let mut v = a.to_dense();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e, vectors);
    let deflate = f64::EPSILON.max(tol * 1e-6);
    ql_implicit(&mut v, &mut d, &mut e, vectors, deflate)?;

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep discovery order
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&i| d[i]).collect();
    let eigenvectors = vectors.then(|| {
        let mut out = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for k in 0..n {
                out[k * n + col] = v[k][src];
            }
        }
        out
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Householder reduction to tridiagonal form. On return `d` holds the
/// diagonal, `e[1..]` the subdiagonal and, when `vectors`, `v` the
/// accumulated orthogonal transform.
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], vectors: bool) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    if !vectors {
        for j in 0..n {
            d[j] = v[j][j];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL iteration on the tridiagonal (d, e).
fn ql_implicit(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], vectors: bool, deflate: f64) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= deflate * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(BoundError::NoConvergence {
                        index: l,
                        iterations: MAX_SWEEPS,
                    });
                }
                // Wilkinson shift from the leading 2×2 block
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if vectors {
                        for row in v.iter_mut() {
                            let h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= deflate * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
