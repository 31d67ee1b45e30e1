//! Dense complex matrices and the decompositions everything else is built on.
//!
//! The kernels are deliberately plain: cyclic Jacobi for Hermitian
//! eigenproblems, Hessenberg reduction followed by single-shift complex QR
//! for general eigenvalues, and one-sided Jacobi for singular values. They
//! target matrices of desk size (up to a few hundred rows).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative tolerance used unless an operation says otherwise.
pub const DEFAULT_TOL: f64 = 1e-9;

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
const QR_SWEEP_BUDGET: usize = 10_000;
const DEFLATION_TOL: f64 = 1e-12;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting a wrong length or
    /// non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}×{cols} matrix", data.len())));
        }
        let m = CMat { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Real matrix literal, e.g. `CMat::real(&[[1.0, 1.0], [0.0, 2.0]])`.
    pub fn real<const C: usize>(rows: &[[f64; C]]) -> Self {
        CMat::from_fn(rows.len(), C, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn complex<const C: usize>(rows: &[[C64; C]]) -> Self {
        CMat::from_fn(rows.len(), C, |i, j| rows[i][j])
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let v: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        CMat::diag(&v)
    }

    /// Matrix unit E_ij in an n×n ambient space.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    /// Column vector (n×1).
    pub fn column_vector(v: &[C64]) -> Self {
        CMat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// True when every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == ZERO))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn real_part(&self) -> CMat {
        self.map(|z| C64::new(z.re, 0.0))
    }

    pub fn imag_part(&self) -> CMat {
        self.map(|z| C64::new(z.im, 0.0))
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Trace pairing ⟨self, other⟩ = trace(other* · self).
    pub fn inner(&self, other: &CMat) -> C64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(x, y)| y.conj() * x).sum()
    }

    pub fn scale(&self, s: C64) -> CMat {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> CMat {
        self.map(|z| z * s)
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "matvec: dimension mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, &z) in v.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> CMat {
        let mut m = CMat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            m.set_column(j, c);
        }
        m
    }

    /// Sub-block with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> CMat {
        CMat::from_fn(rows.len(), cols.len(), |i, j| self[(rows.start + i, cols.start + j)])
    }

    /// Block-diagonal sum diag(self, other).
    pub fn direct_sum(&self, other: &CMat) -> CMat {
        let mut m = CMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn commutator(&self, other: &CMat) -> CMat {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &CMat) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>10.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

impl Mul<C64> for &CMat {
    type Output = CMat;
    fn mul(self, rhs: C64) -> CMat {
        self.scale(rhs)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.map(|z| -z)
    }
}

impl AddAssign<&CMat> for CMat {
    fn add_assign(&mut self, rhs: &CMat) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&CMat> for CMat {
    fn sub_assign(&mut self, rhs: &CMat) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ⟨x, y⟩ = Σ x_i · conj(y_i).
pub fn vec_inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

fn ensure_square(m: &CMat) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("expected a square matrix, got {}×{}", m.rows, m.cols)))
    }
}

/// Frobenius norm of m − m*.
pub fn hermitian_residual(m: &CMat) -> f64 {
    let n = m.rows;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (m[(i, j)] - m[(j, i)].conj()).norm_sqr();
        }
    }
    acc.sqrt()
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.rows;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the unitary matrix of eigenvectors (one per column).
#[derive(Clone, Debug)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermEig {
    /// Reassembles V·diag(f(λ))·V*.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            for i in 0..scaled.rows() {
                scaled[(i, j)] *= s;
            }
        }
        scaled.matmul(&self.vectors.adjoint())
    }
}

/// 2×2 unitary rotation that diagonalizes the Hermitian block
/// [[app, apq], [conj(apq), aqq]], returned as (u_pp, u_pq, u_qp, u_qq).
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> (C64, C64, C64, C64) {
    let abs = apq.norm();
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();
    (C64::new(c, 0.0), C64::new(s, 0.0), -pc * s, pc * c)
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
pub fn herm_eig(m: &CMat) -> Result<HermEig> {
    ensure_square(m)?;
    let n = m.rows;
    let scale = m.frobenius_norm();
    let residual = hermitian_residual(m);
    if residual > DEFAULT_TOL * scale {
        return Err(Error::NotHermitian { residual });
    }
    let mut a = CMat::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = CMat::identity(n);
    let target = JACOBI_TOL * scale;

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let (upp, upq, uqp, uqq) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NoConvergence("Jacobi sweep limit reached"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// Operator (spectral) norm: √(largest eigenvalue of m*·m).
pub fn op_norm(m: &CMat) -> f64 {
    if m.rows == 0 || m.cols == 0 {
        return 0.0;
    }
    if m.is_diagonal() {
        return m.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    let gram = if m.cols <= m.rows { m.adjoint().matmul(m) } else { m.matmul(&m.adjoint()) };
    match herm_eig(&gram) {
        Ok(eig) => eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
        // a non-finite input is the only way the Gram matrix fails
        Err(_) => f64::INFINITY,
    }
}

/// Singular values in descending order, by one-sided Jacobi.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let work = if m.rows >= m.cols { m.clone() } else { m.adjoint() };
    let cols = work.cols;
    let mut cols_data: Vec<Vec<C64>> = (0..cols).map(|j| work.column(j)).collect();
    for _ in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = cols_data[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols_data[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols_data[p].iter().zip(&cols_data[q]).map(|(x, y)| x.conj() * y).sum();
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let (upp, upq, uqp, uqq) = jacobi_rotation(alpha, beta, gamma);
                let (left, right) = cols_data.split_at_mut(q);
                for (xp, xq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (x, y) = (*xp, *xq);
                    *xp = x * upp + y * uqp;
                    *xq = x * upq + y * uqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols_data.iter().map(|c| vec_norm(c)).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn smallest_singular_value(m: &CMat) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Inverse by Gauss–Jordan elimination with partial pivoting. Rejects
/// matrices whose smallest singular value is at most `DEFAULT_TOL·‖m‖`.
pub fn invert(m: &CMat) -> Result<CMat> {
    invert_with_tol(m, DEFAULT_TOL)
}

pub fn invert_with_tol(m: &CMat, tol: f64) -> Result<CMat> {
    ensure_square(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(CMat::zeros(0, 0));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let sv = singular_values(m);
    let (smax, smin) = (sv[0], sv[n - 1]);
    if smax == 0.0 || smin <= tol * smax {
        return Err(Error::Singular { sigma_min: smin });
    }
    let mut a = m.clone();
    let mut inv = CMat::identity(n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm())).unwrap();
        if pivot != col {
            for k in 0..n {
                a.data.swap(pivot * n + k, col * n + k);
                inv.data.swap(pivot * n + k, col * n + k);
            }
        }
        let p = a[(col, col)];
        for k in 0..n {
            a[(col, k)] /= p;
            inv[(col, k)] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[(r, col)];
            if factor == ZERO {
                continue;
            }
            for k in 0..n {
                let (ack, ick) = (a[(col, k)], inv[(col, k)]);
                a[(r, k)] -= factor * ack;
                inv[(r, k)] -= factor * ick;
            }
        }
    }
    Ok(inv)
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(m: &CMat) -> CMat {
    let n = m.rows;
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let alpha = vec_norm(&x);
        if alpha == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let mut v = x;
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H ← (I − 2vv*/v*v) H
        for j in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            let f = dot * (2.0 / vnorm2);
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * f;
            }
        }
        // H ← H (I − 2vv*/v*v)
        for r in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| h[(r, k + 1 + i)] * vi).sum();
            let f = dot * (2.0 / vnorm2);
            for (i, vi) in v.iter().enumerate() {
                h[(r, k + 1 + i)] -= f * vi.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    h
}

/// Givens pair (c, s) with c real such that [[c, s], [−s̄, c]]·[x, y]ᵀ = [r, 0]ᵀ.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, ZERO);
    }
    let phase = if x.norm() > 0.0 { x / x.norm() } else { ONE };
    (x.norm() / r, phase * y.conj() / r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR step on the active window h[lo..=hi].
fn qr_step(h: &mut CMat, lo: usize, hi: usize, shift: C64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let (a, b) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = a * c + s * b;
            h[(k + 1, j)] = -s.conj() * a + b * c;
        }
        rotations.push((c, s));
    }
    for (idx, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 1).min(hi) {
            let (a, b) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = a * c + b * s.conj();
            h[(i, k + 1)] = -a * s + b * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

/// All n eigenvalues of a square matrix, with multiplicity.
pub fn eig_general(m: &CMat) -> Result<Vec<C64>> {
    ensure_square(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = m.frobenius_norm();
    if norm == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    let mut h = hessenberg(m);
    let deflate = DEFLATION_TOL * norm;
    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    let mut sweeps = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= deflate || sub <= f64::EPSILON * local {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        sweeps += 1;
        since_deflation += 1;
        if sweeps > QR_SWEEP_BUDGET {
            return Err(Error::NoConvergence("shifted QR exceeded its sweep budget"));
        }
        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + h[(hi, hi - 1)].norm() * C64::new(0.75, 0.43)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, lo, hi, shift);
    }
    Ok(h.diagonal())
}

/// Orthonormal basis of the (numerical) null space of a Hermitian positive
/// semidefinite matrix: eigenvectors whose eigenvalue is at most
/// `tol·λ_max`.
pub fn null_basis(g: &CMat, tol: f64) -> Result<Vec<Vec<C64>>> {
    let eig = herm_eig(g)?;
    let lmax = eig.values.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let threshold = tol * lmax;
    Ok(eig.values.iter().enumerate().filter(|(_, &l)| l <= threshold).map(|(j, _)| eig.vectors.column(j)).collect())
}

/// Unitary diagonalization of a normal matrix: eigenvalues μ_i and a unitary
/// V with m ≈ V·diag(μ)·V*.
pub fn normal_eig(m: &CMat, tol: f64) -> Result<(Vec<C64>, CMat)> {
    ensure_square(m)?;
    let n = m.rows;
    let scale = m.frobenius_norm();
    let residual = m.matmul(&m.adjoint()).distance(&m.adjoint().matmul(m));
    if residual > tol * scale * scale.max(1.0) {
        return Err(Error::NotNormal { residual });
    }
    let adj = m.adjoint();
    let herm = (m + &adj).scale_real(0.5);
    let skew = (m - &adj).scale(C64::new(0.0, -0.5));
    let eig = herm_eig(&herm)?;
    let mut v = eig.vectors;
    let gap = 1e-8 * (1.0 + scale);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end] - eig.values[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            let q = v.block(0..n, start..end);
            let compressed = q.adjoint().matmul(&skew).matmul(&q);
            let inner = herm_eig(&compressed)?;
            let rotated = q.matmul(&inner.vectors);
            for j in 0..end - start {
                v.set_column(start + j, &rotated.column(j));
            }
        }
        start = end;
    }
    let values = (0..n)
        .map(|j| {
            let col = v.column(j);
            vec_inner(&m.matvec(&col), &col)
        })
        .collect();
    Ok((values, v))
}

/// Least-squares solution of a·x ≈ b via the pseudo-inverse of a*a.
pub fn least_squares(a: &CMat, b: &[C64]) -> Result<Vec<C64>> {
    let gram = a.adjoint().matmul(a);
    let rhs = a.adjoint().matvec(b);
    let eig = herm_eig(&gram)?;
    let lmax = eig.values.iter().copied().fold(0.0, f64::max);
    let cutoff = 1e-13 * lmax;
    let n = gram.rows();
    let mut x = vec![ZERO; n];
    for j in 0..n {
        let l = eig.values[j];
        if l <= cutoff {
            continue;
        }
        let col = eig.vectors.column(j);
        let coeff = vec_inner(&rhs, &col) / l;
        for (xi, ci) in x.iter_mut().zip(&col) {
            *xi += coeff * ci;
        }
    }
    Ok(x)
}

/// Hausdorff distance between two finite point sets in ℂ.
pub fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_way = |x: &[C64], y: &[C64]| {
        x.iter().map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
