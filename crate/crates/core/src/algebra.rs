//! Finite-dimensional subalgebras of M_n(ℂ) and constructions on them.
//!
//! An [`Algebra`] is stored as a basis that is orthonormal for the trace
//! pairing ⟨x, y⟩ = trace(y*·x), so coordinates are plain inner products.
//! The full matrix algebra and the diagonal algebra keep their matrix-unit
//! bases implicit; that lets observables on large grids be tagged without
//! materializing n² basis matrices.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, herm_eig, least_squares, op_norm, CMat, C64, DEFAULT_TOL, ONE, ZERO};
use crate::optimize::nelder_mead;
use crate::random;

/// Relative size a candidate must keep after projection to enlarge a basis.
const MEMBERSHIP_TOL: f64 = 1e-9;

/// Scalar field an algebra is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Debug)]
enum Basis {
    Explicit(Vec<CMat>),
    /// Matrix units E_ii.
    Diagonal,
    /// Matrix units E_ij, row-major.
    Full,
}

/// A subalgebra of n×n complex matrices with cached structure flags.
#[derive(Clone, Debug)]
pub struct Algebra {
    n: usize,
    basis: Basis,
    field: Field,
    identity: Option<Vec<C64>>,
    abelian: bool,
    star_closed: bool,
    /// Orthonormal basis of the range of the identity, when the identity is
    /// a proper idempotent of the ambient space.
    compression: Option<CMat>,
}

/// How [`Algebra::generated`] closes a generating set.
#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub include_identity: bool,
    /// Close under the adjoint as well as under products.
    pub star: bool,
    pub field: Field,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { include_identity: false, star: true, field: Field::Complex }
    }
}

fn real_inner(field: Field, z: C64) -> C64 {
    match field {
        Field::Real => C64::new(z.re, 0.0),
        Field::Complex => z,
    }
}

/// Gram–Schmidt (two passes) of `candidates` against `basis`, appending the
/// normalized remainders that survive the membership tolerance.
fn extend_orthonormal(basis: &mut Vec<CMat>, candidates: impl IntoIterator<Item = CMat>, field: Field) {
    for cand in candidates {
        let norm0 = cand.frobenius_norm();
        if norm0 == 0.0 {
            continue;
        }
        let mut v = cand;
        for _ in 0..2 {
            for b in basis.iter() {
                let coef = real_inner(field, v.inner(b));
                if coef != ZERO {
                    v -= &b.scale(coef);
                }
            }
        }
        let norm = v.frobenius_norm();
        if norm > MEMBERSHIP_TOL * norm0 {
            basis.push(v.scale_real(1.0 / norm));
        }
    }
}

impl Algebra {
    /// M_n over ℂ.
    pub fn full(n: usize) -> Arc<Algebra> {
        Algebra::full_over(n, Field::Complex)
    }

    pub fn full_over(n: usize, field: Field) -> Arc<Algebra> {
        Arc::new(Algebra {
            n,
            basis: Basis::Full,
            field,
            identity: Some(Algebra::implicit_identity(n, Basis::Full)),
            abelian: n <= 1,
            star_closed: true,
            compression: None,
        })
    }

    /// Diagonal n×n matrices, i.e. functions on an n-point set.
    pub fn diagonal(n: usize) -> Arc<Algebra> {
        Algebra::diagonal_over(n, Field::Complex)
    }

    pub fn diagonal_over(n: usize, field: Field) -> Arc<Algebra> {
        Arc::new(Algebra {
            n,
            basis: Basis::Diagonal,
            field,
            identity: Some(Algebra::implicit_identity(n, Basis::Diagonal)),
            abelian: true,
            star_closed: true,
            compression: None,
        })
    }

    fn implicit_identity(n: usize, basis: Basis) -> Vec<C64> {
        match basis {
            Basis::Diagonal => vec![ONE; n],
            _ => {
                let mut c = vec![ZERO; n * n];
                for i in 0..n {
                    c[i * n + i] = ONE;
                }
                c
            }
        }
    }

    /// Smallest algebra containing `gens`, closed according to `opts`.
    pub fn generated(gens: &[CMat], opts: ClosureOptions) -> Result<Arc<Algebra>> {
        let n = match gens.first() {
            Some(g) => g.rows(),
            None => return Err(Error::InvalidArgument("no generators given".into())),
        };
        for g in gens {
            if !g.is_square() || g.rows() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator of shape {}×{} in a family of {n}×{n} matrices",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_finite() {
                return Err(Error::NonFinite);
            }
            if opts.field == Field::Real && !g.is_real() {
                return Err(Error::NotRealAlgebra);
            }
        }
        let mut seeds: Vec<CMat> = gens.to_vec();
        if opts.star {
            seeds.extend(gens.iter().map(CMat::adjoint));
        }
        if opts.include_identity {
            seeds.push(CMat::identity(n));
        }
        let mut basis = Vec::new();
        extend_orthonormal(&mut basis, seeds, opts.field);

        let mut frontier = 0;
        for _ in 0..=n * n {
            let len = basis.len();
            let mut candidates = Vec::new();
            for j in frontier..len {
                for i in 0..len {
                    candidates.push(basis[i].matmul(&basis[j]));
                    candidates.push(basis[j].matmul(&basis[i]));
                }
                if opts.star {
                    candidates.push(basis[j].adjoint());
                }
            }
            frontier = len;
            extend_orthonormal(&mut basis, candidates, opts.field);
            if basis.len() == len {
                break;
            }
        }
        Ok(Arc::new(Algebra::from_orthonormal(n, basis, opts.field)))
    }

    /// Algebra spanned by `mats`, which must already be closed under
    /// multiplication.
    pub fn from_spanning_set(mats: &[CMat], field: Field) -> Result<Arc<Algebra>> {
        let n = match mats.first() {
            Some(m) => m.rows(),
            None => return Err(Error::InvalidArgument("empty spanning set".into())),
        };
        if mats.iter().any(|m| !m.is_square() || m.rows() != n) {
            return Err(Error::DimensionMismatch("spanning matrices differ in shape".into()));
        }
        if field == Field::Real && mats.iter().any(|m| !m.is_real()) {
            return Err(Error::NotRealAlgebra);
        }
        let mut basis = Vec::new();
        extend_orthonormal(&mut basis, mats.iter().cloned(), field);
        let alg = Algebra::from_orthonormal(n, basis, field);
        let mut worst: f64 = 0.0;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let p = alg.basis_element(i).matmul(&alg.basis_element(j));
                worst = worst.max(alg.residual(&p));
            }
        }
        if worst > MEMBERSHIP_TOL {
            return Err(Error::NotClosed { residual: worst });
        }
        Ok(Arc::new(alg))
    }

    fn from_orthonormal(n: usize, basis: Vec<CMat>, field: Field) -> Algebra {
        let mut alg = Algebra {
            n,
            basis: Basis::Explicit(basis),
            field,
            identity: None,
            abelian: true,
            star_closed: true,
            compression: None,
        };
        let d = alg.dim();
        let elems = alg.basis();
        'outer: for i in 0..d {
            for j in i + 1..d {
                if elems[i].commutator(&elems[j]).frobenius_norm() > DEFAULT_TOL {
                    alg.abelian = false;
                    break 'outer;
                }
            }
        }
        alg.star_closed = elems.iter().all(|e| alg.residual(&e.adjoint()) <= MEMBERSHIP_TOL);
        alg.identity = alg.solve_identity();
        alg.compression = alg.identity.as_ref().and_then(|c| {
            let e = alg.from_coords(c);
            if e.distance(&CMat::identity(n)) <= DEFAULT_TOL * (n as f64).sqrt() {
                return None;
            }
            let eig = herm_eig(&e.matmul(&e.adjoint())).ok()?;
            let top = eig.values.last().copied().unwrap_or(0.0);
            let cols: Vec<Vec<C64>> =
                (0..n).filter(|&j| eig.values[j] > 0.5 * top).map(|j| eig.vectors.column(j)).collect();
            Some(CMat::from_columns(n, &cols))
        });
        alg
    }

    fn solve_identity(&self) -> Option<Vec<C64>> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        let elems = self.basis();
        // e·b_j = b_j and b_j·e = b_j, in algebra coordinates
        let mut a = CMat::zeros(2 * d * d, d);
        let mut rhs = vec![ZERO; 2 * d * d];
        for (i, ei) in elems.iter().enumerate() {
            for (j, ej) in elems.iter().enumerate() {
                let left = self.coords(&ei.matmul(ej));
                let right = self.coords(&ej.matmul(ei));
                for k in 0..d {
                    a[(j * d + k, i)] = left[k];
                    a[(d * d + j * d + k, i)] = right[k];
                }
            }
        }
        for j in 0..d {
            rhs[j * d + j] = ONE;
            rhs[d * d + j * d + j] = ONE;
        }
        let mut c = least_squares(&a, &rhs).ok()?;
        if self.field == Field::Real {
            c.iter_mut().for_each(|z| z.im = 0.0);
        }
        let e = self.from_coords(&c);
        let ok = elems.iter().all(|b| e.matmul(b).distance(b) <= 1e-8 && b.matmul(&e).distance(b) <= 1e-8);
        ok.then_some(c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        match &self.basis {
            Basis::Explicit(b) => b.len(),
            Basis::Diagonal => self.n,
            Basis::Full => self.n * self.n,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_star_closed(&self) -> bool {
        self.star_closed
    }

    pub fn basis_element(&self, i: usize) -> CMat {
        match &self.basis {
            Basis::Explicit(b) => b[i].clone(),
            Basis::Diagonal => CMat::unit(self.n, i, i),
            Basis::Full => CMat::unit(self.n, i / self.n, i % self.n),
        }
    }

    pub fn basis(&self) -> Vec<CMat> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Coordinates of the orthogonal projection of `m` onto the algebra.
    pub fn coords(&self, m: &CMat) -> Vec<C64> {
        assert_eq!((m.rows(), m.cols()), (self.n, self.n), "coords: ambient size mismatch");
        let raw: Vec<C64> = match &self.basis {
            Basis::Explicit(b) => b.iter().map(|e| m.inner(e)).collect(),
            Basis::Diagonal => m.diagonal(),
            Basis::Full => m.data().to_vec(),
        };
        match self.field {
            Field::Complex => raw,
            Field::Real => raw.into_iter().map(|z| C64::new(z.re, 0.0)).collect(),
        }
    }

    /// trace(ρ·e_i) for each basis element: the values on the basis of the
    /// functional a ↦ trace(ρ·a).
    pub fn trace_pairing(&self, rho: &CMat) -> Vec<C64> {
        assert_eq!((rho.rows(), rho.cols()), (self.n, self.n), "trace_pairing: ambient size mismatch");
        match &self.basis {
            Basis::Explicit(b) => b.iter().map(|e| rho.transpose().inner(&e.conj())).collect(),
            Basis::Diagonal => rho.diagonal(),
            Basis::Full => rho.transpose().into_data(),
        }
    }

    /// Whether the basis is the implicit set of diagonal matrix units, for
    /// which products of distinct basis elements vanish.
    pub fn is_diagonal_basis(&self) -> bool {
        matches!(self.basis, Basis::Diagonal)
    }

    pub fn from_coords(&self, c: &[C64]) -> CMat {
        assert_eq!(c.len(), self.dim(), "from_coords: wrong coordinate count");
        match &self.basis {
            Basis::Explicit(b) => {
                let mut m = CMat::zeros(self.n, self.n);
                for (e, &ci) in b.iter().zip(c) {
                    if ci != ZERO {
                        m += &e.scale(ci);
                    }
                }
                m
            }
            Basis::Diagonal => CMat::diag(c),
            Basis::Full => CMat::from_fn(self.n, self.n, |i, j| c[i * self.n + j]),
        }
    }

    pub fn project(&self, m: &CMat) -> CMat {
        self.from_coords(&self.coords(m))
    }

    /// Frobenius distance from `m` to the algebra.
    pub fn residual(&self, m: &CMat) -> f64 {
        match (&self.basis, self.field) {
            (Basis::Full, Field::Complex) => 0.0,
            (Basis::Full, Field::Real) => m.imag_part().frobenius_norm(),
            _ => m.distance(&self.project(m)),
        }
    }

    pub fn contains(&self, m: &CMat) -> bool {
        m.rows() == self.n
            && m.cols() == self.n
            && self.residual(m) <= DEFAULT_TOL * m.frobenius_norm().max(f64::MIN_POSITIVE)
    }

    pub fn identity_coords(&self) -> Option<&[C64]> {
        self.identity.as_deref()
    }

    pub fn identity_matrix(&self) -> Option<CMat> {
        self.identity.as_ref().map(|c| self.from_coords(c))
    }

    pub fn identity(self: &Arc<Self>) -> Option<Element> {
        self.identity_matrix().map(|m| Element { algebra: Arc::clone(self), matrix: m })
    }

    /// The algebra's identity, or the ambient identity when there is none
    /// (the unit adjoined by unitization acts as the ambient identity).
    pub fn unit_matrix(&self) -> CMat {
        self.identity_matrix().unwrap_or_else(|| CMat::identity(self.n))
    }

    /// Orthonormal columns spanning the range of the identity, when the
    /// identity is not the ambient identity.
    pub fn compression_basis(&self) -> Option<&CMat> {
        self.compression.as_ref()
    }

    /// Restriction of `m` to the range of the identity (the matrix itself
    /// when the identity is the ambient one or there is no identity).
    pub fn compress(&self, m: &CMat) -> CMat {
        match &self.compression {
            Some(q) => q.adjoint().matmul(m).matmul(q),
            None => m.clone(),
        }
    }

    /// Inverse of `m` inside the algebra (or its unitization).
    pub fn invert(&self, m: &CMat) -> Result<CMat> {
        match &self.compression {
            Some(q) => {
                let inv = linalg::invert(&self.compress(m))?;
                Ok(q.matmul(&inv).matmul(&q.adjoint()))
            }
            None => linalg::invert(m),
        }
    }

    /// Matrix of left multiplication by `m` in algebra coordinates.
    pub fn left_regular(&self, m: &CMat) -> CMat {
        let d = self.dim();
        let cols: Vec<Vec<C64>> = (0..d).map(|j| self.coords(&m.matmul(&self.basis_element(j)))).collect();
        CMat::from_columns(d, &cols)
    }

    /// Same ambient size and the same span.
    pub fn same_as(&self, other: &Algebra) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.n == other.n
            && self.dim() == other.dim()
            && self.field == other.field
            && (0..other.dim()).all(|i| self.residual(&other.basis_element(i)) <= MEMBERSHIP_TOL)
    }

    /// Tags `m` as an element of this algebra after a membership check.
    pub fn element(self: &Arc<Self>, m: CMat) -> Result<Element> {
        Element::new(self, m)
    }

    /// Same span viewed over another field.
    fn with_field(&self, field: Field) -> Algebra {
        let mut alg = self.clone();
        alg.field = field;
        alg
    }
}

/// Smallest *-closed algebra containing `gens` (and 𝟙 when asked).
pub fn algebra_from_generators(gens: &[CMat], include_identity: bool) -> Result<Arc<Algebra>> {
    Algebra::generated(gens, ClosureOptions { include_identity, ..ClosureOptions::default() })
}

/// The identity element, if the algebra has one.
pub fn find_identity(alg: &Arc<Algebra>) -> Option<Element> {
    alg.identity()
}

pub fn is_abelian(alg: &Algebra) -> bool {
    alg.is_abelian()
}

/// A matrix together with the algebra it belongs to.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<Algebra>,
    matrix: CMat,
}

impl Element {
    pub fn new(alg: &Arc<Algebra>, m: CMat) -> Result<Element> {
        if m.rows() != alg.n || m.cols() != alg.n {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} matrix in an algebra of {}×{} matrices",
                m.rows(),
                m.cols(),
                alg.n,
                alg.n
            )));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = alg.residual(&m);
        if residual > DEFAULT_TOL * m.frobenius_norm().max(1.0) {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(Element { algebra: Arc::clone(alg), matrix: m })
    }

    pub fn from_coords(alg: &Arc<Algebra>, c: &[C64]) -> Element {
        Element { algebra: Arc::clone(alg), matrix: alg.from_coords(c) }
    }

    /// Used where closure guarantees membership (products, sums, spectral
    /// functions of elements).
    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, m: CMat) -> Element {
        Element { algebra: Arc::clone(alg), matrix: m }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn coords(&self) -> Vec<C64> {
        self.algebra.coords(&self.matrix)
    }

    pub fn op_norm(&self) -> f64 {
        op_norm(&self.matrix)
    }

    /// a*, which must lie in the algebra.
    pub fn adjoint(&self) -> Result<Element> {
        Element::new(&self.algebra, self.matrix.adjoint())
    }

    pub fn scale(&self, s: C64) -> Element {
        Element::new_unchecked(&self.algebra, self.matrix.scale(s))
    }

    pub fn scale_real(&self, s: f64) -> Element {
        Element::new_unchecked(&self.algebra, self.matrix.scale_real(s))
    }

    /// Re-tags the element in another algebra containing it.
    pub fn lift(&self, alg: &Arc<Algebra>) -> Result<Element> {
        Element::new(alg, self.matrix.clone())
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        debug_assert_eq!(self.algebra.n, rhs.algebra.n);
        Element::new_unchecked(&self.algebra, self.matrix.matmul(&rhs.matrix))
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element::new_unchecked(&self.algebra, &self.matrix + &rhs.matrix)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element::new_unchecked(&self.algebra, &self.matrix - &rhs.matrix)
    }
}

/// Orthonormal basis of a subspace of an algebra (ideals, kernels).
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    vectors: Vec<CMat>,
    field: Field,
}

impl SubspaceBasis {
    /// Orthonormalized span of `mats`, each of which must lie in `alg`.
    pub fn span(alg: &Algebra, mats: &[CMat]) -> Result<SubspaceBasis> {
        if mats.iter().any(|m| !alg.contains(m)) {
            return Err(Error::NotSubspace);
        }
        let mut vectors = Vec::new();
        extend_orthonormal(&mut vectors, mats.iter().cloned(), alg.field);
        Ok(SubspaceBasis { vectors, field: alg.field })
    }

    pub fn zero() -> SubspaceBasis {
        SubspaceBasis { vectors: Vec::new(), field: Field::Complex }
    }

    pub(crate) fn from_orthonormal(vectors: Vec<CMat>, field: Field) -> SubspaceBasis {
        SubspaceBasis { vectors, field }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CMat] {
        &self.vectors
    }

    pub fn coords(&self, m: &CMat) -> Vec<C64> {
        self.vectors.iter().map(|v| real_inner(self.field, m.inner(v))).collect()
    }

    pub fn project(&self, m: &CMat) -> CMat {
        let mut p = CMat::zeros(m.rows(), m.cols());
        for (v, c) in self.vectors.iter().zip(self.coords(m)) {
            p += &v.scale(c);
        }
        p
    }

    pub fn residual(&self, m: &CMat) -> f64 {
        m.distance(&self.project(m))
    }
}

/// Which sides an ideal absorbs multiplication from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    TwoSided,
    LeftOnly,
    RightOnly,
    NotIdeal,
}

/// Classifies `s` by testing a·x and x·a for all basis pairs.
pub fn ideal_check(alg: &Algebra, s: &SubspaceBasis) -> Result<IdealKind> {
    if s.vectors.iter().any(|v| !alg.contains(v)) {
        return Err(Error::NotSubspace);
    }
    let mut left = true;
    let mut right = true;
    for i in 0..alg.dim() {
        let a = alg.basis_element(i);
        for x in &s.vectors {
            if left && s.residual(&a.matmul(x)) > MEMBERSHIP_TOL {
                left = false;
            }
            if right && s.residual(&x.matmul(&a)) > MEMBERSHIP_TOL {
                right = false;
            }
        }
        if !left && !right {
            break;
        }
    }
    Ok(match (left, right) {
        (true, true) => IdealKind::TwoSided,
        (true, false) => IdealKind::LeftOnly,
        (false, true) => IdealKind::RightOnly,
        (false, false) => IdealKind::NotIdeal,
    })
}

/// A/I realized on the orthogonal complement of I inside A.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    parent: Arc<Algebra>,
    ideal: SubspaceBasis,
    complement: Vec<CMat>,
    /// table[(i·k + j)·k + l] = l-th coset coordinate of c_i·c_j.
    table: Vec<C64>,
    identity: Option<Vec<C64>>,
}

pub fn quotient(alg: &Arc<Algebra>, ideal: &SubspaceBasis) -> Result<QuotientAlgebra> {
    if ideal_check(alg, ideal)? != IdealKind::TwoSided {
        return Err(Error::NotTwoSided);
    }
    if ideal.dim() >= alg.dim() {
        return Err(Error::NotProper);
    }
    let mut all = ideal.vectors.clone();
    let start = all.len();
    extend_orthonormal(&mut all, alg.basis(), alg.field);
    let complement = all.split_off(start);
    let mut q = QuotientAlgebra {
        parent: Arc::clone(alg),
        ideal: SubspaceBasis { vectors: all, field: alg.field },
        complement,
        table: Vec::new(),
        identity: None,
    };
    let k = q.dim();
    let mut table = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            table.extend(q.coset(&q.complement[i].matmul(&q.complement[j])));
        }
    }
    q.table = table;
    q.identity = alg.identity_matrix().map(|e| q.coset(&e));
    Ok(q)
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn ideal(&self) -> &SubspaceBasis {
        &self.ideal
    }

    /// Coordinates of a + I.
    pub fn coset(&self, m: &CMat) -> Vec<C64> {
        self.complement.iter().map(|c| real_inner(self.parent.field, m.inner(c))).collect()
    }

    /// [x][y] from the multiplication table.
    pub fn mul_cosets(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let k = self.dim();
        let mut out = vec![ZERO; k];
        for (i, xi) in x.iter().enumerate().take(k) {
            for (j, yj) in y.iter().enumerate().take(k) {
                let xy = xi * yj;
                if xy == ZERO {
                    continue;
                }
                let row = &self.table[(i * k + j) * k..(i * k + j + 1) * k];
                for (o, t) in out.iter_mut().zip(row) {
                    *o += xy * t;
                }
            }
        }
        out
    }

    /// [𝟙], when the parent is unital.
    pub fn identity(&self) -> Option<&[C64]> {
        self.identity.as_deref()
    }

    /// Canonical representative of a coset (the one orthogonal to I).
    pub fn representative(&self, coset: &[C64]) -> CMat {
        let mut m = CMat::zeros(self.parent.n, self.parent.n);
        for (c, &z) in self.complement.iter().zip(coset) {
            m += &c.scale(z);
        }
        m
    }
}

/// Tuning for [`quotient_norm_with`].
#[derive(Clone, Copy, Debug)]
pub struct QuotientNormOptions {
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for QuotientNormOptions {
    fn default() -> Self {
        QuotientNormOptions { budget: 20_000, restarts: 8, seed: 0 }
    }
}

/// inf over b ∈ I of ‖a + b‖, minimized numerically.
pub fn quotient_norm(q: &QuotientAlgebra, a: &Element, budget: usize) -> Result<f64> {
    quotient_norm_with(q, a, QuotientNormOptions { budget, ..QuotientNormOptions::default() })
}

pub fn quotient_norm_with(q: &QuotientAlgebra, a: &Element, opts: QuotientNormOptions) -> Result<f64> {
    let a = Element::new(&q.parent, a.matrix.clone())?;
    let base = a.op_norm();
    let ideal = q.ideal.vectors();
    if ideal.is_empty() || base == 0.0 {
        return Ok(base);
    }
    let complex = q.parent.field == Field::Complex;
    let per_coord = if complex { 2 } else { 1 };
    let params = per_coord * ideal.len();
    let shifted = |p: &[f64]| {
        let mut m = a.matrix.clone();
        for (i, v) in ideal.iter().enumerate() {
            let c = if complex { C64::new(p[2 * i], p[2 * i + 1]) } else { C64::new(p[i], 0.0) };
            m += &v.scale(c);
        }
        m
    };
    let mut objective = |p: &[f64]| op_norm(&shifted(p));

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(opts.restarts + 1);
    let proj = q.ideal.coords(&a.matrix);
    starts.push(if complex {
        proj.iter().flat_map(|z| [-z.re, -z.im]).collect()
    } else {
        proj.iter().map(|z| -z.re).collect()
    });
    let mut rng = random::rng(opts.seed);
    for _ in 0..opts.restarts {
        starts.push((0..params).map(|_| random::gaussian(&mut rng) * base).collect());
    }

    let per_run = (opts.budget / starts.len()).max(params + 2);
    let mut best = base;
    let mut spent = 0usize;
    let mut converged = false;
    for start in &starts {
        if spent >= opts.budget {
            break;
        }
        let run = nelder_mead(&mut objective, start, 0.25 * base, per_run, 1e-13, 1e-9 * base);
        spent += run.evaluations;
        converged |= run.converged;
        best = best.min(run.value);
    }
    if !converged {
        return Err(Error::BudgetExceeded { evaluations: spent });
    }
    Ok(best)
}

/// A with an identity adjoined, realized as block matrices
/// (a, x) ↦ diag(a + x·I_n, x).
#[derive(Clone, Debug)]
pub struct Unitization {
    pub algebra: Arc<Algebra>,
    base: Arc<Algebra>,
    adjoined: bool,
}

pub fn unitize(alg: &Arc<Algebra>) -> Result<Unitization> {
    if alg.is_unital() {
        return Ok(Unitization { algebra: Arc::clone(alg), base: Arc::clone(alg), adjoined: false });
    }
    let n = alg.n;
    let mut span: Vec<CMat> = alg.basis().iter().map(|e| e.direct_sum(&CMat::zeros(1, 1))).collect();
    span.push(CMat::identity(n + 1));
    let algebra = Algebra::from_spanning_set(&span, alg.field)?;
    Ok(Unitization { algebra, base: Arc::clone(alg), adjoined: true })
}

impl Unitization {
    /// Whether an identity was actually adjoined.
    pub fn adjoined(&self) -> bool {
        self.adjoined
    }

    /// Set when the input already had an identity and was returned as is.
    pub fn notice(&self) -> Option<&'static str> {
        (!self.adjoined).then_some("algebra already unital; returned unchanged")
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    /// (a, x) as an element of the unitization.
    pub fn pair(&self, a: &CMat, x: C64) -> Result<Element> {
        Element::new(&self.base, a.clone())?;
        if !self.adjoined {
            let one = self.base.unit_matrix();
            return Element::new(&self.algebra, a + &one.scale(x));
        }
        let n = self.base.n;
        let top = a + &CMat::identity(n).scale(x);
        Element::new(&self.algebra, top.direct_sum(&CMat::diag(&[x])))
    }

    pub fn embed(&self, a: &Element) -> Result<Element> {
        self.pair(a.matrix(), ZERO)
    }

    /// Recovers (a, x).
    pub fn split(&self, u: &Element) -> (CMat, C64) {
        if !self.adjoined {
            return (u.matrix.clone(), ZERO);
        }
        let n = self.base.n;
        let x = u.matrix[(n, n)];
        let a = &u.matrix.block(0..n, 0..n) - &CMat::identity(n).scale(x);
        (a, x)
    }

    /// ‖(a, x)‖₁ = ‖a‖ + |x|.
    pub fn one_norm(&self, u: &Element) -> f64 {
        let (a, x) = self.split(u);
        op_norm(&a) + x.norm()
    }
}

/// Complex scalars adjoined to a real algebra: (a, b) ↦ a + i·b.
#[derive(Clone, Debug)]
pub struct Complexification {
    pub algebra: Arc<Algebra>,
    real: Arc<Algebra>,
}

pub fn complexify(alg: &Arc<Algebra>) -> Result<Complexification> {
    if alg.field != Field::Real || alg.basis().iter().any(|e| !e.is_real()) {
        return Err(Error::NotRealAlgebra);
    }
    Ok(Complexification { algebra: Arc::new(alg.with_field(Field::Complex)), real: Arc::clone(alg) })
}

impl Complexification {
    pub fn real(&self) -> &Arc<Algebra> {
        &self.real
    }

    pub fn pair(&self, a: &CMat, b: &CMat) -> Result<Element> {
        Element::new(&self.real, a.clone())?;
        Element::new(&self.real, b.clone())?;
        Ok(Element::new_unchecked(&self.algebra, a + &b.scale(crate::linalg::I)))
    }

    /// Embedding a ↦ (a, 0).
    pub fn embed(&self, a: &Element) -> Result<Element> {
        self.pair(a.matrix(), &CMat::zeros(a.matrix.rows(), a.matrix.cols()))
    }

    pub fn split(&self, z: &Element) -> (CMat, CMat) {
        (z.matrix.real_part(), z.matrix.imag_part())
    }

    /// ‖S_a + i·S_b‖ for the left-regular representation on the
    /// complexified coordinate space (trace inner product).
    pub fn regular_rep_norm(&self, z: &Element) -> f64 {
        op_norm(&self.algebra.left_regular(z.matrix()))
    }
}

/// A ⊕ B as block-diagonal matrices.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub algebra: Arc<Algebra>,
    left: Arc<Algebra>,
    right: Arc<Algebra>,
}

pub fn direct_sum_algebras(a: &Arc<Algebra>, b: &Arc<Algebra>) -> DirectSum {
    let (na, nb) = (a.n, b.n);
    let mut basis: Vec<CMat> = a.basis().iter().map(|e| e.direct_sum(&CMat::zeros(nb, nb))).collect();
    basis.extend(b.basis().iter().map(|f| CMat::zeros(na, na).direct_sum(f)));
    let field = if a.field == Field::Real && b.field == Field::Real { Field::Real } else { Field::Complex };
    let algebra = Arc::new(Algebra::from_orthonormal(na + nb, basis, field));
    DirectSum { algebra, left: Arc::clone(a), right: Arc::clone(b) }
}

impl DirectSum {
    pub fn pair(&self, x: &CMat, y: &CMat) -> Result<Element> {
        Element::new(&self.left, x.clone())?;
        Element::new(&self.right, y.clone())?;
        Ok(Element::new_unchecked(&self.algebra, x.direct_sum(y)))
    }

    pub fn components(&self, z: &Element) -> (CMat, CMat) {
        let (na, nb) = (self.left.n, self.right.n);
        (z.matrix.block(0..na, 0..na), z.matrix.block(na..na + nb, na..na + nb))
    }
}
