//! Spectra, the spectral radius, Neumann series, exponentials and the
//! functional calculus of algebra elements.
//!
//! Elements of a non-unital algebra are evaluated in its unitization: their
//! spectrum always contains 0, and functions that need an identity
//! (resolvent, exponential, Neumann series) return elements of the unitized
//! algebra unless the adjoined scalar part of the result vanishes.

use std::sync::Arc;

use crate::algebra::{unitize, Algebra, Element, Field};
use crate::error::{Error, Result};
use crate::linalg::{eig_general, hausdorff, herm_eig, normal_eig, op_norm, CMat, C64, DEFAULT_TOL, ZERO};

/// Deduplicated spectrum of an element.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub points: Vec<C64>,
    pub radius: f64,
    pub field_mode: Field,
}

/// Clustering radius used to merge eigenvalues for a spectrum of radius `r`.
pub fn cluster_radius(r: f64) -> f64 {
    1e-7 * (1.0 + r)
}

/// An element of an algebra with an identity, possibly after adjoining one.
struct UnitalView {
    algebra: Arc<Algebra>,
    matrix: CMat,
    unit: CMat,
    /// Present when the identity was adjoined; used to map results back.
    base: Option<Arc<Algebra>>,
}

impl UnitalView {
    fn of(a: &Element) -> Result<UnitalView> {
        let alg = a.algebra();
        if let Some(unit) = alg.identity_matrix() {
            return Ok(UnitalView { algebra: Arc::clone(alg), matrix: a.matrix().clone(), unit, base: None });
        }
        let u = unitize(alg)?;
        let n = alg.ambient_dim();
        Ok(UnitalView {
            matrix: a.matrix().direct_sum(&CMat::zeros(1, 1)),
            unit: CMat::identity(n + 1),
            algebra: u.algebra,
            base: Some(Arc::clone(alg)),
        })
    }

    /// Wraps a result; drops back to the original algebra when no multiple
    /// of the adjoined identity is present.
    fn finish(&self, m: CMat) -> Element {
        if let Some(base) = &self.base {
            let n = base.ambient_dim();
            let x = m[(n, n)];
            if x.norm() <= DEFAULT_TOL * m.max_abs().max(1.0) {
                return Element::new_unchecked(base, m.block(0..n, 0..n));
            }
        }
        Element::new_unchecked(&self.algebra, m)
    }

    fn invert(&self, m: &CMat) -> Result<CMat> {
        self.algebra.invert(m)
    }
}

/// Eigenvalues of `a` as an element of its (unitized) algebra, with
/// multiplicity.
pub fn eigenvalues(a: &Element) -> Result<Vec<C64>> {
    let alg = a.algebra();
    if alg.is_unital() {
        return eig_general(&alg.compress(a.matrix()));
    }
    let mut eigs = eig_general(a.matrix())?;
    eigs.push(ZERO);
    Ok(eigs)
}

/// Merges points closer than `radius`, replacing each cluster by its mean.
pub fn cluster(points: &[C64], radius: f64) -> Vec<C64> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for p in sorted {
        match clusters.iter_mut().find(|(c, k)| (c / *k as f64 - p).norm() <= radius) {
            Some((sum, k)) => {
                *sum += p;
                *k += 1;
            }
            None => clusters.push((p, 1)),
        }
    }
    let mut out: Vec<C64> = clusters.into_iter().map(|(s, k)| s / k as f64).collect();
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out
}

pub fn spectrum(a: &Element, field_mode: Field) -> Result<SpectrumReport> {
    let eigs = eigenvalues(a)?;
    let full_radius = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = cluster_radius(full_radius);
    let mut points = cluster(&eigs, radius);
    if field_mode == Field::Real {
        points = points.into_iter().filter(|z| z.im.abs() <= radius).map(|z| C64::new(z.re, 0.0)).collect();
    }
    let radius = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SpectrumReport { points, radius, field_mode })
}

/// max |λ| over the complex spectrum.
pub fn spectral_radius(a: &Element) -> Result<f64> {
    Ok(spectrum(a, Field::Complex)?.radius)
}

/// (a − z𝟙)⁻¹.
pub fn resolvent(a: &Element, z: C64) -> Result<Element> {
    let spec = spectrum(a, Field::Complex)?;
    let distance = spec.points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min);
    if distance <= cluster_radius(spec.radius) {
        return Err(Error::SingularResolvent { distance });
    }
    let view = UnitalView::of(a)?;
    let shifted = &view.matrix - &view.unit.scale(z);
    let inv = view.invert(&shifted).map_err(|_| Error::SingularResolvent { distance })?;
    Ok(view.finish(inv))
}

/// The sequence n ↦ ‖aⁿ‖^{1/n} sampled at powers of two.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusTrace {
    /// (n, ‖aⁿ‖^{1/n}) for n = 1, 2, 4, … ≤ n_max, then n_max itself.
    pub entries: Vec<(u64, f64)>,
    /// ln ‖aⁿ‖ for each entry (−∞ once a power vanishes).
    pub log_norms: Vec<f64>,
    /// Last entry of the trace, ‖a^{n_max}‖^{1/n_max}.
    pub final_root: f64,
    /// (‖aⁿ‖ / ‖a^{n/2}‖)^{2/n} at the largest power of two, which cancels
    /// the constant factor in ‖aⁿ‖ ≈ C·rⁿ.
    pub estimate: f64,
    /// Smallest entry; never below the eigenvalue radius.
    pub infimum: f64,
    /// max |λ| from the eigenvalues.
    pub eigen_radius: f64,
    /// |estimate − eigen_radius|.
    pub gap: f64,
}

/// Power norms by repeated squaring in log scale: each stored power is
/// renormalized to norm 1 and its logarithmic scale tracked separately, so
/// no intermediate matrix leaves the floating range.
pub fn spectral_radius_limit(a: &Element, n_max: u64) -> Result<RadiusTrace> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let eigen_radius = spectral_radius(a)?;
    let mut entries = Vec::new();
    let mut log_norms = Vec::new();
    let record = |entries: &mut Vec<(u64, f64)>, logs: &mut Vec<f64>, n: u64, log: f64| -> Result<()> {
        let root = if log == f64::NEG_INFINITY { 0.0 } else { (log / n as f64).exp() };
        if !root.is_finite() || log.is_nan() {
            return Err(Error::Overflow { partial: entries.clone() });
        }
        entries.push((n, root));
        logs.push(log);
        Ok(())
    };

    // current power a^p = exp(scale)·unit_power with ‖unit_power‖ = 1
    let norm = op_norm(a.matrix());
    let mut power = if norm > 0.0 { a.matrix().scale_real(1.0 / norm) } else { a.matrix().clone() };
    let mut scale = if norm > 0.0 { norm.ln() } else { f64::NEG_INFINITY };
    let mut p: u64 = 1;
    record(&mut entries, &mut log_norms, 1, scale)?;

    // binary exponentiation accumulator for a^{n_max}
    let mut acc: Option<(CMat, f64)> = None;
    let mut remaining = n_max;
    loop {
        if remaining & 1 == 1 {
            acc = Some(match acc {
                None => (power.clone(), scale),
                Some((m, s)) => {
                    let prod = m.matmul(&power);
                    let nu = op_norm(&prod);
                    if nu > 0.0 {
                        (prod.scale_real(1.0 / nu), s + scale + nu.ln())
                    } else {
                        (prod, f64::NEG_INFINITY)
                    }
                }
            });
        }
        remaining >>= 1;
        if remaining == 0 || p > n_max / 2 {
            break;
        }
        let sq = power.matmul(&power);
        let nu = op_norm(&sq);
        p *= 2;
        if nu > 0.0 && scale.is_finite() {
            power = sq.scale_real(1.0 / nu);
            scale = 2.0 * scale + nu.ln();
        } else {
            power = sq;
            scale = f64::NEG_INFINITY;
        }
        record(&mut entries, &mut log_norms, p, scale)?;
    }
    if p != n_max {
        let (_, s) = acc.expect("n_max ≥ 1 sets at least one bit");
        record(&mut entries, &mut log_norms, n_max, s)?;
    }

    let final_root = entries.last().map(|e| e.1).unwrap_or(0.0);
    let infimum = entries.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    // ratio estimate from the last two powers of two
    let pow2: Vec<usize> = (0..entries.len()).filter(|&i| entries[i].0.is_power_of_two()).collect();
    let estimate = match pow2.as_slice() {
        [.., i, j] if entries[*j].0 >= 2 => {
            let (lo, hi) = (log_norms[*i], log_norms[*j]);
            if hi == f64::NEG_INFINITY {
                0.0
            } else {
                ((hi - lo) / (entries[*j].0 - entries[*i].0) as f64).exp()
            }
        }
        _ => final_root,
    };
    Ok(RadiusTrace {
        entries,
        log_norms,
        final_root,
        estimate,
        infimum,
        eigen_radius,
        gap: (estimate - eigen_radius).abs(),
    })
}

/// (𝟙 − a)⁻¹ = Σ aᵏ, summed until a term's norm is at most tol·(1 − ‖a‖).
pub fn neumann_inverse(a: &Element, tol: f64) -> Result<Element> {
    let norm = a.op_norm();
    if norm >= 1.0 {
        return Err(Error::NotContractive { norm });
    }
    let view = UnitalView::of(a)?;
    let stop = tol * (1.0 - norm);
    let mut term = view.unit.clone();
    let mut sum = view.unit.clone();
    for _ in 0..100_000 {
        term = term.matmul(&view.matrix);
        sum += &term;
        if term.frobenius_norm() <= stop {
            return Ok(view.finish(sum));
        }
    }
    Err(Error::NoConvergence("Neumann series did not reach the requested tolerance"))
}

const EXP_TAYLOR_TERMS: usize = 20;

/// exp(a) by scaling and squaring.
pub fn exp_element(a: &Element) -> Result<Element> {
    let view = UnitalView::of(a)?;
    Ok(view.finish(exp_matrix(&view.matrix, &view.unit)))
}

/// exp(m) around the given identity: scale m by 2⁻ˢ so its norm is at most
/// 1/2, sum the Taylor series, then square s times.
pub(crate) fn exp_matrix(m: &CMat, unit: &CMat) -> CMat {
    let norm = op_norm(m);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let x = m.scale_real(0.5f64.powi(squarings));
    let mut term = unit.clone();
    let mut sum = unit.clone();
    for k in 1..=EXP_TAYLOR_TERMS {
        term = term.matmul(&x).scale_real(1.0 / k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Σ coeffs[k]·aᵏ by Horner's rule, coefficients in ascending degree.
pub fn poly_apply(a: &Element, coeffs: &[C64]) -> Result<Element> {
    let view = UnitalView::of(a)?;
    let mut acc = CMat::zeros(view.unit.rows(), view.unit.cols());
    for &c in coeffs.iter().rev() {
        acc = &acc.matmul(&view.matrix) + &view.unit.scale(c);
    }
    Ok(view.finish(acc))
}

/// Flags and residuals behind them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub hermitian: bool,
    pub unitary: bool,
    pub normal: bool,
    pub positive: bool,
    pub hermitian_residual: f64,
    pub normal_residual: f64,
    pub unitary_residual: f64,
    pub min_eigenvalue: Option<f64>,
}

pub fn classify(a: &Element) -> Classification {
    classify_with(a, DEFAULT_TOL)
}

pub fn classify_with(a: &Element, tol: f64) -> Classification {
    let m = a.matrix();
    let adj = m.adjoint();
    let scale = m.frobenius_norm().max(1.0);
    let hermitian_residual = m.distance(&adj);
    let hermitian = hermitian_residual <= tol * scale;
    let normal_residual = m.matmul(&adj).distance(&adj.matmul(m));
    let normal = normal_residual <= tol * scale * scale;
    let unitary_residual = match a.algebra().identity_matrix() {
        Some(e) => m.matmul(&adj).distance(&e).max(adj.matmul(m).distance(&e)),
        None => f64::INFINITY,
    };
    let unitary = unitary_residual <= tol * scale;
    let min_eigenvalue = if hermitian {
        let h = a.algebra().compress(&(m + &adj).scale_real(0.5));
        herm_eig(&h).ok().and_then(|e| e.values.first().copied())
    } else {
        None
    };
    let positive = min_eigenvalue.is_some_and(|l| l >= -tol * scale);
    Classification {
        hermitian,
        unitary,
        normal,
        positive,
        hermitian_residual,
        normal_residual,
        unitary_residual,
        min_eigenvalue,
    }
}

/// The positive square root.
pub fn sqrt_positive(a: &Element) -> Result<Element> {
    let c = classify(a);
    if !c.positive {
        return Err(Error::NotPositive(match c.min_eigenvalue {
            Some(l) => format!("smallest eigenvalue {l:.3e} is negative"),
            None => format!("element is not Hermitian (residual {:.3e})", c.hermitian_residual),
        }));
    }
    let h = (a.matrix() + &a.matrix().adjoint()).scale_real(0.5);
    let eig = herm_eig(&h)?;
    let root = eig.reconstruct_with(|l| C64::new(l.max(0.0).sqrt(), 0.0));
    Element::new(a.algebra(), root)
}

/// f(a) = U·f(Λ)·U* for normal a.
pub fn func_calc(a: &Element, f: impl Fn(C64) -> C64) -> Result<Element> {
    let view = UnitalView::of(a)?;
    let alg = &view.algebra;
    let compressed = alg.compress(&view.matrix);
    let (values, v) = normal_eig(&compressed, DEFAULT_TOL)?;
    let k = values.len();
    let mut scaled = v.clone();
    for (j, &l) in values.iter().enumerate() {
        let fl = f(l);
        for i in 0..k {
            scaled[(i, j)] *= fl;
        }
    }
    let inner = scaled.matmul(&v.adjoint());
    let m = match alg.compression_basis() {
        Some(q) => q.matmul(&inner).matmul(&q.adjoint()),
        None => inner,
    };
    Ok(view.finish(m))
}

/// Test of ab − ba against multiples of the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorReport {
    pub trace_value: C64,
    pub scalar_residual: f64,
    pub lambda_candidate: C64,
    /// ab − ba is a multiple of 𝟙 within tolerance.
    pub scalar: bool,
}

pub fn commutator_scalar_test(a: &Element, b: &Element) -> CommutatorReport {
    let c = a.matrix().commutator(b.matrix());
    let e = a.algebra().unit_matrix();
    let trace_value = c.trace();
    let lambda_candidate = trace_value / e.trace().re;
    let scalar_residual = c.distance(&e.scale(lambda_candidate));
    let scale = (a.matrix().frobenius_norm() * b.matrix().frobenius_norm()).max(1.0);
    CommutatorReport { trace_value, scalar_residual, lambda_candidate, scalar: scalar_residual <= DEFAULT_TOL * scale }
}

/// Hausdorff distance between σ(ab)∖{0} and σ(ba)∖{0}.
pub fn spec_symmetry_check(a: &Element, b: &Element) -> Result<f64> {
    let ab = eig_general(&a.matrix().matmul(b.matrix()))?;
    let ba = eig_general(&b.matrix().matmul(a.matrix()))?;
    let r = ab.iter().chain(&ba).map(|z| z.norm()).fold(0.0, f64::max);
    let radius = cluster_radius(r);
    let nonzero = |v: &[C64]| cluster(&v.iter().copied().filter(|z| z.norm() > radius).collect::<Vec<_>>(), radius);
    Ok(hausdorff(&nonzero(&ab), &nonzero(&ba)))
}

/// Plain partial sums of the exponential series; kept for cross-checks.
pub fn exp_series(m: &CMat, unit: &CMat, terms: usize) -> CMat {
    let mut term = unit.clone();
    let mut sum = unit.clone();
    for k in 1..terms {
        term = term.matmul(m).scale_real(1.0 / k as f64);
        sum += &term;
    }
    sum
}

/// Multiplicative inverse inside the algebra, if the element is invertible.
pub fn inverse(a: &Element) -> Result<Element> {
    let view = UnitalView::of(a)?;
    Ok(view.finish(view.invert(&view.matrix)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ClosureOptions;
    use crate::linalg::{self, ONE};
    use crate::random;
    use std::f64::consts::{E, PI};

    fn m2(m: CMat) -> Element {
        Algebra::full(2).element(m).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close_sets(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && hausdorff(a, b) <= tol
    }

    #[test]
    fn spectrum_examples() {
        let a = m2(CMat::real(&[[3.0, 2.0], [1.0, 4.0]]));
        let s = spectrum(&a, Field::Complex).unwrap();
        assert!(close_sets(&s.points, &[c(2.0, 0.0), c(5.0, 0.0)], 1e-10));
        assert!((s.radius - 5.0).abs() < 1e-10);

        let j = m2(CMat::real(&[[0.0, -1.0], [1.0, 0.0]]));
        let real = spectrum(&j, Field::Real).unwrap();
        assert!(real.points.is_empty());
        assert_eq!(real.radius, 0.0);
        let cx = spectrum(&j, Field::Complex).unwrap();
        assert!(close_sets(&cx.points, &[c(0.0, -1.0), c(0.0, 1.0)], 1e-10));

        let n = m2(CMat::unit(2, 0, 1));
        let s = spectrum(&n, Field::Complex).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.points[0].norm() < 1e-7);
    }

    #[test]
    fn spectrum_of_a_non_unital_element_contains_zero() {
        let corner =
            Algebra::generated(&[CMat::unit(2, 0, 1)], ClosureOptions { star: false, ..Default::default() }).unwrap();
        let a = corner.element(CMat::unit(2, 0, 1)).unwrap();
        let s = spectrum(&a, Field::Complex).unwrap();
        assert_eq!(s.points, vec![ZERO]);
    }

    #[test]
    fn spectrum_in_a_corner_algebra_ignores_the_complement() {
        // algebra of matrices supported on the first coordinate, identity E11
        let corner = Algebra::from_spanning_set(&[CMat::unit(2, 0, 0)], Field::Complex).unwrap();
        let a = corner.element(CMat::unit(2, 0, 0).scale_real(3.0)).unwrap();
        let s = spectrum(&a, Field::Complex).unwrap();
        assert!(close_sets(&s.points, &[c(3.0, 0.0)], 1e-12));
        let inv = inverse(&a).unwrap();
        assert!(inv.matrix().distance(&CMat::unit(2, 0, 0).scale_real(1.0 / 3.0)) < 1e-12);
    }

    #[test]
    fn resolvent_examples() {
        let zero = m2(CMat::zeros(2, 2));
        let r = resolvent(&zero, ONE).unwrap();
        assert!(r.matrix().distance(&CMat::identity(2).scale_real(-1.0)) < 1e-14);

        let d = Algebra::full(1).element(CMat::real(&[[2.0]])).unwrap();
        let r = resolvent(&d, ONE).unwrap();
        assert!(r.matrix().distance(&CMat::real(&[[1.0]])) < 1e-14);

        let a = m2(CMat::real(&[[3.0, 2.0], [1.0, 4.0]]));
        assert!(matches!(resolvent(&a, c(2.0, 0.0)), Err(Error::SingularResolvent { .. })));

        let mut rng = random::rng(5);
        let alg = Algebra::full(3);
        for _ in 0..10 {
            let a = random::element(&mut rng, &alg);
            let (z, w) = (c(7.0, 1.0), c(-6.5, 2.0));
            let fz = resolvent(&a, z).unwrap();
            let fw = resolvent(&a, w).unwrap();
            let lhs = fz.matrix() - fw.matrix();
            let rhs = fz.matrix().matmul(fw.matrix()).scale(z - w);
            assert!(lhs.distance(&rhs) <= 1e-9);
        }
    }

    #[test]
    fn radius_trace_examples() {
        let a = m2(CMat::real(&[[1.0, 1.0], [0.0, 2.0]]));
        let t = spectral_radius_limit(&a, 100).unwrap();
        let last = *t.entries.last().unwrap();
        assert_eq!(last.0, 100);
        assert!((last.1 - 2.00694).abs() < 1e-4, "{}", last.1);
        let ns: Vec<u64> = t.entries.iter().map(|e| e.0).collect();
        assert_eq!(ns, vec![1, 2, 4, 8, 16, 32, 64, 100]);

        let t = spectral_radius_limit(&a, 1024).unwrap();
        assert!((t.final_root - 2.0).abs() < 1e-3);
        assert!(t.gap < 1e-3);

        let n = m2(CMat::unit(2, 0, 1));
        let t = spectral_radius_limit(&n, 16).unwrap();
        assert_eq!(t.entries[0], (1, 1.0));
        assert!(t.entries[1..].iter().all(|e| e.1 == 0.0));
        assert_eq!(t.estimate, 0.0);

        let one = m2(CMat::identity(2));
        let t = spectral_radius_limit(&one, 37).unwrap();
        assert!(t.entries.iter().all(|e| (e.1 - 1.0).abs() < 1e-14));
    }

    #[test]
    fn radius_trace_matches_direct_powers() {
        let mut rng = random::rng(9);
        let alg = Algebra::full(3);
        for _ in 0..5 {
            let a = random::element(&mut rng, &alg).scale_real(0.5);
            let t = spectral_radius_limit(&a, 13).unwrap();
            let mut p = CMat::identity(3);
            for _ in 0..13 {
                p = p.matmul(a.matrix());
            }
            let direct = op_norm(&p).powf(1.0 / 13.0);
            assert!((t.final_root - direct).abs() < 1e-10 * direct);
        }
    }

    #[test]
    fn radius_trace_survives_huge_powers() {
        let a = m2(CMat::real(&[[1e3, 1.0], [0.0, 2e3]]));
        let t = spectral_radius_limit(&a, 1 << 20).unwrap();
        assert!(t.log_norms.iter().all(|l| l.is_finite()));
        assert!((t.estimate - 2e3).abs() < 1.0);
    }

    #[test]
    fn neumann_examples() {
        let zero = m2(CMat::zeros(2, 2));
        assert!(neumann_inverse(&zero, 1e-12).unwrap().matrix().distance(&CMat::identity(2)) < 1e-15);
        let half = m2(CMat::identity(2).scale_real(0.5));
        let r = neumann_inverse(&half, 1e-13).unwrap();
        assert!(r.matrix().distance(&CMat::identity(2).scale_real(2.0)) < 1e-12);
        let big = m2(CMat::identity(2));
        assert!(matches!(neumann_inverse(&big, 1e-12), Err(Error::NotContractive { .. })));

        let mut rng = random::rng(3);
        let alg = Algebra::full(3);
        for _ in 0..10 {
            let a = random::element(&mut rng, &alg);
            let a = a.scale_real(0.3 / a.op_norm());
            let r = neumann_inverse(&a, 1e-12).unwrap();
            let direct = linalg::invert(&(&CMat::identity(3) - a.matrix())).unwrap();
            assert!(r.matrix().distance(&direct) <= 1e-10);
        }
    }

    #[test]
    fn exp_examples() {
        let a = m2(CMat::real(&[[1.0, 5.0], [0.0, 2.0]]));
        let e = exp_element(&a).unwrap();
        let want = CMat::real(&[[E, 5.0 * (E * E - E)], [0.0, E * E]]);
        assert!(e.matrix().max_abs_diff(&want) < 1e-10);

        let z = exp_element(&m2(CMat::zeros(2, 2))).unwrap();
        assert_eq!(z.matrix(), &CMat::identity(2));

        let a = CMat::real(&[[1.0, 0.0], [0.0, 0.0]]);
        let b = CMat::real(&[[0.0, 1.0], [0.0, 0.0]]);
        let sum = exp_element(&m2(&a + &b)).unwrap();
        assert!(sum.matrix().max_abs_diff(&CMat::real(&[[E, E - 1.0], [0.0, 1.0]])) < 1e-12);
        let prod = exp_element(&m2(a)).unwrap().matrix().matmul(exp_element(&m2(b)).unwrap().matrix());
        assert!(prod.max_abs_diff(&CMat::real(&[[E, E], [0.0, 1.0]])) < 1e-12);
    }

    #[test]
    fn exp_agrees_with_the_plain_series() {
        let mut rng = random::rng(1);
        let alg = Algebra::full(4);
        for _ in 0..10 {
            let a = random::element(&mut rng, &alg);
            let e = exp_element(&a).unwrap();
            let series = exp_series(a.matrix(), &CMat::identity(4), 200);
            assert!(e.matrix().distance(&series) <= 1e-9 * series.frobenius_norm());
            let bound = a.op_norm().exp();
            assert!(e.op_norm() <= bound * (1.0 + 1e-9));
            let back = exp_element(&a.scale_real(-1.0)).unwrap();
            assert!(e.matrix().matmul(back.matrix()).distance(&CMat::identity(4)) < 1e-8);
        }
    }

    #[test]
    fn exp_in_a_non_unital_algebra_lands_in_the_unitization() {
        let upper =
            Algebra::generated(&[CMat::unit(2, 0, 1)], ClosureOptions { star: false, ..Default::default() }).unwrap();
        let a = upper.element(CMat::unit(2, 0, 1)).unwrap();
        let e = exp_element(&a).unwrap();
        assert_eq!(e.algebra().ambient_dim(), 3);
        assert!(e.matrix().distance(&CMat::real(&[[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])) < 1e-14);
        // polynomials without constant term stay in the algebra
        let sq = poly_apply(&a, &[ZERO, c(2.0, 0.0)]).unwrap();
        assert_eq!(sq.algebra().ambient_dim(), 2);
    }

    #[test]
    fn poly_examples() {
        let a = m2(CMat::real(&[[3.0, 2.0], [1.0, 4.0]]));
        let p = poly_apply(&a, &[c(5.0, 0.0), c(8.0, 0.0), c(10.0, 0.0), ONE]).unwrap();
        assert!(p.matrix().max_abs_diff(&CMat::real(&[[186.0, 234.0], [117.0, 303.0]])) < 1e-8);
        let s = spectrum(&p, Field::Complex).unwrap();
        assert!(close_sets(&s.points, &[c(69.0, 0.0), c(420.0, 0.0)], 1e-6));

        let k = poly_apply(&a, &[c(-2.0, 1.0)]).unwrap();
        assert_eq!(k.matrix(), &CMat::identity(2).scale(c(-2.0, 1.0)));
    }

    #[test]
    fn classify_examples() {
        let h = m2(CMat::real(&[[0.0, PI], [PI, 0.0]]));
        let ch = classify(&h);
        assert!(ch.hermitian && ch.normal && !ch.positive);
        let u = exp_element(&h.scale(linalg::I)).unwrap();
        assert!(u.matrix().max_abs_diff(&CMat::identity(2).scale_real(-1.0)) < 1e-10);
        assert!(classify(&u).unitary);
        let n = classify(&m2(CMat::unit(2, 0, 1)));
        assert!(!n.hermitian && !n.unitary && !n.normal && !n.positive);
    }

    #[test]
    fn sqrt_examples() {
        let a = m2(CMat::real(&[[25.0, 40.0], [40.0, 65.0]]));
        let r = sqrt_positive(&a).unwrap();
        assert!(r.matrix().max_abs_diff(&CMat::real(&[[3.0, 4.0], [4.0, 7.0]])) < 1e-8);
        assert!(sqrt_positive(&m2(CMat::identity(2))).unwrap().matrix().max_abs_diff(&CMat::identity(2)) < 1e-14);
        assert!(matches!(sqrt_positive(&m2(CMat::diag_real(&[1.0, -1.0]))), Err(Error::NotPositive(_))));

        let mut rng = random::rng(6);
        for _ in 0..10 {
            let p = Algebra::full(4).element(random::positive(&mut rng, 4)).unwrap();
            let r = sqrt_positive(&p).unwrap();
            assert!(r.matrix().matmul(r.matrix()).distance(p.matrix()) <= 1e-8 * p.op_norm());
            assert!(classify(&r).positive);
        }
    }

    #[test]
    fn func_calc_cross_checks() {
        let mut rng = random::rng(7);
        let alg = Algebra::full(4);
        for _ in 0..5 {
            let n = alg.element(random::normal(&mut rng, 4)).unwrap();
            let id = func_calc(&n, |z| z).unwrap();
            assert!(id.matrix().distance(n.matrix()) < 1e-9);

            let h = alg.element(random::hermitian(&mut rng, 4)).unwrap();
            let e1 = func_calc(&h, |z| z.exp()).unwrap();
            let e2 = exp_element(&h).unwrap();
            assert!(e1.matrix().distance(e2.matrix()) <= 1e-9 * e2.matrix().frobenius_norm());

            let p = alg.element(random::positive(&mut rng, 4)).unwrap();
            let s1 = func_calc(&p, |z| C64::new(z.re.max(0.0).sqrt(), 0.0)).unwrap();
            let s2 = sqrt_positive(&p).unwrap();
            assert!(s1.matrix().distance(s2.matrix()) <= 1e-9 * s2.matrix().frobenius_norm());

            let coeffs = [c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)];
            let horner = poly_apply(&n, &coeffs).unwrap();
            let fc = func_calc(&n, |z| coeffs.iter().rev().fold(ZERO, |acc, &k| acc * z + k)).unwrap();
            assert!(horner.matrix().distance(fc.matrix()) <= 1e-9 * horner.matrix().frobenius_norm());
        }
        let nn = m2(CMat::unit(2, 0, 1));
        assert!(matches!(func_calc(&nn, |z| z), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn commutator_examples() {
        let d = Algebra::diagonal(3);
        let a = d.element(CMat::diag_real(&[1.0, 2.0, 3.0])).unwrap();
        let b = d.element(CMat::diag_real(&[-1.0, 0.0, 4.0])).unwrap();
        let r = commutator_scalar_test(&a, &b);
        assert_eq!(r.scalar_residual, 0.0);
        assert_eq!(r.lambda_candidate, ZERO);
        assert!(r.scalar);

        let mut rng = random::rng(11);
        let m3 = Algebra::full(3);
        for _ in 0..20 {
            let (a, b) = (random::element(&mut rng, &m3), random::element(&mut rng, &m3));
            let r = commutator_scalar_test(&a, &b);
            assert!(r.trace_value.norm() <= 1e-12);
            assert!(!r.scalar);
        }
    }

    #[test]
    fn spectral_symmetry_examples() {
        let a = m2(CMat::unit(2, 0, 1));
        let b = m2(CMat::unit(2, 1, 0));
        assert_eq!(spec_symmetry_check(&a, &b).unwrap(), 0.0);
        let mut rng = random::rng(13);
        let m4 = Algebra::full(4);
        for _ in 0..20 {
            let (a, b) = (random::element(&mut rng, &m4), random::element(&mut rng, &m4));
            assert!(spec_symmetry_check(&a, &b).unwrap() <= 1e-7);
        }
    }
}
