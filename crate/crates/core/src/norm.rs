//! Soft norms, the canonical norm |e| + ||x||_p, induced soft metrics,
//! norm recovery from a metric, and the axiom/compatibility verifiers.

use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{run_suite, SampleOutcome, VerificationReport};
use crate::sample::{edge_or_gaussian_scalar, edge_or_gaussian_vector, gaussian_vector, SampleConfig};
use crate::scalar::Scalar;
use crate::vector::SoftVector;

/// A soft norm: a nonnegative evaluation on soft vectors of a fixed
/// dimension. Axioms N1-N3 are enforced by [`verify_norm_axioms`], not by
/// construction, for user-supplied norms.
pub trait SoftNorm<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, v: &SoftVector<T>) -> T;
}

/// A soft metric: a distance on soft vectors of a fixed dimension. Axioms
/// M1-M4 are enforced by [`verify_metric_axioms`] for user-supplied
/// metrics.
pub trait SoftMetric<T: Scalar>: Send + Sync {
    fn dim(&self) -> usize;
    fn dist(&self, u: &SoftVector<T>, v: &SoftVector<T>) -> T;
}

/// l_p norm of a slice, p in [1, inf].
pub fn lp_norm<T: Scalar>(x: &[T], p: f64) -> T {
    if p == f64::INFINITY {
        x.iter().fold(T::zero(), |m, &c| m.max(c.abs()))
    } else if p == 1.0 {
        x.iter().fold(T::zero(), |s, &c| s + c.abs())
    } else if p == 2.0 {
        x.iter().fold(T::zero(), |s, &c| s + c * c).sqrt()
    } else {
        let pt = T::from_f64_lossy(p);
        x.iter()
            .fold(T::zero(), |s, &c| s + c.abs().powf(pt))
            .powf(T::one() / pt)
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

/// The canonical soft norm ||(x, e)|| = |e| + ||x||_p.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalSoftNorm {
    dim: usize,
    p: f64,
}

impl CanonicalSoftNorm {
    pub fn new(dim: usize, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        Ok(Self { dim, p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl<T: Scalar> SoftNorm<T> for CanonicalSoftNorm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, v: &SoftVector<T>) -> T {
        v.e.abs() + lp_norm(&v.x, self.p)
    }
}

/// Convenience evaluation of the canonical norm.
pub fn canonical_norm<T: Scalar>(v: &SoftVector<T>, p: f64) -> Result<T> {
    check_exponent(p)?;
    v.validate()?;
    Ok(v.e.abs() + lp_norm(&v.x, p))
}

/// A norm defined by an arbitrary evaluation closure.
pub struct FnNorm<F> {
    dim: usize,
    f: F,
}

impl<F> FnNorm<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<T: Scalar, F: Fn(&SoftVector<T>) -> T + Send + Sync> SoftNorm<T> for FnNorm<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, v: &SoftVector<T>) -> T {
        (self.f)(v)
    }
}

/// Negative control: drops the absolute value on the parameter, breaking
/// N1 at negative parameters.
#[derive(Debug, Clone, Copy)]
pub struct NoAbsNorm {
    pub dim: usize,
    pub p: f64,
}

impl<T: Scalar> SoftNorm<T> for NoAbsNorm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, v: &SoftVector<T>) -> T {
        v.e + lp_norm(&v.x, self.p)
    }
}

/// Negative control: squares the canonical norm, breaking the triangle
/// inequality N3.
#[derive(Debug, Clone, Copy)]
pub struct SquaredNorm {
    pub dim: usize,
    pub p: f64,
}

impl<T: Scalar> SoftNorm<T> for SquaredNorm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, v: &SoftVector<T>) -> T {
        let n = v.e.abs() + lp_norm(&v.x, self.p);
        n * n
    }
}

/// The metric induced by a norm: d(u, v) = ||u - v||.
pub struct InducedMetric<N> {
    norm: N,
}

impl<N> InducedMetric<N> {
    pub fn new(norm: N) -> Self {
        Self { norm }
    }

    pub fn norm(&self) -> &N {
        &self.norm
    }
}

impl<T: Scalar, N: SoftNorm<T>> SoftMetric<T> for InducedMetric<N> {
    fn dim(&self) -> usize {
        self.norm.dim()
    }

    fn dist(&self, u: &SoftVector<T>, v: &SoftVector<T>) -> T {
        let diff = u.sub(v).expect("metric operands share a dimension");
        self.norm.eval(&diff)
    }
}

/// Evaluates the induced metric of `norm` at one pair.
pub fn induced_dist<T: Scalar, N: SoftNorm<T>>(
    norm: &N,
    u: &SoftVector<T>,
    v: &SoftVector<T>,
) -> Result<T> {
    let diff = u.sub(v)?;
    Ok(norm.eval(&diff))
}

/// The norm recovered from a metric: ||v|| = d(v, 0). For a metric that
/// was itself induced from a norm, this reproduces the original norm
/// pointwise.
pub struct MetricNorm<M> {
    metric: M,
}

impl<M> MetricNorm<M> {
    pub fn new(metric: M) -> Self {
        Self { metric }
    }
}

impl<T: Scalar, M: SoftMetric<T>> SoftNorm<T> for MetricNorm<M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn eval(&self, v: &SoftVector<T>) -> T {
        self.metric.dist(v, &SoftVector::zero(self.metric.dim()))
    }
}

/// Negative control for compatibility: the bounded metric d/(1+d), which
/// keeps M1-M4 but loses homogeneity.
pub struct BoundedMetric<M> {
    metric: M,
}

impl<M> BoundedMetric<M> {
    pub fn new(metric: M) -> Self {
        Self { metric }
    }
}

impl<T: Scalar, M: SoftMetric<T>> SoftMetric<T> for BoundedMetric<M> {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn dist(&self, u: &SoftVector<T>, v: &SoftVector<T>) -> T {
        let d = self.metric.dist(u, v);
        d / (T::one() + d)
    }
}

/// Negative control: the signed parameter difference, breaking M1 and M3.
#[derive(Debug, Clone, Copy)]
pub struct ParamDiffMetric {
    pub dim: usize,
}

impl<T: Scalar> SoftMetric<T> for ParamDiffMetric {
    fn dim(&self) -> usize {
        self.dim
    }

    fn dist(&self, u: &SoftVector<T>, v: &SoftVector<T>) -> T {
        u.e - v.e
    }
}

/// Negative control: squared canonical distance, breaking the triangle
/// inequality M4 on collinear triples.
#[derive(Debug, Clone, Copy)]
pub struct SquaredDistMetric {
    pub dim: usize,
    pub p: f64,
}

impl<T: Scalar> SoftMetric<T> for SquaredDistMetric {
    fn dim(&self) -> usize {
        self.dim
    }

    fn dist(&self, u: &SoftVector<T>, v: &SoftVector<T>) -> T {
        let diff = u.sub(v).expect("metric operands share a dimension");
        let d = diff.e.abs() + lp_norm(&diff.x, self.p);
        d * d
    }
}

fn vec_json<T: Scalar>(v: &SoftVector<T>) -> serde_json::Value {
    json!({
        "x": v.x.iter().map(|c| c.to_f64_lossy()).collect::<Vec<_>>(),
        "e": v.e.to_f64_lossy(),
    })
}

/// Checks N1 (nonnegativity, zero at the zero vector), N2 (absolute
/// homogeneity) and N3 (triangle inequality) on sampled inputs. Scale-
/// dependent comparisons use a relative tolerance tol * (1 + magnitude).
pub fn verify_norm_axioms<T: Scalar, N: SoftNorm<T> + ?Sized>(
    norm: &N,
    cfg: &SampleConfig,
    n_samples: u64,
    tol: f64,
) -> VerificationReport {
    let dim = norm.dim();
    run_suite("norm-axioms", cfg.seed, n_samples, tol, |i, rng| {
        let v = edge_or_gaussian_vector::<T>(i, rng, dim, cfg.radius);
        let u = if i % 13 == 5 {
            v.clone()
        } else {
            gaussian_vector::<T>(rng, dim, cfg.radius)
        };
        let r = edge_or_gaussian_scalar::<T>(i, rng, cfg.radius);

        let nv = norm.eval(&v).to_f64_lossy();
        let n1 = if i == 0 {
            // v is the zero vector here; its norm must vanish
            nv.abs()
        } else {
            (-nv).max(0.0)
        };

        let scaled = v.scale(r).expect("finite scalar");
        let n2 = (norm.eval(&scaled).to_f64_lossy() - r.abs().to_f64_lossy() * nv).abs()
            / (1.0 + nv.abs());

        let sum = u.add(&v).expect("equal dims");
        let n3 = (norm.eval(&sum).to_f64_lossy() - norm.eval(&u).to_f64_lossy() - nv).max(0.0);

        let measure = n1.max(n2).max(n3);
        let witness = if measure > tol {
            let axiom = if n1 >= n2 && n1 >= n3 {
                "N1"
            } else if n2 >= n3 {
                "N2"
            } else {
                "N3"
            };
            Some(json!({
                "axiom": axiom,
                "v": vec_json(&v),
                "u": vec_json(&u),
                "r": r.to_f64_lossy(),
                "measure": measure,
            }))
        } else {
            None
        };
        SampleOutcome { measure, witness }
    })
}

/// Checks M1 (nonnegativity), M2 (coincidence, with the converse
/// spot-checked on distinct near-coincident pairs and reported as "not
/// falsified"), M3 (symmetry) and M4 (triangle inequality) on sampled
/// pairs and triples.
pub fn verify_metric_axioms<T: Scalar, M: SoftMetric<T> + ?Sized>(
    metric: &M,
    cfg: &SampleConfig,
    n_samples: u64,
    tol: f64,
) -> VerificationReport {
    let dim = metric.dim();
    run_suite("metric-axioms", cfg.seed, n_samples, tol, |i, rng| {
        let u = edge_or_gaussian_vector::<T>(i, rng, dim, cfg.radius);
        let w = gaussian_vector::<T>(rng, dim, cfg.radius);
        let v = if i % 13 == 5 {
            u.clone()
        } else if i % 11 == 3 {
            // collinear triple: v is the midpoint of u and w
            u.add(&w).unwrap().scale(T::from_f64_lossy(0.5)).unwrap()
        } else if i % 19 == 7 {
            // near-coincident but distinct pair for the M2 converse
            let mut shifted = u.clone();
            shifted.x[0] += T::from_f64_lossy(1e-3);
            shifted
        } else {
            gaussian_vector::<T>(rng, dim, cfg.radius)
        };

        let duv = metric.dist(&u, &v).to_f64_lossy();
        let m1 = (-duv).max(0.0);
        let m2 = metric.dist(&u, &u).to_f64_lossy().abs();
        let m3 = (duv - metric.dist(&v, &u).to_f64_lossy()).abs() / (1.0 + duv.abs());
        let m4 = (metric.dist(&u, &w).to_f64_lossy()
            - duv
            - metric.dist(&v, &w).to_f64_lossy())
        .max(0.0);

        // M2 converse spot check: a visibly distinct pair must not be at
        // distance zero.
        let diff = u.sub(&v).expect("equal dims");
        let separated = diff.lift().iter().fold(0.0, |s, c| {
            let c = c.to_f64_lossy();
            s + c * c
        }) > 1e-12;
        let m2c = if separated && duv.abs() <= tol { 1.0 } else { 0.0 };

        let measure = m1.max(m2).max(m3).max(m4).max(m2c);
        let witness = if measure > tol {
            let axiom = if m1 == measure {
                "M1"
            } else if m2 == measure {
                "M2"
            } else if m2c == measure {
                "M2-converse"
            } else if m3 == measure {
                "M3"
            } else {
                "M4"
            };
            Some(json!({
                "axiom": axiom,
                "u": vec_json(&u),
                "v": vec_json(&v),
                "w": vec_json(&w),
                "measure": measure,
            }))
        } else {
            None
        };
        SampleOutcome { measure, witness }
    })
}

/// Checks that a metric is translation invariant (a) and absolutely
/// homogeneous (b) on sampled (u, v, w, r). Passing both certifies, at
/// sample resolution, that recovering a norm from this metric yields a
/// norm whose induced metric equals the input.
pub fn verify_metric_norm_compatibility<T: Scalar, M: SoftMetric<T> + ?Sized>(
    metric: &M,
    cfg: &SampleConfig,
    n_samples: u64,
    tol: f64,
) -> VerificationReport {
    let dim = metric.dim();
    run_suite(
        "metric-norm-compatibility",
        cfg.seed,
        n_samples,
        tol,
        |i, rng| {
            let u = edge_or_gaussian_vector::<T>(i, rng, dim, cfg.radius);
            let v = gaussian_vector::<T>(rng, dim, cfg.radius);
            let w = if i % 13 == 5 {
                SoftVector::zero(dim)
            } else {
                gaussian_vector::<T>(rng, dim, cfg.radius)
            };
            let r = edge_or_gaussian_scalar::<T>(i, rng, cfg.radius);

            let duv = metric.dist(&u, &v).to_f64_lossy();
            let uw = u.add(&w).unwrap();
            let vw = v.add(&w).unwrap();
            let da = (metric.dist(&uw, &vw).to_f64_lossy() - duv).abs() / (1.0 + duv.abs());

            let ru = u.scale(r).unwrap();
            let rv = v.scale(r).unwrap();
            let rabs = r.abs().to_f64_lossy();
            let db = (metric.dist(&ru, &rv).to_f64_lossy() - rabs * duv).abs()
                / (1.0 + rabs * duv.abs());

            let measure = da.max(db);
            let witness = if measure > tol {
                Some(json!({
                    "condition": if da >= db { "translation" } else { "homogeneity" },
                    "u": vec_json(&u),
                    "v": vec_json(&v),
                    "w": vec_json(&w),
                    "r": r.to_f64_lossy(),
                    "measure": measure,
                }))
            } else {
                None
            };
            SampleOutcome { measure, witness }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(x: &[f64], e: f64) -> SoftVector<f64> {
        SoftVector::new(x.to_vec(), e).unwrap()
    }

    #[test]
    fn canonical_norm_examples() {
        let v = sv(&[3.0, 4.0], 2.0);
        assert_eq!(canonical_norm(&v, 2.0).unwrap(), 7.0);
        assert_eq!(canonical_norm(&SoftVector::<f64>::zero(2), 2.0).unwrap(), 0.0);
        let scaled = v.scale(-2.0).unwrap();
        assert_eq!(canonical_norm(&scaled, 2.0).unwrap(), 14.0);
    }

    #[test]
    fn canonical_norm_p_variants() {
        let v = sv(&[3.0, -4.0], -1.0);
        assert_eq!(canonical_norm(&v, 1.0).unwrap(), 8.0);
        assert_eq!(canonical_norm(&v, 2.0).unwrap(), 6.0);
        assert_eq!(canonical_norm(&v, f64::INFINITY).unwrap(), 5.0);
    }

    #[test]
    fn rejects_bad_exponent() {
        let v = sv(&[1.0], 0.0);
        assert!(canonical_norm(&v, 0.5).is_err());
        assert!(CanonicalSoftNorm::new(2, f64::NAN).is_err());
        assert!(CanonicalSoftNorm::new(2, f64::INFINITY).is_ok());
    }

    #[test]
    fn induced_metric_examples() {
        let norm = CanonicalSoftNorm::new(2, 2.0).unwrap();
        let v = sv(&[1.0, 2.0], -1.0);
        assert_eq!(induced_dist(&norm, &v, &v).unwrap(), 0.0);
        let u = sv(&[1.0, 0.0], 0.0);
        let z = sv(&[0.0, 0.0], 1.0);
        assert_eq!(induced_dist(&norm, &u, &z).unwrap(), 2.0);
        let a = sv(&[0.3, -0.7], 1.2);
        let b = sv(&[-2.0, 0.4], 0.1);
        assert_eq!(
            induced_dist(&norm, &a, &b).unwrap(),
            induced_dist(&norm, &b, &a).unwrap()
        );
    }

    #[test]
    fn norm_from_metric_round_trip() {
        let metric = InducedMetric::new(CanonicalSoftNorm::new(3, 2.0).unwrap());
        let recovered = MetricNorm::new(metric);
        let v = sv(&[0.5, -1.5, 2.0], -0.25);
        let orig = canonical_norm(&v, 2.0).unwrap();
        assert!((SoftNorm::<f64>::eval(&recovered, &v) - orig).abs() < 1e-12);
        assert_eq!(SoftNorm::<f64>::eval(&recovered, &SoftVector::zero(3)), 0.0);
    }

    #[test]
    fn canonical_norm_passes_axiom_suite() {
        for p in [1.0, 2.0, f64::INFINITY] {
            let norm = CanonicalSoftNorm::new(2, p).unwrap();
            let report =
                verify_norm_axioms::<f64, _>(&norm, &SampleConfig::default(), 2000, 1e-9);
            assert!(report.passed(), "p={p}: {report:?}");
        }
    }

    #[test]
    fn no_abs_norm_fails_n1() {
        let norm = NoAbsNorm { dim: 2, p: 2.0 };
        let report = verify_norm_axioms::<f64, _>(&norm, &SampleConfig::default(), 2000, 1e-9);
        assert!(!report.passed());
        assert!(!report.counterexamples.is_empty());
    }

    #[test]
    fn squared_norm_fails_n3() {
        let norm = SquaredNorm { dim: 2, p: 2.0 };
        let report = verify_norm_axioms::<f64, _>(&norm, &SampleConfig::default(), 2000, 1e-9);
        assert!(!report.passed());
    }

    #[test]
    fn induced_metric_passes_metric_suite() {
        let metric = InducedMetric::new(CanonicalSoftNorm::new(2, 2.0).unwrap());
        let report = verify_metric_axioms::<f64, _>(&metric, &SampleConfig::default(), 2000, 1e-9);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn param_diff_metric_fails_m1_m3() {
        let metric = ParamDiffMetric { dim: 2 };
        let report = verify_metric_axioms::<f64, _>(&metric, &SampleConfig::default(), 2000, 1e-9);
        assert!(!report.passed());
    }

    #[test]
    fn squared_dist_metric_fails_m4() {
        let metric = SquaredDistMetric { dim: 2, p: 2.0 };
        let report = verify_metric_axioms::<f64, _>(&metric, &SampleConfig::default(), 2000, 1e-9);
        assert!(!report.passed());
    }

    #[test]
    fn induced_metric_is_compatible() {
        let metric = InducedMetric::new(CanonicalSoftNorm::new(2, 2.0).unwrap());
        let report = verify_metric_norm_compatibility::<f64, _>(
            &metric,
            &SampleConfig::default(),
            2000,
            1e-9,
        );
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn bounded_metric_fails_homogeneity() {
        let base = InducedMetric::new(CanonicalSoftNorm::new(2, 2.0).unwrap());
        let metric = BoundedMetric::new(base);
        let report = verify_metric_norm_compatibility::<f64, _>(
            &metric,
            &SampleConfig::default(),
            2000,
            1e-9,
        );
        assert!(!report.passed());
    }
}
