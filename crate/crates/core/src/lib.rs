//! Soft normed linear spaces over a parameter line: soft sets and soft
//! reals, soft vectors (x, e) with x in R^n and a soft parameter e, the
//! canonical soft norm |e| + ||x||_p with induced metrics, soft linear
//! operators with a numerical operator-norm estimator, and finite-horizon
//! sequence diagnostics. Everything is generic over the scalar type; the
//! aliases at the crate root pin f64 and f32.

pub mod error;
pub mod exact;
pub mod linalg;
pub mod norm;
pub mod operator;
pub mod opnorm;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod sequence;
pub mod soft_set;
pub mod vector;

pub use error::{Error, Result};
pub use norm::{
    canonical_norm, induced_dist, lp_norm, verify_metric_axioms,
    verify_metric_norm_compatibility, verify_norm_axioms, BoundedMetric, CanonicalSoftNorm,
    FnNorm, InducedMetric, MetricNorm, NoAbsNorm, ParamDiffMetric, SoftMetric, SoftNorm,
    SquaredDistMetric, SquaredNorm,
};
pub use operator::SoftLinearOperator;
pub use opnorm::{
    check_linearity, lipschitz_continuity_check, op_norm, op_norm_grid, op_norm_multistart,
    op_norm_ratio_check, op_norm_with_oracle, verify_bounded, verify_opnorm_axioms,
    verify_power_bound, verify_submultiplicative, OpNormConfig, OpNormMethod, OpNormResult,
};
pub use report::{run_suite, SampleOutcome, VerificationReport, MAX_COUNTEREXAMPLES};
pub use sample::{edge_or_gaussian_scalar, edge_or_gaussian_vector, gaussian_vector, rng_for, SampleConfig};
pub use scalar::Scalar;
pub use sequence::{
    converges_to, convergent_implies_cauchy, is_cauchy, CauchyVerdict, ConvergenceVerdict,
    SoftVectorSequence,
};
pub use soft_set::{ComparisonOutcome, ParameterSet, SoftPoint, SoftReal, SoftSet};
pub use vector::{
    independence_parts, is_independent, lincomb, rank_detail, span_contains, IndependenceParts,
    RankDetail, SoftScalar, SoftVector, DEFAULT_RANK_TOL,
};

/// f64 concrete aliases.
pub type SoftVector64 = SoftVector<f64>;
pub type SoftScalar64 = SoftScalar<f64>;
pub type SoftLinearOperator64 = SoftLinearOperator<f64>;
pub type SoftVectorSequence64 = SoftVectorSequence<f64>;
pub type SoftReal64 = SoftReal<f64>;

/// f32 concrete aliases.
pub type SoftVector32 = SoftVector<f32>;
pub type SoftScalar32 = SoftScalar<f32>;
pub type SoftLinearOperator32 = SoftLinearOperator<f32>;
pub type SoftVectorSequence32 = SoftVectorSequence<f32>;
pub type SoftReal32 = SoftReal<f32>;
