//! Minibatch gradient-noise laboratory: the exact sampling-noise model, a
//! small SGD trainer that logs true noise vectors, normality tests and
//! reductions of vector traces to scalar series.

mod io;
mod model;
mod normality;
mod sampling;
mod scalarize;
mod trainer;

pub use io::{matrix_from_sgn_bytes, matrix_to_sgn_bytes, read_trace, write_trace, TraceSidecar};
pub use model::{Dataset, DatasetSpec, ModelSpec, MAX_DATASET};
pub use normality::{
    anderson_darling_normality, shapiro_wilk_normality, NormalityResult, MIN_NORMALITY_LEN,
    SHAPIRO_WILK_MAX_LEN,
};
pub use sampling::{
    empirical_zeta_moments, sample_zeta, sampling_noise_moments, EmpiricalMoments,
    MomentAccumulator, NoiseMoments, SamplingScheme,
};
pub use scalarize::{
    coordinate_hurst_summary, scalarize_trace, CoordinateHurstSummary, Scalarization,
    DEFAULT_COORDINATES,
};
pub use trainer::{
    frozen_sgn_covariance, run_toy_trainer, train_toy_and_log, CovarianceCheck, SgnTrace,
    TraceMeta, TrainConfig, TrainRun, DIVERGENCE_LOSS,
};
