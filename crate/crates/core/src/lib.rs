//! Fitting rank-order laws to positive ranked data.
//!
//! Four laws are supported, all defined on integer ranks `r = 1..N`:
//!
//! ```text
//! Zipf            f(r) = K / r^alpha
//! Zipf-Mandelbrot f(r) = ((N + rho) / (r + rho))^(1 + epsilon)
//! Lavalette       f(r) = K ((N + 1 - r) / r)^b
//! beta-like       f(r) = K (N + 1 - r)^b / r^a
//! ```
//!
//! Fits minimize the unweighted sum of squared residuals of the natural
//! logarithms. The three laws with a scale factor are linear in log space and
//! are solved exactly by least squares; Zipf-Mandelbrot has no scale factor and
//! is fitted by profiling out the exponent and searching over `rho`.
//!
//! ```
//! use rankfit::{curve, fit_beta_like, BetaLikeParams, ModelParams};
//!
//! let truth = ModelParams::BetaLike(BetaLikeParams::new(0.0273, 0.4058, 0.991, 100).unwrap());
//! let series = curve(&truth).unwrap();
//! let report = fit_beta_like(&series).unwrap();
//! let ModelParams::BetaLike(p) = report.params else { unreachable!() };
//! assert!((p.a - 0.4058).abs() < 1e-8);
//! assert!((p.b - 0.991).abs() < 1e-8);
//! ```

mod error;
pub mod fit;
pub mod generate;
mod golden;
pub mod ingest;
mod linalg;
pub mod models;
mod series;

pub use error::{Error, Result};
pub use fit::{
    compare_models, fit_beta_like, fit_lavalette, fit_mandelbrot, fit_model, fit_zipf,
    r_squared_log, ComparisonReport, FitReport,
};
pub use generate::{
    generate_synthetic, generate_synthetic_len, simulate_simon, NoiseSpec, SimonConfig,
    SimonProcess,
};
pub use ingest::{parse_csv, rank_raw, IngestMode, IngestOptions, Ingested, ZeroPolicy};
pub use models::{
    curve, evaluate, tabulate, BetaLikeParams, LavaletteParams, MandelbrotParams, ModelKind,
    ModelParams, ZipfParams,
};
pub use series::{Entry, RankedSeries};
