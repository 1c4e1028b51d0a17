//! The four rank-order laws and their evaluation on the rank lattice.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::RankedSeries;

/// Model tag. Declaration order is catalog order, used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Zipf,
    Mandelbrot,
    Lavalette,
    BetaLike,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Zipf,
        ModelKind::Mandelbrot,
        ModelKind::Lavalette,
        ModelKind::BetaLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Zipf => "zipf",
            ModelKind::Mandelbrot => "mandelbrot",
            ModelKind::Lavalette => "lavalette",
            ModelKind::BetaLike => "beta-like",
        }
    }

    /// Number of free parameters fitted from data.
    pub fn param_count(self) -> usize {
        match self {
            ModelKind::BetaLike => 3,
            _ => 2,
        }
    }

    /// Smallest series length the fitter accepts.
    pub fn min_points(self) -> usize {
        match self {
            ModelKind::BetaLike => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zipf" => Ok(ModelKind::Zipf),
            "mandelbrot" | "zipf-mandelbrot" => Ok(ModelKind::Mandelbrot),
            "lavalette" => Ok(ModelKind::Lavalette),
            "beta-like" | "betalike" => Ok(ModelKind::BetaLike),
            other => Err(Error::InvalidParams(format!("unknown model `{other}`"))),
        }
    }
}

fn check_scale(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "scale factor k must be finite and > 0, got {k}"
        )))
    }
}

fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{name} must be finite, got {x}"
        )))
    }
}

fn check_len(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParams(
            "series length n must be at least 1".into(),
        ))
    }
}

/// `f(r) = k / r^alpha`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZipfParams {
    pub k: f64,
    pub alpha: f64,
}

impl ZipfParams {
    pub fn new(k: f64, alpha: f64) -> Result<Self> {
        check_scale(k)?;
        check_finite("alpha", alpha)?;
        Ok(Self { k, alpha })
    }
}

/// `f(r) = ((n + rho) / (r + rho))^(1 + epsilon)`.
///
/// There is no scale factor: the law is pinned to 1 at `r = n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MandelbrotParams {
    pub rho: f64,
    pub epsilon: f64,
    pub n: usize,
}

impl MandelbrotParams {
    pub fn new(rho: f64, epsilon: f64, n: usize) -> Result<Self> {
        check_finite("rho", rho)?;
        if rho <= -1.0 {
            return Err(Error::InvalidParams(format!("rho must be > -1, got {rho}")));
        }
        check_finite("epsilon", epsilon)?;
        check_len(n)?;
        Ok(Self { rho, epsilon, n })
    }
}

/// `f(r) = k ((n + 1 - r) / r)^b`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LavaletteParams {
    pub k: f64,
    pub b: f64,
    pub n: usize,
}

impl LavaletteParams {
    pub fn new(k: f64, b: f64, n: usize) -> Result<Self> {
        check_scale(k)?;
        check_finite("b", b)?;
        check_len(n)?;
        Ok(Self { k, b, n })
    }
}

/// `f(r) = k (n + 1 - r)^b / r^a`
///
/// `a > 0` gives a decreasing head, `b > 0` a bending tail. `b = 0` is Zipf's
/// law and `a = b` is Lavalette's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaLikeParams {
    pub k: f64,
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl BetaLikeParams {
    pub fn new(k: f64, a: f64, b: f64, n: usize) -> Result<Self> {
        check_scale(k)?;
        check_finite("a", a)?;
        check_finite("b", b)?;
        check_len(n)?;
        Ok(Self { k, a, b, n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelParams {
    Zipf(ZipfParams),
    Mandelbrot(MandelbrotParams),
    Lavalette(LavaletteParams),
    BetaLike(BetaLikeParams),
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Zipf(_) => ModelKind::Zipf,
            ModelParams::Mandelbrot(_) => ModelKind::Mandelbrot,
            ModelParams::Lavalette(_) => ModelKind::Lavalette,
            ModelParams::BetaLike(_) => ModelKind::BetaLike,
        }
    }

    /// Series length the law is defined over; `None` for Zipf.
    pub fn n(&self) -> Option<usize> {
        match self {
            ModelParams::Zipf(_) => None,
            ModelParams::Mandelbrot(p) => Some(p.n),
            ModelParams::Lavalette(p) => Some(p.n),
            ModelParams::BetaLike(p) => Some(p.n),
        }
    }

    /// Scale factor `k`; `None` for Mandelbrot.
    pub fn k(&self) -> Option<f64> {
        match self {
            ModelParams::Zipf(p) => Some(p.k),
            ModelParams::Mandelbrot(_) => None,
            ModelParams::Lavalette(p) => Some(p.k),
            ModelParams::BetaLike(p) => Some(p.k),
        }
    }

    /// Same law re-targeted to a series of length `n` (Zipf unchanged).
    pub fn with_len(self, n: usize) -> Result<Self> {
        Ok(match self {
            ModelParams::Zipf(p) => ModelParams::Zipf(p),
            ModelParams::Mandelbrot(p) => {
                ModelParams::Mandelbrot(MandelbrotParams::new(p.rho, p.epsilon, n)?)
            }
            ModelParams::Lavalette(p) => ModelParams::Lavalette(LavaletteParams::new(p.k, p.b, n)?),
            ModelParams::BetaLike(p) => {
                ModelParams::BetaLike(BetaLikeParams::new(p.k, p.a, p.b, n)?)
            }
        })
    }
}

/// Evaluates the law at integer rank `r`.
///
/// Lavalette is computed as `k * m^b / r^b` (with `m = n + 1 - r`), the same
/// operation sequence as the beta-like law, so the two agree bit for bit when
/// `a == b`. Likewise the beta-like law with `b == 0` reduces to exactly the
/// Zipf expression.
pub fn evaluate(params: &ModelParams, r: usize) -> Result<f64> {
    if r == 0 {
        return Err(Error::RankOutOfRange {
            rank: r,
            n: params.n().unwrap_or(usize::MAX),
        });
    }
    if let Some(n) = params.n() {
        if r > n {
            return Err(Error::RankOutOfRange { rank: r, n });
        }
    }
    let rf = r as f64;
    let value = match *params {
        ModelParams::Zipf(ZipfParams { k, alpha }) => k / rf.powf(alpha),
        ModelParams::Mandelbrot(MandelbrotParams { rho, epsilon, n }) => {
            ((n as f64 + rho) / (rf + rho)).powf(1.0 + epsilon)
        }
        ModelParams::Lavalette(LavaletteParams { k, b, n }) => {
            let m = (n + 1 - r) as f64;
            k * m.powf(b) / rf.powf(b)
        }
        ModelParams::BetaLike(BetaLikeParams { k, a, b, n }) => {
            let m = (n + 1 - r) as f64;
            k * m.powf(b) / rf.powf(a)
        }
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            model: params.kind(),
            rank: r,
        })
    }
}

/// Tabulates the law over ranks `1..=n`.
///
/// Fails for Zipf (no intrinsic length, see [`tabulate`]) and for parameters
/// whose curve increases with rank, since that is not a valid ranked series.
pub fn curve(params: &ModelParams) -> Result<RankedSeries> {
    match params.n() {
        Some(n) => tabulate(params, n),
        None => Err(Error::InvalidParams(
            "zipf curve needs an explicit length".into(),
        )),
    }
}

/// Tabulates the law over ranks `1..=n`. For n-bearing laws `n` must match.
pub fn tabulate(params: &ModelParams, n: usize) -> Result<RankedSeries> {
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    if let Some(own) = params.n() {
        if own != n {
            return Err(Error::InvalidParams(format!(
                "requested {n} ranks from a law defined on {own}"
            )));
        }
    }
    let values = (1..=n)
        .map(|r| evaluate(params, r))
        .collect::<Result<Vec<_>>>()?;
    RankedSeries::from_sorted_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn beta(k: f64, a: f64, b: f64, n: usize) -> ModelParams {
        ModelParams::BetaLike(BetaLikeParams::new(k, a, b, n).unwrap())
    }

    fn ulps_apart(x: f64, y: f64) -> u64 {
        (x.to_bits() as i64 - y.to_bits() as i64).unsigned_abs()
    }

    #[test]
    fn beta_like_direct_substitution() {
        assert_eq!(evaluate(&beta(1.0, 1.0, 1.0, 3), 1).unwrap(), 3.0);
    }

    #[test]
    fn beta_like_physics_row_at_last_rank() {
        // At r = n the numerator is 1. Reference computed at 40 digits.
        let v = evaluate(&beta(0.0273, 0.4058, 0.991, 100), 100).unwrap();
        let expected = 0.004_212_720_509_245_772;
        assert!((v - expected).abs() / expected < 1e-14, "{v}");
    }

    #[test]
    fn zipf_zero_exponent_is_constant() {
        let p = ModelParams::Zipf(ZipfParams::new(5.0, 0.0).unwrap());
        assert_eq!(evaluate(&p, 17).unwrap(), 5.0);
    }

    #[test]
    fn lavalette_direct_substitution() {
        let p = ModelParams::Lavalette(LavaletteParams::new(2.0, 1.0, 5).unwrap());
        assert_eq!(evaluate(&p, 5).unwrap(), 0.4);
    }

    #[test]
    fn rank_out_of_range() {
        let p = beta(1.0, 1.0, 1.0, 3);
        assert!(matches!(
            evaluate(&p, 0),
            Err(Error::RankOutOfRange { rank: 0, .. })
        ));
        let err = evaluate(&p, 4).unwrap_err();
        assert!(matches!(err, Error::RankOutOfRange { rank: 4, n: 3 }));
        assert!(err.to_string().contains("1..=3"));
    }

    #[test]
    fn curve_beta_like_with_zero_b_is_lotka() {
        let s = curve(&beta(1.0, 1.0, 0.0, 4)).unwrap();
        assert_eq!(s.values(), vec![1.0, 0.5, 1.0 / 3.0, 0.25]);
    }

    #[test]
    fn curve_lavalette() {
        let p = ModelParams::Lavalette(LavaletteParams::new(1.0, 1.0, 3).unwrap());
        assert_eq!(curve(&p).unwrap().values(), vec![3.0, 1.0, 1.0 / 3.0]);
    }

    #[test]
    fn curve_mandelbrot_reduces_to_n_over_r() {
        let p = ModelParams::Mandelbrot(MandelbrotParams::new(0.0, 0.0, 4).unwrap());
        assert_eq!(curve(&p).unwrap().values(), vec![4.0, 2.0, 4.0 / 3.0, 1.0]);
    }

    #[test]
    fn curve_needs_length() {
        let p = ModelParams::Zipf(ZipfParams::new(1.0, 1.0).unwrap());
        assert!(curve(&p).is_err());
        assert!(tabulate(&p, 0).is_err());
        assert_eq!(tabulate(&p, 2).unwrap().values(), vec![1.0, 0.5]);
    }

    #[test]
    fn curve_rejects_increasing_law() {
        assert!(curve(&beta(1.0, -1.0, 0.0, 5)).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert!(ZipfParams::new(0.0, 1.0).is_err());
        assert!(ZipfParams::new(1.0, f64::NAN).is_err());
        assert!(MandelbrotParams::new(-1.0, 0.0, 3).is_err());
        assert!(LavaletteParams::new(1.0, 1.0, 0).is_err());
        assert!(BetaLikeParams::new(-2.0, 1.0, 1.0, 3).is_err());
    }

    #[test]
    fn model_kind_parsing_and_order() {
        assert_eq!(
            "beta-like".parse::<ModelKind>().unwrap(),
            ModelKind::BetaLike
        );
        assert!("pareto".parse::<ModelKind>().is_err());
        assert!(ModelKind::Zipf < ModelKind::Mandelbrot);
        assert!(ModelKind::Mandelbrot < ModelKind::Lavalette);
    }

    proptest! {
        #[test]
        fn beta_like_with_zero_b_is_exactly_zipf(
            k in 1e-3f64..1e3, a in -2.0f64..3.0, n in 1usize..500, frac in 0.0f64..1.0,
        ) {
            let r = 1 + ((n - 1) as f64 * frac) as usize;
            let z = ModelParams::Zipf(ZipfParams::new(k, a).unwrap());
            prop_assert_eq!(evaluate(&beta(k, a, 0.0, n), r).unwrap(), evaluate(&z, r).unwrap());
        }

        #[test]
        fn beta_like_with_equal_exponents_is_lavalette(
            k in 1e-3f64..1e3, b in -2.0f64..3.0, n in 1usize..500, frac in 0.0f64..1.0,
        ) {
            let r = 1 + ((n - 1) as f64 * frac) as usize;
            let l = ModelParams::Lavalette(LavaletteParams::new(k, b, n).unwrap());
            let x = evaluate(&beta(k, b, b, n), r).unwrap();
            let y = evaluate(&l, r).unwrap();
            prop_assert!(ulps_apart(x, y) <= 2, "{} vs {}", x, y);
        }

        // Reflecting the rank r -> n+1-r maps (a, b) to (-b, -a).
        #[test]
        fn reflection_symmetry(
            k in 1e-3f64..1e3, a in -2.0f64..3.0, b in -2.0f64..3.0,
            n in 1usize..500, frac in 0.0f64..1.0,
        ) {
            let r = 1 + ((n - 1) as f64 * frac) as usize;
            let x = evaluate(&beta(k, a, b, n), r).unwrap();
            let y = evaluate(&beta(k, -b, -a, n), n + 1 - r).unwrap();
            let tol = 8.0 * f64::EPSILON * x;
            prop_assert!((x - y).abs() <= tol, "{} vs {}", x, y);
        }

        #[test]
        fn evaluations_are_positive(
            k in 1e-3f64..1e3, a in -2.0f64..3.0, b in -2.0f64..3.0,
            rho in -0.99f64..50.0, eps in -0.9f64..2.0, n in 1usize..300,
        ) {
            let laws = [
                ModelParams::Zipf(ZipfParams::new(k, a).unwrap()),
                ModelParams::Mandelbrot(MandelbrotParams::new(rho, eps, n).unwrap()),
                ModelParams::Lavalette(LavaletteParams::new(k, b, n).unwrap()),
                beta(k, a, b, n),
            ];
            for law in &laws {
                for r in 1..=n {
                    let v = evaluate(law, r).unwrap();
                    prop_assert!(v.is_finite() && v > 0.0);
                }
            }
        }
    }
}
