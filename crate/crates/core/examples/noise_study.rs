//! Spread of beta-like exponent estimates under log-normal noise, and the
//! Zipf exponent of Simon-process output.
//!
//! cargo run --release -p rankfit --example noise_study

use rankfit::{
    fit_beta_like, fit_zipf, generate_synthetic, simulate_simon, BetaLikeParams, ModelParams,
    NoiseSpec, SimonConfig,
};

// (field, K, b, a)
#[allow(clippy::approx_constant)]
const ROWS: [(&str, f64, f64, f64); 11] = [
    ("physics", 0.0273, 0.991, 0.4058),
    ("mathematics", 0.0437, 0.676, 0.2622),
    ("computer-science", 0.0066, 1.0626, 0.2840),
    ("agroscience", 0.0070, 0.9597, 0.2210),
    ("environmental", 0.0358, 0.9357, 0.2781),
    ("biosciences", 0.0304, 1.0161, 0.5140),
    ("chemistry", 0.0549, 0.9733, 0.4560),
    ("engineering", 0.0033, 1.0472, 0.3522),
    ("geosciences", 0.0463, 0.8739, 0.3505),
    ("materials", 0.0408, 0.9072, 0.4477),
    ("medicine", 0.0819, 0.7735, 0.4307),
];

fn main() {
    println!("field              max|da|  max|db|  sd(a)   sd(b)   min R2");
    for (name, k, b, a) in ROWS {
        let p = ModelParams::BetaLike(BetaLikeParams::new(k, a, b, 200).unwrap());
        let (mut da, mut db, mut r2) = (Vec::new(), Vec::new(), f64::INFINITY);
        for seed in 0..100 {
            let s = generate_synthetic(&p, &NoiseSpec::new(0.05, seed).unwrap()).unwrap();
            let f = fit_beta_like(&s).unwrap();
            let ModelParams::BetaLike(q) = f.params else {
                unreachable!()
            };
            da.push(q.a - a);
            db.push(q.b - b);
            r2 = r2.min(f.r_squared);
        }
        let max = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let sd = |v: &[f64]| {
            let m = v.iter().sum::<f64>() / v.len() as f64;
            (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
        };
        println!(
            "{name:<18} {:.4}   {:.4}   {:.4}  {:.4}  {:.5}",
            max(&da),
            max(&db),
            sd(&da),
            sd(&db),
            r2
        );
    }

    let mut alphas = Vec::new();
    for seed in 0..10 {
        let s = simulate_simon(&SimonConfig::new(0.1, 100_000, seed).unwrap()).unwrap();
        let f = fit_zipf(&s.head(100).unwrap()).unwrap();
        let ModelParams::Zipf(z) = f.params else {
            unreachable!()
        };
        alphas.push(z.alpha);
    }
    alphas.sort_by(f64::total_cmp);
    println!("simon p_new=0.1 top-100 zipf alpha: {alphas:.3?}");
}
