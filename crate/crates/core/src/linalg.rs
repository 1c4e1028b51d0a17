//! Dense least squares for the tiny (n x p, p <= 3) design matrices used by
//! the linear fits.

use crate::error::{Error, Result};

/// Relative threshold on a Householder pivot below which the design is
/// treated as rank deficient.
const RANK_TOL: f64 = 1e-12;

/// Mean computed as `x0 + mean(x - x0)`, which is exact for constant input.
pub(crate) fn shifted_mean(xs: &[f64]) -> f64 {
    let x0 = xs[0];
    x0 + xs.iter().map(|x| x - x0).sum::<f64>() / xs.len() as f64
}

/// Minimizes `|y - X beta|` where `X` is given column by column.
///
/// Uses Householder QR on a copy of the columns; the normal equations are
/// never formed.
pub(crate) fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let p = columns.len();
    let n = y.len();
    assert!(
        columns.iter().all(|c| c.len() == n),
        "column length mismatch"
    );
    if p == 0 {
        return Ok(Vec::new());
    }
    if n < p {
        return Err(Error::Singular);
    }

    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut qty = y.to_vec();
    let scale = a.iter().map(|c| norm(c)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Singular);
    }

    for j in 0..p {
        let alpha = norm(&a[j][j..]);
        if alpha <= RANK_TOL * scale {
            return Err(Error::Singular);
        }
        // Reflect a[j][j..] onto -sign(a_jj) * alpha * e_1.
        let diag = if a[j][j] >= 0.0 { -alpha } else { alpha };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= diag;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(j + 1) {
                reflect(&v, vnorm2, &mut col[j..]);
            }
            reflect(&v, vnorm2, &mut qty[j..]);
        }
        a[j][j] = diag;
        for x in a[j][j + 1..].iter_mut() {
            *x = 0.0;
        }
    }

    // Back substitution on the upper triangle R (R[i][j] lives in a[j][i]).
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let mut s = qty[i];
        for j in i + 1..p {
            s -= a[j][i] * beta[j];
        }
        beta[i] = s / a[i][i];
    }
    Ok(beta)
}

fn norm(x: &[f64]) -> f64 {
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt()
}

fn reflect(v: &[f64], vnorm2: f64, x: &mut [f64]) {
    let dot: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    let f = 2.0 * dot / vnorm2;
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= f * vi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_exact_line() {
        // y = 2 + 3x on x = 0, 1, 2
        let ones = vec![1.0; 3];
        let x = vec![0.0, 1.0, 2.0];
        let beta = least_squares(&[ones, x], &[2.0, 5.0, 8.0]).unwrap();
        assert!((beta[0] - 2.0).abs() < 1e-14);
        assert!((beta[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn overdetermined_matches_closed_form() {
        // Simple regression slope = cov(x, y) / var(x).
        let x = [1.0, 2.0, 4.0, 7.0, 11.0];
        let y = vec![0.3, 0.1, 0.9, 1.7, 2.2];
        let mx = x.iter().sum::<f64>() / 5.0;
        let my = y.iter().sum::<f64>() / 5.0;
        let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
        let xc: Vec<f64> = x.iter().map(|a| a - mx).collect();
        let yc: Vec<f64> = y.iter().map(|b| b - my).collect();
        let beta = least_squares(&[xc], &yc).unwrap();
        assert!((beta[0] - sxy / sxx).abs() < 1e-14);
    }

    #[test]
    fn residual_is_orthogonal_to_columns() {
        let c1: Vec<f64> = (1..=9).map(|i| (i as f64).ln()).collect();
        let c2: Vec<f64> = (1..=9).map(|i| ((10 - i) as f64).ln()).collect();
        let ones = vec![1.0; 9];
        let y: Vec<f64> = (1..=9).map(|i| ((i * 7919) % 13) as f64 / 3.0).collect();
        let cols = [ones, c1, c2];
        let beta = least_squares(&cols, &y).unwrap();
        let resid: Vec<f64> = (0..9)
            .map(|i| y[i] - cols.iter().zip(&beta).map(|(c, b)| c[i] * b).sum::<f64>())
            .collect();
        for c in &cols {
            let dot: f64 = c.iter().zip(&resid).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-12, "{dot}");
        }
    }

    #[test]
    fn collinear_columns_are_singular() {
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        assert!(matches!(
            least_squares(&[x, x2], &[1.0, 2.0, 3.0, 4.0]),
            Err(Error::Singular)
        ));
        assert!(matches!(
            least_squares(&[vec![0.0; 3]], &[1.0, 2.0, 3.0]),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn shifted_mean_is_exact_for_constants() {
        let xs = vec![0.1; 7];
        assert_eq!(shifted_mean(&xs), 0.1);
        assert_eq!(shifted_mean(&[1.0, 2.0, 3.0]), 2.0);
    }
}
