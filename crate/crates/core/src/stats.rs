//! Population moments and percentiles over small samples.

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Central moment of order `k` (population, divides by n).
pub fn central_moment(xs: &[f64], k: i32) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(k)).sum::<f64>() / xs.len() as f64
}

pub fn variance(xs: &[f64]) -> f64 {
    central_moment(xs, 2)
}

/// Fisher-Pearson coefficient m3 / m2^1.5; 0 when n < 2 or the variance is 0.
pub fn skewness(xs: &[f64]) -> f64 {
    let m2 = variance(xs);
    if xs.len() < 2 || m2 == 0.0 {
        return 0.0;
    }
    central_moment(xs, 3) / m2.powf(1.5)
}

/// Excess kurtosis m4 / m2^2 - 3; 0 when n < 2 or the variance is 0.
pub fn kurtosis(xs: &[f64]) -> f64 {
    let m2 = variance(xs);
    if xs.len() < 2 || m2 == 0.0 {
        return 0.0;
    }
    central_moment(xs, 4) / (m2 * m2) - 3.0
}

/// Linear interpolation between closest ranks at position (n - 1) * p.
/// `sorted` must be ascending.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    match sorted.len() {
        0 => 0.0,
        1 => sorted[0],
        n => {
            let pos = (n - 1) as f64 * p;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            let frac = pos - lo as f64;
            sorted[lo] + (sorted[hi] - sorted[lo]) * frac
        }
    }
}
