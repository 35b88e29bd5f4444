//! Bound expressions reported next to measured values.

use anyhow::{bail, Result};

/// `(8 * 2^d + 1) / sqrt(log2 n) * sum(alpha)`.
pub fn sampling_lemma_bound(d: usize, n: usize, alpha_sum: f64) -> f64 {
    (8.0 * 2f64.powi(d as i32) + 1.0) / (n as f64).log2().sqrt() * alpha_sum
}

/// `(3 (d+1)^p + 1) / n^p`.
pub fn weighted_sample_bound(d: usize, n: usize, p: f64) -> f64 {
    (3.0 * ((d + 1) as f64).powf(p) + 1.0) / (n as f64).powf(p)
}

/// Exponent used with [`weighted_sample_bound`].
pub const WEIGHTED_SAMPLE_EXPONENT: f64 = 3.0 / 8.0;

/// Probability that `k` uniform draws from `n` items repeat one:
/// `1 - n (n-1) ... (n-k+1) / n^k`.
pub fn repeat_probability(n: usize, k: usize) -> f64 {
    if k > n {
        return 1.0;
    }
    1.0 - (0..k).map(|i| (n - i) as f64 / n as f64).product::<f64>()
}

/// Upper deviation in the norm-concentration statement: `5 (d+1)^2 / sqrt(n^(1/(d+1)))`.
pub fn norm_concentration_upper(d: usize, n: usize) -> f64 {
    let k = (d + 1) as f64;
    5.0 * k * k / (n as f64).powf(1.0 / k).sqrt()
}

/// Density-gap threshold `0.999 * 2^-((1+n)^(d+2))`.
pub fn inverse_counting_threshold(n: usize, d: usize) -> f64 {
    0.999 * (-((1.0 + n as f64).powi(d as i32 + 2))).exp2()
}

/// `(2^(d+4) + 2) / sqrt(log2 n) * sum(alpha)`.
pub fn inverse_counting_bound(d: usize, n: usize, alpha_sum: f64) -> f64 {
    (2f64.powi(d as i32 + 4) + 2.0) / (n as f64).log2().sqrt() * alpha_sum
}

/// Stepfunction version: `(sqrt(m) (4d + 5) + 4) / sqrt(n) * sum(alpha)`.
pub fn step_inverse_counting_bound(m: usize, d: usize, n: usize, alpha_sum: f64) -> f64 {
    ((m as f64).sqrt() * (4.0 * d as f64 + 5.0) + 4.0) / (n as f64).sqrt() * alpha_sum
}

/// `sqrt((d+1) / log2 k)`; infinite for one class.
pub fn regularity_bound(d: usize, classes: usize) -> f64 {
    if classes < 2 {
        return f64::INFINITY;
    }
    ((d + 1) as f64 / (classes as f64).log2()).sqrt()
}

/// Shortest induced cycle length possible on the bouquet at scale `eps`:
/// `floor(pi / arcsin(eps / 2))`.
pub fn cech_cycle_threshold(eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 2.0) {
        bail!("epsilon must lie in (0, 2), got {eps}");
    }
    Ok((std::f64::consts::PI / (eps / 2.0).asin()).floor() as usize)
}

pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(cech_cycle_threshold(0.5).unwrap(), 12);
        assert!(cech_cycle_threshold(2.0).is_err());
        assert!((regularity_bound(1, 8) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((sampling_lemma_bound(2, 256, 0.75) - 33.0 / 8f64.sqrt() * 0.75).abs() < 1e-12);
        assert_eq!(repeat_probability(4, 1), 0.0);
        assert!((repeat_probability(4, 2) - 0.25).abs() < 1e-15);
        assert_eq!(repeat_probability(2, 3), 1.0);
        assert!(inverse_counting_threshold(3, 1) < 1e-19);
        assert!((weighted_sample_bound(1, 1, 0.375) - (3.0 * 2f64.powf(0.375) + 1.0)).abs() < 1e-12);
    }
}
