use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, DiscreteCDF};

/// Chi-square goodness-of-fit p-value for observed counts against expected
/// probabilities (df = k-1).
pub fn chi_square_p(observed: &[u64], probs: &[f64]) -> f64 {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    for (o, p) in observed.iter().zip(probs) {
        let e = total as f64 * p;
        if e > 0.0 {
            stat += (*o as f64 - e).powi(2) / e;
        }
    }
    let df = (observed.len() - 1).max(1) as f64;
    let dist = ChiSquared::new(df).expect("df > 0");
    1.0 - dist.cdf(stat)
}

/// One-sided binomial check at significance `alpha`: with `successes` out
/// of `trials`, is the data consistent with success probability at least
/// `p0`? Passes unless P[Bin(trials, p0) <= successes] <= alpha.
pub fn binomial_tail_ok(successes: u64, trials: u64, p0: f64, alpha: f64) -> bool {
    if trials == 0 {
        return true;
    }
    let dist = Binomial::new(p0, trials).expect("valid binomial");
    dist.cdf(successes) > alpha
}

/// |observed - expected| <= 3 * sqrt(n p (1-p)).
pub fn three_sigma(observed: u64, n: u64, p: f64) -> bool {
    let mean = n as f64 * p;
    let sigma = (n as f64 * p * (1.0 - p)).sqrt();
    (observed as f64 - mean).abs() <= 3.0 * sigma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_square_on_fair_counts() {
        let p = chi_square_p(&[250, 245, 260, 245], &[0.25; 4]);
        assert!(p > 0.01, "{p}");
        let p_bad = chi_square_p(&[500, 100, 200, 200], &[0.25; 4]);
        assert!(p_bad < 1e-6, "{p_bad}");
    }

    #[test]
    fn binomial_boundaries() {
        // 300 trials at p0=2/3: 200 successes is obviously fine, 150 is
        // obviously evidence against.
        assert!(binomial_tail_ok(200, 300, 2.0 / 3.0, 0.05));
        assert!(!binomial_tail_ok(150, 300, 2.0 / 3.0, 0.05));
        assert!(binomial_tail_ok(0, 0, 0.5, 0.05));
    }
}
