//! Spearman rank correlation with exact small-sample p-values.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::lexical::{LexicalMetric, LexicalProfile};

/// Largest sample size for which p-values are computed by full enumeration.
pub const EXACT_MAX_N: usize = 8;

// Relative slack when comparing permuted statistics against the observed one.
const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PValueMethod {
    #[serde(rename = "exact-permutation")]
    ExactPermutation,
    #[serde(rename = "t-approximation")]
    TApproximation,
}

impl PValueMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            PValueMethod::ExactPermutation => "exact-permutation",
            PValueMethod::TApproximation => "t-approximation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub rho: f64,
    /// Two-sided.
    pub p_value: f64,
    pub n: usize,
    pub method: PValueMethod,
}

/// 1-based ranks; tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

fn check_inputs(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::TooFewObservations { needed: 3, got: x.len() });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateInput("non-finite value".into()));
    }
    for (name, v) in [("x", x), ("y", y)] {
        if v.iter().all(|&a| a == v[0]) {
            return Err(Error::DegenerateInput(format!("{name} is constant")));
        }
    }
    Ok(())
}

fn centered(ranks: &[f64]) -> Vec<f64> {
    let mean = ranks.iter().sum::<f64>() / ranks.len() as f64;
    ranks.iter().map(|r| r - mean).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pearson correlation of the average-rank vectors.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    check_inputs(x, y)?;
    let cx = centered(&average_ranks(x));
    let cy = centered(&average_ranks(y));
    let rho = dot(&cx, &cy) / (dot(&cx, &cx) * dot(&cy, &cy)).sqrt();
    Ok(rho.clamp(-1.0, 1.0))
}

/// Uses exact enumeration for `n <= 8` and the t approximation above that.
pub fn spearman_pvalue(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    if x.len() <= EXACT_MAX_N {
        spearman_exact(x, y)
    } else {
        spearman_t_approximation(x, y)
    }
}

/// Two-sided p-value as the share of all `n!` rearrangements of `y`'s ranks
/// whose |rho| is at least the observed |rho|.
pub fn spearman_exact(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    check_inputs(x, y)?;
    let n = x.len();
    if n > 12 {
        return Err(Error::DegenerateInput(format!("exact enumeration of {n}! permutations refused")));
    }
    let cx = centered(&average_ranks(x));
    let mut cy = centered(&average_ranks(y));
    let norm = (dot(&cx, &cx) * dot(&cy, &cy)).sqrt();
    let observed = dot(&cx, &cy);
    let threshold = observed.abs() * (1.0 - TIE_EPS) - TIE_EPS;

    // Heap's algorithm, iterative form.
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    let mut visit = |cy: &[f64]| {
        total += 1;
        if dot(&cx, cy).abs() >= threshold {
            hits += 1;
        }
    };
    visit(&cy);
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                cy.swap(0, i);
            } else {
                cy.swap(c[i], i);
            }
            visit(&cy);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    Ok(CorrelationResult {
        rho: (observed / norm).clamp(-1.0, 1.0),
        p_value: hits as f64 / total as f64,
        n,
        method: PValueMethod::ExactPermutation,
    })
}

/// `t = rho * sqrt((n - 2) / (1 - rho²))` against Student t with `n - 2` df.
pub fn spearman_t_approximation(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    let rho = spearman_rho(x, y)?;
    let n = x.len();
    let df = (n - 2) as f64;
    let p = if rho.abs() >= 1.0 {
        0.0
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
        2.0 * (1.0 - dist.cdf(t.abs()))
    };
    Ok(CorrelationResult {
        rho,
        p_value: p.clamp(f64::MIN_POSITIVE, 1.0),
        n,
        method: PValueMethod::TApproximation,
    })
}

/// Correlation of one metric with corpus size.
#[derive(Debug)]
pub struct SizeCorrelation {
    pub metric: LexicalMetric,
    pub result: Result<CorrelationResult>,
}

/// Spearman test of every [`LexicalMetric`] against token count. A metric
/// that cannot be correlated carries its error instead of aborting the table.
pub fn correlate_with_size(profiles: &[LexicalProfile]) -> Result<Vec<SizeCorrelation>> {
    if profiles.len() < 3 {
        return Err(Error::TooFewObservations {
            needed: 3,
            got: profiles.len(),
        });
    }
    let sizes: Vec<f64> = profiles.iter().map(|p| p.token_count as f64).collect();
    Ok(LexicalMetric::ALL
        .iter()
        .map(|&metric| {
            let values: Option<Vec<f64>> = profiles.iter().map(|p| metric.value(p)).collect();
            let result = match values {
                Some(v) => spearman_pvalue(&v, &sizes),
                None => Err(Error::UndefinedMetric(format!("{} missing for some corpora", metric.key()))),
            };
            SizeCorrelation { metric, result }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const SIZES: [f64; 6] = [43840.0, 43482.0, 48922.0, 49670.0, 49179.0, 50424.0];
    const TYPES: [f64; 6] = [10407.0, 7677.0, 9977.0, 8746.0, 11451.0, 9830.0];
    const TTRS: [f64; 6] = [0.237, 0.177, 0.204, 0.176, 0.233, 0.160];

    #[test]
    fn ranks_with_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 20.0, 5.0]), vec![2.0, 3.5, 3.5, 1.0]);
    }

    #[test]
    fn identity_and_reversal() {
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[9.0, 5.0, 1.0]).unwrap(), -1.0);
    }

    #[test]
    fn table_rows() {
        // d² sums 32 and 56
        assert_abs_diff_eq!(spearman_rho(&TYPES, &SIZES).unwrap(), 1.0 - 192.0 / 210.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spearman_rho(&TTRS, &SIZES).unwrap(), 1.0 - 336.0 / 210.0, epsilon = 1e-12);
    }

    #[test]
    fn t_approximation_matches_published_p_values() {
        let r = spearman_t_approximation(&TYPES, &SIZES).unwrap();
        assert_abs_diff_eq!(r.p_value, 0.872, epsilon = 0.001);
        let r = spearman_t_approximation(&TTRS, &SIZES).unwrap();
        assert_abs_diff_eq!(r.p_value, 0.208, epsilon = 0.001);
    }

    #[test]
    fn exact_opposite_n4() {
        let r = spearman_pvalue(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]).unwrap();
        assert_eq!(r.rho, -1.0);
        assert_abs_diff_eq!(r.p_value, 2.0 / 24.0, epsilon = 1e-15);
        assert_eq!(r.method, PValueMethod::ExactPermutation);
    }

    #[test]
    fn exact_n3() {
        // permutations of [2,1,3] give rho in {1, .5, .5, -.5, -.5, -1}: all have |rho| >= .5
        let r = spearman_pvalue(&[1.0, 2.0, 3.0], &[2.0, 1.0, 3.0]).unwrap();
        assert_abs_diff_eq!(r.rho, 0.5, epsilon = 1e-12);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(spearman_rho(&[1.0, 2.0, 3.0], &[1.0, 2.0]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(spearman_rho(&[1.0, 2.0], &[1.0, 2.0]), Err(Error::TooFewObservations { .. })));
        assert!(matches!(spearman_rho(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(Error::DegenerateInput(_))));
        assert!(matches!(spearman_rho(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0]), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn large_n_uses_t_approximation() {
        let x: Vec<f64> = (0..20).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| (v * 7.0) % 20.0).collect();
        let r = spearman_pvalue(&x, &y).unwrap();
        assert_eq!(r.method, PValueMethod::TApproximation);
        assert!(r.p_value > 0.0 && r.p_value <= 1.0);
        let perfect = spearman_pvalue(&x, &x).unwrap();
        assert!(perfect.p_value > 0.0);
    }
}
