use corpvar::rank_stats::{spearman_exact, spearman_pvalue, spearman_rho, PValueMethod};
use proptest::prelude::*;

fn distinct(n: usize) -> impl Strategy<Value = Vec<f64>> {
    Just((1..=n).map(|i| i as f64).collect::<Vec<_>>()).prop_shuffle()
}

fn pair(max_n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3..=max_n).prop_flat_map(|n| (distinct(n), distinct(n)))
}

/// Tie-free rho from the squared rank differences.
fn rho_from_d2(x: &[usize], y: &[usize]) -> f64 {
    let n = x.len() as f64;
    let d2: f64 = x.iter().zip(y).map(|(&a, &b)| ((a as f64) - (b as f64)).powi(2)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Share of all orderings of y's ranks reaching |rho| >= observed.
fn brute_p(x: &[f64], y: &[f64]) -> f64 {
    let rank = |v: &[f64]| -> Vec<usize> { v.iter().map(|a| v.iter().filter(|b| *b < a).count() + 1).collect() };
    let rx = rank(x);
    let ry = rank(y);
    let observed = rho_from_d2(&rx, &ry).abs();
    let mut all = Vec::new();
    permutations(&mut ry.clone(), 0, &mut all);
    let hits = all.iter().filter(|p| rho_from_d2(&rx, p).abs() >= observed - 1e-12).count();
    hits as f64 / all.len() as f64
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

proptest! {
    #[test]
    fn invariant_under_increasing_transform((x, y) in pair(10)) {
        let ex: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let a = spearman_rho(&x, &y).unwrap();
        let b = spearman_rho(&ex, &y).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn symmetric_and_odd((x, y) in pair(10)) {
        let r = spearman_rho(&x, &y).unwrap();
        prop_assert!((r - spearman_rho(&y, &x).unwrap()).abs() < 1e-12);
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        prop_assert!((r + spearman_rho(&x, &neg).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn exact_p_matches_brute_force((x, y) in pair(5)) {
        let r = spearman_exact(&x, &y).unwrap();
        prop_assert!((r.p_value - brute_p(&x, &y)).abs() < 1e-12);
        prop_assert!((r.rho - rho_from_d2(
            &x.iter().map(|&v| v as usize).collect::<Vec<_>>(),
            &y.iter().map(|&v| v as usize).collect::<Vec<_>>(),
        )).abs() < 1e-12);
    }

    #[test]
    fn p_at_least_one_over_n_factorial(
        x in prop::collection::vec(0u8..5, 3..=8),
        y in prop::collection::vec(0u8..5, 8),
    ) {
        let x: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let y: Vec<f64> = y[..x.len()].iter().map(|&v| v as f64).collect();
        if let Ok(r) = spearman_pvalue(&x, &y) {
            prop_assert_eq!(r.method, PValueMethod::ExactPermutation);
            prop_assert!(r.p_value >= 1.0 / factorial(x.len()) && r.p_value <= 1.0);
            prop_assert!(r.rho.abs() <= 1.0);
        }
    }
}
