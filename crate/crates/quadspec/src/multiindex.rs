//! Multi-indices, shell orderings and log-factorials.

use std::sync::OnceLock;

pub type MultiIndex = Vec<u32>;

pub fn order(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// All `α ∈ N^n` with `|α| = m`, sorted by the shell comparator
/// `α ≺ β ⇔ Σ j α_j > Σ j β_j` (ties broken lexicographically, descending).
pub fn homogeneous(n: usize, m: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, m, &mut out);
    out.sort_by(|a, b| shell_cmp(a, b));
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

fn weighted(alpha: &[u32]) -> u64 {
    alpha.iter().enumerate().map(|(j, &a)| (j as u64 + 1) * a as u64).sum()
}

pub fn shell_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    weighted(b).cmp(&weighted(a)).then_with(|| b.cmp(a))
}

/// All `|α| ≤ d`, shell by shell.
pub fn graded(n: usize, d: u32) -> Vec<MultiIndex> {
    (0..=d).flat_map(|m| homogeneous(n, m)).collect()
}

/// `C(m + n − 1, n − 1)`, the number of `α ∈ N^n` with `|α| = m`.
pub fn shell_dim(n: usize, m: u32) -> usize {
    if n == 0 {
        return usize::from(m == 0);
    }
    let mut num: u128 = 1;
    for k in 1..n as u128 {
        num = num * (m as u128 + k) / k;
    }
    num as usize
}

static LN_FACT: OnceLock<Vec<f64>> = OnceLock::new();
const LN_FACT_LEN: usize = 4096;

/// `ln k!`, tabulated for small `k` and by Stirling's series beyond.
pub fn ln_factorial(k: usize) -> f64 {
    let table = LN_FACT.get_or_init(|| {
        let mut t = vec![0.0; LN_FACT_LEN];
        for i in 1..LN_FACT_LEN {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    if k < LN_FACT_LEN {
        return table[k];
    }
    let x = k as f64 + 1.0;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

pub fn ln_alpha_factorial(alpha: &[u32]) -> f64 {
    alpha.iter().map(|&a| ln_factorial(a as usize)).sum()
}

pub fn factorial(k: u32) -> f64 {
    ln_factorial(k as usize).exp()
}

/// `α!` computed exactly in floating point for small entries.
pub fn alpha_factorial(alpha: &[u32]) -> f64 {
    alpha.iter().map(|&a| (1..=a).map(f64::from).product::<f64>()).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_have_binomial_size_and_order() {
        for n in 1..5 {
            for m in 0..7 {
                let s = homogeneous(n, m);
                assert_eq!(s.len(), shell_dim(n, m));
                assert!(s.iter().all(|a| order(a) == m));
                assert!(s.windows(2).all(|w| weighted(&w[0]) >= weighted(&w[1])));
            }
        }
        assert_eq!(homogeneous(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn log_factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert!((ln_factorial(10) - 3628800f64.ln()).abs() < 1e-12);
        let k = LN_FACT_LEN + 10;
        let direct: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        assert!((ln_factorial(k) - direct).abs() < 1e-8 * direct);
        assert_eq!(alpha_factorial(&[3, 2]), 12.0);
    }
}
