//! Summary statistics and the tests used to compare variants.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Standard error of the mean: sample std / sqrt(n).
pub fn sem(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    sample_std(xs) / (xs.len() as f64).sqrt()
}

/// Mean and SEM of a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub sem: f64,
}

impl Summary {
    pub fn of(xs: &[f64]) -> Self {
        Self {
            n: xs.len(),
            mean: mean(xs),
            sem: sem(xs),
        }
    }
}

/// Midranks (1-based) of the pooled values and the tie-correction sum
/// `sum(t^3 - t)` over tie groups.
fn midranks(pooled: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        let t = (j - i + 1) as f64;
        ties += t * t * t - t;
        i = j + 1;
    }
    (ranks, ties)
}

/// Result of a two-sided Mann-Whitney rank-sum test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankSum {
    /// U statistic of the first sample.
    pub u: f64,
    pub p_value: f64,
    pub exact: bool,
}

/// Exact two-sided p-value from the null distribution of U (no ties).
fn exact_rank_sum_p(u: f64, n1: usize, n2: usize) -> f64 {
    // counts[m][u]: arrangements of m first-sample items among the rest with statistic u,
    // built up one second-sample item at a time.
    let max_u = n1 * n2;
    let mut table = vec![vec![0f64; max_u + 1]; n1 + 1];
    for row in table.iter_mut() {
        row[0] = 1.0;
    }
    for j in 1..=n2 {
        let mut next = vec![vec![0f64; max_u + 1]; n1 + 1];
        next[0][0] = 1.0;
        for i in 1..=n1 {
            for v in 0..=i * j {
                let mut c = table[i][v];
                if v >= j {
                    c += next[i - 1][v - j];
                }
                next[i][v] = c;
            }
        }
        table = next;
    }
    let counts = &table[n1];
    let total: f64 = counts.iter().sum();
    let centre = (n1 * n2) as f64 / 2.0;
    let dist = (u - centre).abs();
    let extreme: f64 = counts
        .iter()
        .enumerate()
        .filter(|(v, _)| (*v as f64 - centre).abs() >= dist - 1e-9)
        .map(|(_, c)| c)
        .sum();
    (extreme / total).min(1.0)
}

/// Two-sided Mann-Whitney U test. Exact for small tie-free samples, otherwise
/// the normal approximation with tie and continuity corrections.
pub fn mann_whitney(a: &[f64], b: &[f64]) -> RankSum {
    let (n1, n2) = (a.len(), b.len());
    assert!(n1 > 0 && n2 > 0, "rank-sum test needs two non-empty samples");
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let r1: f64 = ranks[..n1].iter().sum();
    let u = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    if ties == 0.0 && n1 * n2 <= 400 {
        return RankSum {
            u,
            p_value: exact_rank_sum_p(u, n1, n2),
            exact: true,
        };
    }
    let n = (n1 + n2) as f64;
    let mu = (n1 * n2) as f64 / 2.0;
    let var = (n1 * n2) as f64 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var <= 0.0 {
        return RankSum {
            u,
            p_value: 1.0,
            exact: false,
        };
    }
    let diff = (u - mu).abs() - 0.5;
    let z = diff.max(0.0) / var.sqrt();
    let normal = Normal::standard();
    RankSum {
        u,
        p_value: (2.0 * (1.0 - normal.cdf(z))).min(1.0),
        exact: false,
    }
}

/// Pearson chi-square goodness of fit against equal expected counts.
/// Returns `(statistic, p_value)`.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let k = counts.len();
    assert!(k >= 2);
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / k as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((k - 1) as f64).expect("k >= 2");
    (stat, 1.0 - dist.cdf(stat))
}
