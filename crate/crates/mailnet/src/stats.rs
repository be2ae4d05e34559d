//! Distribution comparison and dimensionality reduction: the adapted
//! two-sample Kolmogorov-Smirnov statistic, Pearson correlation matrices
//! with pairwise-complete handling of absent values, and PCA with
//! threshold-filtered loading tables.

use crate::textmetrics::FeatureMatrix;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, thiserror::Error)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFiniteSample,
    #[error("need at least two rows, got {0}")]
    TooFewRows(usize),
    #[error("all features are constant; no dispersion to decompose")]
    DegenerateMatrix,
}

/// A nonempty sample of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
}

impl EmpiricalSample {
    pub fn new(values: Vec<f64>) -> Result<EmpiricalSample, StatsError> {
        if values.is_empty() {
            return Err(StatsError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::NonFiniteSample);
        }
        Ok(EmpiricalSample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Critical values c(alpha) for the two-sample test, largest alpha first.
pub const KS_CRITICAL: [(f64, f64); 6] = [
    (0.1, 1.22),
    (0.05, 1.36),
    (0.025, 1.48),
    (0.01, 1.63),
    (0.005, 1.73),
    (0.001, 1.95),
];

/// Critical value c(alpha) for a tabulated level.
pub fn ks_critical(alpha: f64) -> Option<f64> {
    KS_CRITICAL
        .iter()
        .find(|(a, _)| *a == alpha)
        .map(|(_, c)| *c)
}

/// Above this reference value two empirical distributions are flagged as
/// differing in the reports.
pub fn ks_reference_threshold() -> f64 {
    1.7
}

/// Result of the adapted two-sample comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct KsResult {
    /// Two-sided sup distance between the empirical distribution functions.
    pub d_stat: f64,
    pub n: usize,
    pub n_prime: usize,
    /// d_stat / sqrt((n + n') / (n * n')).
    pub c_prime: f64,
    /// Most stringent tabulated alpha at which the null hypothesis is
    /// rejected (c(alpha) < c'), if any.
    pub reject_at: Option<f64>,
}

impl KsResult {
    /// Whether the report should flag the pair as differing.
    pub fn differs(&self) -> bool {
        self.c_prime > ks_reference_threshold()
    }
}

/// Sup over pooled sample points of |ECDF_a - ECDF_b|, with the adapted
/// statistic c' that isolates the critical value.
pub fn ks_adapted(a: &EmpiricalSample, b: &EmpiricalSample) -> KsResult {
    let n = a.len();
    let m = b.len();
    let mut xs = a.values.clone();
    let mut ys = b.values.clone();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);

    let mut d_stat = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < n || j < m {
        // next evaluation point is the smaller upcoming value
        let x = match (xs.get(i), ys.get(j)) {
            (Some(&xv), Some(&yv)) => xv.min(yv),
            (Some(&xv), None) => xv,
            (None, Some(&yv)) => yv,
            (None, None) => break,
        };
        while i < n && xs[i] <= x {
            i += 1;
        }
        while j < m && ys[j] <= x {
            j += 1;
        }
        let fa = i as f64 / n as f64;
        let fb = j as f64 / m as f64;
        let diff = (fa - fb).abs();
        if diff > d_stat {
            d_stat = diff;
        }
    }

    let c_prime = d_stat / ((n + m) as f64 / (n as f64 * m as f64)).sqrt();
    let mut reject_at = None;
    for (alpha, c) in KS_CRITICAL {
        if c < c_prime {
            reject_at = Some(alpha);
        }
    }
    KsResult {
        d_stat,
        n,
        n_prime: m,
        c_prime,
        reject_at,
    }
}

// ------------------------------------------------------------- correlation

/// Symmetric Pearson matrix over pairwise-complete observations.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    /// `r[i][j]`, absent when either column is constant over the shared
    /// rows or fewer than two shared rows exist.
    pub r: Vec<Vec<Option<f64>>>,
    /// Effective observation count behind each cell.
    pub n_eff: Vec<Vec<usize>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        self.r[i][j]
    }
}

/// Pearson r of two equally long slices; `None` when either side is
/// constant or fewer than two points are given.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx.sqrt() * vy.sqrt()))
}

pub fn correlation_matrix(features: &FeatureMatrix) -> Result<CorrelationMatrix, StatsError> {
    let rows = features.rows.len();
    if rows < 2 {
        return Err(StatsError::TooFewRows(rows));
    }
    let k = features.feature_names.len();
    let mut r = vec![vec![None; k]; k];
    let mut n_eff = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in i..k {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for row in &features.rows {
                if let (Some(x), Some(y)) = (row[i], row[j]) {
                    xs.push(x);
                    ys.push(y);
                }
            }
            n_eff[i][j] = xs.len();
            n_eff[j][i] = xs.len();
            let value = if i == j {
                // diagonal is exactly 1 wherever the column varies
                pearson(&xs, &ys).map(|_| 1.0)
            } else {
                pearson(&xs, &ys)
            };
            r[i][j] = value;
            r[j][i] = value;
        }
    }
    Ok(CorrelationMatrix {
        names: features.feature_names.clone(),
        r,
        n_eff,
    })
}

// -------------------------------------------------------------------- PCA

pub use crate::config::PcaMode;

/// Principal components of a feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaResult {
    pub feature_names: Vec<String>,
    /// Percentage of total dispersion per component, descending.
    pub lambda_pct: Vec<f64>,
    /// Raw eigenvalues in the same order.
    pub eigenvalues: Vec<f64>,
    /// components x features; rows are unit eigenvectors with the
    /// largest-magnitude entry made positive. Columns dropped from the
    /// decomposition (constant features in correlation mode) hold zeros.
    pub loadings: Vec<Vec<f64>>,
    /// Indices of the features that entered the decomposition.
    pub retained: Vec<usize>,
}

/// PCA over listwise-complete rows. Correlation mode (the default used by
/// reports) z-scores columns, so constant columns are excluded from the
/// decomposition; covariance mode keeps them and assigns them zero
/// dispersion.
pub fn pca(features: &FeatureMatrix, mode: PcaMode) -> Result<PcaResult, StatsError> {
    let complete: Vec<&Vec<Option<f64>>> = features
        .rows
        .iter()
        .filter(|row| row.iter().all(Option::is_some))
        .collect();
    let rows = complete.len();
    if rows < 2 {
        return Err(StatsError::TooFewRows(rows));
    }
    let k = features.feature_names.len();
    let data: Vec<Vec<f64>> = complete
        .iter()
        .map(|row| row.iter().map(|v| v.unwrap()).collect())
        .collect();

    let nf = rows as f64;
    let means: Vec<f64> = (0..k)
        .map(|j| data.iter().map(|r| r[j]).sum::<f64>() / nf)
        .collect();
    let variances: Vec<f64> = (0..k)
        .map(|j| {
            data.iter()
                .map(|r| (r[j] - means[j]) * (r[j] - means[j]))
                .sum::<f64>()
                / nf
        })
        .collect();

    let retained: Vec<usize> = match mode {
        PcaMode::Correlation => (0..k).filter(|j| variances[*j] > 0.0).collect(),
        PcaMode::Covariance => (0..k).collect(),
    };
    if retained.is_empty() || variances.iter().all(|v| *v == 0.0) {
        return Err(StatsError::DegenerateMatrix);
    }

    let kr = retained.len();
    let mut m = DMatrix::<f64>::zeros(kr, kr);
    for (a, &fa) in retained.iter().enumerate() {
        for (b, &fb) in retained.iter().enumerate() {
            let mut cov = 0.0;
            for row in &data {
                cov += (row[fa] - means[fa]) * (row[fb] - means[fb]);
            }
            cov /= nf;
            let value = match mode {
                PcaMode::Covariance => cov,
                PcaMode::Correlation => {
                    let denom = (variances[fa] * variances[fb]).sqrt();
                    if denom == 0.0 {
                        0.0
                    } else {
                        cov / denom
                    }
                }
            };
            m[(a, b)] = value;
        }
    }

    let eigen = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..kr).collect();
    order.sort_by(|&x, &y| {
        eigen.eigenvalues[y]
            .partial_cmp(&eigen.eigenvalues[x])
            .unwrap()
            .then(x.cmp(&y))
    });

    let total: f64 = eigen.eigenvalues.iter().map(|e| e.max(0.0)).sum();
    let mut lambda_pct = Vec::with_capacity(kr);
    let mut eigenvalues = Vec::with_capacity(kr);
    let mut loadings = Vec::with_capacity(kr);
    for &idx in &order {
        let value = eigen.eigenvalues[idx];
        eigenvalues.push(value);
        lambda_pct.push(if total > 0.0 {
            100.0 * value.max(0.0) / total
        } else {
            0.0
        });
        let column: DVector<f64> = eigen.eigenvectors.column(idx).into();
        let mut vector = vec![0.0; k];
        for (a, &fa) in retained.iter().enumerate() {
            vector[fa] = column[a];
        }
        // deterministic sign: largest-magnitude entry positive
        let mut max_pos = 0usize;
        for (p, v) in vector.iter().enumerate() {
            if v.abs() > vector[max_pos].abs() {
                max_pos = p;
            }
        }
        if vector[max_pos] < 0.0 {
            for v in &mut vector {
                *v = -*v;
            }
        }
        loadings.push(vector);
    }

    Ok(PcaResult {
        feature_names: features.feature_names.clone(),
        lambda_pct,
        eigenvalues,
        loadings,
        retained,
    })
}

/// One component's above-threshold entries.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComponent {
    pub component: usize,
    pub lambda_pct: f64,
    pub entries: Vec<(String, f64)>,
}

/// Keep only loading entries with |value| strictly above the threshold
/// (the table convention). The underlying result is untouched.
pub fn filter_loadings(result: &PcaResult, threshold: f64) -> Vec<FilteredComponent> {
    result
        .loadings
        .iter()
        .enumerate()
        .map(|(idx, row)| FilteredComponent {
            component: idx + 1,
            lambda_pct: result.lambda_pct[idx],
            entries: result
                .feature_names
                .iter()
                .zip(row)
                .filter(|(_, v)| v.abs() > threshold)
                .map(|(n, v)| (n.clone(), *v))
                .collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(values: &[f64]) -> EmpiricalSample {
        EmpiricalSample::new(values.to_vec()).unwrap()
    }

    fn matrix(names: &[&str], rows: Vec<Vec<Option<f64>>>) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: names.iter().map(|s| s.to_string()).collect(),
            authors: (0..rows.len()).map(|i| format!("a{i}")).collect(),
            rows,
        }
    }

    /// Independent D computation: evaluate both ECDFs at every pooled
    /// point by explicit counting.
    fn brute_force_d(a: &[f64], b: &[f64]) -> f64 {
        let mut points: Vec<f64> = a.iter().chain(b).copied().collect();
        points.sort_by(f64::total_cmp);
        let mut d = 0.0f64;
        for x in points {
            let fa = a.iter().filter(|v| **v <= x).count() as f64 / a.len() as f64;
            let fb = b.iter().filter(|v| **v <= x).count() as f64 / b.len() as f64;
            let diff = (fa - fb).abs();
            if diff > d {
                d = diff;
            }
        }
        d
    }

    #[test]
    fn identical_samples_do_not_reject() {
        let a = sample(&[1.0, 2.0, 3.0]);
        let r = ks_adapted(&a, &a);
        assert_eq!(r.d_stat, 0.0);
        assert_eq!(r.c_prime, 0.0);
        assert_eq!(r.reject_at, None);
        assert!(!r.differs());
    }

    #[test]
    fn disjoint_samples_reject_at_the_weakest_level() {
        let a = sample(&[1.0, 2.0, 3.0]);
        let b = sample(&[4.0, 5.0, 6.0]);
        let r = ks_adapted(&a, &b);
        assert_eq!(r.d_stat, 1.0);
        assert!((r.c_prime - 1.0 / (6.0f64 / 9.0).sqrt()).abs() < 1e-12);
        assert!((r.c_prime - 1.2247448713915892).abs() < 1e-12);
        assert_eq!(r.reject_at, Some(0.1));
    }

    #[test]
    fn critical_value_table_lookup() {
        assert_eq!(ks_critical(0.05), Some(1.36));
        assert_eq!(ks_critical(0.42), None);
    }

    #[test]
    fn reference_threshold_flags() {
        assert_eq!(ks_reference_threshold(), 1.7);
        let strong = KsResult {
            d_stat: 0.5,
            n: 100,
            n_prime: 100,
            c_prime: 5.58,
            reject_at: Some(0.001),
        };
        assert!(strong.differs());
        let weak = KsResult {
            d_stat: 0.05,
            n: 100,
            n_prime: 100,
            c_prime: 0.25,
            reject_at: None,
        };
        assert!(!weak.differs());
    }

    #[test]
    fn d_matches_brute_force_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=30);
            let m = rng.gen_range(1..=30);
            let a: Vec<f64> = (0..n).map(|_| (rng.gen::<f64>() * 8.0).round() / 4.0).collect();
            let b: Vec<f64> = (0..m).map(|_| (rng.gen::<f64>() * 8.0).round() / 4.0).collect();
            let got = ks_adapted(&sample(&a), &sample(&b)).d_stat;
            let expected = brute_force_d(&a, &b);
            assert_eq!(got, expected, "exact D mismatch for {a:?} vs {b:?}");
        }
    }

    #[test]
    fn ks_is_symmetric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a: Vec<f64> = (0..rng.gen_range(1..=20)).map(|_| rng.gen()).collect();
            let b: Vec<f64> = (0..rng.gen_range(1..=20)).map(|_| rng.gen()).collect();
            let ab = ks_adapted(&sample(&a), &sample(&b));
            let ba = ks_adapted(&sample(&b), &sample(&a));
            assert_eq!(ab.d_stat, ba.d_stat);
            assert_eq!(ab.c_prime, ba.c_prime);
            assert_eq!(ab.reject_at, ba.reject_at);
        }
    }

    #[test]
    fn empty_sample_is_rejected_at_construction() {
        assert!(matches!(
            EmpiricalSample::new(vec![]),
            Err(StatsError::EmptySample)
        ));
        assert!(matches!(
            EmpiricalSample::new(vec![f64::NAN]),
            Err(StatsError::NonFiniteSample)
        ));
    }

    #[test]
    fn pearson_identity_and_negation() {
        let fm = matrix(
            &["x", "y", "z"],
            vec![
                vec![Some(1.0), Some(-1.0), Some(1.0)],
                vec![Some(2.0), Some(-2.0), Some(2.0)],
                vec![Some(3.0), Some(-3.0), Some(4.0)],
            ],
        );
        let cm = correlation_matrix(&fm).unwrap();
        assert_eq!(cm.get("x", "x"), Some(1.0));
        assert!((cm.get("x", "y").unwrap() + 1.0).abs() < 1e-12);
        // hand Pearson for [1,2,3] vs [1,2,4]
        let r = cm.get("x", "z").unwrap();
        assert!((r - 0.9819805060619659).abs() < 1e-12);
        assert!((r - 0.9820).abs() < 1e-4);
    }

    #[test]
    fn pearson_affine_invariance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<f64> = (0..50).map(|_| rng.gen::<f64>() * 10.0).collect();
        let ys: Vec<f64> = (0..50).map(|_| rng.gen::<f64>() * 10.0).collect();
        let base = pearson(&xs, &ys).unwrap();
        let xs2: Vec<f64> = xs.iter().map(|x| 3.5 * x + 11.0).collect();
        let ys2: Vec<f64> = ys.iter().map(|y| 0.25 * y - 2.0).collect();
        let transformed = pearson(&xs2, &ys2).unwrap();
        assert!((base - transformed).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_columns_are_absent_not_zero() {
        let fm = matrix(
            &["x", "const"],
            vec![
                vec![Some(1.0), Some(7.0)],
                vec![Some(2.0), Some(7.0)],
                vec![Some(3.0), Some(7.0)],
            ],
        );
        let cm = correlation_matrix(&fm).unwrap();
        assert_eq!(cm.get("x", "const"), None);
        assert_eq!(cm.get("const", "const"), None);
        assert_eq!(cm.get("x", "x"), Some(1.0));
    }

    #[test]
    fn pairwise_complete_uses_shared_rows_only() {
        let fm = matrix(
            &["x", "y"],
            vec![
                vec![Some(1.0), Some(1.0)],
                vec![Some(2.0), None],
                vec![Some(3.0), Some(3.0)],
                vec![Some(4.0), Some(4.0)],
            ],
        );
        let cm = correlation_matrix(&fm).unwrap();
        assert_eq!(cm.n_eff[0][1], 3);
        assert!((cm.get("x", "y").unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_rows_is_an_error() {
        let fm = matrix(&["x"], vec![vec![Some(1.0)]]);
        assert!(matches!(
            correlation_matrix(&fm),
            Err(StatsError::TooFewRows(1))
        ));
        assert!(matches!(pca(&fm, PcaMode::Correlation), Err(StatsError::TooFewRows(1))));
    }

    #[test]
    fn axis_aligned_variance_in_covariance_mode() {
        let fm = matrix(
            &["x", "y"],
            vec![
                vec![Some(0.0), Some(5.0)],
                vec![Some(1.0), Some(5.0)],
                vec![Some(2.0), Some(5.0)],
            ],
        );
        let r = pca(&fm, PcaMode::Covariance).unwrap();
        assert_eq!(r.lambda_pct.len(), 2);
        assert!((r.lambda_pct[0] - 100.0).abs() < 1e-9);
        assert!(r.lambda_pct[1].abs() < 1e-9);
        assert!((r.loadings[0][0] - 1.0).abs() < 1e-9);
        assert!(r.loadings[0][1].abs() < 1e-9);
    }

    #[test]
    fn perfectly_correlated_pair_in_correlation_mode() {
        let fm = matrix(
            &["x", "y"],
            vec![
                vec![Some(1.0), Some(2.0)],
                vec![Some(2.0), Some(4.0)],
                vec![Some(3.0), Some(6.0)],
            ],
        );
        let r = pca(&fm, PcaMode::Correlation).unwrap();
        assert!((r.lambda_pct[0] - 100.0).abs() < 1e-9);
        assert!(r.lambda_pct[1].abs() < 1e-9);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((r.loadings[0][0] - inv_sqrt2).abs() < 1e-9);
        assert!((r.loadings[0][1] - inv_sqrt2).abs() < 1e-9);
    }

    #[test]
    fn lambda_is_descending_and_sums_to_100() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let rows: Vec<Vec<Option<f64>>> = (0..40)
            .map(|_| (0..6).map(|_| Some(rng.gen::<f64>() * 10.0)).collect())
            .collect();
        let fm = matrix(&["a", "b", "c", "d", "e", "f"], rows);
        let r = pca(&fm, PcaMode::Correlation).unwrap();
        let sum: f64 = r.lambda_pct.iter().sum();
        assert!((sum - 100.0).abs() < 0.01);
        for w in r.lambda_pct.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        // orthonormal rows
        for i in 0..r.loadings.len() {
            for j in i..r.loadings.len() {
                let dot: f64 = r.loadings[i]
                    .iter()
                    .zip(&r.loadings[j])
                    .map(|(a, b)| a * b)
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-9, "rows {i},{j}: {dot}");
            }
        }
        // deterministic output
        let again = pca(&fm, PcaMode::Correlation).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn reconstruction_from_eigenpairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let rows: Vec<Vec<Option<f64>>> = (0..30)
            .map(|_| (0..4).map(|_| Some(rng.gen::<f64>())).collect())
            .collect();
        let fm = matrix(&["a", "b", "c", "d"], rows.clone());
        let r = pca(&fm, PcaMode::Correlation).unwrap();
        // rebuild correlation matrix as V^T diag(eig) V over retained cols
        let k = r.retained.len();
        let mut rebuilt = vec![vec![0.0; k]; k];
        for (comp, row) in r.loadings.iter().enumerate() {
            for (ai, &fa) in r.retained.iter().enumerate() {
                for (bi, &fb) in r.retained.iter().enumerate() {
                    rebuilt[ai][bi] += r.eigenvalues[comp] * row[fa] * row[fb];
                }
            }
        }
        // reference correlation from pairwise-complete (all rows complete)
        let cm = correlation_matrix(&fm).unwrap();
        let mut frob = 0.0f64;
        for (ai, &fa) in r.retained.iter().enumerate() {
            for (bi, &fb) in r.retained.iter().enumerate() {
                let expected = cm.r[fa][fb].unwrap();
                let diff = rebuilt[ai][bi] - expected;
                frob += diff * diff;
            }
        }
        assert!(frob.sqrt() < 1e-9, "Frobenius distance {}", frob.sqrt());
    }

    #[test]
    fn all_constant_features_are_degenerate() {
        let fm = matrix(
            &["x", "y"],
            vec![
                vec![Some(1.0), Some(2.0)],
                vec![Some(1.0), Some(2.0)],
            ],
        );
        assert!(matches!(
            pca(&fm, PcaMode::Correlation),
            Err(StatsError::DegenerateMatrix)
        ));
    }

    #[test]
    fn loading_filter_keeps_strictly_above_threshold() {
        let result = PcaResult {
            feature_names: vec!["a".into(), "b".into(), "c".into()],
            lambda_pct: vec![100.0],
            eigenvalues: vec![3.0],
            loadings: vec![vec![0.04, -0.06, 0.05]],
            retained: vec![0, 1, 2],
        };
        let filtered = filter_loadings(&result, 0.05);
        assert_eq!(filtered.len(), 1);
        // 0.04 dropped, |−0.06| kept, 0.05 (== threshold) dropped
        assert_eq!(filtered[0].entries, vec![("b".to_string(), -0.06)]);
        // threshold 0 keeps everything nonzero in magnitude
        let all = filter_loadings(&result, 0.0);
        assert_eq!(all[0].entries.len(), 3);
    }
}
