//! Growth diagnostics for `f_γ`.

use num_rational::Ratio;

/// `φ² = φ + 1`, shown next to the `f_γ / f_{γ−1}` column.
pub const PHI_SQUARED: f64 = 2.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub gamma: u32,
    pub f: u64,
    pub n2g: u64,
    /// `f_γ / f_{γ−1}`.
    pub ratio_prev: Option<Ratio<u64>>,
    /// `f_γ / n_{2γ}`.
    pub ratio_n: Ratio<u64>,
    /// `f_{γ+1} / Σ_{i≤γ} f_i`.
    pub ratio_partial_sum: Option<Ratio<u64>>,
}

/// Rows for `γ = 0..f.len()`, given `n_{2γ}` for the same range.
pub fn ratio_rows(f: &[u64], n2g: &[u64]) -> Vec<RatioRow> {
    assert_eq!(f.len(), n2g.len());
    let mut partial = 0u64;
    (0..f.len())
        .map(|g| {
            partial += f[g];
            RatioRow {
                gamma: g as u32,
                f: f[g],
                n2g: n2g[g],
                ratio_prev: (g > 0).then(|| Ratio::new(f[g], f[g - 1])),
                ratio_n: Ratio::new(f[g], n2g[g]),
                ratio_partial_sum: f.get(g + 1).map(|&next| Ratio::new(next, partial)),
            }
        })
        .collect()
}

/// Two decimals, ties to even.
pub fn two_decimals(r: Ratio<u64>) -> String {
    let (n, d) = (*r.numer() as u128, *r.denom() as u128);
    let mut q = n * 100 / d;
    let rem = n * 100 % d;
    if 2 * rem > d || (2 * rem == d && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:02}", q / 100, q % 100)
}
