//! Published reference tables, stored as CSV under `data/`.

use semigroup_census::StratumRow;

pub const STRATA: &str = include_str!("../data/strata.csv");
pub const BOUNDS: &str = include_str!("../data/bounds.csv");
pub const RATIOS: &str = include_str!("../data/ratios.csv");

fn records(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().skip(1).filter(|l| !l.is_empty()).map(|l| l.split(',').collect())
}

fn int(cell: &str) -> Option<u64> {
    (!cell.is_empty()).then(|| cell.parse().expect("reference cell is an integer"))
}

/// Reference `N_γ(g)` rows for `g = 0..=27`, exactly as published. Row
/// totals are not forced to match the strata; see [`inconsistent_rows`].
pub fn strata() -> Vec<StratumRow> {
    records(STRATA)
        .map(|cells| {
            let genus = cells[0].parse().unwrap();
            let counts: Vec<u64> = cells[1..cells.len() - 1].iter().map_while(|c| int(c)).collect();
            let total = int(cells[cells.len() - 1]).unwrap();
            StratumRow { genus, counts, total }
        })
        .collect()
}

/// Published rows whose strata do not sum to the published total.
pub fn inconsistent_rows() -> Vec<StratumRow> {
    strata().into_iter().filter(|r| r.counts.iter().sum::<u64>() != r.total).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsRow {
    pub gamma: u32,
    pub c1: u64,
    pub f: u64,
    pub c2: u64,
}

pub fn bounds() -> Vec<BoundsRow> {
    records(BOUNDS)
        .map(|c| BoundsRow {
            gamma: c[0].parse().unwrap(),
            c1: int(c[1]).unwrap(),
            f: int(c[2]).unwrap(),
            c2: int(c[3]).unwrap(),
        })
        .collect()
}

/// Reference ratio rows as printed: `(γ, f, n_{2γ}, [prev, n, partial])`.
pub fn ratios() -> Vec<(u32, u64, u64, [String; 3])> {
    records(RATIOS)
        .map(|c| {
            let text = [c[3].to_string(), c[4].to_string(), c[5].to_string()];
            (c[0].parse().unwrap(), int(c[1]).unwrap(), int(c[2]).unwrap(), text)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        let s = strata();
        assert_eq!(s.len(), 28);
        assert_eq!(s[27].total, 1_270_267);
        assert!(s.iter().all(|r| r.counts.len() as u32 == 2 * r.genus / 3 + 1));
        let odd: Vec<u32> = inconsistent_rows().iter().map(|r| r.genus).collect();
        assert_eq!(odd, vec![25]);
        assert_eq!(bounds().len(), 15);
        let r = ratios();
        assert_eq!(r[0].3[0], "");
        assert_eq!(r[10].3[0], "2.86");
    }
}
