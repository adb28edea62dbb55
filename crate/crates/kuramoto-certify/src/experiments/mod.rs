//! The six experiments behind the CLI subcommands.

pub mod basin;
pub mod certify;
pub mod figure1;
pub mod pattern;
pub mod razor;
pub mod region;

pub use basin::{run_basin, BasinEstimate, BasinOptions};
pub use certify::{run_certify, CertifyOutput};
pub use figure1::{run_figure1, write_figure1_csv, Figure1Row};
pub use pattern::{run_pattern_search, PatternRecord, PatternSearchResult};
pub use razor::{run_razor_edge, RazorEdgeRow};
pub use region::run_region_scan;

/// Lexicographic k-subsets of {1, …, h}, yielded as sorted offset vectors.
pub struct Combinations {
    h: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(h: usize, k: usize) -> Self {
        Combinations { h, idx: (0..k).collect(), started: false, done: k == 0 || k > h }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started {
            let k = self.idx.len();
            // Advance the rightmost index that still has room.
            let mut i = k;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.idx[i] < self.h - k + i {
                    self.idx[i] += 1;
                    for j in (i + 1)..k {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        self.started = true;
        Some(self.idx.iter().map(|&i| i + 1).collect())
    }
}

/// Degree of the circulant on `n` nodes with these offsets: 2 per offset,
/// except the half-turn offset n/2 (when n is even) which contributes 1.
pub fn circulant_degree(n: usize, offsets: &[usize]) -> usize {
    offsets.iter().map(|&s| if 2 * s == n { 1 } else { 2 }).sum()
}

/// All connected circulants with 3 ≤ n ≤ n_max and μ̃ > 3/4 (compared in
/// exact arithmetic), as (n, offsets) pairs in deterministic order. This is
/// the search universe for the consistency sweeps: above μ̃ = 3/4 none of
/// these networks may hold a stable non-synchronous equilibrium.
pub fn dense_circulants(n_max: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        let h = n / 2;
        for k in 1..=h {
            for offsets in Combinations::new(h, k) {
                let deg = circulant_degree(n, &offsets);
                // mu_tilde = (deg + 1)/n > 3/4.
                if 4 * (deg + 1) <= 3 * n {
                    continue;
                }
                if kuramoto_sync::Graph::circulant(n, &offsets).is_ok() {
                    out.push((n, offsets));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_lexicographically() {
        let got: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            got,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(Combinations::new(5, 5).count(), 1);
        assert_eq!(Combinations::new(5, 6).count(), 0);
        assert_eq!(Combinations::new(12, 4).count(), 495);
    }

    #[test]
    fn circulant_degrees() {
        assert_eq!(circulant_degree(8, &[1, 2, 3]), 6);
        assert_eq!(circulant_degree(8, &[1, 4]), 3);
        assert_eq!(circulant_degree(9, &[1, 4]), 4);
    }
}
