//! Feasible (ρ₁, |ρ₂|) region for stable equilibria at a given μ̃.
//!
//! A stable equilibrium must satisfy both the moment-only bound
//! ρ₁² ≥ 2(μ̃ − 3/4) + |ρ₂|²/2 and, whenever ρ₁ > 0, the tangent-line bound
//! |ρ₂| ≥ a(x₀) + b(x₀)(1 + |ρ₂|² − 2ρ₁²) for every admissible x₀. The scan
//! grids [0,1]², keeps the points where both hold (the second tested at its
//! worst case over x₀), groups them into connected components, and refines
//! each component's bounding box by bisection so thresholds come out sharper
//! than the grid.

use std::collections::VecDeque;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::eq10_slack_point;

/// Tolerance of the golden-section search over x₀.
pub const X0_SEARCH_TOL: f64 = 1e-10;
/// Bisection tolerance for component-boundary refinement.
pub const BOUNDARY_BISECTION_TOL: f64 = 1e-7;

/// Worst-case (maximal over admissible x₀) right-hand side of the
/// tangent-line bound at a point (ρ₁, |ρ₂|). Requires ρ₁ > 0.
///
/// The objective φ(x₀) = a + b·c with c = 1 + |ρ₂|² − 2ρ₁² is concave for
/// c > 0 with an interior stationary point in closed form; when that point
/// leaves the admissible range a golden-section search takes over, and for
/// c ≤ 0 the objective increases monotonically so the right endpoint is the
/// maximum.
pub fn eq11_rhs_max(rho1: f64, rho2_abs: f64, mu_tilde: f64) -> f64 {
    debug_assert!(rho1 > 0.0);
    let om = 1.0 - mu_tilde;
    let rho1_sq = rho1 * rho1;
    let x_max = (om * om / rho1_sq).min(1.0);
    let c = 1.0 + rho2_abs * rho2_abs - 2.0 * rho1_sq;
    let phi = |x0: f64| -> f64 {
        let a = 1.0 + 2.0 * x0 - 4.0 * om * om / rho1_sq;
        let b = (om * om - rho1_sq * x0).max(0.0).sqrt() / rho1_sq;
        a + b * c
    };
    if c <= 0.0 {
        return phi(x_max);
    }
    let x_star = (om * om - c * c / 16.0) / rho1_sq;
    if (0.0..=x_max).contains(&x_star) {
        phi(x_star)
    } else {
        golden_section_max(phi, 0.0, x_max, X0_SEARCH_TOL)
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = f(lo).max(f(hi));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// Whether a point (ρ₁, |ρ₂|) is jointly consistent with both bounds at the
/// given μ̃. At ρ₁ = 0 the tangent-line bound is vacuous (it needs ρ₁ > 0).
pub fn is_feasible(mu_tilde: f64, rho1: f64, rho2_abs: f64) -> bool {
    if eq10_slack_point(rho1, rho2_abs, mu_tilde) < 0.0 {
        return false;
    }
    if rho1 <= 0.0 {
        return true;
    }
    rho2_abs >= eq11_rhs_max(rho1, rho2_abs, mu_tilde)
}

/// Refined bounding box of one component, bisected beyond grid resolution.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RefinedBox {
    pub rho1_min: f64,
    pub rho1_max: f64,
    pub rho2_min: f64,
    pub rho2_max: f64,
}

/// One connected component of the feasible set (4-neighbor connectivity on
/// the grid).
#[derive(Debug, Clone, Serialize)]
pub struct RegionComponent {
    pub cells: usize,
    /// Grid-resolution bounding box.
    pub rho1_min: f64,
    pub rho1_max: f64,
    pub rho2_min: f64,
    pub rho2_max: f64,
    /// Bisection-refined box boundaries.
    pub refined: RefinedBox,
}

/// Grid scan of the feasible set with component summaries.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityRegion {
    pub mu_tilde: f64,
    pub grid_step: f64,
    /// Points per axis.
    pub grid_len: usize,
    pub feasible_cells: usize,
    /// Components sorted by descending cell count.
    pub components: Vec<RegionComponent>,
    #[serde(skip)]
    bits: Vec<u64>,
}

impl FeasibilityRegion {
    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.grid_len + j
    }

    /// Whether grid point (i, j) — ρ₁ = i·step, |ρ₂| = j·step — is feasible.
    pub fn marked(&self, i: usize, j: usize) -> bool {
        let idx = self.idx(i, j);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Grid coordinate of index `i`.
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 * self.grid_step
    }

    /// Whether every feasible point of `self` is feasible in `other`
    /// (requires identical grids).
    pub fn is_subset_of(&self, other: &FeasibilityRegion) -> bool {
        assert_eq!(self.grid_len, other.grid_len, "grids must match");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Streams the `rho1,rho2_abs,feasible` point cloud as CSV.
    pub fn write_point_cloud_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "rho1,rho2_abs,feasible")?;
        for i in 0..self.grid_len {
            for j in 0..self.grid_len {
                writeln!(
                    w,
                    "{},{},{}",
                    self.coord(i),
                    self.coord(j),
                    if self.marked(i, j) { 1 } else { 0 }
                )?;
            }
        }
        Ok(())
    }
}

/// Scans [0,1]² at the given step, marking jointly feasible points and
/// summarizing connected components. Rows are evaluated in parallel; the
/// result is identical for any thread count.
pub fn feasibility_scan(mu_tilde: f64, grid_step: f64) -> FeasibilityRegion {
    assert!(grid_step > 0.0 && grid_step <= 0.5, "grid_step must be in (0, 0.5]");
    let grid_len = (1.0 / grid_step + 1e-9).floor() as usize + 1;
    let words_per_row = grid_len.div_ceil(64);

    let rows: Vec<Vec<u64>> = (0..grid_len)
        .into_par_iter()
        .map(|i| {
            let rho1 = i as f64 * grid_step;
            let mut row = vec![0u64; words_per_row];
            for j in 0..grid_len {
                let rho2 = j as f64 * grid_step;
                if is_feasible(mu_tilde, rho1, rho2) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    // Repack into one contiguous bitset indexed i*grid_len + j.
    let total_words = (grid_len * grid_len).div_ceil(64);
    let mut bits = vec![0u64; total_words];
    let mut feasible_cells = 0usize;
    for (i, row) in rows.iter().enumerate() {
        for j in 0..grid_len {
            if row[j / 64] >> (j % 64) & 1 == 1 {
                let idx = i * grid_len + j;
                bits[idx / 64] |= 1 << (idx % 64);
                feasible_cells += 1;
            }
        }
    }

    let mut region = FeasibilityRegion {
        mu_tilde,
        grid_step,
        grid_len,
        feasible_cells,
        components: Vec::new(),
        bits,
    };
    region.components = find_components(&region);
    region
}

fn find_components(region: &FeasibilityRegion) -> Vec<RegionComponent> {
    let n = region.grid_len;
    // Bit-packed visited set: a plain Vec<bool> would cost n² bytes, which
    // is 100 MB at the 1e−4 acceptance grid.
    let mut seen_bits = vec![0u64; (n * n).div_ceil(64)];
    let seen = |bits: &mut Vec<u64>, i: usize, j: usize, mark: bool| -> bool {
        let idx = i * n + j;
        let was = bits[idx / 64] >> (idx % 64) & 1 == 1;
        if mark {
            bits[idx / 64] |= 1 << (idx % 64);
        }
        was
    };
    let mut components = Vec::new();
    for start_i in 0..n {
        for start_j in 0..n {
            if seen(&mut seen_bits, start_i, start_j, false) || !region.marked(start_i, start_j) {
                continue;
            }
            let mut cells = 0usize;
            let (mut i_min, mut i_max, mut j_min, mut j_max) = (start_i, start_i, start_j, start_j);
            // Extremal cells, used as bisection anchors for each box edge.
            let (mut at_imin, mut at_imax, mut at_jmin, mut at_jmax) =
                ((start_i, start_j), (start_i, start_j), (start_i, start_j), (start_i, start_j));
            let mut queue = VecDeque::new();
            seen(&mut seen_bits, start_i, start_j, true);
            queue.push_back((start_i as u32, start_j as u32));
            while let Some((iu, ju)) = queue.pop_front() {
                let (i, j) = (iu as usize, ju as usize);
                cells += 1;
                if i < i_min {
                    i_min = i;
                    at_imin = (i, j);
                }
                if i > i_max {
                    i_max = i;
                    at_imax = (i, j);
                }
                if j < j_min {
                    j_min = j;
                    at_jmin = (i, j);
                }
                if j > j_max {
                    j_max = j;
                    at_jmax = (i, j);
                }
                let mut visit = |bits: &mut Vec<u64>, ni: usize, nj: usize| {
                    if region.marked(ni, nj) && !seen(bits, ni, nj, true) {
                        queue.push_back((ni as u32, nj as u32));
                    }
                };
                if i > 0 {
                    visit(&mut seen_bits, i - 1, j);
                }
                if i + 1 < n {
                    visit(&mut seen_bits, i + 1, j);
                }
                if j > 0 {
                    visit(&mut seen_bits, i, j - 1);
                }
                if j + 1 < n {
                    visit(&mut seen_bits, i, j + 1);
                }
            }
            let h = region.grid_step;
            let mt = region.mu_tilde;
            let refined = RefinedBox {
                rho1_min: refine_edge(mt, at_imin, n, h, Axis::Rho1, Side::Min),
                rho1_max: refine_edge(mt, at_imax, n, h, Axis::Rho1, Side::Max),
                rho2_min: refine_edge(mt, at_jmin, n, h, Axis::Rho2, Side::Min),
                rho2_max: refine_edge(mt, at_jmax, n, h, Axis::Rho2, Side::Max),
            };
            components.push(RegionComponent {
                cells,
                rho1_min: i_min as f64 * h,
                rho1_max: i_max as f64 * h,
                rho2_min: j_min as f64 * h,
                rho2_max: j_max as f64 * h,
                refined,
            });
        }
    }
    components.sort_by_key(|c| std::cmp::Reverse(c.cells));
    components
}

enum Axis {
    Rho1,
    Rho2,
}
enum Side {
    Min,
    Max,
}

/// Refines one bounding-box edge by bisecting the feasibility predicate
/// along the grid line through the extremal cell.
fn refine_edge(mu_tilde: f64, anchor: (usize, usize), n: usize, h: f64, axis: Axis, side: Side) -> f64 {
    let (i, j) = anchor;
    let (fixed, along) = match axis {
        Axis::Rho1 => (j as f64 * h, i),
        Axis::Rho2 => (i as f64 * h, j),
    };
    let feas = |x: f64| -> bool {
        match axis {
            Axis::Rho1 => is_feasible(mu_tilde, x, fixed),
            Axis::Rho2 => is_feasible(mu_tilde, fixed, x),
        }
    };
    // The boundary lies between the extremal feasible cell and its infeasible
    // neighbor (if any; the box may end at the domain edge).
    let (mut inside, mut outside) = match side {
        Side::Min => {
            if along == 0 {
                return 0.0;
            }
            (along as f64 * h, (along - 1) as f64 * h)
        }
        Side::Max => {
            if along + 1 >= n {
                return along as f64 * h;
            }
            (along as f64 * h, (along + 1) as f64 * h)
        }
    };
    debug_assert!(feas(inside));
    if feas(outside) {
        // Neighboring cell on this line is feasible (it belongs to another
        // component); the grid value is the best available answer.
        return inside;
    }
    while (inside - outside).abs() > BOUNDARY_BISECTION_TOL {
        let mid = 0.5 * (inside + outside);
        if feas(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}
