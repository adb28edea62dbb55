//! Undirected, unweighted networks and their connectivity measures.
//!
//! The connectivity μ of a graph is its minimum degree divided by n−1
//! (self-loops excluded). Adding a self-loop to every node leaves the phase
//! dynamics untouched but changes the natural normalization to
//!
//! ```text
//! μ̃ = (μ(n−1) + 1) / n,
//! ```
//!
//! which is the quantity the stability certificates are phrased in. Both are
//! kept in exact integer arithmetic: threshold comparisons against rational
//! bounds must not suffer float rounding.

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use num_rational::Ratio;

use crate::error::GraphError;

/// Rational connectivity value (exact).
pub type Rational = Ratio<u64>;

/// An undirected, unweighted, connected graph with a uniform self-loop flag.
///
/// The adjacency matrix is stored dense and row-major; all experiments run on
/// graphs with at most a few thousand nodes where dense row scans are the
/// fastest way to evaluate the dynamics. Instances are immutable after
/// construction and safe to share across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    self_loops: bool,
    adjacency: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("self_loops", &self.self_loops)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from a full boolean adjacency matrix (row-major).
    ///
    /// Rejects asymmetric matrices, non-uniform diagonals, and disconnected
    /// graphs.
    pub fn from_adjacency(n: usize, adjacency: Vec<bool>, self_loops: bool) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::TooSmall { min: 1, got: 0 });
        }
        assert_eq!(adjacency.len(), n * n, "adjacency must be n*n");
        for j in 0..n {
            if adjacency[j * n + j] != self_loops {
                return Err(GraphError::InconsistentDiagonal { j });
            }
            for k in (j + 1)..n {
                if adjacency[j * n + k] != adjacency[k * n + j] {
                    return Err(GraphError::Asymmetric { j, k });
                }
            }
        }
        let g = Graph { n, self_loops, adjacency };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from an off-diagonal edge list, without self-loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![false; n * n];
        for &(j, k) in edges {
            assert!(j < n && k < n && j != k, "edge ({j}, {k}) out of range");
            adjacency[j * n + k] = true;
            adjacency[k * n + j] = true;
        }
        Self::from_adjacency(n, adjacency, false)
    }

    /// The complete graph on `n` nodes, without self-loops.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::TooSmall { min: 1, got: 0 });
        }
        let mut adjacency = vec![true; n * n];
        for j in 0..n {
            adjacency[j * n + j] = false;
        }
        Ok(Graph { n, self_loops: false, adjacency })
    }

    /// The cycle graph C_n.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::circulant(n, &[1])
    }

    /// Circulant graph: node `j` is adjacent to `j ± s (mod n)` for every
    /// offset `s`. Offsets must lie in `1..=n/2`; duplicates are ignored.
    pub fn circulant(n: usize, offsets: &[usize]) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall { min: 3, got: n });
        }
        if offsets.is_empty() {
            return Err(GraphError::EmptyOffsets);
        }
        let max = n / 2;
        let mut adjacency = vec![false; n * n];
        for &s in offsets {
            if s == 0 || s > max {
                return Err(GraphError::OffsetOutOfRange { offset: s, max, n });
            }
            for j in 0..n {
                let k = (j + s) % n;
                adjacency[j * n + k] = true;
                adjacency[k * n + j] = true;
            }
        }
        let g = Graph { n, self_loops: false, adjacency };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Node count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether every node carries a self-loop.
    #[inline]
    pub fn has_self_loops(&self) -> bool {
        self.self_loops
    }

    /// Adjacency query.
    #[inline]
    pub fn adjacent(&self, j: usize, k: usize) -> bool {
        self.adjacency[j * self.n + k]
    }

    /// Row `j` of the adjacency matrix.
    #[inline]
    pub fn row(&self, j: usize) -> &[bool] {
        &self.adjacency[j * self.n..(j + 1) * self.n]
    }

    /// Degree of node `j`, self-loop excluded.
    pub fn degree(&self, j: usize) -> usize {
        let row = self.row(j);
        let d = row.iter().filter(|&&a| a).count();
        if self.self_loops {
            d - 1
        } else {
            d
        }
    }

    /// Number of undirected edges, self-loops excluded.
    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|j| self.degree(j)).sum::<usize>() / 2
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(j) = queue.pop_front() {
            for (k, &a) in self.row(j).iter().enumerate() {
                if a && k != j && !seen[k] {
                    seen[k] = true;
                    count += 1;
                    queue.push_back(k);
                }
            }
        }
        count == self.n
    }

    /// Connectivity measures of the graph. Requires `n >= 2`.
    pub fn connectivity(&self) -> Result<Connectivity, GraphError> {
        if self.n < 2 {
            return Err(GraphError::TooSmall { min: 2, got: self.n });
        }
        let min_degree = (0..self.n).map(|j| self.degree(j)).min().unwrap();
        Ok(Connectivity { n: self.n, min_degree })
    }

    /// Returns a copy with a self-loop on every node. The phase dynamics are
    /// unchanged: a self-loop contributes `sin(θ_j − θ_j) = 0`.
    ///
    /// Calling this on a graph that already has self-loops is a no-op (a
    /// warning is logged).
    pub fn with_self_loops(&self) -> Graph {
        if self.self_loops {
            log::warn!("with_self_loops called on a graph that already has self-loops; no-op");
            return self.clone();
        }
        let mut adjacency = self.adjacency.clone();
        for j in 0..self.n {
            adjacency[j * self.n + j] = true;
        }
        Graph { n: self.n, self_loops: true, adjacency }
    }

    /// Lexicographic product with the complete graph K_τ: every node becomes
    /// a τ-clique, and nodes in distinct cliques are adjacent exactly when
    /// their parents are. Parent `p` occupies indices `p·τ..(p+1)·τ`.
    ///
    /// The result has no self-loops and is denser than the input for τ > 1;
    /// both graphs have the same global synchronization behavior.
    pub fn twin(&self, tau: usize) -> Result<Graph, GraphError> {
        if tau == 0 {
            return Err(GraphError::ZeroTau);
        }
        if self.self_loops {
            return Err(GraphError::HasSelfLoops);
        }
        let n = self.n * tau;
        let mut adjacency = vec![false; n * n];
        for a in 0..n {
            let pa = a / tau;
            for b in 0..n {
                if a == b {
                    continue;
                }
                let pb = b / tau;
                adjacency[a * n + b] = if pa == pb { true } else { self.adjacent(pa, pb) };
            }
        }
        Ok(Graph { n, self_loops: false, adjacency })
    }

    /// Writes the graph in the plain-text adjacency-list format understood by
    /// [`Graph::parse`].
    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n {} self_loops {}", self.n, if self.self_loops { 1 } else { 0 })?;
        for j in 0..self.n {
            write!(w, "{}:", j)?;
            for k in (j + 1)..self.n {
                if self.adjacent(j, k) {
                    write!(w, " {}", k)?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Writes the graph to a file.
    pub fn write_to_path<P: AsRef<Path>>(&self, path: P) -> std::io::Result<()> {
        let f = std::fs::File::create(path)?;
        self.write(std::io::BufWriter::new(f))
    }

    /// Parses the plain-text graph format:
    ///
    /// ```text
    /// n <n> self_loops <0|1>
    /// 0: 2 3
    /// 1: 3
    /// 2:
    /// 3:
    /// ```
    ///
    /// Line `j` lists only neighbors `k > j`; the diagonal is implied by the
    /// flag. Listing a neighbor `k <= j` is rejected (the format would
    /// otherwise admit asymmetric inputs). The parsed graph must be
    /// connected.
    pub fn parse<R: BufRead>(r: R) -> Result<Self, GraphError> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| GraphError::Parse { line: 1, msg: "empty input".into() })?;
        let header = header?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "n" || parts[2] != "self_loops" {
            return Err(GraphError::Parse {
                line: 1,
                msg: format!("expected `n <n> self_loops <0|1>`, got `{header}`"),
            });
        }
        let n: usize = parts[1]
            .parse()
            .map_err(|_| GraphError::Parse { line: 1, msg: format!("bad node count `{}`", parts[1]) })?;
        let self_loops = match parts[3] {
            "0" => false,
            "1" => true,
            other => {
                return Err(GraphError::Parse { line: 1, msg: format!("bad self-loop flag `{other}`") })
            }
        };
        if n == 0 {
            return Err(GraphError::TooSmall { min: 1, got: 0 });
        }

        let mut adjacency = vec![false; n * n];
        let mut rows_seen = 0usize;
        for (idx, line) in lines {
            let lineno = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (head, rest) = trimmed
                .split_once(':')
                .ok_or_else(|| GraphError::Parse { line: lineno, msg: "missing `:`".into() })?;
            let j: usize = head
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse { line: lineno, msg: format!("bad node id `{head}`") })?;
            if j != rows_seen {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("expected row {rows_seen}, got {j}"),
                });
            }
            rows_seen += 1;
            for tok in rest.split_whitespace() {
                let k: usize = tok.parse().map_err(|_| GraphError::Parse {
                    line: lineno,
                    msg: format!("bad neighbor `{tok}`"),
                })?;
                if k >= n {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("neighbor {k} out of range for n = {n}"),
                    });
                }
                if k <= j {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("neighbor {k} <= row {j}: only k > j may be listed"),
                    });
                }
                if adjacency[j * n + k] {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("duplicate edge ({j}, {k})"),
                    });
                }
                adjacency[j * n + k] = true;
                adjacency[k * n + j] = true;
            }
        }
        if rows_seen != n {
            return Err(GraphError::Parse {
                line: rows_seen + 1,
                msg: format!("expected {n} rows, got {rows_seen}"),
            });
        }
        if self_loops {
            for j in 0..n {
                adjacency[j * n + j] = true;
            }
        }
        let g = Graph { n, self_loops, adjacency };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Reads a graph from a file.
    pub fn read_from_path<P: AsRef<Path>>(path: P) -> Result<Self, GraphError> {
        let f = std::fs::File::open(path)?;
        Self::parse(std::io::BufReader::new(f))
    }
}

/// Connectivity of a graph, kept exact.
///
/// `mu` is the minimum off-diagonal degree over `n − 1`; `mu_tilde` is the
/// self-loop-adjusted value `(μ(n−1) + 1)/n = (d_min + 1)/n`. Both are the
/// same for a graph and its self-looped copy, since self-loops never enter
/// the off-diagonal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    n: usize,
    min_degree: usize,
}

impl Connectivity {
    /// Minimum off-diagonal degree.
    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    /// Node count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// μ as an exact rational `d_min / (n − 1)`.
    pub fn mu(&self) -> Rational {
        Rational::new(self.min_degree as u64, (self.n - 1) as u64)
    }

    /// μ̃ as an exact rational `(d_min + 1) / n`.
    pub fn mu_tilde(&self) -> Rational {
        Rational::new((self.min_degree + 1) as u64, self.n as u64)
    }

    /// μ in floating point.
    pub fn mu_f64(&self) -> f64 {
        self.min_degree as f64 / (self.n - 1) as f64
    }

    /// μ̃ in floating point.
    pub fn mu_tilde_f64(&self) -> f64 {
        (self.min_degree + 1) as f64 / self.n as f64
    }
}

/// Connectivity that suffices for global synchrony on `n` nodes:
/// `⌊3n/4 − 1⌋ / (n − 1)`. Any network whose connectivity strictly exceeds
/// this value is globally synchronizing; the values tend to 3/4 from below.
pub fn sync_sufficient_mu(n: u64) -> Rational {
    assert!(n >= 2, "sync_sufficient_mu requires n >= 2");
    Rational::new((3 * n - 4) / 4, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent degree count straight off the adjacency matrix.
    fn degree_oracle(g: &Graph, j: usize) -> usize {
        (0..g.n()).filter(|&k| k != j && g.adjacent(j, k)).count()
    }

    fn min_degree_oracle(g: &Graph) -> usize {
        (0..g.n()).map(|j| degree_oracle(g, j)).min().unwrap()
    }

    #[test]
    fn complete_graph_connectivity_is_one() {
        let g = Graph::complete(5).unwrap();
        let c = g.connectivity().unwrap();
        assert_eq!(c.mu(), Rational::new(1, 1));
        assert_eq!(c.mu_f64(), 1.0);
    }

    #[test]
    fn cycle_connectivity() {
        let g = Graph::cycle(4).unwrap();
        let c = g.connectivity().unwrap();
        assert_eq!(c.mu(), Rational::new(2, 3));
        assert_eq!(c.mu_tilde(), Rational::new(3, 4));
    }

    #[test]
    fn circulant_connectivity_matches_degree_oracle() {
        let g = Graph::circulant(9, &[1, 2, 3]).unwrap();
        let c = g.connectivity().unwrap();
        assert_eq!(min_degree_oracle(&g), 6);
        assert_eq!(c.mu(), Rational::new(6, 8));
        assert_eq!(c.mu_f64(), 0.75);
    }

    #[test]
    fn connectivity_rejects_single_node() {
        let g = Graph::complete(1).unwrap();
        assert!(matches!(g.connectivity(), Err(GraphError::TooSmall { .. })));
    }

    #[test]
    fn self_loops_preserve_mu_tilde() {
        for g in [Graph::cycle(4).unwrap(), Graph::circulant(7, &[1, 3]).unwrap()] {
            let looped = g.with_self_loops();
            assert!(looped.has_self_loops());
            assert_eq!(
                g.connectivity().unwrap().mu_tilde(),
                looped.connectivity().unwrap().mu_tilde()
            );
        }
        // C4 with loops reads min-degree/n = 3/4 directly.
        let looped = Graph::cycle(4).unwrap().with_self_loops();
        let c = looped.connectivity().unwrap();
        assert_eq!(c.min_degree() + 1, 3);
        assert_eq!(c.mu_tilde(), Rational::new(3, 4));
    }

    #[test]
    fn with_self_loops_is_idempotent() {
        let g = Graph::cycle(5).unwrap().with_self_loops();
        assert_eq!(g.with_self_loops(), g);
    }

    #[test]
    fn twin_identity() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(g.twin(1).unwrap(), g);
    }

    #[test]
    fn twin_of_complete_is_complete() {
        let g = Graph::complete(3).unwrap().twin(2).unwrap();
        assert_eq!(g, Graph::complete(6).unwrap());
    }

    #[test]
    fn twin_cycle_connectivity() {
        // twin(C4, m) has connectivity (3m−1)/(4m−1); check against a plain
        // degree count on the constructed graph.
        for m in 1..=6u64 {
            let g = Graph::cycle(4).unwrap().twin(m as usize).unwrap();
            let c = g.connectivity().unwrap();
            assert_eq!(min_degree_oracle(&g) as u64, 3 * m - 1);
            assert_eq!(c.mu(), Rational::new(3 * m - 1, 4 * m - 1));
        }
        let c = Graph::cycle(4).unwrap().twin(3).unwrap().connectivity().unwrap();
        assert_eq!(c.mu(), Rational::new(8, 11));
    }

    #[test]
    fn twin_structure_exhaustive_small() {
        // Clique blocks complete, cross-clique edges follow parents, symmetric.
        let parents = [
            Graph::cycle(4).unwrap(),
            Graph::cycle(5).unwrap(),
            Graph::circulant(8, &[1, 3]).unwrap(),
            Graph::complete(4).unwrap(),
        ];
        for g in &parents {
            for tau in 1..=4 {
                let t = g.twin(tau).unwrap();
                let n = t.n();
                for a in 0..n {
                    assert!(!t.adjacent(a, a));
                    for b in 0..n {
                        assert_eq!(t.adjacent(a, b), t.adjacent(b, a));
                        if a == b {
                            continue;
                        }
                        let (pa, pb) = (a / tau, b / tau);
                        let expect = if pa == pb { true } else { g.adjacent(pa, pb) };
                        assert_eq!(t.adjacent(a, b), expect, "tau={tau} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn twinning_increases_connectivity_unless_complete() {
        for g in [Graph::cycle(6).unwrap(), Graph::circulant(7, &[1, 2]).unwrap()] {
            let mu = g.connectivity().unwrap().mu();
            for tau in 2..=4 {
                let mu_t = g.twin(tau).unwrap().connectivity().unwrap().mu();
                assert!(mu_t > mu, "tau={tau}");
            }
        }
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.twin(3).unwrap().connectivity().unwrap().mu(), Rational::new(1, 1));
    }

    #[test]
    fn circulant_cases() {
        assert_eq!(Graph::circulant(4, &[1]).unwrap(), Graph::cycle(4).unwrap());
        assert_eq!(Graph::circulant(5, &[1, 2]).unwrap(), Graph::complete(5).unwrap());
        let g = Graph::circulant(8, &[1, 2, 3]).unwrap();
        for j in 0..8 {
            assert_eq!(degree_oracle(&g, j), 6);
        }
    }

    #[test]
    fn circulant_rejects_bad_offsets() {
        assert!(matches!(
            Graph::circulant(8, &[0]),
            Err(GraphError::OffsetOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::circulant(8, &[5]),
            Err(GraphError::OffsetOutOfRange { .. })
        ));
        assert!(matches!(Graph::circulant(8, &[]), Err(GraphError::EmptyOffsets)));
    }

    #[test]
    fn circulant_rejects_disconnected() {
        // Offset 2 on n = 4 splits into two components.
        assert!(matches!(Graph::circulant(4, &[2]), Err(GraphError::Disconnected)));
    }

    #[test]
    fn twin_rejects_tau_zero_and_self_loops() {
        let g = Graph::cycle(4).unwrap();
        assert!(matches!(g.twin(0), Err(GraphError::ZeroTau)));
        assert!(matches!(g.with_self_loops().twin(2), Err(GraphError::HasSelfLoops)));
    }

    #[test]
    fn sync_sufficient_mu_values() {
        assert_eq!(sync_sufficient_mu(8), Rational::new(5, 7));
        assert_eq!(sync_sufficient_mu(5), Rational::new(1, 2));
        assert_eq!(sync_sufficient_mu(20), Rational::new(14, 19));
        let big = sync_sufficient_mu(1_000_000);
        assert!(big < Rational::new(3, 4));
    }

    #[test]
    fn sync_sufficient_mu_below_and_converging_to_three_quarters() {
        let limit = Rational::new(3, 4);
        let mut prev: Option<Rational> = None;
        for n in (8..=400).step_by(4) {
            let b = sync_sufficient_mu(n);
            assert!(b < limit, "n={n}");
            if let Some(p) = prev {
                assert!(b > p, "n={n} not increasing along n ≡ 0 (mod 4)");
            }
            prev = Some(b);
        }
        for n in 2..=100 {
            assert!(sync_sufficient_mu(n) < limit, "n={n}");
        }
    }

    #[test]
    fn file_roundtrip() {
        let graphs = [
            Graph::cycle(5).unwrap(),
            Graph::circulant(9, &[1, 2, 4]).unwrap(),
            Graph::complete(4).unwrap().with_self_loops(),
        ];
        for g in &graphs {
            let mut buf = Vec::new();
            g.write(&mut buf).unwrap();
            let parsed = Graph::parse(std::io::Cursor::new(buf)).unwrap();
            assert_eq!(&parsed, g);
        }
    }

    #[test]
    fn parse_rejects_asymmetric_listing() {
        // Neighbor 0 listed on row 1 (k <= j is how asymmetry would sneak in).
        let text = "n 3 self_loops 0\n0: 1 2\n1: 0\n2:\n";
        let err = Graph::parse(std::io::Cursor::new(text)).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn parse_rejects_disconnected_and_garbage() {
        let disconnected = "n 4 self_loops 0\n0: 1\n1:\n2: 3\n3:\n";
        assert!(matches!(
            Graph::parse(std::io::Cursor::new(disconnected)),
            Err(GraphError::Disconnected)
        ));
        let bad_header = "nodes 4\n";
        assert!(matches!(
            Graph::parse(std::io::Cursor::new(bad_header)),
            Err(GraphError::Parse { line: 1, .. })
        ));
        let out_of_range = "n 3 self_loops 0\n0: 1 7\n1:\n2:\n";
        assert!(matches!(
            Graph::parse(std::io::Cursor::new(out_of_range)),
            Err(GraphError::Parse { line: 2, .. })
        ));
        let duplicate = "n 3 self_loops 0\n0: 1 1 2\n1:\n2:\n";
        assert!(matches!(
            Graph::parse(std::io::Cursor::new(duplicate)),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }
}
