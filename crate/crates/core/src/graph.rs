//! Labelled multigraphs, their Laplacians, and the cut quantities the
//! lattice invariants reduce to.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, symmetric_eigenvalues, to_big, JacobiOptions};
use crate::Limits;

/// Undirected multigraph without self-loops on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
}

impl Multigraph {
    /// Edgeless graph. At least two vertices are required.
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {vertex_count}"
            )));
        }
        Ok(Multigraph {
            n: vertex_count,
            mult: vec![0; vertex_count * vertex_count],
        })
    }

    /// Builds from `(i, j, multiplicity)` triples. Each unordered pair may
    /// appear at most once.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Multigraph::new(vertex_count)?;
        for &(i, j, m) in edges {
            if i >= vertex_count || j >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if g.multiplicity(i, j) != 0 {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            g.set(i, j, m);
        }
        Ok(g)
    }

    /// Builds from a full multiplicity matrix, which must be symmetric with
    /// a zero diagonal.
    pub fn from_matrix(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Multigraph::new(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row[i] != 0 {
                return Err(Error::SelfLoop(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric(i, j));
                }
                g.set(i, j, rows[i][j]);
            }
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Result<Self> {
        let edges: Vec<_> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j, 1)))
            .collect();
        Multigraph::from_edges(k, &edges)
    }

    pub fn path(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i, 1)).collect();
        Multigraph::from_edges(k, &edges)
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidGraph(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        let edges: Vec<_> = (0..k)
            .map(|i| (i.min((i + 1) % k), i.max((i + 1) % k), 1))
            .collect();
        Multigraph::from_edges(k, &edges)
    }

    fn set(&mut self, i: usize, j: usize, m: u32) {
        self.mult[i * self.n + j] = m;
        self.mult[j * self.n + i] = m;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.n + j]
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges().iter().map(|&(_, _, m)| u64::from(m)).sum()
    }

    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n)
            .map(|u| u64::from(self.multiplicity(v, u)))
            .sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges with positive multiplicity, `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.multiplicity(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && self.multiplicity(v, u) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every pair of distinct vertices adjacent.
    pub fn has_complete_skeleton(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.multiplicity(i, j) > 0))
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<u64> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Graph with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let mut g = Multigraph::new(self.n)?;
        for (i, j, m) in self.edges() {
            g.set(perm[i], perm[j], m);
        }
        Ok(g)
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        laplacian(self)
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Laplacian `D - A` of a multigraph, stored as integer rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaplacianMatrix {
    rows: Vec<Vec<i64>>,
}

impl LaplacianMatrix {
    /// Validates that `rows` is a Laplacian: square, symmetric, nonpositive
    /// off the diagonal, zero row sums.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {n}"
            )));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if row.iter().sum::<i64>() != 0 {
                return Err(Error::InvalidGraph("row does not sum to zero".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if rows[i][j] > 0 {
                        return Err(Error::InvalidGraph(format!(
                            "positive off-diagonal entry at ({i}, {j})"
                        )));
                    }
                    if rows[i][j] != rows[j][i] {
                        return Err(Error::Asymmetric(i, j));
                    }
                }
            }
        }
        Ok(LaplacianMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn to_graph(&self) -> Multigraph {
        let n = self.size();
        let mut g = Multigraph::new(n).expect("validated size");
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, (-self.rows[i][j]) as u32);
            }
        }
        g
    }

    /// `P Q P^{-1}` for the permutation matrix of `perm`: entry
    /// `(perm[i], perm[j])` of the result is entry `(i, j)` of `self`.
    pub fn conjugate(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        check_permutation(perm, n)?;
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[perm[i]][perm[j]] = self.rows[i][j];
            }
        }
        Ok(LaplacianMatrix { rows })
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| x as f64).collect())
            .collect()
    }
}

pub fn laplacian(g: &Multigraph) -> LaplacianMatrix {
    let n = g.vertex_count();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        g.degree(i) as i64
                    } else {
                        -i64::from(g.multiplicity(i, j))
                    }
                })
                .collect()
        })
        .collect();
    LaplacianMatrix { rows }
}

/// Number of spanning trees: absolute value of the principal cofactor
/// obtained by deleting the last row and column. Zero exactly when the
/// graph is disconnected.
pub fn spanning_tree_count(q: &LaplacianMatrix) -> BigUint {
    principal_cofactor(q, q.size() - 1)
}

pub(crate) fn principal_cofactor(q: &LaplacianMatrix, deleted: usize) -> BigUint {
    let minor: Vec<Vec<i64>> = q
        .rows()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != deleted)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != deleted)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    let det: BigInt = bareiss_det(&to_big(&minor));
    det.abs().to_biguint().expect("absolute value")
}

/// A nontrivial cut with both of its weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    /// Sorted vertex list of the side `S`.
    pub side: Vec<usize>,
    /// `mu_1(S)`: number of edges crossing the cut.
    pub l1_weight: u64,
    /// `mu_inf(S)`: largest number of crossing edges at a vertex outside `S`.
    pub linf_weight: u64,
}

/// Vertices whose bit is set in `mask`.
pub fn mask_to_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

pub(crate) fn vec_to_mask(side: &[usize]) -> u64 {
    side.iter().fold(0, |m, &v| m | 1 << v)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Lexicographic order on sorted vertex lists.
pub(crate) fn lex_cmp(a: u64, b: u64) -> Ordering {
    let mut a = a;
    let mut b = b;
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Crossing degrees: entry `v` is the number of edges from `v` to the
/// other side of the cut.
fn crossing_degrees(g: &Multigraph, mask: u64) -> Vec<u64> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let inside = mask >> v & 1;
            (0..n)
                .filter(|&u| mask >> u & 1 != inside)
                .map(|u| u64::from(g.multiplicity(v, u)))
                .sum()
        })
        .collect()
}

fn cut_from_mask(g: &Multigraph, mask: u64) -> Cut {
    let n = g.vertex_count();
    let deg = crossing_degrees(g, mask);
    let l1 = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| deg[v]).sum();
    let linf = (0..n)
        .filter(|&v| mask >> v & 1 == 0)
        .map(|v| deg[v])
        .max()
        .unwrap_or(0);
    Cut {
        side: mask_to_vec(mask, n),
        l1_weight: l1,
        linf_weight: linf,
    }
}

/// Weights of the cut with side `side`.
pub fn cut(g: &Multigraph, side: &[usize]) -> Result<Cut> {
    let n = g.vertex_count();
    if side.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument(
            "cut side references a missing vertex".into(),
        ));
    }
    let mask = vec_to_mask(side);
    if mask == 0 || mask == full_mask(n) {
        return Err(Error::InvalidArgument(
            "cut side must be nonempty and proper".into(),
        ));
    }
    Ok(cut_from_mask(g, mask))
}

/// Nonempty proper subsets as bitmasks.
pub fn proper_subsets(n: usize) -> impl Iterator<Item = u64> {
    1..full_mask(n)
}

fn enumeration_guard(g: &Multigraph, limit: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > limit || n > 63 {
        return Err(Error::GuardExceeded {
            what: "vertex count",
            value: n,
            limit: limit.min(63),
        });
    }
    Ok(())
}

/// Stoer-Wagner global minimum cut on the multiplicity-weighted graph.
/// Returns the weight and one side of a minimizing cut.
pub fn stoer_wagner(g: &Multigraph) -> (u64, Vec<usize>) {
    let n = g.vertex_count();
    let mut w: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(g.multiplicity(i, j))).collect())
        .collect();
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    let mut best_side = vec![0];

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0u64; n];
        let mut prev = active[0];
        let mut last = active[0];
        let mut last_key = 0;
        for _ in 0..active.len() {
            let sel = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                .expect("unvisited active vertex");
            added[sel] = true;
            prev = last;
            last = sel;
            last_key = key[sel];
            for &v in &active {
                if !added[v] {
                    key[v] += w[sel][v];
                }
            }
        }
        if last_key < best {
            best = last_key;
            best_side = groups[last].clone();
        }
        let merged = std::mem::take(&mut groups[last]);
        groups[prev].extend(merged);
        for v in 0..n {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }
    best_side.sort_unstable();
    (best, best_side)
}

/// Vertex-count above which the Stoer-Wagner witness is no longer
/// cross-checked by enumeration.
pub const L1_CROSS_CHECK_LIMIT: usize = 16;

/// `MC_1`: minimum number of edges over all nontrivial cuts.
///
/// The weight comes from Stoer-Wagner. Up to [`L1_CROSS_CHECK_LIMIT`]
/// vertices it is cross-checked against subset enumeration, and the
/// witness is the canonical one: the smallest side, ties broken
/// lexicographically. A disconnected graph gives weight 0.
pub fn min_cut_l1(g: &Multigraph) -> Result<(Cut, u64)> {
    let n = g.vertex_count();
    let (weight, side) = stoer_wagner(g);
    if n <= L1_CROSS_CHECK_LIMIT {
        let (mask, w) = proper_subsets(n)
            .map(|m| (m, cut_from_mask(g, m).l1_weight))
            .min_by(|a, b| {
                a.1.cmp(&b.1)
                    .then(a.0.count_ones().cmp(&b.0.count_ones()))
                    .then(lex_cmp(a.0, b.0))
            })
            .expect("at least one proper subset");
        if w != weight {
            return Err(Error::Internal(format!(
                "Stoer-Wagner weight {weight} disagrees with enumeration {w}"
            )));
        }
        return Ok((cut_from_mask(g, mask), weight));
    }
    let mask = vec_to_mask(&side);
    let other = full_mask(n) & !mask;
    let pick = match mask.count_ones().cmp(&other.count_ones()) {
        Ordering::Less => mask,
        Ordering::Greater => other,
        Ordering::Equal => {
            if lex_cmp(mask, other) == Ordering::Less {
                mask
            } else {
                other
            }
        }
    };
    Ok((cut_from_mask(g, pick), weight))
}

/// `MC_1` by brute-force subset enumeration.
pub fn min_cut_l1_enumerated(g: &Multigraph, limits: &Limits) -> Result<u64> {
    enumeration_guard(g, limits.enumeration_vertices)?;
    Ok(proper_subsets(g.vertex_count())
        .map(|m| cut_from_mask(g, m).l1_weight)
        .min()
        .expect("at least one proper subset"))
}

/// `MC_inf`: minimum over nontrivial cuts `S` of the largest crossing
/// degree of a vertex outside `S`, by subset enumeration. The witness is
/// the lexicographically smallest minimizing side.
pub fn min_cut_linf(g: &Multigraph, limits: &Limits) -> Result<(Cut, u64)> {
    enumeration_guard(g, limits.enumeration_vertices)?;
    let (mask, cut) = proper_subsets(g.vertex_count())
        .map(|m| (m, cut_from_mask(g, m)))
        .min_by(|a, b| {
            a.1.linf_weight
                .cmp(&b.1.linf_weight)
                .then(lex_cmp(a.0, b.0))
        })
        .expect("at least one proper subset");
    debug_assert_eq!(mask_to_vec(mask, g.vertex_count()), cut.side);
    let w = cut.linf_weight;
    Ok((cut, w))
}

/// Cycle rank `m - n` of a connected multigraph on `n + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphGenus(pub u64);

pub fn genus(g: &Multigraph) -> Result<GraphGenus> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(GraphGenus(g.edge_count() + 1 - g.vertex_count() as u64))
}

/// Laplacian eigenvalues, ascending.
pub fn laplacian_spectrum(q: &LaplacianMatrix) -> Result<Vec<f64>> {
    laplacian_spectrum_with(q, JacobiOptions::default())
}

pub fn laplacian_spectrum_with(q: &LaplacianMatrix, opts: JacobiOptions) -> Result<Vec<f64>> {
    symmetric_eigenvalues(&q.to_f64(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    pub(crate) fn g7() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2), (1, 2, 2)]).unwrap()
    }

    fn rows(q: &LaplacianMatrix) -> Vec<Vec<i64>> {
        q.rows().to_vec()
    }

    #[test]
    fn laplacian_examples() {
        let k3 = Multigraph::complete(3).unwrap();
        assert_eq!(
            rows(&k3.laplacian()),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        assert_eq!(
            rows(&g7().laplacian()),
            vec![vec![5, -3, -2], vec![-3, 5, -2], vec![-2, -2, 4]]
        );
        assert_eq!(
            rows(&Multigraph::path(3).unwrap().laplacian()),
            vec![vec![1, -1, 0], vec![-1, 2, -1], vec![0, -1, 1]]
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Multigraph::from_edges(3, &[(1, 1, 1)]).unwrap_err(),
            Error::SelfLoop(1)
        );
        assert!(matches!(
            Multigraph::from_edges(3, &[(0, 1, 1), (1, 0, 2)]),
            Err(Error::InvalidGraph(_))
        ));
        assert_eq!(
            Multigraph::from_matrix(&[vec![0, 1], vec![2, 0]]).unwrap_err(),
            Error::Asymmetric(0, 1)
        );
        assert_eq!(
            Multigraph::from_matrix(&[vec![1, 1], vec![1, 0]]).unwrap_err(),
            Error::SelfLoop(0)
        );
        assert!(Multigraph::new(1).is_err());
        assert!(LaplacianMatrix::from_rows(vec![vec![1, -1], vec![-2, 2]]).is_err());
    }

    #[test]
    fn tree_counts() {
        let count = |g: &Multigraph| spanning_tree_count(&g.laplacian()).to_u64().unwrap();
        assert_eq!(count(&Multigraph::path(5).unwrap()), 1);
        assert_eq!(count(&Multigraph::complete(3).unwrap()), 3);
        assert_eq!(count(&g7()), 16);
        let disconnected = Multigraph::from_edges(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(count(&disconnected), 0);
        assert!(!disconnected.is_connected());
    }

    #[test]
    fn cofactor_is_independent_of_deleted_index() {
        let q = g7().laplacian();
        for d in 0..3 {
            assert_eq!(principal_cofactor(&q, d), BigUint::from(16u32));
        }
    }

    #[test]
    fn l1_cuts() {
        let k3 = Multigraph::complete(3).unwrap();
        let (c, w) = min_cut_l1(&k3).unwrap();
        assert_eq!((w, c.side), (2, vec![0]));
        let (c, w) = min_cut_l1(&g7()).unwrap();
        assert_eq!((w, c.side), (4, vec![2]));
        let (c, w) = min_cut_l1(&Multigraph::path(3).unwrap()).unwrap();
        assert_eq!((w, c.side), (1, vec![0]));
        let disconnected = Multigraph::from_edges(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(min_cut_l1(&disconnected).unwrap().1, 0);
    }

    #[test]
    fn linf_cuts() {
        let lim = Limits::default();
        assert_eq!(
            min_cut_linf(&Multigraph::complete(5).unwrap(), &lim)
                .unwrap()
                .1,
            1
        );
        let (c, w) = min_cut_linf(&g7(), &lim).unwrap();
        assert_eq!((w, c.side), (2, vec![2]));
        let k3x3 = Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 3), (1, 2, 3)]).unwrap();
        assert_eq!(min_cut_linf(&k3x3, &lim).unwrap().1, 3);
        let big = Multigraph::path(25).unwrap();
        assert!(matches!(
            min_cut_linf(&big, &lim),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&Multigraph::path(3).unwrap()).unwrap(), GraphGenus(0));
        assert_eq!(
            genus(&Multigraph::complete(3).unwrap()).unwrap(),
            GraphGenus(1)
        );
        assert_eq!(genus(&g7()).unwrap(), GraphGenus(5));
    }

    #[test]
    fn spectra() {
        let check = |g: Multigraph, want: &[f64]| {
            let e = laplacian_spectrum(&g.laplacian()).unwrap();
            assert_eq!(e.len(), want.len());
            for (x, y) in e.iter().zip(want) {
                assert!((x - y).abs() < 1e-9, "{e:?} vs {want:?}");
            }
        };
        check(Multigraph::complete(3).unwrap(), &[0.0, 3.0, 3.0]);
        check(Multigraph::complete(4).unwrap(), &[0.0, 4.0, 4.0, 4.0]);
        check(Multigraph::path(3).unwrap(), &[0.0, 1.0, 3.0]);
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(
            permutations(3),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn lexicographic_subset_order() {
        // {0} < {0,1} < {1} < {2}
        assert_eq!(lex_cmp(0b001, 0b011), Ordering::Less);
        assert_eq!(lex_cmp(0b011, 0b010), Ordering::Less);
        assert_eq!(lex_cmp(0b010, 0b100), Ordering::Less);
        assert_eq!(lex_cmp(0b101, 0b101), Ordering::Equal);
    }

    #[test]
    fn conjugation_moves_entries() {
        let p3 = Multigraph::path(3).unwrap().laplacian();
        let star = p3.conjugate(&[1, 0, 2]).unwrap();
        assert_eq!(star.row(0), &[2, -1, -1]);
        assert_eq!(
            star.to_graph(),
            Multigraph::from_edges(3, &[(0, 1, 1), (0, 2, 1)]).unwrap()
        );
    }
}
