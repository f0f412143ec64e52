//! Recovering the Laplacian from the Delaunay polytope, isomorphism and
//! congruence, and the census of graphs sharing a lattice.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::delaunay::polytope;
use crate::error::{Error, Result};
use crate::graph::{proper_subsets, LaplacianMatrix, Multigraph};
use crate::lattice::{LaplacianLattice, LatticePoint};
use crate::{guard, Limits};

fn not_delaunay(msg: impl Into<String>) -> Error {
    Error::NotDelaunayPolytope(msg.into())
}

fn sorted_set(points: &[LatticePoint]) -> Vec<LatticePoint> {
    points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Recovers `Q` from the vertex set of `H_Del(O)`: row `b_i` is the vertex
/// of the cone `p_i >= 0, p_j <= 0 (j != i)` with the largest coordinate
/// `i`. The result is validated by regenerating the vertex set.
pub fn reconstruct_laplacian(
    vertices: &[LatticePoint],
    limits: &Limits,
) -> Result<LaplacianMatrix> {
    let len = vertices
        .first()
        .map(LatticePoint::len)
        .ok_or_else(|| not_delaunay("empty vertex set"))?;
    if len < 2 {
        return Err(not_delaunay("points need at least 2 coordinates"));
    }
    if let Some(p) = vertices.iter().find(|p| p.len() != len) {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: p.len(),
        });
    }
    guard("vertex count", len, limits.polytope_vertices.min(30))?;
    let mut rows = Vec::with_capacity(len);
    for i in 0..len {
        let cone: Vec<&LatticePoint> = vertices
            .iter()
            .filter(|p| {
                let c = p.coords();
                c[i] >= 0 && (0..len).all(|j| j == i || c[j] <= 0)
            })
            .collect();
        let best = cone
            .iter()
            .map(|p| p.coords()[i])
            .max()
            .ok_or_else(|| not_delaunay(format!("cone {i} contains no vertex")))?;
        let top: BTreeSet<&LatticePoint> =
            cone.into_iter().filter(|p| p.coords()[i] == best).collect();
        if top.len() != 1 {
            return Err(not_delaunay(format!(
                "cone {i} has {} vertices maximizing coordinate {i}",
                top.len()
            )));
        }
        rows.push(top.into_iter().next().expect("one").coords().to_vec());
    }
    let q = LaplacianMatrix::from_rows(rows).map_err(|e| not_delaunay(e.to_string()))?;
    let l = LaplacianLattice::new(q.clone()).map_err(|e| not_delaunay(e.to_string()))?;
    let regenerated: Vec<LatticePoint> = proper_subsets(len).map(|m| l.subset_sum(m)).collect();
    if sorted_set(&regenerated) != sorted_set(vertices) {
        return Err(not_delaunay(
            "the recovered Laplacian generates a different vertex set",
        ));
    }
    Ok(q)
}

/// Permutation `perm` with `Q2[perm[i]][perm[j]] = Q1[i][j]`, by
/// backtracking with degree and neighbourhood-multiset pruning.
pub fn graphs_isomorphic(
    q1: &LaplacianMatrix,
    q2: &LaplacianMatrix,
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let len = q1.size();
    if len != q2.size() {
        return Ok(None);
    }
    guard("vertex count", len, limits.isomorphism_vertices)?;
    let signature = |q: &LaplacianMatrix, v: usize| -> (i64, Vec<i64>) {
        let mut nb: Vec<i64> = (0..len)
            .filter(|&u| u != v)
            .map(|u| q.entry(v, u))
            .collect();
        nb.sort_unstable();
        (q.entry(v, v), nb)
    };
    let sig1: Vec<_> = (0..len).map(|v| signature(q1, v)).collect();
    let sig2: Vec<_> = (0..len).map(|v| signature(q2, v)).collect();
    let mut a = sig1.clone();
    let mut b = sig2.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut perm = vec![usize::MAX; len];
    let mut used = vec![false; len];
    fn extend(
        v: usize,
        q1: &LaplacianMatrix,
        q2: &LaplacianMatrix,
        sig1: &[(i64, Vec<i64>)],
        sig2: &[(i64, Vec<i64>)],
        perm: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let len = perm.len();
        if v == len {
            return true;
        }
        for w in 0..len {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            if (0..v).any(|u| q1.entry(v, u) != q2.entry(w, perm[u])) {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            if extend(v + 1, q1, q2, sig1, sig2, perm, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    if extend(0, q1, q2, &sig1, &sig2, &mut perm, &mut used) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

/// Exact equality of two vertex sets.
pub fn polytopes_identical(v1: &[LatticePoint], v2: &[LatticePoint]) -> bool {
    sorted_set(v1) == sorted_set(v2)
}

/// Congruence of two Delaunay polytopes, decided as isomorphism of the
/// reconstructed graphs. Returns the vertex relabelling.
pub fn polytopes_congruent(
    v1: &[LatticePoint],
    v2: &[LatticePoint],
    limits: &Limits,
) -> Result<Option<Vec<usize>>> {
    let q1 = reconstruct_laplacian(v1, limits)?;
    let q2 = reconstruct_laplacian(v2, limits)?;
    graphs_isomorphic(&q1, &q2, limits)
}

/// Every connected multigraph on `vertex_count` labelled vertices with
/// multiplicities at most `max_mult`, in lexicographic order of the
/// multiplicity vector over pairs `(0,1), (0,2), ..., (n-1,n)`.
pub fn enumerate_connected(
    vertex_count: usize,
    max_mult: u32,
    limits: &Limits,
) -> Result<Vec<Multigraph>> {
    guard("vertex count", vertex_count, limits.census_vertices)?;
    guard(
        "multiplicity",
        max_mult as usize,
        limits.census_multiplicity as usize,
    )?;
    let pairs: Vec<(usize, usize)> = (0..vertex_count)
        .flat_map(|i| (i + 1..vertex_count).map(move |j| (i, j)))
        .collect();
    let base = max_mult
        .checked_add(1)
        .ok_or(Error::Overflow("graph enumeration"))?;
    let total = u64::from(base)
        .checked_pow(pairs.len() as u32)
        .ok_or(Error::Overflow("graph enumeration"))?;
    let mut out = Vec::new();
    let mut mults = vec![0u32; pairs.len()];
    for _ in 0..total {
        let edges: Vec<(usize, usize, u32)> = pairs
            .iter()
            .zip(&mults)
            .filter(|(_, &m)| m > 0)
            .map(|(&(i, j), &m)| (i, j, m))
            .collect();
        let g = Multigraph::from_edges(vertex_count, &edges)?;
        if g.is_connected() {
            out.push(g);
        }
        for m in mults.iter_mut().rev() {
            *m += 1;
            if *m < base {
                break;
            }
            *m = 0;
        }
    }
    Ok(out)
}

/// Graphs in the exhaustive family whose lattice equals `l`.
pub fn enumerate_graphs_with_lattice(
    l: &LaplacianLattice,
    max_mult: u32,
    limits: &Limits,
) -> Result<Vec<Multigraph>> {
    let mut out = Vec::new();
    for g in enumerate_connected(l.ambient(), max_mult, limits)? {
        if LaplacianLattice::from_graph(&g)? == *l {
            out.push(g);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeClass {
    pub hnf: Vec<Vec<BigInt>>,
    pub index: BigInt,
    pub graphs: Vec<Multigraph>,
    /// Number of distinct Delaunay polytopes among the class members.
    pub distinct_polytopes: usize,
    /// Whether some member has every vertex pair adjacent.
    pub complete_skeleton: bool,
}

impl LatticeClass {
    /// `N_Gr <= N_Del` with distinct graphs giving distinct polytopes.
    pub fn polytopes_pairwise_distinct(&self) -> bool {
        self.distinct_polytopes == self.graphs.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub vertex_count: usize,
    pub max_mult: u32,
    pub graph_count: usize,
    /// Classes ordered by their canonical form.
    pub classes: Vec<LatticeClass>,
}

/// Groups the exhaustive family by lattice.
pub fn census(vertex_count: usize, max_mult: u32, limits: &Limits) -> Result<Census> {
    let graphs = enumerate_connected(vertex_count, max_mult, limits)?;
    let mut groups: BTreeMap<Vec<Vec<BigInt>>, (BigInt, Vec<Multigraph>)> = BTreeMap::new();
    for g in &graphs {
        let l = LaplacianLattice::from_graph(g)?;
        groups
            .entry(l.hnf().to_vec())
            .or_insert_with(|| (BigInt::from(l.index().clone()), Vec::new()))
            .1
            .push(g.clone());
    }
    let mut classes = Vec::with_capacity(groups.len());
    for (hnf, (index, members)) in groups {
        let mut polys = BTreeSet::new();
        for g in &members {
            let p = polytope(&LaplacianLattice::from_graph(g)?, limits)?;
            polys.insert(p.point_set());
        }
        classes.push(LatticeClass {
            hnf,
            index,
            complete_skeleton: members.iter().any(Multigraph::has_complete_skeleton),
            distinct_polytopes: polys.len(),
            graphs: members,
        });
    }
    Ok(Census {
        vertex_count,
        max_mult,
        graph_count: graphs.len(),
        classes,
    })
}
