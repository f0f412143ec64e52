//! The Delaunay polytope of the origin, `H_Del(O)`, and the simplices
//! `tri_sigma` that triangulate `H_0` under lattice translation.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_to_i64, int, Rational};
use crate::graph::{mask_to_vec, permutations, proper_subsets};
use crate::hull::convex_hull;
use crate::lattice::{LaplacianLattice, LatticePoint, RationalPoint};
use crate::{guard, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeVertex {
    /// `S`, sorted.
    pub side: Vec<usize>,
    pub mask: u64,
    /// `u_S`.
    pub point: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFacet {
    pub i: usize,
    pub j: usize,
    /// Indices into [`DelaunayPolytope::vertices`] of `u_S` with `i in S`, `j not in S`.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelaunayPolytope {
    /// Dimension `n`.
    pub dim: usize,
    /// One vertex per nonempty proper `S`, ordered by bitmask.
    pub vertices: Vec<PolytopeVertex>,
    /// `F_{i,j}` for all ordered pairs `i != j`, lexicographic.
    pub facets: Vec<PolytopeFacet>,
    /// Pairs `(u_S, u_{S + j})` with both sides proper, as vertex indices.
    pub edges: Vec<(usize, usize)>,
}

impl DelaunayPolytope {
    pub fn points(&self) -> Vec<LatticePoint> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    /// Vertex set sorted and deduplicated.
    pub fn point_set(&self) -> Vec<LatticePoint> {
        let set: BTreeSet<_> = self.vertices.iter().map(|v| v.point.clone()).collect();
        set.into_iter().collect()
    }

    pub fn vertex_index(&self, p: &LatticePoint) -> Option<usize> {
        self.vertices.iter().position(|v| &v.point == p)
    }
}

fn vertex_position(mask: u64) -> usize {
    (mask - 1) as usize
}

pub fn polytope(l: &LaplacianLattice, limits: &Limits) -> Result<DelaunayPolytope> {
    let len = l.ambient();
    guard("vertex count", len, limits.polytope_vertices.min(30))?;
    let vertices: Vec<PolytopeVertex> = proper_subsets(len)
        .map(|mask| PolytopeVertex {
            side: mask_to_vec(mask, len),
            mask,
            point: l.subset_sum(mask),
        })
        .collect();
    let mut facets = Vec::with_capacity(len * (len - 1));
    for i in 0..len {
        for j in 0..len {
            if i == j {
                continue;
            }
            let members = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.mask >> i & 1 == 1 && v.mask >> j & 1 == 0)
                .map(|(k, _)| k)
                .collect();
            facets.push(PolytopeFacet { i, j, members });
        }
    }
    let full = (1u64 << len) - 1;
    let mut edges = Vec::new();
    for v in &vertices {
        for j in 0..len {
            let bigger = v.mask | 1 << j;
            if bigger != v.mask && bigger != full {
                edges.push((vertex_position(v.mask), vertex_position(bigger)));
            }
        }
    }
    edges.sort_unstable();
    Ok(DelaunayPolytope {
        dim: len - 1,
        vertices,
        facets,
        edges,
    })
}

/// Number of facets containing `v`.
pub fn vertex_facet_degree(p: &DelaunayPolytope, v: &LatticePoint) -> Result<usize> {
    let k = p
        .vertex_index(v)
        .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a vertex of the polytope")))?;
    Ok(p.facets
        .iter()
        .filter(|f| f.members.binary_search(&k).is_ok())
        .count())
}

/// Linear functional `w` with `w . u_S = [i in S] - [j in S]`, i.e. the
/// coefficient difference `x_i - x_j` in the row basis. It equals 1 on
/// `F_{i,j}` and is at most 0 on every other vertex.
pub fn facet_functional(l: &LaplacianLattice, i: usize, j: usize) -> Result<Vec<Rational>> {
    unit_response(l, |k| {
        if k == i {
            int(1)
        } else if k == j {
            int(-1)
        } else {
            Rational::zero()
        }
    })
}

/// `w` solving `Q w = target` with `w_n = 0`; `target` must sum to zero.
fn unit_response(
    l: &LaplacianLattice,
    target: impl Fn(usize) -> Rational,
) -> Result<Vec<Rational>> {
    let t: Vec<Rational> = (0..l.ambient()).map(target).collect();
    l.coefficients(&RationalPoint::new(t)?)
}

/// Functional strictly maximized over all subset sums at `u_S`, where `S`
/// is given by `mask`. With `k = |S|` it takes the value `n + 1 - k` on each
/// row in `S` and `-k` on each row outside.
pub fn vertex_certificate(l: &LaplacianLattice, mask: u64) -> Result<Vec<Rational>> {
    let len = l.ambient();
    let k = mask.count_ones() as i64;
    unit_response(l, |i| {
        if mask >> i & 1 == 1 {
            int(len as i64 - k)
        } else {
            int(-k)
        }
    })
}

pub fn evaluate(w: &[Rational], p: &LatticePoint) -> Rational {
    w.iter()
        .zip(p.coords())
        .fold(Rational::zero(), |s, (a, &b)| s + a * int(b))
}

/// Vertices `u^sigma_0, ..., u^sigma_{n-1}, O` of `tri_sigma`, with
/// `u^sigma_i = b_{sigma(0)} + ... + b_{sigma(i)}`.
pub fn simplex_vertices(l: &LaplacianLattice, sigma: &[usize]) -> Vec<LatticePoint> {
    let mut mask = 0u64;
    sigma
        .iter()
        .map(|&s| {
            mask |= 1 << s;
            l.subset_sum(mask)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCertificate {
    pub contained: bool,
    /// `lambda_i`, the coefficient of `b_{sigma(i)}` once the coefficient
    /// of `b_{sigma(0)}` is normalized to 1.
    pub lambda: Vec<Rational>,
}

/// Whether `p` lies in the closed simplex `tri_sigma`: writing
/// `p = sum lambda_i b_{sigma(i)}` with `lambda_0 = 1`, membership is
/// `1 = lambda_0 >= lambda_1 >= ... >= lambda_n >= 0`.
pub fn simplex_contains(
    l: &LaplacianLattice,
    sigma: &[usize],
    p: &RationalPoint,
) -> Result<SimplexCertificate> {
    crate::graph::check_permutation(sigma, l.ambient())?;
    let x = l.coefficients(p)?;
    let shift = Rational::one() - &x[sigma[0]];
    let lambda: Vec<Rational> = sigma.iter().map(|&s| &x[s] + &shift).collect();
    let contained =
        lambda.windows(2).all(|w| w[0] >= w[1]) && !lambda.last().expect("nonempty").is_negative();
    Ok(SimplexCertificate { contained, lambda })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub sigma: Vec<usize>,
    /// Lattice translate `q` with `p in tri_sigma + q`.
    pub translate: LatticePoint,
    pub certificate: SimplexCertificate,
}

/// Finds a simplex `tri_sigma + q` containing `p`.
///
/// Floors the row coefficients of `p` to pick `q`, then orders the
/// fractional parts descending (ties by index) to pick `sigma`; the
/// resulting certificate is descending by construction. If verification
/// nevertheless fails, every `sigma` is tried against `q` and its
/// neighbours `q + u_S`.
pub fn locate(l: &LaplacianLattice, p: &RationalPoint, limits: &Limits) -> Result<Location> {
    let x = l.coefficients(p)?;
    let fl = x.iter().map(floor_to_i64).collect::<Result<Vec<_>>>()?;
    let frac: Vec<Rational> = x.iter().zip(&fl).map(|(a, &f)| a - int(f)).collect();
    let mut sigma: Vec<usize> = (0..l.ambient()).collect();
    sigma.sort_by(|&a, &b| frac[b].cmp(&frac[a]).then(a.cmp(&b)));
    let q = l.combine(&fl);
    let rest = p.sub(&q.to_rational());
    let cert = simplex_contains(l, &sigma, &rest)?;
    if cert.contained {
        return Ok(Location {
            sigma,
            translate: q,
            certificate: cert,
        });
    }
    guard("vertex count", l.ambient(), limits.locate_vertices)?;
    let mut candidates = vec![q.clone()];
    candidates.extend(proper_subsets(l.ambient()).map(|m| q.add(&l.subset_sum(m))));
    for t in candidates {
        let rest = p.sub(&t.to_rational());
        for s in permutations(l.ambient()) {
            let cert = simplex_contains(l, &s, &rest)?;
            if cert.contained {
                return Ok(Location {
                    sigma: s,
                    translate: t,
                    certificate: cert,
                });
            }
        }
    }
    Err(Error::Internal(format!(
        "no Delaunay simplex contains the point {:?}",
        p.coords()
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVectorCheck {
    pub dim: usize,
    /// `2^(n+1) - 2`.
    pub f0_formula: usize,
    pub f0_hull: usize,
    /// Count of subset-chain edges.
    pub f1_formula: usize,
    pub f1_hull: usize,
    /// `n (n + 1)`.
    pub facets_formula: usize,
    pub facets_hull: usize,
    /// The hull's facets, as vertex sets, are exactly the `F_{i,j}`.
    pub facet_sets_match: bool,
    /// The hull's edges are exactly the subset-chain pairs.
    pub edges_match: bool,
    /// Every vertex of size `k` lies on `k (n + 1 - k)` facets.
    pub degrees_match: bool,
}

impl FVectorCheck {
    pub fn all_match(&self) -> bool {
        self.f0_formula == self.f0_hull
            && self.f1_formula == self.f1_hull
            && self.facets_formula == self.facets_hull
            && self.facet_sets_match
            && self.edges_match
            && self.degrees_match
    }
}

/// Compares the combinatorics of `p` with the exact convex hull of its
/// vertex set. `H_0` is identified with `R^n` by dropping the last
/// coordinate, an affine bijection.
pub fn hull_f_vector_check(p: &DelaunayPolytope, limits: &Limits) -> Result<FVectorCheck> {
    guard("dimension", p.dim, limits.hull_dimension)?;
    let n = p.dim;
    let pts: Vec<Vec<i64>> = p
        .vertices
        .iter()
        .map(|v| v.point.coords()[..n].to_vec())
        .collect();
    let hull = convex_hull(&pts)?;
    let hull_facets: BTreeSet<Vec<usize>> = hull.facets.iter().map(|f| f.points.clone()).collect();
    let rule_facets: BTreeSet<Vec<usize>> = p.facets.iter().map(|f| f.members.clone()).collect();
    let hull_edges: BTreeSet<(usize, usize)> = hull.edges.iter().copied().collect();
    let rule_edges: BTreeSet<(usize, usize)> = p.edges.iter().copied().collect();
    let degrees_match = p.vertices.iter().enumerate().all(|(k, v)| {
        let size = v.side.len();
        let on = hull
            .facets
            .iter()
            .filter(|f| f.points.binary_search(&k).is_ok())
            .count();
        on == size * (n + 1 - size)
    });
    Ok(FVectorCheck {
        dim: n,
        f0_formula: (1usize << (n + 1)) - 2,
        f0_hull: hull.vertices.len(),
        f1_formula: p.edges.len(),
        f1_hull: hull.edges.len(),
        facets_formula: n * (n + 1),
        facets_hull: hull.facets.len(),
        facet_sets_match: hull_facets == rule_facets,
        edges_match: hull_edges == rule_edges,
        degrees_match,
    })
}

/// Simplex classes up to lattice translation. `tri_sigma` and the simplex
/// of the rotated order `(sigma(1), ..., sigma(n), sigma(0))` differ by the
/// translate `b_{sigma(0)}`, so each class has a representative with
/// `sigma(0) = n`; there are `n!` classes.
pub fn simplex_classes(l: &LaplacianLattice) -> Vec<(Vec<usize>, Vec<LatticePoint>)> {
    let n = l.dim();
    permutations(l.ambient())
        .into_iter()
        .filter(|s| s[0] == n)
        .map(|s| {
            let mut verts = simplex_vertices(l, &s);
            verts.sort();
            (s, verts)
        })
        .collect()
}
