//! Brute-force and limit verifiers for the closed-form invariants:
//! vertex-order critical points, grid Voronoi neighbours, grid maxima of
//! `h`, ball overlaps, and the standard perturbation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::graph::{min_cut_l1, permutations, proper_subsets, LaplacianMatrix, Multigraph};
use crate::invariants::{covering_radius, shortest_vector};
use crate::lattice::{
    lattice_distance, triangle_midpoint, LaplacianLattice, LatticePoint, Orientation, RationalPoint,
};
use crate::{guard, Limits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    /// Vertex order, first vertex first.
    pub order: Vec<usize>,
    /// In-degrees when every edge points from the earlier to the later vertex.
    pub indegree: Vec<i64>,
    /// `pi_0(indegree)`.
    pub point: RationalPoint,
    /// `min_q d_tri(q, point)`, the distance from the nearest lattice point.
    pub h: Rational,
    pub matches_cov: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalReport {
    pub cov: Rational,
    pub points: Vec<CriticalPoint>,
}

impl CriticalReport {
    pub fn all_match(&self) -> bool {
        self.points.iter().all(|p| p.matches_cov)
    }
}

/// In-degree vector of the acyclic orientation induced by `order`.
pub fn indegrees(g: &Multigraph, order: &[usize]) -> Vec<i64> {
    let len = g.vertex_count();
    let mut pos = vec![0; len];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    (0..len)
        .map(|v| {
            (0..len)
                .filter(|&u| pos[u] < pos[v])
                .map(|u| i64::from(g.multiplicity(u, v)))
                .sum()
        })
        .collect()
}

/// Evaluates `min_q d_tri(q, c)` at `c = pi_0(nu_pi)` for every vertex
/// order `pi` and compares it with the covering radius. Covering balls are
/// centred at lattice points, so the distance runs from `q` to `c`, which
/// is `h_tribar(c)`.
pub fn critical_points(g: &Multigraph, limits: &Limits) -> Result<CriticalReport> {
    guard("vertex count", g.vertex_count(), limits.critical_vertices)?;
    let l = LaplacianLattice::from_graph(g)?;
    let cov = covering_radius(g)?;
    let mut cache: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    let mut points = Vec::new();
    for order in permutations(g.vertex_count()) {
        let indegree = indegrees(g, &order);
        let point =
            crate::lattice::project_h0(&indegree.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let h = match cache.get(&indegree) {
            Some(h) => h.clone(),
            None => {
                let h = l.h_distance(&point, Orientation::TriBar)?.value;
                cache.insert(indegree.clone(), h.clone());
                h
            }
        };
        points.push(CriticalPoint {
            matches_cov: h == cov,
            order,
            indegree,
            point,
            h,
        });
    }
    Ok(CriticalReport { cov, points })
}

fn grid_guard(l: &LaplacianLattice, resolution: usize, limits: &Limits) -> Result<()> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    if !(2..=3).contains(&l.dim()) {
        return Err(Error::InvalidArgument(format!(
            "grid oracles need dimension 2 or 3, got {}",
            l.dim()
        )));
    }
    guard("grid resolution", resolution, limits.grid_resolution)
}

/// Points `sum_{i<n} (t_i / resolution) b_i` with `0 <= t_i < resolution`,
/// a rational grid over the fundamental parallelepiped, in lexicographic
/// order of `t`.
pub fn grid_points(l: &LaplacianLattice, resolution: usize) -> Vec<RationalPoint> {
    let n = l.dim();
    let res = resolution as i64;
    let mut t = vec![0i64; n];
    let mut out = Vec::new();
    loop {
        let mut coords = vec![Rational::zero(); l.ambient()];
        for (i, &ti) in t.iter().enumerate() {
            if ti != 0 {
                let f = rat(ti, res);
                for (c, &b) in coords.iter_mut().zip(l.row(i)) {
                    *c += &f * int(b);
                }
            }
        }
        out.push(RationalPoint::new(coords).expect("combination of rows"));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < res {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Lattice points sharing a Voronoi cell boundary with `O`, as seen on the
/// grid: whenever a grid point has several nearest lattice points `a`, `b`
/// under `d_tri`, `b - a` is a neighbour. A lower bound for the true set;
/// refining the grid only adds points.
pub fn voronoi_neighbors_grid(
    l: &LaplacianLattice,
    resolution: usize,
    limits: &Limits,
) -> Result<Vec<LatticePoint>> {
    grid_guard(l, resolution, limits)?;
    let mut out = BTreeSet::new();
    for p in grid_points(l, resolution) {
        let h = l.h_distance(&p, Orientation::Tri)?;
        for a in &h.argmins {
            for b in &h.argmins {
                if a != b {
                    out.insert(b.sub(a));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMax {
    pub value: Rational,
    pub point: RationalPoint,
}

/// Largest `min_q d_tri(q, p)` over the grid, i.e. the covering radius as
/// seen on the grid; the first maximizer in grid order.
pub fn max_h_on_grid(l: &LaplacianLattice, resolution: usize, limits: &Limits) -> Result<GridMax> {
    grid_guard(l, resolution, limits)?;
    let mut best: Option<GridMax> = None;
    for p in grid_points(l, resolution) {
        let h = l.h_distance(&p, Orientation::TriBar)?.value;
        if best.as_ref().is_none_or(|b| h > b.value) {
            best = Some(GridMax { value: h, point: p });
        }
    }
    Ok(best.expect("grid is nonempty"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    /// Largest number of lattice points `q` with `d_tri(q, p) < r` at one grid point `p`.
    pub max_count: usize,
    pub point: RationalPoint,
    pub centers: Vec<LatticePoint>,
}

/// Scans the grid for points inside two or more open simplicial balls
/// `{p : d_tri(q, p) < r}` around lattice points `q`. A count of at most
/// one everywhere means no overlap was found.
pub fn max_overlap_on_grid(
    l: &LaplacianLattice,
    resolution: usize,
    r: &Rational,
    limits: &Limits,
) -> Result<Overlap> {
    grid_guard(l, resolution, limits)?;
    let mut best: Option<Overlap> = None;
    for p in grid_points(l, resolution) {
        // d_tri(q, p) = d_tribar(p, q).
        let centers = l.points_within(&p, Orientation::TriBar, r, true)?;
        if best.as_ref().is_none_or(|b| centers.len() > b.max_count) {
            best = Some(Overlap {
                max_count: centers.len(),
                point: p,
                centers,
            });
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Shortest nonzero lattice vector under `d_tri(O, .)` by exhaustive search.
/// Every row is a candidate, so the shortest vector lies within the
/// smallest row distance and the closed ball of that radius is searched.
pub fn brute_force_shortest_vector(l: &LaplacianLattice) -> Result<(Rational, Vec<LatticePoint>)> {
    let len = l.ambient();
    let origin = vec![0i64; len];
    let radius = (0..len)
        .map(|i| lattice_distance(&origin, l.row(i), Orientation::Tri))
        .min()
        .expect("at least two rows");
    let ball = l.points_within(
        &RationalPoint::origin(len),
        Orientation::Tri,
        &int(radius),
        false,
    )?;
    let mut best = i64::MAX;
    let mut argmins = Vec::new();
    for q in ball.into_iter().filter(|q| !q.is_origin()) {
        let d = lattice_distance(&origin, q.coords(), Orientation::Tri);
        if d < best {
            best = d;
            argmins.clear();
        }
        if d == best {
            argmins.push(q);
        }
    }
    Ok((int(best), argmins))
}

/// Smallest `d_tri`-midpoint radius between `O` and some `u_S`.
pub fn midpoint_packing_radius(l: &LaplacianLattice) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for mask in proper_subsets(l.ambient()) {
        let (_, r) = triangle_midpoint(&l.subset_sum(mask).to_rational())?;
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one proper subset"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedLattice {
    pub eps: Rational,
    /// Denominator of `eps`; `scale * Q^eps` is integral.
    pub scale: i64,
    /// `scale * Q^eps`.
    pub laplacian: LaplacianMatrix,
    pub graph: Multigraph,
}

/// Adds `eps` to every multiplicity (including absent pairs) and scales
/// by the denominator of `eps` so the result is an integral Laplacian.
pub fn perturb_standard(q: &LaplacianMatrix, eps: &Rational) -> Result<PerturbedLattice> {
    if eps.is_negative() {
        return Err(Error::InvalidArgument(
            "perturbation must be nonnegative".into(),
        ));
    }
    let scale = eps
        .denom()
        .to_i64()
        .ok_or(Error::Overflow("perturbation scale"))?;
    let add = eps
        .numer()
        .to_i64()
        .ok_or(Error::Overflow("perturbation"))?;
    let len = q.size();
    let mut rows = Vec::with_capacity(len);
    for i in 0..len {
        let mut row = vec![0i64; len];
        for j in 0..len {
            if i != j {
                row[j] = scale
                    .checked_mul(q.entry(i, j))
                    .and_then(|v| v.checked_sub(add))
                    .ok_or(Error::Overflow("perturbation"))?;
            }
        }
        row[i] = -row.iter().sum::<i64>();
        rows.push(row);
    }
    let laplacian = LaplacianMatrix::from_rows(rows)?;
    Ok(PerturbedLattice {
        eps: eps.clone(),
        scale,
        graph: laplacian.to_graph(),
        laplacian,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitRow {
    pub eps: Rational,
    pub scale: i64,
    /// `nu` of the perturbed lattice, divided by the scale.
    pub nu: Rational,
    pub pac: Rational,
    pub nu_gap: Rational,
    pub pac_gap: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub nu: Rational,
    pub pac: Rational,
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    /// Both gap sequences are nonincreasing.
    pub fn nonincreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].nu_gap <= w[0].nu_gap && w[1].pac_gap <= w[0].pac_gap)
    }

    /// Both final gaps are at most `(n + 1) eps` for the last `eps`.
    pub fn final_within(&self, vertex_count: usize) -> bool {
        self.rows.last().is_none_or(|r| {
            let bound = &r.eps * int(vertex_count as i64);
            r.nu_gap <= bound && r.pac_gap <= bound
        })
    }
}

/// `nu` and `Pac` along a decreasing sequence of standard perturbations,
/// each obtained from the subset sums `u_S` of the perturbed lattice.
pub fn limit_check(g: &Multigraph, eps: &[Rational], limits: &Limits) -> Result<LimitReport> {
    if eps.iter().any(|e| !e.is_positive()) || eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "perturbations must be positive and strictly decreasing".into(),
        ));
    }
    let len = g.vertex_count() as i64;
    let l = LaplacianLattice::from_graph(g)?;
    let nu = shortest_vector(&l, limits)?.nu;
    let pac = rat(min_cut_l1(g)?.1 as i64, len);
    let mut rows = Vec::with_capacity(eps.len());
    for e in eps {
        let p = perturb_standard(l.laplacian(), e)?;
        let lp = LaplacianLattice::new(p.laplacian.clone())?;
        let scale = int(p.scale);
        let nu_e = shortest_vector(&lp, limits)?.nu / &scale;
        let pac_e = rat(min_cut_l1(&p.graph)?.1 as i64, len) / &scale;
        rows.push(LimitRow {
            eps: e.clone(),
            scale: p.scale,
            nu_gap: (&nu_e - &nu).abs(),
            pac_gap: (&pac_e - &pac).abs(),
            nu: nu_e,
            pac: pac_e,
        });
    }
    Ok(LimitReport { nu, pac, rows })
}

/// `2^-1, ..., 2^-k`.
pub fn dyadic_sequence(k: u32) -> Vec<Rational> {
    (1..=k).map(|i| rat(1, 1i64 << i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g7() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2), (1, 2, 2)]).unwrap()
    }

    fn lat(g: &Multigraph) -> LaplacianLattice {
        LaplacianLattice::from_graph(g).unwrap()
    }

    fn rp(c: &[(i64, i64)]) -> RationalPoint {
        RationalPoint::new(c.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn critical_point_examples() {
        let lim = Limits::default();
        let k3 = critical_points(&Multigraph::complete(3).unwrap(), &lim).unwrap();
        let first = &k3.points[0];
        assert_eq!(first.indegree, vec![0, 1, 2]);
        assert_eq!(first.point, RationalPoint::from_ints(&[-1, 0, 1]).unwrap());
        assert_eq!(first.h, int(1));
        assert!(k3.all_match());
        let p3 = critical_points(&Multigraph::path(3).unwrap(), &lim).unwrap();
        assert_eq!(p3.points[0].indegree, vec![0, 1, 1]);
        assert_eq!(p3.points[0].point, rp(&[(-2, 3), (1, 3), (1, 3)]));
        assert_eq!(p3.points[0].h, rat(2, 3));
        let g = critical_points(&g7(), &lim).unwrap();
        assert!(g.points.iter().all(|p| p.h == rat(7, 3)));
    }

    #[test]
    fn same_orientation_same_indegrees() {
        // On P3 the orders (0,2,1) and (2,0,1) orient both edges into 1.
        let p3 = Multigraph::path(3).unwrap();
        assert_eq!(indegrees(&p3, &[0, 2, 1]), indegrees(&p3, &[2, 0, 1]));
    }

    #[test]
    fn voronoi_neighbours_of_k3() {
        let lim = Limits::default();
        let l = lat(&Multigraph::complete(3).unwrap());
        let got = voronoi_neighbors_grid(&l, 24, &lim).unwrap();
        let want: Vec<LatticePoint> = proper_subsets(3)
            .map(|m| l.subset_sum(m))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(got, want);
        let coarse = voronoi_neighbors_grid(&l, 8, &lim).unwrap();
        assert!(coarse.iter().all(|p| got.contains(p)));
    }

    #[test]
    fn voronoi_neighbours_of_g7_include_cut_neighbours() {
        let l = lat(&g7());
        let got = voronoi_neighbors_grid(&l, 24, &Limits::default()).unwrap();
        assert!(got.contains(&l.row_point(2)));
        assert!(got.contains(&l.subset_sum(0b011)));
    }

    #[test]
    fn grid_guards() {
        let l = lat(&Multigraph::path(5).unwrap());
        assert!(voronoi_neighbors_grid(&l, 8, &Limits::default()).is_err());
        let l = lat(&g7());
        assert!(matches!(
            voronoi_neighbors_grid(&l, 65, &Limits::default()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn perturbations() {
        let k3 = Multigraph::complete(3).unwrap().laplacian();
        let p = perturb_standard(&k3, &rat(1, 2)).unwrap();
        assert_eq!(p.scale, 2);
        assert_eq!(p.graph.edges(), vec![(0, 1, 3), (0, 2, 3), (1, 2, 3)]);
        let p3 = Multigraph::path(3).unwrap().laplacian();
        let p = perturb_standard(&p3, &rat(1, 2)).unwrap();
        assert_eq!(p.graph.edges(), vec![(0, 1, 3), (0, 2, 1), (1, 2, 3)]);
        assert!(p.graph.has_complete_skeleton());
        let p = perturb_standard(&p3, &int(0)).unwrap();
        assert_eq!(p.laplacian, p3);
    }

    #[test]
    fn limits_of_perturbations() {
        let lim = Limits::default();
        let eps = dyadic_sequence(6);
        let p3 = limit_check(&Multigraph::path(3).unwrap(), &eps, &lim).unwrap();
        for r in &p3.rows {
            assert_eq!(r.pac, (int(1) + int(2) * &r.eps) / int(3));
        }
        assert!(p3.nonincreasing() && p3.final_within(3));
        let k3 = limit_check(&Multigraph::complete(3).unwrap(), &eps, &lim).unwrap();
        for r in &k3.rows {
            assert_eq!(r.nu, int(1) + &r.eps);
        }
        let tree = limit_check(&Multigraph::path(4).unwrap(), &eps, &lim).unwrap();
        let last = tree.rows.last().unwrap();
        assert!(last.nu_gap <= rat(3, 64) && last.pac_gap <= rat(3, 64));
        assert!(limit_check(&Multigraph::path(3).unwrap(), &[rat(1, 4), rat(1, 2)], &lim).is_err());
    }

    #[test]
    fn brute_force_shortest_vectors() {
        let (v, arg) = brute_force_shortest_vector(&lat(&g7())).unwrap();
        assert_eq!(v, int(2));
        assert!(arg.contains(&LatticePoint::new(vec![-2, -2, 4]).unwrap()));
        assert_eq!(midpoint_packing_radius(&lat(&g7())).unwrap(), rat(4, 3));
    }

    #[test]
    fn packing_balls_do_not_overlap_on_k3() {
        let lim = Limits::default();
        let l = lat(&Multigraph::complete(3).unwrap());
        let o = max_overlap_on_grid(&l, 12, &rat(2, 3), &lim).unwrap();
        assert!(o.max_count <= 1);
        let o = max_overlap_on_grid(&l, 12, &int(1), &lim).unwrap();
        assert!(o.max_count >= 2);
        let m = max_h_on_grid(&l, 12, &lim).unwrap();
        assert!(m.value <= int(1));
    }
}
