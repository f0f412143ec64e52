//! Shortest vector, packing and covering radius, densities and the
//! Ramanujan checks, all under `d_tri`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::graph::{
    cut, genus, laplacian_spectrum, lex_cmp, mask_to_vec, min_cut_l1, min_cut_linf, proper_subsets,
    spanning_tree_count, Cut, GraphGenus, Multigraph,
};
use crate::lattice::{lattice_distance, LaplacianLattice, LatticePoint, Orientation};
use crate::{guard, Limits};

/// Eigenvalues with absolute value below this count as zero.
pub const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-9;
/// Relative tolerance of the `prod(lambda) = (n + 1) * trees` self-check.
pub const KIRCHHOFF_TOLERANCE: f64 = 1e-6;
/// Slack allowed when comparing `lambda^A` with `2 sqrt(d - 1)`.
pub const RAMANUJAN_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestVector {
    pub nu: Rational,
    pub witness: LatticePoint,
    pub side: Vec<usize>,
}

/// `nu = min_S d_tri(O, u_S)`, which equals `MC_inf`. Each subset is
/// checked against `d_tri(O, u_S) = mu_inf(S)`. Ties go to the
/// lexicographically smallest `S`.
pub fn shortest_vector(l: &LaplacianLattice, limits: &Limits) -> Result<ShortestVector> {
    let len = l.ambient();
    guard("vertex count", len, limits.enumeration_vertices.min(63))?;
    let g = l.laplacian().to_graph();
    let origin = vec![0i64; len];
    let mut best: Option<(i64, u64, LatticePoint)> = None;
    for mask in proper_subsets(len) {
        let u = l.subset_sum(mask);
        let d = lattice_distance(&origin, u.coords(), Orientation::Tri);
        let side = mask_to_vec(mask, len);
        let mu = cut(&g, &side)?.linf_weight;
        if d as u64 != mu {
            return Err(Error::Internal(format!(
                "d(O, u_S) = {d} but mu_inf(S) = {mu} for S = {side:?}"
            )));
        }
        let better = match &best {
            None => true,
            Some((bd, bm, _)) => d < *bd || (d == *bd && lex_cmp(mask, *bm).is_lt()),
        };
        if better {
            best = Some((d, mask, u));
        }
    }
    let (d, mask, witness) = best.expect("at least one proper subset");
    Ok(ShortestVector {
        nu: int(d),
        witness,
        side: mask_to_vec(mask, len),
    })
}

/// `Pac = MC_1 / (n + 1)` with the minimizing cut.
pub fn packing_radius(g: &Multigraph) -> Result<(Rational, Cut)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (c, w) = min_cut_l1(g)?;
    Ok((rat(w as i64, g.vertex_count() as i64), c))
}

/// `Cov = (g + n) / (n + 1)` with `g` the cycle rank.
pub fn covering_radius(g: &Multigraph) -> Result<Rational> {
    let GraphGenus(genus) = genus(g)?;
    let len = g.vertex_count() as i64;
    Ok(rat(genus as i64 + len - 1, len))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Densities {
    /// `gamma = MC_1 / ((n + 1) GM)`.
    pub gamma: f64,
    /// `theta = sum(lambda) / (2 (n + 1) GM)`.
    pub theta: f64,
    /// Geometric mean of the nonzero Laplacian eigenvalues.
    pub geometric_mean: f64,
    /// Full Laplacian spectrum, ascending.
    pub spectrum: Vec<f64>,
}

/// Nonzero part of the spectrum of a connected graph, checked against the
/// exact tree count.
fn nonzero_spectrum(g: &Multigraph) -> Result<(Vec<f64>, Vec<f64>)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let q = g.laplacian();
    let spec = laplacian_spectrum(&q)?;
    if spec[0].abs() > ZERO_EIGENVALUE_TOLERANCE {
        return Err(Error::Numeric(format!(
            "smallest Laplacian eigenvalue {} is not zero",
            spec[0]
        )));
    }
    let nonzero = spec[1..].to_vec();
    if nonzero.iter().any(|&x| x <= ZERO_EIGENVALUE_TOLERANCE) {
        return Err(Error::Numeric(
            "connected graph with a repeated zero eigenvalue".into(),
        ));
    }
    let trees = spanning_tree_count(&q);
    let log_prod: f64 = nonzero.iter().map(|x| x.ln()).sum();
    let log_expected = biguint_ln(&trees) + (g.vertex_count() as f64).ln();
    if (log_prod - log_expected).abs() > KIRCHHOFF_TOLERANCE {
        return Err(Error::Numeric(format!(
            "eigenvalue product disagrees with (n+1) * trees: ln {log_prod} vs ln {log_expected}"
        )));
    }
    Ok((spec, nonzero))
}

fn biguint_ln(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

pub fn densities(g: &Multigraph) -> Result<Densities> {
    let (spectrum, nonzero) = nonzero_spectrum(g)?;
    let n = nonzero.len() as f64;
    let len = g.vertex_count() as f64;
    let gm = (nonzero.iter().map(|x| x.ln()).sum::<f64>() / n).exp();
    let (_, mc1) = min_cut_l1(g)?;
    let sum: f64 = nonzero.iter().sum();
    Ok(Densities {
        gamma: mc1 as f64 / (len * gm),
        theta: sum / (2.0 * len * gm),
        geometric_mean: gm,
        spectrum,
    })
}

/// `n / (2 (n + 1))`, the lower bound on `theta`.
pub fn theta_lower_bound(vertex_count: usize) -> f64 {
    let n = (vertex_count - 1) as f64;
    n / (2.0 * (n + 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamanujanVerdict {
    Ramanujan,
    NotRamanujan,
    /// The graph is not regular.
    NotApplicable,
}

impl RamanujanVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RamanujanVerdict::Ramanujan => "ramanujan",
            RamanujanVerdict::NotRamanujan => "not_ramanujan",
            RamanujanVerdict::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamanujanEvidence {
    pub verdict: RamanujanVerdict,
    pub degrees: Vec<u64>,
    pub degree: Option<u64>,
    /// `max(|lambda^A_2|, |lambda^A_{n+1}|)`.
    pub lambda_a: Option<f64>,
    /// `2 sqrt(d - 1)`.
    pub bound: Option<f64>,
    /// `[d - 2 sqrt(d - 1), d + 2 sqrt(d - 1)]`.
    pub laplacian_interval: Option<(f64, f64)>,
    /// Whether every nonzero Laplacian eigenvalue lies in that interval.
    pub spectrum_in_interval: Option<bool>,
}

pub fn is_ramanujan(g: &Multigraph) -> Result<RamanujanEvidence> {
    let degrees = g.degrees();
    let not_applicable = RamanujanEvidence {
        verdict: RamanujanVerdict::NotApplicable,
        degrees: degrees.clone(),
        degree: None,
        lambda_a: None,
        bound: None,
        laplacian_interval: None,
        spectrum_in_interval: None,
    };
    let Some(d) = g.regular_degree() else {
        return Ok(not_applicable);
    };
    if d == 0 {
        return Ok(not_applicable);
    }
    let spec = laplacian_spectrum(&g.laplacian())?;
    let df = d as f64;
    // Adjacency eigenvalues are d - lambda; the largest, d itself, pairs
    // with the zero Laplacian eigenvalue and is skipped.
    let lambda_a = spec[1..]
        .iter()
        .map(|l| (df - l).abs())
        .fold(0.0f64, f64::max);
    let bound = 2.0 * (df - 1.0).sqrt();
    let interval = (df - bound, df + bound);
    let in_interval = spec[1..]
        .iter()
        .all(|&l| l >= interval.0 - RAMANUJAN_TOLERANCE && l <= interval.1 + RAMANUJAN_TOLERANCE);
    let verdict = if lambda_a <= bound + RAMANUJAN_TOLERANCE {
        RamanujanVerdict::Ramanujan
    } else {
        RamanujanVerdict::NotRamanujan
    };
    Ok(RamanujanEvidence {
        verdict,
        degrees,
        degree: Some(d),
        lambda_a: Some(lambda_a),
        bound: Some(bound),
        laplacian_interval: Some(interval),
        spectrum_in_interval: Some(in_interval),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamanujanBounds {
    pub evidence: RamanujanEvidence,
    /// `None` when the graph is not Ramanujan: nothing is claimed.
    pub claimed: Option<ClaimedBounds>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimedBounds {
    pub degree: u64,
    pub theta: f64,
    pub gamma: f64,
    /// `d / (4 (d - 2 sqrt(d - 1)))`; `None` means unbounded (`d = 2`).
    pub theta_upper: Option<f64>,
    pub theta_holds: bool,
    /// `theta_upper - theta` when bounded.
    pub theta_margin: Option<f64>,
    /// `d / (2 (d - 2 sqrt(d - 1)))`, the bound obtained from the trace
    /// identity `sum(lambda) = (n + 1) d`.
    pub theta_upper_trace: Option<f64>,
    pub theta_trace_holds: bool,
    /// `(d - 2 sqrt(d - 1)) / (2 (n + 1) (d + 2 sqrt(d - 1)))`.
    pub gamma_lower: f64,
    pub gamma_holds: bool,
    pub gamma_margin: f64,
    /// Geometric mean of the nonzero eigenvalues and whether it lies in
    /// `[d - 2 sqrt(d - 1), d + 2 sqrt(d - 1)]`.
    pub geometric_mean: f64,
    pub geometric_mean_in_interval: bool,
}

/// Evaluates the density bounds for a regular Ramanujan graph. Failures
/// are reported through the `*_holds` flags rather than as errors.
pub fn ramanujan_bounds(g: &Multigraph) -> Result<RamanujanBounds> {
    let evidence = is_ramanujan(g)?;
    if evidence.verdict != RamanujanVerdict::Ramanujan {
        return Ok(RamanujanBounds {
            evidence,
            claimed: None,
        });
    }
    let dens = densities(g)?;
    let d = evidence.degree.expect("regular") as f64;
    let len = g.vertex_count() as f64;
    let s = 2.0 * (d - 1.0).sqrt();
    let gap = d - s;
    let upper = |num: f64| (gap > RAMANUJAN_TOLERANCE).then(|| num / gap);
    let theta_upper = upper(d / 4.0);
    let theta_upper_trace = upper(d / 2.0);
    let tol = RAMANUJAN_TOLERANCE;
    let holds = |b: Option<f64>| b.is_none_or(|b| dens.theta <= b + tol);
    let gamma_lower = gap / (2.0 * len * (d + s));
    let (lo, hi) = (gap, d + s);
    Ok(RamanujanBounds {
        claimed: Some(ClaimedBounds {
            degree: d as u64,
            theta: dens.theta,
            gamma: dens.gamma,
            theta_upper,
            theta_holds: holds(theta_upper),
            theta_margin: theta_upper.map(|b| b - dens.theta),
            theta_upper_trace,
            theta_trace_holds: holds(theta_upper_trace),
            gamma_lower,
            gamma_holds: dens.gamma >= gamma_lower - tol,
            gamma_margin: dens.gamma - gamma_lower,
            geometric_mean: dens.geometric_mean,
            geometric_mean_in_interval: dens.geometric_mean >= lo - tol
                && dens.geometric_mean <= hi + tol,
        }),
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub vertices: usize,
    pub edges: u64,
    pub nu: Rational,
    pub shortest_witness: LatticePoint,
    pub shortest_side: Vec<usize>,
    pub mc1: u64,
    pub mc_inf: u64,
    pub pac: Rational,
    pub pac_witness: Cut,
    pub cov: Rational,
    pub genus: u64,
    pub trees: BigUint,
    pub gamma: f64,
    pub theta: f64,
    pub ramanujan: RamanujanEvidence,
}

pub fn invariant_report(g: &Multigraph, limits: &Limits) -> Result<InvariantReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let l = LaplacianLattice::from_graph(g)?;
    let sv = shortest_vector(&l, limits)?;
    let (_, mc_inf) = min_cut_linf(g, limits)?;
    if sv.nu != int(mc_inf as i64) {
        return Err(Error::Internal(format!(
            "shortest vector {} differs from MC_inf {mc_inf}",
            sv.nu
        )));
    }
    let (pac, pac_witness) = packing_radius(g)?;
    let cov = covering_radius(g)?;
    let dens = densities(g)?;
    Ok(InvariantReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        nu: sv.nu,
        shortest_witness: sv.witness,
        shortest_side: sv.side,
        mc1: pac_witness.l1_weight,
        mc_inf,
        pac,
        pac_witness,
        cov,
        genus: genus(g)?.0,
        trees: spanning_tree_count(&g.laplacian()),
        gamma: dens.gamma,
        theta: dens.theta,
        ramanujan: is_ramanujan(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g7() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2), (1, 2, 2)]).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5, 1));
            e.push((i, i + 5, 1));
            e.push((5 + i, 5 + (i + 2) % 5, 1));
        }
        let e: Vec<_> = e
            .into_iter()
            .map(|(a, b, m)| (a.min(b), a.max(b), m))
            .collect();
        Multigraph::from_edges(10, &e).unwrap()
    }

    fn lattice(g: &Multigraph) -> LaplacianLattice {
        LaplacianLattice::from_graph(g).unwrap()
    }

    #[test]
    fn shortest_vectors() {
        let lim = Limits::default();
        let sv = shortest_vector(&lattice(&Multigraph::complete(4).unwrap()), &lim).unwrap();
        assert_eq!(sv.nu, int(1));
        let sv = shortest_vector(&lattice(&g7()), &lim).unwrap();
        assert_eq!(sv.nu, int(2));
        assert_eq!(sv.witness.coords(), &[-2, -2, 4]);
        assert_eq!(sv.side, vec![2]);
        let sv = shortest_vector(&lattice(&Multigraph::complete(3).unwrap()), &lim).unwrap();
        assert_eq!(sv.nu, int(1));
        assert_eq!(sv.witness.coords(), &[2, -1, -1]);
    }

    #[test]
    fn radii() {
        let k3 = Multigraph::complete(3).unwrap();
        let p3 = Multigraph::path(3).unwrap();
        assert_eq!(packing_radius(&k3).unwrap().0, rat(2, 3));
        assert_eq!(packing_radius(&g7()).unwrap().0, rat(4, 3));
        assert_eq!(packing_radius(&p3).unwrap().0, rat(1, 3));
        assert_eq!(covering_radius(&k3).unwrap(), int(1));
        assert_eq!(covering_radius(&g7()).unwrap(), rat(7, 3));
        assert_eq!(covering_radius(&p3).unwrap(), rat(2, 3));
    }

    #[test]
    fn packing_is_not_half_the_shortest_vector() {
        let k3 = Multigraph::complete(3).unwrap();
        let nu = shortest_vector(&lattice(&k3), &Limits::default())
            .unwrap()
            .nu;
        assert_ne!(packing_radius(&k3).unwrap().0, nu / int(2));
    }

    #[test]
    fn density_examples() {
        let d = densities(&Multigraph::complete(3).unwrap()).unwrap();
        assert!((d.theta - 1.0 / 3.0).abs() < 1e-12);
        assert!((d.gamma - 2.0 / 9.0).abs() < 1e-12);
        let d = densities(&Multigraph::path(3).unwrap()).unwrap();
        assert!((d.theta - 2.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        for k in 3..=7 {
            let d = densities(&Multigraph::complete(k).unwrap()).unwrap();
            assert!((d.theta - theta_lower_bound(k)).abs() < 1e-9);
        }
    }

    #[test]
    fn ramanujan_verdicts() {
        let e = is_ramanujan(&Multigraph::complete(4).unwrap()).unwrap();
        assert_eq!(e.verdict, RamanujanVerdict::Ramanujan);
        assert!((e.lambda_a.unwrap() - 1.0).abs() < 1e-9);
        let e = is_ramanujan(&Multigraph::cycle(6).unwrap()).unwrap();
        assert_eq!(e.verdict, RamanujanVerdict::Ramanujan);
        assert!((e.lambda_a.unwrap() - 2.0).abs() < 1e-9);
        let e = is_ramanujan(&Multigraph::path(3).unwrap()).unwrap();
        assert_eq!(e.verdict, RamanujanVerdict::NotApplicable);
        assert_eq!(e.degrees, vec![1, 2, 1]);
        let e = is_ramanujan(&petersen()).unwrap();
        assert_eq!(e.verdict, RamanujanVerdict::Ramanujan);
        assert!((e.lambda_a.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn ramanujan_bounds_on_small_graphs() {
        for g in [
            Multigraph::complete(4).unwrap(),
            petersen(),
            Multigraph::cycle(6).unwrap(),
        ] {
            let b = ramanujan_bounds(&g).unwrap().claimed.unwrap();
            assert!(
                b.theta_holds && b.gamma_holds && b.geometric_mean_in_interval,
                "{b:?}"
            );
        }
        let k4 = ramanujan_bounds(&Multigraph::complete(4).unwrap())
            .unwrap()
            .claimed
            .unwrap();
        assert!((k4.theta - 0.375).abs() < 1e-12);
        assert!((k4.theta_upper.unwrap() - 3.0 / (4.0 * (3.0 - 2.0 * 2f64.sqrt()))).abs() < 1e-9);
        let c6 = ramanujan_bounds(&Multigraph::cycle(6).unwrap())
            .unwrap()
            .claimed
            .unwrap();
        assert_eq!(c6.theta_upper, None);
        let p3 = ramanujan_bounds(&Multigraph::path(3).unwrap()).unwrap();
        assert!(p3.claimed.is_none());
    }

    #[test]
    fn stated_theta_bound_fails_for_k20() {
        // theta(K20) = 19/40 exceeds d / (4 (d - 2 sqrt(d - 1))) at d = 19;
        // the trace-based bound with denominator 2 still holds.
        let b = ramanujan_bounds(&Multigraph::complete(20).unwrap())
            .unwrap()
            .claimed
            .unwrap();
        assert!((b.theta - 19.0 / 40.0).abs() < 1e-9);
        assert!(!b.theta_holds);
        assert!(b.theta_trace_holds);
    }

    #[test]
    fn report_for_g7() {
        let r = invariant_report(&g7(), &Limits::default()).unwrap();
        assert_eq!(r.nu, int(2));
        assert_eq!(r.pac, rat(4, 3));
        assert_eq!(r.cov, rat(7, 3));
        assert_eq!(r.trees, BigUint::from(16u32));
        assert!(r.pac <= r.cov);
        assert!(r.theta >= theta_lower_bound(3) - 1e-9);
    }
}
