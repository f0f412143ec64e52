//! Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use laplat::chipfire::{effective_by_search, effective_equivalent, Configuration};
use laplat::delaunay::{hull_f_vector_check, polytope, vertex_facet_degree};
use laplat::exact::{int, rat};
use laplat::graph::{genus, min_cut_l1, min_cut_linf, permutations};
use laplat::invariants::{densities, ramanujan_bounds, theta_lower_bound};
use laplat::oracles::{
    brute_force_shortest_vector, critical_points, dyadic_sequence, limit_check, max_h_on_grid,
    max_overlap_on_grid, midpoint_packing_radius,
};
use laplat::reconstruct::{
    census, enumerate_connected, graphs_isomorphic, polytopes_congruent, reconstruct_laplacian,
};
use laplat::svg;
use laplat::{LaplacianLattice, LaplacianMatrix, LatticePoint, Limits, Multigraph};

type Criterion = (&'static str, fn() -> Outcome);

const GRID_RESOLUTION: usize = 48;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// First failing case, for the detail line.
fn first<T: std::fmt::Debug>(items: &[T]) -> String {
    items
        .first()
        .map_or(String::new(), |x| format!(" (first: {x:?})"))
}

fn family() -> Vec<Multigraph> {
    (2..=4)
        .flat_map(|n| enumerate_connected(n, 3, &Limits::default()).unwrap())
        .collect()
}

fn three_vertex_family() -> Vec<Multigraph> {
    enumerate_connected(3, 3, &Limits::default()).unwrap()
}

fn random_connected(rng: &mut ChaCha8Rng, vertices: usize, max_mult: u32) -> Multigraph {
    loop {
        let mut edges = Vec::new();
        for i in 0..vertices {
            for j in i + 1..vertices {
                let m = rng.gen_range(0..=max_mult);
                if m > 0 {
                    edges.push((i, j, m));
                }
            }
        }
        let g = Multigraph::from_edges(vertices, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn k3() -> Multigraph {
    Multigraph::complete(3).unwrap()
}

fn p3() -> Multigraph {
    Multigraph::path(3).unwrap()
}

fn g7() -> Multigraph {
    Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2), (1, 2, 2)]).unwrap()
}

fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1));
        edges.push((i, i + 5, 1));
        edges.push((5 + i, 5 + (i + 2) % 5, 1));
    }
    let edges: Vec<_> = edges
        .into_iter()
        .map(|(a, b, m)| (a.min(b), a.max(b), m))
        .collect();
    Multigraph::from_edges(10, &edges).unwrap()
}

fn lattice(g: &Multigraph) -> LaplacianLattice {
    LaplacianLattice::from_graph(g).unwrap()
}

/// Brute-force isomorphism: some permutation conjugates one Laplacian
/// into the other.
fn isomorphic_by_search(q1: &LaplacianMatrix, q2: &LaplacianMatrix) -> bool {
    q1.size() == q2.size()
        && permutations(q1.size())
            .iter()
            .any(|p| &q1.conjugate(p).unwrap() == q2)
}

fn gram(points: &[LatticePoint]) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|a| {
            points
                .iter()
                .map(|b| a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

/// Euclidean congruence of two point sets symmetric about the origin: a
/// bijection preserving all inner products, found by backtracking.
fn congruent_by_gram(a: &[LatticePoint], b: &[LatticePoint]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ga, gb) = (gram(a), gram(b));
    let signature = |g: &Vec<Vec<i64>>, i: usize| {
        let mut row = g[i].clone();
        row.sort_unstable();
        (g[i][i], row)
    };
    let sa: Vec<_> = (0..a.len()).map(|i| signature(&ga, i)).collect();
    let sb: Vec<_> = (0..b.len()).map(|i| signature(&gb, i)).collect();
    fn extend(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ga: &[Vec<i64>],
        gb: &[Vec<i64>],
        sa: &[(i64, Vec<i64>)],
        sb: &[(i64, Vec<i64>)],
    ) -> bool {
        if i == ga.len() {
            return true;
        }
        for j in 0..gb.len() {
            if used[j] || sa[i] != sb[j] || (0..i).any(|k| ga[i][k] != gb[j][map[k]]) {
                continue;
            }
            used[j] = true;
            map.push(j);
            if extend(i + 1, map, used, ga, gb, sa, sb) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    extend(
        0,
        &mut Vec::new(),
        &mut vec![false; b.len()],
        &ga,
        &gb,
        &sa,
        &sb,
    )
}

fn shortest_vector_theorem() -> Outcome {
    let graphs = family();
    let mut bad = Vec::new();
    for g in &graphs {
        let (nu, _) = brute_force_shortest_vector(&lattice(g)).unwrap();
        let (_, mc_inf) = min_cut_linf(g, &Limits::default()).unwrap();
        if nu != int(mc_inf as i64) {
            bad.push(g.edges());
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} graphs, {} mismatches{}",
            graphs.len(),
            bad.len(),
            first(&bad)
        ),
    )
}

fn packing_radius_theorem() -> Outcome {
    let graphs = family();
    let mut bad = 0;
    for g in &graphs {
        let n1 = g.vertex_count() as i64;
        let mc1 = min_cut_l1(g).unwrap().1 as i64;
        if midpoint_packing_radius(&lattice(g)).unwrap() != rat(mc1, n1) {
            bad += 1;
        }
    }
    let mut overlaps = 0;
    let small = three_vertex_family();
    for g in &small {
        let pac = rat(min_cut_l1(g).unwrap().1 as i64, 3);
        let o =
            max_overlap_on_grid(&lattice(g), GRID_RESOLUTION, &pac, &Limits::default()).unwrap();
        if o.max_count > 1 {
            overlaps += 1;
        }
    }
    outcome(
        bad == 0 && overlaps == 0,
        format!(
            "{} graphs, {bad} radius mismatches; {} graphs on the {GRID_RESOLUTION}-grid, {overlaps} with overlapping balls",
            graphs.len(),
            small.len()
        ),
    )
}

fn covering_radius_theorem() -> Outcome {
    let limits = Limits::default();
    let graphs = family();
    let mut bad = 0;
    for g in &graphs {
        let report = critical_points(g, &limits).unwrap();
        let n = g.vertex_count() as i64 - 1;
        let expected = rat(genus(g).unwrap().0 as i64 + n, n + 1);
        if report.cov != expected || !report.all_match() {
            bad += 1;
        }
    }
    let mut exceed = 0;
    let small = three_vertex_family();
    for g in &small {
        let cov = rat(genus(g).unwrap().0 as i64 + 2, 3);
        if max_h_on_grid(&lattice(g), GRID_RESOLUTION, &limits)
            .unwrap()
            .value
            > cov
        {
            exceed += 1;
        }
    }
    outcome(
        bad == 0 && exceed == 0,
        format!(
            "{} graphs, {bad} with a critical value off (g+n)/(n+1); {} graphs on the {GRID_RESOLUTION}-grid, {exceed} exceeding it",
            graphs.len(),
            small.len()
        ),
    )
}

fn delaunay_combinatorics() -> Outcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=3usize {
        for _ in 0..50 {
            let g = random_connected(&mut rng, n + 1, 3);
            let p = polytope(&lattice(&g), &limits).unwrap();
            let check = hull_f_vector_check(&p, &limits).unwrap();
            let degrees_ok = p.vertices.iter().all(|v| {
                let k = v.side.len();
                vertex_facet_degree(&p, &v.point).unwrap() == k * (n + 1 - k)
            });
            if check.f0_hull != (1 << (n + 1)) - 2
                || check.facets_hull != n * (n + 1)
                || !check.all_match()
                || !degrees_ok
            {
                bad.push(g.edges());
            }
            checked += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} random graphs, {} mismatches{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn reconstruction() -> Outcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut roundtrip_bad = 0;
    for _ in 0..200 {
        let vertices = rng.gen_range(2..=5);
        let g = random_connected(&mut rng, vertices, 3);
        let p = polytope(&lattice(&g), &limits).unwrap();
        if reconstruct_laplacian(&p.points(), &limits).unwrap() != g.laplacian() {
            roundtrip_bad += 1;
        }
    }

    let points = |g: &Multigraph| polytope(&lattice(g), &limits).unwrap().points();
    let mut disagree = 0;
    let mut relabelled = 0;
    while relabelled < 50 {
        let vertices = rng.gen_range(3..=5);
        let g = random_connected(&mut rng, vertices, 3);
        let mut perm: Vec<usize> = (0..vertices).collect();
        for i in (1..vertices).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let h = g.relabel(&perm).unwrap();
        let (a, b) = (points(&g), points(&h));
        let truth = isomorphic_by_search(&g.laplacian(), &h.laplacian());
        let lib_iso = graphs_isomorphic(&g.laplacian(), &h.laplacian(), &limits)
            .unwrap()
            .is_some();
        let lib_cong = polytopes_congruent(&a, &b, &limits).unwrap().is_some();
        if !(truth && lib_iso && lib_cong && congruent_by_gram(&a, &b)) {
            disagree += 1;
        }
        relabelled += 1;
    }
    let mut distinct = 0;
    while distinct < 50 {
        let vertices = rng.gen_range(3..=5);
        let g = random_connected(&mut rng, vertices, 3);
        let h = random_connected(&mut rng, vertices, 3);
        if isomorphic_by_search(&g.laplacian(), &h.laplacian()) {
            continue;
        }
        let (a, b) = (points(&g), points(&h));
        let lib_iso = graphs_isomorphic(&g.laplacian(), &h.laplacian(), &limits)
            .unwrap()
            .is_some();
        let lib_cong = polytopes_congruent(&a, &b, &limits).unwrap().is_some();
        if lib_iso || lib_cong || congruent_by_gram(&a, &b) {
            disagree += 1;
        }
        distinct += 1;
    }
    outcome(
        roundtrip_bad == 0 && disagree == 0,
        format!(
            "200 roundtrips, {roundtrip_bad} failed; {relabelled} relabelled + {distinct} non-isomorphic pairs, {disagree} disagreements"
        ),
    )
}

fn census_counts() -> Outcome {
    let c = census(3, 3, &Limits::default()).unwrap();
    let root: Vec<_> = c.classes.iter().filter(|k| k.index == 1.into()).collect();
    let root_count = root.first().map_or(0, |k| k.graphs.len());
    let distinct = c.classes.iter().all(|k| k.polytopes_pairwise_distinct());
    let skeleton = c
        .classes
        .iter()
        .filter(|k| k.complete_skeleton)
        .all(|k| k.graphs.len() == 1);
    outcome(
        root.len() == 1 && root_count == 3 && distinct && skeleton,
        format!(
            "{} graphs in {} lattice classes; root lattice class size {root_count}; polytopes distinct {distinct}; complete-skeleton classes singletons {skeleton}",
            c.graph_count,
            c.classes.len()
        ),
    )
}

fn densities_check() -> Outcome {
    let mut worst = 0.0f64;
    for k in 3..=7 {
        let n = (k - 1) as f64;
        let theta = densities(&Multigraph::complete(k).unwrap()).unwrap().theta;
        worst = worst.max((theta - n / (2.0 * (n + 1.0))).abs());
    }
    let mut below = 0;
    for g in family() {
        if densities(&g).unwrap().theta < theta_lower_bound(g.vertex_count()) - 1e-9 {
            below += 1;
        }
    }
    let mut ramanujan = Vec::new();
    let c6 = Multigraph::cycle(6).unwrap();
    for (name, g) in [
        ("K4", Multigraph::complete(4).unwrap()),
        ("Petersen", petersen()),
        ("C6", c6),
    ] {
        let b = ramanujan_bounds(&g).unwrap();
        let holds = b.evidence.verdict.as_str() == "ramanujan"
            && b.claimed.as_ref().is_some_and(|c| {
                c.gamma_holds && c.theta_holds && (c.degree > 2 || c.theta_upper.is_none())
            });
        ramanujan.push((name, holds));
    }
    outcome(
        worst <= 1e-9 && below == 0 && ramanujan.iter().all(|r| r.1),
        format!("max |theta(K_k) - n/(2(n+1))| = {worst:.2e}; {below} graphs below the bound; Ramanujan bounds {ramanujan:?}"),
    )
}

fn chip_firing() -> Outcome {
    let mut disagree = Vec::new();
    let mut count = 0;
    for (name, g) in [("K3", k3()), ("P3", p3()), ("G7", g7())] {
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let conf = Configuration(vec![a, b, c]);
                    let fast = effective_equivalent(&g, &conf).unwrap().effective;
                    let slow = effective_by_search(&g, &conf, 3).unwrap().is_some();
                    if fast != slow {
                        disagree.push((name, conf.0.clone(), fast));
                    }
                    count += 1;
                }
            }
        }
    }
    let worked = effective_equivalent(&k3(), &Configuration(vec![2, -1, 0])).unwrap();
    let worked_ok = worked.effective && worked.representative == Some(Configuration(vec![0, 0, 1]));
    outcome(
        disagree.is_empty() && worked_ok,
        format!(
            "{count} configurations, {} disagreements{}; K3 (2,-1,0) -> {:?}",
            disagree.len(),
            first(&disagree),
            worked.representative.map(|c| c.0)
        ),
    )
}

fn perturbation_limit() -> Outcome {
    let eps = dyadic_sequence(6);
    let mut failures = Vec::new();
    for (name, g) in [("K3", k3()), ("P3", p3()), ("G7", g7())] {
        let r = limit_check(&g, &eps, &Limits::default()).unwrap();
        if !r.nonincreasing() || !r.final_within(g.vertex_count()) {
            failures.push(name);
        }
    }
    outcome(
        failures.is_empty(),
        format!("K3, P3, G7 at eps = 2^-1..2^-6; failing {failures:?}"),
    )
}

fn figure_reproduction() -> Outcome {
    let pt = |c: [i64; 3]| LatticePoint::new(c.to_vec()).unwrap();
    let base = [[5, -3, -2], [-3, 5, -2], [-2, -2, 4]];
    let expected: BTreeSet<LatticePoint> =
        base.iter().flat_map(|&c| [pt(c), pt(c).neg()]).collect();
    let got: BTreeSet<LatticePoint> = polytope(&lattice(&g7()), &Limits::default())
        .unwrap()
        .points()
        .into_iter()
        .collect();
    let scene = svg::scene(&g7(), 24, &Limits::default()).unwrap();
    let classes: BTreeSet<BTreeSet<LatticePoint>> = scene
        .classes
        .iter()
        .map(|c| c.vertices.iter().cloned().collect())
        .collect();
    let caption: BTreeSet<BTreeSet<LatticePoint>> = [
        [pt([0, 0, 0]), pt([-5, 3, 2]), pt([-2, -2, 4])],
        [pt([0, 0, 0]), pt([3, -5, 2]), pt([-2, -2, 4])],
    ]
    .into_iter()
    .map(|t| t.into_iter().collect())
    .collect();
    let rendered = svg::render(&scene);
    let in_svg = rendered.contains(r#"data-vertices="(-5,3,2) (-2,-2,4) (0,0,0)""#)
        && rendered.contains(r#"data-vertices="(-2,-2,4) (0,0,0) (3,-5,2)""#);
    outcome(
        got == expected && classes == caption && in_svg,
        format!(
            "polytope vertex set matches {}; triangle classes match {}; listed in SVG {in_svg}",
            got == expected,
            classes == caption
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("shortest vector equals MC_inf", shortest_vector_theorem),
        ("packing radius equals MC_1/(n+1)", packing_radius_theorem),
        (
            "covering radius equals (g+n)/(n+1)",
            covering_radius_theorem,
        ),
        ("Delaunay polytope combinatorics", delaunay_combinatorics),
        ("reconstruction and congruence", reconstruction),
        ("three-vertex lattice census", census_counts),
        ("covering density and Ramanujan bounds", densities_check),
        ("chip-firing effectiveness", chip_firing),
        ("perturbation limit", perturbation_limit),
        ("G7 picture reproduction", figure_reproduction),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {} {name}: {} [{secs:.1}s]",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
