//! SVG picture of a two-dimensional Laplacian lattice: lattice points,
//! Delaunay triangles, and grid-sampled Voronoi cell boundaries.

use std::fmt::Write as _;

use crate::delaunay::{polytope, simplex_classes};
use crate::error::{Error, Result};
use crate::exact::to_f64;
use crate::graph::Multigraph;
use crate::lattice::{LaplacianLattice, LatticePoint, Orientation, RationalPoint};
use crate::oracles::grid_points;
use crate::{guard, Limits};

const SIZE: f64 = 640.0;
const PALETTE: [&str; 2] = ["#9ecae1", "#fdae6b"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleClass {
    /// Vertex order with `sigma(0) = n`.
    pub sigma: Vec<usize>,
    /// Vertices of the representative simplex at the origin, sorted.
    pub vertices: Vec<LatticePoint>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub classes: Vec<TriangleClass>,
    /// Lattice points drawn, sorted.
    pub lattice_points: Vec<LatticePoint>,
    /// Grid points with two or more nearest lattice points.
    pub boundary: Vec<RationalPoint>,
    half_width: f64,
}

/// Isometric coordinates of a point of `H_0` in the plane.
fn embed(p: &[f64]) -> (f64, f64) {
    let s2 = std::f64::consts::SQRT_2;
    let s6 = 6f64.sqrt();
    ((p[0] - p[1]) / s2, (p[0] + p[1] - 2.0 * p[2]) / s6)
}

fn embed_int(p: &LatticePoint) -> (f64, f64) {
    embed(&p.coords().iter().map(|&x| x as f64).collect::<Vec<_>>())
}

fn embed_rat(p: &RationalPoint) -> (f64, f64) {
    embed(&p.coords().iter().map(to_f64).collect::<Vec<_>>())
}

/// Builds the scene for a graph on three vertices.
pub fn scene(g: &Multigraph, resolution: usize, limits: &Limits) -> Result<Scene> {
    if g.vertex_count() != 3 {
        return Err(Error::InvalidArgument(
            "pictures are only drawn for graphs on 3 vertices".into(),
        ));
    }
    guard("grid resolution", resolution, limits.grid_resolution)?;
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let l = LaplacianLattice::from_graph(g)?;
    let poly = polytope(&l, limits)?;
    let radius = poly
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = embed_int(&v.point);
            x.hypot(y)
        })
        .fold(0.0, f64::max);
    let half_width = 1.75 * radius;
    let inside = |(x, y): (f64, f64)| x.abs() <= half_width && y.abs() <= half_width;

    let reach = 4i64;
    let mut lattice_points = Vec::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let q = l.combine(&[a, b, 0]);
            if inside(embed_int(&q)) {
                lattice_points.push(q);
            }
        }
    }
    lattice_points.sort();
    lattice_points.dedup();

    let mut ties = Vec::new();
    for p in grid_points(&l, resolution) {
        if l.h_distance(&p, Orientation::Tri)?.argmins.len() > 1 {
            ties.push(p);
        }
    }
    let mut boundary = Vec::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let t = l.combine(&[a, b, 0]).to_rational();
            for p in &ties {
                let moved = p.add(&t);
                if inside(embed_rat(&moved)) {
                    boundary.push(moved);
                }
            }
        }
    }
    boundary.sort();
    boundary.dedup();

    let classes = simplex_classes(&l)
        .into_iter()
        .map(|(sigma, vertices)| TriangleClass { sigma, vertices })
        .collect();
    Ok(Scene {
        classes,
        lattice_points,
        boundary,
        half_width,
    })
}

fn point_list(points: &[LatticePoint]) -> String {
    points
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Deterministic SVG text for a scene.
pub fn render(scene: &Scene) -> String {
    let scale = SIZE / (2.0 * scene.half_width);
    let map = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );
    for (k, class) in scene.classes.iter().enumerate() {
        let sigma: Vec<String> = class.sigma.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            r##"<g class="delaunay-class" data-sigma="{}" data-vertices="{}" fill="{}" fill-opacity="0.45" stroke="#3b3b3b" stroke-width="0.8">"##,
            sigma.join(","),
            point_list(&class.vertices),
            PALETTE[k % PALETTE.len()]
        );
        for t in &scene.lattice_points {
            let pts: Vec<String> = class
                .vertices
                .iter()
                .map(|v| {
                    let (x, y) = map(embed_int(&v.add(t)));
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r##"<g class="voronoi-boundary" fill="#c0392b">"##);
    for p in &scene.boundary {
        let (x, y) = map(embed_rat(p));
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="0.9"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="lattice-points" fill="black">"#);
    for q in &scene.lattice_points {
        let (x, y) = map(embed_int(q));
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" data-point="{q}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g7() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 3), (0, 2, 2), (1, 2, 2)]).unwrap()
    }

    #[test]
    fn g7_scene_lists_both_classes() {
        let s = scene(&g7(), 12, &Limits::default()).unwrap();
        let svg = render(&s);
        assert!(svg.contains(r#"data-vertices="(-5,3,2) (-2,-2,4) (0,0,0)""#));
        assert!(svg.contains(r#"data-vertices="(-2,-2,4) (0,0,0) (3,-5,2)""#));
        assert!(s.lattice_points.contains(&LatticePoint::origin(3)));
        assert!(!s.boundary.is_empty());
        assert_eq!(svg, render(&scene(&g7(), 12, &Limits::default()).unwrap()));
    }

    #[test]
    fn only_three_vertices() {
        assert!(scene(&Multigraph::path(4).unwrap(), 8, &Limits::default()).is_err());
    }

    #[test]
    fn embedding_is_isometric_on_h0() {
        let (x, y) = embed(&[1.0, -1.0, 0.0]);
        assert!((x.hypot(y) - 2f64.sqrt()).abs() < 1e-12);
        let (x, y) = embed(&[1.0, 1.0, -2.0]);
        assert!((x.hypot(y) - 6f64.sqrt()).abs() < 1e-12);
    }
}
