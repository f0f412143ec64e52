//! JSON formats: graphs, point sets, configurations, and the reports the
//! CLI prints. Rationals are strings `"num/den"`, integers are numbers,
//! reals carry 12 significant digits.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::chipfire::{Configuration, Effectiveness};
use crate::delaunay::{DelaunayPolytope, FVectorCheck};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, round_significant, Rational};
use crate::graph::{Cut, Multigraph};
use crate::invariants::{InvariantReport, RamanujanBounds, RamanujanEvidence};
use crate::lattice::{LatticePoint, RationalPoint};
use crate::oracles::{CriticalReport, LimitReport};
use crate::reconstruct::Census;

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize, u32)>,
}

/// Parses `{"vertices": n, "edges": [[i, j, mult], ...]}` with `i < j` and
/// `mult >= 1`.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(json_err)?;
    for &(i, j, m) in &raw.edges {
        if i >= j {
            return Err(Error::InvalidGraph(format!(
                "edge [{i}, {j}] must have i < j"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidGraph(format!(
                "edge [{i}, {j}] has multiplicity 0"
            )));
        }
    }
    Multigraph::from_edges(raw.vertices, &raw.edges)
}

pub fn graph_to_json(g: &Multigraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().iter().map(|&(i, j, m)| json!([i, j, m])).collect::<Vec<_>>(),
    })
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn real(x: f64) -> Value {
    let r = round_significant(x, 12);
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

pub fn big_uint(x: &BigUint) -> Value {
    x.to_u64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn big_int(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn lattice_point(p: &LatticePoint) -> Value {
    Value::from(p.coords().to_vec())
}

pub fn rational_point(p: &RationalPoint) -> Value {
    Value::Array(p.coords().iter().map(rational).collect())
}

fn parse_integer(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::Json(format!("{n} is not a 64-bit integer"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("{s:?} is not an integer"))),
        other => Err(Error::Json(format!("expected an integer, found {other}"))),
    }
}

fn parse_int_array(v: &Value) -> Result<Vec<i64>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("expected an array of integers, found {v}")))?;
    items.iter().map(parse_integer).collect()
}

/// A point set: either an array of integer arrays, or an object with a
/// `"vertices"` array whose entries are integer arrays or objects with a
/// `"point"` field (the `delaunay` output).
pub fn parse_points(text: &str) -> Result<Vec<LatticePoint>> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("object without a \"vertices\" array".into()))?,
        _ => return Err(Error::Json("expected an array of points".into())),
    };
    list.iter()
        .map(|item| {
            let coords = match item {
                Value::Object(o) => o
                    .get("point")
                    .ok_or_else(|| Error::Json("vertex object without \"point\"".into()))?,
                other => other,
            };
            LatticePoint::new(parse_int_array(coords)?)
        })
        .collect()
}

pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    Ok(Configuration(parse_int_array(&v)?))
}

/// Array of rationals given as numbers or `"num/den"` strings.
pub fn parse_rational_point(text: &str) -> Result<RationalPoint> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    let items = v
        .as_array()
        .ok_or_else(|| Error::Json("expected an array of rationals".into()))?;
    let coords = items
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(_) => Ok(Rational::from_integer(parse_integer(x)?.into())),
            other => Err(Error::Json(format!("expected a rational, found {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    RationalPoint::new(coords)
}

pub fn cut(c: &Cut) -> Value {
    json!({
        "side": c.side,
        "l1_weight": c.l1_weight,
        "linf_weight": c.linf_weight,
    })
}

pub fn ramanujan_evidence(e: &RamanujanEvidence) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), e.verdict.as_str().into());
    m.insert("degrees".into(), Value::from(e.degrees.clone()));
    if let Some(d) = e.degree {
        m.insert("degree".into(), d.into());
    }
    if let Some(x) = e.lambda_a {
        m.insert("lambda_a".into(), real(x));
    }
    if let Some(x) = e.bound {
        m.insert("bound".into(), real(x));
    }
    if let Some((lo, hi)) = e.laplacian_interval {
        m.insert("laplacian_interval".into(), json!([real(lo), real(hi)]));
    }
    if let Some(b) = e.spectrum_in_interval {
        m.insert("spectrum_in_interval".into(), b.into());
    }
    Value::Object(m)
}

fn optional_real(x: Option<f64>) -> Value {
    x.map_or_else(|| Value::String("unbounded".into()), real)
}

pub fn ramanujan_bounds(b: &RamanujanBounds) -> Value {
    let claimed = match &b.claimed {
        None => json!({"status": "bounds not claimed"}),
        Some(c) => json!({
            "status": "claimed",
            "degree": c.degree,
            "theta": real(c.theta),
            "gamma": real(c.gamma),
            "theta_upper": optional_real(c.theta_upper),
            "theta_holds": c.theta_holds,
            "theta_margin": c.theta_margin.map_or(Value::Null, real),
            "theta_upper_trace": optional_real(c.theta_upper_trace),
            "theta_trace_holds": c.theta_trace_holds,
            "gamma_lower": real(c.gamma_lower),
            "gamma_holds": c.gamma_holds,
            "gamma_margin": real(c.gamma_margin),
            "geometric_mean": real(c.geometric_mean),
            "geometric_mean_in_interval": c.geometric_mean_in_interval,
        }),
    };
    json!({
        "ramanujan": ramanujan_evidence(&b.evidence),
        "bounds": claimed,
    })
}

pub fn invariant_report(r: &InvariantReport) -> Value {
    json!({
        "vertices": r.vertices,
        "edges": r.edges,
        "nu": rational(&r.nu),
        "shortest_witness": lattice_point(&r.shortest_witness),
        "shortest_side": r.shortest_side,
        "mc1": r.mc1,
        "mc_inf": r.mc_inf,
        "pac": rational(&r.pac),
        "pac_witness": cut(&r.pac_witness),
        "cov": rational(&r.cov),
        "genus": r.genus,
        "trees": big_uint(&r.trees),
        "gamma": real(r.gamma),
        "theta": real(r.theta),
        "ramanujan": ramanujan_evidence(&r.ramanujan),
    })
}

pub fn f_vector_check(c: &FVectorCheck) -> Value {
    json!({
        "dimension": c.dim,
        "f0": {"formula": c.f0_formula, "hull": c.f0_hull},
        "f1": {"formula": c.f1_formula, "hull": c.f1_hull},
        "facets": {"formula": c.facets_formula, "hull": c.facets_hull},
        "facet_sets_match": c.facet_sets_match,
        "edges_match": c.edges_match,
        "degrees_match": c.degrees_match,
        "all_match": c.all_match(),
    })
}

pub fn polytope(p: &DelaunayPolytope, check: Option<&FVectorCheck>) -> Value {
    let mut out = json!({
        "dimension": p.dim,
        "vertices": p.vertices.iter().map(|v| json!({
            "side": v.side,
            "point": lattice_point(&v.point),
        })).collect::<Vec<_>>(),
        "facets": p.facets.iter().map(|f| json!({
            "i": f.i,
            "j": f.j,
            "vertices": f.members,
        })).collect::<Vec<_>>(),
        "edges": p.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "f_vector": {
            "vertices": p.vertices.len(),
            "edges": p.edges.len(),
            "facets": p.facets.len(),
        },
    });
    if let Some(c) = check {
        out["hull_check"] = f_vector_check(c);
    }
    out
}

pub fn census(c: &Census) -> Value {
    json!({
        "vertices": c.vertex_count,
        "max_multiplicity": c.max_mult,
        "graphs": c.graph_count,
        "lattices": c.classes.len(),
        "classes": c.classes.iter().map(|k| json!({
            "hnf": k.hnf.iter().map(|r| r.iter().map(big_int).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "index": big_int(&k.index),
            "graph_count": k.graphs.len(),
            "distinct_polytopes": k.distinct_polytopes,
            "polytopes_pairwise_distinct": k.polytopes_pairwise_distinct(),
            "complete_skeleton": k.complete_skeleton,
            "graphs": k.graphs.iter().map(graph_to_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn effectiveness(e: &Effectiveness) -> Value {
    json!({
        "effective": e.effective,
        "degree": e.degree,
        "threshold": rational(&e.threshold),
        "distance": e.distance.as_ref().map_or(Value::Null, rational),
        "representative": e.representative.as_ref().map_or(Value::Null, |c| Value::from(c.0.clone())),
        "firing": e.firing.as_ref().map_or(Value::Null, |w| Value::from(w.clone())),
    })
}

pub fn critical(r: &CriticalReport) -> Value {
    json!({
        "cov": rational(&r.cov),
        "all_match": r.all_match(),
        "points": r.points.iter().map(|p| json!({
            "order": p.order,
            "indegree": p.indegree,
            "point": rational_point(&p.point),
            "h": rational(&p.h),
            "matches_cov": p.matches_cov,
        })).collect::<Vec<_>>(),
    })
}

pub fn limit(r: &LimitReport, vertex_count: usize) -> Value {
    json!({
        "nu": rational(&r.nu),
        "pac": rational(&r.pac),
        "nonincreasing": r.nonincreasing(),
        "final_within_bound": r.final_within(vertex_count),
        "rows": r.rows.iter().map(|row| json!({
            "eps": rational(&row.eps),
            "scale": row.scale,
            "nu": rational(&row.nu),
            "pac": rational(&row.pac),
            "nu_gap": rational(&row.nu_gap),
            "pac_gap": rational(&row.pac_gap),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn graph_roundtrip() {
        let text = r#"{"vertices": 3, "edges": [[0, 1, 3], [0, 2, 2], [1, 2, 2]]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(parse_graph(&graph_to_json(&g).to_string()).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        let kind = |t: &str| parse_graph(t).unwrap_err().kind();
        assert_eq!(kind("{"), "invalid_json");
        assert_eq!(
            kind(r#"{"vertices": 3, "edges": [[1, 0, 1]]}"#),
            "invalid_graph"
        );
        assert_eq!(
            kind(r#"{"vertices": 3, "edges": [[0, 1, 0]]}"#),
            "invalid_graph"
        );
        assert_eq!(
            kind(r#"{"vertices": 3, "edges": [[0, 1, 1], [0, 1, 2]]}"#),
            "invalid_graph"
        );
        assert_eq!(
            kind(r#"{"vertices": 3, "edges": [[0, 5, 1]]}"#),
            "invalid_graph"
        );
        assert_eq!(
            kind(r#"{"vertices": 3, "edges": [], "x": 1}"#),
            "invalid_json"
        );
    }

    #[test]
    fn number_formats() {
        assert_eq!(rational(&rat(8, 6)), json!("4/3"));
        assert_eq!(rational(&rat(2, 1)), json!("2"));
        assert_eq!(real(1.0 / 3.0), json!(0.333333333333));
        assert_eq!(big_uint(&BigUint::from(16u32)), json!(16));
    }

    #[test]
    fn point_sets() {
        let a = parse_points("[[1, -1, 0], [-1, 1, 0]]").unwrap();
        let b = parse_points(
            r#"{"vertices": [{"side": [0], "point": [1, -1, 0]}, {"point": ["-1", "1", "0"]}]}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(parse_points("[[1, 1, 0]]").is_err());
        let p = parse_rational_point(r#"["5/3", "-4/3", "-1/3"]"#).unwrap();
        assert_eq!(p.coords()[0], rat(5, 3));
        assert_eq!(
            parse_configuration("[2, -1, 0]").unwrap(),
            Configuration(vec![2, -1, 0])
        );
    }
}
