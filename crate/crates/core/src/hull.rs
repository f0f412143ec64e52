//! Exact convex hull of a small full-dimensional point set by brute-force
//! facet enumeration. Meant for dimensions up to 3 and a few dozen points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::linalg::bareiss_det;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    /// Outward normal, primitive.
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Indices of the input points on the facet, sorted.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub dim: usize,
    pub facets: Vec<HullFacet>,
    /// Input indices that are vertices, sorted.
    pub vertices: Vec<usize>,
    /// Vertex index pairs `(a, b)`, `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Normal to the hyperplane through `pts` (`dim` points in `R^dim`), zero
/// when they are affinely dependent.
fn normal_through(pts: &[&Vec<BigInt>], dim: usize) -> Vec<BigInt> {
    let rows: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    (0..dim)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = bareiss_det(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Rank of an integer matrix.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let delta = &f * &a[r][k];
                    a[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Combinations of `k` out of `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Convex hull of integer points in `R^dim`. The points must affinely span
/// `R^dim`.
pub fn convex_hull(points: &[Vec<i64>]) -> Result<Hull> {
    let dim = points.first().map_or(0, Vec::len);
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidArgument(
            "hull needs points of one positive dimension".into(),
        ));
    }
    let pts: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut facets: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>> = BTreeMap::new();
    for combo in combinations(pts.len(), dim) {
        let chosen: Vec<&Vec<BigInt>> = combo.iter().map(|&i| &pts[i]).collect();
        let mut normal = normal_through(&chosen, dim);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let mut offset = dot(&normal, &pts[combo[0]]);
        let (mut above, mut below) = (false, false);
        for p in &pts {
            match dot(&normal, p).cmp(&offset) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        if above && below {
            continue;
        }
        if !above && !below {
            return Err(Error::InvalidArgument(
                "points are not full-dimensional".into(),
            ));
        }
        if above {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        let g = normal.iter().fold(offset.abs(), |g, x| g.gcd(x));
        let normal: Vec<BigInt> = normal.iter().map(|x| x / &g).collect();
        let offset = offset / &g;
        if !facets.contains_key(&(normal.clone(), offset.clone())) {
            let members = (0..pts.len())
                .filter(|&i| dot(&normal, &pts[i]) == offset)
                .collect();
            facets.insert((normal, offset), members);
        }
    }
    if facets.is_empty() {
        return Err(Error::InvalidArgument(
            "points are not full-dimensional".into(),
        ));
    }
    let facets: Vec<HullFacet> = facets
        .into_iter()
        .map(|((normal, offset), points)| HullFacet {
            normal,
            offset,
            points,
        })
        .collect();
    let normals_containing = |idx: &[usize]| -> Vec<Vec<BigInt>> {
        facets
            .iter()
            .filter(|f| idx.iter().all(|i| f.points.binary_search(i).is_ok()))
            .map(|f| f.normal.clone())
            .collect()
    };
    let vertices: Vec<usize> = (0..pts.len())
        .filter(|&i| rank(&normals_containing(&[i])) == dim)
        .collect();
    let mut edges = Vec::new();
    for (a_pos, &a) in vertices.iter().enumerate() {
        for &b in &vertices[a_pos + 1..] {
            if pts[a] == pts[b] {
                continue;
            }
            let normals = normals_containing(&[a, b]);
            if !normals.is_empty() && rank(&normals) + 1 == dim {
                edges.push((a, b));
            }
        }
    }
    Ok(Hull {
        dim,
        facets,
        vertices,
        edges,
    })
}
