//! Chip-firing on top of the lattice: firing moves, equivalence of
//! configurations, and the geometric effectiveness test.

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::graph::Multigraph;
use crate::lattice::{project_h0, LaplacianLattice, LatticePoint, Orientation};

/// Integer chip counts per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(pub Vec<i64>);

impl Configuration {
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    fn diff(&self, other: &Configuration) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Send one chip along every edge at the vertex.
    Lend,
    /// Receive one chip along every edge at the vertex.
    Borrow,
}

fn check(g: &Multigraph, c: &Configuration) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    check_len(g, c)
}

fn check_len(g: &Multigraph, c: &Configuration) -> Result<()> {
    if c.0.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: c.0.len(),
        });
    }
    Ok(())
}

/// Lending subtracts row `v` of the Laplacian, borrowing adds it.
pub fn fire(g: &Multigraph, c: &Configuration, v: usize, dir: Direction) -> Result<Configuration> {
    check_len(g, c)?;
    if v >= g.vertex_count() {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
    }
    let q = g.laplacian();
    let sign = match dir {
        Direction::Lend => -1,
        Direction::Borrow => 1,
    };
    Ok(Configuration(
        c.0.iter()
            .zip(q.row(v))
            .map(|(a, b)| a + sign * b)
            .collect(),
    ))
}

/// Net firing vector `w` (gauge `w_n = 0`) with `c1 - c2 = Q w`, or `None`
/// when the configurations are not equivalent.
pub fn equivalent(
    g: &Multigraph,
    c1: &Configuration,
    c2: &Configuration,
) -> Result<Option<Vec<i64>>> {
    check(g, c1)?;
    check(g, c2)?;
    if c1.degree() != c2.degree() {
        return Ok(None);
    }
    let l = LaplacianLattice::from_graph(g)?;
    l.contains(&LatticePoint::new(c1.diff(c2))?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effectiveness {
    pub effective: bool,
    pub degree: i64,
    /// An effective configuration equivalent to the input.
    pub representative: Option<Configuration>,
    /// `w` with `c - Q w = representative`.
    pub firing: Option<Vec<i64>>,
    /// `h_tribar(pi_0(c))`, when it was needed.
    pub distance: Option<Rational>,
    /// `k / (n + 1)`.
    pub threshold: Rational,
}

/// Whether `c` is equivalent to an effective configuration.
///
/// With `k = deg(c)` and `p = pi_0(c)`, an effective `e = c - q` exists
/// for `q` in the lattice iff `q <= c` coordinatewise, and since
/// `p_i = c_i - k/(n+1)` that is `d_tribar(p, q) = max_i (q_i - p_i) <= k/(n+1)`.
/// So the test is `h_tribar(p) <= k/(n+1)`, closed at equality. For K3 and
/// `c = (2,-1,0)`: `p = (5/3,-4/3,-1/3)`, `h = 1/3` at `q = (2,-1,-1)`,
/// giving `e = (0,0,1)`.
pub fn effective_equivalent(g: &Multigraph, c: &Configuration) -> Result<Effectiveness> {
    check(g, c)?;
    let k = c.degree();
    let len = g.vertex_count() as i64;
    let threshold = rat(k, len);
    let mut out = Effectiveness {
        effective: false,
        degree: k,
        representative: None,
        firing: None,
        distance: None,
        threshold,
    };
    if k < 0 {
        return Ok(out);
    }
    if c.is_effective() {
        out.effective = true;
        out.representative = Some(c.clone());
        out.firing = Some(vec![0; g.vertex_count()]);
        return Ok(out);
    }
    let l = LaplacianLattice::from_graph(g)?;
    let p = project_h0(&c.0.iter().map(|&x| int(x)).collect::<Vec<_>>());
    let h = l.h_distance(&p, Orientation::TriBar)?;
    out.distance = Some(h.value.clone());
    if h.value > out.threshold {
        return Ok(out);
    }
    let q = h.argmins.first().expect("h has a minimizer");
    let e = Configuration(c.diff(&Configuration(q.coords().to_vec())));
    if !e.is_effective() {
        return Err(Error::Internal(format!(
            "representative {:?} has a negative entry",
            e.0
        )));
    }
    let w = l
        .contains(q)?
        .ok_or_else(|| Error::Internal("minimizer is not a lattice point".into()))?;
    out.effective = true;
    out.representative = Some(e);
    out.firing = Some(w);
    Ok(out)
}

/// Brute force: some `w` with `|w|_inf <= bound` and `c - Q w >= 0`.
pub fn effective_by_search(
    g: &Multigraph,
    c: &Configuration,
    bound: i64,
) -> Result<Option<Vec<i64>>> {
    check(g, c)?;
    let q = g.laplacian();
    let len = g.vertex_count();
    let mut w = vec![-bound; len];
    loop {
        let ok = (0..len).all(|i| {
            let qw: i64 = (0..len).map(|j| q.entry(i, j) * w[j]).sum();
            c.0[i] - qw >= 0
        });
        if ok {
            return Ok(Some(w));
        }
        let mut k = len;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if w[k] < bound {
                w[k] += 1;
                break;
            }
            w[k] = -bound;
        }
    }
}
