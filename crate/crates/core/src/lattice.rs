//! Points of the hyperplane `H_0`, the simplicial distance in both
//! orientations, and the Laplacian lattice with exact membership and the
//! distance-to-lattice function `h`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{common_scale, div_ceil, from_scaled, int, Rational};
use crate::graph::{spanning_tree_count, LaplacianMatrix, Multigraph};
use crate::linalg::{adjugate, hermite_normal_form, to_big};

/// Which regular simplex induces the distance: `Tri` is the simplex with
/// vertices `t_i` (`n` at position `i`, `-1` elsewhere), `TriBar` its
/// negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Tri,
    TriBar,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Tri => Orientation::TriBar,
            Orientation::TriBar => Orientation::Tri,
        }
    }
}

/// Integer point with coordinate sum zero, i.e. a point of `A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.iter().map(|&c| i128::from(c)).sum::<i128>() != 0 {
            return Err(Error::NotInH0);
        }
        Ok(LatticePoint(coords))
    }

    pub fn origin(len: usize) -> Self {
        LatticePoint(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(self.0.iter().map(|&c| int(c)).collect())
    }

    pub fn neg(&self) -> Self {
        LatticePoint(self.0.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Rational point with coordinate sum zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if !coords.iter().fold(Rational::zero(), |s, c| s + c).is_zero() {
            return Err(Error::NotInH0);
        }
        Ok(RationalPoint(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        RationalPoint::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(len: usize) -> Self {
        RationalPoint(vec![Rational::zero(); len])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Self {
        RationalPoint(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &RationalPoint) -> Self {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalPoint) -> Self {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RationalPoint(self.0.iter().map(|c| c * s).collect())
    }

    /// The lattice point with the same coordinates, if all are integers.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(LatticePoint)
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `d_tri(p, q) = |min_i (q_i - p_i)|`, and `d_tribar(p, q) = |min_i (p_i - q_i)|`.
pub fn simplicial_distance(
    p: &RationalPoint,
    q: &RationalPoint,
    o: Orientation,
) -> Result<Rational> {
    check_len(p.len(), q.len())?;
    let diffs = p.0.iter().zip(&q.0).map(|(a, b)| match o {
        Orientation::Tri => b - a,
        Orientation::TriBar => a - b,
    });
    Ok(diffs.min().map(|m| m.abs()).unwrap_or_else(Rational::zero))
}

/// Integer form of [`simplicial_distance`].
pub fn lattice_distance(p: &[i64], q: &[i64], o: Orientation) -> i64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| match o {
            Orientation::Tri => b - a,
            Orientation::TriBar => a - b,
        })
        .min()
        .map(i64::abs)
        .unwrap_or(0)
}

/// Coordinatewise maximum.
pub fn max_sum(p: &[Rational], q: &[Rational]) -> Result<Vec<Rational>> {
    check_len(p.len(), q.len())?;
    Ok(p.iter().zip(q).map(|(a, b)| a.max(b).clone()).collect())
}

/// Orthogonal projection onto `H_0`: subtract the coordinate mean.
pub fn project_h0(v: &[Rational]) -> RationalPoint {
    if v.is_empty() {
        return RationalPoint(Vec::new());
    }
    let mean = v.iter().fold(Rational::zero(), |s, c| s + c) / int(v.len() as i64);
    RationalPoint(v.iter().map(|c| c - &mean).collect())
}

/// Midpoint of `p` and the origin under `d_tri`: `m = pi_0(p (+) O)` with
/// `d_tri(O, m) = d_tri(p, m) = r = |p (+) O|_1 / (n + 1)`.
pub fn triangle_midpoint(p: &RationalPoint) -> Result<(RationalPoint, Rational)> {
    let origin = RationalPoint::origin(p.len());
    let top = max_sum(p.coords(), origin.coords())?;
    let r = top.iter().fold(Rational::zero(), |s, c| s + c) / int(p.len() as i64);
    let m = project_h0(&top);
    let d0 = simplicial_distance(&origin, &m, Orientation::Tri)?;
    let d1 = simplicial_distance(p, &m, Orientation::Tri)?;
    if d0 != r || d1 != r {
        return Err(Error::Internal(format!(
            "midpoint distances {d0} and {d1} differ from radius {r}"
        )));
    }
    Ok((m, r))
}

/// Result of [`LaplacianLattice::h_distance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDistance {
    pub value: Rational,
    /// All lattice points attaining the minimum, sorted.
    pub argmins: Vec<LatticePoint>,
}

/// Row lattice of a Laplacian, a sublattice of `A_n` of full rank.
#[derive(Clone, Debug)]
pub struct LaplacianLattice {
    q: LaplacianMatrix,
    adj: Vec<Vec<BigInt>>,
    det: BigInt,
    adj_small: Option<(Vec<Vec<i128>>, i128)>,
    hnf: Vec<Vec<BigInt>>,
    index: BigUint,
}

impl PartialEq for LaplacianLattice {
    /// Lattice equality, not equality of generating matrices.
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf
    }
}

impl Eq for LaplacianLattice {}

impl LaplacianLattice {
    /// Errors with [`Error::Disconnected`] when the rows have rank below `n`.
    pub fn new(q: LaplacianMatrix) -> Result<Self> {
        let n = q.size() - 1;
        if spanning_tree_count(&q).is_zero() {
            return Err(Error::Disconnected);
        }
        let reduced: Vec<Vec<i64>> = q.rows()[..n].iter().map(|r| r[..n].to_vec()).collect();
        let (adj, det) = adjugate(&to_big(&reduced))?;
        let adj_small = adj
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .zip(det.to_i128());
        // Working basis b_0..b_{n-1} in the A_n basis e_k - e_{k+1}:
        // coordinate k is the prefix sum x_0 + ... + x_k.
        let coords: Vec<Vec<BigInt>> = q.rows()[..n]
            .iter()
            .map(|r| {
                let mut acc = 0i64;
                r[..n]
                    .iter()
                    .map(|&x| {
                        acc += x;
                        BigInt::from(acc)
                    })
                    .collect()
            })
            .collect();
        let hnf = hermite_normal_form(&coords)?;
        let index = hnf
            .iter()
            .enumerate()
            .fold(BigInt::one(), |p, (i, r)| p * &r[i])
            .abs()
            .to_biguint()
            .expect("nonnegative");
        Ok(LaplacianLattice {
            q,
            adj,
            det,
            adj_small,
            hnf,
            index,
        })
    }

    pub fn from_graph(g: &Multigraph) -> Result<Self> {
        LaplacianLattice::new(g.laplacian())
    }

    pub fn laplacian(&self) -> &LaplacianMatrix {
        &self.q
    }

    /// Ambient length `n + 1`.
    pub fn ambient(&self) -> usize {
        self.q.size()
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.q.size() - 1
    }

    pub fn row(&self, i: usize) -> &[i64] {
        self.q.row(i)
    }

    pub fn row_point(&self, i: usize) -> LatticePoint {
        LatticePoint(self.q.row(i).to_vec())
    }

    /// Canonical Hermite normal form of the working basis over `A_n`.
    pub fn hnf(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    /// Index of the lattice in `A_n`.
    pub fn index(&self) -> &BigUint {
        &self.index
    }

    /// `u_S`: sum of the rows indexed by the bits of `mask`.
    pub fn subset_sum(&self, mask: u64) -> LatticePoint {
        let len = self.ambient();
        let mut out = vec![0i64; len];
        for i in 0..len {
            if mask >> i & 1 == 1 {
                for (o, x) in out.iter_mut().zip(self.q.row(i)) {
                    *o += x;
                }
            }
        }
        LatticePoint(out)
    }

    /// `sum_i x_i b_i`.
    pub fn combine(&self, x: &[i64]) -> LatticePoint {
        let len = self.ambient();
        let mut out = vec![0i64; len];
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                for (o, v) in out.iter_mut().zip(self.q.row(i)) {
                    *o += c * v;
                }
            }
        }
        LatticePoint(out)
    }

    /// Integer coefficients `x` with `d = sum_i x_i b_i` and `x_n = 0`, or
    /// `None` when `d` is not in the lattice.
    pub fn contains(&self, d: &LatticePoint) -> Result<Option<Vec<i64>>> {
        check_len(self.ambient(), d.len())?;
        Ok(self.contains_raw(d.coords()))
    }

    pub(crate) fn contains_raw(&self, d: &[i64]) -> Option<Vec<i64>> {
        let n = self.dim();
        if let Some((adj, det)) = &self.adj_small {
            if let Some(x) = solve_small(adj, *det, &d[..n]) {
                return x;
            }
        }
        let mut x = Vec::with_capacity(n + 1);
        for j in 0..n {
            let num: BigInt = (0..n).map(|i| BigInt::from(d[i]) * &self.adj[i][j]).sum();
            if !(&num % &self.det).is_zero() {
                return None;
            }
            x.push((num / &self.det).to_i64()?);
        }
        x.push(0);
        Some(x)
    }

    /// Rational coefficients of `p` over the rows, gauge `x_n = 0`.
    pub fn coefficients(&self, p: &RationalPoint) -> Result<Vec<Rational>> {
        check_len(self.ambient(), p.len())?;
        let n = self.dim();
        let det = Rational::from_integer(self.det.clone());
        let mut x: Vec<Rational> = (0..n)
            .map(|j| {
                (0..n).fold(Rational::zero(), |s, i| {
                    s + &p.0[i] * Rational::from_integer(self.adj[i][j].clone())
                }) / &det
            })
            .collect();
        x.push(Rational::zero());
        Ok(x)
    }

    /// Writes `p = t + p'` with `t` a lattice point and `p'` in the
    /// half-open parallelepiped spanned by `b_0..b_{n-1}`.
    pub fn reduce(&self, p: &RationalPoint) -> Result<(LatticePoint, RationalPoint)> {
        let x = self.coefficients(p)?;
        let fl = x
            .iter()
            .map(crate::exact::floor_to_i64)
            .collect::<Result<Vec<_>>>()?;
        let t = self.combine(&fl);
        let rest = p.sub(&t.to_rational());
        Ok((t, rest))
    }

    /// `h(p) = min_{q in L} d_o(p, q)` with every minimizer.
    ///
    /// Certified search: reduce `p` into the fundamental parallelepiped and
    /// take `r0` as the distance to its nearest corner, an upper bound on
    /// `h`. For `Tri`, `d(p, q) <= r` means `q_i >= p_i - r` for all `i`,
    /// and `sum q = 0` then bounds each `q_i` above by `p_i + n r`, so every
    /// minimizer lies in a finite box. The box is walked in lexicographic
    /// order while `r` shrinks to the best value seen. `TriBar` reduces to
    /// `Tri` through `d_tribar(p, q) = d_tri(-p, -q)` and `L = -L`.
    pub fn h_distance(&self, p: &RationalPoint, o: Orientation) -> Result<HDistance> {
        check_len(self.ambient(), p.len())?;
        if o == Orientation::TriBar {
            let h = self.h_distance(&p.neg(), Orientation::Tri)?;
            let mut argmins: Vec<LatticePoint> = h.argmins.iter().map(LatticePoint::neg).collect();
            argmins.sort();
            return Ok(HDistance {
                value: h.value,
                argmins,
            });
        }
        let (t, rest) = self.reduce(p)?;
        let (scaled, den) = common_scale(rest.coords())?;
        let n = self.dim();
        let mut best = i128::MAX;
        for mask in 0..1u64 << n {
            let c = self.subset_sum(mask);
            best = best.min(scaled_distance(&scaled, den, c.coords()));
        }
        let mut argmins: Vec<Vec<i64>> = Vec::new();
        walk_box(&scaled, den, best, false, &mut |q| {
            if self.contains_raw(q).is_some() {
                let v = scaled_distance(&scaled, den, q);
                if v < best {
                    best = v;
                    argmins.clear();
                }
                if v == best {
                    argmins.push(q.to_vec());
                }
            }
            best
        })?;
        if argmins.is_empty() {
            return Err(Error::Internal("h search found no lattice point".into()));
        }
        let mut argmins: Vec<LatticePoint> = argmins
            .into_iter()
            .map(|q| LatticePoint(q).add(&t))
            .collect();
        argmins.sort();
        Ok(HDistance {
            value: from_scaled(best, den),
            argmins,
        })
    }

    /// Lattice points `q` with `d_o(p, q) < r` (`strict`) or `<= r`, sorted.
    pub fn points_within(
        &self,
        p: &RationalPoint,
        o: Orientation,
        r: &Rational,
        strict: bool,
    ) -> Result<Vec<LatticePoint>> {
        check_len(self.ambient(), p.len())?;
        if r.is_negative() {
            return Ok(Vec::new());
        }
        if o == Orientation::TriBar {
            let mut v: Vec<LatticePoint> = self
                .points_within(&p.neg(), Orientation::Tri, r, strict)?
                .iter()
                .map(LatticePoint::neg)
                .collect();
            v.sort();
            return Ok(v);
        }
        let mut all = p.coords().to_vec();
        all.push(r.clone());
        let (scaled, den) = common_scale(&all)?;
        let radius = scaled[scaled.len() - 1];
        let ps = &scaled[..scaled.len() - 1];
        let mut out = Vec::new();
        walk_box(ps, den, radius, strict, &mut |q| {
            if self.contains_raw(q).is_some() {
                let v = scaled_distance(ps, den, q);
                if v < radius || (!strict && v == radius) {
                    out.push(LatticePoint(q.to_vec()));
                }
            }
            radius
        })?;
        out.sort();
        Ok(out)
    }
}

/// Solves `x Q~ = d` with `i128` arithmetic. The outer `None` means the
/// fast path overflowed and the caller must fall back to big integers.
fn solve_small(adj: &[Vec<i128>], det: i128, d: &[i64]) -> Option<Option<Vec<i64>>> {
    let n = d.len();
    let mut x = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut num: i128 = 0;
        for i in 0..n {
            num = num.checked_add(i128::from(d[i]).checked_mul(adj[i][j])?)?;
        }
        if num % det != 0 {
            return Some(None);
        }
        x.push(i64::try_from(num / det).ok()?);
    }
    x.push(0);
    Some(Some(x))
}

/// `den * d_tri(p, q)` where `p = scaled / den`.
fn scaled_distance(scaled: &[i128], den: i128, q: &[i64]) -> i128 {
    scaled
        .iter()
        .zip(q)
        .map(|(&p, &q)| p - den * i128::from(q))
        .max()
        .unwrap_or(0)
        .max(0)
}

/// Visits, in lexicographic order, every `q` in `A_n` with
/// `den * q_i >= scaled_i - radius` for all `i` (strictly when `strict`).
/// The visitor returns the radius to use from then on, which must not grow.
fn walk_box(
    scaled: &[i128],
    den: i128,
    radius: i128,
    strict: bool,
    visit: &mut dyn FnMut(&[i64]) -> i128,
) -> Result<()> {
    let len = scaled.len();
    let lower = |i: usize, r: i128| -> i128 {
        let lo = div_ceil(scaled[i] - r, den);
        // Strict: den * q_i > scaled_i - r.
        if strict && lo * den == scaled[i] - r {
            lo + 1
        } else {
            lo
        }
    };
    let mut q = vec![0i64; len];
    let mut r = radius;
    fn rec(
        k: usize,
        partial: i128,
        q: &mut [i64],
        r: &mut i128,
        lower: &dyn Fn(usize, i128) -> i128,
        visit: &mut dyn FnMut(&[i64]) -> i128,
    ) -> Result<()> {
        let len = q.len();
        if k == len - 1 {
            let last = -partial;
            if last >= lower(k, *r) {
                q[k] = i64::try_from(last).map_err(|_| Error::Overflow("box search"))?;
                *r = visit(q);
            }
            return Ok(());
        }
        let mut v = lower(k, *r);
        loop {
            let rest: i128 = (k + 1..len).map(|j| lower(j, *r)).sum();
            if partial + v + rest > 0 {
                break;
            }
            q[k] = i64::try_from(v).map_err(|_| Error::Overflow("box search"))?;
            rec(k + 1, partial + v, q, r, lower, visit)?;
            v += 1;
        }
        Ok(())
    }
    rec(0, 0, &mut q, &mut r, &lower, visit)
}

/// Index of `L_G` in `A_n`.
pub fn lattice_index(l: &LaplacianLattice) -> BigUint {
    l.index().clone()
}
