//! Exact integer linear algebra (fraction-free determinants, adjugates,
//! Hermite normal form) and the one floating routine, cyclic Jacobi.
//!
//! The exact routines run in checked `i128` first and redo the work in
//! `BigInt` only when an intermediate overflows.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Integer arithmetic where every operation may overflow (`None`).
trait Ring: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_cmp(&self, other: &Self) -> Ordering;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn div_floor(&self, other: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)?;
        Some(Integer::div_floor(self, other))
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, other))
    }
}

fn small(m: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    m.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect()
}

fn widen(m: Vec<Vec<i128>>) -> Vec<Vec<BigInt>> {
    m.into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect()
}

/// Bareiss step `(a_kk a_ij - a_ik a_kj) / prev`.
fn bareiss_entry<T: Ring>(akk: &T, aij: &T, aik: &T, akj: &T, prev: &T) -> Option<T> {
    akk.mul(aij)?.sub(&aik.mul(akj)?)?.div_exact(prev)
}

fn det_in<T: Ring>(mut a: Vec<Vec<T>>) -> Option<T> {
    let n = a.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Some(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = bareiss_entry(&a[k][k], &a[i][j], &a[i][k], &a[k][j], &prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    if let Some(d) = small(m).and_then(det_in) {
        return BigInt::from(d);
    }
    det_in(m.to_vec()).expect("BigInt arithmetic does not overflow")
}

/// Fraction-free Gauss-Jordan on `[m | I]`. Every intermediate entry is a
/// minor, so the divisions are exact; the right block ends as
/// `det(P m) (P m)^-1 P`. Inner `None` means singular.
fn adjugate_in<T: Ring>(m: &[Vec<T>]) -> Option<Option<(Vec<Vec<T>>, T)>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Some(None);
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in (0..n).filter(|&i| i != k) {
            for j in (0..2 * n).filter(|&j| j != k) {
                a[i][j] = bareiss_entry(&a[k][k], &a[i][j], &a[i][k], &a[k][j], &prev)?;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let fix = |x: &T| if negate { x.neg() } else { Some(x.clone()) };
    let det = fix(&prev)?;
    let adj = a
        .iter()
        .map(|r| r[n..].iter().map(fix).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(Some((adj, det)))
}

/// Adjugate and determinant, `adj * m = det * I`. Errors when singular.
pub fn adjugate(m: &[Vec<BigInt>]) -> Result<(Vec<Vec<BigInt>>, BigInt)> {
    let out = match small(m).and_then(|s| adjugate_in(&s)) {
        Some(r) => r.map(|(adj, det)| (widen(adj), BigInt::from(det))),
        None => adjugate_in(m).expect("BigInt arithmetic does not overflow"),
    };
    out.ok_or(Error::Disconnected)
}

fn hnf_in<T: Ring>(m: &[Vec<T>]) -> Option<Result<Vec<Vec<T>>>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by(|&x, &y| a[x][k].abs_cmp(&a[y][k]));
            let Some(p) = pivot else {
                return Some(Err(Error::Disconnected));
            };
            a.swap(k, p);
            let mut clean = true;
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let q = a[r][k].div_floor(&a[k][k])?;
                for c in k..n {
                    a[r][c] = a[r][c].sub(&q.mul(&a[k][c])?)?;
                }
                if !a[r][k].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[k][k].is_negative() {
            for c in k..n {
                a[k][c] = a[k][c].neg()?;
            }
        }
        for r in 0..k {
            let q = a[r][k].div_floor(&a[k][k])?;
            if !q.is_zero() {
                for c in k..n {
                    a[r][c] = a[r][c].sub(&q.mul(&a[k][c])?)?;
                }
            }
        }
    }
    Some(Ok(a))
}

/// Row-style Hermite normal form of a nonsingular square integer matrix:
/// upper triangular, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`. Two matrices generate the same row lattice iff
/// their HNFs coincide.
pub fn hermite_normal_form(m: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    match small(m).and_then(|s| hnf_in(&s)) {
        Some(r) => r.map(widen),
        None => hnf_in(m).expect("BigInt arithmetic does not overflow"),
    }
}

/// Stopping rule for [`symmetric_eigenvalues`].
#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm is at most `tolerance * ||A||_F`.
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tolerance: 1e-12,
            max_sweeps: 100,
        }
    }
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
pub fn symmetric_eigenvalues(m: &[Vec<f64>], opts: JacobiOptions) -> Result<Vec<f64>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let norm = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for i in 0..n {
        for j in i + 1..n {
            if (m[i][j] - m[j][i]).abs() > 1e-12 * norm.max(1.0) {
                return Err(Error::InvalidArgument("matrix is not symmetric".into()));
            }
        }
    }
    let mut a = m.to_vec();
    let off = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut converged = false;
    for _ in 0..opts.max_sweeps {
        if off(&a) <= opts.tolerance * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r][p] = new_rp;
                    a[p][r] = new_rp;
                    a[r][q] = new_rq;
                    a[q][r] = new_rq;
                }
            }
        }
    }
    if !converged && off(&a) > opts.tolerance * norm {
        return Err(Error::Numeric(format!(
            "Jacobi iteration did not converge in {} sweeps",
            opts.max_sweeps
        )));
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}
