//! Projective points, 3x3 matrices, the tensor square `V ⊗ V` and exact
//! linear algebra over the ground field.
//!
//! Conventions used throughout the crate:
//! * a matrix acts on `V` with columns as images, `phi(x_j) = sum_i m[i][j] x_i`;
//! * a tensor stores `t[j][k]` as the coefficient of `x_j ⊗ x_k`;
//! * the induced action on points of `P(V*)` is by the transpose.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElem;

pub type Vec3 = [FieldElem; 3];

/// A point of `P^2`, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FieldElem; 3]", into = "[FieldElem; 3]")]
pub struct ProjPoint {
    c: Vec3,
}

impl ProjPoint {
    pub fn new(x: FieldElem, y: FieldElem, z: FieldElem) -> Result<Self> {
        Self::from_vec([x, y, z])
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        let lead = v.iter().find(|e| !e.is_zero()).ok_or(Error::ZeroVector)?;
        if lead.is_one() {
            return Ok(ProjPoint { c: v });
        }
        let s = lead.inv()?;
        Ok(ProjPoint {
            c: [&v[0] * &s, &v[1] * &s, &v[2] * &s],
        })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn coords(&self) -> &Vec3 {
        &self.c
    }

    pub fn x(&self) -> &FieldElem {
        &self.c[0]
    }

    pub fn y(&self) -> &FieldElem {
        &self.c[1]
    }

    pub fn z(&self) -> &FieldElem {
        &self.c[2]
    }
}

impl TryFrom<[FieldElem; 3]> for ProjPoint {
    type Error = Error;
    fn try_from(v: [FieldElem; 3]) -> Result<Self> {
        ProjPoint::from_vec(v)
    }
}

impl From<ProjPoint> for [FieldElem; 3] {
    fn from(p: ProjPoint) -> Self {
        p.c
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.c[0], self.c[1], self.c[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Dot product of two coordinate vectors.
pub fn dot(a: &Vec3, b: &Vec3) -> FieldElem {
    let mut acc = &a[0] * &b[0];
    acc += &(&a[1] * &b[1]);
    acc += &(&a[2] * &b[2]);
    acc
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Whether two coordinate vectors are proportional (zero counts as proportional to anything).
pub fn proportional(a: &Vec3, b: &Vec3) -> bool {
    cross(a, b).iter().all(FieldElem::is_zero)
}

/// A 3x3 matrix, `m[row][col]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3 {
    pub m: [[FieldElem; 3]; 3],
}

impl Mat3 {
    pub fn from_rows(m: [[FieldElem; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_int_rows(r: [[i64; 3]; 3]) -> Self {
        Mat3 {
            m: r.map(|row| row.map(FieldElem::from_int)),
        }
    }

    pub fn zero() -> Self {
        Mat3 {
            m: std::array::from_fn(|_| std::array::from_fn(|_| FieldElem::zero())),
        }
    }

    pub fn identity() -> Self {
        Self::diag([FieldElem::one(), FieldElem::one(), FieldElem::one()])
    }

    pub fn diag(d: Vec3) -> Self {
        let mut out = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            out.m[i][i] = v;
        }
        out
    }

    /// Matrix of the basis permutation `x_j -> x_{perm[j]}`.
    pub fn permutation(perm: [usize; 3]) -> Self {
        let mut out = Self::zero();
        for (j, &i) in perm.iter().enumerate() {
            out.m[i][j] = FieldElem::one();
        }
        out
    }

    /// The transposition exchanging the first two coordinates.
    pub fn swap_xy() -> Self {
        Self::permutation([1, 0, 2])
    }

    pub fn transpose(&self) -> Self {
        Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())),
        }
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        Mat3 {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = FieldElem::zero();
                    for k in 0..3 {
                        acc += &(&self.m[i][k] * &other.m[k][j]);
                    }
                    acc
                })
            }),
        }
    }

    pub fn scale(&self, s: &FieldElem) -> Mat3 {
        Mat3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] * s)),
        }
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| dot(&self.m[i], v))
    }

    pub fn det(&self) -> FieldElem {
        let m = &self.m;
        let c0 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
        let c1 = &(&m[1][2] * &m[2][0]) - &(&m[1][0] * &m[2][2]);
        let c2 = &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]);
        &(&(&m[0][0] * &c0) + &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inverse(&self) -> Result<Mat3> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let dinv = d.inv()?;
        let m = &self.m;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
        };
        // adjugate entry (i, j) is the (j, i) cofactor
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Ok(Mat3::from_rows(adj).scale(&dinv))
    }

    pub fn pow(&self, n: i64) -> Result<Mat3> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Mat3::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// True when the matrix is a nonzero multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        let d = &self.m[0][0];
        !d.is_zero()
            && (0..3).all(|i| {
                (0..3).all(|j| if i == j { &self.m[i][j] == d } else { self.m[i][j].is_zero() })
            })
    }

    /// Order in `PGL_3`: least `n >= 1` with `m^n` scalar, searched up to `bound`.
    pub fn projective_order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_scalar() {
                return Some(n);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// True when `self = c * other` for some nonzero scalar `c`.
    pub fn proportional_to(&self, other: &Mat3) -> bool {
        let a: Vec<FieldElem> = self.m.iter().flatten().cloned().collect();
        let b: Vec<FieldElem> = other.m.iter().flatten().cloned().collect();
        proportional_slices(&a, &b)
    }
}

/// Projective equality of vectors of any length (both nonzero, and proportional).
pub fn proportional_slices(a: &[FieldElem], b: &[FieldElem]) -> bool {
    let Some(k) = a.iter().position(|e| !e.is_zero()) else {
        return false;
    };
    if b[k].is_zero() {
        return false;
    }
    a.iter()
        .zip(b.iter())
        .all(|(x, y)| &a[k] * y == &b[k] * x)
}

/// Image of `p` under the projectivity with matrix `m`.
pub fn apply(m: &Mat3, p: &ProjPoint) -> Result<ProjPoint> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    ProjPoint::from_vec(m.mul_vec(p.coords()))
}

/// An element `sum t[j][k] x_j ⊗ x_k` of `V ⊗ V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor2 {
    pub t: [[FieldElem; 3]; 3],
}

impl Tensor2 {
    pub fn zero() -> Self {
        Tensor2 {
            t: std::array::from_fn(|_| std::array::from_fn(|_| FieldElem::zero())),
        }
    }

    /// The pure tensor `x_j ⊗ x_k`.
    pub fn basis(j: usize, k: usize) -> Self {
        let mut out = Self::zero();
        out.t[j][k] = FieldElem::one();
        out
    }

    /// Row-major: entry `3 j + k` is the coefficient of `x_j ⊗ x_k`.
    pub fn from_vec9(v: &[FieldElem]) -> Self {
        assert_eq!(v.len(), 9, "a tensor has 9 coordinates");
        Tensor2 {
            t: std::array::from_fn(|j| std::array::from_fn(|k| v[3 * j + k].clone())),
        }
    }

    pub fn to_vec9(&self) -> Vec<FieldElem> {
        self.t.iter().flatten().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().flatten().all(FieldElem::is_zero)
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        Tensor2 {
            t: std::array::from_fn(|j| std::array::from_fn(|k| &self.t[j][k] + &other.t[j][k])),
        }
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        Tensor2 {
            t: std::array::from_fn(|j| std::array::from_fn(|k| &self.t[j][k] - &other.t[j][k])),
        }
    }

    pub fn scale(&self, s: &FieldElem) -> Tensor2 {
        Tensor2 {
            t: std::array::from_fn(|j| std::array::from_fn(|k| &self.t[j][k] * s)),
        }
    }

    /// `g(p, q) = sum t[j][k] p_j q_k`.
    pub fn eval_vec(&self, p: &Vec3, q: &Vec3) -> FieldElem {
        let mut acc = FieldElem::zero();
        for j in 0..3 {
            if p[j].is_zero() {
                continue;
            }
            for k in 0..3 {
                if !self.t[j][k].is_zero() && !q[k].is_zero() {
                    acc += &(&(&self.t[j][k] * &p[j]) * &q[k]);
                }
            }
        }
        acc
    }
}

/// Value of `g` at the canonical representatives of `p` and `q`.
/// Only whether it vanishes is projectively meaningful.
pub fn evaluate(g: &Tensor2, p: &ProjPoint, q: &ProjPoint) -> FieldElem {
    g.eval_vec(p.coords(), q.coords())
}

/// `(m ⊗ id)(g)`.
pub fn tensor_left(m: &Mat3, g: &Tensor2) -> Tensor2 {
    Tensor2 {
        t: m.mul(&Mat3::from_rows(g.t.clone())).m,
    }
}

/// `(m ⊗ m)(g)`.
pub fn tensor_both(m: &Mat3, g: &Tensor2) -> Tensor2 {
    Tensor2 {
        t: m.mul(&Mat3::from_rows(g.t.clone())).mul(&m.transpose()).m,
    }
}

struct Echelon {
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
    ncols: usize,
}

/// Fraction-free (Bareiss) elimination to row echelon form.
fn echelon(rows: &[Vec<FieldElem>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<FieldElem>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let mut pivots = Vec::new();
    let mut prev = FieldElem::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let prev_inv = prev.inv().expect("previous pivot is nonzero");
        let (top, rest) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = &piv_row[c] * &row[j];
                if !lead.is_zero() && !piv_row[j].is_zero() {
                    v -= &(&lead * &piv_row[j]);
                }
                row[j] = if prev_inv.is_one() { v } else { &v * &prev_inv };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon {
        rows: a,
        pivots,
        ncols,
    }
}

/// Rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<FieldElem>], ncols: usize) -> usize {
    echelon(rows, ncols).pivots.len()
}

/// A basis of `{v : row . v = 0 for every row}`.
///
/// One vector per non-pivot column, with a 1 in that column and 0 in the
/// other free columns.
pub fn nullspace(rows: &[Vec<FieldElem>], ncols: usize) -> Vec<Vec<FieldElem>> {
    let e = echelon(rows, ncols);
    let free: Vec<usize> = (0..e.ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![FieldElem::zero(); e.ncols];
        v[f] = FieldElem::one();
        for (i, &pc) in e.pivots.iter().enumerate().rev() {
            let mut s = FieldElem::zero();
            for j in pc + 1..e.ncols {
                if !e.rows[i][j].is_zero() && !v[j].is_zero() {
                    s += &(&e.rows[i][j] * &v[j]);
                }
            }
            if !s.is_zero() {
                v[pc] = -(s.div(&e.rows[i][pc]).expect("pivot is nonzero"));
            }
        }
        basis.push(v);
    }
    basis
}
