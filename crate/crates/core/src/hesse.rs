//! Hesse cubics `E_lambda = V(x^3 + y^3 + z^3 - 3 lambda xyz)` with the
//! group law based at the flex `o = (1:-1:0)`, the generator `tau` of the
//! automorphisms fixing `o` that extend to the plane, and translations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::plinalg::{apply, cross, dot, proportional, Mat3, ProjPoint, Vec3};

/// `(a^3 + b^3 + c^3) / 3abc`, the unique `lambda` with `p` on `E_lambda`.
pub fn lambda_of(p: &ProjPoint) -> Result<FieldElem> {
    let [a, b, c] = p.coords();
    let abc = &(a * b) * c;
    if abc.is_zero() {
        return Err(Error::TorsionPoint(p.to_string()));
    }
    let num = &(&a.cube() + &b.cube()) + &c.cube();
    let lambda = num.div(&(&FieldElem::from_int(3) * &abc))?;
    if lambda.cube().is_one() {
        return Err(Error::SingularHesse(lambda.to_string()));
    }
    Ok(lambda)
}

/// `j(E_lambda) = 27 l^3 (l^3 + 8)^3 / (l^3 - 1)^3`.
pub fn j_invariant(lambda: &FieldElem) -> Result<FieldElem> {
    let l3 = lambda.cube();
    let den = (&l3 - &FieldElem::one()).cube();
    if den.is_zero() {
        return Err(Error::SingularHesse(lambda.to_string()));
    }
    let num = &(&FieldElem::from_int(27) * &l3) * &(&l3 + &FieldElem::from_int(8)).cube();
    num.div(&den)
}

/// Order of the group of automorphisms fixing `o`.
pub fn group_order_d(lambda: &FieldElem) -> Result<usize> {
    let j = j_invariant(lambda)?;
    Ok(if j.is_zero() {
        6
    } else if j == FieldElem::from_int(1728) {
        4
    } else {
        2
    })
}

/// `1 + sqrt3`, the Hesse parameter used for `j = 1728`.
pub fn lambda_1728() -> FieldElem {
    &FieldElem::one() + &FieldElem::sqrt3()
}

/// Matrix of the generator `tau_lambda` acting on point coordinates.
pub fn tau_matrix(lambda: &FieldElem) -> Result<Mat3> {
    let j = j_invariant(lambda)?;
    let e = FieldElem::eps();
    let (o, z) = (FieldElem::one(), FieldElem::zero());
    if j.is_zero() {
        if !lambda.is_zero() {
            return Err(Error::CanonicalFormRequired {
                j: "0".into(),
                canonical: "0".into(),
            });
        }
        return Ok(Mat3::from_rows([
            [z.clone(), o.clone(), z.clone()],
            [o, z.clone(), z.clone()],
            [z.clone(), z, e],
        ]));
    }
    if j == FieldElem::from_int(1728) {
        if *lambda != lambda_1728() {
            return Err(Error::CanonicalFormRequired {
                j: "1728".into(),
                canonical: "1 + sqrt3".into(),
            });
        }
        let e2 = e.square();
        return Ok(Mat3::from_rows([
            [e2.clone(), e.clone(), o.clone()],
            [e, e2, o.clone()],
            [o.clone(), o.clone(), o],
        ]));
    }
    Ok(Mat3::swap_xy())
}

/// The nine flexes `p_0, ..., p_8`; they lie on every `E_lambda` and form `E[3]`.
pub fn torsion3() -> Vec<ProjPoint> {
    let e = FieldElem::eps();
    let units = [FieldElem::one(), e.clone(), e.square()];
    let (o, z) = (FieldElem::one(), FieldElem::zero());
    let mut out = Vec::with_capacity(9);
    for u in &units {
        out.push(ProjPoint::new(o.clone(), -u, z.clone()).unwrap());
    }
    for u in &units {
        out.push(ProjPoint::new(o.clone(), z.clone(), -u).unwrap());
    }
    for u in &units {
        out.push(ProjPoint::new(z.clone(), o.clone(), -u).unwrap());
    }
    out
}

struct Inner {
    lambda: FieldElem,
    j: FieldElem,
    d: usize,
    /// `tau^0, ..., tau^(d-1)`, or the reason tau is unavailable.
    tau_powers: std::result::Result<Vec<Mat3>, Error>,
    torsion: Vec<ProjPoint>,
}

/// A nonsingular Hesse cubic. Cheap to clone.
#[derive(Clone)]
pub struct HesseCurve {
    inner: Arc<Inner>,
}

impl PartialEq for HesseCurve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.lambda == other.inner.lambda
    }
}

impl Eq for HesseCurve {}

impl fmt::Debug for HesseCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HesseCurve(lambda = {})", self.inner.lambda)
    }
}

impl HesseCurve {
    pub fn new(lambda: FieldElem) -> Result<Self> {
        let j = j_invariant(&lambda)?;
        let d = group_order_d(&lambda)?;
        let tau_powers = tau_matrix(&lambda).map(|t| {
            let mut pw = vec![Mat3::identity()];
            for k in 1..d {
                pw.push(pw[k - 1].mul(&t));
            }
            pw
        });
        Ok(HesseCurve {
            inner: Arc::new(Inner {
                lambda,
                j,
                d,
                tau_powers,
                torsion: torsion3(),
            }),
        })
    }

    /// The curve through `p` (which must have `abc != 0`) together with `p` itself.
    pub fn through(p: &ProjPoint) -> Result<(HesseCurve, CurvePoint)> {
        let curve = HesseCurve::new(lambda_of(p)?)?;
        let pt = curve.point(p.clone())?;
        Ok((curve, pt))
    }

    pub fn lambda(&self) -> &FieldElem {
        &self.inner.lambda
    }

    pub fn j(&self) -> &FieldElem {
        &self.inner.j
    }

    pub fn d(&self) -> usize {
        self.inner.d
    }

    fn tau_powers(&self) -> Result<&[Mat3]> {
        self.inner.tau_powers.as_deref().map_err(Clone::clone)
    }

    pub fn tau(&self) -> Result<&Mat3> {
        Ok(&self.tau_powers()?[1 % self.d()])
    }

    /// `tau^i` for any integer `i` (reduced mod `d`).
    pub fn tau_pow(&self, i: i64) -> Result<&Mat3> {
        let k = i.rem_euclid(self.d() as i64) as usize;
        Ok(&self.tau_powers()?[k])
    }

    pub fn cubic_at(&self, v: &Vec3) -> FieldElem {
        let [x, y, z] = v;
        let s = &(&x.cube() + &y.cube()) + &z.cube();
        let t = &(&(&FieldElem::from_int(3) * &self.inner.lambda) * x) * &(y * z);
        &s - &t
    }

    fn gradient(&self, v: &Vec3) -> Vec3 {
        let [x, y, z] = v;
        let l = &self.inner.lambda;
        let three = FieldElem::from_int(3);
        [
            &three * &(&x.square() - &(l * &(y * z))),
            &three * &(&y.square() - &(l * &(x * z))),
            &three * &(&z.square() - &(l * &(x * y))),
        ]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.cubic_at(p.coords()).is_zero()
    }

    pub fn point(&self, p: ProjPoint) -> Result<CurvePoint> {
        if !self.contains(&p) {
            return Err(Error::NotOnCurve(p.to_string()));
        }
        Ok(CurvePoint {
            curve: self.clone(),
            point: p,
        })
    }

    pub fn identity(&self) -> CurvePoint {
        CurvePoint {
            curve: self.clone(),
            point: self.inner.torsion[0].clone(),
        }
    }

    /// `p_0, ..., p_8` as points of this curve.
    pub fn torsion_points(&self) -> Vec<CurvePoint> {
        self.inner
            .torsion
            .iter()
            .map(|p| CurvePoint {
                curve: self.clone(),
                point: p.clone(),
            })
            .collect()
    }

    /// Index `l` with `p = p_l`, when `p` is 3-torsion.
    pub fn torsion_index(&self, p: &ProjPoint) -> Option<usize> {
        self.inner.torsion.iter().position(|t| t == p)
    }

    /// Third intersection of the chord through `p != q`.
    fn chord_third(&self, p: &Vec3, q: &Vec3) -> Vec3 {
        let s = dot(&self.gradient(q), p);
        let t = dot(&self.gradient(p), q);
        std::array::from_fn(|k| &(&s * &p[k]) - &(&t * &q[k]))
    }

    /// Third intersection of the tangent line at `p`.
    fn tangent_third(&self, p: &Vec3) -> Vec3 {
        let line = self.gradient(p);
        let w = (0..3)
            .map(|k| {
                let mut e: Vec3 = std::array::from_fn(|_| FieldElem::zero());
                e[k] = FieldElem::one();
                cross(&line, &e)
            })
            .find(|w| !w.iter().all(FieldElem::is_zero) && !proportional(w, p))
            .expect("a line has points other than p");
        let fw = self.cubic_at(&w);
        let gw = dot(&self.gradient(&w), p);
        std::array::from_fn(|k| &(&fw * &p[k]) - &(&gw * &w[k]))
    }

    fn add_points(&self, p: &ProjPoint, q: &ProjPoint) -> ProjPoint {
        let o = &self.inner.torsion[0];
        if p == o {
            return q.clone();
        }
        if q == o {
            return p.clone();
        }
        let [a, b, c] = p.coords();
        let v: Vec3 = if p == q {
            let (a3, b3, c3) = (a.cube(), b.cube(), c.cube());
            [
                &(&a3 * b) - &(b * &c3),
                &(a * &c3) - &(a * &b3),
                &(&b3 * c) - &(&a3 * c),
            ]
        } else {
            let [al, be, ga] = q.coords();
            [
                &(&(a * c) * &be.square()) - &(&b.square() * &(al * ga)),
                &(&(b * c) * &al.square()) - &(&a.square() * &(be * ga)),
                &(&(a * b) * &ga.square()) - &(&c.square() * &(al * be)),
            ]
        };
        if let Ok(r) = ProjPoint::from_vec(v) {
            return r;
        }
        let third = if p == q {
            self.tangent_third(p.coords())
        } else {
            self.chord_third(p.coords(), q.coords())
        };
        let r = ProjPoint::from_vec(third).expect("a line meets a smooth cubic in three points");
        neg_point(&r)
    }
}

fn neg_point(p: &ProjPoint) -> ProjPoint {
    let [a, b, c] = p.coords();
    ProjPoint::new(b.clone(), a.clone(), c.clone()).expect("nonzero")
}

/// A point of a Hesse curve.
#[derive(Clone, PartialEq, Eq)]
pub struct CurvePoint {
    curve: HesseCurve,
    point: ProjPoint,
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

impl CurvePoint {
    pub fn curve(&self) -> &HesseCurve {
        &self.curve
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    fn same_curve(&self, other: &CurvePoint) -> Result<()> {
        if self.curve == other.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn add(&self, other: &CurvePoint) -> Result<CurvePoint> {
        self.same_curve(other)?;
        Ok(CurvePoint {
            curve: self.curve.clone(),
            point: self.curve.add_points(&self.point, &other.point),
        })
    }

    pub fn sub(&self, other: &CurvePoint) -> Result<CurvePoint> {
        self.add(&other.neg())
    }

    /// `-(a:b:c) = (b:a:c)`.
    pub fn neg(&self) -> CurvePoint {
        CurvePoint {
            curve: self.curve.clone(),
            point: neg_point(&self.point),
        }
    }

    pub fn smul(&self, n: i64) -> CurvePoint {
        let mut acc = self.curve.identity();
        let mut base = if n < 0 { self.neg() } else { self.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("same curve");
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base).expect("same curve");
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.point == self.curve.inner.torsion[0]
    }

    /// Membership in `E[3]`; for points of the curve this is `abc = 0`.
    pub fn is_torsion3(&self) -> bool {
        let [a, b, c] = self.point.coords();
        (&(a * b) * c).is_zero()
    }

    /// `tau^i(p)`.
    pub fn tau(&self, i: i64) -> Result<CurvePoint> {
        let m = self.curve.tau_pow(i)?;
        Ok(CurvePoint {
            curve: self.curve.clone(),
            point: apply(m, &self.point)?,
        })
    }
}

pub fn add(p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    p.add(q)
}

pub fn neg(p: &CurvePoint) -> CurvePoint {
    p.neg()
}

pub fn smul(n: i64, p: &CurvePoint) -> CurvePoint {
    p.smul(n)
}

pub fn is_torsion3(p: &CurvePoint) -> bool {
    p.is_torsion3()
}

/// `F_{lambda,i} = {p_l - tau^i(p_l)}`, listed in torsion-label order.
pub fn f_set(curve: &HesseCurve, i: i64) -> Result<Vec<CurvePoint>> {
    let tors = curve.torsion_points();
    let mut idx = BTreeSet::new();
    for p in &tors {
        let r = p.sub(&p.tau(i)?)?;
        idx.insert(curve.torsion_index(r.point()).expect("E[3] is tau-stable"));
    }
    Ok(idx.into_iter().map(|k| tors[k].clone()).collect())
}

/// The automorphism `sigma_p tau^i : q -> p + tau^i(q)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutElem {
    p: CurvePoint,
    i: usize,
}

impl AutElem {
    pub fn new(p: CurvePoint, i: i64) -> Result<Self> {
        let d = p.curve().d() as i64;
        p.curve().tau_pow(i)?;
        Ok(AutElem {
            p,
            i: i.rem_euclid(d) as usize,
        })
    }

    pub fn identity(curve: &HesseCurve) -> Self {
        AutElem {
            p: curve.identity(),
            i: 0,
        }
    }

    pub fn translation_point(&self) -> &CurvePoint {
        &self.p
    }

    pub fn exponent(&self) -> usize {
        self.i
    }

    pub fn curve(&self) -> &HesseCurve {
        self.p.curve()
    }

    pub fn apply(&self, q: &CurvePoint) -> Result<CurvePoint> {
        self.p.add(&q.tau(self.i as i64)?)
    }

    /// `self ∘ other`: `(sigma_q tau^j)(sigma_p tau^i) = sigma_{q + tau^j(p)} tau^{i+j}`.
    pub fn compose(&self, other: &AutElem) -> Result<AutElem> {
        if self.curve() != other.curve() {
            return Err(Error::CurveMismatch);
        }
        let p = self.p.add(&other.p.tau(self.i as i64)?)?;
        AutElem::new(p, (self.i + other.i) as i64)
    }

    /// `(sigma_p tau^i)^{-1} = sigma_{-tau^{-i}(p)} tau^{-i}`.
    pub fn inverse(&self) -> Result<AutElem> {
        let back = -(self.i as i64);
        AutElem::new(self.p.tau(back)?.neg(), back)
    }
}

pub fn aut_compose(g: &AutElem, h: &AutElem) -> Result<AutElem> {
    g.compose(h)
}

pub fn aut_inverse(g: &AutElem) -> Result<AutElem> {
    g.inverse()
}
