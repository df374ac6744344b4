//! Geometric cross-checks. From a pair `(E, sigma)` the relations are
//! recomputed as the forms vanishing on sampled graph points `(p, sigma p)`,
//! and a relation set is tested against a pair point by point.
//!
//! Pointwise checks at finitely many points are sampled evidence; they do
//! not prove that the zero set of the relations equals the graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ec::EcDescriptor;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::hesse::{AutElem, CurvePoint, HesseCurve};
use crate::plinalg::{nullspace, proportional, Mat3, ProjPoint, Tensor2, Vec3};
use crate::qalg::RelationSet;
use crate::tables::{construct, nc_parametrize, nc_sigma, nodal_cubic_at, AlgebraType, NcVariant, TypedAlgebra};

pub const DEFAULT_SAMPLES: usize = 12;

/// The underlying variety `E`.
#[derive(Clone, Debug)]
pub enum Family {
    P2,
    /// `V(xyz)`
    Triangle,
    /// `V(x) ∪ V(yz - kappa x^2)`
    LineConic2 { kappa: FieldElem },
    /// `V(y) ∪ V(x^2 - yz)`
    LineConic1,
    /// `V(x) ∪ V(y) ∪ V(x - y)`
    ThreeLinesConcurrent,
    /// `V(x^3 + y^3 + xyz)`
    NodalCubic,
    HesseCubic(HesseCurve),
}

/// The automorphism `sigma`, acting on point coordinates.
#[derive(Clone, Debug)]
pub enum Sigma {
    /// `p -> m p`
    Linear(Mat3),
    /// `(0:b:c) -> (0:b:ac)`, `(a:0:c) -> (ba:0:c)`, `(a:b:0) -> (a:cb:0)` on the triangle.
    TriangleScaling([FieldElem; 3]),
    /// `p -> inner(m p)`
    Twisted(Box<Sigma>, Mat3),
    Nodal(NcVariant, FieldElem),
    Curve(AutElem),
    /// `sigma(p)` read off as the kernel of `M(p)` of the given relations.
    FromRelations(RelationSet),
}

#[derive(Clone, Debug)]
pub struct GeometricPair {
    pub family: Family,
    pub sigma: Sigma,
}

fn on_triangle(v: &Vec3) -> bool {
    let [x, y, z] = v;
    (&(x * y) * z).is_zero()
}

impl Family {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let [x, y, z] = p.coords();
        match self {
            Family::P2 => true,
            Family::Triangle => on_triangle(p.coords()),
            Family::LineConic2 { kappa } => {
                x.is_zero() || (y * z) == (kappa * &x.square())
            }
            Family::LineConic1 => y.is_zero() || x.square() == (y * z),
            Family::ThreeLinesConcurrent => x.is_zero() || y.is_zero() || x == y,
            Family::NodalCubic => nodal_cubic_at(p).is_zero(),
            Family::HesseCubic(c) => c.contains(p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::P2 => "P2",
            Family::Triangle => "Triangle",
            Family::LineConic2 { .. } => "LineConic2",
            Family::LineConic1 => "LineConic1",
            Family::ThreeLinesConcurrent => "ThreeLinesConcurrent",
            Family::NodalCubic => "NodalCubic",
            Family::HesseCubic(_) => "HesseCubic",
        }
    }
}

/// Coprime pairs `(a, b)` with `a, b >= 1`, ordered by `a + b`.
fn parameter_pairs() -> impl Iterator<Item = (i64, i64)> {
    (2i64..).flat_map(|s| {
        (1..s)
            .map(move |a| (a, s - a))
            .filter(|&(a, b)| num_integer::gcd(a, b) == 1)
    })
}

fn pt(v: [FieldElem; 3]) -> ProjPoint {
    ProjPoint::from_vec(v).expect("parametrizations give nonzero vectors")
}

fn component_point(family: &Family, comp: usize, a: i64, b: i64) -> ProjPoint {
    let (fa, fb) = (FieldElem::from_int(a), FieldElem::from_int(b));
    let z = FieldElem::zero;
    match (family, comp) {
        (Family::Triangle, 0) | (Family::ThreeLinesConcurrent, 0) | (Family::LineConic2 { .. }, 0) => {
            pt([z(), fa, fb])
        }
        (Family::Triangle, 1) | (Family::ThreeLinesConcurrent, 1) | (Family::LineConic1, 0) => {
            pt([fa, z(), fb])
        }
        (Family::Triangle, _) => pt([fa, fb, z()]),
        (Family::ThreeLinesConcurrent, _) => pt([fa.clone(), fa, fb]),
        (Family::LineConic2 { kappa }, _) => pt([&fa * &fb, kappa * &fa.square(), fb.square()]),
        (Family::LineConic1, _) => pt([&fa * &fb, fb.square(), fa.square()]),
        _ => unreachable!("not a union of rational components"),
    }
}

fn components(family: &Family) -> usize {
    match family {
        Family::Triangle | Family::ThreeLinesConcurrent => 3,
        Family::LineConic1 | Family::LineConic2 { .. } => 2,
        _ => 1,
    }
}

fn push_distinct(out: &mut Vec<ProjPoint>, p: ProjPoint) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// `n` distinct points of the variety. The Hesse case needs a seed point of
/// infinite order (or at least one whose multiples give enough points).
pub fn sample_points(family: &Family, n: usize, seed: Option<&CurvePoint>) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::with_capacity(n);
    match family {
        Family::P2 => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut tries = 0;
            while out.len() < n {
                tries += 1;
                if tries > 100 * n + 100 {
                    return Err(Error::SamplingExhausted { requested: n });
                }
                let v: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
                if let Ok(p) = ProjPoint::from_ints(v[0], v[1], v[2]) {
                    push_distinct(&mut out, p);
                }
            }
        }
        Family::NodalCubic => {
            for (a, b) in parameter_pairs().take(n) {
                out.push(nc_parametrize(&FieldElem::from_int(a), &FieldElem::from_int(b))?);
            }
        }
        Family::HesseCubic(curve) => {
            let seed = seed.ok_or(Error::SamplingExhausted { requested: n })?;
            if seed.curve() != curve {
                return Err(Error::CurveMismatch);
            }
            let tors = curve.torsion_points();
            let mut m = 1;
            while out.len() < n {
                if m > 4 * n as i64 + 4 {
                    return Err(Error::SamplingExhausted { requested: n });
                }
                let base = seed.smul(m);
                for t in &tors {
                    if out.len() == n {
                        break;
                    }
                    push_distinct(&mut out, base.add(t)?.point().clone());
                }
                m += 1;
            }
        }
        _ => {
            let k = components(family);
            let mut pairs = parameter_pairs();
            'outer: loop {
                let (a, b) = pairs.next().expect("infinite sequence");
                for comp in 0..k {
                    if out.len() == n {
                        break 'outer;
                    }
                    push_distinct(&mut out, component_point(family, comp, a, b));
                }
            }
        }
    }
    Ok(out)
}

impl Sigma {
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        match self {
            Sigma::Linear(m) => ProjPoint::from_vec(m.mul_vec(p.coords())),
            Sigma::TriangleScaling([al, be, ga]) => {
                let [x, y, z] = p.coords();
                if x.is_zero() {
                    ProjPoint::new(x.clone(), y.clone(), al * z)
                } else if y.is_zero() {
                    ProjPoint::new(be * x, y.clone(), z.clone())
                } else if z.is_zero() {
                    ProjPoint::new(x.clone(), ga * y, z.clone())
                } else {
                    Err(Error::SigmaLeavesVariety(p.to_string()))
                }
            }
            Sigma::Twisted(inner, m) => inner.apply(&ProjPoint::from_vec(m.mul_vec(p.coords()))?),
            Sigma::Nodal(v, t) => nc_sigma(*v, t, p),
            Sigma::Curve(g) => {
                let q = g.curve().point(p.clone())?;
                Ok(g.apply(&q)?.point().clone())
            }
            Sigma::FromRelations(r) => r
                .right_partner(p)
                .ok_or_else(|| Error::SigmaLeavesVariety(p.to_string())),
        }
    }
}

impl GeometricPair {
    pub fn new(family: Family, sigma: Sigma) -> Self {
        GeometricPair { family, sigma }
    }

    fn seed(&self) -> Option<&CurvePoint> {
        match &self.sigma {
            Sigma::Curve(g) => Some(g.translation_point()),
            _ => None,
        }
    }

    /// `n` sample points together with their images, both checked to lie on `E`.
    pub fn graph_points(&self, n: usize) -> Result<Vec<(ProjPoint, ProjPoint)>> {
        let pts = sample_points(&self.family, n, self.seed())?;
        pts.into_iter()
            .map(|p| {
                let q = self.sigma.apply(&p)?;
                if !self.family.contains(&q) {
                    return Err(Error::SigmaLeavesVariety(p.to_string()));
                }
                Ok((p, q))
            })
            .collect()
    }
}

fn graph_row(p: &ProjPoint, q: &ProjPoint) -> Vec<FieldElem> {
    let (a, b) = (p.coords(), q.coords());
    (0..9).map(|n| &a[n / 3] * &b[n % 3]).collect()
}

/// `{f in V ⊗ V : f(p, sigma p) = 0}` over `n` sampled points.
pub fn g2_relations(g: &GeometricPair, n: usize) -> Result<RelationSet> {
    let rows: Vec<Vec<FieldElem>> = g
        .graph_points(n)?
        .iter()
        .map(|(p, q)| graph_row(p, q))
        .collect();
    let ns = nullspace(&rows, 9);
    if ns.len() != 3 {
        return Err(Error::WrongDimension { achieved: ns.len() });
    }
    let rels: [Tensor2; 3] = std::array::from_fn(|i| Tensor2::from_vec9(&ns[i]));
    RelationSet::new(rels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub point: String,
    pub check: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Per-point results of checking relations against a pair. Sampled evidence only.
#[derive(Clone, Debug, Serialize)]
pub struct G1Report {
    pub evidence: &'static str,
    pub entries: Vec<CheckEntry>,
}

impl G1Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// At each sampled `p`: the relations vanish at `(p, sigma p)`, `M(p)` has
/// rank 2, and its kernel is spanned by `sigma(p)`.
pub fn g1_check(a: &RelationSet, g: &GeometricPair, n: usize) -> Result<G1Report> {
    let mut entries = Vec::new();
    for (p, q) in g.graph_points(n)? {
        let ps = p.to_string();
        let vanish = a.vanishes_at(p.coords(), q.coords());
        entries.push(CheckEntry {
            point: ps.clone(),
            check: "vanish",
            pass: vanish,
            detail: if vanish {
                format!("all relations vanish at sigma(p) = {q}")
            } else {
                format!("some relation is nonzero at sigma(p) = {q}")
            },
        });
        let m = a.left_matrix_at(p.coords());
        let rows: Vec<Vec<FieldElem>> = m.m.iter().map(|r| r.to_vec()).collect();
        let ker = nullspace(&rows, 3);
        let rank = 3 - ker.len();
        entries.push(CheckEntry {
            point: ps.clone(),
            check: "rank",
            pass: rank == 2,
            detail: if rank == 2 {
                "rank M(p) = 2".into()
            } else {
                format!("NotG1: rank M(p) = {rank}")
            },
        });
        let matches = ker.len() == 1 && {
            let v: Vec3 = [ker[0][0].clone(), ker[0][1].clone(), ker[0][2].clone()];
            proportional(&v, q.coords())
        };
        entries.push(CheckEntry {
            point: ps,
            check: "nullvector",
            pass: matches,
            detail: if matches {
                "kernel of M(p) is spanned by sigma(p)".into()
            } else {
                format!("kernel of M(p) has dimension {} and does not equal sigma(p)", ker.len())
            },
        });
    }
    Ok(G1Report {
        evidence: "sampled",
        entries,
    })
}

/// Solve `F_i S + (F_i S)^T = 0` for the linear `sigma` of a P1/P2/P3 algebra,
/// where `F_i` is the coefficient matrix of relation `i`.
fn linear_sigma_for_p2(r: &RelationSet) -> Result<Mat3> {
    // unknown s[a][b] at index 3a + b; (F S)[j][l] = sum_k F[j][k] s[k][l]
    let mut rows = Vec::new();
    for f in r.relations() {
        for j in 0..3 {
            for l in j..3 {
                let mut row = vec![FieldElem::zero(); 9];
                for k in 0..3 {
                    row[3 * k + l] += &f.t[j][k];
                    row[3 * k + j] += &f.t[l][k];
                }
                rows.push(row);
            }
        }
    }
    let ns = nullspace(&rows, 9);
    if ns.len() != 1 {
        return Err(Error::WrongDimension { achieved: ns.len() });
    }
    let s = Mat3::from_rows(std::array::from_fn(|a| std::array::from_fn(|b| ns[0][3 * a + b].clone())));
    if !s.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(s)
}

/// The geometric pair of a table row, where one is available.
pub fn pair_for(a: &TypedAlgebra) -> Result<GeometricPair> {
    use AlgebraType::*;
    let p = a.params();
    let one = FieldElem::one();
    let from_rel = || -> Result<Sigma> { Ok(Sigma::FromRelations(construct(a)?)) };
    Ok(match a.ty() {
        P1 | P2 | P3 => GeometricPair::new(Family::P2, Sigma::Linear(linear_sigma_for_p2(&construct(a)?)?)),
        S1 => GeometricPair::new(Family::Triangle, Sigma::TriangleScaling([p[0].clone(), p[1].clone(), p[2].clone()])),
        S2 => {
            // S2(a, b) = S1(b, 1/b, -1) twisted by x -> ab y, y -> x, z -> z
            let (al, be) = (&p[0], &p[1]);
            let z = FieldElem::zero;
            let phi = Mat3::from_rows([
                [z(), one.clone(), z()],
                [al * be, z(), z()],
                [z(), z(), one.clone()],
            ]);
            let inner = Sigma::TriangleScaling([be.clone(), be.inv()?, -one.clone()]);
            GeometricPair::new(Family::Triangle, Sigma::Twisted(Box::new(inner), phi.transpose()))
        }
        S3 => {
            // S3(a, b, c) = S1(c, a, b) twisted by x -> z, y -> x, z -> y
            let phi = Mat3::permutation([2, 0, 1]);
            let inner = Sigma::TriangleScaling([p[2].clone(), p[0].clone(), p[1].clone()]);
            GeometricPair::new(Family::Triangle, Sigma::Twisted(Box::new(inner), phi.transpose()))
        }
        Sp1 => {
            let (al, be) = (&p[0], &p[1]);
            let kappa = be.div(&(&(al * &be.square()) - &one))?;
            GeometricPair::new(Family::LineConic2 { kappa }, from_rel()?)
        }
        Sp2 => GeometricPair::new(Family::LineConic2 { kappa: FieldElem::frac(-1, 2) }, from_rel()?),
        T1 | T2 | T3 => GeometricPair::new(Family::ThreeLinesConcurrent, from_rel()?),
        Tp => GeometricPair::new(Family::LineConic1, from_rel()?),
        NC1 => GeometricPair::new(Family::NodalCubic, Sigma::Nodal(NcVariant::Fix, p[0].clone())),
        NC2 => GeometricPair::new(Family::NodalCubic, Sigma::Nodal(NcVariant::Swap, FieldElem::from_int(-1))),
        CC | WL1 | WL2 | WL3 | TL1 | TL2 | TL3 | TL4 => {
            return Err(Error::NoGeometricPair(a.ty().name().to_string()))
        }
    })
}

/// `(E_lambda, sigma_p tau^i)` for an elliptic descriptor.
pub fn pair_for_ec(d: &EcDescriptor) -> Result<GeometricPair> {
    let g = AutElem::new(d.point().clone(), d.exponent() as i64)?;
    Ok(GeometricPair::new(Family::HesseCubic(d.curve().clone()), Sigma::Curve(g)))
}
