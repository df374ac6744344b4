//! Algebras attached to elliptic curves: Sklyanin relations, their twists
//! by powers of `tau`, and the isomorphism / Morita criteria, which reduce
//! to membership in finite orbits of at most 54 points.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::hesse::{f_set, CurvePoint, HesseCurve};
use crate::plinalg::ProjPoint;
use crate::qalg::{quad, twist, RelationSet};

/// `a yz + b zy + c x^2, a zx + b xz + c y^2, a xy + b yx + c z^2`.
pub fn sklyanin(p: &ProjPoint) -> Result<RelationSet> {
    let [a, b, c] = p.coords();
    if (&(a * b) * c).is_zero() {
        return Err(Error::TorsionPoint(p.to_string()));
    }
    RelationSet::new([
        quad(&[(a.clone(), "yz"), (b.clone(), "zy"), (c.clone(), "xx")]),
        quad(&[(a.clone(), "zx"), (b.clone(), "xz"), (c.clone(), "yy")]),
        quad(&[(a.clone(), "xy"), (b.clone(), "yx"), (c.clone(), "zz")]),
    ])
}

/// The algebra `A(E_lambda, sigma_p tau^i)`, with `lambda` determined by `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EcDescriptor {
    point: CurvePoint,
    i: usize,
}

impl EcDescriptor {
    pub fn new(p: &ProjPoint, i: i64) -> Result<Self> {
        let (curve, point) = HesseCurve::through(p)?;
        Self::on_curve(&curve, point.point(), i)
    }

    /// Descriptor on an existing curve object; `p` must lie on it.
    pub fn on_curve(curve: &HesseCurve, p: &ProjPoint, i: i64) -> Result<Self> {
        let point = curve.point(p.clone())?;
        if point.is_torsion3() {
            return Err(Error::TorsionPoint(p.to_string()));
        }
        curve.tau()?;
        let d = curve.d() as i64;
        Ok(EcDescriptor {
            point,
            i: i.rem_euclid(d) as usize,
        })
    }

    pub fn point(&self) -> &CurvePoint {
        &self.point
    }

    pub fn exponent(&self) -> usize {
        self.i
    }

    pub fn curve(&self) -> &HesseCurve {
        self.point.curve()
    }

    pub fn lambda(&self) -> &FieldElem {
        self.curve().lambda()
    }
}

#[derive(Serialize, Deserialize)]
struct RawEc {
    #[serde(rename = "type")]
    ty: String,
    point: [FieldElem; 3],
    #[serde(default)]
    i: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regularity: Option<String>,
}

impl Serialize for EcDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawEc {
            ty: "EC".into(),
            point: self.point.point().coords().clone(),
            i: self.i as i64,
            // these algebras need not be AS-regular; that is not decided here
            regularity: Some("undecided".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EcDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawEc::deserialize(d)?;
        if raw.ty != "EC" {
            return Err(D::Error::custom(format!("expected type EC, got {}", raw.ty)));
        }
        let p = ProjPoint::from_vec(raw.point).map_err(D::Error::custom)?;
        EcDescriptor::new(&p, raw.i).map_err(D::Error::custom)
    }
}

/// `sklyanin(p)` twisted by `tau^i`.
pub fn construct_ec(d: &EcDescriptor) -> Result<RelationSet> {
    let base = sklyanin(d.point.point())?;
    twist(&base, d.curve().tau_pow(d.i as i64)?)
}

/// Membership data returned when two descriptors are related.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitWitness {
    /// `l` with `q = tau^l(p) + r`.
    pub l: usize,
    /// Torsion label of `r`.
    pub r: usize,
}

fn same_curve(a: &EcDescriptor, b: &EcDescriptor) -> Result<()> {
    if a.curve() == b.curve() {
        Ok(())
    } else {
        Err(Error::CurveMismatch)
    }
}

/// `{tau^l(p) + r : l in Z_d, r in rs}` with the witnessing `(l, r)`.
fn orbit_with(p: &CurvePoint, rs: &[CurvePoint]) -> Result<Vec<(CurvePoint, OrbitWitness)>> {
    let curve = p.curve();
    let mut out: Vec<(CurvePoint, OrbitWitness)> = Vec::new();
    for l in 0..curve.d() {
        let t = p.tau(l as i64)?;
        for r in rs {
            let q = t.add(r)?;
            if out.iter().all(|(x, _)| x != &q) {
                let w = OrbitWitness {
                    l,
                    r: curve.torsion_index(r.point()).expect("r is 3-torsion"),
                };
                out.push((q, w));
            }
        }
    }
    Ok(out)
}

/// Translation points `q` with `A(E, sigma_q tau^i)` isomorphic to `d`.
pub fn iso_orbit(d: &EcDescriptor) -> Result<Vec<(CurvePoint, OrbitWitness)>> {
    orbit_with(&d.point, &f_set(d.curve(), d.i as i64)?)
}

/// `{tau^l(p) + r : r in E[3]}`, the points allowed by the Morita criterion.
pub fn morita_orbit(d: &EcDescriptor) -> Result<Vec<(CurvePoint, OrbitWitness)>> {
    orbit_with(&d.point, &d.curve().torsion_points())
}

/// Isomorphism: `i = j` and `q = tau^l(p) + r` with `r` in `F_i`.
pub fn iso_ec_witness(a: &EcDescriptor, b: &EcDescriptor) -> Result<Option<OrbitWitness>> {
    same_curve(a, b)?;
    if a.i != b.i {
        return Ok(None);
    }
    Ok(iso_orbit(a)?
        .into_iter()
        .find(|(q, _)| q == &b.point)
        .map(|(_, w)| w))
}

pub fn iso_ec(a: &EcDescriptor, b: &EcDescriptor) -> Result<bool> {
    Ok(iso_ec_witness(a, b)?.is_some())
}

/// Graded Morita equivalence: `p - tau^(j-i)(p)` is 3-torsion and
/// `q = tau^l(p) + r` for some 3-torsion `r`.
pub fn morita_ec(a: &EcDescriptor, b: &EcDescriptor) -> Result<bool> {
    same_curve(a, b)?;
    let shift = b.i as i64 - a.i as i64;
    let p = &a.point;
    if !p.sub(&p.tau(shift)?)?.is_torsion3() {
        return Ok(false);
    }
    Ok(morita_orbit(a)?.iter().any(|(q, _)| q == &b.point))
}

/// Whether `sigma_p` gives an elliptic-type algebra, i.e. `p` is not 3-torsion.
pub fn is_type_ec(p: &CurvePoint) -> bool {
    !p.is_torsion3()
}
