//! The non-elliptic rows of the classification: defining relations,
//! isomorphism and graded Morita equivalence criteria, and normal forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::plinalg::ProjPoint;
use crate::qalg::{quad, RelationSet};

macro_rules! algebra_types {
    ($( $v:ident => $name:literal, $coarse:ident, $arity:literal; )*) => {
        /// A row of the classification table.
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
        pub enum AlgebraType { $($v,)* }

        impl AlgebraType {
            pub const ALL: [AlgebraType; 22] = [$(AlgebraType::$v,)*];

            pub fn name(self) -> &'static str {
                match self { $(AlgebraType::$v => $name,)* }
            }

            pub fn coarse(self) -> CoarseType {
                match self { $(AlgebraType::$v => CoarseType::$coarse,)* }
            }

            /// Number of parameters of the row.
            pub fn arity(self) -> usize {
                match self { $(AlgebraType::$v => $arity,)* }
            }
        }
    };
}

algebra_types! {
    P1 => "P1", P, 3;
    P2 => "P2", P, 1;
    P3 => "P3", P, 0;
    S1 => "S1", S, 3;
    S2 => "S2", S, 2;
    S3 => "S3", S, 3;
    Sp1 => "S'1", Sp, 2;
    Sp2 => "S'2", Sp, 0;
    T1 => "T1", T, 3;
    T2 => "T2", T, 3;
    T3 => "T3", T, 0;
    Tp => "T'", Tp, 2;
    CC => "CC", CC, 0;
    NC1 => "NC1", NC, 1;
    NC2 => "NC2", NC, 0;
    WL1 => "WL1", WL, 2;
    WL2 => "WL2", WL, 1;
    WL3 => "WL3", WL, 1;
    TL1 => "TL1", TL, 1;
    TL2 => "TL2", TL, 1;
    TL3 => "TL3", TL, 0;
    TL4 => "TL4", TL, 0;
}

/// Rows merged by graded Morita equivalence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoarseType {
    P,
    S,
    Sp,
    T,
    Tp,
    CC,
    NC,
    WL,
    TL,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('′', "'").replace("Sp", "S'").replace("Tp", "T'");
        AlgebraType::ALL
            .iter()
            .copied()
            .find(|t| t.name() == norm)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown algebra type {s:?}")))
    }
}

/// A table row together with its parameters, validated on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypedAlgebra {
    ty: AlgebraType,
    params: Vec<FieldElem>,
}

fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg.to_string()))
    }
}

impl TypedAlgebra {
    pub fn new(ty: AlgebraType, params: Vec<FieldElem>) -> Result<Self> {
        if params.len() != ty.arity() {
            return Err(Error::InvalidParameters(format!(
                "{ty} takes {} parameter(s), got {}",
                ty.arity(),
                params.len()
            )));
        }
        let ok = |e: &FieldElem| !e.is_zero();
        let p = &params;
        use AlgebraType::*;
        match ty {
            P1 => require(ok(&(&(&p[0] * &p[1]) * &p[2])), "P1 requires alpha*beta*gamma != 0")?,
            P2 => require(ok(&p[0]), "P2 requires alpha != 0")?,
            S1 | S3 => {
                let prod = &(&p[0] * &p[1]) * &p[2];
                require(
                    ok(&prod) && !prod.is_one(),
                    &format!("{} requires alpha*beta*gamma != 0, 1", ty.name()),
                )?
            }
            S2 => require(ok(&(&p[0] * &p[1])), "S2 requires alpha*beta != 0")?,
            Sp1 => {
                let v = &p[0] * &p[1].square();
                require(ok(&v) && !v.is_one(), "S'1 requires alpha*beta^2 != 0, 1")?
            }
            T1 | T2 => require(
                ok(&(&(&p[0] + &p[1]) + &p[2])),
                &format!("{} requires alpha+beta+gamma != 0", ty.name()),
            )?,
            Tp => require(ok(&(&p[0] + &(&fe(2) * &p[1]))), "T' requires alpha+2*beta != 0")?,
            NC1 => require(
                ok(&p[0]) && !p[0].cube().is_one(),
                "NC1 requires alpha*(alpha^3-1) != 0",
            )?,
            WL1 => require(ok(&p[0]) && !p[0].is_one(), "WL1 requires alpha != 0, 1")?,
            TL1 => require(ok(&p[0]), "TL1 requires alpha != 0")?,
            _ => {}
        }
        Ok(TypedAlgebra { ty, params })
    }

    /// Convenience constructor from integer parameters.
    pub fn ints(ty: AlgebraType, params: &[i64]) -> Result<Self> {
        Self::new(ty, params.iter().map(|&n| fe(n)).collect())
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn params(&self) -> &[FieldElem] {
        &self.params
    }
}

impl fmt::Display for TypedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            return write!(f, "{}", self.ty);
        }
        let ps: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.ty, ps.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct RawTyped {
    #[serde(rename = "type")]
    ty: String,
    #[serde(default)]
    params: Vec<String>,
}

impl Serialize for TypedAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTyped {
            ty: self.ty.name().to_string(),
            params: self.params.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypedAlgebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawTyped::deserialize(d)?;
        let ty: AlgebraType = raw.ty.parse().map_err(D::Error::custom)?;
        let params = raw
            .params
            .iter()
            .map(|s| s.parse::<FieldElem>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        TypedAlgebra::new(ty, params).map_err(D::Error::custom)
    }
}

/// The row's three defining relations with parameters substituted.
pub fn construct(a: &TypedAlgebra) -> Result<RelationSet> {
    use AlgebraType::*;
    let p = &a.params;
    let one = fe(1);
    let m1 = fe(-1);
    let neg = |e: &FieldElem| -e;
    let rels = match a.ty {
        P1 => {
            let (al, be, ga) = (&p[0], &p[1], &p[2]);
            [
                quad(&[(al.clone(), "xy"), (neg(be), "yx")]),
                quad(&[(be.clone(), "yz"), (neg(ga), "zy")]),
                quad(&[(ga.clone(), "zx"), (neg(al), "xz")]),
            ]
        }
        P2 => {
            let al = &p[0];
            [
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx"), (one.clone(), "yy")]),
                quad(&[(one.clone(), "xz"), (neg(al), "zx"), (al.clone(), "zy")]),
                quad(&[(one.clone(), "yz"), (neg(al), "zy")]),
            ]
        }
        P3 => [
            quad(&[(one.clone(), "xy"), (m1.clone(), "yx"), (one.clone(), "yy"), (m1.clone(), "zx")]),
            quad(&[(one.clone(), "xz"), (one.clone(), "yz"), (m1.clone(), "zx")]),
            quad(&[(one.clone(), "zy"), (m1.clone(), "yz"), (m1.clone(), "zz")]),
        ],
        S1 => [
            quad(&[(one.clone(), "yz"), (neg(&p[0]), "zy")]),
            quad(&[(one.clone(), "zx"), (neg(&p[1]), "xz")]),
            quad(&[(one.clone(), "xy"), (neg(&p[2]), "yx")]),
        ],
        S2 => {
            let (al, be) = (&p[0], &p[1]);
            [
                quad(&[(one.clone(), "zx"), (neg(al), "yz")]),
                quad(&[(one.clone(), "xz"), (neg(be), "zy")]),
                quad(&[(one.clone(), "xx"), (al * be, "yy")]),
            ]
        }
        S3 => [
            quad(&[(one.clone(), "yx"), (neg(&p[0]), "zz")]),
            quad(&[(one.clone(), "zy"), (neg(&p[1]), "xx")]),
            quad(&[(one.clone(), "xz"), (neg(&p[2]), "yy")]),
        ],
        Sp1 => {
            let (al, be) = (&p[0], &p[1]);
            [
                quad(&[(one.clone(), "xy"), (neg(be), "yx")]),
                quad(&[(one.clone(), "xx"), (one.clone(), "yz"), (neg(al), "zy")]),
                quad(&[(one.clone(), "zx"), (neg(be), "xz")]),
            ]
        }
        Sp2 => [
            quad(&[(one.clone(), "xy"), (m1.clone(), "zx")]),
            quad(&[(one.clone(), "yx"), (m1.clone(), "xz")]),
            quad(&[(one.clone(), "xx"), (one.clone(), "yy"), (one.clone(), "zz")]),
        ],
        T1 => {
            let (al, be, ga) = (&p[0], &p[1], &p[2]);
            [
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx")]),
                quad(&[
                    (one.clone(), "xz"),
                    (m1.clone(), "zx"),
                    (neg(be), "xx"),
                    (be + ga, "yx"),
                ]),
                quad(&[
                    (one.clone(), "yz"),
                    (m1.clone(), "zy"),
                    (neg(al), "yy"),
                    (al + ga, "xy"),
                ]),
            ]
        }
        T2 => {
            let (al, be, ga) = (&p[0], &p[1], &p[2]);
            [
                quad(&[(one.clone(), "xx"), (m1.clone(), "yy")]),
                quad(&[
                    (one.clone(), "xz"),
                    (m1.clone(), "zy"),
                    (neg(be), "xy"),
                    (be + ga, "yy"),
                ]),
                quad(&[
                    (one.clone(), "yz"),
                    (m1.clone(), "zx"),
                    (neg(al), "yx"),
                    (al + ga, "xx"),
                ]),
            ]
        }
        T3 => [
            quad(&[(one.clone(), "xx"), (m1.clone(), "xy"), (one.clone(), "yy")]),
            quad(&[(one.clone(), "xz"), (one.clone(), "zy")]),
            quad(&[(one.clone(), "yx"), (m1.clone(), "yz"), (one.clone(), "zx"), (m1.clone(), "zy")]),
        ],
        Tp => {
            let (al, be) = (&p[0], &p[1]);
            let s = al + be;
            [
                quad(&[
                    (al.clone(), "xx"),
                    (be * &s, "xy"),
                    (m1.clone(), "xz"),
                    (one.clone(), "zx"),
                    (neg(&s), "zy"),
                ]),
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx"), (neg(be), "yy")]),
                quad(&[
                    (&fe(2) * be, "xy"),
                    (neg(&be.square()), "yy"),
                    (one.clone(), "yz"),
                    (m1.clone(), "zy"),
                ]),
            ]
        }
        CC => [
            quad(&[(fe(-3), "xx"), (fe(-2), "xy"), (one.clone(), "xz"), (m1.clone(), "zx"), (fe(2), "zy")]),
            quad(&[(m1.clone(), "xy"), (one.clone(), "yx"), (one.clone(), "yy")]),
            quad(&[(fe(3), "xx"), (one.clone(), "yy"), (one.clone(), "yz"), (m1.clone(), "zy")]),
        ],
        NC1 => {
            let al = &p[0];
            let c = (&al.cube() - &one).div(al)?;
            [
                quad(&[(one.clone(), "xy"), (neg(al), "yx")]),
                quad(&[(c.clone(), "xx"), (al.clone(), "zy"), (m1.clone(), "yz")]),
                quad(&[(c, "yy"), (al.clone(), "xz"), (m1.clone(), "zx")]),
            ]
        }
        NC2 => [
            quad(&[(one.clone(), "xz"), (fe(-2), "yx"), (one.clone(), "zy")]),
            quad(&[(one.clone(), "zx"), (fe(-2), "xy"), (one.clone(), "yz")]),
            quad(&[(one.clone(), "yy"), (one.clone(), "xx")]),
        ],
        WL1 => {
            let (al, ga) = (&p[0], &p[1]);
            [
                quad(&[(al.clone(), "xy"), (m1.clone(), "yx")]),
                quad(&[(al.clone(), "xz"), (neg(ga), "yx"), (m1.clone(), "zx")]),
                quad(&[(one.clone(), "zy"), (m1.clone(), "yz"), (&one + ga, "yy")]),
            ]
        }
        WL2 => {
            let ga = &p[0];
            [
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx")]),
                quad(&[(one.clone(), "xz"), (neg(ga), "yx"), (m1.clone(), "zx")]),
                quad(&[(one.clone(), "zy"), (m1.clone(), "yz"), (&one + ga, "yy")]),
            ]
        }
        WL3 => {
            let ga = &p[0];
            [
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx")]),
                quad(&[
                    (one.clone(), "xz"),
                    (m1.clone(), "xx"),
                    (neg(ga), "yx"),
                    (m1.clone(), "zx"),
                ]),
                quad(&[
                    (one.clone(), "xy"),
                    (one.clone(), "zy"),
                    (m1.clone(), "yz"),
                    (&one + ga, "yy"),
                ]),
            ]
        }
        TL1 => {
            let al = &p[0];
            let ai = al.inv()?;
            [
                quad(&[(one.clone(), "xy"), (neg(al), "yx")]),
                quad(&[(one.clone(), "xz"), (neg(&ai), "zx")]),
                quad(&[(ai, "zy"), (neg(al), "yz"), (one.clone(), "xx")]),
            ]
        }
        TL2 => {
            let be = &p[0];
            [
                quad(&[(one.clone(), "xy"), (m1.clone(), "yx"), (neg(be), "xx")]),
                quad(&[(one.clone(), "xz"), (m1.clone(), "zx"), (m1.clone(), "yx")]),
                quad(&[
                    (one.clone(), "zy"),
                    (m1.clone(), "yz"),
                    (neg(be), "xz"),
                    (one.clone(), "xx"),
                    (one.clone(), "yy"),
                ]),
            ]
        }
        TL3 => [
            quad(&[(one.clone(), "xy"), (one.clone(), "yx")]),
            quad(&[(one.clone(), "xz"), (one.clone(), "zx"), (m1.clone(), "yx")]),
            quad(&[(one.clone(), "zy"), (m1.clone(), "yz"), (m1.clone(), "xx"), (m1.clone(), "yy")]),
        ],
        TL4 => [
            quad(&[(one.clone(), "xy"), (one.clone(), "yx")]),
            quad(&[(one.clone(), "xz"), (m1.clone(), "zx"), (m1.clone(), "xx")]),
            quad(&[(one.clone(), "zy"), (m1.clone(), "yz"), (one.clone(), "xy"), (one, "xx")]),
        ],
    };
    RelationSet::new(rels)
}

/// `(a0 : a1 : ...) = (b0 : b1 : ...)` projectively.
fn proj_eq(a: &[FieldElem], b: &[FieldElem]) -> bool {
    crate::plinalg::proportional_slices(a, b)
}

fn permutations3(v: &[FieldElem]) -> Vec<[FieldElem; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS
        .iter()
        .map(|p| [v[p[0]].clone(), v[p[1]].clone(), v[p[2]].clone()])
        .collect()
}

/// The six parameter triples isomorphic to `S1(a, b, c)`.
pub fn s1_iso_orbit(p: &[FieldElem]) -> Result<Vec<[FieldElem; 3]>> {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    let (ai, bi, ci) = (a.inv()?, b.inv()?, c.inv()?);
    Ok(vec![
        [a.clone(), b.clone(), c.clone()],
        [b.clone(), c.clone(), a.clone()],
        [c.clone(), a.clone(), b.clone()],
        [ai.clone(), ci.clone(), bi.clone()],
        [bi.clone(), ai.clone(), ci.clone()],
        [ci, bi, ai],
    ])
}

fn plus_minus_inverse(a: &FieldElem, b: &FieldElem) -> bool {
    a == b || (!b.is_zero() && (a * b).is_one())
}

/// Graded isomorphism between two table algebras.
pub fn iso_decide(a: &TypedAlgebra, b: &TypedAlgebra) -> Result<bool> {
    use AlgebraType::*;
    if a.ty != b.ty {
        return Ok(false);
    }
    let (p, q) = (&a.params, &b.params);
    Ok(match a.ty {
        P1 | T1 => permutations3(p).iter().any(|perm| proj_eq(q, perm)),
        P2 | WL1 | WL2 | WL3 => p == q,
        S1 => s1_iso_orbit(p)?.iter().any(|t| t.as_slice() == q.as_slice()),
        S2 | Tp => proj_eq(p, q),
        S3 => &(&p[0] * &p[1]) * &p[2] == &(&q[0] * &q[1]) * &q[2],
        Sp1 => p == q || ((&p[0] * &q[0]).is_one() && (&p[1] * &q[1]).is_one()),
        T2 => proj_eq(&[&p[0] + &p[1], p[2].clone()], &[&q[0] + &q[1], q[2].clone()]),
        NC1 | TL1 => plus_minus_inverse(&p[0], &q[0]),
        TL2 => p[0] == q[0] || p[0] == -&q[0],
        P3 | Sp2 | T3 | CC | NC2 | TL3 | TL4 => true,
    })
}

/// The scalar whose value up to inversion classifies the S, S' and NC
/// Morita classes; `None` for classes with a single Morita class.
pub fn morita_invariant(a: &TypedAlgebra) -> Option<FieldElem> {
    use AlgebraType::*;
    let p = &a.params;
    match a.ty {
        S1 | S3 => Some(&(&p[0] * &p[1]) * &p[2]),
        // S2(a, b) is a Zhang twist of S1(b, 1/b, -1)
        S2 => Some(fe(-1)),
        Sp1 => Some(&p[0] * &p[1].square()),
        // S'2 is a Zhang twist of S'1(-1, 1)
        Sp2 => Some(fe(-1)),
        NC1 => Some(p[0].cube()),
        // NC2 is a Zhang twist of NC1(-1)
        NC2 => Some(fe(-1)),
        _ => None,
    }
}

/// Graded Morita equivalence between two table algebras.
pub fn morita_decide(a: &TypedAlgebra, b: &TypedAlgebra) -> Result<bool> {
    if a.ty.coarse() != b.ty.coarse() {
        return Ok(false);
    }
    Ok(match (morita_invariant(a), morita_invariant(b)) {
        (Some(x), Some(y)) => plus_minus_inverse(&x, &y),
        _ => true,
    })
}

/// A fixed representative of the Morita class of `a`.
pub fn morita_normal_form(a: &TypedAlgebra) -> Result<TypedAlgebra> {
    use AlgebraType::*;
    match a.ty.coarse() {
        CoarseType::P => TypedAlgebra::ints(P1, &[1, 1, 1]),
        CoarseType::S => {
            let inv = morita_invariant(a).expect("S rows carry an invariant");
            TypedAlgebra::new(S1, vec![inv, fe(1), fe(1)])
        }
        CoarseType::Sp => {
            let inv = morita_invariant(a).expect("S' rows carry an invariant");
            TypedAlgebra::new(Sp1, vec![inv, fe(1)])
        }
        CoarseType::T => TypedAlgebra::ints(T1, &[1, 1, -1]),
        CoarseType::Tp => TypedAlgebra::ints(Tp, &[1, 0]),
        CoarseType::CC => TypedAlgebra::ints(CC, &[]),
        CoarseType::NC => match a.ty {
            NC1 => Ok(a.clone()),
            _ => TypedAlgebra::ints(NC1, &[-1]),
        },
        CoarseType::WL => TypedAlgebra::ints(WL1, &[-1, 0]),
        CoarseType::TL => TypedAlgebra::ints(TL1, &[1]),
    }
}

/// `x^3 + y^3 + xyz`, the nodal cubic with node `(0:0:1)`.
pub fn nodal_cubic_at(p: &ProjPoint) -> FieldElem {
    let [x, y, z] = p.coords();
    &(&x.cube() + &y.cube()) + &(&(x * y) * z)
}

/// Normalization `P^1 -> V(x^3 + y^3 + xyz)`, `(a:b) -> (a^2 b : a b^2 : -a^3 - b^3)`.
pub fn nc_parametrize(a: &FieldElem, b: &FieldElem) -> Result<ProjPoint> {
    ProjPoint::new(
        &a.square() * b,
        a * &b.square(),
        -(&a.cube() + &b.cube()),
    )
}

/// Which lift of an automorphism of the nodal cubic to `P^1`:
/// `Fix` fixes both branches at the node, `Swap` exchanges them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NcVariant {
    Fix,
    Swap,
}

/// The automorphism of the nodal cubic:
/// `Fix`: `(a xy : a^2 y^2 : (a^3 - 1) x^2 + a^3 yz)`;
/// `Swap`: `(b y^2 : b^2 xy : (1 - b^3) x^2 + yz)`.
pub fn nc_sigma(variant: NcVariant, param: &FieldElem, p: &ProjPoint) -> Result<ProjPoint> {
    let c3 = param.cube();
    if param.is_zero() || c3.is_one() {
        return Err(Error::InvalidParameters(
            "nodal automorphism parameter must satisfy t^3 != 0, 1".into(),
        ));
    }
    if !nodal_cubic_at(p).is_zero() {
        return Err(Error::NotOnCurve(p.to_string()));
    }
    let [x, y, z] = p.coords();
    let one = FieldElem::one();
    let v = match variant {
        NcVariant::Fix => [
            &(param * x) * y,
            &param.square() * &y.square(),
            &(&(&c3 - &one) * &x.square()) + &(&c3 * &(y * z)),
        ],
        NcVariant::Swap => [
            param * &y.square(),
            &(&param.square() * x) * y,
            &(&(&one - &c3) * &x.square()) + &(y * z),
        ],
    };
    match ProjPoint::from_vec(v) {
        Ok(q) => Ok(q),
        // the only base point of the formula is the node, which every automorphism fixes
        Err(Error::ZeroVector) => Ok(p.clone()),
        Err(e) => Err(e),
    }
}
