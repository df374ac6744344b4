//! A single entry point over table algebras and elliptic-type algebras.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ec::{self, EcDescriptor};
use crate::error::{Error, Result};
use crate::qalg::RelationSet;
use crate::tables::{self, TypedAlgebra};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraDescriptor {
    Table(TypedAlgebra),
    Ec(EcDescriptor),
}

impl AlgebraDescriptor {
    pub fn construct(&self) -> Result<RelationSet> {
        match self {
            AlgebraDescriptor::Table(t) => tables::construct(t),
            AlgebraDescriptor::Ec(d) => ec::construct_ec(d),
        }
    }

    /// Graded isomorphism. Table and elliptic algebras are never isomorphic.
    pub fn iso(&self, other: &AlgebraDescriptor) -> Result<bool> {
        use AlgebraDescriptor::*;
        match (self, other) {
            (Table(a), Table(b)) => tables::iso_decide(a, b),
            (Ec(a), Ec(b)) => ec::iso_ec(a, b),
            _ => Ok(false),
        }
    }

    /// Graded Morita equivalence. Point schemes of different type are never equivalent.
    pub fn morita(&self, other: &AlgebraDescriptor) -> Result<bool> {
        use AlgebraDescriptor::*;
        match (self, other) {
            (Table(a), Table(b)) => tables::morita_decide(a, b),
            (Ec(a), Ec(b)) => ec::morita_ec(a, b),
            _ => Ok(false),
        }
    }

    pub fn morita_normal_form(&self) -> Result<AlgebraDescriptor> {
        match self {
            AlgebraDescriptor::Table(t) => Ok(AlgebraDescriptor::Table(tables::morita_normal_form(t)?)),
            AlgebraDescriptor::Ec(_) => Err(Error::InvalidParameters(
                "no Morita normal form is defined for type EC".into(),
            )),
        }
    }
}

impl Serialize for AlgebraDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AlgebraDescriptor::Table(t) => t.serialize(s),
            AlgebraDescriptor::Ec(d) => d.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AlgebraDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        let is_ec = v.get("type").and_then(|t| t.as_str()) == Some("EC");
        if is_ec {
            EcDescriptor::deserialize(v)
                .map(AlgebraDescriptor::Ec)
                .map_err(D::Error::custom)
        } else {
            TypedAlgebra::deserialize(v)
                .map(AlgebraDescriptor::Table)
                .map_err(D::Error::custom)
        }
    }
}

/// Parse a descriptor, keeping the library error kind.
pub fn parse_descriptor(json: &str) -> Result<AlgebraDescriptor> {
    let v: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let ty = v
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| Error::Parse("descriptor needs a string \"type\" field".into()))?;
    let strings = |key: &str| -> Result<Vec<String>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(serde_json::Value::Array(xs)) => xs
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Parse(format!("{key} entries must be strings"))),
                })
                .collect(),
            Some(_) => Err(Error::Parse(format!("{key} must be an array"))),
        }
    };
    let elems = |ss: Vec<String>| -> Result<Vec<crate::FieldElem>> {
        ss.iter().map(|s| s.parse()).collect()
    };
    if ty == "EC" {
        let pt = elems(strings("point")?)?;
        let [a, b, c]: [crate::FieldElem; 3] = pt
            .try_into()
            .map_err(|_| Error::Parse("point needs 3 coordinates".into()))?;
        let i = match v.get("i") {
            None => 0,
            Some(x) => x
                .as_i64()
                .ok_or_else(|| Error::Parse("i must be an integer".into()))?,
        };
        let p = crate::ProjPoint::new(a, b, c)?;
        Ok(AlgebraDescriptor::Ec(EcDescriptor::new(&p, i)?))
    } else {
        let t: tables::AlgebraType = ty.parse()?;
        Ok(AlgebraDescriptor::Table(TypedAlgebra::new(
            t,
            elems(strings("params")?)?,
        )?))
    }
}
