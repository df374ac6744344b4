//! Quadratic algebras `T(V)/(R)` with `R ⊂ V ⊗ V` three-dimensional:
//! twisting, change of generators, span comparison and the point-scheme
//! determinant.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::plinalg::{nullspace, rank, tensor_both, tensor_left, Mat3, ProjPoint, Tensor2, Vec3};

const VARS: [char; 3] = ['x', 'y', 'z'];

/// The tensor `sum c * x_j ⊗ x_k` for terms `(c, "jk")`, e.g. `(2, "zy")`.
pub fn quad(terms: &[(FieldElem, &str)]) -> Tensor2 {
    let mut t = Tensor2::zero();
    for (c, mono) in terms {
        let ix: Vec<usize> = mono
            .chars()
            .map(|ch| VARS.iter().position(|&v| v == ch).expect("monomial letters are x, y, z"))
            .collect();
        assert_eq!(ix.len(), 2, "quadratic monomial {mono:?}");
        t.t[ix[0]][ix[1]] += c;
    }
    t
}

fn coeff_text(c: &FieldElem) -> (bool, String) {
    if let Some(r) = c.to_rational() {
        let neg = r < &num_rational::BigRational::from_integer(0.into());
        let mag = FieldElem::from_rational(if neg { -r.clone() } else { r.clone() });
        (neg, mag.to_string())
    } else {
        let s = c.to_string();
        if s.contains(' ') {
            (false, format!("({s})"))
        } else if let Some(rest) = s.strip_prefix('-') {
            (true, rest.to_string())
        } else {
            (false, s)
        }
    }
}

/// Human-readable polynomial text from `(coefficient, monomial)` pairs.
fn poly_text<'a>(terms: impl Iterator<Item = (&'a FieldElem, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = coeff_text(c);
        let body = if mag == "1" {
            mono
        } else if mono.is_empty() {
            mag
        } else {
            format!("{mag}*{mono}")
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Noncommutative quadratic text, `x*y` meaning `x ⊗ y`.
pub fn tensor_text(t: &Tensor2) -> String {
    let terms = (0..9).map(|n| {
        let (j, k) = (n / 3, n % 3);
        (&t.t[j][k], format!("{}*{}", VARS[j], VARS[k]))
    });
    poly_text(terms)
}

/// Three linearly independent quadratic relations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationSet {
    rels: [Tensor2; 3],
}

impl RelationSet {
    pub fn new(rels: [Tensor2; 3]) -> Result<Self> {
        let rows: Vec<Vec<FieldElem>> = rels.iter().map(Tensor2::to_vec9).collect();
        if rank(&rows, 9) != 3 {
            return Err(Error::DependentRelations);
        }
        Ok(RelationSet { rels })
    }

    pub fn relations(&self) -> &[Tensor2; 3] {
        &self.rels
    }

    fn rows(&self) -> Vec<Vec<FieldElem>> {
        self.rels.iter().map(Tensor2::to_vec9).collect()
    }

    /// True when every relation vanishes at `(p, q)`.
    pub fn vanishes_at(&self, p: &Vec3, q: &Vec3) -> bool {
        self.rels.iter().all(|f| f.eval_vec(p, q).is_zero())
    }

    /// `M(p)` with `M(p)[i][k] = sum_j f_i[j][k] p_j`; its kernel is `{q : f_i(p, q) = 0}`.
    pub fn left_matrix_at(&self, p: &Vec3) -> Mat3 {
        Mat3::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|k| {
                let mut acc = FieldElem::zero();
                for (j, pj) in p.iter().enumerate() {
                    if !pj.is_zero() {
                        acc += &(&self.rels[i].t[j][k] * pj);
                    }
                }
                acc
            })
        }))
    }

    /// The points `q` with `f(p, q) = 0` for all relations, when unique.
    pub fn right_partner(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let m = self.left_matrix_at(p.coords());
        let rows: Vec<Vec<FieldElem>> = m.m.iter().map(|r| r.to_vec()).collect();
        let ns = nullspace(&rows, 3);
        if ns.len() != 1 {
            return None;
        }
        let v = &ns[0];
        ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone()).ok()
    }

    pub fn text(&self) -> [String; 3] {
        std::array::from_fn(|i| tensor_text(&self.rels[i]))
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.text();
        write!(f, "{a}, {b}, {c}")
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let maps: Vec<BTreeMap<String, String>> = self
            .rels
            .iter()
            .map(|t| {
                let mut m = BTreeMap::new();
                for j in 0..3 {
                    for k in 0..3 {
                        if !t.t[j][k].is_zero() {
                            m.insert(format!("{}*{}", VARS[j], VARS[k]), t.t[j][k].to_string());
                        }
                    }
                }
                m
            })
            .collect();
        maps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let maps: Vec<BTreeMap<String, String>> = Vec::deserialize(d)?;
        if maps.len() != 3 {
            return Err(D::Error::custom("a relation set has exactly 3 relations"));
        }
        let mut rels: [Tensor2; 3] = std::array::from_fn(|_| Tensor2::zero());
        for (t, m) in rels.iter_mut().zip(maps.iter()) {
            for (key, val) in m {
                let mono: String = key.chars().filter(|c| *c != '*').collect();
                let ix: Vec<Option<usize>> = mono
                    .chars()
                    .map(|ch| VARS.iter().position(|&v| v == ch))
                    .collect();
                let (Some(Some(j)), Some(Some(k)), 2) = (ix.first(), ix.get(1), ix.len()) else {
                    return Err(D::Error::custom(format!("bad monomial {key:?}")));
                };
                let c: FieldElem = val.parse().map_err(D::Error::custom)?;
                t.t[*j][*k] += &c;
            }
        }
        RelationSet::new(rels).map_err(D::Error::custom)
    }
}

/// `A^m`: relations mapped by `m ⊗ id`.
pub fn twist(a: &RelationSet, m: &Mat3) -> Result<RelationSet> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(RelationSet {
        rels: std::array::from_fn(|i| tensor_left(m, &a.rels[i])),
    })
}

/// Relations mapped by `m ⊗ m` (change of generators).
pub fn apply_iso(a: &RelationSet, m: &Mat3) -> Result<RelationSet> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(RelationSet {
        rels: std::array::from_fn(|i| tensor_both(m, &a.rels[i])),
    })
}

/// Equality of the spanned subspaces.
pub fn relations_equal(a: &RelationSet, b: &RelationSet) -> bool {
    let mut rows = a.rows();
    rows.extend(b.rows());
    rank(&rows, 9) == 3
}

/// Coefficients of `x, y, z`.
pub type LinearForm = Vec3;

/// `M(x)` with linear-form entries `M[i][k] = sum_j f_i[j][k] x_j`.
pub fn left_matrix(a: &RelationSet) -> [[LinearForm; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|k| std::array::from_fn(|j| a.rels[i].t[j][k].clone()))
    })
}

type Exps = [u8; 3];

#[derive(Clone, Debug, Default)]
struct Poly(BTreeMap<Exps, FieldElem>);

impl Poly {
    fn linear(l: &LinearForm) -> Poly {
        let mut m = BTreeMap::new();
        for (v, c) in l.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u8; 3];
                e[v] = 1;
                m.insert(e, c.clone());
            }
        }
        Poly(m)
    }

    fn constant(c: FieldElem) -> Poly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Poly(m)
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out: BTreeMap<Exps, FieldElem> = BTreeMap::new();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &o.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *out.entry(e).or_default() += &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly(out)
    }

    fn add_scaled(&mut self, o: &Poly, s: &FieldElem) {
        for (e, c) in &o.0 {
            *self.0.entry(*e).or_default() += &(c * s);
        }
        self.0.retain(|_, c| !c.is_zero());
    }

    fn pow(&self, n: u8) -> Poly {
        let mut acc = Poly::constant(FieldElem::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Degree-lex monomial order used by `CubicForm`.
pub const CUBIC_MONOMIALS: [Exps; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

fn monomial_text(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (v, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(VARS[v].to_string()),
            k => parts.push(format!("{}^{k}", VARS[v])),
        }
    }
    parts.join("*")
}

/// A ternary cubic; compare with `eq_up_to_scalar`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicForm {
    pub coeffs: [FieldElem; 10],
}

impl CubicForm {
    pub fn zero() -> Self {
        CubicForm {
            coeffs: std::array::from_fn(|_| FieldElem::zero()),
        }
    }

    /// Cubic from `(coefficient, letters)` pairs, e.g. `(3, "xxy")` for `3x^2y`.
    pub fn from_monomials(terms: &[(FieldElem, &str)]) -> Self {
        let mut out = Self::zero();
        for (c, mono) in terms {
            let mut e = [0u8; 3];
            for ch in mono.chars() {
                e[VARS.iter().position(|&v| v == ch).expect("x, y or z")] += 1;
            }
            let k = CUBIC_MONOMIALS
                .iter()
                .position(|m| *m == e)
                .expect("cubic monomial");
            out.coeffs[k] += c;
        }
        out
    }

    fn from_poly(p: &Poly) -> Self {
        let mut out = Self::zero();
        for (e, c) in &p.0 {
            let k = CUBIC_MONOMIALS
                .iter()
                .position(|m| m == e)
                .expect("homogeneous of degree 3");
            out.coeffs[k] = c.clone();
        }
        out
    }

    /// The Hesse cubic `x^3 + y^3 + z^3 - 3 lambda xyz`.
    pub fn hesse(lambda: &FieldElem) -> Self {
        let one = FieldElem::one();
        let l3 = -(&FieldElem::from_int(3) * lambda);
        Self::from_monomials(&[
            (one.clone(), "xxx"),
            (one.clone(), "yyy"),
            (one, "zzz"),
            (l3, "xyz"),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn eval(&self, v: &Vec3) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (e, c) in CUBIC_MONOMIALS.iter().zip(self.coeffs.iter()) {
            if c.is_zero() {
                continue;
            }
            let mut t = c.clone();
            for (k, &n) in e.iter().enumerate() {
                for _ in 0..n {
                    t = &t * &v[k];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Equal up to a nonzero scalar; the zero cubic equals only itself.
    pub fn eq_up_to_scalar(&self, other: &CubicForm) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => crate::plinalg::proportional_slices(&self.coeffs, &other.coeffs),
            _ => false,
        }
    }

    /// The cubic `x -> self(m x)`.
    pub fn compose(&self, m: &Mat3) -> CubicForm {
        let subs: Vec<Poly> = (0..3).map(|i| Poly::linear(&m.m[i])).collect();
        let mut out = Poly::default();
        for (e, c) in CUBIC_MONOMIALS.iter().zip(self.coeffs.iter()) {
            if c.is_zero() {
                continue;
            }
            let term = subs[0].pow(e[0]).mul(&subs[1].pow(e[1])).mul(&subs[2].pow(e[2]));
            out.add_scaled(&term, c);
        }
        CubicForm::from_poly(&out)
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = CUBIC_MONOMIALS
            .iter()
            .zip(self.coeffs.iter())
            .map(|(e, c)| (c, monomial_text(e)));
        f.write_str(&poly_text(terms))
    }
}

/// Serialized as `{"x^2*y": "3", ...}` over the nonzero coefficients.
impl Serialize for CubicForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = CUBIC_MONOMIALS
            .iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (monomial_text(e), c.to_string()))
            .collect();
        m.serialize(s)
    }
}

fn parse_monomial(key: &str) -> Option<Exps> {
    let mut e = [0u8; 3];
    for part in key.split('*') {
        let (v, k) = match part.split_once('^') {
            Some((v, k)) => (v, k.parse::<u8>().ok()?),
            None => (part, 1),
        };
        let mut cs = v.chars();
        let (Some(ch), None) = (cs.next(), cs.next()) else {
            return None;
        };
        e[VARS.iter().position(|&c| c == ch)?] += k;
    }
    (e.iter().sum::<u8>() == 3).then_some(e)
}

impl<'de> Deserialize<'de> for CubicForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut out = CubicForm::zero();
        for (key, val) in &m {
            let e = parse_monomial(key).ok_or_else(|| D::Error::custom(format!("bad monomial {key:?}")))?;
            let k = CUBIC_MONOMIALS.iter().position(|m| *m == e).expect("cubic monomial");
            let c: FieldElem = val.parse().map_err(D::Error::custom)?;
            out.coeffs[k] += &c;
        }
        Ok(out)
    }
}

/// `det M(x)`, identically zero exactly when the point scheme is all of `P^2`.
pub fn point_scheme_det(a: &RelationSet) -> CubicForm {
    let m = left_matrix(a);
    let p: Vec<Vec<Poly>> = m
        .iter()
        .map(|row| row.iter().map(Poly::linear).collect())
        .collect();
    let mut det = Poly::default();
    let perms: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    for (s, sign) in perms {
        let term = p[0][s[0]].mul(&p[1][s[1]]).mul(&p[2][s[2]]);
        det.add_scaled(&term, &FieldElem::from_int(sign));
    }
    CubicForm::from_poly(&det)
}
