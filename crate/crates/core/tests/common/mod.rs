//! Test-only helpers: a small parser for noncommutative polynomials so that
//! golden relations can be written as plain text, e.g.
//! `"a(eps x + eps^2 y + z)z + b(x+y+z)y"`.

#![allow(dead_code)]

pub mod checks;
pub mod golden;

use std::collections::BTreeMap;

use asreg::qalg::{CubicForm, RelationSet};
use asreg::{FieldElem, ProjPoint, Tensor2};

type Word = Vec<usize>;

#[derive(Clone, Debug, Default)]
struct NcPoly(BTreeMap<Word, FieldElem>);

impl NcPoly {
    fn scalar(c: FieldElem) -> Self {
        let mut m = BTreeMap::new();
        m.insert(Vec::new(), c);
        NcPoly(m)
    }

    fn generator(g: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(vec![g], FieldElem::one());
        NcPoly(m)
    }

    fn add(&self, o: &NcPoly, sign: i64) -> NcPoly {
        let mut m = self.0.clone();
        let s = FieldElem::from_int(sign);
        for (w, c) in &o.0 {
            let e = m.entry(w.clone()).or_default();
            *e = &*e + &(&s * c);
        }
        m.retain(|_, c| !c.is_zero());
        NcPoly(m)
    }

    fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut m: BTreeMap<Word, FieldElem> = BTreeMap::new();
        for (wa, ca) in &self.0 {
            for (wb, cb) in &o.0 {
                let mut w = wa.clone();
                w.extend(wb);
                let e = m.entry(w).or_default();
                *e = &*e + &(ca * cb);
            }
        }
        m.retain(|_, c| !c.is_zero());
        NcPoly(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Gen(usize),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Vec<Tok> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect::<String>().parse().unwrap()));
        } else if let Some(g) = "xyz".find(c) {
            out.push(Tok::Gen(g));
            i += 1;
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_alphanumeric() && !"xyz".contains(cs[i]) {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else {
            out.push(Tok::Op(c));
            i += 1;
        }
    }
    out
}

struct P<'a> {
    t: Vec<Tok>,
    k: usize,
    env: &'a [(&'a str, FieldElem)],
}

impl P<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.t.get(self.k)
    }

    fn sum(&mut self) -> NcPoly {
        let mut acc = NcPoly::default();
        let mut sign = 1;
        if self.peek() == Some(&Tok::Op('-')) {
            sign = -1;
            self.k += 1;
        } else if self.peek() == Some(&Tok::Op('+')) {
            self.k += 1;
        }
        loop {
            let t = self.product();
            acc = acc.add(&t, sign);
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return acc,
            }
            self.k += 1;
        }
    }

    fn product(&mut self) -> NcPoly {
        let mut acc = self.power();
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.k += 1;
                    acc = acc.mul(&self.power());
                }
                Some(Tok::Op('/')) => {
                    self.k += 1;
                    let d = self.power();
                    let c = d.0.get(&Vec::new()).cloned().expect("scalar divisor");
                    acc = acc.mul(&NcPoly::scalar(c.inv().unwrap()));
                }
                Some(Tok::Num(_)) | Some(Tok::Gen(_)) | Some(Tok::Name(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.power());
                }
                _ => return acc,
            }
        }
    }

    fn power(&mut self) -> NcPoly {
        let base = self.atom();
        if self.peek() == Some(&Tok::Op('^')) {
            self.k += 1;
            let neg = if self.peek() == Some(&Tok::Op('-')) {
                self.k += 1;
                true
            } else {
                false
            };
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                panic!("exponent expected")
            };
            self.k += 1;
            if neg {
                let c = base.0.get(&Vec::new()).cloned().expect("scalar base");
                return NcPoly::scalar(c.pow(-n).unwrap());
            }
            let mut acc = NcPoly::scalar(FieldElem::one());
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            return acc;
        }
        base
    }

    fn atom(&mut self) -> NcPoly {
        let t = self.peek().cloned().expect("unexpected end");
        self.k += 1;
        match t {
            Tok::Num(n) => NcPoly::scalar(FieldElem::from_int(n)),
            Tok::Gen(g) => NcPoly::generator(g),
            Tok::Name(n) => {
                if n == "eps" {
                    return NcPoly::scalar(FieldElem::eps());
                }
                let v = self
                    .env
                    .iter()
                    .find(|(k, _)| *k == n)
                    .unwrap_or_else(|| panic!("unbound name {n}"));
                NcPoly::scalar(v.1.clone())
            }
            Tok::Op('(') => {
                let v = self.sum();
                assert_eq!(self.peek(), Some(&Tok::Op(')')));
                self.k += 1;
                v
            }
            other => panic!("unexpected token {other:?}"),
        }
    }
}

/// Parse a homogeneous quadratic noncommutative polynomial.
pub fn nc(s: &str, env: &[(&str, FieldElem)]) -> Tensor2 {
    let mut p = P { t: lex(s), k: 0, env };
    let poly = p.sum();
    assert_eq!(p.k, p.t.len(), "trailing input in {s:?}");
    let mut t = Tensor2::zero();
    for (w, c) in poly.0 {
        assert_eq!(w.len(), 2, "not quadratic: {s:?}");
        t.t[w[0]][w[1]] = c;
    }
    t
}

/// Parse a commutative cubic; word order is forgotten.
pub fn cubic(s: &str, env: &[(&str, FieldElem)]) -> CubicForm {
    let mut p = P { t: lex(s), k: 0, env };
    let poly = p.sum();
    assert_eq!(p.k, p.t.len(), "trailing input in {s:?}");
    let terms: Vec<(FieldElem, String)> = poly
        .0
        .into_iter()
        .map(|(w, c)| {
            assert_eq!(w.len(), 3, "not cubic: {s:?}");
            (c, w.iter().map(|&g| ['x', 'y', 'z'][g]).collect())
        })
        .collect();
    let refs: Vec<(FieldElem, &str)> = terms.iter().map(|(c, m)| (c.clone(), m.as_str())).collect();
    CubicForm::from_monomials(&refs)
}

/// Three comma-separated relations.
pub fn rels(s: &str, env: &[(&str, FieldElem)]) -> RelationSet {
    let parts: Vec<Tensor2> = s.split(',').map(|r| nc(r, env)).collect();
    let arr: [Tensor2; 3] = parts.try_into().expect("three relations");
    RelationSet::new(arr).expect("independent")
}

pub fn fe(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

pub fn fr(n: i64, d: i64) -> FieldElem {
    FieldElem::frac(n, d)
}

pub fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
    ProjPoint::from_ints(a, b, c).unwrap()
}

/// Floating image of an element under `zeta -> e^{i pi/6}`, `t -> 2^{1/3}`.
pub fn to_complex(e: &FieldElem) -> (f64, f64) {
    use num_traits::ToPrimitive;
    let cbrt2 = 2f64.cbrt();
    let (mut re, mut im) = (0.0, 0.0);
    for b in 0..3 {
        for a in 0..4 {
            let c = e.coeff(a, b).to_f64().unwrap();
            let ang = std::f64::consts::PI / 6.0 * a as f64;
            let scale = c * cbrt2.powi(b as i32);
            re += scale * ang.cos();
            im += scale * ang.sin();
        }
    }
    (re, im)
}
