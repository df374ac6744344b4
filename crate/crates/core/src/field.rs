//! Exact arithmetic in the ground field `K = Q(zeta, t)`.
//!
//! `zeta` is a primitive 12th root of unity (minimal polynomial
//! `z^4 - z^2 + 1`) and `t` is the real cube root of 2 (`t^3 = 2`).
//! The field has degree 12 over `Q`; elements are stored as the
//! coefficient vector on the basis `z^a t^b` (`a < 4`, `b < 3`) and are
//! reduced after every operation, so equality is coefficient-wise.
//!
//! `Q(zeta)` already holds `eps = z^2 - 1`, `sqrt3 = 2z - z^3` and
//! `i = z^3`. The cube root of 2 is there so that the `j = 0` Hesse
//! curve `x^3 + y^3 + z^3 = 0` has points outside its 3-torsion.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

const ZDEG: usize = 4;
const TDEG: usize = 3;
const DIM: usize = ZDEG * TDEG;

#[inline]
fn idx(z_pow: usize, t_pow: usize) -> usize {
    z_pow + ZDEG * t_pow
}

/// Element of `K = Q(zeta_12, 2^(1/3))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    c: [Rational; DIM],
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            c: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut e = Self::zero();
        e.c[0] = r;
        e
    }

    /// `n / d` as a field element.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Builds `sum coeffs[a] z^a` (an element of `Q(zeta)`).
    pub fn from_cyclotomic(coeffs: [Rational; ZDEG]) -> Self {
        let mut e = Self::zero();
        for (a, v) in coeffs.into_iter().enumerate() {
            e.c[a] = v;
        }
        e
    }

    /// Builds `sum coeffs[a + 4 b] z^a t^b`.
    pub fn from_coeffs(coeffs: [Rational; DIM]) -> Self {
        FieldElem { c: coeffs }
    }

    /// Coefficient of `z^a t^b`.
    pub fn coeff(&self, z_pow: usize, t_pow: usize) -> &Rational {
        &self.c[idx(z_pow, t_pow)]
    }

    pub fn coeffs(&self) -> &[Rational; DIM] {
        &self.c
    }

    /// The primitive 12th root of unity `zeta`.
    pub fn zeta() -> Self {
        let mut e = Self::zero();
        e.c[idx(1, 0)] = Rational::one();
        e
    }

    /// The real cube root of 2.
    pub fn cbrt2() -> Self {
        let mut e = Self::zero();
        e.c[idx(0, 1)] = Rational::one();
        e
    }

    /// Primitive cube root of unity `eps = zeta^2 - 1`.
    pub fn eps() -> Self {
        let z = Self::zeta();
        &(&z * &z) - &Self::one()
    }

    /// `sqrt3 = 2 zeta - zeta^3`.
    pub fn sqrt3() -> Self {
        let z = Self::zeta();
        let z3 = &(&z * &z) * &z;
        &(&z * &Self::from_int(2)) - &z3
    }

    /// `i = zeta^3`.
    pub fn i() -> Self {
        let z = Self::zeta();
        &(&z * &z) * &z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// True when the element has no `t` component, i.e. lies in `Q(zeta)`.
    pub fn is_cyclotomic(&self) -> bool {
        self.c[ZDEG..].iter().all(Zero::is_zero)
    }

    fn scale(&self, r: &Rational) -> Self {
        FieldElem {
            c: std::array::from_fn(|k| &self.c[k] * r),
        }
    }

    fn t_component(&self, b: usize) -> FieldElem {
        let mut e = Self::zero();
        for a in 0..ZDEG {
            e.c[a] = self.c[idx(a, b)].clone();
        }
        e
    }

    fn with_t_components(parts: [FieldElem; TDEG]) -> FieldElem {
        let mut e = Self::zero();
        for (b, p) in parts.into_iter().enumerate() {
            for a in 0..ZDEG {
                e.c[idx(a, b)] = p.c[a].clone();
            }
        }
        e
    }

    /// Image of a `Q(zeta)` element under `zeta -> zeta^k`, `k` a unit mod 12.
    fn cyclotomic_conjugate(&self, k: u32) -> FieldElem {
        debug_assert!(self.is_cyclotomic());
        let z = Self::zeta();
        let w = z.pow_u(k);
        let mut acc = Self::zero();
        let mut wp = Self::one();
        for a in 0..ZDEG {
            if !self.c[a].is_zero() {
                acc += &wp.scale(&self.c[a]);
            }
            wp = &wp * &w;
        }
        acc
    }

    fn inv_cyclotomic(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // The product of the three non-trivial conjugates is the adjugate;
        // multiplying by `self` lands in Q.
        let adj = &(&self.cyclotomic_conjugate(5) * &self.cyclotomic_conjugate(7))
            * &self.cyclotomic_conjugate(11);
        let norm = self * &adj;
        let n = norm
            .to_rational()
            .expect("norm of a cyclotomic element is rational")
            .clone();
        Ok(adj.scale(&n.recip()))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_cyclotomic() {
            return self.inv_cyclotomic();
        }
        let a0 = self.t_component(0);
        let a1 = self.t_component(1);
        let a2 = self.t_component(2);
        let two = Self::from_int(2);
        // (a0 + a1 t + a2 t^2)^{-1} = adj / N with t^3 = 2.
        let b0 = &(&a0 * &a0) - &(&two * &(&a1 * &a2));
        let b1 = &(&two * &(&a2 * &a2)) - &(&a0 * &a1);
        let b2 = &(&a1 * &a1) - &(&a0 * &a2);
        let norm = &(&a0 * &b0) + &(&two * &(&(&a1 * &b2) + &(&a2 * &b1)));
        let ninv = norm.inv_cyclotomic()?;
        let adj = Self::with_t_components([b0, b1, b2]);
        Ok(&adj * &ninv)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self * &other.inv()?)
    }

    fn pow_u(&self, mut n: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow(&self, n: i64) -> Result<FieldElem> {
        let e = u32::try_from(n.unsigned_abs())
            .map_err(|_| Error::InvalidParameters("exponent too large".into()))?;
        let p = self.pow_u(e);
        if n < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn cube(&self) -> FieldElem {
        &(self * self) * self
    }
}

fn mul_impl(a: &FieldElem, b: &FieldElem) -> FieldElem {
    // Unreduced product: z-degree up to 6, t-degree up to 4.
    let mut acc: [[Rational; 7]; 5] =
        std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (xa, xb) = (i % ZDEG, i / ZDEG);
        for (j, y) in b.c.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let (ya, yb) = (j % ZDEG, j / ZDEG);
            acc[xb + yb][xa + ya] += x * y;
        }
    }
    // z^k = z^(k-2) - z^(k-4) for k >= 4
    for row in acc.iter_mut() {
        for k in (ZDEG..7).rev() {
            let v = std::mem::take(&mut row[k]);
            if !v.is_zero() {
                row[k - 2] += &v;
                row[k - 4] -= &v;
            }
        }
    }
    // t^3 = 2, t^4 = 2t
    let two = Rational::from_integer(BigInt::from(2));
    for k in (TDEG..5).rev() {
        for a in 0..ZDEG {
            let v = std::mem::take(&mut acc[k][a]);
            if !v.is_zero() {
                acc[k - TDEG][a] += &v * &two;
            }
        }
    }
    let mut out = FieldElem::zero();
    for b in 0..TDEG {
        for a in 0..ZDEG {
            out.c[idx(a, b)] = std::mem::take(&mut acc[b][a]);
        }
    }
    out
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        mul_impl(self, rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            c: std::array::from_fn(|k| -&self.c[k]),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::from_rational(r)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_name(z_pow: usize, t_pow: usize) -> String {
    let z = match z_pow {
        0 => String::new(),
        1 => "z".to_string(),
        k => format!("z^{k}"),
    };
    let t = match t_pow {
        0 => String::new(),
        1 => "t".to_string(),
        k => format!("t^{k}"),
    };
    match (z.is_empty(), t.is_empty()) {
        (true, true) => String::new(),
        (false, true) => z,
        (true, false) => t,
        (false, false) => format!("{z}*{t}"),
    }
}

/// Canonical text: `c0 + c1*z + c2*z^2 + c3*z^3`, further terms `c*z^a*t^b`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for t_pow in 0..TDEG {
            for z_pow in 0..ZDEG {
                let c = &self.c[idx(z_pow, t_pow)];
                if c.is_zero() {
                    continue;
                }
                let mono = monomial_name(z_pow, t_pow);
                let mag = c.abs();
                let body = if mono.is_empty() {
                    fmt_rational(&mag)
                } else if mag.is_one() {
                    mono
                } else {
                    format!("{}*{}", fmt_rational(&mag), mono)
                };
                if out.is_empty() {
                    if c.is_negative() {
                        out.push('-');
                    }
                } else if c.is_negative() {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl FromStr for FieldElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod parse {
    //! Recursive-descent parser for field element expressions.
    //!
    //! Grammar: sums and products of rationals and the symbols
    //! `z`/`zeta`, `t`/`cbrt2`, `eps`, `sqrt3`, `i`, with `^` for integer
    //! powers, parentheses and implicit multiplication (`2z`).

    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
    }

    fn lex(s: &str) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let ch = chars[k];
            match ch {
                c if c.is_whitespace() => k += 1,
                '0'..='9' => {
                    let start = k;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    let digits: String = chars[start..k].iter().collect();
                    out.push(Tok::Num(digits.parse().expect("digit run")));
                }
                c if c.is_ascii_alphabetic() => {
                    let start = k;
                    while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_')
                    {
                        k += 1;
                    }
                    out.push(Tok::Ident(chars[start..k].iter().collect()));
                }
                '+' => {
                    out.push(Tok::Plus);
                    k += 1
                }
                '-' | '\u{2212}' => {
                    out.push(Tok::Minus);
                    k += 1
                }
                '*' => {
                    out.push(Tok::Star);
                    k += 1
                }
                '/' => {
                    out.push(Tok::Slash);
                    k += 1
                }
                '^' => {
                    out.push(Tok::Caret);
                    k += 1
                }
                '(' => {
                    out.push(Tok::LParen);
                    k += 1
                }
                ')' => {
                    out.push(Tok::RParen);
                    k += 1
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn next(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).cloned();
            self.pos += 1;
            t
        }

        fn expr(&mut self) -> Result<FieldElem> {
            let mut acc = self.term()?;
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.pos += 1;
                        acc = &acc + &self.term()?;
                    }
                    Some(Tok::Minus) => {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<FieldElem> {
            let mut acc = self.unary()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        acc = &acc * &self.unary()?;
                    }
                    Some(Tok::Slash) => {
                        self.pos += 1;
                        acc = acc.div(&self.unary()?)?;
                    }
                    Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                        acc = &acc * &self.power()?;
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn unary(&mut self) -> Result<FieldElem> {
            match self.peek() {
                Some(Tok::Minus) => {
                    self.pos += 1;
                    Ok(-self.unary()?)
                }
                Some(Tok::Plus) => {
                    self.pos += 1;
                    self.unary()
                }
                _ => self.power(),
            }
        }

        fn power(&mut self) -> Result<FieldElem> {
            let base = self.primary()?;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let e = match self.next() {
                    Some(Tok::Num(n)) => i64::try_from(n)
                        .map_err(|_| Error::Parse("exponent too large".into()))?,
                    other => return Err(Error::Parse(format!("expected exponent, got {other:?}"))),
                };
                return base.pow(if neg { -e } else { e });
            }
            Ok(base)
        }

        fn primary(&mut self) -> Result<FieldElem> {
            match self.next() {
                Some(Tok::Num(n)) => Ok(FieldElem::from_rational(Rational::from_integer(n))),
                Some(Tok::Ident(name)) => match name.as_str() {
                    "z" | "zeta" => Ok(FieldElem::zeta()),
                    "t" | "cbrt2" => Ok(FieldElem::cbrt2()),
                    "eps" => Ok(FieldElem::eps()),
                    "sqrt3" => Ok(FieldElem::sqrt3()),
                    "i" => Ok(FieldElem::i()),
                    other => Err(Error::Parse(format!("unknown symbol {other:?}"))),
                },
                Some(Tok::LParen) => {
                    let v = self.expr()?;
                    match self.next() {
                        Some(Tok::RParen) => Ok(v),
                        _ => Err(Error::Parse("missing ')'".into())),
                    }
                }
                other => Err(Error::Parse(format!("unexpected token {other:?}"))),
            }
        }
    }

    pub(super) fn parse(s: &str) -> Result<FieldElem> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}
