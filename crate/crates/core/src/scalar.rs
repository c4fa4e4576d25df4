//! Exact scalars: rationals, optionally extended by one square root.
//!
//! A [`Scalar`] is `a + b·√d` with `a, b ∈ ℚ` and `d` a square-free integer
//! other than `0` and `1`. Rational values carry `d = 0`. Operands with
//! different nonzero `d` may not be mixed; doing so is an invariant violation
//! and panics. Code that adjoins square roots goes through
//! [`Scalar::sqrt_in`], which reports a conflicting extension as an error
//! instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    re: Rational,
    ir: Rational,
    /// 0 when `ir == 0`.
    d: i64,
}

fn merge_ext(a: i64, b: i64) -> i64 {
    match (a, b) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic extensions sqrt({x}) and sqrt({y})"),
    }
}

impl Scalar {
    pub fn rational(q: Rational) -> Self {
        Scalar {
            re: q,
            ir: Rational::zero(),
            d: 0,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::rational(Rational::new(p.into(), q.into()))
    }

    /// `a + b·√d`. `d` must be square-free and different from 0 and 1
    /// whenever `b != 0`.
    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if d == 0 || d == 1 || squarefree_part(&BigInt::from(d))? != BigInt::from(d) {
            return Err(Error::InvalidPoint(format!(
                "extension discriminant {d} is not square-free"
            )));
        }
        Ok(Scalar { re: a, ir: b, d })
    }

    /// Adjoined root `√d`.
    pub fn sqrt_of(d: i64) -> Result<Self> {
        Self::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn ir(&self) -> &Rational {
        &self.ir
    }

    /// Extension discriminant, `None` for rationals.
    pub fn ext(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            ir: -self.ir.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.ir * &self.ir * Rational::from_integer(self.d.into())
    }

    /// Square root, adjoining at most one new square root. `ctx` is the
    /// extension already in use by the surrounding computation.
    pub fn sqrt_in(&self, ctx: Option<i64>) -> Result<Scalar> {
        let ctx = match (ctx, self.ext()) {
            (Some(a), Some(b)) if a != b => return Err(Error::NestedExtension { have: a, need: b }),
            (a, b) => a.or(b),
        };
        let root = if self.is_rational() {
            sqrt_rational(&self.re)?
        } else {
            sqrt_quadratic(self)?
        };
        match (ctx, root.ext()) {
            (Some(a), Some(b)) if a != b => Err(Error::NestedExtension { have: a, need: b }),
            _ => Ok(root),
        }
    }

    pub fn sqrt(&self) -> Result<Scalar> {
        self.sqrt_in(None)
    }

    /// Common extension of a collection of scalars.
    pub fn common_ext<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Result<Option<i64>> {
        let mut ext: Option<i64> = None;
        for v in values {
            match (ext, v.ext()) {
                (Some(a), Some(b)) if a != b => return Err(Error::NestedExtension { have: a, need: b }),
                (None, Some(b)) => ext = Some(b),
                _ => {}
            }
        }
        Ok(ext)
    }
}

fn sqrt_rational(q: &Rational) -> Result<Scalar> {
    if q.is_zero() {
        return Ok(Scalar::int(0));
    }
    // q = n/m = n·m / m²; n·m = s²·f with f square-free.
    let nm = q.numer() * q.denom();
    let f = squarefree_part(&nm)?;
    let s2 = &nm / &f;
    let s = s2.sqrt();
    debug_assert_eq!(&s * &s, s2);
    let coeff = Rational::new(s, q.denom().clone());
    if f.is_one() {
        return Ok(Scalar::rational(coeff));
    }
    let d = f
        .to_i64()
        .ok_or_else(|| Error::TooLarge(format!("square-free part {f}")))?;
    Ok(Scalar {
        re: Rational::zero(),
        ir: coeff,
        d,
    })
}

fn rational_square_root(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let m = q.denom().sqrt();
    (&n * &n == *q.numer() && &m * &m == *q.denom()).then(|| Rational::new(n, m))
}

// (p + r√d)² = a + b√d  ⇔  p² + d r² = a, 2pr = b.
fn sqrt_quadratic(x: &Scalar) -> Result<Scalar> {
    let (a, b, d) = (&x.re, &x.ir, x.d);
    let two = Rational::from_integer(2.into());
    let norm = x.norm();
    if let Some(n) = rational_square_root(&norm) {
        for cand in [(a + &n) / &two, (a - &n) / &two] {
            if let Some(p) = rational_square_root(&cand) {
                if p.is_zero() {
                    continue;
                }
                let r = b / (&two * &p);
                let root = Scalar {
                    re: p,
                    ir: r,
                    d,
                };
                if root.clone() * root.clone() == *x {
                    return Ok(root);
                }
            }
        }
        // p = 0: a = d r², b = 0 (excluded since x irrational).
    }
    Err(Error::NonSquareInExtension(d))
}

const TRIAL_LIMIT: u64 = 10_000_000;

/// Square-free part `f` of a nonzero integer `n`, with `n = s²·f` and the
/// sign of `n` kept in `f`.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    let sign = n.sign();
    let mut m = n.abs();
    let mut f = BigInt::one();
    let mut p: u64 = 2;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > m {
            break;
        }
        if p > TRIAL_LIMIT {
            return Err(Error::TooLarge(n.to_string()));
        }
        let mut parity = false;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            parity = !parity;
        }
        if parity {
            f *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // m has at most two prime factors, all larger than p.
    let r = m.sqrt();
    if &r * &r != m {
        f *= m;
    }
    Ok(if sign == Sign::Minus { -f } else { f })
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        let d = merge_ext(self.d, o.d);
        normalize(self.re + o.re, self.ir + o.ir, d)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        let d = merge_ext(self.d, o.d);
        normalize(self.re - o.re, self.ir - o.ir, d)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        let d = merge_ext(self.d, o.d);
        let dq = Rational::from_integer(d.into());
        let re = &self.re * &o.re + &self.ir * &o.ir * dq;
        let ir = &self.re * &o.ir + &self.ir * &o.re;
        normalize(re, ir, d)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            ir: -self.ir,
            d: self.d,
        }
    }
}

fn normalize(re: Rational, ir: Rational, d: i64) -> Scalar {
    if ir.is_zero() {
        Scalar::rational(re)
    } else {
        Scalar { re, ir, d }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::int(0)
    }
    fn one() -> Self {
        Scalar::int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ir.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Field for Scalar {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "division by zero");
        let n = self.norm();
        normalize(&self.re / &n, -&self.ir / &n, self.d)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::rational(q)
    }
}

/// Deterministic total order: lexicographic on `(a, b, d)`. It is not the
/// real order of the field.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.ir.cmp(&other.ir))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.re);
        }
        let b = if self.ir.is_one() {
            String::new()
        } else if (-self.ir.clone()).is_one() {
            "-".to_string()
        } else {
            format!("{}*", self.ir)
        };
        if self.re.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else if self.ir.is_negative() {
            let nb = if (-self.ir.clone()).is_one() {
                String::new()
            } else {
                format!("{}*", -self.ir.clone())
            };
            write!(f, "({} - {nb}sqrt({}))", self.re, self.d)
        } else {
            write!(f, "({} + {b}sqrt({}))", self.re, self.d)
        }
    }
}

/// Rationals serialize as `"p/q"` (or `"p"`), extension elements as
/// `{"a": "p/q", "b": "p/q", "d": d}`.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        if self.is_rational() {
            return s.serialize_str(&self.re.to_string());
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("a", &self.re.to_string())?;
        m.serialize_entry("b", &self.ir.to_string())?;
        m.serialize_entry("d", &self.d)?;
        m.end()
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
    Ext { a: RawRational, b: RawRational, d: i64 },
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

fn parse_rational(r: RawRational) -> std::result::Result<Rational, String> {
    match r {
        RawRational::Int(n) => Ok(Rational::from_integer(n.into())),
        RawRational::Text(t) => t.trim().parse::<Rational>().map_err(|e| format!("bad rational {t:?}: {e}")),
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match RawScalar::deserialize(de)? {
            RawScalar::Int(n) => Scalar::int(n),
            RawScalar::Text(t) => Scalar::rational(parse_rational(RawRational::Text(t)).map_err(D::Error::custom)?),
            RawScalar::Ext { a, b, d } => Scalar::quadratic(
                parse_rational(a).map_err(D::Error::custom)?,
                parse_rational(b).map_err(D::Error::custom)?,
                d,
            )
            .map_err(D::Error::custom)?,
        })
    }
}
