//! Divisors on the supported curves.
//!
//! A divisor is a finite map from places to nonzero integers. On the
//! projective line a place is either a rational point, the point at
//! infinity, or a monic irreducible polynomial of degree at least two;
//! Weierstrass divisors use rational points only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::curve::{Curve, CurveKind, RationalPoint};
use crate::error::{Error, Result};
use crate::ff::FieldTower;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// An affine rational point.
    Point(RationalPoint),
    /// A closed point of degree ≥ 2 on the projective line.
    FinitePoly(Poly),
    /// The point at infinity (P_∞ on the line, O on a Weierstrass curve).
    Infinity,
}

impl Place {
    pub fn point(pt: RationalPoint) -> Place {
        match pt {
            RationalPoint::Infinity => Place::Infinity,
            affine => Place::Point(affine),
        }
    }

    /// The place of the projective line cut out by a monic irreducible
    /// polynomial. Linear polynomials become rational points.
    pub fn from_poly(poly: Poly, f: &FieldTower) -> Result<Place> {
        if !poly.is_monic() || !poly.is_irreducible(f) {
            return Err(Error::InvalidPlace(format!(
                "{} is not monic irreducible",
                poly.to_index_list()
            )));
        }
        if poly.degree() == Some(1) {
            return Ok(Place::Point(RationalPoint::affine_line(
                f.neg(poly.coeff(0)),
            )));
        }
        Ok(Place::FinitePoly(poly))
    }

    pub fn degree(&self) -> i64 {
        match self {
            Place::FinitePoly(p) => p.degree_i64(),
            _ => 1,
        }
    }

    /// The monic irreducible polynomial of a finite place on the line.
    pub fn local_poly(&self, f: &FieldTower) -> Option<Poly> {
        match self {
            Place::Point(RationalPoint::Affine { x, y: None }) => Some(Poly::linear(*x, f)),
            Place::FinitePoly(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// Whether the rational point `pt` is this place.
    pub fn is_point(&self, pt: &RationalPoint) -> bool {
        match (self, pt) {
            (Place::Infinity, RationalPoint::Infinity) => true,
            (Place::Point(a), b) => a == b,
            _ => false,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Point(RationalPoint::Affine { x, y: None }) => write!(f, "x={x}"),
            Place::Point(RationalPoint::Affine { x, y: Some(y) }) => write!(f, "pt={x}:{y}"),
            Place::Point(RationalPoint::Infinity) => write!(f, "inf"),
            Place::FinitePoly(p) => write!(f, "poly={}", p.to_index_list()),
        }
    }
}

/// `Σ n_Q Q` with every stored `n_Q ≠ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

/// `G = G⁺ + G⁻` together with δ = [G⁻ = 0].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub plus: Divisor,
    pub minus: Divisor,
    pub delta: i64,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(place: Place, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_term(place, n);
        d
    }

    /// `k·P_∞`.
    pub fn at_infinity(k: i64) -> Self {
        Self::single(Place::Infinity, k)
    }

    pub fn add_term(&mut self, place: Place, n: i64) {
        let e = self.terms.entry(place).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.terms.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.terms.iter().map(|(p, &n)| (p, n))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&n| n > 0)
    }

    /// Whether the rational point lies in the support.
    pub fn support_contains(&self, pt: &RationalPoint) -> bool {
        self.terms.keys().any(|pl| pl.is_point(pt))
    }

    /// `Σ n_Q · deg Q`.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &n)| n * p.degree()).sum()
    }

    pub fn split(&self) -> Split {
        let filter = |pos: bool| Divisor {
            terms: self
                .terms
                .iter()
                .filter(|(_, &n)| (n > 0) == pos)
                .map(|(p, &n)| (p.clone(), n))
                .collect(),
        };
        let minus = filter(false);
        let delta = minus.is_zero() as i64;
        Split {
            plus: filter(true),
            minus,
            delta,
        }
    }

    /// `[G/q]`: positive coefficients floor-divided by q, negative ones kept.
    pub fn floor_div_q(&self, q: u64) -> Divisor {
        let q = q as i64;
        Divisor {
            terms: self
                .terms
                .iter()
                .map(|(p, &n)| (p.clone(), if n > 0 { n / q } else { n }))
                .filter(|&(_, n)| n != 0)
                .collect(),
        }
    }

    /// Checks that every place belongs to the curve model.
    pub fn validate(&self, curve: &Curve) -> Result<()> {
        for place in self.terms.keys() {
            let ok = match (curve.kind(), place) {
                (_, Place::Infinity) => true,
                (CurveKind::ProjectiveLine, Place::FinitePoly(_)) => true,
                (CurveKind::Weierstrass(_), Place::FinitePoly(_)) => false,
                (_, Place::Point(pt)) => {
                    !matches!(pt, RationalPoint::Infinity) && curve.contains(pt)
                }
            };
            if !ok {
                return Err(Error::InvalidPlace(format!(
                    "{place} is not a place of {curve}"
                )));
            }
        }
        Ok(())
    }

    /// Parses terms `k*inf`, `k*x=<elt>`, `k*pt=<x>:<y>` and
    /// `k*poly=<c0,c1,…>` joined by `+`/`-`; `0` is the zero divisor.
    pub fn parse(s: &str, curve: &Curve) -> Result<Divisor> {
        let f = curve.tower();
        let s = s.replace('−', "-");
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty divisor".into()));
        }
        let mut d = Divisor::zero();
        if s == "0" {
            return Ok(d);
        }
        let mut sign = 1i64;
        let mut current = String::new();
        let mut terms = Vec::new();
        for ch in s.chars() {
            if ch == '+' || ch == '-' {
                if !current.trim().is_empty() {
                    terms.push((sign, std::mem::take(&mut current)));
                } else if !current.is_empty() || !terms.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        terms.push((sign, current));

        for (sign, term) in terms {
            let term = term.trim();
            let (k, place) = match term.split_once('*') {
                Some((k, rest)) => {
                    let k = k
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?;
                    (k, rest.trim())
                }
                None => (1, term),
            };
            let place = parse_place(place, f)?;
            d.add_term(place, sign * k);
        }
        d.validate(curve)?;
        Ok(d)
    }
}

fn parse_index(s: &str, f: &FieldTower) -> Result<crate::ff::Fe> {
    let idx = s
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad element `{s}`")))?;
    f.element(idx).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_place(s: &str, f: &FieldTower) -> Result<Place> {
    if s == "inf" {
        return Ok(Place::Infinity);
    }
    if let Some(v) = s.strip_prefix("x=") {
        return Ok(Place::Point(RationalPoint::affine_line(parse_index(v, f)?)));
    }
    if let Some(v) = s.strip_prefix("pt=") {
        let (x, y) = v
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("point `{v}` needs x:y")))?;
        return Ok(Place::Point(RationalPoint::affine(
            parse_index(x, f)?,
            parse_index(y, f)?,
        )));
    }
    if let Some(v) = s.strip_prefix("poly=") {
        let coeffs = v
            .split(',')
            .map(|c| parse_index(c, f))
            .collect::<Result<Vec<_>>>()?;
        return Place::from_poly(Poly::new(coeffs), f);
    }
    Err(Error::Parse(format!("unknown place `{s}`")))
}

impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in other.terms() {
            out.add_term(p.clone(), n);
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (place, n)) in self.terms().enumerate() {
            match (i, n < 0) {
                (0, _) => write!(f, "{n}*{place}")?,
                (_, true) => write!(f, "-{}*{place}", -n)?,
                (_, false) => write!(f, "+{n}*{place}")?,
            }
        }
        Ok(())
    }
}
