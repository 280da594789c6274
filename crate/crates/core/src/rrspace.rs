//! Rational functions and Riemann–Roch space bases L(G).
//!
//! On the projective line a function is a reduced fraction with monic
//! denominator. On a Weierstrass curve only functions regular away from O
//! are needed; they are stored as `u(x) + v(x)·y`, which is a normal form
//! because `y²` is always rewritten through the curve equation.

use crate::curve::{Curve, CurveKind, RationalPoint, Weierstrass};
use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RationalFunction {
    /// `num / den` on the projective line, `den` monic, `gcd(num, den) = 1`.
    Fraction { num: Poly, den: Poly },
    /// `u(x) + v(x)·y` on a Weierstrass curve.
    Coordinate { u: Poly, v: Poly },
}

impl RationalFunction {
    pub fn fraction(num: Poly, den: Poly, f: &FieldTower) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::polynomial(Poly::zero()));
        }
        let g = num.gcd(&den, f);
        let num = num.div_exact(&g, f).expect("gcd divides");
        let den = den.div_exact(&g, f).expect("gcd divides");
        let lead = f.inv(den.leading())?;
        Ok(RationalFunction::Fraction {
            num: num.scale(lead, f),
            den: den.scale(lead, f),
        })
    }

    pub fn polynomial(num: Poly) -> Self {
        RationalFunction::Fraction {
            num,
            den: Poly::one(),
        }
    }

    pub fn coordinate(u: Poly, v: Poly) -> Self {
        RationalFunction::Coordinate { u, v }
    }

    /// The constant function `c` in the normal form used on `curve`.
    pub fn constant(c: Fe, curve: &Curve) -> Self {
        if curve.is_projective_line() {
            Self::polynomial(Poly::constant(c))
        } else {
            Self::coordinate(Poly::constant(c), Poly::zero())
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RationalFunction::Fraction { num, .. } => num.is_zero(),
            RationalFunction::Coordinate { u, v } => u.is_zero() && v.is_zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            RationalFunction::Fraction { num, den } => den.is_one() && num.degree_i64() <= 0,
            RationalFunction::Coordinate { u, v } => v.is_zero() && u.degree_i64() <= 0,
        }
    }

    /// The numerator when this is a polynomial on the line.
    pub fn as_polynomial(&self) -> Option<&Poly> {
        match self {
            RationalFunction::Fraction { num, den } if den.is_one() => Some(num),
            _ => None,
        }
    }

    pub fn evaluate(&self, pt: &RationalPoint, curve: &Curve) -> Result<Fe> {
        let f = curve.tower();
        match (self, pt) {
            (RationalFunction::Fraction { num, den }, RationalPoint::Affine { x, y: None }) => {
                let d = den.eval(*x, f);
                if d.is_zero() {
                    return Err(Error::PoleAtPoint);
                }
                f.div(num.eval(*x, f), d)
            }
            (RationalFunction::Fraction { num, den }, RationalPoint::Infinity) => {
                match num.degree_i64().cmp(&den.degree_i64()) {
                    std::cmp::Ordering::Less => Ok(Fe::ZERO),
                    std::cmp::Ordering::Equal => f.div(num.leading(), den.leading()),
                    std::cmp::Ordering::Greater => Err(Error::PoleAtPoint),
                }
            }
            (RationalFunction::Coordinate { u, v }, RationalPoint::Affine { x, y: Some(y) }) => {
                Ok(f.add(u.eval(*x, f), f.mul(v.eval(*x, f), *y)))
            }
            (RationalFunction::Coordinate { u, .. }, RationalPoint::Infinity) => {
                if self.is_constant() {
                    Ok(u.coeff(0))
                } else {
                    Err(Error::PoleAtPoint)
                }
            }
            _ => Err(Error::Unsupported(format!("evaluating {self:?} at {pt}"))),
        }
    }

    pub fn add(&self, other: &Self, f: &FieldTower) -> Result<Self> {
        match (self, other) {
            (
                RationalFunction::Fraction { num: n1, den: d1 },
                RationalFunction::Fraction { num: n2, den: d2 },
            ) => Self::fraction(n1.mul(d2, f).add(&n2.mul(d1, f), f), d1.mul(d2, f), f),
            (
                RationalFunction::Coordinate { u: u1, v: v1 },
                RationalFunction::Coordinate { u: u2, v: v2 },
            ) => Ok(Self::coordinate(u1.add(u2, f), v1.add(v2, f))),
            _ => Err(Error::Unsupported("mixing function models".into())),
        }
    }

    pub fn neg(&self, f: &FieldTower) -> Self {
        match self {
            RationalFunction::Fraction { num, den } => RationalFunction::Fraction {
                num: num.neg(f),
                den: den.clone(),
            },
            RationalFunction::Coordinate { u, v } => Self::coordinate(u.neg(f), v.neg(f)),
        }
    }

    pub fn sub(&self, other: &Self, f: &FieldTower) -> Result<Self> {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Fe, f: &FieldTower) -> Self {
        match self {
            RationalFunction::Fraction { num, den } => {
                Self::fraction(num.scale(c, f), den.clone(), f).expect("denominator is nonzero")
            }
            RationalFunction::Coordinate { u, v } => Self::coordinate(u.scale(c, f), v.scale(c, f)),
        }
    }

    pub fn mul(&self, other: &Self, curve: &Curve) -> Result<Self> {
        let f = curve.tower();
        match (self, other, curve.kind()) {
            (
                RationalFunction::Fraction { num: n1, den: d1 },
                RationalFunction::Fraction { num: n2, den: d2 },
                CurveKind::ProjectiveLine,
            ) => Self::fraction(n1.mul(n2, f), d1.mul(d2, f), f),
            (
                RationalFunction::Coordinate { u: u1, v: v1 },
                RationalFunction::Coordinate { u: u2, v: v2 },
                CurveKind::Weierstrass(w),
            ) => {
                // y² = F(x) - (a1 x + a3) y
                let (big_f, lin) = curve_polys(w);
                let vv = v1.mul(v2, f);
                let u = u1.mul(u2, f).add(&vv.mul(&big_f, f), f);
                let v = u1
                    .mul(v2, f)
                    .add(&u2.mul(v1, f), f)
                    .sub(&vv.mul(&lin, f), f);
                Ok(Self::coordinate(u, v))
            }
            _ => Err(Error::Unsupported(
                "function does not match the curve model".into(),
            )),
        }
    }

    pub fn pow(&self, mut e: u64, curve: &Curve) -> Result<Self> {
        let mut acc = Self::constant(Fe::ONE, curve);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, curve)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, curve)?;
            }
        }
        Ok(acc)
    }

    /// `h^q - h`.
    pub fn artin_schreier(&self, curve: &Curve) -> Result<Self> {
        self.pow(curve.tower().q(), curve)?.sub(self, curve.tower())
    }

    /// Pole order at O of a Weierstrass coordinate function (`x` has a
    /// double pole, `y` a triple one).
    pub fn pole_order_at_origin(&self) -> Option<i64> {
        match self {
            RationalFunction::Coordinate { u, v } => {
                let from_u = if u.is_zero() { 0 } else { 2 * u.degree_i64() };
                let from_v = if v.is_zero() {
                    0
                } else {
                    2 * v.degree_i64() + 3
                };
                Some(from_u.max(from_v))
            }
            _ => None,
        }
    }
}

/// `(x³ + a2 x² + a4 x + a6, a1 x + a3)` as polynomials in `x`.
fn curve_polys(w: &Weierstrass) -> (Poly, Poly) {
    (
        Poly::new(vec![w.a6, w.a4, w.a2, Fe::ONE]),
        Poly::new(vec![w.a3, w.a1]),
    )
}

/// A basis of L(G).
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub functions: Vec<RationalFunction>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.functions.len()
    }
}

/// `(D, N, n_∞)` with `D = Π_{n_Q>0} p_Q^{n_Q}` and `N = Π_{n_Q<0} p_Q^{-n_Q}`
/// over the finite places of a divisor on the line.
fn line_products(g: &Divisor, f: &FieldTower) -> (Poly, Poly, i64) {
    let mut den = Poly::one();
    let mut num = Poly::one();
    let mut n_inf = 0;
    for (place, n) in g.terms() {
        match place.local_poly(f) {
            Some(p) if n > 0 => den = den.mul(&p.pow(n as u64, f), f),
            Some(p) => num = num.mul(&p.pow((-n) as u64, f), f),
            None => n_inf = n,
        }
    }
    (den, num, n_inf)
}

/// A basis of L(G), ordered by increasing pole order at infinity.
pub fn rr_basis(curve: &Curve, g: &Divisor) -> Result<RRBasis> {
    g.validate(curve)?;
    let f = curve.tower();
    let functions = match curve.kind() {
        CurveKind::ProjectiveLine => {
            let (den, num, n_inf) = line_products(g, f);
            let bound = n_inf + den.degree_i64() - num.degree_i64();
            (0..=bound)
                .map(|j| {
                    let zj = Poly::monomial(Fe::ONE, j as usize);
                    RationalFunction::fraction(zj.mul(&num, f), den.clone(), f)
                })
                .collect::<Result<Vec<_>>>()?
        }
        CurveKind::Weierstrass(_) => {
            if g.terms().any(|(p, _)| !p.is_infinity()) {
                return Err(Error::UnsupportedDivisor(format!(
                    "{g}: only multiples of O are supported on Weierstrass curves"
                )));
            }
            let k = g.coeff(&Place::Infinity);
            // pole orders 0, 2, 3, 4, 5, …: x^i has 2i, x^i·y has 2i + 3
            (0..=k)
                .filter(|&order| order != 1)
                .map(|order| {
                    if order % 2 == 0 {
                        RationalFunction::coordinate(
                            Poly::monomial(Fe::ONE, (order / 2) as usize),
                            Poly::zero(),
                        )
                    } else {
                        RationalFunction::coordinate(
                            Poly::zero(),
                            Poly::monomial(Fe::ONE, ((order - 3) / 2) as usize),
                        )
                    }
                })
                .collect()
        }
    };
    Ok(RRBasis {
        divisor: g.clone(),
        functions,
    })
}

/// Decides `(f) + G ≥ 0` by exact divisibility.
pub fn verify_membership(func: &RationalFunction, g: &Divisor, curve: &Curve) -> bool {
    if func.is_zero() {
        return true;
    }
    let f = curve.tower();
    match func {
        RationalFunction::Fraction { num, den } => {
            if !curve.is_projective_line() {
                return false;
            }
            let (d, n, n_inf) = line_products(g, f);
            den.divides(&d, f) && n.divides(num, f) && num.degree_i64() - den.degree_i64() <= n_inf
        }
        RationalFunction::Coordinate { .. } => {
            if g.terms().any(|(p, _)| !p.is_infinity()) {
                return false;
            }
            func.pole_order_at_origin().unwrap_or(0) <= g.coeff(&Place::Infinity)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ff::build_tower;

    fn line(p: u64, r: u32, m: u32) -> Curve {
        Curve::projective_line(Arc::new(build_tower(p, r, m).unwrap()))
    }

    fn quadratic_without_roots(f: &FieldTower) -> Poly {
        f.elements()
            .map(|a| Poly::new(vec![a, Fe::ONE, Fe::ONE]))
            .chain(f.elements().map(|a| Poly::new(vec![a, Fe::ZERO, Fe::ONE])))
            .find(|g| g.is_irreducible(f))
            .unwrap()
    }

    #[test]
    fn basis_of_two_points_at_infinity() {
        let c = line(2, 1, 2);
        let b = rr_basis(&c, &Divisor::at_infinity(2)).unwrap();
        let expect: Vec<RationalFunction> = (0..3)
            .map(|j| RationalFunction::polynomial(Poly::monomial(Fe::ONE, j)))
            .collect();
        assert_eq!(b.functions, expect);
    }

    #[test]
    fn negative_degree_is_empty() {
        let c = line(2, 1, 2);
        let g = Divisor::parse("-1*x=1", &c).unwrap();
        assert_eq!(rr_basis(&c, &g).unwrap().dim(), 0);
    }

    #[test]
    fn goppa_divisor_basis() {
        let c = line(2, 1, 4);
        let f = c.tower();
        for d in 2..=3 {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(d as u64);
            let g = Poly::random_irreducible(d, f, &mut rng);
            let mut div = Divisor::single(Place::from_poly(g.clone(), f).unwrap(), 1);
            div.add_term(Place::Infinity, -1);
            let b = rr_basis(&c, &div).unwrap();
            assert_eq!(b.dim() as i64, div.degree() + 1);
            assert_eq!(b.dim(), d);
            for (j, func) in b.functions.iter().enumerate() {
                assert!(verify_membership(func, &div, &c));
                let RationalFunction::Fraction { num, den } = func else {
                    unreachable!()
                };
                assert_eq!(num, &Poly::monomial(Fe::ONE, j));
                assert_eq!(den, &g);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let c = line(2, 1, 4);
        let f = c.tower();
        let two_inf = Divisor::at_infinity(2);
        let z = |k| RationalFunction::polynomial(Poly::monomial(Fe::ONE, k));
        assert!(verify_membership(&z(2), &two_inf, &c));
        assert!(!verify_membership(&z(3), &two_inf, &c));

        let g = quadratic_without_roots(f);
        let mut div = Divisor::single(Place::from_poly(g.clone(), f).unwrap(), 1);
        div.add_term(Place::Infinity, -1);
        let z_over_g = RationalFunction::fraction(Poly::x(), g.clone(), f).unwrap();
        assert!(verify_membership(&z_over_g, &div, &c));
        let z2_over_g = RationalFunction::fraction(Poly::monomial(Fe::ONE, 2), g, f).unwrap();
        assert!(!verify_membership(&z2_over_g, &div, &c));
    }

    #[test]
    fn evaluation_examples() {
        let c = line(2, 1, 2);
        let f = c.tower();
        let w = Fe(2);
        let z = RationalFunction::polynomial(Poly::x());
        assert_eq!(z.evaluate(&RationalPoint::affine_line(w), &c).unwrap(), w);
        assert_eq!(
            z.evaluate(&RationalPoint::Infinity, &c),
            Err(Error::PoleAtPoint)
        );
        let g = Poly::new(vec![Fe::ONE, Fe::ONE, Fe::ONE]);
        let inv_g = RationalFunction::fraction(Poly::one(), g.clone(), f).unwrap();
        let x = Fe(1);
        let expect = f.inv(g.eval(x, f)).unwrap();
        assert_eq!(
            inv_g.evaluate(&RationalPoint::affine_line(x), &c).unwrap(),
            expect
        );
        assert_eq!(
            inv_g.evaluate(&RationalPoint::Infinity, &c).unwrap(),
            Fe::ZERO
        );
        // 1 + 1 = 0 in characteristic 2: z/(z+w) at w is a pole
        let h = RationalFunction::fraction(Poly::x(), Poly::linear(w, f), f).unwrap();
        assert_eq!(
            h.evaluate(&RationalPoint::affine_line(w), &c),
            Err(Error::PoleAtPoint)
        );
        assert_eq!(h.evaluate(&RationalPoint::Infinity, &c).unwrap(), Fe::ONE);
    }

    #[test]
    fn fraction_normal_form() {
        let c = line(3, 1, 2);
        let f = c.tower();
        let a = Poly::linear(Fe(2), f);
        let b = Poly::linear(Fe(5), f);
        let num = a.mul(&b, f).scale(Fe(4), f);
        let den = a.scale(Fe(7), f);
        let r = RationalFunction::fraction(num, den, f).unwrap();
        let RationalFunction::Fraction { den, .. } = &r else {
            unreachable!()
        };
        assert!(den.is_one());
        assert!(RationalFunction::fraction(Poly::one(), Poly::zero(), f).is_err());
    }

    #[test]
    fn weierstrass_gap_basis() {
        let t = Arc::new(build_tower(2, 1, 3).unwrap());
        let e = Curve::parse("weierstrass:1,0,0,0,1", t).unwrap();
        for k in 0..8 {
            let b = rr_basis(&e, &Divisor::at_infinity(k)).unwrap();
            assert_eq!(b.dim() as i64, if k == 0 { 1 } else { k });
            let orders: Vec<i64> = b
                .functions
                .iter()
                .map(|h| h.pole_order_at_origin().unwrap())
                .collect();
            assert!(orders.windows(2).all(|w| w[0] < w[1]));
            assert!(b
                .functions
                .iter()
                .all(|h| verify_membership(h, &Divisor::at_infinity(k), &e)));
        }
        let pt = e.rational_points()[0];
        let mut g = Divisor::at_infinity(3);
        g.add_term(Place::point(pt), 1);
        assert!(matches!(
            rr_basis(&e, &g),
            Err(Error::UnsupportedDivisor(_))
        ));
    }

    #[test]
    fn weierstrass_product_reduces_y_squared() {
        let t = Arc::new(build_tower(2, 1, 3).unwrap());
        let e = Curve::parse("weierstrass:1,0,0,0,1", t).unwrap();
        let y = RationalFunction::coordinate(Poly::zero(), Poly::one());
        let y2 = y.mul(&y, &e).unwrap();
        assert_eq!(y2.pole_order_at_origin(), Some(6));
        for pt in e
            .rational_points()
            .iter()
            .filter(|p| **p != RationalPoint::Infinity)
        {
            let yv = y.evaluate(pt, &e).unwrap();
            let f = e.tower();
            assert_eq!(y2.evaluate(pt, &e).unwrap(), f.mul(yv, yv));
        }
    }
}
