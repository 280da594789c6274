//! Curve models over F_{q^m}: the projective line and Weierstrass cubics.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower};

/// Point scans on Weierstrass curves visit all of F_{q^m}², so they are capped.
pub const WEIERSTRASS_MAX_ORDER: u64 = 1 << 12;

/// A rational point. On the projective line `y` is `None`.
///
/// Derived ordering puts affine points first, sorted by `x` then `y`
/// (element index order), and the point at infinity last.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalPoint {
    Affine { x: Fe, y: Option<Fe> },
    Infinity,
}

impl RationalPoint {
    pub fn affine_line(x: Fe) -> Self {
        RationalPoint::Affine { x, y: None }
    }

    pub fn affine(x: Fe, y: Fe) -> Self {
        RationalPoint::Affine { x, y: Some(y) }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPoint::Affine { x, y: None } => write!(f, "{x}"),
            RationalPoint::Affine { x, y: Some(y) } => write!(f, "({x},{y})"),
            RationalPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass {
    pub a1: Fe,
    pub a3: Fe,
    pub a2: Fe,
    pub a4: Fe,
    pub a6: Fe,
}

impl Weierstrass {
    /// `x³ + a2·x² + a4·x + a6`.
    pub fn rhs(&self, x: Fe, f: &FieldTower) -> Fe {
        let x2 = f.mul(x, x);
        let mut v = f.mul(x2, x);
        v = f.add(v, f.mul(self.a2, x2));
        v = f.add(v, f.mul(self.a4, x));
        f.add(v, self.a6)
    }

    /// `a1·x + a3`, the linear coefficient of `y`.
    pub fn y_coeff(&self, x: Fe, f: &FieldTower) -> Fe {
        f.add(f.mul(self.a1, x), self.a3)
    }

    /// Left side minus right side at an affine point.
    pub fn equation(&self, x: Fe, y: Fe, f: &FieldTower) -> Fe {
        let lhs = f.add(f.mul(y, y), f.mul(self.y_coeff(x, f), y));
        f.sub(lhs, self.rhs(x, f))
    }

    /// Partial derivatives `(∂/∂x, ∂/∂y)` of the affine equation.
    fn gradient(&self, x: Fe, y: Fe, f: &FieldTower) -> (Fe, Fe) {
        let three_x2 = f.mul(f.from_int(3), f.mul(x, x));
        let two_a2_x = f.mul(f.from_int(2), f.mul(self.a2, x));
        let dx = f.sub(f.sub(f.sub(f.mul(self.a1, y), three_x2), two_a2_x), self.a4);
        let dy = f.add(f.mul(f.from_int(2), y), self.y_coeff(x, f));
        (dx, dy)
    }

    /// Exhaustive scan for a singular point.
    ///
    /// The point at infinity is always smooth, and a singular point of a
    /// cubic is unique and Galois-fixed, hence rational.
    pub fn is_nonsingular(&self, f: &FieldTower) -> bool {
        !f.elements().any(|x| {
            f.elements().any(|y| {
                self.equation(x, y, f).is_zero() && self.gradient(x, y, f) == (Fe::ZERO, Fe::ZERO)
            })
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    ProjectiveLine,
    Weierstrass(Weierstrass),
}

/// A smooth projective curve of genus 0 or 1 with its field tower.
#[derive(Clone, Debug)]
pub struct Curve {
    tower: Arc<FieldTower>,
    kind: CurveKind,
}

impl Curve {
    pub fn projective_line(tower: Arc<FieldTower>) -> Self {
        Curve {
            tower,
            kind: CurveKind::ProjectiveLine,
        }
    }

    pub fn weierstrass(tower: Arc<FieldTower>, w: Weierstrass) -> Result<Self> {
        if tower.order() > WEIERSTRASS_MAX_ORDER {
            return Err(Error::CurveTooLarge(tower.order()));
        }
        if !w.is_nonsingular(&tower) {
            return Err(Error::SingularCurve);
        }
        Ok(Curve {
            tower,
            kind: CurveKind::Weierstrass(w),
        })
    }

    /// Parses `p1` or `weierstrass:a1,a3,a2,a4,a6` (element indices).
    pub fn parse(spec: &str, tower: Arc<FieldTower>) -> Result<Self> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("p1") {
            return Ok(Self::projective_line(tower));
        }
        let Some(rest) = spec.strip_prefix("weierstrass:") else {
            return Err(Error::Parse(format!("unknown curve `{spec}`")));
        };
        let coeffs = rest
            .split(',')
            .map(|s| {
                let idx = s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
                tower.element(idx).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<Fe>>>()?;
        let [a1, a3, a2, a4, a6] = coeffs[..] else {
            return Err(Error::Parse("weierstrass needs five coefficients".into()));
        };
        Self::weierstrass(tower, Weierstrass { a1, a3, a2, a4, a6 })
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn tower_arc(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn is_projective_line(&self) -> bool {
        matches!(self.kind, CurveKind::ProjectiveLine)
    }

    pub fn genus(&self) -> i64 {
        match self.kind {
            CurveKind::ProjectiveLine => 0,
            CurveKind::Weierstrass(_) => 1,
        }
    }

    pub fn is_nonsingular(&self) -> bool {
        match &self.kind {
            CurveKind::ProjectiveLine => true,
            CurveKind::Weierstrass(w) => w.is_nonsingular(&self.tower),
        }
    }

    /// Whether `pt` is a point of this curve model.
    pub fn contains(&self, pt: &RationalPoint) -> bool {
        match (&self.kind, pt) {
            (_, RationalPoint::Infinity) => true,
            (CurveKind::ProjectiveLine, RationalPoint::Affine { y, .. }) => y.is_none(),
            (CurveKind::Weierstrass(w), RationalPoint::Affine { x, y: Some(y) }) => {
                w.equation(*x, *y, &self.tower).is_zero()
            }
            (CurveKind::Weierstrass(_), RationalPoint::Affine { y: None, .. }) => false,
        }
    }

    /// All F_{q^m}-rational points: affine points in index order, then infinity.
    pub fn rational_points(&self) -> Vec<RationalPoint> {
        let f = &self.tower;
        let mut pts: Vec<RationalPoint> = match &self.kind {
            CurveKind::ProjectiveLine => f.elements().map(RationalPoint::affine_line).collect(),
            CurveKind::Weierstrass(w) => f
                .elements()
                .flat_map(|x| {
                    let b = w.y_coeff(x, f);
                    let c = w.rhs(x, f);
                    f.elements()
                        .filter(move |&y| f.sub(f.add(f.mul(y, y), f.mul(b, y)), c).is_zero())
                        .map(move |y| RationalPoint::affine(x, y))
                })
                .collect(),
        };
        pts.push(RationalPoint::Infinity);
        pts
    }

    pub fn point_count(&self) -> u64 {
        self.rational_points().len() as u64
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CurveKind::ProjectiveLine => write!(f, "p1"),
            CurveKind::Weierstrass(w) => {
                write!(
                    f,
                    "weierstrass:{},{},{},{},{}",
                    w.a1, w.a3, w.a2, w.a4, w.a6
                )
            }
        }
    }
}

/// `|N - (q^m + 1)| ≤ 2g·q^{m/2}`, decided as `(N - q^m - 1)² ≤ 4g²·q^m`.
pub fn hasse_weil_check(n_points: u64, genus: i64, tower: &FieldTower) -> bool {
    let big_q = tower.order() as i128;
    let dev = n_points as i128 - big_q - 1;
    dev * dev <= 4 * (genus as i128) * (genus as i128) * big_q
}
