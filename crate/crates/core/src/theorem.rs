//! Hypotheses, predicted dimensions and end-to-end verification of the
//! trace-code dimension formula `m·(deg G − deg[G/q]) + δ`.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::code::{build_code, d_max, delsarte_check, kernel_and_spaces, prop1_dim_e};
use crate::curve::Curve;
use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::ff::FieldTower;
use crate::poly::Poly;

/// Hypothesis flags for one instance.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    /// `2g − 2 ≤ deg[G/q]`.
    pub h0: bool,
    /// `#Supp(G⁻) ≤ 1`.
    pub c1: bool,
    /// The point-count inequality.
    pub c2: bool,
    /// `h0` holds with equality, where Riemann–Roch need not be exact.
    pub boundary: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.h0 && self.c1 && self.c2
    }
}

/// `N − S > (A + S)·√Q` with `A = 2g − 2 + deg G⁺`, `S = #Supp(G⁺)`,
/// decided in integers.
pub fn point_count_condition(n_points: u64, genus: i64, g: &Divisor, q_big: u64) -> bool {
    let split = g.split();
    let lhs = n_points as i128 - split.plus.support_len() as i128;
    let rhs =
        2 * genus as i128 - 2 + split.plus.degree() as i128 + split.plus.support_len() as i128;
    if lhs <= 0 {
        return false;
    }
    if rhs < 0 {
        return true;
    }
    lhs * lhs > rhs * rhs * q_big as i128
}

pub fn check_hypotheses(curve: &Curve, g: &Divisor) -> Hypotheses {
    let f = curve.tower();
    let genus = curve.genus();
    let floor_deg = g.floor_div_q(f.q()).degree();
    let h0 = 2 * genus - 2 <= floor_deg;
    let c1 = g.split().minus.support_len() <= 1;
    let c2 = point_count_condition(curve.point_count(), genus, g, f.order());
    Hypotheses {
        h0,
        c1,
        c2,
        boundary: h0 && floor_deg == 2 * genus - 2,
    }
}

/// `m·(deg G − deg[G/q]) + δ`.
pub fn predicted_dimension(g: &Divisor, f: &FieldTower) -> i64 {
    let floor = g.floor_div_q(f.q());
    f.m() as i64 * (g.degree() - floor.degree()) + g.split().delta
}

/// One-point degrees `k` admitted by `(2g−2)q ≤ k < q^{m/2} − 4g + 1`,
/// clamped below at 0.
pub fn corollary_k_range(genus: i64, f: &FieldTower) -> RangeInclusive<i64> {
    let lo = ((2 * genus - 2) * f.q() as i64).max(0);
    let q_big = f.order() as i128;
    let mut hi = lo - 1;
    loop {
        let t = (hi + 1 + 4 * genus - 1) as i128;
        if t >= 0 && t * t >= q_big {
            break;
        }
        hi += 1;
    }
    lo..=hi
}

/// Goppa polynomial data for `G = (g)₀ − P∞` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoppaCase {
    pub g1: Poly,
    pub g2: Poly,
    pub r1: i64,
    pub r2: i64,
    /// Number of distinct zeros over the algebraic closure.
    pub s: i64,
    pub valid: bool,
    pub predicted: i64,
}

/// Splits `g = g1^q · g2` with `g2` free of q-th powers and evaluates the
/// validity condition `deg g + 2s < (Q + 1)/√Q + 2`.
pub fn goppa_case(g_poly: &Poly, f: &FieldTower) -> Result<GoppaCase> {
    if g_poly.degree().unwrap_or(0) == 0 {
        return Err(Error::Unsupported(
            "Goppa polynomial must be non-constant".into(),
        ));
    }
    if g_poly.has_root_in_field(f) {
        return Err(Error::HasRationalZero);
    }
    let q = f.q() as u32;
    let mut g1 = Poly::one();
    let mut g2 = Poly::one();
    for (a, e) in g_poly.squarefree_decomposition(f) {
        g1 = g1.mul(&a.pow((e / q) as u64, f), f);
        g2 = g2.mul(&a.pow((e % q) as u64, f), f);
    }
    let r1 = g1.degree_i64();
    let r2 = g2.degree_i64();
    let s = g_poly.squarefree_part(f).degree_i64();
    let q_big = f.order() as i128;
    let lhs = (g_poly.degree_i64() + 2 * s - 2) as i128;
    let valid = lhs < 0 || q_big * lhs * lhs < (q_big + 1) * (q_big + 1);
    let predicted = f.m() as i64 * ((f.q() as i64 - 1) * r1 + r2);
    Ok(GoppaCase {
        g1,
        g2,
        r1,
        r2,
        s,
        valid,
        predicted,
    })
}

/// `(g)₀ − P∞` on the projective line.
pub fn goppa_divisor(g_poly: &Poly, f: &FieldTower) -> Result<Divisor> {
    let mut d = Divisor::at_infinity(-1);
    for (a, e) in g_poly.factor(f) {
        d.add_term(Place::from_poly(a, f)?, e as i64);
    }
    Ok(d)
}

/// Outcome of one end-to-end verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub p: u64,
    pub q: u64,
    pub m: u32,
    pub curve: String,
    pub divisor: String,
    pub n: usize,
    pub k: usize,
    pub genus: i64,
    pub hypotheses: Hypotheses,
    pub predicted: i64,
    pub computed: usize,
    pub dim_k: usize,
    pub dim_e: usize,
    pub k_equals_e: bool,
    pub matched: bool,
    /// `m·k = dim Tr C + dim K`.
    pub eq3: bool,
    /// `k ≤ dim Tr C ≤ m·k`.
    pub bounds: bool,
    pub e_in_k: bool,
    /// `dim E` agrees with the E-dimension formula; `None` when `#Supp(G⁻) > 1`.
    pub prop1: Option<bool>,
    pub delsarte: bool,
}

impl TheoremReport {
    pub fn invariants_hold(&self) -> bool {
        self.eq3 && self.bounds && self.e_in_k && self.prop1 != Some(false) && self.delsarte
    }

    /// Under the hypotheses the dimension must match and `K = E`.
    pub fn theorem_holds(&self) -> bool {
        !self.hypotheses.all() || (self.matched && self.k_equals_e)
    }

    pub fn passes(&self) -> bool {
        self.invariants_hold() && self.theorem_holds()
    }

    pub fn row(&self) -> ReportRow {
        ReportRow {
            p: self.p,
            q: self.q,
            m: self.m,
            curve: self.curve.clone(),
            g: self.divisor.clone(),
            n: self.n,
            genus: self.genus,
            h0: self.hypotheses.h0,
            c1: self.hypotheses.c1,
            c2: self.hypotheses.c2,
            predicted: self.predicted,
            computed: self.computed,
            dim_k: self.dim_k,
            dim_e: self.dim_e,
            k_eq_e: self.k_equals_e,
            matched: self.matched,
        }
    }
}

/// Flat serialization of a report, shared by CSV and JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub p: u64,
    pub q: u64,
    pub m: u32,
    pub curve: String,
    #[serde(rename = "G")]
    pub g: String,
    pub n: usize,
    pub genus: i64,
    pub h0: bool,
    pub c1: bool,
    pub c2: bool,
    pub predicted: i64,
    pub computed: usize,
    #[serde(rename = "dimK")]
    pub dim_k: usize,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    #[serde(rename = "KeqE")]
    pub k_eq_e: bool,
    #[serde(rename = "match")]
    pub matched: bool,
}

pub fn verify(curve: &Curve, g: &Divisor) -> Result<TheoremReport> {
    verify_with(curve, g, false)
}

/// Verification over D_max, optionally without the points of `Supp(G⁻)`.
pub fn verify_with(curve: &Curve, g: &Divisor, drop_zero_columns: bool) -> Result<TheoremReport> {
    let f = curve.tower();
    let m = f.m() as usize;
    let points = d_max(curve, g, drop_zero_columns);
    let code = build_code(curve, g, Some(points))?;
    let spaces = kernel_and_spaces(&code)?;
    let hypotheses = check_hypotheses(curve, g);
    let predicted = predicted_dimension(g, f);
    let k = code.dimension();
    let computed = spaces.trace_dim;
    let prop1 = match prop1_dim_e(curve, g) {
        Ok(d) => Some(d == spaces.artin_schreier.dim() as i64),
        Err(Error::ConditionOneViolated) => None,
        Err(e) => return Err(e),
    };
    Ok(TheoremReport {
        p: f.p() as u64,
        q: f.q(),
        m: f.m(),
        curve: curve.to_string(),
        divisor: g.to_string(),
        n: code.length(),
        k,
        genus: curve.genus(),
        hypotheses,
        predicted,
        computed,
        dim_k: spaces.kernel.dim(),
        dim_e: spaces.artin_schreier.dim(),
        k_equals_e: spaces.k_equals_e(),
        matched: predicted == computed as i64,
        eq3: spaces.eq3_holds,
        bounds: k <= computed && computed <= m * k,
        e_in_k: spaces.e_in_k,
        prop1,
        delsarte: delsarte_check(&code),
    })
}
