//! AG codes, their trace codes, and the F_q-subspaces K and E.
//!
//! Function-level subspaces are represented in the F_q-coordinate system of
//! C given by the generators `β_j·f_i` (row `i·m + j`), where `{f_i}` is the
//! Riemann–Roch basis and `{β_j}` the F_q-basis of F_{q^m}. Membership is
//! decided on evaluation vectors, which is sound because `build_code` only
//! accepts instances where evaluation is injective on L(G).

use crate::curve::{Curve, RationalPoint};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower};
use crate::linalg::{Matrix, SubspaceFq};
use crate::rrspace::{rr_basis, RRBasis};

/// `C(D, G)` with its evaluation generator matrix (basis order × point order).
#[derive(Clone, Debug)]
pub struct AGCode {
    pub curve: Curve,
    pub divisor: Divisor,
    pub points: Vec<RationalPoint>,
    pub basis: RRBasis,
    pub gen_matrix: Matrix,
}

impl AGCode {
    pub fn length(&self) -> usize {
        self.points.len()
    }

    /// `k = dim L(G)`.
    pub fn dimension(&self) -> usize {
        self.basis.dim()
    }

    pub fn tower(&self) -> &FieldTower {
        self.curve.tower()
    }
}

/// `X(F_{q^m}) \ Supp(G⁺)`, optionally also dropping `Supp(G⁻)`.
pub fn d_max(curve: &Curve, g: &Divisor, drop_negative_support: bool) -> Vec<RationalPoint> {
    let split = g.split();
    curve
        .rational_points()
        .into_iter()
        .filter(|pt| !split.plus.support_contains(pt))
        .filter(|pt| !(drop_negative_support && split.minus.support_contains(pt)))
        .collect()
}

/// Builds `C(D, G)`; `D` defaults to D_max.
///
/// Requires `deg G` below the number of points of `D` outside `Supp(G⁻)`.
pub fn build_code(
    curve: &Curve,
    g: &Divisor,
    points: Option<Vec<RationalPoint>>,
) -> Result<AGCode> {
    g.validate(curve)?;
    let points = points.unwrap_or_else(|| d_max(curve, g, false));
    let plus = g.split().plus;
    if points.iter().any(|pt| plus.support_contains(pt)) {
        return Err(Error::PointInSupport);
    }
    if points.iter().any(|pt| !curve.contains(pt)) {
        return Err(Error::InvalidPlace(
            "evaluation point is not on the curve".into(),
        ));
    }
    // columns at points of Supp(G⁻) vanish, so injectivity needs the rest
    let minus = g.split().minus;
    let live = points
        .iter()
        .filter(|pt| !minus.support_contains(pt))
        .count();
    if g.degree() >= live as i64 {
        return Err(Error::DegreeTooLarge {
            degree: g.degree(),
            length: live,
        });
    }
    let basis = rr_basis(curve, g)?;
    let rows = basis
        .functions
        .iter()
        .map(|func| {
            points
                .iter()
                .map(|pt| func.evaluate(pt, curve))
                .collect::<Result<Vec<Fe>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gen_matrix = Matrix::from_rows(rows, points.len());
    Ok(AGCode {
        curve: curve.clone(),
        divisor: g.clone(),
        points,
        basis,
        gen_matrix,
    })
}

/// `Tr C` as the (m·k)×n matrix with rows `Tr(β_j·f_i(P_l))`.
#[derive(Clone, Debug)]
pub struct TraceCode {
    pub trace_matrix: Matrix,
    pub dim: usize,
}

pub fn trace_code(code: &AGCode) -> TraceCode {
    let f = code.tower();
    let n = code.length();
    let rows: Vec<Vec<Fe>> = code
        .gen_matrix
        .row_iter()
        .flat_map(|row| {
            f.basis()
                .iter()
                .map(move |&b| row.iter().map(|&v| f.trace(f.mul(b, v))).collect())
        })
        .collect();
    let trace_matrix = Matrix::from_rows(rows, n);
    let dim = trace_matrix.rank(f);
    TraceCode { trace_matrix, dim }
}

/// The kernel K of `C → Tr C` and the Artin–Schreier space E, both as
/// subspaces of F_q^{m·k}.
#[derive(Clone, Debug)]
pub struct KernelSpaces {
    pub kernel: SubspaceFq,
    pub artin_schreier: SubspaceFq,
    pub trace_dim: usize,
    /// `m·k − dim K = dim Tr C`.
    pub eq3_holds: bool,
    /// `E ⊆ K`.
    pub e_in_k: bool,
}

impl KernelSpaces {
    pub fn k_equals_e(&self) -> bool {
        self.kernel == self.artin_schreier
    }
}

/// F_q-coordinates in the `β_j·f_i` system of the codeword with evaluation
/// vector `word`, or `None` if `word ∉ C`.
fn coordinates_in_code(code: &AGCode, gen_t: &Matrix, word: &[Fe]) -> Option<Vec<Fe>> {
    let f = code.tower();
    let a = gen_t.solve(word, f)?;
    Some(a.into_iter().flat_map(|ai| f.subfield_coords(ai)).collect())
}

pub fn kernel_and_spaces(code: &AGCode) -> Result<KernelSpaces> {
    let f = code.tower();
    let m = f.m() as usize;
    let k = code.dimension();
    let ambient = m * k;
    let trace = trace_code(code);

    // c ∈ K  ⇔  Σ_r c_r T[r][l] = 0 for all l
    let kernel = SubspaceFq::span(&trace.trace_matrix.transpose().nullspace(f), f);

    let floor = code.divisor.floor_div_q(f.q());
    let h_basis = rr_basis(&code.curve, &floor)?;
    let gen_t = code.gen_matrix.transpose();
    let mut e_rows = Vec::new();
    for h in &h_basis.functions {
        let values = code
            .points
            .iter()
            .map(|pt| h.evaluate(pt, &code.curve))
            .collect::<Result<Vec<Fe>>>()?;
        for &b in f.basis() {
            let word: Vec<Fe> = values
                .iter()
                .map(|&v| {
                    let x = f.mul(b, v);
                    f.sub(f.frobenius_q(x), x)
                })
                .collect();
            let coords =
                coordinates_in_code(code, &gen_t, &word).ok_or(Error::CoordinateSolveFailed)?;
            e_rows.push(coords);
        }
    }
    let artin_schreier = SubspaceFq::span(&Matrix::from_rows(e_rows, ambient), f);

    let eq3_holds = ambient as i64 - kernel.dim() as i64 == trace.dim as i64;
    let e_in_k = artin_schreier.is_subspace_of(&kernel, f);
    Ok(KernelSpaces {
        kernel,
        artin_schreier,
        trace_dim: trace.dim,
        eq3_holds,
        e_in_k,
    })
}

/// `dim E = m·dim L([G/q]) − dim(F_q ∩ L([G/q]))`, valid when `#Supp(G⁻) ≤ 1`.
pub fn prop1_dim_e(curve: &Curve, g: &Divisor) -> Result<i64> {
    let split = g.split();
    if split.minus.support_len() > 1 {
        return Err(Error::ConditionOneViolated);
    }
    let f = curve.tower();
    let floor = g.floor_div_q(f.q());
    let dim_l = rr_basis(curve, &floor)?.dim() as i64;
    // constants lie in L([G/q]) exactly when [G/q] is effective, i.e. G⁻ = 0
    Ok(f.m() as i64 * dim_l - split.delta)
}

/// Delsarte: `(Tr C)^⊥ = (C^⊥)|_{F_q}`.
///
/// The left side is the F_q-null space of the trace matrix; the right side
/// expands each big-field parity equation into its m coordinate equations.
pub fn delsarte_check(code: &AGCode) -> bool {
    let f = code.tower();
    let m = f.m() as usize;
    let n = code.length();
    let trace = trace_code(code);
    let trace_dual = SubspaceFq::span(&trace.trace_matrix.nullspace(f), f);

    let mut expanded = vec![Vec::with_capacity(n); code.dimension() * m];
    for (i, row) in code.gen_matrix.row_iter().enumerate() {
        for &v in row {
            for (j, c) in f.subfield_coords(v).into_iter().enumerate() {
                expanded[i * m + j].push(c);
            }
        }
    }
    let subfield_subcode = SubspaceFq::span(&Matrix::from_rows(expanded, n).nullspace(f), f);
    trace_dual == subfield_subcode
}
