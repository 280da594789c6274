//! Additive character sums `Σ ζ_p^{Tr(f(P))}` and the Artin–Schreier
//! degeneracy test for polynomials on the projective line.

use rand::Rng;
use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldTower};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rrspace::RationalFunction;

/// Relative tolerance for the floating-point comparison when `p > 2`.
pub const ODD_P_TOLERANCE: f64 = 1e-6;

/// `|Σ ζ_p^a N_a|²`: exact for `p = 2`, floating point otherwise.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SumSquare {
    Exact(i128),
    Approx(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharSumResult {
    /// `N_a` for `a = 0..p`.
    pub counts: Vec<u64>,
    /// Distinct pole places.
    pub t: i64,
    /// Degree of the pole divisor.
    pub d_inf: i64,
    /// `2g − 2 + t + d_inf`.
    pub bound_factor: i64,
    /// `bound_factor² · q^m`.
    pub bound_sq: i128,
    pub sum_abs_sq: SumSquare,
    pub pass: bool,
}

/// Distinct pole places and the degree of the pole divisor.
pub fn pole_data(func: &RationalFunction, curve: &Curve) -> (i64, i64) {
    match func {
        RationalFunction::Fraction { num, den } => {
            let f = curve.tower();
            let mut t = 0;
            let mut d = 0;
            for (a, e) in den.factor(f) {
                t += 1;
                d += a.degree_i64() * e as i64;
            }
            let at_inf = num.degree_i64() - den.degree_i64();
            if at_inf > 0 {
                t += 1;
                d += at_inf;
            }
            (t, d)
        }
        RationalFunction::Coordinate { .. } => {
            let order = func.pole_order_at_origin().unwrap_or(0);
            ((order > 0) as i64, order)
        }
    }
}

/// Coefficient vector of `poly` over F_p, `len` coefficients of `r·m` digits each.
fn fp_coords(poly: &Poly, len: usize, f: &FieldTower) -> Vec<Fe> {
    (0..len)
        .flat_map(|i| f.digits(poly.coeff(i)).into_iter().map(Fe))
        .collect()
}

/// Whether `f = h^p − h + c` for some polynomial `h` and constant `c`,
/// decided by F_p-linear algebra on coefficient vectors.
///
/// Only polynomials on the projective line are supported.
pub fn is_artin_schreier_degenerate(func: &RationalFunction, f: &FieldTower) -> Result<bool> {
    let poly = func
        .as_polynomial()
        .ok_or_else(|| Error::Unsupported("degeneracy test is limited to polynomials".into()))?;
    let d = poly.degree().unwrap_or(0);
    let p = f.p() as usize;
    let e = d.div_ceil(p);
    let len = d.max(p * e) + 1;
    let basis: Vec<Fe> = (0..f.degree() as usize)
        .map(|j| {
            let mut digits = vec![0; j + 1];
            digits[j] = 1;
            f.from_digits(&digits)
        })
        .collect();

    let mut columns = Vec::new();
    for i in 0..=e {
        for &b in &basis {
            let h = Poly::monomial(b, i);
            let img = h.pow(p as u64, f).sub(&h, f);
            columns.push(fp_coords(&img, len, f));
        }
    }
    for &b in &basis {
        columns.push(fp_coords(&Poly::constant(b), len, f));
    }
    let a = Matrix::from_rows(columns.clone(), len * basis.len()).transpose();
    columns.push(fp_coords(poly, len, f));
    let aug = Matrix::from_rows(columns, len * basis.len()).transpose();
    Ok(a.rank(f) == aug.rank(f))
}

/// Tallies `Tr_{Q/p}(f(P))` over the rational points that are not poles
/// and compares the character sum with Bombieri's bound.
pub fn char_sum_check(curve: &Curve, func: &RationalFunction) -> Result<CharSumResult> {
    let f = curve.tower();
    match is_artin_schreier_degenerate(func, f) {
        Ok(true) => return Err(Error::DegenerateInput),
        Ok(false) | Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    let p = f.p() as usize;
    let mut counts = vec![0u64; p];
    for pt in curve.rational_points() {
        match func.evaluate(&pt, curve) {
            Ok(v) => counts[f.absolute_trace(v) as usize] += 1,
            Err(Error::PoleAtPoint) => {}
            Err(e) => return Err(e),
        }
    }
    let (t, d_inf) = pole_data(func, curve);
    let bound_factor = 2 * curve.genus() - 2 + t + d_inf;
    let bound_sq = (bound_factor as i128).pow(2) * f.order() as i128;
    let (sum_abs_sq, within) = if p == 2 {
        let diff = counts[0] as i128 - counts[1] as i128;
        (SumSquare::Exact(diff * diff), diff * diff <= bound_sq)
    } else {
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, &n) in counts.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * a as f64 / p as f64;
            re += n as f64 * angle.cos();
            im += n as f64 * angle.sin();
        }
        let v = re * re + im * im;
        let b = bound_sq as f64;
        (SumSquare::Approx(v), v <= b + ODD_P_TOLERANCE * b.max(1.0))
    };
    Ok(CharSumResult {
        counts,
        t,
        d_inf,
        bound_factor,
        bound_sq,
        sum_abs_sq,
        pass: bound_factor >= 0 && within,
    })
}

/// A random polynomial of degree `1..=max_degree` that is not of the form
/// `h^p − h + c`.
pub fn sample_nondegenerate<R: Rng + ?Sized>(
    max_degree: usize,
    f: &FieldTower,
    rng: &mut R,
) -> Poly {
    loop {
        let deg = rng.gen_range(1..=max_degree);
        let mut coeffs: Vec<Fe> = (0..deg)
            .map(|_| Fe(rng.gen_range(0..f.order() as u32)))
            .collect();
        coeffs.push(Fe(rng.gen_range(1..f.order() as u32)));
        let poly = Poly::new(coeffs);
        if !is_artin_schreier_degenerate(&RationalFunction::polynomial(poly.clone()), f)
            .expect("polynomial")
        {
            return poly;
        }
    }
}

/// Whether every sampled point count is consistent: `Σ N_a = N − #rational poles`.
pub fn counts_are_consistent(
    result: &CharSumResult,
    curve: &Curve,
    func: &RationalFunction,
) -> bool {
    let poles = curve
        .rational_points()
        .iter()
        .filter(|pt| matches!(func.evaluate(pt, curve), Err(Error::PoleAtPoint)))
        .count() as u64;
    result.counts.iter().sum::<u64>() == curve.point_count() - poles
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::ff::build_tower;

    fn line(p: u64, r: u32, m: u32) -> Curve {
        Curve::projective_line(Arc::new(build_tower(p, r, m).unwrap()))
    }

    fn poly(c: &[u32]) -> RationalFunction {
        RationalFunction::polynomial(Poly::new(c.iter().map(|&i| Fe(i)).collect()))
    }

    #[test]
    fn degeneracy_examples() {
        let f = build_tower(2, 1, 2).unwrap();
        assert!(is_artin_schreier_degenerate(&poly(&[0, 1, 1]), &f).unwrap());
        assert!(!is_artin_schreier_degenerate(&poly(&[0, 1]), &f).unwrap());
        assert!(is_artin_schreier_degenerate(&poly(&[3]), &f).unwrap());
        assert!(is_artin_schreier_degenerate(&poly(&[2, 1, 1]), &f).unwrap());
        let rational = RationalFunction::fraction(Poly::one(), Poly::x(), &f).unwrap();
        assert!(matches!(
            is_artin_schreier_degenerate(&rational, &f),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn degeneracy_matches_explicit_images() {
        let f = build_tower(3, 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let h = Poly::random_monic(rng.gen_range(1..3), &f, &mut rng);
            let c = Poly::constant(Fe(rng.gen_range(0..9)));
            let g = h.pow(3, &f).sub(&h, &f).add(&c, &f);
            assert!(is_artin_schreier_degenerate(&RationalFunction::polynomial(g), &f).unwrap());
        }
        assert!(!is_artin_schreier_degenerate(&poly(&[0, 0, 1]), &f).unwrap());
    }

    #[test]
    fn linear_character_sums_vanish() {
        for m in [2, 4] {
            let c = line(2, 1, m);
            let r = char_sum_check(&c, &poly(&[0, 1])).unwrap();
            assert_eq!((r.t, r.d_inf, r.bound_factor), (1, 1, 0));
            let half = 1u64 << (m - 1);
            assert_eq!(r.counts, vec![half, half]);
            assert_eq!(r.sum_abs_sq, SumSquare::Exact(0));
            assert!(r.pass);
        }
    }

    #[test]
    fn cubic_over_f4() {
        let c = line(2, 1, 2);
        let func = poly(&[0, 0, 0, 1]);
        let r = char_sum_check(&c, &func).unwrap();
        assert_eq!((r.t, r.d_inf, r.bound_factor, r.bound_sq), (1, 3, 2, 16));
        assert!(r.pass);
        assert!(counts_are_consistent(&r, &c, &func));
    }

    #[test]
    fn degenerate_input_is_refused() {
        let c = line(2, 1, 2);
        assert_eq!(
            char_sum_check(&c, &poly(&[0, 1, 1])),
            Err(Error::DegenerateInput)
        );
    }

    #[test]
    fn rational_function_poles() {
        let c = line(3, 1, 2);
        let f = c.tower();
        let den = Poly::linear(Fe(1), f).mul(&Poly::linear(Fe(2), f), f);
        let func = RationalFunction::fraction(Poly::monomial(Fe::ONE, 3), den, f).unwrap();
        let (t, d) = pole_data(&func, &c);
        assert_eq!((t, d), (3, 3));
        let r = char_sum_check(&c, &func).unwrap();
        assert!(r.pass);
        assert!(counts_are_consistent(&r, &c, &func));
    }

    #[test]
    fn sampled_polynomials_obey_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m) in [(2, 3), (3, 2)] {
            let c = line(p, 1, m);
            for _ in 0..15 {
                let g = sample_nondegenerate(5, c.tower(), &mut rng);
                let r = char_sum_check(&c, &RationalFunction::polynomial(g)).unwrap();
                assert!(r.pass);
            }
        }
    }
}
