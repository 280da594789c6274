//! Univariate polynomials over F_{q^m} and their factorization.
//!
//! Factorization runs square-free decomposition (derivative gcds plus p-th
//! roots when the derivative vanishes), distinct-degree splitting and
//! Cantor–Zassenhaus equal-degree splitting with a fixed-seed generator, so
//! results are reproducible.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{prime_factors, Fe, FieldTower};

/// A polynomial with coefficients low degree first and no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Fe::ONE)
    }

    pub fn constant(c: Fe) -> Self {
        Self::new(vec![c])
    }

    /// The variable `z`.
    pub fn x() -> Self {
        Self::monomial(Fe::ONE, 1)
    }

    pub fn monomial(c: Fe, degree: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `z - a`.
    pub fn linear(a: Fe, f: &FieldTower) -> Self {
        Self::new(vec![f.neg(a), Fe::ONE])
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    pub fn add(&self, other: &Poly, f: &FieldTower) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &FieldTower) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &FieldTower) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe, f: &FieldTower) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldTower) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64, f: &FieldTower) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly, f: &FieldTower) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[top - dd] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, dc));
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly, f: &FieldTower) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn div_exact(&self, d: &Poly, f: &FieldTower) -> Option<Poly> {
        match self.divrem(d, f) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly, f: &FieldTower) -> bool {
        other.div_exact(self, f).is_some()
    }

    pub fn monic(&self, f: &FieldTower) -> Poly {
        match f.inv(self.leading()) {
            Ok(inv) => self.scale(inv, f),
            Err(_) => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &FieldTower) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &FieldTower) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: Fe, f: &FieldTower) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly, f: &FieldTower) -> Poly {
        self.mul(other, f).rem(m, f).expect("modulus is nonzero")
    }

    pub fn powmod(&self, mut e: u64, m: &Poly, f: &FieldTower) -> Poly {
        let mut base = self.rem(m, f).expect("modulus is nonzero");
        let mut acc = Poly::one().rem(m, f).expect("modulus is nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, f);
            }
            base = base.mulmod(&base, m, f);
            e >>= 1;
        }
        acc
    }

    /// The p-th root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self, f: &FieldTower) -> Option<Poly> {
        let p = f.p() as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % p != 0 && !c.is_zero())
        {
            return None;
        }
        // a^{1/p} = a^{p^{n-1}} in F_{p^n}
        let e = (f.p() as u64).pow(f.degree() - 1);
        Some(Poly::new(
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pow(c, e))
                .collect(),
        ))
    }

    /// Whether some element of F_{q^m} is a zero.
    pub fn has_root_in_field(&self, f: &FieldTower) -> bool {
        f.elements().any(|x| self.eval(x, f).is_zero())
    }

    /// Rabin's irreducibility test over F_{q^m}.
    pub fn is_irreducible(&self, f: &FieldTower) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let frob = frobenius_powers(self, n, f);
        let x = Poly::x();
        if !frob[n].sub(&x, f).is_zero() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let h = frob[n / l as usize].sub(&x, f);
            self.gcd(&h, f).is_one()
        })
    }

    /// Square-free decomposition `self = c · Π a_i^{e_i}` with monic,
    /// square-free, pairwise coprime `a_i` and distinct `e_i`, sorted by `e_i`.
    pub fn squarefree_decomposition(&self, f: &FieldTower) -> Vec<(Poly, u32)> {
        let mut out = squarefree_rec(&self.monic(f), f);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self, f: &FieldTower) -> Poly {
        self.squarefree_decomposition(f)
            .iter()
            .fold(Poly::one(), |acc, (a, _)| acc.mul(a, f))
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients).
    pub fn factor(&self, f: &FieldTower) -> Vec<(Poly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut out = Vec::new();
        for (sqf, e) in self.squarefree_decomposition(f) {
            for (block, d) in distinct_degree(&sqf, f) {
                let mut pieces = Vec::new();
                equal_degree(&block, d, f, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|g| (g, e)));
            }
        }
        out.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }

    pub fn random_monic<R: Rng + ?Sized>(degree: usize, f: &FieldTower, rng: &mut R) -> Poly {
        let mut coeffs: Vec<Fe> = (0..degree)
            .map(|_| Fe(rng.gen_range(0..f.order() as u32)))
            .collect();
        coeffs.push(Fe::ONE);
        Poly::new(coeffs)
    }

    /// Rejection-samples a uniformly random monic irreducible polynomial.
    pub fn random_irreducible<R: Rng + ?Sized>(degree: usize, f: &FieldTower, rng: &mut R) -> Poly {
        assert!(degree >= 1);
        loop {
            let g = Self::random_monic(degree, f, rng);
            if g.is_irreducible(f) {
                return g;
            }
        }
    }

    /// Comma-separated coefficient indices, low degree first.
    pub fn to_index_list(&self) -> String {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        if v.is_empty() {
            "0".to_string()
        } else {
            v.join(",")
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (i, c.0) {
                (0, _) => write!(out, "{c}")?,
                (1, 1) => write!(out, "z")?,
                (1, _) => write!(out, "{c}*z")?,
                (_, 1) => write!(out, "z^{i}")?,
                _ => write!(out, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// `z^{Q^k} mod g` for `k = 0..=n`.
fn frobenius_powers(g: &Poly, n: usize, f: &FieldTower) -> Vec<Poly> {
    let mut out = vec![Poly::x().rem(g, f).expect("g is nonzero")];
    for _ in 0..n {
        let next = out.last().unwrap().powmod(f.order(), g, f);
        out.push(next);
    }
    out
}

fn squarefree_rec(poly: &Poly, f: &FieldTower) -> Vec<(Poly, u32)> {
    if poly.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = f.p();
    let d = poly.derivative(f);
    if d.is_zero() {
        let root = poly.pth_root(f).expect("derivative vanishes");
        return squarefree_rec(&root, f)
            .into_iter()
            .map(|(a, e)| (a, e * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = poly.gcd(&d, f);
    let mut w = poly.div_exact(&c, f).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac.monic(f), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, f).expect("gcd divides");
    }
    if !c.is_one() {
        let root = c.pth_root(f).expect("remaining cofactor is a p-th power");
        out.extend(
            squarefree_rec(&root, f)
                .into_iter()
                .map(|(a, e)| (a, e * p)),
        );
    }
    out
}

/// Splits a square-free monic polynomial into products of its irreducible
/// factors of equal degree.
fn distinct_degree(g: &Poly, f: &FieldTower) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = Poly::x();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(f.order(), &rest, f);
        let block = rest.gcd(&h.sub(&Poly::x(), f), f);
        if !block.is_one() {
            rest = rest.div_exact(&block, f).expect("gcd divides");
            h = h.rem(&rest, f).expect("rest is nonzero");
            out.push((block, d));
        }
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, f: &FieldTower, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().expect("nonzero");
    if n == d {
        out.push(g.clone());
        return;
    }
    loop {
        let a = Poly::new(
            (0..n)
                .map(|_| Fe(rng.gen_range(0..f.order() as u32)))
                .collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if f.p() == 2 {
            // Tr_{F_{Q^d}/F_2}(a) mod g
            let mut t = a.rem(g, f).expect("g is nonzero");
            let mut s = t.clone();
            for _ in 1..(f.degree() as usize * d) {
                t = t.mulmod(&t, g, f);
                s = s.add(&t, f);
            }
            s
        } else {
            // a^{(Q^d - 1)/2} = (Π_{i<d} a^{Q^i})^{(Q-1)/2}
            let mut conj = a.rem(g, f).expect("g is nonzero");
            let mut norm = conj.clone();
            for _ in 1..d {
                conj = conj.powmod(f.order(), g, f);
                norm = norm.mulmod(&conj, g, f);
            }
            norm.powmod((f.order() - 1) / 2, g, f).sub(&Poly::one(), f)
        };
        let split = g.gcd(&probe, f);
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let other = g.div_exact(&split, f).expect("gcd divides");
            equal_degree(&split, d, f, rng, out);
            equal_degree(&other, d, f, rng, out);
            return;
        }
    }
}
