//! Arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m}.
//!
//! Every element lives in the big field F_{q^m} = F_p[x]/(modulus) and is
//! encoded by the integer `Σ c_i p^i` of its coefficient vector, so the
//! prime field is exactly the indices `0..p`. The subfield F_q is the set
//! fixed by `a ↦ a^q`; it is closed under every operation here, which is
//! what lets F_q-linear algebra run on big-field elements unchanged.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// An element of F_{q^m}, encoded by its polynomial-basis coefficient vector.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Integer encoding `Σ c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct LogTables {
    // exp has length 2(Q-1) so that log a + log b never needs a reduction.
    exp: Vec<Fe>,
    log: Vec<u32>,
}

/// The chain F_p ⊂ F_q ⊂ F_{q^m} with q = p^r.
///
/// Immutable after construction.
#[derive(Debug)]
pub struct FieldTower {
    p: u32,
    r: u32,
    m: u32,
    degree: u32,
    q: u64,
    order: u64,
    modulus: Vec<u32>,
    generator: Fe,
    tables: Option<LogTables>,
    basis: Vec<Fe>,
    subfield_basis: Vec<Fe>,
    coord_inverse: Vec<Vec<u32>>,
}

/// Builds F_{p^{rm}} over F_{p^r}.
///
/// The modulus is the lexicographically least monic irreducible polynomial
/// of degree `r·m` over F_p, comparing coefficient vectors low degree first.
pub fn build_tower(p: u64, r: u32, m: u32) -> Result<FieldTower> {
    FieldTower::new(p, r, m)
}

impl FieldTower {
    pub fn new(p: u64, r: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroSubfieldExponent);
        }
        if m < 2 {
            return Err(Error::ExtensionDegreeTooSmall(m));
        }
        let degree = r as u64 * m as u64;
        let order = (0..degree)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::TooLarge { p, degree })?;
        let p = p as u32;
        let degree = degree as u32;
        let modulus = least_irreducible(p, degree);

        let mut tower = FieldTower {
            p,
            r,
            m,
            degree,
            q: (p as u64).pow(r),
            order,
            modulus,
            generator: Fe::ONE,
            tables: None,
            basis: Vec::new(),
            subfield_basis: Vec::new(),
            coord_inverse: Vec::new(),
        };
        tower.generator = tower.find_generator();
        if order <= TABLE_LIMIT {
            tower.tables = Some(tower.build_tables());
        }
        tower.basis = (0..m as u64)
            .map(|j| tower.pow(tower.generator, j))
            .collect();
        let u = tower.pow(tower.generator, (order - 1) / (tower.q - 1));
        tower.subfield_basis = (0..r as u64).map(|k| tower.pow(u, k)).collect();
        tower.coord_inverse = tower
            .build_coord_inverse()
            .expect("power basis of the generator is an F_q-basis");
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Subfield order q = p^r.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Big field order q^m.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree r·m of the big field over F_p.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A multiplicative generator of F_{q^m}^*.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn element(&self, index: u64) -> Result<Fe> {
        if index < self.order {
            Ok(Fe(index as u32))
        } else {
            Err(Error::ElementOutOfRange(index))
        }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order as u32).map(Fe)
    }

    /// Coefficient vector of `a`, low degree first.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        Fe(digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p + d % self.p))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize],
            None => self.mul_poly(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u32;
                t.exp[((n - t.log[a.0 as usize]) % n) as usize]
            }
            None => self.pow(a, self.order - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
                t.exp[l as usize]
            }
            None => self.pow_poly(a, e),
        }
    }

    /// `a ↦ a^q`, the generator of Gal(F_{q^m}/F_q).
    pub fn frobenius_q(&self, a: Fe) -> Fe {
        self.pow(a, self.q)
    }

    pub fn is_in_subfield(&self, a: Fe) -> bool {
        self.frobenius_q(a) == a
    }

    /// Tr_{q^m/q}(a) = Σ_{i<m} a^{q^i}.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = a;
        let mut conj = a;
        for _ in 1..self.m {
            conj = self.frobenius_q(conj);
            acc = self.add(acc, conj);
        }
        acc
    }

    /// Tr_{q^m/p}(a) as an integer in `0..p`.
    pub fn absolute_trace(&self, a: Fe) -> u32 {
        let mut acc = a;
        let mut conj = a;
        for _ in 1..self.degree {
            conj = self.pow(conj, self.p as u64);
            acc = self.add(acc, conj);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    /// All elements of F_q, in index order.
    pub fn subfield_elements(&self) -> Vec<Fe> {
        self.elements()
            .filter(|&a| self.is_in_subfield(a))
            .collect()
    }

    /// The F_q-basis {1, t, …, t^{m-1}} of F_{q^m}, t the generator.
    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }

    /// The subfield elements and the F_q-basis of the big field.
    pub fn subfield_and_basis(&self) -> (Vec<Fe>, Vec<Fe>) {
        (self.subfield_elements(), self.basis.clone())
    }

    /// Coordinates of `a` over F_q in the basis returned by [`Self::basis`].
    pub fn subfield_coords(&self, a: Fe) -> Vec<Fe> {
        let digits = self.digits(a);
        let n = self.degree as usize;
        let r = self.r as usize;
        let d: Vec<u32> = (0..n)
            .map(|row| {
                (0..n).fold(0u64, |acc, i| {
                    (acc + self.coord_inverse[row][i] as u64 * digits[i] as u64) % self.p as u64
                }) as u32
            })
            .collect();
        (0..self.m as usize)
            .map(|j| {
                (0..r).fold(Fe::ZERO, |acc, k| {
                    self.add(acc, self.mul(Fe(d[j * r + k]), self.subfield_basis[k]))
                })
            })
            .collect()
    }

    /// Rank over F_q of a list of big-field elements.
    ///
    /// Computed as the F_p-rank of {γ_k·e} divided by r, where {γ_k} is an
    /// F_p-basis of F_q.
    pub fn fq_rank(&self, elems: &[Fe]) -> usize {
        let rows: Vec<Vec<u32>> = elems
            .iter()
            .flat_map(|&e| self.subfield_basis.iter().map(move |&g| (e, g)))
            .map(|(e, g)| self.digits(self.mul(e, g)))
            .collect();
        rank_mod_p(rows, self.p) / self.r as usize
    }

    /// Reference multiplication by schoolbook product and reduction.
    pub(crate) fn mul_poly(&self, a: Fe, b: Fe) -> Fe {
        let n = self.degree as usize;
        let p = self.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &mc) in self.modulus[..n].iter().enumerate() {
                let idx = top - n + i;
                prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
            }
            prod[top] = 0;
        }
        let low: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.from_digits(&low)
    }

    pub(crate) fn pow_poly(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Fe {
        let group = self.order - 1;
        let factors = prime_factors(group);
        (1..self.order as u32)
            .map(Fe)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&l| self.pow_poly(a, group / l) != Fe::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; self.order as usize];
        let mut x = Fe::ONE;
        for i in 0..n {
            exp.push(x);
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.generator);
        }
        exp.extend_from_within(..n);
        LogTables { exp, log }
    }

    fn build_coord_inverse(&self) -> Option<Vec<Vec<u32>>> {
        let n = self.degree as usize;
        let r = self.r as usize;
        let mut cols = vec![vec![0u32; n]; n];
        for (j, &b) in self.basis.iter().enumerate() {
            for (k, &g) in self.subfield_basis.iter().enumerate() {
                cols[j * r + k] = self.digits(self.mul(b, g));
            }
        }
        // B[i][c] = digit i of column c
        let b: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|c| cols[c][i]).collect())
            .collect();
        invert_mod_p(b, self.p)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut e = p as u64 - 2;
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p) as u64;
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in bottom {
            let f = row[c] as u64 * inv % p as u64;
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                let sub = f * y as u64 % p as u64;
                *x = ((*x as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        rank += 1;
    }
    rank
}

fn invert_mod_p(mut a: Vec<Vec<u32>>, p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let pm = p as u64;
    let mut inv: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u32).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| a[i][c] != 0)?;
        a.swap(c, piv);
        inv.swap(c, piv);
        let s = inv_mod(a[c][c], p) as u64;
        for j in 0..n {
            a[c][j] = (a[c][j] as u64 * s % pm) as u32;
            inv[c][j] = (inv[c][j] as u64 * s % pm) as u32;
        }
        for i in 0..n {
            if i == c || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c] as u64;
            for j in 0..n {
                a[i][j] = ((a[i][j] as u64 + pm - f * a[c][j] as u64 % pm) % pm) as u32;
                inv[i][j] = ((inv[i][j] as u64 + pm - f * inv[c][j] as u64 % pm) % pm) as u32;
            }
        }
    }
    Some(inv)
}

/// Dense polynomials over F_p, low degree first; only used to find the modulus.
mod fp_poly {
    use super::inv_mod;

    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while a.len() > db {
            let top = a.len() - 1;
            let f = a[top] as u64 * lead_inv % p as u64;
            for (i, &bc) in b.iter().enumerate() {
                let idx = top - db + i;
                a[idx] = ((a[idx] as u64 + p as u64 - f * bc as u64 % p as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&prod, m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(v)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Rabin's test over F_p.
fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let n = f.len() as u64 - 1;
    let x = vec![0u32, 1];
    // x^{p^k} mod f for k = 0..=n
    let mut frob = vec![fp_poly::rem(&x, f, p)];
    for _ in 0..n {
        let last = frob.last().unwrap();
        frob.push(fp_poly::powmod(last, p as u64, f, p));
    }
    if !fp_poly::sub(&frob[n as usize], &x, p).is_empty() {
        return false;
    }
    prime_factors(n).into_iter().all(|l| {
        let h = fp_poly::sub(&frob[(n / l) as usize], &x, p);
        fp_poly::gcd(f, &h, p).len() == 1
    })
}

fn least_irreducible(p: u32, degree: u32) -> Vec<u32> {
    let n = degree as usize;
    let total = (p as u64).pow(degree);
    (0..total)
        .map(|idx| {
            // c_0 is the most significant digit of idx so that idx order is
            // lexicographic order on (c_0, c_1, …).
            let mut coeffs = vec![0u32; n + 1];
            let mut x = idx;
            for i in (0..n).rev() {
                coeffs[i] = (x % p as u64) as u32;
                x /= p as u64;
            }
            coeffs[n] = 1;
            coeffs
        })
        .find(|c| c[0] != 0 && is_irreducible_fp(c, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_and_products() {
        let t = build_tower(2, 1, 2).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 1]);
        let w = Fe(2);
        assert_eq!(t.mul(w, w), Fe(3));
        assert_eq!(t.inv(Fe::ONE).unwrap(), Fe::ONE);
        assert_eq!(t.trace(Fe::ZERO), Fe::ZERO);
        assert_eq!(t.trace(w), Fe::ONE);
        assert_eq!(t.generator(), w);
        let (sub, basis) = t.subfield_and_basis();
        assert_eq!(sub, vec![Fe(0), Fe(1)]);
        assert_eq!(basis, vec![Fe::ONE, w]);
    }

    #[test]
    fn f9_trace_of_i() {
        let t = build_tower(3, 1, 2).unwrap();
        assert_eq!(t.modulus(), &[1, 0, 1]);
        let i = Fe(3);
        assert_eq!(t.mul(i, i), t.from_int(-1));
        assert_eq!(t.trace(i), Fe::ZERO);
    }

    #[test]
    fn f16_matches_exhaustive_search() {
        let t = build_tower(2, 2, 2).unwrap();
        assert_eq!(t.order(), 16);
        assert_eq!(t.degree(), 4);
        // trial division by every monic polynomial of degree 1 or 2
        let reducible = |f: &[u32]| {
            (1..=2u32).any(|d| {
                (0..1u32 << d).any(|low| {
                    let mut g: Vec<u32> = (0..d).map(|i| (low >> i) & 1).collect();
                    g.push(1);
                    fp_poly::rem(f, &g, 2).is_empty()
                })
            })
        };
        let first = (0..16u32)
            .map(|idx| {
                let mut c: Vec<u32> = (0..4).map(|i| (idx >> (3 - i)) & 1).collect();
                c.push(1);
                c
            })
            .find(|c| !reducible(c))
            .unwrap();
        assert_eq!(t.modulus(), first.as_slice());
        assert_eq!(t.pow(t.generator(), 15), Fe::ONE);
        assert!((1..15).all(|e| t.pow(t.generator(), e) != Fe::ONE));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_tower(4, 1, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            build_tower(2, 1, 1).unwrap_err(),
            Error::ExtensionDegreeTooSmall(1)
        );
        assert!(matches!(build_tower(2, 3, 7), Err(Error::TooLarge { .. })));
        assert!(build_tower(2, 4, 5).is_ok());
    }

    #[test]
    fn frobenius_fixed_points_in_f16_over_f4() {
        let t = build_tower(2, 2, 2).unwrap();
        let fixed = t.elements().filter(|&a| t.pow(a, 4) == a).count();
        assert_eq!(fixed, 4);
        assert_eq!(t.subfield_elements().len(), 4);
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for (p, r, m) in [(2, 1, 4), (3, 1, 2), (2, 2, 3), (5, 1, 2), (3, 2, 2)] {
            let t = build_tower(p, r, m).unwrap();
            for a in t.elements() {
                for b in t.elements() {
                    assert_eq!(t.mul(a, b), t.mul_poly(a, b));
                }
            }
        }
    }

    #[test]
    fn untabled_field_is_consistent() {
        // 2^18 elements: no tables
        let t = build_tower(2, 3, 6).unwrap();
        assert!(t.tables.is_none());
        let g = t.generator();
        let x = t.pow(g, 12345);
        assert_eq!(t.mul(x, t.inv(x).unwrap()), Fe::ONE);
        assert_eq!(t.pow(g, t.order() - 1), Fe::ONE);
        assert!(t.is_in_subfield(t.trace(x)));
    }

    #[test]
    fn f16_over_f2_basis_is_independent() {
        let t = build_tower(2, 1, 4).unwrap();
        assert_eq!(t.basis().len(), 4);
        assert_eq!(t.fq_rank(t.basis()), 4);
        let b = t.basis();
        let rows = b.iter().map(|&e| t.digits(e)).collect();
        assert_eq!(rank_mod_p(rows, 2), 4);
    }

    #[test]
    fn subfield_coords_reconstruct() {
        for (p, r, m) in [(2, 1, 2), (2, 2, 2), (3, 1, 3), (3, 2, 2), (2, 1, 6)] {
            let t = build_tower(p, r, m).unwrap();
            for a in t.elements() {
                let c = t.subfield_coords(a);
                assert!(c.iter().all(|&x| t.is_in_subfield(x)));
                let back = c
                    .iter()
                    .zip(t.basis())
                    .fold(Fe::ZERO, |acc, (&x, &b)| t.add(acc, t.mul(x, b)));
                assert_eq!(back, a);
            }
        }
    }

    #[test]
    fn division_by_zero() {
        let t = build_tower(3, 1, 2).unwrap();
        assert_eq!(t.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn absolute_trace_values() {
        let t = build_tower(3, 2, 2).unwrap();
        let mut census = [0usize; 3];
        for a in t.elements() {
            census[t.absolute_trace(a) as usize] += 1;
        }
        assert_eq!(census, [27, 27, 27]);
    }
}
