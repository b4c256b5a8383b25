//! Arithmetic in GF(p^n).
//!
//! Elements are packed into a single `u32` as base-p digits, the coefficient
//! of `t^i` being the i-th least significant digit. The field is built over
//! the lexicographically least monic irreducible polynomial of degree `n`,
//! comparing coefficients from the constant term upward, so the same `(p, n)`
//! always yields the same modulus and the same element codes.
//!
//! Multiplication goes through discrete log/antilog tables over a primitive
//! element; the Frobenius map `x -> x^(p^k)` is a rescaling of the log.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// An element of a specific GF(p^n).
///
/// The `(p, n)` tag identifies the field: moduli are determined by `(p, n)`,
/// so two elements with the same tag always live in the same field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement {
    p: u32,
    n: u32,
    code: u32,
}

impl FieldElement {
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    /// Coefficients of `1, t, ..., t^(n-1)`.
    pub fn coeffs(self) -> Vec<u32> {
        digits(self.code, self.p, self.n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.coeffs() {
            write!(f, "{}", digit_char(d))?;
        }
        Ok(())
    }
}

fn digit_char(d: u32) -> char {
    char::from_digit(d, 36).unwrap_or('?')
}

fn digits(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Renders a digit vector as a base-p string, lowest index first.
pub fn render_digits(ds: &[u32]) -> String {
    ds.iter().map(|&d| digit_char(d)).collect()
}

/// A realized finite field GF(p^n).
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &render_digits(&self.modulus))
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Builds GF(p^n); see [`FieldSpec::new`].
pub fn make_field(p: u32, n: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, n)
}

impl FieldSpec {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or_else(|| {
            Error::Capacity(format!("GF({p}^{n}) exceeds the field order limit {MAX_FIELD_ORDER}"))
        })? as u32;

        let modulus = least_irreducible(p, n);
        let mut spec = FieldSpec {
            p,
            n,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        spec.neg = (0..q).map(|c| spec.neg_digits(c)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    table[(x * q + y) as usize] = spec.add_digits(x, y);
                }
            }
            spec.add_table = Some(table);
        }
        spec.build_log_tables();
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field order p^n.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_digits(&self) -> String {
        render_digits(&self.modulus)
    }

    /// Code of the primitive element used for the log tables.
    pub fn primitive_code(&self) -> u32 {
        self.primitive
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::InvalidArgument(format!(
                "code {code} out of range for GF({}^{})",
                self.p, self.n
            )));
        }
        Ok(self.wrap(code))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient vector {coeffs:?} is not an element of GF({}^{})",
                self.p, self.n
            )));
        }
        let code = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        Ok(self.wrap(code))
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of the indeterminate `t` (equal to `0` when n = 1 and the modulus is `t`).
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            // t reduced by a degree-1 modulus t + m0 is -m0
            return self.wrap(self.neg[self.modulus[0] as usize]);
        }
        self.wrap(self.p)
    }

    /// Parses a digit string as produced by `Display`.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let ds: Option<Vec<u32>> = s.chars().map(|c| c.to_digit(36)).collect();
        let ds = ds.ok_or_else(|| Error::InvalidArgument(format!("bad field digits {s:?}")))?;
        self.from_coeffs(&ds)
    }

    /// All nonzero elements, ascending by code.
    pub fn units(&self) -> Vec<FieldElement> {
        (1..self.q).map(|c| self.wrap(c)).collect()
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement { p: self.p, n: self.n, code }
    }

    fn check(&self, x: FieldElement) -> Result<u32> {
        if x.p != self.p || x.n != self.n {
            return Err(Error::SpecMismatch(format!(
                "element of GF({}^{}) used in GF({}^{})",
                x.p, x.n, self.p, self.n
            )));
        }
        Ok(x.code)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_code(self.check(x)?, self.check(y)?)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_code(self.check(x)?)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sub_code(self.check(x)?, self.check(y)?)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_code(self.check(x)?, self.check(y)?)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let c = self.check(x)?;
        if c == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_code(c)))
    }

    pub fn pow(&self, x: FieldElement, k: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_code(self.check(x)?, k)))
    }

    /// `x^(p^k)` for `0 <= k < n`.
    pub fn frobenius(&self, x: FieldElement, k: u32) -> Result<FieldElement> {
        if k >= self.n {
            return Err(Error::InvalidArgument(format!(
                "Frobenius power {k} out of range [0, {})",
                self.n
            )));
        }
        Ok(self.wrap(self.frob_code(self.check(x)?, k)))
    }

    // Unchecked arithmetic on raw codes, used by the group arithmetic.

    #[inline]
    pub fn add_code(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            return x ^ y;
        }
        match &self.add_table {
            Some(t) => t[(x * self.q + y) as usize],
            None => self.add_digits(x, y),
        }
    }

    #[inline]
    pub fn neg_code(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    #[inline]
    pub fn sub_code(&self, x: u32, y: u32) -> u32 {
        self.add_code(x, self.neg_code(y))
    }

    #[inline]
    pub fn mul_code(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    /// Panics on zero; callers guarantee `x != 0`.
    #[inline]
    pub fn inv_code(&self, x: u32) -> u32 {
        assert!(x != 0, "inverse of zero");
        let l = self.log[x as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn pow_code(&self, x: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[x as usize] as u64 * (k % order)) % order;
        self.exp[l as usize]
    }

    /// `x^(p^k)`; `k` is taken modulo `n`.
    #[inline]
    pub fn frob_code(&self, x: u32, k: u32) -> u32 {
        if x == 0 || k.is_multiple_of(self.n) {
            return x;
        }
        let order = (self.q - 1) as u64;
        let scale = (self.p as u64).pow(k % self.n) % order;
        let l = (self.log[x as usize] as u64 * scale) % order;
        self.exp[l as usize]
    }

    fn add_digits(&self, mut x: u32, mut y: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        out
    }

    fn neg_digits(&self, mut x: u32) -> u32 {
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            let d = (self.p - x % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
        }
        out
    }

    fn build_log_tables(&mut self) {
        let p = self.p;
        let q = self.q;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let to_poly = |c: u32| digits(c, p, self.n);
        let from_poly = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let one = {
            let mut v = vec![0u32; self.n as usize];
            v[0] = 1;
            v
        };

        let mut primitive = 1u32;
        if q > 2 {
            primitive = (2..q)
                .find(|&c| {
                    let g = to_poly(c);
                    factors
                        .iter()
                        .all(|&r| poly_powmod(&g, order / r, &self.modulus, p) != one)
                })
                .expect("multiplicative group of a finite field is cyclic");
        }

        let g = to_poly(primitive);
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for i in 0..order as usize {
            let c = from_poly(&cur);
            exp[i] = c;
            exp[i + order as usize] = c;
            log[c as usize] = i as u32;
            cur = poly_mulmod(&cur, &g, &self.modulus, p);
        }
        self.primitive = primitive;
        self.exp = exp;
        self.log = log;
    }
}

// Dense polynomials over Z_p, constant term first, trailing zeros trimmed
// except where a fixed length is required by the caller.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `m` (m nonzero), trimmed.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &mc) in m.iter().enumerate() {
            let sub = factor * mc as u64 % p as u64;
            let idx = i + shift;
            r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

/// Product reduced modulo `m`, padded to `deg m` coefficients.
fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let n = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(n, 0);
    r
}

fn poly_powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let n = m.len() - 1;
    let mut result = vec![0u32; n];
    result[0] = 1;
    if n == 0 {
        return result;
    }
    let mut b = poly_rem(base, m, p);
    b.resize(n, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility by the distinct-degree criterion: no common factor of `m`
/// with `t^(p^k) - t` for `1 <= k < n`, and `t^(p^n) = t` modulo `m`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let m = trim(m.to_vec());
    if m.len() < 2 {
        return false;
    }
    let n = m.len() - 1;
    if n == 1 {
        return true;
    }
    let mut t = vec![0u32; n];
    t[1] = 1;
    let mut frob = t.clone();
    for k in 1..=n {
        frob = poly_powmod(&frob, p as u64, &m, p);
        let mut diff = frob.clone();
        diff[1] = (diff[1] + p - 1) % p;
        if k < n {
            let g = poly_gcd(&m, &diff, p);
            if g.len() > 1 {
                return false;
            }
        } else if !trim(diff).is_empty() {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `n`, coefficients compared from the
/// constant term upward.
fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    for idx in 0..count {
        // idx enumerates (c0, c1, ..., c_{n-1}) with c0 most significant
        let mut coeffs = vec![0u32; n as usize + 1];
        let mut rest = idx;
        for i in (0..n as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[n as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility of degree <= 3 polynomials: no roots in Z_p.
    fn has_no_roots(m: &[u32], p: u32) -> bool {
        (0..p).all(|x| {
            m.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                != 0
        })
    }

    fn brute_least_low_degree(p: u32, n: u32) -> Vec<u32> {
        let mut all = Vec::new();
        let count = p.pow(n);
        for code in 0..count {
            let mut c: Vec<u32> = (0..n).map(|i| (code / p.pow(i)) % p).collect();
            c.push(1);
            if has_no_roots(&c, p) {
                all.push(c);
            }
        }
        all.into_iter().min().unwrap()
    }

    #[test]
    fn degree_one_modulus_is_t() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.modulus_digits(), "01");
        assert_eq!(f.units(), vec![f.one()]);
    }

    #[test]
    fn gf4_modulus_matches_exhaustive_search() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(brute_least_low_degree(2, 2), vec![1, 1, 1]);
    }

    #[test]
    fn gf27_modulus_matches_root_free_search() {
        let f = make_field(3, 3).unwrap();
        let oracle = brute_least_low_degree(3, 3);
        assert_eq!(f.modulus(), oracle.as_slice());
        assert_eq!(f.modulus(), &[1, 0, 2, 1]);
        assert_eq!(f.units().len(), 26);
    }

    #[test]
    fn gf4_products() {
        let f = make_field(2, 2).unwrap();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let t1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(t, t).unwrap(), t1);
        assert_eq!(f.mul(t, t1).unwrap(), f.one());
        assert_eq!(f.inv(t).unwrap(), t1);
        assert_eq!(f.frobenius(t, 1).unwrap(), t1);
        assert_eq!(f.frobenius(f.frobenius(t, 1).unwrap(), 1).unwrap(), t);
        assert_eq!(t1.to_string(), "11");
        let units: Vec<String> = f.units().iter().map(|u| u.to_string()).collect();
        assert_eq!(units, vec!["10", "01", "11"]);
    }

    #[test]
    fn errors() {
        assert!(matches!(make_field(4, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_field(2, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_field(2, 21), Err(Error::Capacity(_))));
        let f = make_field(3, 2).unwrap();
        let g = make_field(3, 3).unwrap();
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert!(matches!(f.add(f.one(), g.one()), Err(Error::SpecMismatch(_))));
        assert!(matches!(f.frobenius(f.one(), 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn prime_field_generator() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.generator(), f.zero());
        assert_eq!(f.mul(f.element(2).unwrap(), f.element(3).unwrap()).unwrap(), f.one());
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let f = make_field(p, n).unwrap();
            let q = f.order();
            for x in 0..q {
                assert_eq!(f.pow_code(x, q as u64), x, "Fermat in GF({p}^{n})");
                if x != 0 {
                    assert_eq!(f.mul_code(x, f.inv_code(x)), 1);
                    assert_eq!(f.pow_code(x, (q - 1) as u64), 1);
                }
                assert_eq!(f.add_code(x, f.neg_code(x)), 0);
                let mut y = x;
                for _ in 0..n {
                    y = f.frob_code(y, 1);
                }
                assert_eq!(y, x);
                for y in 0..q {
                    assert_eq!(f.add_code(x, y), f.add_code(y, x));
                    assert_eq!(f.mul_code(x, y), f.mul_code(y, x));
                    for k in 0..n {
                        assert_eq!(
                            f.frob_code(f.mul_code(x, y), k),
                            f.mul_code(f.frob_code(x, k), f.frob_code(y, k))
                        );
                        assert_eq!(
                            f.frob_code(f.add_code(x, y), k),
                            f.add_code(f.frob_code(x, k), f.frob_code(y, k))
                        );
                    }
                    if q <= 27 {
                        for z in 0..q {
                            assert_eq!(
                                f.mul_code(f.mul_code(x, y), z),
                                f.mul_code(x, f.mul_code(y, z))
                            );
                            assert_eq!(
                                f.add_code(f.add_code(x, y), z),
                                f.add_code(x, f.add_code(y, z))
                            );
                            assert_eq!(
                                f.mul_code(x, f.add_code(y, z)),
                                f.add_code(f.mul_code(x, y), f.mul_code(x, z))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_modulus() {
        let a = make_field(2, 8).unwrap();
        let b = make_field(2, 8).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn large_field_uses_digitwise_add() {
        let f = make_field(7, 4).unwrap();
        let x = f.parse("1234").unwrap();
        let y = f.parse("6543").unwrap();
        assert_eq!(f.add(x, y).unwrap().to_string(), "0000");
        assert_eq!(f.mul(x, f.inv(x).unwrap()).unwrap(), f.one());
    }
}
