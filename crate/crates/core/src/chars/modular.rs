//! Linear algebra and polynomial root finding over a prime field GF(ℓ)
//! with ℓ < 2^32.

use crate::gf::{is_prime, prime_factors};

#[derive(Clone, Copy, Debug)]
pub struct Zl {
    pub l: u64,
}

impl Zl {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.l - a) % self.l
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero mod {}", self.l);
        self.pow(a, self.l - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.l as i64) as u64
    }

    /// Least primitive root.
    pub fn primitive_root(self) -> u64 {
        let factors = prime_factors(self.l - 1);
        (2..self.l)
            .find(|&g| factors.iter().all(|&r| self.pow(g, (self.l - 1) / r) != 1))
            .unwrap_or(1)
    }
}

/// Least prime `ℓ > lower` with `ℓ ≡ 1 (mod m)`.
pub fn least_prime_congruent_one(m: u64, lower: u64) -> u64 {
    let mut l = (lower / m + 1) * m + 1;
    while !is_prime(l) {
        l += m;
    }
    l
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: Zl, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let sub = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}` for a square or rectangular matrix `M` given by rows.
pub fn nullspace(f: Zl, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rows = m.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev–LeVerrier
/// recurrence (valid since ℓ exceeds the dimension), constant term first.
pub fn charpoly(f: Zl, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = f.add(next[i][j], f.mul(a[i][l], m[l][j]));
                }
            }
            next[i][i] = f.add(next[i][i], coeffs[n - k + 1]);
        }
        m = next;
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = 0u64;
        for i in 0..n {
            for l in 0..n {
                tr = f.add(tr, f.mul(a[i][l], m[l][i]));
            }
        }
        coeffs[n - k] = f.mul(f.neg(tr), f.inv(k as u64));
    }
    coeffs
}

// Polynomials over GF(ℓ), constant term first, trimmed.

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pmul(f: Zl, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    ptrim(out)
}

fn pdivrem(f: Zl, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let b = ptrim(b.to_vec());
    let mut r = ptrim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead = f.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = f.mul(r[r.len() - 1], lead);
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[i + shift] = f.sub(r[i + shift], f.mul(c, bi));
        }
        r = ptrim(r);
    }
    (ptrim(q), r)
}

fn pgcd(f: Zl, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = ptrim(a.to_vec());
    let mut b = ptrim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = pdivrem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = f.inv(lead);
        for v in a.iter_mut() {
            *v = f.mul(*v, inv);
        }
    }
    a
}

fn ppowmod(f: Zl, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = pdivrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = pdivrem(f, &pmul(f, &result, &b), m).1;
        }
        b = pdivrem(f, &pmul(f, &b, &b), m).1;
        e >>= 1;
    }
    result
}

/// Distinct roots in GF(ℓ) of a nonzero polynomial, ascending.
pub fn roots(f: Zl, poly: &[u64]) -> Vec<u64> {
    let poly = ptrim(poly.to_vec());
    if poly.len() <= 1 {
        return Vec::new();
    }
    // product of the distinct linear factors: gcd(poly, x^ℓ - x)
    let mut xl = ppowmod(f, &[0, 1], f.l, &poly);
    xl.resize(xl.len().max(2), 0);
    xl[1] = f.sub(xl[1], 1);
    let split = pgcd(f, &poly, &ptrim(xl));
    let mut out = Vec::new();
    split_linear(f, split, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: Zl, g: Vec<u64>, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.mul(f.neg(g[0]), f.inv(g[1]))),
        _ => {
            let half = (f.l - 1) / 2;
            for a in 0..f.l {
                let mut h = ppowmod(f, &[a, 1], half, &g);
                if h.is_empty() {
                    h = vec![0];
                }
                h[0] = f.sub(h[0], 1);
                let d = pgcd(f, &g, &ptrim(h));
                if d.len() > 1 && d.len() < g.len() {
                    let (q, _) = pdivrem(f, &g, &d);
                    split_linear(f, d, out);
                    split_linear(f, q, out);
                    return;
                }
            }
            unreachable!("a split polynomial always separates");
        }
    }
}
