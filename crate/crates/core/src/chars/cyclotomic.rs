//! Exact arithmetic in the cyclotomic integers `Z[ζ_m]`, stored as integer
//! coordinates in the power basis `1, ζ, ..., ζ^(φ(m)-1)` modulo the m-th
//! cyclotomic polynomial. The representation is canonical, so equality and
//! zero tests are coordinate comparisons.

use std::fmt;
use std::sync::Arc;

use crate::group::gcd;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic(pub Vec<i64>);

impl Cyclotomic {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.0[1..].iter().all(|&c| c == 0).then(|| self.0[0])
    }
}

/// `Q(ζ_m)` with `ζ_m = exp(2πi/m)`.
#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    degree: usize,
    /// Reduced coordinates of `ζ^k` for `0 <= k < m`.
    powers: Vec<Vec<i64>>,
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Quotient of `a` by the monic polynomial `b` (exact division assumed).
fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for i in (0..=dq).rev() {
        let coef = rem[i + db];
        q[i] = coef;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= coef * bj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

impl CyclotomicField {
    pub fn new(m: u64) -> Arc<Self> {
        assert!(m >= 1);
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by ζ and reduce with x^degree = -Σ φ_i x^i
            let top = cur[degree - 1];
            cur = (0..degree)
                .map(|i| if i > 0 { cur[i - 1] } else { 0 } - top * phi[i])
                .collect();
        }
        Arc::new(CyclotomicField { m, degree, powers })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic(vec![0; self.degree])
    }

    pub fn integer(&self, v: i64) -> Cyclotomic {
        let mut c = vec![0; self.degree];
        c[0] = v;
        Cyclotomic(c)
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        let k = k.rem_euclid(self.m as i64) as usize;
        Cyclotomic(self.powers[k].clone())
    }

    pub fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &Cyclotomic, k: i64) -> Cyclotomic {
        Cyclotomic(a.0.iter().map(|x| x * k).collect())
    }

    /// Division by a rational integer, if exact.
    pub fn div_exact(&self, a: &Cyclotomic, k: i64) -> Option<Cyclotomic> {
        a.0.iter()
            .all(|x| x % k == 0)
            .then(|| Cyclotomic(a.0.iter().map(|x| x / k).collect()))
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        let mut out = vec![0i64; self.degree];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let p = &self.powers[(i + j) % self.m as usize];
                for (o, &c) in out.iter_mut().zip(p) {
                    *o += x * y * c;
                }
            }
        }
        Cyclotomic(out)
    }

    /// Complex conjugation `ζ -> ζ^-1`.
    pub fn conj(&self, a: &Cyclotomic) -> Cyclotomic {
        let mut out = vec![0i64; self.degree];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let p = &self.powers[(self.m as usize - i) % self.m as usize];
            for (o, &c) in out.iter_mut().zip(p) {
                *o += x * c;
            }
        }
        Cyclotomic(out)
    }

    /// Image of a value from `Q(ζ_d)`, `d | m`, under `ζ_d = ζ_m^(m/d)`.
    pub fn embed(&self, from: &CyclotomicField, a: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m % from.m, 0, "conductor {} does not divide {}", from.m, self.m);
        let step = (self.m / from.m) as i64;
        let mut out = self.zero();
        for (i, &x) in a.0.iter().enumerate() {
            if x != 0 {
                out = self.add(&out, &self.scale(&self.zeta_pow(i as i64 * step), x));
            }
        }
        out
    }

    /// Sum of `ζ_m^(k·m/o)` weighted by `mults[k]` for an `o`-th root pattern.
    pub fn from_root_multiplicities(&self, o: u64, mults: &[i64]) -> Cyclotomic {
        let step = (self.m / o) as i64;
        let mut out = vec![0i64; self.degree];
        for (k, &c) in mults.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = &self.powers[((k as i64 * step) as u64 % self.m) as usize];
            for (o, &v) in out.iter_mut().zip(p) {
                *o += c * v;
            }
        }
        Cyclotomic(out)
    }

    pub fn render(&self, a: &Cyclotomic) -> String {
        if let Some(v) = a.as_integer() {
            return v.to_string();
        }
        let mut s = String::new();
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let term = match (i, mag) {
                (0, _) => mag.to_string(),
                (_, 1) => format!("z{}^{i}", self.m),
                _ => format!("{mag}*z{}^{i}", self.m),
            };
            s.push_str(sign);
            s.push_str(&term);
        }
        s
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Least common multiple of two conductors.
pub fn common_conductor(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_relations() {
        for m in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            let k = CyclotomicField::new(m);
            let z = k.zeta_pow(1);
            let mut acc = k.integer(1);
            let mut sum = k.zero();
            for _ in 0..m {
                sum = k.add(&sum, &acc);
                acc = k.mul(&acc, &z);
            }
            assert_eq!(acc, k.integer(1), "ζ^m = 1 for m = {m}");
            if m > 1 {
                assert!(sum.is_zero(), "Σ ζ^k = 0 for m = {m}");
            }
            assert_eq!(k.mul(&z, &k.conj(&z)), k.integer(1));
        }
    }

    #[test]
    fn embedding_is_multiplicative() {
        let small = CyclotomicField::new(3);
        let big = CyclotomicField::new(12);
        let w = small.zeta_pow(1);
        let w2 = small.mul(&w, &w);
        assert_eq!(big.embed(&small, &w2), big.mul(&big.embed(&small, &w), &big.embed(&small, &w)));
        assert_eq!(big.embed(&small, &w), big.zeta_pow(4));
    }
}
