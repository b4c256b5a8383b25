//! Small ad-hoc ambients used for cross-checks.

use super::{Ambient, Elem};

/// Cyclic group `Z/m` with elements `0..m`.
#[derive(Debug, Clone)]
pub struct Cyclic {
    m: u32,
}

impl Cyclic {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1);
        Cyclic { m }
    }
}

impl Ambient for Cyclic {
    fn universe_size(&self) -> usize {
        self.m as usize
    }

    fn identity(&self) -> Elem {
        0
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        (a + b) % self.m
    }

    fn inv(&self, a: Elem) -> Elem {
        (self.m - a) % self.m
    }
}

/// Dihedral group of order `2n`; rank `r + n*f` encodes `rho^r sigma^f`
/// with `sigma rho sigma^-1 = rho^-1`.
#[derive(Debug, Clone)]
pub struct Dihedral {
    n: u32,
}

impl Dihedral {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1);
        Dihedral { n }
    }

    pub fn rotation(&self) -> Elem {
        1 % self.n
    }

    pub fn reflection(&self) -> Elem {
        self.n
    }

    pub fn standard_generators(&self) -> Vec<Elem> {
        vec![self.rotation(), self.reflection()]
    }
}

impl Ambient for Dihedral {
    fn universe_size(&self) -> usize {
        2 * self.n as usize
    }

    fn identity(&self) -> Elem {
        0
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (r1, f1) = (a % self.n, a / self.n);
        let (r2, f2) = (b % self.n, b / self.n);
        let r = if f1 == 1 {
            (r1 + self.n - r2) % self.n
        } else {
            (r1 + r2) % self.n
        };
        r + self.n * (f1 ^ f2)
    }

    fn inv(&self, a: Elem) -> Elem {
        let (r, f) = (a % self.n, a / self.n);
        if f == 1 {
            a
        } else {
            (self.n - r) % self.n
        }
    }
}

/// Direct product of two ambients; rank `a * |B| + b`.
#[derive(Debug, Clone)]
pub struct Product<A, B> {
    left: A,
    right: B,
}

impl<A: Ambient, B: Ambient> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Product { left, right }
    }

    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        a * self.right.universe_size() as u32 + b
    }

    fn split(&self, x: Elem) -> (Elem, Elem) {
        let w = self.right.universe_size() as u32;
        (x / w, x % w)
    }
}

impl<A: Ambient, B: Ambient> Ambient for Product<A, B> {
    fn universe_size(&self) -> usize {
        self.left.universe_size() * self.right.universe_size()
    }

    fn identity(&self) -> Elem {
        self.pair(self.left.identity(), self.right.identity())
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        let (a1, b1) = self.split(x);
        let (a2, b2) = self.split(y);
        self.pair(self.left.mul(a1, a2), self.right.mul(b1, b2))
    }

    fn inv(&self, x: Elem) -> Elem {
        let (a, b) = self.split(x);
        self.pair(self.left.inv(a), self.right.inv(b))
    }
}
