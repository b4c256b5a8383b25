//! The Heisenberg group `H(F)` over a finite field, its extension
//! `K(F) = H(F) ⋊ F*` and `G(F) = K(F) ⋊ Gal(F/F_p)`, with their named
//! subgroups.
//!
//! All three groups live in one ambient universe of tuples
//! `(a, b, c; x; s)` with product
//!
//! ```text
//! (h1, x1, s1)(h2, x2, s2) = (h1 · α_{x1}(φ_{s1}(h2)), x1 · φ_{s1}(x2), s1 + s2 mod n)
//! ```
//!
//! where `(a1,b1,c1)·(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1 b2)`,
//! `α_x(a,b,c) = (a, bx, cx)` and `φ_s` applies the Frobenius power `p^s`
//! to each coordinate. `K(F)` is the slice `s = 0` and `H(F)` the slice
//! `s = 0, x = 1`.
//!
//! Ranks pack `((((s·(q-1) + (x-1))·q + a)·q + b)·q + c)` with field
//! elements given by their base-p codes, so `H(F)` occupies the first `q^3`
//! ranks and `K(F)` the first `q^3 (q-1)`.

mod pipeline;
mod structure;

use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{render_digits, FieldElement, FieldSpec};
use crate::group::{max_enumeration, Ambient, Elem, Group};

pub use pipeline::{
    theorem_pipeline, Candidate, CharsMode, GagolaStatus, PipelineOptions, PipelineResult,
    StabilizerInfo,
};
pub use structure::{structural_checks, StructuralReport};

/// An element `(a, b, c; x; s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub x: FieldElement,
    pub s: u32,
}

/// Arithmetic on packed `(a, b, c; x; s)` tuples over one field.
pub struct SemidirectAmbient {
    field: FieldSpec,
    q: u32,
    n: u32,
    size: usize,
}

impl fmt::Debug for SemidirectAmbient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemidirectAmbient")
            .field("field", &self.field)
            .finish()
    }
}

#[derive(Clone, Copy)]
struct Raw {
    a: u32,
    b: u32,
    c: u32,
    x: u32,
    s: u32,
}

impl SemidirectAmbient {
    pub fn new(field: FieldSpec) -> Result<Self> {
        let q = field.order();
        let n = field.n();
        let size = n as u64 * (q as u64 - 1).max(1) * (q as u64).pow(3);
        if q < 2 || size > u32::MAX as u64 {
            return Err(Error::Capacity(format!(
                "G(F) over GF({}^{}) has {size} elements, beyond the packed encoding",
                field.p(),
                n
            )));
        }
        Ok(SemidirectAmbient {
            field,
            q,
            n,
            size: size as usize,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    fn unpack(&self, e: Elem) -> Raw {
        let q = self.q;
        let c = e % q;
        let r = e / q;
        let b = r % q;
        let r = r / q;
        let a = r % q;
        let r = r / q;
        let x = r % (q - 1) + 1;
        let s = r / (q - 1);
        Raw { a, b, c, x, s }
    }

    #[inline]
    fn pack(&self, r: Raw) -> Elem {
        let q = self.q;
        (((r.s * (q - 1) + (r.x - 1)) * q + r.a) * q + r.b) * q + r.c
    }

    pub fn encode(&self, g: &GroupElement) -> Result<Elem> {
        let f = &self.field;
        for v in [g.a, g.b, g.c, g.x] {
            f.add(v, f.zero())?;
        }
        if g.x.is_zero() {
            return Err(Error::InvalidArgument("x coordinate must be nonzero".into()));
        }
        if g.s >= self.n {
            return Err(Error::InvalidArgument(format!(
                "Galois coordinate {} out of range [0, {})",
                g.s, self.n
            )));
        }
        Ok(self.pack(Raw {
            a: g.a.code(),
            b: g.b.code(),
            c: g.c.code(),
            x: g.x.code(),
            s: g.s,
        }))
    }

    pub fn decode(&self, e: Elem) -> GroupElement {
        let r = self.unpack(e);
        let f = &self.field;
        let el = |c| f.element(c).expect("packed code within field");
        GroupElement {
            a: el(r.a),
            b: el(r.b),
            c: el(r.c),
            x: el(r.x),
            s: r.s,
        }
    }

    /// Heisenberg element `(a, b, c)` with `x = 1`, `s = 0`.
    pub fn heisenberg(&self, a: u32, b: u32, c: u32) -> Elem {
        self.pack(Raw { a, b, c, x: 1, s: 0 })
    }

    /// Pure `F*` element with the given field code.
    pub fn unit(&self, x: u32) -> Elem {
        self.pack(Raw { a: 0, b: 0, c: 0, x, s: 0 })
    }

    /// Pure Galois element `φ_s`.
    pub fn galois(&self, s: u32) -> Elem {
        self.pack(Raw { a: 0, b: 0, c: 0, x: 1, s: s % self.n })
    }

    /// Product in `H(F)`; both factors must have `x = 1` and `s = 0`.
    pub fn h_mult(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        for g in [g1, g2] {
            if g.x != self.field.one() || g.s != 0 {
                return Err(Error::InvalidArgument(
                    "Heisenberg product of an element outside H(F)".into(),
                ));
            }
        }
        self.g_mult(g1, g2)
    }

    pub fn g_mult(&self, g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
        Ok(self.decode(self.mul(self.encode(g1)?, self.encode(g2)?)))
    }

    /// `α_x(a, b, c) = (a, bx, cx)` on a Heisenberg triple.
    pub fn alpha(
        &self,
        x: FieldElement,
        h: (FieldElement, FieldElement, FieldElement),
    ) -> Result<(FieldElement, FieldElement, FieldElement)> {
        let f = &self.field;
        if x.is_zero() {
            return Err(Error::InvalidArgument("α_x needs x in F*".into()));
        }
        Ok((h.0, f.mul(h.1, x)?, f.mul(h.2, x)?))
    }

    /// `φ_s(a, b, c) = (a^σ, b^σ, c^σ)` for `σ = Frobenius^s`.
    pub fn phi(
        &self,
        s: u32,
        h: (FieldElement, FieldElement, FieldElement),
    ) -> Result<(FieldElement, FieldElement, FieldElement)> {
        let f = &self.field;
        Ok((f.frobenius(h.0, s)?, f.frobenius(h.1, s)?, f.frobenius(h.2, s)?))
    }

    /// `a|b|c|x|s` with base-p digit strings, constant term first.
    pub fn render(&self, e: Elem) -> String {
        let g = self.decode(e);
        format!(
            "{}|{}|{}|{}|{}",
            g.a,
            g.b,
            g.c,
            g.x,
            render_digits(&base_p_digits(g.s, self.field.p()))
        )
    }
}

/// Base-p digits of `v`, least significant first, at least one digit.
fn base_p_digits(mut v: u32, p: u32) -> Vec<u32> {
    let mut out = vec![v % p];
    v /= p;
    while v > 0 {
        out.push(v % p);
        v /= p;
    }
    out
}

impl Ambient for SemidirectAmbient {
    fn universe_size(&self) -> usize {
        self.size
    }

    fn identity(&self) -> Elem {
        0
    }

    #[inline]
    fn mul(&self, e1: Elem, e2: Elem) -> Elem {
        let f = &self.field;
        let g = self.unpack(e1);
        let h = self.unpack(e2);
        let a2 = f.frob_code(h.a, g.s);
        let b2 = f.mul_code(f.frob_code(h.b, g.s), g.x);
        let c2 = f.mul_code(f.frob_code(h.c, g.s), g.x);
        let a = f.add_code(g.a, a2);
        let b = f.add_code(g.b, b2);
        let c = f.add_code(f.add_code(g.c, c2), f.mul_code(g.a, b2));
        let x = f.mul_code(g.x, f.frob_code(h.x, g.s));
        let s = (g.s + h.s) % self.n;
        self.pack(Raw { a, b, c, x, s })
    }

    #[inline]
    fn inv(&self, e: Elem) -> Elem {
        let f = &self.field;
        let g = self.unpack(e);
        let s = (self.n - g.s) % self.n;
        let xinv = f.inv_code(g.x);
        // h^-1 = (-a, -b, -c + ab), then α_{x^-1}, then φ_{-s}
        let ha = f.neg_code(g.a);
        let hb = f.neg_code(g.b);
        let hc = f.add_code(f.neg_code(g.c), f.mul_code(g.a, g.b));
        let hb = f.mul_code(hb, xinv);
        let hc = f.mul_code(hc, xinv);
        self.pack(Raw {
            a: f.frob_code(ha, s),
            b: f.frob_code(hb, s),
            c: f.frob_code(hc, s),
            x: f.frob_code(xinv, s),
            s,
        })
    }
}

/// Which of the three groups to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    H,
    K,
    G,
}

impl GroupKind {
    pub fn order(self, p: u32, n: u32) -> u128 {
        let q = (p as u128).pow(n);
        let h = q * q * q;
        match self {
            GroupKind::H => h,
            GroupKind::K => h * (q - 1),
            GroupKind::G => h * (q - 1) * n as u128,
        }
    }
}

fn basis_codes(field: &FieldSpec) -> Vec<u32> {
    (0..field.n()).map(|i| field.p().pow(i)).collect()
}

fn h_generators(amb: &SemidirectAmbient) -> Vec<Elem> {
    let basis = basis_codes(amb.field());
    let mut gens: Vec<Elem> = basis.iter().map(|&e| amb.heisenberg(e, 0, 0)).collect();
    gens.extend(basis.iter().map(|&e| amb.heisenberg(0, e, 0)));
    gens
}

fn unit_generators(amb: &SemidirectAmbient) -> Vec<Elem> {
    if amb.field().order() == 2 {
        Vec::new()
    } else {
        vec![amb.unit(amb.field().primitive_code())]
    }
}

fn galois_generators(amb: &SemidirectAmbient) -> Vec<Elem> {
    if amb.field().n() == 1 {
        Vec::new()
    } else {
        vec![amb.galois(1)]
    }
}

fn check_order(kind: GroupKind, field: &FieldSpec) -> Result<()> {
    let order = kind.order(field.p(), field.n());
    let cap = max_enumeration() as u128;
    if order > cap {
        return Err(Error::Capacity(format!(
            "{kind:?}(GF({}^{})) has order {order}, above the enumeration cap {cap}",
            field.p(),
            field.n()
        )));
    }
    Ok(())
}

/// Realizes one of `H(F)`, `K(F)`, `G(F)` in a fresh ambient.
pub fn build_group(field: &FieldSpec, kind: GroupKind) -> Result<Group<SemidirectAmbient>> {
    check_order(kind, field)?;
    let amb = Arc::new(SemidirectAmbient::new(field.clone())?);
    let mut gens = h_generators(&amb);
    if kind != GroupKind::H {
        gens.extend(unit_generators(&amb));
    }
    if kind == GroupKind::G {
        gens.extend(galois_generators(&amb));
    }
    Group::closure(amb, &gens)
}

/// `H(F) ≤ K(F) ≤ G(F)` and their named subgroups, all in one ambient.
#[derive(Clone, Debug)]
pub struct ConstructionBundle {
    pub ambient: Arc<SemidirectAmbient>,
    pub h: Group<SemidirectAmbient>,
    pub k: Group<SemidirectAmbient>,
    pub g: Group<SemidirectAmbient>,
    /// `{(0, 0, c)}`.
    pub z: Group<SemidirectAmbient>,
    /// `{(0, b, c)}`.
    pub b: Group<SemidirectAmbient>,
    /// The complement `F*`.
    pub units: Group<SemidirectAmbient>,
    /// `T = Z F*`.
    pub t: Group<SemidirectAmbient>,
    /// `B F*`.
    pub b_units: Group<SemidirectAmbient>,
    /// `{(a, 0, 0)}`, the fixed points of `F*` on `H(F)`.
    pub fixed_points: Group<SemidirectAmbient>,
    /// The Galois complement `S`.
    pub galois: Group<SemidirectAmbient>,
}

impl ConstructionBundle {
    pub fn field(&self) -> &FieldSpec {
        self.ambient.field()
    }

    pub fn p(&self) -> u64 {
        self.field().p() as u64
    }
}

pub fn build_bundle(field: &FieldSpec) -> Result<ConstructionBundle> {
    check_order(GroupKind::G, field)?;
    let amb = Arc::new(SemidirectAmbient::new(field.clone())?);
    let basis = basis_codes(field);
    let units = unit_generators(&amb);
    let close = |gens: &[Elem]| Group::closure(Arc::clone(&amb), gens);

    let h = close(&h_generators(&amb))?;
    let k = h.extend(&units)?;
    let g = k.extend(&galois_generators(&amb))?;
    let z_gens: Vec<Elem> = basis.iter().map(|&e| amb.heisenberg(0, 0, e)).collect();
    let z = close(&z_gens)?;
    let mut b_gens: Vec<Elem> = basis.iter().map(|&e| amb.heisenberg(0, e, 0)).collect();
    b_gens.extend(&z_gens);
    let b = close(&b_gens)?;
    let fixed_gens: Vec<Elem> = basis.iter().map(|&e| amb.heisenberg(e, 0, 0)).collect();
    let fixed_points = close(&fixed_gens)?;
    let unit_group = close(&units)?;
    let t = z.extend(&units)?;
    let b_units = b.extend(&units)?;
    let galois = close(&galois_generators(&amb))?;
    Ok(ConstructionBundle {
        ambient: amb,
        h,
        k,
        g,
        z,
        b,
        units: unit_group,
        t,
        b_units,
        fixed_points,
        galois,
    })
}

/// Writes the group-dump format: a header `p n modulus order`, then one
/// `a|b|c|x|s` line per element in canonical order.
pub fn write_dump<W: Write>(
    out: &mut W,
    group: &Group<SemidirectAmbient>,
) -> io::Result<()> {
    let amb = group.ambient();
    let f = amb.field();
    writeln!(
        out,
        "{} {} {} {}",
        f.p(),
        f.n(),
        f.modulus_digits(),
        group.order()
    )?;
    for &e in group.elements() {
        writeln!(out, "{}", amb.render(e))?;
    }
    Ok(())
}

/// Human-readable fingerprint: canonical generators rendered as elements.
pub fn fingerprint(group: &Group<SemidirectAmbient>) -> Result<Vec<String>> {
    let amb = group.ambient();
    Ok(group
        .canonical_generators()?
        .into_iter()
        .map(|e| amb.render(e))
        .collect())
}
