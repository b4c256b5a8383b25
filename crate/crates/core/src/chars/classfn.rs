//! Class functions with exact values: restriction, induction, inner
//! products and stabilizers of characters of normal subgroups.

use std::sync::Arc;

use super::cyclotomic::{common_conductor, Cyclotomic, CyclotomicField};
use super::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{Ambient, Group};

/// Values on the conjugacy classes of some group, in its class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    field: Arc<CyclotomicField>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor() == other.field.conductor() && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(field: Arc<CyclotomicField>, values: Vec<Cyclotomic>) -> Self {
        ClassFunction { field, values }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class of `g`.
    pub fn degree<A: Ambient>(&self, g: &Group<A>) -> Option<i64> {
        let id = g.class_of(g.identity())?;
        self.values.get(id)?.as_integer()
    }

    /// Same values over `Q(ζ_m)` for a multiple `m` of the current conductor.
    pub fn lifted_to(&self, field: &Arc<CyclotomicField>) -> ClassFunction {
        if field.conductor() == self.field.conductor() {
            return self.clone();
        }
        let values = self.values.iter().map(|v| field.embed(&self.field, v)).collect();
        ClassFunction::new(Arc::clone(field), values)
    }
}

fn check_classes<A: Ambient>(chi: &ClassFunction, g: &Group<A>) -> Result<()> {
    if chi.len() != g.classes().len() {
        return Err(Error::InvalidArgument(format!(
            "class function has {} values but the group has {} classes",
            chi.len(),
            g.classes().len()
        )));
    }
    Ok(())
}

/// `chi` on `G` restricted to the subgroup `m`.
pub fn restrict<A: Ambient>(chi: &ClassFunction, g: &Group<A>, m: &Group<A>) -> Result<ClassFunction> {
    check_classes(chi, g)?;
    if !m.is_subgroup_of(g)? {
        return Err(Error::InvalidArgument("restriction to a non-subgroup".into()));
    }
    let values = m
        .classes()
        .reps
        .iter()
        .map(|&r| chi.values[g.class_of(r).expect("M inside G")].clone())
        .collect();
    let out = ClassFunction::new(Arc::clone(&chi.field), values);
    Ok(out)
}

/// Induction of `phi` on `m` to `G`:
/// `φ^G(g) = Σ_{c ⊆ cl_G(g) ∩ M} |C_G(g)| / |C_M(h_c)| · φ(h_c)`.
pub fn induce<A: Ambient>(phi: &ClassFunction, m: &Group<A>, g: &Group<A>) -> Result<ClassFunction> {
    check_classes(phi, m)?;
    if !m.is_subgroup_of(g)? {
        return Err(Error::InvalidArgument("induction from a non-subgroup".into()));
    }
    let f = &phi.field;
    let gc = g.classes();
    let mc = m.classes();
    let mut values = vec![f.zero(); gc.len()];
    for (c, &r) in mc.reps.iter().enumerate() {
        let i = g.class_of(r).expect("M inside G");
        let factor = gc.centralizer_orders[i] / mc.centralizer_orders[c];
        values[i] = f.add(&values[i], &f.scale(&phi.values[c], factor as i64));
    }
    let out = ClassFunction::new(Arc::clone(f), values);
    #[cfg(debug_assertions)]
    reciprocity_spot_check(phi, m, g, &out)?;
    Ok(out)
}

/// `⟨φ^G, φ^G⟩ = ⟨(φ^G)_M, φ⟩`, a consequence of Frobenius reciprocity
/// checked on every induction in debug builds.
#[cfg(debug_assertions)]
fn reciprocity_spot_check<A: Ambient>(
    phi: &ClassFunction,
    m: &Group<A>,
    g: &Group<A>,
    induced: &ClassFunction,
) -> Result<()> {
    let (lhs, _) = inner_product_raw(induced, induced, g)?;
    let (rhs, _) = inner_product_raw(&restrict(induced, g, m)?, phi, m)?;
    if lhs.0.iter().map(|v| v * m.order() as i64).ne(rhs.0.iter().map(|v| v * g.order() as i64)) {
        return Err(Error::Internal("Frobenius reciprocity fails".into()));
    }
    Ok(())
}

/// `|G| ⟨a, b⟩` as an exact cyclotomic value over the common conductor.
fn inner_product_raw<A: Ambient>(
    a: &ClassFunction,
    b: &ClassFunction,
    g: &Group<A>,
) -> Result<(Cyclotomic, u64)> {
    check_classes(a, g)?;
    check_classes(b, g)?;
    let m = common_conductor(a.field.conductor(), b.field.conductor());
    let field = if m == a.field.conductor() {
        Arc::clone(&a.field)
    } else if m == b.field.conductor() {
        Arc::clone(&b.field)
    } else {
        CyclotomicField::new(m)
    };
    let a = a.lifted_to(&field);
    let b = b.lifted_to(&field);
    let sizes = &g.classes().sizes;
    let mut acc = field.zero();
    for j in 0..sizes.len() {
        let t = field.mul(&a.values[j], &field.conj(&b.values[j]));
        acc = field.add(&acc, &field.scale(&t, sizes[j] as i64));
    }
    Ok((acc, m))
}

/// `⟨a, b⟩_G`, which must be a rational integer (as for characters).
pub fn inner_product<A: Ambient>(a: &ClassFunction, b: &ClassFunction, g: &Group<A>) -> Result<i64> {
    let (raw, _) = inner_product_raw(a, b, g)?;
    raw.as_integer()
        .filter(|v| v % g.order() as i64 == 0)
        .map(|v| v / g.order() as i64)
        .ok_or_else(|| Error::InvalidArgument("inner product is not an integer".into()))
}

/// Irreducible constituents of `chi` with their multiplicities, in table order.
pub fn constituents<A: Ambient>(
    chi: &ClassFunction,
    g: &Group<A>,
    table: &CharacterTable,
) -> Result<Vec<(usize, i64)>> {
    if table.order() != g.order() {
        return Err(Error::InvalidArgument("table belongs to another group".into()));
    }
    let mut out = Vec::new();
    for i in 0..table.len() {
        let m = inner_product(chi, &table.character(i), g)?;
        if m != 0 {
            out.push((i, m));
        }
    }
    Ok(out)
}

/// `{x ∈ G : mu(x^-1 r x) = mu(r) for every class representative r of M}`.
pub fn constituent_stabilizer<A: Ambient>(
    g: &Group<A>,
    m: &Group<A>,
    mu: &ClassFunction,
) -> Result<Group<A>> {
    check_classes(mu, m)?;
    if !m.is_normal_in(g)? {
        return Err(Error::InvalidArgument("M is not normal in G".into()));
    }
    let amb = g.ambient();
    let reps = &m.classes().reps;
    let stab: Vec<_> = g
        .elements()
        .iter()
        .copied()
        .filter(|&x| {
            let xi = amb.inv(x);
            reps.iter().enumerate().all(|(c, &r)| {
                let moved = m.class_of(amb.conj(xi, r)).expect("M normal");
                mu.values[moved] == mu.values[c]
            })
        })
        .collect();
    Group::from_subgroup_elements(Arc::clone(amb), stab)
}
