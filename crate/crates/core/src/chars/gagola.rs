//! Characters vanishing on all but two conjugacy classes.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{is_prime_power, p_part, Ambient, Elem, Group};

#[derive(Clone, Debug)]
pub struct GagolaReport<A: Ambient> {
    pub character: usize,
    pub degree: u64,
    /// The identity class and the single other class where the character is nonzero.
    pub classes: [usize; 2],
    pub values: ClassFunction,
    /// Identity together with the second class.
    pub normal_subgroup: Group<A>,
    pub is_normal: bool,
    pub is_elementary_abelian: bool,
    pub is_minimal_normal: bool,
}

/// Every irreducible character of `g` nonzero on exactly two classes.
pub fn gagola_characters<A: Ambient>(
    g: &Group<A>,
    table: &CharacterTable,
) -> Result<Vec<GagolaReport<A>>> {
    let id = table.identity_class();
    let amb = g.ambient();
    let mut out = Vec::new();
    for (i, row) in table.values().iter().enumerate() {
        let support: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
        if support.len() != 2 {
            continue;
        }
        let other = support.iter().copied().find(|&j| j != id).expect("identity is in the support");
        let class_elems: Vec<Elem> = g
            .elements()
            .iter()
            .enumerate()
            .filter(|(idx, _)| table.classes().class_of[*idx] as usize == other)
            .map(|(_, &x)| x)
            .collect();
        let mut set = class_elems.clone();
        set.push(amb.identity());
        let closure = Group::closure(Arc::clone(amb), &class_elems)?;
        set.sort_unstable();
        let is_subgroup = closure.elements() == set.as_slice();
        let (is_normal, is_elementary_abelian, is_minimal_normal) = if is_subgroup {
            let normal = closure.is_normal_in(g)?;
            let minimal = normal && g.normal_closure(&class_elems[..1])? == closure;
            let elementary = is_prime_power(closure.order() as u64)
                .is_some_and(|p| closure.is_elementary_abelian(p));
            (normal, elementary, minimal)
        } else {
            (false, false, false)
        };
        out.push(GagolaReport {
            character: i,
            degree: table.degrees()[i],
            classes: [id, other],
            values: table.character(i),
            normal_subgroup: closure,
            is_normal,
            is_elementary_abelian,
            is_minimal_normal,
        });
    }
    Ok(out)
}

/// Checks of the structure forced by a Gagola character, each reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GagolaConsistency {
    /// `H` is transitive on `N \ {1}`.
    pub transitive_on_kernel: bool,
    /// `H` is transitive on the nonprincipal linear characters of `N`.
    pub transitive_on_linear_characters: bool,
    /// The stabilizer of a nonprincipal `λ` has order `|H|_p`.
    pub stabilizer_is_sylow: bool,
    /// `|H| = |H|_p (|N| - 1)`.
    pub order_identity: bool,
    /// `e` with `e² = |P : N|` for a Sylow p-subgroup `P`, if a perfect square.
    pub ramification: Option<u64>,
    /// `χ(1) = (|N| - 1) e`.
    pub degree_identity: bool,
    pub vanishes_off_kernel: bool,
}

impl GagolaConsistency {
    pub fn all_pass(&self) -> bool {
        self.transitive_on_kernel
            && self.transitive_on_linear_characters
            && self.stabilizer_is_sylow
            && self.order_identity
            && self.degree_identity
            && self.vanishes_off_kernel
    }
}

/// Largest order for which the linear-character action is computed.
const CONSISTENCY_MAX_ORDER: usize = 100_000;

pub fn gagola_consistency<A: Ambient>(
    h: &Group<A>,
    report: &GagolaReport<A>,
    p: u64,
) -> Result<GagolaConsistency> {
    if h.order() > CONSISTENCY_MAX_ORDER {
        return Err(Error::Scale(format!(
            "consistency checks on a group of order {} exceed the cap {CONSISTENCY_MAX_ORDER}",
            h.order()
        )));
    }
    let n = &report.normal_subgroup;
    if !report.is_normal || !report.is_elementary_abelian {
        return Err(Error::InvalidArgument(
            "Gagola subgroup is not an elementary abelian normal subgroup".into(),
        ));
    }
    let amb = h.ambient();
    let n_order = n.order() as u64;
    let h_order = h.order() as u64;
    let hp = p_part(h_order, p);

    let nonidentity = n.elements().iter().copied().find(|&x| x != amb.identity());
    let transitive_on_kernel = nonidentity
        .map(|x| h.conjugation_orbit(x).len() as u64 == n_order - 1)
        .unwrap_or(false);

    // N ≅ F_p^k: coordinates over a greedy basis, characters as functionals
    let basis = n.canonical_generators()?;
    let k = basis.len();
    let q = n_order;
    let mut coords: HashMap<Elem, Vec<u64>> = HashMap::new();
    for idx in 0..q {
        let mut v = Vec::with_capacity(k);
        let mut rest = idx;
        let mut x = amb.identity();
        for &b in &basis {
            let c = rest % p;
            rest /= p;
            v.push(c);
            x = amb.mul(x, amb.pow(b, c));
        }
        coords.insert(x, v);
    }
    if coords.len() as u64 != q || p.checked_pow(k as u32) != Some(q) {
        return Err(Error::Internal("basis of N does not parametrise N".into()));
    }
    // λ^x(b) = λ(x b x^-1)
    let act = |x: Elem, lambda: &[u64]| -> Vec<u64> {
        basis
            .iter()
            .map(|&b| {
                let image = &coords[&amb.conj(x, b)];
                image.iter().zip(lambda).fold(0, |acc, (a, c)| (acc + a * c) % p)
            })
            .collect()
    };
    let mut start = vec![0u64; k];
    if k > 0 {
        start[0] = 1;
    }
    let mut orbit = vec![start.clone()];
    let mut seen: std::collections::HashSet<Vec<u64>> = [start.clone()].into_iter().collect();
    let mut i = 0;
    while i < orbit.len() {
        let lambda = orbit[i].clone();
        i += 1;
        for &s in h.generators() {
            let image = act(s, &lambda);
            if seen.insert(image.clone()) {
                orbit.push(image);
            }
        }
    }
    let transitive_on_linear_characters = orbit.len() as u64 == q - 1;
    let stabilizer_order = h.elements().iter().filter(|&&x| act(x, &start) == start).count() as u64;
    let stabilizer_is_sylow = stabilizer_order == hp;

    let order_identity = h_order == hp * (n_order - 1);

    let sylow = h.sylow(p)?;
    let index = sylow.order() as u64 / n_order;
    let root = (index as f64).sqrt().round() as u64;
    let ramification = (root * root == index && n.is_subgroup_of(&sylow)?).then_some(root);
    let degree_identity = ramification.is_some_and(|e| report.degree == (n_order - 1) * e);

    let classes = h.classes();
    let vanishes_off_kernel = classes
        .reps
        .iter()
        .zip(report.values.values())
        .all(|(&r, v)| n.contains(r) || v.is_zero());

    Ok(GagolaConsistency {
        transitive_on_kernel,
        transitive_on_linear_characters,
        stabilizer_is_sylow,
        order_identity,
        ramification,
        degree_identity,
        vanishes_off_kernel,
    })
}
