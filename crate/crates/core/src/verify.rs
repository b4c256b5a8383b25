//! Decision procedures for Camina pairs, Frobenius kernels and p-closedness.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{gcd, is_prime_power, Ambient, Elem, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaminaMethod {
    Definitional,
    CentralizerCriterion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaminaVerdict {
    pub is_camina: bool,
    pub method: CaminaMethod,
    /// On failure: `g` outside `N` and `m` in `gN` not conjugate to `g`.
    pub witness: Option<(Elem, Elem)>,
}

fn check_proper_normal<A: Ambient>(g: &Group<A>, n: &Group<A>) -> Result<()> {
    if !n.is_normal_in(g)? {
        return Err(Error::InvalidArgument("N is not a normal subgroup of G".into()));
    }
    if n.is_trivial() {
        return Err(Error::InvalidArgument("N is trivial".into()));
    }
    if n.order() == g.order() {
        return Err(Error::InvalidArgument("N equals G".into()));
    }
    Ok(())
}

/// Conjugation orbit of `x` under `g`, by breadth-first search over generators.
fn orbit<A: Ambient>(g: &Group<A>, x: Elem) -> HashSet<Elem> {
    let amb = g.ambient();
    let mut seen = HashSet::from([x]);
    let mut queue = vec![x];
    while let Some(y) = queue.pop() {
        for &s in g.generators() {
            let z = amb.conj(s, y);
            if seen.insert(z) {
                queue.push(z);
            }
        }
    }
    seen
}

/// Least element of `xN` outside the conjugacy class `class`, if any.
fn coset_escape<A: Ambient>(
    g: &Group<A>,
    n: &Group<A>,
    x: Elem,
    class: &HashSet<Elem>,
) -> Option<Elem> {
    let amb = g.ambient();
    let mut outside: Vec<Elem> = n
        .elements()
        .iter()
        .map(|&m| amb.mul(x, m))
        .filter(|y| !class.contains(y))
        .collect();
    outside.sort_unstable();
    outside.first().copied()
}

/// Camina test from the definition: walk the elements of `G \ N` in
/// canonical order, compute each new conjugacy class by orbit search and
/// check that it swallows the whole coset of its least element.
pub fn is_camina_pair<A: Ambient>(g: &Group<A>, n: &Group<A>) -> Result<CaminaVerdict> {
    check_proper_normal(g, n)?;
    let mut covered: HashSet<Elem> = HashSet::new();
    for &x in g.elements() {
        if n.contains(x) || covered.contains(&x) {
            continue;
        }
        let class = orbit(g, x);
        if let Some(m) = coset_escape(g, n, x, &class) {
            return Ok(CaminaVerdict {
                is_camina: false,
                method: CaminaMethod::Definitional,
                witness: Some((x, m)),
            });
        }
        covered.extend(class);
    }
    Ok(CaminaVerdict {
        is_camina: true,
        method: CaminaMethod::Definitional,
        witness: None,
    })
}

/// Camina test by centralizer orders: `(G, N)` is Camina iff
/// `|C_G(g)| = |C_{G/N}(gN)|` for one lift `g` of every nonidentity class of `G/N`.
pub fn is_camina_pair_fast<A: Ambient>(g: &Group<A>, n: &Group<A>) -> Result<CaminaVerdict> {
    check_proper_normal(g, n)?;
    let q = g.quotient(n)?;
    let gc = g.classes();
    let qc = q.group.classes();
    for (i, &rep) in qc.reps.iter().enumerate().skip(1) {
        let lift = q.lift(rep);
        let cls = g.class_of(lift).expect("lift lies in G");
        if gc.centralizer_orders[cls] != qc.centralizer_orders[i] {
            let amb = g.ambient();
            let m = n
                .elements()
                .iter()
                .map(|&k| amb.mul(lift, k))
                .filter(|&y| g.class_of(y) != Some(cls))
                .min()
                .ok_or_else(|| Error::Internal("centralizer criterion without witness".into()))?;
            return Ok(CaminaVerdict {
                is_camina: false,
                method: CaminaMethod::CentralizerCriterion,
                witness: Some((lift, m)),
            });
        }
    }
    Ok(CaminaVerdict {
        is_camina: true,
        method: CaminaMethod::CentralizerCriterion,
        witness: None,
    })
}

/// Definitional check on `count` cosets `gN` with `g` drawn from `G \ N`
/// by a seeded generator. Returns true iff every sampled coset lies in one class.
pub fn spot_check_camina<A: Ambient>(
    g: &Group<A>,
    n: &Group<A>,
    count: usize,
    seed: u64,
) -> Result<bool> {
    check_proper_normal(g, n)?;
    let outside: Vec<Elem> = g
        .elements()
        .iter()
        .copied()
        .filter(|&x| !n.contains(x))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &x in outside.choose_multiple(&mut rng, count.min(outside.len())) {
        let class = orbit(g, x);
        if coset_escape(g, n, x, &class).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Frobenius group with kernel `N`: `gcd(|N|, |G:N|) = 1` and every
/// nonidentity element of `N` has its centralizer inside `N`.
pub fn is_frobenius_kernel<A: Ambient>(g: &Group<A>, n: &Group<A>) -> Result<bool> {
    check_proper_normal(g, n)?;
    let index = (g.order() / n.order()) as u64;
    if gcd(n.order() as u64, index) != 1 {
        return Ok(false);
    }
    let amb = g.ambient();
    let classes = g.classes();
    for &r in classes.reps.iter().skip(1) {
        if !n.contains(r) {
            continue;
        }
        let escapes = g
            .elements()
            .iter()
            .any(|&y| !n.contains(y) && amb.mul(y, r) == amb.mul(r, y));
        if escapes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the Sylow p-subgroup is normal, cross-checked against `|O_p|`.
pub fn is_p_closed<A: Ambient>(g: &Group<A>, p: u64) -> Result<bool> {
    let sylow = g.sylow(p)?;
    let normal = sylow.is_normal_in(g)?;
    let core = g.core_of(&sylow)?;
    if normal != (core.order() == sylow.order()) {
        return Err(Error::Internal(
            "Sylow normality disagrees with the p-core order".into(),
        ));
    }
    Ok(normal)
}

/// Category of a Camina pair `(G, N)` that is not Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaminaCategory {
    /// `gcd(|G:N|, |N|) = 1`.
    Frobenius,
    /// `G` is a p-group.
    PGroup { p: u64 },
    /// `G/N` is a p-group, `N` is not, and `p` divides `|N|`.
    QuotientPGroup { p: u64 },
    /// `N` is a p-group, `G/N` is not, and `p` divides `|G:N|`.
    KernelPGroup { p: u64 },
}

pub fn classify_camina<A: Ambient>(
    g: &Group<A>,
    n: &Group<A>,
    verdict: &CaminaVerdict,
) -> Result<CaminaCategory> {
    if !verdict.is_camina {
        return Err(Error::InvalidArgument("pair is not a Camina pair".into()));
    }
    let order = g.order() as u64;
    let kernel = n.order() as u64;
    let index = order / kernel;
    let mut labels = Vec::new();
    if gcd(kernel, index) == 1 {
        labels.push(CaminaCategory::Frobenius);
    }
    if let Some(p) = is_prime_power(order) {
        labels.push(CaminaCategory::PGroup { p });
    }
    if let Some(p) = is_prime_power(index) {
        if is_prime_power(kernel) != Some(p) && kernel.is_multiple_of(p) {
            labels.push(CaminaCategory::QuotientPGroup { p });
        }
    }
    if let Some(p) = is_prime_power(kernel) {
        if is_prime_power(index) != Some(p) && index.is_multiple_of(p) {
            labels.push(CaminaCategory::KernelPGroup { p });
        }
    }
    match labels.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Internal(format!(
            "Camina pair of orders ({order}, {kernel}) fits no category"
        ))),
        _ => Err(Error::Internal(format!("ambiguous Camina category: {labels:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::small::{Cyclic, Dihedral};

    #[test]
    fn cyclic_four_over_two_is_not_camina() {
        let c = Arc::new(Cyclic::new(4));
        let g = Group::closure(Arc::clone(&c), &[1]).unwrap();
        let n = Group::closure(Arc::clone(&c), &[2]).unwrap();
        let v = is_camina_pair(&g, &n).unwrap();
        assert!(!v.is_camina);
        assert_eq!(v.witness, Some((1, 3)));
        let f = is_camina_pair_fast(&g, &n).unwrap();
        assert!(!f.is_camina);
        let (x, m) = f.witness.unwrap();
        assert!(!n.contains(x) && n.contains(c.mul(c.inv(x), m)) && x != m);
    }

    #[test]
    fn dihedral_eight_over_center() {
        let d = Arc::new(Dihedral::new(4));
        let g = Group::closure(Arc::clone(&d), &d.standard_generators()).unwrap();
        let z = g.center().unwrap();
        let v = is_camina_pair(&g, &z).unwrap();
        assert!(v.is_camina);
        assert!(is_camina_pair_fast(&g, &z).unwrap().is_camina);
        assert!(spot_check_camina(&g, &z, 10, 7).unwrap());
        assert_eq!(classify_camina(&g, &z, &v).unwrap(), CaminaCategory::PGroup { p: 2 });
        assert!(!is_frobenius_kernel(&g, &z).unwrap());
        assert!(is_p_closed(&g, 2).unwrap());
    }

    #[test]
    fn s3_is_frobenius() {
        let d = Arc::new(Dihedral::new(3));
        let g = Group::closure(Arc::clone(&d), &d.standard_generators()).unwrap();
        let n = Group::closure(Arc::clone(&d), &[1]).unwrap();
        assert!(is_frobenius_kernel(&g, &n).unwrap());
        let v = is_camina_pair(&g, &n).unwrap();
        assert!(v.is_camina);
        assert_eq!(classify_camina(&g, &n, &v).unwrap(), CaminaCategory::Frobenius);
        assert!(!is_p_closed(&g, 2).unwrap());
        assert!(is_p_closed(&g, 3).unwrap());
    }

    #[test]
    fn degenerate_kernels_rejected() {
        let d = Arc::new(Dihedral::new(3));
        let g = Group::closure(Arc::clone(&d), &d.standard_generators()).unwrap();
        let one = Group::trivial(Arc::clone(&d));
        assert!(matches!(is_camina_pair(&g, &one), Err(Error::InvalidArgument(_))));
        assert!(matches!(is_camina_pair(&g, &g), Err(Error::InvalidArgument(_))));
        let s = Group::closure(Arc::clone(&d), &[d.reflection()]).unwrap();
        assert!(matches!(is_camina_pair_fast(&g, &s), Err(Error::InvalidArgument(_))));
        let fail = CaminaVerdict {
            is_camina: false,
            method: CaminaMethod::Definitional,
            witness: None,
        };
        let n = Group::closure(Arc::clone(&d), &[1]).unwrap();
        assert!(classify_camina(&g, &n, &fail).is_err());
    }
}
