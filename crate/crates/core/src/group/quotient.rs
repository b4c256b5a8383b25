//! Quotient groups by normal subgroups, realized as ambients of their own.

use std::sync::Arc;

use super::{max_enumeration, Ambient, Elem, Group};
use crate::error::{Error, Result};

/// Cosets of a normal subgroup; coset `i` has least element `reps[i]`.
///
/// Cosets are numbered in ascending order of their least element, so the
/// identity coset is 0 and ranks follow the parent's canonical order.
pub struct QuotientAmbient<A: Ambient> {
    parent: Arc<A>,
    reps: Vec<Elem>,
    proj: Vec<u32>,
}

impl<A: Ambient> QuotientAmbient<A> {
    pub fn parent(&self) -> &Arc<A> {
        &self.parent
    }

    /// Coset of a parent element; `None` outside the numerator group.
    pub fn project(&self, g: Elem) -> Option<Elem> {
        match self.proj[g as usize] {
            u32::MAX => None,
            c => Some(c),
        }
    }

    /// Canonical (least) representative of a coset.
    pub fn lift(&self, coset: Elem) -> Elem {
        self.reps[coset as usize]
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

impl<A: Ambient> Ambient for QuotientAmbient<A> {
    fn universe_size(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> Elem {
        0
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.proj[self.parent.mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.proj[self.parent.inv(self.reps[a as usize]) as usize]
    }
}

/// `G/N` together with its projection from `G`.
pub struct Quotient<A: Ambient> {
    pub ambient: Arc<QuotientAmbient<A>>,
    pub group: Group<QuotientAmbient<A>>,
    numerator: Group<A>,
    kernel: Group<A>,
}

impl<A: Ambient> Quotient<A> {
    pub fn project(&self, g: Elem) -> Option<Elem> {
        self.ambient.project(g)
    }

    pub fn lift(&self, coset: Elem) -> Elem {
        self.ambient.lift(coset)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn kernel(&self) -> &Group<A> {
        &self.kernel
    }

    /// Full preimage in `G` of a subgroup of `G/N`.
    pub fn preimage(&self, sub: &Group<QuotientAmbient<A>>) -> Group<A> {
        let elems: Vec<Elem> = self
            .numerator
            .elements()
            .iter()
            .copied()
            .filter(|&g| sub.contains(self.ambient.proj[g as usize]))
            .collect();
        let mut gens = self.kernel.generators().to_vec();
        gens.extend(sub.generators().iter().map(|&c| self.lift(c)));
        Group::from_parts(Arc::clone(self.numerator.ambient()), gens, elems)
    }
}

impl<A: Ambient> Group<A> {
    /// `self / n` for a normal subgroup `n`.
    pub fn quotient(&self, n: &Group<A>) -> Result<Quotient<A>> {
        if !n.is_normal_in(self)? {
            return Err(Error::InvalidArgument(
                "quotient requires a normal subgroup".into(),
            ));
        }
        let index = self.order() / n.order();
        let cap = max_enumeration();
        if index > cap {
            return Err(Error::Capacity(format!(
                "quotient of index {index} exceeds the enumeration cap {cap}"
            )));
        }
        let amb = &**self.ambient();
        let mut proj = vec![u32::MAX; amb.universe_size()];
        let mut reps = Vec::with_capacity(index);
        for &g in self.elements() {
            if proj[g as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(g);
            for &x in n.elements() {
                proj[amb.mul(g, x) as usize] = c;
            }
        }
        let qa = Arc::new(QuotientAmbient {
            parent: Arc::clone(self.ambient()),
            reps,
            proj,
        });
        let mut gens: Vec<Elem> = self
            .generators()
            .iter()
            .map(|&g| qa.proj[g as usize])
            .filter(|&c| c != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let group = Group::from_parts(Arc::clone(&qa), gens, (0..index as u32).collect());
        Ok(Quotient {
            ambient: qa,
            group,
            numerator: self.clone(),
            kernel: n.clone(),
        })
    }
}
