//! Sylow subgroups, p-cores, p-residuals and p-length.

use std::sync::Arc;

use rayon::prelude::*;

use super::{gcd, p_part, Ambient, Elem, Group};
use crate::error::{Error, Result};

impl<A: Ambient> Group<A> {
    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order() as u64, p) == self.order() as u64
    }

    /// Elements whose order is a power of `p`, ascending.
    pub fn p_elements(&self, p: u64) -> Vec<Elem> {
        let pp = p_part(self.order() as u64, p);
        self.p_power_filter(pp)
    }

    /// Elements whose order is coprime to `p`, ascending.
    pub fn p_prime_elements(&self, p: u64) -> Vec<Elem> {
        let order = self.order() as u64;
        self.p_power_filter(order / p_part(order, p))
    }

    fn p_power_filter(&self, k: u64) -> Vec<Elem> {
        let amb = &**self.ambient();
        let id = amb.identity();
        self.elements()
            .par_iter()
            .copied()
            .filter(|&g| amb.pow(g, k) == id)
            .collect()
    }

    /// A Sylow p-subgroup, grown from the trivial group.
    pub fn sylow(&self, p: u64) -> Result<Group<A>> {
        self.sylow_from(p, &Group::trivial(Arc::clone(self.ambient())))
    }

    /// A Sylow p-subgroup containing the p-subgroup `hint`: repeatedly adjoin
    /// the least p-element that normalizes the current subgroup.
    pub fn sylow_from(&self, p: u64, hint: &Group<A>) -> Result<Group<A>> {
        if !hint.is_p_group(p) || !hint.is_subgroup_of(self)? {
            return Err(Error::InvalidArgument("Sylow hint must be a p-subgroup".into()));
        }
        let target = p_part(self.order() as u64, p) as usize;
        let mut current = hint.clone();
        if current.order() == target {
            return Ok(current);
        }
        let candidates = self.p_elements(p);
        while current.order() < target {
            let next = candidates
                .iter()
                .copied()
                .find(|&g| !current.contains(g) && current.normalized_by(g));
            match next {
                Some(g) => current = current.extend(&[g])?,
                None => {
                    return Err(Error::Internal(format!(
                        "Sylow growth stalled at order {} below {target}",
                        current.order()
                    )))
                }
            }
        }
        Ok(current)
    }

    /// Largest normal subgroup contained in `sub`.
    pub fn core_of(&self, sub: &Group<A>) -> Result<Group<A>> {
        let amb = &**self.ambient();
        let mut core = sub.clone();
        loop {
            let mut shrunk = false;
            for &g in self.generators() {
                let ginv = amb.inv(g);
                let kept: Vec<Elem> = core
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&c| core.contains(amb.conj(ginv, c)))
                    .collect();
                if kept.len() < core.order() {
                    core = Group::from_subgroup_elements(Arc::clone(self.ambient()), kept)?;
                    shrunk = true;
                }
            }
            if !shrunk {
                return Ok(core);
            }
        }
    }

    /// `O_p`: the largest normal p-subgroup, as the core of a Sylow p-subgroup.
    pub fn core_p(&self, p: u64) -> Result<Group<A>> {
        let sylow = self.sylow(p)?;
        self.core_of(&sylow)
    }

    /// `O^p`: the subgroup generated by all p'-elements.
    pub fn residual_p(&self, p: u64) -> Result<Group<A>> {
        let mut r = Group::trivial(Arc::clone(self.ambient()));
        for g in self.p_prime_elements(p) {
            if !r.contains(g) {
                r = r.extend(&[g])?;
            }
        }
        Ok(r)
    }

    /// `O_{p'}`: the largest normal subgroup of order coprime to `p`.
    ///
    /// Every element of `O_{p'}` centralizes `O_p` and has a normal closure
    /// of p'-order; conversely such elements generate a normal p'-subgroup.
    pub fn core_p_prime(&self, p: u64) -> Result<Group<A>> {
        let amb = &**self.ambient();
        let op = self.core_p(p)?;
        let op_gens = op.generators().to_vec();
        let mut x = Group::trivial(Arc::clone(self.ambient()));
        for g in self.p_prime_elements(p) {
            if x.contains(g) {
                continue;
            }
            if !op_gens.iter().all(|&h| amb.mul(g, h) == amb.mul(h, g)) {
                continue;
            }
            let mut y = x.extend(&[g])?;
            self.normal_closure_from(&mut y)?;
            if gcd(y.order() as u64, p) == 1 {
                x = y;
            }
        }
        Ok(x)
    }

    /// Length of the upper p-series `1 <= O_{p'} <= O_{p',p} <= ...`.
    pub fn p_length(&self, p: u64) -> Result<usize> {
        if !self.is_solvable()? {
            return Err(Error::Unsupported("p-length of a nonsolvable group".into()));
        }
        if !(self.order() as u64).is_multiple_of(p) {
            return Ok(0);
        }
        let mut length = 0;
        let mut x = self.core_p_prime(p)?;
        while x.order() < self.order() {
            let q = self.quotient(&x)?;
            let top = q.group.core_p(p)?;
            if top.is_trivial() {
                return Err(Error::Internal(
                    "solvable quotient with trivial p-core and p'-core".into(),
                ));
            }
            x = q.preimage(&top);
            length += 1;
            if x.order() == self.order() {
                break;
            }
            let q = self.quotient(&x)?;
            let pprime = q.group.core_p_prime(p)?;
            x = q.preimage(&pprime);
        }
        Ok(length)
    }
}
