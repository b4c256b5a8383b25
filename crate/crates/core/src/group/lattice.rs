//! Subgroup enumeration: normal subgroups, all subgroups of solvable groups,
//! and the maximal subgroups of elementary abelian p-groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{Ambient, Elem, Group};
use crate::error::{Error, Result};

impl<A: Ambient> Group<A> {
    /// Whether every nonidentity element has order `p` and the group is abelian.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        let amb = &**self.ambient();
        self.is_abelian()
            && self
                .generators()
                .iter()
                .all(|&g| amb.pow(g, p) == amb.identity())
    }

    /// All normal subgroups, ordered by (order, elements).
    pub fn normal_subgroups(&self) -> Result<Vec<Group<A>>> {
        let classes = self.classes();
        let mut atoms: Vec<Group<A>> = Vec::new();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        for &r in classes.reps.iter().skip(1) {
            let n = self.normal_closure(&[r])?;
            if seen.insert(n.elements().to_vec()) {
                atoms.push(n);
            }
        }
        let trivial = Group::trivial(Arc::clone(self.ambient()));
        seen.insert(trivial.elements().to_vec());
        let mut all = vec![trivial];
        all.extend(atoms.iter().cloned());
        let mut i = 0;
        while i < all.len() {
            let base = all[i].clone();
            for atom in &atoms {
                if atom.generators().iter().all(|&g| base.contains(g)) {
                    continue;
                }
                let joined = base.extend(atom.generators())?;
                if seen.insert(joined.elements().to_vec()) {
                    all.push(joined);
                }
            }
            i += 1;
        }
        all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(all)
    }

    /// Every subgroup of a solvable group, ordered by (order, elements).
    ///
    /// Each nontrivial subgroup of a solvable group has a normal subgroup of
    /// prime index, so every subgroup arises from a smaller one by adjoining
    /// one normalizing element.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Group<A>>> {
        if !self.is_solvable()? {
            return Err(Error::Unsupported(
                "subgroup enumeration requires a solvable group".into(),
            ));
        }
        let trivial = Group::trivial(Arc::clone(self.ambient()));
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        seen.insert(trivial.elements().to_vec());
        let mut found = vec![trivial.clone()];
        let mut queue = VecDeque::from([trivial]);
        while let Some(s) = queue.pop_front() {
            for &g in self.elements() {
                if s.contains(g) || !s.normalized_by(g) {
                    continue;
                }
                let t = s.extend(&[g])?;
                if seen.insert(t.elements().to_vec()) {
                    if found.len() >= cap {
                        return Err(Error::Capacity(format!(
                            "more than {cap} subgroups"
                        )));
                    }
                    found.push(t.clone());
                    queue.push_back(t);
                }
            }
        }
        found.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        Ok(found)
    }

    /// Subgroups of prime order `p`, ordered by least nonidentity element.
    pub fn subgroups_of_prime_order(&self, p: u64) -> Result<Vec<Group<A>>> {
        let amb = &**self.ambient();
        let id = amb.identity();
        let mut out: Vec<Group<A>> = Vec::new();
        let mut covered: HashSet<Elem> = HashSet::new();
        for &g in self.elements() {
            if g == id || covered.contains(&g) || amb.pow(g, p) != id {
                continue;
            }
            let c = Group::closure(Arc::clone(self.ambient()), &[g])?;
            covered.extend(c.elements().iter().copied());
            out.push(c);
        }
        Ok(out)
    }

    /// Subgroups of index `p` of an elementary abelian p-group, one per
    /// nonzero functional on a greedy basis, normalized so the first nonzero
    /// coordinate is 1; listed in lexicographic order of the functional.
    pub fn maximal_subgroups_elementary_abelian(&self, p: u64) -> Result<Vec<Group<A>>> {
        if !self.is_elementary_abelian(p) {
            return Err(Error::InvalidArgument(format!(
                "group is not elementary abelian of exponent {p}"
            )));
        }
        let amb = &**self.ambient();
        let basis = self.canonical_generators()?;
        let d = basis.len();
        let mut coords: HashMap<Elem, Vec<u64>> = HashMap::new();
        let total = (p as usize).pow(d as u32);
        for idx in 0..total {
            let mut v = vec![0u64; d];
            let mut rest = idx as u64;
            for c in v.iter_mut() {
                *c = rest % p;
                rest /= p;
            }
            let e = basis
                .iter()
                .zip(&v)
                .fold(amb.identity(), |acc, (&b, &c)| amb.mul(acc, amb.pow(b, c)));
            coords.insert(e, v);
        }
        if coords.len() != self.order() {
            return Err(Error::Internal("basis does not span the group".into()));
        }
        let mut out = Vec::new();
        for idx in 1..total {
            let mut f = vec![0u64; d];
            let mut rest = idx as u64;
            // most significant coordinate first gives lexicographic order
            for c in f.iter_mut().rev() {
                *c = rest % p;
                rest /= p;
            }
            if f.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let kernel: Vec<Elem> = self
                .elements()
                .iter()
                .copied()
                .filter(|e| {
                    let v = &coords[e];
                    v.iter().zip(&f).map(|(a, b)| a * b).sum::<u64>() % p == 0
                })
                .collect();
            out.push(Group::from_subgroup_elements(Arc::clone(self.ambient()), kernel)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::small::{Cyclic, Dihedral, Product};
    use super::*;

    #[test]
    fn dihedral_lattices() {
        let d = Arc::new(Dihedral::new(4));
        let g = Group::closure(Arc::clone(&d), &d.standard_generators()).unwrap();
        // D_8 has 10 subgroups and 6 normal subgroups
        assert_eq!(g.all_subgroups(1000).unwrap().len(), 10);
        assert_eq!(g.normal_subgroups().unwrap().len(), 6);
        let d = Arc::new(Dihedral::new(3));
        let g = Group::closure(Arc::clone(&d), &d.standard_generators()).unwrap();
        assert_eq!(g.all_subgroups(1000).unwrap().len(), 6);
        assert_eq!(g.normal_subgroups().unwrap().len(), 3);
    }

    #[test]
    fn hyperplanes_of_klein_and_rank_three() {
        let v = Arc::new(Product::new(Cyclic::new(2), Cyclic::new(2)));
        let g = Group::closure(Arc::clone(&v), &[v.pair(1, 0), v.pair(0, 1)]).unwrap();
        let maxes = g.maximal_subgroups_elementary_abelian(2).unwrap();
        assert_eq!(maxes.len(), 3);
        assert!(maxes.iter().all(|m| m.order() == 2));
        assert_eq!(g.subgroups_of_prime_order(2).unwrap().len(), 3);

        let w = Arc::new(Product::new(Cyclic::new(3), Product::new(Cyclic::new(3), Cyclic::new(3))));
        let gens = vec![w.pair(1, 0), w.pair(0, 1), w.pair(0, 3)];
        let g = Group::closure(Arc::clone(&w), &gens).unwrap();
        assert_eq!(g.order(), 27);
        let maxes = g.maximal_subgroups_elementary_abelian(3).unwrap();
        assert_eq!(maxes.len(), 13);
        assert!(maxes.iter().all(|m| m.order() == 9));
        let c = Group::closure(Arc::new(Cyclic::new(9)), &[1]).unwrap();
        assert!(c.maximal_subgroups_elementary_abelian(3).is_err());
    }
}
