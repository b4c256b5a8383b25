//! Generic finite-group engine.
//!
//! Every group lives inside an [`Ambient`]: a finite universe of elements
//! encoded as dense ranks `0..universe_size()` together with multiplication
//! and inversion on those ranks. Rank order is the canonical element order;
//! every "least element" rule in this crate refers to it.
//!
//! A [`Group`] is a fully enumerated subgroup of its ambient: a generator
//! list, the sorted element list and a membership bitset. Subgroups are
//! built with Dimino's coset-extension closure, so extending a subgroup by a
//! new generator costs one multiplication per new element and per generator
//! per new coset.

mod lattice;
mod pgroups;
mod quotient;
pub mod small;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use quotient::{Quotient, QuotientAmbient};

/// Element of an ambient universe, identified by its canonical rank.
pub type Elem = u32;

/// Default cap on the number of elements any enumerated group may hold.
pub const DEFAULT_MAX_ENUM: usize = 2_000_000;

static MAX_ENUM: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ENUM);

/// Sets the process-wide enumeration cap used by closures and quotients.
pub fn set_max_enumeration(cap: usize) {
    MAX_ENUM.store(cap, Ordering::Relaxed);
}

pub fn max_enumeration() -> usize {
    MAX_ENUM.load(Ordering::Relaxed)
}

/// A finite universe of elements with group arithmetic on ranks.
pub trait Ambient: Send + Sync {
    fn universe_size(&self) -> usize;
    fn identity(&self) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;

    /// `g x g^-1`.
    fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    fn pow(&self, g: Elem, mut k: u64) -> Elem {
        let mut result = self.identity();
        let mut base = g;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    fn element_order(&self, g: Elem) -> u64 {
        let id = self.identity();
        let mut x = g;
        let mut k = 1u64;
        while x != id {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

/// Conjugacy class data of an enumerated group.
#[derive(Clone, Debug)]
pub struct ClassData {
    /// Least element of each class; classes are ordered by representative.
    pub reps: Vec<Elem>,
    pub sizes: Vec<usize>,
    pub centralizer_orders: Vec<usize>,
    /// Class index of each element, parallel to the group's element list.
    pub class_of: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// An enumerated subgroup of an ambient universe.
pub struct Group<A: Ambient> {
    ambient: Arc<A>,
    gens: Vec<Elem>,
    elems: Arc<Vec<Elem>>,
    members: Arc<FixedBitSet>,
    classes: Arc<OnceLock<Arc<ClassData>>>,
}

impl<A: Ambient> Clone for Group<A> {
    fn clone(&self) -> Self {
        Group {
            ambient: Arc::clone(&self.ambient),
            gens: self.gens.clone(),
            elems: Arc::clone(&self.elems),
            members: Arc::clone(&self.members),
            classes: Arc::clone(&self.classes),
        }
    }
}

impl<A: Ambient> fmt::Debug for Group<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

impl<A: Ambient> PartialEq for Group<A> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.elems == other.elems
    }
}

impl<A: Ambient> Eq for Group<A> {}

impl<A: Ambient> Group<A> {
    pub fn trivial(ambient: Arc<A>) -> Self {
        let id = ambient.identity();
        let mut members = FixedBitSet::with_capacity(ambient.universe_size());
        members.insert(id as usize);
        Group {
            ambient,
            gens: Vec::new(),
            elems: Arc::new(vec![id]),
            members: Arc::new(members),
            classes: Arc::default(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(ambient: Arc<A>, gens: &[Elem]) -> Result<Self> {
        Group::trivial(ambient).extend(gens)
    }

    /// Builds a handle from an element set already known to be a subgroup,
    /// deriving canonical generators greedily.
    pub fn from_subgroup_elements(ambient: Arc<A>, mut elems: Vec<Elem>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        let mut g = Group::trivial(Arc::clone(&ambient));
        for &e in &elems {
            if !g.contains(e) {
                g = g.extend(&[e])?;
            }
        }
        if g.elems.len() != elems.len() {
            return Err(Error::Internal(format!(
                "element set of size {} is not a subgroup (generates {})",
                elems.len(),
                g.elems.len()
            )));
        }
        Ok(g)
    }

    /// Handle for a known subgroup with known generators, skipping closure.
    pub(crate) fn from_parts(ambient: Arc<A>, gens: Vec<Elem>, mut elems: Vec<Elem>) -> Self {
        elems.sort_unstable();
        let mut members = FixedBitSet::with_capacity(ambient.universe_size());
        for &e in &elems {
            members.insert(e as usize);
        }
        Group {
            ambient,
            gens,
            elems: Arc::new(elems),
            members: Arc::new(members),
            classes: Arc::default(),
        }
    }

    /// Subgroup generated by this group and `new` (Dimino's algorithm).
    pub fn extend(&self, new: &[Elem]) -> Result<Self> {
        self.extend_capped(new, max_enumeration())
    }

    /// [`Group::extend`] with an explicit element cap.
    pub fn extend_capped(&self, new: &[Elem], cap: usize) -> Result<Self> {
        let amb = &*self.ambient;
        let id = amb.identity();
        let mut elems: Vec<Elem> = self.elems.to_vec();
        let mut members = (*self.members).clone();
        let mut gens = self.gens.clone();
        let mut grew = false;
        for &g in new {
            if members.contains(g as usize) {
                continue;
            }
            grew = true;
            gens.push(g);
            let base = elems.clone();
            let mut reps = vec![id];
            let mut i = 0;
            while i < reps.len() {
                let r = reps[i];
                i += 1;
                for &s in &gens {
                    let e = amb.mul(r, s);
                    if members.contains(e as usize) {
                        continue;
                    }
                    if elems.len() + base.len() > cap {
                        return Err(Error::Capacity(format!(
                            "closure exceeded the enumeration cap {cap} (reached {} elements)",
                            elems.len()
                        )));
                    }
                    for &h in &base {
                        let x = amb.mul(h, e);
                        members.insert(x as usize);
                        elems.push(x);
                    }
                    reps.push(e);
                }
            }
        }
        if !grew {
            return Ok(self.clone());
        }
        elems.sort_unstable();
        Ok(Group {
            ambient: Arc::clone(&self.ambient),
            gens,
            elems: Arc::new(elems),
            members: Arc::new(members),
            classes: Arc::default(),
        })
    }

    pub fn ambient(&self) -> &Arc<A> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Elements in ascending canonical order.
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.members.contains(g as usize)
    }

    /// Position of `g` in [`Group::elements`].
    pub fn index_of(&self, g: Elem) -> Option<usize> {
        self.elems.binary_search(&g).ok()
    }

    pub fn identity(&self) -> Elem {
        self.ambient.identity()
    }

    fn same_ambient(&self, other: &Group<A>) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::SpecMismatch("groups live in different ambients".into()))
        }
    }

    /// Whether `self` is a subgroup of `other`.
    pub fn is_subgroup_of(&self, other: &Group<A>) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.gens.iter().all(|&g| other.contains(g)))
    }

    /// Whether `self` is a normal subgroup of `other`; checks conjugates of
    /// generators by generators.
    pub fn is_normal_in(&self, other: &Group<A>) -> Result<bool> {
        if !self.is_subgroup_of(other)? {
            return Ok(false);
        }
        Ok(self.normalized_by_all(&other.gens))
    }

    /// Whether conjugation by `g` maps this group into itself.
    pub fn normalized_by(&self, g: Elem) -> bool {
        self.gens
            .iter()
            .all(|&s| self.contains(self.ambient.conj(g, s)))
    }

    fn normalized_by_all(&self, gs: &[Elem]) -> bool {
        gs.iter().all(|&g| self.normalized_by(g))
    }

    pub fn is_abelian(&self) -> bool {
        let amb = &*self.ambient;
        self.gens.iter().enumerate().all(|(i, &a)| {
            self.gens[i + 1..]
                .iter()
                .all(|&b| amb.mul(a, b) == amb.mul(b, a))
        })
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        let classes = self.classes();
        classes
            .reps
            .iter()
            .map(|&r| self.ambient.element_order(r))
            .fold(1u64, lcm)
    }

    pub fn centralizer(&self, g: Elem) -> Result<Group<A>> {
        let amb = &*self.ambient;
        let elems: Vec<Elem> = self
            .elems
            .par_iter()
            .copied()
            .filter(|&y| amb.mul(y, g) == amb.mul(g, y))
            .collect();
        Group::from_subgroup_elements(Arc::clone(&self.ambient), elems)
    }

    /// Elements commuting with every element of `other`.
    pub fn centralizer_of(&self, other: &Group<A>) -> Result<Group<A>> {
        let amb = &*self.ambient;
        let gens = other.generators();
        let elems: Vec<Elem> = self
            .elems
            .par_iter()
            .copied()
            .filter(|&y| gens.iter().all(|&g| amb.mul(y, g) == amb.mul(g, y)))
            .collect();
        Group::from_subgroup_elements(Arc::clone(&self.ambient), elems)
    }

    pub fn center(&self) -> Result<Group<A>> {
        self.centralizer_of(self)
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Elem]) -> Result<Group<A>> {
        let mut n = Group::trivial(Arc::clone(&self.ambient)).extend(elements)?;
        self.normal_closure_from(&mut n)?;
        Ok(n)
    }

    fn normal_closure_from(&self, n: &mut Group<A>) -> Result<()> {
        let amb = &*self.ambient;
        loop {
            let mut added = false;
            let mut idx = 0;
            while idx < n.gens.len() {
                let s = n.gens[idx];
                for &g in &self.gens {
                    let c = amb.conj(g, s);
                    if !n.contains(c) {
                        *n = n.extend(&[c])?;
                        added = true;
                    }
                }
                idx += 1;
            }
            if !added {
                return Ok(());
            }
        }
    }

    pub fn derived_subgroup(&self) -> Result<Group<A>> {
        let amb = &*self.ambient;
        let mut comms = Vec::new();
        for (i, &a) in self.gens.iter().enumerate() {
            for &b in &self.gens[i + 1..] {
                comms.push(amb.commutator(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    /// Derived series down to its stable term, capped at 64 steps.
    pub fn derived_series(&self) -> Result<Vec<Group<A>>> {
        let mut series = vec![self.clone()];
        for _ in 0..64 {
            let last = series.last().unwrap();
            let next = last.derived_subgroup()?;
            if next.order() == last.order() {
                return Ok(series);
            }
            series.push(next);
        }
        Err(Error::Internal("derived series did not stabilize in 64 steps".into()))
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_trivial())
    }

    pub fn intersection(&self, other: &Group<A>) -> Result<Group<A>> {
        self.same_ambient(other)?;
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems: Vec<Elem> = small.elems.iter().copied().filter(|&e| big.contains(e)).collect();
        Group::from_subgroup_elements(Arc::clone(&self.ambient), elems)
    }

    /// `g S g^-1`.
    pub fn conjugate_by(&self, g: Elem) -> Group<A> {
        let amb = &*self.ambient;
        let gens = self.gens.iter().map(|&s| amb.conj(g, s)).collect();
        let elems = self.elems.iter().map(|&s| amb.conj(g, s)).collect();
        Group::from_parts(Arc::clone(&self.ambient), gens, elems)
    }

    /// Greedy generators: scan elements in ascending order, keeping each one
    /// not yet generated by the earlier picks.
    pub fn canonical_generators(&self) -> Result<Vec<Elem>> {
        let mut g = Group::trivial(Arc::clone(&self.ambient));
        let mut out = Vec::new();
        for &e in self.elems.iter() {
            if !g.contains(e) {
                g = g.extend(&[e])?;
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Conjugacy classes, computed once and cached on the handle.
    pub fn classes(&self) -> Arc<ClassData> {
        Arc::clone(self.classes.get_or_init(|| Arc::new(self.compute_classes())))
    }

    pub fn conjugacy_classes(&self) -> Arc<ClassData> {
        self.classes()
    }

    /// Class index of an element of this group.
    pub fn class_of(&self, g: Elem) -> Option<usize> {
        let idx = self.index_of(g)?;
        Some(self.classes().class_of[idx] as usize)
    }

    fn compute_classes(&self) -> ClassData {
        let amb = &*self.ambient;
        let n = self.elems.len();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for &g in &self.gens {
            let targets: Vec<u32> = self
                .elems
                .par_iter()
                .map(|&x| {
                    let y = amb.conj(g, x);
                    self.index_of(y).expect("group closed under conjugation") as u32
                })
                .collect();
            for (i, &j) in targets.iter().enumerate() {
                union(&mut parent, i as u32, j);
            }
        }
        // roots are least indices because union keeps the smaller root
        let mut class_index = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut class_of = vec![0u32; n];
        for i in 0..n {
            let r = find(&mut parent, i as u32) as usize;
            if class_index[r] == u32::MAX {
                class_index[r] = reps.len() as u32;
                reps.push(self.elems[r]);
                sizes.push(0usize);
            }
            let c = class_index[r];
            class_of[i] = c;
            sizes[c as usize] += 1;
        }
        let centralizer_orders = sizes.iter().map(|&s| n / s).collect();
        ClassData {
            reps,
            sizes,
            centralizer_orders,
            class_of,
        }
    }

    /// Elements of the conjugacy class of `g` under this group, by orbit search.
    pub fn conjugation_orbit(&self, g: Elem) -> Vec<Elem> {
        let amb = &*self.ambient;
        let mut seen = FixedBitSet::with_capacity(amb.universe_size());
        seen.insert(g as usize);
        let mut orbit = vec![g];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            for &s in &self.gens {
                let y = amb.conj(s, x);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra < rb {
        parent[rb as usize] = ra;
    } else if rb < ra {
        parent[ra as usize] = rb;
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Whether `n` is a power of some prime (1 counts as a power of every prime).
pub fn is_prime_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let factors = crate::gf::prime_factors(n);
    (factors.len() == 1).then(|| factors[0])
}
