//! A corpus of small groups shared by the integration suites.

#![allow(dead_code)]

use std::sync::Arc;

use camina_core::constructions::{build_group, GroupKind};
use camina_core::gf::FieldSpec;
use camina_core::group::small::{Cyclic, Dihedral, Product};
use camina_core::group::{Ambient, Group};

pub trait GroupVisitor {
    fn visit<A: Ambient>(&mut self, name: &str, g: &Group<A>);
}

/// Every subgroup of `G(GF(4))`, `G(GF(2))` and `G(GF(3))`, plus cyclic,
/// dihedral and direct-product examples; all of order at most 400.
pub fn walk_corpus<V: GroupVisitor>(v: &mut V) {
    for (p, n) in [(2, 2), (2, 1), (3, 1)] {
        let g = build_group(&FieldSpec::new(p, n).unwrap(), GroupKind::G).unwrap();
        for (i, s) in g.all_subgroups(100_000).unwrap().iter().enumerate() {
            v.visit(&format!("G({p},{n}) subgroup {i}"), s);
        }
    }
    for m in 1..=30 {
        let c = Arc::new(Cyclic::new(m));
        v.visit(&format!("C{m}"), &Group::closure(c, &[1 % m]).unwrap());
    }
    for n in 3..=16 {
        let d = Arc::new(Dihedral::new(n));
        let gens = d.standard_generators();
        v.visit(&format!("D{}", 2 * n), &Group::closure(d, &gens).unwrap());
    }
    let pairs: [(u32, u32); 4] = [(2, 2), (3, 3), (4, 4), (2, 6)];
    for (a, b) in pairs {
        let amb = Arc::new(Product::new(Cyclic::new(a), Cyclic::new(b)));
        let gens = [amb.pair(1, 0), amb.pair(0, 1)];
        v.visit(&format!("C{a}xC{b}"), &Group::closure(amb, &gens).unwrap());
    }
    for (n, m) in [(3, 3), (4, 2), (5, 2)] {
        let amb = Arc::new(Product::new(Dihedral::new(n), Cyclic::new(m)));
        let d = Dihedral::new(n);
        let mut gens: Vec<_> = d.standard_generators().into_iter().map(|g| amb.pair(g, 0)).collect();
        gens.push(amb.pair(0, 1));
        v.visit(&format!("D{}xC{m}", 2 * n), &Group::closure(amb, &gens).unwrap());
    }
}
