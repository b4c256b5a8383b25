//! Character tables across the corpus: orthogonality, independent degree
//! counts, Frobenius reciprocity, Gagola characters and relabeling.

mod common;

use std::sync::Arc;

use camina_core::chars::{
    dixon_table, gagola_characters, gagola_consistency, induce, inner_product, restrict,
    CharacterTable, Cyclotomic,
};
use camina_core::constructions::{build_bundle, build_group, GroupKind};
use camina_core::gf::FieldSpec;
use camina_core::group::small::Dihedral;
use camina_core::group::{is_prime_power, Ambient, Elem, Group};
use camina_core::verify::is_camina_pair;
use common::{walk_corpus, GroupVisitor};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct TableSweep {
    tables: usize,
    gagola: usize,
    failures: Vec<String>,
}

impl GroupVisitor for TableSweep {
    fn visit<A: Ambient>(&mut self, name: &str, g: &Group<A>) {
        if g.classes().len() > 60 {
            return;
        }
        let t = match dixon_table(g) {
            Ok(t) => t,
            Err(e) => {
                self.failures.push(format!("{name}: {e}"));
                return;
            }
        };
        self.tables += 1;
        // independent counts: k characters, |G : G'| of them linear
        let linear = g.order() / g.derived_subgroup().unwrap().order();
        if t.len() != g.classes().len() || t.degrees().iter().filter(|&&d| d == 1).count() != linear {
            self.failures.push(format!("{name}: degree pattern {:?}", t.degrees()));
        }
        if t.degrees().iter().any(|&d| !(g.order() as u64).is_multiple_of(d)) {
            self.failures.push(format!("{name}: a degree does not divide |G|"));
        }
        if let Err(e) = t.validate() {
            self.failures.push(format!("{name}: {e}"));
        }
        for r in gagola_characters(g, &t).unwrap() {
            self.gagola += 1;
            let n = &r.normal_subgroup;
            if !(r.is_normal && r.is_elementary_abelian && r.is_minimal_normal) {
                self.failures.push(format!("{name}: Gagola subgroup structure"));
                continue;
            }
            // N = G happens for C_p, where the pair is degenerate
            if n.order() < g.order() && !is_camina_pair(g, n).unwrap().is_camina {
                self.failures.push(format!("{name}: (G, N) is not Camina"));
            }
            let p = is_prime_power(n.order() as u64).unwrap();
            let c = gagola_consistency(g, &r, p).unwrap();
            if !c.all_pass() {
                self.failures.push(format!("{name}: consistency {c:?}"));
            }
        }
    }
}

#[test]
fn every_corpus_table_is_exact() {
    let mut s = TableSweep::default();
    walk_corpus(&mut s);
    assert!(s.tables > 1000, "only {} tables", s.tables);
    assert!(s.gagola > 50, "only {} Gagola characters", s.gagola);
    assert!(s.failures.is_empty(), "{:#?}", s.failures);
}

#[test]
fn small_tables_match_independent_degrees() {
    let s3 = Arc::new(Dihedral::new(3));
    let g = Group::closure(Arc::clone(&s3), &s3.standard_generators()).unwrap();
    assert_eq!(dixon_table(&g).unwrap().degrees(), &[1, 1, 2]);
    let h = build_group(&FieldSpec::new(2, 1).unwrap(), GroupKind::H).unwrap();
    let t = dixon_table(&h).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
    let reports = gagola_characters(&h, &t).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].degree, 2);
    assert_eq!(reports[0].normal_subgroup, h.center().unwrap());
}

#[test]
fn k_over_gf4_has_one_gagola_character_of_degree_twelve() {
    let b = build_bundle(&FieldSpec::new(2, 2).unwrap()).unwrap();
    let t = dixon_table(&b.k).unwrap();
    let reports = gagola_characters(&b.k, &t).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].degree, 12);
    assert_eq!(reports[0].normal_subgroup, b.z);
    let c = gagola_consistency(&b.k, &reports[0], 2).unwrap();
    assert_eq!(c.ramification, Some(4));
    assert!(c.all_pass());
}

#[test]
fn frobenius_reciprocity_over_normal_subgroups_of_g_over_gf4() {
    let g = build_group(&FieldSpec::new(2, 2).unwrap(), GroupKind::G).unwrap();
    let tg = dixon_table(&g).unwrap();
    let mut pairs = 0;
    for m in g.normal_subgroups().unwrap() {
        let tm = dixon_table(&m).unwrap();
        for i in 0..tg.len() {
            let res = restrict(&tg.character(i), &g, &m).unwrap();
            for j in 0..tm.len() {
                let phi = tm.character(j);
                let lhs = inner_product(&res, &phi, &m).unwrap();
                let rhs = inner_product(&tg.character(i), &induce(&phi, &m, &g).unwrap(), &g).unwrap();
                assert_eq!(lhs, rhs);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 1000);
}

/// The same group with its ranks permuted.
struct Relabeled<A> {
    inner: Arc<A>,
    forward: Vec<Elem>,
    back: Vec<Elem>,
}

impl<A: Ambient> Ambient for Relabeled<A> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }

    fn identity(&self) -> Elem {
        self.forward[self.inner.identity() as usize]
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = self.inner.mul(self.back[a as usize], self.back[b as usize]);
        self.forward[c as usize]
    }

    fn inv(&self, a: Elem) -> Elem {
        self.forward[self.inner.inv(self.back[a as usize]) as usize]
    }
}

/// Rows with columns permuted into the original class order, then sorted.
fn normalized_rows(t: &CharacterTable, column_of: &[usize]) -> Vec<Vec<Cyclotomic>> {
    let mut rows: Vec<Vec<Cyclotomic>> = t
        .values()
        .iter()
        .map(|row| {
            let mut out = vec![Cyclotomic(Vec::new()); row.len()];
            for (j, v) in row.iter().enumerate() {
                out[column_of[j]] = v.clone();
            }
            out
        })
        .collect();
    rows.sort();
    rows
}

#[test]
fn relabeled_copies_give_the_same_table() {
    let b = build_bundle(&FieldSpec::new(2, 2).unwrap()).unwrap();
    let inner = Arc::clone(&b.ambient);
    let size = inner.universe_size();
    let mut forward: Vec<Elem> = (0..size as Elem).collect();
    forward.shuffle(&mut ChaCha8Rng::seed_from_u64(11));
    let mut back = vec![0; size];
    for (i, &f) in forward.iter().enumerate() {
        back[f as usize] = i as Elem;
    }
    let amb = Arc::new(Relabeled {
        inner: Arc::clone(&inner),
        forward: forward.clone(),
        back: back.clone(),
    });
    let gens: Vec<Elem> = b.k.generators().iter().map(|&g| forward[g as usize]).collect();
    let k2 = Group::closure(Arc::clone(&amb), &gens).unwrap();
    let t1 = dixon_table(&b.k).unwrap();
    let t2 = dixon_table(&k2).unwrap();
    assert_eq!(t1.degrees(), t2.degrees());
    let ident: Vec<usize> = (0..t1.len()).collect();
    let column_of: Vec<usize> = k2
        .classes()
        .reps
        .iter()
        .map(|&r| b.k.class_of(back[r as usize]).unwrap())
        .collect();
    assert_eq!(normalized_rows(&t1, &ident), normalized_rows(&t2, &column_of));
}
