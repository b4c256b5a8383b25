//! Exact character tables by Dixon's modular method.
//!
//! Class multiplication coefficients are diagonalised simultaneously over a
//! prime field GF(ℓ) with ℓ ≡ 1 (mod exp G). The resulting characters mod ℓ
//! are lifted to exact cyclotomic integers by counting eigenvalue
//! multiplicities over the power maps, and the table is checked for exact
//! orthogonality before it is returned.

mod classfn;
pub mod cyclotomic;
mod gagola;
pub mod modular;

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Ambient, ClassData, Elem, Group};

pub use classfn::{constituent_stabilizer, constituents, induce, inner_product, restrict, ClassFunction};
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use gagola::{gagola_characters, gagola_consistency, GagolaConsistency, GagolaReport};

use modular::{charpoly, least_prime_congruent_one, nullspace, roots, rref, Zl};

/// Caps on the groups for which tables are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableLimits {
    pub max_classes: usize,
    pub max_order: usize,
}

impl Default for TableLimits {
    fn default() -> Self {
        TableLimits {
            max_classes: 60,
            max_order: 10_000,
        }
    }
}

/// Irreducible characters of an enumerated group, one row per character and
/// one column per conjugacy class in the group's class order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    classes: Arc<ClassData>,
    identity_class: usize,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    field: Arc<CyclotomicField>,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn identity_class(&self) -> usize {
        self.identity_class
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn inverse_class(&self) -> &[usize] {
        &self.inverse_class
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::new(Arc::clone(&self.field), self.values[i].clone())
    }

    /// Exact row and column orthogonality and `Σ χ(1)² = |G|`.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if self.values.len() != k {
            return Err(Error::Internal(format!(
                "{} characters for {k} classes",
                self.values.len()
            )));
        }
        let f = &self.field;
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return Err(Error::Internal(format!(
                "sum of squared degrees {sum_sq} differs from |G| = {}",
                self.order
            )));
        }
        let conj: Vec<Vec<Cyclotomic>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| f.conj(v)).collect())
            .collect();
        for a in 0..k {
            for b in a..k {
                let mut acc = f.zero();
                for j in 0..k {
                    let term = f.mul(&self.values[a][j], &conj[b][j]);
                    acc = f.add(&acc, &f.scale(&term, self.classes.sizes[j] as i64));
                }
                let want = if a == b { self.order as i64 } else { 0 };
                if acc != f.integer(want) {
                    return Err(Error::Internal(format!(
                        "row orthogonality fails for characters {a} and {b}"
                    )));
                }
            }
        }
        for i in 0..k {
            for j in i..k {
                let mut acc = f.zero();
                for a in 0..k {
                    acc = f.add(&acc, &f.mul(&self.values[a][i], &conj[a][j]));
                }
                let want = if i == j {
                    self.classes.centralizer_orders[i] as i64
                } else {
                    0
                };
                if acc != f.integer(want) {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails for classes {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical text form: class sizes, degrees and coordinate vectors.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let join = |v: &[String]| v.join(" ");
        writeln!(s, "order {}", self.order).unwrap();
        writeln!(s, "conductor {}", self.field.conductor()).unwrap();
        let reps: Vec<String> = self.classes.reps.iter().map(|r| r.to_string()).collect();
        writeln!(s, "reps {}", join(&reps)).unwrap();
        let sizes: Vec<String> = self.classes.sizes.iter().map(|r| r.to_string()).collect();
        writeln!(s, "sizes {}", join(&sizes)).unwrap();
        let degrees: Vec<String> = self.degrees.iter().map(|r| r.to_string()).collect();
        writeln!(s, "degrees {}", join(&degrees)).unwrap();
        for row in &self.values {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(s, "row {}", join(&cells)).unwrap();
        }
        s
    }

    /// Reads a table written by [`CharacterTable::to_text`] for the group
    /// `g`, checking that the class data matches and re-validating.
    pub fn from_text<A: Ambient>(g: &Group<A>, text: &str) -> Result<Self> {
        let bad = |what: &str| Error::InvalidArgument(format!("table text: {what}"));
        let mut fields: std::collections::HashMap<&str, &str> = Default::default();
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, rest) = line.split_once(' ').ok_or_else(|| bad("malformed line"))?;
            if key == "row" {
                rows.push(rest);
            } else {
                fields.insert(key, rest);
            }
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(k));
        let nums = |k: &str| -> Result<Vec<u64>> {
            get(k)?
                .split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| bad(k)))
                .collect()
        };
        let order: usize = get("order")?.trim().parse().map_err(|_| bad("order"))?;
        let conductor: u64 = get("conductor")?.trim().parse().map_err(|_| bad("conductor"))?;
        let reps = nums("reps")?;
        let sizes = nums("sizes")?;
        let degrees = nums("degrees")?;
        let skeleton = TableSkeleton::new(g)?;
        let cls = &skeleton.classes;
        if order != g.order()
            || conductor != skeleton.exponent
            || reps != cls.reps.iter().map(|&r| r as u64).collect::<Vec<_>>()
            || sizes != cls.sizes.iter().map(|&s| s as u64).collect::<Vec<_>>()
        {
            return Err(bad("class data does not match the group"));
        }
        let field = CyclotomicField::new(conductor);
        let values = rows
            .iter()
            .map(|row| {
                row.split_whitespace()
                    .map(|cell| {
                        let inner = cell
                            .strip_prefix('[')
                            .and_then(|c| c.strip_suffix(']'))
                            .ok_or_else(|| bad("cell"))?;
                        let coords = inner
                            .split(',')
                            .map(|t| t.parse::<i64>().map_err(|_| bad("coordinate")))
                            .collect::<Result<Vec<i64>>>()?;
                        if coords.len() != field.degree() {
                            return Err(bad("coordinate count"));
                        }
                        Ok(Cyclotomic(coords))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let table = skeleton.finish(field, values, degrees);
        table.validate()?;
        Ok(table)
    }
}

/// Class data, power structure and exponent shared by computation and loading.
struct TableSkeleton {
    order: usize,
    classes: Arc<ClassData>,
    identity_class: usize,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl TableSkeleton {
    fn new<A: Ambient>(g: &Group<A>) -> Result<Self> {
        let amb = g.ambient();
        let classes = g.classes();
        let identity_class = g.class_of(g.identity()).expect("identity in G");
        let element_orders: Vec<u64> = classes.reps.iter().map(|&r| amb.element_order(r)).collect();
        let inverse_class = classes
            .reps
            .iter()
            .map(|&r| g.class_of(amb.inv(r)).expect("closed under inverses"))
            .collect();
        let exponent = element_orders.iter().fold(1, |acc, &o| crate::group::lcm(acc, o));
        Ok(TableSkeleton {
            order: g.order(),
            classes,
            identity_class,
            element_orders,
            inverse_class,
            exponent,
        })
    }

    fn finish(
        self,
        field: Arc<CyclotomicField>,
        values: Vec<Vec<Cyclotomic>>,
        degrees: Vec<u64>,
    ) -> CharacterTable {
        CharacterTable {
            order: self.order,
            classes: self.classes,
            identity_class: self.identity_class,
            element_orders: self.element_orders,
            inverse_class: self.inverse_class,
            field,
            values,
            degrees,
        }
    }
}

pub fn dixon_table<A: Ambient>(g: &Group<A>) -> Result<CharacterTable> {
    dixon_table_with(g, TableLimits::default())
}

pub fn dixon_table_with<A: Ambient>(g: &Group<A>, limits: TableLimits) -> Result<CharacterTable> {
    if g.order() > limits.max_order {
        return Err(Error::Scale(format!(
            "character table of a group of order {} exceeds the order cap {}",
            g.order(),
            limits.max_order
        )));
    }
    let skeleton = TableSkeleton::new(g)?;
    let k = skeleton.classes.len();
    if k > limits.max_classes {
        return Err(Error::Scale(format!(
            "{k} conjugacy classes exceed the class cap {}",
            limits.max_classes
        )));
    }
    let order = g.order() as u64;
    let e = skeleton.exponent;
    let sqrt = (order as f64).sqrt().ceil() as u64;
    let f = Zl {
        l: least_prime_congruent_one(e, 2 * sqrt * order),
    };

    let coeffs = class_coefficients(g, &skeleton.classes);
    let omegas = split_eigenspaces(f, &coeffs, skeleton.identity_class)?;
    if omegas.len() != k {
        return Err(Error::Internal(format!(
            "found {} central characters for {k} classes",
            omegas.len()
        )));
    }

    let z = f.pow(f.primitive_root(), (f.l - 1) / e);
    let powers = power_maps(g, &skeleton);
    let field = CyclotomicField::new(e);
    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = omegas
        .iter()
        .map(|omega| lift_character(f, z, e, &skeleton, &powers, &field, omega))
        .collect::<Result<_>>()?;
    let trivial = |row: &Vec<Cyclotomic>| row.iter().all(|v| v.as_integer() == Some(1));
    rows.sort_by(|a, b| {
        (a.0, !trivial(&a.1), &a.1).cmp(&(b.0, !trivial(&b.1), &b.1))
    });
    let (degrees, values) = rows.into_iter().unzip();
    let table = skeleton.finish(field, values, degrees);
    table.validate()?;
    Ok(table)
}

/// `a[i][j][c] = #{x ∈ C_i : x^-1 z_c ∈ C_j}` for a fixed `z_c ∈ C_c`,
/// reduced to the matrices `M_i[j][c]`.
fn class_coefficients<A: Ambient>(g: &Group<A>, classes: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let amb = g.ambient();
    let k = classes.len();
    let mut members: Vec<Vec<Elem>> = vec![Vec::new(); k];
    for (idx, &x) in g.elements().iter().enumerate() {
        members[classes.class_of[idx] as usize].push(x);
    }
    (0..k)
        .map(|i| {
            let mut m = vec![vec![0u64; k]; k];
            for c in 0..k {
                let z = classes.reps[c];
                for &x in &members[i] {
                    let y = amb.mul(amb.inv(x), z);
                    let j = g.class_of(y).expect("closed");
                    m[j][c] += 1;
                }
            }
            m
        })
        .collect()
}

/// Common eigenvectors of the class matrices, normalised to 1 at the
/// identity class.
fn split_eigenspaces(f: Zl, mats: &[Vec<Vec<u64>>], identity_class: usize) -> Result<Vec<Vec<u64>>> {
    let k = mats.len();
    let reduced: Vec<Vec<Vec<u64>>> = mats
        .iter()
        .map(|m| m.iter().map(|r| r.iter().map(|&v| v % f.l).collect()).collect())
        .collect();
    let mut identity_rows: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let pivots = rref(f, &mut identity_rows);
    let mut pending = vec![(identity_rows, pivots)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for a in &reduced {
        let mut next = Vec::new();
        for (basis, pivots) in pending {
            if basis.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            next.extend(split_one(f, a, &basis, &pivots)?);
        }
        pending = Vec::new();
        for (basis, pivots) in next {
            if basis.len() == 1 {
                done.push(basis.into_iter().next().unwrap());
            } else {
                pending.push((basis, pivots));
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    if !pending.is_empty() {
        return Err(Error::Internal("class matrices left a degenerate eigenspace".into()));
    }
    done.into_iter()
        .map(|v| {
            let lead = v[identity_class];
            if lead == 0 {
                return Err(Error::Internal("eigenvector vanishes at the identity class".into()));
            }
            let inv = f.inv(lead);
            Ok(v.into_iter().map(|x| f.mul(x, inv)).collect())
        })
        .collect()
}

type Subspace = (Vec<Vec<u64>>, Vec<usize>);

/// Splits an invariant subspace (RREF basis with pivots) into eigenspaces of `a`.
fn split_one(f: Zl, a: &[Vec<u64>], basis: &[Vec<u64>], pivots: &[usize]) -> Result<Vec<Subspace>> {
    let d = basis.len();
    let k = a.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|r| a[r].iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                .collect()
        })
        .collect();
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|m| (0..d).map(|j| images[j][pivots[m]]).collect())
        .collect();
    let eigenvalues = roots(f, &charpoly(f, &restricted));
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|m| {
                (0..d)
                    .map(|j| {
                        let v = restricted[m][j];
                        if m == j {
                            f.sub(v, lambda)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let mut vectors: Vec<Vec<u64>> = nullspace(f, &shifted)
            .into_iter()
            .map(|c| {
                (0..k)
                    .map(|col| {
                        c.iter()
                            .zip(basis)
                            .fold(0, |acc, (&cj, bj)| f.add(acc, f.mul(cj, bj[col])))
                    })
                    .collect()
            })
            .collect();
        let piv = rref(f, &mut vectors);
        total += vectors.len();
        out.push((vectors, piv));
    }
    if total != d {
        return Err(Error::Internal(format!(
            "class matrix does not split over GF({})",
            f.l
        )));
    }
    Ok(out)
}

/// `powers[c][t]` is the class of `g_c^t` for `0 <= t < o(g_c)`.
fn power_maps<A: Ambient>(g: &Group<A>, sk: &TableSkeleton) -> Vec<Vec<usize>> {
    let amb = g.ambient();
    sk.classes
        .reps
        .iter()
        .zip(&sk.element_orders)
        .map(|(&r, &o)| {
            let mut x = amb.identity();
            (0..o)
                .map(|_| {
                    let c = g.class_of(x).expect("closed");
                    x = amb.mul(x, r);
                    c
                })
                .collect()
        })
        .collect()
}

/// Degree and exact values of the irreducible character with central
/// character `omega` (mod ℓ).
fn lift_character(
    f: Zl,
    z: u64,
    e: u64,
    sk: &TableSkeleton,
    powers: &[Vec<usize>],
    field: &CyclotomicField,
    omega: &[u64],
) -> Result<(u64, Vec<Cyclotomic>)> {
    let k = omega.len();
    let sizes = &sk.classes.sizes;
    // d^2 = |G| / Σ ω_j ω_{j*} / |C_j|
    let mut s = 0u64;
    for j in 0..k {
        let t = f.mul(omega[j], omega[sk.inverse_class[j]]);
        s = f.add(s, f.mul(t, f.inv(sizes[j] as u64 % f.l)));
    }
    if s == 0 {
        return Err(Error::Internal("degenerate central character".into()));
    }
    let d2 = f.mul(sk.order as u64 % f.l, f.inv(s));
    let bound = (sk.order as f64).sqrt() as u64 + 1;
    let degree = (1..=bound)
        .find(|&d| d * d == d2)
        .ok_or_else(|| Error::Internal(format!("degree square {d2} is not a small square")))?;
    let modular: Vec<u64> = (0..k)
        .map(|j| f.mul(f.mul(omega[j], degree), f.inv(sizes[j] as u64 % f.l)))
        .collect();
    let values = (0..k)
        .map(|j| {
            let o = sk.element_orders[j];
            let w = f.pow(z, e / o);
            let winv = f.inv(w);
            let oinv = f.inv(o % f.l);
            let mults = (0..o)
                .map(|s| {
                    let step = f.pow(winv, s);
                    let mut acc = 0u64;
                    let mut factor = 1u64;
                    for t in 0..o as usize {
                        acc = f.add(acc, f.mul(modular[powers[j][t]], factor));
                        factor = f.mul(factor, step);
                    }
                    let m = f.mul(acc, oinv);
                    if m > degree {
                        Err(Error::Internal(format!(
                            "eigenvalue multiplicity {m} exceeds degree {degree}"
                        )))
                    } else {
                        Ok(m as i64)
                    }
                })
                .collect::<Result<Vec<i64>>>()?;
            Ok(field.from_root_multiplicities(o, &mults))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, values))
}
