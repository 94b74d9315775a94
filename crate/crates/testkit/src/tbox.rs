//! Random small TBoxes with Allen-sugar roles.

use rand::seq::SliceRandom;
use rand::Rng;
use spatemp::allen::{translate_atom, AllenAtom};
use spatemp::domain::{AtomSet, ConcreteDomain};
use spatemp::tbox::{Axiom, Concept, TBox};

#[derive(Clone, Debug)]
pub struct TBoxShape {
    pub domain: ConcreteDomain,
    pub max_concepts: usize,
    pub max_disjuncts: usize,
    /// Upper bound on conjuncts of each kind in a disjunct.
    pub max_literals: usize,
    pub max_predicates: usize,
    pub max_roles: usize,
    /// Atoms in a predicate, at most.
    pub max_atoms: usize,
    pub primitives: usize,
    pub features: usize,
}

impl TBoxShape {
    pub fn small(domain: ConcreteDomain) -> Self {
        TBoxShape {
            domain,
            max_concepts: 4,
            max_disjuncts: 2,
            max_literals: 1,
            max_predicates: 2,
            max_roles: 2,
            max_atoms: match domain {
                ConcreteDomain::Rcc8 => 3,
                ConcreteDomain::Cyct => 8,
            },
            primitives: 2,
            features: domain.arity() + 1,
        }
    }
}

fn and(mut parts: Vec<Concept>) -> Concept {
    match parts.len() {
        0 => Concept::Top,
        1 => parts.pop().unwrap(),
        _ => Concept::And(parts),
    }
}

pub fn random_tbox(rng: &mut impl Rng, shape: &TBoxShape) -> TBox {
    let n = rng.gen_range(1..=shape.max_concepts);
    let names: Vec<String> = (1..=n).map(|i| format!("C{i}")).collect();
    let features: Vec<String> = (1..=shape.features).map(|i| format!("g{i}")).collect();
    let mut t = TBox::new(shape.domain);
    for name in &names {
        let mut disjuncts = Vec::new();
        for _ in 0..rng.gen_range(1..=shape.max_disjuncts) {
            let mut parts = Vec::new();
            for _ in 0..rng.gen_range(0..=shape.max_literals) {
                let p = format!("p{}", rng.gen_range(0..shape.primitives));
                parts.push(if rng.gen_bool(0.5) {
                    Concept::Primitive(p)
                } else {
                    Concept::NegPrimitive(p)
                });
            }
            for _ in 0..rng.gen_range(0..=shape.max_predicates) {
                let mut fs = features.clone();
                fs.shuffle(rng);
                fs.truncate(shape.domain.arity());
                let mut bits = 0u32;
                for _ in 0..rng.gen_range(1..=shape.max_atoms) {
                    bits |= 1 << rng.gen_range(0..shape.domain.atom_count());
                }
                parts.push(Concept::Predicate {
                    features: fs,
                    predicate: AtomSet(bits),
                });
            }
            for _ in 0..rng.gen_range(0..=shape.max_roles) {
                let atom = *AllenAtom::ALL.choose(rng).unwrap();
                parts.push(Concept::Exists {
                    role: translate_atom(atom),
                    target: names.choose(rng).unwrap().clone(),
                });
            }
            disjuncts.push(and(parts));
        }
        let rhs = if disjuncts.len() == 1 {
            disjuncts.pop().unwrap()
        } else {
            Concept::Or(disjuncts)
        };
        t.axioms.push(Axiom {
            lhs: name.clone(),
            rhs,
        });
    }
    t
}
