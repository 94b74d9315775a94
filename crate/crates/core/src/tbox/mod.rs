//! Terminologies: concepts, axioms, the concrete syntax, validation and
//! disjunctive normal form.

mod dnf;
mod parser;
mod validate;

use std::fmt;

use crate::allen::EndpointRole;
use crate::domain::{AtomSet, ConcreteDomain};

pub use dnf::{normalize, to_dnf, Conjunction, Leaf, Literal, NormalizedAxiom, PredicateAtom};
pub use parser::parse_tbox;
pub use validate::{validate, Diagnostic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concept {
    Top,
    Bottom,
    Primitive(String),
    NegPrimitive(String),
    /// `some(g1, .., gn).P`: the feature values at this interval satisfy `P`.
    Predicate {
        features: Vec<String>,
        predicate: AtomSet,
    },
    /// `exists R . A` with `A` a defined concept.
    Exists {
        role: EndpointRole,
        target: String,
    },
    And(Vec<Concept>),
    Or(Vec<Concept>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub lhs: String,
    pub rhs: Concept,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TBox {
    pub domain: ConcreteDomain,
    pub axioms: Vec<Axiom>,
}

impl TBox {
    pub fn new(domain: ConcreteDomain) -> Self {
        TBox {
            domain,
            axioms: Vec::new(),
        }
    }

    pub fn defined_names(&self) -> Vec<&str> {
        self.axioms.iter().map(|a| a.lhs.as_str()).collect()
    }

    pub fn axiom(&self, name: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.lhs == name)
    }
}

/// Prints a concept in the concrete syntax accepted by [`parse_tbox`].
pub struct DisplayConcept<'a> {
    concept: &'a Concept,
    domain: ConcreteDomain,
}

impl Concept {
    pub fn display(&self, domain: ConcreteDomain) -> DisplayConcept<'_> {
        DisplayConcept {
            concept: self,
            domain,
        }
    }
}

impl fmt::Display for DisplayConcept<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nested = |c: &Concept| -> String {
            let inner = c.display(self.domain).to_string();
            match c {
                Concept::And(_) | Concept::Or(_) => format!("({inner})"),
                _ => inner,
            }
        };
        match self.concept {
            Concept::Top => f.write_str("top"),
            Concept::Bottom => f.write_str("bottom"),
            Concept::Primitive(p) => f.write_str(p),
            Concept::NegPrimitive(p) => write!(f, "not {p}"),
            Concept::Predicate {
                features,
                predicate,
            } => write!(
                f,
                "some({}).{}",
                features.join(","),
                self.domain.format_set(*predicate)
            ),
            Concept::Exists { role, target } => write!(f, "exists {role} . {target}"),
            Concept::And(parts) => {
                let parts: Vec<_> = parts.iter().map(nested).collect();
                f.write_str(&parts.join(" and "))
            }
            Concept::Or(parts) => {
                let parts: Vec<_> = parts.iter().map(nested).collect();
                f.write_str(&parts.join(" or "))
            }
        }
    }
}

impl fmt::Display for TBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}.", self.domain)?;
        for axiom in &self.axioms {
            writeln!(f, "{} := {} .", axiom.lhs, axiom.rhs.display(self.domain))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{Bound, ConvexSet, ExtRational};
    use proptest::prelude::*;

    fn arb_set() -> impl Strategy<Value = ConvexSet> {
        let end = prop_oneof![
            Just(None),
            (-3i64..4).prop_map(Some),
        ];
        (end.clone(), any::<bool>(), end, any::<bool>()).prop_map(|(lo, ls, hi, hs)| {
            let lo = lo.map_or(Bound::neg_inf(), |v| Bound::new(ExtRational::int(v), ls));
            let hi = hi.map_or(Bound::pos_inf(), |v| Bound::new(ExtRational::int(v), hs));
            ConvexSet::new(lo, hi)
        })
    }

    fn arb_concept(domain: ConcreteDomain, defined: usize) -> impl Strategy<Value = Concept> {
        let arity = domain.arity();
        let atoms = domain.atom_count();
        let leaf = prop_oneof![
            Just(Concept::Top),
            Just(Concept::Bottom),
            (0..4usize).prop_map(|i| Concept::Primitive(format!("p{i}"))),
            (0..4usize).prop_map(|i| Concept::NegPrimitive(format!("p{i}"))),
            (
                prop::collection::vec(1..5usize, arity),
                1u32..(1u32 << atoms),
            )
                .prop_map(|(gs, bits)| Concept::Predicate {
                    features: gs.into_iter().map(|g| format!("g{g}")).collect(),
                    predicate: AtomSet(bits),
                }),
            (arb_set(), arb_set(), arb_set(), arb_set(), 0..defined).prop_map(
                |(a, b, c, d, t)| Concept::Exists {
                    role: EndpointRole::new(a, b, c, d),
                    target: format!("C{t}"),
                }
            ),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(Concept::And),
                prop::collection::vec(inner, 2..4).prop_map(Concept::Or),
            ]
        })
    }

    fn arb_tbox() -> impl Strategy<Value = TBox> {
        (prop::sample::select(ConcreteDomain::ALL.to_vec()), 1..4usize).prop_flat_map(|(d, n)| {
            prop::collection::vec(arb_concept(d, n), n).prop_map(move |rhs| TBox {
                domain: d,
                axioms: rhs
                    .into_iter()
                    .enumerate()
                    .map(|(i, rhs)| Axiom {
                        lhs: format!("C{i}"),
                        rhs,
                    })
                    .collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(t in arb_tbox()) {
            let text = t.to_string();
            let back = parse_tbox(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(back, t);
        }
    }
}
