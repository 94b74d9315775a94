use serde::{Deserialize, Serialize};

use crate::allen::EndpointRole;
use crate::domain::AtomSet;

use super::{Concept, TBox};

/// A signed primitive concept name. Serialized as `p` or `not p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Literal {
    pub name: String,
    pub positive: bool,
}

impl Literal {
    pub fn pos(name: impl Into<String>) -> Self {
        Literal {
            name: name.into(),
            positive: true,
        }
    }

    pub fn neg(name: impl Into<String>) -> Self {
        Literal {
            name: name.into(),
            positive: false,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            name: self.name.clone(),
            positive: !self.positive,
        }
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.positive {
            f.write_str(&self.name)
        } else {
            write!(f, "not {}", self.name)
        }
    }
}

impl From<Literal> for String {
    fn from(l: Literal) -> String {
        l.to_string()
    }
}

impl TryFrom<String> for Literal {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        let (name, positive) = match s.strip_prefix("not ") {
            Some(rest) => (rest.trim(), false),
            None => (s.trim(), true),
        };
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(format!("malformed literal `{s}`"));
        }
        Ok(Literal {
            name: name.to_string(),
            positive,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicateAtom {
    pub features: Vec<String>,
    pub predicate: AtomSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Leaf {
    Literal(Literal),
    Predicate(PredicateAtom),
    Exists(EndpointRole, String),
}

impl Leaf {
    pub fn to_concept(&self) -> Concept {
        match self {
            Leaf::Literal(l) if l.positive => Concept::Primitive(l.name.clone()),
            Leaf::Literal(l) => Concept::NegPrimitive(l.name.clone()),
            Leaf::Predicate(p) => Concept::Predicate {
                features: p.features.clone(),
                predicate: p.predicate,
            },
            Leaf::Exists(role, target) => Concept::Exists {
                role: role.clone(),
                target: target.clone(),
            },
        }
    }
}

/// Distributes `And` over `Or`. Each inner vector is one disjunct; `Top`
/// vanishes and any disjunct containing `Bottom` is dropped, so an empty
/// result means the concept is unsatisfiable.
pub fn to_dnf(c: &Concept) -> Vec<Vec<Leaf>> {
    match c {
        Concept::Top => vec![Vec::new()],
        Concept::Bottom => Vec::new(),
        Concept::Primitive(p) => vec![vec![Leaf::Literal(Literal::pos(p.clone()))]],
        Concept::NegPrimitive(p) => vec![vec![Leaf::Literal(Literal::neg(p.clone()))]],
        Concept::Predicate {
            features,
            predicate,
        } => vec![vec![Leaf::Predicate(PredicateAtom {
            features: features.clone(),
            predicate: *predicate,
        })]],
        Concept::Exists { role, target } => vec![vec![Leaf::Exists(role.clone(), target.clone())]],
        Concept::Or(parts) => parts.iter().flat_map(to_dnf).collect(),
        Concept::And(parts) => {
            let mut acc: Vec<Vec<Leaf>> = vec![Vec::new()];
            for part in parts {
                let rhs = to_dnf(part);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        let mut d = left.clone();
                        d.extend(right.iter().cloned());
                        next.push(d);
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
    }
}

/// One disjunct, sorted into its three kinds of conjuncts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Conjunction {
    pub literals: Vec<Literal>,
    pub predicates: Vec<PredicateAtom>,
    pub roles: Vec<(EndpointRole, String)>,
}

impl Conjunction {
    pub fn from_leaves(leaves: Vec<Leaf>) -> Self {
        let mut c = Conjunction::default();
        for leaf in leaves {
            match leaf {
                Leaf::Literal(l) => {
                    if !c.literals.contains(&l) {
                        c.literals.push(l);
                    }
                }
                Leaf::Predicate(p) => c.predicates.push(p),
                Leaf::Exists(r, t) => c.roles.push((r, t)),
            }
        }
        c
    }

    pub fn to_concept(&self) -> Concept {
        let mut parts: Vec<Concept> = self
            .literals
            .iter()
            .map(|l| Leaf::Literal(l.clone()).to_concept())
            .collect();
        parts.extend(self.predicates.iter().map(|p| Leaf::Predicate(p.clone()).to_concept()));
        parts.extend(
            self.roles
                .iter()
                .map(|(r, t)| Leaf::Exists(r.clone(), t.clone()).to_concept()),
        );
        match parts.len() {
            0 => Concept::Top,
            1 => parts.pop().unwrap(),
            _ => Concept::And(parts),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedAxiom {
    pub lhs: String,
    /// Empty when every disjunct contained `bottom`.
    pub disjuncts: Vec<Conjunction>,
}

impl NormalizedAxiom {
    pub fn always_unsat(&self) -> bool {
        self.disjuncts.is_empty()
    }
}

pub fn normalize(t: &TBox) -> Vec<NormalizedAxiom> {
    t.axioms
        .iter()
        .map(|a| NormalizedAxiom {
            lhs: a.lhs.clone(),
            disjuncts: to_dnf(&a.rhs).into_iter().map(Conjunction::from_leaves).collect(),
        })
        .collect()
}
