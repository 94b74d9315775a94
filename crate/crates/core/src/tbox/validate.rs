use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{Concept, TBox};

/// A well-formedness problem. `axiom` names the axiom it was found in, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub axiom: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.axiom {
            Some(a) => write!(f, "{a}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn walk<'a>(c: &'a Concept, visit: &mut impl FnMut(&'a Concept)) {
    visit(c);
    if let Concept::And(parts) | Concept::Or(parts) = c {
        for p in parts {
            walk(p, visit);
        }
    }
}

/// Returns every problem found; an empty list means the TBox is well formed.
pub fn validate(t: &TBox) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let defined: HashSet<&str> = t.axioms.iter().map(|a| a.lhs.as_str()).collect();

    let mut seen = HashSet::new();
    for a in &t.axioms {
        if !seen.insert(a.lhs.as_str()) {
            out.push(Diagnostic {
                axiom: None,
                message: format!("duplicate definition {}", a.lhs),
            });
        }
    }

    let mut primitives = BTreeSet::new();
    for a in &t.axioms {
        let mut push = |message: String| {
            out.push(Diagnostic {
                axiom: Some(a.lhs.clone()),
                message,
            })
        };
        walk(&a.rhs, &mut |c| match c {
            Concept::Primitive(p) | Concept::NegPrimitive(p) => {
                primitives.insert(p.as_str());
            }
            Concept::Exists { role, target } => {
                if !defined.contains(target.as_str()) {
                    push(format!("undefined target {target}"));
                }
                if role.has_empty_component() {
                    push(format!("role {role} towards {target} has an empty component"));
                }
            }
            Concept::Predicate { features, .. } => {
                if features.len() != t.domain.arity() {
                    push(format!(
                        "feature arity mismatch: ({}) has {} features, domain {} takes {}",
                        features.join(","),
                        features.len(),
                        t.domain,
                        t.domain.arity()
                    ));
                }
            }
            _ => {}
        });
    }

    for p in primitives {
        if defined.contains(p) {
            out.push(Diagnostic {
                axiom: None,
                message: format!("{p} is used both as a primitive and as a defined concept"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allen::EndpointRole;
    use crate::bounds::ConvexSet;
    use crate::domain::{AtomSet, ConcreteDomain};
    use crate::tbox::{parse_tbox, Axiom};

    #[test]
    fn example_is_clean() {
        let t = parse_tbox(
            "domain rcc8.
             C1 := some(g1,g2).EC and some(g1,g3).TPP and exists o . C2 .
             C2 := some(g1,g2).EC and some(g2,g3).NTPP and exists o . C3 .
             C3 := some(g1,g3).NTPP and exists oi . C1 .",
        )
        .unwrap();
        assert!(validate(&t).is_empty());
    }

    #[test]
    fn undefined_target() {
        let t = parse_tbox("domain rcc8.\nC := exists o . D .").unwrap();
        let d = validate(&t);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "undefined target D");
        assert_eq!(d[0].to_string(), "C: undefined target D");
    }

    #[test]
    fn programmatic_defects() {
        let mut t = TBox::new(ConcreteDomain::Rcc8);
        let empty_role = EndpointRole::new(
            ConvexSet::positive().intersect(&ConvexSet::negative()),
            ConvexSet::universal(),
            ConvexSet::universal(),
            ConvexSet::universal(),
        );
        t.axioms.push(Axiom {
            lhs: "C1".into(),
            rhs: Concept::And(vec![
                Concept::Primitive("C2".into()),
                Concept::Exists {
                    role: empty_role,
                    target: "C1".into(),
                },
                Concept::Predicate {
                    features: vec!["g1".into()],
                    predicate: AtomSet(1),
                },
            ]),
        });
        t.axioms.push(Axiom {
            lhs: "C1".into(),
            rhs: Concept::Top,
        });
        t.axioms.push(Axiom {
            lhs: "C2".into(),
            rhs: Concept::Top,
        });
        let messages: Vec<String> = validate(&t).into_iter().map(|d| d.message).collect();
        assert_eq!(messages.len(), 4, "{messages:?}");
        assert_eq!(messages[0], "duplicate definition C1");
        assert!(messages[1].contains("empty component"));
        assert!(messages[2].contains("arity"));
        assert!(messages[3].contains("C2 is used both"));
    }
}
