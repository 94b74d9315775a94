//! Models produced by the reasoner and an independent checker for them.
//!
//! [`check_witness`] evaluates the recursive satisfaction relation directly
//! on the concept syntax tree with exact endpoint arithmetic. It shares no
//! code with the search beyond the algebra tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::allen::{partition_of, AllenAtom, EndpointRole, PartitionRelation};
use crate::bounds::Rational;
use crate::cyct::{CyctAtom, Turn};
use crate::domain::ConcreteDomain;
use crate::rcc8::{compose, Rcc8Atom};
use crate::tbox::{Concept, Literal, TBox};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    #[serde(with = "rational_text")]
    pub begin: Rational,
    #[serde(with = "rational_text")]
    pub end: Rational,
}

/// The value of feature `feature` at the interval of `concept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FeatureVar {
    pub concept: String,
    pub feature: String,
}

impl std::fmt::Display for FeatureVar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}.{}", self.concept, self.feature)
    }
}

/// Feature variables forced to share one value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpatialVarClass {
    pub representative: FeatureVar,
    pub members: Vec<FeatureVar>,
}

/// An atom holding between classes, by index into [`WitnessScenario::classes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioRelation {
    pub args: Vec<usize>,
    pub atom: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessScenario {
    pub classes: Vec<SpatialVarClass>,
    /// RCC8: one atom for every pair of classes `i < j`. CYC_t: the atom on
    /// every constrained triple.
    pub relations: Vec<ScenarioRelation>,
    /// CYC_t only: an angle, in turns, for every class.
    #[serde(with = "turn_text", default, skip_serializing_if = "Vec::is_empty")]
    pub placement: Vec<Turn>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPartition {
    pub first: String,
    pub second: String,
    pub relation: PartitionRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub endpoints: BTreeMap<String, Span>,
    pub literals: BTreeMap<String, Vec<Literal>>,
    pub scenario: WitnessScenario,
    /// Index of the disjunct, in normal form, chosen for every axiom.
    pub disjuncts: BTreeMap<String, usize>,
    pub partitions: Vec<PairPartition>,
}

mod rational_text {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::bounds::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("malformed rational `{text}`")))
    }
}

mod turn_text {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::cyct::Turn;

    pub fn serialize<S: Serializer>(turns: &[Turn], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(turns.iter().map(|t| t.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Turn>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| {
                t.parse::<Turn>()
                    .map_err(|_| D::Error::custom(format!("malformed turn `{t}`")))
            })
            .collect()
    }
}

fn in_set(set: &crate::bounds::ConvexSet, x: Rational) -> bool {
    set.contains(&x)
}

fn role_holds(role: &EndpointRole, i: &Span, j: &Span) -> bool {
    in_set(&role.rbb, &j.begin - &i.begin)
        && in_set(&role.rbe, &j.end - &i.begin)
        && in_set(&role.reb, &j.begin - &i.end)
        && in_set(&role.ree, &j.end - &i.end)
}

fn allen_of(i: &Span, j: &Span) -> AllenAtom {
    AllenAtom::classify(&i.begin, &i.end, &j.begin, &j.end).expect("durative intervals")
}

/// Interiors intersect.
fn overlap(i: &Span, j: &Span) -> bool {
    i.begin.clone().max(j.begin.clone()) < i.end.clone().min(j.end.clone())
}

fn within(i: &Span, j: &Span) -> bool {
    j.begin <= i.begin && i.end <= j.end
}

struct Model<'a> {
    t: &'a TBox,
    w: &'a Witness,
    class_of: HashMap<(&'a str, &'a str), usize>,
}

impl Model<'_> {
    fn holds(&self, concept: &str, c: &Concept) -> bool {
        match c {
            Concept::Top => true,
            Concept::Bottom => false,
            Concept::Primitive(p) => self.w.literals[concept].contains(&Literal::pos(p.clone())),
            Concept::NegPrimitive(p) => !self.w.literals[concept].contains(&Literal::pos(p.clone())),
            Concept::Predicate {
                features,
                predicate,
            } => {
                let classes: Option<Vec<usize>> = features
                    .iter()
                    .map(|g| self.class_of.get(&(concept, g.as_str())).copied())
                    .collect();
                match classes.and_then(|cs| self.atom_on(&cs)) {
                    Some(atom) => predicate.contains(atom),
                    None => false,
                }
            }
            Concept::Exists { role, target } => {
                let e = &self.w.endpoints;
                role_holds(role, &e[concept], &e[target.as_str()])
            }
            Concept::And(parts) => parts.iter().all(|p| self.holds(concept, p)),
            Concept::Or(parts) => parts.iter().any(|p| self.holds(concept, p)),
        }
    }

    /// The domain atom index holding on a tuple of classes.
    fn atom_on(&self, classes: &[usize]) -> Option<usize> {
        let scenario = &self.w.scenario;
        match self.t.domain {
            ConcreteDomain::Rcc8 => {
                let (a, b) = (classes[0], classes[1]);
                let atom = if a == b {
                    Rcc8Atom::EQ
                } else {
                    let (lo, hi) = (a.min(b), a.max(b));
                    let r = scenario.relations.iter().find(|r| r.args == [lo, hi])?;
                    let atom: Rcc8Atom = r.atom.parse().ok()?;
                    if lo == a {
                        atom
                    } else {
                        atom.converse()
                    }
                };
                Some(atom.index())
            }
            ConcreteDomain::Cyct => {
                let p = &scenario.placement;
                let turn = |k: usize| p.get(k).copied();
                CyctAtom::of_angles(turn(classes[0])?, turn(classes[1])?, turn(classes[2])?).index()
            }
        }
    }
}

fn scenario_is_consistent(domain: ConcreteDomain, s: &WitnessScenario) -> Result<(), String> {
    let n = s.classes.len();
    match domain {
        ConcreteDomain::Rcc8 => {
            let mut atom = vec![vec![Rcc8Atom::EQ; n]; n];
            let mut seen = vec![vec![false; n]; n];
            for r in &s.relations {
                let [a, b] = r.args[..] else {
                    return Err(format!("relation over {:?} is not binary", r.args));
                };
                if a >= b || b >= n {
                    return Err(format!("relation over {:?} is not an ordered pair of classes", r.args));
                }
                let x: Rcc8Atom = r.atom.parse()?;
                atom[a][b] = x;
                atom[b][a] = x.converse();
                seen[a][b] = true;
            }
            for a in 0..n {
                for b in a + 1..n {
                    if !seen[a][b] {
                        return Err(format!("scenario has no atom for classes {a} and {b}"));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !compose(atom[i][j], atom[j][k]).contains(atom[i][k]) {
                            return Err(format!(
                                "scenario violates composition on classes {i}, {j}, {k}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        }
        ConcreteDomain::Cyct => {
            if s.placement.len() != n {
                return Err("placement does not cover every class".into());
            }
            for r in &s.relations {
                let [a, b, c] = r.args[..] else {
                    return Err(format!("relation over {:?} is not ternary", r.args));
                };
                if a.max(b).max(c) >= n {
                    return Err(format!("relation over {:?} names a missing class", r.args));
                }
                let p = &s.placement;
                let actual = CyctAtom::of_angles(p[a], p[b], p[c]).name();
                if actual != r.atom {
                    return Err(format!(
                        "placement realizes {actual} on {:?}, scenario lists {}",
                        r.args, r.atom
                    ));
                }
            }
            Ok(())
        }
    }
}

/// Checks that `w` is a model of `t`, explaining the first violation found.
pub fn check_witness(t: &TBox, w: &Witness) -> Result<(), String> {
    let names: Vec<&str> = t.axioms.iter().map(|a| a.lhs.as_str()).collect();
    for name in &names {
        let span = w
            .endpoints
            .get(*name)
            .ok_or_else(|| format!("no endpoints for {name}"))?;
        if span.begin >= span.end {
            return Err(format!("{name} is not durative"));
        }
        if !w.literals.contains_key(*name) {
            return Err(format!("no literal set for {name}"));
        }
    }
    if w.endpoints.len() != names.len() {
        return Err("endpoints name an undefined concept".into());
    }

    for (name, lits) in &w.literals {
        if let Some(l) = lits.iter().find(|l| lits.contains(&l.complement())) {
            return Err(format!("literals of {name} contain both {l} and {}", l.complement()));
        }
    }

    let mut class_of = HashMap::new();
    for (k, class) in w.scenario.classes.iter().enumerate() {
        if !class.members.contains(&class.representative) {
            return Err(format!("class {k} does not contain its representative"));
        }
        for m in &class.members {
            if m.feature != class.representative.feature {
                return Err(format!("class {k} mixes features"));
            }
            if class_of.insert((m.concept.as_str(), m.feature.as_str()), k).is_some() {
                return Err(format!("{m} belongs to two classes"));
            }
        }
    }
    scenario_is_consistent(t.domain, &w.scenario)?;

    let model = Model { t, w, class_of };
    for a in &t.axioms {
        if !model.holds(&a.lhs, &a.rhs) {
            return Err(format!("{} does not satisfy its definition", a.lhs));
        }
    }

    let features_of = |c: &str| -> Vec<&str> {
        model
            .class_of
            .keys()
            .filter(|(k, _)| *k == c)
            .map(|(_, g)| *g)
            .collect()
    };
    for (x, &a) in names.iter().enumerate() {
        for &b in &names[x + 1..] {
            let (sa, sb) = (&w.endpoints[a], &w.endpoints[b]);
            for (inner, outer, si, so) in [(a, b, sa, sb), (b, a, sb, sa)] {
                if within(si, so) {
                    if let Some(l) = w.literals[outer].iter().find(|l| !w.literals[inner].contains(l)) {
                        return Err(format!("{inner} lies within {outer} but lacks {l}"));
                    }
                }
            }
            if !overlap(sa, sb) {
                continue;
            }
            let la = &w.literals[a];
            if let Some(l) = w.literals[b].iter().find(|l| la.contains(&l.complement())) {
                return Err(format!("{a} and {b} overlap with {} against {l}", l.complement()));
            }
            let gb = features_of(b);
            for g in features_of(a) {
                if gb.contains(&g) && model.class_of[&(a, g)] != model.class_of[&(b, g)] {
                    return Err(format!("{a} and {b} overlap with different values of {g}"));
                }
            }
        }
    }

    let mut expected = Vec::new();
    for (x, &a) in names.iter().enumerate() {
        for &b in &names[x + 1..] {
            expected.push((a, b, partition_of(allen_of(&w.endpoints[a], &w.endpoints[b]))));
        }
    }
    if w.partitions.len() != expected.len() {
        return Err("partition list does not cover every pair".into());
    }
    for (p, (a, b, rel)) in w.partitions.iter().zip(expected) {
        if p.first != a || p.second != b || p.relation != rel {
            return Err(format!("{a}/{b} realizes {rel}, witness lists {}", p.relation));
        }
    }
    Ok(())
}

pub fn verify_witness(t: &TBox, w: &Witness) -> bool {
    check_witness(t, w).is_ok()
}

/// An integer-valued span helper for tests and examples.
pub fn span(begin: i64, end: i64) -> Span {
    Span {
        begin: Rational::from_integer(begin.into()),
        end: Rational::from_integer(end.into()),
    }
}
