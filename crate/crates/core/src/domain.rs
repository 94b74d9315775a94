//! Concrete domains generated by a qualitative spatial algebra.
//!
//! A domain fixes the arity of its predicates and the list of atoms; a
//! predicate is any set of atoms, so the predicate set is closed under
//! complement and contains the universal relation.

use std::fmt;

use crate::cyct::{realizable_atoms, CyctAtom, CyctNetwork, CyctRelation, Turn};
use crate::error::DomainError;
use crate::rcc8::{Rcc8Atom, Rcc8Network, Rcc8Relation};

/// A set of atoms of some domain, one bit per atom in the domain's order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomSet(pub u32);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(index: usize) -> Self {
        AtomSet(1 << index)
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn intersect(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.contains(*i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConcreteDomain {
    Rcc8,
    Cyct,
}

impl ConcreteDomain {
    pub const ALL: [ConcreteDomain; 2] = [ConcreteDomain::Rcc8, ConcreteDomain::Cyct];

    pub fn lookup(name: &str) -> Result<ConcreteDomain, DomainError> {
        match name {
            "rcc8" => Ok(ConcreteDomain::Rcc8),
            "cyct" => Ok(ConcreteDomain::Cyct),
            _ => Err(DomainError::UnknownDomain(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConcreteDomain::Rcc8 => "rcc8",
            ConcreteDomain::Cyct => "cyct",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ConcreteDomain::Rcc8 => 2,
            ConcreteDomain::Cyct => 3,
        }
    }

    pub fn atom_count(self) -> usize {
        match self {
            ConcreteDomain::Rcc8 => Rcc8Atom::ALL.len(),
            ConcreteDomain::Cyct => realizable_atoms().len(),
        }
    }

    pub fn atom_names(self) -> Vec<String> {
        (0..self.atom_count()).map(|i| self.atom_name(i)).collect()
    }

    pub fn atom_name(self, index: usize) -> String {
        match self {
            ConcreteDomain::Rcc8 => Rcc8Atom::ALL[index].name().to_string(),
            ConcreteDomain::Cyct => realizable_atoms()[index].name(),
        }
    }

    pub fn atom_index(self, name: &str) -> Result<usize, DomainError> {
        let unknown = || DomainError::UnknownAtom {
            domain: self.name(),
            atom: name.to_string(),
        };
        match self {
            ConcreteDomain::Rcc8 => name
                .parse::<Rcc8Atom>()
                .map(Rcc8Atom::index)
                .map_err(|_| unknown()),
            ConcreteDomain::Cyct => name
                .parse::<CyctAtom>()
                .ok()
                .and_then(CyctAtom::index)
                .ok_or_else(unknown),
        }
    }

    pub fn universal(self) -> AtomSet {
        AtomSet(((1u64 << self.atom_count()) - 1) as u32)
    }

    pub fn complement(self, p: AtomSet) -> AtomSet {
        AtomSet(self.universal().0 & !p.0)
    }

    pub fn format_set(self, p: AtomSet) -> String {
        let names: Vec<_> = p.indices().map(|i| self.atom_name(i)).collect();
        if names.len() == 1 {
            names[0].clone()
        } else {
            format!("{{{}}}", names.join(","))
        }
    }

    /// Decides a conjunction of predicates. On success returns a scenario:
    /// one atom for every tuple of distinct variables the scenario covers.
    pub fn consistent(self, net: &QualNetwork) -> Option<Scenario> {
        assert_eq!(net.arity, self.arity(), "network arity does not match domain");
        match self {
            ConcreteDomain::Rcc8 => {
                let mut rcc = Rcc8Network::new(net.vars);
                for (args, set) in &net.constraints {
                    rcc.constrain(args[0], args[1], Rcc8Relation(set.0 as u8));
                }
                let solved = rcc.consistent()?;
                let mut relations = Vec::new();
                for i in 0..net.vars {
                    for j in i + 1..net.vars {
                        let atom = solved.get(i, j).as_atom().expect("scenario is atomic");
                        relations.push((vec![i, j], atom.index()));
                    }
                }
                Some(Scenario {
                    relations,
                    placement: Vec::new(),
                })
            }
            ConcreteDomain::Cyct => {
                let mut cyc = CyctNetwork::new(net.vars);
                for (args, set) in &net.constraints {
                    cyc.constrain(args[0], args[1], args[2], CyctRelation(set.0));
                }
                let placement = cyc.consistent()?;
                let relations = net
                    .constraints
                    .iter()
                    .map(|(args, _)| {
                        let t = CyctAtom::of_angles(
                            placement[args[0]],
                            placement[args[1]],
                            placement[args[2]],
                        );
                        (args.clone(), t.index().expect("realized atoms are realizable"))
                    })
                    .collect();
                Some(Scenario {
                    relations,
                    placement,
                })
            }
        }
    }

    /// Checks a scenario against a network using the domain's own semantics:
    /// algebraic closure for RCC8, angle evaluation for CYC_t.
    pub fn scenario_satisfies(self, scenario: &Scenario, net: &QualNetwork) -> bool {
        match self {
            ConcreteDomain::Rcc8 => {
                let mut rcc = Rcc8Network::new(net.vars);
                for (args, atom) in &scenario.relations {
                    rcc.constrain(args[0], args[1], Rcc8Relation(1 << atom));
                }
                if !rcc.is_atomic() || !rcc.clone().path_consistency() || rcc.has_empty() {
                    return false;
                }
                net.constraints.iter().all(|(args, set)| {
                    let r = rcc.get(args[0], args[1]);
                    r.atoms().any(|a| set.contains(a.index()))
                })
            }
            ConcreteDomain::Cyct => {
                if scenario.placement.len() != net.vars {
                    return false;
                }
                net.constraints.iter().all(|(args, set)| {
                    let p = &scenario.placement;
                    CyctAtom::of_angles(p[args[0]], p[args[1]], p[args[2]])
                        .index()
                        .is_some_and(|i| set.contains(i))
                })
            }
        }
    }
}

impl fmt::Display for ConcreteDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A conjunction of predicates over variables `0..vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QualNetwork {
    pub arity: usize,
    pub vars: usize,
    pub constraints: Vec<(Vec<usize>, AtomSet)>,
}

impl QualNetwork {
    pub fn new(arity: usize, vars: usize) -> Self {
        QualNetwork {
            arity,
            vars,
            constraints: Vec::new(),
        }
    }

    /// Adds a predicate, conjoining with any earlier one on the same tuple.
    pub fn add(&mut self, args: Vec<usize>, set: AtomSet) {
        assert_eq!(args.len(), self.arity);
        if let Some(slot) = self.constraints.iter_mut().find(|(a, _)| *a == args) {
            slot.1 = slot.1.intersect(set);
        } else {
            self.constraints.push((args, set));
        }
    }

    /// The first tuple whose conjoined predicate is empty.
    pub fn empty_constraint(&self) -> Option<&[usize]> {
        self.constraints
            .iter()
            .find(|(_, s)| s.is_empty())
            .map(|(a, _)| a.as_slice())
    }
}

/// A satisfying atomic assignment. For RCC8 it covers every pair `i < j`;
/// for CYC_t it carries concrete angles plus the atom on every constrained triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub relations: Vec<(Vec<usize>, usize)>,
    pub placement: Vec<Turn>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry() {
        let rcc = ConcreteDomain::lookup("rcc8").unwrap();
        assert_eq!((rcc.arity(), rcc.atom_count()), (2, 8));
        let cyc = ConcreteDomain::lookup("cyct").unwrap();
        assert_eq!((cyc.arity(), cyc.atom_count()), (3, 24));
        assert_eq!(
            ConcreteDomain::lookup("rcc23"),
            Err(DomainError::UnknownDomain("rcc23".into()))
        );
    }

    #[test]
    fn complement_examples() {
        for d in ConcreteDomain::ALL {
            assert!(d.complement(d.universal()).is_empty());
            assert_eq!(d.complement(AtomSet::EMPTY), d.universal());
            for bits in [0x5u32, 0x3a, 0x123456, 0xfff0f0] {
                let p = AtomSet(bits).intersect(d.universal());
                assert_eq!(d.complement(d.complement(p)), p);
                assert!(d.complement(p).intersect(p).is_empty());
            }
        }
        let rcc = ConcreteDomain::Rcc8;
        let eq = AtomSet::singleton(rcc.atom_index("EQ").unwrap());
        assert_eq!(rcc.complement(eq).len(), 7);
        assert!(!rcc.complement(eq).contains(rcc.atom_index("EQ").unwrap()));
    }

    #[test]
    fn atom_names_resolve() {
        assert_eq!(ConcreteDomain::Rcc8.atom_index("TPPi"), Ok(5));
        assert!(ConcreteDomain::Rcc8.atom_index("tpp").is_err());
        assert!(ConcreteDomain::Cyct.atom_index("lll").is_ok());
        assert!(ConcreteDomain::Cyct.atom_index("eel").is_err());
        assert_eq!(ConcreteDomain::Rcc8.format_set(AtomSet(0b11)), "{DC,EC}");
        assert_eq!(ConcreteDomain::Rcc8.format_set(AtomSet(0b10)), "EC");
    }

    #[test]
    fn universal_predicate_is_satisfiable() {
        for d in ConcreteDomain::ALL {
            let mut net = QualNetwork::new(d.arity(), d.arity());
            net.add((0..d.arity()).collect(), d.universal());
            let s = d.consistent(&net).expect("universal predicate is satisfiable");
            assert!(d.scenario_satisfies(&s, &net));
        }
    }

    #[test]
    fn conjunction_merges_on_same_tuple() {
        let d = ConcreteDomain::Rcc8;
        let mut net = QualNetwork::new(2, 3);
        net.add(vec![0, 2], AtomSet::singleton(d.atom_index("TPP").unwrap()));
        net.add(vec![0, 2], AtomSet::singleton(d.atom_index("NTPP").unwrap()));
        assert_eq!(net.empty_constraint(), Some(&[0, 2][..]));
        assert!(d.consistent(&net).is_none());
    }
}
