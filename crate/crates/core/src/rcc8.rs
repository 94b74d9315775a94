//! The RCC8 relation algebra and consistency of RCC8 constraint networks.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rcc8Atom {
    DC,
    EC,
    PO,
    TPP,
    NTPP,
    TPPi,
    NTPPi,
    EQ,
}

impl Rcc8Atom {
    pub const ALL: [Rcc8Atom; 8] = [
        Rcc8Atom::DC,
        Rcc8Atom::EC,
        Rcc8Atom::PO,
        Rcc8Atom::TPP,
        Rcc8Atom::NTPP,
        Rcc8Atom::TPPi,
        Rcc8Atom::NTPPi,
        Rcc8Atom::EQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rcc8Atom::DC => "DC",
            Rcc8Atom::EC => "EC",
            Rcc8Atom::PO => "PO",
            Rcc8Atom::TPP => "TPP",
            Rcc8Atom::NTPP => "NTPP",
            Rcc8Atom::TPPi => "TPPi",
            Rcc8Atom::NTPPi => "NTPPi",
            Rcc8Atom::EQ => "EQ",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn converse(self) -> Rcc8Atom {
        match self {
            Rcc8Atom::TPP => Rcc8Atom::TPPi,
            Rcc8Atom::TPPi => Rcc8Atom::TPP,
            Rcc8Atom::NTPP => Rcc8Atom::NTPPi,
            Rcc8Atom::NTPPi => Rcc8Atom::NTPP,
            a => a,
        }
    }
}

impl fmt::Display for Rcc8Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rcc8Atom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rcc8Atom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown RCC8 atom `{s}`"))
    }
}

/// A set of RCC8 atoms, one bit per atom in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rcc8Relation(pub u8);

impl Rcc8Relation {
    pub const EMPTY: Rcc8Relation = Rcc8Relation(0);
    pub const UNIVERSAL: Rcc8Relation = Rcc8Relation(0xff);

    pub fn atom(a: Rcc8Atom) -> Self {
        Rcc8Relation(1 << a.index())
    }

    pub fn of(atoms: &[Rcc8Atom]) -> Self {
        atoms.iter().fold(Rcc8Relation::EMPTY, |r, a| r.union(Rcc8Relation::atom(*a)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, a: Rcc8Atom) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn as_atom(self) -> Option<Rcc8Atom> {
        if self.len() == 1 {
            Some(Rcc8Atom::ALL[self.0.trailing_zeros() as usize])
        } else {
            None
        }
    }

    pub fn union(self, other: Self) -> Self {
        Rcc8Relation(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        Rcc8Relation(self.0 & other.0)
    }

    pub fn atoms(self) -> impl Iterator<Item = Rcc8Atom> {
        Rcc8Atom::ALL.into_iter().filter(move |a| self.contains(*a))
    }

    pub fn converse(self) -> Self {
        converse_rel(self)
    }
}

impl fmt::Display for Rcc8Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.atoms().map(Rcc8Atom::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

pub fn converse_rel(r: Rcc8Relation) -> Rcc8Relation {
    Rcc8Relation::of(&r.atoms().map(Rcc8Atom::converse).collect::<Vec<_>>())
}

/// The standard RCC8 composition table: `compose(a, b)` holds the relations
/// possible between `x` and `z` given `a(x, y)` and `b(y, z)`.
pub fn compose(a: Rcc8Atom, b: Rcc8Atom) -> Rcc8Relation {
    use Rcc8Atom::*;
    const ALL: &[Rcc8Atom] = &Rcc8Atom::ALL;
    let r = |atoms: &[Rcc8Atom]| Rcc8Relation::of(atoms);
    match (a, b) {
        (EQ, x) | (x, EQ) => r(&[x]),

        (DC, DC) => r(ALL),
        (DC, EC | PO | TPP | NTPP) => r(&[DC, EC, PO, TPP, NTPP]),
        (DC, TPPi | NTPPi) => r(&[DC]),

        (EC, DC) => r(&[DC, EC, PO, TPPi, NTPPi]),
        (EC, EC) => r(&[DC, EC, PO, TPP, TPPi, EQ]),
        (EC, PO) => r(&[DC, EC, PO, TPP, NTPP]),
        (EC, TPP) => r(&[EC, PO, TPP, NTPP]),
        (EC, NTPP) => r(&[PO, TPP, NTPP]),
        (EC, TPPi) => r(&[DC, EC]),
        (EC, NTPPi) => r(&[DC]),

        (PO, DC | EC | TPPi | NTPPi) => r(&[DC, EC, PO, TPPi, NTPPi]),
        (PO, PO) => r(ALL),
        (PO, TPP | NTPP) => r(&[PO, TPP, NTPP]),

        (TPP, DC) => r(&[DC]),
        (TPP, EC) => r(&[DC, EC]),
        (TPP, PO) => r(&[DC, EC, PO, TPP, NTPP]),
        (TPP, TPP) => r(&[TPP, NTPP]),
        (TPP, NTPP) => r(&[NTPP]),
        (TPP, TPPi) => r(&[DC, EC, PO, TPP, TPPi, EQ]),
        (TPP, NTPPi) => r(&[DC, EC, PO, TPPi, NTPPi]),

        (NTPP, DC | EC) => r(&[DC]),
        (NTPP, PO | TPPi) => r(&[DC, EC, PO, TPP, NTPP]),
        (NTPP, TPP | NTPP) => r(&[NTPP]),
        (NTPP, NTPPi) => r(ALL),

        (TPPi, DC) => r(&[DC, EC, PO, TPPi, NTPPi]),
        (TPPi, EC) => r(&[EC, PO, TPPi, NTPPi]),
        (TPPi, PO) => r(&[PO, TPPi, NTPPi]),
        (TPPi, TPP) => r(&[PO, TPP, TPPi, EQ]),
        (TPPi, NTPP) => r(&[PO, TPP, NTPP]),
        (TPPi, TPPi) => r(&[TPPi, NTPPi]),
        (TPPi, NTPPi) => r(&[NTPPi]),

        (NTPPi, DC) => r(&[DC, EC, PO, TPPi, NTPPi]),
        (NTPPi, EC | PO | TPP) => r(&[PO, TPPi, NTPPi]),
        (NTPPi, NTPP) => r(&[PO, TPP, NTPP, TPPi, NTPPi, EQ]),
        (NTPPi, TPPi | NTPPi) => r(&[NTPPi]),
    }
}

/// Composition lifted to relations, served from a 256 x 256 table built once.
pub fn compose_rel(a: Rcc8Relation, b: Rcc8Relation) -> Rcc8Relation {
    static TABLE: OnceLock<Vec<u8>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0u8; 256 * 256];
        for x in 0..256usize {
            for y in 0..256usize {
                let mut acc = Rcc8Relation::EMPTY;
                for p in Rcc8Relation(x as u8).atoms() {
                    for q in Rcc8Relation(y as u8).atoms() {
                        acc = acc.union(compose(p, q));
                    }
                }
                t[x * 256 + y] = acc.0;
            }
        }
        t
    });
    Rcc8Relation(table[a.0 as usize * 256 + b.0 as usize])
}

/// A binary RCC8 constraint network over variables `0..n`, stored as a full
/// converse-closed matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rcc8Network {
    n: usize,
    rel: Vec<Rcc8Relation>,
}

impl Rcc8Network {
    pub fn new(n: usize) -> Self {
        let mut rel = vec![Rcc8Relation::UNIVERSAL; n * n];
        for i in 0..n {
            rel[i * n + i] = Rcc8Relation::atom(Rcc8Atom::EQ);
        }
        Rcc8Network { n, rel }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Rcc8Relation {
        self.rel[i * self.n + j]
    }

    /// Conjoins `r(i, j)` with the existing constraint.
    pub fn constrain(&mut self, i: usize, j: usize, r: Rcc8Relation) {
        let cur = self.get(i, j).intersect(r);
        self.set(i, j, cur);
    }

    fn set(&mut self, i: usize, j: usize, r: Rcc8Relation) {
        let n = self.n;
        self.rel[i * n + j] = r;
        self.rel[j * n + i] = r.converse();
        if i == j {
            self.rel[i * n + i] = r.intersect(r.converse());
        }
    }

    pub fn has_empty(&self) -> bool {
        self.rel.iter().any(|r| r.is_empty())
    }

    pub fn is_atomic(&self) -> bool {
        self.rel.iter().all(|r| r.len() == 1)
    }

    /// Whether every constraint of `self` is contained in the matching one of `other`.
    pub fn refines(&self, other: &Rcc8Network) -> bool {
        self.n == other.n
            && self
                .rel
                .iter()
                .zip(&other.rel)
                .all(|(a, b)| a.intersect(*b) == *a)
    }

    /// Refines `r(i,k) <- r(i,k) & r(i,j).r(j,k)` to a fixpoint.
    /// Returns `false` as soon as some constraint becomes empty.
    pub fn path_consistency(&mut self) -> bool {
        let n = self.n;
        if self.has_empty() {
            return false;
        }
        let mut queue: Vec<(usize, usize)> = Vec::new();
        let mut queued = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                queue.push((i, j));
                queued[i * n + j] = true;
            }
        }
        while let Some((i, j)) = queue.pop() {
            queued[i * n + j] = false;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // (i, k) via j
                let via = compose_rel(self.get(i, j), self.get(j, k));
                let cur = self.get(i, k);
                let next = cur.intersect(via);
                if next != cur {
                    if next.is_empty() {
                        self.set(i, k, next);
                        return false;
                    }
                    self.set(i, k, next);
                    let key = if i < k { (i, k) } else { (k, i) };
                    if !queued[key.0 * n + key.1] {
                        queued[key.0 * n + key.1] = true;
                        queue.push(key);
                    }
                }
                // (k, j) via i
                let via = compose_rel(self.get(k, i), self.get(i, j));
                let cur = self.get(k, j);
                let next = cur.intersect(via);
                if next != cur {
                    if next.is_empty() {
                        self.set(k, j, next);
                        return false;
                    }
                    self.set(k, j, next);
                    let key = if k < j { (k, j) } else { (j, k) };
                    if !queued[key.0 * n + key.1] {
                        queued[key.0 * n + key.1] = true;
                        queue.push(key);
                    }
                }
            }
        }
        true
    }

    /// Decides satisfiability. Returns a consistent atomic refinement (a
    /// scenario) when one exists.
    ///
    /// Path consistency decides atomic networks; disjunctive constraints are
    /// split chronologically, smallest relation first, atoms in declaration order.
    pub fn consistent(&self) -> Option<Rcc8Network> {
        let mut net = self.clone();
        if !net.path_consistency() {
            return None;
        }
        net.search()
    }

    fn search(self) -> Option<Rcc8Network> {
        let n = self.n;
        let mut pick: Option<(usize, usize, u32)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let size = self.get(i, j).len();
                if size > 1 && pick.is_none_or(|(_, _, s)| size < s) {
                    pick = Some((i, j, size));
                }
            }
        }
        let Some((i, j, _)) = pick else {
            return Some(self);
        };
        for atom in self.get(i, j).atoms() {
            let mut next = self.clone();
            next.set(i, j, Rcc8Relation::atom(atom));
            if next.path_consistency() {
                if let Some(found) = next.search() {
                    return Some(found);
                }
            }
        }
        None
    }
}

impl fmt::Display for Rcc8Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = self.get(i, j);
                if r != Rcc8Relation::UNIVERSAL {
                    writeln!(f, "{r}(v{i}, v{j})")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Rcc8Atom::*;

    #[test]
    fn identity_law() {
        for a in Rcc8Atom::ALL {
            assert_eq!(compose(EQ, a), Rcc8Relation::atom(a));
            assert_eq!(compose(a, EQ), Rcc8Relation::atom(a));
        }
    }

    #[test]
    fn composition_converse_law() {
        for a in Rcc8Atom::ALL {
            for b in Rcc8Atom::ALL {
                assert_eq!(
                    compose(a, b).converse(),
                    compose(b.converse(), a.converse()),
                    "{a} o {b}"
                );
            }
        }
    }

    #[test]
    fn every_entry_is_nonempty_and_lifted_table_agrees() {
        for a in Rcc8Atom::ALL {
            for b in Rcc8Atom::ALL {
                assert!(!compose(a, b).is_empty());
                assert_eq!(
                    compose_rel(Rcc8Relation::atom(a), Rcc8Relation::atom(b)),
                    compose(a, b)
                );
            }
        }
        assert_eq!(compose(NTPP, NTPP), Rcc8Relation::atom(NTPP));
        assert_eq!(compose(TPP, NTPP), Rcc8Relation::atom(NTPP));
    }

    #[test]
    fn converse_examples() {
        assert_eq!(converse_rel(Rcc8Relation::of(&[TPP])), Rcc8Relation::of(&[TPPi]));
        assert_eq!(
            converse_rel(Rcc8Relation::of(&[DC, EC])),
            Rcc8Relation::of(&[DC, EC])
        );
        for bits in (0..=255u8).step_by(5) {
            let r = Rcc8Relation(bits);
            assert_eq!(converse_rel(converse_rel(r)), r);
        }
    }

    #[test]
    fn tpp_ntpp_clash() {
        let mut net = Rcc8Network::new(2);
        net.constrain(0, 1, Rcc8Relation::atom(TPP));
        net.constrain(0, 1, Rcc8Relation::atom(NTPP));
        assert!(!net.clone().path_consistency());
        assert!(net.consistent().is_none());
    }

    #[test]
    fn single_constraint_unchanged() {
        let mut net = Rcc8Network::new(2);
        net.constrain(0, 1, Rcc8Relation::atom(EC));
        let mut refined = net.clone();
        assert!(refined.path_consistency());
        assert_eq!(refined, net);
    }

    #[test]
    fn ec_ntpp_tpp_triangle() {
        // a EC b, b NTPP c, a TPP c
        let mut net = Rcc8Network::new(3);
        net.constrain(0, 1, Rcc8Relation::atom(EC));
        net.constrain(1, 2, Rcc8Relation::atom(NTPP));
        net.constrain(0, 2, Rcc8Relation::atom(TPP));
        let mut pc = net.clone();
        assert!(pc.path_consistency());
        let scenario = net.consistent().expect("satisfiable");
        assert_eq!(scenario, net);
    }

    #[test]
    fn empty_network_is_consistent() {
        assert!(Rcc8Network::new(0).consistent().is_some());
    }

    #[test]
    fn disjunctive_network_gets_atomic_refinement() {
        let mut net = Rcc8Network::new(3);
        net.constrain(0, 1, Rcc8Relation::of(&[DC, NTPP]));
        net.constrain(1, 2, Rcc8Relation::of(&[NTPP, EQ]));
        net.constrain(0, 2, Rcc8Relation::of(&[TPP, PO]));
        let s = net.consistent().expect("satisfiable");
        assert!(s.is_atomic());
        assert!(s.refines(&net));
        let mut check = s.clone();
        assert!(check.path_consistency());
        assert_eq!(check, s);
    }
}
