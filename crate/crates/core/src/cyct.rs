//! Cyclic ordering of 2D orientations: the binary algebra of four atoms
//! (equal, left, opposite, right) and the ternary algebra built on it.
//!
//! Orientations are angles stored as exact rational fractions of a full turn
//! in `[0, 1)`, so `1/2` is the opposite direction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::rational::Ratio;
use num::{One, Zero};

/// An orientation, as a fraction of a full anticlockwise turn.
pub type Turn = Ratio<i64>;

pub fn half_turn() -> Turn {
    Turn::new(1, 2)
}

/// Reduces an angle into `[0, 1)`.
pub fn normalize(t: Turn) -> Turn {
    let f = t.fract();
    if f < Turn::zero() {
        f + Turn::one()
    } else {
        f
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycbAtom {
    E,
    L,
    O,
    R,
}

impl CycbAtom {
    pub const ALL: [CycbAtom; 4] = [CycbAtom::E, CycbAtom::L, CycbAtom::O, CycbAtom::R];

    pub fn letter(self) -> char {
        match self {
            CycbAtom::E => 'e',
            CycbAtom::L => 'l',
            CycbAtom::O => 'o',
            CycbAtom::R => 'r',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'e' => Some(CycbAtom::E),
            'l' => Some(CycbAtom::L),
            'o' => Some(CycbAtom::O),
            'r' => Some(CycbAtom::R),
            _ => None,
        }
    }

    /// The atom `a` with `a(y, x)` for orientations `x`, `y`.
    pub fn between(theta_x: Turn, theta_y: Turn) -> CycbAtom {
        let d = normalize(theta_y - theta_x);
        if d.is_zero() {
            CycbAtom::E
        } else if d < half_turn() {
            CycbAtom::L
        } else if d == half_turn() {
            CycbAtom::O
        } else {
            CycbAtom::R
        }
    }
}

/// `a(y, x)`: the anticlockwise angle from `x` to `y` lies in the range of `a`.
pub fn cycb_holds(a: CycbAtom, theta_x: Turn, theta_y: Turn) -> bool {
    CycbAtom::between(theta_x, theta_y) == a
}

/// A triple `b1 b2 b3`, meaning `b1(y,x) & b2(z,y) & b3(z,x)`. Only 24 of the
/// 64 triples are realizable; see [`realizable_atoms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyctAtom(pub CycbAtom, pub CycbAtom, pub CycbAtom);

impl CyctAtom {
    pub fn of_angles(x: Turn, y: Turn, z: Turn) -> CyctAtom {
        CyctAtom(
            CycbAtom::between(x, y),
            CycbAtom::between(y, z),
            CycbAtom::between(x, z),
        )
    }

    pub fn is_realizable(self) -> bool {
        realizable_atoms().contains(&self)
    }

    /// Position among the realizable atoms, if realizable.
    pub fn index(self) -> Option<usize> {
        realizable_atoms().iter().position(|a| *a == self)
    }

    pub fn name(self) -> String {
        [self.0, self.1, self.2].iter().map(|b| b.letter()).collect()
    }
}

impl fmt::Display for CyctAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CyctAtom {
    type Err = String;

    /// Three letters from `e, l, o, r`. Unrealizable triples are accepted here;
    /// callers needing an algebra atom check [`CyctAtom::is_realizable`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<_> = s.chars().map(CycbAtom::from_letter).collect();
        match letters.as_slice() {
            [Some(a), Some(b), Some(c)] => Ok(CyctAtom(*a, *b, *c)),
            _ => Err(format!("`{s}` is not a triple of e/l/o/r")),
        }
    }
}

pub fn cyct_holds(t: CyctAtom, x: Turn, y: Turn, z: Turn) -> bool {
    cycb_holds(t.0, x, y) && cycb_holds(t.1, y, z) && cycb_holds(t.2, x, z)
}

/// The triples realized by some placement of three orientations, sorted.
pub fn realizable_atoms() -> &'static [CyctAtom] {
    static ATOMS: OnceLock<Vec<CyctAtom>> = OnceLock::new();
    ATOMS.get_or_init(|| {
        let mut out = Vec::new();
        for a in CycbAtom::ALL {
            for b in CycbAtom::ALL {
                for c in CycbAtom::ALL {
                    let t = CyctAtom(a, b, c);
                    let realized = placements(3).into_iter().any(|p| cyct_holds(t, p[0], p[1], p[2]));
                    if realized {
                        out.push(t);
                    }
                }
            }
        }
        out
    })
}

/// Candidate positions for a new orientation given those already placed:
/// each placed point, each antipode, and the midpoint of every open arc
/// between consecutive such points.
pub fn candidate_positions(placed: &[Turn]) -> Vec<Turn> {
    if placed.is_empty() {
        return vec![Turn::zero()];
    }
    let mut marks: Vec<Turn> = placed
        .iter()
        .flat_map(|p| [normalize(*p), normalize(*p + half_turn())])
        .collect();
    marks.sort();
    marks.dedup();
    let mut out = marks.clone();
    for (k, a) in marks.iter().enumerate() {
        let b = if k + 1 < marks.len() {
            marks[k + 1]
        } else {
            marks[0] + Turn::one()
        };
        out.push(normalize((*a + b) / 2));
    }
    out
}

/// Every qualitatively distinct placement of `n` orientations, first one at 0.
fn placements(n: usize) -> Vec<Vec<Turn>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                candidate_positions(&p).into_iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// A set of realizable CYC_t atoms, one bit per entry of [`realizable_atoms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyctRelation(pub u32);

impl CyctRelation {
    pub const EMPTY: CyctRelation = CyctRelation(0);
    pub const UNIVERSAL: CyctRelation = CyctRelation((1 << 24) - 1);

    /// `None` when the triple is not an atom of the algebra.
    pub fn atom(t: CyctAtom) -> Option<Self> {
        t.index().map(|i| CyctRelation(1 << i))
    }

    pub fn of(atoms: &[CyctAtom]) -> Option<Self> {
        atoms.iter().try_fold(CyctRelation::EMPTY, |acc, t| {
            CyctRelation::atom(*t).map(|r| CyctRelation(acc.0 | r.0))
        })
    }

    pub fn contains(self, t: CyctAtom) -> bool {
        t.index().is_some_and(|i| self.0 & (1 << i) != 0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: Self) -> Self {
        CyctRelation(self.0 & other.0)
    }

    pub fn atoms(self) -> impl Iterator<Item = CyctAtom> {
        realizable_atoms()
            .iter()
            .copied()
            .filter(move |a| self.contains(*a))
    }
}

impl fmt::Display for CyctRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.atoms().map(CyctAtom::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// A ternary network over orientation variables `0..n`. Repeated constraints
/// on the same ordered triple are conjoined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyctNetwork {
    n: usize,
    constraints: BTreeMap<(usize, usize, usize), CyctRelation>,
}

impl CyctNetwork {
    pub fn new(n: usize) -> Self {
        CyctNetwork {
            n,
            constraints: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn constrain(&mut self, x: usize, y: usize, z: usize, r: CyctRelation) {
        let slot = self
            .constraints
            .entry((x, y, z))
            .or_insert(CyctRelation::UNIVERSAL);
        *slot = slot.intersect(r);
    }

    pub fn constraints(&self) -> impl Iterator<Item = ((usize, usize, usize), CyctRelation)> + '_ {
        self.constraints.iter().map(|(k, v)| (*k, *v))
    }

    pub fn satisfied_by(&self, placement: &[Turn]) -> bool {
        self.constraints.iter().all(|(&(x, y, z), r)| {
            r.contains(CyctAtom::of_angles(placement[x], placement[y], placement[z]))
        })
    }

    /// Decides satisfiability by qualitative placement search and returns a
    /// satisfying placement when one exists.
    pub fn consistent(&self) -> Option<Vec<Turn>> {
        if self.constraints.values().any(|r| r.is_empty()) {
            return None;
        }
        // Constraints become checkable once their last variable is placed.
        let mut due: Vec<Vec<(usize, usize, usize, CyctRelation)>> = vec![Vec::new(); self.n];
        let mut constrained = vec![false; self.n];
        for (&(x, y, z), r) in &self.constraints {
            due[x.max(y).max(z)].push((x, y, z, *r));
            constrained[x] = true;
            constrained[y] = true;
            constrained[z] = true;
        }
        let mut placement = Vec::with_capacity(self.n);
        if self.place(&due, &constrained, &mut placement) {
            Some(placement)
        } else {
            None
        }
    }

    fn place(
        &self,
        due: &[Vec<(usize, usize, usize, CyctRelation)>],
        constrained: &[bool],
        placement: &mut Vec<Turn>,
    ) -> bool {
        let k = placement.len();
        if k == self.n {
            return true;
        }
        let candidates = if constrained[k] {
            // Unconstrained variables do not split the circle further.
            let anchors: Vec<Turn> = placement
                .iter()
                .enumerate()
                .filter(|(i, _)| constrained[*i])
                .map(|(_, t)| *t)
                .collect();
            candidate_positions(&anchors)
        } else {
            vec![Turn::zero()]
        };
        for c in candidates {
            placement.push(c);
            let ok = due[k].iter().all(|&(x, y, z, r)| {
                r.contains(CyctAtom::of_angles(placement[x], placement[y], placement[z]))
            });
            if ok && self.place(due, constrained, placement) {
                return true;
            }
            placement.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CycbAtom::*;

    fn deg(d: i64) -> Turn {
        Turn::new(d, 360)
    }

    fn atom(s: &str) -> CyctAtom {
        s.parse().unwrap()
    }

    #[test]
    fn cycb_examples() {
        assert!(cycb_holds(E, deg(0), deg(0)));
        assert!(cycb_holds(O, deg(0), deg(180)));
        assert!(!cycb_holds(L, deg(0), deg(270)));
        assert!(cycb_holds(R, deg(0), deg(270)));
        assert!(cycb_holds(L, deg(350), deg(10)));
    }

    #[test]
    fn cyct_examples() {
        assert!(cyct_holds(atom("eee"), deg(0), deg(0), deg(0)));
        assert!(cyct_holds(atom("lll"), deg(0), deg(120), deg(150)));
        assert!(!cyct_holds(atom("lll"), deg(0), deg(120), deg(240)));
        assert!(cyct_holds(atom("rrr"), deg(0), deg(240), deg(210)));
    }

    #[test]
    fn twenty_four_atoms() {
        let atoms = realizable_atoms();
        assert_eq!(atoms.len(), 24);
        assert!(atoms.contains(&atom("eee")));
        assert!(!atoms.contains(&atom("eel")));
        assert!("rse".parse::<CyctAtom>().is_err());
    }

    #[test]
    fn realizable_atoms_match_dense_grid() {
        // Oracle: every triple of multiples of 1/24 turn.
        let mut seen = std::collections::BTreeSet::new();
        for x in 0..24 {
            for y in 0..24 {
                for z in 0..24 {
                    seen.insert(CyctAtom::of_angles(Turn::new(x, 24), Turn::new(y, 24), Turn::new(z, 24)));
                }
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), realizable_atoms());
    }

    #[test]
    fn branch_count_bound() {
        let placed = vec![deg(0), deg(30), deg(100)];
        assert!(candidate_positions(&placed).len() <= 4 * placed.len());
        assert_eq!(candidate_positions(&[deg(0)]).len(), 4);
    }

    #[test]
    fn consistency_examples() {
        let lll = CyctRelation::atom(atom("lll")).unwrap();
        let mut net = CyctNetwork::new(3);
        net.constrain(0, 1, 2, lll);
        let p = net.consistent().expect("lll is satisfiable");
        assert!(cyct_holds(atom("lll"), p[0], p[1], p[2]));

        net.constrain(0, 1, 2, CyctRelation::atom(atom("eee")).unwrap());
        assert!(net.consistent().is_none());

        let mut net = CyctNetwork::new(3);
        net.constrain(0, 1, 2, CyctRelation::atom(atom("rrr")).unwrap());
        let p = net.consistent().expect("rrr is satisfiable");
        assert!(net.satisfied_by(&p));
    }

    #[test]
    fn chained_triples() {
        // x<y<z<w anticlockwise within a half turn, then contradict via (x,w,y).
        let lll = CyctRelation::atom(atom("lll")).unwrap();
        let mut net = CyctNetwork::new(4);
        net.constrain(0, 1, 2, lll);
        net.constrain(1, 2, 3, lll);
        net.constrain(0, 2, 3, lll);
        let p = net.consistent().expect("satisfiable");
        assert!(net.satisfied_by(&p));
        // y lies between x and w, so (x, w, y) cannot be lll.
        net.constrain(0, 3, 1, lll);
        assert!(net.consistent().is_none());
    }
}
