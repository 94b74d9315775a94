//! RCC8 instances and a disc-geometry oracle.
//!
//! Closed discs with integer centres and radii realize all eight relations,
//! and their relation is computed exactly from squared distances.

use rand::Rng;
use spatemp::rcc8::{Rcc8Atom, Rcc8Network, Rcc8Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disc {
    pub x: i64,
    pub y: i64,
    pub r: i64,
}

pub fn disc_relation(a: Disc, b: Disc) -> Rcc8Atom {
    let d2 = (a.x - b.x).pow(2) + (a.y - b.y).pow(2);
    let sum2 = (a.r + b.r).pow(2);
    let diff2 = (a.r - b.r).pow(2);
    if d2 > sum2 {
        Rcc8Atom::DC
    } else if d2 == sum2 {
        Rcc8Atom::EC
    } else if d2 == 0 && a.r == b.r {
        Rcc8Atom::EQ
    } else if d2 <= diff2 {
        let tangent = d2 == diff2;
        match (a.r < b.r, tangent) {
            (true, true) => Rcc8Atom::TPP,
            (true, false) => Rcc8Atom::NTPP,
            (false, true) => Rcc8Atom::TPPi,
            (false, false) => Rcc8Atom::NTPPi,
        }
    } else {
        Rcc8Atom::PO
    }
}

/// Small integer discs, so tangencies and equalities are common.
pub fn random_disc(rng: &mut impl Rng) -> Disc {
    Disc {
        x: rng.gen_range(-4..=4),
        y: rng.gen_range(-3..=3),
        r: rng.gen_range(1..=4),
    }
}

/// The atomic network realized by `discs`.
pub fn disc_network(discs: &[Disc]) -> Rcc8Network {
    let mut net = Rcc8Network::new(discs.len());
    for (i, a) in discs.iter().enumerate() {
        for (j, b) in discs.iter().enumerate().skip(i + 1) {
            net.constrain(i, j, Rcc8Relation::atom(disc_relation(*a, *b)));
        }
    }
    net
}

/// A random atom on every pair `i < j`; most such networks are inconsistent.
pub fn random_atomic_network(rng: &mut impl Rng, n: usize) -> Rcc8Network {
    let mut net = Rcc8Network::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let atom = Rcc8Atom::ALL[rng.gen_range(0..Rcc8Atom::ALL.len())];
            net.constrain(i, j, Rcc8Relation::atom(atom));
        }
    }
    net
}
