//! CYC_t instances and two oracles that evaluate orientations with their own
//! arithmetic: random real angles, and an exhaustive grid of eighth turns.
//!
//! For at most four orientations the grid is complete: the points and their
//! antipodes occupy at most four positions on a half turn, which can be
//! spaced an eighth of a turn apart in any order.

use rand::Rng;
use spatemp::cyct::{realizable_atoms, CyctNetwork, CyctRelation};

/// `b(y, x)` from the anticlockwise difference `y - x` in turns.
fn letter_f64(x: f64, y: f64) -> char {
    let d = (y - x).rem_euclid(1.0);
    if d == 0.0 {
        'e'
    } else if d < 0.5 {
        'l'
    } else if d == 0.5 {
        'o'
    } else {
        'r'
    }
}

/// The same on a grid of `1/den` turns.
fn letter_grid(x: i64, y: i64, den: i64) -> char {
    let d = (y - x).rem_euclid(den);
    if d == 0 {
        'e'
    } else if 2 * d < den {
        'l'
    } else if 2 * d == den {
        'o'
    } else {
        'r'
    }
}

type Compiled = Vec<((usize, usize, usize), Vec<[char; 3]>)>;

fn compile(net: &CyctNetwork) -> Compiled {
    net.constraints()
        .map(|(t, rel)| {
            let allowed = rel
                .atoms()
                .map(|a| {
                    let l: Vec<char> = a.name().chars().collect();
                    [l[0], l[1], l[2]]
                })
                .collect();
            (t, allowed)
        })
        .collect()
}

fn satisfied(net: &Compiled, letter: impl Fn(usize, usize) -> char) -> bool {
    net.iter().all(|&((x, y, z), ref allowed)| {
        let triple = [letter(x, y), letter(y, z), letter(x, z)];
        allowed.contains(&triple)
    })
}

/// Draws `samples` placements uniformly at random; returns the first that
/// satisfies every constraint.
pub fn sample_satisfiable(rng: &mut impl Rng, net: &CyctNetwork, samples: usize) -> Option<Vec<f64>> {
    let compiled = compile(net);
    let mut angles = vec![0.0; net.len()];
    for _ in 0..samples {
        for a in angles.iter_mut() {
            *a = rng.gen::<f64>();
        }
        if satisfied(&compiled, |i, j| letter_f64(angles[i], angles[j])) {
            return Some(angles);
        }
    }
    None
}

/// Exhaustive search over placements on multiples of `1/den` turns.
pub fn grid_satisfiable(net: &CyctNetwork, den: i64) -> Option<Vec<i64>> {
    let compiled = compile(net);
    let n = net.len();
    let mut p = vec![0i64; n];
    loop {
        if satisfied(&compiled, |i, j| letter_grid(p[i], p[j], den)) {
            return Some(p);
        }
        let mut k = 0;
        loop {
            if k == n {
                return None;
            }
            p[k] += 1;
            if p[k] < den {
                break;
            }
            p[k] = 0;
            k += 1;
        }
    }
}

/// Up to `max_constraints` constraints over `n` variables, each on three
/// distinct variables with a random set of at most `max_atoms` atoms.
pub fn random_network(
    rng: &mut impl Rng,
    n: usize,
    max_constraints: usize,
    max_atoms: usize,
) -> CyctNetwork {
    assert!(n >= 3);
    let atoms = realizable_atoms().len();
    let mut net = CyctNetwork::new(n);
    for _ in 0..rng.gen_range(1..=max_constraints) {
        let x = rng.gen_range(0..n);
        let mut y = rng.gen_range(0..n);
        while y == x {
            y = rng.gen_range(0..n);
        }
        let mut z = rng.gen_range(0..n);
        while z == x || z == y {
            z = rng.gen_range(0..n);
        }
        let mut bits = 0u32;
        for _ in 0..rng.gen_range(1..=max_atoms) {
            bits |= 1 << rng.gen_range(0..atoms);
        }
        net.constrain(x, y, z, CyctRelation(bits));
    }
    net
}
