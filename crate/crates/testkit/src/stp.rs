//! Simple temporal networks with a known solution.

use num::{BigInt, One};
use rand::Rng;
use spatemp::allen::EndpointRole;
use spatemp::bounds::{Bound, ConvexSet, ExtRational, Rational};
use spatemp::stp::StpNetwork;

pub struct Planted {
    pub net: StpNetwork,
    /// One value per network variable, in [`StpNetwork::vars`] order.
    pub solution: Vec<Rational>,
}

fn rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let den = rng.gen_range(1..=4i64);
    Rational::new(BigInt::from(rng.gen_range(lo * den..hi * den)), BigInt::from(den))
}

/// A random convex set containing `d`.
fn set_around(rng: &mut impl Rng, d: &Rational) -> ConvexSet {
    let mut end = |below: bool| -> Bound {
        match rng.gen_range(0..4) {
            0 => {
                if below {
                    Bound::neg_inf()
                } else {
                    Bound::pos_inf()
                }
            }
            1 => Bound::new(ExtRational::Finite(d.clone()), false),
            _ => {
                let gap = rational(rng, 0, 5) + Rational::new(BigInt::one(), BigInt::from(8));
                let v = if below { d - gap } else { d + gap };
                Bound::new(ExtRational::Finite(v), rng.gen_bool(0.5))
            }
        }
    };
    let lo = end(true);
    let hi = end(false);
    ConvexSet::new(lo, hi)
}

/// Up to `max_intervals` intervals with random rational endpoints; random
/// pairs get a role whose four components all contain the planted differences.
pub fn planted_network(rng: &mut impl Rng, max_intervals: usize) -> Planted {
    let n = rng.gen_range(1..=max_intervals);
    let mut net = StpNetwork::new();
    let mut solution = Vec::with_capacity(2 * n);
    for i in 0..n {
        net.add_interval(&format!("I{i}")).expect("fresh names");
        let b = rational(rng, 0, 40);
        let e = &b + rational(rng, 1, 10);
        solution.push(b);
        solution.push(e);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !rng.gen_bool(0.4) {
                continue;
            }
            let (ib, ie, jb, je) = (&solution[2 * i], &solution[2 * i + 1], &solution[2 * j], &solution[2 * j + 1]);
            let role = EndpointRole::new(
                set_around(rng, &(jb - ib)),
                set_around(rng, &(je - ib)),
                set_around(rng, &(jb - ie)),
                set_around(rng, &(je - ie)),
            );
            net.add_role_by_id(i, j, &role);
        }
    }
    Planted { net, solution }
}

/// Adds a cycle whose forward edges fix exact differences and whose closing
/// edge excludes, by strictness alone, the difference they force.
pub fn inject_strict_zero_cycle(rng: &mut impl Rng, p: &mut Planted) {
    let vars = p.net.vars();
    let len = rng.gen_range(2..=4.min(vars.len()));
    let mut picked: Vec<usize> = Vec::new();
    while picked.len() < len {
        let v = rng.gen_range(0..vars.len());
        if !picked.contains(&v) {
            picked.push(v);
        }
    }
    for w in picked.windows(2) {
        let d = &p.solution[w[1]] - &p.solution[w[0]];
        p.net.constrain(vars[w[0]], vars[w[1]], &ConvexSet::point(d));
    }
    let (first, last) = (picked[0], *picked.last().unwrap());
    let d = &p.solution[first] - &p.solution[last];
    let closing = if rng.gen_bool(0.5) {
        ConvexSet::new(Bound::new(ExtRational::Finite(d), true), Bound::pos_inf())
    } else {
        ConvexSet::new(Bound::neg_inf(), Bound::new(ExtRational::Finite(d), true))
    };
    p.net.constrain(vars[last], vars[first], &closing);
}

/// Whether `values` satisfies every edge, recomputed from the edge list.
pub fn satisfies(net: &StpNetwork, values: &[Rational]) -> bool {
    let vars = net.vars();
    values.len() == vars.len()
        && vars.iter().enumerate().all(|(u, &x)| {
            vars.iter()
                .enumerate()
                .all(|(v, &y)| net.edge(x, y).contains(&(&values[v] - &values[u])))
        })
}
