//! Brute-force satisfiability for small TBoxes.
//!
//! Every disjunct choice is combined with every assignment of a partition
//! relation to every pair whose relation can influence the checks (pairs
//! with complementary literals or a shared feature); other pairs are left to
//! the temporal network. A full assignment fixes exactly which intervals
//! intersect, so literal and feature homogeneity are checked directly.

use spatemp::allen::{partition_role, PartitionRelation};
use spatemp::domain::{ConcreteDomain, QualNetwork};
use spatemp::stp::StpNetwork;
use spatemp::tbox::{normalize, Conjunction, TBox};

struct Case<'a> {
    domain: ConcreteDomain,
    disjuncts: Vec<&'a Conjunction>,
}

impl Case<'_> {
    fn features(&self, i: usize) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for p in &self.disjuncts[i].predicates {
            for g in &p.features {
                if !out.contains(&g.as_str()) {
                    out.push(g);
                }
            }
        }
        out
    }

    fn literal_clash(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.disjuncts[i].literals, &self.disjuncts[j].literals);
        a.iter().any(|l| b.iter().any(|m| m.name == l.name && m.positive != l.positive))
    }

    fn shares_feature(&self, i: usize, j: usize) -> bool {
        let fj = self.features(j);
        self.features(i).iter().any(|g| fj.contains(g))
    }

    /// Literal and spatial checks given the set of intersecting pairs.
    fn homogeneous(&self, intersecting: &[(usize, usize)]) -> bool {
        let n = self.disjuncts.len();
        if (0..n).any(|i| self.literal_clash(i, i)) {
            return false;
        }
        if intersecting.iter().any(|&(i, j)| self.literal_clash(i, j)) {
            return false;
        }
        let mut vars: Vec<(usize, &str)> = Vec::new();
        for i in 0..n {
            for g in self.features(i) {
                vars.push((i, g));
            }
        }
        let mut label: Vec<usize> = (0..vars.len()).collect();
        // Relabel to the smallest reachable index until stable.
        loop {
            let mut changed = false;
            for &(i, j) in intersecting {
                for a in 0..vars.len() {
                    for b in 0..vars.len() {
                        let (va, vb) = (vars[a], vars[b]);
                        if va.0 == i && vb.0 == j && va.1 == vb.1 && label[a] != label[b] {
                            let m = label[a].min(label[b]);
                            label[a] = m;
                            label[b] = m;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut net = QualNetwork::new(self.domain.arity(), vars.len());
        for (i, d) in self.disjuncts.iter().enumerate() {
            for p in &d.predicates {
                let args = p
                    .features
                    .iter()
                    .map(|g| label[vars.iter().position(|v| *v == (i, g.as_str())).unwrap()])
                    .collect();
                net.add(args, p.predicate);
            }
        }
        self.domain.consistent(&net).is_some()
    }
}

fn assign(
    case: &Case,
    net: &StpNetwork,
    pairs: &[(usize, usize)],
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    let closure = net.closure();
    if !closure.consistent {
        return false;
    }
    let Some((&(i, j), rest)) = pairs.split_first() else {
        return case.homogeneous(chosen);
    };
    for rel in PartitionRelation::ALL {
        let mut next = closure.minimal.clone();
        next.add_role_by_id(i, j, &partition_role(rel));
        let intersects = rel == PartitionRelation::Intersects;
        if intersects {
            chosen.push((i, j));
        }
        let ok = assign(case, &next, rest, chosen);
        if intersects {
            chosen.pop();
        }
        if ok {
            return true;
        }
    }
    false
}

pub fn brute_force_sat(t: &TBox) -> bool {
    let axioms = normalize(t);
    if axioms.iter().any(|a| a.disjuncts.is_empty()) {
        return false;
    }
    let n = axioms.len();
    let mut choice = vec![0usize; n];
    loop {
        let case = Case {
            domain: t.domain,
            disjuncts: axioms.iter().zip(&choice).map(|(a, &c)| &a.disjuncts[c]).collect(),
        };
        let mut net = StpNetwork::new();
        for a in &axioms {
            net.add_interval(&a.lhs).unwrap();
        }
        for (i, d) in case.disjuncts.iter().enumerate() {
            for (role, target) in &d.roles {
                net.add_role(&axioms[i].lhs, target, role).unwrap();
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| case.literal_clash(i, j) || case.shares_feature(i, j))
            .collect();
        if assign(&case, &net, &pairs, &mut Vec::new()) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == n {
                return false;
            }
            choice[k] += 1;
            if choice[k] < axioms[k].disjuncts.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
