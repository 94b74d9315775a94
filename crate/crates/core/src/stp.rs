//! Simple temporal networks over interval endpoints.
//!
//! Every edge `(u, v)` is a convex set constraining `value(v) - value(u)`.
//! Closure is all-pairs shortest paths in interval form, with strictness
//! carried on each bound, so the tightened network is minimal.

use std::collections::HashMap;
use std::fmt;

use num::Zero;

use crate::allen::{partition_role, EndpointRole, PartitionRelation};
use crate::bounds::{ConvexSet, Rational};
use crate::error::StpError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Begin,
    End,
}

/// A variable of the network: one endpoint of one interval, or the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndpointVar {
    Interval(usize, Endpoint),
    Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StpNetwork {
    intervals: Vec<String>,
    index: HashMap<String, usize>,
    has_origin: bool,
    /// Row-major `n * n` edge matrix, `n = 2 * intervals (+ 1 origin)`.
    edges: Vec<ConvexSet>,
}

/// Result of [`StpNetwork::closure`].
#[derive(Clone, Debug)]
pub struct Closure {
    pub consistent: bool,
    pub minimal: StpNetwork,
    /// The first edge found empty, when inconsistent.
    pub conflict: Option<(EndpointVar, EndpointVar)>,
}

impl Default for StpNetwork {
    fn default() -> Self {
        Self::new()
    }
}

impl StpNetwork {
    pub fn new() -> Self {
        StpNetwork {
            intervals: Vec::new(),
            index: HashMap::new(),
            has_origin: false,
            edges: Vec::new(),
        }
    }

    /// A network with a time-zero variable for unary constraints.
    pub fn with_origin() -> Self {
        let mut net = StpNetwork::new();
        net.has_origin = true;
        net.edges = vec![ConvexSet::zero()];
        net
    }

    pub fn var_count(&self) -> usize {
        2 * self.intervals.len() + usize::from(self.has_origin)
    }

    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval_names(&self) -> &[String] {
        &self.intervals
    }

    pub fn interval_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vars(&self) -> Vec<EndpointVar> {
        (0..self.var_count()).map(|k| self.var_of(k)).collect()
    }

    fn slot(&self, var: EndpointVar) -> usize {
        match var {
            EndpointVar::Interval(i, Endpoint::Begin) => 2 * i,
            EndpointVar::Interval(i, Endpoint::End) => 2 * i + 1,
            EndpointVar::Origin => 2 * self.intervals.len(),
        }
    }

    fn var_of(&self, slot: usize) -> EndpointVar {
        if self.has_origin && slot == 2 * self.intervals.len() {
            EndpointVar::Origin
        } else if slot.is_multiple_of(2) {
            EndpointVar::Interval(slot / 2, Endpoint::Begin)
        } else {
            EndpointVar::Interval(slot / 2, Endpoint::End)
        }
    }

    pub fn var_name(&self, var: EndpointVar) -> String {
        match var {
            EndpointVar::Interval(i, Endpoint::Begin) => format!("{}_b", self.intervals[i]),
            EndpointVar::Interval(i, Endpoint::End) => format!("{}_e", self.intervals[i]),
            EndpointVar::Origin => "origin".to_string(),
        }
    }

    /// Constraint on `value(to) - value(from)`.
    pub fn edge(&self, from: EndpointVar, to: EndpointVar) -> &ConvexSet {
        let n = self.var_count();
        &self.edges[self.slot(from) * n + self.slot(to)]
    }

    /// Intersects the edge `(from, to)` with `set`, keeping the reverse edge as its negation.
    pub fn constrain(&mut self, from: EndpointVar, to: EndpointVar, set: &ConvexSet) {
        let n = self.var_count();
        let (u, v) = (self.slot(from), self.slot(to));
        let fwd = self.edges[u * n + v].intersect(set);
        self.edges[v * n + u] = fwd.negate();
        self.edges[u * n + v] = fwd;
    }

    /// Adds `I_b`, `I_e` and the durativity edge `I_e - I_b > 0`.
    pub fn add_interval(&mut self, name: &str) -> Result<usize, StpError> {
        if self.index.contains_key(name) {
            return Err(StpError::DuplicateInterval(name.to_string()));
        }
        let old_n = self.var_count();
        let id = self.intervals.len();
        self.intervals.push(name.to_string());
        self.index.insert(name.to_string(), id);
        let n = self.var_count();

        // Re-layout: interval slots precede the origin slot.
        let old_slot = |k: usize| -> usize {
            if self.has_origin && k == n - 1 {
                old_n - 1
            } else {
                k
            }
        };
        let is_new = |k: usize| k == 2 * id || k == 2 * id + 1;
        let mut edges = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                edges.push(if u == v {
                    ConvexSet::zero()
                } else if is_new(u) || is_new(v) {
                    ConvexSet::universal()
                } else {
                    self.edges[old_slot(u) * old_n + old_slot(v)].clone()
                });
            }
        }
        self.edges = edges;
        self.constrain(
            EndpointVar::Interval(id, Endpoint::Begin),
            EndpointVar::Interval(id, Endpoint::End),
            &ConvexSet::positive(),
        );
        Ok(id)
    }

    fn require(&self, name: &str) -> Result<usize, StpError> {
        self.interval_id(name)
            .ok_or_else(|| StpError::UnknownInterval(name.to_string()))
    }

    /// Imposes `role(I, J)`: each `J_y - I_x` is intersected with the matching component.
    pub fn add_role(&mut self, i: &str, j: &str, role: &EndpointRole) -> Result<(), StpError> {
        let (i, j) = (self.require(i)?, self.require(j)?);
        self.add_role_by_id(i, j, role);
        Ok(())
    }

    pub fn add_role_by_id(&mut self, i: usize, j: usize, role: &EndpointRole) {
        use Endpoint::{Begin as B, End as E};
        let v = EndpointVar::Interval;
        self.constrain(v(i, B), v(j, B), &role.rbb);
        self.constrain(v(i, B), v(j, E), &role.rbe);
        self.constrain(v(i, E), v(j, B), &role.reb);
        self.constrain(v(i, E), v(j, E), &role.ree);
    }

    /// Unary constraint `value(var) in set`, relative to the origin.
    pub fn add_unary(&mut self, var: EndpointVar, set: &ConvexSet) -> Result<(), StpError> {
        if !self.has_origin {
            return Err(StpError::NoOrigin);
        }
        self.constrain(EndpointVar::Origin, var, set);
        Ok(())
    }

    /// The four endpoint-difference constraints currently recorded from `I` to `J`.
    pub fn role_between(&self, i: usize, j: usize) -> EndpointRole {
        use Endpoint::{Begin as B, End as E};
        let v = EndpointVar::Interval;
        EndpointRole::new(
            self.edge(v(i, B), v(j, B)).clone(),
            self.edge(v(i, B), v(j, E)).clone(),
            self.edge(v(i, E), v(j, B)).clone(),
            self.edge(v(i, E), v(j, E)).clone(),
        )
    }

    /// Path-consistency closure. A self-loop that loses `0` (including a
    /// zero-length cycle through a strict edge) makes the network inconsistent.
    pub fn closure(&self) -> Closure {
        let n = self.var_count();
        let mut e = self.edges.clone();
        let mut conflict = None;
        if let Some(k) = e.iter().position(ConvexSet::is_empty) {
            conflict = Some((k / n.max(1), k % n.max(1)));
        }
        'outer: for k in 0..n {
            if conflict.is_some() {
                break;
            }
            for i in 0..n {
                let ik = &e[i * n + k];
                if i == k || ik.is_universal() {
                    continue;
                }
                let ik = ik.clone();
                for j in 0..n {
                    if j == k {
                        continue;
                    }
                    let kj = &e[k * n + j];
                    if kj.is_universal() {
                        continue;
                    }
                    let through = ik.sum(kj);
                    let cur = &e[i * n + j];
                    if !cur.subset_of(&through) {
                        let tightened = cur.intersect(&through);
                        if tightened.is_empty() {
                            e[i * n + j] = tightened;
                            conflict = Some((i, j));
                            break 'outer;
                        }
                        e[i * n + j] = tightened;
                    }
                }
            }
        }
        let minimal = StpNetwork {
            edges: e,
            ..self.clone()
        };
        Closure {
            consistent: conflict.is_none(),
            conflict: conflict.map(|(u, v)| (minimal.var_of(u), minimal.var_of(v))),
            minimal,
        }
    }

    /// Assigns variables one at a time, each to an interior point of the
    /// window left by the variables already fixed. The network must be the
    /// consistent output of [`StpNetwork::closure`].
    pub fn extract_solution(&self) -> Vec<Rational> {
        let n = self.var_count();
        let mut values: Vec<Rational> = Vec::with_capacity(n);
        // The origin, when present, is pinned to zero first.
        let order: Vec<usize> = if self.has_origin {
            std::iter::once(n - 1).chain(0..n - 1).collect()
        } else {
            (0..n).collect()
        };
        let mut assigned: Vec<Option<Rational>> = vec![None; n];
        let mut latest: Option<Rational> = None;
        for &v in &order {
            let mut window = ConvexSet::universal();
            for (u, val) in assigned.iter().enumerate() {
                if let Some(val) = val {
                    window = window.intersect(&ConvexSet::point(val.clone()).sum(&self.edges[u * n + v]));
                }
            }
            let fallback = latest
                .as_ref()
                .map(|x| x + Rational::from_integer(1.into()))
                .unwrap_or_else(Rational::zero);
            let x = window
                .interior_point(&fallback)
                .expect("extract_solution requires a consistent minimal network");
            latest = Some(match latest {
                Some(l) if l > x => l,
                _ => x.clone(),
            });
            assigned[v] = Some(x);
        }
        values.extend(assigned.into_iter().map(|x| x.expect("all assigned")));
        values
    }

    /// `(begin, end)` of every interval under a solution from [`StpNetwork::extract_solution`].
    pub fn interval_values(&self, solution: &[Rational]) -> Vec<(Rational, Rational)> {
        (0..self.intervals.len())
            .map(|i| (solution[2 * i].clone(), solution[2 * i + 1].clone()))
            .collect()
    }

    /// Whether `solution` satisfies every edge of this network.
    pub fn satisfied_by(&self, solution: &[Rational]) -> bool {
        let n = self.var_count();
        (0..n).all(|u| (0..n).all(|v| self.edges[u * n + v].contains(&(&solution[v] - &solution[u]))))
    }

    /// Partition relations still compatible with the edges between `I` and `J`.
    pub fn classify_pair(&self, i: usize, j: usize) -> Vec<PartitionRelation> {
        let current = self.role_between(i, j);
        PartitionRelation::ALL
            .into_iter()
            .filter(|p| !current.intersect(&partition_role(*p)).has_empty_component())
            .collect()
    }
}

impl fmt::Display for StpNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.var_count();
        for u in 0..n {
            for v in 0..n {
                let e = &self.edges[u * n + v];
                if u < v && !e.is_universal() {
                    writeln!(
                        f,
                        "{} -> {} : {}",
                        self.var_name(self.var_of(u)),
                        self.var_name(self.var_of(v)),
                        e
                    )?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allen::{translate_atom, AllenAtom};
    use Endpoint::{Begin as B, End as E};

    fn set(s: &str) -> ConvexSet {
        s.parse().unwrap()
    }

    fn two(a: AllenAtom) -> StpNetwork {
        let mut net = StpNetwork::new();
        net.add_interval("I").unwrap();
        net.add_interval("J").unwrap();
        net.add_role("I", "J", &translate_atom(a)).unwrap();
        net
    }

    #[test]
    fn add_interval_builds_durative_pair() {
        let mut net = StpNetwork::new();
        net.add_interval("C1").unwrap();
        assert_eq!(net.var_count(), 2);
        let v = EndpointVar::Interval;
        assert_eq!(net.edge(v(0, B), v(0, E)), &ConvexSet::positive());
        assert_eq!(
            net.add_interval("C1"),
            Err(StpError::DuplicateInterval("C1".into()))
        );
        let c = net.closure();
        assert!(c.consistent);
        let sol = c.minimal.extract_solution();
        assert_eq!(sol, vec![Rational::zero(), Rational::from_integer(1.into())]);
    }

    #[test]
    fn well_formed_self_role_is_idempotent() {
        let mut net = StpNetwork::new();
        net.add_interval("I").unwrap();
        let before = net.clone();
        net.add_role("I", "I", &EndpointRole::well_formed()).unwrap();
        assert_eq!(net, before);
    }

    #[test]
    fn meets_forces_equality() {
        let c = two(AllenAtom::Meets).closure();
        assert!(c.consistent);
        let v = EndpointVar::Interval;
        assert_eq!(c.minimal.edge(v(0, E), v(1, B)), &ConvexSet::zero());
        let sol = c.minimal.extract_solution();
        assert_eq!(sol[1], sol[2]);
    }

    #[test]
    fn overlaps_and_after_clash() {
        let mut net = two(AllenAtom::Overlaps);
        net.add_role("I", "J", &translate_atom(AllenAtom::After)).unwrap();
        assert!(!net.closure().consistent);
    }

    #[test]
    fn closure_examples() {
        let mut net = StpNetwork::with_origin();
        net.add_interval("A").unwrap();
        let x = EndpointVar::Interval(0, B);
        let y = EndpointVar::Interval(0, E);
        // X -> Y positive both ways.
        let mut cyc = net.clone();
        cyc.constrain(y, x, &ConvexSet::positive());
        assert!(!cyc.closure().consistent);

        let mut eq = StpNetwork::new();
        eq.add_interval("A").unwrap();
        eq.add_interval("B").unwrap();
        let (ab, ae, bb) = (
            EndpointVar::Interval(0, B),
            EndpointVar::Interval(0, E),
            EndpointVar::Interval(1, B),
        );
        eq.constrain(ae, bb, &ConvexSet::zero());
        let c = eq.closure();
        assert_eq!(c.minimal.edge(bb, ae), &ConvexSet::zero());

        let mut chain = StpNetwork::new();
        chain.add_interval("A").unwrap();
        chain.add_interval("B").unwrap();
        chain.constrain(ab, ae, &set("(1,2]"));
        chain.constrain(ae, bb, &set("[3,4)"));
        let c = chain.closure();
        assert!(c.consistent);
        assert_eq!(c.minimal.edge(ab, bb), &set("(4,6)"));
    }

    #[test]
    fn strict_zero_cycle_is_inconsistent() {
        let mut net = StpNetwork::new();
        net.add_interval("A").unwrap();
        net.add_interval("B").unwrap();
        let (ab, bb) = (EndpointVar::Interval(0, B), EndpointVar::Interval(1, B));
        let (ae, be) = (EndpointVar::Interval(0, E), EndpointVar::Interval(1, E));
        net.constrain(ab, bb, &set("[2,2]"));
        net.constrain(bb, be, &set("[1,1]"));
        net.constrain(ab, ae, &set("[3,3]"));
        assert!(net.closure().consistent);
        // A_e - B_e is forced to 0; demanding it be > 0 closes a strict zero cycle.
        net.constrain(be, ae, &set("(0,+inf)"));
        let c = net.closure();
        assert!(!c.consistent);
        assert!(c.conflict.is_some());
    }

    #[test]
    fn unary_constraints_need_origin() {
        let mut net = StpNetwork::new();
        net.add_interval("A").unwrap();
        let ab = EndpointVar::Interval(0, B);
        assert_eq!(net.add_unary(ab, &set("[5,5]")), Err(StpError::NoOrigin));

        let mut net = StpNetwork::with_origin();
        net.add_interval("A").unwrap();
        net.add_unary(ab, &set("[5,5]")).unwrap();
        net.add_unary(EndpointVar::Interval(0, E), &set("(5,7)")).unwrap();
        let c = net.closure();
        assert!(c.consistent);
        let sol = c.minimal.extract_solution();
        assert_eq!(sol[0], Rational::from_integer(5.into()));
        assert_eq!(sol[2], Rational::zero());
        assert!(net.satisfied_by(&sol));
    }

    #[test]
    fn classification_examples() {
        let c = two(AllenAtom::Overlaps).closure();
        assert_eq!(c.minimal.classify_pair(0, 1), vec![PartitionRelation::Intersects]);
        let c = two(AllenAtom::Meets).closure();
        assert_eq!(c.minimal.classify_pair(0, 1), vec![PartitionRelation::Precedes]);

        let mut free = StpNetwork::new();
        free.add_interval("I").unwrap();
        free.add_interval("J").unwrap();
        let c = free.closure();
        assert_eq!(c.minimal.classify_pair(0, 1), PartitionRelation::ALL.to_vec());
    }

    #[test]
    fn single_atom_networks_classify_to_their_block() {
        for atom in AllenAtom::ALL {
            let c = two(atom).closure();
            assert!(c.consistent, "{atom}");
            assert_eq!(
                c.minimal.classify_pair(0, 1),
                vec![crate::allen::partition_of(atom)],
                "{atom}"
            );
            let sol = c.minimal.extract_solution();
            assert!(two(atom).satisfied_by(&sol));
            let iv = c.minimal.interval_values(&sol);
            assert_eq!(
                AllenAtom::classify(&iv[0].0, &iv[0].1, &iv[1].0, &iv[1].1),
                Some(atom)
            );
        }
    }
}
