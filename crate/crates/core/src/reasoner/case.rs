//! One conjunctive case: a fixed disjunct per axiom plus partition relations
//! fixed on some pairs of intervals.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::allen::{partition_of, partition_role, AllenAtom, PartitionRelation};
use crate::domain::{ConcreteDomain, QualNetwork};
use crate::stp::{EndpointVar, StpNetwork};
use crate::tbox::{normalize, Literal, NormalizedAxiom, PredicateAtom, TBox};

use super::witness::{
    FeatureVar, PairPartition, ScenarioRelation, Span, SpatialVarClass, Witness, WitnessScenario,
};

pub type Pair = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Temporal,
    Propositional,
    Spatial,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Temporal => "temporal",
            Stage::Propositional => "propositional",
            Stage::Spatial => "spatial",
        })
    }
}

/// Why a case failed: the stage, the concepts to blame, and a one-line message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub stage: Stage,
    pub culprit: Vec<String>,
    pub message: String,
}

/// What is known about one interval before homogeneity is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalState {
    pub concept: String,
    pub literals: BTreeSet<Literal>,
    pub spatial: Vec<PredicateAtom>,
}

impl IntervalState {
    /// Features in order of first use.
    pub fn features(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for p in &self.spatial {
            for g in &p.features {
                if !out.contains(&g.as_str()) {
                    out.push(g);
                }
            }
        }
        out
    }
}

pub(crate) fn temporal_network(
    axioms: &[NormalizedAxiom],
    choice: &[usize],
    partitions: &BTreeMap<Pair, PartitionRelation>,
) -> StpNetwork {
    let mut net = StpNetwork::new();
    for a in axioms {
        net.add_interval(&a.lhs).expect("axiom names are unique");
    }
    for (i, a) in axioms.iter().enumerate() {
        for (role, target) in &a.disjuncts[choice[i]].roles {
            let j = net.interval_id(target).expect("role targets are defined");
            net.add_role_by_id(i, j, role);
        }
    }
    for (&(i, j), &p) in partitions {
        net.add_role_by_id(i, j, &partition_role(p));
    }
    net
}

/// One interval per defined concept with its durativity edge, plus every role
/// of the chosen disjuncts. `choice[k]` indexes the normal form of axiom `k`.
pub fn build_temporal_csp(t: &TBox, choice: &[usize]) -> StpNetwork {
    temporal_network(&normalize(t), choice, &BTreeMap::new())
}

/// Pairs `i < j` that must intersect, and pairs that may but need not.
pub fn intersects_graph(minimal: &StpNetwork) -> (Vec<Pair>, Vec<Pair>) {
    let n = minimal.interval_count();
    let (mut forced, mut possible) = (Vec::new(), Vec::new());
    for i in 0..n {
        for j in i + 1..n {
            let options = minimal.classify_pair(i, j);
            if options == [PartitionRelation::Intersects] {
                forced.push((i, j));
            } else if options.contains(&PartitionRelation::Intersects) {
                possible.push((i, j));
            }
        }
    }
    (forced, possible)
}

/// Interval states after homogeneity, the feature classes, and the merged
/// spatial network whose variables are the classes.
#[derive(Clone, Debug)]
pub struct Homogeneity {
    pub states: Vec<IntervalState>,
    pub classes: Vec<SpatialVarClass>,
    /// `(interval, feature)` to class index.
    pub class_of: HashMap<(usize, String), usize>,
    pub network: QualNetwork,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

/// `intersecting` lists pairs whose intervals share interior points;
/// `subintervals` lists `(i, j)` with interval `i` contained in interval `j`.
/// Literals flow down from `j` to `i`; a feature used at both ends of an
/// intersecting pair takes one value, transitively.
pub fn propagate_homogeneity(
    domain: ConcreteDomain,
    states: &[IntervalState],
    intersecting: &[Pair],
    subintervals: &[Pair],
) -> Homogeneity {
    let mut out: Vec<IntervalState> = states.to_vec();
    for &(i, j) in subintervals {
        let inherited = states[j].literals.clone();
        out[i].literals.extend(inherited);
    }

    let mut vars: Vec<(usize, String)> = Vec::new();
    let mut id: HashMap<(usize, String), usize> = HashMap::new();
    for (i, s) in states.iter().enumerate() {
        for g in s.features() {
            id.insert((i, g.to_string()), vars.len());
            vars.push((i, g.to_string()));
        }
    }
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    for &(i, j) in intersecting {
        for g in states[i].features() {
            if let (Some(&a), Some(&b)) = (id.get(&(i, g.to_string())), id.get(&(j, g.to_string()))) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }

    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<SpatialVarClass> = Vec::new();
    let mut class_of = HashMap::new();
    for (v, (i, g)) in vars.iter().enumerate() {
        let root = find(&mut parent, v);
        let member = FeatureVar {
            concept: states[*i].concept.clone(),
            feature: g.clone(),
        };
        let k = *class_index.entry(root).or_insert_with(|| {
            classes.push(SpatialVarClass {
                representative: member.clone(),
                members: Vec::new(),
            });
            classes.len() - 1
        });
        classes[k].members.push(member);
        class_of.insert((*i, g.clone()), k);
    }

    let mut network = QualNetwork::new(domain.arity(), classes.len());
    for (i, s) in states.iter().enumerate() {
        for p in &s.spatial {
            let args = p.features.iter().map(|g| class_of[&(i, g.clone())]).collect();
            network.add(args, p.predicate);
        }
    }
    Homogeneity {
        states: out,
        classes,
        class_of,
        network,
    }
}

/// Result of checking a case. On failure, `branch` names an undecided pair
/// whose partition relation could still change the outcome, with the
/// relations the temporal network allows for it.
#[derive(Clone, Debug)]
pub(crate) struct CaseResult {
    pub outcome: Result<Witness, Conflict>,
    pub branch: Option<(Pair, Vec<PartitionRelation>)>,
}

pub(crate) struct Context<'a> {
    pub domain: ConcreteDomain,
    pub axioms: &'a [NormalizedAxiom],
}

fn pair_names(ctx: &Context, (i, j): Pair) -> Vec<String> {
    vec![ctx.axioms[i].lhs.clone(), ctx.axioms[j].lhs.clone()]
}

fn local_network(domain: ConcreteDomain, states: &[&IntervalState], merge: bool) -> QualNetwork {
    let mut vars: Vec<(usize, &str)> = Vec::new();
    let mut constraints = Vec::new();
    for (k, s) in states.iter().enumerate() {
        for p in &s.spatial {
            let mut args = Vec::with_capacity(p.features.len());
            for g in &p.features {
                let key = (if merge { 0 } else { k }, g.as_str());
                let x = vars.iter().position(|v| *v == key).unwrap_or_else(|| {
                    vars.push(key);
                    vars.len() - 1
                });
                args.push(x);
            }
            constraints.push((args, p.predicate));
        }
    }
    let mut net = QualNetwork::new(domain.arity(), vars.len());
    for (args, set) in constraints {
        net.add(args, set);
    }
    net
}

pub(crate) fn check_case(
    ctx: &Context,
    choice: &[usize],
    partitions: &BTreeMap<Pair, PartitionRelation>,
) -> CaseResult {
    let fail = |stage, culprit, message| CaseResult {
        outcome: Err(Conflict {
            stage,
            culprit,
            message,
        }),
        branch: None,
    };
    let n = ctx.axioms.len();
    let names: Vec<&str> = ctx.axioms.iter().map(|a| a.lhs.as_str()).collect();

    let closure = temporal_network(ctx.axioms, choice, partitions).closure();
    if !closure.consistent {
        let mut culprit: Vec<String> = Vec::new();
        if let Some((u, v)) = closure.conflict {
            for var in [u, v] {
                if let EndpointVar::Interval(i, _) = var {
                    if !culprit.contains(&names[i].to_string()) {
                        culprit.push(names[i].to_string());
                    }
                }
            }
        }
        let message = match culprit.as_slice() {
            [a] => format!("temporal conflict at {a}"),
            [a, b] => format!("temporal conflict between {a} and {b}"),
            _ => "temporal network is inconsistent".to_string(),
        };
        return fail(Stage::Temporal, culprit, message);
    }
    let minimal = closure.minimal;
    let solution = minimal.extract_solution();
    let spans: Vec<Span> = minimal
        .interval_values(&solution)
        .into_iter()
        .map(|(begin, end)| Span { begin, end })
        .collect();

    let options: HashMap<Pair, Vec<PartitionRelation>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|p| (p, minimal.classify_pair(p.0, p.1)))
        .collect();
    let settled = |p: Pair| {
        partitions.contains_key(&p) || options[&p] == [PartitionRelation::Intersects]
    };

    let mut intersecting = Vec::new();
    let mut subintervals = Vec::new();
    let mut realized = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&spans[i], &spans[j]);
            let atom = AllenAtom::classify(&a.begin, &a.end, &b.begin, &b.end)
                .expect("extracted intervals are durative");
            let rel = partition_of(atom);
            if rel == PartitionRelation::Intersects {
                intersecting.push((i, j));
            }
            if b.begin <= a.begin && a.end <= b.end {
                subintervals.push((i, j));
            }
            if a.begin <= b.begin && b.end <= a.end {
                subintervals.push((j, i));
            }
            realized.push(PairPartition {
                first: names[i].to_string(),
                second: names[j].to_string(),
                relation: rel,
            });
        }
    }

    let states: Vec<IntervalState> = ctx
        .axioms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let d = &a.disjuncts[choice[i]];
            IntervalState {
                concept: a.lhs.clone(),
                literals: d.literals.iter().cloned().collect(),
                spatial: d.predicates.clone(),
            }
        })
        .collect();

    // A conflict on a pair can be escaped only by separating the pair.
    let on_pair = |p: Pair, stage, message: String| CaseResult {
        outcome: Err(Conflict {
            stage,
            culprit: pair_names(ctx, p),
            message,
        }),
        branch: (!settled(p)).then(|| (p, options[&p].clone())),
    };

    for s in &states {
        if let Some(l) = s.literals.iter().find(|l| s.literals.contains(&l.complement())) {
            return fail(
                Stage::Propositional,
                vec![s.concept.clone()],
                format!("propositional conflict in {} on {}", s.concept, l.name),
            );
        }
    }
    for &(i, j) in &intersecting {
        let (a, b) = (&states[i].literals, &states[j].literals);
        if let Some(l) = a.iter().find(|l| b.contains(&l.complement())) {
            return on_pair(
                (i, j),
                Stage::Propositional,
                format!("propositional conflict {}/{} on {}", names[i], names[j], l.name),
            );
        }
    }

    for s in &states {
        if ctx.domain.consistent(&local_network(ctx.domain, &[s], false)).is_none() {
            return fail(
                Stage::Spatial,
                vec![s.concept.clone()],
                format!("spatial conflict in {}", s.concept),
            );
        }
    }
    for &(i, j) in &intersecting {
        let fi = states[i].features();
        let shared: Vec<&str> = states[j].features().into_iter().filter(|g| fi.contains(g)).collect();
        if shared.is_empty() {
            continue;
        }
        let net = local_network(ctx.domain, &[&states[i], &states[j]], true);
        if ctx.domain.consistent(&net).is_none() {
            return on_pair(
                (i, j),
                Stage::Spatial,
                format!(
                    "spatial conflict {}/{} on ({})",
                    names[i],
                    names[j],
                    shared.join(",")
                ),
            );
        }
    }

    let h = propagate_homogeneity(ctx.domain, &states, &intersecting, &subintervals);
    let Some(scenario) = ctx.domain.consistent(&h.network) else {
        let merging: Vec<Pair> = intersecting
            .iter()
            .copied()
            .filter(|&(i, j)| {
                let fi = states[i].features();
                states[j].features().iter().any(|g| fi.contains(g))
            })
            .collect();
        let culprit: BTreeSet<String> = merging.iter().flat_map(|&p| pair_names(ctx, p)).collect();
        return CaseResult {
            outcome: Err(Conflict {
                stage: Stage::Spatial,
                culprit: culprit.into_iter().collect(),
                message: "spatial conflict across merged feature classes".to_string(),
            }),
            branch: merging
                .into_iter()
                .find(|&p| !settled(p))
                .map(|p| (p, options[&p].clone())),
        };
    };

    let relations = scenario
        .relations
        .iter()
        .map(|(args, atom)| ScenarioRelation {
            args: args.clone(),
            atom: ctx.domain.atom_name(*atom),
        })
        .collect();
    let witness = Witness {
        endpoints: names
            .iter()
            .zip(&spans)
            .map(|(n, s)| (n.to_string(), s.clone()))
            .collect(),
        literals: h
            .states
            .iter()
            .map(|s| (s.concept.clone(), s.literals.iter().cloned().collect()))
            .collect(),
        scenario: WitnessScenario {
            classes: h.classes,
            relations,
            placement: scenario.placement,
        },
        disjuncts: names
            .iter()
            .zip(choice)
            .map(|(n, &c)| (n.to_string(), c))
            .collect(),
        partitions: realized,
    };
    CaseResult {
        outcome: Ok(witness),
        branch: None,
    }
}

/// Checks one fully specified case: `choice[k]` picks the disjunct of axiom
/// `k` and `partitions` fixes the relation of some pairs `(i, j)`, `i < j`.
/// Pairs left open are taken as they fall in the extracted solution.
pub fn check_conjunctive_case(
    t: &TBox,
    choice: &[usize],
    partitions: &BTreeMap<Pair, PartitionRelation>,
) -> Result<Witness, Conflict> {
    let axioms = normalize(t);
    let ctx = Context {
        domain: t.domain,
        axioms: &axioms,
    };
    check_case(&ctx, choice, partitions).outcome
}
