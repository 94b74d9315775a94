//! The decision procedure: depth-first search over one disjunct per axiom
//! and, lazily, over partition relations of pairs whose overlap causes a
//! conflict. Each leaf is a conjunctive case checked by temporal closure,
//! propositional homogeneity and a global spatial check over feature classes.

mod case;
mod witness;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::allen::PartitionRelation;
use crate::error::ReasonerError;
use crate::tbox::{normalize, validate, TBox};

pub use case::{
    build_temporal_csp, check_conjunctive_case, intersects_graph, propagate_homogeneity, Conflict,
    Homogeneity, IntervalState, Pair, Stage,
};
pub use witness::{
    check_witness, span, verify_witness, FeatureVar, PairPartition, ScenarioRelation, Span,
    SpatialVarClass, Witness, WitnessScenario,
};

use case::{check_case, Context};

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Shuffles disjunct and partition order; `None` keeps source order.
    pub seed: Option<u64>,
    /// Record one line per search step in [`Verdict::trace`].
    pub trace: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub sat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<Conflict>,
    /// Conjunctive cases checked.
    pub branches: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

pub fn decide(t: &TBox) -> Result<Verdict, ReasonerError> {
    decide_with(t, &SearchOptions::default())
}

struct Search<'a> {
    ctx: Context<'a>,
    rng: Option<ChaCha8Rng>,
    tracing: bool,
    trace: Vec<String>,
    branches: usize,
    last: Option<Conflict>,
}

impl Search<'_> {
    fn log(&mut self, depth: usize, line: impl FnOnce() -> String) {
        if self.tracing {
            self.trace.push(format!("{}{}", "  ".repeat(depth), line()));
        }
    }

    fn pair_label(&self, (i, j): Pair) -> String {
        format!("{}/{}", self.ctx.axioms[i].lhs, self.ctx.axioms[j].lhs)
    }

    fn choose(&mut self, choice: &mut Vec<usize>) -> Option<Witness> {
        let k = choice.len();
        if k == self.ctx.axioms.len() {
            self.log(0, || format!("disjuncts {choice:?}"));
            return self.explore(choice, &mut BTreeMap::new(), 1);
        }
        let mut order: Vec<usize> = (0..self.ctx.axioms[k].disjuncts.len()).collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        for d in order {
            choice.push(d);
            let found = self.choose(choice);
            choice.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn explore(
        &mut self,
        choice: &[usize],
        partitions: &mut BTreeMap<Pair, PartitionRelation>,
        depth: usize,
    ) -> Option<Witness> {
        self.branches += 1;
        let result = check_case(&self.ctx, choice, partitions);
        let conflict = match result.outcome {
            Ok(w) => {
                self.log(depth, || "sat".to_string());
                return Some(w);
            }
            Err(c) => c,
        };
        self.log(depth, || format!("{} conflict: {}", conflict.stage, conflict.message));
        let Some((pair, mut options)) = result.branch else {
            self.last = Some(conflict);
            return None;
        };
        if let Some(rng) = self.rng.as_mut() {
            options.shuffle(rng);
        }
        for rel in options {
            let label = self.pair_label(pair);
            self.log(depth, || format!("branch {label} {rel}"));
            partitions.insert(pair, rel);
            let found = self.explore(choice, partitions, depth + 1);
            partitions.remove(&pair);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

pub fn decide_with(t: &TBox, opts: &SearchOptions) -> Result<Verdict, ReasonerError> {
    let diagnostics = validate(t);
    if !diagnostics.is_empty() {
        return Err(ReasonerError::Invalid(
            diagnostics.into_iter().map(|d| d.to_string()).collect(),
        ));
    }
    let axioms = normalize(t);
    if let Some(a) = axioms.iter().find(|a| a.always_unsat()) {
        return Ok(Verdict {
            sat: false,
            witness: None,
            conflict: Some(Conflict {
                stage: Stage::Propositional,
                culprit: vec![a.lhs.clone()],
                message: format!("every disjunct of {} contains bottom", a.lhs),
            }),
            branches: 0,
            trace: Vec::new(),
        });
    }
    let mut search = Search {
        ctx: Context {
            domain: t.domain,
            axioms: &axioms,
        },
        rng: opts.seed.map(ChaCha8Rng::seed_from_u64),
        tracing: opts.trace,
        trace: Vec::new(),
        branches: 0,
        last: None,
    };
    let witness = search.choose(&mut Vec::new());
    Ok(Verdict {
        sat: witness.is_some(),
        conflict: if witness.is_some() { None } else { search.last },
        witness,
        branches: search.branches,
        trace: search.trace,
    })
}
