//! The digraph ↔ apex-shaped-partial-system correspondence.
//!
//! A partial system whose assigned triples all share a point `t` is the same
//! data as a digraph on the remaining points (`p → q` iff `tpq`), and
//! completing the digraph to a vortex-free tournament is the same problem as
//! extending the partial system to a CC-system. This is what makes the
//! digraph completion problem the pivot of the extension problem's hardness,
//! and it also yields a constructive lift: any vortex-free tournament is the
//! associated tournament of some CC-system on one more point.

use crate::error::{Error, Result};
use crate::solver::{extend_with, EncodeOptions, SolveResult, SolverConfig, Target};
use crate::system::{PartialTripleSystem, Point};
use crate::tournament::{
    associated_tournament, find_vortices, is_vortex_free, Digraph, Tournament,
};

/// A digraph together with its apex-shaped partial system.
#[derive(Debug, Clone)]
pub struct ApexInstance {
    pub system: PartialTripleSystem,
    /// The reserved point shared by every assigned triple; always the
    /// largest point index.
    pub apex: Point,
    /// `vertex_to_point[v]` is the system point behind digraph vertex `v`.
    pub vertex_to_point: Vec<Point>,
}

impl ApexInstance {
    pub fn vertex_of(&self, p: Point) -> Option<usize> {
        self.vertex_to_point.iter().position(|&q| q == p)
    }
}

/// Embed a digraph as an apex-shaped partial system on one more point:
/// each arc `u → v` fixes the triple `(apex, u, v)` to true, nothing else.
pub fn digraph_to_partial(g: &Digraph) -> ApexInstance {
    let n = g.vertex_count();
    let apex = n;
    let mut system = PartialTripleSystem::new(n + 1);
    for (u, v) in g.arcs() {
        system = system
            .assign((apex, u, v).into(), true)
            .expect("digraph has no 2-cycles");
    }
    ApexInstance {
        system,
        apex,
        vertex_to_point: (0..n).collect(),
    }
}

/// Can the digraph be completed to a vortex-free tournament? Decided through
/// the CC-extension of its apex instance.
pub fn decide_completion(g: &Digraph) -> Result<bool> {
    decide_completion_with(g, &SolverConfig::default())
}

pub fn decide_completion_with(g: &Digraph, config: &SolverConfig) -> Result<bool> {
    let instance = digraph_to_partial(g);
    let outcome = extend_with(
        &instance.system,
        Target::Cc,
        &EncodeOptions::default(),
        config,
    );
    match outcome.result {
        SolveResult::Extendable(_) => Ok(true),
        SolveResult::Unextendable => Ok(false),
        SolveResult::Inconclusive => Err(Error::Inconclusive {
            limit: config.max_decisions.unwrap_or(0),
        }),
    }
}

/// Build a CC-system on `n + 1` points whose associated tournament at the new
/// apex is exactly `t`.
///
/// The completion always exists for vortex-free input, so an unextendable
/// answer from the search is reported as [`Error::LiftFailed`] — it would be
/// an implementation bug, not a property of the input.
pub fn lift_tournament(t: &Tournament) -> Result<PartialTripleSystem> {
    lift_tournament_with(t, &SolverConfig::default())
}

pub fn lift_tournament_with(t: &Tournament, config: &SolverConfig) -> Result<PartialTripleSystem> {
    if !is_vortex_free(t) {
        let vortex = find_vortices(t)
            .into_iter()
            .next()
            .expect("non-vortex-free tournament has a vortex");
        return Err(Error::NotVortexFree(vortex));
    }
    let instance = digraph_to_partial(&t.to_digraph());
    let outcome = extend_with(
        &instance.system,
        Target::Cc,
        &EncodeOptions::default(),
        config,
    );
    match outcome.result {
        SolveResult::Extendable(witness) => {
            let lifted = witness.extension;
            let assoc = associated_tournament(&lifted, instance.apex)?;
            assert_eq!(
                &assoc.graph, t,
                "lifted system does not reproduce the tournament: solver bug"
            );
            Ok(lifted)
        }
        SolveResult::Unextendable => Err(Error::LiftFailed),
        SolveResult::Inconclusive => Err(Error::Inconclusive {
            limit: config.max_decisions.unwrap_or(0),
        }),
    }
}
