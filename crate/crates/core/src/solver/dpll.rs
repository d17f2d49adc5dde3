//! A complete DPLL engine: chronological backtracking with unit propagation
//! over two watched literals per clause. No clause learning, no restarts —
//! determinism and exhaustiveness are the contract here, not raw speed.

use std::fmt;
use std::ops::Not;

/// A propositional literal packed as `2 * var + negated`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, positive: bool) -> Lit {
        Lit(((var as u32) << 1) | u32::from(!positive))
    }

    pub fn positive(var: usize) -> Lit {
        Lit::new(var, true)
    }

    pub fn negative(var: usize) -> Lit {
        Lit::new(var, false)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// 1-based signed integer form.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var() as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Parse a nonzero 1-based signed integer.
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 {
            return None;
        }
        Some(Lit::new(value.unsigned_abs() as usize - 1, value > 0))
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Search counters; identical inputs produce identical counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Vec<bool>),
    Unsat,
    /// The decision limit was reached before the search finished.
    Inconclusive,
}

/// Truth of a clause set under a total assignment. Used to re-verify models
/// independently of the search path.
pub fn evaluate(clauses: &[Vec<Lit>], model: &[bool]) -> bool {
    clauses.iter().all(|clause| {
        clause
            .iter()
            .any(|lit| model[lit.var()] == lit.is_positive())
    })
}

struct Frame {
    lit: Lit,
    trail_pos: usize,
    flipped: bool,
}

pub struct Dpll {
    clauses: Vec<Vec<Lit>>,
    // lit code → indices of clauses currently watching that literal
    watches: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    trail: Vec<Lit>,
    queue_head: usize,
    frames: Vec<Frame>,
    root_units: Vec<Lit>,
    root_conflict: bool,
    pub stats: SolveStats,
}

impl Dpll {
    pub fn new(var_count: usize, clauses: &[Vec<Lit>]) -> Dpll {
        let mut solver = Dpll {
            clauses: Vec::new(),
            watches: vec![Vec::new(); var_count * 2],
            assign: vec![None; var_count],
            trail: Vec::new(),
            queue_head: 0,
            frames: Vec::new(),
            root_units: Vec::new(),
            root_conflict: false,
            stats: SolveStats::default(),
        };
        for clause in clauses {
            debug_assert!(clause.iter().all(|l| l.var() < var_count));
            match clause.len() {
                0 => solver.root_conflict = true,
                1 => solver.root_units.push(clause[0]),
                _ => {
                    let idx = solver.clauses.len();
                    solver.clauses.push(clause.clone());
                    solver.watches[clause[0].code()].push(idx);
                    solver.watches[clause[1].code()].push(idx);
                }
            }
        }
        solver
    }

    fn value(&self, lit: Lit) -> Option<bool> {
        self.assign[lit.var()].map(|v| v == lit.is_positive())
    }

    /// Returns false when the literal is already false (conflict).
    fn enqueue(&mut self, lit: Lit) -> bool {
        match self.value(lit) {
            Some(true) => true,
            Some(false) => false,
            None => {
                self.assign[lit.var()] = Some(lit.is_positive());
                self.trail.push(lit);
                true
            }
        }
    }

    /// Process pending assignments; true on success, false on conflict.
    fn propagate(&mut self) -> bool {
        while self.queue_head < self.trail.len() {
            let lit = self.trail[self.queue_head];
            self.queue_head += 1;
            // Clauses watching ¬lit just lost that watch.
            let falsified = !lit;
            let watchers = std::mem::take(&mut self.watches[falsified.code()]);
            let mut kept = Vec::with_capacity(watchers.len());
            let mut conflict = false;
            for (pos, &ci) in watchers.iter().enumerate() {
                if conflict {
                    kept.extend_from_slice(&watchers[pos..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                debug_assert_eq!(clause[1], falsified);
                let first = clause[0];
                if self.assign[first.var()] == Some(first.is_positive()) {
                    kept.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&i| {
                    let l = clause[i];
                    self.assign[l.var()] != Some(!l.is_positive())
                });
                match replacement {
                    Some(i) => {
                        clause.swap(1, i);
                        let new_watch = clause[1];
                        self.watches[new_watch.code()].push(ci);
                    }
                    None => {
                        kept.push(ci);
                        if !self.enqueue(first) {
                            conflict = true;
                        } else {
                            self.stats.propagations += 1;
                        }
                    }
                }
            }
            self.watches[falsified.code()] = kept;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, trail_pos: usize) {
        while self.trail.len() > trail_pos {
            let lit = self.trail.pop().unwrap();
            self.assign[lit.var()] = None;
        }
        self.queue_head = trail_pos;
    }

    /// Flip the most recent unflipped decision; false when none remains.
    fn backtrack(&mut self) -> bool {
        while let Some(frame) = self.frames.pop() {
            if frame.flipped {
                continue;
            }
            self.undo_to(frame.trail_pos);
            let flipped = !frame.lit;
            self.frames.push(Frame {
                lit: flipped,
                trail_pos: frame.trail_pos,
                flipped: true,
            });
            let ok = self.enqueue(flipped);
            debug_assert!(ok);
            return true;
        }
        false
    }

    fn next_unassigned(&self) -> Option<usize> {
        self.assign.iter().position(|v| v.is_none())
    }

    /// Exhaustive search. Decision order is variable index ascending, `true`
    /// tried first. `max_decisions` bounds the number of fresh decisions.
    pub fn solve(&mut self, max_decisions: Option<u64>) -> SatOutcome {
        if self.root_conflict {
            return SatOutcome::Unsat;
        }
        for lit in std::mem::take(&mut self.root_units) {
            if !self.enqueue(lit) {
                return SatOutcome::Unsat;
            }
        }
        loop {
            if self.propagate() {
                let Some(var) = self.next_unassigned() else {
                    let model: Vec<bool> = self.assign.iter().map(|v| v.unwrap()).collect();
                    debug_assert!(evaluate(&self.clauses, &model));
                    return SatOutcome::Sat(model);
                };
                if let Some(limit) = max_decisions {
                    if self.stats.decisions >= limit {
                        return SatOutcome::Inconclusive;
                    }
                }
                self.stats.decisions += 1;
                let lit = Lit::positive(var);
                self.frames.push(Frame {
                    lit,
                    trail_pos: self.trail.len(),
                    flipped: false,
                });
                let ok = self.enqueue(lit);
                debug_assert!(ok);
            } else {
                self.stats.conflicts += 1;
                if !self.backtrack() {
                    return SatOutcome::Unsat;
                }
            }
        }
    }
}

/// One-shot convenience over [`Dpll`].
pub fn solve_cnf(
    var_count: usize,
    clauses: &[Vec<Lit>],
    max_decisions: Option<u64>,
) -> (SatOutcome, SolveStats) {
    let mut solver = Dpll::new(var_count, clauses);
    let outcome = solver.solve(max_decisions);
    (outcome, solver.stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(ints: &[i64]) -> Vec<Lit> {
        ints.iter().map(|&i| Lit::from_dimacs(i).unwrap()).collect()
    }

    #[test]
    fn literal_codes_round_trip() {
        for var in 0..5 {
            for pos in [true, false] {
                let l = Lit::new(var, pos);
                assert_eq!(l.var(), var);
                assert_eq!(l.is_positive(), pos);
                assert_eq!(!(!l), l);
                assert_eq!(Lit::from_dimacs(l.to_dimacs()), Some(l));
            }
        }
        assert_eq!(Lit::from_dimacs(0), None);
    }

    #[test]
    fn empty_formula_is_sat() {
        let (outcome, _) = solve_cnf(0, &[], None);
        assert_eq!(outcome, SatOutcome::Sat(vec![]));
    }

    #[test]
    fn contradictory_units_fail_without_decisions() {
        let clauses = vec![lits(&[1]), lits(&[-1])];
        let (outcome, stats) = solve_cnf(1, &clauses, None);
        assert_eq!(outcome, SatOutcome::Unsat);
        assert_eq!(stats.decisions, 0);
    }

    #[test]
    fn simple_sat_instance() {
        let clauses = vec![lits(&[1, -2]), lits(&[2, 3]), lits(&[-1, -3])];
        let (outcome, _) = solve_cnf(3, &clauses, None);
        match outcome {
            SatOutcome::Sat(model) => assert!(evaluate(&clauses, &model)),
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn pigeonhole_two_into_one_is_unsat() {
        // Two pigeons, one hole: v1 = pigeon 1 in hole, v2 = pigeon 2 in hole.
        let clauses = vec![lits(&[1]), lits(&[2]), lits(&[-1, -2])];
        let (outcome, _) = solve_cnf(2, &clauses, None);
        assert_eq!(outcome, SatOutcome::Unsat);
    }

    #[test]
    fn exhaustive_agreement_with_truth_tables() {
        // All 3-variable formulas with four fixed clauses drawn from a pool,
        // cross-checked against direct enumeration of the 8 assignments.
        let pool: Vec<Vec<Lit>> = vec![
            lits(&[1, 2]),
            lits(&[-1, 3]),
            lits(&[-2, -3]),
            lits(&[1, -3]),
            lits(&[-1, 2, 3]),
            lits(&[2, -3]),
        ];
        for mask in 0u32..1 << pool.len() {
            let clauses: Vec<Vec<Lit>> = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| c.clone())
                .collect();
            let brute = (0u8..8).any(|bits| {
                let model: Vec<bool> = (0..3).map(|v| bits >> v & 1 == 1).collect();
                evaluate(&clauses, &model)
            });
            let (outcome, _) = solve_cnf(3, &clauses, None);
            match outcome {
                SatOutcome::Sat(model) => {
                    assert!(brute, "solver found model for unsat mask {mask}");
                    assert!(evaluate(&clauses, &model));
                }
                SatOutcome::Unsat => assert!(!brute, "solver missed model, mask {mask}"),
                SatOutcome::Inconclusive => panic!("no limit was set"),
            }
        }
    }

    #[test]
    fn decision_limit_reports_inconclusive() {
        // Needs at least one decision: force the limit to zero.
        let clauses = vec![lits(&[1, 2])];
        let (outcome, _) = solve_cnf(2, &clauses, Some(0));
        assert_eq!(outcome, SatOutcome::Inconclusive);
    }

    #[test]
    fn stats_are_deterministic() {
        let clauses = vec![
            lits(&[1, 2, 3]),
            lits(&[-1, -2]),
            lits(&[-1, -3]),
            lits(&[-2, -3]),
            lits(&[1, -2, 3]),
        ];
        let (o1, s1) = solve_cnf(3, &clauses, None);
        let (o2, s2) = solve_cnf(3, &clauses, None);
        assert_eq!(o1, o2);
        assert_eq!(s1, s2);
    }
}
