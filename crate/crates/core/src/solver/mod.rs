//! Clause encoding and complete search for the extension problem: does a
//! partial triple system extend to a pre-CC-system (equivalently, a uniform
//! chirotope) or to a full CC-system?
//!
//! One variable per canonical triple, `true` meaning the canonical
//! orientation is positive. Transitivity instances become plain 6-literal
//! clauses; the chirotope target reuses them, which is sound because the two
//! classes coincide. Every satisfying assignment is decoded and re-verified
//! through the axiom checkers before a witness is returned.

mod dimacs;
mod dpll;

pub use dimacs::{export_dimacs, import_dimacs};
pub use dpll::{evaluate, solve_cnf, Dpll, Lit, SatOutcome, SolveStats};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::axioms::{classify, Classification};
use crate::system::{canonical_triples, canonicalize, CanonicalTriple, PartialTripleSystem};

/// Extension target class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Transitivity only; identical to the uniform chirotopes.
    PreCc,
    /// Transitivity plus interiority.
    Cc,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::PreCc => "pre-cc",
            Target::Cc => "cc",
        })
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pre-cc" | "pre_cc" | "precc" => Ok(Target::PreCc),
            "cc" => Ok(Target::Cc),
            other => Err(format!("unknown target `{other}` (expected pre-cc or cc)")),
        }
    }
}

/// Encoding switches.
#[derive(Debug, Clone)]
pub struct EncodeOptions {
    /// Also emit the dual-transitivity clauses. They are implied but give
    /// unit propagation more to work with.
    pub dual_transitivity: bool,
    /// Encode the Grassmann-Plücker relations directly instead of the
    /// transitivity clauses. Only useful for cross-checking the two routes.
    pub gpr_encoding: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            dual_transitivity: true,
            gpr_encoding: false,
        }
    }
}

/// A CNF instance with its variable ↔ canonical-triple correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n: usize,
    target: Target,
    var_count: usize,
    clauses: Vec<Vec<Lit>>,
    /// `var_map[v]` is the canonical triple behind variable `v`.
    var_map: Vec<CanonicalTriple>,
    /// Values forced by the input system's assigned triples.
    fixed: Vec<Option<bool>>,
}

impl CnfFormula {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn var_map(&self) -> &[CanonicalTriple] {
        &self.var_map
    }

    pub fn fixed(&self) -> &[Option<bool>] {
        &self.fixed
    }

    /// Clauses as sorted literal lists, sorted; order-insensitive form for
    /// round-trip comparisons.
    pub fn clause_multiset(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .clauses
            .iter()
            .map(|c| {
                let mut ints: Vec<i64> = c.iter().map(|l| l.to_dimacs()).collect();
                ints.sort_unstable();
                ints
            })
            .collect();
        out.sort();
        out
    }

    /// Decode a model into a complete system via the variable map.
    pub fn decode(&self, model: &[bool]) -> PartialTripleSystem {
        let mut s = PartialTripleSystem::new(self.n);
        for (var, ct) in self.var_map.iter().enumerate() {
            s.set_canonical(ct.index(self.n), model[var]);
        }
        s
    }

    pub(crate) fn from_parts(
        n: usize,
        target: Target,
        var_count: usize,
        clauses: Vec<Vec<Lit>>,
        var_map: Vec<CanonicalTriple>,
        fixed: Vec<Option<bool>>,
    ) -> CnfFormula {
        CnfFormula {
            n,
            target,
            var_count,
            clauses,
            var_map,
            fixed,
        }
    }
}

/// The literal asserting that the ordered triple `(a, b, c)` is true.
fn triple_lit(n: usize, a: usize, b: usize, c: usize) -> Lit {
    let (ct, parity) = canonicalize((a, b, c).into()).expect("distinct points");
    Lit::new(ct.index(n), parity.is_even())
}

struct ClauseBuilder {
    clauses: Vec<Vec<Lit>>,
    seen: HashSet<Vec<Lit>>,
}

impl ClauseBuilder {
    fn new() -> Self {
        ClauseBuilder {
            clauses: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn push(&mut self, clause: Vec<Lit>) {
        let mut key = clause.clone();
        key.sort_unstable();
        if self.seen.insert(key) {
            self.clauses.push(clause);
        }
    }
}

/// Encode the extension problem for `s` with default options.
pub fn encode(s: &PartialTripleSystem, target: Target) -> CnfFormula {
    encode_with(s, target, &EncodeOptions::default())
}

/// Encode the extension problem for `s`.
///
/// Clause shapes, with `⟦abc⟧` the signed literal of the ordered triple:
///
/// * transitivity, per ordered 5-tuple `(t,s,p,q,r)`:
///   `¬⟦tsp⟧ ∨ ¬⟦tsq⟧ ∨ ¬⟦tsr⟧ ∨ ¬⟦tpq⟧ ∨ ¬⟦tqr⟧ ∨ ⟦tpr⟧`
/// * dual transitivity (optional, implied):
///   `¬⟦tps⟧ ∨ ¬⟦tqs⟧ ∨ ¬⟦trs⟧ ∨ ¬⟦tpq⟧ ∨ ¬⟦tqr⟧ ∨ ⟦tpr⟧`
/// * interiority (target `cc` only), per ordered 4-tuple `(t,p,q,r)`:
///   `¬⟦tqr⟧ ∨ ¬⟦ptr⟧ ∨ ¬⟦pqt⟧ ∨ ⟦pqr⟧`
///
/// Assigned triples become unit clauses; duplicate clauses are dropped.
pub fn encode_with(s: &PartialTripleSystem, target: Target, opts: &EncodeOptions) -> CnfFormula {
    let n = s.n();
    let var_map: Vec<CanonicalTriple> = canonical_triples(n).collect();
    let var_count = var_map.len();
    let mut fixed = vec![None; var_count];
    let mut builder = ClauseBuilder::new();

    for (ct, v) in s.assigned_triples() {
        let var = ct.index(n);
        fixed[var] = Some(v);
        builder.push(vec![Lit::new(var, v)]);
    }

    if opts.gpr_encoding {
        push_gpr_clauses(&mut builder, n);
    } else {
        for t in 0..n {
            for x in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        for r in 0..n {
                            if t == x || t == p || t == q || t == r || x == p || x == q || x == r
                                || p == q || p == r || q == r
                            {
                                continue;
                            }
                            builder.push(vec![
                                !triple_lit(n, t, x, p),
                                !triple_lit(n, t, x, q),
                                !triple_lit(n, t, x, r),
                                !triple_lit(n, t, p, q),
                                !triple_lit(n, t, q, r),
                                triple_lit(n, t, p, r),
                            ]);
                            if opts.dual_transitivity {
                                builder.push(vec![
                                    !triple_lit(n, t, p, x),
                                    !triple_lit(n, t, q, x),
                                    !triple_lit(n, t, r, x),
                                    !triple_lit(n, t, p, q),
                                    !triple_lit(n, t, q, r),
                                    triple_lit(n, t, p, r),
                                ]);
                            }
                        }
                    }
                }
            }
        }
    }

    if target == Target::Cc {
        for t in 0..n {
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        if t == p || t == q || t == r || p == q || p == r || q == r {
                            continue;
                        }
                        builder.push(vec![
                            !triple_lit(n, t, q, r),
                            !triple_lit(n, p, t, r),
                            !triple_lit(n, p, q, t),
                            triple_lit(n, p, q, r),
                        ]);
                    }
                }
            }
        }
    }

    CnfFormula {
        n,
        target,
        var_count,
        clauses: builder.clauses,
        var_map,
        fixed,
    }
}

/// Forbid, per point `t` and 4-subset, the sign patterns whose three
/// Grassmann-Plücker values coincide: each of the 16 such patterns over the
/// six involved triples is blocked by one 6-literal clause.
fn push_gpr_clauses(builder: &mut ClauseBuilder, n: usize) {
    for t in 0..n {
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    for x in r + 1..n {
                        if t == p || t == q || t == r || t == x {
                            continue;
                        }
                        let lits = [
                            triple_lit(n, t, p, q),
                            triple_lit(n, t, r, x),
                            triple_lit(n, t, r, p),
                            triple_lit(n, t, q, x),
                            triple_lit(n, t, p, x),
                            triple_lit(n, t, q, r),
                        ];
                        for pattern in 0u8..64 {
                            let b = |i: usize| pattern >> i & 1 == 1;
                            let e1 = b(0) == b(1);
                            let e2 = b(2) == b(3);
                            let e3 = b(4) == b(5);
                            if e1 == e2 && e2 == e3 {
                                let clause = (0..6)
                                    .map(|i| if b(i) { !lits[i] } else { lits[i] })
                                    .collect();
                                builder.push(clause);
                            }
                        }
                    }
                }
            }
        }
    }
}

/// A verified extension.
#[derive(Debug, Clone)]
pub struct Witness {
    pub extension: PartialTripleSystem,
    pub verified_class: Target,
    pub report: Classification,
}

#[derive(Debug, Clone)]
pub enum SolveResult {
    Extendable(Witness),
    Unextendable,
    /// Decision limit hit; no verdict.
    Inconclusive,
}

impl SolveResult {
    pub fn is_extendable(&self) -> bool {
        matches!(self, SolveResult::Extendable(_))
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub result: SolveResult,
    pub stats: SolveStats,
}

/// Search resource bounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverConfig {
    pub max_decisions: Option<u64>,
}

/// Run the complete search on an encoded formula.
///
/// A satisfying assignment is decoded and verified before being returned:
/// the model must satisfy every clause, honor every fixed value, and the
/// decoded system must classify into the formula's target class. Any
/// verification failure panics — it would mean the encoder or the search is
/// wrong, never the input.
pub fn solve(f: &CnfFormula) -> SolveOutcome {
    solve_with(f, &SolverConfig::default())
}

pub fn solve_with(f: &CnfFormula, config: &SolverConfig) -> SolveOutcome {
    let (outcome, stats) = solve_cnf(f.var_count, &f.clauses, config.max_decisions);
    let result = match outcome {
        SatOutcome::Unsat => SolveResult::Unextendable,
        SatOutcome::Inconclusive => SolveResult::Inconclusive,
        SatOutcome::Sat(model) => {
            assert!(
                evaluate(&f.clauses, &model),
                "model does not satisfy the formula: solver bug"
            );
            for (var, required) in f.fixed.iter().enumerate() {
                if let Some(v) = required {
                    assert_eq!(
                        model[var], *v,
                        "model contradicts a fixed triple: solver bug"
                    );
                }
            }
            let extension = f.decode(&model);
            let report = classify(&extension).expect("decoded system is complete");
            let ok = match f.target {
                Target::PreCc => report.is_pre_cc,
                Target::Cc => report.is_cc,
            };
            assert!(
                ok,
                "decoded witness fails {} verification: encoder bug",
                f.target
            );
            SolveResult::Extendable(Witness {
                extension,
                verified_class: f.target,
                report,
            })
        }
    };
    SolveOutcome { result, stats }
}

/// Decide extendability of a partial system: encode, search, decode, verify.
pub fn extend(s: &PartialTripleSystem, target: Target) -> SolveOutcome {
    extend_with(s, target, &EncodeOptions::default(), &SolverConfig::default())
}

pub fn extend_with(
    s: &PartialTripleSystem,
    target: Target,
    opts: &EncodeOptions,
    config: &SolverConfig,
) -> SolveOutcome {
    let formula = encode_with(s, target, opts);
    let outcome = solve_with(&formula, config);
    if let SolveResult::Extendable(witness) = &outcome.result {
        for (ct, v) in s.assigned_triples() {
            let [i, j, k] = ct.points();
            let got = witness
                .extension
                .value_of((i, j, k).into())
                .expect("valid triple");
            assert_eq!(got, Some(v), "witness disagrees with input: solver bug");
        }
    }
    outcome
}
