//! Axiom checking and classification of complete triple systems.
//!
//! On canonically stored systems, cyclic symmetry and antisymmetry hold
//! structurally and nondegeneracy is completeness, so only three checks carry
//! content:
//!
//! * interiority: `tqr ∧ ptr ∧ pqt ⟹ pqr`
//! * transitivity: `tsp ∧ tsq ∧ tsr ∧ tpq ∧ tqr ⟹ tpr`
//! * dual transitivity: `tps ∧ tqs ∧ trs ∧ tpq ∧ tqr ⟹ tpr`
//!
//! plus the Grassmann-Plücker relations: for pairwise distinct `t, p, q, r, s`
//! the three values
//!
//! ```text
//! (tpq ∧ trs) ∨ (tqp ∧ tsr)
//! (trp ∧ tqs) ∨ (tpr ∧ tsq)
//! (tps ∧ tqr) ∨ (tsp ∧ trq)
//! ```
//!
//! must not be all equal. A complete system is a CC-system when interiority
//! and transitivity hold, a pre-CC-system when transitivity holds, and a
//! uniform chirotope when the Grassmann-Plücker relations hold; the latter
//! two classes coincide, which [`classify`] asserts on every call.

use std::collections::HashSet;
use std::fmt;

use crate::error::Result;
use crate::system::{PartialTripleSystem, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomTag {
    A4,
    A5,
    A5Prime,
    Gpr,
}

impl AxiomTag {
    fn label(self) -> &'static str {
        match self {
            AxiomTag::A4 => "A4",
            AxiomTag::A5 => "A5",
            AxiomTag::A5Prime => "A5'",
            AxiomTag::Gpr => "GPR",
        }
    }

    fn roles(self) -> &'static [&'static str] {
        match self {
            AxiomTag::A4 => &["t", "p", "q", "r"],
            AxiomTag::A5 | AxiomTag::A5Prime => &["t", "s", "p", "q", "r"],
            AxiomTag::Gpr => &["t", "p", "q", "r", "s"],
        }
    }
}

/// A witness tuple on which an axiom fails, points listed in the axiom's
/// role order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: AxiomTag,
    pub witness: Vec<Point>,
}

impl AxiomViolation {
    /// Re-evaluate the axiom on the stored witness tuple.
    pub fn recheck(&self, s: &PartialTripleSystem) -> Result<bool> {
        s.require_complete()?;
        let w = &self.witness;
        Ok(match self.axiom {
            AxiomTag::A4 => violates_a4(s, w[0], w[1], w[2], w[3]),
            AxiomTag::A5 => violates_a5(s, w[0], w[1], w[2], w[3], w[4]),
            AxiomTag::A5Prime => violates_a5prime(s, w[0], w[1], w[2], w[3], w[4]),
            AxiomTag::Gpr => {
                let (e1, e2, e3) = gpr_values_raw(s, w[0], w[1], w[2], w[3], w[4]);
                e1 == e2 && e2 == e3
            }
        })
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom.label())?;
        for (role, point) in self.axiom.roles().iter().zip(&self.witness) {
            write!(f, " {role}={point}")?;
        }
        Ok(())
    }
}

/// Per-axiom results plus derived class membership of a complete system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub a4_ok: bool,
    pub a5_ok: bool,
    pub a5p_ok: bool,
    pub gpr_ok: bool,
    pub is_pre_cc: bool,
    pub is_cc: bool,
    pub is_chirotope: bool,
}

#[inline]
fn val(s: &PartialTripleSystem, a: Point, b: Point, c: Point) -> bool {
    s.get(a, b, c).expect("complete system")
}

#[inline]
fn violates_a4(s: &PartialTripleSystem, t: Point, p: Point, q: Point, r: Point) -> bool {
    val(s, t, q, r) && val(s, p, t, r) && val(s, p, q, t) && !val(s, p, q, r)
}

#[inline]
fn violates_a5(s: &PartialTripleSystem, t: Point, x: Point, p: Point, q: Point, r: Point) -> bool {
    val(s, t, x, p)
        && val(s, t, x, q)
        && val(s, t, x, r)
        && val(s, t, p, q)
        && val(s, t, q, r)
        && !val(s, t, p, r)
}

#[inline]
fn violates_a5prime(
    s: &PartialTripleSystem,
    t: Point,
    x: Point,
    p: Point,
    q: Point,
    r: Point,
) -> bool {
    val(s, t, p, x)
        && val(s, t, q, x)
        && val(s, t, r, x)
        && val(s, t, p, q)
        && val(s, t, q, r)
        && !val(s, t, p, r)
}

/// The three Grassmann-Plücker disjunctions, in order. Callers guarantee
/// distinct in-range points and assigned triples.
#[inline]
fn gpr_values_raw(
    sys: &PartialTripleSystem,
    t: Point,
    p: Point,
    q: Point,
    r: Point,
    s: Point,
) -> (bool, bool, bool) {
    let e1 = (val(sys, t, p, q) && val(sys, t, r, s)) || (val(sys, t, q, p) && val(sys, t, s, r));
    let e2 = (val(sys, t, r, p) && val(sys, t, q, s)) || (val(sys, t, p, r) && val(sys, t, s, q));
    let e3 = (val(sys, t, p, s) && val(sys, t, q, r)) || (val(sys, t, s, p) && val(sys, t, r, q));
    (e1, e2, e3)
}

macro_rules! distinct {
    ($a:expr, $($rest:expr),+) => {
        $(($a != $rest))&&+ && distinct!($($rest),+)
    };
    ($a:expr) => { true };
}

/// All interiority violations, one per ordered 4-tuple `(t, p, q, r)`.
pub fn check_axiom4(s: &PartialTripleSystem) -> Result<Vec<AxiomViolation>> {
    s.require_complete()?;
    let n = s.n();
    let mut out = Vec::new();
    for t in 0..n {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if distinct!(t, p, q, r) && violates_a4(s, t, p, q, r) {
                        out.push(AxiomViolation {
                            axiom: AxiomTag::A4,
                            witness: vec![t, p, q, r],
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Short-circuit variant of [`check_axiom4`].
pub fn satisfies_axiom4(s: &PartialTripleSystem) -> Result<bool> {
    s.require_complete()?;
    let n = s.n();
    for t in 0..n {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if distinct!(t, p, q, r) && violates_a4(s, t, p, q, r) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

macro_rules! five_tuple_check {
    ($check:ident, $satisfies:ident, $violates:ident, $tag:expr) => {
        pub fn $check(s: &PartialTripleSystem) -> Result<Vec<AxiomViolation>> {
            s.require_complete()?;
            let n = s.n();
            let mut out = Vec::new();
            for t in 0..n {
                for x in 0..n {
                    for p in 0..n {
                        for q in 0..n {
                            for r in 0..n {
                                if distinct!(t, x, p, q, r) && $violates(s, t, x, p, q, r) {
                                    out.push(AxiomViolation {
                                        axiom: $tag,
                                        witness: vec![t, x, p, q, r],
                                    });
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        }

        pub fn $satisfies(s: &PartialTripleSystem) -> Result<bool> {
            s.require_complete()?;
            let n = s.n();
            for t in 0..n {
                for x in 0..n {
                    for p in 0..n {
                        for q in 0..n {
                            for r in 0..n {
                                if distinct!(t, x, p, q, r) && $violates(s, t, x, p, q, r) {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
    };
}

five_tuple_check!(check_axiom5, satisfies_axiom5, violates_a5, AxiomTag::A5);
five_tuple_check!(
    check_axiom5prime,
    satisfies_axiom5prime,
    violates_a5prime,
    AxiomTag::A5Prime
);

/// The three Grassmann-Plücker disjunction values for `(t, p, q, r, s)`.
///
/// Works on partial systems as long as the six referenced triples are
/// assigned.
pub fn gpr_values(
    sys: &PartialTripleSystem,
    t: Point,
    p: Point,
    q: Point,
    r: Point,
    s: Point,
) -> Result<(bool, bool, bool)> {
    let lookup = |a: Point, b: Point, c: Point| -> Result<Option<bool>> {
        sys.value_of((a, b, c).into())
    };
    let needed = [
        (t, p, q),
        (t, r, s),
        (t, r, p),
        (t, q, s),
        (t, p, s),
        (t, q, r),
    ];
    let mut values = [false; 6];
    let mut missing = 0usize;
    for (slot, &(a, b, c)) in values.iter_mut().zip(&needed) {
        match lookup(a, b, c)? {
            Some(v) => *slot = v,
            None => missing += 1,
        }
    }
    if missing > 0 {
        return Err(crate::error::Error::IncompleteSystem { unassigned: missing });
    }
    let [tpq, trs, trp, tqs, tps, tqr] = values;
    // Complete slots make negated orders pure complements.
    let e1 = (tpq && trs) || (!tpq && !trs);
    let e2 = (trp && tqs) || (!trp && !tqs);
    let e3 = (tps && tqr) || (!tps && !tqr);
    Ok((e1, e2, e3))
}

/// All Grassmann-Plücker violations: 5-tuples whose three disjunction values
/// coincide. Every ordered tuple is evaluated; reports are deduplicated by
/// `t` plus the point set `{p, q, r, s}`, keeping the first witness found.
pub fn check_gpr(s: &PartialTripleSystem) -> Result<Vec<AxiomViolation>> {
    s.require_complete()?;
    let n = s.n();
    let mut seen: HashSet<(Point, [Point; 4])> = HashSet::new();
    let mut out = Vec::new();
    for t in 0..n {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for x in 0..n {
                        if !distinct!(t, p, q, r, x) {
                            continue;
                        }
                        let (e1, e2, e3) = gpr_values_raw(s, t, p, q, r, x);
                        if e1 == e2 && e2 == e3 {
                            let mut set = [p, q, r, x];
                            set.sort_unstable();
                            if seen.insert((t, set)) {
                                out.push(AxiomViolation {
                                    axiom: AxiomTag::Gpr,
                                    witness: vec![t, p, q, r, x],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Short-circuit variant of [`check_gpr`], one probe per `t` and 4-subset.
pub fn satisfies_gpr(s: &PartialTripleSystem) -> Result<bool> {
    s.require_complete()?;
    let n = s.n();
    for t in 0..n {
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    for x in r + 1..n {
                        if !distinct!(t, p, q, r, x) {
                            continue;
                        }
                        let (e1, e2, e3) = gpr_values_raw(s, t, p, q, r, x);
                        if e1 == e2 && e2 == e3 {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Classify a complete system.
///
/// Panics if the pre-CC and chirotope verdicts ever disagree; the two classes
/// provably coincide, so a disagreement is an implementation bug.
pub fn classify(s: &PartialTripleSystem) -> Result<Classification> {
    let a4_ok = satisfies_axiom4(s)?;
    let a5_ok = satisfies_axiom5(s)?;
    let a5p_ok = satisfies_axiom5prime(s)?;
    let gpr_ok = satisfies_gpr(s)?;
    let c = Classification {
        a4_ok,
        a5_ok,
        a5p_ok,
        gpr_ok,
        is_pre_cc: a5_ok,
        is_cc: a4_ok && a5_ok,
        is_chirotope: gpr_ok,
    };
    assert_eq!(
        c.is_pre_cc, c.is_chirotope,
        "pre-CC and chirotope verdicts disagree on {s:?}: implementation bug"
    );
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::from_points;
    use crate::system::OrientedTriple;

    fn assign_all(
        n: usize,
        entries: &[(usize, usize, usize, bool)],
    ) -> PartialTripleSystem {
        let mut s = PartialTripleSystem::new(n);
        for &(p, q, r, v) in entries {
            s = s.assign(OrientedTriple::new(p, q, r), v).unwrap();
        }
        s
    }

    #[test]
    fn incomplete_systems_are_rejected() {
        let s = PartialTripleSystem::new(4);
        assert!(matches!(
            check_axiom4(&s),
            Err(Error::IncompleteSystem { unassigned: 4 })
        ));
    }

    #[test]
    fn three_point_systems_are_vacuously_cc() {
        for v in [true, false] {
            let s = assign_all(3, &[(0, 1, 2, v)]);
            assert!(check_axiom4(&s).unwrap().is_empty());
            assert!(check_axiom5(&s).unwrap().is_empty());
            let c = classify(&s).unwrap();
            assert!(c.is_cc && c.is_pre_cc && c.is_chirotope);
        }
    }

    #[test]
    fn triangle_with_centroid_satisfies_interiority() {
        let s = from_points(&[(0i64, 0), (6, 0), (0, 6), (2, 2)]).unwrap();
        assert!(check_axiom4(&s).unwrap().is_empty());
        assert!(classify(&s).unwrap().is_cc);
    }

    #[test]
    fn interiority_violation_is_witnessed() {
        // Premise of interiority holds at (t,p,q,r) = (3,0,1,2) while the
        // conclusion (0,1,2) is reversed.
        let s = assign_all(
            4,
            &[
                (3, 1, 2, true),
                (0, 3, 2, true),
                (0, 1, 3, true),
                (0, 1, 2, false),
            ],
        );
        let violations = check_axiom4(&s).unwrap();
        assert!(violations
            .iter()
            .any(|v| v.witness == vec![3, 0, 1, 2]));
        for v in &violations {
            assert!(v.recheck(&s).unwrap());
        }
        assert!(!satisfies_axiom4(&s).unwrap());
        assert!(!classify(&s).unwrap().is_cc);
    }

    #[test]
    fn interiority_checker_matches_an_independent_evaluator() {
        // Re-derive every ordered violation through the public value_of path
        // and compare, over all 16 complete 4-point systems.
        for sys in crate::enumeration::enumerate_complete(4).unwrap() {
            let value = |p: usize, q: usize, r: usize| {
                sys.value_of(OrientedTriple::new(p, q, r)).unwrap().unwrap()
            };
            let mut direct = Vec::new();
            for t in 0..4 {
                for p in 0..4 {
                    for q in 0..4 {
                        for r in 0..4 {
                            let distinct =
                                t != p && t != q && t != r && p != q && p != r && q != r;
                            if distinct
                                && value(t, q, r)
                                && value(p, t, r)
                                && value(p, q, t)
                                && !value(p, q, r)
                            {
                                direct.push(vec![t, p, q, r]);
                            }
                        }
                    }
                }
            }
            let reported: Vec<Vec<usize>> = check_axiom4(&sys)
                .unwrap()
                .into_iter()
                .map(|v| v.witness)
                .collect();
            assert_eq!(reported, direct);
        }
    }

    #[test]
    fn transitivity_violation_is_witnessed() {
        // tsp ∧ tsq ∧ tsr ∧ tpq ∧ tqr ∧ trp at (t,s,p,q,r) = (4,3,0,1,2);
        // the four triples not through t are set arbitrarily.
        let s = assign_all(
            5,
            &[
                (4, 3, 0, true),
                (4, 3, 1, true),
                (4, 3, 2, true),
                (4, 0, 1, true),
                (4, 1, 2, true),
                (4, 2, 0, true),
                (0, 1, 2, true),
                (0, 1, 3, true),
                (0, 2, 3, true),
                (1, 2, 3, true),
            ],
        );
        let violations = check_axiom5(&s).unwrap();
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| v.witness == vec![4, 3, 0, 1, 2]));
        for v in &violations {
            assert!(v.recheck(&s).unwrap());
        }
        // The same configuration forces all three Grassmann-Plücker values
        // to false, so the chirotope check fails too.
        assert_eq!(
            gpr_values(&s, 4, 0, 1, 2, 3).unwrap(),
            (false, false, false)
        );
        assert!(!satisfies_gpr(&s).unwrap());
        let c = classify(&s).unwrap();
        assert!(!c.is_pre_cc && !c.is_chirotope);
    }

    #[test]
    fn small_ground_sets_are_vacuous() {
        let s = assign_all(4, &[(0, 1, 2, true), (0, 1, 3, true), (0, 2, 3, true), (1, 2, 3, true)]);
        assert!(check_axiom5(&s).unwrap().is_empty());
        assert!(check_axiom5prime(&s).unwrap().is_empty());
        assert!(check_gpr(&s).unwrap().is_empty());
    }

    #[test]
    fn gpr_values_all_true_pattern() {
        // tpq ∧ trs ∧ trp ∧ tqs ∧ tps ∧ tqr with (p,q,r,s) = (0,1,2,3), t = 4.
        let s = assign_all(
            5,
            &[
                (4, 0, 1, true),
                (4, 2, 3, true),
                (4, 2, 0, true),
                (4, 1, 3, true),
                (4, 0, 3, true),
                (4, 1, 2, true),
            ],
        );
        assert_eq!(gpr_values(&s, 4, 0, 1, 2, 3).unwrap(), (true, true, true));
    }

    #[test]
    fn gpr_values_all_false_pattern() {
        // tpq ∧ tsr ∧ trp ∧ tsq ∧ tsp ∧ tqr with (p,q,r,s) = (0,1,2,3), t = 4.
        let s = assign_all(
            5,
            &[
                (4, 0, 1, true),
                (4, 3, 2, true),
                (4, 2, 0, true),
                (4, 3, 1, true),
                (4, 3, 0, true),
                (4, 1, 2, true),
            ],
        );
        assert_eq!(
            gpr_values(&s, 4, 0, 1, 2, 3).unwrap(),
            (false, false, false)
        );
    }

    #[test]
    fn gpr_values_reports_missing_triples() {
        let s = PartialTripleSystem::new(5)
            .assign(OrientedTriple::new(4, 0, 1), true)
            .unwrap();
        assert!(matches!(
            gpr_values(&s, 4, 0, 1, 2, 3),
            Err(Error::IncompleteSystem { unassigned: 5 })
        ));
    }

    #[test]
    fn regular_pentagon_is_a_cc_system() {
        let pts: Vec<(f64, f64)> = (0..5)
            .map(|i| {
                let angle = std::f64::consts::TAU * i as f64 / 5.0;
                (angle.cos(), angle.sin())
            })
            .collect();
        let c = classify(&from_points(&pts).unwrap()).unwrap();
        assert!(c.a4_ok && c.a5_ok && c.a5p_ok && c.gpr_ok);
        assert!(c.is_cc && c.is_pre_cc && c.is_chirotope);
    }

    #[test]
    fn realizations_have_mixed_gpr_values() {
        let s = from_points(&[(0i64, 0), (9, 1), (5, 7), (2, 4), (7, 5)]).unwrap();
        let c = classify(&s).unwrap();
        assert!(c.a4_ok && c.a5_ok && c.a5p_ok && c.gpr_ok);
        assert!(check_gpr(&s).unwrap().is_empty());
    }

    #[test]
    fn violation_rendering_matches_cli_format() {
        let v = AxiomViolation {
            axiom: AxiomTag::A5,
            witness: vec![3, 4, 0, 1, 2],
        };
        assert_eq!(v.to_string(), "A5 t=3 s=4 p=0 q=1 r=2");
        let v = AxiomViolation {
            axiom: AxiomTag::A4,
            witness: vec![3, 0, 1, 2],
        };
        assert_eq!(v.to_string(), "A4 t=3 p=0 q=1 r=2");
    }
}
