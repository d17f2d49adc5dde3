//! Cross-cutting invariants: orbit laws, format round-trips, transform
//! behavior of realizations, equivariance, and agreement between independent
//! implementations.

use proptest::prelude::*;

use cc_systems::axioms::{check_axiom5, classify};
use cc_systems::enumeration::{
    enumerate_digraphs, enumerate_tournaments, random_digraph, random_partial,
    random_points_general_position, random_tournament, SplitMix64,
};
use cc_systems::geometry::orientation;
use cc_systems::reduction::digraph_to_partial;
use cc_systems::solver::{extend, Target};
use cc_systems::system::{canonical_triples, parse_system, serialize_system, PartialTripleSystem};
use cc_systems::tournament::{
    associated_digraph, associated_tournament, find_vortices, is_vortex_free, Tournament,
};
use cc_systems::{from_points, OrientedTriple};

fn permutations_of(p: usize, q: usize, r: usize) -> [(usize, usize, usize, bool); 6] {
    // (triple, parity-even?)
    [
        (p, q, r, true),
        (q, r, p, true),
        (r, p, q, true),
        (p, r, q, false),
        (r, q, p, false),
        (q, p, r, false),
    ]
}

proptest! {
    #[test]
    fn orbit_pattern_is_three_true_three_false(
        n in 3usize..8,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 3),
        value: bool,
    ) {
        let points: Vec<usize> = (0..n).collect();
        let p = picks[0].index(n);
        let mut rest: Vec<usize> = points.iter().copied().filter(|&x| x != p).collect();
        let q = rest.remove(picks[1].index(rest.len()));
        let r = rest[picks[2].index(rest.len())];

        let s = PartialTripleSystem::new(n)
            .assign(OrientedTriple::new(p, q, r), value)
            .unwrap();
        for (a, b, c, even) in permutations_of(p, q, r) {
            let expected = if even { value } else { !value };
            prop_assert_eq!(
                s.value_of(OrientedTriple::new(a, b, c)).unwrap(),
                Some(expected)
            );
        }
        // Any triple outside the orbit stays unassigned.
        for ct in canonical_triples(n) {
            let [i, j, k] = ct.points();
            let mut sorted = [p, q, r];
            sorted.sort_unstable();
            if [i, j, k] != sorted {
                prop_assert_eq!(s.value_of(OrientedTriple::new(i, j, k)).unwrap(), None);
            }
        }
    }

    #[test]
    fn serialize_parse_is_identity(n in 3usize..9, seed: u64, density in 0.0f64..=1.0) {
        let s = random_partial(n, density, seed);
        let text = serialize_system(&s);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &s);
        // serialize ∘ parse is the identity on canonical-form text.
        prop_assert_eq!(serialize_system(&back), text);
    }

    #[test]
    fn flip_disjoint_arcs_is_an_involution(
        n in 4usize..9,
        seed: u64,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 4),
    ) {
        let t = random_tournament(n, seed);
        let a = picks[0].index(n);
        let b = (a + 1 + picks[1].index(n - 1)) % n;
        let mut others: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
        let c = others.remove(picks[2].index(others.len()));
        let d = others[picks[3].index(others.len())];

        let once = t.flip_disjoint_arcs((a, b), (c, d)).unwrap();
        prop_assert_ne!(&once, &t);
        let twice = once.flip_disjoint_arcs((a, b), (c, d)).unwrap();
        prop_assert_eq!(twice, t);
    }

    #[test]
    fn transitivity_violations_are_relabel_equivariant(
        pattern in 0u64..1024,
        perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let s = cc_systems::enumeration::system_from_pattern(5, pattern);
        let relabeled = s.relabel(&perm).unwrap();
        let mut mapped: Vec<Vec<usize>> = check_axiom5(&s)
            .unwrap()
            .into_iter()
            .map(|v| v.witness.iter().map(|&p| perm[p]).collect())
            .collect();
        let mut direct: Vec<Vec<usize>> = check_axiom5(&relabeled)
            .unwrap()
            .into_iter()
            .map(|v| v.witness)
            .collect();
        mapped.sort();
        direct.sort();
        prop_assert_eq!(mapped, direct);
    }
}

#[test]
fn vortex_detectors_agree_on_random_tournaments() {
    let mut rng = SplitMix64::new(0xD1CE);
    for round in 0..1000 {
        let n = 4 + (round % 6); // 4..=9
        let t = random_tournament(n, rng.next_u64());
        assert_eq!(
            find_vortices(&t).is_empty(),
            is_vortex_free(&t),
            "detectors disagree on {t:?}"
        );
    }
}

#[test]
fn realizations_are_rigid_motion_invariant_and_flip_under_reflection() {
    for seed in 0..25u64 {
        let n = 4 + (seed % 4) as usize;
        let pts = random_points_general_position(n, 500, seed);
        let base = from_points(&pts).unwrap();

        let translated: Vec<(i64, i64)> = pts.iter().map(|&(x, y)| (x + 73, y - 12)).collect();
        assert_eq!(from_points(&translated).unwrap(), base);

        let rotated: Vec<(i64, i64)> = pts.iter().map(|&(x, y)| (-y, x)).collect();
        assert_eq!(from_points(&rotated).unwrap(), base);

        let reflected: Vec<(i64, i64)> = pts.iter().map(|&(x, y)| (y, x)).collect();
        let mirror = from_points(&reflected).unwrap();
        for ct in canonical_triples(n) {
            let [i, j, k] = ct.points();
            let t = OrientedTriple::new(i, j, k);
            assert_eq!(
                mirror.value_of(t).unwrap().map(|v| !v),
                base.value_of(t).unwrap()
            );
        }
    }
}

#[test]
fn associated_tournament_matches_determinant_signs() {
    for seed in 100..120u64 {
        let n = 5 + (seed % 3) as usize;
        let pts = random_points_general_position(n, 800, seed);
        let s = from_points(&pts).unwrap();
        for t in 0..n {
            let assoc = associated_tournament(&s, t).unwrap();
            let others: Vec<usize> = (0..n).filter(|&p| p != t).collect();
            let direct = Tournament::from_fn(others.len(), |a, b| {
                orientation(pts[t], pts[others[a]], pts[others[b]]).unwrap()
            });
            assert_eq!(assoc.graph, direct);
            assert_eq!(assoc.points, others);
        }
    }
}

#[test]
fn apex_embedding_round_trips_for_every_small_digraph() {
    for n in 0..=4 {
        for g in enumerate_digraphs(n).unwrap() {
            let instance = digraph_to_partial(&g);
            let back = associated_digraph(&instance.system, instance.apex).unwrap();
            assert_eq!(back.graph, g);
        }
    }
    for seed in 0..50u64 {
        let g = random_digraph(6, 0.5, seed);
        let instance = digraph_to_partial(&g);
        assert_eq!(
            associated_digraph(&instance.system, instance.apex)
                .unwrap()
                .graph,
            g
        );
    }
}

#[test]
fn vortex_tournaments_never_extend_to_cc() {
    let mut checked = 0;
    for t in enumerate_tournaments(4).unwrap() {
        if is_vortex_free(&t) {
            continue;
        }
        let instance = digraph_to_partial(&t.to_digraph());
        let outcome = extend(&instance.system, Target::Cc);
        assert!(
            !outcome.result.is_extendable(),
            "vortex tournament extended: {t:?}"
        );
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn solving_reimported_dimacs_matches_brute_force() {
    use cc_systems::enumeration::brute_force_extendable;
    use cc_systems::solver::{encode, export_dimacs, import_dimacs, solve};
    for seed in 0..50u64 {
        let n = 4 + (seed % 2) as usize;
        let target = if seed % 2 == 0 { Target::PreCc } else { Target::Cc };
        let s = random_partial(n, 0.4, 9_000 + seed);
        let formula = import_dimacs(&export_dimacs(&encode(&s, target))).unwrap();
        let outcome = solve(&formula);
        assert_eq!(
            outcome.result.is_extendable(),
            brute_force_extendable(&s, target).unwrap(),
            "seed {seed}"
        );
    }
}

#[test]
fn lift_round_trips_on_random_vortex_free_tournaments() {
    use cc_systems::reduction::lift_tournament;
    let mut rng = SplitMix64::new(0x1F7);
    let mut lifted = 0;
    while lifted < 100 {
        let n = 6 + (lifted % 2);
        let t = random_tournament(n, rng.next_u64());
        if !is_vortex_free(&t) {
            continue;
        }
        let sys = lift_tournament(&t).unwrap();
        assert_eq!(associated_tournament(&sys, n).unwrap().graph, t);
        lifted += 1;
    }
}

#[test]
fn realizations_classify_clean_smoke() {
    for seed in 0..10u64 {
        let pts = random_points_general_position(6, 300, seed);
        let c = classify(&from_points(&pts).unwrap()).unwrap();
        assert!(c.is_cc && c.is_pre_cc && c.is_chirotope);
    }
}
