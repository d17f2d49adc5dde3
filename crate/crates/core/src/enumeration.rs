//! Exhaustive and seeded-random generation of systems, tournaments and
//! digraphs at small `n`, plus brute-force deciders. This module is the
//! independent oracle the solver and the reduction are tested against, so it
//! deliberately stays on the plain axiom checkers and never touches the CNF
//! machinery.
//!
//! Randomness comes from SplitMix64 (Steele–Lea–Flood; Stafford's mix13
//! finalizer). The algorithm is frozen: the seed → output mapping is pinned
//! by tests, and every generator documents the order in which it consumes
//! draws, so seeds stay meaningful across platforms and releases.

use crate::axioms::{classify, satisfies_axiom4, satisfies_axiom5};
use crate::error::{Error, Result};
use crate::geometry::orientation;
use crate::solver::Target;
use crate::system::{binom3, canonical_triples, PartialTripleSystem};
use crate::tournament::{is_vortex_free, pair_count, Digraph, Tournament};

/// Largest ground set the exhaustive system enumeration accepts:
/// `2^C(6,3) = 2^20` systems.
pub const ENUMERATION_MAX_POINTS: usize = 6;

/// Largest number of unassigned triples [`brute_force_extendable`] will
/// iterate over.
pub const BRUTE_FORCE_MAX_FREE: usize = 24;

/// SplitMix64: state advances by the golden-gamma constant, outputs go
/// through Stafford's mix13.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Top bit of the next draw.
    pub fn next_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform-ish in `[lo, hi]` by reduction; bias is irrelevant for test
    /// instance generation, determinism is what matters.
    pub fn next_in_range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// The complete system whose sign vector over lexicographic canonical
/// triples is `pattern`, most significant bit first. Ascending patterns
/// therefore give the systems in lexicographic sign order with `-` before
/// `+`.
pub fn system_from_pattern(n: usize, pattern: u64) -> PartialTripleSystem {
    let m = binom3(n);
    debug_assert!(m <= 64 && (m == 64 || pattern < 1u64 << m));
    let mut s = PartialTripleSystem::new(n);
    for idx in 0..m {
        s.set_canonical(idx, pattern >> (m - 1 - idx) & 1 == 1);
    }
    s
}

/// Every complete system over `n` points exactly once, in lexicographic
/// sign order. `2^C(n,3)` systems, so `n` is capped at
/// [`ENUMERATION_MAX_POINTS`].
pub fn enumerate_complete(n: usize) -> Result<impl Iterator<Item = PartialTripleSystem>> {
    if n > ENUMERATION_MAX_POINTS {
        return Err(Error::GroundSetTooLarge {
            n,
            max: ENUMERATION_MAX_POINTS,
        });
    }
    let m = binom3(n);
    Ok((0..1u64 << m).map(move |pattern| system_from_pattern(n, pattern)))
}

/// Labeled counts of complete systems per class at fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCensus {
    pub n: usize,
    pub total: u64,
    pub pre_cc: u64,
    pub cc: u64,
    pub chirotope: u64,
}

impl ClassCensus {
    /// The counting identities every census must satisfy: the pre-CC and
    /// chirotope counts coincide and CC-systems are a subset.
    pub fn identities_hold(&self) -> bool {
        self.pre_cc == self.chirotope && self.cc <= self.pre_cc && self.pre_cc <= self.total
    }
}

fn census_range(n: usize, lo: u64, hi: u64) -> ClassCensus {
    let mut tally = ClassCensus {
        n,
        total: hi - lo,
        pre_cc: 0,
        cc: 0,
        chirotope: 0,
    };
    for pattern in lo..hi {
        let s = system_from_pattern(n, pattern);
        let c = classify(&s).expect("complete by construction");
        tally.pre_cc += u64::from(c.is_pre_cc);
        tally.cc += u64::from(c.is_cc);
        tally.chirotope += u64::from(c.is_chirotope);
    }
    tally
}

/// Classify every complete system over `n` points and tally the classes.
pub fn census(n: usize) -> Result<ClassCensus> {
    census_with_jobs(n, 1)
}

/// [`census`] with the pattern space split across `jobs` threads. Tallies
/// merge by addition, so the result is independent of the split.
pub fn census_with_jobs(n: usize, jobs: usize) -> Result<ClassCensus> {
    if n > ENUMERATION_MAX_POINTS {
        return Err(Error::GroundSetTooLarge {
            n,
            max: ENUMERATION_MAX_POINTS,
        });
    }
    let total = 1u64 << binom3(n);
    let jobs = jobs.clamp(1, 64) as u64;
    let chunk = total.div_ceil(jobs);
    let parts: Vec<(u64, u64)> = (0..jobs)
        .map(|j| (j * chunk, ((j + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    let tallies: Vec<ClassCensus> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || census_range(n, lo, hi)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut result = ClassCensus {
        n,
        total,
        pre_cc: 0,
        cc: 0,
        chirotope: 0,
    };
    for t in tallies {
        result.pre_cc += t.pre_cc;
        result.cc += t.cc;
        result.chirotope += t.chirotope;
    }
    Ok(result)
}

/// Does some assignment of the unassigned triples land in the target class?
/// Decided by direct iteration over all completions and the plain axiom
/// checkers — no solver machinery.
pub fn brute_force_extendable(s: &PartialTripleSystem, target: Target) -> Result<bool> {
    let n = s.n();
    let free: Vec<usize> = canonical_triples(n)
        .map(|ct| ct.index(n))
        .filter(|&idx| s.canonical_value(idx).is_none())
        .collect();
    if free.len() > BRUTE_FORCE_MAX_FREE {
        return Err(Error::TooManyFreeTriples {
            count: free.len(),
            max: BRUTE_FORCE_MAX_FREE,
        });
    }
    for pattern in 0..1u64 << free.len() {
        let mut candidate = s.clone();
        for (bit, &idx) in free.iter().enumerate() {
            candidate.set_canonical(idx, pattern >> bit & 1 == 1);
        }
        let ok = match target {
            Target::PreCc => satisfies_axiom5(&candidate)?,
            Target::Cc => satisfies_axiom5(&candidate)? && satisfies_axiom4(&candidate)?,
        };
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Can the digraph's unoriented pairs be completed to a vortex-free
/// tournament? Decided by trying every orientation of the missing pairs.
pub fn brute_force_completable(g: &Digraph) -> bool {
    let missing = g.unoriented_pairs();
    assert!(missing.len() <= 32, "too many unoriented pairs to iterate");
    // Missing pairs get a placeholder orientation; the loop below overrides
    // them per pattern.
    let base = Tournament::from_fn(g.vertex_count(), |u, v| !g.has_arc(v, u));
    for pattern in 0..1u64 << missing.len() {
        let mut t = base.clone();
        for (bit, &(u, v)) in missing.iter().enumerate() {
            if pattern >> bit & 1 == 1 {
                t.set_winner(u, v);
            } else {
                t.set_winner(v, u);
            }
        }
        if is_vortex_free(&t) {
            return true;
        }
    }
    false
}

/// Every tournament on `n` vertices exactly once (all `2^C(n,2)` pair
/// orientation patterns).
pub fn enumerate_tournaments(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    if n > 6 {
        return Err(Error::GroundSetTooLarge { n, max: 6 });
    }
    let pairs = pair_count(n);
    Ok((0..1u64 << pairs).map(move |pattern| Tournament::from_bits(n, pattern)))
}

/// Every digraph on `n` vertices exactly once: each pair is absent,
/// low→high, or high→low, giving `3^C(n,2)` graphs.
pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    if n > 5 {
        return Err(Error::GroundSetTooLarge { n, max: 5 });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    Ok((0..total).map(move |code| {
        let mut g = Digraph::new(n);
        let mut code = code;
        for &(u, v) in &pairs {
            match code % 3 {
                0 => {}
                1 => g.add_arc(u, v).expect("fresh pair"),
                2 => g.add_arc(v, u).expect("fresh pair"),
                _ => unreachable!(),
            }
            code /= 3;
        }
        g
    }))
}

/// A seeded random partial system: canonical triples are visited in
/// lexicographic order; each consumes one draw for presence (fraction
/// compared against `density`) and, when present, one more whose top bit is
/// the sign.
pub fn random_partial(n: usize, density: f64, seed: u64) -> PartialTripleSystem {
    let mut rng = SplitMix64::new(seed);
    let mut s = PartialTripleSystem::new(n);
    for ct in canonical_triples(n) {
        if rng.next_f64() < density {
            let sign = rng.next_bool();
            s.set_canonical(ct.index(n), sign);
        }
    }
    s
}

/// A seeded random tournament: pairs `{u < v}` in lexicographic order, one
/// draw each, top bit set meaning `u → v`.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = SplitMix64::new(seed);
    Tournament::from_fn(n, |_, _| rng.next_bool())
}

/// A seeded random digraph: pairs `{u < v}` in lexicographic order, one
/// presence draw each (fraction < `density`), then one direction draw for
/// present pairs, top bit set meaning `u → v`.
pub fn random_digraph(n: usize, density: f64, seed: u64) -> Digraph {
    let mut rng = SplitMix64::new(seed);
    let mut g = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < density {
                if rng.next_bool() {
                    g.add_arc(u, v).expect("fresh pair");
                } else {
                    g.add_arc(v, u).expect("fresh pair");
                }
            }
        }
    }
    g
}

/// A seeded random integral point set in general position: coordinates are
/// drawn uniformly from `[-bound, bound]` (x then y per point) and a point
/// is redrawn while it coincides with or is collinear to previously
/// accepted points.
pub fn random_points_general_position(n: usize, bound: i64, seed: u64) -> Vec<(i64, i64)> {
    let mut rng = SplitMix64::new(seed);
    let mut points: Vec<(i64, i64)> = Vec::with_capacity(n);
    while points.len() < n {
        let candidate = (
            rng.next_in_range(-bound, bound),
            rng.next_in_range(-bound, bound),
        );
        let clashes = points.contains(&candidate)
            || points.iter().enumerate().any(|(i, &a)| {
                points[i + 1..]
                    .iter()
                    .any(|&b| orientation(a, b, candidate).is_none())
            });
        if !clashes {
            points.push(candidate);
        }
    }
    points
}
