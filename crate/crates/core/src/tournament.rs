//! Associated tournaments and digraphs of triple systems, and vortex
//! detection.
//!
//! For a complete system and a point `t`, the associated tournament orients
//! `p → q` exactly when the triple `(t, p, q)` is true. A *vortex* is the
//! 4-vertex pattern of a directed 3-cycle together with an apex that either
//! dominates all three cycle vertices or is dominated by all three. The two
//! vortex kinds are precisely the patterns excluded by transitivity and dual
//! transitivity in the system the tournament came from.

use std::fmt;

use crate::error::{Error, Result};
use crate::system::{PartialTripleSystem, Point};

/// A complete orientation of all vertex pairs, stored as one bit per pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    // bit per pair {u < v}: true means u → v
    bits: Vec<u64>,
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}", self.n)?;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let (a, b) = if self.beats(u, v) { (u, v) } else { (v, u) };
                write!(f, ", {a}->{b}")?;
            }
        }
        write!(f, ")")
    }
}

fn pair_rank(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Tournament {
    /// The transitive tournament: `u → v` iff `u < v`.
    pub fn transitive(n: usize) -> Self {
        let bits = pair_count(n);
        Tournament {
            n,
            bits: vec![u64::MAX; bits.div_ceil(64)],
        }
    }

    /// Build from an orientation predicate: `wins(u, v)` for `u < v` decides
    /// whether the arc runs `u → v`.
    pub fn from_fn(n: usize, mut wins: impl FnMut(usize, usize) -> bool) -> Self {
        let mut t = Tournament::transitive(n);
        for u in 0..n {
            for v in u + 1..n {
                t.set_bit(pair_rank(n, u, v), wins(u, v));
            }
        }
        t
    }

    /// Decode a pair-rank bit pattern; bit `r` set orients pair `r` low→high.
    pub fn from_bits(n: usize, pattern: u64) -> Self {
        assert!(pair_count(n) <= 64, "pattern form limited to 64 pairs");
        Tournament::from_fn(n, |u, v| pattern >> pair_rank(n, u, v) & 1 == 1)
    }

    fn set_bit(&mut self, rank: usize, v: bool) {
        let mask = 1u64 << (rank & 63);
        if v {
            self.bits[rank >> 6] |= mask;
        } else {
            self.bits[rank >> 6] &= !mask;
        }
    }

    fn bit(&self, rank: usize) -> bool {
        self.bits[rank >> 6] >> (rank & 63) & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Does the arc run `u → v`?
    pub fn beats(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        if u < v {
            self.bit(pair_rank(self.n, u, v))
        } else {
            !self.bit(pair_rank(self.n, v, u))
        }
    }

    /// Reorient the pair `{u, v}` so the arc runs `u → v`.
    pub fn set_winner(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if u < v {
            self.set_bit(pair_rank(self.n, u, v), true);
        } else {
            self.set_bit(pair_rank(self.n, v, u), false);
        }
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| v != u && self.beats(u, v)).collect()
    }

    pub fn in_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| v != u && self.beats(v, u)).collect()
    }

    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.beats(u, v) {
                    g.add_arc(u, v).unwrap();
                } else {
                    g.add_arc(v, u).unwrap();
                }
            }
        }
        g
    }

    /// Serialized as a digraph carrying all `C(n, 2)` arcs.
    pub fn serialize(&self) -> String {
        self.to_digraph().serialize()
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point: u, n: self.n })
        }
    }

    /// Reverse the orientation of exactly the two vertex-disjoint pairs
    /// `a1` and `a2`.
    pub fn flip_disjoint_arcs(
        &self,
        a1: (usize, usize),
        a2: (usize, usize),
    ) -> Result<Tournament> {
        let (u, v) = a1;
        let (x, y) = a2;
        for w in [u, v, x, y] {
            self.check_vertex(w)?;
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if x == y {
            return Err(Error::SelfLoop(x));
        }
        if u == x || u == y || v == x || v == y {
            return Err(Error::OverlappingArcs(u, v, x, y));
        }
        let mut out = self.clone();
        for (a, b) in [a1, a2] {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let rank = pair_rank(self.n, lo, hi);
            let cur = out.bit(rank);
            out.set_bit(rank, !cur);
        }
        Ok(out)
    }
}

/// A set of directed arcs with no 2-cycles; a partial orientation of pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}", self.n)?;
        for (u, v) in self.arcs() {
            write!(f, ", {u}->{v}")?;
        }
        write!(f, ")")
    }
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point: u, n: self.n })
        }
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_arc(v, u) {
            return Err(Error::TwoCycle(v, u));
        }
        self.adj[u * self.n + v] = true;
        Ok(())
    }

    /// Arcs in ascending `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.has_arc(u, v).then_some((u, v)))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    /// Pairs `{u < v}` with no arc in either direction.
    pub fn unoriented_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_arc(u, v) && !self.has_arc(v, u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Promote to a tournament when every pair is oriented.
    pub fn to_tournament(&self) -> Option<Tournament> {
        if !self.unoriented_pairs().is_empty() {
            return None;
        }
        Some(Tournament::from_fn(self.n, |u, v| self.has_arc(u, v)))
    }

    /// Parse the digraph text format:
    ///
    /// ```text
    /// vertices <n>
    /// <u> <v>
    /// ```
    ///
    /// where each body line is an arc `u → v`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Digraph> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            match &mut graph {
                None => {
                    if tokens.len() != 2 || tokens[0] != "vertices" {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("expected `vertices <n>`, found `{}`", content.trim()),
                        });
                    }
                    let n: usize = tokens[1].parse().map_err(|_| Error::Syntax {
                        line,
                        msg: format!("invalid vertex count `{}`", tokens[1]),
                    })?;
                    graph = Some(Digraph::new(n));
                }
                Some(g) => {
                    if tokens.len() != 2 {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("expected `<u> <v>`, found `{}`", content.trim()),
                        });
                    }
                    let mut ids = [0usize; 2];
                    for (slot, tok) in ids.iter_mut().zip(&tokens[..2]) {
                        *slot = tok.parse().map_err(|_| Error::Syntax {
                            line,
                            msg: format!("invalid vertex identifier `{tok}`"),
                        })?;
                    }
                    g.add_arc(ids[0], ids[1]).map_err(|e| e.at_line(line))?;
                }
            }
        }
        graph.ok_or(Error::Syntax {
            line: text.lines().count() + 1,
            msg: "missing `vertices <n>` header".into(),
        })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v) in self.arcs() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VortexKind {
    /// The apex beats all three cycle vertices.
    Dominating,
    /// All three cycle vertices beat the apex.
    Dominated,
}

/// A directed 3-cycle `p → q → r → p` plus an apex adjacent to all three in
/// one common direction. The cycle starts at its smallest vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vortex {
    pub apex: usize,
    pub cycle: (usize, usize, usize),
    pub kind: VortexKind,
}

impl fmt::Display for Vortex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, r) = self.cycle;
        let kind = match self.kind {
            VortexKind::Dominating => "dominating",
            VortexKind::Dominated => "dominated",
        };
        write!(f, "{kind} vortex apex={} cycle={p}->{q}->{r}->{p}", self.apex)
    }
}

/// The directed 3-cycle on `{a < b < c}`, if the three pairs are cyclic.
fn cycle_on(t: &Tournament, a: usize, b: usize, c: usize) -> Option<(usize, usize, usize)> {
    if t.beats(a, b) && t.beats(b, c) && t.beats(c, a) {
        Some((a, b, c))
    } else if t.beats(a, c) && t.beats(c, b) && t.beats(b, a) {
        Some((a, c, b))
    } else {
        None
    }
}

/// Every vortex of the tournament, apexes ascending, cycle sets in
/// lexicographic order.
pub fn find_vortices(t: &Tournament) -> Vec<Vortex> {
    let n = t.vertex_count();
    let mut out = Vec::new();
    for apex in 0..n {
        for a in 0..n {
            if a == apex {
                continue;
            }
            for b in a + 1..n {
                if b == apex {
                    continue;
                }
                for c in b + 1..n {
                    if c == apex {
                        continue;
                    }
                    let Some(cycle) = cycle_on(t, a, b, c) else {
                        continue;
                    };
                    let dominates =
                        t.beats(apex, a) && t.beats(apex, b) && t.beats(apex, c);
                    let dominated =
                        t.beats(a, apex) && t.beats(b, apex) && t.beats(c, apex);
                    if dominates {
                        out.push(Vortex {
                            apex,
                            cycle,
                            kind: VortexKind::Dominating,
                        });
                    } else if dominated {
                        out.push(Vortex {
                            apex,
                            cycle,
                            kind: VortexKind::Dominated,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Vortex-freeness decided without enumerating triangles: a tournament is
/// free of directed 3-cycles exactly when it is transitive, i.e. when its
/// score sequence is `0, 1, …, k-1`. A vortex at `apex` exists exactly when
/// the sub-tournament induced on its out- or in-neighborhood fails that test.
pub fn is_vortex_free(t: &Tournament) -> bool {
    let n = t.vertex_count();
    (0..n).all(|apex| {
        induced_is_transitive(t, &t.out_neighbors(apex))
            && induced_is_transitive(t, &t.in_neighbors(apex))
    })
}

fn induced_is_transitive(t: &Tournament, subset: &[usize]) -> bool {
    let mut scores: Vec<usize> = subset
        .iter()
        .map(|&u| {
            subset
                .iter()
                .filter(|&&v| v != u && t.beats(u, v))
                .count()
        })
        .collect();
    scores.sort_unstable();
    scores.iter().enumerate().all(|(i, &d)| d == i)
}

/// An associated structure on `n - 1` vertices together with the
/// vertex → point correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Associated<G> {
    pub graph: G,
    /// `points[v]` is the original point behind vertex `v`.
    pub points: Vec<Point>,
}

impl<G> Associated<G> {
    pub fn vertex_of(&self, p: Point) -> Option<usize> {
        self.points.iter().position(|&q| q == p)
    }
}

/// The tournament associated with point `t`: vertices are all other points
/// (compacted, ascending) and `p → q` iff the triple `(t, p, q)` is true.
pub fn associated_tournament(
    s: &PartialTripleSystem,
    t: Point,
) -> Result<Associated<Tournament>> {
    s.require_complete()?;
    if t >= s.n() {
        return Err(Error::PointOutOfRange { point: t, n: s.n() });
    }
    let points: Vec<Point> = (0..s.n()).filter(|&p| p != t).collect();
    let tournament = Tournament::from_fn(points.len(), |a, b| {
        s.get(t, points[a], points[b]).expect("complete system")
    });
    Ok(Associated {
        graph: tournament,
        points,
    })
}

/// The digraph associated with point `t` of an apex-shaped partial system:
/// arcs follow the same rule as [`associated_tournament`], and pairs whose
/// triple is unassigned stay unoriented. Every assigned triple must contain
/// `t`.
pub fn associated_digraph(s: &PartialTripleSystem, t: Point) -> Result<Associated<Digraph>> {
    if t >= s.n() {
        return Err(Error::PointOutOfRange { point: t, n: s.n() });
    }
    for (ct, _) in s.assigned_triples() {
        if !ct.contains(t) {
            return Err(Error::NonApexSystem { triple: ct, apex: t });
        }
    }
    let points: Vec<Point> = (0..s.n()).filter(|&p| p != t).collect();
    let mut digraph = Digraph::new(points.len());
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            match s.get(t, points[a], points[b]) {
                Some(true) => digraph.add_arc(a, b)?,
                Some(false) => digraph.add_arc(b, a)?,
                None => {}
            }
        }
    }
    Ok(Associated {
        graph: digraph,
        points,
    })
}
