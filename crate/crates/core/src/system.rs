//! Canonical storage for (partially defined) boolean functions on ordered
//! triples of a finite point set.
//!
//! Only one value is stored per canonical triple `(i, j, k)` with `i < j < k`;
//! the value of any ordered triple is derived from the permutation parity
//! relating it to its canonical representative. Cyclic symmetry (`pqr ⟹ qrp`)
//! and antisymmetry (`pqr ⟹ ¬prq`) therefore hold by construction and cannot
//! be violated by any sequence of operations.

use std::fmt;

use crate::error::{Error, Result};

/// Points are dense 0-based identifiers.
pub type Point = usize;

/// A finite ground set; points are `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSet {
    n: usize,
}

impl PointSet {
    pub fn new(n: usize) -> Self {
        PointSet { n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn contains(&self, p: Point) -> bool {
        p < self.n
    }

    /// Number of canonical triples, `C(n, 3)`.
    pub fn triple_count(&self) -> usize {
        binom3(self.n)
    }
}

pub(crate) fn binom2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

pub(crate) fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// An ordered triple of pairwise distinct points. Order is significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedTriple {
    pub p: Point,
    pub q: Point,
    pub r: Point,
}

impl OrientedTriple {
    pub fn new(p: Point, q: Point, r: Point) -> Self {
        OrientedTriple { p, q, r }
    }
}

impl From<(Point, Point, Point)> for OrientedTriple {
    fn from((p, q, r): (Point, Point, Point)) -> Self {
        OrientedTriple { p, q, r }
    }
}

/// The canonical representative of a triple orbit: strictly ascending points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalTriple {
    i: Point,
    j: Point,
    k: Point,
}

impl CanonicalTriple {
    pub fn new(i: Point, j: Point, k: Point) -> Result<Self> {
        if i < j && j < k {
            Ok(CanonicalTriple { i, j, k })
        } else {
            Err(Error::DuplicateTriplePoints(i, j, k))
        }
    }

    pub fn i(&self) -> Point {
        self.i
    }

    pub fn j(&self) -> Point {
        self.j
    }

    pub fn k(&self) -> Point {
        self.k
    }

    pub fn points(&self) -> [Point; 3] {
        [self.i, self.j, self.k]
    }

    pub fn contains(&self, p: Point) -> bool {
        self.i == p || self.j == p || self.k == p
    }

    /// Lexicographic rank among all canonical triples over `n` points.
    pub fn index(&self, n: usize) -> usize {
        let (i, j, k) = (self.i, self.j, self.k);
        (binom3(n) - binom3(n - i)) + (binom2(n - i - 1) - binom2(n - j)) + (k - j - 1)
    }
}

impl fmt::Display for CanonicalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// Parity of the permutation taking the canonical (sorted) triple to an
/// ordered triple. Even parity preserves the stored value, odd negates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn apply(self, value: bool) -> bool {
        match self {
            Parity::Even => value,
            Parity::Odd => !value,
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

/// Sort an ordered triple and report the permutation parity.
///
/// The parity is `Even` exactly when `t` is an even permutation of its sorted
/// form, i.e. when `t` lies in the cyclic orbit of the canonical triple.
pub fn canonicalize(t: OrientedTriple) -> Result<(CanonicalTriple, Parity)> {
    let OrientedTriple { p, q, r } = t;
    if p == q || q == r || p == r {
        return Err(Error::DuplicateTriplePoints(p, q, r));
    }
    let (mut a, mut b, mut c) = (p, q, r);
    let mut even = true;
    if a > b {
        std::mem::swap(&mut a, &mut b);
        even = !even;
    }
    if b > c {
        std::mem::swap(&mut b, &mut c);
        even = !even;
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
        even = !even;
    }
    let parity = if even { Parity::Even } else { Parity::Odd };
    Ok((CanonicalTriple { i: a, j: b, k: c }, parity))
}

/// Iterate all canonical triples over `n` points in lexicographic order.
pub fn canonical_triples(n: usize) -> impl Iterator<Item = CanonicalTriple> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| CanonicalTriple { i, j, k }))
    })
}

/// Completeness report of a partial system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionStatus {
    pub complete: bool,
    pub unassigned_count: usize,
}

/// A partial boolean function on ordered triples, stored canonically.
///
/// Each canonical triple holds a presence bit and a sign bit; all six
/// orderings of an assigned triple derive their value by permutation parity.
/// A system is *complete* when every canonical triple is assigned, which is
/// exactly when nondegeneracy (`pqr ∨ prq`) holds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialTripleSystem {
    n: usize,
    assigned: Vec<u64>,
    signs: Vec<u64>,
    assigned_count: usize,
}

impl fmt::Debug for PartialTripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialTripleSystem(n={}", self.n)?;
        for (t, v) in self.assigned_triples() {
            write!(f, ", {}{}", t, if v { '+' } else { '-' })?;
        }
        write!(f, ")")
    }
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl PartialTripleSystem {
    /// A system over `n` points with no triple assigned.
    pub fn new(n: usize) -> Self {
        let m = binom3(n);
        PartialTripleSystem {
            n,
            assigned: vec![0; words_for(m)],
            signs: vec![0; words_for(m)],
            assigned_count: 0,
        }
    }

    pub fn point_set(&self) -> PointSet {
        PointSet { n: self.n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of canonical triples, `C(n, 3)`.
    pub fn triple_count(&self) -> usize {
        binom3(self.n)
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned_count
    }

    pub fn unassigned_count(&self) -> usize {
        self.triple_count() - self.assigned_count
    }

    pub fn is_complete(&self) -> bool {
        self.assigned_count == self.triple_count()
    }

    pub fn completion_status(&self) -> CompletionStatus {
        CompletionStatus {
            complete: self.is_complete(),
            unassigned_count: self.unassigned_count(),
        }
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteSystem {
                unassigned: self.unassigned_count(),
            })
        }
    }

    fn check_point(&self, p: Point) -> Result<()> {
        if p < self.n {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point: p, n: self.n })
        }
    }

    fn validate(&self, t: OrientedTriple) -> Result<(CanonicalTriple, Parity)> {
        self.check_point(t.p)?;
        self.check_point(t.q)?;
        self.check_point(t.r)?;
        canonicalize(t)
    }

    #[inline]
    fn bit(words: &[u64], idx: usize) -> bool {
        words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    #[inline]
    fn set_bit(words: &mut [u64], idx: usize, v: bool) {
        let mask = 1u64 << (idx & 63);
        if v {
            words[idx >> 6] |= mask;
        } else {
            words[idx >> 6] &= !mask;
        }
    }

    /// Stored value at canonical index, if assigned.
    #[inline]
    pub(crate) fn canonical_value(&self, idx: usize) -> Option<bool> {
        if Self::bit(&self.assigned, idx) {
            Some(Self::bit(&self.signs, idx))
        } else {
            None
        }
    }

    /// Set the canonical slot unconditionally. Internal constructor path.
    pub(crate) fn set_canonical(&mut self, idx: usize, v: bool) {
        if !Self::bit(&self.assigned, idx) {
            self.assigned_count += 1;
            Self::set_bit(&mut self.assigned, idx, true);
        }
        Self::set_bit(&mut self.signs, idx, v);
    }

    /// Unvalidated lookup for hot loops. Callers guarantee distinct in-range
    /// points.
    #[inline]
    pub(crate) fn get(&self, p: Point, q: Point, r: Point) -> Option<bool> {
        debug_assert!(p != q && q != r && p != r && p < self.n && q < self.n && r < self.n);
        let (mut a, mut b, mut c) = (p, q, r);
        let mut even = true;
        if a > b {
            std::mem::swap(&mut a, &mut b);
            even = !even;
        }
        if b > c {
            std::mem::swap(&mut b, &mut c);
            even = !even;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
            even = !even;
        }
        let idx = (binom3(self.n) - binom3(self.n - a))
            + (binom2(self.n - a - 1) - binom2(self.n - b))
            + (c - b - 1);
        self.canonical_value(idx).map(|v| if even { v } else { !v })
    }

    /// The value of an ordered triple, derived from the canonical slot.
    ///
    /// `None` when the canonical triple is unassigned.
    pub fn value_of(&self, t: OrientedTriple) -> Result<Option<bool>> {
        let (ct, parity) = self.validate(t)?;
        Ok(self
            .canonical_value(ct.index(self.n))
            .map(|v| parity.apply(v)))
    }

    /// A copy of this system with `value_of(t) = v`.
    ///
    /// Assigning a value already present is a no-op; assigning the opposite
    /// value reports [`Error::ConflictingAssignment`], since the requested
    /// data would contradict antisymmetry.
    pub fn assign(&self, t: OrientedTriple, v: bool) -> Result<Self> {
        let (ct, parity) = self.validate(t)?;
        let canonical = parity.apply(v);
        let idx = ct.index(self.n);
        match self.canonical_value(idx) {
            Some(existing) if existing != canonical => {
                Err(Error::ConflictingAssignment { triple: ct })
            }
            _ => {
                let mut out = self.clone();
                out.set_canonical(idx, canonical);
                Ok(out)
            }
        }
    }

    /// Assigned canonical triples with their stored values, lexicographic.
    pub fn assigned_triples(&self) -> impl Iterator<Item = (CanonicalTriple, bool)> + '_ {
        canonical_triples(self.n).filter_map(move |ct| {
            self.canonical_value(ct.index(self.n)).map(|v| (ct, v))
        })
    }

    /// Apply a relabeling permutation: the result values the triple
    /// `(perm[p], perm[q], perm[r])` as this system values `(p, q, r)`.
    pub fn relabel(&self, perm: &[Point]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::PointOutOfRange {
                point: perm.len(),
                n: self.n,
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_point(p)?;
            if seen[p] {
                return Err(Error::DuplicatePoint(p, p));
            }
            seen[p] = true;
        }
        let mut out = PartialTripleSystem::new(self.n);
        for (ct, v) in self.assigned_triples() {
            let [i, j, k] = ct.points();
            let image = OrientedTriple::new(perm[i], perm[j], perm[k]);
            out = out.assign(image, v)?;
        }
        Ok(out)
    }

    /// Parse the line-oriented triple-system text format.
    ///
    /// ```text
    /// points <n>
    /// <p> <q> <r> <+|->
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut system: Option<PartialTripleSystem> = None;
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
            match &mut system {
                None => {
                    if tokens.len() != 2 || tokens[0] != "points" {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("expected `points <n>`, found `{}`", content.trim()),
                        });
                    }
                    let n: usize = tokens[1].parse().map_err(|_| Error::Syntax {
                        line,
                        msg: format!("invalid point count `{}`", tokens[1]),
                    })?;
                    system = Some(PartialTripleSystem::new(n));
                }
                Some(sys) => {
                    if tokens.len() != 4 {
                        return Err(Error::Syntax {
                            line,
                            msg: format!(
                                "expected `<p> <q> <r> <+|->`, found `{}`",
                                content.trim()
                            ),
                        });
                    }
                    let mut ids = [0usize; 3];
                    for (slot, tok) in ids.iter_mut().zip(&tokens[..3]) {
                        *slot = tok.parse().map_err(|_| Error::Syntax {
                            line,
                            msg: format!("invalid point identifier `{tok}`"),
                        })?;
                    }
                    let value = match tokens[3] {
                        "+" => true,
                        "-" => false,
                        other => {
                            return Err(Error::Syntax {
                                line,
                                msg: format!("invalid sign `{other}`, expected `+` or `-`"),
                            })
                        }
                    };
                    *sys = sys
                        .assign(OrientedTriple::new(ids[0], ids[1], ids[2]), value)
                        .map_err(|e| e.at_line(line))?;
                }
            }
        }
        system.ok_or(Error::Syntax {
            line: text.lines().count() + 1,
            msg: "missing `points <n>` header".into(),
        })
    }

    /// Serialize to the text format: canonical triples in lexicographic
    /// order, sign column last.
    pub fn serialize(&self) -> String {
        let mut out = format!("points {}\n", self.n);
        for (ct, v) in self.assigned_triples() {
            let [i, j, k] = ct.points();
            out.push_str(&format!("{} {} {} {}\n", i, j, k, if v { '+' } else { '-' }));
        }
        out
    }
}

/// See [`PartialTripleSystem::parse`].
pub fn parse_system(text: &str) -> Result<PartialTripleSystem> {
    PartialTripleSystem::parse(text)
}

/// See [`PartialTripleSystem::serialize`].
pub fn serialize_system(s: &PartialTripleSystem) -> String {
    s.serialize()
}
