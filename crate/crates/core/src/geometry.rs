//! Realization of triple systems from planar point configurations.
//!
//! Convention: the value of `(p, q, r)` is `true` exactly when the points
//! appear in counterclockwise order, i.e. when the signed area determinant
//!
//! ```text
//! | qx - px   qy - py |
//! | rx - px   ry - py |
//! ```
//!
//! is positive. Integer coordinates are evaluated exactly in 128-bit
//! arithmetic; floating-point coordinates use the strict sign of the
//! determinant with no epsilon, so only an exact zero counts as collinear.

use num_traits::{Float, PrimInt};

use crate::error::{Error, Result};
use crate::system::{canonical_triples, PartialTripleSystem};

/// Coordinate scalars accepted by [`from_points`].
pub trait Coordinate: Copy + PartialEq {
    /// `Some(true)` counterclockwise, `Some(false)` clockwise, `None`
    /// collinear.
    fn orientation(a: (Self, Self), b: (Self, Self), c: (Self, Self)) -> Option<bool>;
}

fn int_orientation<S>(a: (S, S), b: (S, S), c: (S, S)) -> Option<bool>
where
    S: PrimInt + Into<i128>,
{
    let (ax, ay): (i128, i128) = (a.0.into(), a.1.into());
    let (bx, by): (i128, i128) = (b.0.into(), b.1.into());
    let (cx, cy): (i128, i128) = (c.0.into(), c.1.into());
    // Differences of i64 fit in i128; products can only overflow for
    // coordinates beyond ±2^62, which checked_mul turns into a loud failure
    // instead of a silent wrong sign.
    let det = (bx - ax)
        .checked_mul(cy - ay)
        .zip((by - ay).checked_mul(cx - ax))
        .map(|(lhs, rhs)| lhs - rhs)
        .expect("coordinate magnitude exceeds the exact evaluation range");
    match det.cmp(&0) {
        std::cmp::Ordering::Greater => Some(true),
        std::cmp::Ordering::Less => Some(false),
        std::cmp::Ordering::Equal => None,
    }
}

fn float_orientation<S: Float>(a: (S, S), b: (S, S), c: (S, S)) -> Option<bool> {
    let det = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    if det > S::zero() {
        Some(true)
    } else if det < S::zero() {
        Some(false)
    } else {
        // Exact zero and NaN both land here and are reported as degenerate.
        None
    }
}

macro_rules! int_coordinate {
    ($($t:ty),*) => {$(
        impl Coordinate for $t {
            fn orientation(a: (Self, Self), b: (Self, Self), c: (Self, Self)) -> Option<bool> {
                int_orientation(a, b, c)
            }
        }
    )*};
}

macro_rules! float_coordinate {
    ($($t:ty),*) => {$(
        impl Coordinate for $t {
            fn orientation(a: (Self, Self), b: (Self, Self), c: (Self, Self)) -> Option<bool> {
                float_orientation(a, b, c)
            }
        }
    )*};
}

int_coordinate!(i8, i16, i32, i64);
float_coordinate!(f32, f64);

/// Orientation of the triangle `(a, b, c)`.
pub fn orientation<S: Coordinate>(a: (S, S), b: (S, S), c: (S, S)) -> Option<bool> {
    S::orientation(a, b, c)
}

/// The complete triple system realized by a planar point configuration in
/// general position: the value of `(p, q, r)` is `true` iff the points are
/// counterclockwise.
pub fn from_points<S: Coordinate>(coords: &[(S, S)]) -> Result<PartialTripleSystem> {
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if coords[i] == coords[j] {
                return Err(Error::DuplicatePoint(i, j));
            }
        }
    }
    let n = coords.len();
    let mut system = PartialTripleSystem::new(n);
    for ct in canonical_triples(n) {
        let [i, j, k] = ct.points();
        match orientation(coords[i], coords[j], coords[k]) {
            Some(v) => system.set_canonical(ct.index(n), v),
            None => return Err(Error::CollinearTriple(i, j, k)),
        }
    }
    Ok(system)
}
