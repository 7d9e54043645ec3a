//! Exact rational rotation vectors.
//!
//! A cycle of period p on an n×n grid has rotation vector (Sx, Sy) / (p·n)
//! where (Sx, Sy) is the integer displacement summed along the cycle. Keeping
//! the pair over one common reduced denominator makes deduplication exact —
//! no float comparisons anywhere in the discretized pipeline.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{SerializeTuple, Serializer};
use serde::Serialize;

use crate::vec2::Vec2;

/// A planar vector with rational coordinates sharing one denominator,
/// normalized so that den ≥ 1 and gcd(|num_x|, |num_y|, den) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalVec {
    num_x: i64,
    num_y: i64,
    den: i64,
}

impl RationalVec {
    /// Build (num_x/den, num_y/den) in normalized form. Panics if den == 0.
    pub fn new(num_x: i64, num_y: i64, den: i64) -> RationalVec {
        assert!(den != 0, "rational vector with zero denominator");
        let sign = den.signum();
        let (mut nx, mut ny, mut d) = (num_x * sign, num_y * sign, den * sign);
        let g = gcd(gcd(nx.unsigned_abs(), ny.unsigned_abs()), d.unsigned_abs());
        if g > 1 {
            nx /= g as i64;
            ny /= g as i64;
            d /= g as i64;
        }
        RationalVec { num_x: nx, num_y: ny, den: d }
    }

    pub fn num_x(&self) -> i64 {
        self.num_x
    }

    pub fn num_y(&self) -> i64 {
        self.num_y
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn to_vec2(self) -> Vec2 {
        Vec2::new(self.num_x as f64 / self.den as f64, self.num_y as f64 / self.den as f64)
    }
}

// gcd(0, 0) = 0 never reaches the reduction: den ≥ 1 keeps the result ≥ 1.
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Exact lexicographic order by value (x first), via i128 cross-multiplication.
impl Ord for RationalVec {
    fn cmp(&self, other: &RationalVec) -> Ordering {
        let lx = self.num_x as i128 * other.den as i128;
        let rx = other.num_x as i128 * self.den as i128;
        lx.cmp(&rx).then_with(|| {
            let ly = self.num_y as i128 * other.den as i128;
            let ry = other.num_y as i128 * self.den as i128;
            ly.cmp(&ry)
        })
    }
}

impl PartialOrd for RationalVec {
    fn partial_cmp(&self, other: &RationalVec) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, {}/{})", self.num_x, self.den, self.num_y, self.den)
    }
}

// Serialized as the integer triple [num_x, num_y, den].
impl Serialize for RationalVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.num_x)?;
        t.serialize_element(&self.num_y)?;
        t.serialize_element(&self.den)?;
        t.end()
    }
}
