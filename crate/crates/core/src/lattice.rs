//! Exact integer linear algebra on Z^3: volumes, the semigroup ordering,
//! coordinate permutations and plane normals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A vector in Z^3, stored as the coefficients of (a1, a2, a3).
///
/// The derived `Ord` compares `n1`, then `n2`, then `n3`, which is the
/// lexicographic ordering with a3 < a2 < a1. It is a semigroup ordering, and
/// every nonzero vector with nonnegative coefficients is greater than zero.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Root {
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
}

pub const ALPHA1: Root = Root::new(1, 0, 0);
pub const ALPHA2: Root = Root::new(0, 1, 0);
pub const ALPHA3: Root = Root::new(0, 0, 1);
pub const SIMPLE: [Root; 3] = [ALPHA1, ALPHA2, ALPHA3];

/// All six coordinate permutations. `v.permuted(p)` picks coordinate `p[i]`
/// of `v` as coordinate `i` of the result.
pub const S3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

impl Root {
    pub const fn new(n1: i64, n2: i64, n3: i64) -> Self {
        Root { n1, n2, n3 }
    }

    pub fn coords(self) -> [i64; 3] {
        [self.n1, self.n2, self.n3]
    }

    pub fn from_coords(c: [i64; 3]) -> Self {
        Root::new(c[0], c[1], c[2])
    }

    pub fn is_zero(self) -> bool {
        self == Root::new(0, 0, 0)
    }

    /// Nonnegative coefficients and not zero.
    pub fn is_positive(self) -> bool {
        self.n1 >= 0 && self.n2 >= 0 && self.n3 >= 0 && !self.is_zero()
    }

    /// Nonpositive coefficients and not zero.
    pub fn is_negative(self) -> bool {
        (-self).is_positive()
    }

    /// Some coefficient positive and some negative; never a root.
    pub fn is_mixed(self) -> bool {
        !self.is_zero() && !self.is_positive() && !self.is_negative()
    }

    pub fn height(self) -> i64 {
        self.n1 + self.n2 + self.n3
    }

    pub fn dot(self, other: Root) -> i64 {
        self.n1 * other.n1 + self.n2 * other.n2 + self.n3 * other.n3
    }

    pub fn cross(self, other: Root) -> Root {
        Root::new(
            self.n2 * other.n3 - self.n3 * other.n2,
            self.n3 * other.n1 - self.n1 * other.n3,
            self.n1 * other.n2 - self.n2 * other.n1,
        )
    }

    pub fn permuted(self, perm: [usize; 3]) -> Root {
        let c = self.coords();
        Root::new(c[perm[0]], c[perm[1]], c[perm[2]])
    }
}

impl Add for Root {
    type Output = Root;
    fn add(self, o: Root) -> Root {
        Root::new(self.n1 + o.n1, self.n2 + o.n2, self.n3 + o.n3)
    }
}

impl Sub for Root {
    type Output = Root;
    fn sub(self, o: Root) -> Root {
        Root::new(self.n1 - o.n1, self.n2 - o.n2, self.n3 - o.n3)
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root::new(-self.n1, -self.n2, -self.n3)
    }
}

impl Mul<Root> for i64 {
    type Output = Root;
    fn mul(self, v: Root) -> Root {
        Root::new(self * v.n1, self * v.n2, self * v.n3)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.n2, self.n3)
    }
}

/// The lexicographic ordering with a3 < a2 < a1 (same as `Root`'s `Ord`).
pub fn lex_less(a: Root, b: Root) -> bool {
    a < b
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest v such that the vector is v times a lattice vector: the gcd of the
/// absolute coefficients.
pub fn vol1(v: Root) -> Result<i64> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(gcd(gcd(v.n1, v.n2), v.n3))
}

/// Gcd of the three 2x2 minors of the 3x2 matrix (a b); zero exactly when
/// a and b are linearly dependent.
pub fn vol2(a: Root, b: Root) -> i64 {
    let c = a.cross(b);
    gcd(gcd(c.n1, c.n2), c.n3)
}

/// Absolute determinant of the 3x3 matrix with columns a, b, c.
pub fn vol3(a: Root, b: Root, c: Root) -> i64 {
    a.cross(b).dot(c).abs()
}

/// An integer normal vector of a plane, sign-normalized so that the first
/// nonzero entry is positive. Kept unreduced: for the cross product of a
/// plane's defining pair, |dot(normal, v)| = Vol_3(v, pair) exactly.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneNormal {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
}

impl PlaneNormal {
    fn sign_normalized(v: Root) -> PlaneNormal {
        let flip = match (v.n1, v.n2, v.n3) {
            (0, 0, m) => m < 0,
            (0, m, _) => m < 0,
            (m, _, _) => m < 0,
        };
        let v = if flip { -v } else { v };
        PlaneNormal { m1: v.n1, m2: v.n2, m3: v.n3 }
    }

    pub fn dot(self, v: Root) -> i64 {
        self.m1 * v.n1 + self.m2 * v.n2 + self.m3 * v.n3
    }

    fn as_root(self) -> Root {
        Root::new(self.m1, self.m2, self.m3)
    }

    /// Divided by the gcd of its entries; the key under which two coplanar
    /// pairs agree even when their cross products differ by a factor.
    pub fn primitive(self) -> PlaneNormal {
        let g = vol1(self.as_root()).expect("normal is nonzero");
        PlaneNormal { m1: self.m1 / g, m2: self.m2 / g, m3: self.m3 / g }
    }
}

impl fmt::Debug for PlaneNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.m1, self.m2, self.m3)
    }
}

/// Cross product of two independent roots, sign-normalized.
pub fn plane_normal(a: Root, b: Root) -> Result<PlaneNormal> {
    let c = a.cross(b);
    if c.is_zero() {
        return Err(Error::DependentRoots(a, b));
    }
    Ok(PlaneNormal::sign_normalized(c))
}
