use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An element of `Z²`, measured in lattice periods.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GainVector {
    pub a: i64,
    pub b: i64,
}

impl GainVector {
    pub const ZERO: GainVector = GainVector { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        GainVector { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl From<[i64; 2]> for GainVector {
    fn from([a, b]: [i64; 2]) -> Self {
        GainVector { a, b }
    }
}

impl From<GainVector> for [i64; 2] {
    fn from(g: GainVector) -> Self {
        [g.a, g.b]
    }
}

impl From<(i64, i64)> for GainVector {
    fn from((a, b): (i64, i64)) -> Self {
        GainVector { a, b }
    }
}

impl fmt::Display for GainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for GainVector {
    type Output = GainVector;
    fn add(self, rhs: GainVector) -> GainVector {
        GainVector::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for GainVector {
    type Output = GainVector;
    fn sub(self, rhs: GainVector) -> GainVector {
        GainVector::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for GainVector {
    type Output = GainVector;
    fn neg(self) -> GainVector {
        GainVector::new(-self.a, -self.b)
    }
}

impl Mul<GainVector> for i64 {
    type Output = GainVector;
    fn mul(self, rhs: GainVector) -> GainVector {
        GainVector::new(self * rhs.a, self * rhs.b)
    }
}

impl AddAssign for GainVector {
    fn add_assign(&mut self, rhs: GainVector) {
        self.a += rhs.a;
        self.b += rhs.b;
    }
}

impl SubAssign for GainVector {
    fn sub_assign(&mut self, rhs: GainVector) {
        self.a -= rhs.a;
        self.b -= rhs.b;
    }
}

impl std::iter::Sum for GainVector {
    fn sum<I: Iterator<Item = GainVector>>(iter: I) -> Self {
        iter.fold(GainVector::ZERO, |acc, g| acc + g)
    }
}
