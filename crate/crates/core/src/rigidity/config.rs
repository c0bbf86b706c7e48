use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::GainVector;

/// A point of the plane with exact rational coordinates.
pub type Point = [BigRational; 2];

/// Denominator of randomly sampled coordinates.
pub const SAMPLE_DENOMINATOR: u64 = 1 << 31;

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Lattice matrix with rows `(x, 0)` and `(y1, y2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMatrix {
    x: BigRational,
    y1: BigRational,
    y2: BigRational,
}

impl LatticeMatrix {
    pub fn new(x: BigRational, y1: BigRational, y2: BigRational) -> Result<Self> {
        if x.is_zero() || y2.is_zero() {
            return Err(Error::InvalidConfig(
                "lattice rows must be independent (x != 0, y2 != 0)".into(),
            ));
        }
        Ok(LatticeMatrix { x, y1, y2 })
    }

    /// The unit torus.
    pub fn identity() -> Self {
        LatticeMatrix {
            x: BigRational::one(),
            y1: BigRational::zero(),
            y2: BigRational::one(),
        }
    }

    pub fn rows(&self) -> [[BigRational; 2]; 2] {
        [
            [self.x.clone(), BigRational::zero()],
            [self.y1.clone(), self.y2.clone()],
        ]
    }

    /// The row vector `m L0`.
    pub fn translate(&self, m: GainVector) -> Point {
        let (a, b) = (rat(m.a), rat(m.b));
        [&a * &self.x + &b * &self.y1, b * &self.y2]
    }

    /// A random lower-triangular lattice with entries `k/q`, `k` in
    /// `[-bound, bound]`, `q` in `[1, bound]`, diagonal nonzero.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let mut entry = |nonzero: bool| loop {
            let n = rng.random_range(-bound..=bound);
            let d = rng.random_range(1..=bound);
            if !nonzero || n != 0 {
                break BigRational::new(n.into(), d.into());
            }
        };
        let x = entry(true);
        let y1 = entry(false);
        let y2 = entry(true);
        LatticeMatrix { x, y1, y2 }
    }
}

impl Default for LatticeMatrix {
    fn default() -> Self {
        Self::identity()
    }
}

/// Vertex positions on the torus `[0, 1)²` and the lattice matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    positions: Vec<Point>,
    lattice: LatticeMatrix,
}

impl Configuration {
    pub fn new(positions: Vec<Point>, lattice: LatticeMatrix) -> Result<Self> {
        let unit = BigRational::one();
        for (i, p) in positions.iter().enumerate() {
            if p.iter().any(|c| c < &BigRational::zero() || c >= &unit) {
                return Err(Error::InvalidConfig(format!(
                    "vertex {} at ({}, {}) lies outside [0,1)^2",
                    i + 1,
                    p[0],
                    p[1]
                )));
            }
        }
        Ok(Configuration { positions, lattice })
    }

    /// Positions `n / 2^31` with numerators uniform in `[1, 2^31)`.
    pub fn random<R: Rng + ?Sized>(
        vertex_count: usize,
        lattice: LatticeMatrix,
        rng: &mut R,
    ) -> Self {
        let denom = BigInt::from(SAMPLE_DENOMINATOR);
        let positions = (0..vertex_count)
            .map(|_| {
                let mut coord = || {
                    BigRational::new(
                        BigInt::from(rng.random_range(1..SAMPLE_DENOMINATOR)),
                        denom.clone(),
                    )
                };
                [coord(), coord()]
            })
            .collect();
        Configuration { positions, lattice }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Position of vertex `v` (1-based).
    pub fn position(&self, v: u32) -> &Point {
        &self.positions[v as usize - 1]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn lattice(&self) -> &LatticeMatrix {
        &self.lattice
    }

    pub fn with_lattice(&self, lattice: LatticeMatrix) -> Self {
        Configuration {
            positions: self.positions.clone(),
            lattice,
        }
    }

    pub(crate) fn ensure_covers(&self, vertex_count: usize) -> Result<()> {
        if self.positions.len() < vertex_count {
            return Err(Error::InvalidConfig(format!(
                "configuration places {} vertices, graph has {vertex_count}",
                self.positions.len()
            )));
        }
        Ok(())
    }

    pub fn to_file(&self) -> ConfigFile {
        let s = |q: &BigRational| q.to_string();
        let rows = self.lattice.rows();
        ConfigFile {
            lattice: rows
                .iter()
                .map(|r| [s(&r[0]), s(&r[1])])
                .collect::<Vec<_>>()
                .try_into()
                .unwrap(),
            positions: self
                .positions
                .iter()
                .map(|p| [s(&p[0]), s(&p[1])])
                .collect(),
        }
    }
}

/// On-disk configuration:
/// `{"lattice": [["x","0"],["y1","y2"]], "positions": [["p/q","p/q"], ...]}`.
/// `lattice` may be omitted for the unit torus.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default = "unit_lattice_strings")]
    pub lattice: [[String; 2]; 2],
    pub positions: Vec<[String; 2]>,
}

fn unit_lattice_strings() -> [[String; 2]; 2] {
    [["1".into(), "0".into()], ["0".into(), "1".into()]]
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|_| Error::InvalidConfig(format!("`{s}` is not a rational number")))
}

impl TryFrom<ConfigFile> for Configuration {
    type Error = Error;

    fn try_from(file: ConfigFile) -> Result<Self> {
        let [[x, zero], [y1, y2]] = &file.lattice;
        if !parse_rational(zero)?.is_zero() {
            return Err(Error::InvalidConfig(
                "lattice matrix must be lower triangular".into(),
            ));
        }
        let lattice =
            LatticeMatrix::new(parse_rational(x)?, parse_rational(y1)?, parse_rational(y2)?)?;
        let positions = file
            .positions
            .iter()
            .map(|[a, b]| Ok([parse_rational(a)?, parse_rational(b)?]))
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(positions, lattice)
    }
}
