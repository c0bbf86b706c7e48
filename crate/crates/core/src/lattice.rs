//! Subgroups of `Z²` in Hermite normal form.

use serde::{Deserialize, Serialize};

use crate::gain::GainVector;

/// A subgroup of `Z²` stored in a canonical basis, so that equal subgroups
/// compare equal.
///
/// * rank 0: empty basis;
/// * rank 1: one generator whose last nonzero coordinate is positive;
/// * rank 2: `[(x, 0), (y1, y2)]` with `x > 0`, `y2 > 0` and `0 <= y1 < x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GainSpace {
    basis: Vec<GainVector>,
}

impl GainSpace {
    pub fn trivial() -> Self {
        GainSpace { basis: Vec::new() }
    }

    /// The subgroup generated by `generators`.
    pub fn generated_by<I: IntoIterator<Item = GainVector>>(generators: I) -> Self {
        let mut rows: Vec<GainVector> = generators.into_iter().filter(|g| !g.is_zero()).collect();

        // Euclid on the second coordinate until at most one row keeps it.
        loop {
            rows.retain(|g| !g.is_zero());
            let with_b: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].b != 0).collect();
            if with_b.len() <= 1 {
                break;
            }
            let p = *with_b.iter().min_by_key(|&&i| rows[i].b.abs()).unwrap();
            let pivot = rows[p];
            for &i in &with_b {
                if i != p {
                    let q = rows[i].b / pivot.b;
                    rows[i] -= q * pivot;
                }
            }
        }

        let pivot = rows.iter().copied().find(|g| g.b != 0);
        let x = rows
            .iter()
            .filter(|g| g.b == 0)
            .fold(0i64, |acc, g| num_integer::gcd(acc, g.a));

        let mut basis = Vec::with_capacity(2);
        if x != 0 {
            basis.push(GainVector::new(x, 0));
        }
        if let Some(mut p) = pivot {
            if p.b < 0 {
                p = -p;
            }
            if x != 0 {
                p.a = p.a.rem_euclid(x);
            }
            basis.push(p);
        }
        GainSpace { basis }
    }

    pub fn basis(&self) -> &[GainVector] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, g: GainVector) -> bool {
        match self.basis.as_slice() {
            [] => g.is_zero(),
            [p] => {
                // g = t * p for an integer t
                if p.b != 0 {
                    g.b % p.b == 0 && (g.b / p.b) * p.a == g.a
                } else {
                    g.b == 0 && g.a % p.a == 0
                }
            }
            [xv, p] => {
                if g.b % p.b != 0 {
                    return false;
                }
                let rest = g - (g.b / p.b) * *p;
                rest.b == 0 && rest.a % xv.a == 0
            }
            _ => unreachable!("basis has at most two vectors"),
        }
    }

    /// Sum of two subgroups.
    pub fn join(&self, other: &GainSpace) -> GainSpace {
        GainSpace::generated_by(self.basis.iter().chain(other.basis.iter()).copied())
    }

    /// Index in `Z²` for full-rank subgroups.
    pub fn index(&self) -> Option<i64> {
        match self.basis.as_slice() {
            [xv, p] => Some(xv.a * p.b),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GainVector {
        GainVector::new(a, b)
    }

    #[test]
    fn worked_example_generators() {
        let s = GainSpace::generated_by([g(2, 2), g(4, 0)]);
        assert_eq!(s.basis(), &[g(4, 0), g(2, 2)]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.index(), Some(8));
        // Not all of 2Z x 2Z: (2, 0) is missing.
        assert!(!s.contains(g(2, 0)));
        assert!(s.contains(g(6, 2)));
    }

    #[test]
    fn small_cases() {
        assert_eq!(GainSpace::generated_by([]).rank(), 0);
        assert_eq!(GainSpace::generated_by([g(0, 0)]).rank(), 0);
        assert_eq!(
            GainSpace::generated_by([g(-3, 0), g(6, 0)]).basis(),
            &[g(3, 0)]
        );
        assert_eq!(
            GainSpace::generated_by([g(2, -4), g(-1, 2)]).basis(),
            &[g(-1, 2)]
        );
        assert_eq!(
            GainSpace::generated_by([g(1, 0), g(0, 1)]).basis(),
            &[g(1, 0), g(0, 1)]
        );
        assert_eq!(
            GainSpace::generated_by([g(3, 1), g(0, 1)]).basis(),
            &[g(3, 0), g(0, 1)]
        );
    }

    proptest! {
        #[test]
        fn canonical_under_generator_changes(
            gens in prop::collection::vec((-6i64..=6, -6i64..=6), 0..5),
            perm_seed in 0usize..24,
            coeff in -3i64..=3,
        ) {
            let gens: Vec<GainVector> = gens.into_iter().map(GainVector::from).collect();
            let s = GainSpace::generated_by(gens.clone());
            let mut shuffled = gens.clone();
            if !shuffled.is_empty() {
                let n = shuffled.len();
                shuffled.rotate_left(perm_seed % n);
                // an elementary row operation does not change the subgroup
                if n >= 2 {
                    let extra = coeff * shuffled[1];
                    shuffled[0] += extra;
                }
            }
            prop_assert_eq!(&s, &GainSpace::generated_by(shuffled));
            for v in &gens {
                prop_assert!(s.contains(*v));
            }
            for b in s.basis() {
                prop_assert!(!b.is_zero());
            }
        }
    }
}
