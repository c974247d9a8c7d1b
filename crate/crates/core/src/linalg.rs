//! Exact rank computations: fraction-free elimination over integral domains and an
//! incremental sparse echelon basis over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Laurent;

/// An integral domain with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// `self / rhs`, which the caller guarantees is exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(Zero::is_zero(&r));
        q
    }
}

impl ExactRing for Laurent {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        Laurent::div_exact(self, rhs).expect("Bareiss division is exact")
    }
}

/// Rank of a dense matrix by fraction-free (Bareiss) elimination.
pub fn rank<R: ExactRing>(mut m: Vec<Vec<R>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = R::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let v = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][c] = R::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// A row-echelon basis of sparse rational vectors, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    /// Pivot key -> reduced row whose smallest key is the pivot, normalized to pivot 1.
    rows: BTreeMap<K, BTreeMap<K, BigRational>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the remainder.
    pub fn reduce(&self, mut v: BTreeMap<K, BigRational>) -> BTreeMap<K, BigRational> {
        v.retain(|_, c| !c.is_zero());
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(k) => v
                    .range((core::ops::Bound::Excluded(k.clone()), core::ops::Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(row) = self.rows.get(&key) {
                let factor = v[&key].clone();
                for (k, c) in row {
                    let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                    *e -= &factor * c;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
            cursor = Some(key);
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the current basis.
    pub fn insert(&mut self, v: BTreeMap<K, BigRational>) -> bool {
        let rem = self.reduce(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let row: BTreeMap<K, BigRational> = rem.into_iter().map(|(k, c)| (k, c / &lead)).collect();
        self.rows.insert(pivot, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lp(c: &[i64]) -> Laurent {
        Laurent::from_dense(0, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn integer_rank() {
        let m: Vec<Vec<BigInt>> =
            [[1, 2, 3], [2, 4, 6], [1, 0, 1]].iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(rank(m), 2);
        assert_eq!(rank::<BigInt>(vec![vec![BigInt::from(0); 3]; 2]), 0);
    }

    #[test]
    fn laurent_rank() {
        // [[1, q], [q, q^2]] is singular; [[1, q], [q, 1]] is not.
        assert_eq!(rank(vec![vec![lp(&[1]), lp(&[0, 1])], vec![lp(&[0, 1]), lp(&[0, 0, 1])]]), 1);
        assert_eq!(rank(vec![vec![lp(&[1]), lp(&[0, 1])], vec![lp(&[0, 1]), lp(&[1])]]), 2);
        let m = vec![
            vec![lp(&[0]), lp(&[1, 1]), lp(&[2])],
            vec![lp(&[0]), lp(&[1, 2, 1]), lp(&[2, 2])],
            vec![lp(&[0]), lp(&[0, 1]), lp(&[1])],
        ];
        assert_eq!(rank(m), 2);
    }

    #[test]
    fn sparse_echelon() {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        let mut e = SparseEchelon::new();
        assert!(e.insert(BTreeMap::from([(1, r(1)), (2, r(2))])));
        assert!(e.insert(BTreeMap::from([(2, r(1)), (3, r(1))])));
        assert!(!e.insert(BTreeMap::from([(1, r(2)), (2, r(5)), (3, r(1))])));
        assert!(!e.insert(BTreeMap::new()));
        assert!(e.insert(BTreeMap::from([(3, r(7))])));
        assert_eq!(e.rank(), 3);
    }
}
