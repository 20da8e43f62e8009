//! Descent and inversion statistics on paths, path signs, sign balances,
//! and per-block descent totals.
//!
//! Two blocks are comparable only when they have the same size; for a path
//! out of a class-k vertex that is exactly the index range 2k+2..=2r-1,
//! where every block has size p^k (p-1). Two boundary conventions apply:
//! index 2k carries a descent (and an inversion) precisely when the block
//! above it has horizontal part p^k t with t < (p-1)/2, and index 2k+1
//! never carries either.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::arith::{big_pow, geom_sum, Count, OddPrime};
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, path_count_u64, Path};
use crate::vertex::{Block, VertexId};

/// Strict block dominance: more horizontal nodes and fewer vertical ones.
/// Only defined between blocks of equal size.
pub fn block_gt(left: &Block, right: &Block) -> Result<bool> {
    if left.size() != right.size() {
        return Err(Error::SizeMismatch {
            left: left.size(),
            right: right.size(),
        });
    }
    Ok(left.horiz > right.horiz && left.vert < right.vert)
}

fn gt_same_size(left: &Block, right: &Block) -> bool {
    debug_assert_eq!(left.size(), right.size());
    left.horiz > right.horiz
}

/// Descent indices of a path; a subset of {2k} ∪ [2k+2, 2r-2].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentSet {
    pub indices: BTreeSet<u64>,
}

impl DescentSet {
    pub fn des(&self) -> u64 {
        self.indices.len() as u64
    }
}

pub fn descent_set(path: &Path) -> DescentSet {
    let v = path.origin();
    let p = v.p();
    let r = v.r();
    let k = v.class_k();
    let mut indices = BTreeSet::new();
    if path.terminal_leg() < p.half() {
        indices.insert(2 * k);
    }
    for i in 2 * k + 2..=2 * r - 2 {
        if gt_same_size(path.block(i), path.block(i + 1)) {
            indices.insert(i);
        }
    }
    DescentSet { indices }
}

/// Inversion pairs of a path plus the boundary marker at index 2k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionSet {
    pub pairs: BTreeSet<(u64, u64)>,
    pub boundary: bool,
}

impl InversionSet {
    pub fn inv(&self) -> u64 {
        self.pairs.len() as u64 + u64::from(self.boundary)
    }
}

pub fn inversion_set(path: &Path) -> InversionSet {
    let v = path.origin();
    let p = v.p();
    let r = v.r();
    let k = v.class_k();
    let mut pairs = BTreeSet::new();
    for i in 2 * k + 2..=2 * r - 1 {
        for j in i + 1..=2 * r - 1 {
            if gt_same_size(path.block(i), path.block(j)) {
                pairs.insert((i, j));
            }
        }
    }
    InversionSet {
        pairs,
        boundary: path.terminal_leg() < p.half(),
    }
}

/// (-1)^inv(P).
pub fn sign(path: &Path) -> i32 {
    if inversion_set(path).inv().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sum of path signs over all paths out of `v`. Zero for every class-k
/// vertex with k <= r-1; top-class vertices have a single forced path of
/// sign +1.
pub fn sign_balance(v: &VertexId) -> Result<BigInt> {
    if !v.is_even_floor() {
        return Err(Error::InvalidVertex {
            floor: v.floor(),
            class_k: v.class_k(),
            pos: v.pos(),
        });
    }
    if v.is_top_class() {
        return Ok(BigInt::one());
    }
    let mut balance = BigInt::ZERO;
    for path in enumerate_paths(v, None)? {
        balance += sign(&path);
    }
    Ok(balance)
}

/// The half-open interval index t of a class-k position: t = 0 for l = 0,
/// otherwise the unique t with j_{t-1} < l <= j_t.
pub fn t_interval_index(p: OddPrime, k: u64, l: u64) -> Result<u64> {
    if k == 0 || l == 0 {
        return Ok(0);
    }
    let g = geom_sum(p, k)?;
    Ok(l.div_ceil(g))
}

/// The two block positions whose descent totals have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentBlock {
    /// Block 2r-2, the next-to-last comparison of the path.
    NextToLast,
    /// Block 2r-3.
    SecondToLast,
}

impl DescentBlock {
    /// The descent index this block occupies for paths from floor 2r.
    pub fn index(self, r: u64) -> u64 {
        match self {
            DescentBlock::NextToLast => 2 * r - 2,
            DescentBlock::SecondToLast => 2 * r - 3,
        }
    }
}

/// Closed-form total of descents at `which` over all paths from the
/// class-k depth-s vertex at position l.
pub fn closed_descent_total(
    p: OddPrime,
    k: u64,
    s: u64,
    l: u64,
    which: DescentBlock,
) -> Result<Count> {
    let pu = p.get();
    match which {
        DescentBlock::NextToLast => {
            if s == 1 {
                // boundary-convention descents only: (p-1)/2 of the p-1 paths
                return Ok(BigUint::from(p.half()));
            }
            let low = k >= 1 && l < (pu.pow(k as u32) - 1) / 2;
            let factor = if low { pu.div_ceil(2) } else { (pu - 1) / 2 };
            Ok(big_pow(pu, s - 2) * BigUint::from((pu - 1) * factor))
        }
        DescentBlock::SecondToLast => {
            if s < 2 {
                return Err(Error::OutOfRange {
                    what: "descent block",
                    value: 0,
                    max: 0,
                });
            }
            if s == 2 {
                // index 2k+1 never carries a descent
                return Ok(BigUint::ZERO);
            }
            let t = t_interval_index(p, k, l)?;
            Ok(big_pow(pu, s - 3) * BigUint::from((pu - 1) * (pu * (pu - 1) / 2 + t)))
        }
    }
}

/// Brute-force total and closed-form prediction, reported together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTotals {
    pub enumerated: Count,
    pub closed: Count,
}

pub fn descent_totals_at(v: &VertexId, which: DescentBlock, budget: u64) -> Result<DescentTotals> {
    let needed = path_count_u64(v)?;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            required: needed.to_string(),
            budget,
        });
    }
    let r = v.r();
    let s = v.s();
    if matches!(which, DescentBlock::SecondToLast) && s < 2 {
        return Err(Error::OutOfRange {
            what: "descent block",
            value: 2 * r - 3,
            max: 2 * r - 2,
        });
    }
    let target = which.index(r);
    let mut total: u64 = 0;
    for path in enumerate_paths(v, None)? {
        if descent_set(&path).indices.contains(&target) {
            total += 1;
        }
    }
    Ok(DescentTotals {
        enumerated: BigUint::from(total),
        closed: closed_descent_total(v.p(), v.class_k(), s, v.pos(), which)?,
    })
}

/// Per-path descent law at block 2r-2 as a function of the first branch
/// digit t' (valid for depth s >= 2).
pub fn predicted_next_to_last(p: OddPrime, k: u64, l: u64, t_prime: u64) -> bool {
    let pu = p.get();
    if k == 0 {
        t_prime <= (pu - 3) / 2
    } else if l < (pu.pow(k as u32) - 1) / 2 {
        t_prime <= (pu - 1) / 2
    } else {
        t_prime <= (pu - 3) / 2
    }
}

/// Per-path descent law at block 2r-3 as a function of the first two branch
/// digits t', t'' (valid for depth s >= 3).
pub fn predicted_second_to_last(p: OddPrime, k: u64, l: u64, t_prime: u64, t_second: u64) -> bool {
    let pu = p.get();
    let t = t_interval_index(p, k, l).expect("interval index for valid l");
    if t >= 1 && t_prime < t {
        t_second >= pu - 1 - t_prime
    } else {
        t_second >= pu - t_prime
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::path_from_digits;
    use num_traits::Zero;

    fn vid(pv: u64, f: u64, k: u64, l: u64) -> VertexId {
        VertexId::new(OddPrime::new(pv).unwrap(), f, k, l).unwrap()
    }

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn block_order() {
        let a = Block::new(1, 2, 0);
        let b = Block::new(2, 0, 2);
        let c = Block::new(3, 1, 1);
        assert!(block_gt(&a, &b).unwrap());
        assert!(!block_gt(&c, &c).unwrap());
        assert!(!block_gt(&b, &a).unwrap());
        assert!(matches!(
            block_gt(&a, &Block::new(4, 1, 2)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn descent_sets_p3_floor4() {
        let v = vid(3, 4, 0, 0);
        let des = |d: &[u64]| {
            descent_set(&path_from_digits(&v, d).unwrap())
                .indices
                .into_iter()
                .collect::<Vec<_>>()
        };
        assert_eq!(des(&[0, 0]), vec![0, 2]);
        assert_eq!(des(&[2, 1]), Vec::<u64>::new());
        assert_eq!(des(&[1, 0]), vec![0]);
    }

    #[test]
    fn inversion_sets_p3_floor4() {
        let v = vid(3, 4, 0, 0);
        let inv_of = |d: &[u64]| inversion_set(&path_from_digits(&v, d).unwrap());

        let i = inv_of(&[0, 0]);
        assert_eq!(i.pairs.iter().copied().collect::<Vec<_>>(), vec![(2, 3)]);
        assert!(i.boundary);
        assert_eq!(i.inv(), 2);

        let i = inv_of(&[1, 1]);
        assert_eq!(i.inv(), 0);

        let i = inv_of(&[2, 0]);
        assert!(i.pairs.is_empty());
        assert!(i.boundary);
        assert_eq!(i.inv(), 1);
    }

    #[test]
    fn signs_p3_floor4() {
        let v = vid(3, 4, 0, 0);
        let sgn = |d: &[u64]| sign(&path_from_digits(&v, d).unwrap());
        assert_eq!(sgn(&[0, 0]), 1);
        assert_eq!(sgn(&[2, 0]), -1);
        assert_eq!(sgn(&[1, 1]), 1);
    }

    #[test]
    fn sign_balance_vanishes() {
        assert!(sign_balance(&vid(3, 4, 0, 0)).unwrap().is_zero());
        assert!(sign_balance(&vid(5, 10, 2, 9)).unwrap().is_zero());
        assert!(sign_balance(&vid(3, 2, 0, 0)).unwrap().is_zero());
    }

    #[test]
    fn sign_balance_top_class_single_path() {
        assert!(sign_balance(&vid(3, 4, 2, 3)).unwrap().is_one());
    }

    #[test]
    fn descent_totals_examples() {
        let t = descent_totals_at(&vid(3, 4, 0, 0), DescentBlock::NextToLast, 1 << 20).unwrap();
        assert_eq!(t.enumerated, BigUint::from(2u32));
        assert_eq!(t.closed, BigUint::from(2u32));

        // depth-1 vertices: total (p-1)/2 at the boundary index
        for l in 0..25 {
            let t = descent_totals_at(&vid(5, 6, 2, l), DescentBlock::NextToLast, 1 << 20).unwrap();
            assert_eq!(t.enumerated, BigUint::from(2u32));
            assert_eq!(t.closed, BigUint::from(2u32));
        }

        let t = descent_totals_at(&vid(5, 10, 2, 9), DescentBlock::SecondToLast, 1 << 20).unwrap();
        assert_eq!(t.enumerated, BigUint::from(48u32));
        assert_eq!(t.closed, BigUint::from(48u32));
    }

    #[test]
    fn interval_index() {
        // p=5, k=2: thresholds at 6t
        assert_eq!(t_interval_index(p(5), 2, 0).unwrap(), 0);
        assert_eq!(t_interval_index(p(5), 2, 1).unwrap(), 1);
        assert_eq!(t_interval_index(p(5), 2, 6).unwrap(), 1);
        assert_eq!(t_interval_index(p(5), 2, 7).unwrap(), 2);
        assert_eq!(t_interval_index(p(5), 2, 12).unwrap(), 2);
        assert_eq!(t_interval_index(p(5), 2, 13).unwrap(), 3);
        assert_eq!(t_interval_index(p(5), 2, 24).unwrap(), 4);
    }
}
