//! Downward paths from an even-floor vertex to floor 1 and their digit
//! encoding.
//!
//! A path from a class-k vertex on floor 2r is determined by r base-p
//! digits t_0..t_{r-1}. The low k digits are the base-p expansion of the
//! vertex position and are fixed; digits t_k..t_{r-2} range over 0..p and
//! the final digit t_{r-1} over 0..p-1. The branch taken at even floor 2j
//! consumes digit t_{k+r-j}, and the path ends at the floor-1 vertex whose
//! leg is t_{r-1}.

use num_bigint::BigUint;

use crate::arith::{big_pow, pow_checked, Count};
use crate::diagram::down_step;
use crate::error::{Error, Result};
use crate::vertex::{Block, HookPartition, VertexId};

/// Fixed digits (forced by the position) and inclusive bounds for the free
/// digits of paths out of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitDomain {
    /// t_0..t_{k-1}: base-p expansion of the position, least significant first.
    pub fixed: Vec<u64>,
    /// Inclusive maximum for each free digit t_k..t_{r-1}.
    pub free_max: Vec<u64>,
}

impl DigitDomain {
    /// Total digit count r.
    pub fn len(&self) -> usize {
        self.fixed.len() + self.free_max.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, digits: &[u64]) -> bool {
        digits.len() == self.len()
            && self
                .fixed
                .iter()
                .zip(digits)
                .all(|(expect, got)| expect == got)
            && self
                .free_max
                .iter()
                .zip(&digits[self.fixed.len()..])
                .all(|(max, got)| got <= max)
    }
}

/// The digit domain of paths out of `v`.
pub fn digit_domain(v: &VertexId) -> Result<DigitDomain> {
    if !v.is_even_floor() || v.is_top_class() {
        return Err(Error::TopClass(v.to_string()));
    }
    let p = v.p().get();
    let r = v.r();
    let k = v.class_k();
    let fixed = v.pos_digits(k as usize);
    let mut free_max: Vec<u64> = (k..r - 1).map(|_| p - 1).collect();
    free_max.push(p - 2);
    Ok(DigitDomain { fixed, free_max })
}

/// A materialized downward path: origin, digit vector, and the removed
/// blocks for indices 1..=2r-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    origin: VertexId,
    digits: Vec<u64>,
    blocks: Vec<Block>,
}

impl Path {
    pub fn origin(&self) -> &VertexId {
        &self.origin
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// The block removed between floors idx+1 and idx.
    pub fn block(&self, idx: u64) -> &Block {
        &self.blocks[(idx - 1) as usize]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Leg of the floor-1 vertex the path ends at; equals the last digit.
    pub fn terminal_leg(&self) -> u64 {
        *self.digits.last().expect("paths have at least one digit")
    }

    pub fn end_vertex(&self) -> VertexId {
        VertexId::new(self.origin.p(), 1, 0, self.terminal_leg())
            .expect("terminal vertex is valid by construction")
    }

    pub fn end_hook(&self) -> HookPartition {
        self.end_vertex().to_hook()
    }
}

/// Materializes the path selected by `digits` (the full vector t_0..t_{r-1})
/// by composing the single-step removal rules floor by floor.
pub fn path_from_digits(v: &VertexId, digits: &[u64]) -> Result<Path> {
    let dom = digit_domain(v)?;
    let r = v.r();
    let k = v.class_k();
    if digits.len() != r as usize {
        return Err(Error::OutOfRange {
            what: "digit count",
            value: digits.len() as u64,
            max: r,
        });
    }
    for (i, &d) in digits.iter().enumerate() {
        if i < k as usize {
            if d != dom.fixed[i] {
                return Err(Error::DigitMismatch {
                    index: i,
                    expected: dom.fixed[i],
                    got: d,
                });
            }
        } else {
            let max = dom.free_max[i - k as usize];
            if d > max {
                return Err(Error::OutOfRange {
                    what: "digit",
                    value: d,
                    max,
                });
            }
        }
    }

    let mut blocks = vec![Block::empty(0); (2 * r - 1) as usize];
    let mut cur = *v;
    while cur.floor() > 1 {
        let choice = if cur.is_even_floor() && !cur.is_top_class() {
            let j = cur.floor() / 2;
            digits[(k + r - j) as usize]
        } else {
            0
        };
        let (next, block) = down_step(&cur, choice)?;
        blocks[(cur.floor() - 2) as usize] = block;
        cur = next;
    }
    debug_assert_eq!(cur.pos(), digits[(r - 1) as usize]);
    Ok(Path {
        origin: *v,
        digits: digits.to_vec(),
        blocks,
    })
}

/// Streaming enumeration of a path set in lexicographic digit order,
/// optionally restricted to one terminal leg.
pub struct Paths {
    origin: VertexId,
    domain: DigitDomain,
    end_leg: Option<u64>,
    current: Option<Vec<u64>>,
}

impl Paths {
    pub fn origin(&self) -> &VertexId {
        &self.origin
    }

    pub fn end_leg(&self) -> Option<u64> {
        self.end_leg
    }

    fn advance(&mut self) {
        let Some(digits) = self.current.as_mut() else {
            return;
        };
        let fixed_len = self.domain.fixed.len();
        // the last digit is pinned when filtering by terminal leg
        let writable = digits.len() - usize::from(self.end_leg.is_some());
        let mut i = writable;
        while i > fixed_len {
            i -= 1;
            let max = self.domain.free_max[i - fixed_len];
            if digits[i] < max {
                digits[i] += 1;
                for d in digits.iter_mut().take(writable).skip(i + 1) {
                    *d = 0;
                }
                return;
            }
        }
        self.current = None;
    }
}

impl Iterator for Paths {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let digits = self.current.clone()?;
        self.advance();
        Some(path_from_digits(&self.origin, &digits).expect("enumerated digits are in domain"))
    }
}

/// All paths out of `v`, optionally those ending at leg `end_leg`.
pub fn enumerate_paths(v: &VertexId, end_leg: Option<u64>) -> Result<Paths> {
    let domain = digit_domain(v)?;
    let p = v.p().get();
    if let Some(leg) = end_leg {
        if leg > p - 2 {
            return Err(Error::OutOfRange {
                what: "terminal leg",
                value: leg,
                max: p - 2,
            });
        }
    }
    let mut first = domain.fixed.clone();
    first.extend(domain.free_max.iter().map(|_| 0));
    if let Some(leg) = end_leg {
        *first.last_mut().expect("non-empty digits") = leg;
    }
    Ok(Paths {
        origin: *v,
        domain,
        end_leg,
        current: Some(first),
    })
}

/// Closed-form path count p^(s-1) * (p-1); must equal the enumerated count.
pub fn path_count(v: &VertexId) -> Result<Count> {
    if !v.is_even_floor() || v.is_top_class() {
        return Err(Error::TopClass(v.to_string()));
    }
    let p = v.p().get();
    Ok(big_pow(p, v.s() - 1) * BigUint::from(p - 1))
}

/// Path count as u64, for budget arithmetic.
pub fn path_count_u64(v: &VertexId) -> Result<u64> {
    if !v.is_even_floor() || v.is_top_class() {
        return Err(Error::TopClass(v.to_string()));
    }
    let p = v.p().get();
    pow_checked(p, v.s() - 1, "path count")?
        .checked_mul(p - 1)
        .ok_or(Error::Overflow("path count"))
}
