//! Floor slices and the four edge families of the branching diagram.
//!
//! Edges connect consecutive floors. Between an even floor `2r` and the odd
//! floor `2r-1` below it, positions within class k are related by
//! `odd = even + p^k * t` (the high base-p digit is free); between an odd
//! floor `2r-1` and the even floor `2r-2` below it they are related by
//! integer division by p (the low digit is stripped). The block carried by
//! an edge between floors f and f-1 has index f-1.
//!
//! Edges are generated by formula, never by searching partitions; the test
//! suite validates every edge against the hook-difference oracle and checks
//! that the upward and downward generators are mutual inverses.

use crate::arith::{geom_sum, pow_checked, OddPrime};
use crate::error::{Error, Result};
use crate::vertex::{Block, VertexId};

/// An edge of the diagram; `upper.floor == lower.floor + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub upper: VertexId,
    pub lower: VertexId,
    pub block: Block,
}

impl Edge {
    fn new(upper: VertexId, lower: VertexId, block: Block) -> Self {
        debug_assert_eq!(upper.floor(), lower.floor() + 1);
        debug_assert_eq!(block.idx, lower.floor());
        debug_assert_eq!(
            upper.to_hook().size - lower.to_hook().size,
            block.size(),
            "block size must equal the hook size difference"
        );
        Edge {
            upper,
            lower,
            block,
        }
    }
}

/// All vertices of one floor, classes descending, positions ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorSlice {
    pub p: OddPrime,
    pub floor: u64,
    pub vertices: Vec<VertexId>,
}

impl FloorSlice {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Expected cardinality of the floor.
    pub fn expected_len(p: OddPrime, floor: u64) -> Result<u64> {
        let r = floor.div_ceil(2);
        let top = pow_checked(p.get(), r - 1, "floor size")?
            .checked_mul(p.get() - 1)
            .ok_or(Error::Overflow("floor size"))?;
        let rest = if floor.is_multiple_of(2) {
            // sum of p^k for k in 0..r
            geom_sum(p, r)?
        } else {
            // sum of p^(k+1) for k in 0..r-1
            geom_sum(p, r)? - 1
        };
        top.checked_add(rest).ok_or(Error::Overflow("floor size"))
    }
}

/// Every vertex of a floor in class order (top class first).
pub fn floor_vertices(p: OddPrime, floor: u64) -> Result<FloorSlice> {
    if floor < 1 {
        return Err(Error::InvalidFloor(floor));
    }
    let r = floor.div_ceil(2);
    let max_class = if floor.is_multiple_of(2) { r } else { r - 1 };
    let mut vertices = Vec::new();
    for k in (0..=max_class).rev() {
        let mut pos = 0;
        while let Ok(v) = VertexId::new(p, floor, k, pos) {
            vertices.push(v);
            pos += 1;
        }
    }
    Ok(FloorSlice { p, floor, vertices })
}

/// How many downward edges leave `v`.
pub fn down_branch_count(v: &VertexId) -> Result<u64> {
    if v.floor() == 1 {
        return Err(Error::FloorOne);
    }
    let p = v.p().get();
    if !v.is_even_floor() || v.is_top_class() {
        Ok(1)
    } else if v.s() == 1 {
        Ok(p - 1)
    } else {
        Ok(p)
    }
}

/// The `choice`-th downward step out of `v` (choice must be 0 for forced
/// steps). Returns the lower vertex and the removed block.
pub fn down_step(v: &VertexId, choice: u64) -> Result<(VertexId, Block)> {
    if v.floor() == 1 {
        return Err(Error::FloorOne);
    }
    let p = v.p();
    let pu = p.get();
    let r = v.r();
    let idx = v.floor() - 1;
    if v.is_even_floor() {
        if v.is_top_class() {
            // single empty-block edge to the odd top class below
            if choice != 0 {
                return Err(Error::OutOfRange {
                    what: "branch",
                    value: choice,
                    max: 0,
                });
            }
            let lower = VertexId::new(p, v.floor() - 1, r - 1, v.pos())?;
            return Ok((lower, Block::empty(idx)));
        }
        let k = v.class_k();
        let pk = pow_checked(pu, k, "down step")?;
        if v.s() == 1 {
            // class r-1: p-1 edges into the odd top class
            if choice > pu - 2 {
                return Err(Error::OutOfRange {
                    what: "branch",
                    value: choice,
                    max: pu - 2,
                });
            }
            let lower_pos = v.pos() + pk * choice;
            let lower = VertexId::new(p, v.floor() - 1, r - 1, lower_pos)?;
            let block = Block::new(idx, pk * choice, pk * (pu - 2 - choice));
            return Ok((lower, block));
        }
        // class k <= r-2: p edges into odd class k
        if choice > pu - 1 {
            return Err(Error::OutOfRange {
                what: "branch",
                value: choice,
                max: pu - 1,
            });
        }
        let lower_pos = v.pos() + pk * choice;
        let lower = VertexId::new(p, v.floor() - 1, k, lower_pos)?;
        let block = Block::new(idx, pk * choice, pk * (pu - 1 - choice));
        Ok((lower, block))
    } else {
        // odd floors: a single projection edge, positions divided by p
        if choice != 0 {
            return Err(Error::OutOfRange {
                what: "branch",
                value: choice,
                max: 0,
            });
        }
        let proj = v.pos() / pu;
        let drop = v.pos() - proj;
        if v.is_top_class() {
            let total = pow_checked(pu, r - 2, "down step")?
                .checked_mul((pu - 1) * (pu - 1))
                .ok_or(Error::Overflow("down step"))?;
            let lower = VertexId::new(p, v.floor() - 1, r - 1, proj)?;
            let block = Block::new(idx, total - drop, drop);
            Ok((lower, block))
        } else {
            let k = v.class_k();
            let pk = pow_checked(pu, k, "down step")?;
            let lower = VertexId::new(p, v.floor() - 1, k, proj)?;
            let block = Block::new(idx, pk * (pu - 1) - drop, drop);
            Ok((lower, block))
        }
    }
}

/// All downward (removal) edges out of `v`.
pub fn remove_children(v: &VertexId) -> Result<Vec<Edge>> {
    let n = down_branch_count(v)?;
    (0..n)
        .map(|t| {
            let (lower, block) = down_step(v, t)?;
            Ok(Edge::new(*v, lower, block))
        })
        .collect()
}

/// All upward (addition) edges out of `v`.
pub fn add_children(v: &VertexId) -> Result<Vec<Edge>> {
    let p = v.p();
    let pu = p.get();
    let r = v.r();
    let idx = v.floor();
    let mut edges = Vec::new();
    if v.is_even_floor() {
        // upper floor is odd, 2r+1
        if v.is_top_class() {
            let i = v.pos();
            let total = pow_checked(pu, r - 1, "add step")?
                .checked_mul((pu - 1) * (pu - 1))
                .ok_or(Error::Overflow("add step"))?;
            for t in 0..pu {
                let upper = VertexId::new(p, v.floor() + 1, r, pu * i + t)?;
                let vert = i * (pu - 1) + t;
                edges.push(Edge::new(upper, *v, Block::new(idx, total - vert, vert)));
            }
        } else {
            let k = v.class_k();
            let pk = pow_checked(pu, k, "add step")?;
            let l = v.pos();
            for t in 0..pu {
                let upper = VertexId::new(p, v.floor() + 1, k, pu * l + t)?;
                let vert = (pu - 1) * l + t;
                edges.push(Edge::new(
                    upper,
                    *v,
                    Block::new(idx, pk * (pu - 1) - vert, vert),
                ));
            }
        }
    } else {
        // upper floor is even, 2r
        if v.is_top_class() {
            let i = v.pos();
            // empty-block edge into the even top class
            let upper = VertexId::new(p, v.floor() + 1, r, i)?;
            edges.push(Edge::new(upper, *v, Block::empty(idx)));
            // one edge into even class r-1
            let pr1 = pow_checked(pu, r - 1, "add step")?;
            let t_hat = i / pr1;
            debug_assert!(t_hat <= pu - 2);
            let upper = VertexId::new(p, v.floor() + 1, r - 1, i - pr1 * t_hat)?;
            edges.push(Edge::new(
                upper,
                *v,
                Block::new(idx, pr1 * t_hat, pr1 * (pu - 2 - t_hat)),
            ));
        } else {
            let k = v.class_k();
            let pk = pow_checked(pu, k, "add step")?;
            let t = v.pos() / pk;
            let l = v.pos() % pk;
            let upper = VertexId::new(p, v.floor() + 1, k, l)?;
            edges.push(Edge::new(
                upper,
                *v,
                Block::new(idx, pk * t, pk * (pu - 1 - t)),
            ));
        }
    }
    Ok(edges)
}

/// Position-level projection: the class-k position one even floor below an
/// odd position. Equals `odd_pos / p`.
pub fn projection(p: OddPrime, k: u64, odd_pos: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            max: u64::MAX,
        });
    }
    let bound = pow_checked(p.get(), k + 1, "projection")?;
    if odd_pos >= bound {
        return Err(Error::OutOfRange {
            what: "odd position",
            value: odd_pos,
            max: bound - 1,
        });
    }
    Ok(odd_pos / p.get())
}

/// The p vertices two floors below `v` that feed its recurrence:
/// positions `floor(pos/p) + p^(k-1) * t` for t in 0..p.
pub fn components(v: &VertexId) -> Result<Vec<VertexId>> {
    if !v.is_even_floor() || v.is_top_class() || v.class_k() == 0 {
        return Err(Error::NoComponents);
    }
    let p = v.p();
    let pk1 = pow_checked(p.get(), v.class_k() - 1, "components")?;
    let alpha = v.pos() / p.get();
    (0..p.get())
        .map(|t| VertexId::new(p, v.floor() - 2, v.class_k(), alpha + pk1 * t))
        .collect()
}
