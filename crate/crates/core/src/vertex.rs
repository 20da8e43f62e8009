//! Vertex coordinates, the hook partitions they denote, and blocks.
//!
//! A vertex is addressed by `(p, floor, class_k, pos)`. Even floors `2r`
//! carry classes `0..=r` (class `r` is the top class); odd floors `2r-1`
//! carry classes `0..=r-1` (class `r-1` is the top class). Positions are
//! ordered ascending within a class.

use crate::arith::{base_p_digits, pow_checked, x_ak, OddPrime};
use crate::error::{Error, Result};

/// Canonical coordinates of a diagram vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    p: OddPrime,
    floor: u64,
    class_k: u64,
    pos: u64,
}

impl VertexId {
    pub fn new(p: OddPrime, floor: u64, class_k: u64, pos: u64) -> Result<Self> {
        if floor < 1 {
            return Err(Error::InvalidFloor(floor));
        }
        let v = VertexId {
            p,
            floor,
            class_k,
            pos,
        };
        let r = v.r();
        let max_class = if v.is_even_floor() { r } else { r - 1 };
        if class_k > max_class || pos >= v.class_size()? {
            return Err(Error::InvalidVertex {
                floor,
                class_k,
                pos,
            });
        }
        // Also proves the hook computation cannot overflow later.
        v.compute_hook()?;
        Ok(v)
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn floor(&self) -> u64 {
        self.floor
    }

    pub fn class_k(&self) -> u64 {
        self.class_k
    }

    pub fn pos(&self) -> u64 {
        self.pos
    }

    /// The `r` of the floor: `floor = 2r` or `floor = 2r - 1`.
    pub fn r(&self) -> u64 {
        self.floor.div_ceil(2)
    }

    pub fn is_even_floor(&self) -> bool {
        self.floor.is_multiple_of(2)
    }

    pub fn is_top_class(&self) -> bool {
        if self.is_even_floor() {
            self.class_k == self.r()
        } else {
            self.class_k == self.r() - 1
        }
    }

    /// Depth parameter s = r - k of a non-top vertex.
    pub fn s(&self) -> u64 {
        debug_assert!(!self.is_top_class() || !self.is_even_floor());
        self.r() - self.class_k
    }

    /// Number of positions in this vertex's class on this floor.
    fn class_size(&self) -> Result<u64> {
        let p = self.p.get();
        let r = self.r();
        if self.is_top_class() {
            let pr1 = pow_checked(p, r - 1, "class size")?;
            pr1.checked_mul(p - 1).ok_or(Error::Overflow("class size"))
        } else if self.is_even_floor() {
            pow_checked(p, self.class_k, "class size")
        } else {
            pow_checked(p, self.class_k + 1, "class size")
        }
    }

    fn compute_hook(&self) -> Result<HookPartition> {
        let p = self.p.get();
        let r = self.r();
        let (size, leg) = if self.is_top_class() {
            let size = pow_checked(p, r - 1, "hook size")?
                .checked_mul(p - 1)
                .ok_or(Error::Overflow("hook size"))?;
            (size, self.pos)
        } else if self.is_even_floor() {
            let s = self.s();
            let size = x_ak(self.p, 2 * s, self.class_k)?;
            let leg = x_ak(self.p, s, self.class_k)?
                .checked_add(self.pos)
                .ok_or(Error::Overflow("hook leg"))?;
            (size, leg)
        } else {
            let s = self.s();
            let size = x_ak(self.p, 2 * s - 1, self.class_k)?;
            let leg = x_ak(self.p, s - 1, self.class_k)?
                .checked_add(self.pos)
                .ok_or(Error::Overflow("hook leg"))?;
            (size, leg)
        };
        HookPartition::new(self.floor, size, leg)
    }

    /// The hook partition this vertex denotes.
    pub fn to_hook(&self) -> HookPartition {
        self.compute_hook()
            .expect("hook computation validated at construction")
    }

    /// Base-p digits of the position, least significant first.
    pub fn pos_digits(&self, len: usize) -> Vec<u64> {
        base_p_digits(self.pos, self.p.get(), len)
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "p:{}/f:{}/k:{}/l:{}",
            self.p, self.floor, self.class_k, self.pos
        )
    }
}

impl std::str::FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut floor = None;
        let mut class_k = None;
        let mut pos = None;
        for part in s.split('/') {
            let (key, value) = part.split_once(':').ok_or(Error::InvalidFloor(0))?;
            let value: u64 = value.parse().map_err(|_| Error::InvalidFloor(0))?;
            match key {
                "p" => p = Some(value),
                "f" => floor = Some(value),
                "k" => class_k = Some(value),
                "l" => pos = Some(value),
                _ => return Err(Error::InvalidFloor(0)),
            }
        }
        match (p, floor, class_k, pos) {
            (Some(p), Some(f), Some(k), Some(l)) => VertexId::new(OddPrime::new(p)?, f, k, l),
            _ => Err(Error::InvalidFloor(0)),
        }
    }
}

/// A hook partition (arm, 1^leg) of `size` nodes sitting on `floor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HookPartition {
    pub floor: u64,
    pub size: u64,
    pub leg: u64,
}

impl HookPartition {
    pub fn new(floor: u64, size: u64, leg: u64) -> Result<Self> {
        if leg >= size {
            return Err(Error::NotADiagramVertex { floor, size, leg });
        }
        Ok(HookPartition { floor, size, leg })
    }

    /// First-row length; always >= 1.
    pub fn arm(&self) -> u64 {
        self.size - self.leg
    }
}

/// The skew piece added or removed between two consecutive floors:
/// `horiz` nodes on the first row, `vert` nodes on the first column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub idx: u64,
    pub horiz: u64,
    pub vert: u64,
}

impl Block {
    pub fn new(idx: u64, horiz: u64, vert: u64) -> Self {
        Block { idx, horiz, vert }
    }

    pub fn empty(idx: u64) -> Self {
        Block {
            idx,
            horiz: 0,
            vert: 0,
        }
    }

    pub fn size(&self) -> u64 {
        self.horiz + self.vert
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }
}

/// Maps canonical coordinates to the hook partition they denote.
pub fn vertex_to_hook(v: &VertexId) -> HookPartition {
    v.to_hook()
}

/// Inverse lookup: the unique vertex denoting `h`, if any. Distinct classes
/// on one floor have distinct sizes, which makes the class unambiguous.
pub fn hook_to_vertex(p: OddPrime, h: &HookPartition) -> Result<VertexId> {
    let err = Error::NotADiagramVertex {
        floor: h.floor,
        size: h.size,
        leg: h.leg,
    };
    if h.floor < 1 || h.leg >= h.size {
        return Err(err);
    }
    let r = h.floor.div_ceil(2);
    let even = h.floor.is_multiple_of(2);

    let top_size = pow_checked(p.get(), r - 1, "hook size")?
        .checked_mul(p.get() - 1)
        .ok_or(Error::Overflow("hook size"))?;
    if h.size == top_size {
        let top_class = if even { r } else { r - 1 };
        return VertexId::new(p, h.floor, top_class, h.leg).map_err(|_| err);
    }

    let max_class = if even { r - 1 } else { r.saturating_sub(2) };
    if !even && r < 2 {
        return Err(err);
    }
    for k in 0..=max_class {
        let s = r - k;
        let (size, base_leg) = if even {
            (x_ak(p, 2 * s, k)?, x_ak(p, s, k)?)
        } else {
            (x_ak(p, 2 * s - 1, k)?, x_ak(p, s - 1, k)?)
        };
        if size == h.size {
            let pos = h.leg.checked_sub(base_leg).ok_or(err.clone())?;
            return VertexId::new(p, h.floor, k, pos).map_err(|_| err);
        }
    }
    Err(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn hook_of_worked_vertices() {
        let v = VertexId::new(p(5), 10, 2, 9).unwrap();
        let h = v.to_hook();
        assert_eq!((h.size, h.leg), (575, 284));

        let v = VertexId::new(p(5), 9, 2, 9).unwrap();
        let h = v.to_hook();
        assert_eq!((h.size, h.leg), (475, 184));

        let v = VertexId::new(p(3), 4, 0, 0).unwrap();
        let h = v.to_hook();
        assert_eq!((h.size, h.leg), (7, 3));
    }

    #[test]
    fn hook_to_vertex_inverse() {
        let h = HookPartition::new(10, 575, 284).unwrap();
        let v = hook_to_vertex(p(5), &h).unwrap();
        assert_eq!((v.floor(), v.class_k(), v.pos()), (10, 2, 9));

        let h = HookPartition::new(2, 3, 1).unwrap();
        let v = hook_to_vertex(p(3), &h).unwrap();
        assert_eq!((v.floor(), v.class_k(), v.pos()), (2, 0, 0));

        let h = HookPartition::new(10, 576, 0).unwrap();
        assert!(matches!(
            hook_to_vertex(p(5), &h),
            Err(Error::NotADiagramVertex { .. })
        ));
    }

    #[test]
    fn round_trip_small_floors() {
        for prime in [3, 5] {
            let op = p(prime);
            for floor in 1u64..=12 {
                let r = floor.div_ceil(2);
                let max_class = if floor % 2 == 0 { r } else { r - 1 };
                for k in 0..=max_class {
                    let mut pos = 0;
                    while let Ok(v) = VertexId::new(op, floor, k, pos) {
                        let h = v.to_hook();
                        assert!(h.leg < h.size);
                        assert_eq!(hook_to_vertex(op, &h).unwrap(), v);
                        pos += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn position_bounds_enforced() {
        // floor 10, class 2 has p^2 positions
        assert!(VertexId::new(p(5), 10, 2, 24).is_ok());
        assert!(VertexId::new(p(5), 10, 2, 25).is_err());
        // odd floor 9, class 2 has p^3 positions
        assert!(VertexId::new(p(5), 9, 2, 124).is_ok());
        assert!(VertexId::new(p(5), 9, 2, 125).is_err());
        // top classes have p^(r-1)(p-1) positions
        assert!(VertexId::new(p(5), 10, 5, 2499).is_ok());
        assert!(VertexId::new(p(5), 10, 5, 2500).is_err());
        assert!(VertexId::new(p(3), 1, 0, 1).is_ok());
        assert!(VertexId::new(p(3), 1, 0, 2).is_err());
    }

    #[test]
    fn canonical_string_round_trip() {
        let v = VertexId::new(p(5), 10, 2, 9).unwrap();
        assert_eq!(v.to_string(), "p:5/f:10/k:2/l:9");
        let parsed: VertexId = "p:5/f:10/k:2/l:9".parse().unwrap();
        assert_eq!(parsed, v);
    }
}
