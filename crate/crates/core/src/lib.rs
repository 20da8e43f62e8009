//! Exact combinatorics of the hook-partition branching diagram of an odd
//! prime p.
//!
//! The diagram is a level graph: even floors `2r` and odd floors `2r-1`
//! carry hook partitions arranged in classes, and edges between
//! consecutive floors add or remove a single skew block. This crate
//! builds floors and edges, enumerates the downward paths from any
//! even-floor vertex to floor 1 through their base-p digit encoding, and
//! computes path statistics:
//!
//! - descent and inversion sets of a path, its sign, and the sign balance
//!   of a vertex (which vanishes on every non-top class);
//! - the Fibonacci-type sequence value of a vertex (the total number of
//!   descents over all of its paths) by three mutually checking methods:
//!   brute-force enumeration, a memoized recurrence over the vertex's
//!   components, and per-case closed forms;
//! - exact power-series coefficients of the rational generating
//!   functions attached to the stable cases.
//!
//! Everything is exact: coordinates are checked `u64`, counts are
//! arbitrary-precision integers, and no floating point is used anywhere.
//!
//! ```
//! use pbratteli::{m_brute, m_closed, m_recurrence, OddPrime, VertexId};
//!
//! let p = OddPrime::new(5).unwrap();
//! let v = VertexId::new(p, 10, 2, 9).unwrap();
//! let value = m_closed(&v).unwrap();
//! assert_eq!(value, m_brute(&v).unwrap());
//! assert_eq!(value, m_recurrence(&v).unwrap());
//! assert_eq!(value.to_string(), "210");
//! ```

pub mod arith;
pub mod diagram;
pub mod error;
pub mod fibo;
pub mod gfs;
pub mod paths;
pub mod stats;
pub mod verify;
pub mod vertex;

pub use arith::{geom_sum, j_kt, x_ak, Count, OddPrime};
pub use diagram::{
    add_children, components, down_branch_count, down_step, floor_vertices, projection,
    remove_children, Edge, FloorSlice,
};
pub use error::{Error, Result};
pub use fibo::{
    classify_case, closed_value, m_brute, m_brute_with_budget, m_closed, m_recurrence, rr_check,
    sequence, CaseLabel, FibRecord, Method, RecurMemo, RrReport, DEFAULT_BUDGET,
};
pub use gfs::{gf_coeff, gf_for_case, gf_matches_sequence, GfSpec};
pub use paths::{
    digit_domain, enumerate_paths, path_count, path_from_digits, DigitDomain, Path, Paths,
};
pub use stats::{
    block_gt, closed_descent_total, descent_set, descent_totals_at, inversion_set, sign,
    sign_balance, DescentBlock, DescentSet, DescentTotals, InversionSet,
};
pub use verify::{run_all, Scale, SuiteReport};
pub use vertex::{hook_to_vertex, vertex_to_hook, Block, HookPartition, VertexId};
