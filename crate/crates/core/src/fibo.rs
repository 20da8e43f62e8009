//! Fibonacci-type sequence values: the total number of descents over all
//! paths out of a class-k vertex, computed by three mutually checking
//! methods (brute-force enumeration, a memoized two-term recurrence over
//! components, and per-case closed forms), plus the case classifier and
//! the recurrence-identity checker.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::arith::{big_pow, pow_checked, Count, OddPrime};
use crate::diagram::components;
use crate::error::{Error, Result};
use crate::paths::{enumerate_paths, path_count_u64};
use crate::stats::{closed_descent_total, descent_set, DescentBlock};
use crate::vertex::VertexId;

/// Default cap on brute-force path enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Which regime of (k, s) a position falls in, and the printed case with
/// its parameters. Exactly one label applies to every (p, k, s, l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// k = 0 (single position).
    K0,
    /// k = 1, t = l below (p-1)/2.
    K1Low {
        t: u64,
    },
    /// k = 1, t = l at or above (p-1)/2.
    K1High {
        t: u64,
    },
    /// k >= 2, depth s = 1.
    BaseS1,
    /// k >= 2, s = 2, l < (p^k - 1)/2.
    BaseS2Low,
    /// k >= 2, s = 2, l >= (p^k - 1)/2.
    BaseS2High,
    // k >= 2, 3 <= s < k+2
    LessA,
    LessBI {
        t: u64,
        i: u64,
    },
    LessBII {
        t: u64,
    },
    LessCI {
        i: u64,
    },
    LessCII,
    LessCIII {
        i_prime: u64,
    },
    LessCIV,
    LessDI {
        t: u64,
        i: u64,
    },
    LessDII {
        t: u64,
    },
    // k >= 2, s >= k+2
    GreaterA,
    GreaterBI {
        t: u64,
        i: u64,
    },
    GreaterBII {
        t: u64,
    },
    GreaterCI {
        i: u64,
    },
    GreaterCII {
        i_prime: u64,
    },
    GreaterCIII,
    GreaterDI {
        t: u64,
        i: u64,
    },
    GreaterDII {
        t: u64,
    },
}

impl CaseLabel {
    pub fn regime(&self) -> &'static str {
        use CaseLabel::*;
        match self {
            K0 => "k0",
            K1Low { .. } | K1High { .. } => "k1",
            BaseS1 | BaseS2Low | BaseS2High => "base",
            LessA
            | LessBI { .. }
            | LessBII { .. }
            | LessCI { .. }
            | LessCII
            | LessCIII { .. }
            | LessCIV
            | LessDI { .. }
            | LessDII { .. } => "less",
            _ => "greater",
        }
    }

    pub fn case_id(&self) -> &'static str {
        use CaseLabel::*;
        match self {
            K0 => "-",
            K1Low { .. } => "low",
            K1High { .. } => "high",
            BaseS1 => "s1",
            BaseS2Low => "s2-low",
            BaseS2High => "s2-high",
            LessA | GreaterA => "a",
            LessBI { .. } | GreaterBI { .. } => "b-i",
            LessBII { .. } | GreaterBII { .. } => "b-ii",
            LessCI { .. } | GreaterCI { .. } => "c-i",
            LessCII | GreaterCII { .. } => "c-ii",
            LessCIII { .. } | GreaterCIII => "c-iii",
            LessCIV => "c-iv",
            LessDI { .. } | GreaterDI { .. } => "d-i",
            LessDII { .. } | GreaterDII { .. } => "d-ii",
        }
    }
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use CaseLabel::*;
        write!(f, "{}/{}", self.regime(), self.case_id())?;
        match self {
            K1Low { t }
            | K1High { t }
            | LessBII { t }
            | LessDII { t }
            | GreaterBII { t }
            | GreaterDII { t } => write!(f, "(t={t})"),
            LessBI { t, i } | LessDI { t, i } | GreaterBI { t, i } | GreaterDI { t, i } => {
                write!(f, "(t={t},i={i})")
            }
            LessCI { i } | GreaterCI { i } => write!(f, "(i={i})"),
            LessCIII { i_prime } | GreaterCII { i_prime } => write!(f, "(i'={i_prime})"),
            _ => Ok(()),
        }
    }
}

/// A half-open labelled interval [start, end] of positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseInterval {
    pub label: CaseLabel,
    pub start: u64,
    pub end: u64,
}

// sum of p^i for i in a..=b, zero when a > b
fn seg(p: u64, a: u64, b: u64) -> u128 {
    if a > b {
        return 0;
    }
    (a..=b).map(|i| (p as u128).pow(i as u32)).sum()
}

/// Case intervals for the regime 3 <= s < k+2 (k >= 2).
pub fn less_intervals(p: OddPrime, k: u64, s: u64) -> Result<Vec<CaseInterval>> {
    debug_assert!(k >= 2 && (3..k + 2).contains(&s));
    let pu = p.get();
    let half = p.half();
    let mut out = vec![CaseInterval {
        label: CaseLabel::LessA,
        start: 0,
        end: 0,
    }];
    let push = |out: &mut Vec<CaseInterval>, label, start: u128, end: u128| {
        if start <= end {
            out.push(CaseInterval {
                label,
                start: start as u64,
                end: end as u64,
            });
        }
    };
    for t in 1..=half - 1 {
        let tm = (t - 1) as u128;
        for i in 0..=s.saturating_sub(4) {
            if s >= 4 {
                push(
                    &mut out,
                    CaseLabel::LessBI { t, i },
                    tm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
                    tm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
                );
            }
        }
        push(
            &mut out,
            CaseLabel::LessBII { t },
            tm * seg(pu, s - 3, k - 1) + (pu as u128).pow((s - 3) as u32),
            (t as u128) * seg(pu, 0, k - 1),
        );
    }
    // t = (p-1)/2 splits into four sub-cases
    let hm = (half - 1) as u128;
    for i in 0..=s.saturating_sub(4) {
        if s >= 4 {
            push(
                &mut out,
                CaseLabel::LessCI { i },
                hm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
                hm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
            );
        }
    }
    push(
        &mut out,
        CaseLabel::LessCII,
        hm * seg(pu, s - 3, k - 1) + (pu as u128).pow((s - 3) as u32),
        (half as u128) * seg(pu, s - 2, k - 1) - 1,
    );
    for i_prime in 1..=s - 2 {
        push(
            &mut out,
            CaseLabel::LessCIII { i_prime },
            (half as u128) * seg(pu, i_prime, k - 1),
            (half as u128) * seg(pu, i_prime - 1, k - 1) - 1,
        );
    }
    let boundary = (half as u128) * seg(pu, 0, k - 1);
    push(&mut out, CaseLabel::LessCIV, boundary, boundary);
    for t in half + 1..=pu - 1 {
        let tm = (t - 1) as u128;
        for i in 0..=s.saturating_sub(4) {
            if s >= 4 {
                push(
                    &mut out,
                    CaseLabel::LessDI { t, i },
                    tm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
                    tm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
                );
            }
        }
        push(
            &mut out,
            CaseLabel::LessDII { t },
            tm * seg(pu, s - 3, k - 1) + (pu as u128).pow((s - 3) as u32),
            (t as u128) * seg(pu, 0, k - 1),
        );
    }
    Ok(out)
}

/// Case intervals for the regime s >= k+2 (k >= 2); these do not
/// depend on s.
pub fn greater_intervals(p: OddPrime, k: u64) -> Result<Vec<CaseInterval>> {
    debug_assert!(k >= 2);
    let pu = p.get();
    let half = p.half();
    let pk1 = (pu as u128).pow((k - 1) as u32);
    let mut out = vec![CaseInterval {
        label: CaseLabel::GreaterA,
        start: 0,
        end: 0,
    }];
    let push = |out: &mut Vec<CaseInterval>, label, start: u128, end: u128| {
        if start <= end {
            out.push(CaseInterval {
                label,
                start: start as u64,
                end: end as u64,
            });
        }
    };
    for t in 1..=half - 1 {
        let tm = (t - 1) as u128;
        for i in 0..=k - 2 {
            push(
                &mut out,
                CaseLabel::GreaterBI { t, i },
                tm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
                tm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
            );
        }
        push(
            &mut out,
            CaseLabel::GreaterBII { t },
            (t as u128) * pk1,
            (t as u128) * seg(pu, 0, k - 1),
        );
    }
    let hm = (half - 1) as u128;
    for i in 0..=k - 2 {
        push(
            &mut out,
            CaseLabel::GreaterCI { i },
            hm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
            hm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
        );
    }
    for i_prime in 1..=k - 1 {
        push(
            &mut out,
            CaseLabel::GreaterCII { i_prime },
            (half as u128) * seg(pu, i_prime, k - 1),
            (half as u128) * seg(pu, i_prime - 1, k - 1) - 1,
        );
    }
    let boundary = (half as u128) * seg(pu, 0, k - 1);
    push(&mut out, CaseLabel::GreaterCIII, boundary, boundary);
    for t in half + 1..=pu - 1 {
        let tm = (t - 1) as u128;
        for i in 0..=k - 2 {
            push(
                &mut out,
                CaseLabel::GreaterDI { t, i },
                tm * seg(pu, i, k - 1) + (pu as u128).pow(i as u32),
                tm * seg(pu, i + 1, k - 1) + (pu as u128).pow(i as u32 + 1) - 1,
            );
        }
        push(
            &mut out,
            CaseLabel::GreaterDII { t },
            (t as u128) * pk1,
            (t as u128) * seg(pu, 0, k - 1),
        );
    }
    Ok(out)
}

fn pick_unique(intervals: &[CaseInterval], l: u64) -> Result<CaseLabel> {
    let mut hits = intervals
        .iter()
        .filter(|iv| (iv.start..=iv.end).contains(&l));
    match (hits.next(), hits.next()) {
        (Some(iv), None) => Ok(iv.label),
        (None, _) => Err(Error::Uncovered { pos: l }),
        (Some(_), Some(_)) => Err(Error::Uncovered { pos: l }),
    }
}

/// The unique case covering (p, k, s, l).
pub fn classify_case(p: OddPrime, k: u64, s: u64, l: u64) -> Result<CaseLabel> {
    let pk = pow_checked(p.get(), k, "classify")?;
    if s < 1 {
        return Err(Error::OutOfRange {
            what: "s",
            value: s,
            max: u64::MAX,
        });
    }
    if l >= pk {
        return Err(Error::OutOfRange {
            what: "position",
            value: l,
            max: pk - 1,
        });
    }
    if k == 0 {
        return Ok(CaseLabel::K0);
    }
    if k == 1 {
        return Ok(if l < p.half() {
            CaseLabel::K1Low { t: l }
        } else {
            CaseLabel::K1High { t: l }
        });
    }
    match s {
        1 => Ok(CaseLabel::BaseS1),
        2 => Ok(if l < (pk - 1) / 2 {
            CaseLabel::BaseS2Low
        } else {
            CaseLabel::BaseS2High
        }),
        _ if s < k + 2 => pick_unique(&less_intervals(p, k, s)?, l),
        _ => pick_unique(&greater_intervals(p, k)?, l),
    }
}

fn big_seg(p: u64, a: u64, b: u64) -> BigInt {
    if a > b {
        return BigInt::ZERO;
    }
    (a..=b).map(|i| BigInt::from(big_pow(p, i))).sum()
}

/// The s-independent additive term of the stable (s >= k+2) closed forms;
/// `None` for regimes whose extras depend on s.
pub(crate) fn stable_delta(p: OddPrime, k: u64, label: &CaseLabel) -> Option<BigInt> {
    use CaseLabel::*;
    let pu = p.get();
    let g = big_seg(pu, 0, k.saturating_sub(1));
    let two = BigInt::from(2);
    Some(match *label {
        K0 => BigInt::ZERO,
        K1Low { t } => BigInt::from(2 * t),
        K1High { t } => BigInt::from(2 * t) - BigInt::from(2 * pu),
        GreaterA => BigInt::ZERO,
        GreaterBI { t, i } => {
            BigInt::from(2 * t) * &g - &two * big_seg(pu, 0, (k - i).saturating_sub(2))
        }
        GreaterBII { t } => BigInt::from(2 * t) * &g,
        GreaterCI { i } => {
            BigInt::from(pu - 1) * &g - &two * big_seg(pu, 0, (k - i).saturating_sub(2))
        }
        GreaterCII { i_prime } => {
            -BigInt::from(big_pow(pu, k)) - &two * big_seg(pu, 1, k - 1)
                + &two * big_seg(pu, k - i_prime + 1, k)
                - BigInt::from(1)
        }
        GreaterCIII => {
            -BigInt::from(big_pow(pu, k)) - &two * big_seg(pu, 1, k - 1) - BigInt::from(1)
        }
        GreaterDI { t, i } => {
            (BigInt::from(2 * t) - BigInt::from(2 * pu)) * &g
                - &two * big_seg(pu, 0, (k - i).saturating_sub(2))
        }
        GreaterDII { t } => (BigInt::from(2 * t) - BigInt::from(2 * pu)) * &g,
        _ => return None,
    })
}

// 2s - c without u64 overflow for s near the type limit
fn two_s_minus(s: u64, c: u64) -> BigInt {
    BigInt::from(2) * BigInt::from(s) - BigInt::from(c)
}

fn to_count(value: BigInt, ctx: &'static str) -> Count {
    assert!(
        !value.is_negative(),
        "{ctx} produced a negative value: {value}"
    );
    value.to_biguint().expect("checked non-negative")
}

/// Closed-form sequence value at class k, depth s, position l.
pub fn closed_value(p: OddPrime, k: u64, s: u64, l: u64) -> Result<Count> {
    use CaseLabel::*;
    let label = classify_case(p, k, s, l)?;
    let pu = p.get();
    let half = BigInt::from(p.half());
    let value: BigInt = match label {
        K0 => {
            if s == 1 {
                half
            } else {
                let inner =
                    BigInt::from(2) * BigInt::from(s - 1) * BigInt::from(pu) - two_s_minus(s, 3);
                half * BigInt::from(big_pow(pu, s - 2)) * inner
            }
        }
        K1Low { t } | K1High { t } => {
            let high = matches!(label, K1High { .. });
            match s {
                1 => half,
                2 => half * BigInt::from(if high { 2 * pu - 1 } else { 2 * pu + 1 }),
                _ => {
                    let mut inner =
                        BigInt::from(2) * BigInt::from(s - 1) * BigInt::from(big_pow(pu, 2))
                            + BigInt::from(2 * t)
                            - two_s_minus(s, 5);
                    if high {
                        inner -= BigInt::from(2 * pu);
                    }
                    half * BigInt::from(big_pow(pu, s - 3)) * inner
                }
            }
        }
        BaseS1 => half,
        BaseS2Low => half * BigInt::from(2 * pu + 1),
        BaseS2High => half * BigInt::from(2 * pu - 1),
        LessA
        | LessBI { .. }
        | LessBII { .. }
        | LessCI { .. }
        | LessCII
        | LessCIII { .. }
        | LessCIV
        | LessDI { .. }
        | LessDII { .. } => {
            let two = BigInt::from(2);
            let delta: BigInt = match label {
                LessA => BigInt::from(1),
                LessBI { t, i } => {
                    BigInt::from(1) + BigInt::from(2 * t) * big_seg(pu, 0, s - 3)
                        - &two * big_seg(pu, 0, (s - i).saturating_sub(4))
                }
                LessBII { t } => BigInt::from(1) + BigInt::from(2 * t) * big_seg(pu, 0, s - 3),
                LessCI { i } => {
                    BigInt::from(1) + BigInt::from(pu - 1) * big_seg(pu, 0, s - 3)
                        - &two * big_seg(pu, 0, (s - i).saturating_sub(4))
                }
                LessCII => BigInt::from(big_pow(pu, s - 2)),
                LessCIII { i_prime } => {
                    -BigInt::from(big_pow(pu, s - 2)) - &two * big_seg(pu, 1, s - 3)
                        + &two * big_seg(pu, s - i_prime - 1, s - 2)
                        - two.clone()
                }
                LessCIV => {
                    -BigInt::from(big_pow(pu, s - 2)) - &two * big_seg(pu, 1, s - 3) - two.clone()
                }
                LessDI { t, i } => {
                    BigInt::from(-1)
                        + (BigInt::from(2 * t) - BigInt::from(2 * pu)) * big_seg(pu, 0, s - 3)
                        - &two * big_seg(pu, 0, (s - i).saturating_sub(4))
                }
                LessDII { t } => {
                    BigInt::from(-1)
                        + (BigInt::from(2 * t) - BigInt::from(2 * pu)) * big_seg(pu, 0, s - 3)
                }
                _ => unreachable!(),
            };
            let base = BigInt::from(2) * BigInt::from(s - 1) * BigInt::from(big_pow(pu, s - 1));
            half * (base + delta)
        }
        _ => {
            // greater regime: prefactor p^(s-2-k), stable delta
            let delta = stable_delta(p, k, &label).expect("greater labels have stable deltas");
            let base = BigInt::from(2) * BigInt::from(s - 1) * BigInt::from(big_pow(pu, k + 1))
                - BigInt::from(2) * BigInt::from(s - k)
                + BigInt::from(3);
            half * BigInt::from(big_pow(pu, s - 2 - k)) * (base + delta)
        }
    };
    Ok(to_count(value, "closed form"))
}

fn require_classk(v: &VertexId) -> Result<()> {
    if !v.is_even_floor() || v.is_top_class() {
        return Err(Error::TopClass(v.to_string()));
    }
    Ok(())
}

/// Closed form at a vertex.
pub fn m_closed(v: &VertexId) -> Result<Count> {
    require_classk(v)?;
    closed_value(v.p(), v.class_k(), v.s(), v.pos())
}

/// Total descents over all paths, by enumeration.
pub fn m_brute_with_budget(v: &VertexId, budget: u64) -> Result<Count> {
    require_classk(v)?;
    let needed = path_count_u64(v)?;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            required: needed.to_string(),
            budget,
        });
    }
    let mut total: u128 = 0;
    for path in enumerate_paths(v, None)? {
        total += u128::from(descent_set(&path).des());
    }
    Ok(BigUint::from(total))
}

pub fn m_brute(v: &VertexId) -> Result<Count> {
    m_brute_with_budget(v, DEFAULT_BUDGET)
}

/// Memoized evaluation of the component recurrence.
#[derive(Debug, Default)]
pub struct RecurMemo {
    memo: HashMap<VertexId, Count>,
}

impl RecurMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, v: &VertexId) -> Result<Count> {
        require_classk(v)?;
        if let Some(hit) = self.memo.get(v) {
            return Ok(hit.clone());
        }
        let p = v.p();
        let k = v.class_k();
        let s = v.s();
        let value = if s == 1 {
            BigUint::from(p.half())
        } else {
            let comp_sum: Count = if k == 0 {
                let child = VertexId::new(p, v.floor() - 2, 0, 0)?;
                self.eval(&child)? * BigUint::from(p.get())
            } else {
                let mut acc = BigUint::ZERO;
                for c in components(v)? {
                    acc += self.eval(&c)?;
                }
                acc
            };
            comp_sum
                + closed_descent_total(p, k, s, v.pos(), DescentBlock::NextToLast)?
                + closed_descent_total(p, k, s, v.pos(), DescentBlock::SecondToLast)?
        };
        self.memo.insert(*v, value.clone());
        Ok(value)
    }
}

/// Recurrence value at a vertex (fresh memo per call; use [`RecurMemo`]
/// for sweeps).
pub fn m_recurrence(v: &VertexId) -> Result<Count> {
    RecurMemo::new().eval(v)
}

/// The inhomogeneous term of the two-floor recurrence identity: the
/// descent totals contributed by the two floors unrolled on the way from
/// depth s to depth s+2.
pub fn rr_b(p: OddPrime, k: u64, s: u64, l: u64) -> Result<Count> {
    let alpha = l / p.get();
    Ok(
        closed_descent_total(p, k, s + 2, l, DescentBlock::NextToLast)?
            + closed_descent_total(p, k, s + 2, l, DescentBlock::SecondToLast)?
            + closed_descent_total(p, k, s + 1, alpha, DescentBlock::NextToLast)?
            + closed_descent_total(p, k, s + 1, alpha, DescentBlock::SecondToLast)?,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrFailure {
    pub s: u64,
    pub lhs: Count,
    pub rhs: Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrReport {
    pub checked: u64,
    pub failures: Vec<RrFailure>,
}

impl RrReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies, with closed-form values, that the depth-(s+2) value equals
/// the two-floor inhomogeneous term plus the component sums over depths
/// s and s+1, for every admissible s up to s_max - 2.
pub fn rr_check(p: OddPrime, k: u64, l: u64, s_max: u64) -> Result<RrReport> {
    let pu = p.get();
    let pk = pow_checked(pu, k, "rr_check")?;
    if l >= pk {
        return Err(Error::OutOfRange {
            what: "position",
            value: l,
            max: pk - 1,
        });
    }
    if s_max < k + 4 {
        return Err(Error::OutOfRange {
            what: "s_max",
            value: s_max,
            max: u64::MAX,
        });
    }
    let alpha = l / pu;
    let alpha2 = alpha / pu;
    let pk1 = if k >= 1 {
        pow_checked(pu, k - 1, "rr_check")?
    } else {
        0
    };
    let mut report = RrReport {
        checked: 0,
        failures: Vec::new(),
    };
    for s in k + 2..=s_max - 2 {
        let lhs = closed_value(p, k, s + 2, l)?;
        let mut rhs = rr_b(p, k, s, l)?;
        if k == 0 {
            rhs += closed_value(p, 0, s, 0)? * BigUint::from(pu);
            rhs += closed_value(p, 0, s + 1, 0)? * BigUint::from(pu - 1);
        } else {
            for t2 in 0..pu {
                rhs += closed_value(p, k, s, alpha2 + pk1 * t2)?;
            }
            for t1 in 1..pu {
                rhs += closed_value(p, k, s + 1, alpha + pk1 * t1)?;
            }
        }
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(RrFailure { s, lhs, rhs });
        }
    }
    Ok(report)
}

/// Evaluation methods for sequence values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Recurrence,
    Closed,
}

/// One computed sequence entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibRecord {
    pub vertex: VertexId,
    pub value: Count,
    pub method: Method,
}

/// Closed-form values for s in `s_from..=s_to`; when `brute_budget` is
/// given, each term that fits the budget is cross-checked by enumeration.
pub fn sequence(
    p: OddPrime,
    k: u64,
    l: u64,
    s_from: u64,
    s_to: u64,
    brute_budget: Option<u64>,
) -> Result<Vec<Count>> {
    let mut out = Vec::new();
    for s in s_from..=s_to {
        let value = closed_value(p, k, s, l)?;
        if let Some(budget) = brute_budget {
            let floor = s
                .checked_add(k)
                .and_then(|x| x.checked_mul(2))
                .ok_or(Error::Overflow("sequence floor"))?;
            let v = VertexId::new(p, floor, k, l)?;
            if path_count_u64(&v)? <= budget {
                let brute = m_brute_with_budget(&v, budget)?;
                if brute != value {
                    return Err(Error::MethodMismatch {
                        s,
                        left: brute.to_string(),
                        right: value.to_string(),
                    });
                }
            }
        }
        out.push(value);
    }
    Ok(out)
}
