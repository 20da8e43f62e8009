//! Property tests for the structural invariants that benefit from random
//! sampling beyond the exhaustive suites.

use num_bigint::BigInt;
use proptest::prelude::*;

use pbratteli::gfs::gf_coeff;
use pbratteli::paths::{digit_domain, path_from_digits};
use pbratteli::{
    gf_for_case, hook_to_vertex, vertex_to_hook, x_ak, CaseLabel, GfSpec, OddPrime, VertexId,
};

fn odd_primes() -> impl Strategy<Value = OddPrime> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 31, 97]).prop_map(|p| OddPrime::new(p).unwrap())
}

proptest! {
    /// hook_to_vertex inverts vertex_to_hook on any valid vertex.
    #[test]
    fn hook_round_trip(
        p in odd_primes(),
        floor in 1u64..=14,
        class_seed in 0u64..1000,
        pos_seed in 0u64..1_000_000,
    ) {
        let r = floor.div_ceil(2);
        let max_class = if floor % 2 == 0 { r } else { r - 1 };
        let class_k = class_seed % (max_class + 1);
        // snap the position into the class range
        let v = match VertexId::new(p, floor, class_k, 0) {
            Ok(_) => {
                let mut pos = pos_seed;
                loop {
                    match VertexId::new(p, floor, class_k, pos) {
                        Ok(v) => break v,
                        Err(_) => pos /= 2,
                    }
                }
            }
            Err(_) => return Ok(()),
        };
        let h = vertex_to_hook(&v);
        prop_assert!(h.leg < h.size);
        prop_assert_eq!(hook_to_vertex(p, &h).unwrap(), v);
    }

    /// Legs stay inside the hook: x(s,k) + p^k - 1 < x(2s,k).
    #[test]
    fn leg_window_fits(p in odd_primes(), s in 1u64..=20, k in 0u64..=6) {
        let (Ok(low), Ok(high)) = (x_ak(p, s, k), x_ak(p, 2 * s, k)) else {
            return Ok(());
        };
        let pk = p.get().checked_pow(k as u32).unwrap();
        prop_assert!(low + pk - 1 < high);
    }

    /// Coefficient extraction is linear: the n-th coefficient of a sum of
    /// two specs is the sum of their coefficients.
    #[test]
    fn gf_coefficients_are_linear(
        p in odd_primes(),
        t1 in 0u64..50,
        t2 in 0u64..50,
        n in 0u64..12,
    ) {
        let pu = p.get();
        let t1 = t1 % pu;
        let t2 = t2 % pu;
        let label = |t: u64| if t < p.half() {
            CaseLabel::K1Low { t }
        } else {
            CaseLabel::K1High { t }
        };
        let g1 = gf_for_case(p, 1, &label(t1)).unwrap();
        let g2 = gf_for_case(p, 1, &label(t2)).unwrap();
        let combined = GfSpec {
            p,
            scale_num: g1.scale_num,
            scale_den: g1.scale_den,
            a: &g1.a + &g2.a,
            c: &g1.c + &g2.c,
            d: &g1.d + &g2.d,
        };
        let lhs = BigInt::from(gf_coeff(&combined, n).unwrap());
        let rhs = BigInt::from(gf_coeff(&g1, n).unwrap()) + BigInt::from(gf_coeff(&g2, n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// The digit encoding determines the path: low digits reproduce the
    /// position, and the terminal leg is the last digit.
    #[test]
    fn digit_encoding_round_trip(
        p in odd_primes(),
        floor_half in 1u64..=5,
        k_seed in 0u64..5,
        pos_seed in 0u64..10_000,
        digit_seed in 0u64..1_000_000,
    ) {
        let floor = 2 * floor_half;
        let r = floor_half;
        let k = k_seed % r;
        let pk = p.get().pow(k as u32);
        let pos = pos_seed % pk;
        let v = VertexId::new(p, floor, k, pos).unwrap();
        let dom = digit_domain(&v).unwrap();
        let mut seed = digit_seed;
        let mut digits = dom.fixed.clone();
        for max in &dom.free_max {
            digits.push(seed % (max + 1));
            seed /= max + 1;
        }
        let path = path_from_digits(&v, &digits).unwrap();
        let low: u64 = digits[..k as usize]
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * p.get() + d);
        prop_assert_eq!(low, pos);
        prop_assert_eq!(path.terminal_leg(), digits[digits.len() - 1]);
        prop_assert_eq!(path.end_hook().size, p.get() - 1);
    }

    /// Canonical strings parse back to the same vertex.
    #[test]
    fn canonical_string_round_trip(
        p in odd_primes(),
        floor in 1u64..=12,
        pos_seed in 0u64..100_000,
    ) {
        let r = floor.div_ceil(2);
        let max_class = if floor % 2 == 0 { r } else { r - 1 };
        for class_k in 0..=max_class {
            let mut pos = pos_seed;
            let v = loop {
                match VertexId::new(p, floor, class_k, pos) {
                    Ok(v) => break v,
                    Err(_) => pos /= 2,
                }
            };
            let parsed: VertexId = v.to_string().parse().unwrap();
            prop_assert_eq!(parsed, v);
        }
    }
}
