//! Exact coefficient extraction for the rational generating functions of
//! the stable sequences.
//!
//! Every supported case has the shape
//! `scale * ( A/(1-px) + (C - D x)/(1-px)^2 )` with scale = (p-1)/2,
//! C = 2p^(k+1), D = 2p and a case-dependent integer A. Coefficients are
//! extracted in closed form: `[x^n] 1/(1-px) = p^n` and
//! `[x^n] 1/(1-px)^2 = (n+1) p^n`. The n-th coefficient is the sequence
//! value at depth s = n + k + 2.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::arith::{big_pow, Count, OddPrime};
use crate::error::{Error, Result};
use crate::fibo::{classify_case, closed_value, stable_delta, CaseLabel};

/// Parameters of one rational generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfSpec {
    pub p: OddPrime,
    /// Numerator of the global prefactor (p-1)/2.
    pub scale_num: u64,
    /// Denominator of the global prefactor.
    pub scale_den: u64,
    /// Coefficient of 1/(1-px); may be negative.
    pub a: BigInt,
    /// Constant coefficient of the (C - Dx)/(1-px)^2 part.
    pub c: BigUint,
    /// Linear coefficient of the (C - Dx)/(1-px)^2 part.
    pub d: BigUint,
}

/// The generating function attached to a stable case label.
pub fn gf_for_case(p: OddPrime, k: u64, label: &CaseLabel) -> Result<GfSpec> {
    let delta =
        stable_delta(p, k, label).ok_or_else(|| Error::NoGeneratingFunction(label.to_string()))?;
    let pu = p.get();
    let a = BigInt::from(2 * k) * BigInt::from(big_pow(pu, k + 1)) - BigInt::from(1) + delta;
    Ok(GfSpec {
        p,
        scale_num: pu - 1,
        scale_den: 2,
        a,
        c: BigUint::from(2u32) * big_pow(pu, k + 1),
        d: BigUint::from(2 * pu),
    })
}

/// Exact n-th power-series coefficient of `g`.
pub fn gf_coeff(g: &GfSpec, n: u64) -> Result<Count> {
    let pu = g.p.get();
    let pn = BigInt::from(big_pow(pu, n));
    let mut term = &g.a * &pn + BigInt::from(&g.c * BigUint::from(n + 1)) * &pn;
    if n >= 1 {
        term -= BigInt::from(&g.d * BigUint::from(n)) * BigInt::from(big_pow(pu, n - 1));
    }
    let scaled = term * BigInt::from(g.scale_num);
    let den = BigInt::from(g.scale_den);
    if (&scaled % &den) != BigInt::ZERO || scaled.is_negative() {
        return Err(Error::NonIntegerCoefficient { n });
    }
    Ok((scaled / den).to_biguint().expect("checked non-negative"))
}

/// True when the first `n_terms` coefficients of the case generating
/// function equal the closed-form sequence values at s = n + k + 2. The
/// case label is frozen at depth s = k + 2.
pub fn gf_matches_sequence(p: OddPrime, k: u64, l: u64, n_terms: u64) -> Result<bool> {
    let label = classify_case(p, k, k + 2, l)?;
    let g = gf_for_case(p, k, &label)?;
    for n in 0..n_terms {
        if gf_coeff(&g, n)? != closed_value(p, k, n + k + 2, l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn gf_parameters() {
        let g = gf_for_case(p(3), 0, &CaseLabel::K0).unwrap();
        assert_eq!(g.a, BigInt::from(-1));
        assert_eq!(g.c, BigUint::from(6u32));
        assert_eq!(g.d, BigUint::from(6u32));

        let g = gf_for_case(p(5), 1, &CaseLabel::K1Low { t: 0 }).unwrap();
        assert_eq!(g.a, BigInt::from(49));
        assert_eq!(g.c, BigUint::from(50u32));
        assert_eq!(g.d, BigUint::from(10u32));

        let g = gf_for_case(p(5), 2, &CaseLabel::GreaterA).unwrap();
        assert_eq!(g.a, BigInt::from(499));
        assert_eq!(g.c, BigUint::from(250u32));
        assert_eq!(g.d, BigUint::from(10u32));
    }

    #[test]
    fn gf_coefficients() {
        let g = gf_for_case(p(3), 0, &CaseLabel::K0).unwrap();
        assert_eq!(gf_coeff(&g, 0).unwrap(), BigUint::from(5u32));

        let g = gf_for_case(p(5), 1, &CaseLabel::K1Low { t: 0 }).unwrap();
        assert_eq!(gf_coeff(&g, 0).unwrap(), BigUint::from(198u32));
        assert_eq!(gf_coeff(&g, 1).unwrap(), BigUint::from(1470u32));
    }

    #[test]
    fn gf_matches_closed_sequences() {
        assert!(gf_matches_sequence(p(5), 1, 0, 7).unwrap());
        assert!(gf_matches_sequence(p(3), 0, 0, 10).unwrap());
        assert!(gf_matches_sequence(p(7), 2, 24, 8).unwrap());
    }

    #[test]
    fn less_cases_have_no_gf() {
        assert!(matches!(
            gf_for_case(p(5), 2, &CaseLabel::LessA),
            Err(Error::NoGeneratingFunction(_))
        ));
    }
}
