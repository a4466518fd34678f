//! Exact integer helpers shared by the engines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Generalized binomial C(m, k) = m(m-1)...(m-k+1)/k!, valid for every integer m.
pub fn gbinom(m: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn binom(m: i64, k: u32) -> BigInt {
    gbinom(&BigInt::from(m), k)
}

/// Ordinary binomial, zero outside 0 <= k <= m.
pub fn choose(m: i64, k: i64) -> BigInt {
    if k < 0 || m < 0 || k > m {
        BigInt::zero()
    } else {
        binom(m, k as u32)
    }
}

pub fn to_dim(x: BigInt) -> u64 {
    x.to_u64().expect("cohomology dimension out of u64 range")
}

pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int_of(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// "p" or "p/q".
pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}
