//! Closed-form counts and bounds, all in arbitrary-precision integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{integrity_err, param_err, Result};

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    // acc = C(a - b + i, i) after step i, so each division is exact.
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Which closed form of the matching bound applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    RLeN,
    RGtN,
}

impl BoundBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundBranch::RLeN => "r_le_n",
            BoundBranch::RGtN => "r_gt_n",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: BigUint,
    pub branch: BoundBranch,
}

/// Upper bound on a k-wise intersecting subfamily of `P^r(M_n)`:
/// `2^(r-1) C(n-1, r-1)` for `r <= n`, otherwise
/// `2^(2n-r) C(n-1, 2n-r) + 2^(2n-r-1) C(n-1, 2n-r-1)`.
///
/// For `r = 2n` the second term vanishes and the value is 1.
pub fn theorem_bound(n: u32, r: u32) -> Result<BoundValue> {
    if n == 0 || r == 0 || r > 2 * n {
        return Err(param_err!(
            "theorem_bound needs 1 <= r <= 2n, got n={n}, r={r}"
        ));
    }
    let (n, r) = (u64::from(n), u64::from(r));
    if r <= n {
        return Ok(BoundValue {
            value: pow2(r - 1) * binomial(n - 1, r - 1),
            branch: BoundBranch::RLeN,
        });
    }
    let m = 2 * n - r;
    let mut value = pow2(m) * binomial(n - 1, m);
    if m >= 1 {
        value += pow2(m - 1) * binomial(n - 1, m - 1);
    }
    Ok(BoundValue {
        value,
        branch: BoundBranch::RGtN,
    })
}

/// `C(n-1, r-1)`, the bound for k-wise intersecting families of `r`-subsets
/// of an `n`-set.
pub fn frankl_bound(n: u32, r: u32) -> Result<BigUint> {
    if r == 0 || r > n {
        return Err(param_err!(
            "frankl_bound needs 1 <= r <= n, got n={n}, r={r}"
        ));
    }
    Ok(binomial(u64::from(n) - 1, u64::from(r) - 1))
}

/// Number of good cyclic orderings of `V(M_n)` up to rotation,
/// `2^(n-1) (n-1)!`.
pub fn good_order_count(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(param_err!("good_order_count needs n >= 1"));
    }
    let n = u64::from(n);
    Ok(pow2(n - 1) * factorial(n - 1))
}

/// Number of good cyclic orderings in which a fixed member of `P^r(M_n)`
/// is an interval: `r! (n-r)! 2^(n-r)` for `r <= n`, otherwise
/// `(2n-r)! (r-n)! 2^(r-n)`.
pub fn orders_containing_count(n: u32, r: u32) -> Result<BigUint> {
    if n == 0 || r == 0 || r >= 2 * n {
        return Err(param_err!(
            "orders_containing_count needs 1 <= r < 2n, got n={n}, r={r}"
        ));
    }
    let (n, r) = (u64::from(n), u64::from(r));
    Ok(if r <= n {
        factorial(r) * factorial(n - r) * pow2(n - r)
    } else {
        factorial(2 * n - r) * factorial(r - n) * pow2(r - n)
    })
}

/// The double-counting quotient `r * #good orders / #orders containing F`.
///
/// Fails with an integrity error if the division is not exact.
pub fn double_counting_quotient(n: u32, r: u32) -> Result<BigUint> {
    let numerator = BigUint::from(r) * good_order_count(n)?;
    let denominator = orders_containing_count(n, r)?;
    let (q, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(integrity_err!(
            "double counting quotient for n={n}, r={r} is not an integer"
        ));
    }
    Ok(q)
}
