//! Closed-form bounds on `f_ell(n, k)` and the slack term γ(k).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::subsets::binomial_big;

pub type Rational = BigRational;

fn rat(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `1 / (1 + γ(k)) = 1 - (k-2)(k-3) / (2·C(2k,k)) - (k-2)/C(3k,2k) - (k-2)·C(2k,k)/C(3k,k)`.
pub fn gamma_reciprocal(k: usize) -> Result<Rational> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "gamma is defined for k >= 2, got {k}"
        )));
    }
    let k64 = k as u64;
    let central = rat(binomial_big(2 * k64, k64));
    let triple = rat(binomial_big(3 * k64, k64));
    let triple_2k = rat(binomial_big(3 * k64, 2 * k64));
    let km2 = int(k as i64 - 2);
    let km3 = int(k as i64 - 3);
    let x = Rational::one()
        - &km2 * &km3 / (int(2) * &central)
        - &km2 / &triple_2k
        - &km2 * &central / &triple;
    if x <= Rational::zero() {
        return Err(Error::Domain(format!(
            "gamma reciprocal is not positive for k = {k}"
        )));
    }
    Ok(x)
}

/// γ(k) from the cross-intersecting matching estimate: `γ(2) = 0`, `γ(3) = 1/3`.
pub fn gamma_raw(k: usize) -> Result<Rational> {
    Ok(gamma_reciprocal(k)?.recip() - Rational::one())
}

/// γ(k) as used in the `f_2` upper bound, where `γ(2)` is taken as `1/3`.
pub fn gamma_upper(k: usize) -> Result<Rational> {
    if k == 2 {
        Ok(Rational::new(BigInt::from(1), BigInt::from(3)))
    } else {
        gamma_raw(k)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn central(k: usize) -> BigUint {
    binomial_big(2 * k as u64, k as u64)
}

/// Excess of the two-block construction over `⌊n/k⌋`: `C(2k,k)·k/2 - k`.
pub fn lower_c2(k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(central(k) * k / 2u32 - k)
}

/// `⌊n/k⌋ + (1 + γ(k))·k·C(2k,k)`, valid for `n, k >= 2`.
pub fn upper_c2(n: usize, k: usize) -> Result<Rational> {
    if n < 2 || k < 2 {
        return Err(Error::Domain(format!(
            "upper_c2 needs n, k >= 2, got n = {n}, k = {k}"
        )));
    }
    let slack = (Rational::one() + gamma_upper(k)?) * int(k as i64) * rat(central(k));
    Ok(int((n / k) as i64) + slack)
}

/// `(ell·n - 2·ell - 1, ell·n - ell + 1)` for `k = 1`, `ell >= 3`.
pub fn t1_bounds(n: usize, ell: usize) -> Result<(i64, i64)> {
    if ell < 3 || n < 1 {
        return Err(Error::Domain(format!(
            "t1_bounds needs ell >= 3 and n >= 1, got ell = {ell}, n = {n}"
        )));
    }
    let (n, l) = (n as i64, ell as i64);
    Ok((l * n - 2 * l - 1, l * n - l + 1))
}

fn even_product(up_to: usize) -> BigUint {
    (1..=up_to / 2).fold(BigUint::one(), |acc, j| acc * (2 * j))
}

/// Upper bound from alternating the degree recursions:
/// `2·4·…·ell·n^(ell/2)` for even `ell`, `⌊2·4·…·(ell-1)·n^((ell+1)/2) / k⌋` for odd `ell`.
pub fn power_upper(n: usize, k: usize, ell: usize) -> Result<BigUint> {
    if n < 1 || k < 1 || ell < 1 {
        return Err(Error::Domain("power_upper needs n, k, ell >= 1".into()));
    }
    let nb = BigUint::from(n);
    Ok(if ell.is_multiple_of(2) {
        even_product(ell) * nb.pow((ell / 2) as u32)
    } else {
        even_product(ell - 1) * nb.pow(ell.div_ceil(2) as u32) / k
    })
}

/// The summarized form `2^⌊ell/2⌋ · ⌊ell/2⌋! · n^⌊(ell+1)/2⌋`, never sharper than [`power_upper`].
pub fn power_upper_summary(n: usize, ell: usize) -> Result<BigUint> {
    if n < 1 || ell < 1 {
        return Err(Error::Domain(
            "power_upper_summary needs n, ell >= 1".into(),
        ));
    }
    Ok(even_product(2 * (ell / 2)) * BigUint::from(n).pow(ell.div_ceil(2) as u32))
}

/// `⌊log2(ell + 1)⌋`.
pub fn log2_floor_plus_one(ell: usize) -> u32 {
    (ell + 1).ilog2()
}

/// `⌊n/k⌋^⌊log2(ell+1)⌋` when `k >= ⌊log2(ell+1)⌋`; `None` when inapplicable.
pub fn power_lower(n: usize, k: usize, ell: usize) -> Result<Option<BigUint>> {
    if n < 1 || k < 1 || ell < 1 {
        return Err(Error::Domain("power_lower needs n, k, ell >= 1".into()));
    }
    let t = log2_floor_plus_one(ell);
    if (k as u64) < t as u64 {
        return Ok(None);
    }
    Ok(Some(BigUint::from(n / k).pow(t)))
}
