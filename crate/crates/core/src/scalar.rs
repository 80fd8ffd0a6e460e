//! Coefficient fields: exact rationals for certified runs, a machine-word
//! prime field for exploratory runs. Rank over a prime field only
//! lower-bounds rank over the rationals, so verdict-bearing computations
//! always use [`Rat`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always stored in reduced form with positive
/// denominator, so equality and hashing are canonical.
pub type Rat = num_rational::BigRational;

/// Field operations needed by the polynomial and linear-algebra layers.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Builds a rational from an integer pair. Panics on zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds an integer-valued rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().is_one() || r.denom() == &BigInt::from(-1)
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Default modulus for the prime field: 2^61 - 1 (a Mersenne prime).
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

static FP_PRIME: OnceLock<u64> = OnceLock::new();

/// Fixes the process-wide prime for [`Fp64`]. Fails if a different prime was
/// already fixed; the first arithmetic operation fixes the default otherwise.
pub fn set_fp_prime(p: u64) -> crate::error::Result<()> {
    if !is_prime_u64(p) {
        return Err(crate::error::LabError::Usage(format!(
            "{p} is not prime"
        )));
    }
    let got = *FP_PRIME.get_or_init(|| p);
    if got != p {
        return Err(crate::error::LabError::Usage(format!(
            "prime field modulus already fixed to {got}, cannot switch to {p}"
        )));
    }
    Ok(())
}

pub fn fp_prime() -> u64 {
    *FP_PRIME.get_or_init(|| DEFAULT_PRIME)
}

/// Element of the prime field F_p for the process-wide prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp64(u64);

impl Fp64 {
    pub fn new(v: u64) -> Self {
        Fp64(v % fp_prime())
    }
    pub fn value(self) -> u64 {
        self.0
    }
}

impl Display for Fp64 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Scalar for Fp64 {
    fn zero() -> Self {
        Fp64(0)
    }
    fn one() -> Self {
        Fp64(1 % fp_prime())
    }
    fn from_i64(v: i64) -> Self {
        let p = fp_prime();
        let m = v.rem_euclid(p as i64) as u64;
        Fp64(m)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let p = fp_prime();
        let mut s = self.0 + rhs.0;
        if s >= p {
            s -= p;
        }
        Fp64(s)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let p = fp_prime();
        Fp64(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + p - rhs.0
        })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp64(mul_mod(self.0, rhs.0, fp_prime()))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp64(fp_prime() - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            let p = fp_prime();
            Some(Fp64(pow_mod(self.0, p - 2, p)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_display_is_canonical() {
        assert_eq!(rat(3, 2).to_string(), "3/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(rat(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn fp_field_axioms_spot() {
        let a = Fp64::from_i64(-7);
        let b = Fp64::from_i64(12);
        assert_eq!(a.add(&b), Fp64::from_i64(5));
        assert_eq!(a.mul(&a.inv().unwrap()), Fp64::one());
        assert_eq!(a.sub(&a), Fp64::zero());
        assert!(Fp64::zero().inv().is_none());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert!(!is_prime_u64(1));
    }

    #[test]
    fn scalar_pow() {
        assert_eq!(Scalar::pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(Scalar::pow(&rat(5, 1), 0), rat_int(1));
    }
}
