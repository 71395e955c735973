//! Racah single-sum formula in exact integer arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::spin::SixJArguments;

/// A real number `coeff * sqrt(radicand)` with `radicand` a square-free integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtRational {
    pub coeff: BigRational,
    pub radicand: BigUint,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational {
            coeff: BigRational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The exact square `coeff^2 * radicand`.
    pub fn square(&self) -> BigRational {
        let r = BigRational::from_integer(BigInt::from(self.radicand.clone()));
        &self.coeff * &self.coeff * r
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Rounded to the nearest double. The square is converted first so that
    /// huge radicands with tiny coefficients do not overflow.
    pub fn to_f64(&self) -> f64 {
        let sq = self.square().to_f64().unwrap_or(f64::NAN);
        let v = num_traits::Float::sqrt(sq);
        if self.signum() < 0 {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut k = i * i;
            while k <= n {
                sieve[k] = false;
                k += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
}

/// Exponent of `p` in `n!` (Legendre).
fn legendre(n: u32, p: u32) -> i64 {
    let mut e = 0i64;
    let mut q = n / p;
    while q > 0 {
        e += i64::from(q);
        q /= p;
    }
    e
}

/// `(lo+1) * (lo+2) * ... * hi`, or 1 if `hi <= lo`.
fn prod_range(lo: u32, hi: u32) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = lo + 1;
    while k <= hi {
        acc *= k;
        k += 1;
    }
    acc
}

fn factorial(n: u32) -> BigUint {
    prod_range(0, n)
}

/// `{a b c; d e f}` from twice-spins, assuming the four triads are valid.
pub(crate) fn racah_twice(a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> SqrtRational {
    let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
    let alpha: [u32; 4] = triads.map(|(x, y, z)| (x + y + z) / 2);
    let beta: [u32; 3] = [(a + b + d + e) / 2, (a + c + d + f) / 2, (b + c + e + f) / 2];
    let t_min = *alpha.iter().max().unwrap();
    let t_max = *beta.iter().min().unwrap();

    // Product of the four triangle coefficients, squared, as prime exponents.
    let primes = primes_up_to(t_min + 1);
    let mut exps = vec![0i64; primes.len()];
    for &(x, y, z) in &triads {
        let num = [(x + y - z) / 2, (x + z - y) / 2, (y + z - x) / 2];
        let den = (x + y + z) / 2 + 1;
        for (ep, &p) in exps.iter_mut().zip(&primes) {
            *ep += num.iter().map(|&n| legendre(n, p)).sum::<i64>() - legendre(den, p);
        }
    }

    // Alternating sum over a common integer denominator.
    let mut denom = BigUint::one();
    for &al in &alpha {
        denom *= factorial(t_max - al);
    }
    for &be in &beta {
        denom *= factorial(be - t_min);
    }
    let mut numer = BigInt::zero();
    for t in t_min..=t_max {
        let mut term = factorial(t + 1);
        for &al in &alpha {
            term *= prod_range(t - al, t_max - al);
        }
        for &be in &beta {
            term *= prod_range(be - t, be - t_min);
        }
        if t % 2 == 0 {
            numer += BigInt::from(term);
        } else {
            numer -= BigInt::from(term);
        }
    }
    if numer.is_zero() {
        return SqrtRational::zero();
    }

    let mut up = BigUint::one();
    let mut down = BigUint::one();
    let mut radicand = BigUint::one();
    for (&ep, &p) in exps.iter().zip(&primes) {
        let half = ep.div_euclid(2);
        if ep.rem_euclid(2) == 1 {
            radicand *= p;
        }
        let pw = num_traits::pow(BigUint::from(p), half.unsigned_abs() as usize);
        if half > 0 {
            up *= pw;
        } else if half < 0 {
            down *= pw;
        }
    }
    let coeff = BigRational::new(numer * BigInt::from(up), BigInt::from(denom * down));
    SqrtRational { coeff, radicand }
}

/// Exact `{j1 j2 j12; j3 j4 j23}`.
pub fn sixj_exact(args: &SixJArguments) -> Result<SqrtRational> {
    args.validate()?;
    let [j1, j2, j3, j4, j12, j23] = args.twice();
    Ok(racah_twice(j1, j2, j12, j3, j4, j23))
}

/// Exact 6j rounded to a double.
pub fn sixj_f64(args: &SixJArguments) -> Result<f64> {
    Ok(sixj_exact(args)?.to_f64())
}
