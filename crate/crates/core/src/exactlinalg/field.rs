use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::matrix::Matrix;

/// 2^61 - 1, the default modulus.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// 2^62 - 57, used as the second prime when a defect has to be confirmed.
pub const ALT_PRIME: u64 = (1 << 62) - 57;

/// Which exact field a computation ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldMode {
    Prime(u64),
    Rational,
}

impl FieldMode {
    pub fn name(&self) -> &'static str {
        match self {
            FieldMode::Prime(_) => "prime",
            FieldMode::Rational => "rational",
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            FieldMode::Prime(p) => Some(*p),
            FieldMode::Rational => None,
        }
    }
}

/// An exact field, given as a context object that knows how to combine its
/// elements.
///
/// Elements do not carry the modulus; the context does. This keeps prime field
/// elements a plain `u64` while still allowing the prime to be chosen at run
/// time.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A random element for generic-point sampling.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn mode(&self) -> FieldMode;

    /// Rank of `m`. Fields may override this with a cheaper or better
    /// conditioned elimination.
    fn rank(&self, m: &Matrix<Self>) -> usize
    where
        Self: Sized,
    {
        m.gaussian_rank()
    }
}

/// The prime field F_p for a prime 2^31 <= p < 2^63.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: MERSENNE_61 }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < (1 << 31) {
            return Err(Error::InvalidPrime(p, "must be at least 2^31"));
        }
        if p >= (1 << 63) {
            return Err(Error::InvalidPrime(p, "must be below 2^63"));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p, "not prime"));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_product(&self, x: u128) -> u64 {
        if self.p == MERSENNE_61 {
            let r = (x as u64 & MERSENNE_61) + (x >> 61) as u64;
            let r = (r & MERSENNE_61) + (r >> 61);
            if r >= MERSENNE_61 {
                r - MERSENNE_61
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128);
        r as u64
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_product(*a as u128 * *b as u128)
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Prime(self.p)
    }
}

/// Bound on the magnitude of random integers used as rational generic points.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1000;

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Rational
    }

    fn rank(&self, m: &Matrix<Self>) -> usize {
        bareiss_rank(m)
    }
}

/// Fraction-free elimination: rows are cleared of denominators and the
/// elimination stays in the integers, every division being exact.
fn bareiss_rank(m: &Matrix<RationalField>) -> usize {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| {
                num_integer::lcm(acc, x.denom().clone())
            });
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.len() {
            break;
        }
        // smallest nonzero pivot keeps intermediate entries short
        let pivot = (rank..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for x in &mut row[c + 1..cols] {
                    *x = &*x * &prow[c] / &prev;
                }
            } else {
                for j in c + 1..cols {
                    row[j] = (&prow[c] * &row[j] - &row[c] * &prow[j]) / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = prow[c].clone();
        rank += 1;
    }
    rank
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_and_alternate_primes_are_prime() {
        assert!(is_prime(MERSENNE_61));
        assert!(is_prime(ALT_PRIME));
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(MERSENNE_61 - 2));
        assert!(!is_prime(1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn prime_field_rejects_bad_moduli() {
        assert!(PrimeField::new(1_000_000_007).is_err());
        assert!(PrimeField::new((1 << 31) + 1).is_err());
        assert!(PrimeField::new(ALT_PRIME).is_ok());
    }

    #[test]
    fn negative_integers_map_into_range() {
        let f = PrimeField::default();
        assert_eq!(f.from_i64(-1), MERSENNE_61 - 1);
        assert_eq!(f.add(&f.from_i64(-5), &5), 0);
    }

    proptest! {
        #[test]
        fn field_axioms_mersenne(a in 0..MERSENNE_61, b in 0..MERSENNE_61) {
            let f = PrimeField::default();
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
            let expected = ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64;
            prop_assert_eq!(f.mul(&a, &b), expected);
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        }

        #[test]
        fn field_axioms_generic_prime(a in 0..ALT_PRIME) {
            let f = PrimeField::new(ALT_PRIME).unwrap();
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_inverse(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let f = RationalField;
            let x = f.mul(&f.from_i64(n), &f.inv(&f.from_i64(d)).unwrap());
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
            prop_assert!(f.is_zero(&f.add(&x, &f.neg(&x))));
        }
    }
}
