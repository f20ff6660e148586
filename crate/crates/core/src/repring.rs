//! The rational representation ring of `Z/p` and the counts `r_m`, `a_j`,
//! `s_m` derived from it.
//!
//! `R_Q(Z/p)` has basis `[Q]` (trivial) and `[R] = [Q[Z/p]]` (regular) with
//! `[R]² = p·[R]`; the remaining irreducible is `[Q(ζ)] = [R] - [Q]`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::abelian::is_prime;
use crate::error::{Error, Result};
use crate::zpmod::binomial;

/// `q·[Q] + reg·[Q[Z/p]]` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepClass {
    pub p: u64,
    pub q: BigRational,
    pub reg: BigRational,
}

fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RepClass {
    pub fn new(p: u64, q: BigRational, reg: BigRational) -> Self {
        RepClass { p, q, reg }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, BigRational::zero(), BigRational::zero())
    }

    /// The trivial representation `[Q]`.
    pub fn trivial(p: u64) -> Self {
        Self::new(p, BigRational::one(), BigRational::zero())
    }

    /// The regular representation `[Q[Z/p]]`.
    pub fn regular(p: u64) -> Self {
        Self::new(p, BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.reg.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.p, &self.q * c, &self.reg * c)
    }

    /// Rank of the invariants: the ring map sending both basis classes to 1.
    pub fn phi(&self) -> BigRational {
        &self.q + &self.reg
    }

    /// Underlying dimension.
    pub fn dim(&self) -> BigRational {
        &self.q + &self.reg * rat(self.p as i128)
    }

    /// True when this is the class of an actual representation: the
    /// multiplicities of `Q` and `Q(ζ)` are nonnegative integers.
    pub fn is_effective(&self) -> bool {
        let trivial_mult = &self.q + &self.reg;
        let zeta_mult = self.reg.clone();
        [trivial_mult, zeta_mult].iter().all(|x| x.is_integer() && !x.is_negative())
    }
}

impl Add for &RepClass {
    type Output = RepClass;
    fn add(self, rhs: &RepClass) -> RepClass {
        assert_eq!(self.p, rhs.p);
        RepClass::new(self.p, &self.q + &rhs.q, &self.reg + &rhs.reg)
    }
}

impl Sub for &RepClass {
    type Output = RepClass;
    fn sub(self, rhs: &RepClass) -> RepClass {
        assert_eq!(self.p, rhs.p);
        RepClass::new(self.p, &self.q - &rhs.q, &self.reg - &rhs.reg)
    }
}

impl Mul for &RepClass {
    type Output = RepClass;
    fn mul(self, rhs: &RepClass) -> RepClass {
        assert_eq!(self.p, rhs.p);
        let p = rat(self.p as i128);
        let q = &self.q * &rhs.q;
        let reg = &self.q * &rhs.reg + &self.reg * &rhs.q + &self.reg * &rhs.reg * p;
        RepClass::new(self.p, q, reg)
    }
}

fn check(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn sign(l: u64) -> i128 {
    if l % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `[Λ^l Q(ζ)] = (-1)^l [Q] + (1/p)(C(p-1, l) - (-1)^l) [Q[Z/p]]`, zero for
/// `l ≥ p`.
pub fn lambda_class(p: u64, l: i64) -> Result<RepClass> {
    check(p)?;
    if l < 0 {
        return Err(Error::DegreeOutOfRange(format!("exterior degree {l}")));
    }
    let l = l as u64;
    if l >= p {
        return Ok(RepClass::zero(p));
    }
    let s = sign(l);
    let reg = BigRational::new(BigInt::from(binomial(p - 1, l) as i128 - s), BigInt::from(p));
    Ok(RepClass::new(p, rat(s), reg))
}

/// `[Λ^m (Q(ζ)^k)]`, the convolution of [`lambda_class`] over compositions
/// `l_1 + ... + l_k = m` with `0 ≤ l_i ≤ p - 1`.
pub fn lambda_class_total(p: u64, k: u64, m: u64) -> Result<RepClass> {
    Ok(lambda_class_table(p, k)?.get(m as usize).cloned().unwrap_or_else(|| RepClass::zero(p)))
}

/// `[Λ^m (Q(ζ)^k)]` for every `0 ≤ m ≤ k(p-1)`.
pub fn lambda_class_table(p: u64, k: u64) -> Result<Vec<RepClass>> {
    check(p)?;
    let single: Vec<RepClass> = (0..p as i64).map(|l| lambda_class(p, l)).collect::<Result<_>>()?;
    let mut poly = vec![RepClass::trivial(p)];
    for _ in 0..k {
        let mut next = vec![RepClass::zero(p); poly.len() + single.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in single.iter().enumerate() {
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        poly = next;
    }
    Ok(poly)
}

fn to_count(x: &BigRational, what: &str) -> Result<u64> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegral(format!("{what} = {x}")));
    }
    x.to_integer().to_u64().ok_or_else(|| Error::Internal(format!("{what} overflows u64")))
}

/// `r_m`, the rank of the invariants of `Λ^m(Z[ζ]^k)`.
pub fn r_m(p: u64, k: u64, m: u64) -> Result<u64> {
    to_count(&lambda_class_total(p, k, m)?.phi(), &format!("r_{m}(p={p},k={k})"))
}

/// `(r_0, ..., r_n)` with `n = k(p-1)`.
pub fn r_vector(p: u64, k: u64) -> Result<Vec<u64>> {
    lambda_class_table(p, k)?
        .iter()
        .enumerate()
        .map(|(m, c)| to_count(&c.phi(), &format!("r_{m}(p={p},k={k})")))
        .collect()
}

/// Number of compositions `l_1 + ... + l_k = j` with `0 ≤ l_i ≤ p - 1`,
/// by dynamic programming over the parts.
pub fn a_j(p: u64, k: u64, j: u64) -> u64 {
    a_vector(p, k).get(j as usize).copied().unwrap_or(0)
}

/// `(a_0, ..., a_n)`.
pub fn a_vector(p: u64, k: u64) -> Vec<u64> {
    let mut ways = vec![1u64];
    for _ in 0..k {
        let mut next = vec![0u64; ways.len() + p as usize - 1];
        for (i, w) in ways.iter().enumerate() {
            for l in 0..p as usize {
                next[i + l] += w;
            }
        }
        ways = next;
    }
    ways
}

/// The same count by inclusion–exclusion:
/// `Σ_i (-1)^i C(k, i) C(j - ip + k - 1, k - 1)`.
pub fn a_j_inclusion_exclusion(p: u64, k: u64, j: u64) -> u64 {
    let mut acc: i128 = 0;
    for i in 0..=k {
        if i * p > j {
            break;
        }
        let term = binomial(k, i) as i128 * binomial(j - i * p + k - 1, k - 1) as i128;
        acc += sign(i) * term;
    }
    acc as u64
}

/// `s_m = Σ_{j<m} a_j`.
pub fn s_m(p: u64, k: u64, m: u64) -> u64 {
    a_vector(p, k).iter().take(m as usize).sum()
}

/// The closed-form sums of the `r_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RSums {
    pub sum_all: u64,
    pub sum_even: u64,
    pub sum_odd: u64,
    pub alternating: i64,
}

/// Evaluates the closed forms for `Σ r_m`, the even and odd partial sums and
/// the alternating sum, and checks each one against direct summation.
pub fn r_sum_identities(p: u64, k: u64) -> Result<RSums> {
    check(p)?;
    let r = r_vector(p, k)?;
    let direct_even: u64 = r.iter().step_by(2).sum();
    let direct_odd: u64 = r.iter().skip(1).step_by(2).sum();
    let direct_alt = direct_even as i64 - direct_odd as i64;
    let n = k * (p - 1);
    let big = |x: u64| BigInt::from(x);
    let two_n = BigInt::from(2u8).pow(n as u32);
    let pk1 = big(p).pow((k - 1) as u32);
    let closed = if p == 2 {
        let half = BigInt::from(2u8).pow((n - 1) as u32);
        (half.clone(), half, BigInt::zero(), BigInt::zero() + pk1.clone() * big(p - 1))
    } else {
        let all = (&two_n - 1u8) / big(p) + 1u8;
        let base = (&two_n + big(p - 1)) / big(2 * p);
        let corr = &pk1 * big(p - 1) / 2u8;
        (all, &base + &corr, &base - &corr, &pk1 * big(p - 1))
    };
    let as_u64 = |x: &BigInt| x.to_u64().ok_or_else(|| Error::Internal("sum identity overflow".into()));
    let sums = RSums {
        sum_all: as_u64(&closed.0)?,
        sum_even: as_u64(&closed.1)?,
        sum_odd: as_u64(&closed.2)?,
        alternating: closed.3.to_i64().ok_or_else(|| Error::Internal("alternating sum overflow".into()))?,
    };
    let direct = RSums { sum_all: direct_even + direct_odd, sum_even: direct_even, sum_odd: direct_odd, alternating: direct_alt };
    if sums != direct {
        return Err(Error::Internal(format!("sum identities disagree for p={p}, k={k}: closed {sums:?}, direct {direct:?}")));
    }
    Ok(sums)
}
