//! Coefficient domains: arbitrary-precision rationals, prime fields, and
//! Gaussian rationals.
//!
//! Every domain used for polynomial coefficients is a field, so multivariate
//! division by a single divisor is decisive and Buchberger's algorithm can be
//! written once over the [`Coeff`] trait.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Field operations required of a polynomial coefficient.
///
/// `ModP` carries its modulus in each value, so the additive and
/// multiplicative identities are produced *from context* (`zero_like`,
/// `one_like`) rather than from thin air.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    /// Image of a rational number in this field, if defined (the denominator
    /// must be invertible).
    fn from_ratio(r: &BigRational) -> Option<Self>;
    fn from_i64(n: i64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)))
            .expect("integer image must exist")
    }
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        self.recip()
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }
}

/// An element of the prime field `F_p`.
///
/// `p == 0` marks a "universal" constant (produced by `zero_like`/`one_like`
/// before a concrete modulus is known); it unifies with any modulus on the
/// first binary operation.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    pub value: u64,
    pub modulus: u64,
}

impl ModP {
    pub fn new(value: i64, p: u64) -> Self {
        debug_assert!(p > 1);
        let v = value.rem_euclid(p as i64) as u64;
        ModP { value: v, modulus: p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        ModP { value: value % p, modulus: p }
    }

    fn join(&self, other: &Self) -> u64 {
        match (self.modulus, other.modulus) {
            (0, p) | (p, 0) => p,
            (p, q) => {
                assert_eq!(p, q, "mixed moduli {p} and {q}");
                p
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let p = self.modulus;
        assert!(p != 0);
        let mut base = self.value as u128;
        let mut acc: u128 = 1;
        let m = p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        ModP { value: acc as u64, modulus: p }
    }
}

impl PartialEq for ModP {
    fn eq(&self, other: &Self) -> bool {
        (self.modulus == other.modulus || self.modulus == 0 || other.modulus == 0)
            && self.value == other.value
    }
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

impl Coeff for ModP {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn zero_like(&self) -> Self {
        ModP { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        ModP { value: 1, modulus: self.modulus }
    }
    fn add(&self, other: &Self) -> Self {
        let p = self.join(other);
        if p == 0 {
            return ModP { value: self.value + other.value, modulus: 0 };
        }
        ModP { value: ((self.value as u128 + other.value as u128) % p as u128) as u64, modulus: p }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.join(other);
        if p == 0 {
            return ModP { value: self.value * other.value, modulus: 0 };
        }
        ModP { value: (self.value as u128 * other.value as u128 % p as u128) as u64, modulus: p }
    }
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else if self.modulus == 0 {
            panic!("cannot negate a universal constant");
        } else {
            ModP { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
    fn inv(&self) -> Self {
        assert!(self.modulus != 0, "cannot invert a universal constant");
        let v = mod_inverse(self.value, self.modulus).expect("zero has no inverse");
        ModP { value: v, modulus: self.modulus }
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        // Only a concrete field context can interpret a rational; callers use
        // `ratio_mod_p` instead.
        let _ = r;
        None
    }
    fn from_i64(n: i64) -> Self {
        // Universal integer constant; unifies with any modulus on first use.
        assert!(n >= 0, "universal ModP constants must be non-negative");
        ModP { value: n as u64, modulus: 0 }
    }
}

/// Image of a rational in `F_p`; `None` when the denominator is divisible by `p`.
pub fn ratio_mod_p(r: &BigRational, p: u64) -> Option<ModP> {
    let pm = BigInt::from(p);
    let den = r.denom() % &pm;
    let den_u = den.magnitude().to_u64_digits().first().copied().unwrap_or(0);
    if den_u == 0 {
        return None;
    }
    let num = {
        let m = (r.numer() % &pm + &pm) % &pm;
        m.magnitude().to_u64_digits().first().copied().unwrap_or(0)
    };
    let inv = mod_inverse(den_u, p)?;
    Some(ModP { value: (num as u128 * inv as u128 % p as u128) as u64, modulus: p })
}

/// A Gaussian rational `re + im*i`, the coefficient field used when a
/// computation fixes the imaginary unit to a concrete value.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Coeff for GaussRat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn zero_like(&self) -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }
    fn one_like(&self) -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        GaussRat::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        GaussRat::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!Zero::is_zero(&n), "division by zero");
        GaussRat::new(&self.re / &n, -(&self.im / &n))
    }
    fn from_ratio(r: &BigRational) -> Option<Self> {
        Some(GaussRat::new(r.clone(), BigRational::zero()))
    }
}

/// Rational helpers shared across the crate.
pub fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big_int_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Render a rational as `n` or `n/d`.
pub fn render_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Positive-denominator, reduced-form check (invariants maintained by
/// `num-rational` itself; exposed for tests).
pub fn ratio_is_canonical(r: &BigRational) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modp_field_ops() {
        let p = 32452843u64;
        let a = ModP::new(7, p);
        let b = ModP::new(-3, p);
        assert_eq!(a.add(&b), ModP::new(4, p));
        assert_eq!(a.mul(&b), ModP::new(-21, p));
        assert_eq!(a.mul(&a.inv()), ModP::new(1, p));
        let half = ratio_mod_p(&big_rat(1, 2), p).unwrap();
        assert_eq!(half.value, 16226422);
    }

    #[test]
    fn modp_universal_constants() {
        let p = 101u64;
        let one = ModP::from_i64(1);
        let a = ModP::new(40, p);
        assert_eq!(one.add(&a).value, 41);
        assert_eq!(one.add(&a).modulus, p);
    }

    #[test]
    fn gauss_inverse() {
        let g = GaussRat::new(big_int_rat(1), big_int_rat(1));
        let i = g.mul(&g.inv());
        assert_eq!(i, g.one_like());
    }

    #[test]
    fn denominator_divisible_by_p() {
        assert!(ratio_mod_p(&big_rat(1, 7), 7).is_none());
    }
}
