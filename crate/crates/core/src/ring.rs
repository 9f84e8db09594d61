//! Arithmetic in Z/2^M, 2-adic valuations and truncated top-anchored series.
//!
//! Index `k` of a [`TruncSeries`] is the coefficient of `x^(deg-k)`, so a monic
//! polynomial always starts with `1`.

use std::fmt::{self, Debug};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classes::ClassTuple;
use crate::error::{invalid, Result};

/// Commutative ring used by every division-free algorithm in the crate.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
    fn from_u64(v: u64) -> Self;
    fn from_biguint(v: &BigUint) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    /// Representative of `self mod 2^bits` in `[0, 2^bits)`, for `bits <= 64`.
    fn low_bits(&self, bits: u32) -> u64;
}

pub fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Element of Z/2^64 with wrapping arithmetic. Reducing to any smaller power
/// of two commutes with every ring operation, so one type serves all M <= 64.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2k(pub u64);

impl Debug for Z2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Z2k {
    type Output = Z2k;
    #[inline]
    fn add(self, o: Z2k) -> Z2k {
        Z2k(self.0.wrapping_add(o.0))
    }
}
impl Sub for Z2k {
    type Output = Z2k;
    #[inline]
    fn sub(self, o: Z2k) -> Z2k {
        Z2k(self.0.wrapping_sub(o.0))
    }
}
impl Mul for Z2k {
    type Output = Z2k;
    #[inline]
    fn mul(self, o: Z2k) -> Z2k {
        Z2k(self.0.wrapping_mul(o.0))
    }
}
impl Neg for Z2k {
    type Output = Z2k;
    #[inline]
    fn neg(self) -> Z2k {
        Z2k(self.0.wrapping_neg())
    }
}
impl AddAssign for Z2k {
    fn add_assign(&mut self, o: Z2k) {
        *self = *self + o;
    }
}
impl SubAssign for Z2k {
    fn sub_assign(&mut self, o: Z2k) {
        *self = *self - o;
    }
}
impl MulAssign for Z2k {
    fn mul_assign(&mut self, o: Z2k) {
        *self = *self * o;
    }
}
impl Zero for Z2k {
    fn zero() -> Z2k {
        Z2k(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
impl One for Z2k {
    fn one() -> Z2k {
        Z2k(1)
    }
}

fn biguint_low_u64(v: &BigUint) -> u64 {
    v.iter_u64_digits().next().unwrap_or(0)
}

impl Ring for Z2k {
    fn from_i64(v: i64) -> Z2k {
        Z2k(v as u64)
    }
    fn from_u64(v: u64) -> Z2k {
        Z2k(v)
    }
    fn from_biguint(v: &BigUint) -> Z2k {
        Z2k(biguint_low_u64(v))
    }
    fn from_bigint(v: &BigInt) -> Z2k {
        let low = biguint_low_u64(v.magnitude());
        match v.sign() {
            Sign::Minus => Z2k(low.wrapping_neg()),
            _ => Z2k(low),
        }
    }
    fn low_bits(&self, bits: u32) -> u64 {
        self.0 & mask(bits)
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_u64(v: u64) -> BigInt {
        BigInt::from(v)
    }
    fn from_biguint(v: &BigUint) -> BigInt {
        BigInt::from(v.clone())
    }
    fn from_bigint(v: &BigInt) -> BigInt {
        v.clone()
    }
    fn low_bits(&self, bits: u32) -> u64 {
        Z2k::from_bigint(self).low_bits(bits)
    }
}

/// Element of Z/2^BITS backed by an arbitrary-precision integer, for widths
/// beyond a machine word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z2kBig<const BITS: u32>(BigUint);

impl<const BITS: u32> Z2kBig<BITS> {
    fn reduce(v: BigUint) -> Self {
        if v.bits() <= BITS as u64 {
            return Z2kBig(v);
        }
        let m = (BigUint::one() << BITS) - 1u32;
        Z2kBig(v & m)
    }
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl<const BITS: u32> Debug for Z2kBig<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl<const BITS: u32> Add for Z2kBig<BITS> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::reduce(self.0 + o.0)
    }
}
impl<const BITS: u32> Sub for Z2kBig<BITS> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl<const BITS: u32> Mul for Z2kBig<BITS> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::reduce(self.0 * o.0)
    }
}
impl<const BITS: u32> Neg for Z2kBig<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0.is_zero() {
            self
        } else {
            Z2kBig((BigUint::one() << BITS) - self.0)
        }
    }
}
impl<const BITS: u32> Zero for Z2kBig<BITS> {
    fn zero() -> Self {
        Z2kBig(BigUint::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}
impl<const BITS: u32> One for Z2kBig<BITS> {
    fn one() -> Self {
        Self::reduce(BigUint::one())
    }
}
impl<const BITS: u32> Ring for Z2kBig<BITS> {
    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }
    fn from_u64(v: u64) -> Self {
        Self::reduce(BigUint::from(v))
    }
    fn from_biguint(v: &BigUint) -> Self {
        Self::reduce(v.clone())
    }
    fn from_bigint(v: &BigInt) -> Self {
        let r = Self::reduce(v.magnitude().clone());
        if v.sign() == Sign::Minus {
            -r
        } else {
            r
        }
    }
    fn low_bits(&self, bits: u32) -> u64 {
        biguint_low_u64(&self.0) & mask(bits.min(BITS))
    }
}

/// A residue modulo 2^bits, kept in canonical form. Used for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub bits: u32,
}

impl Residue {
    pub fn new(value: u64, bits: u32) -> Residue {
        assert!((1..=64).contains(&bits), "modulus width must be in 1..=64");
        Residue { value: value & mask(bits), bits }
    }
    pub fn of<R: Ring>(x: &R, bits: u32) -> Residue {
        Residue::new(x.low_bits(bits), bits)
    }
    pub fn add(self, o: Residue) -> Residue {
        assert_eq!(self.bits, o.bits);
        Residue::new(self.value.wrapping_add(o.value), self.bits)
    }
    pub fn mul(self, o: Residue) -> Residue {
        assert_eq!(self.bits, o.bits);
        Residue::new(self.value.wrapping_mul(o.value), self.bits)
    }
    pub fn neg(self) -> Residue {
        Residue::new(self.value.wrapping_neg(), self.bits)
    }
}

/// 2-adic valuation; `Infinity` exactly for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val2 {
    Finite(i64),
    Infinity,
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val2::Finite(v) => write!(f, "{v}"),
            Val2::Infinity => write!(f, "inf"),
        }
    }
}

pub fn v2_int(a: &BigInt) -> Val2 {
    match a.trailing_zeros() {
        Some(z) => Val2::Finite(z as i64),
        None => Val2::Infinity,
    }
}

pub fn v2_rational(q: &BigRational) -> Val2 {
    match (v2_int(q.numer()), v2_int(q.denom())) {
        (Val2::Infinity, _) => Val2::Infinity,
        (Val2::Finite(a), Val2::Finite(b)) => Val2::Finite(a - b),
        (Val2::Finite(_), Val2::Infinity) => unreachable!("denominator is nonzero"),
    }
}

/// Valuation of `num / den`.
pub fn v2(num: &BigInt, den: &BigInt) -> Result<Val2> {
    if den.is_zero() {
        return invalid("zero denominator");
    }
    Ok(v2_rational(&BigRational::new(num.clone(), den.clone())))
}

/// ν₂(n!) by Legendre's formula.
pub fn nu2_factorial(n: u64) -> u64 {
    n - n.count_ones() as u64
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn pow2(bits: u32) -> BigUint {
    BigUint::one() << bits
}

/// Truncated top-anchored coefficient sequence `c_0..c_D`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    pub fn new(coeffs: Vec<R>) -> TruncSeries<R> {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        TruncSeries { coeffs }
    }

    /// `coeffs` cut or zero-padded to depth `depth`.
    pub fn from_prefix(coeffs: &[R], depth: usize) -> TruncSeries<R> {
        let mut c: Vec<R> = coeffs.iter().take(depth + 1).cloned().collect();
        c.resize(depth + 1, R::zero());
        TruncSeries { coeffs: c }
    }

    pub fn one(depth: usize) -> TruncSeries<R> {
        let mut c = vec![R::zero(); depth + 1];
        c[0] = R::one();
        TruncSeries { coeffs: c }
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn get(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn mul(&self, other: &TruncSeries<R>) -> Result<TruncSeries<R>> {
        series_mul(self, other)
    }

    pub fn pow(&self, n: &BigUint) -> TruncSeries<R> {
        series_pow(self, n)
    }
}

fn conv<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let d = a.len();
    let mut out = vec![R::zero(); d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().take(d - i).enumerate() {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

pub fn series_mul<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>> {
    if a.depth() != b.depth() {
        return invalid(format!(
            "series depth mismatch: {} vs {}",
            a.depth(),
            b.depth()
        ));
    }
    Ok(TruncSeries { coeffs: conv(&a.coeffs, &b.coeffs) })
}

/// `a^n` by square-and-multiply.
pub fn series_pow<R: Ring>(a: &TruncSeries<R>, n: &BigUint) -> TruncSeries<R> {
    let mut acc = TruncSeries::one(a.depth());
    if n.is_zero() {
        return acc;
    }
    if a.coeffs[1..].iter().all(|c| c.is_zero()) && a.coeffs[0].is_one() {
        return acc;
    }
    for i in (0..n.bits()).rev() {
        acc.coeffs = conv(&acc.coeffs, &acc.coeffs);
        if n.bit(i) {
            acc.coeffs = conv(&acc.coeffs, &a.coeffs);
        }
    }
    acc
}

/// `(c_2 mod 2^e, ..., c_e mod 2^e)`.
pub fn residues_mod<R: Ring>(coeffs: &[R], e: u32) -> Result<ClassTuple> {
    if e < 2 {
        return invalid("e must be at least 2");
    }
    if e > 64 {
        return invalid("e above 64 is not supported for class tuples");
    }
    if coeffs.len() < e as usize + 1 {
        return invalid(format!(
            "need coefficients up to index {e}, have {}",
            coeffs.len().saturating_sub(1)
        ));
    }
    Ok(ClassTuple(
        coeffs[2..=e as usize].iter().map(|c| c.low_bits(e)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(v: &[i64]) -> TruncSeries<Z2k> {
        TruncSeries::new(v.iter().map(|&x| Z2k::from_i64(x)).collect())
    }

    #[test]
    fn valuations() {
        assert_eq!(v2_int(&BigInt::from(8)), Val2::Finite(3));
        assert_eq!(v2_int(&BigInt::from(0)), Val2::Infinity);
        assert_eq!(
            v2(&BigInt::from(3), &BigInt::from(8)).unwrap(),
            Val2::Finite(-3)
        );
        assert!(v2(&BigInt::from(3), &BigInt::from(0)).is_err());
        assert_eq!(nu2_factorial(720), 716);
        assert_eq!(nu2_factorial(6), 4);
    }

    #[test]
    fn series_products() {
        let a = zs(&[1, 0, -1, 0, 0]);
        assert_eq!(series_mul(&a, &a).unwrap(), zs(&[1, 0, -2, 0, 1]));
        let id = TruncSeries::one(4);
        assert_eq!(series_mul(&a, &id).unwrap(), a);
        assert_eq!(
            series_mul(&zs(&[1, 2, 1]), &zs(&[1, 1, 0])).unwrap(),
            zs(&[1, 3, 3])
        );
        assert!(series_mul(&zs(&[1, 2]), &zs(&[1, 1, 0])).is_err());
    }

    #[test]
    fn series_powers() {
        let a = zs(&[1, 0, -1]);
        assert_eq!(series_pow(&a, &BigUint::from(0u32)), TruncSeries::one(2));
        assert_eq!(series_pow(&a, &BigUint::from(1u32)), a);
        assert_eq!(series_pow(&a, &BigUint::from(2u32)), zs(&[1, 0, -2]));
    }

    #[test]
    fn residues() {
        let c = [1i64, -3, 0, 4].map(BigInt::from);
        assert_eq!(residues_mod(&c, 3).unwrap(), ClassTuple(vec![0, 4]));
        assert!(residues_mod(&c, 1).is_err());
        assert!(residues_mod(&c, 4).is_err());
    }

    #[test]
    fn residue_ops() {
        let a = Residue::new(7, 3);
        assert_eq!(a.add(Residue::new(2, 3)).value, 1);
        assert_eq!(a.mul(a).value, 1);
        assert_eq!(a.neg().value, 1);
    }
}
