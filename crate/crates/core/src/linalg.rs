//! Dense matrices, division-free characteristic polynomials, Newton identities,
//! walk counts and the coefficient link between `A` and `J - 2A`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::ring::{nu2_factorial, pow2, Ring};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Matrix<R> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Matrix<R>> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("matrix rows must all have length equal to the row count");
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<S: Clone>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }
}

impl<R: Clone + Zero> Matrix<R> {
    pub fn zeros(n: usize) -> Matrix<R> {
        Matrix { n, data: vec![R::zero(); n * n] }
    }
}

impl<R: Ring> Matrix<R> {
    pub fn identity(n: usize) -> Matrix<R> {
        Matrix::from_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::<R>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Leading principal block direct sum: `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix<R>) -> Matrix<R> {
        let (a, b) = (self.n, other.n);
        Matrix::from_fn(a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - a, j - a).clone(),
            _ => R::zero(),
        })
    }
}

/// Integer matrix; adjacency matrices use entries in {0, 1}.
pub type IntMatrix = Matrix<i64>;

impl IntMatrix {
    pub fn to_ring<R: Ring>(&self) -> Matrix<R> {
        self.map(|&x| R::from_i64(x))
    }

    pub fn is_adjacency(&self) -> bool {
        (0..self.n).all(|i| *self.get(i, i) == 0) && self.data.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `J - 2A`.
    pub fn seidel_like(&self) -> IntMatrix {
        self.map(|&a| 1 - 2 * a)
    }
}

/// Top-anchored coefficients `c_0..c_K` of a characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct CharCoeffs<R> {
    pub c: Vec<R>,
}

impl<R: Ring> CharCoeffs<R> {
    /// `c_k`, zero past the stored range.
    pub fn get(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }
}

/// Power sums `p_1..p_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSums<R> {
    p: Vec<R>,
}

impl<R: Ring> PowerSums<R> {
    pub fn new(p: Vec<R>) -> PowerSums<R> {
        PowerSums { p }
    }
    /// `p_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> R {
        assert!(k >= 1, "power sums start at p_1");
        self.p.get(k - 1).cloned().unwrap_or_else(R::zero)
    }
    pub fn len(&self) -> usize {
        self.p.len()
    }
    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
    pub fn as_slice(&self) -> &[R] {
        &self.p
    }
}

/// Berkowitz recurrence kept to top-anchored depth `depth`.
///
/// Adding row/column `r` to the leading block `B` with new column `C`, row `R`
/// and corner `a` gives
/// `c_k' = c_k - a c_{k-1} - sum_{j>=0} (R B^j C) c_{k-2-j}`,
/// so only `R B^j C` for `j <= depth - 2` is ever needed.
fn berkowitz<R: Ring>(m: &Matrix<R>, depth: usize) -> Vec<R> {
    let n = m.n();
    let mut c: Vec<R> = vec![R::one()];
    let mut v: Vec<R> = Vec::with_capacity(n);
    let mut w: Vec<R> = Vec::with_capacity(n);
    for r in 1..=n {
        let b = r - 1;
        let a = m.get(b, b).clone();
        let keep = depth.min(r);
        let ns = keep.saturating_sub(1);
        let mut s: Vec<R> = Vec::with_capacity(ns);
        v.clear();
        v.extend((0..b).map(|i| m.get(i, b).clone()));
        for j in 0..ns {
            s.push(
                (0..b).fold(R::zero(), |acc, i| acc + m.get(b, i).clone() * v[i].clone()),
            );
            if j + 1 < ns {
                w.clear();
                w.extend((0..b).map(|i| {
                    (0..b).fold(R::zero(), |acc, l| acc + m.get(i, l).clone() * v[l].clone())
                }));
                std::mem::swap(&mut v, &mut w);
            }
        }
        let old = |i: usize| c.get(i).cloned().unwrap_or_else(R::zero);
        let mut next = Vec::with_capacity(keep + 1);
        for k in 0..=keep {
            let mut x = old(k);
            if k >= 1 {
                x = x - a.clone() * old(k - 1);
            }
            for j in 0..k.saturating_sub(1) {
                x = x - s[j].clone() * old(k - 2 - j);
            }
            next.push(x);
        }
        c = next;
    }
    c.resize(depth + 1, R::zero());
    c
}

/// Coefficients of `det(xI - M)`, division-free.
pub fn charpoly<R: Ring>(m: &Matrix<R>) -> CharCoeffs<R> {
    CharCoeffs { c: berkowitz(m, m.n()) }
}

/// `c_0..c_depth` of `det(xI - M)`; indices past the order are zero.
pub fn charpoly_truncated<R: Ring>(m: &Matrix<R>, depth: usize) -> CharCoeffs<R> {
    CharCoeffs { c: berkowitz(m, depth) }
}

/// Faddeev–LeVerrier over the integers. Divides by `k`, so it only serves as an
/// independent cross-check of [`charpoly`].
pub fn charpoly_faddeev_leverrier(a: &Matrix<BigInt>) -> Result<CharCoeffs<BigInt>> {
    let n = a.n();
    let mut c = vec![BigInt::one()];
    let mut mk: Matrix<BigInt> = Matrix::identity(n);
    for k in 1..=n {
        if k > 1 {
            let mut next = a.mul(&mk);
            for i in 0..n {
                let v = next.get(i, i).clone() + c[k - 1].clone();
                next.set(i, i, v);
            }
            mk = next;
        }
        let t = a.mul(&mk).trace();
        let (q, r) = t.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Inexact(format!("trace not divisible by {k}")));
        }
        c.push(-q);
    }
    Ok(CharCoeffs { c })
}

/// Newton's identities `p_k = -(sum_{i=1}^{k-1} c_i p_{k-i} + k c_k)`, valid in
/// any ring because `c_0 = 1`.
pub fn power_sums_from_coeffs<R: Ring>(c: &[R], k_max: usize) -> PowerSums<R> {
    assert!(!c.is_empty() && c[0].is_one(), "expected a monic coefficient list");
    let ck = |i: usize| c.get(i).cloned().unwrap_or_else(R::zero);
    let mut p: Vec<R> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut s = R::from_u64(k as u64) * ck(k);
        for i in 1..k {
            s = s + ck(i) * p[k - i - 1].clone();
        }
        p.push(-s);
    }
    PowerSums { p }
}

/// Inverse of [`power_sums_from_coeffs`] over the integers.
pub fn coeffs_from_power_sums(p: &PowerSums<BigInt>, k_max: usize) -> Result<CharCoeffs<BigInt>> {
    let mut c = vec![BigInt::one()];
    for k in 1..=k_max {
        let mut s = p.get(k);
        for i in 1..k {
            s += &c[i] * p.get(k - i);
        }
        let (q, r) = s.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::Inexact(format!(
                "power sums do not come from an integer polynomial (k = {k})"
            )));
        }
        c.push(-q);
    }
    Ok(CharCoeffs { c })
}

/// `1ᵀ M^k 1` by repeated matrix-vector products.
pub fn walk_count<R: Ring>(m: &Matrix<R>, k: usize) -> R {
    walk_counts(m, k).pop().expect("k + 1 entries")
}

/// `1ᵀ M^k 1` for `k = 0..=k_max`.
pub fn walk_counts<R: Ring>(m: &Matrix<R>, k_max: usize) -> Vec<R> {
    let mut v = vec![R::one(); m.n()];
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        out.push(v.iter().fold(R::zero(), |acc, x| acc + x.clone()));
        if k < k_max {
            v = m.mul_vec(&v);
        }
    }
    out
}

/// Coefficients of `Char_{J-2A}` from `c_0..c_K` of `Char_A` and the walk counts
/// `w_0..w_{K-1}` of `A`:
/// `c_k(J-2A) = (-2)^k c_k + (-1)^k 2^(k-1) sum_{i=1}^k c_{k-i} w_{i-1}`.
/// The halving of the determinant-lemma form is folded into the power of two,
/// so nothing is divided.
pub fn jm2a_coeffs<R: Ring>(char_a: &[R], walks: &[R], k_max: usize) -> Result<CharCoeffs<R>> {
    if char_a.len() < k_max + 1 {
        return invalid(format!("need c_0..c_{k_max} of Char_A"));
    }
    if walks.len() < k_max {
        return invalid(format!("need walk counts up to length {}", k_max.saturating_sub(1)));
    }
    let mut out = vec![R::one()];
    for k in 1..=k_max {
        let mut s = R::zero();
        for i in 1..=k {
            s = s + char_a[k - i].clone() * walks[i - 1].clone();
        }
        let two_k = R::from_biguint(&pow2(k as u32));
        let two_k1 = R::from_biguint(&pow2(k as u32 - 1));
        let mut v = two_k * char_a[k].clone() + two_k1 * s;
        if k % 2 == 1 {
            v = -v;
        }
        out.push(v);
    }
    Ok(CharCoeffs { c: out })
}

/// Outcome of checking the power-sum to coefficient divisibility transfer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PtoeReport {
    Pass,
    PreconditionFailed { k: usize },
    Violation { k: usize, modulus_bits: u32 },
}

/// Given `p_k ≡ 0 mod 2^m` for `k in 1..n-1` and `k = n+1`, checks
/// `2^(m - ν₂(k!)) | c_k` for those `k` and `c_0 p_n ≡ -n c_n mod 2^(m - ν₂((n-1)!))`.
pub fn ptoe_verify<R: Ring>(p: &[R], m: u32, n: usize, c: &[R]) -> Result<PtoeReport> {
    if m > 64 {
        return invalid("modulus above 2^64 is not supported");
    }
    if n == 0 {
        return invalid("n must be positive");
    }
    if p.len() < n + 1 || c.len() < n + 2 {
        return invalid(format!("need p_1..p_{} and c_0..c_{}", n + 1, n + 1));
    }
    let ks: Vec<usize> = (1..n).chain(std::iter::once(n + 1)).collect();
    for &k in &ks {
        if p[k - 1].low_bits(m) != 0 {
            return Ok(PtoeReport::PreconditionFailed { k });
        }
    }
    for &k in &ks {
        let bits = m as i64 - nu2_factorial(k as u64) as i64;
        if bits > 0 && c[k].low_bits(bits as u32) != 0 {
            return Ok(PtoeReport::Violation { k, modulus_bits: bits as u32 });
        }
    }
    let bits = m as i64 - nu2_factorial(n as u64 - 1) as i64;
    if bits > 0 {
        let lhs = c[0].clone() * p[n - 1].clone() + R::from_u64(n as u64) * c[n].clone();
        if lhs.low_bits(bits as u32) != 0 {
            return Ok(PtoeReport::Violation { k: n, modulus_bits: bits as u32 });
        }
    }
    Ok(PtoeReport::Pass)
}

fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Closed-walk congruence for simple graphs:
/// `sum_{d|N} φ(N/d) tr(A^d) ≡ 0` (N odd) or `≡ -(N/2) 1ᵀA^(N/2)1` (N even), mod 2N.
pub fn burnside_check(a: &IntMatrix, big_n: u64) -> Result<bool> {
    if big_n < 3 {
        return invalid("N must be at least 3");
    }
    if !a.is_adjacency() || !a.is_symmetric() {
        return invalid("expected the adjacency matrix of a simple graph");
    }
    let ab: Matrix<BigInt> = a.to_ring();
    let mut power = ab.clone();
    let mut sum = BigInt::zero();
    for d in 1..=big_n {
        if d > 1 {
            power = power.mul(&ab);
        }
        if big_n % d == 0 {
            sum += power.trace() * BigInt::from(totient(big_n / d));
        }
    }
    let target = if big_n % 2 == 0 {
        -BigInt::from(big_n / 2) * walk_count(&ab, (big_n / 2) as usize)
    } else {
        BigInt::zero()
    };
    Ok(((sum - target) % BigInt::from(2 * big_n)).is_zero())
}
