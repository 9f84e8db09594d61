//! Almost-transitive tournaments `T_t`, joins, walk polynomials and the
//! modular constructions of lift tournaments.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! term := int '@' term | 'join(' term (',' term)* ')' | '(' term ')' | 'T' int | 'V1'
//! ```
//!
//! `join(a,b,c)` folds to the left; `N@a` is the `N`-fold join of `a`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{Cursor, DEFAULT_ADJACENCY_CAP};
use crate::lift::{check_lift_tournament_I, check_lift_tournament_II};
use crate::linalg::{power_sums_from_coeffs, walk_counts, CharCoeffs, IntMatrix};
use crate::ring::{
    binomial, factorial, mask, nu2_factorial, pow2, series_mul, series_pow, v2_rational, Ring,
    TruncSeries, Val2, Z2k,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TournExpr {
    /// `T_t` on `t + 2` vertices.
    Almost(u64),
    /// A single vertex.
    Vertex,
    /// `a ⊕ b`.
    Join(Box<TournExpr>, Box<TournExpr>),
    /// `N`-fold join of `a`.
    JoinPow(BigUint, Box<TournExpr>),
}

impl TournExpr {
    pub fn join(a: TournExpr, b: TournExpr) -> TournExpr {
        TournExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn join_pow(n: impl Into<BigUint>, a: TournExpr) -> TournExpr {
        TournExpr::JoinPow(n.into(), Box::new(a))
    }

    pub fn order(&self) -> BigUint {
        match self {
            TournExpr::Almost(t) => BigUint::from(*t + 2),
            TournExpr::Vertex => BigUint::one(),
            TournExpr::Join(a, b) => a.order() + b.order(),
            TournExpr::JoinPow(n, a) => n * a.order(),
        }
    }
}

fn join_spine<'a>(e: &'a TournExpr, out: &mut Vec<&'a TournExpr>) {
    match e {
        TournExpr::Join(a, b) => {
            join_spine(a, out);
            out.push(b);
        }
        other => out.push(other),
    }
}

impl fmt::Display for TournExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TournExpr::Almost(t) => write!(f, "T{t}"),
            TournExpr::Vertex => write!(f, "V1"),
            TournExpr::Join(..) => {
                let mut parts = Vec::new();
                join_spine(self, &mut parts);
                write!(f, "join(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            TournExpr::JoinPow(n, a) => write!(f, "{n}@{a}"),
        }
    }
}

impl std::str::FromStr for TournExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<TournExpr> {
        parse_tourn_expr(s)
    }
}

pub fn parse_tourn_expr(text: &str) -> Result<TournExpr> {
    let mut cur = Cursor::new(text);
    let e = parse_tterm(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn parse_tterm(cur: &mut Cursor) -> Result<TournExpr> {
    if cur.at_digit() {
        let at = cur.pos;
        let n = cur.number()?;
        if n.is_zero() {
            return Err(Error::Parse { pos: at, msg: "join power must be at least 1".into() });
        }
        cur.expect(b'@')?;
        let inner = parse_tterm(cur)?;
        return Ok(TournExpr::JoinPow(n, Box::new(inner)));
    }
    if cur.eat(b'(') {
        let e = parse_tterm(cur)?;
        cur.expect(b')')?;
        return Ok(e);
    }
    if cur.eat_word("join") {
        cur.expect(b'(')?;
        let mut acc = parse_tterm(cur)?;
        while cur.eat(b',') {
            let rhs = parse_tterm(cur)?;
            acc = TournExpr::join(acc, rhs);
        }
        cur.expect(b')')?;
        return Ok(acc);
    }
    if cur.eat_word("V1") {
        return Ok(TournExpr::Vertex);
    }
    if cur.eat_word("T") {
        if !cur.at_digit_here() {
            return cur.err("expected the index right after 'T'");
        }
        return Ok(TournExpr::Almost(cur.small_number()?));
    }
    cur.err("expected T<t>, V1, join(...), N@term or '('")
}

/// Adjacency of `T_t`: arc `i -> j` for every `i < j` except that `0 -> t+1`
/// is reversed.
pub fn almost_transitive_adj(t: u64, cap: u64) -> Result<IntMatrix> {
    if t + 2 > cap {
        return Err(Error::Size(format!("T{t} has {} vertices, cap is {cap}", t + 2)));
    }
    let n = (t + 2) as usize;
    Ok(IntMatrix::from_fn(n, |i, j| {
        let last = n - 1;
        match (i, j) {
            (0, j) if j == last => 0,
            (i, 0) if i == last => 1,
            (i, j) if i < j => 1,
            _ => 0,
        }
    }))
}

/// `x^(t+2) - sum_{i=1}^t C(t,i) x^(t-i)`, full length `t + 3`.
pub fn tt_charpoly(t: u64) -> CharCoeffs<BigInt> {
    let mut c = vec![BigInt::zero(); t as usize + 3];
    c[0] = BigInt::one();
    for i in 1..=t {
        c[i as usize + 2] = -BigInt::from(binomial(t, i));
    }
    CharCoeffs { c }
}

/// Walk polynomial truncated to depth `d`: `c_0 = 1`, `c_k = 1ᵀA^(k-1)1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkPoly<R> {
    pub coeffs: TruncSeries<R>,
}

impl<R: Ring> WalkPoly<R> {
    pub fn depth(&self) -> usize {
        self.coeffs.depth()
    }

    /// `1ᵀA^k1`, available for `k < depth`.
    pub fn walk(&self, k: usize) -> R {
        self.coeffs.get(k + 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournSummary<R> {
    pub order: BigUint,
    pub char: TruncSeries<R>,
    pub walk: WalkPoly<R>,
}

impl<R: Ring> TournSummary<R> {
    /// `1ᵀA^k1` for `k = 0..depth`.
    pub fn walks(&self) -> Vec<R> {
        (0..self.walk.depth()).map(|k| self.walk.walk(k)).collect()
    }
}

/// Memo table for tournament atoms.
pub struct TournCache<R> {
    map: Mutex<HashMap<(TournExpr, usize), TournSummary<R>>>,
}

impl<R> Default for TournCache<R> {
    fn default() -> Self {
        TournCache { map: Mutex::new(HashMap::new()) }
    }
}

impl<R: Ring> TournCache<R> {
    pub fn new() -> TournCache<R> {
        TournCache::default()
    }

    fn get_or_compute(&self, atom: &TournExpr, depth: usize) -> TournSummary<R> {
        let key = (atom.clone(), depth);
        if let Some(s) = self.map.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let s = atom_summary(atom, depth);
        self.map.lock().expect("cache lock").insert(key, s.clone());
        s
    }
}

fn atom_summary<R: Ring>(atom: &TournExpr, depth: usize) -> TournSummary<R> {
    match *atom {
        TournExpr::Vertex => {
            let mut w = vec![R::zero(); depth + 1];
            w[0] = R::one();
            if depth >= 1 {
                w[1] = R::one();
            }
            TournSummary {
                order: BigUint::one(),
                char: TruncSeries::one(depth),
                walk: WalkPoly { coeffs: TruncSeries::new(w) },
            }
        }
        TournExpr::Almost(t) => {
            let c: Vec<R> = tt_charpoly(t).c.iter().map(R::from_bigint).collect();
            let adj = almost_transitive_adj(t, DEFAULT_ADJACENCY_CAP)
                .expect("T_t atoms stay far below the cap")
                .to_ring::<R>();
            let mut w = vec![R::one()];
            if depth >= 1 {
                w.extend(walk_counts(&adj, depth - 1));
            }
            TournSummary {
                order: atom.order(),
                char: TruncSeries::from_prefix(&c, depth),
                walk: WalkPoly { coeffs: TruncSeries::new(w) },
            }
        }
        _ => unreachable!("atoms only"),
    }
}

pub fn tourn_summary<R: Ring>(expr: &TournExpr, depth: usize) -> TournSummary<R> {
    tourn_summary_cached(expr, depth, &TournCache::new())
}

pub fn tourn_summary_cached<R: Ring>(
    expr: &TournExpr,
    depth: usize,
    cache: &TournCache<R>,
) -> TournSummary<R> {
    match expr {
        TournExpr::Join(a, b) => {
            let sa = tourn_summary_cached(a, depth, cache);
            let sb = tourn_summary_cached(b, depth, cache);
            TournSummary {
                order: sa.order + sb.order,
                char: series_mul(&sa.char, &sb.char).expect("equal depths"),
                walk: WalkPoly {
                    coeffs: series_mul(&sa.walk.coeffs, &sb.walk.coeffs).expect("equal depths"),
                },
            }
        }
        TournExpr::JoinPow(n, a) => {
            let sa = tourn_summary_cached(a, depth, cache);
            TournSummary {
                order: &sa.order * n,
                char: series_pow(&sa.char, n),
                walk: WalkPoly { coeffs: series_pow(&sa.walk.coeffs, n) },
            }
        }
        atom => cache.get_or_compute(atom, depth),
    }
}

pub fn walk_poly<R: Ring>(expr: &TournExpr, d: usize) -> WalkPoly<R> {
    tourn_summary(expr, d).walk
}

/// Explicit adjacency of a join expression. Later blocks send every arc to
/// earlier blocks.
pub fn tourn_adjacency(expr: &TournExpr, cap: u64) -> Result<IntMatrix> {
    let order = expr.order();
    if order > BigUint::from(cap) {
        return Err(Error::Size(format!(
            "order {order} exceeds the adjacency cap {cap}; use tourn_summary() instead"
        )));
    }
    fn blocks(e: &TournExpr, out: &mut Vec<IntMatrix>) {
        match e {
            TournExpr::Join(a, b) => {
                blocks(a, out);
                blocks(b, out);
            }
            TournExpr::JoinPow(n, a) => {
                for _ in 0..n.to_u64().expect("below cap") {
                    blocks(a, out);
                }
            }
            TournExpr::Vertex => out.push(IntMatrix::zeros(1)),
            TournExpr::Almost(t) => out.push(almost_transitive_adj(*t, u64::MAX).expect("no cap")),
        }
    }
    let mut bs = Vec::new();
    blocks(expr, &mut bs);
    let n = order.to_usize().expect("below cap");
    let mut m = IntMatrix::zeros(n);
    let mut starts = Vec::with_capacity(bs.len());
    let mut base = 0;
    for b in &bs {
        starts.push(base);
        for i in 0..b.n() {
            for j in 0..b.n() {
                m.set(base + i, base + j, *b.get(i, j));
            }
        }
        base += b.n();
    }
    for (bi, b) in bs.iter().enumerate() {
        for i in 0..b.n() {
            for j in 0..starts[bi] {
                m.set(starts[bi] + i, j, 1);
            }
        }
    }
    Ok(m)
}

/// `a_i = (-1)^(e-2-i) C(e-2, i) mod 2^m` for `i = 0..=e-2`, so that
/// `sum_i a_i i^t` is `0` for `t < e-2` and `(e-2)!` at `t = e-2`, mod `2^m`.
pub fn solve_vandermonde_congruence(e: u32, m: u32) -> Result<Vec<BigUint>> {
    if e < 2 {
        return Err(Error::InvalidInput("e must be at least 2".into()));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let modulus = pow2(m);
    let n = (e - 2) as u64;
    Ok((0..=n)
        .map(|i| {
            let b = binomial(n, i) % &modulus;
            if (n - i) % 2 == 1 && !b.is_zero() {
                &modulus - b
            } else {
                b
            }
        })
        .collect())
}

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    pub coeffs: Vec<BigRational>,
}

impl PolyQ {
    fn trimmed(mut coeffs: Vec<BigRational>) -> PolyQ {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> PolyQ {
        PolyQ::trimmed(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Smallest 2-adic valuation among the coefficients.
    pub fn nu_min(&self) -> Val2 {
        self.coeffs.iter().map(v2_rational).min().unwrap_or(Val2::Infinity)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Interpolates through the first `max_deg + 1` samples of `t_range` and
/// requires every remaining sample to lie on the same polynomial.
pub fn fit_polynomial_in_t(
    sampler: impl Fn(u64) -> BigRational,
    t_range: Range<u64>,
    max_deg: usize,
) -> Result<PolyQ> {
    let ts: Vec<u64> = t_range.collect();
    if ts.len() <= max_deg {
        return Err(Error::InvalidInput(format!(
            "need more than {max_deg} sample points, got {}",
            ts.len()
        )));
    }
    let ys: Vec<BigRational> = ts.iter().map(|&t| sampler(t)).collect();
    let xs: Vec<BigRational> =
        ts.iter().map(|&t| BigRational::from_integer(BigInt::from(t))).collect();
    let npts = max_deg + 1;
    // Newton divided differences.
    let mut dd = ys[..npts].to_vec();
    for level in 1..npts {
        for i in (level..npts).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = vec![BigRational::zero(); npts];
    for i in (0..npts).rev() {
        // poly = poly * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); npts];
        for j in 0..npts {
            if poly[j].is_zero() {
                continue;
            }
            if j + 1 < npts {
                next[j + 1] += &poly[j];
            }
            next[j] -= &poly[j] * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    let p = PolyQ::trimmed(poly);
    for (x, y) in xs.iter().zip(&ys).skip(npts) {
        if &p.eval(x) != y {
            return Err(Error::NotPolynomial(format!(
                "sample at t = {x} does not lie on the degree-{max_deg} interpolant"
            )));
        }
    }
    Ok(p)
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `p_k(Char_{A(T_t)})` exactly.
pub fn pchar_sample(k: usize, t: u64) -> BigRational {
    rat(power_sums_from_coeffs(&tt_charpoly(t).c, k).get(k))
}

/// `p_k(Walk_{T_t,d})` exactly.
pub fn pwalk_sample(k: usize, d: usize, t: u64) -> BigRational {
    let w = walk_poly::<BigInt>(&TournExpr::Almost(t), d);
    rat(power_sums_from_coeffs(w.coeffs.coeffs(), k).get(k))
}

/// `c_k(Walk_{T_t,d})` exactly.
pub fn ewalk_sample(k: usize, d: usize, t: u64) -> BigRational {
    rat(walk_poly::<BigInt>(&TournExpr::Almost(t), d).coeffs.get(k))
}

/// Fit of `p_k(Char_{A(T_t)})` as a polynomial in `t`.
pub fn pchar_in_t(k: usize) -> Result<PolyQ> {
    fit_polynomial_in_t(|t| pchar_sample(k, t), 0..(k as u64 + 6), k + 1)
}

/// Fit of `p_k(Walk_{T_t,d})`, `k <= d`.
pub fn pwalk_in_t(k: usize, d: usize) -> Result<PolyQ> {
    fit_polynomial_in_t(|t| pwalk_sample(k, d, t), 0..(k as u64 + 6), k + 1)
}

/// Fit of `c_k(Walk_{T_t,d})`, `k <= d`.
pub fn ewalk_in_t(k: usize, d: usize) -> Result<PolyQ> {
    fit_polynomial_in_t(|t| ewalk_sample(k, d, t), 0..(k as u64 + 6), k + 1)
}

/// Which form of the top power-sum congruence `p_e(Char)` satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TopCharSign {
    /// `p_e ≡ e`.
    Plus,
    /// `p_e ≡ (-1)^(e+1) e` (differs from `Plus` only for even `e`).
    Alternating,
    /// Both hold (odd `e`).
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TournyP {
    pub e: u32,
    pub expr: TournExpr,
    /// Width of the modulus the `a_t` are reduced to.
    pub m: u32,
    pub a: Vec<BigUint>,
    /// The congruences hold mod `2^target_bits`.
    pub target_bits: u32,
    pub nu_min: i64,
    pub top_char: TopCharSign,
}

/// Smallest 2-adic valuation over the coefficients of `p_k(Char_{A(T_t)})` and
/// `p_k(Walk_{T_t,e})` as polynomials in `t`, for `k = 1..=e`.
pub fn tourny_nu_min(e: u32) -> Result<i64> {
    let mut best = Val2::Infinity;
    let d = e as usize;
    let span = 0..(e as u64 + 3);
    for k in 1..=d {
        let pc = fit_polynomial_in_t(|t| pchar_sample(k, t), span.clone(), d)?;
        let pw = fit_polynomial_in_t(|t| pwalk_sample(k, d, t), span.clone(), d)?;
        best = best.min(pc.nu_min()).min(pw.nu_min());
    }
    match best {
        Val2::Finite(v) => Ok(v),
        Val2::Infinity => Err(Error::Construction("all fitted power sums vanish".into())),
    }
}

/// Join over `t = 0..=e-2` of `a_t` copies of `T_t`, with the power sums of
/// its characteristic and walk polynomials vanishing below `e` modulo
/// `2^(e+1+ν₂((e+2)!))` and taking the values `e` (char) and `0` or `-2e`
/// (walk, by parity of `e`) at `k = e`.
pub fn tourny_p_construct(e: u32) -> Result<TournyP> {
    if e < 4 {
        return Err(Error::InvalidInput("e must be at least 4".into()));
    }
    let target_bits = e + 1 + nu2_factorial(e as u64 + 2) as u32;
    if target_bits > 64 {
        return Err(Error::InvalidInput(format!("e = {e} needs a modulus above 2^64")));
    }
    let nu_min = tourny_nu_min(e)?;
    let m = (target_bits as i64 - nu_min).max(1) as u32;
    let a = solve_vandermonde_congruence(e, m)?;
    let mut expr: Option<TournExpr> = None;
    for (t, at) in a.iter().enumerate() {
        if at.is_zero() {
            continue;
        }
        let part = TournExpr::JoinPow(at.clone(), Box::new(TournExpr::Almost(t as u64)));
        expr = Some(match expr {
            None => part,
            Some(acc) => TournExpr::join(acc, part),
        });
    }
    let expr = expr.ok_or_else(|| Error::Construction("all multiplicities vanish".into()))?;
    let top_char = verify_tourny_p(&expr, e, target_bits)?;
    Ok(TournyP { e, expr, m, a, target_bits, nu_min, top_char })
}

/// Checks the power-sum congruences of a tournyP-style object mod `2^bits`.
pub fn verify_tourny_p(expr: &TournExpr, e: u32, bits: u32) -> Result<TopCharSign> {
    let d = e as usize;
    let s = tourn_summary::<Z2k>(expr, d);
    let pw = power_sums_from_coeffs(s.walk.coeffs.coeffs(), d);
    let pc = power_sums_from_coeffs(s.char.coeffs(), d);
    let m = mask(bits);
    let fail = |k: usize, family: &str, want: u64, got: u64| {
        Err(Error::Construction(format!(
            "p_{k}({family}) = {got} but expected {want} mod 2^{bits}"
        )))
    };
    for k in 1..d {
        if pw.get(k).0 & m != 0 {
            return fail(k, "Walk", 0, pw.get(k).0 & m);
        }
        if pc.get(k).0 & m != 0 {
            return fail(k, "Char", 0, pc.get(k).0 & m);
        }
    }
    let walk_top = if e % 2 == 0 { 0 } else { (2 * e as u64).wrapping_neg() & m };
    if pw.get(d).0 & m != walk_top {
        return fail(d, "Walk", walk_top, pw.get(d).0 & m);
    }
    let plus = e as u64 & m;
    let alt = if e % 2 == 1 { plus } else { (e as u64).wrapping_neg() & m };
    let got = pc.get(d).0 & m;
    match (got == plus, got == alt) {
        (true, true) => Ok(TopCharSign::Both),
        (true, false) => Ok(TopCharSign::Plus),
        (false, true) => Ok(TopCharSign::Alternating),
        (false, false) => fail(d, "Char", plus, got),
    }
}

/// Type-I lift tournament for `(e, f)`: the tournyP object at `f`, doubled
/// `e - f - 1` times.
#[allow(non_snake_case)]
pub fn construct_lift_tournament_I(e: u32, f: u32) -> Result<TournExpr> {
    if f < 4 || f % 2 == 1 || e < f + 1 {
        return Err(Error::InvalidInput(format!(
            "type I lift tournaments need even f >= 4 and e >= f + 1, got e = {e}, f = {f}"
        )));
    }
    let mut expr = tourny_p_construct(f)?.expr;
    for _ in 0..(e - f - 1) {
        expr = TournExpr::join_pow(2u32, expr);
    }
    let cert = check_lift_tournament_I(&expr, e, f)?;
    if !cert.passed {
        return Err(Error::Construction(format!(
            "({e},{f}) type I tournament failed {}",
            cert.first_failure().map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    Ok(expr)
}

/// Type-II lift tournament for even `e >= 6`, built as the tournyP object at
/// `e - 1`.
#[allow(non_snake_case)]
pub fn construct_lift_tournament_II(e: u32) -> Result<TournExpr> {
    if e < 6 || e % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "type II lift tournaments need even e >= 6, got {e}"
        )));
    }
    let expr = tourny_p_construct(e - 1)?.expr;
    let cert = check_lift_tournament_II(&expr, e)?;
    if !cert.passed {
        return Err(Error::Construction(format!(
            "e = {e} type II tournament failed {}",
            cert.first_failure().map(|c| c.to_string()).unwrap_or_default()
        )));
    }
    Ok(expr)
}

/// Leading coefficient of `p_k(Walk_{T_t,d})` in `t` divided by `2k/(k-2)!`.
/// Returns `1` or `-1` when the magnitude matches.
pub fn pwalk_leading_sign(k: usize) -> Result<Option<i32>> {
    let p = pwalk_in_t(k, k)?;
    let reference = BigRational::new(BigInt::from(2 * k), BigInt::from(factorial(k as u64 - 2)));
    let lead = p.leading();
    Ok(if lead == reference {
        Some(1)
    } else if lead == -reference {
        Some(-1)
    } else {
        None
    })
}
