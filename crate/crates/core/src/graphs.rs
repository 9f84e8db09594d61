//! Structural graph expressions over paths, cycles and directed paths, and
//! their characteristic/walk summaries computed without building matrices.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr := term ('+' term)*
//! term := int '*' term | '(' expr ')' | atom
//! atom := 'P' int | 'C' int | 'DP' int
//! ```
//!
//! `+` is disjoint union and `d*` repeats a component `d` times.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::ring::{binomial, series_mul, series_pow, Ring, TruncSeries};

/// Largest order [`adjacency`] will materialize unless told otherwise.
pub const DEFAULT_ADJACENCY_CAP: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    /// Undirected path on `n >= 1` vertices.
    Path(u64),
    /// Cycle on `n >= 3` vertices.
    Cycle(u64),
    /// Directed path `0 -> 1 -> ... -> n-1`.
    DiPath(u64),
    Union(Box<GraphExpr>, Box<GraphExpr>),
    Repeat(BigUint, Box<GraphExpr>),
}

impl GraphExpr {
    pub fn union(a: GraphExpr, b: GraphExpr) -> GraphExpr {
        GraphExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn repeat(d: impl Into<BigUint>, a: GraphExpr) -> GraphExpr {
        GraphExpr::Repeat(d.into(), Box::new(a))
    }

    pub fn order(&self) -> BigUint {
        match self {
            GraphExpr::Path(n) | GraphExpr::Cycle(n) | GraphExpr::DiPath(n) => BigUint::from(*n),
            GraphExpr::Union(a, b) => a.order() + b.order(),
            GraphExpr::Repeat(d, a) => d * a.order(),
        }
    }

    /// True when no directed path atom occurs.
    pub fn is_undirected(&self) -> bool {
        match self {
            GraphExpr::Path(_) | GraphExpr::Cycle(_) => true,
            GraphExpr::DiPath(_) => false,
            GraphExpr::Union(a, b) => a.is_undirected() && b.is_undirected(),
            GraphExpr::Repeat(_, a) => a.is_undirected(),
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Path(n) => write!(f, "P{n}"),
            GraphExpr::Cycle(n) => write!(f, "C{n}"),
            GraphExpr::DiPath(n) => write!(f, "DP{n}"),
            GraphExpr::Union(a, b) => match **b {
                GraphExpr::Union(..) => write!(f, "{a}+({b})"),
                _ => write!(f, "{a}+{b}"),
            },
            GraphExpr::Repeat(d, a) => match **a {
                GraphExpr::Union(..) => write!(f, "{d}*({a})"),
                _ => write!(f, "{d}*{a}"),
            },
        }
    }
}

impl std::str::FromStr for GraphExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<GraphExpr> {
        parse_graph_expr(s)
    }
}

/// Byte cursor shared by the expression parsers.
pub(crate) struct Cursor<'a> {
    s: &'a [u8],
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a str) -> Cursor<'a> {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    /// Digit directly at the cursor, without skipping whitespace.
    pub fn at_digit_here(&self) -> bool {
        self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit())
    }

    pub fn at_digit(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9'))
    }

    /// Digits directly at the cursor (no whitespace skipped inside).
    pub fn number(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    pub fn small_number(&mut self) -> Result<u64> {
        let start = self.pos;
        let v = self.number()?;
        match v.to_u64() {
            Some(x) => Ok(x),
            None => Err(Error::Parse { pos: start, msg: "integer too large".into() }),
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

pub fn parse_graph_expr(text: &str) -> Result<GraphExpr> {
    let mut cur = Cursor::new(text);
    let e = parse_sum(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn parse_sum(cur: &mut Cursor) -> Result<GraphExpr> {
    let mut acc = parse_term(cur)?;
    while cur.eat(b'+') {
        let rhs = parse_term(cur)?;
        acc = GraphExpr::union(acc, rhs);
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor) -> Result<GraphExpr> {
    if cur.at_digit() {
        let at = cur.pos;
        let d = cur.number()?;
        if d.is_zero() {
            return Err(Error::Parse { pos: at, msg: "repeat count must be at least 1".into() });
        }
        cur.expect(b'*')?;
        let inner = parse_term(cur)?;
        return Ok(GraphExpr::Repeat(d, Box::new(inner)));
    }
    if cur.eat(b'(') {
        let e = parse_sum(cur)?;
        cur.expect(b')')?;
        return Ok(e);
    }
    let at = {
        cur.skip_ws();
        cur.pos
    };
    let (kind, min) = if cur.eat_word("DP") {
        ("DP", 1)
    } else if cur.eat_word("P") {
        ("P", 1)
    } else if cur.eat_word("C") {
        ("C", 3)
    } else {
        return cur.err("expected P<n>, C<n>, DP<n>, a repeat or '('");
    };
    if !cur.at_digit_here() {
        return cur.err(format!("expected the order right after '{kind}'"));
    }
    let n = cur.small_number()?;
    if n < min {
        return Err(Error::Parse { pos: at, msg: format!("{kind}{n}: order must be at least {min}") });
    }
    Ok(match kind {
        "DP" => GraphExpr::DiPath(n),
        "P" => GraphExpr::Path(n),
        _ => GraphExpr::Cycle(n),
    })
}

fn push_blocks(expr: &GraphExpr, out: &mut Vec<GraphExpr>) {
    match expr {
        GraphExpr::Union(a, b) => {
            push_blocks(a, out);
            push_blocks(b, out);
        }
        GraphExpr::Repeat(d, a) => {
            let times = d.to_u64().expect("checked against the order cap");
            for _ in 0..times {
                push_blocks(a, out);
            }
        }
        atom => out.push(atom.clone()),
    }
}

/// Explicit adjacency matrix, block diagonal in the order components appear.
pub fn adjacency(expr: &GraphExpr, cap: u64) -> Result<IntMatrix> {
    let order = expr.order();
    if order > BigUint::from(cap) {
        return Err(Error::Size(format!(
            "order {order} exceeds the adjacency cap {cap}; use summary() instead"
        )));
    }
    let n = order.to_usize().expect("below cap");
    let mut blocks = Vec::new();
    push_blocks(expr, &mut blocks);
    let mut m = IntMatrix::zeros(n);
    let mut base = 0usize;
    for b in blocks {
        match b {
            GraphExpr::Path(k) => {
                for i in 1..k as usize {
                    m.set(base + i - 1, base + i, 1);
                    m.set(base + i, base + i - 1, 1);
                }
                base += k as usize;
            }
            GraphExpr::Cycle(k) => {
                let k = k as usize;
                for i in 0..k {
                    let j = (i + 1) % k;
                    m.set(base + i, base + j, 1);
                    m.set(base + j, base + i, 1);
                }
                base += k;
            }
            GraphExpr::DiPath(k) => {
                for i in 1..k as usize {
                    m.set(base + i - 1, base + i, 1);
                }
                base += k as usize;
            }
            _ => unreachable!("blocks are atoms"),
        }
    }
    Ok(m)
}

/// Order, truncated characteristic series and walk counts of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentSummary<R> {
    pub order: BigUint,
    /// `c_0..c_D` of `Char_A`.
    pub char: TruncSeries<R>,
    /// `1ᵀA^k1` for `k = 0..=K`.
    pub walks: Vec<R>,
}

/// Memo table for atom summaries, safe to share between threads.
pub struct SummaryCache<R> {
    map: Mutex<HashMap<(GraphExpr, usize, usize), ComponentSummary<R>>>,
}

impl<R> Default for SummaryCache<R> {
    fn default() -> Self {
        SummaryCache { map: Mutex::new(HashMap::new()) }
    }
}

impl<R: Ring> SummaryCache<R> {
    pub fn new() -> SummaryCache<R> {
        SummaryCache::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get_or_compute(
        &self,
        atom: &GraphExpr,
        depth: usize,
        walk_depth: usize,
    ) -> ComponentSummary<R> {
        let key = (atom.clone(), depth, walk_depth);
        if let Some(s) = self.map.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let s = atom_summary(atom, depth, walk_depth);
        self.map.lock().expect("cache lock").insert(key, s.clone());
        s
    }
}

/// `c_k` of the path polynomial `φ_n`: `(-1)^j C(n-j, j)` at `k = 2j`, zero at odd `k`.
pub fn path_char_coeff<R: Ring>(n: u64, k: u64) -> R {
    if k % 2 == 1 || k > n {
        return R::zero();
    }
    let j = k / 2;
    let v = R::from_biguint(&binomial(n - j, j));
    if j % 2 == 1 {
        -v
    } else {
        v
    }
}

fn path_char<R: Ring>(n: u64, depth: usize) -> Vec<R> {
    (0..=depth as u64).map(|k| path_char_coeff(n, k)).collect()
}

/// `Char_{C_n} = φ_n - φ_{n-2} - 2`.
fn cycle_char<R: Ring>(n: u64, depth: usize) -> Vec<R> {
    (0..=depth as u64)
        .map(|k| {
            let mut v = path_char_coeff::<R>(n, k);
            if k >= 2 {
                v = v - path_char_coeff::<R>(n - 2, k - 2);
            }
            if k == n {
                v = v - R::from_u64(2);
            }
            v
        })
        .collect()
}

fn path_walks_iter<R: Ring>(n: usize, walk_depth: usize) -> Vec<R> {
    let mut v = vec![R::one(); n];
    let mut out = Vec::with_capacity(walk_depth + 1);
    for k in 0..=walk_depth {
        out.push(v.iter().fold(R::zero(), |a, x| a + x.clone()));
        if k < walk_depth {
            v = (0..n)
                .map(|i| {
                    let mut s = R::zero();
                    if i > 0 {
                        s = s + v[i - 1].clone();
                    }
                    if i + 1 < n {
                        s = s + v[i + 1].clone();
                    }
                    s
                })
                .collect();
        }
    }
    out
}

/// Walk counts of `P_n`. Once `n > 2k`, adding a vertex adds exactly `2^k`
/// walks of length `k`, so long paths are extrapolated from a short one.
fn path_walks<R: Ring>(n: u64, walk_depth: usize) -> Vec<R> {
    let base = 2 * walk_depth as u64 + 2;
    if n <= base {
        return path_walks_iter(n as usize, walk_depth);
    }
    let short = path_walks_iter::<R>(base as usize, walk_depth);
    let extra = R::from_u64(n - base);
    short
        .into_iter()
        .enumerate()
        .map(|(k, w)| w + extra.clone() * R::from_biguint(&(BigUint::one() << k)))
        .collect()
}

fn atom_summary<R: Ring>(atom: &GraphExpr, depth: usize, walk_depth: usize) -> ComponentSummary<R> {
    let (char, walks) = match *atom {
        GraphExpr::Path(n) => (path_char(n, depth), path_walks(n, walk_depth)),
        GraphExpr::Cycle(n) => (
            cycle_char(n, depth),
            (0..=walk_depth)
                .map(|k| R::from_u64(n) * R::from_biguint(&(BigUint::one() << k)))
                .collect(),
        ),
        GraphExpr::DiPath(n) => (
            TruncSeries::<R>::one(depth).into_coeffs(),
            (0..=walk_depth as u64).map(|k| R::from_u64(n.saturating_sub(k))).collect(),
        ),
        _ => unreachable!("atoms only"),
    };
    ComponentSummary { order: atom.order(), char: TruncSeries::new(char), walks }
}

/// Summary with characteristic depth `depth` and walk depth `walk_depth`.
pub fn summary<R: Ring>(expr: &GraphExpr, depth: usize, walk_depth: usize) -> ComponentSummary<R> {
    summary_cached(expr, depth, walk_depth, &SummaryCache::new())
}

pub fn summary_cached<R: Ring>(
    expr: &GraphExpr,
    depth: usize,
    walk_depth: usize,
    cache: &SummaryCache<R>,
) -> ComponentSummary<R> {
    match expr {
        GraphExpr::Union(a, b) => {
            let sa = summary_cached(a, depth, walk_depth, cache);
            let sb = summary_cached(b, depth, walk_depth, cache);
            ComponentSummary {
                order: sa.order + sb.order,
                char: series_mul(&sa.char, &sb.char).expect("equal depths"),
                walks: sa.walks.into_iter().zip(sb.walks).map(|(x, y)| x + y).collect(),
            }
        }
        GraphExpr::Repeat(d, a) => {
            let sa = summary_cached(a, depth, walk_depth, cache);
            let dr = R::from_biguint(d);
            ComponentSummary {
                order: &sa.order * d,
                char: series_pow(&sa.char, d),
                walks: sa.walks.into_iter().map(|w| w * dr.clone()).collect(),
            }
        }
        atom => cache.get_or_compute(atom, depth, walk_depth),
    }
}

/// `tr(A(C_n)^k)` for `1 <= k <= n+1`.
pub fn cycle_trace(n: u64, k: u64) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidInput("cycle needs at least 3 vertices".into()));
    }
    if k == 0 || k > n + 1 {
        return Err(Error::InvalidInput(format!("k must be in 1..={}", n + 1)));
    }
    let nb = BigUint::from(n);
    Ok(match (n == k, k % 2 == 0) {
        (false, false) => BigUint::zero(),
        (false, true) => &nb * binomial(k, k / 2),
        (true, false) => 2u32 * nb,
        (true, true) => &nb * binomial(n, n / 2) + 2u32 * &nb,
    })
}

/// `[A(P_n)^k 1]_v`.
pub fn path_vertex_walks(n: u64, v: u64, k: u64) -> Result<BigUint> {
    if v >= n {
        return Err(Error::InvalidInput(format!("vertex {v} is not in P{n}")));
    }
    let n = n as usize;
    let mut x = vec![BigUint::one(); n];
    for _ in 0..k {
        x = (0..n)
            .map(|i| {
                let mut s = BigUint::zero();
                if i > 0 {
                    s += &x[i - 1];
                }
                if i + 1 < n {
                    s += &x[i + 1];
                }
                s
            })
            .collect();
    }
    Ok(x[v as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{charpoly_truncated, walk_counts};
    use crate::ring::Z2k;
    use num_bigint::BigInt;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_graph_expr("2*P2").unwrap(),
            GraphExpr::repeat(2u32, GraphExpr::Path(2))
        );
        assert_eq!(
            parse_graph_expr("C3+C381").unwrap(),
            GraphExpr::union(GraphExpr::Cycle(3), GraphExpr::Cycle(381))
        );
        let e = parse_graph_expr("P2 + 31 * P34").unwrap();
        assert_eq!(
            e,
            GraphExpr::union(GraphExpr::Path(2), GraphExpr::repeat(31u32, GraphExpr::Path(34)))
        );
        assert_eq!(e.order(), BigUint::from(2u32 + 31 * 34));
        assert!(matches!(parse_graph_expr("C2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph_expr("P2+"), Err(Error::Parse { pos: 3, .. })));
        assert!(parse_graph_expr("0*P2").is_err());
        assert!(parse_graph_expr("P").is_err());
        assert!(parse_graph_expr("DP3+P").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["2*P2", "C3+C381", "2*(C3+C381)", "P1+(P2+DP3)", "3*2*P4+C5", "(P1)"] {
            let e = parse_graph_expr(s).unwrap();
            assert_eq!(parse_graph_expr(&e.to_string()).unwrap(), e, "{s}");
        }
        assert!(parse_graph_expr("DP0").is_err());
        assert_eq!(parse_graph_expr("2*(C3+C381)").unwrap().to_string(), "2*(C3+C381)");
    }

    #[test]
    fn adjacency_examples() {
        let p2 = adjacency(&GraphExpr::Path(2), 10).unwrap();
        assert_eq!(p2, IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());
        let dp = adjacency(&GraphExpr::DiPath(3), 10).unwrap();
        assert_eq!(dp.row(0), &[0, 1, 0]);
        assert_eq!(dp.row(1), &[0, 0, 1]);
        assert_eq!(dp.row(2), &[0, 0, 0]);
        let c3 = adjacency(&GraphExpr::Cycle(3), 10).unwrap();
        assert!((0..3).all(|i| c3.row(i).iter().sum::<i64>() == 2));
        assert!(matches!(adjacency(&GraphExpr::Path(20), 10), Err(Error::Size(_))));
    }

    #[test]
    fn summary_examples() {
        let s = summary::<BigInt>(&parse_graph_expr("2*P2").unwrap(), 4, 3);
        let want: Vec<BigInt> = [1, 0, -2, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.char.coeffs(), &want[..]);
        let s = summary::<BigInt>(&GraphExpr::DiPath(4), 2, 6);
        let want: Vec<BigInt> = [4, 3, 2, 1, 0, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.walks, want);
        let s = summary::<Z2k>(&GraphExpr::Cycle(7), 2, 5);
        assert_eq!(s.walks[5], Z2k(7 * 32));
    }

    #[test]
    fn summary_matches_explicit() {
        for s in ["P1", "P7", "C3", "C8+P3", "2*(C4+P2)+DP5", "3*P12", "P30", "C9+2*DP3"] {
            let e = parse_graph_expr(s).unwrap();
            let a = adjacency(&e, 100).unwrap().to_ring::<BigInt>();
            let sm = summary::<BigInt>(&e, 9, 9);
            assert_eq!(sm.char.coeffs(), &charpoly_truncated(&a, 9).c[..], "{s}");
            assert_eq!(sm.walks, walk_counts(&a, 9), "{s}");
        }
    }

    #[test]
    fn long_path_extrapolation() {
        for n in 1..60u64 {
            assert_eq!(path_walks::<BigInt>(n, 8), path_walks_iter::<BigInt>(n as usize, 8), "{n}");
        }
    }

    #[test]
    fn cache_is_shared() {
        let cache = SummaryCache::<Z2k>::new();
        let e = parse_graph_expr("P3+255*P259+P259").unwrap();
        let _ = summary_cached(&e, 6, 4, &cache);
        assert_eq!(cache.len(), 2);
    }

    #[test]
    fn cycle_trace_examples() {
        assert_eq!(cycle_trace(5, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(cycle_trace(5, 5).unwrap(), BigUint::from(10u32));
        assert_eq!(cycle_trace(4, 4).unwrap(), BigUint::from(32u32));
        assert!(cycle_trace(4, 6).is_err());
        assert!(cycle_trace(2, 1).is_err());
    }

    #[test]
    fn path_vertex_examples() {
        assert_eq!(path_vertex_walks(5, 2, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(path_vertex_walks(3, 1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(path_vertex_walks(2, 0, 0).unwrap(), BigUint::from(1u32));
        assert!(path_vertex_walks(2, 2, 0).is_err());
    }
}
