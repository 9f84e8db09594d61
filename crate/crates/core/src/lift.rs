//! Certificates for lift graphs and lift tournaments, the graph-side
//! constructions, order padding, and verification of the coefficient shift a
//! lift object induces on `Char_{J-2A}`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classes::{extract_class, ClassSource};
use crate::error::{Error, Result};
use crate::graphs::{summary, GraphExpr};
use crate::linalg::{charpoly_truncated, jm2a_coeffs, walk_counts, IntMatrix};
use crate::ring::{factorial, mask, nu2_factorial, pow2, Ring, Z2k};
use crate::tournaments::{tourn_summary, TournExpr};

/// Walk counts in (L1a) are checked for `k = 0..=e + L1A_HORIZON_EXTRA`.
pub const L1A_HORIZON_EXTRA: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiftKind {
    #[serde(rename = "graphI")]
    GraphI,
    #[serde(rename = "graphII")]
    GraphII,
    #[serde(rename = "tournI")]
    TournI,
    #[serde(rename = "tournII")]
    TournII,
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftKind::GraphI => "graphI",
            LiftKind::GraphII => "graphII",
            LiftKind::TournI => "tournI",
            LiftKind::TournII => "tournII",
        })
    }
}

/// One congruence `observed ≡ expected mod modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub cond: String,
    pub k: u32,
    pub expected: u64,
    pub observed: u64,
    pub modulus: u64,
}

impl CheckEntry {
    pub fn ok(&self) -> bool {
        self.expected == self.observed
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at k={}: expected {} observed {} mod {}",
            self.cond, self.k, self.expected, self.observed, self.modulus
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCertificate {
    pub kind: LiftKind,
    pub e: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

impl LiftCertificate {
    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| !c.ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

struct Checks(Vec<CheckEntry>);

impl Checks {
    /// Records `value ≡ expected mod 2^bits`; a non-positive width is the
    /// trivial modulus 1.
    fn push(&mut self, cond: &str, k: u32, value: Z2k, expected: u64, bits: i64) {
        let bits = bits.clamp(0, 63) as u32;
        self.0.push(CheckEntry {
            cond: cond.to_string(),
            k,
            expected: expected & mask(bits),
            observed: value.low_bits(bits),
            modulus: 1u64 << bits,
        });
    }

    fn finish(self, kind: LiftKind, e: u32, f: Option<u32>) -> LiftCertificate {
        let passed = self.0.iter().all(CheckEntry::ok);
        LiftCertificate { kind, e, f, passed, checks: self.0 }
    }
}

fn check_e(e: u32) -> Result<()> {
    if e == 0 || e > 60 {
        return Err(Error::InvalidInput(format!("e must be in 1..=60, got {e}")));
    }
    Ok(())
}

fn two_pow(bits: i64) -> u64 {
    if bits < 0 || bits > 63 {
        0
    } else {
        1u64 << bits
    }
}

fn require_undirected(expr: &GraphExpr) -> Result<()> {
    if expr.is_undirected() {
        Ok(())
    } else {
        Err(Error::InvalidInput("lift graphs are undirected; DP atoms are not allowed".into()))
    }
}

/// (L1a) `2^(e-2) | 1ᵀA^k1` for `k = 0..=e`; (L1b) `c_k ≡ [k=f] 2^(e-f-1) mod 2^(e-k)`
/// for `k = 1..e-1`.
#[allow(non_snake_case)]
pub fn check_lift_graph_I(expr: &GraphExpr, e: u32, f: u32) -> Result<LiftCertificate> {
    check_e(e)?;
    if f == 0 {
        return Err(Error::InvalidInput("f must be at least 1".into()));
    }
    require_undirected(expr)?;
    let horizon = (e + L1A_HORIZON_EXTRA) as usize;
    let s = summary::<Z2k>(expr, e as usize, horizon);
    let mut ch = Checks(Vec::new());
    for k in 0..=horizon {
        ch.push("L1a", k as u32, s.walks[k], 0, e as i64 - 2);
    }
    for k in 1..e {
        let want = if k == f { two_pow(e as i64 - f as i64 - 1) } else { 0 };
        ch.push("L1b", k, s.char.get(k as usize), want, (e - k) as i64);
    }
    Ok(ch.finish(LiftKind::GraphI, e, Some(f)))
}

/// (L2a) `1ᵀA^k1 ≡ [k=e] 2 mod 2^(e+2-k)` for `k = 0..=e`;
/// (L2b) `2^(e+2-k) | c_k` for `k = 1..=e+1`.
#[allow(non_snake_case)]
pub fn check_lift_graph_II(expr: &GraphExpr, e: u32) -> Result<LiftCertificate> {
    check_e(e)?;
    require_undirected(expr)?;
    let s = summary::<Z2k>(expr, e as usize + 1, e as usize);
    let mut ch = Checks(Vec::new());
    for k in 0..=e {
        let want = if k == e { 2 } else { 0 };
        ch.push("L2a", k, s.walks[k as usize], want, (e + 2 - k) as i64);
    }
    for k in 1..=e + 1 {
        ch.push("L2b", k, s.char.get(k as usize), 0, (e + 2 - k) as i64);
    }
    Ok(ch.finish(LiftKind::GraphII, e, None))
}

/// (LT1a) `2^(e-k) | 1ᵀA^k1` for `k = 0..e-1`; (LT1b) as (L1b).
#[allow(non_snake_case)]
pub fn check_lift_tournament_I(expr: &TournExpr, e: u32, f: u32) -> Result<LiftCertificate> {
    check_e(e)?;
    if f == 0 || f >= e {
        return Err(Error::InvalidInput(format!("need e > f >= 1, got e = {e}, f = {f}")));
    }
    let s = tourn_summary::<Z2k>(expr, e as usize);
    let mut ch = Checks(Vec::new());
    for k in 0..e {
        ch.push("LT1a", k, s.walk.walk(k as usize), 0, (e - k) as i64);
    }
    for k in 1..e {
        let want = if k == f { two_pow(e as i64 - f as i64 - 1) } else { 0 };
        ch.push("LT1b", k, s.char.get(k as usize), want, (e - k) as i64);
    }
    Ok(ch.finish(LiftKind::TournI, e, Some(f)))
}

/// (LT2a) `2^e | 1ᵀA^k1` for `k = 0..=e-3`; (LT2b) `1ᵀA^(e-2)1 ≡ 2 mod 4` and
/// `1ᵀA^(e-1)1` odd; (LT2c) `2^e | c_k` for `k = 1..=e-2`.
#[allow(non_snake_case)]
pub fn check_lift_tournament_II(expr: &TournExpr, e: u32) -> Result<LiftCertificate> {
    check_e(e)?;
    if e < 2 {
        return Err(Error::InvalidInput("e must be at least 2".into()));
    }
    let s = tourn_summary::<Z2k>(expr, e as usize);
    let mut ch = Checks(Vec::new());
    for k in 0..e.saturating_sub(2) {
        ch.push("LT2a", k, s.walk.walk(k as usize), 0, e as i64);
    }
    ch.push("LT2b", e - 2, s.walk.walk(e as usize - 2), 2, 2);
    ch.push("LT2b", e - 1, s.walk.walk(e as usize - 1), 1, 1);
    for k in 1..=e.saturating_sub(2) {
        ch.push("LT2c", k, s.char.get(k as usize), 0, e as i64);
    }
    Ok(ch.finish(LiftKind::TournII, e, None))
}

/// `(e, f)` type-I lift graph: `2*P2` (f = 2, base e = 4) or
/// `C_f + C_(2^(f+1)(f+1)! - f)` (f >= 3, base e = f + 2), doubled up to `e`.
#[allow(non_snake_case)]
pub fn construct_lift_graph_I(e: u32, f: u32) -> Result<GraphExpr> {
    let (mut expr, base_e) = match f {
        2 if e >= 4 => (GraphExpr::repeat(2u32, GraphExpr::Path(2)), 4),
        f if f >= 3 && e >= f + 2 => {
            let big = (BigUint::one() << (f + 1)) * factorial(f as u64 + 1) - f;
            let big: u64 = big
                .try_into()
                .map_err(|_| Error::InvalidInput(format!("cycle length overflows for f = {f}")))?;
            (GraphExpr::union(GraphExpr::Cycle(f as u64), GraphExpr::Cycle(big)), f + 2)
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "no type I construction for (e, f) = ({e}, {f}); need f = 2, e >= 4 or f >= 3, e >= f + 2"
            )))
        }
    };
    for _ in base_e..e {
        expr = GraphExpr::repeat(2u32, expr);
    }
    let cert = check_lift_graph_I(&expr, e, f)?;
    if !cert.passed {
        return Err(Error::Construction(format!(
            "({e},{f}) type I graph failed {}",
            cert.first_failure().expect("failed")
        )));
    }
    Ok(expr)
}

/// `e`-lift graph of type II: `P_(e-1) + (2^m - 1)*P_(e-1+2^m)` with `m = e + 1 + ν₂(e!)`.
#[allow(non_snake_case)]
pub fn construct_lift_graph_II(e: u32) -> Result<GraphExpr> {
    if e < 3 {
        return Err(Error::InvalidInput(format!("type II lift graphs need e >= 3, got {e}")));
    }
    let m = e as u64 + 1 + nu2_factorial(e as u64);
    if m > 62 {
        return Err(Error::InvalidInput(format!("e = {e} gives path lengths beyond 2^62")));
    }
    let p = 1u64 << m;
    let expr = GraphExpr::union(
        GraphExpr::Path(e as u64 - 1),
        GraphExpr::repeat(p - 1, GraphExpr::Path(e as u64 - 1 + p)),
    );
    let cert = check_lift_graph_II(&expr, e)?;
    if !cert.passed {
        return Err(Error::Construction(format!(
            "e = {e} type II graph failed {}",
            cert.first_failure().expect("failed")
        )));
    }
    Ok(expr)
}

/// Grows a structure to `target` vertices without changing its class tuple:
/// isolated vertices in blocks of `2^(e-2)` for graphs, or single vertices
/// joined in blocks of `2^e` for tournaments.
pub fn pad_order(src: &ClassSource, e: u32, target: &BigUint) -> Result<ClassSource> {
    let (order, step) = match src {
        ClassSource::Graph(g) => {
            require_undirected(g)?;
            (g.order(), pow2(e.saturating_sub(2)))
        }
        ClassSource::Tourn(t) => (t.order(), pow2(e)),
        ClassSource::Matrix(_) => {
            return Err(Error::InvalidInput("padding applies to structural expressions".into()))
        }
    };
    if target < &order {
        return Err(Error::InvalidInput(format!("target {target} is below the current order {order}")));
    }
    let extra = target - &order;
    if !extra.is_multiple_of(&step) {
        return Err(Error::InvalidInput(format!(
            "target order must be congruent to {order} mod {step}"
        )));
    }
    if extra.is_zero() {
        return Ok(src.clone());
    }
    let padded = match src {
        ClassSource::Graph(g) => {
            ClassSource::Graph(GraphExpr::union(g.clone(), GraphExpr::Repeat(extra, Box::new(GraphExpr::Path(1)))))
        }
        ClassSource::Tourn(t) => {
            ClassSource::Tourn(TournExpr::join(t.clone(), TournExpr::JoinPow(extra, Box::new(TournExpr::Vertex))))
        }
        ClassSource::Matrix(_) => unreachable!(),
    };
    let before = extract_class(src, e)?;
    let after = extract_class(&padded, e)?;
    if before != after {
        return Err(Error::Construction(format!(
            "padding changed the class tuple from {before:?} to {after:?}"
        )));
    }
    Ok(padded)
}

/// Base object for shift-effect checks.
#[derive(Clone, Debug)]
pub enum ShiftBase {
    /// Explicit 0/1 adjacency matrix.
    Adjacency(IntMatrix),
    Graph(GraphExpr),
    Tourn(TournExpr),
}

struct Profile {
    order: BigUint,
    /// `c_0..c_D` of `Char_A`.
    char: Vec<Z2k>,
    /// `1ᵀA^k1` for `k = 0..=D`.
    walks: Vec<Z2k>,
}

fn profile(src: &ShiftBase, depth: usize) -> Profile {
    match src {
        ShiftBase::Adjacency(a) => {
            let m = a.to_ring::<Z2k>();
            Profile {
                order: BigUint::from(a.n()),
                char: charpoly_truncated(&m, depth).c,
                walks: walk_counts(&m, depth),
            }
        }
        ShiftBase::Graph(g) => {
            let s = summary::<Z2k>(g, depth, depth);
            Profile { order: s.order, char: s.char.into_coeffs(), walks: s.walks }
        }
        ShiftBase::Tourn(t) => {
            let s = tourn_summary::<Z2k>(t, depth + 1);
            Profile {
                order: s.order.clone(),
                char: s.char.coeffs()[..=depth].to_vec(),
                walks: s.walks(),
            }
        }
    }
}

fn conv(a: &[Z2k], b: &[Z2k]) -> Vec<Z2k> {
    let mut out = vec![Z2k(0); a.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().take(a.len() - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn combine(a: &Profile, b: &Profile, join: bool) -> Profile {
    let walks = if join {
        let wp = |p: &Profile| {
            let mut v = vec![Z2k(1)];
            v.extend(&p.walks);
            v
        };
        conv(&wp(a), &wp(b))[1..].to_vec()
    } else {
        a.walks.iter().zip(&b.walks).map(|(&x, &y)| x + y).collect()
    };
    Profile { order: &a.order + &b.order, char: conv(&a.char, &b.char), walks }
}

/// One compared coefficient in a shift-effect report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftEntry {
    /// `"J-2A"`, `"A"` or `"walk"`.
    pub level: String,
    pub k: u32,
    pub base: u64,
    pub combined: u64,
    pub expected_shift: u64,
    pub observed_shift: u64,
    pub modulus: u64,
}

impl ShiftEntry {
    pub fn ok(&self) -> bool {
        self.expected_shift == self.observed_shift
    }
}

impl fmt::Display for ShiftEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} c_{}: expected shift {} observed {} mod {}",
            self.level, self.k, self.expected_shift, self.observed_shift, self.modulus
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub kind: LiftKind,
    pub e: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<u32>,
    pub passed: bool,
    pub entries: Vec<ShiftEntry>,
}

impl ShiftReport {
    pub fn first_failure(&self) -> Option<&ShiftEntry> {
        self.entries.iter().find(|e| !e.ok())
    }

    /// Indices where the `J-2A` coefficients changed.
    pub fn shifted_jm2a(&self) -> Vec<u32> {
        self.entries
            .iter()
            .filter(|e| e.level == "J-2A" && e.observed_shift != 0)
            .map(|e| e.k)
            .collect()
    }
}

struct Shifts(Vec<ShiftEntry>);

impl Shifts {
    fn push(&mut self, level: &str, k: u32, before: Z2k, after: Z2k, expected: u64, bits: i64) {
        let bits = bits.clamp(0, 63) as u32;
        let m = mask(bits);
        self.0.push(ShiftEntry {
            level: level.to_string(),
            k,
            base: before.0 & m,
            combined: after.0 & m,
            expected_shift: expected & m,
            observed_shift: (after - before).0 & m,
            modulus: 1u64 << bits,
        });
    }
}

/// Compares `Char_{J-2A}` (and the `A`-level data) of `base` with that of
/// `base ∪ lifter` (graph kinds) or `base ⊕ lifter` (tournament kinds).
///
/// Expected pattern mod `2^E`:
/// * graph I `(e, f)`, `E = e`, `k in 2..e`: shift `2^(e-1)` at `k = f` when
///   `f >= 3`, plus `2^(e-1)` at `k = f + 1` when the base order is odd;
///   `Char_A` shifts by `[k=f] 2^(e-f-1) mod 2^(e-k)`, walks fixed mod `2^(e-2)`.
/// * graph II `e`, `E = e + 2`, `k in 2..E`: shift `2^(E-1)` at `k = E - 1` only.
/// * tournament I `(e, f)`, even `k in 2..e`: shift `2^(e-1)` at `k = f` only.
/// * tournament II `e` (base of even order), even `k in 2..=e`: shift
///   `2^(e-1)` at `k = e` only.
pub fn verify_shift_effect(
    base: &ShiftBase,
    lifter: &ShiftBase,
    kind: LiftKind,
    e: u32,
    f: Option<u32>,
) -> Result<ShiftReport> {
    check_e(e)?;
    let graph_kind = matches!(kind, LiftKind::GraphI | LiftKind::GraphII);
    match (graph_kind, base) {
        (true, ShiftBase::Adjacency(a)) if !(a.is_adjacency() && a.is_symmetric()) => {
            return Err(Error::InvalidInput("graph base must be a simple graph".into()))
        }
        (true, ShiftBase::Graph(g)) => require_undirected(g)?,
        (true, ShiftBase::Tourn(_)) | (false, ShiftBase::Graph(_)) => {
            return Err(Error::InvalidInput(format!("base does not match lift kind {kind}")))
        }
        (false, ShiftBase::Adjacency(a)) if !is_tournament(a) => {
            return Err(Error::InvalidInput("tournament base must be a tournament".into()))
        }
        _ => {}
    }
    let cert = match (kind, lifter, f) {
        (LiftKind::GraphI, ShiftBase::Graph(g), Some(f)) => check_lift_graph_I(g, e, f)?,
        (LiftKind::GraphII, ShiftBase::Graph(g), None) => check_lift_graph_II(g, e)?,
        (LiftKind::TournI, ShiftBase::Tourn(t), Some(f)) => check_lift_tournament_I(t, e, f)?,
        (LiftKind::TournII, ShiftBase::Tourn(t), None) => check_lift_tournament_II(t, e)?,
        _ => {
            return Err(Error::InvalidInput(format!(
                "lifter and parameters do not match lift kind {kind}"
            )))
        }
    };
    if !cert.passed {
        return Err(Error::InvalidInput(format!(
            "lifter is not certified: {}",
            cert.first_failure().expect("failed")
        )));
    }
    let big_e = if kind == LiftKind::GraphII { e + 2 } else { e };
    let depth = big_e as usize;
    let pb = profile(base, depth);
    let pl = profile(lifter, depth);
    let pc = combine(&pb, &pl, !graph_kind);
    if kind == LiftKind::TournII && pb.order.is_odd() {
        return Err(Error::InvalidInput("type II tournament shifts need a base of even order".into()));
    }
    let jb = jm2a_coeffs(&pb.char, &pb.walks, depth)?.c;
    let jc = jm2a_coeffs(&pc.char, &pc.walks, depth)?.c;
    let top = two_pow(big_e as i64 - 1);
    let mut sh = Shifts(Vec::new());
    match kind {
        LiftKind::GraphI => {
            let f = f.expect("matched above");
            let odd = pb.order.is_odd();
            for k in 2..e {
                let mut want = 0u64;
                if k == f && f >= 3 {
                    want = want.wrapping_add(top);
                }
                if k == f + 1 && odd {
                    want = want.wrapping_add(top);
                }
                sh.push("J-2A", k, jb[k as usize], jc[k as usize], want, e as i64);
            }
            for k in 1..e {
                let want = if k == f { two_pow(e as i64 - f as i64 - 1) } else { 0 };
                sh.push("A", k, pb.char[k as usize], pc.char[k as usize], want, (e - k) as i64);
            }
            for k in 0..=e {
                sh.push("walk", k, pb.walks[k as usize], pc.walks[k as usize], 0, e as i64 - 2);
            }
        }
        LiftKind::GraphII => {
            for k in 2..big_e {
                let want = if k == big_e - 1 { top } else { 0 };
                sh.push("J-2A", k, jb[k as usize], jc[k as usize], want, big_e as i64);
            }
            for k in 1..big_e {
                sh.push("A", k, pb.char[k as usize], pc.char[k as usize], 0, (big_e - k) as i64);
            }
            for k in 0..=e {
                let want = if k == e { 2 } else { 0 };
                sh.push("walk", k, pb.walks[k as usize], pc.walks[k as usize], want, (big_e - k) as i64);
            }
        }
        LiftKind::TournI => {
            let f = f.expect("matched above");
            for k in (2..e).step_by(2) {
                let want = if k == f { top } else { 0 };
                sh.push("J-2A", k, jb[k as usize], jc[k as usize], want, e as i64);
            }
            for k in 1..e {
                let want = if k == f { two_pow(e as i64 - f as i64 - 1) } else { 0 };
                sh.push("A", k, pb.char[k as usize], pc.char[k as usize], want, (e - k) as i64);
            }
            for k in 0..e {
                sh.push("walk", k, pb.walks[k as usize], pc.walks[k as usize], 0, (e - k) as i64);
            }
        }
        LiftKind::TournII => {
            for k in (2..=e).step_by(2) {
                let want = if k == e { top } else { 0 };
                sh.push("J-2A", k, jb[k as usize], jc[k as usize], want, e as i64);
            }
            for k in 1..=e.saturating_sub(2) {
                sh.push("A", k, pb.char[k as usize], pc.char[k as usize], 0, e as i64);
            }
            for k in 0..e.saturating_sub(2) {
                sh.push("walk", k, pb.walks[k as usize], pc.walks[k as usize], 0, e as i64);
            }
        }
    }
    let passed = sh.0.iter().all(ShiftEntry::ok);
    Ok(ShiftReport { kind, e, f, passed, entries: sh.0 })
}

pub fn is_tournament(a: &IntMatrix) -> bool {
    a.is_adjacency()
        && (0..a.n()).all(|i| (0..i).all(|j| a.get(i, j) + a.get(j, i) == 1))
}
