//! Quick randomized consistency checks, run by `char2lift selftest`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{extract_class, sample_member, structural_checks, ClassSource, Family, FamilySpec};
use crate::graphs::{adjacency, summary, GraphExpr, DEFAULT_ADJACENCY_CAP};
use crate::lift::{
    check_lift_graph_I, check_lift_graph_II, check_lift_tournament_I, check_lift_tournament_II,
    construct_lift_graph_I, construct_lift_graph_II,
};
use crate::linalg::{
    burnside_check, charpoly, charpoly_faddeev_leverrier, charpoly_truncated,
    coeffs_from_power_sums, jm2a_coeffs, power_sums_from_coeffs, walk_count, walk_counts,
    IntMatrix,
};
use crate::ring::{residues_mod, Z2k};
use crate::tournaments::{
    construct_lift_tournament_I, construct_lift_tournament_II, tourn_adjacency, TournExpr,
};

fn random_pm1(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, |i, j| if i == j || rng.gen_bool(0.5) { 1 } else { -1 })
}

fn random_graph(rng: &mut ChaCha8Rng) -> GraphExpr {
    let parts = rng.gen_range(1..4);
    (0..parts)
        .map(|_| {
            let n = rng.gen_range(1..8u64);
            let atom = match rng.gen_range(0..3) {
                0 => GraphExpr::Path(n),
                1 => GraphExpr::Cycle(n + 2),
                _ => GraphExpr::DiPath(n),
            };
            GraphExpr::repeat(rng.gen_range(1..4u32), atom)
        })
        .reduce(GraphExpr::union)
        .expect("at least one part")
}

fn berkowitz_vs_faddeev(rng: &mut ChaCha8Rng) -> bool {
    (0..50).all(|_| {
        let n = rng.gen_range(1..8);
        let m = random_pm1(rng, n).to_ring::<BigInt>();
        charpoly_faddeev_leverrier(&m).map(|c| c == charpoly(&m)).unwrap_or(false)
    })
}

fn newton_round_trip(rng: &mut ChaCha8Rng) -> bool {
    (0..50).all(|_| {
        let n = rng.gen_range(1..8);
        let c = charpoly(&random_pm1(rng, n).to_ring::<BigInt>()).c;
        let p = power_sums_from_coeffs(&c, n);
        coeffs_from_power_sums(&p, n).map(|back| back.c == c).unwrap_or(false)
    })
}

fn word_vs_exact(rng: &mut ChaCha8Rng) -> bool {
    (0..50).all(|_| {
        let n = rng.gen_range(1..10);
        let m = random_pm1(rng, n);
        let a = residues_mod(&charpoly_truncated(&m.to_ring::<Z2k>(), 6).c, 6);
        let b = residues_mod(&charpoly_truncated(&m.to_ring::<BigInt>(), 6).c, 6);
        a.is_ok() && a.ok() == b.ok()
    })
}

fn summary_vs_matrix(rng: &mut ChaCha8Rng) -> bool {
    (0..30).all(|_| {
        let g = random_graph(rng);
        let Ok(a) = adjacency(&g, DEFAULT_ADJACENCY_CAP) else { return false };
        let e = 6;
        let s = summary::<Z2k>(&g, e, e);
        let direct = jm2a_coeffs(
            &charpoly_truncated(&a.to_ring::<Z2k>(), e).c,
            &walk_counts(&a.to_ring::<Z2k>(), e),
            e,
        );
        let fast = jm2a_coeffs(s.char.coeffs(), &s.walks, e);
        let full = extract_class(&ClassSource::Matrix(a.seidel_like()), e as u32);
        match (direct, fast, full) {
            (Ok(d), Ok(f), Ok(t)) => {
                d.c == f.c && residues_mod(&f.c, e as u32).ok() == Some(t)
            }
            _ => false,
        }
    })
}

fn random_simple_graph(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut a = IntMatrix::from_fn(n, |_, _| 0);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                a.set(i, j, 1);
                a.set(j, i, 1);
            }
        }
    }
    a
}

fn closed_walk_congruence(rng: &mut ChaCha8Rng) -> bool {
    (0..50).all(|_| {
        let n = rng.gen_range(1..8);
        let a = random_simple_graph(rng, n);
        (3..=10).all(|big_n| burnside_check(&a, big_n).unwrap_or(false))
    })
}

fn even_walk_counts(rng: &mut ChaCha8Rng) -> bool {
    (0..50).all(|_| {
        let n = rng.gen_range(1..10);
        let a = random_simple_graph(rng, n).to_ring::<BigInt>();
        (1..=8).all(|k| (walk_count(&a, k) % 2u32) == BigInt::from(0))
    })
}

fn family_relations(rng: &mut ChaCha8Rng) -> bool {
    let seed = rng.gen();
    [Family::U, Family::S, Family::T].iter().all(|&family| {
        (0..40u64).all(|i| {
            let spec = FamilySpec::new(family, 1 + (i % 9) as usize, 3).expect("valid spec");
            structural_checks(&sample_member(&spec, seed, i), family)
                .map(|r| r.passed())
                .unwrap_or(false)
        })
    })
}

fn tournament_summary_vs_matrix(rng: &mut ChaCha8Rng) -> bool {
    (0..30).all(|_| {
        let t = (0..rng.gen_range(1..4))
            .map(|_| TournExpr::join_pow(rng.gen_range(1..3u32), TournExpr::Almost(rng.gen_range(0..5))))
            .reduce(TournExpr::join)
            .expect("at least one block");
        let Ok(a) = tourn_adjacency(&t, 64) else { return false };
        let structural = extract_class(&ClassSource::Tourn(t), 6);
        let direct = extract_class(&ClassSource::Matrix(a.seidel_like()), 6);
        structural.is_ok() && structural.ok() == direct.ok()
    })
}

fn lift_constructions_certify(_: &mut ChaCha8Rng) -> bool {
    let graphs = [(4, 2), (5, 2), (5, 3), (6, 4)].iter().all(|&(e, f)| {
        construct_lift_graph_I(e, f).and_then(|g| check_lift_graph_I(&g, e, f)).is_ok_and(|c| c.passed)
    }) && (3..=5).all(|e| {
        construct_lift_graph_II(e).and_then(|g| check_lift_graph_II(&g, e)).is_ok_and(|c| c.passed)
    });
    let tournaments = construct_lift_tournament_I(5, 4)
        .and_then(|t| check_lift_tournament_I(&t, 5, 4))
        .is_ok_and(|c| c.passed)
        && construct_lift_tournament_II(6)
            .and_then(|t| check_lift_tournament_II(&t, 6))
            .is_ok_and(|c| c.passed);
    graphs && tournaments
}

/// Runs every check with a fixed seed; returns `(name, passed)` pairs.
pub fn run(seed: u64) -> Vec<(&'static str, bool)> {
    let checks: [(&'static str, fn(&mut ChaCha8Rng) -> bool); 9] = [
        ("berkowitz matches faddeev-leverrier", berkowitz_vs_faddeev),
        ("newton identities round trip", newton_round_trip),
        ("machine word matches exact", word_vs_exact),
        ("graph summary matches matrix", summary_vs_matrix),
        ("tournament summary matches matrix", tournament_summary_vs_matrix),
        ("closed-walk congruence", closed_walk_congruence),
        ("walk counts of graphs are even", even_walk_counts),
        ("family coefficient relations", family_relations),
        ("lift constructions certify", lift_constructions_certify),
    ];
    checks
        .iter()
        .map(|(name, f)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (*name, f(&mut rng))
        })
        .collect()
}
