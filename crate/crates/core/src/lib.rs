//! Characteristic polynomials of ±1 matrices modulo powers of two.
//!
//! The algebra is generic over [`Ring`]. [`Z2k`] (wrapping `u64`) reduces
//! correctly to any modulus `2^M` with `M <= 64`; [`BigInt`] gives exact
//! integer results; [`Z2kBig`] covers wider moduli.

pub mod classes;
pub mod error;
pub mod graphs;
pub mod lift;
pub mod linalg;
pub mod ring;
pub mod selftest;
pub mod tournaments;

pub use num_bigint::{BigInt, BigUint};

pub use classes::{
    enumerate_classes, enumerate_classes_with_progress, extract_class, predicted_count,
    sample_classes, sample_member, structural_checks, theorem_report, um_witness, upper_bound,
    validate_member, ClassSet, ClassSource, ClassTuple, Family, FamilySpec, Parity, Provenance,
    ReportRow, SampleConfig, StructuralReport, UWitness,
};
pub use error::{Error, Result};
pub use graphs::{adjacency, parse_graph_expr, summary, ComponentSummary, GraphExpr};
pub use lift::{
    check_lift_graph_I, check_lift_graph_II, check_lift_tournament_I, check_lift_tournament_II,
    construct_lift_graph_I, construct_lift_graph_II, pad_order, verify_shift_effect, LiftCertificate,
    LiftKind, ShiftBase, ShiftReport,
};
pub use linalg::{
    charpoly, charpoly_faddeev_leverrier, charpoly_truncated, coeffs_from_power_sums, jm2a_coeffs,
    power_sums_from_coeffs, ptoe_verify, walk_counts, CharCoeffs, IntMatrix, Matrix, PowerSums,
    PtoeReport,
};
pub use ring::{residues_mod, series_mul, series_pow, v2, Ring, TruncSeries, Val2, Z2k, Z2kBig};
pub use tournaments::{
    construct_lift_tournament_I, construct_lift_tournament_II, parse_tourn_expr, tourn_adjacency,
    tourn_summary, tourny_p_construct, verify_tourny_p, TopCharSign, TournExpr, TournyP,
};

/// Exact integer matrix.
pub type ExactMatrix = Matrix<BigInt>;
/// Matrix over `Z/2^64`.
pub type ModMatrix = Matrix<Z2k>;
/// Exact characteristic coefficients.
pub type ExactCoeffs = CharCoeffs<BigInt>;
/// Characteristic coefficients over `Z/2^64`.
pub type ModCoeffs = CharCoeffs<Z2k>;
/// Truncated power series over `Z/2^64`.
pub type ModSeries = TruncSeries<Z2k>;
