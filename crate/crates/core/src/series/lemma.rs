//! Coefficient-wise checks of the strip-heap identities against brute-force
//! heap counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::gf::{series_a_k, series_d_gt, series_lemma_rhs};
use super::TruncatedSeries;
use crate::bijection::{count_a_k_heaps, count_strip_heaps};

/// Outcome of one identity for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub k: u32,
    pub pass: bool,
    /// Lowest power of `t` where the two sides differ.
    pub first_failure: Option<usize>,
}

fn from_counts(counts: &[u128], order: usize) -> TruncatedSeries {
    TruncatedSeries::from_rationals(
        counts
            .iter()
            .take(order + 1)
            .map(|&c| BigRational::from_integer(BigInt::from(c))),
        order,
    )
}

fn compare(k: u32, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> LemmaCheck {
    let first_failure = (0..=lhs.order()).find(|&n| lhs.coeff(n) != rhs.coeff(n));
    LemmaCheck {
        k,
        pass: first_failure.is_none(),
        first_failure,
    }
}

/// Checks `H_k · D·Q·R^k = S(1+S)^k · QR^k/(1 − QR^k)` to order `order` for
/// each `k ≤ kmax`, with `H_k` counted by brute force.
pub fn check_lemma_hd(order: usize, kmax: u32) -> Vec<LemmaCheck> {
    (0..=kmax)
        .map(|k| {
            let h = from_counts(&count_strip_heaps(k, order), order);
            let lhs = h.mul_series(&series_d_gt(order, k));
            compare(k, &lhs, &series_lemma_rhs(order, k))
        })
        .collect()
}

/// Checks that the heaps whose rightmost minimal polymer starts at `k` are
/// counted by `S(1+S)^k`, for each `k ≤ kmax`.
pub fn check_a_k(order: usize, kmax: u32) -> Vec<LemmaCheck> {
    (0..=kmax)
        .map(|k| {
            let a = from_counts(&count_a_k_heaps(k, order), order);
            compare(k, &a, &series_a_k(order, k))
        })
        .collect()
}
