//! Real-axis evaluation of the generating functions and the constants that
//! govern the growth of directed and multi-directed animals.
//!
//! All quantities here are `f64`. Coefficient-based diagnostics read exact
//! coefficients from [`crate::series`] and take logarithms of the big
//! integers, so nothing overflows at order 1000.

use std::f64::consts::{LN_2, PI, SQRT_2};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::bijection::{for_each_heap, HeapClass};
use crate::series::{series_d1, series_lw_total, series_m, TruncatedSeries};
use crate::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
const ROOT_TOLERANCE: f64 = 1e-15;
/// Terms of `B` below this are dropped.
const B_TAIL_CUTOFF: f64 = 1e-16;
/// Safety bound on the number of `B` terms.
const B_MAX_TERMS: usize = 100_000_000;

/// Order of the `M` series used for the amplitude estimate by default.
pub const DEFAULT_LAMBDA_ORDER: usize = 300;

/// `ρ = 3 − √8`, the radius of convergence of `S` and `D`.
pub fn rho() -> f64 {
    3.0 - 8f64.sqrt()
}

/// `ρ̄ = 3 + √8 = 1/ρ`.
pub fn rho_bar() -> f64 {
    3.0 + 8f64.sqrt()
}

fn check_domain(x: f64, high: f64) -> Result<()> {
    if (0.0..=high).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            value: x,
            low: 0.0,
            high,
        })
    }
}

/// `S(x)` for `0 ≤ x ≤ ρ`, written as `2x / (1 − 3x + √(1 − 6x + x²))` to
/// avoid cancellation near 0. The discriminant is factored as
/// `(ρ − x)(ρ̄ − x)` so that it vanishes exactly at `x = ρ`.
pub fn eval_s(x: f64) -> Result<f64> {
    check_domain(x, rho())?;
    let disc = (rho() - x) * (rho_bar() - x);
    Ok(2.0 * x / (1.0 - 3.0 * x + disc.sqrt()))
}

pub fn eval_r(x: f64) -> Result<f64> {
    let s = eval_s(x)?;
    Ok(s + x * (1.0 + s))
}

pub fn eval_q(x: f64) -> Result<f64> {
    let s = eval_s(x)?;
    Ok((2.0 - 2.0 * x) * s - x)
}

/// The root of `1 − 5x − 7x² + x³` in `(0, ρ)`, the radius of convergence
/// of `B`.
pub fn rho_b() -> f64 {
    bisect(0.0, rho(), |x| 1.0 - 5.0 * x - 7.0 * x * x + x * x * x)
}

/// Root of a function that is positive at `lo` and negative at `hi`. Only
/// interior points are evaluated.
fn bisect(mut lo: f64, mut hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `B(x)` and the number of terms summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BValue {
    pub value: f64,
    pub terms: usize,
}

/// `B(x) = Σ_k S(1+S)^k · QR^k/(1 − QR^k)` for `0 ≤ x < ρ_B`, summed until a
/// term drops below 1e−16.
pub fn eval_b(x: f64) -> Result<BValue> {
    let high = rho_b();
    if !(0.0..high).contains(&x) {
        return Err(Error::OutOfDomain {
            value: x,
            low: 0.0,
            high,
        });
    }
    let s = eval_s(x)?;
    let r = eval_r(x)?;
    let q = eval_q(x)?;
    let mut sk = s;
    let mut rk = 1.0;
    let mut value = 0.0;
    for k in 0..B_MAX_TERMS {
        let qr = q * rk;
        let term = sk * qr / (1.0 - qr);
        value += term;
        if term < B_TAIL_CUTOFF {
            return Ok(BValue {
                value,
                terms: k + 1,
            });
        }
        sk *= 1.0 + s;
        rk *= r;
    }
    Ok(BValue {
        value,
        terms: B_MAX_TERMS,
    })
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(n: &BigInt) -> f64 {
    assert!(n.is_positive(), "logarithm of a non-positive integer");
    let bits = n.bits();
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().expect("64-bit value fits in f64");
    top.ln() + shift as f64 * LN_2
}

fn integer_coeffs(s: &TruncatedSeries) -> Vec<BigInt> {
    s.integer_coefficients().expect("named series are integral")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticConstants {
    pub rho: f64,
    pub rho_bar: f64,
    pub rho_b: f64,
    pub rho_m: f64,
    pub mu: f64,
    pub amp_d: f64,
    pub amp_lw: f64,
    pub lambda_est: f64,
    /// Terms of `B` summed at `ρ_M`.
    pub b_terms: usize,
    /// Order of `M` used for `lambda_est`.
    pub lambda_order: usize,
}

/// `M_n ρ_M^n`.
pub fn lambda_at(m: &[BigInt], n: usize, rho_m: f64) -> f64 {
    (ln_big(&m[n]) + n as f64 * rho_m.ln()).exp()
}

/// Computes the constants, estimating the amplitude of `M_n` at
/// `n = lambda_order`.
pub fn find_constants(lambda_order: usize) -> AsymptoticConstants {
    let rho_b = rho_b();
    let rho_m = bisect(0.0, rho_b, |x| {
        1.0 - eval_b(x).expect("inside (0, ρ_B)").value
    });
    let b_terms = eval_b(rho_m).expect("ρ_M < ρ_B").terms;
    let m = integer_coeffs(&series_m(lambda_order.max(1)));
    AsymptoticConstants {
        rho: rho(),
        rho_bar: rho_bar(),
        rho_b,
        rho_m,
        mu: 1.0 / rho_m,
        amp_d: (-1.75f64).exp2(),
        amp_lw: (-0.75f64).exp2(),
        lambda_est: lambda_at(&m, lambda_order.max(1), rho_m),
        b_terms,
        lambda_order: lambda_order.max(1),
    }
}

/// One line of a diagnostic report. `tolerance` is absolute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub constant: String,
    pub computed: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportEntry {
    /// Passes when `|computed − target| < tolerance`.
    pub fn within(constant: impl Into<String>, computed: f64, target: f64, tolerance: f64) -> Self {
        ReportEntry {
            constant: constant.into(),
            computed,
            target,
            tolerance,
            pass: (computed - target).abs() < tolerance,
        }
    }

    /// Passes when `computed` agrees with `target` on the printed digits,
    /// that is `target ≤ computed < target + ulp` where `ulp` is one unit in
    /// the last printed place.
    pub fn truncates_to(constant: impl Into<String>, computed: f64, target: f64, ulp: f64) -> Self {
        ReportEntry {
            constant: constant.into(),
            computed,
            target,
            tolerance: ulp,
            pass: computed >= target && computed < target + ulp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Checks the constants against their defining equations and the printed
/// values `ρ_M = 0.154…`, `μ = 6.475…`.
pub fn constants_report(c: &AsymptoticConstants) -> Report {
    let cubic = 1.0 - 5.0 * c.rho_b - 7.0 * c.rho_b.powi(2) + c.rho_b.powi(3);
    let b_at_rho_m = eval_b(c.rho_m).map_or(f64::INFINITY, |b| b.value);
    let chain = 0.0 < c.rho_m && c.rho_m < c.rho_b && c.rho_b < c.rho && c.rho < 1.0;
    let s_at_rho = eval_s(c.rho).unwrap_or(f64::NAN);
    let r_at_rho = eval_r(c.rho).unwrap_or(f64::NAN);
    Report {
        entries: vec![
            ReportEntry::within("rho", c.rho, 0.171_572_875_253_809_9, 1e-15),
            ReportEntry::within("S(rho)", s_at_rho, 1.0 / SQRT_2, 1e-12),
            ReportEntry::within("R(rho)", r_at_rho, 1.0, 1e-12),
            ReportEntry::within("rho_B cubic residual", cubic, 0.0, 1e-12),
            ReportEntry::within("rho_B", c.rho_b, 0.1635, 5e-5),
            ReportEntry::within("B(rho_M) - 1", b_at_rho_m - 1.0, 0.0, 1e-10),
            ReportEntry {
                constant: "0 < rho_M < rho_B < rho < 1".into(),
                computed: f64::from(u8::from(chain)),
                target: 1.0,
                tolerance: 0.0,
                pass: chain,
            },
            ReportEntry::truncates_to("rho_M", c.rho_m, 0.154, 1e-3),
            ReportEntry::truncates_to("mu", c.mu, 6.475, 1e-3),
        ],
    }
}

/// `d(n)·√(πn)/(3+√8)^n` and `lw(n)/√(πn)` from exact coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectedRatios {
    pub n: usize,
    pub ratio_d: f64,
    pub ratio_lw: f64,
}

/// Ratios for each `n` in `ns`, from series of order `max(ns)`.
pub fn directed_ratios(ns: &[usize]) -> Vec<DirectedRatios> {
    let order = ns.iter().copied().max().unwrap_or(1);
    let d = integer_coeffs(&series_d1(order));
    let lw = integer_coeffs(&series_lw_total(order));
    ns.iter()
        .map(|&n| {
            assert!(n >= 2, "ratios need n ≥ 2");
            let ln_d = ln_big(&d[n]);
            let root = (PI * n as f64).sqrt();
            DirectedRatios {
                n,
                ratio_d: (ln_d - n as f64 * rho_bar().ln()).exp() * root,
                ratio_lw: (ln_big(&lw[n]) - ln_d).exp() / root,
            }
        })
        .collect()
}

/// Compares the directed ratios at `nmax` with `2^(−7/4)` and `2^(−3/4)`
/// within 2 %, and checks that both deviations shrink from `n = 100` to
/// `n = nmax`.
pub fn check_directed_asymptotics(nmax: usize) -> Report {
    let nmax = nmax.max(100);
    let amp_d = (-1.75f64).exp2();
    let amp_lw = (-0.75f64).exp2();
    let rs = directed_ratios(&[100, nmax]);
    let (early, late) = (rs[0], rs[1]);
    let dev = |v: f64, t: f64| (v - t).abs() / t;
    let trend = |name: &str, e: f64, l: f64| ReportEntry {
        constant: format!("{name} relative deviation, n={nmax} vs n=100"),
        computed: l,
        target: 0.0,
        tolerance: e,
        pass: l < e,
    };
    Report {
        entries: vec![
            ReportEntry::within(
                format!("d ratio at n={nmax}"),
                late.ratio_d,
                amp_d,
                0.02 * amp_d,
            ),
            ReportEntry::within(
                format!("lw ratio at n={nmax}"),
                late.ratio_lw,
                amp_lw,
                0.02 * amp_lw,
            ),
            trend(
                "d ratio",
                dev(early.ratio_d, amp_d),
                dev(late.ratio_d, amp_d),
            ),
            trend(
                "lw ratio",
                dev(early.ratio_lw, amp_lw),
                dev(late.ratio_lw, amp_lw),
            ),
        ],
    }
}

/// Averages over the connected heaps of one length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeapStatistics {
    pub n: usize,
    pub count: u64,
    pub mean_minimal_pieces: f64,
    pub mean_width: f64,
}

/// Mean number of minimal pieces and mean width of connected heaps, for
/// lengths `1..=nmax`, by enumeration.
pub fn connected_heap_statistics(nmax: usize) -> Vec<HeapStatistics> {
    (1..=nmax)
        .map(|n| {
            let (mut count, mut minimal, mut width) = (0u64, 0u64, 0u64);
            for_each_heap(n, HeapClass::Connected, |h| {
                count += 1;
                minimal += h.minimal_pieces().len() as u64;
                width += u64::from(h.width());
            });
            HeapStatistics {
                n,
                count,
                mean_minimal_pieces: minimal as f64 / count as f64,
                mean_width: width as f64 / count as f64,
            }
        })
        .collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn linear_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaEstimate {
    pub n: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiGrowthReport {
    pub entries: Vec<ReportEntry>,
    /// `M_n ρ_M^n` at `n = nmax − 50` and `n = nmax`; not gated.
    pub lambda: Vec<LambdaEstimate>,
    pub heap_statistics: Vec<HeapStatistics>,
}

impl MultiGrowthReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Length range over which the heap statistics must increase.
const STATISTICS_RANGE: std::ops::RangeInclusive<usize> = 4..=8;

/// Checks `M_{n+1}/M_n` at `n = nmax` against `μ` within 0.01, and that the
/// mean number of minimal pieces and the mean width of connected heaps
/// increase strictly for lengths 4 to 8 with a positive fitted slope.
pub fn check_multi_growth(nmax: usize) -> MultiGrowthReport {
    let nmax = nmax.max(50);
    let c = find_constants(1);
    let m = integer_coeffs(&series_m(nmax + 1));
    let ratio = (ln_big(&m[nmax + 1]) - ln_big(&m[nmax])).exp();
    let stats = connected_heap_statistics(*STATISTICS_RANGE.end());
    let window: Vec<&HeapStatistics> = stats
        .iter()
        .filter(|s| STATISTICS_RANGE.contains(&s.n))
        .collect();
    let xs: Vec<f64> = window.iter().map(|s| s.n as f64).collect();
    let growth = |name: &str, f: fn(&HeapStatistics) -> f64| {
        let ys: Vec<f64> = window.iter().map(|s| f(s)).collect();
        let slope = linear_slope(&xs, &ys);
        ReportEntry {
            constant: format!("{name} slope, n=4..8"),
            computed: slope,
            target: 0.0,
            tolerance: 0.0,
            pass: slope > 0.0 && ys.windows(2).all(|w| w[1] > w[0]),
        }
    };
    MultiGrowthReport {
        entries: vec![
            ReportEntry::within(format!("M ratio at n={nmax}"), ratio, c.mu, 0.01),
            growth("mean minimal pieces", |s| s.mean_minimal_pieces),
            growth("mean width", |s| s.mean_width),
        ],
        lambda: [nmax - 50, nmax]
            .into_iter()
            .map(|n| LambdaEstimate {
                n,
                value: lambda_at(&m, n, c.rho_m),
            })
            .collect(),
        heap_statistics: stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_values() {
        assert_eq!(eval_s(0.0).unwrap(), 0.0);
        assert!((eval_s(rho()).unwrap() - 1.0 / SQRT_2).abs() < 1e-12);
        assert!((eval_r(rho()).unwrap() - 1.0).abs() < 1e-12);
        assert!((eval_q(rho()).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(eval_s(-0.1), Err(Error::OutOfDomain { .. })));
        assert!(eval_s(0.2).is_err());
    }

    #[test]
    fn cubic_root() {
        let r = rho_b();
        assert!((r - 0.16347).abs() < 1e-5);
        assert!((1.0 - 5.0 * r - 7.0 * r * r + r * r * r).abs() < 1e-12);
    }

    #[test]
    fn b_values() {
        assert_eq!(eval_b(0.0).unwrap().value, 0.0);
        assert!(eval_b(rho_b()).is_err());
        assert!(eval_b(rho_b() - 1e-4).unwrap().value > 100.0);
        let mut last = 0.0;
        for i in 1..=10 {
            let b = eval_b(rho_b() * i as f64 / 10.5).unwrap().value;
            assert!(b > last);
            last = b;
        }
    }

    #[test]
    fn log_of_big_integers() {
        assert!((ln_big(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
        let big = BigInt::from(3).pow(500);
        assert!((ln_big(&big) - 500.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn slope() {
        assert!((linear_slope(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constants() {
        let c = find_constants(60);
        assert!(constants_report(&c).pass(), "{:#?}", constants_report(&c));
        assert!(c.lambda_est > 0.0);
    }
}
