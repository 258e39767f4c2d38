//! The generating functions of half-animals, directed animals and
//! multi-directed animals.
//!
//! * `S = t(1 + 2S)(1 + S)` counts half-animals (little Schröder numbers).
//! * `R = S + t(1 + S)` and `Q = (2 − 2t)S − t`.
//! * `D_0 = S` and `D_j = S² R^(j−1)` count directed animals of left
//!   half-width `j`; their sum is `D = S + S²/(1 − R)`.
//! * `Σ_j j·D_j = S²/(1 − R)²`, the derivative of `S + uS²/(1 − uR)` at
//!   `u = 1`, totals the left half-width over directed animals of each area.
//! * `B = Σ_k S(1+S)^k · QR^k / (1 − QR^k)` and `M = D / (1 − B)` counts
//!   multi-directed animals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::TruncatedSeries;

fn integral(s: TruncatedSeries) -> TruncatedSeries {
    assert!(
        s.is_integral(),
        "generating function has a non-integer coefficient"
    );
    s
}

fn ones(order: usize) -> TruncatedSeries {
    TruncatedSeries::one(order)
}

/// `S` by fixed-point iteration of `S ← t(1 + 3S + 2S²)`. Starting from 0,
/// iteration `n` fixes coefficient `n` and leaves the earlier ones alone, so
/// each step only computes the new coefficient.
pub fn series_s(order: usize) -> TruncatedSeries {
    let mut s: Vec<BigInt> = vec![BigInt::from(0); order + 1];
    for n in 1..=order {
        // [t^n] t(1 + 3S + 2S²) = [n = 1] + 3 s_{n-1} + 2 Σ_{i+j=n-1} s_i s_j
        let m = n - 1;
        let mut square = BigInt::from(0);
        for i in 1..m {
            if 2 * i > m {
                break;
            }
            let term = &s[i] * &s[m - i];
            if 2 * i == m {
                square += term;
            } else {
                square += term * 2;
            }
        }
        let mut value = &s[m] * 3 + square * 2;
        if n == 1 {
            value += 1;
        }
        s[n] = value;
    }
    integral(TruncatedSeries::from_integers(s, order))
}

/// `S = (1 − 3t − √(1 − 6t + t²)) / (4t)`.
pub fn series_s_closed(order: usize) -> TruncatedSeries {
    let wide = order + 1;
    let disc = TruncatedSeries::from_integers([1, -6, 1], wide);
    let root = disc.sqrt().expect("constant term is 1");
    let numerator = &TruncatedSeries::from_integers([1, -3], wide) - &root;
    integral(
        numerator
            .shift_down(1)
            .scale(&BigRational::new(1.into(), 4.into())),
    )
}

pub fn series_r(order: usize) -> TruncatedSeries {
    let s = series_s(order);
    integral(&s + &(&ones(order) + &s).shift_up(1))
}

pub fn series_q(order: usize) -> TruncatedSeries {
    let s = series_s(order);
    let two_minus_2t = TruncatedSeries::from_integers([2, -2], order);
    integral(&two_minus_2t.mul_series(&s) - &TruncatedSeries::variable(order))
}

/// `D(t, 1) = ((1 + t)/√(1 − 6t + t²) − 1) / 4`.
pub fn series_d1(order: usize) -> TruncatedSeries {
    let disc = TruncatedSeries::from_integers([1, -6, 1], order);
    let inv_root = disc
        .sqrt()
        .expect("constant term is 1")
        .invert()
        .expect("unit");
    let body = &TruncatedSeries::from_integers([1, 1], order).mul_series(&inv_root) - &ones(order);
    integral(body.scale(&BigRational::new(1.into(), 4.into())))
}

/// `D(t, 1) = S + S²/(1 − R)`.
pub fn series_d1_from_s(order: usize) -> TruncatedSeries {
    let s = series_s(order);
    let r = series_r(order);
    let geo = (&ones(order) - &r).invert().expect("R(0) = 0");
    integral(&s + &s.mul_series(&s).mul_series(&geo))
}

/// Directed animals with left half-width `j`: `S` for `j = 0`, else
/// `S² R^(j−1)`.
pub fn series_dj(order: usize, j: u32) -> TruncatedSeries {
    let s = series_s(order);
    if j == 0 {
        return s;
    }
    let r = series_r(order);
    integral(s.mul_series(&s).mul_series(&r.pow(j - 1)))
}

/// Pyramids with left half-width greater than `k`: `D·Q·R^k`.
pub fn series_d_gt(order: usize, k: u32) -> TruncatedSeries {
    let d = series_d1(order);
    integral(
        d.mul_series(&series_q(order))
            .mul_series(&series_r(order).pow(k)),
    )
}

/// `S²/(1 − R)²`: coefficient `n` is the total left half-width of the
/// directed animals of area `n`.
pub fn series_lw_total(order: usize) -> TruncatedSeries {
    let s = series_s(order);
    let geo = (&ones(order) - &series_r(order))
        .invert()
        .expect("R(0) = 0");
    integral(s.mul_series(&s).mul_series(&geo.mul_series(&geo)))
}

/// `S(1 + S)^k`.
pub fn series_a_k(order: usize, k: u32) -> TruncatedSeries {
    let s = series_s(order);
    integral(s.mul_series(&(&ones(order) + &s).pow(k)))
}

/// `S(1+S)^k · QR^k / (1 − QR^k)`, term `k` of `B`.
pub fn series_lemma_rhs(order: usize, k: u32) -> TruncatedSeries {
    series_b_term(order, k)
}

pub fn series_b_term(order: usize, k: u32) -> TruncatedSeries {
    let parts = BParts::new(order);
    let sk = parts.s.mul_series(&parts.one_plus_s.pow(k));
    let rk = parts.r.pow(k);
    integral(parts.term(&sk, &rk))
}

struct BParts {
    s: TruncatedSeries,
    one_plus_s: TruncatedSeries,
    q: TruncatedSeries,
    r: TruncatedSeries,
    order: usize,
}

impl BParts {
    fn new(order: usize) -> Self {
        let s = series_s(order);
        BParts {
            one_plus_s: &ones(order) + &s,
            q: series_q(order),
            r: series_r(order),
            s,
            order,
        }
    }

    /// `sk · X/(1 − X)` with `X = Q·rk`.
    fn term(&self, sk: &TruncatedSeries, rk: &TruncatedSeries) -> TruncatedSeries {
        let x = self.q.mul_series(rk);
        let geo = (&ones(self.order) - &x).invert().expect("X(0) = 0");
        sk.mul_series(&x.mul_series(&geo))
    }
}

/// `B` truncated at `order`. Term `k` has valuation at least `k + 2`, so the
/// terms `k = 0..=order-2` are all that contribute.
pub fn series_b(order: usize) -> TruncatedSeries {
    let parts = BParts::new(order);
    let mut total = TruncatedSeries::zero(order);
    let mut sk = parts.s.clone();
    let mut rk = ones(order);
    for _ in 0..order.saturating_sub(1) {
        total = &total + &parts.term(&sk, &rk);
        sk = sk.mul_series(&parts.one_plus_s);
        rk = rk.mul_series(&parts.r);
    }
    integral(total)
}

/// `M = D / (1 − B)`.
pub fn series_m(order: usize) -> TruncatedSeries {
    let d = series_d1(order);
    let b = series_b(order);
    integral(d.mul_series(&(&ones(order) - &b).invert().expect("B(0) = 0")))
}

/// The series selectable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSeries {
    S,
    R,
    Q,
    D,
    M,
    B,
    Lw,
    Dj(u32),
}

impl NamedSeries {
    pub fn compute(&self, order: usize) -> TruncatedSeries {
        match *self {
            NamedSeries::S => series_s(order),
            NamedSeries::R => series_r(order),
            NamedSeries::Q => series_q(order),
            NamedSeries::D => series_d1(order),
            NamedSeries::M => series_m(order),
            NamedSeries::B => series_b(order),
            NamedSeries::Lw => series_lw_total(order),
            NamedSeries::Dj(j) => series_dj(order, j),
        }
    }
}

impl fmt::Display for NamedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSeries::S => f.write_str("S"),
            NamedSeries::R => f.write_str("R"),
            NamedSeries::Q => f.write_str("Q"),
            NamedSeries::D => f.write_str("D"),
            NamedSeries::M => f.write_str("M"),
            NamedSeries::B => f.write_str("B"),
            NamedSeries::Lw => f.write_str("LW"),
            NamedSeries::Dj(j) => write!(f, "D{j}"),
        }
    }
}

impl FromStr for NamedSeries {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "S" => NamedSeries::S,
            "R" => NamedSeries::R,
            "Q" => NamedSeries::Q,
            "D" => NamedSeries::D,
            "M" => NamedSeries::M,
            "B" => NamedSeries::B,
            "LW" => NamedSeries::Lw,
            other => other
                .strip_prefix('D')
                .and_then(|j| j.parse().ok())
                .map(NamedSeries::Dj)
                .ok_or_else(|| format!("unknown series '{other}'"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coefficients()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn schroeder() {
        assert_eq!(
            ints(&series_s(10)),
            vec![0, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049, 518859]
        );
        assert_eq!(series_s(40), series_s_closed(40));
    }

    #[test]
    fn s_satisfies_its_equation() {
        let n = 30;
        let s = series_s(n);
        let one = ones(n);
        let rhs = (&one + &s.scale(&BigRational::from_integer(2.into())))
            .mul_series(&(&one + &s))
            .shift_up(1);
        assert_eq!(s, rhs);
    }

    #[test]
    fn r_and_q() {
        assert_eq!(ints(&series_r(5)), vec![0, 2, 4, 14, 56, 242]);
        assert_eq!(ints(&series_q(5)), vec![0, 1, 4, 16, 68, 304]);
    }

    #[test]
    fn directed() {
        assert_eq!(ints(&series_d1(5)), vec![0, 1, 4, 19, 96, 501]);
        assert_eq!(series_d1(50), series_d1_from_s(50));
    }

    #[test]
    fn half_width_slices() {
        let n = 16;
        assert_eq!(series_dj(n, 0), series_s(n));
        assert_eq!(
            series_dj(n, 1).coeff(2),
            &BigRational::from_integer(1.into())
        );
        // Σ_j D_j = D; D_j has valuation j + 1 so j ≤ n - 1 suffices.
        let total = (0..n as u32).fold(TruncatedSeries::zero(n), |acc, j| &acc + &series_dj(n, j));
        assert_eq!(total, series_d1(n));
        for k in 0..4 {
            let tail =
                (k + 1..n as u32).fold(TruncatedSeries::zero(n), |acc, j| &acc + &series_dj(n, j));
            assert_eq!(tail, series_d_gt(n, k), "k = {k}");
        }
    }

    #[test]
    fn total_left_half_width() {
        let lw = ints(&series_lw_total(4));
        assert_eq!(&lw[..4], &[0, 0, 1, 10]);
        let n = 14;
        let weighted = (1..n as u32).fold(TruncatedSeries::zero(n), |acc, j| {
            &acc + &series_dj(n, j).scale(&BigRational::from_integer(j.into()))
        });
        assert_eq!(weighted, series_lw_total(n));
    }

    #[test]
    fn b_and_m() {
        assert_eq!(ints(&series_b(5)), vec![0, 0, 1, 10, 75, 512]);
        assert_eq!(
            ints(&series_m(8)),
            vec![0, 1, 4, 20, 110, 636, 3790, 23036, 141946]
        );
    }

    #[test]
    fn b_term_valuations() {
        let n = 12;
        for k in 0..=(n as u32 - 2) {
            assert!(series_b_term(n, k).valuation().unwrap() >= k as usize + 2);
        }
        // The first omitted term vanishes to the truncation order.
        assert_eq!(series_b_term(n, n as u32 - 1).valuation(), None);
    }

    #[test]
    fn m_dominates_d() {
        let m = series_m(20);
        let d = series_d1(20);
        for n in 0..=20 {
            assert!(m.coeff(n) >= d.coeff(n));
        }
        assert_eq!(m.coeff(3) - d.coeff(3), BigRational::from_integer(1.into()));
    }

    #[test]
    fn names() {
        for name in ["S", "R", "Q", "D", "M", "B", "LW", "D3"] {
            assert_eq!(name.parse::<NamedSeries>().unwrap().to_string(), name);
        }
        assert!("X".parse::<NamedSeries>().is_err());
    }
}
