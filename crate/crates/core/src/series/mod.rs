//! Exact power series truncated at a fixed order.
//!
//! Coefficients are arbitrary-precision rationals. Products and inverses
//! clear denominators first and run on integers, so integral series (the
//! common case) never pay for rational normalization.

mod gf;
mod lemma;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use gf::{
    series_a_k, series_b, series_b_term, series_d1, series_d1_from_s, series_d_gt, series_dj,
    series_lemma_rhs, series_lw_total, series_m, series_q, series_r, series_s, series_s_closed,
    NamedSeries,
};
pub use lemma::{check_a_k, check_lemma_hd, LemmaCheck};

/// Coefficients `0..=order` of a power series in `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(rat(1), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(rat(1), 1, order)
    }

    /// `c · t^power`, which is zero when `power > order`.
    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Integer coefficients, padded with zeros or truncated to `order`.
    pub fn from_integers<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_rationals(coeffs.into_iter().map(rat), order)
    }

    pub fn from_rationals<I>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = BigRational>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Drops or zero-pads coefficients to the requested order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for n in k..=self.order() {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }

    /// Division by `t^k`; the first `k` coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(k <= self.order(), "shift larger than the order");
        assert!(
            self.coeffs[..k].iter().all(|c| c.is_zero()),
            "series is not divisible by t^{k}"
        );
        TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Common denominator and integer numerators.
    fn split(&self) -> (BigInt, Vec<BigInt>) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| {
                if c.denom() == &denom {
                    c.numer().clone()
                } else {
                    c.numer() * (&denom / c.denom())
                }
            })
            .collect();
        (denom, nums)
    }

    fn from_split(denom: &BigInt, nums: Vec<BigInt>) -> Self {
        let coeffs = nums
            .into_iter()
            .map(|n| {
                if denom.is_one() {
                    BigRational::from_integer(n)
                } else {
                    BigRational::new(n, denom.clone())
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (da, a) = self.split();
        let (db, b) = other.split();
        let mut c = vec![BigInt::zero(); order + 1];
        let (Some(va), Some(vb)) = (self.valuation(), other.valuation()) else {
            return Self::zero(order);
        };
        for i in va..=order.saturating_sub(vb) {
            if a[i].is_zero() {
                continue;
            }
            for j in vb..=order - i {
                if !b[j].is_zero() {
                    c[i + j] += &a[i] * &b[j];
                }
            }
        }
        Self::from_split(&(da * db), c)
    }

    /// Multiplicative inverse; needs a non-zero constant term.
    pub fn invert(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let order = self.order();
        let (denom, a) = self.split();
        // With a = A/denom and integer A: A0^(n+1) [t^n](1/A) =: c_n satisfies
        // c_n = -Σ_{k≥1} A_k A0^(k-1) c_{n-k}, which stays in the integers.
        let a0 = a[0].clone();
        let mut scaled: Vec<(usize, BigInt)> = Vec::new();
        let mut power = BigInt::one();
        for (k, ak) in a.iter().enumerate().skip(1) {
            if !ak.is_zero() {
                scaled.push((k, ak * &power));
            }
            power *= &a0;
        }
        let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
        c.push(BigInt::one());
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for (k, ak) in &scaled {
                if *k > n {
                    break;
                }
                acc -= ak * &c[n - k];
            }
            c.push(acc);
        }
        if a0.is_one() {
            return Ok(Self::from_split(
                &BigInt::one(),
                c.into_iter().map(|x| x * &denom).collect(),
            ));
        }
        let mut a0_power = a0.clone();
        let coeffs = c
            .into_iter()
            .map(|cn| {
                let q = BigRational::new(cn * &denom, a0_power.clone());
                a0_power *= &a0;
                q
            })
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Square root with constant term 1, by Newton iteration
    /// `y ← (y + f/y) / 2`, doubling the number of correct terms each step.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstantTerm);
        }
        let order = self.order();
        let half = BigRational::new(1.into(), 2.into());
        let mut y = TruncatedSeries::one(0);
        let mut correct = 1;
        while correct < order + 1 {
            correct = (2 * correct).min(order + 1);
            let f = self.with_order(correct - 1);
            let y_ext = y.with_order(correct - 1);
            y = (&y_ext + &f.mul_series(&y_ext.invert()?)).scale(&half);
        }
        Ok(y.with_order(order))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }

    /// The truncated polynomial evaluated at a float.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn zip_with(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    f: impl Fn(&BigRational, &BigRational) -> BigRational,
) -> TruncatedSeries {
    let order = a.order().min(b.order());
    TruncatedSeries {
        coeffs: (0..=order).map(|n| f(&a.coeffs[n], &b.coeffs[n])).collect(),
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·t")?,
                _ => write!(f, "{c}·t^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        use num_traits::ToPrimitive;
        s.integer_coefficients()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn geometric_series() {
        let one_minus_t = TruncatedSeries::from_integers([1, -1], 6);
        assert_eq!(ints(&one_minus_t.invert().unwrap()), vec![1; 7]);
    }

    #[test]
    fn sqrt_of_one() {
        assert_eq!(
            TruncatedSeries::one(5).sqrt().unwrap(),
            TruncatedSeries::one(5)
        );
    }

    #[test]
    fn sqrt_of_delannoy_discriminant() {
        let disc = TruncatedSeries::from_integers([1, -6, 1], 8);
        let root = disc.sqrt().unwrap();
        assert_eq!(&ints(&root)[..4], &[1, -3, -4, -12]);
        assert_eq!(root.mul_series(&root), disc);
    }

    #[test]
    fn rational_inverse() {
        // 1 / (2 - t) = 1/2 + t/4 + t²/8 + …
        let s = TruncatedSeries::from_integers([2, -1], 4).invert().unwrap();
        for n in 0..=4 {
            assert_eq!(
                s.coeff(n),
                &BigRational::new(1.into(), BigInt::from(2).pow(n as u32 + 1))
            );
        }
        let half =
            TruncatedSeries::from_rationals([BigRational::new(1.into(), 3.into()), rat(1)], 5);
        let back = half.invert().unwrap().mul_series(&half);
        assert_eq!(back, TruncatedSeries::one(5));
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            TruncatedSeries::variable(3).invert(),
            Err(Error::NotInvertible)
        );
        assert_eq!(
            TruncatedSeries::from_integers([4, 1], 3).sqrt(),
            Err(Error::SqrtConstantTerm)
        );
    }

    #[test]
    fn orders_and_shifts() {
        let a = TruncatedSeries::from_integers([1, 2, 3], 5);
        let b = TruncatedSeries::from_integers([1, 1], 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!(ints(&(&a * &b)), vec![1, 3, 5, 3]);
        assert_eq!(ints(&a.shift_up(2)), vec![0, 0, 1, 2, 3, 0]);
        assert_eq!(ints(&a.shift_up(2).shift_down(2)), vec![1, 2, 3, 0]);
        assert_eq!(ints(&b.pow(3)), vec![1, 3, 3, 1]);
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(TruncatedSeries::zero(3).valuation(), None);
    }
}
