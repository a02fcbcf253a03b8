//! Truncated exact power series for exponential and Eulerian generating
//! functions.
//!
//! A count sequence `f(1), f(2), ...` is stored through its normalized
//! coefficients `a_n = f(n) / D(n)`, with `D(n) = n!` for the exponential
//! family and `D(n) = q^C(n,2) [n]_q!` for the Eulerian family. In that form
//! both products are the ordinary Cauchy product, and the Gaussian
//! convolution with complement factors `q^{k(n-k)}` drops out of
//! `D(n) / (D(k) D(n-k)) = decomposition_count(k, n-k)`.
//!
//! Series have no constant term. The order is fixed at construction and
//! combining series of different orders or families is an error.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formulas;
use crate::qcalc::{decomposition_count, eulerian_denominator, factorial, BigNat};

/// Normalization `D(n)` of a generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenomFamily {
    /// `D(n) = n!`
    Factorial,
    /// `D(n) = q^C(n,2) [n]_q!`
    Eulerian(u64),
}

impl DenomFamily {
    pub fn denominator(self, n: usize) -> BigNat {
        match self {
            DenomFamily::Factorial => factorial(n),
            DenomFamily::Eulerian(q) => eulerian_denominator(n, q),
        }
    }

    /// Factorial for `q = 1`, Eulerian otherwise.
    pub fn for_q(q: u64) -> Self {
        if q == 1 {
            DenomFamily::Factorial
        } else {
            DenomFamily::Eulerian(q)
        }
    }
}

impl fmt::Display for DenomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenomFamily::Factorial => write!(f, "factorial"),
            DenomFamily::Eulerian(q) => write!(f, "eulerian({q})"),
        }
    }
}

fn rat(n: &BigNat) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `sum_{n=1}^{order} a_n x^n` with exact rational `a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    family: DenomFamily,
    // coeffs[i] is a_{i+1}
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize, family: DenomFamily) -> Self {
        Self {
            order,
            family,
            coeffs: vec![BigRational::zero(); order],
        }
    }

    /// Normalizes `values(n)` for `n = 1..=order`; absent entries count as 0.
    pub fn from_counts(
        values: &BTreeMap<usize, BigNat>,
        order: usize,
        family: DenomFamily,
    ) -> Self {
        Self::from_fn(order, family, |n| {
            values.get(&n).cloned().unwrap_or_default()
        })
    }

    pub fn from_fn(order: usize, family: DenomFamily, mut f: impl FnMut(usize) -> BigNat) -> Self {
        let coeffs = (1..=order)
            .map(|n| rat(&f(n)) / rat(&family.denominator(n)))
            .collect();
        Self {
            order,
            family,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn family(&self) -> DenomFamily {
        self.family
    }

    /// `a_n` for `1 <= n <= order`.
    pub fn coeff(&self, n: usize) -> &BigRational {
        assert!(
            (1..=self.order).contains(&n),
            "coefficient index {n} outside 1..={}",
            self.order
        );
        &self.coeffs[n - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `a_n D(n)`, which is `f(n)` for a series built from counts.
    pub fn denormalized(&self, n: usize) -> BigRational {
        self.coeff(n) * rat(&self.family.denominator(n))
    }

    pub fn to_counts(&self) -> Result<BTreeMap<usize, BigNat>> {
        (1..=self.order)
            .map(|n| {
                let v = self.denormalized(n);
                if !v.is_integer() || v.is_negative() {
                    return Err(Error::NonIntegralCoefficient { n });
                }
                let count = v.to_integer().to_biguint().expect("checked nonnegative");
                Ok((n, count))
            })
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.family != other.family {
            return Err(Error::SeriesMismatch(format!(
                "order {} / {} against order {} / {}",
                self.order, self.family, other.order, other.family
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs, ..*self })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
            ..*self
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut coeffs = vec![BigRational::zero(); self.order];
        // both factors start at x^1, so x^i * x^j lands on index i + j + 1
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .take(self.order.saturating_sub(i + 1))
            {
                coeffs[i + j + 1] += a * b;
            }
        }
        Ok(Self { coeffs, ..*self })
    }

    /// `sum_{c>=1} s^c / c!`; powers beyond the order vanish.
    pub fn exp_compose(&self) -> Self {
        let mut total = self.clone();
        let mut power = self.clone();
        let mut inv_fact = BigRational::one();
        for c in 2..=self.order {
            power = power.mul(self).expect("same order and family");
            if power.is_zero() {
                break;
            }
            inv_fact /= BigRational::from_integer(BigInt::from(c));
            total = total
                .add(&power.scale(&inv_fact))
                .expect("same order and family");
        }
        total
    }
}

/// Direct two-factor Gaussian convolution
/// `sum_{k=1}^{n-1} D(n)/(D(k) D(n-k)) f(k) g(n-k)` with `q = 1` giving the
/// binomial form.
pub fn eulerian_convolve(
    f: impl Fn(usize) -> BigNat,
    g: impl Fn(usize) -> BigNat,
    n: usize,
    q: u64,
) -> BigNat {
    (1..n)
        .map(|k| {
            let weight = if q == 1 {
                crate::qcalc::binom(n, k)
            } else {
                decomposition_count(&[k, n - k], q)
            };
            weight * f(k) * g(n - k)
        })
        .sum()
}

/// One coefficient of a Riddell check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiddellRow {
    pub n: usize,
    /// Count of all objects (graphs or non-degenerate spaces).
    pub expected: BigNat,
    /// `D(n)` times the coefficient of the exponentiated indecomposable series.
    pub composed: BigRational,
}

impl RiddellRow {
    pub fn matches(&self) -> bool {
        self.composed == rat(&self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiddellReport {
    pub q: u64,
    pub order: usize,
    pub rows: Vec<RiddellRow>,
}

impl RiddellReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(RiddellRow::matches)
    }
}

/// Compares both sides of `1 + G = e^{CG}` (for `q = 1`, exponential series
/// of all and of connected labelled graphs) or `1 + NDS = e^{DIS}` (for
/// `q >= 2`, Eulerian series of non-degenerate and of directly
/// indecomposable spaces) coefficient by coefficient.
pub fn verify_riddell(q: u64, order: usize) -> Result<RiddellReport> {
    if q == 0 || order == 0 {
        return Err(Error::InvalidArgument(
            "q and order must be at least 1".into(),
        ));
    }
    let family = DenomFamily::for_q(q);
    let (whole, parts): (Vec<BigNat>, Vec<BigNat>) = if q == 1 {
        let connected = formulas::connected_graphs_table(order)?;
        (
            (1..=order).map(formulas::graph_count).collect(),
            (1..=order)
                .map(|n| connected.get(n).cloned().expect("table covers 1..=order"))
                .collect(),
        )
    } else {
        let nds = formulas::nds_table(order, q)?;
        (
            (1..=order)
                .map(|n| nds.get(n).cloned().expect("table covers 0..=order"))
                .collect(),
            (1..=order)
                .map(|n| formulas::dis(n, q))
                .collect::<Result<_>>()?,
        )
    };
    let composed = TruncatedSeries::from_fn(order, family, |n| parts[n - 1].clone()).exp_compose();
    let rows = (1..=order)
        .map(|n| RiddellRow {
            n,
            expected: whole[n - 1].clone(),
            composed: composed.denormalized(n),
        })
        .collect();
    Ok(RiddellReport { q, order, rows })
}
