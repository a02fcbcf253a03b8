//! Exact q-calculus: q-integers, q-factorials, Gaussian binomials, Galois
//! numbers and the count of ordered direct sum decompositions of `F_q^n`.
//!
//! `q` is always a concrete integer `>= 1`. At `q = 1` every quantity takes
//! its classical limit (`[n]_1 = n`, Gaussian binomials become ordinary
//! binomials, Galois numbers become powers of two), so the graph case is a
//! direct call rather than a separate code path.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count.
pub type BigNat = BigUint;
/// Exact rational in lowest terms with a positive denominator.
pub type BigRat = BigRational;

/// `C(n, 2)`, the dimension of the space of `n x n` alternating matrices.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn pow(base: u64, exp: usize) -> BigNat {
    num_traits::pow(BigNat::from(base), exp)
}

/// Divides exactly, panicking if a remainder is left.
///
/// Only used where divisibility is a theorem (q-factorial quotients), so a
/// remainder means the caller is broken.
pub(crate) fn exact_div(numerator: &BigNat, divisor: &BigNat) -> BigNat {
    let (quot, rem) = numerator.div_rem(divisor);
    assert!(
        rem.is_zero(),
        "inexact division: {numerator} is not divisible by {divisor}"
    );
    quot
}

/// Exact division for recursions whose divisibility is a claim under test.
pub fn checked_exact_div(
    context: &'static str,
    numerator: &BigInt,
    divisor: &BigInt,
) -> Result<BigInt> {
    let (quot, rem) = numerator.div_rem(divisor);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            context,
            numerator: numerator.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok(quot)
}

/// Converts a signed intermediate back to a count, rejecting negatives.
pub fn to_nat(context: &'static str, n: usize, value: BigInt) -> Result<BigNat> {
    value
        .to_biguint()
        .ok_or(Error::NegativeCount { context, n })
}

fn assert_q(q: u64) {
    assert!(q >= 1, "q must be at least 1, got {q}");
}

/// `[n]_q = q^{n-1} + ... + q + 1`; zero for `n = 0`.
pub fn q_int(n: usize, q: u64) -> BigNat {
    assert_q(q);
    if q == 1 {
        return BigNat::from(n);
    }
    // (q^n - 1) / (q - 1)
    exact_div(&(pow(q, n) - 1u32), &BigNat::from(q - 1))
}

type Cache = RwLock<HashMap<(usize, usize, u64), BigNat>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn memoized(key: (usize, usize, u64), compute: impl FnOnce() -> BigNat) -> BigNat {
    if let Some(v) = cache().read().expect("q-calculus cache poisoned").get(&key) {
        return v.clone();
    }
    let value = compute();
    cache()
        .write()
        .expect("q-calculus cache poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

// Cache keys: (n, usize::MAX, q) for factorials, (n, k, q) for binomials.
const FACTORIAL_TAG: usize = usize::MAX;

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`; equals `n!` at `q = 1`.
pub fn q_factorial(n: usize, q: u64) -> BigNat {
    assert_q(q);
    if n == 0 {
        return BigNat::one();
    }
    memoized((n, FACTORIAL_TAG, q), || {
        q_factorial(n - 1, q) * q_int(n, q)
    })
}

/// Number of `k`-dimensional subspaces of `F_q^n`; zero when `k > n`.
pub fn gauss_binom(n: usize, k: usize, q: u64) -> BigNat {
    assert_q(q);
    if k > n {
        return BigNat::zero();
    }
    if k == 0 || k == n {
        return BigNat::one();
    }
    memoized((n, k, q), || {
        let denom = q_factorial(k, q) * q_factorial(n - k, q);
        exact_div(&q_factorial(n, q), &denom)
    })
}

/// Total number of subspaces of `F_q^m`.
pub fn galois_number(m: usize, q: u64) -> BigNat {
    (0..=m).map(|d| gauss_binom(m, d, q)).sum()
}

/// `q^{C(n,2)} [n]_q!`, the normalization of the Eulerian generating function.
pub fn eulerian_denominator(n: usize, q: u64) -> BigNat {
    pow(q, choose2(n)) * q_factorial(n, q)
}

/// Number of ordered tuples `(U_1, ..., U_c)` with `dim U_i = parts[i]` and
/// `F_q^n = U_1 + ... + U_c` direct, where `n` is the sum of the parts.
///
/// At `q = 1` this is the multinomial coefficient.
pub fn decomposition_count(parts: &[usize], q: u64) -> BigNat {
    let n: usize = parts.iter().sum();
    let denom: BigNat = parts.iter().map(|&k| eulerian_denominator(k, q)).product();
    exact_div(&eulerian_denominator(n, q), &denom)
}

pub fn factorial(n: usize) -> BigNat {
    (1..=n).map(BigNat::from).product()
}

pub fn binom(n: usize, k: usize) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigNat::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / (n_1! ... n_c!)` with `n` the sum of the parts.
pub fn multinomial(parts: &[usize]) -> BigNat {
    let n: usize = parts.iter().sum();
    let denom: BigNat = parts.iter().map(|&k| factorial(k)).product();
    exact_div(&factorial(n), &denom)
}

/// Ordered tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "composition parts must be positive, got {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `sum_i C(n_i, 2)`.
    pub fn inner_pairs(&self) -> usize {
        self.0.iter().map(|&k| choose2(k)).sum()
    }
}

impl Deref for Composition {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Iterator over ordered `c`-compositions of `n` in lexicographic order.
pub struct Compositions {
    current: Option<Vec<usize>>,
}

/// All ordered `c`-tuples of positive integers summing to `n`.
pub fn compositions(n: usize, c: usize) -> Compositions {
    let current = if c == 0 || c > n {
        None
    } else {
        let mut first = vec![1; c];
        first[c - 1] = n - (c - 1);
        Some(first)
    };
    Compositions { current }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.current.take()?;
        let c = current.len();
        // Successor: bump the rightmost non-final part whose tail can give up
        // one unit, reset the tail to the smallest completion.
        let mut next = current.clone();
        let mut tail = next[c - 1];
        let mut advanced = false;
        for i in (0..c - 1).rev() {
            let slots = c - 1 - i;
            if tail > slots {
                next[i] += 1;
                for p in next.iter_mut().take(c - 1).skip(i + 1) {
                    *p = 1;
                }
                next[c - 1] = tail - 1 - (slots - 1);
                advanced = true;
                break;
            }
            tail += next[i];
        }
        if advanced {
            self.current = Some(next);
        }
        Some(Composition(current))
    }
}
