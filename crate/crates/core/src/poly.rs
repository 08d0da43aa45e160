//! Sparse exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are maps from monomials to nonzero rational coefficients with a
//! fixed variable count; two equal polynomials have identical term maps.  The
//! monomial order is degree-lexicographic with `x1 > x2 > x3 > x4`, and this
//! single order is used everywhere in the crate so that leading-term
//! reductions are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::symmetry::Permutation;

/// Exact rational scalar; always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A monomial `x1^{e1} ... xn^{en}`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial `1`.
    pub fn unit(nvars: usize) -> Self {
        Monomial { exponents: vec![0; nvars] }
    }

    /// The monomial `x_{idx}` (zero-based variable index).
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index {idx} out of range for {nvars} variables");
        let mut exponents = vec![0; nvars];
        exponents[idx] = 1;
        Monomial { exponents }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact monomial quotient, `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        assert_eq!(self.nvars(), other.nvars());
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            if a < b {
                return None;
            }
            exponents.push(a - b);
        }
        Some(Monomial { exponents })
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial { exponents: self.exponents.iter().map(|e| e * k).collect() }
    }

    /// Renames variables by `images`: `x_i` becomes `x_{images[i]}`.
    pub fn permute(&self, images: &[usize]) -> Monomial {
        assert_eq!(images.len(), self.nvars());
        let mut exponents = vec![0; self.nvars()];
        for (i, &e) in self.exponents.iter().enumerate() {
            exponents[images[i]] = e;
        }
        Monomial { exponents }
    }
}

/// Degree-lexicographic order: compare total degree first, then the exponent
/// vectors lexicographically (so `x1 > x2 > ... > xn` among variables).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients and a fixed variable
/// count.  Zero coefficients are never stored, so structural equality is
/// semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, rat(1))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::unit(nvars), c);
        p
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::var(nvars, idx), rat(1));
        p
    }

    /// Single-term polynomial `c * m`.
    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(nvars: usize, iter: I) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m` in place, pruning a resulting zero coefficient.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Renames variables by the permutation: `x_i` becomes `x_{perm(i)}`.
    pub fn permute(&self, perm: &Permutation) -> Polynomial {
        assert_eq!(perm.size(), self.nvars, "permutation size mismatch");
        let images = perm.images();
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.permute(images), c.clone())).collect(),
        }
    }

    /// Largest monomial under the crate-wide degree-lexicographic order.
    /// `None` for the zero polynomial.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.total_degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Exact division: returns `q` with `self = q * divisor`, or `None` when
    /// no such polynomial exists.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.terms.last_key_value().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while !rem.is_zero() {
            let (lm, lc) = rem.terms.last_key_value().expect("nonzero remainder");
            let t = lm.try_div(dm)?;
            let c = lc / dc;
            let piece = Polynomial::term(t.clone(), c.clone());
            rem = rem.sub(&piece.mul(divisor));
            quotient.add_term(t, c);
        }
        Some(quotient)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Renders one `coeff * monomial` with the magnitude of the coefficient; the
/// sign is handled by the caller.  Used by the polynomial and algebra-element
/// formatters so both produce the same textual term shape.
pub(crate) fn format_term_magnitude(
    m: &Monomial,
    c: &Rational,
    var_name: &dyn Fn(usize) -> String,
) -> String {
    let mag = c.abs();
    let mono = if m.is_unit() {
        String::new()
    } else {
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { var_name(i) } else { format!("{}^{}", var_name(i), e) })
            .collect::<Vec<_>>()
            .join(" ")
    };
    if mono.is_empty() {
        format!("{mag}")
    } else if mag.is_one() {
        mono
    } else {
        format!("{mag} {mono}")
    }
}

/// Formats terms in descending degree-lexicographic order with signed joiners.
pub(crate) fn format_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Monomial, Rational>,
    var_name: &dyn Fn(usize) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        let piece = format_term_magnitude(m, c, var_name);
        if i == 0 {
            if c.is_negative() {
                write!(f, "-{piece}")?;
            } else {
                write!(f, "{piece}")?;
            }
        } else if c.is_negative() {
            write!(f, " - {piece}")?;
        } else {
            write!(f, " + {piece}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.terms, &|i| format!("x{}", i + 1))
    }
}
