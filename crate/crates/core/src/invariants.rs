//! The symmetric polynomial toolkit: elementary symmetric polynomials, power
//! sums, Newton conversion, and decomposition of a symmetric polynomial as a
//! polynomial in the elementary symmetric generators.
//!
//! [`SigmaPolynomial`] is a polynomial in *abstract* indeterminates: `sigma1,
//! sigma2, sigma3` for three variables or `e1, e2` for two.  Keeping the
//! sigma-form abstract lets callers choose when to expand.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{format_terms, Monomial, Polynomial, Rational};
use crate::symmetry;

/// Polynomial in the abstract elementary-symmetric indeterminates.  The
/// number of indeterminates (2 or 3) matches the ambient variable count, and
/// evaluation into the polynomial ring is a ring homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPolynomial {
    inner: Polynomial,
}

impl SigmaPolynomial {
    pub fn zero(indeterminates: usize) -> Self {
        assert!((2..=3).contains(&indeterminates));
        SigmaPolynomial { inner: Polynomial::zero(indeterminates) }
    }

    pub fn one(indeterminates: usize) -> Self {
        SigmaPolynomial { inner: Polynomial::one(indeterminates) }
    }

    pub fn constant(indeterminates: usize, c: Rational) -> Self {
        SigmaPolynomial { inner: Polynomial::constant(indeterminates, c) }
    }

    /// The single indeterminate `sigma_k` (`k` is 1-based).
    pub fn sigma(indeterminates: usize, k: usize) -> Self {
        assert!((1..=indeterminates).contains(&k), "sigma index {k} out of range");
        SigmaPolynomial { inner: Polynomial::var(indeterminates, k - 1) }
    }

    /// Single term `c * sigma1^{e[0]} sigma2^{e[1]} ...`.
    pub fn term(exponents: Vec<u32>, c: Rational) -> Self {
        SigmaPolynomial { inner: Polynomial::term(Monomial::new(exponents), c) }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(
        indeterminates: usize,
        iter: I,
    ) -> Self {
        SigmaPolynomial {
            inner: Polynomial::from_terms(
                indeterminates,
                iter.into_iter().map(|(e, c)| (Monomial::new(e), c)),
            ),
        }
    }

    pub fn indeterminates(&self) -> usize {
        self.inner.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.inner.terms()
    }

    pub fn add(&self, other: &Self) -> Self {
        SigmaPolynomial { inner: self.inner.add(&other.inner) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SigmaPolynomial { inner: self.inner.sub(&other.inner) }
    }

    pub fn neg(&self) -> Self {
        SigmaPolynomial { inner: self.inner.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        SigmaPolynomial { inner: self.inner.mul(&other.inner) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SigmaPolynomial { inner: self.inner.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        SigmaPolynomial { inner: self.inner.pow(k) }
    }

    /// Weighted total degree of the evaluated polynomial (`sigma_k` counts as
    /// degree `k`); `None` for zero.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms()
            .map(|(m, _)| {
                m.exponents().iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum::<u32>()
            })
            .max()
    }
}

impl fmt::Display for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &dyn Fn(usize) -> String = if self.indeterminates() == 2 {
            &|i| format!("e{}", i + 1)
        } else {
            &|i| format!("sigma{}", i + 1)
        };
        let terms: std::collections::BTreeMap<_, _> =
            self.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        format_terms(f, &terms, names)
    }
}

/// The elementary symmetric polynomial `sigma_k` in `nvars` variables.
pub fn elementary_in(nvars: usize, k: usize) -> Polynomial {
    assert!((2..=3).contains(&nvars), "unsupported variable count {nvars}");
    assert!((1..=nvars).contains(&k), "sigma index {k} out of range for {nvars} variables");
    let mut out = Polynomial::zero(nvars);
    // all k-subsets of the variables
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut exps = vec![0u32; nvars];
        for &i in &subset {
            exps[i] = 1;
        }
        out.add_term(Monomial::new(exps), Rational::from_integer(1.into()));
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] != i + nvars - k {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// `sigma_k` in three variables.
pub fn elementary(k: usize) -> Polynomial {
    elementary_in(3, k)
}

/// The power sum `nu_k = x1^k + x2^k + x3^k`.
pub fn power_sum(k: u32) -> Polynomial {
    assert!(k >= 1, "power sum index must be positive");
    let mut out = Polynomial::zero(3);
    for i in 0..3 {
        let mut exps = vec![0u32; 3];
        exps[i] = k;
        out.add_term(Monomial::new(exps), Rational::from_integer(1.into()));
    }
    out
}

/// `nu_k` written in the sigma indeterminates via the Newton recurrence
/// `nu_k = sigma1 nu_{k-1} - sigma2 nu_{k-2} + sigma3 nu_{k-3}` (three
/// variables, `k >= 4`), with the classical low-degree seeds.
pub fn power_sum_sigma(k: u32) -> SigmaPolynomial {
    assert!(k >= 1, "power sum index must be positive");
    let s1 = SigmaPolynomial::sigma(3, 1);
    let s2 = SigmaPolynomial::sigma(3, 2);
    let s3 = SigmaPolynomial::sigma(3, 3);
    let mut nus = vec![
        s1.clone(),
        s1.mul(&s1).sub(&s2.scale(&crate::poly::rat(2))),
        s1.pow(3)
            .sub(&s1.mul(&s2).scale(&crate::poly::rat(3)))
            .add(&s3.scale(&crate::poly::rat(3))),
    ];
    for i in 3..k as usize {
        let next = s1
            .mul(&nus[i - 1])
            .sub(&s2.mul(&nus[i - 2]))
            .add(&s3.mul(&nus[i - 3]));
        nus.push(next);
    }
    nus[(k - 1) as usize].clone()
}

/// Substitutes the explicit elementary symmetric polynomials for the
/// indeterminates and expands.
pub fn eval_sigma(g: &SigmaPolynomial) -> Polynomial {
    let nvars = g.indeterminates();
    let generators: Vec<Polynomial> = (1..=nvars).map(|k| elementary_in(nvars, k)).collect();
    let mut out = Polynomial::zero(nvars);
    for (m, c) in g.terms() {
        let mut value = Polynomial::constant(nvars, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                value = value.mul(&generators[i].pow(e));
            }
        }
        out = out.add(&value);
    }
    out
}

/// Writes a symmetric polynomial as a polynomial in the elementary symmetric
/// generators by leading-term reduction: the leading exponent vector of a
/// symmetric polynomial is weakly decreasing, so subtracting
/// `c * sigma1^{a1-a2} sigma2^{a2-a3} ... ` cancels it and strictly lowers
/// the leading monomial.
pub fn decompose_symmetric(p: &Polynomial) -> Result<SigmaPolynomial> {
    let nvars = p.nvars();
    assert!((2..=3).contains(&nvars), "unsupported variable count {nvars}");
    if let Some((i, j)) = symmetry::poly_symmetry_violation(p) {
        return Err(Error::NotSymmetric(i, j));
    }
    let mut rem = p.clone();
    let mut out = SigmaPolynomial::zero(nvars);
    while let Some(lead) = rem.leading_monomial().cloned() {
        let exps = lead.exponents();
        for w in exps.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Inconsistent(
                    "leading exponents of a symmetric polynomial must be weakly decreasing".into(),
                ));
            }
        }
        let mut sigma_exps = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let next = if i + 1 < nvars { exps[i + 1] } else { 0 };
            sigma_exps.push(exps[i] - next);
        }
        let c = rem.coeff(&lead);
        let piece = SigmaPolynomial::term(sigma_exps, c);
        rem = rem.sub(&eval_sigma(&piece));
        out = out.add(&piece);
    }
    Ok(out)
}
