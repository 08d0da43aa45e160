//! Normal-form arithmetic in the relatively free algebras `F_2` and `F_3` of
//! the variety defined by `[[z1,z2],z3] = 0`.
//!
//! For arity `n <= 3` the commutator ideal is a free left module over the
//! polynomial ring generated by the basic commutators `[x_j, x_i]`, `j > i`,
//! so every element has the canonical form
//!
//! ```text
//!     scalar  +  sum over j > i of  p_{ji} * [x_j, x_i]
//! ```
//!
//! with `scalar` and the `p_{ji}` ordinary commutative polynomials.  Two
//! facts make this representation closed under multiplication: basic
//! commutators are central, and the product of any two basic commutators in
//! at most three generators vanishes.  The representation is validated
//! against the first-principles quotient in [`crate::oracle`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_term_magnitude, rat, Monomial, Polynomial, Rational};

/// Index of a basic commutator `[x_hi, x_lo]` with `hi > lo` (zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommutatorIndex {
    hi: usize,
    lo: usize,
}

impl CommutatorIndex {
    pub fn new(hi: usize, lo: usize) -> Self {
        assert!(hi > lo, "commutator index must satisfy hi > lo");
        CommutatorIndex { hi, lo }
    }

    /// Orders an argument pair, returning the sign of the rearrangement;
    /// `None` when the arguments coincide (the bracket vanishes).
    pub fn ordered(j: usize, i: usize) -> Option<(Self, i64)> {
        match j.cmp(&i) {
            std::cmp::Ordering::Greater => Some((CommutatorIndex::new(j, i), 1)),
            std::cmp::Ordering::Less => Some((CommutatorIndex::new(i, j), -1)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    /// The basic commutators available at a given arity, in canonical order.
    pub fn all(arity: usize) -> Vec<CommutatorIndex> {
        let mut out = Vec::new();
        for hi in 1..arity {
            for lo in 0..hi {
                out.push(CommutatorIndex::new(hi, lo));
            }
        }
        out
    }
}

/// A word in the free generators, e.g. `x3 x2 x1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    arity: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(arity: usize, letters: Vec<usize>) -> Result<Self> {
        if !(2..=3).contains(&arity) {
            return Err(Error::UnsupportedArity(arity, "words normalize only at arity 2 or 3"));
        }
        for &l in &letters {
            if l >= arity {
                return Err(Error::VariableOutOfRange { index: l, arity });
            }
        }
        Ok(Word { arity, letters })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

/// Canonical element of `F_n` for `n` in `{2, 3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    arity: usize,
    scalar: Polynomial,
    module: BTreeMap<CommutatorIndex, Polynomial>,
}

impl AlgebraElement {
    pub fn zero(arity: usize) -> Self {
        assert!((2..=3).contains(&arity), "unsupported arity {arity}");
        AlgebraElement { arity, scalar: Polynomial::zero(arity), module: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        AlgebraElement::from_scalar(Polynomial::one(arity))
    }

    pub fn from_scalar(scalar: Polynomial) -> Self {
        let arity = scalar.nvars();
        assert!((2..=3).contains(&arity), "unsupported arity {arity}");
        AlgebraElement { arity, scalar, module: BTreeMap::new() }
    }

    pub fn variable(arity: usize, idx: usize) -> Self {
        AlgebraElement::from_scalar(Polynomial::var(arity, idx))
    }

    pub fn from_rational(arity: usize, c: Rational) -> Self {
        AlgebraElement::from_scalar(Polynomial::constant(arity, c))
    }

    /// The module term `coeff * [x_hi, x_lo]`.
    pub fn from_module_term(arity: usize, key: CommutatorIndex, coeff: Polynomial) -> Self {
        assert!((2..=3).contains(&arity), "unsupported arity {arity}");
        assert!(key.hi() < arity, "commutator index out of range for arity {arity}");
        assert_eq!(coeff.nvars(), arity, "coefficient arity mismatch");
        let mut module = BTreeMap::new();
        if !coeff.is_zero() {
            module.insert(key, coeff);
        }
        AlgebraElement { arity, scalar: Polynomial::zero(arity), module }
    }

    /// The basic commutator `[x_hi, x_lo]` itself.
    pub fn basic_commutator(arity: usize, key: CommutatorIndex) -> Self {
        AlgebraElement::from_module_term(arity, key, Polynomial::one(arity))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn scalar(&self) -> &Polynomial {
        &self.scalar
    }

    pub fn module(&self) -> impl Iterator<Item = (&CommutatorIndex, &Polynomial)> {
        self.module.iter()
    }

    pub fn module_coeff(&self, key: &CommutatorIndex) -> Polynomial {
        self.module.get(key).cloned().unwrap_or_else(|| Polynomial::zero(self.arity))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.module.is_empty()
    }

    /// True when the scalar part vanishes, i.e. the element lies in the
    /// commutator ideal.
    pub fn is_module_only(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Total degree, counting each basic commutator as degree 2; `None` for
    /// the zero element.
    pub fn degree(&self) -> Option<u32> {
        let scalar = self.scalar.degree();
        let module = self.module.values().filter_map(|p| p.degree().map(|d| d + 2)).max();
        scalar.into_iter().chain(module).max()
    }

    fn add_module_term(&mut self, key: CommutatorIndex, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.module.entry(key).or_insert_with(|| Polynomial::zero(self.arity));
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.module.remove(&key);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        out.scalar = out.scalar.add(&other.scalar);
        for (key, coeff) in &other.module {
            out.add_module_term(*key, coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            arity: self.arity,
            scalar: self.scalar.neg(),
            module: self.module.iter().map(|(k, p)| (*k, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.arity);
        }
        AlgebraElement {
            arity: self.arity,
            scalar: self.scalar.scale(c),
            module: self.module.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
        }
    }

    /// Product in the algebra.  The scalar parts multiply commutatively, the
    /// module parts are scaled by the opposite scalar (brackets are central),
    /// module times module vanishes, and reordering the two scalar words
    /// contributes the straightening defect of each monomial pair.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = AlgebraElement::from_scalar(self.scalar.mul(&other.scalar));
        for (key, coeff) in &other.module {
            out.add_module_term(*key, self.scalar.mul(coeff));
        }
        for (key, coeff) in &self.module {
            out.add_module_term(*key, other.scalar.mul(coeff));
        }
        for (ma, ca) in self.scalar.terms() {
            for (mb, cb) in other.scalar.terms() {
                accumulate_defect(&mut out, ma, mb, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> AlgebraElement {
        let mut out = AlgebraElement::one(self.arity);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, AlgebraElement> {
        let mut out: BTreeMap<u32, AlgebraElement> = BTreeMap::new();
        for (d, p) in self.scalar.homogeneous_components() {
            out.entry(d).or_insert_with(|| AlgebraElement::zero(self.arity)).scalar = p;
        }
        for (key, coeff) in &self.module {
            for (d, p) in coeff.homogeneous_components() {
                out.entry(d + 2)
                    .or_insert_with(|| AlgebraElement::zero(self.arity))
                    .add_module_term(*key, p);
            }
        }
        out
    }
}

/// Bracket terms produced when the sorted word of `ma` is concatenated with
/// the sorted word of `mb` and straightened: every letter pair `x_j` (from
/// `ma`) past `x_i` (from `mb`) with `j > i` swaps once, emitting
/// `[x_j, x_i]` times the remaining letters as a commutative monomial.
fn accumulate_defect(out: &mut AlgebraElement, ma: &Monomial, mb: &Monomial, c: &Rational) {
    let ea = ma.exponents();
    let eb = mb.exponents();
    let product = ma.mul(mb);
    for j in 1..ea.len() {
        for i in 0..j {
            let count = u64::from(ea[j]) * u64::from(eb[i]);
            if count == 0 {
                continue;
            }
            let mut exps = product.exponents().to_vec();
            exps[i] -= 1;
            exps[j] -= 1;
            out.add_module_term(
                CommutatorIndex::new(j, i),
                Polynomial::term(Monomial::new(exps), c * rat(count as i64)),
            );
        }
    }
}

/// Rewrites a word to canonical form.  Out-of-order adjacent letters
/// `x_j x_i` (`j > i`) are swapped one at a time; each swap emits
/// `[x_j, x_i]` scaled by the remaining letters, which multiply commutatively
/// because the bracket is central and kills every further bracket.
pub fn normalize_word(w: &Word) -> AlgebraElement {
    let arity = w.arity();
    let mut letters = w.letters().to_vec();
    let mut out = AlgebraElement::zero(arity);
    loop {
        let swap_at = (0..letters.len().saturating_sub(1)).find(|&i| letters[i] > letters[i + 1]);
        let Some(i) = swap_at else { break };
        let (j, k) = (letters[i], letters[i + 1]);
        let mut exps = vec![0u32; arity];
        for (pos, &l) in letters.iter().enumerate() {
            if pos != i && pos != i + 1 {
                exps[l] += 1;
            }
        }
        out.add_module_term(
            CommutatorIndex::new(j, k),
            Polynomial::term(Monomial::new(exps), rat(1)),
        );
        letters.swap(i, i + 1);
    }
    let mut exps = vec![0u32; arity];
    for &l in &letters {
        exps[l] += 1;
    }
    out.add(&AlgebraElement::from_scalar(Polynomial::term(Monomial::new(exps), rat(1))))
}

/// The commutator `uv - vu`.  Its scalar part always vanishes.
pub fn bracket(u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
    u.mul(v).sub(&v.mul(u))
}

/// Closed form for the commutator of two monomials: the coefficient of
/// `[x_j, x_i]` is `(a_j b_i - a_i b_j) * (uv / (x_i x_j))` where `a`, `b`
/// are the exponent vectors.
pub fn monomial_bracket(arity: usize, u: &Monomial, v: &Monomial) -> AlgebraElement {
    assert!((2..=3).contains(&arity), "unsupported arity {arity}");
    assert_eq!(u.nvars(), arity);
    assert_eq!(v.nvars(), arity);
    let a = u.exponents();
    let b = v.exponents();
    let product = u.mul(v);
    let mut out = AlgebraElement::zero(arity);
    for j in 1..arity {
        for i in 0..j {
            let count = i64::from(a[j]) * i64::from(b[i]) - i64::from(a[i]) * i64::from(b[j]);
            if count == 0 {
                continue;
            }
            let mut exps = product.exponents().to_vec();
            if exps[i] == 0 || exps[j] == 0 {
                continue;
            }
            exps[i] -= 1;
            exps[j] -= 1;
            out.add_module_term(
                CommutatorIndex::new(j, i),
                Polynomial::term(Monomial::new(exps), rat(count)),
            );
        }
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var_name = |i: usize| format!("x{}", i + 1);
        let mut first = true;
        if !self.scalar.is_zero() {
            write!(f, "{}", self.scalar)?;
            first = false;
        }
        for (key, coeff) in &self.module {
            let bracket = format!("[x{},x{}]", key.hi() + 1, key.lo() + 1);
            if coeff.num_terms() == 1 {
                let (m, c) = coeff.terms().next().expect("nonzero coefficient");
                let piece = format_term_magnitude(m, c, &var_name);
                let body = if m.is_unit() && c.abs() == rat(1) {
                    bracket
                } else {
                    format!("{piece}{bracket}")
                };
                if first {
                    write!(f, "{}{}", if c.is_negative() { "-" } else { "" }, body)?;
                } else {
                    write!(f, " {} {}", if c.is_negative() { "-" } else { "+" }, body)?;
                }
            } else {
                if first {
                    write!(f, "({coeff}){bracket}")?;
                } else {
                    write!(f, " + ({coeff}){bracket}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn word(arity: usize, letters: &[usize]) -> Word {
        Word::new(arity, letters.to_vec()).unwrap()
    }

    fn b(arity: usize, hi: usize, lo: usize) -> AlgebraElement {
        AlgebraElement::basic_commutator(arity, CommutatorIndex::new(hi, lo))
    }

    fn x(arity: usize, i: usize) -> AlgebraElement {
        AlgebraElement::variable(arity, i)
    }

    #[test]
    fn normalize_two_letter_swap() {
        // x2 x1 = x1 x2 + [x2, x1]
        let nf = normalize_word(&word(2, &[1, 0]));
        let expected = AlgebraElement::from_scalar(Polynomial::term(
            Monomial::new(vec![1, 1]),
            rat(1),
        ))
        .add(&b(2, 1, 0));
        assert_eq!(nf, expected);
    }

    #[test]
    fn normalize_ordered_word_is_scalar() {
        let nf = normalize_word(&word(2, &[0, 1]));
        assert!(nf.module.is_empty());
        assert_eq!(nf.scalar, Polynomial::term(Monomial::new(vec![1, 1]), rat(1)));
    }

    #[test]
    fn normalize_fully_reversed_three_letter_word() {
        // x3 x2 x1 = x1 x2 x3 + x3 [x2,x1] + x2 [x3,x1] + x1 [x3,x2]
        let nf = normalize_word(&word(3, &[2, 1, 0]));
        let mut expected = AlgebraElement::from_scalar(Polynomial::term(
            Monomial::new(vec![1, 1, 1]),
            rat(1),
        ));
        expected = expected.add(&AlgebraElement::from_module_term(
            3,
            CommutatorIndex::new(1, 0),
            Polynomial::var(3, 2),
        ));
        expected = expected.add(&AlgebraElement::from_module_term(
            3,
            CommutatorIndex::new(2, 0),
            Polynomial::var(3, 1),
        ));
        expected = expected.add(&AlgebraElement::from_module_term(
            3,
            CommutatorIndex::new(2, 1),
            Polynomial::var(3, 0),
        ));
        assert_eq!(nf, expected);
    }

    #[test]
    fn normalization_is_independent_of_swap_order() {
        // Same rewriting loop but always picking the *last* out-of-order pair.
        fn normalize_last_first(w: &Word) -> AlgebraElement {
            let arity = w.arity();
            let mut letters = w.letters().to_vec();
            let mut out = AlgebraElement::zero(arity);
            loop {
                let swap_at =
                    (0..letters.len().saturating_sub(1)).rev().find(|&i| letters[i] > letters[i + 1]);
                let Some(i) = swap_at else { break };
                let (j, k) = (letters[i], letters[i + 1]);
                let mut exps = vec![0u32; arity];
                for (pos, &l) in letters.iter().enumerate() {
                    if pos != i && pos != i + 1 {
                        exps[l] += 1;
                    }
                }
                out.add_module_term(
                    CommutatorIndex::new(j, k),
                    Polynomial::term(Monomial::new(exps), rat(1)),
                );
                letters.swap(i, i + 1);
            }
            let mut exps = vec![0u32; arity];
            for &l in &letters {
                exps[l] += 1;
            }
            out.add(&AlgebraElement::from_scalar(Polynomial::term(Monomial::new(exps), rat(1))))
        }

        // Exhaust all words of length <= 4 at arity 3.
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..3 {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            for letters in &next {
                let w = word(3, letters);
                assert_eq!(normalize_word(&w), normalize_last_first(&w));
            }
            layer = next;
        }
    }

    #[test]
    fn brackets_are_central() {
        let lhs = x(3, 0).mul(&b(3, 1, 0));
        let rhs = b(3, 1, 0).mul(&x(3, 0));
        assert_eq!(lhs, rhs);
        let expected =
            AlgebraElement::from_module_term(3, CommutatorIndex::new(1, 0), Polynomial::var(3, 0));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn products_of_basic_commutators_vanish() {
        for lhs in CommutatorIndex::all(3) {
            for rhs in CommutatorIndex::all(3) {
                assert!(b(3, lhs.hi(), lhs.lo()).mul(&b(3, rhs.hi(), rhs.lo())).is_zero());
            }
        }
    }

    #[test]
    fn bracket_products_alternate_on_all_generator_tuples() {
        // [z1,z2][z3,z4] = -[z1,z3][z2,z4] for every choice of generators;
        // in particular every such product is zero.
        for z1 in 0..3 {
            for z2 in 0..3 {
                for z3 in 0..3 {
                    for z4 in 0..3 {
                        let lhs = bracket(&x(3, z1), &x(3, z2)).mul(&bracket(&x(3, z3), &x(3, z4)));
                        let rhs =
                            bracket(&x(3, z1), &x(3, z3)).mul(&bracket(&x(3, z2), &x(3, z4)));
                        assert_eq!(lhs, rhs.neg());
                        assert!(lhs.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn variable_product_matches_word_normalization() {
        let prod = x(2, 1).mul(&x(2, 0));
        assert_eq!(prod, normalize_word(&word(2, &[1, 0])));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&x(2, 1), &x(2, 0)), b(2, 1, 0));
        let u = x(3, 0).mul(&x(3, 1)).add(&b(3, 2, 1));
        assert!(bracket(&u, &u).is_zero());
        // [x1^2, x2] = -2 x1 [x2, x1]
        let x1sq = AlgebraElement::from_scalar(Polynomial::term(Monomial::new(vec![2, 0]), rat(1)));
        let expected = AlgebraElement::from_module_term(
            2,
            CommutatorIndex::new(1, 0),
            Polynomial::var(2, 0).scale(&rat(-2)),
        );
        assert_eq!(bracket(&x1sq, &x(2, 1)), expected);
    }

    #[test]
    fn monomial_bracket_agrees_with_bracket() {
        let monos = [
            Monomial::new(vec![1, 0, 0]),
            Monomial::new(vec![0, 1, 0]),
            Monomial::new(vec![2, 0, 0]),
            Monomial::new(vec![1, 1, 0]),
            Monomial::new(vec![1, 2, 3]),
            Monomial::new(vec![0, 0, 2]),
        ];
        for u in &monos {
            for v in &monos {
                let fast = monomial_bracket(3, u, v);
                let slow = bracket(
                    &AlgebraElement::from_scalar(Polynomial::term(u.clone(), rat(1))),
                    &AlgebraElement::from_scalar(Polynomial::term(v.clone(), rat(1))),
                );
                assert_eq!(fast, slow, "mismatch at {u:?} {v:?}");
            }
        }
        // Alternation: [m, m] = 0.
        let m = Monomial::new(vec![1, 1, 0]);
        assert!(monomial_bracket(3, &m, &m).is_zero());
    }

    #[test]
    fn scalar_one_is_identity() {
        let u = x(3, 2).mul(&x(3, 0)).add(&b(3, 2, 0).scale(&ratio(5, 3)));
        assert_eq!(u.mul(&AlgebraElement::one(3)), u);
        assert_eq!(AlgebraElement::one(3).mul(&u), u);
    }

    #[test]
    fn equality_examples() {
        let lhs = normalize_word(&word(2, &[1, 0]));
        let rhs = AlgebraElement::from_scalar(Polynomial::term(Monomial::new(vec![1, 1]), rat(1)))
            .add(&bracket(&x(2, 1), &x(2, 0)));
        assert_eq!(lhs, rhs);
        assert_ne!(b(3, 1, 0), b(3, 1, 0).neg());
        assert_eq!(AlgebraElement::zero(3), b(3, 1, 0).mul(&b(3, 2, 0)));
    }

    #[test]
    fn module_elements_annihilate_each_other() {
        let u = AlgebraElement::from_module_term(
            3,
            CommutatorIndex::new(1, 0),
            Polynomial::term(Monomial::new(vec![1, 2, 0]), ratio(2, 5)),
        );
        let v = AlgebraElement::from_module_term(
            3,
            CommutatorIndex::new(2, 1),
            Polynomial::var(3, 0),
        );
        assert!(u.mul(&v).is_zero());
        assert!(v.mul(&u).is_zero());
    }

    #[test]
    fn word_validation() {
        assert!(Word::new(3, vec![0, 1, 2]).is_ok());
        assert_eq!(
            Word::new(3, vec![0, 3]).unwrap_err(),
            Error::VariableOutOfRange { index: 3, arity: 3 }
        );
        assert!(Word::new(4, vec![0]).is_err());
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn cross_arity_multiplication_is_rejected() {
        let _ = x(2, 0).mul(&x(3, 0));
    }

    #[test]
    fn display_matches_normal_form_layout() {
        let nf = normalize_word(&word(3, &[2, 1, 0]));
        assert_eq!(nf.to_string(), "x1 x2 x3 + x3[x2,x1] + x2[x3,x1] + x1[x3,x2]");
        assert_eq!(AlgebraElement::zero(3).to_string(), "0");
        assert_eq!(b(3, 1, 0).to_string(), "[x2,x1]");
        assert_eq!(b(3, 1, 0).neg().to_string(), "-[x2,x1]");
    }
}
