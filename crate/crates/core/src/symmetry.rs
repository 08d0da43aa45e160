//! Symmetric group action on polynomials and algebra elements, symmetry
//! predicates, and the averaging (Reynolds) operator.

use crate::error::{Error, Result};
use crate::falg::AlgebraElement;
use crate::poly::{ratio, Polynomial};

/// A permutation of `{0, .., n-1}`, stored as the image list `i -> images[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n && i != j);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting as `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation { images: current.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// Applies the permutation to an algebra element: substitutes
/// `x_i -> x_{perm(i)}` and renormalizes.  A basic commutator whose arguments
/// land out of order picks up a sign: `[x_lo, x_hi] = -[x_hi, x_lo]`.
pub fn act(perm: &Permutation, f: &AlgebraElement) -> AlgebraElement {
    assert_eq!(perm.size(), f.arity(), "arity mismatch");
    let mut out = AlgebraElement::from_scalar(f.scalar().permute(perm));
    for (key, coeff) in f.module() {
        let (key, sign) = crate::falg::CommutatorIndex::ordered(
            perm.image(key.hi()),
            perm.image(key.lo()),
        )
        .expect("permutation images of distinct indices stay distinct");
        let p = coeff.permute(perm);
        let p = if sign < 0 { p.neg() } else { p };
        out = out.add(&AlgebraElement::from_module_term(f.arity(), key, p));
    }
    out
}

/// True when the element is fixed by every generator permutation; the
/// transpositions `(1 2)` and `(1 3)` generate the full symmetric group, so
/// checking them suffices.
pub fn is_symmetric(f: &AlgebraElement) -> bool {
    let n = f.arity();
    if act(&Permutation::transposition(n, 0, 1), f) != *f {
        return false;
    }
    n < 3 || act(&Permutation::transposition(n, 0, 2), f) == *f
}

/// Like [`is_symmetric`] but reports a violated transposition.
pub fn symmetry_violation(f: &AlgebraElement) -> Option<(usize, usize)> {
    let n = f.arity();
    if act(&Permutation::transposition(n, 0, 1), f) != *f {
        return Some((0, 1));
    }
    if n >= 3 && act(&Permutation::transposition(n, 0, 2), f) != *f {
        return Some((0, 2));
    }
    None
}

/// Polynomial symmetry with the violating transposition, for error reporting.
pub fn poly_symmetry_violation(p: &Polynomial) -> Option<(usize, usize)> {
    let n = p.nvars();
    if p.permute(&Permutation::transposition(n, 0, 1)) != *p {
        return Some((0, 1));
    }
    if n >= 3 && p.permute(&Permutation::transposition(n, 0, 2)) != *p {
        return Some((0, 2));
    }
    None
}

pub fn is_symmetric_poly(p: &Polynomial) -> bool {
    poly_symmetry_violation(p).is_none()
}

/// The averaging operator `f -> (1/n!) sum over S_n of the action`; a
/// projection onto the symmetric elements (characteristic zero makes the
/// division by `n!` harmless).
pub fn symmetrize(f: &AlgebraElement) -> AlgebraElement {
    let n = f.arity();
    let perms = Permutation::all(n);
    let order = perms.len() as i64;
    let mut sum = AlgebraElement::zero(n);
    for perm in &perms {
        sum = sum.add(&act(perm, f));
    }
    sum.scale(&ratio(1, order))
}

/// True when `p(x1, x2, ..)` equals `-p(x2, x1, ..)`.
pub fn is_antisymmetric_12(p: &Polynomial) -> bool {
    assert!(p.nvars() >= 2);
    let swapped = p.permute(&Permutation::transposition(p.nvars(), 0, 1));
    swapped.add(p).is_zero()
}
