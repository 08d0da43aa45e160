//! Independent ground truth: the degree-truncated quotient of the free
//! associative algebra by all consequences of the identity `[[z1,z2],z3]`.
//!
//! The identity is multilinear, so over a field of characteristic zero the
//! homogeneous degree-`d` component of its T-ideal is spanned by
//! `u [[w1,w2],w3] v` over words `u, v, w1, w2, w3` of matching total degree.
//! Each such consequence expands to (at most) four words; the relation
//! vectors of each degree are row-reduced exactly, and projecting onto the
//! quotient reduces a word combination against that basis.  Nothing here
//! depends on the normal-form representation in [`crate::falg`], which is
//! exactly what makes the agreement checks meaningful.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::falg::AlgebraElement;
use crate::linalg::{Rref, SparseVec};
use crate::poly::{rat, Rational};

/// Largest supported truncation degree per arity; big enough for desk-scale
/// verification, small enough that exact elimination stays interactive.
pub fn degree_cap(arity: usize) -> Option<u32> {
    match arity {
        2 => Some(8),
        3 => Some(7),
        4 => Some(5),
        _ => None,
    }
}

/// A formal rational combination of words over `x1..xn` (letters zero-based).
pub type WordSum = Vec<(Vec<usize>, Rational)>;

struct Level {
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    relations: Rref,
}

/// Degree-truncated relatively free algebra: canonical coordinates for every
/// word combination of bounded degree, computed from first principles.
pub struct TruncatedAlgebra {
    arity: usize,
    max_degree: u32,
    levels: Vec<Level>,
}

/// Canonical projection of a word combination: for each degree, the reduced
/// coordinate vector over the word basis of that degree.  Equality of
/// projections is equality in the truncated quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    per_degree: BTreeMap<u32, SparseVecOwned>,
}

type SparseVecOwned = Vec<(usize, Rational)>;

impl Projection {
    pub fn is_zero(&self) -> bool {
        self.per_degree.values().all(|v| v.is_empty())
    }
}

fn words_of_degree(arity: usize, degree: u32) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(out.len() * arity);
        for w in &out {
            for l in 0..arity {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.extend_from_slice(w);
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Builds the truncated quotient for `2 <= arity <= 4` up to `max_degree`.
pub fn build(arity: usize, max_degree: u32) -> Result<TruncatedAlgebra> {
    let cap = degree_cap(arity)
        .ok_or(Error::UnsupportedArity(arity, "the oracle supports arity 2 to 4"))?;
    if max_degree < 1 || max_degree > cap {
        return Err(Error::InvalidArgument(format!(
            "truncation degree must lie in 1..={cap} for arity {arity}, got {max_degree}"
        )));
    }
    let by_degree: Vec<Vec<Vec<usize>>> =
        (0..=max_degree).map(|k| words_of_degree(arity, k)).collect();
    let mut levels = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        let words = by_degree[d as usize].clone();
        let index: HashMap<Vec<usize>, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut relations = Rref::new();
        if d >= 3 {
            let mut seen: HashSet<Vec<(usize, i64)>> = HashSet::new();
            // Compositions d = |u| + |w1| + |w2| + |w3| + |v| with the three
            // substituted words nonempty.
            for du in 0..=d - 3 {
                for d1 in 1..=d - 2 - du {
                    for d2 in 1..=d - 1 - du - d1 {
                        for d3 in 1..=d - du - d1 - d2 {
                            let dv = d - du - d1 - d2 - d3;
                            for u in &by_degree[du as usize] {
                                for w1 in &by_degree[d1 as usize] {
                                    for w2 in &by_degree[d2 as usize] {
                                        for w3 in &by_degree[d3 as usize] {
                                            for v in &by_degree[dv as usize] {
                                                insert_consequence(
                                                    &mut relations,
                                                    &mut seen,
                                                    &index,
                                                    u,
                                                    w1,
                                                    w2,
                                                    w3,
                                                    v,
                                                );
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        levels.push(Level { words, index, relations });
    }
    Ok(TruncatedAlgebra { arity, max_degree, levels })
}

/// Adds the relation vector of `u [[w1,w2],w3] v` (expanded to four signed
/// words) to the running echelon basis, skipping duplicates.
#[allow(clippy::too_many_arguments)]
fn insert_consequence(
    relations: &mut Rref,
    seen: &mut HashSet<Vec<(usize, i64)>>,
    index: &HashMap<Vec<usize>, usize>,
    u: &[usize],
    w1: &[usize],
    w2: &[usize],
    w3: &[usize],
    v: &[usize],
) {
    let cat = |parts: [&[usize]; 5]| -> Vec<usize> {
        let mut w = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            w.extend_from_slice(p);
        }
        w
    };
    // [[A,B],C] = ABC - BAC - CAB + CBA
    let signed_words = [
        (cat([u, w1, w2, w3, v]), 1i64),
        (cat([u, w2, w1, w3, v]), -1),
        (cat([u, w3, w1, w2, v]), -1),
        (cat([u, w3, w2, w1, v]), 1),
    ];
    let mut entries: BTreeMap<usize, i64> = BTreeMap::new();
    for (w, s) in signed_words {
        *entries.entry(index[&w]).or_insert(0) += s;
    }
    entries.retain(|_, s| *s != 0);
    if entries.is_empty() {
        return;
    }
    let mut canonical: Vec<(usize, i64)> = entries.into_iter().collect();
    // Fix the overall sign so that negated duplicates coincide.
    if canonical[0].1 < 0 {
        for (_, s) in canonical.iter_mut() {
            *s = -*s;
        }
    }
    if !seen.insert(canonical.clone()) {
        return;
    }
    let row: SparseVec = canonical.into_iter().map(|(i, s)| (i, rat(s))).collect();
    relations.insert(row);
}

impl TruncatedAlgebra {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Dimension of the degree-`d` component of the quotient.
    pub fn dimension(&self, degree: u32) -> usize {
        assert!(degree <= self.max_degree);
        let level = &self.levels[degree as usize];
        level.words.len() - level.relations.rank()
    }

    /// Number of canonical basis elements of the relatively free algebra of
    /// the given degree, counted from the known normal form: ordered
    /// monomials, optionally times one basic commutator.  Available for
    /// arity 2 and 3 (the representation this crate uses elsewhere).
    pub fn basis_count(arity: usize, degree: u32) -> Option<usize> {
        let monomials = |nvars: u32, d: i64| -> usize {
            if d < 0 {
                return 0;
            }
            // compositions of d into nvars parts
            let (d, n) = (d as u32, nvars);
            let mut count = 1usize;
            for i in 1..n {
                count = count * (d + i) as usize / i as usize;
            }
            count
        };
        match arity {
            2 => Some(monomials(2, degree as i64) + monomials(2, degree as i64 - 2)),
            3 => Some(monomials(3, degree as i64) + 3 * monomials(3, degree as i64 - 2)),
            _ => None,
        }
    }

    /// Exact canonical coordinates of a word combination, one reduced vector
    /// per homogeneous degree.
    pub fn project_words(&self, terms: &WordSum) -> Result<Projection> {
        let mut per_degree_raw: BTreeMap<u32, Vec<(usize, Rational)>> = BTreeMap::new();
        for (word, coeff) in terms {
            if coeff.is_zero() {
                continue;
            }
            for &l in word {
                if l >= self.arity {
                    return Err(Error::VariableOutOfRange { index: l, arity: self.arity });
                }
            }
            let d = word.len() as u32;
            if d > self.max_degree {
                return Err(Error::DegreeOverflow { degree: d, bound: self.max_degree });
            }
            let at = self.levels[d as usize].index[word];
            per_degree_raw.entry(d).or_default().push((at, coeff.clone()));
        }
        let mut per_degree = BTreeMap::new();
        for (d, mut entries) in per_degree_raw {
            entries.sort_by_key(|(i, _)| *i);
            let mut merged: SparseVec = Vec::with_capacity(entries.len());
            for (i, c) in entries {
                match merged.last_mut() {
                    Some((j, v)) if *j == i => *v = &*v + &c,
                    _ => merged.push((i, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            let reduced = self.levels[d as usize].relations.reduce(merged);
            if !reduced.is_empty() {
                per_degree.insert(d, reduced);
            }
        }
        Ok(Projection { per_degree })
    }

    /// Projects a canonical algebra element through its word expansion.
    pub fn project_element(&self, e: &AlgebraElement) -> Result<Projection> {
        if e.arity() != self.arity {
            return Err(Error::ArityMismatch(e.arity(), self.arity));
        }
        self.project_words(&word_sum_of_element(e))
    }

    /// Equality in the truncated quotient; agrees with normal-form equality
    /// for arity at most 3 (and that agreement is itself a test target).
    pub fn oracle_equal(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<bool> {
        Ok(self.project_element(u)? == self.project_element(v)?)
    }

    /// The failure of the left module structure at arity 4: the projections
    /// of `x1 x2 [x3,x4]` and `x2 x1 [x3,x4]` differ.
    pub fn witness_non_module_n4(&self) -> Result<bool> {
        if self.arity != 4 {
            return Err(Error::UnsupportedArity(self.arity, "the witness needs arity 4"));
        }
        if self.max_degree < 4 {
            return Err(Error::DegreeOverflow { degree: 4, bound: self.max_degree });
        }
        let lhs: WordSum = vec![
            (vec![0, 1, 2, 3], rat(1)),
            (vec![0, 1, 3, 2], rat(-1)),
        ];
        let rhs: WordSum = vec![
            (vec![1, 0, 2, 3], rat(1)),
            (vec![1, 0, 3, 2], rat(-1)),
        ];
        Ok(self.project_words(&lhs)? != self.project_words(&rhs)?)
    }
}

/// Expands a canonical element into a word combination: each scalar monomial
/// becomes its sorted word, and each module term `p [x_j, x_i]` becomes the
/// two words `word(m) x_j x_i - word(m) x_i x_j` per monomial of `p`.
pub fn word_sum_of_element(e: &AlgebraElement) -> WordSum {
    let mut out = WordSum::new();
    let word_of = |exponents: &[u32]| -> Vec<usize> {
        let mut w = Vec::new();
        for (i, &k) in exponents.iter().enumerate() {
            for _ in 0..k {
                w.push(i);
            }
        }
        w
    };
    for (m, c) in e.scalar().terms() {
        out.push((word_of(m.exponents()), c.clone()));
    }
    for (key, coeff) in e.module() {
        for (m, c) in coeff.terms() {
            let base = word_of(m.exponents());
            let mut pos = base.clone();
            pos.extend_from_slice(&[key.hi(), key.lo()]);
            let mut neg = base;
            neg.extend_from_slice(&[key.lo(), key.hi()]);
            out.push((pos, c.clone()));
            out.push((neg, -c.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::falg::{normalize_word, CommutatorIndex, Word};

    #[test]
    fn no_relations_below_degree_three() {
        let t = build(3, 2).unwrap();
        assert_eq!(t.dimension(1), 3);
        assert_eq!(t.dimension(2), 9);
    }

    #[test]
    fn degree_three_dimension_matches_basis_count() {
        let t = build(3, 3).unwrap();
        assert_eq!(t.dimension(3), 19);
        assert_eq!(TruncatedAlgebra::basis_count(3, 3), Some(19));
    }

    #[test]
    fn arity_two_dimensions_match_basis_count() {
        let t = build(2, 5).unwrap();
        for d in 0..=5 {
            assert_eq!(
                t.dimension(d),
                TruncatedAlgebra::basis_count(2, d).unwrap(),
                "dimension mismatch at degree {d}"
            );
        }
    }

    #[test]
    fn defining_relation_projects_to_zero() {
        let t = build(3, 3).unwrap();
        // x2 x1 - x1 x2 - ([x2,x1] as word combination) = 0 trivially, and
        // [[x1,x2],x3] expands to a genuine relation.
        let grassmann: WordSum = vec![
            (vec![0, 1, 2], rat(1)),
            (vec![1, 0, 2], rat(-1)),
            (vec![2, 0, 1], rat(-1)),
            (vec![2, 1, 0], rat(1)),
        ];
        assert!(t.project_words(&grassmann).unwrap().is_zero());
        // A bare bracket survives in the degree-2 quotient.
        let bracket: WordSum = vec![(vec![1, 0], rat(1)), (vec![0, 1], rat(-1))];
        assert!(!t.project_words(&bracket).unwrap().is_zero());
    }

    #[test]
    fn projection_is_idempotent_on_canonical_forms() {
        let t = build(3, 4).unwrap();
        let sum: WordSum = vec![
            (vec![2, 1, 0, 0], rat(5)),
            (vec![0, 1], rat(-2)),
        ];
        let first = t.project_words(&sum).unwrap();
        // Rebuild a word sum from the canonical coordinates and project again.
        let mut round: WordSum = Vec::new();
        for (d, coords) in &first.per_degree {
            for (i, c) in coords {
                round.push((t.levels[*d as usize].words[*i].clone(), c.clone()));
            }
        }
        assert_eq!(t.project_words(&round).unwrap(), first);
    }

    #[test]
    fn centrality_and_left_module_structure_hold_in_the_quotient() {
        let t = build(3, 5).unwrap();
        let x1 = AlgebraElement::variable(3, 0);
        let b21 = AlgebraElement::basic_commutator(3, CommutatorIndex::new(1, 0));
        assert!(t.oracle_equal(&x1.mul(&b21), &b21.mul(&x1)).unwrap());

        // x1 x2 x3 w = x3 x2 x1 w for w in the commutator ideal.
        let w = b21.clone();
        let lhs = normalize_word(&Word::new(3, vec![0, 1, 2]).unwrap()).mul(&w);
        let rhs = normalize_word(&Word::new(3, vec![2, 1, 0]).unwrap()).mul(&w);
        assert!(t.oracle_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn alternating_bracket_product_relation_holds_in_the_quotient() {
        // [z1,z2][z3,z4] + [z1,z3][z2,z4] projects to zero for generator
        // substitutions, at arity 3 and arity 4.
        for (arity, degree) in [(3usize, 4u32), (4, 4)] {
            let t = build(arity, degree).unwrap();
            for z in words_of_degree(arity, 4) {
                let (a, b, c, d) = (z[0], z[1], z[2], z[3]);
                let mut sum = WordSum::new();
                // [a,b][c,d]
                for (w, s) in [
                    (vec![a, b, c, d], 1i64),
                    (vec![a, b, d, c], -1),
                    (vec![b, a, c, d], -1),
                    (vec![b, a, d, c], 1),
                    // + [a,c][b,d]
                    (vec![a, c, b, d], 1),
                    (vec![a, c, d, b], -1),
                    (vec![c, a, b, d], -1),
                    (vec![c, a, d, b], 1),
                ] {
                    sum.push((w, rat(s)));
                }
                assert!(t.project_words(&sum).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn non_module_witness_at_arity_four() {
        let t = build(4, 4).unwrap();
        assert!(t.witness_non_module_n4().unwrap());
        // [x1,x2][x3,x4] is nonzero at arity 4 ...
        let product: WordSum = vec![
            (vec![0, 1, 2, 3], rat(1)),
            (vec![0, 1, 3, 2], rat(-1)),
            (vec![1, 0, 2, 3], rat(-1)),
            (vec![1, 0, 3, 2], rat(1)),
        ];
        assert!(!t.project_words(&product).unwrap().is_zero());
        // ... while every analogous product vanishes at arity 3.
        let t3 = build(3, 4).unwrap();
        let product3: WordSum = vec![
            (vec![0, 1, 1, 2], rat(1)),
            (vec![0, 1, 2, 1], rat(-1)),
            (vec![1, 0, 1, 2], rat(-1)),
            (vec![1, 0, 2, 1], rat(1)),
        ];
        assert!(t3.project_words(&product3).unwrap().is_zero());
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(build(5, 3).is_err());
        assert!(build(3, 0).is_err());
        assert!(build(3, 8).is_err());
        let t = build(3, 3).unwrap();
        let too_big: WordSum = vec![(vec![0, 1, 2, 0], rat(1))];
        assert!(matches!(
            t.project_words(&too_big),
            Err(Error::DegreeOverflow { degree: 4, bound: 3 })
        ));
    }
}
