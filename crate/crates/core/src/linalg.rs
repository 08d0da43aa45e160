//! Exact sparse linear algebra over the rationals: reduced row echelon bases
//! and a column-oriented solver that remembers how each pivot was assembled.
//!
//! Pivoting is always on the first nonzero position, so every computation in
//! the crate that goes through this module is deterministic.

use num_traits::Zero;

use crate::poly::Rational;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub(crate) type SparseVec = Vec<(usize, Rational)>;

/// `target += c * source`, keeping the representation canonical.
pub(crate) fn axpy(target: &SparseVec, c: &Rational, source: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let mut a = target.iter().peekable();
    let mut b = source.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some((ia, va)), Some((ib, vb))) => {
                if ia < ib {
                    out.push((*ia, va.clone()));
                    a.next();
                } else if ib < ia {
                    out.push((*ib, vb * c));
                    b.next();
                } else {
                    let v = va + &(vb * c);
                    if !v.is_zero() {
                        out.push((*ia, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((ia, va)), None) => {
                out.push((*ia, va.clone()));
                a.next();
            }
            (None, Some((ib, vb))) => {
                out.push((*ib, vb * c));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

pub(crate) fn scale(v: &mut SparseVec, c: &Rational) {
    for (_, x) in v.iter_mut() {
        *x = &*x * c;
    }
}

/// Reduced row echelon basis of a growing row space.
pub(crate) struct Rref {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new() -> Self {
        Rref { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the current basis; the result is the
    /// canonical representative of `v` modulo the row space (supported on
    /// non-pivot positions only).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            match self.pivots.binary_search(&col) {
                Ok(r) => {
                    let c = -v[i].1.clone();
                    v = axpy(&v, &c, &self.rows[r]);
                    // the pivot entry vanished; positions before it are final
                }
                Err(_) => i += 1,
            }
        }
        v
    }

    /// Reduces and, when a nonzero remainder survives, installs it as a new
    /// pivot row (normalized, and eliminated from all earlier rows).  Returns
    /// the new pivot position, or `None` when `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut v = self.reduce(v);
        if v.is_empty() {
            return None;
        }
        let pivot = v[0].0;
        let lead = v[0].1.clone();
        scale(&mut v, &lead.recip());
        for r in 0..self.rows.len() {
            if let Ok(k) = self.rows[r].binary_search_by_key(&pivot, |e| e.0) {
                let c = -self.rows[r][k].1.clone();
                self.rows[r] = axpy(&self.rows[r], &c, &v);
            }
        }
        let at = self.pivots.binary_search(&pivot).unwrap_err();
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        Some(pivot)
    }
}

/// Outcome of feeding one more column into a [`ColumnSolver`].
pub(crate) enum ColumnOutcome {
    Independent,
    /// The new column lies in the span of the previous ones; the payload is a
    /// kernel vector over column indices (coefficient 1 on the new column).
    Dependent(SparseVec),
}

/// Incremental solver for `sum_u x_u * col_u = target` that keeps, for every
/// pivot row of the echelon basis, its expression in the original columns.
/// Solving therefore returns the canonical solution with all free (dependent)
/// columns set to zero.
pub(crate) struct ColumnSolver {
    rows: Vec<SparseVec>,
    exprs: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl ColumnSolver {
    pub fn new() -> Self {
        ColumnSolver { rows: Vec::new(), exprs: Vec::new(), pivots: Vec::new() }
    }

    fn reduce_with_history(&self, mut v: SparseVec, mut h: SparseVec) -> (SparseVec, SparseVec) {
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            match self.pivots.binary_search(&col) {
                Ok(r) => {
                    let c = -v[i].1.clone();
                    v = axpy(&v, &c, &self.rows[r]);
                    h = axpy(&h, &c, &self.exprs[r]);
                }
                Err(_) => i += 1,
            }
        }
        (v, h)
    }

    pub fn add_column(&mut self, index: usize, coords: SparseVec) -> ColumnOutcome {
        let (mut v, mut h) = self.reduce_with_history(coords, vec![(index, Rational::from_integer(1.into()))]);
        if v.is_empty() {
            return ColumnOutcome::Dependent(h);
        }
        let pivot = v[0].0;
        let lead = v[0].1.clone().recip();
        scale(&mut v, &lead);
        scale(&mut h, &lead);
        for r in 0..self.rows.len() {
            if let Ok(k) = self.rows[r].binary_search_by_key(&pivot, |e| e.0) {
                let c = -self.rows[r][k].1.clone();
                self.rows[r] = axpy(&self.rows[r], &c, &v);
                self.exprs[r] = axpy(&self.exprs[r], &c, &h);
            }
        }
        let at = self.pivots.binary_search(&pivot).unwrap_err();
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        self.exprs.insert(at, h);
        ColumnOutcome::Independent
    }

    /// Canonical solution of `sum_u x_u * col_u = target`, or `None` when the
    /// target is outside the column span.
    pub fn solve(&self, target: SparseVec) -> Option<SparseVec> {
        let (v, h) = self.reduce_with_history(target, Vec::new());
        if v.is_empty() {
            let mut sol = h;
            scale(&mut sol, &-Rational::from_integer(1.into()));
            Some(sol)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, v)| (i, rat(v))).collect()
    }

    #[test]
    fn rref_reduces_to_canonical_form() {
        let mut r = Rref::new();
        assert_eq!(r.insert(sv(&[(0, 1), (1, 1)])), Some(0));
        assert_eq!(r.insert(sv(&[(1, 2), (2, 2)])), Some(1));
        assert_eq!(r.insert(sv(&[(0, 1), (2, -1)])), None);
        assert_eq!(r.rank(), 2);
        // Canonical form of e0 has support on the free column 2 only.
        let c = r.reduce(sv(&[(0, 1)]));
        assert_eq!(c, sv(&[(2, 1)]));
        // Idempotence.
        assert_eq!(r.reduce(c.clone()), c);
    }

    #[test]
    fn solver_finds_canonical_solution_and_kernel() {
        let mut s = ColumnSolver::new();
        // col0 = e0 + e1, col1 = e1, col2 = col0 - col1.
        assert!(matches!(s.add_column(0, sv(&[(0, 1), (1, 1)])), ColumnOutcome::Independent));
        assert!(matches!(s.add_column(1, sv(&[(1, 1)])), ColumnOutcome::Independent));
        match s.add_column(2, sv(&[(0, 1)])) {
            ColumnOutcome::Dependent(kernel) => {
                assert_eq!(kernel, sv(&[(0, -1), (1, 1), (2, 1)]));
            }
            ColumnOutcome::Independent => panic!("expected dependence"),
        }
        let sol = s.solve(sv(&[(0, 2), (1, 3)])).unwrap();
        assert_eq!(sol, sv(&[(0, 2), (1, 1)]));
        assert!(s.solve(sv(&[(7, 1)])).is_none());
    }
}
