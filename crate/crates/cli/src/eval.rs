//! Evaluation of parsed expressions, either into canonical algebra elements
//! (arity 2 or 3) or into raw word combinations for the oracle commands
//! (any arity up to 4).

use grassfree::decomp::{self, FIndex};
use grassfree::falg::{bracket, AlgebraElement};
use grassfree::invariants;
use grassfree::oracle::WordSum;
use grassfree::poly::Rational;
use grassfree::Error;

use crate::ast::Expr;

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Guard against runaway expansions: the total degree of every
    /// intermediate value is capped.
    pub max_degree: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_degree: 64 }
    }
}

fn guard(e: AlgebraElement, opts: &EvalOptions) -> Result<AlgebraElement, Error> {
    match e.degree() {
        Some(d) if d > opts.max_degree => Err(Error::DegreeOverflow {
            degree: d,
            bound: opts.max_degree,
        }),
        _ => Ok(e),
    }
}

/// Folds the expression through the normal-form algebra at the given arity.
pub fn evaluate(expr: &Expr, arity: usize, opts: &EvalOptions) -> Result<AlgebraElement, Error> {
    if !(2..=3).contains(&arity) {
        return Err(Error::UnsupportedArity(arity, "expressions evaluate at arity 2 or 3"));
    }
    eval_inner(expr, arity, opts)
}

fn eval_inner(expr: &Expr, arity: usize, opts: &EvalOptions) -> Result<AlgebraElement, Error> {
    match expr {
        Expr::Var(i) => {
            if *i >= arity {
                return Err(Error::VariableOutOfRange { index: *i, arity });
            }
            Ok(AlgebraElement::variable(arity, *i))
        }
        Expr::Rat(c) => Ok(AlgebraElement::from_rational(arity, c.clone())),
        Expr::Sigma(k) => {
            if arity != 3 {
                return Err(Error::UnsupportedArity(arity, "sigma symbols need arity 3"));
            }
            Ok(AlgebraElement::from_scalar(invariants::elementary(*k)))
        }
        Expr::Nu(k) => {
            if arity != 3 {
                return Err(Error::UnsupportedArity(arity, "power sums need arity 3"));
            }
            Ok(AlgebraElement::from_scalar(invariants::power_sum(*k)))
        }
        Expr::Elem2(k) => {
            if arity != 2 {
                return Err(Error::UnsupportedArity(arity, "e1/e2 need arity 2"));
            }
            Ok(AlgebraElement::from_scalar(invariants::elementary_in(2, *k)))
        }
        Expr::F(a, b, c) => {
            if arity != 3 {
                return Err(Error::UnsupportedArity(arity, "f(a,b,c) needs arity 3"));
            }
            guard(decomp::make_f(FIndex::new(*a, *b, *c)), opts)
        }
        Expr::Neg(inner) => Ok(eval_inner(inner, arity, opts)?.neg()),
        Expr::Add(l, r) => {
            Ok(eval_inner(l, arity, opts)?.add(&eval_inner(r, arity, opts)?))
        }
        Expr::Sub(l, r) => {
            Ok(eval_inner(l, arity, opts)?.sub(&eval_inner(r, arity, opts)?))
        }
        Expr::Mul(l, r) => guard(
            eval_inner(l, arity, opts)?.mul(&eval_inner(r, arity, opts)?),
            opts,
        ),
        Expr::Pow(base, k) => {
            let base = eval_inner(base, arity, opts)?;
            let mut acc = AlgebraElement::one(arity);
            for _ in 0..*k {
                acc = guard(acc.mul(&base), opts)?;
            }
            Ok(acc)
        }
        Expr::Commutator(l, r) => Ok(bracket(
            &eval_inner(l, arity, opts)?,
            &eval_inner(r, arity, opts)?,
        )),
    }
}

fn merge(mut sum: WordSum) -> WordSum {
    use num_traits::Zero;
    sum.sort_by(|(a, _), (b, _)| a.cmp(b));
    let mut out: WordSum = Vec::with_capacity(sum.len());
    for (w, c) in sum {
        match out.last_mut() {
            Some((prev, acc)) if *prev == w => *acc = &*acc + &c,
            _ => out.push((w, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Evaluates an expression as a formal word combination for the oracle.
/// Only variables, rationals, sums, products, powers and commutators are
/// available here; the named symbols have no meaning at arity 4.
pub fn evaluate_words(expr: &Expr, arity: usize, opts: &EvalOptions) -> Result<WordSum, Error> {
    if !(2..=4).contains(&arity) {
        return Err(Error::UnsupportedArity(arity, "word evaluation supports arity 2 to 4"));
    }
    let sum = words_inner(expr, arity, opts)?;
    Ok(merge(sum))
}

fn words_inner(expr: &Expr, arity: usize, opts: &EvalOptions) -> Result<WordSum, Error> {
    match expr {
        Expr::Var(i) => {
            if *i >= arity {
                return Err(Error::VariableOutOfRange { index: *i, arity });
            }
            Ok(vec![(vec![*i], Rational::from_integer(1.into()))])
        }
        Expr::Rat(c) => Ok(vec![(vec![], c.clone())]),
        Expr::Sigma(_) | Expr::Nu(_) | Expr::Elem2(_) | Expr::F(..) => Err(
            Error::InvalidArgument("named symbols are not available in word mode".into()),
        ),
        Expr::Neg(inner) => Ok(words_inner(inner, arity, opts)?
            .into_iter()
            .map(|(w, c)| (w, -c))
            .collect()),
        Expr::Add(l, r) => {
            let mut sum = words_inner(l, arity, opts)?;
            sum.extend(words_inner(r, arity, opts)?);
            Ok(merge(sum))
        }
        Expr::Sub(l, r) => {
            let mut sum = words_inner(l, arity, opts)?;
            sum.extend(words_inner(r, arity, opts)?.into_iter().map(|(w, c)| (w, -c)));
            Ok(merge(sum))
        }
        Expr::Mul(l, r) => {
            word_product(&words_inner(l, arity, opts)?, &words_inner(r, arity, opts)?, opts)
        }
        Expr::Pow(base, k) => {
            let base = words_inner(base, arity, opts)?;
            let mut acc: WordSum = vec![(vec![], Rational::from_integer(1.into()))];
            for _ in 0..*k {
                acc = word_product(&acc, &base, opts)?;
            }
            Ok(acc)
        }
        Expr::Commutator(l, r) => {
            let l = words_inner(l, arity, opts)?;
            let r = words_inner(r, arity, opts)?;
            let mut sum = word_product(&l, &r, opts)?;
            sum.extend(word_product(&r, &l, opts)?.into_iter().map(|(w, c)| (w, -c)));
            Ok(merge(sum))
        }
    }
}

fn word_product(l: &WordSum, r: &WordSum, opts: &EvalOptions) -> Result<WordSum, Error> {
    let mut out = WordSum::new();
    for (wl, cl) in l {
        for (wr, cr) in r {
            let degree = (wl.len() + wr.len()) as u32;
            if degree > opts.max_degree {
                return Err(Error::DegreeOverflow { degree, bound: opts.max_degree });
            }
            let mut w = Vec::with_capacity(wl.len() + wr.len());
            w.extend_from_slice(wl);
            w.extend_from_slice(wr);
            out.push((w, cl * cr));
        }
    }
    Ok(merge(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use grassfree::falg::CommutatorIndex;
    use grassfree::poly::rat;
    use grassfree::ErrorKind;

    fn eval3(text: &str) -> AlgebraElement {
        evaluate(&parse(text).unwrap(), 3, &EvalOptions::default()).unwrap()
    }

    #[test]
    fn f_symbol_evaluates_to_the_constructed_element() {
        assert_eq!(eval3("f(0,1,0)"), decomp::make_f(FIndex::new(0, 1, 0)));
    }

    #[test]
    fn recurrence_instance_evaluates_to_a_named_element() {
        // sigma1 f_{0,1,0} - f_{0,2,0} = f_{0,1,1}
        assert_eq!(
            eval3("sigma1 * f(0,1,0) - f(0,2,0)"),
            decomp::make_f(FIndex::new(0, 1, 1))
        );
    }

    #[test]
    fn defining_identity_evaluates_to_zero() {
        assert!(eval3("[ [x1,x2], x3 ]").is_zero());
        assert!(eval3("[x2,x1]^2").is_zero());
    }

    #[test]
    fn commutator_expression_matches_basic_bracket() {
        assert_eq!(
            eval3("x2 x1 - x1 x2"),
            AlgebraElement::basic_commutator(3, CommutatorIndex::new(1, 0))
        );
    }

    #[test]
    fn arity_violations_are_usage_errors() {
        let e = parse("x4").unwrap();
        let err = evaluate(&e, 3, &EvalOptions::default()).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Usage);
        let e = parse("sigma1").unwrap();
        assert!(evaluate(&e, 2, &EvalOptions::default()).is_err());
        let e = parse("e1").unwrap();
        assert!(evaluate(&e, 3, &EvalOptions::default()).is_err());
    }

    #[test]
    fn degree_guard_trips() {
        let e = parse("x1^65").unwrap();
        let err = evaluate(&e, 3, &EvalOptions::default()).unwrap_err();
        assert!(matches!(err, Error::DegreeOverflow { .. }));
    }

    #[test]
    fn word_mode_expands_commutators() {
        let e = parse("x1 x2 [x3,x4]").unwrap();
        let words = evaluate_words(&e, 4, &EvalOptions::default()).unwrap();
        assert_eq!(
            words,
            vec![
                (vec![0, 1, 2, 3], rat(1)),
                (vec![0, 1, 3, 2], rat(-1)),
            ]
        );
    }

    #[test]
    fn word_mode_rejects_named_symbols() {
        let e = parse("f(0,1,0)").unwrap();
        assert!(evaluate_words(&e, 4, &EvalOptions::default()).is_err());
    }
}
