//! Expression AST for the command-line frontend.

use grassfree::poly::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Variable `x1..x9` (zero-based index; arity is checked at evaluation).
    Var(usize),
    Rat(Rational),
    /// Elementary symmetric polynomial `sigma1..sigma3` (three variables).
    Sigma(usize),
    /// Power sum `nu_k` (three variables).
    Nu(u32),
    /// Elementary symmetric polynomial `e1`/`e2` (two variables).
    Elem2(usize),
    /// Named symmetric module element `f(a,b,c)`.
    F(u32, u32, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
}
