//! Rendering of sigma-polynomials and combination payloads, for both the
//! human-readable and the JSON output paths.

use serde_json::{json, Value};

use grassfree::decomp::GeneratorCombo;
use grassfree::invariants::SigmaPolynomial;
use grassfree::poly::{rat, ratio, Monomial, Polynomial};

/// Rewrites a three-indeterminate sigma-polynomial over the basis
/// `{sigma1, sigma2, nu3}` by substituting
/// `sigma3 = (nu3 - sigma1^3 + 3 sigma1 sigma2) / 3`.
/// The result lives in a three-variable polynomial whose variables are read
/// as `sigma1, sigma2, nu3`.
fn rewrite_in_nu3(s: &SigmaPolynomial) -> Polynomial {
    let sigma1 = Polynomial::var(3, 0);
    let sigma2 = Polynomial::var(3, 1);
    let nu3 = Polynomial::var(3, 2);
    let sigma3 = nu3
        .sub(&sigma1.pow(3))
        .add(&sigma1.mul(&sigma2).scale(&rat(3)))
        .scale(&ratio(1, 3));
    let mut out = Polynomial::zero(3);
    for (m, c) in s.terms() {
        let e = m.exponents();
        let mut value = Polynomial::constant(3, c.clone());
        value = value.mul(&sigma1.pow(e[0]));
        value = value.mul(&sigma2.pow(e[1]));
        value = value.mul(&sigma3.pow(e[2]));
        out = out.add(&value);
    }
    out
}

fn format_named(p: &Polynomial, names: [&str; 3]) -> String {
    use std::fmt::Write;
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let terms: Vec<(&Monomial, _)> = p.terms().collect();
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        let mag = {
            use num_traits::Signed;
            c.abs()
        };
        let mono = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { names[v].to_string() } else { format!("{}^{}", names[v], e) })
            .collect::<Vec<_>>()
            .join(" ");
        let piece = if mono.is_empty() {
            format!("{mag}")
        } else if mag == rat(1) {
            mono
        } else {
            format!("{mag} {mono}")
        };
        let negative = {
            use num_traits::Signed;
            c.is_negative()
        };
        if i == 0 {
            let _ = write!(out, "{}{piece}", if negative { "-" } else { "" });
        } else {
            let _ = write!(out, " {} {piece}", if negative { "-" } else { "+" });
        }
    }
    out
}

/// Display form of a sigma-polynomial.  With `nu_rendering` set, the
/// `{sigma1, sigma2, nu3}` form is used whenever it has strictly fewer terms
/// than the pure sigma form.
pub fn sigma_display(s: &SigmaPolynomial, nu_rendering: bool) -> String {
    if !nu_rendering || s.indeterminates() != 3 {
        return s.to_string();
    }
    let alt = rewrite_in_nu3(s);
    if alt.num_terms() < s.terms().count() {
        format_named(&alt, ["sigma1", "sigma2", "nu3"])
    } else {
        s.to_string()
    }
}

/// Exact exponent/coefficient JSON form of a sigma-polynomial, highest term
/// first.
pub fn sigma_json(s: &SigmaPolynomial) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(m, c)| json!({ "exp": m.exponents(), "coeff": c.to_string() }))
        .collect();
    Value::Array(terms)
}

pub fn combo_json(combo: &GeneratorCombo) -> Value {
    json!({
        "c010": sigma_json(&combo.c010),
        "c020": sigma_json(&combo.c020),
        "c120": sigma_json(&combo.c120),
    })
}

pub fn combo_rendering(combo: &GeneratorCombo, nu_rendering: bool) -> Value {
    json!({
        "c010": sigma_display(&combo.c010, nu_rendering),
        "c020": sigma_display(&combo.c020, nu_rendering),
        "c120": sigma_display(&combo.c120, nu_rendering),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_rendering_compresses_the_power_sum() {
        let nu3 = grassfree::invariants::power_sum_sigma(3);
        assert_eq!(sigma_display(&nu3, false), "sigma1^3 - 3 sigma1 sigma2 + 3 sigma3");
        assert_eq!(sigma_display(&nu3, true), "nu3");
    }

    #[test]
    fn nu_rendering_keeps_shorter_pure_forms() {
        // sigma3^3 - sigma1 sigma2 sigma3^2 has 2 terms; its nu3 form is longer.
        let s = SigmaPolynomial::from_terms(
            3,
            [(vec![0, 0, 3], rat(1)), (vec![1, 1, 2], rat(-1))],
        );
        assert_eq!(sigma_display(&s, true), sigma_display(&s, false));
    }

    #[test]
    fn json_terms_are_descending_and_exact(){
        let s = SigmaPolynomial::from_terms(
            3,
            [(vec![0, 0, 1], ratio(-3, 2)), (vec![2, 0, 0], rat(1))],
        );
        let v = sigma_json(&s);
        assert_eq!(
            v,
            serde_json::json!([
                {"exp": [2, 0, 0], "coeff": "1"},
                {"exp": [0, 0, 1], "coeff": "-3/2"},
            ])
        );
    }
}
