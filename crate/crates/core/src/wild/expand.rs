use serde::Serialize;

use super::WildError;
use crate::fields::Rational;
use crate::poly::Poly;

/// `f = sum coeff * prod_{i in S} F_i` with `F_0 = Y`, `F_{i+1} = F_i^2 - a_i`.
///
/// Polynomials live in `A[Y]` with `A = Q[X_1..X_m]`; `Y` is the last variable
/// and coefficients do not involve it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expansion {
    /// Sorted by decreasing `deg_Y mu(S) = sum_{i in S} 2^i`.
    pub terms: Vec<ExpansionTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub set: Vec<usize>,
    #[serde(serialize_with = "display_poly")]
    pub coeff: Poly<Rational>,
}

fn display_poly<S: serde::Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// `F_0, ..., F_count` for the given `a`.
pub fn f_sequence(a: &[Poly<Rational>], var_count: usize, count: usize) -> Vec<Poly<Rational>> {
    let y = var_count - 1;
    let mut out = vec![Poly::var(var_count, y)];
    for ai in a.iter().take(count) {
        let last = out.last().expect("nonempty");
        out.push(last.mul(last).sub(ai));
    }
    out
}

fn bits(n: u32) -> Vec<usize> {
    (0..32).filter(|i| n >> i & 1 == 1).collect()
}

fn mu(fs: &[Poly<Rational>], set: &[usize], var_count: usize) -> Poly<Rational> {
    set.iter().fold(Poly::one(var_count), |acc, &i| acc.mul(&fs[i]))
}

/// The unique expansion of `f` in the basis `mu(S)`.
///
/// Needs `F_i` for every bit `i` of `deg_Y f`, that is `a_0 .. a_{i-1}`.
pub fn expand(f: &Poly<Rational>, a: &[Poly<Rational>]) -> Result<Expansion, WildError> {
    if f.is_zero() {
        return Err(WildError::ZeroInput);
    }
    let n = f.var_count();
    let y = n - 1;
    for ai in a {
        ai.check_var_count(n)?;
        if ai.degree_in(y).unwrap_or(0) > 0 {
            return Err(WildError::Precondition("a_i must not involve Y".into()));
        }
    }
    let top = f.degree_in(y).unwrap_or(0);
    let needed = (u32::BITS - top.leading_zeros()).saturating_sub(1) as usize;
    if a.len() < needed {
        return Err(WildError::InsufficientA { needed, given: a.len() });
    }
    let fs = f_sequence(a, n, needed);
    let mut rest = f.clone();
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let d = rest.degree_in(y).unwrap_or(0);
        let set = bits(d);
        let coeff = rest.coefficient_in(y, d);
        // mu(S) is monic of Y-degree d, so this drops the Y-degree
        rest = rest.sub(&coeff.mul(&mu(&fs, &set, n)));
        terms.push(ExpansionTerm { set, coeff });
    }
    Ok(Expansion { terms })
}

/// `sum coeff * mu(S)`.
pub fn reconstruct(e: &Expansion, a: &[Poly<Rational>], var_count: usize) -> Poly<Rational> {
    let depth = e.terms.iter().flat_map(|t| t.set.iter().copied()).max().unwrap_or(0);
    let fs = f_sequence(a, var_count, depth);
    e.terms.iter().fold(Poly::zero(var_count), |acc, t| acc.add(&t.coeff.mul(&mu(&fs, &t.set, var_count))))
}

impl Expansion {
    /// `[({0,1},1),({0},2)]`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let set: Vec<String> = t.set.iter().map(usize::to_string).collect();
                format!("({{{}}},{})", set.join(","), t.coeff)
            })
            .collect();
        format!("[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Poly<Rational> {
        Poly::constant(1, Rational::from_integer(n.into()))
    }

    #[test]
    fn small_expansions() {
        let y = Poly::<Rational>::var(1, 0);
        assert_eq!(expand(&y, &[]).unwrap().render(), "[({0},1)]");
        assert_eq!(expand(&y.pow(2), &[c(2)]).unwrap().render(), "[({1},1),({},2)]");
        let e = expand(&y.pow(3), &[c(2), c(5)]).unwrap();
        assert_eq!(e.render(), "[({0,1},1),({0},2)]");
        assert_eq!(reconstruct(&e, &[c(2), c(5)], 1), y.pow(3));
    }

    #[test]
    fn preconditions() {
        let y = Poly::<Rational>::var(1, 0);
        assert!(matches!(expand(&Poly::zero(1), &[]), Err(WildError::ZeroInput)));
        assert!(matches!(expand(&y.pow(4), &[c(1)]), Err(WildError::InsufficientA { needed: 2, given: 1 })));
    }
}
