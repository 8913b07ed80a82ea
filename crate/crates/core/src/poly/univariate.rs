//! Square-free decomposition with respect to one variable.

use super::{Polynomial, Scalar};

/// Yun's algorithm in variable `v`: returns `(part, multiplicity)` with
/// `p = unit * prod part^multiplicity` and the parts pairwise coprime and
/// square-free. `p` must be primitive in `v` (always true for univariate input).
pub fn square_free_decomposition<C: Scalar>(p: &Polynomial<C>, v: usize) -> Vec<(Polynomial<C>, u32)> {
    let mut out = Vec::new();
    if p.is_zero() || p.degree_in(v) == 0 {
        return out;
    }
    let a = p.normalized();
    let b = a.derivative(v);
    let c = a.gcd(&b).expect("same ring");
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = b.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.derivative(v);
    let mut k = 1;
    while !w.is_constant() {
        let g = w.gcd(&z).expect("same ring");
        if !g.is_constant() {
            out.push((g.clone(), k));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.derivative(v);
        k += 1;
    }
    out
}

/// Normalized product of the odd-multiplicity square-free parts of a
/// polynomial in at most one variable. Two such polynomials differ by a
/// square times a constant exactly when their odd parts agree.
pub fn odd_part<C: Scalar>(p: &Polynomial<C>) -> Polynomial<C> {
    let vars = p.vars().clone();
    let support = p.support_vars();
    assert!(support.len() <= 1, "odd_part expects a univariate polynomial");
    let Some(&v) = support.first() else {
        return Polynomial::one(&vars);
    };
    square_free_decomposition(p, v)
        .into_iter()
        .filter(|(_, k)| k % 2 == 1)
        .fold(Polynomial::one(&vars), |acc, (g, _)| acc * g)
        .normalized()
}
