//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use super::{PolyError, Polynomial, Scalar};

impl<C: Scalar> Polynomial<C> {
    /// Normalized greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch);
        }
        Ok(gcd_rec(self, other))
    }

    /// Gcd of the coefficients with respect to variable `i`.
    pub fn content_in(&self, i: usize) -> Self {
        let mut g = Self::zero(self.vars());
        for c in self.coeffs_in(i).into_values() {
            g = gcd_rec(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self` divided by its content in variable `i`.
    pub fn primitive_part_in(&self, i: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(i);
        self.div_exact(&c).expect("content divides").normalized()
    }

    /// Pseudo-remainder of `self` by `divisor` viewed as polynomials in variable `i`.
    pub fn pseudo_rem(&self, divisor: &Self, i: usize) -> Self {
        let db = divisor.degree_in(i);
        let lb = divisor.leading_coeff_in(i);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(i) >= db {
            let dr = r.degree_in(i);
            let lr = r.leading_coeff_in(i);
            let mut shift = vec![0; self.vars().len()];
            shift[i] = dr - db;
            let t = divisor.mul_monomial(&shift).expect("degree bounded by dividend") * &lr;
            r = &r * &lb - t;
        }
        r
    }
}

fn gcd_rec<C: Scalar>(a: &Polynomial<C>, b: &Polynomial<C>) -> Polynomial<C> {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m: Vec<u32> = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let mono = Polynomial::monomial(&vars, m, C::one());

    if a1.is_constant() || b1.is_constant() {
        return mono;
    }
    if a1 == b1 {
        return (mono * a1).normalized();
    }
    let shared = (0..vars.len()).find(|&i| a1.involves(i) && b1.involves(i));
    let g = match shared {
        None => {
            // No variable in common: any common factor is a constant.
            Polynomial::one(&vars)
        }
        Some(v) => {
            if let Some(u) = (0..vars.len()).find(|&i| a1.involves(i) && !b1.involves(i)) {
                gcd_rec(&a1.content_in(u), &b1)
            } else if let Some(u) = (0..vars.len()).find(|&i| b1.involves(i) && !a1.involves(i)) {
                gcd_rec(&a1, &b1.content_in(u))
            } else {
                gcd_same_support(&a1, &b1, v)
            }
        }
    };
    (mono * g).normalized()
}

fn gcd_same_support<C: Scalar>(a: &Polynomial<C>, b: &Polynomial<C>, v: usize) -> Polynomial<C> {
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd_rec(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides").normalized();
    let mut q = b.div_exact(&cb).expect("content divides").normalized();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_zero() {
            break p;
        }
        if q.degree_in(v) == 0 {
            break Polynomial::one(a.vars());
        }
        let r = p.pseudo_rem(&q, v);
        p = q;
        q = if r.is_zero() { r } else { r.primitive_part_in(v) };
    };
    (c * g).normalized()
}

/// Normalized gcd of a nonempty list with at least one nonzero entry.
pub fn gcd_all<C: Scalar>(ps: &[Polynomial<C>]) -> Result<Polynomial<C>, PolyError> {
    let first = ps.first().ok_or(PolyError::ZeroPolynomial)?;
    if ps.iter().all(Polynomial::is_zero) {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut g = Polynomial::zero(first.vars());
    for p in ps {
        g = g.gcd(p)?;
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}
