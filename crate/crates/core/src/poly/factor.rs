//! Factorization for the polynomial class the engine manipulates.
//!
//! Supported inputs are products of variables, linear forms, absolutely
//! irreducible quadrics and (bi)homogeneous polynomials that dehomogenize to
//! those. The pipeline is: integer content, monomial content, content in the
//! first variable, Yun square-free decomposition, then splitting each
//! square-free part:
//!
//! * a part homogeneous in some set of at least two variables is
//!   dehomogenized, factored recursively and re-homogenized;
//! * linear factors are found from the rational roots of a square-free
//!   specialization, lifted by implicit differentiation and confirmed by
//!   exact division;
//! * a quadratic remainder is certified absolutely irreducible when its
//!   homogenized Gram matrix has rank at least three.
//!
//! Anything else is reported as unsupported instead of being guessed.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed};

use super::univariate::{odd_part, square_free_decomposition};
use super::{PolyError, Polynomial, Scalar};

/// `unit * prod factor^multiplicity` with normalized irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPolynomial<C> {
    pub unit: C,
    pub factors: Vec<(Polynomial<C>, u32)>,
}

impl<C: Scalar> FactoredPolynomial<C> {
    pub fn recombine(&self, vars: &super::VarSet) -> Polynomial<C> {
        self.factors
            .iter()
            .fold(Polynomial::constant(vars, self.unit.clone()), |acc, (f, k)| {
                acc * f.pow(*k).expect("exponent fits")
            })
    }

    /// Factors with odd multiplicity.
    pub fn odd_factors(&self) -> impl Iterator<Item = &Polynomial<C>> {
        self.factors.iter().filter(|(_, k)| k % 2 == 1).map(|(f, _)| f)
    }
}

/// Points tried when looking for a square-free specialization.
const SPECIALIZATION_BUDGET: usize = 400;
/// Largest integer whose divisors are enumerated for the rational-root test.
const ROOT_COEFF_BOUND: i64 = 1_000_000_000_000;

impl<C: Scalar> Polynomial<C> {
    pub fn factor(&self) -> Result<FactoredPolynomial<C>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (_, q) = self.normalize();
        let mut raw = Vec::new();
        factor_rec(&q, &mut raw)?;
        let mut merged: BTreeMap<Polynomial<C>, u32> = BTreeMap::new();
        for (f, k) in raw {
            *merged.entry(f).or_insert(0) += k;
        }
        let mut factors: Vec<(Polynomial<C>, u32)> = merged.into_iter().collect();
        factors.sort_by_key(|(f, _)| (f.total_degree(), Reverse(f.clone())));
        let product = factors
            .iter()
            .fold(Polynomial::one(self.vars()), |acc, (f, k)| acc * f.pow(*k).expect("exponent fits"));
        let unit = self
            .div_exact(&product)
            .and_then(|u| u.constant_value())
            .expect("factors recombine to the input");
        Ok(FactoredPolynomial { unit, factors })
    }

    /// True for nonconstant polynomials with a single simple irreducible factor.
    pub fn is_irreducible(&self) -> Result<bool, PolyError> {
        if self.is_constant() {
            return Ok(false);
        }
        let f = self.factor()?;
        Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
    }
}

fn factor_rec<C: Scalar>(p: &Polynomial<C>, out: &mut Vec<(Polynomial<C>, u32)>) -> Result<(), PolyError> {
    if p.is_constant() {
        return Ok(());
    }
    let vars = p.vars().clone();
    let mono = p.monomial_content();
    for (i, &e) in mono.iter().enumerate() {
        if e > 0 {
            out.push((Polynomial::var(&vars, i), e));
        }
    }
    let mut q = p.div_monomial(&mono).normalized();
    if q.is_constant() {
        return Ok(());
    }
    let v = q.support_vars()[0];
    let c = q.content_in(v);
    if !c.is_constant() {
        factor_rec(&c, out)?;
        q = q.div_exact(&c).expect("content divides").normalized();
    }
    for (part, k) in square_free_decomposition(&q, v) {
        for f in split_square_free(&part)? {
            out.push((f, k));
        }
    }
    Ok(())
}

/// Irreducible factors of a square-free polynomial without monomial factors.
fn split_square_free<C: Scalar>(s: &Polynomial<C>) -> Result<Vec<Polynomial<C>>, PolyError> {
    let s = s.normalized();
    let deg = s.total_degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![s]);
    }
    if let Some(parts) = split_by_dehomogenizing(&s)? {
        return Ok(parts);
    }
    if let Some(parts) = split_plane_quadratic(&s)? {
        return Ok(parts);
    }
    let v = s.support_vars()[0];
    let (mut found, rem) = linear_factors(&s, v)?;
    let rem = rem.normalized();
    match rem.total_degree().unwrap_or(0) {
        0 => {}
        1 => found.push(rem),
        2 if gram_rank(&rem) >= 3 => found.push(rem),
        _ if rem.total_degree() < s.total_degree() => found.extend(split_square_free(&rem)?),
        _ => return Err(PolyError::UnsupportedFactorization(rem.to_string())),
    }
    Ok(found)
}

/// If `s` is homogeneous in some set of at least two of its variables,
/// factor its dehomogenization and homogenize the factors back.
fn split_by_dehomogenizing<C: Scalar>(s: &Polynomial<C>) -> Result<Option<Vec<Polynomial<C>>>, PolyError> {
    let support = s.support_vars();
    let n = support.len();
    if n < 2 {
        return Ok(None);
    }
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..n).filter(|b| m & (1 << b) != 0).map(|b| support[b]).collect())
        .collect();
    subsets.sort_by_key(|a: &Vec<usize>| Reverse(a.len()));
    for a in subsets {
        if !matches!(s.homogeneous_degree_in(&a), Some(d) if d > 0) {
            continue;
        }
        let w = *a.last().expect("nonempty subset");
        let affine = s.eval_partial(&[(w, C::one())]);
        let fs = affine.factor()?;
        let mut parts = Vec::new();
        for (g, k) in fs.factors {
            if k != 1 {
                return Err(PolyError::UnsupportedFactorization(s.to_string()));
            }
            parts.push(g.homogenize_in(&a, w)?.normalized());
        }
        return Ok(Some(parts));
    }
    Ok(None)
}

/// Handles polynomials in two variables of degree at most two in one of
/// them: `A b^2 + B b + C` splits over the complex numbers exactly when its
/// discriminant is a square there.
fn split_plane_quadratic<C: Scalar>(s: &Polynomial<C>) -> Result<Option<Vec<Polynomial<C>>>, PolyError> {
    let support = s.support_vars();
    if support.len() != 2 {
        return Ok(None);
    }
    let Some(&b) = support.iter().filter(|&&i| s.degree_in(i) <= 2).min_by_key(|&&i| s.degree_in(i)) else {
        return Ok(None);
    };
    let content = s.content_in(b);
    if !content.is_constant() {
        let rest = s.div_exact(&content).expect("content divides");
        let mut parts = split_square_free(&content)?;
        parts.extend(split_square_free(&rest)?);
        return Ok(Some(parts));
    }
    if s.degree_in(b) == 1 {
        return Ok(Some(vec![s.clone()]));
    }
    let coeffs = s.coeffs_in(b);
    let vars = s.vars().clone();
    let get = |k: u32| coeffs.get(&k).cloned().unwrap_or_else(|| Polynomial::zero(&vars));
    let (a2, a1, a0) = (get(2), get(1), get(0));
    let disc = &a1 * &a1 - Polynomial::from_i64(&vars, 4) * &a2 * &a0;
    if !odd_part(&disc).is_constant() {
        return Ok(Some(vec![s.clone()]));
    }
    let root = exact_sqrt(&disc).ok_or_else(|| PolyError::UnsupportedFactorization(s.to_string()))?;
    let lin = Polynomial::from_i64(&vars, 2) * &a2 * Polynomial::var(&vars, b) + &a1 - root;
    let g = s.gcd(&lin)?;
    let h = s.div_exact(&g).expect("gcd divides");
    let mut parts = split_square_free(&g)?;
    parts.extend(split_square_free(&h)?);
    Ok(Some(parts))
}

/// Square root over the rationals of a polynomial in at most one variable.
fn exact_sqrt<C: Scalar>(p: &Polynomial<C>) -> Option<Polynomial<C>> {
    let vars = p.vars().clone();
    if let Some(c) = p.constant_value() {
        return c.sqrt_exact().map(|r| Polynomial::constant(&vars, r));
    }
    let v = p.support_vars()[0];
    let mut root = Polynomial::one(&vars);
    for (g, k) in square_free_decomposition(p, v) {
        if k % 2 == 1 {
            return None;
        }
        root = root * g.pow(k / 2).ok()?;
    }
    let c = p.div_exact(&(&root * &root))?.constant_value()?;
    Some(root.scale(&c.sqrt_exact()?))
}

/// Linear factors of a square-free `s` with nonzero coefficient on `v`,
/// and the cofactor left after dividing them out.
fn linear_factors<C: Scalar>(
    s: &Polynomial<C>,
    v: usize,
) -> Result<(Vec<Polynomial<C>>, Polynomial<C>), PolyError> {
    let vars = s.vars().clone();
    let others: Vec<usize> = s.support_vars().into_iter().filter(|&i| i != v).collect();
    let k = s.degree_in(v);
    let point = specialization_point(s, v, &others, k)?;
    let assignment: Vec<(usize, C)> = others.iter().cloned().zip(point.iter().cloned()).collect();
    let uni = s.eval_partial(&assignment);
    let ds = s.derivative(v);
    let mut found = Vec::new();
    let mut rem = s.clone();
    for r in rational_roots(&uni, v)? {
        let mut at = assignment.clone();
        at.push((v, r.clone()));
        let sv = eval_at(&ds, &at);
        if sv.is_zero() {
            continue;
        }
        let mut lin = Polynomial::var(&vars, v) - Polynomial::constant(&vars, r.clone());
        for (j, &w) in others.iter().enumerate() {
            let sw = eval_at(&s.derivative(w), &at);
            let cj = -sw / sv.clone();
            let shifted = Polynomial::var(&vars, w) - Polynomial::constant(&vars, point[j].clone());
            lin = lin - shifted.scale(&cj);
        }
        let lin = lin.normalized();
        if let Some(q) = rem.div_exact(&lin) {
            rem = q;
            found.push(lin);
        }
    }
    Ok((found, rem))
}

fn eval_at<C: Scalar>(p: &Polynomial<C>, at: &[(usize, C)]) -> C {
    p.eval_partial(at).constant_value().expect("all variables assigned")
}

/// A point for the variables `others` where `s` keeps its degree in `v`
/// and stays square-free.
fn specialization_point<C: Scalar>(
    s: &Polynomial<C>,
    v: usize,
    others: &[usize],
    k: u32,
) -> Result<Vec<C>, PolyError> {
    let m = others.len();
    let values: Vec<i64> = (0..=12).map(|i: i64| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 }).collect();
    let mut tried = 0;
    for radius in 0..values.len() {
        let mut idx = vec![0usize; m];
        loop {
            if idx.iter().copied().max().unwrap_or(0) == radius || (m == 0 && radius == 0) {
                let point: Vec<C> = idx.iter().map(|&i| C::from_small(values[i])).collect();
                let at: Vec<(usize, C)> = others.iter().cloned().zip(point.iter().cloned()).collect();
                let uni = s.eval_partial(&at);
                if uni.degree_in(v) == k && uni.gcd(&uni.derivative(v)).expect("same ring").is_constant() {
                    return Ok(point);
                }
                tried += 1;
                if tried >= SPECIALIZATION_BUDGET {
                    return Err(PolyError::UnsupportedFactorization(s.to_string()));
                }
            }
            if m == 0 {
                break;
            }
            let mut j = 0;
            loop {
                idx[j] += 1;
                if idx[j] <= radius {
                    break;
                }
                idx[j] = 0;
                j += 1;
                if j == m {
                    break;
                }
            }
            if j == m {
                break;
            }
        }
    }
    Err(PolyError::UnsupportedFactorization(s.to_string()))
}

/// Distinct rational roots of a polynomial in variable `v` only.
fn rational_roots<C: Scalar>(p: &Polynomial<C>, v: usize) -> Result<Vec<C>, PolyError> {
    let deg = p.degree_in(v) as usize;
    let mut coeffs = vec![C::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exps()[v] as usize] = c.clone();
    }
    let mut roots = Vec::new();
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(C::zero());
    }
    let coeffs = &coeffs[low..];
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let lcm = coeffs.iter().fold(C::Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<C::Int> = coeffs
        .iter()
        .map(|c| c.numer().clone() * (lcm.clone() / c.denom().clone()))
        .collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let bound = C::Int::from_i64(ROOT_COEFF_BOUND).expect("bound fits");
    if a0 > bound || an > bound {
        return Err(PolyError::UnsupportedFactorization(p.to_string()));
    }
    let eval = |x: &C| {
        coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    };
    for q in divisors(&an) {
        for pn in divisors(&a0) {
            for sign in [C::one(), -C::one()] {
                let cand = C::from_parts(pn.clone(), q.clone()) * sign;
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

fn divisors<I: Integer + Clone>(n: &I) -> Vec<I> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = I::one();
    while i.clone() * i.clone() <= *n {
        if n.is_multiple_of(&i) {
            let j = n.clone() / i.clone();
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i = i + I::one();
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rank of the Gram matrix of the homogenized quadric.
fn gram_rank<C: Scalar>(q: &Polynomial<C>) -> usize {
    let support = q.support_vars();
    let n = support.len();
    let mut m = vec![vec![C::zero(); n + 1]; n + 1];
    let two = C::from_small(2);
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = support
            .iter()
            .enumerate()
            .flat_map(|(k, &i)| std::iter::repeat_n(k, mono.exps()[i] as usize))
            .collect();
        let (i, j) = match idx.as_slice() {
            [] => (n, n),
            [i] => (*i, n),
            [i, j] => (*i, *j),
            _ => unreachable!("quadric has degree at most two"),
        };
        if i == j {
            m[i][i] = m[i][i].clone() + c.clone();
        } else {
            let h = c.clone() / two.clone();
            m[i][j] = m[i][j].clone() + h.clone();
            m[j][i] = m[j][i].clone() + h;
        }
    }
    rank(m)
}

fn rank<C: Scalar>(mut m: Vec<Vec<C>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone() / m[r][col].clone();
                for j in col..cols {
                    let d = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - d;
                }
            }
        }
        r += 1;
    }
    r
}
