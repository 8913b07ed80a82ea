//! Diagonal quadratic forms over the base surfaces.
//!
//! A [`DiagForm`] is either projective, with (bi)homogeneous entries, or
//! affine, with entries on the chart. Invariants of the generic fiber are
//! computed on the affine side, where each entry is an element of the
//! function field.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::brauer::{add_classes, symbol, BrauerClass, BrauerError};
use crate::funfield::{square_class, FunFieldError, SquareClass, SurfaceKind, SurfaceModel};
use crate::poly::{gcd_all, PolyError};
use crate::{Poly, RatFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    FunField(#[from] FunFieldError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error("entry {0} is zero; a weak bundle requires nonzero diagonal entries")]
    ZeroEntry(usize),
    #[error("entry {0} is not (bi)homogeneous")]
    NotHomogeneous(usize),
    #[error("entry {0} involves a variable fixed on the affine chart")]
    NotOnChart(usize),
    #[error("operation needs a projective form")]
    NotProjective,
    #[error("operation needs an affine form")]
    NotAffine,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("normal form mismatch: {0}")]
    NormalFormMismatch(String),
    #[error("entry `{0}` is not a monomial times at most one copy of the canonical quadric")]
    OutsideClass(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot parse type `{0}`")]
    Parse(String),
    #[error("a type has exactly four entries, got {0}")]
    Arity(usize),
    #[error("entries of a type must share one parity per coordinate")]
    Parity,
    #[error("type is not lexicographically ordered")]
    Unordered,
}

/// Degrees of the four diagonal entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BundleType {
    P2([u32; 4]),
    P1xP1([(u32, u32); 4]),
}

impl BundleType {
    pub fn surface_kind(&self) -> SurfaceKind {
        match self {
            BundleType::P2(_) => SurfaceKind::P2,
            BundleType::P1xP1(_) => SurfaceKind::P1xP1,
        }
    }

    /// Entries as pairs; plane types have second coordinate zero.
    pub fn pairs(&self) -> [(u32, u32); 4] {
        match *self {
            BundleType::P2(d) => d.map(|x| (x, 0)),
            BundleType::P1xP1(p) => p,
        }
    }

    pub fn parse(kind: SurfaceKind, text: &str) -> Result<Self, TypeError> {
        let bad = || TypeError::Parse(text.to_string());
        let items: Vec<&str> = text.split(',').map(str::trim).collect();
        if items.len() != 4 {
            return Err(TypeError::Arity(items.len()));
        }
        let num = |s: &str| u32::from_str(s.trim()).map_err(|_| bad());
        let t = match kind {
            SurfaceKind::P2 => {
                let v: Vec<u32> = items.iter().map(|s| num(s)).collect::<Result<_, _>>()?;
                BundleType::P2([v[0], v[1], v[2], v[3]])
            }
            SurfaceKind::P1xP1 => {
                let v: Vec<(u32, u32)> = items
                    .iter()
                    .map(|s| {
                        let (d, e) = s.split_once(':').ok_or_else(bad)?;
                        Ok((num(d)?, num(e)?))
                    })
                    .collect::<Result<_, TypeError>>()?;
                BundleType::P1xP1([v[0], v[1], v[2], v[3]])
            }
        };
        t.check_parity()?;
        Ok(t)
    }

    pub fn check_parity(&self) -> Result<(), TypeError> {
        let p = self.pairs();
        if p.iter().all(|(d, e)| d % 2 == p[0].0 % 2 && e % 2 == p[0].1 % 2) {
            Ok(())
        } else {
            Err(TypeError::Parity)
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.pairs().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn sorted(&self) -> Self {
        match *self {
            BundleType::P2(mut d) => {
                d.sort();
                BundleType::P2(d)
            }
            BundleType::P1xP1(mut p) => {
                p.sort();
                BundleType::P1xP1(p)
            }
        }
    }
}

impl fmt::Display for BundleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            BundleType::P2(d) => d.iter().map(u32::to_string).collect(),
            BundleType::P1xP1(p) => p.iter().map(|(d, e)| format!("{d}:{e}")).collect(),
        };
        write!(f, "{}", parts.join(","))
    }
}

/// `<a0, a1, a2, a3>` over a base surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagForm {
    entries: [Poly; 4],
    surface: SurfaceModel,
    affine: bool,
}

impl DiagForm {
    pub fn entries(&self) -> &[Poly; 4] {
        &self.entries
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn entry_strings(&self) -> Vec<String> {
        self.entries.iter().map(Poly::to_string).collect()
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.entry_strings().join(", "))
    }
}

/// A projective form with nonzero (bi)homogeneous entries.
pub fn make_diag_form(entries: [Poly; 4], surface: &SurfaceModel) -> Result<DiagForm, QuadError> {
    for (i, e) in entries.iter().enumerate() {
        if e.vars() != surface.vars() {
            return Err(PolyError::VariableMismatch.into());
        }
        if e.is_zero() {
            return Err(QuadError::ZeroEntry(i));
        }
        if surface.degree_of(e).is_err() {
            return Err(QuadError::NotHomogeneous(i));
        }
    }
    Ok(DiagForm { entries, surface: surface.clone(), affine: false })
}

/// An affine form: nonzero entries in the chart coordinates only.
pub fn make_affine_form(entries: [Poly; 4], surface: &SurfaceModel) -> Result<DiagForm, QuadError> {
    for (i, e) in entries.iter().enumerate() {
        if e.vars() != surface.vars() {
            return Err(PolyError::VariableMismatch.into());
        }
        if e.is_zero() {
            return Err(QuadError::ZeroEntry(i));
        }
        if surface.chart_fixed().iter().any(|&v| e.involves(v)) {
            return Err(QuadError::NotOnChart(i));
        }
    }
    Ok(DiagForm { entries, surface: surface.clone(), affine: true })
}

/// Sorted type of a projective form; `permutation[i]` is the entry placed at slot `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub bundle_type: BundleType,
    pub permutation: [usize; 4],
}

pub fn type_of(f: &DiagForm) -> Result<TypeReport, QuadError> {
    if f.affine {
        return Err(QuadError::NotProjective);
    }
    let mut degs: Vec<((u32, u32), usize)> = Vec::with_capacity(4);
    for (i, e) in f.entries.iter().enumerate() {
        degs.push((f.surface.degree_of(e)?, i));
    }
    degs.sort();
    let permutation = [degs[0].1, degs[1].1, degs[2].1, degs[3].1];
    let pairs = [degs[0].0, degs[1].0, degs[2].0, degs[3].0];
    let bundle_type = match f.surface.kind() {
        SurfaceKind::P2 => BundleType::P2(pairs.map(|(d, _)| d)),
        SurfaceKind::P1xP1 => BundleType::P1xP1(pairs),
    };
    Ok(TypeReport { bundle_type, permutation })
}

/// Normalized gcd of the entries; constant exactly for weak bundles.
pub fn entries_gcd(f: &DiagForm) -> Poly {
    gcd_all(&f.entries).expect("entries are nonzero")
}

pub fn is_weak_bundle(f: &DiagForm) -> bool {
    entries_gcd(f).is_constant()
}

/// The form over the function field, entries restricted to the chart.
pub fn generic_fiber(f: &DiagForm) -> DiagForm {
    if f.affine {
        return f.clone();
    }
    let entries = f.entries.clone().map(|e| f.surface.dehomogenize_poly(&e));
    assert!(entries.iter().all(|e| !e.is_zero()), "nonzero (bi)homogeneous entries survive the chart");
    DiagForm { entries, surface: f.surface.clone(), affine: true }
}

/// Square class of the product of the entries, computed on the chart.
pub fn discriminant(f: &DiagForm) -> Result<SquareClass, QuadError> {
    let fiber = generic_fiber(f);
    let product = fiber.entries.iter().fold(Poly::one(f.surface.vars()), |acc, e| acc * e);
    Ok(square_class(&RatFn::from(product))?)
}

/// Product of the odd-multiplicity factors; constants are dropped.
fn odd_representative(p: &Poly) -> Result<Poly, QuadError> {
    Ok(square_class(&RatFn::from(p.clone()))?.representative(p.vars()))
}

/// Clifford invariant with the data it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordReport {
    /// Scale applied before matching the normal form (the first entry).
    pub lambda: Poly,
    /// `<1, -a, -b, abd>` after scaling and absorbing squares.
    pub normalized: [Poly; 4],
    pub a: Poly,
    pub b: Poly,
    pub d: Poly,
    /// `(-a, -b) + (ab, d)`, the invariant of the scaled form.
    pub normal_form_class: BrauerClass,
    /// The invariant of the form itself: the normal form class plus `(lambda, d)`.
    pub class: BrauerClass,
}

/// Reads `cl(q)` from the normal form `<1, -a, -b, abd>` of `lambda * q`.
/// Signs are squares over the complex numbers, so `a` and `b` are the
/// absorbed second and third entries. The fourth entry is checked against
/// `abd` with `d` the discriminant.
pub fn clifford_invariant(f: &DiagForm) -> Result<CliffordReport, QuadError> {
    if !f.affine {
        return Err(QuadError::NotAffine);
    }
    let vars = f.surface.vars();
    let lambda = odd_representative(&f.entries[0])?;
    let scaled: Vec<Poly> = f.entries.iter().map(|e| e * &lambda).collect();
    let mut normalized = [Poly::one(vars), Poly::one(vars), Poly::one(vars), Poly::one(vars)];
    for (slot, e) in normalized.iter_mut().zip(&scaled) {
        *slot = odd_representative(e)?;
    }
    if !normalized[0].is_constant() {
        return Err(QuadError::NormalFormMismatch(format!("first entry `{}` is not a square", normalized[0])));
    }
    let a = normalized[1].clone();
    let b = normalized[2].clone();
    let d_class = discriminant(f)?;
    let d = d_class.representative(vars);
    let abd = square_class(&RatFn::from(&(&a * &b) * &d))?;
    if abd != square_class(&RatFn::from(normalized[3].clone()))? {
        return Err(QuadError::NormalFormMismatch(format!(
            "fourth entry `{}` differs from abd = `{}` modulo squares",
            normalized[3],
            abd.representative(vars)
        )));
    }
    let ab = odd_representative(&(&a * &b))?;
    let rf = |p: &Poly| RatFn::from(p.clone());
    let mut nf = symbol(&rf(&a), &rf(&b))?;
    nf = add_classes(&nf, &symbol(&rf(&ab), &rf(&d))?);
    let class = add_classes(&nf, &symbol(&rf(&lambda), &rf(&d))?);
    Ok(CliffordReport { lambda, normalized, a, b, d, normal_form_class: nf, class })
}

/// Similarity moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Multiply every entry by the polynomial.
    Scale(Poly),
    /// Replace each entry by the product of its odd-multiplicity factors.
    AbsorbSquares,
    /// `new[i] = old[perm[i]]`.
    Reorder([usize; 4]),
    /// Multiply one entry by a monomial: even powers of chart coordinates,
    /// any powers of the variables fixed on the chart.
    MultiplyEntry(usize, Vec<u32>),
}

pub fn apply_move(f: &DiagForm, m: &Move) -> Result<DiagForm, QuadError> {
    let mut entries = f.entries.clone();
    match m {
        Move::Scale(lambda) => {
            if lambda.is_zero() {
                return Err(QuadError::IllegalMove("scale by zero".into()));
            }
            for e in entries.iter_mut() {
                *e = e.checked_mul(lambda)?;
            }
        }
        Move::AbsorbSquares => {
            for e in entries.iter_mut() {
                *e = odd_representative(e)?;
            }
        }
        Move::Reorder(perm) => {
            let mut seen = [false; 4];
            for &p in perm {
                if p >= 4 || seen[p] {
                    return Err(QuadError::IllegalMove(format!("{perm:?} is not a permutation")));
                }
                seen[p] = true;
            }
            entries = perm.map(|p| f.entries[p].clone());
        }
        Move::MultiplyEntry(i, exps) => {
            if *i >= 4 || exps.len() != f.surface.vars().len() {
                return Err(QuadError::IllegalMove(format!("entry {i} with exponents {exps:?}")));
            }
            for c in f.surface.chart_coordinates() {
                if exps[c] % 2 != 0 {
                    let name = &f.surface.vars().names()[c];
                    return Err(QuadError::IllegalMove(format!("odd power of the chart coordinate {name}")));
                }
            }
            if f.affine && f.surface.chart_fixed().iter().any(|&v| exps[v] > 0) {
                return Err(QuadError::IllegalMove("boundary variables are fixed to one on the chart".into()));
            }
            entries[*i] = entries[*i].mul_monomial(exps)?;
        }
    }
    Ok(DiagForm { entries, surface: f.surface.clone(), affine: f.affine })
}

/// Witness that `scale * source` becomes `target` after absorbing squares and
/// reordering: for every slot `i`, with `j = permutation[i]`,
/// `scale * source[j] = c * square_factors[j]^2 * target[i]` for a nonzero
/// constant `c` (a square over the complex numbers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub scale: Poly,
    pub square_factors: [Poly; 4],
    pub permutation: [usize; 4],
    pub target: [Poly; 4],
}

impl SimilarityWitness {
    pub fn verify(&self, source: &DiagForm) -> bool {
        (0..4).all(|i| {
            let j = self.permutation[i];
            let lhs = &self.scale * &source.entries[j];
            let rhs = &(&self.square_factors[j] * &self.square_factors[j]) * &self.target[i];
            lhs.div_exact(&rhs).is_some_and(|q| q.is_constant() && !q.is_zero())
        })
    }
}

/// `<y', x', x'y', F(x', y', 1)>` in the chart coordinates `(x', y')`.
pub fn hpt_form(surface: &SurfaceModel, swap: bool) -> [Poly; 4] {
    let [mut i, mut j] = surface.chart_coordinates();
    if swap {
        std::mem::swap(&mut i, &mut j);
    }
    let vars = surface.vars();
    let x = Poly::var(vars, i);
    let y = Poly::var(vars, j);
    let one = Poly::one(vars);
    let two = Poly::from_i64(vars, 2);
    let f = &(&(&x * &x) + &(&y * &y)) + &one - &two * &(&(&x * &y) + &x + &y);
    [y.clone(), x.clone(), &x * &y, f]
}

/// The chart quadric `F(x', y', 1)`, symmetric in the two chart coordinates.
pub fn chart_quadric(surface: &SurfaceModel) -> Poly {
    hpt_form(surface, false)[3].clone()
}

fn check_hpt_class(f: &DiagForm) -> Result<(), QuadError> {
    let quadric = chart_quadric(&f.surface);
    for e in &f.entries {
        let fx = e.factor()?;
        for (g, k) in &fx.factors {
            let is_var = g.total_degree() == Some(1) && g.num_terms() == 1;
            if !(is_var || (g == &quadric && *k == 1)) {
                return Err(QuadError::OutsideClass(e.to_string()));
            }
        }
    }
    Ok(())
}

/// The 24 permutations of four slots in lexicographic order.
pub fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

/// Searches scales (the odd part of `entry_i * target_j`), square absorption
/// and the 24 reorderings for a similarity to the canonical form; the first
/// hit in that order is returned.
pub fn normalize_to_hpt(f: &DiagForm) -> Result<Option<SimilarityWitness>, QuadError> {
    if !f.affine {
        return Err(QuadError::NotAffine);
    }
    check_hpt_class(f)?;
    let vars = f.surface.vars();
    for swap in [false, true] {
        let target = hpt_form(&f.surface, swap);
        for i in 0..4 {
            for t in &target {
                let scale = odd_representative(&(&f.entries[i] * t))?;
                let absorbed: Vec<Poly> = f
                    .entries
                    .iter()
                    .map(|e| odd_representative(&(e * &scale)))
                    .collect::<Result<_, _>>()?;
                let Some(permutation) = permutations()
                    .into_iter()
                    .find(|p| (0..4).all(|k| absorbed[p[k]] == target[k]))
                else {
                    continue;
                };
                let mut square_factors = [Poly::one(vars), Poly::one(vars), Poly::one(vars), Poly::one(vars)];
                for (j, sf) in square_factors.iter_mut().enumerate() {
                    *sf = square_root_part(&(&f.entries[j] * &scale))?;
                }
                let w = SimilarityWitness { scale, square_factors, permutation, target: target.clone() };
                debug_assert!(w.verify(f));
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// `prod g^(k/2)` over the factorization `prod g^k`.
fn square_root_part(p: &Poly) -> Result<Poly, QuadError> {
    let fx = p.factor()?;
    let mut out = Poly::one(p.vars());
    for (g, k) in fx.factors {
        out = out * g.pow(k / 2)?;
    }
    Ok(out)
}
