//! The face ring `k[Σ]` of a simplicial poset.
//!
//! A standard monomial `t_{σ₁}^{i₁}⋯t_{σ_k}^{i_k}` is stored as its top
//! simplex `σ_k` together with the exponent vector `e_v = Σ_{s: v∈σ_s} i_s`,
//! which has full support on `V(σ_k)`. This is a bijection, and the
//! restriction to a simplex `τ ≥ σ_k` is simply `∏ t_v^{e_v}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{self, CoefficientRing, ExactMatrix, IntMatrix, Matrix};
use crate::simplicial::{mask_indices, SimplicialPoset, VertexMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceRingError {
    #[error("restrictions of a face ring element are inconsistent in degree {0}")]
    Inconsistent(usize),
    #[error("simplex map does not match the source poset")]
    BadSimplexMap,
}

/// Exponent vectors are indexed by all vertices of the poset.
pub type Exponents = Box<[u32]>;

/// A polynomial in the vertex variables `t_v`.
pub type Polynomial = BTreeMap<Exponents, BigRational>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    top: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn unit(num_vertices: usize) -> Self {
        Monomial { top: 0, exps: vec![0; num_vertices].into() }
    }

    /// The monomial with top simplex `top` and exponents `exps`; the support
    /// of `exps` must be `V(top)`.
    pub fn new(poset: &SimplicialPoset, top: u32, exps: Exponents) -> Self {
        debug_assert_eq!(support(&exps), poset.mask(top));
        Monomial { top, exps }
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Half of the degree: the total exponent.
    pub fn weight(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn degree(&self) -> usize {
        2 * self.weight()
    }

    pub fn is_unit(&self) -> bool {
        self.top == 0
    }

    /// The chain `σ₁ < … < σ_k` with exponents `i₁, …, i_k`.
    pub fn chain(&self, poset: &SimplicialPoset) -> Vec<(u32, u32)> {
        let mut rest: Vec<u32> = self.exps.to_vec();
        let mut out = Vec::new();
        while rest.iter().any(|&e| e > 0) {
            let mask = support(&rest);
            let step = rest.iter().copied().filter(|&e| e > 0).min().unwrap_or(0);
            out.push((poset.face(self.top, mask).expect("face of the top simplex"), step));
            for e in rest.iter_mut().filter(|e| **e > 0) {
                *e -= step;
            }
        }
        out.reverse();
        out
    }
}

fn support(exps: &[u32]) -> VertexMask {
    exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1 << i))
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{:?}", self.top, self.exps)
    }
}

/// A finite linear combination of standard monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FaceRingElement {
    terms: BTreeMap<Monomial, BigRational>,
}

impl FaceRingElement {
    pub fn zero() -> Self {
        FaceRingElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous element, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn add_term(&mut self, ring: CoefficientRing, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = ring.normalize(c);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.normalize(&(o.get() + c));
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl fmt::Debug for FaceRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The face ring of a poset over a coefficient ring.
#[derive(Clone, Debug)]
pub struct FaceRing {
    poset: Arc<SimplicialPoset>,
    ring: CoefficientRing,
}

impl FaceRing {
    pub fn new(poset: Arc<SimplicialPoset>, ring: CoefficientRing) -> Self {
        FaceRing { poset, ring }
    }

    pub fn poset(&self) -> &SimplicialPoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<SimplicialPoset> {
        &self.poset
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn num_vertices(&self) -> usize {
        self.poset.num_vertices()
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::unit(self.num_vertices())
    }

    pub fn one(&self) -> FaceRingElement {
        self.scalar(&BigRational::one())
    }

    pub fn scalar(&self, c: &BigRational) -> FaceRingElement {
        self.monomial(self.unit_monomial(), c)
    }

    pub fn monomial(&self, m: Monomial, c: &BigRational) -> FaceRingElement {
        let mut out = FaceRingElement::zero();
        out.add_term(self.ring, m, c);
        out
    }

    /// The generator `t_σ`.
    pub fn generator(&self, sigma: u32) -> FaceRingElement {
        let mask = self.poset.mask(sigma);
        let exps: Exponents = (0..self.num_vertices()).map(|v| (mask >> v & 1) as u32).collect();
        self.monomial(Monomial { top: sigma, exps }, &BigRational::one())
    }

    /// The generator `t_v`; zero for ghosts and vertices outside `Σ`.
    pub fn vertex(&self, v: usize) -> FaceRingElement {
        match self.poset.vertex_element(v) {
            Some(s) => self.generator(s),
            None => FaceRingElement::zero(),
        }
    }

    /// `Σ_v c_v t_v`.
    pub fn linear(&self, coeffs: &[BigInt]) -> FaceRingElement {
        let mut out = FaceRingElement::zero();
        for (v, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(s) = self.poset.vertex_element(v) {
                let g = self.generator(s);
                let (m, _) = g.terms.into_iter().next().expect("generator is a monomial");
                out.add_term(self.ring, m, &BigRational::from_integer(c.clone()));
            }
        }
        out
    }

    pub fn add(&self, a: &FaceRingElement, b: &FaceRingElement) -> FaceRingElement {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(self.ring, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, a: &FaceRingElement, b: &FaceRingElement) -> FaceRingElement {
        self.add(a, &self.scale(b, &-BigRational::one()))
    }

    pub fn scale(&self, a: &FaceRingElement, c: &BigRational) -> FaceRingElement {
        let mut out = FaceRingElement::zero();
        for (m, x) in &a.terms {
            out.add_term(self.ring, m.clone(), &(x * c));
        }
        out
    }

    /// `t_v^2 t_w`, with `@σ` appended for posets where the vertex product
    /// does not determine the monomial.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let vs = self.poset.vertices();
        let parts: Vec<String> = m
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("t_{}", vs.id(v)) } else { format!("t_{}^{e}", vs.id(v)) })
            .collect();
        let mut out = parts.join(" ");
        if !self.poset.is_complex() {
            out.push_str(&format!("@{}", self.poset.format_element(m.top)));
        }
        out
    }

    pub fn format(&self, f: &FaceRingElement) -> String {
        format_sum(f.terms.iter().map(|(m, c)| (c, self.format_monomial(m))))
    }

    /// Product of two standard monomials as a sum of standard monomials,
    /// all with coefficient one.
    ///
    /// The product restricts to `x^{e₁+e₂}` on every maximal `τ` above both
    /// tops and to zero elsewhere. For each such `τ` the face of `τ` on
    /// `V(σ₁) ∪ V(σ₂)` is the only standard-monomial top below `τ` that can
    /// carry this restriction, so the product is the sum over the distinct
    /// faces obtained this way.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Vec<Monomial> {
        if a.is_unit() {
            return vec![b.clone()];
        }
        if b.is_unit() {
            return vec![a.clone()];
        }
        let p = &self.poset;
        let mask = p.mask(a.top) | p.mask(b.top);
        let exps: Exponents = a.exps.iter().zip(b.exps.iter()).map(|(x, y)| x + y).collect();
        let mut tops = BTreeSet::new();
        for &tau in p.maximal_above(a.top) {
            if p.le(b.top, tau) {
                if let Some(r) = p.face(tau, mask) {
                    tops.insert(r);
                }
            }
        }
        tops.into_iter().map(|top| Monomial { top, exps: exps.clone() }).collect()
    }

    pub fn multiply(&self, f: &FaceRingElement, g: &FaceRingElement) -> FaceRingElement {
        let mut out = FaceRingElement::zero();
        for (m1, c1) in &f.terms {
            for (m2, c2) in &g.terms {
                let c = c1 * c2;
                for m in self.multiply_monomials(m1, m2) {
                    out.add_term(self.ring, m, &c);
                }
            }
        }
        out
    }

    /// Standard monomials of degree `degree` in increasing order; empty for
    /// odd degrees.
    pub fn basis_of_degree(&self, degree: usize) -> Vec<Monomial> {
        if degree % 2 == 1 {
            return Vec::new();
        }
        let w = degree / 2;
        let p = &self.poset;
        let nv = self.num_vertices();
        let mut out = Vec::new();
        for top in 0..p.len() as u32 {
            let verts: Vec<usize> = mask_indices(p.mask(top)).collect();
            if verts.len() > w || (verts.is_empty() && w > 0) {
                continue;
            }
            let mut exps = vec![0u32; nv];
            compositions(w, &verts, 0, &mut exps, &mut |e| out.push(Monomial { top, exps: e.into() }));
        }
        out.sort();
        out
    }

    /// Restriction of `f` to `k[τ]`.
    pub fn restrict(&self, f: &FaceRingElement, tau: u32) -> Polynomial {
        let mut out = Polynomial::new();
        for (m, c) in &f.terms {
            if self.poset.le(m.top, tau) {
                add_poly_term(self.ring, &mut out, m.exps.clone(), c);
            }
        }
        out
    }

    /// The product computed in the limit presentation: restrict both factors
    /// to each maximal simplex, multiply there, and solve for the standard
    /// monomial coefficients reproducing all restrictions.
    pub fn multiply_by_restriction(
        &self,
        f: &FaceRingElement,
        g: &FaceRingElement,
    ) -> Result<FaceRingElement, FaceRingError> {
        let mut out = FaceRingElement::zero();
        let maximal = self.poset.maximal();
        // weight -> restriction of the product to each maximal simplex
        let mut by_degree: BTreeMap<usize, Vec<Polynomial>> = BTreeMap::new();
        for (k, &tau) in maximal.iter().enumerate() {
            let prod = poly_mul(self.ring, &self.restrict(f, tau), &self.restrict(g, tau));
            for (e, c) in prod {
                let w: usize = e.iter().map(|&x| x as usize).sum();
                by_degree.entry(w).or_insert_with(|| vec![Polynomial::new(); maximal.len()])[k].insert(e, c);
            }
        }
        for (w, targets) in by_degree {
            let basis = self.basis_of_degree(2 * w);
            let mut rows: Vec<(usize, Exponents)> = Vec::new();
            for &tau in maximal {
                for m in &basis {
                    if self.poset.le(m.top, tau) {
                        rows.push((tau as usize, m.exps.clone()));
                    }
                }
            }
            rows.sort();
            rows.dedup();
            let a = Matrix::from_fn(rows.len(), basis.len(), |r, j| {
                let (tau, e) = &rows[r];
                if *e == basis[j].exps && self.poset.le(basis[j].top, *tau as u32) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            });
            let mut rhs = vec![BigRational::zero(); rows.len()];
            for (poly, &tau) in targets.iter().zip(maximal) {
                for (e, c) in poly {
                    match rows.binary_search(&(tau as usize, e.clone())) {
                        Ok(r) => rhs[r] = c.clone(),
                        Err(_) => return Err(FaceRingError::Inconsistent(2 * w)),
                    }
                }
            }
            let field = if self.ring.is_field() { self.ring } else { CoefficientRing::Rationals };
            let a = ExactMatrix::new(field, a).expect("0/1 matrix");
            if exactalg::rank(&a) != basis.len() {
                return Err(FaceRingError::Inconsistent(2 * w));
            }
            let x = exactalg::solve(&a, &rhs).expect("dimensions agree").ok_or(FaceRingError::Inconsistent(2 * w))?;
            for (m, c) in basis.into_iter().zip(x) {
                out.add_term(self.ring, m, &c);
            }
        }
        Ok(out)
    }

    /// `φ̃*(f)` for a target that is a simplicial complex: substitute
    /// `t_v ↦ Σ_{v'} â_{vv'} t_{v'}` and multiply out in `self`.
    ///
    /// `a_hat` has one row per target vertex and one column per source vertex.
    pub fn pullback_by_vertices(&self, target: &FaceRing, a_hat: &IntMatrix, f: &FaceRingElement) -> FaceRingElement {
        let images: Vec<FaceRingElement> = (0..target.num_vertices()).map(|v| self.linear(a_hat.row(v))).collect();
        let mut out = FaceRingElement::zero();
        for (m, c) in &f.terms {
            let mut acc = self.scalar(c);
            for (v, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = self.multiply(&acc, &images[v]);
                }
            }
            out = self.add(&out, &acc);
        }
        out
    }

    /// `φ̃*(f)` for an arbitrary target poset: on each maximal source simplex
    /// `σ'` restrict `f` to `ν(σ')`, substitute the vertex formula over
    /// `V(σ')`, and reassemble standard monomials from the restrictions.
    ///
    /// `nu` maps every source element to a target element.
    pub fn pullback_general(
        &self,
        target: &FaceRing,
        a_hat: &IntMatrix,
        nu: &[u32],
        f: &FaceRingElement,
    ) -> Result<FaceRingElement, FaceRingError> {
        if nu.len() != self.poset.len() {
            return Err(FaceRingError::BadSimplexMap);
        }
        let mut out: BTreeMap<Monomial, (BigRational, usize)> = BTreeMap::new();
        for &sigma in self.poset.maximal() {
            let smask = self.poset.mask(sigma);
            let restricted = target.restrict(f, nu[sigma as usize]);
            let mut poly = Polynomial::new();
            for (e, c) in &restricted {
                let mut acc: Polynomial = [(vec![0u32; self.num_vertices()].into(), c.clone())].into();
                for (v, &k) in e.iter().enumerate() {
                    let lin: Polynomial = mask_indices(smask)
                        .filter(|&w| !a_hat[(v, w)].is_zero())
                        .map(|w| {
                            let mut x = vec![0u32; self.num_vertices()];
                            x[w] = 1;
                            (x.into(), BigRational::from_integer(a_hat[(v, w)].clone()))
                        })
                        .collect();
                    for _ in 0..k {
                        acc = poly_mul(self.ring, &acc, &lin);
                    }
                }
                for (x, c) in acc {
                    add_poly_term(self.ring, &mut poly, x, &c);
                }
            }
            for (e, c) in poly {
                let top = self.poset.face(sigma, support(&e)).expect("support inside the simplex");
                let m = Monomial { top, exps: e };
                match out.get_mut(&m) {
                    Some((prev, _)) if *prev != c => return Err(FaceRingError::Inconsistent(m.degree())),
                    Some((_, seen)) => *seen += 1,
                    None => {
                        out.insert(m, (c, 1));
                    }
                }
            }
        }
        // Each monomial must be produced by every maximal simplex above its top.
        for (m, (_, seen)) in &out {
            if *seen != self.poset.maximal_above(m.top).len() {
                return Err(FaceRingError::Inconsistent(m.degree()));
            }
        }
        let terms = out.into_iter().map(|(m, (c, _))| (m, c)).collect();
        Ok(FaceRingElement { terms })
    }

    /// Dispatches to [`pullback_by_vertices`](Self::pullback_by_vertices)
    /// when the target is a simplicial complex.
    pub fn pullback(
        &self,
        target: &FaceRing,
        a_hat: &IntMatrix,
        nu: &[u32],
        f: &FaceRingElement,
    ) -> Result<FaceRingElement, FaceRingError> {
        if target.poset.is_complex() {
            Ok(self.pullback_by_vertices(target, a_hat, f))
        } else {
            self.pullback_general(target, a_hat, nu, f)
        }
    }

    /// The coefficient of the standard monomial `m` in `φ̃*(t_τ)`, counted
    /// directly: zero unless `τ ≤ ν(top m)`, otherwise the sum over maps
    /// `j: V(τ) → V(top m)` hitting every vertex `v'` exactly `e_{v'}` times
    /// of `∏_v â_{v j(v)}`.
    pub fn pullback_coefficient(
        &self,
        target: &FaceRing,
        a_hat: &IntMatrix,
        nu: &[u32],
        tau: u32,
        m: &Monomial,
    ) -> BigInt {
        if !target.poset.le(tau, nu[m.top as usize]) {
            return BigInt::zero();
        }
        let tverts: Vec<usize> = mask_indices(target.poset.mask(tau)).collect();
        let mut remaining = m.exps.to_vec();
        count_maps(a_hat, &tverts, &mut remaining)
    }
}

fn count_maps(a_hat: &IntMatrix, tverts: &[usize], remaining: &mut [u32]) -> BigInt {
    let Some((&v, rest)) = tverts.split_first() else {
        return if remaining.iter().all(|&e| e == 0) { BigInt::one() } else { BigInt::zero() };
    };
    let mut total = BigInt::zero();
    for w in 0..remaining.len() {
        if remaining[w] == 0 || a_hat[(v, w)].is_zero() {
            continue;
        }
        remaining[w] -= 1;
        total += &a_hat[(v, w)] * count_maps(a_hat, rest, remaining);
        remaining[w] += 1;
    }
    total
}

/// Calls `emit` with every exponent vector that is positive exactly on
/// `verts` and sums to `w`.
fn compositions(w: usize, verts: &[usize], k: usize, exps: &mut Vec<u32>, emit: &mut impl FnMut(Vec<u32>)) {
    if k == verts.len() {
        if w == 0 {
            emit(exps.clone());
        }
        return;
    }
    let left = verts.len() - k - 1;
    if w < left + 1 {
        return;
    }
    for e in 1..=(w - left) {
        exps[verts[k]] = e as u32;
        compositions(w - e, verts, k + 1, exps, emit);
    }
    exps[verts[k]] = 0;
}

fn add_poly_term(ring: CoefficientRing, p: &mut Polynomial, e: Exponents, c: &BigRational) {
    let s = ring.normalize(&(p.get(&e).cloned().unwrap_or_else(BigRational::zero) + c));
    if s.is_zero() {
        p.remove(&e);
    } else {
        p.insert(e, s);
    }
}

pub fn poly_mul(ring: CoefficientRing, a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Exponents = e1.iter().zip(e2.iter()).map(|(x, y)| x + y).collect();
            add_poly_term(ring, &mut out, e, &(c1 * c2));
        }
    }
    out
}

/// Joins `(coefficient, word)` pairs as `w1 - 2 w2 + 1/2 w3`.
pub fn format_sum<'a>(terms: impl Iterator<Item = (&'a BigRational, String)>) -> String {
    let mut out = String::new();
    for (c, w) in terms {
        let negative = c < &BigRational::zero();
        let abs = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if w == "1" {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&w);
        } else {
            out.push_str(&format!("{abs} {w}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::VertexSet;

    fn ring_of(facets: &[Vec<usize>], n: usize) -> FaceRing {
        let p = SimplicialPoset::from_facets(VertexSet::numbered(n), facets).unwrap();
        FaceRing::new(Arc::new(p), CoefficientRing::Rationals)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn two_points_basis_and_products() {
        let r = ring_of(&[vec![0], vec![1]], 2);
        assert_eq!(r.basis_of_degree(0).len(), 1);
        let b2 = r.basis_of_degree(2);
        assert_eq!(b2.len(), 2);
        let tv = r.vertex(0);
        let tw = r.vertex(1);
        assert!(r.multiply(&tv, &tw).is_zero());
        let tv2 = r.multiply(&tv, &tv);
        assert_eq!(tv2.len(), 1);
        assert_eq!(tv2.degree(), Some(4));
        assert_eq!(r.multiply(&r.one(), &tv), tv);
    }

    #[test]
    fn edge_degree_four() {
        let r = ring_of(&[vec![0, 1]], 2);
        let b = r.basis_of_degree(4);
        // t₀², t₁², t₀t₁ (top = the edge)
        assert_eq!(b.len(), 3);
        let edge = r.poset().simplex(0b11).unwrap();
        assert!(b.iter().any(|m| m.top() == edge && m.exps() == [1, 1]));
        assert_eq!(r.multiply(&r.vertex(0), &r.vertex(1)), r.generator(edge));
    }

    #[test]
    fn restriction_rule() {
        let r = ring_of(&[vec![0, 1], vec![1, 2]], 3);
        let v0 = r.poset().simplex(0b001).unwrap();
        let e01 = r.poset().simplex(0b011).unwrap();
        let e12 = r.poset().simplex(0b110).unwrap();
        let t0 = r.vertex(0);
        assert_eq!(r.restrict(&t0, v0).len(), 1);
        assert!(r.restrict(&t0, e12).is_empty());
        // t_{σ₁} t_{σ₂} with σ₁ = {0} < σ₂ = {0,1}
        let prod = r.multiply(&r.generator(v0), &r.generator(e01));
        let res = r.restrict(&prod, e01);
        assert_eq!(res.len(), 1);
        assert_eq!(res.keys().next().unwrap().as_ref(), &[2, 1, 0]);
        let chain = prod.terms().keys().next().unwrap().chain(r.poset());
        assert_eq!(chain, vec![(v0, 1), (e01, 1)]);
    }

    fn two_edges() -> FaceRing {
        let masks = vec![0, 0b01, 0b10, 0b11, 0b11];
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)];
        let p = SimplicialPoset::new(VertexSet::numbered(2), masks, &covers).unwrap();
        FaceRing::new(Arc::new(p), CoefficientRing::Rationals)
    }

    #[test]
    fn poset_product_splits_over_tops() {
        let r = two_edges();
        let prod = r.multiply(&r.vertex(0), &r.vertex(1));
        // t₀t₁ = t_{e₁} + t_{e₂}
        assert_eq!(prod.len(), 2);
        assert_eq!(r.multiply_by_restriction(&r.vertex(0), &r.vertex(1)).unwrap(), prod);
        assert_eq!(r.basis_of_degree(4).len(), 4);
    }

    #[test]
    fn pullback_paths_agree_on_power_map() {
        let r = ring_of(&[vec![0], vec![1]], 2);
        let a_hat = crate::exactalg::int_matrix(&[&[2, 0], &[0, 2]]);
        let nu: Vec<u32> = (0..r.poset().len() as u32).collect();
        let tv = r.vertex(0);
        let img = r.pullback(&r, &a_hat, &nu, &tv).unwrap();
        assert_eq!(img, r.scale(&tv, &q(2)));
        assert_eq!(r.pullback_general(&r, &a_hat, &nu, &tv).unwrap(), img);
        assert_eq!(r.pullback(&r, &a_hat, &nu, &r.one()).unwrap(), r.one());
    }

    #[test]
    fn pullback_coefficients_on_poset() {
        // elements: ∅, v₀, v₁, e₁, e₂
        let r = two_edges();
        let cases = [
            // swap the vertices and the edges
            (crate::exactalg::int_matrix(&[&[0, 2], &[3, 0]]), vec![0, 2, 1, 4, 3]),
            // fold both edges onto e₁
            (crate::exactalg::int_matrix(&[&[2, 0], &[0, 1]]), vec![0, 1, 2, 3, 3]),
        ];
        for (a_hat, nu) in cases {
            for tau in 0..r.poset().len() as u32 {
                let img = r.pullback_general(&r, &a_hat, &nu, &r.generator(tau)).unwrap();
                let deg = 2 * r.poset().rank(tau) as usize;
                for m in r.basis_of_degree(deg) {
                    let c = r.pullback_coefficient(&r, &a_hat, &nu, tau, &m);
                    assert_eq!(img.coefficient(&m), BigRational::from_integer(c), "tau {tau} monomial {m:?}");
                }
            }
        }
    }
}
