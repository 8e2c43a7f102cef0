//! The Koszul complex `Λ(α₁,…,α_n) ⊗ k[Σ]` with its differential, the
//! exterior product and the twisted `*`-product.
//!
//! Exterior words are bit masks over the lattice coordinates (coordinate `i`
//! is bit `i`, zero-based), always kept in increasing order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactalg::CoefficientRing;
use crate::facering::{FaceRing, FaceRingElement, Monomial};
use crate::simplicial::{mask_indices, CharacteristicData};

pub type ExteriorMask = u64;

/// One basis element `α_S ⊗ m`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct KoszulTerm {
    pub ext: ExteriorMask,
    pub mono: Monomial,
}

impl KoszulTerm {
    pub fn exterior_degree(&self) -> usize {
        self.ext.count_ones() as usize
    }

    /// `(−|S|, deg m + 2|S|)`
    pub fn bidegree(&self) -> (i64, usize) {
        let k = self.exterior_degree();
        (-(k as i64), self.mono.degree() + 2 * k)
    }

    pub fn total_degree(&self) -> usize {
        self.exterior_degree() + self.mono.degree()
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct KoszulElement {
    terms: BTreeMap<KoszulTerm, BigRational>,
}

impl KoszulElement {
    pub fn zero() -> Self {
        KoszulElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<KoszulTerm, BigRational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KoszulTerm, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &KoszulTerm) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree if all terms share one.
    pub fn total_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|t| t.total_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, ring: CoefficientRing, t: KoszulTerm, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let s = ring.normalize(&(self.coefficient(&t) + c));
        if s.is_zero() {
            self.terms.remove(&t);
        } else {
            self.terms.insert(t, s);
        }
    }

    /// The part of `self` with exterior degree `k`.
    pub fn exterior_component(&self, k: usize) -> KoszulElement {
        let terms = self.terms.iter().filter(|(t, _)| t.exterior_degree() == k).map(|(t, c)| (t.clone(), c.clone()));
        KoszulElement { terms: terms.collect() }
    }
}

impl fmt::Debug for KoszulElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let word: Vec<String> = mask_indices(t.ext).map(|i| format!("a{}", i + 1)).collect();
                format!("{c}*[{}]{:?}", word.join(""), t.mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree-two face ring elements `q_ij` for `j ≤ i`, each a linear
/// combination of vertex generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    n: usize,
    /// `coeffs[i][j][v]` is the coefficient of `t_v` in `q_ij`, `j ≤ i`.
    coeffs: Vec<Vec<Vec<BigInt>>>,
    elems: Vec<Vec<FaceRingElement>>,
}

impl TwistData {
    /// Builds the twist from integer coefficient vectors indexed as
    /// `coeffs[i][j][v]` for `j ≤ i`.
    pub fn from_coefficients(face: &FaceRing, coeffs: Vec<Vec<Vec<BigInt>>>) -> Self {
        let n = coeffs.len();
        let elems = coeffs.iter().map(|row| row.iter().map(|c| face.linear(c)).collect()).collect();
        TwistData { n, coeffs, elems }
    }

    /// All `q_ij = 0`.
    pub fn zero(face: &FaceRing, n: usize) -> Self {
        let nv = face.num_vertices();
        let coeffs = (0..n).map(|i| vec![vec![BigInt::zero(); nv]; i + 1]).collect();
        Self::from_coefficients(face, coeffs)
    }

    /// `q_ii = Σ_v x_v^i(x_v^i − 1)/2 t_v` and `q_ij = Σ_v x_v^i x_v^j t_v`.
    pub fn canonical(face: &FaceRing, data: &CharacteristicData) -> Self {
        let n = data.lattice_rank();
        let nv = data.num_vertices();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(i + 1);
            for j in 0..=i {
                let c: Vec<BigInt> = (0..nv)
                    .map(|v| {
                        let (xi, xj) = (data.x(v, i), data.x(v, j));
                        if i == j {
                            (xi * (xi - 1u32)).div_floor(&BigInt::from(2))
                        } else {
                            xi * xj
                        }
                    })
                    .collect();
                row.push(c);
            }
            coeffs.push(row);
        }
        Self::from_coefficients(face, coeffs)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `q_ij` for `j ≤ i`.
    pub fn get(&self, i: usize, j: usize) -> &FaceRingElement {
        assert!(j <= i, "twist coefficients are indexed with j ≤ i");
        &self.elems[i][j]
    }

    pub fn coefficients(&self, i: usize, j: usize) -> &[BigInt] {
        &self.coeffs[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.elems.iter().flatten().all(|q| q.is_zero())
    }

    /// True when only the strictly lower entries `j < i` may be nonzero.
    pub fn is_strictly_lower(&self) -> bool {
        (0..self.n).all(|i| self.elems[i][i].is_zero())
    }
}

/// Per-coordinate and per-vertex grading classes. Two indices share a class
/// when some `x_v^i ≠ 0` links vertex `v` and coordinate `i`; the
/// differential respects the resulting multigrading (products need not).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigrading {
    pub coordinate_class: Vec<usize>,
    /// `None` for vertices whose generator vanishes.
    pub vertex_class: Vec<Option<usize>>,
    pub num_classes: usize,
}

impl Multigrading {
    pub fn of(data: &CharacteristicData, face: &FaceRing) -> Self {
        let n = data.lattice_rank();
        let nv = data.num_vertices();
        // union-find over coordinates 0..n and vertices n..n+nv
        let mut parent: Vec<usize> = (0..n + nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let live: Vec<bool> = (0..nv).map(|v| face.poset().vertex_element(v).is_some()).collect();
        for v in (0..nv).filter(|&v| live[v]) {
            for i in 0..n {
                if !data.x(v, i).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, n + v));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = BTreeMap::new();
        let mut class = |p: &mut Vec<usize>, x: usize| {
            let r = find(p, x);
            let next = label.len();
            *label.entry(r).or_insert(next)
        };
        let coordinate_class = (0..n).map(|i| class(&mut parent, i)).collect();
        let vertex_class = (0..nv).map(|v| live[v].then(|| class(&mut parent, n + v))).collect();
        let num_classes = label.len();
        Multigrading { coordinate_class, vertex_class, num_classes }
    }

    pub fn degree(&self, t: &KoszulTerm) -> Vec<u32> {
        let mut out = vec![0u32; self.num_classes];
        for i in mask_indices(t.ext) {
            out[self.coordinate_class[i]] += 1;
        }
        for (v, &e) in t.mono.exps().iter().enumerate() {
            if e > 0 {
                out[self.vertex_class[v].expect("monomials only involve live vertices")] += e;
            }
        }
        out
    }
}

/// Everything needed to compute in `K_Σ`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    data: Arc<CharacteristicData>,
    face: FaceRing,
    twist: TwistData,
    grading: Multigrading,
}

impl KoszulComplex {
    pub fn new(data: Arc<CharacteristicData>, ring: CoefficientRing) -> Self {
        let face = FaceRing::new(data.poset_arc().clone(), ring);
        let twist = TwistData::canonical(&face, &data);
        let grading = Multigrading::of(&data, &face);
        KoszulComplex { data, face, twist, grading }
    }

    pub fn data(&self) -> &CharacteristicData {
        &self.data
    }

    pub fn data_arc(&self) -> &Arc<CharacteristicData> {
        &self.data
    }

    pub fn face_ring(&self) -> &FaceRing {
        &self.face
    }

    pub fn ring(&self) -> CoefficientRing {
        self.face.ring()
    }

    pub fn lattice_rank(&self) -> usize {
        self.data.lattice_rank()
    }

    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    pub fn grading(&self) -> &Multigrading {
        &self.grading
    }

    pub fn term(&self, ext: ExteriorMask, mono: Monomial) -> KoszulTerm {
        KoszulTerm { ext, mono }
    }

    /// `α_S ⊗ 1`.
    pub fn alpha_word(&self, ext: ExteriorMask) -> KoszulElement {
        let mut out = KoszulElement::zero();
        out.add_term(self.ring(), self.term(ext, self.face.unit_monomial()), &BigRational::one());
        out
    }

    /// `α_i ⊗ 1` (zero-based `i`).
    pub fn alpha(&self, i: usize) -> KoszulElement {
        self.alpha_word(1 << i)
    }

    pub fn one(&self) -> KoszulElement {
        self.alpha_word(0)
    }

    /// `α_S ⊗ f`.
    pub fn tensor(&self, ext: ExteriorMask, f: &FaceRingElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (m, c) in f.iter() {
            out.add_term(self.ring(), self.term(ext, m.clone()), c);
        }
        out
    }

    /// `1 ⊗ f`.
    pub fn from_face(&self, f: &FaceRingElement) -> KoszulElement {
        self.tensor(0, f)
    }

    /// `Σ_i c_i α_i ⊗ 1` from integer coefficients.
    pub fn linear_alpha(&self, coeffs: &[i64]) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            out.add_term(
                self.ring(),
                self.term(1 << i, self.face.unit_monomial()),
                &BigRational::from_integer(c.into()),
            );
        }
        out
    }

    pub fn add(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = a.clone();
        for (t, c) in &b.terms {
            out.add_term(self.ring(), t.clone(), c);
        }
        out
    }

    pub fn sub(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = a.clone();
        for (t, c) in &b.terms {
            out.add_term(self.ring(), t.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, a: &KoszulElement, c: &BigRational) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (t, x) in &a.terms {
            out.add_term(self.ring(), t.clone(), &(x * c));
        }
        out
    }

    pub fn scale_int(&self, a: &KoszulElement, c: i64) -> KoszulElement {
        self.scale(a, &BigRational::from_integer(c.into()))
    }

    /// Right module action `z · f`.
    pub fn mul_face(&self, z: &KoszulElement, f: &FaceRingElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (t, c) in &z.terms {
            for (m, d) in f.iter() {
                let cd = c * d;
                for prod in self.face.multiply_monomials(&t.mono, m) {
                    out.add_term(self.ring(), self.term(t.ext, prod), &cd);
                }
            }
        }
        out
    }

    /// `d(α_S ⊗ m) = −Σ_v ι(x_v)(α_S) ⊗ t_v m`, with
    /// `ι(x)(α_{i₁}⋯α_{i_k}) = Σ_s (−1)^{s−1} x^{i_s} α_{i₁}⋯α̂_{i_s}⋯α_{i_k}`.
    pub fn differential(&self, z: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (t, c) in &z.terms {
            self.differential_term(t, c, &mut out);
        }
        out
    }

    pub(crate) fn differential_term(&self, t: &KoszulTerm, c: &BigRational, out: &mut KoszulElement) {
        let poset = self.face.poset();
        for v in 0..self.data.num_vertices() {
            let Some(vel) = poset.vertex_element(v) else { continue };
            let mut coeff_by_ext: Vec<(ExteriorMask, BigInt)> = Vec::new();
            for (s, i) in mask_indices(t.ext).enumerate() {
                let x = self.data.x(v, i);
                if x.is_zero() {
                    continue;
                }
                // −(−1)^s with zero-based s
                let sign: BigInt = if s % 2 == 0 { -x.clone() } else { x.clone() };
                coeff_by_ext.push((t.ext & !(1 << i), sign));
            }
            if coeff_by_ext.is_empty() {
                continue;
            }
            let tv = self.face.generator(vel);
            let tv_mono = tv.terms().keys().next().expect("vertex generator");
            let prods = self.face.multiply_monomials(tv_mono, &t.mono);
            for (ext, k) in coeff_by_ext {
                let kc = c * BigRational::from_integer(k);
                for p in &prods {
                    out.add_term(self.ring(), self.term(ext, p.clone()), &kc);
                }
            }
        }
    }

    /// Exterior product with the face ring factors multiplied.
    pub fn wedge(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (ta, ca) in &a.terms {
            for (tb, cb) in &b.terms {
                if ta.ext & tb.ext != 0 {
                    continue;
                }
                let mut c = ca * cb;
                if shuffle_sign_negative(ta.ext, tb.ext) {
                    c = -c;
                }
                for m in self.face.multiply_monomials(&ta.mono, &tb.mono) {
                    out.add_term(self.ring(), self.term(ta.ext | tb.ext, m), &c);
                }
            }
        }
        out
    }

    /// Twisted product with respect to the canonical twist.
    pub fn star(&self, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        self.star_with(&self.twist, a, b)
    }

    /// Twisted product for an arbitrary twist: normal ordering with
    /// `α_a α_b = −α_b α_a + q_ab` for `a > b` and `α_a α_a = q_aa`, the face
    /// ring being central.
    pub fn star_with(&self, twist: &TwistData, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        let mut cache: BTreeMap<(ExteriorMask, ExteriorMask), Clifford> = BTreeMap::new();
        for (ta, ca) in &a.terms {
            for (tb, cb) in &b.terms {
                let cliff =
                    cache.entry((ta.ext, tb.ext)).or_insert_with(|| self.clifford_product(twist, ta.ext, tb.ext));
                let c = ca * cb;
                let fg = self.face.multiply_monomials(&ta.mono, &tb.mono);
                for (ext, coeff) in cliff.iter() {
                    for (qm, qc) in coeff.iter() {
                        let cq = &c * qc;
                        for m in &fg {
                            for prod in self.face.multiply_monomials(qm, m) {
                                out.add_term(self.ring(), self.term(*ext, prod), &cq);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// `α_S * α_T` as a sum of sorted words with face ring coefficients.
    fn clifford_product(&self, twist: &TwistData, s: ExteriorMask, t: ExteriorMask) -> Clifford {
        let mut acc: Clifford = BTreeMap::new();
        acc.insert(s, self.face.one());
        for a in mask_indices(t) {
            let mut next: Clifford = BTreeMap::new();
            for (w, f) in &acc {
                for (w2, g) in self.right_multiply(twist, *w, a) {
                    let fg = self.face.multiply(f, &g);
                    add_clifford(&self.face, &mut next, w2, &fg);
                }
            }
            acc = next;
        }
        acc
    }

    /// `α_W · α_a` for a sorted word `W`.
    fn right_multiply(&self, twist: &TwistData, w: ExteriorMask, a: usize) -> Vec<(ExteriorMask, FaceRingElement)> {
        if w == 0 {
            return vec![(1 << a, self.face.one())];
        }
        let last = 63 - w.leading_zeros() as usize;
        let rest = w & !(1 << last);
        if last < a {
            return vec![(w | 1 << a, self.face.one())];
        }
        if last == a {
            return vec![(rest, twist.get(a, a).clone())];
        }
        // W' α_last α_a = −W' α_a α_last + q_{last,a} W'
        let mut out: Clifford = BTreeMap::new();
        for (w2, f) in self.right_multiply(twist, rest, a) {
            let neg = self.face.scale(&f, &-BigRational::one());
            add_clifford(&self.face, &mut out, w2 | 1 << last, &neg);
        }
        add_clifford(&self.face, &mut out, rest, twist.get(last, a));
        out.into_iter().collect()
    }

    /// Contraction `ι(e_i)` against the `i`-th basis vector of the lattice:
    /// `α_{i₁}⋯α_{i_k} ↦ Σ_s (−1)^{s−1} δ_{i,i_s} α_{…î_s…}`.
    pub fn contract_basis(&self, i: usize, z: &KoszulElement) -> KoszulElement {
        let mut out = KoszulElement::zero();
        for (t, c) in &z.terms {
            if t.ext >> i & 1 == 0 {
                continue;
            }
            let pos = (t.ext & ((1u64 << i) - 1)).count_ones();
            let c = if pos.is_multiple_of(2) { c.clone() } else { -c };
            out.add_term(self.ring(), self.term(t.ext & !(1 << i), t.mono.clone()), &c);
        }
        out
    }

    /// `a1a3 t_v - 2 t_w`, with exterior generators numbered from 1.
    pub fn format(&self, z: &KoszulElement) -> String {
        crate::facering::format_sum(z.terms.iter().map(|(t, c)| {
            let word: String = mask_indices(t.ext).map(|i| format!("a{}", i + 1)).collect();
            let mono = self.face.format_monomial(&t.mono);
            let w = match (word.is_empty(), mono == "1") {
                (true, _) => mono,
                (false, true) => word,
                (false, false) => format!("{word} {mono}"),
            };
            (c, w)
        }))
    }

    /// Basis of the piece of total degree `d`: exterior degree ascending,
    /// then exterior word, then monomial.
    pub fn total_degree_basis(&self, d: usize) -> Vec<KoszulTerm> {
        let n = self.lattice_rank();
        let mut out = Vec::new();
        for k in 0..=n.min(d) {
            if (d - k) % 2 == 1 {
                continue;
            }
            let monos = self.face.basis_of_degree(d - k);
            for ext in subsets_of_size(n, k) {
                for m in &monos {
                    out.push(self.term(ext, m.clone()));
                }
            }
        }
        out
    }

    /// Basis of exterior degree `k` and internal degree `2j`, i.e. monomials
    /// of weight `j − k`.
    pub fn bidegree_basis(&self, k: usize, j: usize) -> Vec<KoszulTerm> {
        if k > j || k > self.lattice_rank() {
            return Vec::new();
        }
        let monos = self.face.basis_of_degree(2 * (j - k));
        let mut out = Vec::new();
        for ext in subsets_of_size(self.lattice_rank(), k) {
            for m in &monos {
                out.push(self.term(ext, m.clone()));
            }
        }
        out
    }
}

type Clifford = BTreeMap<ExteriorMask, FaceRingElement>;

fn add_clifford(face: &FaceRing, acc: &mut Clifford, w: ExteriorMask, f: &FaceRingElement) {
    if f.is_zero() {
        return;
    }
    let sum = match acc.get(&w) {
        Some(prev) => face.add(prev, f),
        None => f.clone(),
    };
    if sum.is_zero() {
        acc.remove(&w);
    } else {
        acc.insert(w, sum);
    }
}

/// Sign of the shuffle sorting `α_S α_T` (disjoint): negative when the
/// number of pairs `s > t` is odd.
pub fn shuffle_sign_negative(s: ExteriorMask, t: ExteriorMask) -> bool {
    let mut inversions = 0u32;
    for j in mask_indices(t) {
        inversions += (s >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// Masks with `k` bits among the low `n`, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<ExteriorMask> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: u128 = (1u128 << k) - 1;
    let limit: u128 = 1u128 << n;
    while m < limit {
        out.push(m as u64);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn example() -> KoszulComplex {
        KoszulComplex::new(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals)
    }

    #[test]
    fn twist_of_the_example() {
        let k = example();
        let f = k.face_ring();
        // vertices: v, w, e1, e2
        let tv = f.vertex(0);
        let tw = f.vertex(1);
        for i in 0..3 {
            assert_eq!(k.twist().get(i, i), &tw);
            for j in 0..i {
                assert_eq!(k.twist().get(i, j), &f.add(&tv, &tw));
            }
        }
    }

    #[test]
    fn twist_vanishes_on_moment_angle_data() {
        let k = KoszulComplex::new(Arc::new(catalog::four_cycle()), CoefficientRing::Integers);
        assert!(k.twist().is_zero());
    }

    #[test]
    fn differential_examples() {
        let k = example();
        let f = k.face_ring();
        assert!(k.differential(&k.from_face(&f.vertex(0))).is_zero());
        let d = k.differential(&k.alpha(0));
        assert_eq!(d, k.from_face(&f.sub(&f.vertex(1), &f.vertex(0))));
        assert!(k.differential(&k.linear_alpha(&[1, 0, -1])).is_zero());
    }

    #[test]
    fn products_of_generators() {
        let k = example();
        let f = k.face_ring();
        assert_eq!(k.wedge(&k.alpha(0), &k.alpha(1)), k.alpha_word(0b011));
        assert_eq!(k.wedge(&k.alpha(1), &k.alpha(0)), k.scale_int(&k.alpha_word(0b011), -1));
        assert!(k.wedge(&k.tensor(1, &f.vertex(0)), &k.alpha(0)).is_zero());
        assert_eq!(k.star(&k.alpha(2), &k.alpha(2)), k.from_face(&f.vertex(1)));
        assert_eq!(k.star(&k.alpha(0), &k.alpha(1)), k.alpha_word(0b011));
        // (α₁−α₃)*(α₂−α₃) = (α₁α₂ + α₂α₃ − α₁α₃) ⊗ 1 − 1 ⊗ t_v
        let a1 = k.linear_alpha(&[1, 0, -1]);
        let a2 = k.linear_alpha(&[0, 1, -1]);
        let b = k.add(&k.sub(&k.alpha_word(0b011), &k.alpha_word(0b101)), &k.alpha_word(0b110));
        let expected = k.sub(&b, &k.from_face(&f.vertex(0)));
        assert_eq!(k.star(&a1, &a2), expected);
    }

    #[test]
    fn anticommutator() {
        let k = example();
        for a in 0..3 {
            for b in 0..a {
                let s = k.add(&k.star(&k.alpha(a), &k.alpha(b)), &k.star(&k.alpha(b), &k.alpha(a)));
                assert_eq!(s, k.from_face(k.twist().get(a, b)));
            }
        }
    }

    #[test]
    fn bases_in_low_degree() {
        let k = example();
        assert_eq!(k.total_degree_basis(0).len(), 1);
        assert_eq!(k.total_degree_basis(1).len(), 3);
        assert_eq!(k.total_degree_basis(2).len(), 5);
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_of_size(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert_eq!(subsets_of_size(2, 3), Vec::<u64>::new());
        assert_eq!(subsets_of_size(64, 64).len(), 1);
        assert!(!shuffle_sign_negative(0b001, 0b010));
        assert!(shuffle_sign_negative(0b010, 0b001));
    }
}
