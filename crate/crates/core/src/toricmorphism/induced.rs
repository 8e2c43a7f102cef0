use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Lift, MorphismError, MorphismTwist, ToricMorphism};
use crate::exactalg::{self, CoefficientRing, ExactMatrix, Matrix};
use crate::facering::{FaceRing, FaceRingElement, Monomial};
use crate::koszul::{ExteriorMask, KoszulComplex, KoszulElement};
use crate::simplicial::{mask_indices, CharacteristicData};
use crate::torcohomology::{Bidegree, CohomologyClass, TorError, TorTable};

/// The canonical chain map, `Ξ` and `Ξ̂`, all `K_Σ → K_Σ′`, of a toric
/// morphism `Σ′ → Σ`.
pub struct ChainMaps {
    morphism: ToricMorphism,
    lift: Lift,
    hat_q: MorphismTwist,
    source: Arc<KoszulComplex>,
    target: Arc<KoszulComplex>,
    words: Mutex<HashMap<(ExteriorMask, bool), KoszulElement>>,
    faces: Mutex<HashMap<Monomial, FaceRingElement>>,
}

impl ChainMaps {
    /// Builds both Koszul complexes over `ring` and the automatic lift.
    pub fn new(morphism: ToricMorphism, ring: CoefficientRing) -> Result<Self, MorphismError> {
        let source = Arc::new(KoszulComplex::new(morphism.source().clone(), ring));
        let target = Arc::new(KoszulComplex::new(morphism.target().clone(), ring));
        Self::with_complexes(morphism, source, target)
    }

    /// Uses existing complexes, for instance those of precomputed tables.
    pub fn with_complexes(
        morphism: ToricMorphism,
        source: Arc<KoszulComplex>,
        target: Arc<KoszulComplex>,
    ) -> Result<Self, MorphismError> {
        let lift = morphism.lift()?;
        Self::with_lift(morphism, lift, source, target)
    }

    pub fn with_lift(
        morphism: ToricMorphism,
        lift: Lift,
        source: Arc<KoszulComplex>,
        target: Arc<KoszulComplex>,
    ) -> Result<Self, MorphismError> {
        if source.ring() != target.ring() {
            return Err(MorphismError::RingMismatch);
        }
        let same = |k: &KoszulComplex, d: &Arc<CharacteristicData>| Arc::ptr_eq(k.data_arc(), d) || k.data() == &**d;
        if !same(&source, morphism.source()) || !same(&target, morphism.target()) {
            return Err(MorphismError::Invalid(Default::default()));
        }
        let hat_q = morphism.hat_q(&lift, source.face_ring());
        Ok(ChainMaps {
            morphism,
            lift,
            hat_q,
            source,
            target,
            words: Mutex::new(HashMap::new()),
            faces: Mutex::new(HashMap::new()),
        })
    }

    pub fn morphism(&self) -> &ToricMorphism {
        &self.morphism
    }

    pub fn lift(&self) -> &Lift {
        &self.lift
    }

    pub fn hat_q(&self) -> &MorphismTwist {
        &self.hat_q
    }

    /// The complex of the source poset, where the maps land.
    pub fn source_complex(&self) -> &Arc<KoszulComplex> {
        &self.source
    }

    pub fn target_complex(&self) -> &Arc<KoszulComplex> {
        &self.target
    }

    /// `φ̃*` on the face ring.
    pub fn pullback_face(&self, f: &FaceRingElement) -> Result<FaceRingElement, MorphismError> {
        let (sf, tf) = (self.source.face_ring(), self.target.face_ring());
        let mut out = FaceRingElement::zero();
        for (m, c) in f.iter() {
            let image = self.pullback_monomial(sf, tf, m)?;
            out = sf.add(&out, &sf.scale(&image, c));
        }
        Ok(out)
    }

    fn pullback_monomial(&self, sf: &FaceRing, tf: &FaceRing, m: &Monomial) -> Result<FaceRingElement, MorphismError> {
        if let Some(f) = self.faces.lock().expect("cache lock").get(m) {
            return Ok(f.clone());
        }
        let single = tf.monomial(m.clone(), &BigRational::one());
        let image = sf.pullback(tf, &self.lift.a_hat, self.morphism.simplex_map(), &single)?;
        self.faces.lock().expect("cache lock").insert(m.clone(), image.clone());
        Ok(image)
    }

    /// `φ*(α_{i₁}) ⋯ φ*(α_{i_k})`, multiplied with the twisted product of
    /// the source when `twisted` is set and with the exterior product
    /// otherwise.
    fn word_image(&self, ext: ExteriorMask, twisted: bool) -> KoszulElement {
        if let Some(w) = self.words.lock().expect("cache lock").get(&(ext, twisted)) {
            return w.clone();
        }
        let mut acc = self.source.one();
        for i in mask_indices(ext) {
            let a = self.source.linear_alpha(&self.morphism.pullback_alpha(i));
            acc = if twisted { self.source.star(&acc, &a) } else { self.source.wedge(&acc, &a) };
        }
        self.words.lock().expect("cache lock").insert((ext, twisted), acc.clone());
        acc
    }

    fn apply_words(&self, z: &KoszulElement, twisted: bool) -> Result<KoszulElement, MorphismError> {
        let (sf, tf) = (self.source.face_ring(), self.target.face_ring());
        let mut out = KoszulElement::zero();
        for (t, c) in z.iter() {
            let word = self.word_image(t.ext, twisted);
            let face = sf.scale(&self.pullback_monomial(sf, tf, &t.mono)?, c);
            out = self.source.add(&out, &self.source.mul_face(&word, &face));
        }
        Ok(out)
    }

    /// The canonical chain map `α⊗f ↦ φ*(α) ⊗ φ̃*(f)`.
    pub fn canonical(&self, z: &KoszulElement) -> Result<KoszulElement, MorphismError> {
        self.apply_words(z, false)
    }

    /// `Ξ(α_{i₁}⋯α_{i_k} ⊗ f) = φ*(α_{i₁}) * ⋯ * φ*(α_{i_k}) * φ̃*(f)`.
    pub fn xi(&self, z: &KoszulElement) -> Result<KoszulElement, MorphismError> {
        self.apply_words(z, true)
    }

    /// `Ξ̂(α⊗f) = Ξ(α⊗f) + Σ_{i>j} Ξ(ι(x_i)ι(x_j)α ⊗ f)·q̂_ij`.
    pub fn hat_xi(&self, z: &KoszulElement) -> Result<KoszulElement, MorphismError> {
        let mut out = self.xi(z)?;
        let n = self.target.lattice_rank();
        for i in 0..n {
            for j in 0..i {
                let q = self.hat_q.get(i, j);
                if q.is_zero() {
                    continue;
                }
                let contracted = self.target.contract_basis(i, &self.target.contract_basis(j, z));
                if contracted.is_zero() {
                    continue;
                }
                let image = self.source.mul_face(&self.xi(&contracted)?, q);
                out = self.source.add(&out, &image);
            }
        }
        Ok(out)
    }
}

/// A map between cohomologies given per total degree by a matrix whose
/// columns are the images of the domain generators in codomain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub matrices: BTreeMap<usize, Matrix<BigRational>>,
}

impl InducedMap {
    pub fn matrix(&self, d: usize) -> Option<&Matrix<BigRational>> {
        self.matrices.get(&d)
    }

    pub fn apply(&self, codomain: &TorTable, x: &CohomologyClass) -> CohomologyClass {
        let Some(m) = self.matrices.get(&x.degree) else {
            return codomain.zero_class(x.degree);
        };
        let mut out = codomain.zero_class(x.degree);
        for (col, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = CohomologyClass { degree: x.degree, coords: m.column(col) };
            out = codomain.add_classes(&out, &codomain.scale_class(&image, c));
        }
        out
    }

    /// The part of the matrix between generators of bidegree `b`.
    pub fn bidegree_block(&self, domain: &TorTable, codomain: &TorTable, b: Bidegree) -> Matrix<BigRational> {
        let d = crate::torcohomology::total_degree_of(b);
        let pick = |t: &TorTable| -> Vec<usize> {
            t.generators(d).iter().enumerate().filter(|(_, g)| g.bidegree == b).map(|(i, _)| i).collect()
        };
        let (cols, rows) = (pick(domain), pick(codomain));
        match self.matrices.get(&d) {
            Some(m) => Matrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])].clone()),
            None => Matrix::zeros(rows.len(), cols.len()),
        }
    }

    /// `self ∘ other`, reduced in `codomain`.
    pub fn compose(&self, other: &InducedMap, codomain: &TorTable) -> InducedMap {
        let mut matrices = BTreeMap::new();
        for (d, b) in &other.matrices {
            let Some(a) = self.matrices.get(d) else { continue };
            let mut prod = a.mul(b);
            for c in 0..prod.cols() {
                let col = CohomologyClass { degree: *d, coords: prod.column(c) };
                let reduced = codomain.add_classes(&col, &codomain.zero_class(*d));
                for (r, x) in reduced.coords.into_iter().enumerate() {
                    prod[(r, c)] = x;
                }
            }
            matrices.insert(*d, prod);
        }
        InducedMap { matrices }
    }
}

fn induced_map(
    domain: &TorTable,
    codomain: &TorTable,
    chain: impl Fn(&KoszulElement) -> Result<KoszulElement, MorphismError> + Sync,
) -> Result<InducedMap, MorphismError> {
    let mut matrices = BTreeMap::new();
    for d in domain.degrees() {
        let gens = domain.generators(d);
        if d > codomain.max_total_degree() {
            return Err(TorError::DegreeBeyondBound { degree: d }.into());
        }
        let columns: Vec<Vec<BigRational>> = gens
            .par_iter()
            .map(|g| Ok(codomain.reduce_in_degree(&chain(&g.representative)?, d)?.coords))
            .collect::<Result<_, MorphismError>>()?;
        let rows = codomain.generators(d).len();
        matrices.insert(d, Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()));
    }
    Ok(InducedMap { matrices })
}

/// `Tor(φ)`, induced by the canonical chain map, from the table of the
/// target poset to the table of the source poset. Bidegrees are preserved.
pub fn tor_phi(maps: &ChainMaps, domain: &TorTable, codomain: &TorTable) -> Result<InducedMap, MorphismError> {
    induced_map(domain, codomain, |z| maps.canonical(z))
}

/// `T̂or(φ)`, induced by `Ξ̂`. Only total degree is preserved.
pub fn hat_tor_phi(maps: &ChainMaps, domain: &TorTable, codomain: &TorTable) -> Result<InducedMap, MorphismError> {
    induced_map(domain, codomain, |z| maps.hat_xi(z))
}

/// `Ω(α⊗f) = α⊗f + ½ Σ_{i>j} ι(x_i)ι(x_j)α ⊗ f·q_ij` on the chain level.
pub fn omega_chain(complex: &KoszulComplex, z: &KoszulElement) -> Result<KoszulElement, TorError> {
    let half = complex.ring().half().ok_or(TorError::TwoNotInvertible(complex.ring()))?;
    let mut out = z.clone();
    let n = complex.lattice_rank();
    for i in 0..n {
        for j in 0..i {
            let q = complex.twist().get(i, j);
            if q.is_zero() {
                continue;
            }
            let c = complex.contract_basis(i, &complex.contract_basis(j, z));
            if !c.is_zero() {
                out = complex.add(&out, &complex.scale(&complex.mul_face(&c, q), &half));
            }
        }
    }
    Ok(out)
}

/// `Ω*` on cohomology. It carries twisted products to untwisted ones.
pub fn omega(table: &TorTable) -> Result<InducedMap, MorphismError> {
    let k = table.complex();
    if !k.ring().two_is_invertible() {
        return Err(TorError::TwoNotInvertible(k.ring()).into());
    }
    induced_map(table, table, |z| Ok(omega_chain(k, z)?))
}

/// Whether `Ω_{Σ′} ∘ T̂or(φ) = Tor(φ) ∘ Ω_Σ` in every computed degree.
pub fn omega_conjugation(maps: &ChainMaps, domain: &TorTable, codomain: &TorTable) -> Result<bool, MorphismError> {
    let hat = hat_tor_phi(maps, domain, codomain)?;
    let plain = tor_phi(maps, domain, codomain)?;
    let left = omega(codomain)?.compose(&hat, codomain);
    let right = plain.compose(&omega(domain)?, codomain);
    Ok(left == right)
}

/// The projection from the moment-angle data on the same vertices:
/// lattice map `chi`, identity on simplices.
pub fn cox_projection(data: Arc<CharacteristicData>) -> Result<ToricMorphism, MorphismError> {
    let source = Arc::new(CharacteristicData::moment_angle(data.poset_arc().clone()));
    let nu = (0..data.poset().len() as u32).collect();
    let chi = data.chi().clone();
    ToricMorphism::new(source, data, chi, nu)
}

/// Generators of the kernel of `Tor(κ)` for the projection `κ` from the
/// moment-angle data, per total degree, in class coordinates of `table`.
/// Over the integers this is a generating set, not necessarily a basis.
pub fn ideal_i_sigma(
    table: &TorTable,
    moment_angle_table: &TorTable,
) -> Result<BTreeMap<usize, Vec<Vec<BigRational>>>, MorphismError> {
    let data = table.complex().data_arc().clone();
    let maps = ChainMaps::with_complexes(
        cox_projection(data)?,
        moment_angle_table.complex_arc().clone(),
        table.complex_arc().clone(),
    )?;
    let map = tor_phi(&maps, table, moment_angle_table)?;
    let ring = table.ring();
    let mut out = BTreeMap::new();
    for d in table.degrees() {
        let m = &map.matrices[&d];
        let orders: Vec<BigInt> = moment_angle_table.generators(d).iter().map(|g| g.order.clone()).collect();
        let basis = kernel_modulo(ring, m, &orders);
        let basis: Vec<Vec<BigRational>> = basis
            .into_iter()
            .map(|v| {
                let c = CohomologyClass { degree: d, coords: v };
                table.add_classes(&c, &table.zero_class(d)).coords
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        out.insert(d, basis);
    }
    Ok(out)
}

/// Solutions `x` of `m·x ≡ 0`, where row `r` is taken modulo `orders[r]`
/// when that is nonzero.
fn kernel_modulo(ring: CoefficientRing, m: &Matrix<BigRational>, orders: &[BigInt]) -> Vec<Vec<BigRational>> {
    let torsion_rows: Vec<usize> = (0..orders.len()).filter(|&r| !orders[r].is_zero()).collect();
    let cols = m.cols();
    let aug = Matrix::from_fn(m.rows(), cols + torsion_rows.len(), |r, c| {
        if c < cols {
            m[(r, c)].clone()
        } else if torsion_rows[c - cols] == r {
            BigRational::from_integer(orders[r].clone())
        } else {
            BigRational::zero()
        }
    });
    let exact = ExactMatrix::new(ring, aug).expect("integral entries");
    exactalg::kernel_basis(&exact).into_iter().map(|v| v[..cols].to_vec()).collect()
}

/// Whether `x` lies in the span of `basis` (torsion coordinates modulo
/// their orders).
pub fn ideal_contains(table: &TorTable, basis: &[Vec<BigRational>], x: &CohomologyClass) -> bool {
    if x.is_zero() {
        return true;
    }
    let gens = table.generators(x.degree);
    let torsion: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].order.is_zero()).collect();
    let rows = gens.len();
    let m = Matrix::from_fn(rows, basis.len() + torsion.len(), |r, c| {
        if c < basis.len() {
            basis[c][r].clone()
        } else if torsion[c - basis.len()] == r {
            BigRational::from_integer(gens[r].order.clone())
        } else {
            BigRational::zero()
        }
    });
    let exact = ExactMatrix::new(table.ring(), m).expect("integral entries");
    matches!(exactalg::solve(&exact, &x.coords), Ok(Some(_)))
}

/// `x ⊗ y` in the Koszul complex of a join, `x` from the first factor.
pub fn join_tensor(
    join: &KoszulComplex,
    left: &KoszulComplex,
    right: &KoszulComplex,
    x: &KoszulElement,
    y: &KoszulElement,
) -> KoszulElement {
    let (lp, rp) = (left.face_ring().poset(), right.face_ring().poset());
    let n1 = left.lattice_rank();
    let mut out = KoszulElement::zero();
    for (s, a) in x.iter() {
        for (t, b) in y.iter() {
            let top = lp.join_element(rp, s.mono.top(), t.mono.top());
            let exps: Vec<u32> = s.mono.exps().iter().chain(t.mono.exps()).copied().collect();
            let mono = Monomial::new(join.face_ring().poset(), top, exps.into());
            out.add_term(join.ring(), join.term(s.ext | (t.ext << n1), mono), &(a * b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::torcohomology::ProductKind;

    fn tables(m: &ToricMorphism, ring: CoefficientRing) -> (ChainMaps, TorTable, TorTable) {
        let maps = ChainMaps::new(m.clone(), ring).unwrap();
        let src = TorTable::for_complex(maps.source_complex().clone(), 5);
        let tgt = TorTable::for_complex(maps.target_complex().clone(), 5);
        (maps, tgt, src)
    }

    #[test]
    fn identity_induces_identity() {
        let m = ToricMorphism::identity(Arc::new(catalog::cstar2_p1()));
        let (maps, dom, cod) = tables(&m, CoefficientRing::Rationals);
        let k = maps.target_complex();
        let z = k.linear_alpha(&[1, 2, 3]);
        assert_eq!(maps.xi(&z).unwrap(), z);
        for map in [tor_phi(&maps, &dom, &cod).unwrap(), hat_tor_phi(&maps, &dom, &cod).unwrap()] {
            for (d, mat) in &map.matrices {
                assert_eq!(mat, &Matrix::identity(dom.generators(*d).len()));
            }
        }
    }

    #[test]
    fn power_map_scales_by_degree() {
        let data = Arc::new(catalog::cstar2_p1());
        let m = ToricMorphism::power_map(data, 2);
        let maps = ChainMaps::new(m, CoefficientRing::Rationals).unwrap();
        let k = maps.target_complex();
        let f = k.face_ring();
        let z = k.tensor(0b001, &f.multiply(&f.vertex(0), &f.vertex(0)));
        // k + l = 1 + 2
        assert_eq!(maps.xi(&z).unwrap(), k.scale_int(&z, 8));
    }

    #[test]
    fn chain_maps_commute_with_differentials() {
        let m = catalog::basis_change();
        let maps = ChainMaps::new(m, CoefficientRing::Rationals).unwrap();
        let (s, t) = (maps.source_complex().clone(), maps.target_complex().clone());
        for d in 0..5 {
            for term in t.total_degree_basis(d) {
                let z = t.tensor(term.ext, &t.face_ring().monomial(term.mono.clone(), &BigRational::one()));
                for map in [ChainMaps::canonical, ChainMaps::xi, ChainMaps::hat_xi] {
                    let lhs = s.differential(&map(&maps, &z).unwrap());
                    let rhs = map(&maps, &t.differential(&z)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn basis_change_named_classes() {
        let (maps, dom, cod) = tables(&catalog::basis_change(), CoefficientRing::Rationals);
        let (t, s) = (maps.target_complex(), maps.source_complex());
        let b = t.add(&t.sub(&t.alpha_word(0b011), &t.alpha_word(0b101)), &t.alpha_word(0b110));
        let image = cod.reduce(&maps.hat_xi(&b).unwrap()).unwrap();
        let bp = cod.reduce(&s.alpha_word(0b011)).unwrap();
        let cp = cod.reduce(&s.from_face(&s.face_ring().vertex(0))).unwrap();
        assert_eq!(image, cod.add_classes(&bp, &cp));
        let plain = tor_phi(&maps, &dom, &cod).unwrap();
        assert_eq!(plain.apply(&cod, &dom.reduce(&b).unwrap()), bp);
        assert!(omega_conjugation(&maps, &dom, &cod).unwrap());
    }

    #[test]
    fn omega_on_example() {
        let t = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals, None);
        let k = t.complex();
        let b = t.reduce(&k.add(&k.sub(&k.alpha_word(0b011), &k.alpha_word(0b101)), &k.alpha_word(0b110))).unwrap();
        let c = t.reduce(&k.from_face(&k.face_ring().vertex(0))).unwrap();
        let a1 = t.reduce(&k.linear_alpha(&[1, 0, -1])).unwrap();
        let a2 = t.reduce(&k.linear_alpha(&[0, 1, -1])).unwrap();
        let om = omega(&t).unwrap();
        assert_eq!(om.apply(&t, &b), t.add_classes(&b, &c));
        assert_eq!(om.apply(&t, &c), c);
        assert_eq!(om.apply(&t, &a1), a1);
        let tw = t.multiply(ProductKind::Twisted, &a1, &a2).unwrap();
        let un = t.multiply(ProductKind::Untwisted, &om.apply(&t, &a1), &om.apply(&t, &a2)).unwrap();
        assert_eq!(om.apply(&t, &tw), un);
        assert_eq!(un, b);
        let z = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Integers, Some(2));
        assert!(matches!(omega(&z), Err(MorphismError::Tor(TorError::TwoNotInvertible(_)))));
    }

    #[test]
    fn cox_ideal_contains_face_class() {
        let data = Arc::new(catalog::cstar2_p1());
        let t = TorTable::compute(data.clone(), CoefficientRing::Rationals, None);
        let ma = TorTable::compute(
            Arc::new(CharacteristicData::moment_angle(data.poset_arc().clone())),
            CoefficientRing::Rationals,
            None,
        );
        let ideal = ideal_i_sigma(&t, &ma).unwrap();
        let k = t.complex();
        let c = t.reduce(&k.from_face(&k.face_ring().vertex(0))).unwrap();
        assert!(ideal_contains(&t, &ideal[&2], &c));
        assert!(ideal[&0].is_empty());
    }

    #[test]
    fn diagonal_gives_twisted_product() {
        let data = Arc::new(catalog::cstar2_p1());
        let m = ToricMorphism::diagonal(data).unwrap();
        let maps = ChainMaps::new(m, CoefficientRing::Rationals).unwrap();
        let t = TorTable::for_complex(maps.source_complex().clone(), 5);
        let k = maps.source_complex();
        let a1 = k.linear_alpha(&[1, 0, -1]);
        let a2 = k.linear_alpha(&[0, 1, -1]);
        let x = join_tensor(maps.target_complex(), k, k, &a1, &a2);
        assert!(maps.target_complex().differential(&x).is_zero());
        let got = t.reduce(&maps.hat_xi(&x).unwrap()).unwrap();
        assert_eq!(got, t.reduce(&k.star(&a1, &a2)).unwrap());
    }
}
