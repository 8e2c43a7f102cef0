//! Fixtures shared by the integration tests: random characteristic data,
//! random Koszul elements and a few morphism builders.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use torprod::exactalg::{smith_normal_form, CoefficientRing, IntMatrix, Matrix};
use torprod::koszul::{KoszulComplex, KoszulElement};
use torprod::simplicial::{CharacteristicData, SimplicialPoset, VertexSet};
use torprod::torcohomology::{CohomologyClass, ProductKind, TorTable};
use torprod::toricmorphism::{ChainMaps, InducedMap, ToricMorphism};

pub const Q: CoefficientRing = CoefficientRing::Rationals;

pub fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn vertex_set(live: usize, ghosts: usize) -> VertexSet {
    let ids = (0..live + ghosts).map(|i| if i < live { format!("v{i}") } else { format!("g{i}") }).collect();
    let flags = (0..live + ghosts).map(|i| i >= live).collect();
    VertexSet::new(ids, flags).expect("distinct ids")
}

/// A random simplicial complex on `live` vertices, every vertex used, with
/// faces of at most `max_size` vertices, followed by `ghosts` ghost vertices.
pub fn random_complex(rng: &mut ChaCha8Rng, live: usize, ghosts: usize, max_size: usize) -> SimplicialPoset {
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=live.max(2)) {
        let size = rng.gen_range(1..=max_size.min(live));
        let mut vs: Vec<usize> = (0..live).collect();
        vs.shuffle(rng);
        let mut f = vs[..size].to_vec();
        f.sort();
        facets.push(f);
    }
    for v in 0..live {
        if !facets.iter().any(|f| f.contains(&v)) {
            facets.push(vec![v]);
        }
    }
    SimplicialPoset::from_facets(vertex_set(live, ghosts), &facets).expect("random complex")
}

/// Two edges glued along both endpoints, optionally with a third vertex
/// joined to one endpoint: a simplicial poset that is not a complex.
pub fn doubled_edge(extra_vertex: bool, ghosts: usize) -> SimplicialPoset {
    let live = if extra_vertex { 3 } else { 2 };
    let mut masks = vec![0, 0b01, 0b10, 0b11, 0b11];
    let mut covers = vec![(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)];
    if extra_vertex {
        masks.extend([0b100, 0b110]);
        covers.extend([(0, 5), (2, 6), (5, 6)]);
    }
    SimplicialPoset::new(vertex_set(live, ghosts), masks, &covers).expect("doubled edge")
}

/// Random valid characteristic data with at most five vertices (ghosts
/// included) and lattice rank at most three.
pub fn random_data(rng: &mut ChaCha8Rng) -> CharacteristicData {
    loop {
        let n = rng.gen_range(1..=3usize);
        let poset = if n >= 2 && rng.gen_bool(0.2) {
            let extra = rng.gen_bool(0.5);
            let ghosts = rng.gen_range(0..=if extra { 2 } else { 3 });
            doubled_edge(extra, ghosts)
        } else {
            let live = rng.gen_range(1..=4usize);
            let ghosts = rng.gen_range(0..=(5 - live).min(2));
            random_complex(rng, live, ghosts, n)
        };
        let m = poset.num_vertices();
        let chi = Matrix::from_fn(n, m, |_, _| BigInt::from(rng.gen_range(-2..=2)));
        if let Ok(d) = CharacteristicData::validated(poset, chi) {
            return d;
        }
    }
}

/// A random element of exterior degree `k` and internal degree `2j`.
pub fn random_element(rng: &mut ChaCha8Rng, k: &KoszulComplex, ext: usize, j: usize) -> KoszulElement {
    let mut z = KoszulElement::zero();
    for t in k.bidegree_basis(ext, j) {
        if rng.gen_bool(0.6) {
            z.add_term(k.ring(), t, &rat(rng.gen_range(-3..=3)));
        }
    }
    z
}

/// A random element of some bidegree with internal degree at most 2·`jmax`.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, k: &KoszulComplex, jmax: usize) -> KoszulElement {
    let ext = rng.gen_range(0..=k.lattice_rank());
    let j = rng.gen_range(ext..=ext.max(jmax));
    random_element(rng, k, ext, j)
}

/// A random unimodular `n × n` matrix and its inverse.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = Matrix::<BigInt>::identity(n);
    let mut inv = Matrix::<BigInt>::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            u[(0, 0)] = BigInt::from(-1);
            inv[(0, 0)] = BigInt::from(-1);
        }
        return (u, inv);
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        // u ← E·u with E = I + c e_i e_jᵀ, inv ← inv·E⁻¹
        let mut e = Matrix::<BigInt>::identity(n);
        e[(i, j)] = c.clone();
        let mut e_inv = Matrix::<BigInt>::identity(n);
        e_inv[(i, j)] = -c;
        u = e.mul(&u);
        inv = inv.mul(&e_inv);
    }
    (u, inv)
}

/// The same poset with characteristic matrix `U·chi`, mapped isomorphically
/// onto `data` by `U⁻¹`.
pub fn basis_change(rng: &mut ChaCha8Rng, data: Arc<CharacteristicData>) -> ToricMorphism {
    let (u, inv) = random_unimodular(rng, data.lattice_rank());
    let source = CharacteristicData::new(data.poset_arc().clone(), u.mul(data.chi())).expect("valid");
    let nu = (0..data.poset().len() as u32).collect();
    ToricMorphism::new(Arc::new(source), data, inv, nu).expect("basis change is a morphism")
}

/// Integer kernel basis of `a`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    (s.rank()..a.cols()).map(|c| s.v.column(c)).collect()
}

/// Tables of both ends of a morphism with the chain maps between them; the
/// domain is the target's table.
pub struct MorphismSetup {
    pub maps: ChainMaps,
    pub dom: TorTable,
    pub cod: TorTable,
}

impl MorphismSetup {
    pub fn new(m: ToricMorphism, max_total_degree: Option<usize>) -> Self {
        let maps = ChainMaps::new(m, Q).expect("valid morphism");
        let bound = |k: &Arc<KoszulComplex>| {
            let d = torprod::torcohomology::default_max_total_degree(k.data());
            max_total_degree.map_or(d, |cap| cap.min(d))
        };
        let (t, s) = (maps.target_complex().clone(), maps.source_complex().clone());
        let dom = TorTable::for_complex(t.clone(), bound(&t));
        let cod = TorTable::for_complex(s.clone(), bound(&s).max(dom.max_total_degree()));
        MorphismSetup { maps, dom, cod }
    }
}

/// Generator pairs of `dom` with `map(x*y) ≠ map(x)*map(y)`, and the number
/// of pairs checked.
pub fn multiplicativity_failures(dom: &TorTable, cod: &TorTable, map: &InducedMap) -> (usize, usize) {
    let (mut bad, mut total) = (0, 0);
    for d1 in dom.degrees() {
        for d2 in dom.degrees() {
            if d1 + d2 > dom.max_total_degree() {
                continue;
            }
            for i in 0..dom.generators(d1).len() {
                for j in 0..dom.generators(d2).len() {
                    let (x, y) = (dom.basis_class(d1, i), dom.basis_class(d2, j));
                    let xy = dom.multiply(ProductKind::Twisted, &x, &y).expect("product");
                    let lhs = map.apply(cod, &xy);
                    let rhs =
                        cod.multiply(ProductKind::Twisted, &map.apply(cod, &x), &map.apply(cod, &y)).expect("product");
                    total += 1;
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    (bad, total)
}

/// `Σ c_i · x_i` for classes of one degree.
pub fn combination(table: &TorTable, terms: &[(i64, &CohomologyClass)]) -> CohomologyClass {
    let mut acc = table.zero_class(terms[0].1.degree);
    for (c, x) in terms {
        acc = table.add_classes(&acc, &table.scale_class(x, &rat(*c)));
    }
    acc
}
