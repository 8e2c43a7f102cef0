//! Small characteristic data sets used by the examples, tests and benches.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::exactalg::{int_matrix, IntMatrix};
use crate::koszul::{KoszulComplex, KoszulElement};
use crate::simplicial::{CharacteristicData, SimplicialPoset, VertexSet};
use crate::toricmorphism::ToricMorphism;

fn vertex_set(ids: &[&str], ghosts: usize) -> VertexSet {
    let n = ids.len();
    VertexSet::new(ids.iter().map(|s| s.to_string()).collect(), (0..n).map(|i| i >= n - ghosts).collect())
        .expect("fixture vertex ids are unique")
}

fn data(vertices: VertexSet, facets: &[Vec<usize>], chi: IntMatrix) -> CharacteristicData {
    let poset = SimplicialPoset::from_facets(vertices, facets).expect("fixture poset");
    CharacteristicData::validated(poset, chi).expect("fixture data is valid")
}

/// Two opposite rays `v = (1,1,1)`, `w = −v` in `ℤ³` with ghost rays `e₁, e₂`;
/// the quotient is `(ℂ*)² × ℂP¹`.
pub fn cstar2_p1() -> CharacteristicData {
    data(
        vertex_set(&["v", "w", "e1", "e2"], 2),
        &[vec![0], vec![1]],
        int_matrix(&[&[1, -1, 1, 0], &[1, -1, 0, 1], &[1, -1, 0, 0]]),
    )
}

/// The same variety presented with rays `±e₃` and ghosts `e₁, e₂`.
pub fn cstar2_p1_standard() -> CharacteristicData {
    data(
        vertex_set(&["v'", "w'", "e1'", "e2'"], 2),
        &[vec![0], vec![1]],
        int_matrix(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, -1, 0, 0]]),
    )
}

/// `ℂP¹` with rays `±1`.
pub fn cp1() -> CharacteristicData {
    data(vertex_set(&["v", "w"], 0), &[vec![0], vec![1]], int_matrix(&[&[1, -1]]))
}

/// `ℂP²` with rays `e₁, e₂, −e₁−e₂`.
pub fn cp2() -> CharacteristicData {
    data(
        vertex_set(&["u", "v", "w"], 0),
        &[vec![0, 1], vec![1, 2], vec![0, 2]],
        int_matrix(&[&[1, 0, -1], &[0, 1, -1]]),
    )
}

/// Moment-angle data of a simplicial complex given by facets on `n` vertices.
pub fn moment_angle(n: usize, facets: &[Vec<usize>]) -> CharacteristicData {
    let poset = SimplicialPoset::from_facets(VertexSet::numbered(n), facets).expect("fixture poset");
    CharacteristicData::moment_angle(poset)
}

/// The boundary of a square; its moment-angle complex is `S³ × S³`.
pub fn four_cycle() -> CharacteristicData {
    moment_angle(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
}

/// Two disjoint points; the moment-angle complex is `S³`.
pub fn two_points() -> CharacteristicData {
    moment_angle(2, &[vec![0], vec![1]])
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2_6() -> CharacteristicData {
    moment_angle(6, &rp2_6_facets())
}

pub fn rp2_6_facets() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![2, 4, 5],
        vec![1, 3, 5],
    ]
}

/// Integer vectors from small literals.
pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The isomorphism from [`cstar2_p1_standard`] to [`cstar2_p1`] with
/// lattice map `e₁ ↦ e₁, e₂ ↦ e₂, e₃ ↦ (1,1,1)`.
pub fn basis_change() -> ToricMorphism {
    ToricMorphism::new(
        Arc::new(cstar2_p1_standard()),
        Arc::new(cstar2_p1()),
        int_matrix(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]),
        vec![0, 1, 2],
    )
    .expect("fixture morphism is valid")
}

/// Named cocycles `a₁, a₂, b, c` of the `(ℂ*)² × ℂP¹` example.
#[derive(Clone, Debug)]
pub struct ExampleCocycles {
    pub a1: KoszulElement,
    pub a2: KoszulElement,
    pub b: KoszulElement,
    pub c: KoszulElement,
}

impl ExampleCocycles {
    /// On [`cstar2_p1`]: `a₁ = α₁−α₃`, `a₂ = α₂−α₃`,
    /// `b = α₁α₂ + α₂α₃ − α₁α₃`, `c = t_v`.
    pub fn example(k: &KoszulComplex) -> Self {
        let b = k.add(&k.sub(&k.alpha_word(0b011), &k.alpha_word(0b101)), &k.alpha_word(0b110));
        ExampleCocycles {
            a1: k.linear_alpha(&[1, 0, -1]),
            a2: k.linear_alpha(&[0, 1, -1]),
            b,
            c: k.from_face(&k.face_ring().vertex(0)),
        }
    }

    /// On [`cstar2_p1_standard`]: `a′₁ = α′₁`, `a′₂ = α′₂`, `b′ = α′₁α′₂`,
    /// `c′ = t_{v′}`.
    pub fn standard(k: &KoszulComplex) -> Self {
        ExampleCocycles {
            a1: k.alpha(0),
            a2: k.alpha(1),
            b: k.alpha_word(0b011),
            c: k.from_face(&k.face_ring().vertex(0)),
        }
    }
}
