//! Toric morphisms between characteristic data and the maps they induce on
//! Koszul complexes and their cohomology.

mod induced;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactalg::{smith_normal_form, solve_integer, IntMatrix, Matrix};
use crate::facering::{FaceRing, FaceRingError};
use crate::koszul::TwistData;
use crate::simplicial::{mask_indices, CharacteristicData, SimplicialError};
use crate::torcohomology::TorError;

pub use induced::{
    cox_projection, hat_tor_phi, ideal_contains, ideal_i_sigma, join_tensor, omega, omega_chain, omega_conjugation,
    tor_phi, ChainMaps, InducedMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("lattice map has shape {actual:?}, expected {expected:?}")]
    Shape { expected: (usize, usize), actual: (usize, usize) },
    #[error("simplex map has {actual} entries for {expected} source elements")]
    SimplexMapLength { expected: usize, actual: usize },
    #[error("invalid toric morphism: {0}")]
    Invalid(MorphismReport),
    #[error("no integer lift for ghost vertex {0}")]
    NoGhostLift(String),
    #[error("supplied lift column for vertex {0} does not cover the lattice map")]
    BadLiftColumn(String),
    #[error("source and target use different coefficient rings")]
    RingMismatch,
    #[error(transparent)]
    Tor(#[from] TorError),
    #[error(transparent)]
    FaceRing(#[from] FaceRingError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// A reason a pair (lattice map, simplex map) fails to be a toric morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    EmptyNotPreserved,
    /// `lower < upper` in the source but their images are not comparable.
    NotOrderPreserving {
        lower: String,
        upper: String,
    },
    /// The image of the ray of `vertex` is outside the lattice span of the
    /// rays of the simplex it is sent to.
    OutsideSpan {
        vertex: String,
        image: Vec<BigInt>,
        simplex: String,
    },
    /// The image of the ray of `vertex` has a negative coordinate.
    NegativeCoordinates {
        vertex: String,
        simplex: String,
        coordinates: Vec<BigInt>,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            MorphismViolation::EmptyNotPreserved => write!(f, "empty simplex is not mapped to the empty simplex"),
            MorphismViolation::NotOrderPreserving { lower, upper } => {
                write!(f, "{lower} < {upper} but their images are not comparable")
            }
            MorphismViolation::OutsideSpan { vertex, image, simplex } => {
                write!(f, "image ({}) of vertex {vertex} is not in the span of {simplex}", vec(image))
            }
            MorphismViolation::NegativeCoordinates { vertex, simplex, coordinates } => write!(
                f,
                "image of vertex {vertex} has coordinates ({}) in {simplex}, not all nonnegative",
                vec(coordinates)
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub violations: Vec<MorphismViolation>,
}

impl MorphismReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A toric morphism from `source` (primed data) to `target`: an integer
/// lattice map of shape `n × n′` and a simplex map from source elements to
/// target elements. Induced maps go the other way.
#[derive(Clone, Debug)]
pub struct ToricMorphism {
    source: Arc<CharacteristicData>,
    target: Arc<CharacteristicData>,
    lattice_map: IntMatrix,
    simplex_map: Vec<u32>,
}

impl ToricMorphism {
    /// Checks shapes and the morphism conditions.
    pub fn new(
        source: Arc<CharacteristicData>,
        target: Arc<CharacteristicData>,
        lattice_map: IntMatrix,
        simplex_map: Vec<u32>,
    ) -> Result<Self, MorphismError> {
        let m = Self::unchecked(source, target, lattice_map, simplex_map)?;
        let report = m.validate();
        if report.is_valid() {
            Ok(m)
        } else {
            Err(MorphismError::Invalid(report))
        }
    }

    /// Checks shapes only.
    pub fn unchecked(
        source: Arc<CharacteristicData>,
        target: Arc<CharacteristicData>,
        lattice_map: IntMatrix,
        simplex_map: Vec<u32>,
    ) -> Result<Self, MorphismError> {
        let expected = (target.lattice_rank(), source.lattice_rank());
        if lattice_map.shape() != expected {
            return Err(MorphismError::Shape { expected, actual: lattice_map.shape() });
        }
        if simplex_map.len() != source.poset().len() {
            return Err(MorphismError::SimplexMapLength { expected: source.poset().len(), actual: simplex_map.len() });
        }
        if simplex_map.iter().any(|&t| t as usize >= target.poset().len()) {
            return Err(MorphismError::SimplexMapLength { expected: target.poset().len(), actual: simplex_map.len() });
        }
        Ok(ToricMorphism { source, target, lattice_map, simplex_map })
    }

    pub fn identity(data: Arc<CharacteristicData>) -> Self {
        Self::power_map(data, 1)
    }

    /// `A = r·Id` with the identity on simplices.
    pub fn power_map(data: Arc<CharacteristicData>, r: u32) -> Self {
        let n = data.lattice_rank();
        let a = Matrix::from_fn(n, n, |i, j| if i == j { BigInt::from(r) } else { BigInt::zero() });
        let nu = (0..data.poset().len() as u32).collect();
        ToricMorphism { source: data.clone(), target: data, lattice_map: a, simplex_map: nu }
    }

    /// The diagonal into the join `Σ * Σ` with block-diagonal characteristic
    /// matrix; vertices and coordinates of the first copy come first.
    pub fn diagonal(data: Arc<CharacteristicData>) -> Result<Self, MorphismError> {
        let target = Arc::new(data.join(&data)?);
        let n = data.lattice_rank();
        let a = Matrix::from_fn(2 * n, n, |i, j| if i % n == j { BigInt::from(1) } else { BigInt::zero() });
        let p = data.poset();
        let nu = (0..p.len() as u32).map(|s| p.join_element(p, s, s)).collect();
        Self::new(data, target, a, nu)
    }

    pub fn source(&self) -> &Arc<CharacteristicData> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CharacteristicData> {
        &self.target
    }

    /// The lattice map, `n × n′`.
    pub fn lattice_map(&self) -> &IntMatrix {
        &self.lattice_map
    }

    pub fn simplex_map(&self) -> &[u32] {
        &self.simplex_map
    }

    /// Image of the ray of source vertex `v` under the lattice map.
    pub fn image_of_ray(&self, v: usize) -> Vec<BigInt> {
        self.lattice_map.mul_vec(&self.source.ray(v))
    }

    pub fn validate(&self) -> MorphismReport {
        let mut violations = Vec::new();
        let (sp, tp) = (self.source.poset(), self.target.poset());
        let nu = &self.simplex_map;
        if nu[0] != 0 || tp.mask(nu[0]) != 0 {
            violations.push(MorphismViolation::EmptyNotPreserved);
        }
        for (lo, hi) in sp.covers() {
            if !tp.le(nu[lo as usize], nu[hi as usize]) {
                violations.push(MorphismViolation::NotOrderPreserving {
                    lower: sp.format_element(lo),
                    upper: sp.format_element(hi),
                });
            }
        }
        for v in 0..sp.num_vertices() {
            let Some(elem) = sp.vertex_element(v) else { continue };
            let image = self.image_of_ray(v);
            let sigma = nu[elem as usize];
            let vertex = sp.vertices().id(v).to_string();
            let simplex = tp.format_element(sigma);
            match self.target.coordinates_in_simplex(sigma, &image) {
                None => violations.push(MorphismViolation::OutsideSpan { vertex, image, simplex }),
                Some(c) if c.iter().any(|x| x.is_negative()) => {
                    violations.push(MorphismViolation::NegativeCoordinates { vertex, simplex, coordinates: c })
                }
                Some(_) => {}
            }
        }
        MorphismReport { violations }
    }

    /// The lift `Ã` with ghost columns chosen automatically: a target vertex
    /// with exactly the required ray if there is one, otherwise a Smith
    /// normal form solution.
    pub fn lift(&self) -> Result<Lift, MorphismError> {
        self.lift_with_ghost_columns(&[])
    }

    /// As [`lift`](Self::lift), with explicit columns for some ghost source
    /// vertices.
    pub fn lift_with_ghost_columns(&self, custom: &[(usize, Vec<BigInt>)]) -> Result<Lift, MorphismError> {
        let (sp, tp) = (self.source.poset(), self.target.poset());
        let nt = self.target.num_vertices();
        let mut a_hat = Matrix::zeros(nt, sp.num_vertices());
        let chi_smith = smith_normal_form(self.target.chi());
        for v in 0..sp.num_vertices() {
            let image = self.image_of_ray(v);
            let column: Vec<BigInt> = if let Some(elem) = sp.vertex_element(v) {
                let sigma = self.simplex_map[elem as usize];
                let c = self
                    .target
                    .coordinates_in_simplex(sigma, &image)
                    .ok_or_else(|| MorphismError::Invalid(self.validate()))?;
                let mut col = vec![BigInt::zero(); nt];
                for (w, x) in mask_indices(tp.mask(sigma)).zip(c) {
                    col[w] = x;
                }
                col
            } else if let Some((_, col)) = custom.iter().find(|(w, _)| *w == v) {
                if col.len() != nt || self.target.chi().mul_vec(col) != image {
                    return Err(MorphismError::BadLiftColumn(sp.vertices().id(v).to_string()));
                }
                col.clone()
            } else if let Some(w) = (0..nt).find(|&w| self.target.ray(w) == image) {
                let mut col = vec![BigInt::zero(); nt];
                col[w] = BigInt::from(1);
                col
            } else {
                solve_integer(&chi_smith, &image)
                    .ok_or_else(|| MorphismError::NoGhostLift(sp.vertices().id(v).to_string()))?
            };
            for (w, x) in column.into_iter().enumerate() {
                a_hat[(w, v)] = x;
            }
        }
        Ok(Lift { a_hat })
    }

    /// `φ*(α_i) = Σ_j A_ij α′_j` as integer coefficients.
    pub fn pullback_alpha(&self, i: usize) -> Vec<i64> {
        self.lattice_map.row(i).iter().map(|x| i64::try_from(x).expect("lattice map entries fit in i64")).collect()
    }

    /// The twisting terms `q̂_ij` (`j < i`, target coordinates) in the face
    /// ring of the source:
    /// `q̂_ij = −Σ_{v′} (Σ_v â(â−1)/2 x_v^i x_v^j + Σ_{v<w} â_v â_w x_v^i x_w^j) t_{v′}`.
    pub fn hat_q(&self, lift: &Lift, face: &FaceRing) -> MorphismTwist {
        let n = self.target.lattice_rank();
        let (nt, ns) = (self.target.num_vertices(), self.source.num_vertices());
        let two = BigInt::from(2);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![vec![BigInt::zero(); ns]; i + 1];
            for (j, entry) in row.iter_mut().enumerate().take(i) {
                for (vp, slot) in entry.iter_mut().enumerate() {
                    if self.source.poset().vertices().is_ghost(vp) {
                        continue;
                    }
                    let mut acc = BigInt::zero();
                    for v in 0..nt {
                        let a = &lift.a_hat[(v, vp)];
                        if a.is_zero() {
                            continue;
                        }
                        acc += (a * (a - 1u32)).div_floor(&two) * self.target.x(v, i) * self.target.x(v, j);
                        for w in v + 1..nt {
                            let b = &lift.a_hat[(w, vp)];
                            if !b.is_zero() {
                                acc += a * b * self.target.x(v, i) * self.target.x(w, j);
                            }
                        }
                    }
                    *slot = -acc;
                }
            }
            coeffs.push(row);
        }
        MorphismTwist(TwistData::from_coefficients(face, coeffs))
    }
}

/// The lift `Ã` of the lattice map to the vertex lattices: one row per
/// target vertex, one column per source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub a_hat: IntMatrix,
}

/// The twisting terms `q̂_ij` for `j < i`, stored with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismTwist(pub TwistData);

impl MorphismTwist {
    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// `q̂_ij` for `j < i`.
    pub fn get(&self, i: usize, j: usize) -> &crate::facering::FaceRingElement {
        assert!(j < i, "morphism twist is indexed with j < i");
        self.0.get(i, j)
    }

    pub fn coefficients(&self, i: usize, j: usize) -> &[BigInt] {
        self.0.coefficients(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactalg::{int_matrix, CoefficientRing};

    fn face(data: &Arc<CharacteristicData>) -> FaceRing {
        FaceRing::new(data.poset_arc().clone(), CoefficientRing::Rationals)
    }

    #[test]
    fn basis_change_lift_is_identity() {
        let m = catalog::basis_change();
        assert!(m.validate().is_valid());
        let lift = m.lift().unwrap();
        assert_eq!(lift.a_hat, Matrix::identity(4));
        assert!(m.hat_q(&lift, &face(m.source())).is_zero());
        assert_eq!(m.pullback_alpha(0), vec![1, 0, 1]);
    }

    #[test]
    fn power_map_twist() {
        let data = Arc::new(catalog::cstar2_p1());
        let f = face(&data);
        let q = TwistData::canonical(&f, &data);
        for r in [0u32, 2, 3] {
            let m = ToricMorphism::power_map(data.clone(), r);
            assert!(m.validate().is_valid());
            let lift = m.lift().unwrap();
            for v in 0..2 {
                assert_eq!(lift.a_hat[(v, v)], BigInt::from(r));
            }
            let hq = m.hat_q(&lift, &f);
            let factor = -BigInt::from(r * r.saturating_sub(1) / 2);
            for i in 0..3 {
                for j in 0..i {
                    let want: Vec<BigInt> = q.coefficients(i, j).iter().map(|c| c * &factor).collect();
                    assert_eq!(hq.coefficients(i, j), want.as_slice());
                }
            }
        }
    }

    #[test]
    fn diagonal_twist_vanishes() {
        for data in [catalog::cstar2_p1(), catalog::cp2()] {
            let m = ToricMorphism::diagonal(Arc::new(data)).unwrap();
            let lift = m.lift().unwrap();
            assert!(m.hat_q(&lift, &face(m.source())).is_zero());
        }
    }

    #[test]
    fn violations_are_reported() {
        let data = Arc::new(catalog::cstar2_p1());
        let neg = ToricMorphism::unchecked(
            data.clone(),
            data.clone(),
            int_matrix(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            vec![0, 1, 2],
        )
        .unwrap();
        let report = neg.validate();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            MorphismViolation::NegativeCoordinates { .. } | MorphismViolation::OutsideSpan { .. }
        )));
        let bad_nu = ToricMorphism::unchecked(data.clone(), data, Matrix::identity(3), vec![1, 1, 2]).unwrap();
        assert!(bad_nu.validate().violations.contains(&MorphismViolation::EmptyNotPreserved));
    }

    #[test]
    fn explicit_ghost_columns_are_checked() {
        let m = catalog::basis_change();
        let ok = m.lift_with_ghost_columns(&[(2, vec![0.into(), 0.into(), 1.into(), 0.into()])]).unwrap();
        assert_eq!(ok, m.lift().unwrap());
        // x_v + x_w = 0, so adding it gives another lift
        let alt = m.lift_with_ghost_columns(&[(2, vec![1.into(), 1.into(), 1.into(), 0.into()])]).unwrap();
        let f = face(m.source());
        assert_eq!(m.hat_q(&ok, &f), m.hat_q(&alt, &f));
        assert!(matches!(
            m.lift_with_ghost_columns(&[(2, vec![1.into(), 0.into(), 0.into(), 0.into()])]),
            Err(MorphismError::BadLiftColumn(_))
        ));
    }
}
