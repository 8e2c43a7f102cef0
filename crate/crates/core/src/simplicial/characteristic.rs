use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poset::{mask_indices, SimplicialPoset, VertexSet};
use super::SimplicialError;
use crate::exactalg::solve_integer;
use crate::exactalg::{smith_normal_form, IntMatrix, Matrix};

/// A simplicial poset together with the images `x_v ∈ ℤⁿ` of the canonical
/// generators of `ℤ^V`, stored as the columns of `chi` (`n × |V|`).
#[derive(Clone, PartialEq, Eq)]
pub struct CharacteristicData {
    poset: Arc<SimplicialPoset>,
    chi: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The columns of `chi` span a proper sublattice; the Smith invariants of
    /// `chi` are given (a zero entry means a rank defect).
    NotSurjective { invariants: Vec<BigInt> },
    /// The rays of this simplex do not extend to a lattice basis.
    NotFree { simplex: String, invariants: Vec<BigInt> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Violation::NotSurjective { invariants } => {
                write!(f, "surjectivity: columns do not span the lattice (Smith invariants {})", list(invariants))
            }
            Violation::NotFree { simplex, invariants } => {
                write!(
                    f,
                    "freeness: rays of {simplex} do not extend to a basis (Smith invariants {})",
                    list(invariants)
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl CharacteristicData {
    /// Pairs a poset with its characteristic matrix. Only the shape is
    /// checked here; see [`validate`](Self::validate).
    pub fn new(poset: impl Into<Arc<SimplicialPoset>>, chi: IntMatrix) -> Result<Self, SimplicialError> {
        let poset = poset.into();
        if chi.cols() != poset.num_vertices() {
            return Err(SimplicialError::ChiShape { vertices: poset.num_vertices(), columns: chi.cols() });
        }
        Ok(CharacteristicData { poset, chi })
    }

    /// Like [`new`](Self::new) but also rejects data failing validation.
    pub fn validated(poset: impl Into<Arc<SimplicialPoset>>, chi: IntMatrix) -> Result<Self, SimplicialError> {
        let data = Self::new(poset, chi)?;
        let report = data.validate();
        if report.is_valid() {
            Ok(data)
        } else {
            Err(SimplicialError::Invalid(report))
        }
    }

    /// The moment-angle data of `poset`: `chi` is the identity on `ℤ^V`.
    pub fn moment_angle(poset: impl Into<Arc<SimplicialPoset>>) -> Self {
        let poset = poset.into();
        let n = poset.num_vertices();
        CharacteristicData { poset, chi: Matrix::identity(n) }
    }

    /// Characteristic data of a simplicial fan. Rays become vertices
    /// `r0, r1, …` and ghost rays vertices `g0, g1, …` after them.
    pub fn from_fan(
        rays: &[Vec<BigInt>],
        cones: &[Vec<usize>],
        ghost_rays: &[Vec<BigInt>],
        lattice_rank: usize,
    ) -> Result<Self, SimplicialError> {
        let all: Vec<&Vec<BigInt>> = rays.iter().chain(ghost_rays).collect();
        for (k, r) in all.iter().enumerate() {
            if r.len() != lattice_rank {
                return Err(SimplicialError::ChiShape { vertices: lattice_rank, columns: r.len() });
            }
            let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_one() {
                return Err(SimplicialError::NonPrimitiveRay(k));
            }
        }
        for c in cones {
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(SimplicialError::MalformedPoset(format!("cone refers to missing ray {bad}")));
            }
            let m = Matrix::from_columns(lattice_rank, &c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>());
            if smith_normal_form(&m).rank() != c.len() {
                return Err(SimplicialError::DependentCone(c.clone()));
            }
        }
        let ids = (0..rays.len()).map(|i| format!("r{i}")).chain((0..ghost_rays.len()).map(|i| format!("g{i}")));
        let ghost = std::iter::repeat_n(false, rays.len()).chain(std::iter::repeat_n(true, ghost_rays.len()));
        let vertices = VertexSet::new(ids.collect(), ghost.collect())?;
        let poset = SimplicialPoset::from_facets(vertices, cones)?;
        let columns: Vec<Vec<BigInt>> = all.into_iter().cloned().collect();
        Self::validated(poset, Matrix::from_columns(lattice_rank, &columns))
    }

    pub fn poset(&self) -> &SimplicialPoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<SimplicialPoset> {
        &self.poset
    }

    pub fn vertices(&self) -> &VertexSet {
        self.poset.vertices()
    }

    pub fn num_vertices(&self) -> usize {
        self.poset.num_vertices()
    }

    pub fn lattice_rank(&self) -> usize {
        self.chi.rows()
    }

    pub fn chi(&self) -> &IntMatrix {
        &self.chi
    }

    /// The coordinate `x_v^i`.
    pub fn x(&self, v: usize, i: usize) -> &BigInt {
        &self.chi[(i, v)]
    }

    pub fn ray(&self, v: usize) -> Vec<BigInt> {
        self.chi.column(v)
    }

    pub fn is_moment_angle(&self) -> bool {
        self.chi.rows() == self.chi.cols() && self.chi == Matrix::identity(self.chi.rows())
    }

    /// Columns of `chi` belonging to the vertices of `sigma`.
    fn simplex_matrix(&self, sigma: u32) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = mask_indices(self.poset.mask(sigma)).map(|v| self.ray(v)).collect();
        Matrix::from_columns(self.lattice_rank(), &cols)
    }

    /// Integer coordinates of `y` in the rays of `sigma`, if `y` lies in
    /// their span; indexed by the vertices of `sigma` in increasing order.
    pub fn coordinates_in_simplex(&self, sigma: u32, y: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_integer(&smith_normal_form(&self.simplex_matrix(sigma)), y)
    }

    /// Checks surjectivity of `chi` and freeness of every maximal simplex
    /// (which implies freeness of its faces). Boolean lower intervals are
    /// guaranteed by [`SimplicialPoset`] construction.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.lattice_rank();
        let s = smith_normal_form(&self.chi);
        let mut inv = s.diag.clone();
        inv.resize(n, BigInt::zero());
        if inv.iter().any(|d| !d.is_one()) {
            violations.push(Violation::NotSurjective { invariants: inv });
        }
        for &sigma in self.poset.maximal() {
            let s = smith_normal_form(&self.simplex_matrix(sigma));
            if s.diag.iter().any(|d| !d.is_one()) {
                violations
                    .push(Violation::NotFree { simplex: self.poset.format_element(sigma), invariants: s.diag.clone() });
            }
        }
        ValidationReport { violations }
    }

    /// Data on the join of the two posets with block-diagonal `chi`.
    pub fn join(&self, other: &CharacteristicData) -> Result<CharacteristicData, SimplicialError> {
        let poset = self.poset.join(&other.poset)?;
        let (n1, n2) = (self.lattice_rank(), other.lattice_rank());
        let (v1, v2) = (self.num_vertices(), other.num_vertices());
        let chi = Matrix::from_fn(n1 + n2, v1 + v2, |i, v| match (i < n1, v < v1) {
            (true, true) => self.chi[(i, v)].clone(),
            (false, false) => other.chi[(i - n1, v - v1)].clone(),
            _ => BigInt::zero(),
        });
        CharacteristicData::new(poset, chi)
    }
}

impl fmt::Debug for CharacteristicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacteristicData {{ poset: {:?}, chi: {:?} }}", self.poset, self.chi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_rays_need_ghosts() {
        let rays = [b(&[1, 1, 1]), b(&[-1, -1, -1])];
        let cones = [vec![0], vec![1]];
        match CharacteristicData::from_fan(&rays, &cones, &[], 3) {
            Err(SimplicialError::Invalid(r)) => {
                assert!(matches!(r.violations[0], Violation::NotSurjective { .. }));
            }
            other => panic!("expected surjectivity failure, got {other:?}"),
        }
        let ghosts = [b(&[1, 0, 0]), b(&[0, 1, 0])];
        let data = CharacteristicData::from_fan(&rays, &cones, &ghosts, 3).unwrap();
        assert_eq!(data.num_vertices(), 4);
        assert!(data.vertices().is_ghost(2));
    }

    #[test]
    fn cp1_fan() {
        let data = CharacteristicData::from_fan(&[b(&[1]), b(&[-1])], &[vec![0], vec![1]], &[], 1).unwrap();
        assert!(data.validate().is_valid());
    }

    #[test]
    fn freeness_violation() {
        let p = SimplicialPoset::from_facets(VertexSet::numbered(2), &[vec![0], vec![1]]).unwrap();
        let chi = crate::exactalg::int_matrix(&[&[2, 0], &[0, 1]]);
        let report = CharacteristicData::new(p, chi).unwrap().validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NotFree { simplex, .. } if simplex == "{0}")));
        assert!(CharacteristicData::from_fan(&[b(&[2, 0])], &[vec![0]], &[], 2).is_err());
    }

    #[test]
    fn moment_angle_is_valid() {
        let p = SimplicialPoset::from_facets(VertexSet::numbered(4), &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap();
        let d = CharacteristicData::moment_angle(p);
        assert!(d.is_moment_angle());
        assert!(d.validate().is_valid());
    }

    #[test]
    fn dependent_cone() {
        assert!(matches!(
            CharacteristicData::from_fan(&[b(&[1, 0]), b(&[-1, 0]), b(&[0, 1])], &[vec![0, 1]], &[], 2),
            Err(SimplicialError::DependentCone(_))
        ));
    }
}
