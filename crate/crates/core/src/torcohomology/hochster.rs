use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Bidegree, BidegreeSummary};
use crate::exactalg::{self, smith_normal_form, CoefficientRing, ExactMatrix, Matrix};
use crate::simplicial::{mask_indices, SimplicialError, SimplicialPoset, VertexMask};

pub type HochsterEntry = BidegreeSummary;

/// Reduced simplicial cohomology of the full subcomplex on `w`, indexed by
/// degree starting at −1 (the empty simplex spans the cochains in degree −1).
pub fn reduced_cohomology(
    poset: &SimplicialPoset,
    w: VertexMask,
    ring: CoefficientRing,
) -> Result<BTreeMap<i64, BidegreeSummary>, SimplicialError> {
    if !poset.is_complex() {
        return Err(SimplicialError::NotAComplex);
    }
    // cochain bases by dimension + 1
    let mut cells: Vec<Vec<VertexMask>> = Vec::new();
    for s in 0..poset.len() as u32 {
        let m = poset.mask(s);
        if m & !w != 0 {
            continue;
        }
        let r = m.count_ones() as usize;
        if cells.len() <= r {
            cells.resize(r + 1, Vec::new());
        }
        cells[r].push(m);
    }
    for c in &mut cells {
        c.sort_unstable();
    }
    // coboundary from rank r to rank r+1
    let coboundary = |r: usize| -> Matrix<BigRational> {
        let empty = Vec::new();
        let from = &cells[r];
        let to = cells.get(r + 1).unwrap_or(&empty);
        let index: BTreeMap<VertexMask, usize> = from.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut m = Matrix::zeros(to.len(), from.len());
        for (row, &sigma) in to.iter().enumerate() {
            for (pos, v) in mask_indices(sigma).enumerate() {
                let face = sigma & !(1 << v);
                let sign = if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                m[(row, index[&face])] = sign;
            }
        }
        m
    };
    let mut ranks = Vec::with_capacity(cells.len());
    let mut torsion = Vec::with_capacity(cells.len());
    for r in 0..cells.len() {
        let m = coboundary(r);
        if ring == CoefficientRing::Integers {
            let s = smith_normal_form(&m.map(|x| x.to_integer()));
            ranks.push(s.rank());
            torsion.push(s.torsion());
        } else {
            ranks.push(exactalg::rank(&ExactMatrix::new(ring, m).expect("integer matrix")));
            torsion.push(Vec::<BigInt>::new());
        }
    }
    let mut out = BTreeMap::new();
    for r in 0..cells.len() {
        let into = if r == 0 { 0 } else { ranks[r - 1] };
        let free_rank = cells[r].len() - ranks[r] - into;
        let tors = if r == 0 { Vec::new() } else { torsion[r - 1].clone() };
        let s = BidegreeSummary { free_rank, torsion: tors };
        if !s.is_zero() {
            out.insert(r as i64 - 1, s);
        }
    }
    Ok(out)
}

/// Bigraded Tor of the face ring over the polynomial ring on all vertices,
/// assembled from reduced cohomology of full subcomplexes:
/// `Tor^{−k,2j} = ⊕_{|W|=j} H̃^{j−k−1}(Σ_W)`. Bidegrees of total degree
/// above `max_total_degree` are omitted.
pub fn hochster_oracle(
    poset: &SimplicialPoset,
    ring: CoefficientRing,
    max_total_degree: usize,
) -> Result<BTreeMap<Bidegree, BidegreeSummary>, SimplicialError> {
    let m = poset.num_vertices();
    let mut out: BTreeMap<Bidegree, BidegreeSummary> = BTreeMap::new();
    for w in 0..(1u128 << m) {
        let w = w as VertexMask;
        let j = w.count_ones() as i64;
        for (p, s) in reduced_cohomology(poset, w, ring)? {
            let k = j - p - 1;
            if k < 0 || (2 * j - k) as usize > max_total_degree {
                continue;
            }
            let e = out.entry((-k, 2 * j as usize)).or_default();
            e.free_rank += s.free_rank;
            e.torsion.extend(s.torsion);
        }
    }
    for s in out.values_mut() {
        s.torsion.sort();
    }
    Ok(out)
}
