use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::SimplicialError;

/// Bit mask of vertex indices. Vertex `i` is bit `i`.
pub type VertexMask = u64;

pub const MAX_VERTICES: usize = 64;

/// Iterates the set bits of a mask in increasing order.
pub fn mask_indices(mask: VertexMask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

pub fn mask_of(indices: impl IntoIterator<Item = usize>) -> VertexMask {
    indices.into_iter().fold(0, |m, i| m | (1 << i))
}

/// Ordered vertex identifiers with ghost flags. The order fixes every sign
/// convention downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    ids: Vec<String>,
    ghost: Vec<bool>,
}

impl VertexSet {
    pub fn new(ids: Vec<String>, ghost: Vec<bool>) -> Result<Self, SimplicialError> {
        assert_eq!(ids.len(), ghost.len(), "one ghost flag per vertex");
        if ids.len() > MAX_VERTICES {
            return Err(SimplicialError::TooManyVertices(ids.len()));
        }
        let mut seen = BTreeSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(SimplicialError::DuplicateVertex(id.clone()));
            }
        }
        Ok(VertexSet { ids, ghost })
    }

    /// Vertices named `0, 1, …, n-1`, none of them ghosts.
    pub fn numbered(n: usize) -> Self {
        VertexSet::new((0..n).map(|i| i.to_string()).collect(), vec![false; n]).expect("numbered vertex set")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn is_ghost(&self, i: usize) -> bool {
        self.ghost[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn ghost_mask(&self) -> VertexMask {
        mask_of((0..self.len()).filter(|&i| self.ghost[i]))
    }

    /// `self` followed by `other`. Clashing identifiers from `other` get a
    /// `'` suffix until unique.
    pub fn concat(&self, other: &VertexSet) -> Result<VertexSet, SimplicialError> {
        let mut ids = self.ids.clone();
        for id in &other.ids {
            let mut id = id.clone();
            while ids.contains(&id) {
                id.push('\'');
            }
            ids.push(id);
        }
        let ghost = self.ghost.iter().chain(&other.ghost).copied().collect();
        VertexSet::new(ids, ghost)
    }

    pub fn format_mask(&self, mask: VertexMask) -> String {
        let names: Vec<&str> = mask_indices(mask).map(|i| self.id(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A finite simplicial poset. Element `0` is the empty simplex; elements are
/// sorted by rank. Distinct elements may share a vertex set.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialPoset {
    vertices: VertexSet,
    masks: Vec<VertexMask>,
    /// Upper covers of each element.
    up: Vec<Vec<u32>>,
    /// For each element, the unique element below it with a given vertex set.
    faces: Vec<HashMap<VertexMask, u32>>,
    /// Maximal elements above or equal to each element, increasing.
    max_above: Vec<Vec<u32>>,
    maximal: Vec<u32>,
    /// Rank-one element of each vertex, if the vertex occurs.
    vertex_element: Vec<Option<u32>>,
    is_complex: bool,
}

impl SimplicialPoset {
    /// Builds a poset from vertex supports and cover relations `(lower,
    /// upper)`. The element with empty support must be unique; elements are
    /// renumbered by `(rank, given position)`.
    pub fn new(
        vertices: VertexSet,
        masks: Vec<VertexMask>,
        covers: &[(usize, usize)],
    ) -> Result<Self, SimplicialError> {
        let bad = |msg: String| Err(SimplicialError::MalformedPoset(msg));
        let nv = vertices.len();
        let ghosts = vertices.ghost_mask();
        for &m in &masks {
            if nv < 64 && m >> nv != 0 {
                return bad(format!("vertex support {m:#b} outside the vertex set"));
            }
            if let Some(g) = mask_indices(m & ghosts).next() {
                return Err(SimplicialError::GhostInSimplex(vertices.id(g).to_string()));
            }
        }
        let empties: Vec<usize> = (0..masks.len()).filter(|&i| masks[i] == 0).collect();
        if empties.len() != 1 {
            return bad(format!("expected exactly one empty simplex, found {}", empties.len()));
        }
        let mut order: Vec<usize> = (0..masks.len()).collect();
        order.sort_by_key(|&i| (masks[i].count_ones(), i));
        let mut new_id = vec![0u32; masks.len()];
        for (k, &i) in order.iter().enumerate() {
            new_id[i] = k as u32;
        }
        let sorted_masks: Vec<VertexMask> = order.iter().map(|&i| masks[i]).collect();
        let mut up = vec![Vec::new(); masks.len()];
        let mut down = vec![Vec::new(); masks.len()];
        for &(lo, hi) in covers {
            if lo >= masks.len() || hi >= masks.len() {
                return bad(format!("cover ({lo}, {hi}) refers to a missing element"));
            }
            let (ml, mh) = (masks[lo], masks[hi]);
            if ml & !mh != 0 || mh.count_ones() != ml.count_ones() + 1 {
                return bad(format!(
                    "cover {} < {} does not add exactly one vertex",
                    vertices.format_mask(ml),
                    vertices.format_mask(mh)
                ));
            }
            let (l, h) = (new_id[lo], new_id[hi]);
            if !up[l as usize].contains(&h) {
                up[l as usize].push(h);
                down[h as usize].push(l);
            }
        }
        for u in &mut up {
            u.sort_unstable();
        }
        build(vertices, sorted_masks, up, down)
    }

    /// The simplicial complex generated by `facets` (lists of vertex indices).
    pub fn from_facets(vertices: VertexSet, facets: &[Vec<usize>]) -> Result<Self, SimplicialError> {
        let mut all = BTreeSet::new();
        all.insert(0u64);
        for f in facets {
            for &v in f {
                if v >= vertices.len() {
                    return Err(SimplicialError::MalformedPoset(format!("facet vertex index {v} out of range")));
                }
                if vertices.is_ghost(v) {
                    return Err(SimplicialError::GhostInSimplex(vertices.id(v).to_string()));
                }
            }
            let m = mask_of(f.iter().copied());
            let mut sub = m;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        Self::from_masks(vertices, all.into_iter().collect())
    }

    /// The simplicial complex whose simplices are exactly `masks`, which must
    /// be closed under taking subsets.
    pub fn from_masks(vertices: VertexSet, mut masks: Vec<VertexMask>) -> Result<Self, SimplicialError> {
        masks.sort_by_key(|&m| (m.count_ones(), m));
        masks.dedup();
        let index: HashMap<VertexMask, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut covers = Vec::new();
        for (i, &m) in masks.iter().enumerate() {
            for v in mask_indices(m) {
                match index.get(&(m & !(1 << v))) {
                    Some(&j) => covers.push((j, i)),
                    None => {
                        return Err(SimplicialError::MalformedPoset(format!(
                            "{} is missing its face {}",
                            vertices.format_mask(m),
                            vertices.format_mask(m & !(1 << v))
                        )))
                    }
                }
            }
        }
        Self::new(vertices, masks, &covers)
    }

    /// The poset `{∅}` on the given vertices.
    pub fn empty(vertices: VertexSet) -> Self {
        Self::from_masks(vertices, vec![0]).expect("empty complex")
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, sigma: u32) -> VertexMask {
        self.masks[sigma as usize]
    }

    pub fn rank(&self, sigma: u32) -> u32 {
        self.masks[sigma as usize].count_ones()
    }

    pub fn dim(&self) -> i64 {
        self.masks.iter().map(|m| m.count_ones() as i64).max().unwrap_or(0) - 1
    }

    pub fn upper_covers(&self, sigma: u32) -> &[u32] {
        &self.up[sigma as usize]
    }

    /// The face of `tau` with vertex set `mask`, if `mask ⊆ V(tau)`.
    pub fn face(&self, tau: u32, mask: VertexMask) -> Option<u32> {
        self.faces[tau as usize].get(&mask).copied()
    }

    pub fn le(&self, sigma: u32, tau: u32) -> bool {
        self.face(tau, self.mask(sigma)) == Some(sigma)
    }

    pub fn maximal(&self) -> &[u32] {
        &self.maximal
    }

    pub fn maximal_above(&self, sigma: u32) -> &[u32] {
        &self.max_above[sigma as usize]
    }

    pub fn vertex_element(&self, v: usize) -> Option<u32> {
        self.vertex_element[v]
    }

    /// Vertices occurring in some simplex.
    pub fn support(&self) -> VertexMask {
        self.masks.iter().fold(0, |a, &m| a | m)
    }

    /// Whether each element is determined by its vertex set.
    pub fn is_complex(&self) -> bool {
        self.is_complex
    }

    /// The element with vertex set `mask` in a simplicial complex.
    pub fn simplex(&self, mask: VertexMask) -> Option<u32> {
        self.maximal_above(0).iter().find_map(|&t| self.face(t, mask))
    }

    /// Elements of the given rank.
    pub fn elements_of_rank(&self, r: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(move |&s| self.rank(s) == r)
    }

    /// The join `self * other` on the concatenated vertex set. Element
    /// `(σ, τ)` has vertex set `V(σ) ∪ V(τ)` shifted past `self`'s vertices.
    pub fn join(&self, other: &SimplicialPoset) -> Result<SimplicialPoset, SimplicialError> {
        let vertices = self.vertices.concat(&other.vertices)?;
        let shift = self.num_vertices();
        let (n1, n2) = (self.len(), other.len());
        let id = |a: usize, b: usize| a * n2 + b;
        let mut masks = Vec::with_capacity(n1 * n2);
        let mut covers = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                masks.push(self.masks[a] | (other.masks[b] << shift));
                for &a2 in &self.up[a] {
                    covers.push((id(a, b), id(a2 as usize, b)));
                }
                for &b2 in &other.up[b] {
                    covers.push((id(a, b), id(a, b2 as usize)));
                }
            }
        }
        SimplicialPoset::new(vertices, masks, &covers)
    }

    /// The element `(a, b)` of `self.join(other)`.
    pub fn join_element(&self, other: &SimplicialPoset, a: u32, b: u32) -> u32 {
        let n2 = other.len();
        let key = |x: usize, y: usize| (self.masks[x].count_ones() + other.masks[y].count_ones(), x * n2 + y);
        let target = key(a as usize, b as usize);
        let mut below = 0;
        for x in 0..self.len() {
            for y in 0..n2 {
                if key(x, y) < target {
                    below += 1;
                }
            }
        }
        below
    }

    /// Full subcomplex on the vertex subset `w`, re-indexed onto the vertices
    /// of `w` in their original order.
    pub fn full_subcomplex(&self, w: VertexMask) -> Result<SimplicialPoset, SimplicialError> {
        if !self.is_complex {
            return Err(SimplicialError::NotAComplex);
        }
        let keep: Vec<usize> = mask_indices(w).filter(|&i| i < self.num_vertices()).collect();
        let ids = keep.iter().map(|&i| self.vertices.id(i).to_string()).collect();
        let ghost = keep.iter().map(|&i| self.vertices.is_ghost(i)).collect();
        let vertices = VertexSet::new(ids, ghost)?;
        let masks = self
            .masks
            .iter()
            .filter(|&&m| m & !w == 0)
            .map(|&m| mask_of(keep.iter().enumerate().filter(|&(_, &v)| m >> v & 1 == 1).map(|(k, _)| k)))
            .collect();
        SimplicialPoset::from_masks(vertices, masks)
    }

    /// Cover relations as `(lower, upper)` pairs in element order.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (lo, ups) in self.up.iter().enumerate() {
            for &hi in ups {
                out.push((lo as u32, hi));
            }
        }
        out
    }

    pub fn format_element(&self, sigma: u32) -> String {
        if self.is_complex {
            self.vertices.format_mask(self.mask(sigma))
        } else {
            format!("#{}{}", sigma, self.vertices.format_mask(self.mask(sigma)))
        }
    }
}

fn build(
    vertices: VertexSet,
    masks: Vec<VertexMask>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
) -> Result<SimplicialPoset, SimplicialError> {
    let n = masks.len();
    let mut faces: Vec<HashMap<VertexMask, u32>> = Vec::with_capacity(n);
    // Elements are sorted by rank, so lower covers are processed first.
    for s in 0..n {
        let mut f = HashMap::new();
        f.insert(masks[s], s as u32);
        for &l in &down[s] {
            for (&m, &e) in &faces[l as usize] {
                if let Some(&prev) = f.get(&m) {
                    if prev != e {
                        return Err(SimplicialError::NotBoolean(vertices.format_mask(masks[s])));
                    }
                } else {
                    f.insert(m, e);
                }
            }
        }
        let r = masks[s].count_ones();
        if f.len() != 1usize << r || down[s].len() != r as usize {
            return Err(SimplicialError::NotBoolean(vertices.format_mask(masks[s])));
        }
        faces.push(f);
    }
    let maximal: Vec<u32> = (0..n as u32).filter(|&s| up[s as usize].is_empty()).collect();
    let mut max_above = vec![Vec::new(); n];
    for &t in &maximal {
        let mut below: Vec<u32> = faces[t as usize].values().copied().collect();
        below.sort_unstable();
        for s in below {
            max_above[s as usize].push(t);
        }
    }
    let mut vertex_element = vec![None; vertices.len()];
    for (s, mask) in masks.iter().enumerate() {
        if mask.count_ones() == 1 {
            let v = mask.trailing_zeros() as usize;
            if vertex_element[v].is_some() {
                return Err(SimplicialError::MalformedPoset(format!(
                    "vertex {} occurs as more than one element",
                    vertices.id(v)
                )));
            }
            vertex_element[v] = Some(s as u32);
        }
    }
    let distinct: BTreeSet<VertexMask> = masks.iter().copied().collect();
    let is_complex = distinct.len() == n;
    Ok(SimplicialPoset { vertices, masks, up, faces, max_above, maximal, vertex_element, is_complex })
}

impl fmt::Debug for SimplicialPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = (0..self.len() as u32).map(|s| self.format_element(s)).collect();
        write!(f, "SimplicialPoset[{}]", elems.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(n: usize) -> VertexSet {
        VertexSet::numbered(n)
    }

    #[test]
    fn two_points() {
        let p = SimplicialPoset::from_facets(vs(2), &[vec![0], vec![1]]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.maximal(), &[1, 2]);
        assert!(p.is_complex());
    }

    #[test]
    fn only_empty_simplex() {
        let p = SimplicialPoset::from_facets(vs(0), &[vec![]]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.maximal(), &[0]);
    }

    #[test]
    fn path_has_five_nonempty_simplices() {
        let p = SimplicialPoset::from_facets(vs(3), &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(p.len() - 1, 5);
        let e01 = p.simplex(0b011).unwrap();
        let v1 = p.simplex(0b010).unwrap();
        assert!(p.le(v1, e01));
        assert_eq!(p.maximal_above(v1).len(), 2);
    }

    #[test]
    fn ghost_in_facet_rejected() {
        let v = VertexSet::new(vec!["a".into(), "g".into()], vec![false, true]).unwrap();
        assert!(matches!(SimplicialPoset::from_facets(v, &[vec![0, 1]]), Err(SimplicialError::GhostInSimplex(_))));
    }

    #[test]
    fn two_edges_on_same_vertices() {
        // ∅ < a, b < e1, e2: a simplicial poset that is not a complex
        let masks = vec![0, 0b01, 0b10, 0b11, 0b11];
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)];
        let p = SimplicialPoset::new(vs(2), masks, &covers).unwrap();
        assert!(!p.is_complex());
        assert_eq!(p.maximal(), &[3, 4]);
        assert!(p.full_subcomplex(0b11).is_err());
    }

    #[test]
    fn non_boolean_interval_rejected() {
        // an edge with only one vertex below it
        let masks = vec![0, 0b01, 0b10, 0b11];
        let covers = [(0, 1), (0, 2), (1, 3)];
        assert!(SimplicialPoset::new(vs(2), masks, &covers).is_err());
    }

    #[test]
    fn join_examples() {
        let pt = SimplicialPoset::from_facets(vs(1), &[vec![0]]).unwrap();
        let j = pt.join(&pt).unwrap();
        assert_eq!(j.maximal().len(), 1);
        assert_eq!(j.rank(j.maximal()[0]), 2);
        assert_eq!(j.vertices().ids(), &["0".to_string(), "0'".to_string()]);

        let two = SimplicialPoset::from_facets(vs(2), &[vec![0], vec![1]]).unwrap();
        let j = two.join(&two).unwrap();
        assert_eq!(j.num_vertices(), 4);
        assert_eq!(j.len(), 9);
        assert_eq!(j.maximal().len(), 4);
        assert!(j.maximal().iter().all(|&t| j.rank(t) == 2));

        let unit = SimplicialPoset::empty(vs(0));
        let j = two.join(&unit).unwrap();
        assert_eq!(j.len(), two.len());
        assert_eq!(j.maximal().len(), 2);
    }

    #[test]
    fn full_subcomplex_of_square() {
        let sq = SimplicialPoset::from_facets(vs(4), &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert_eq!(sq.full_subcomplex(0).unwrap().len(), 1);
        assert_eq!(sq.full_subcomplex(0b1111).unwrap().len(), sq.len());
        let opposite = sq.full_subcomplex(0b0101).unwrap();
        assert_eq!(opposite.len(), 3);
        assert_eq!(opposite.maximal().len(), 2);
    }
}
