//! JSON input documents for characteristic data and toric morphisms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use torprod::exactalg::Matrix;
use torprod::simplicial::{mask_indices, mask_of, CharacteristicData, SimplicialPoset, VertexSet};
use torprod::toricmorphism::ToricMorphism;

/// A parse or schema error, located by line/column or by field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentError {
    pub location: String,
    pub message: String,
}

impl DocumentError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        DocumentError { location: location.into(), message: message.to_string() }
    }
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for DocumentError {}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DocumentError> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = message.strip_suffix(&suffix).unwrap_or(&message).to_string();
        DocumentError::at(format!("line {} column {}", e.line(), e.column()), message)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ghost: bool,
    /// Column of the characteristic matrix.
    pub ray: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub name: String,
    pub vertices: Vec<String>,
}

/// A simplicial poset by its nonempty elements and the covers among them;
/// the empty element and its covers are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetEntry {
    pub elements: Vec<ElementEntry>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanEntry {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ghost_rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub lattice_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexEntry>,
    /// Extra ghost vertices, appended after `vertices`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ghosts: Vec<VertexEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanEntry>,
}

/// Parsed characteristic data together with the names used in its document.
#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub name: String,
    pub data: Arc<CharacteristicData>,
    /// Poset element names, when given.
    pub element_names: HashMap<String, u32>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<ParsedInput, DocumentError> {
        from_json::<InputDocument>(text)?.resolve()
    }

    pub fn resolve(&self) -> Result<ParsedInput, DocumentError> {
        let given = [self.facets.is_some(), self.poset.is_some(), self.fan.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(DocumentError::at("document", "exactly one of facets, poset or fan is required"));
        }
        if let Some(fan) = &self.fan {
            return self.resolve_fan(fan);
        }
        let mut entries: Vec<(String, &VertexEntry, bool)> =
            self.vertices.iter().enumerate().map(|(i, v)| (format!("vertices[{i}]"), v, v.ghost)).collect();
        entries.extend(self.ghosts.iter().enumerate().map(|(i, v)| (format!("ghosts[{i}]"), v, true)));
        for (path, v, _) in &entries {
            if v.ray.len() != self.lattice_rank {
                return Err(DocumentError::at(
                    format!("{path}.ray"),
                    format!("has {} entries, lattice_rank is {}", v.ray.len(), self.lattice_rank),
                ));
            }
        }
        let vertices = VertexSet::new(
            entries.iter().map(|(_, v, _)| v.id.clone()).collect(),
            entries.iter().map(|(_, _, g)| *g).collect(),
        )
        .map_err(|e| DocumentError::at("vertices", e))?;
        let chi = Matrix::from_fn(self.lattice_rank, entries.len(), |i, v| BigInt::from(entries[v].1.ray[i]));
        let lookup = |path: &str, id: &str| {
            vertices.index_of(id).ok_or_else(|| DocumentError::at(path, format!("unknown vertex {id:?}")))
        };
        let mut element_names = HashMap::new();
        let poset = if let Some(facets) = &self.facets {
            let mut idx = Vec::with_capacity(facets.len());
            for (i, f) in facets.iter().enumerate() {
                let mut face = Vec::with_capacity(f.len());
                for (k, id) in f.iter().enumerate() {
                    face.push(lookup(&format!("facets[{i}][{k}]"), id)?);
                }
                idx.push(face);
            }
            SimplicialPoset::from_facets(vertices, &idx).map_err(|e| DocumentError::at("facets", e))?
        } else {
            let entry = self.poset.as_ref().expect("one source checked above");
            let mut masks = vec![0];
            let mut by_name = HashMap::new();
            for (i, e) in entry.elements.iter().enumerate() {
                let path = format!("poset.elements[{i}]");
                if e.vertices.is_empty() {
                    return Err(DocumentError::at(path, "the empty element is implicit"));
                }
                let mut idx = Vec::with_capacity(e.vertices.len());
                for (k, id) in e.vertices.iter().enumerate() {
                    idx.push(lookup(&format!("{path}.vertices[{k}]"), id)?);
                }
                if by_name.insert(e.name.clone(), masks.len()).is_some() {
                    return Err(DocumentError::at(path, format!("duplicate element name {:?}", e.name)));
                }
                masks.push(mask_of(idx));
            }
            let mut covers: Vec<(usize, usize)> =
                (1..masks.len()).filter(|&i| masks[i].count_ones() == 1).map(|i| (0, i)).collect();
            for (i, [lo, hi]) in entry.covers.iter().enumerate() {
                let get = |k: usize, n: &String| {
                    by_name.get(n).copied().ok_or_else(|| {
                        DocumentError::at(format!("poset.covers[{i}][{k}]"), format!("unknown element {n:?}"))
                    })
                };
                covers.push((get(0, lo)?, get(1, hi)?));
            }
            let poset =
                SimplicialPoset::new(vertices, masks.clone(), &covers).map_err(|e| DocumentError::at("poset", e))?;
            // recover the renumbering: stable sort by rank
            let mut order: Vec<usize> = (0..masks.len()).collect();
            order.sort_by_key(|&i| (masks[i].count_ones(), i));
            let mut new_id = vec![0u32; masks.len()];
            for (k, &i) in order.iter().enumerate() {
                new_id[i] = k as u32;
            }
            for (name, pos) in by_name {
                element_names.insert(name, new_id[pos]);
            }
            poset
        };
        let data = CharacteristicData::new(poset, chi).map_err(|e| DocumentError::at("vertices", e))?;
        Ok(ParsedInput { name: self.name.clone(), data: Arc::new(data), element_names })
    }

    fn resolve_fan(&self, fan: &FanEntry) -> Result<ParsedInput, DocumentError> {
        if !self.vertices.is_empty() || !self.ghosts.is_empty() {
            return Err(DocumentError::at("fan", "vertices are derived from the fan and must not be listed"));
        }
        let big = |rows: &[Vec<i64>], field: &str| -> Result<Vec<Vec<BigInt>>, DocumentError> {
            rows.iter()
                .enumerate()
                .map(|(i, r)| {
                    if r.len() != self.lattice_rank {
                        return Err(DocumentError::at(format!("fan.{field}[{i}]"), "length differs from lattice_rank"));
                    }
                    Ok(r.iter().map(|&x| BigInt::from(x)).collect())
                })
                .collect()
        };
        let rays = big(&fan.rays, "rays")?;
        let ghosts = big(&fan.ghost_rays, "ghost_rays")?;
        let data = CharacteristicData::from_fan(&rays, &fan.cones, &ghosts, self.lattice_rank)
            .map_err(|e| DocumentError::at("fan", e))?;
        Ok(ParsedInput { name: self.name.clone(), data: Arc::new(data), element_names: HashMap::new() })
    }

    /// The canonical document for `data`: explicit vertices, and facets for
    /// complexes or elements `s1, s2, …` with covers otherwise.
    pub fn from_data(name: &str, data: &CharacteristicData) -> InputDocument {
        let p = data.poset();
        let vs = p.vertices();
        let vertices = (0..vs.len())
            .map(|v| VertexEntry {
                id: vs.id(v).to_string(),
                ghost: vs.is_ghost(v),
                ray: data.ray(v).iter().map(|x| i64::try_from(x).expect("ray entries fit in i64")).collect(),
            })
            .collect();
        let ids = |mask| mask_indices(mask).map(|v| vs.id(v).to_string()).collect::<Vec<_>>();
        let (facets, poset) = if p.is_complex() {
            (Some(p.maximal().iter().map(|&s| ids(p.mask(s))).collect()), None)
        } else {
            let name = |s: u32| format!("s{s}");
            let elements =
                (1..p.len() as u32).map(|s| ElementEntry { name: name(s), vertices: ids(p.mask(s)) }).collect();
            let covers =
                p.covers().into_iter().filter(|&(lo, _)| lo != 0).map(|(lo, hi)| [name(lo), name(hi)]).collect();
            (None, Some(PosetEntry { elements, covers }))
        };
        InputDocument {
            name: name.to_string(),
            lattice_rank: data.lattice_rank(),
            vertices,
            ghosts: Vec::new(),
            facets,
            poset,
            fan: None,
        }
    }
}

/// A simplex named either by its vertex ids (complexes) or by element name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SimplexRef {
    Vertices(Vec<String>),
    Element(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexPair {
    pub from: SimplexRef,
    pub to: SimplexRef,
}

/// A toric morphism `source → target`. `matrix` has one row per target
/// coordinate. `nu` must give every source vertex; for a target complex the
/// image of a larger simplex defaults to the simplex spanned by the images
/// of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub nu: Vec<SimplexPair>,
}

impl MorphismDocument {
    pub fn parse(text: &str) -> Result<MorphismDocument, DocumentError> {
        from_json(text)
    }

    /// Builds the morphism without checking the morphism conditions.
    pub fn resolve(&self, source: &ParsedInput, target: &ParsedInput) -> Result<ToricMorphism, DocumentError> {
        if self.source != source.name {
            return Err(DocumentError::at("source", format!("expected {:?}, got {:?}", source.name, self.source)));
        }
        if self.target != target.name {
            return Err(DocumentError::at("target", format!("expected {:?}, got {:?}", target.name, self.target)));
        }
        let (n, n2) = (target.data.lattice_rank(), source.data.lattice_rank());
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n2) {
            return Err(DocumentError::at("matrix", format!("expected {n} rows of length {n2}")));
        }
        let a = Matrix::from_fn(n, n2, |i, j| BigInt::from(self.matrix[i][j]));
        let (sp, tp) = (source.data.poset(), target.data.poset());
        let mut nu: Vec<Option<u32>> = vec![None; sp.len()];
        nu[0] = Some(0);
        for (i, pair) in self.nu.iter().enumerate() {
            let from = find_simplex(source, &pair.from).map_err(|m| DocumentError::at(format!("nu[{i}].from"), m))?;
            let to = find_simplex(target, &pair.to).map_err(|m| DocumentError::at(format!("nu[{i}].to"), m))?;
            nu[from as usize] = Some(to);
        }
        for s in 1..sp.len() as u32 {
            if nu[s as usize].is_some() {
                continue;
            }
            let path = format!("nu ({})", sp.format_element(s));
            if sp.rank(s) == 1 || !tp.is_complex() {
                return Err(DocumentError::at(path, "no image given"));
            }
            let mut mask = 0;
            for v in mask_indices(sp.mask(s)) {
                let e = sp.vertex_element(v).expect("vertex of a simplex");
                mask |= tp.mask(nu[e as usize].ok_or_else(|| DocumentError::at(path.clone(), "no image given"))?);
            }
            nu[s as usize] =
                Some(tp.simplex(mask).ok_or_else(|| DocumentError::at(path, "vertex images span no simplex"))?);
        }
        let nu = nu.into_iter().map(|x| x.expect("all filled")).collect();
        ToricMorphism::unchecked(source.data.clone(), target.data.clone(), a, nu)
            .map_err(|e| DocumentError::at("morphism", e))
    }
}

fn find_simplex(input: &ParsedInput, r: &SimplexRef) -> Result<u32, String> {
    let p = input.data.poset();
    match r {
        SimplexRef::Element(name) => input.element_names.get(name).copied().ok_or(format!("unknown element {name:?}")),
        SimplexRef::Vertices(ids) => {
            let mut idx = Vec::with_capacity(ids.len());
            for id in ids {
                idx.push(p.vertices().index_of(id).ok_or(format!("unknown vertex {id:?}"))?);
            }
            if !p.is_complex() && !ids.is_empty() {
                return Err("simplices of a poset must be named by element".to_string());
            }
            p.simplex(mask_of(idx)).ok_or(format!("{ids:?} is not a simplex"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torprod::catalog;

    #[test]
    fn round_trip_complex_and_poset() {
        let two_edges = SimplicialPoset::new(
            VertexSet::numbered(2),
            vec![0, 0b01, 0b10, 0b11, 0b11],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)],
        )
        .unwrap();
        let poset_data =
            CharacteristicData::new(two_edges, torprod::exactalg::int_matrix(&[&[1, 0], &[0, 1]])).unwrap();
        for data in [catalog::cstar2_p1(), poset_data] {
            let doc = InputDocument::from_data("x", &data);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let back = InputDocument::parse(&text).unwrap();
            assert_eq!(*back.data, data);
        }
    }

    #[test]
    fn errors_are_located() {
        let e = InputDocument::parse("{\n  \"name\": 3\n}").unwrap_err();
        assert!(e.location.starts_with("line 2"), "{e}");
        let e = InputDocument::parse(
            r#"{"name":"x","lattice_rank":1,"vertices":[{"id":"a","ray":[1]}],"facets":[["a","b"]]}"#,
        )
        .unwrap_err();
        assert_eq!(e.location, "facets[0][1]");
    }

    #[test]
    fn fan_documents() {
        let doc = r#"{"name":"p1","lattice_rank":1,"fan":{"rays":[[1],[-1]],"cones":[[0],[1]]}}"#;
        let parsed = InputDocument::parse(doc).unwrap();
        assert_eq!(parsed.data.num_vertices(), 2);
    }
}
