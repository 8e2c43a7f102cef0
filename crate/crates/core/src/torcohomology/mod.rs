//! Cohomology of the Koszul complex: bigraded Tor tables with torsion,
//! reduction of cocycles to classes, product tables and a Hochster-type
//! cross-check for moment-angle data.
//!
//! The differential preserves a multigrading finer than the internal degree
//! (see [`Multigrading`](crate::koszul::Multigrading)), so each bidegree
//! splits into independent blocks that are solved in parallel.

mod hochster;
mod products;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{
    self, field, smith_normal_form, CoefficientRing, Field, IntMatrix, Matrix, PrimeField, Rationals, Rref,
};
use crate::koszul::{KoszulComplex, KoszulElement, KoszulTerm};
use crate::simplicial::CharacteristicData;

pub use hochster::{hochster_oracle, reduced_cohomology, HochsterEntry};
pub use products::{compare_products, ProductDifference, ProductKind, ProductTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorError {
    #[error("element is not a cocycle")]
    NotACocycle,
    #[error("element is not homogeneous in total degree")]
    NotHomogeneous,
    #[error("total degree {degree} exceeds the computed bound; recompute with a bound of at least {degree}")]
    DegreeBeyondBound { degree: usize },
    #[error("element has coefficients outside {0}")]
    NotInRing(CoefficientRing),
    #[error("2 is not invertible in {0}")]
    TwoNotInvertible(CoefficientRing),
    #[error("product of cocycles is not a cocycle")]
    ProductNotCocycle,
    #[error("complexes over different coefficient rings")]
    RingMismatch,
}

/// Bidegree `(−k, 2j)`.
pub type Bidegree = (i64, usize);

pub fn total_degree_of(b: Bidegree) -> usize {
    (b.1 as i64 + b.0) as usize
}

/// One generator of the cohomology in a given total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub bidegree: Bidegree,
    pub multidegree: Vec<u32>,
    /// Additive order; zero for a free generator.
    pub order: BigInt,
    pub representative: KoszulElement,
}

/// Free rank and torsion orders of one bidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidegreeSummary {
    pub free_rank: usize,
    /// Orders of the cyclic torsion summands, increasing.
    pub torsion: Vec<BigInt>,
}

impl BidegreeSummary {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Coordinates of a class with respect to the generators of its total
/// degree. Torsion coordinates lie in `[0, order)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coords: Vec<BigRational>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

type BlockKey = (usize, usize, Vec<u32>);
/// A solved block: its key, generators with their orders, and the reducer.
type SolvedBlock = (BlockKey, Vec<(BigInt, KoszulElement)>, Block);

#[derive(Clone, Debug)]
enum Reducer {
    /// Kernel coordinates are the entries at `free_cols`; `image_rows` is
    /// the reduced echelon basis of the image in those coordinates and
    /// generators sit at the non-pivot coordinates `complement`.
    Field { free_cols: Vec<usize>, image_rows: Vec<(usize, Vec<BigRational>)>, complement: Vec<usize> },
    /// Kernel coordinates are `kernel_coords · z`; class coordinates are
    /// `class_rows · (kernel coordinates)`, reduced modulo `orders`.
    Integer { kernel_coords: IntMatrix, class_rows: IntMatrix, orders: Vec<BigInt> },
}

#[derive(Clone, Debug)]
struct Block {
    index: HashMap<KoszulTerm, usize>,
    reducer: Reducer,
    /// Position of the block's first generator in its total degree.
    offset: usize,
}

/// The bigraded cohomology of `K_Σ` up to a total-degree bound.
#[derive(Clone, Debug)]
pub struct TorTable {
    complex: Arc<KoszulComplex>,
    max_total_degree: usize,
    generators: BTreeMap<usize, Vec<Generator>>,
    blocks: HashMap<BlockKey, Block>,
}

/// `|V| + n`, which bounds the dimension of the partial quotient.
pub fn default_max_total_degree(data: &CharacteristicData) -> usize {
    data.num_vertices() + data.lattice_rank()
}

impl TorTable {
    /// Cohomology of `data`'s Koszul complex over `ring` in total degrees
    /// `0..=max_total_degree` (default `|V| + n`).
    pub fn compute(data: Arc<CharacteristicData>, ring: CoefficientRing, max_total_degree: Option<usize>) -> TorTable {
        let d = max_total_degree.unwrap_or_else(|| default_max_total_degree(&data));
        Self::for_complex(Arc::new(KoszulComplex::new(data, ring)), d)
    }

    pub fn for_complex(complex: Arc<KoszulComplex>, max_total_degree: usize) -> TorTable {
        let n = complex.lattice_rank();
        let jmax = (max_total_degree + n) / 2;
        let grading = complex.grading();

        // For each internal degree, the chain groups split by multidegree.
        type Pieces = BTreeMap<Vec<u32>, BTreeMap<usize, Vec<KoszulTerm>>>;
        let per_j: Vec<(usize, Pieces)> = (0..=jmax)
            .into_par_iter()
            .map(|j| {
                let (lo, hi) = exterior_range(j, n, max_total_degree);
                let mut pieces: Pieces = BTreeMap::new();
                if lo <= hi {
                    for k in lo.saturating_sub(1)..=(hi + 1).min(n).min(j) {
                        for t in complex.bidegree_basis(k, j) {
                            pieces.entry(grading.degree(&t)).or_default().entry(k).or_default().push(t);
                        }
                    }
                }
                (j, pieces)
            })
            .collect();

        let mut tasks = Vec::new();
        for (j, pieces) in &per_j {
            let (lo, hi) = exterior_range(*j, n, max_total_degree);
            for (mu, by_k) in pieces {
                for k in lo..=hi {
                    if by_k.contains_key(&k) {
                        tasks.push((*j, k, mu.clone(), by_k));
                    }
                }
            }
        }
        let empty = Vec::new();
        let solved: Vec<SolvedBlock> = tasks
            .par_iter()
            .filter_map(|(j, k, mu, by_k)| {
                let below = if *k == 0 { &empty } else { by_k.get(&(k - 1)).unwrap_or(&empty) };
                let here = &by_k[k];
                let above = by_k.get(&(k + 1)).unwrap_or(&empty);
                let (gens, reducer) = solve_block(&complex, below, here, above);
                if gens.is_empty() {
                    return None;
                }
                let index = here.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
                Some(((*j, *k, mu.clone()), gens, Block { index, reducer, offset: 0 }))
            })
            .collect();

        let mut generators: BTreeMap<usize, Vec<Generator>> = BTreeMap::new();
        let mut blocks = HashMap::new();
        let mut ordered = solved;
        // total degree, then exterior degree, then multidegree
        ordered.sort_by(|a, b| {
            let key = |x: &BlockKey| (2 * x.0 - x.1, x.1, x.2.clone());
            key(&a.0).cmp(&key(&b.0))
        });
        for ((j, k, mu), gens, mut block) in ordered {
            let deg = 2 * j - k;
            let list = generators.entry(deg).or_default();
            block.offset = list.len();
            for (order, rep) in gens {
                list.push(Generator {
                    bidegree: (-(k as i64), 2 * j),
                    multidegree: mu.clone(),
                    order,
                    representative: rep,
                });
            }
            blocks.insert((j, k, mu), block);
        }
        TorTable { complex, max_total_degree, generators, blocks }
    }

    pub fn complex(&self) -> &KoszulComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<KoszulComplex> {
        &self.complex
    }

    pub fn ring(&self) -> CoefficientRing {
        self.complex.ring()
    }

    pub fn max_total_degree(&self) -> usize {
        self.max_total_degree
    }

    /// Generators of total degree `d`, ordered by exterior degree and then
    /// multidegree.
    pub fn generators(&self, d: usize) -> &[Generator] {
        self.generators.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.keys().copied()
    }

    /// Nonzero bidegrees with their free ranks and torsion.
    pub fn bidegrees(&self) -> BTreeMap<Bidegree, BidegreeSummary> {
        let mut out: BTreeMap<Bidegree, BidegreeSummary> = BTreeMap::new();
        for g in self.generators.values().flatten() {
            let e = out.entry(g.bidegree).or_default();
            if g.order.is_zero() {
                e.free_rank += 1;
            } else {
                e.torsion.push(g.order.clone());
            }
        }
        for s in out.values_mut() {
            s.torsion.sort();
        }
        out
    }

    pub fn summary(&self, b: Bidegree) -> BidegreeSummary {
        self.bidegrees().remove(&b).unwrap_or_default()
    }

    /// Free rank (dimension over a field) in bidegree `b`.
    pub fn rank(&self, b: Bidegree) -> usize {
        self.summary(b).free_rank
    }

    /// Free rank in total degree `d`.
    pub fn betti(&self, d: usize) -> usize {
        self.generators(d).iter().filter(|g| g.order.is_zero()).count()
    }

    pub fn zero_class(&self, d: usize) -> CohomologyClass {
        CohomologyClass { degree: d, coords: vec![BigRational::zero(); self.generators(d).len()] }
    }

    /// The class of the `i`-th generator in degree `d`.
    pub fn basis_class(&self, d: usize, i: usize) -> CohomologyClass {
        let mut c = self.zero_class(d);
        c.coords[i] = BigRational::one();
        c
    }

    fn normalize_coords(&self, d: usize, coords: &mut [BigRational]) {
        let ring = self.ring();
        for (c, g) in coords.iter_mut().zip(self.generators(d)) {
            *c = ring.normalize(c);
            if !g.order.is_zero() {
                *c = BigRational::from_integer(c.to_integer().mod_floor(&g.order));
            }
        }
    }

    pub fn add_classes(&self, a: &CohomologyClass, b: &CohomologyClass) -> CohomologyClass {
        assert_eq!(a.degree, b.degree, "adding classes of different degrees");
        let mut coords: Vec<BigRational> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.normalize_coords(a.degree, &mut coords);
        CohomologyClass { degree: a.degree, coords }
    }

    pub fn scale_class(&self, a: &CohomologyClass, c: &BigRational) -> CohomologyClass {
        let mut coords: Vec<BigRational> = a.coords.iter().map(|x| x * c).collect();
        self.normalize_coords(a.degree, &mut coords);
        CohomologyClass { degree: a.degree, coords }
    }

    pub fn sub_classes(&self, a: &CohomologyClass, b: &CohomologyClass) -> CohomologyClass {
        self.add_classes(a, &self.scale_class(b, &-BigRational::one()))
    }

    /// `Σ c_i · representative_i`.
    pub fn cocycle(&self, class: &CohomologyClass) -> KoszulElement {
        let k = &self.complex;
        let mut out = KoszulElement::zero();
        for (c, g) in class.coords.iter().zip(self.generators(class.degree)) {
            if !c.is_zero() {
                out = k.add(&out, &k.scale(&g.representative, c));
            }
        }
        out
    }

    /// The class of a nonzero cocycle, with its degree read off the terms.
    pub fn reduce(&self, z: &KoszulElement) -> Result<CohomologyClass, TorError> {
        let d = z.total_degree().ok_or(TorError::NotHomogeneous)?;
        self.reduce_in_degree(z, d)
    }

    /// The class of a cocycle of total degree `d`.
    pub fn reduce_in_degree(&self, z: &KoszulElement, d: usize) -> Result<CohomologyClass, TorError> {
        if z.iter().any(|(t, _)| t.total_degree() != d) {
            return Err(TorError::NotHomogeneous);
        }
        if d > self.max_total_degree {
            return Err(TorError::DegreeBeyondBound { degree: d });
        }
        let ring = self.ring();
        for (_, c) in z.iter() {
            ring.try_normalize(c).map_err(|_| TorError::NotInRing(ring))?;
        }
        if !self.complex.differential(z).is_zero() {
            return Err(TorError::NotACocycle);
        }
        let grading = self.complex.grading();
        let mut parts: BTreeMap<BlockKey, Vec<(&KoszulTerm, &BigRational)>> = BTreeMap::new();
        for (t, c) in z.iter() {
            let k = t.exterior_degree();
            let j = (d + k) / 2;
            parts.entry((j, k, grading.degree(t))).or_default().push((t, c));
        }
        let mut out = self.zero_class(d);
        for (key, terms) in parts {
            let Some(block) = self.blocks.get(&key) else { continue };
            let mut v = vec![BigRational::zero(); block.index.len()];
            for (t, c) in terms {
                v[block.index[t]] = c.clone();
            }
            let coords = block.reducer.reduce(ring, &v);
            for (i, c) in coords.into_iter().enumerate() {
                out.coords[block.offset + i] = c;
            }
        }
        self.normalize_coords(d, &mut out.coords);
        Ok(out)
    }

    /// The class of `z` together with `y` such that
    /// `z − cocycle(class) = d(y)`.
    pub fn reduce_with_witness(&self, z: &KoszulElement) -> Result<(CohomologyClass, KoszulElement), TorError> {
        let class = self.reduce(z)?;
        let rest = self.complex.sub(z, &self.cocycle(&class));
        let y = coboundary_witness(&self.complex, &rest).expect("difference of cohomologous cocycles is exact");
        Ok((class, y))
    }

    /// Whether `z` is a coboundary.
    pub fn is_coboundary(&self, z: &KoszulElement) -> Result<bool, TorError> {
        match z.total_degree() {
            None if z.is_zero() => Ok(true),
            None => Err(TorError::NotHomogeneous),
            Some(d) => Ok(self.reduce_in_degree(z, d)?.is_zero()),
        }
    }
}

/// Some `y` with `d(y) = w`, if one exists over the coefficient ring.
pub fn coboundary_witness(complex: &KoszulComplex, w: &KoszulElement) -> Option<KoszulElement> {
    if w.is_zero() {
        return Some(KoszulElement::zero());
    }
    let d = w.total_degree()?;
    let grading = complex.grading();
    let mut parts: BTreeMap<BlockKey, Vec<(&KoszulTerm, &BigRational)>> = BTreeMap::new();
    for (t, c) in w.iter() {
        let k = t.exterior_degree();
        parts.entry(((d + k) / 2, k, grading.degree(t))).or_default().push((t, c));
    }
    let ring = complex.ring();
    let mut out = KoszulElement::zero();
    for ((j, k, mu), terms) in parts {
        let here: Vec<KoszulTerm> =
            complex.bidegree_basis(k, j).into_iter().filter(|t| grading.degree(t) == mu).collect();
        let above: Vec<KoszulTerm> =
            complex.bidegree_basis(k + 1, j).into_iter().filter(|t| grading.degree(t) == mu).collect();
        let a = differential_matrix(complex, &above, &here);
        let index: HashMap<&KoszulTerm, usize> = here.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut b = vec![BigRational::zero(); here.len()];
        for (t, c) in terms {
            b[index[t]] = c.clone();
        }
        let m = exactalg::ExactMatrix::new(ring, a).ok()?;
        let y = exactalg::solve(&m, &b).ok()??;
        for (t, c) in above.iter().zip(y) {
            out.add_term(ring, t.clone(), &c);
        }
    }
    Some(out)
}

/// Exterior degrees `k` whose bidegree `(−k, 2j)` has total degree at most
/// `bound`.
fn exterior_range(j: usize, n: usize, bound: usize) -> (usize, usize) {
    let lo = (2 * j).saturating_sub(bound);
    let hi = n.min(j);
    (lo, hi)
}

/// Matrix of `d` from the span of `from` to the span of `to` (rows).
fn differential_matrix(complex: &KoszulComplex, from: &[KoszulTerm], to: &[KoszulTerm]) -> Matrix<BigRational> {
    let index: HashMap<&KoszulTerm, usize> = to.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = Matrix::zeros(to.len(), from.len());
    let one = BigRational::one();
    for (col, t) in from.iter().enumerate() {
        let mut img = KoszulElement::zero();
        complex.differential_term(t, &one, &mut img);
        for (s, c) in img.iter() {
            m[(index[s], col)] = c.clone();
        }
    }
    m
}

fn solve_block(
    complex: &KoszulComplex,
    below: &[KoszulTerm],
    here: &[KoszulTerm],
    above: &[KoszulTerm],
) -> (Vec<(BigInt, KoszulElement)>, Reducer) {
    let d_out = differential_matrix(complex, here, below);
    let d_in = differential_matrix(complex, above, here);
    let ring = complex.ring();
    let (vectors, reducer) = match ring {
        CoefficientRing::Rationals => field_block(&Rationals, &d_out, &d_in),
        CoefficientRing::ModPrime(p) => field_block(&PrimeField::new(p), &d_out, &d_in),
        CoefficientRing::Integers => integer_block(&d_out, &d_in),
    };
    let gens = vectors
        .into_iter()
        .map(|(order, v)| {
            let mut e = KoszulElement::zero();
            for (t, c) in here.iter().zip(v) {
                e.add_term(ring, t.clone(), &c);
            }
            (order, e)
        })
        .collect();
    (gens, reducer)
}

type BlockVectors = Vec<(BigInt, Vec<BigRational>)>;

fn field_block<F: Field>(f: &F, d_out: &Matrix<BigRational>, d_in: &Matrix<BigRational>) -> (BlockVectors, Reducer) {
    let rref = Rref::new(f.clone(), &exactalg::to_field(f, d_out));
    let free_cols = rref.free_columns();
    let kernel = rref.kernel_basis();
    let d_in_f = exactalg::to_field(f, d_in);
    // image vectors in kernel coordinates, one per row
    let mut image = Matrix::from_fn(d_in_f.cols(), free_cols.len(), |r, c| d_in_f[(free_cols[c], r)].clone());
    let pivots = field::row_reduce(f, &mut image, None);
    let image_rows: Vec<(usize, Vec<BigRational>)> =
        pivots.iter().enumerate().map(|(r, &p)| (p, exactalg::from_field(f, image.row(r)))).collect();
    let mut is_pivot = vec![false; free_cols.len()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let complement: Vec<usize> = (0..free_cols.len()).filter(|&c| !is_pivot[c]).collect();
    let vectors = complement.iter().map(|&c| (BigInt::zero(), exactalg::from_field(f, &kernel[c]))).collect();
    (vectors, Reducer::Field { free_cols, image_rows, complement })
}

fn integer_block(d_out: &Matrix<BigRational>, d_in: &Matrix<BigRational>) -> (BlockVectors, Reducer) {
    let to_int = |m: &Matrix<BigRational>| m.map(|x| x.to_integer());
    let (d_out, d_in) = (to_int(d_out), to_int(d_in));
    let cols = d_out.cols();
    let s = smith_normal_form(&d_out);
    let r = s.rank();
    let kdim = cols - r;
    let kernel = Matrix::from_fn(cols, kdim, |i, c| s.v[(i, r + c)].clone());
    let kernel_coords = Matrix::from_fn(kdim, cols, |c, i| s.v_inv[(r + c, i)].clone());
    let m = kernel_coords.mul(&d_in);
    let s2 = smith_normal_form(&m);
    let order_of = |i: usize| s2.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
    let mut picked: Vec<usize> = (0..kdim).filter(|&i| order_of(i).is_zero()).collect();
    picked.extend((0..kdim).filter(|&i| {
        let o = order_of(i);
        !o.is_zero() && !o.is_one()
    }));
    let class_rows = Matrix::from_fn(picked.len(), kdim, |g, c| s2.u[(picked[g], c)].clone());
    let orders: Vec<BigInt> = picked.iter().map(|&i| order_of(i)).collect();
    let vectors = picked
        .iter()
        .zip(&orders)
        .map(|(&i, o)| {
            let coeffs = s2.u_inv.column(i);
            let v = kernel.mul_vec(&coeffs);
            (o.clone(), v.into_iter().map(BigRational::from_integer).collect())
        })
        .collect();
    (vectors, Reducer::Integer { kernel_coords, class_rows, orders })
}

impl Reducer {
    fn reduce(&self, ring: CoefficientRing, z: &[BigRational]) -> Vec<BigRational> {
        match self {
            Reducer::Field { free_cols, image_rows, complement } => {
                let mut c: Vec<BigRational> = free_cols.iter().map(|&i| z[i].clone()).collect();
                for (p, row) in image_rows {
                    if c[*p].is_zero() {
                        continue;
                    }
                    let factor = c[*p].clone();
                    for (x, y) in c.iter_mut().zip(row) {
                        if !y.is_zero() {
                            *x = ring.normalize(&(&*x - &factor * y));
                        }
                    }
                }
                complement.iter().map(|&i| c[i].clone()).collect()
            }
            Reducer::Integer { kernel_coords, class_rows, orders } => {
                let zi: Vec<BigInt> = z.iter().map(|x| x.to_integer()).collect();
                let kc = kernel_coords.mul_vec(&zi);
                class_rows
                    .mul_vec(&kc)
                    .into_iter()
                    .zip(orders)
                    .map(|(x, o)| BigRational::from_integer(if o.is_zero() { x } else { x.mod_floor(o) }))
                    .collect()
            }
        }
    }
}
