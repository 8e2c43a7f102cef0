use std::collections::BTreeMap;

use super::{CohomologyClass, TorError, TorTable};
use crate::koszul::{KoszulElement, TwistData};

/// Which product on the Koszul complex induces the product on cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    /// The exterior product tensored with the face ring product.
    Untwisted,
    /// The twisted product built from the canonical twist.
    Twisted,
}

/// `(total degree, generator index)` of a generator.
pub type GeneratorRef = (usize, usize);

/// Products of all pairs of generators whose degrees sum to at most the
/// table's bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub kind: ProductKind,
    pub entries: BTreeMap<(GeneratorRef, GeneratorRef), CohomologyClass>,
}

/// A pair of generators on which the two products disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDifference {
    pub left: GeneratorRef,
    pub right: GeneratorRef,
    pub twisted: CohomologyClass,
    pub untwisted: CohomologyClass,
}

impl TorTable {
    fn cocycle_product(&self, kind: ProductKind, a: &KoszulElement, b: &KoszulElement) -> KoszulElement {
        let k = self.complex();
        match kind {
            ProductKind::Untwisted => k.wedge(a, b),
            ProductKind::Twisted => k.star(a, b),
        }
    }

    /// Product of two classes, computed on representatives.
    pub fn multiply(
        &self,
        kind: ProductKind,
        a: &CohomologyClass,
        b: &CohomologyClass,
    ) -> Result<CohomologyClass, TorError> {
        let prod = self.cocycle_product(kind, &self.cocycle(a), &self.cocycle(b));
        self.reduce_in_degree(&prod, a.degree + b.degree).map_err(|e| match e {
            TorError::NotACocycle => TorError::ProductNotCocycle,
            e => e,
        })
    }

    /// Product of two cocycles for an arbitrary twist.
    pub fn multiply_with_twist(
        &self,
        twist: &TwistData,
        a: &KoszulElement,
        b: &KoszulElement,
    ) -> Result<CohomologyClass, TorError> {
        let d = a.total_degree().unwrap_or(0) + b.total_degree().unwrap_or(0);
        let prod = self.complex().star_with(twist, a, b);
        self.reduce_in_degree(&prod, d).map_err(|e| match e {
            TorError::NotACocycle => TorError::ProductNotCocycle,
            e => e,
        })
    }

    pub fn product_table(&self, kind: ProductKind) -> Result<ProductTable, TorError> {
        let mut pairs = Vec::new();
        for d1 in self.degrees() {
            for d2 in self.degrees() {
                if d1 + d2 > self.max_total_degree() {
                    continue;
                }
                for i in 0..self.generators(d1).len() {
                    for j in 0..self.generators(d2).len() {
                        pairs.push(((d1, i), (d2, j)));
                    }
                }
            }
        }
        use rayon::prelude::*;
        let entries = pairs
            .into_par_iter()
            .map(|(l, r)| {
                let c = self.multiply(kind, &self.basis_class(l.0, l.1), &self.basis_class(r.0, r.1))?;
                Ok(((l, r), c))
            })
            .collect::<Result<BTreeMap<_, _>, TorError>>()?;
        Ok(ProductTable { kind, entries })
    }
}

impl ProductTable {
    pub fn get(&self, left: GeneratorRef, right: GeneratorRef) -> Option<&CohomologyClass> {
        self.entries.get(&(left, right))
    }
}

/// Entries where the twisted and untwisted products differ.
pub fn compare_products(twisted: &ProductTable, untwisted: &ProductTable) -> Vec<ProductDifference> {
    twisted
        .entries
        .iter()
        .filter_map(|(&(left, right), t)| {
            let u = untwisted.entries.get(&(left, right))?;
            (t != u).then(|| ProductDifference { left, right, twisted: t.clone(), untwisted: u.clone() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_traits::Zero;

    use super::*;
    use crate::catalog;
    use crate::exactalg::CoefficientRing;

    #[test]
    fn example_products_differ_by_the_face_class() {
        let t = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals, None);
        let k = t.complex();
        let a1 = t.reduce(&k.linear_alpha(&[1, 0, -1])).unwrap();
        let a2 = t.reduce(&k.linear_alpha(&[0, 1, -1])).unwrap();
        let b_cocycle = k.add(&k.sub(&k.alpha_word(0b011), &k.alpha_word(0b101)), &k.alpha_word(0b110));
        let b = t.reduce(&b_cocycle).unwrap();
        let c = t.reduce(&k.from_face(&k.face_ring().vertex(0))).unwrap();
        assert_eq!(t.multiply(ProductKind::Untwisted, &a1, &a2).unwrap(), b);
        assert_eq!(t.multiply(ProductKind::Twisted, &a1, &a2).unwrap(), t.sub_classes(&b, &c));

        let tw = t.product_table(ProductKind::Twisted).unwrap();
        let un = t.product_table(ProductKind::Untwisted).unwrap();
        let diff = compare_products(&tw, &un);
        assert!(!diff.is_empty());
        // the difference is always a multiple of c
        for d in diff {
            if d.twisted.degree != 2 {
                continue;
            }
            let delta = t.sub_classes(&d.twisted, &d.untwisted);
            let ratio = delta.coords.iter().zip(&c.coords).find(|(_, y)| !y.is_zero());
            let (x, y) = ratio.unwrap();
            assert_eq!(t.scale_class(&c, &(x / y)), delta);
        }
    }

    #[test]
    fn moment_angle_products_agree() {
        let t = TorTable::compute(Arc::new(catalog::four_cycle()), CoefficientRing::Integers, None);
        let tw = t.product_table(ProductKind::Twisted).unwrap();
        let un = t.product_table(ProductKind::Untwisted).unwrap();
        assert!(compare_products(&tw, &un).is_empty());
    }
}
