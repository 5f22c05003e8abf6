//! Partial skew group rings `A ⋊ G`, kept as possibly non-associative
//! algebras, with brute-force and condition-(X) associativity tests.

use crate::algebra::{Algebra, StructureTable};
use crate::error::{PactError, Result};
use crate::field::{format_combination, Field, Scalar};
use crate::linalg::{unit_vector, zero_vector, LinearMap, Subspace, Vector};
use crate::paction::{ConditionXWitness, PartialAction};

/// `⊕_g D_g δ_g` with `(a δ_g)(b δ_h) = α_g(α_{g^-1}(a) b) δ_{gh}`.
///
/// Basis vectors are `(g, i)`: the `i`-th canonical basis vector of `D_g`
/// times `δ_g`, ordered by group index and then by `i`.
#[derive(Debug, Clone)]
pub struct CrossedProduct {
    action: PartialAction,
    offsets: Vec<usize>,
    table: StructureTable,
    labels: Vec<String>,
}

/// A failing basis triple of the crossed product.
pub type Triple = (usize, usize, usize);

impl CrossedProduct {
    /// Refuses actions that do not pass [`PartialAction::verify`].
    pub fn build(action: &PartialAction) -> Result<CrossedProduct> {
        let report = action.verify();
        if !report.is_valid() {
            let first = &report.violations[0];
            return Err(PactError::VerificationFailed(format!(
                "not a partial action: {} {}",
                first.condition, first.detail
            )));
        }
        let grp = action.group();
        let base = action.base();
        let f = base.field();
        let mut offsets = Vec::with_capacity(grp.order() + 1);
        let mut acc = 0;
        for g in grp.elements() {
            offsets.push(acc);
            acc += action.domain(g).dim();
        }
        offsets.push(acc);
        let dim = acc;
        let mut labels = Vec::with_capacity(dim);
        for g in grp.elements() {
            for i in 0..action.domain(g).dim() {
                labels.push(format!("({},{})", grp.label(g), i + 1));
            }
        }
        let mut table = StructureTable::zero(f, dim);
        for g in grp.elements() {
            let gi = grp.inv(g);
            for (i, a) in action.domain(g).basis().iter().enumerate() {
                let back = action.apply(gi, a).expect("D_g is the domain of alpha_{g^-1}");
                for h in grp.elements() {
                    let gh = grp.mul(g, h);
                    for (j, b) in action.domain(h).basis().iter().enumerate() {
                        let inner = base.mul(&back, b);
                        let prod = action.apply(g, &inner).expect("ideal");
                        let coords = action.domain(gh).space().coords(&prod).ok_or_else(|| {
                            PactError::VerificationFailed(format!("product leaves D_{}", grp.label(gh)))
                        })?;
                        for (k, c) in coords.into_iter().enumerate() {
                            if !c.is_zero() {
                                table.add_term(offsets[g] + i, offsets[h] + j, offsets[gh] + k, c);
                            }
                        }
                    }
                }
            }
        }
        Ok(CrossedProduct { action: action.clone(), offsets, table, labels })
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.table.mul(x, y)
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.field(), self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field(), self.dim())
    }

    /// Basis indices belonging to `g`.
    pub fn block(&self, g: usize) -> std::ops::Range<usize> {
        self.offsets[g]..self.offsets[g + 1]
    }

    /// Group element of a basis index.
    pub fn degree_of(&self, index: usize) -> usize {
        self.offsets.partition_point(|&o| o <= index) - 1
    }

    /// `a δ_g` for `a` in `D_g`.
    pub fn element(&self, g: usize, a: &[Scalar]) -> Option<Vector> {
        let c = self.action.domain(g).space().coords(a)?;
        let mut v = self.zero();
        for (k, x) in c.into_iter().enumerate() {
            v[self.offsets[g] + k] = x;
        }
        Some(v)
    }

    /// Component of `x` at `δ_g`, as a vector of the base algebra.
    pub fn component(&self, x: &[Scalar], g: usize) -> Vector {
        self.action.domain(g).space().element(&x[self.block(g)])
    }

    /// Renders `x` as a sum of `a@g` terms.
    pub fn format(&self, x: &[Scalar]) -> String {
        let grp = self.action.group();
        let base = self.action.base();
        let terms: Vec<String> = grp
            .elements()
            .filter_map(|g| {
                let c = self.component(x, g);
                if c.iter().all(Scalar::is_zero) {
                    return None;
                }
                let s = base.format(&c);
                Some(if s.contains(' ') { format!("({s})@{}", grp.label(g)) } else { format!("{s}@{}", grp.label(g)) })
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Renders a vector in the `(g,i)` basis labels.
    pub fn format_basis(&self, x: &[Scalar]) -> String {
        format_combination(x, &self.labels)
    }

    /// First violating triple in lexicographic `((g,i),(h,j),(f,k))` order.
    pub fn associativity_witness(&self) -> Option<Triple> {
        self.table.associativity_witness()
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// The crossed product as an [`Algebra`], when associative.
    pub fn to_algebra(&self) -> Result<Algebra> {
        Algebra::new(self.table.clone(), None, self.labels.clone())
    }

    /// `a -> a δ_1`, checked injective and multiplicative.
    pub fn embed_base(&self) -> Result<LinearMap> {
        let base = self.action.base();
        let e = self.action.group().identity();
        let cols = (0..base.dim())
            .map(|i| self.element(e, &base.basis(i)).expect("D_1 = A"))
            .collect();
        let map = LinearMap::new(self.field(), base.dim(), self.dim(), cols)?;
        if !map.is_injective() {
            return Err(PactError::VerificationFailed("a -> a δ_1 is not injective".into()));
        }
        for i in 0..base.dim() {
            for j in 0..base.dim() {
                let lhs = map.apply(&base.mul(&base.basis(i), &base.basis(j)));
                let rhs = self.mul(&map.columns()[i], &map.columns()[j]);
                if lhs != rhs {
                    return Err(PactError::VerificationFailed(format!(
                        "a -> a δ_1 fails on {} * {}",
                        base.labels()[i],
                        base.labels()[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Image of a subspace of the base algebra inside `D_g δ_g`.
    pub fn block_subspace(&self, g: usize, space: &Subspace) -> Option<Subspace> {
        let vs = space.basis().iter().map(|a| self.element(g, a)).collect::<Option<Vec<_>>>()?;
        Some(Subspace::span(self.field(), self.dim(), &vs))
    }
}

/// Runs condition (X) for every group element; `None` means associative.
pub fn associativity_via_condition_x(action: &PartialAction) -> Result<Option<(usize, ConditionXWitness)>> {
    for g in action.group().elements() {
        if let Some(w) = action.slice(g)?.condition_x_check() {
            return Ok(Some((g, w)));
        }
    }
    Ok(None)
}

/// Does every product of homogeneous basis elements land in the right block?
pub fn is_graded(cp: &CrossedProduct) -> bool {
    let grp = cp.action.group();
    (0..cp.dim()).all(|i| {
        (0..cp.dim()).all(|j| {
            let target = cp.block(grp.mul(cp.degree_of(i), cp.degree_of(j)));
            cp.table.terms(i, j).iter().all(|(k, _)| target.contains(k))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::paction::{counterexample_action, restrict_global, GlobalAction};

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn counterexample_powers() {
        let pa = counterexample_action(q());
        let cp = CrossedProduct::build(&pa).unwrap();
        assert_eq!(cp.dim(), 6);
        assert!(!cp.is_associative());
        assert!(is_graded(&cp));
        let a = pa.base();
        let x = crate::linalg::add(&cp.element(0, &a.basis(1)).unwrap(), &cp.element(1, &a.basis(2)).unwrap());
        let xx = cp.mul(&x, &x);
        assert_eq!(cp.mul(&xx, &x), cp.zero());
        assert_eq!(cp.mul(&x, &xx), cp.element(1, &a.basis(2)).unwrap());
        assert_eq!(cp.format(&cp.mul(&x, &xx)), "u@g");
        assert!(associativity_via_condition_x(&pa).unwrap().is_some());
    }

    #[test]
    fn global_swap_is_ordinary_skew_ring() {
        let k2 = Algebra::product_field(q(), 2);
        let swap = LinearMap::new(q(), 2, 2, vec![k2.basis(1), k2.basis(0)]).unwrap();
        let beta = GlobalAction::new(Group::cyclic(2).unwrap(), k2, vec![LinearMap::identity(q(), 2), swap]).unwrap();
        let cp = CrossedProduct::build(&beta.as_partial()).unwrap();
        assert_eq!(cp.dim(), 4);
        assert!(cp.is_associative());
        assert!(associativity_via_condition_x(&beta.as_partial()).unwrap().is_none());
        let emb = cp.embed_base().unwrap();
        assert_eq!(emb.rank(), 2);
        assert_eq!(cp.labels()[3], "(g,2)");
    }

    #[test]
    fn restriction_crossed_product() {
        let k3 = Algebra::product_field(q(), 3);
        let swap = LinearMap::new(q(), 3, 3, vec![k3.basis(1), k3.basis(0), k3.basis(2)]).unwrap();
        let beta = GlobalAction::new(Group::cyclic(2).unwrap(), k3.clone(), vec![LinearMap::identity(q(), 3), swap]).unwrap();
        let i = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).unwrap();
        let pa = restrict_global(&beta, &i).unwrap().action;
        let cp = CrossedProduct::build(&pa).unwrap();
        assert_eq!(cp.dim(), 3);
        assert!(cp.is_associative());
    }

    #[test]
    fn embed_counterexample_base() {
        let pa = counterexample_action(q());
        let cp = CrossedProduct::build(&pa).unwrap();
        let emb = cp.embed_base().unwrap();
        let a = pa.base();
        assert_eq!(cp.format(&emb.apply(a.unit().unwrap())), "1@1");
        let tv = cp.mul(&emb.apply(&a.basis(1)), &emb.apply(&a.basis(3)));
        assert_eq!(tv, emb.apply(&a.basis(2)));
    }
}
