//! Partial representations of finite groups, the partial actions they
//! induce, and the maps relating them to crossed products.

pub mod elementary;
pub mod semigroup;

use rayon::prelude::*;

use crate::algebra::{verify_morphism, Algebra, Ideal};
use crate::crossed::CrossedProduct;
use crate::error::{PactError, Result};
use crate::group::Group;
use crate::linalg::{LinearMap, Subspace, Vector};
use crate::paction::{verify_equivalence, PartialAction};

/// A map `π: G -> B` into a unital algebra, stored as vectors of `B`.
#[derive(Debug, Clone)]
pub struct PartialRep {
    group: Group,
    target: Algebra,
    images: Vec<Vector>,
}

/// Which partial-representation law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepLaw {
    Unit,
    /// `π(g)π(h)π(h^-1) = π(gh)π(h^-1)`
    Right,
    /// `π(g^-1)π(g)π(h) = π(g^-1)π(gh)`
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepViolation {
    pub law: RepLaw,
    pub g: usize,
    pub h: usize,
}

impl PartialRep {
    /// Checks shapes only; see [`PartialRep::verify`].
    pub fn new(group: Group, target: Algebra, images: Vec<Vector>) -> Result<PartialRep> {
        target.require_unit()?;
        if images.len() != group.order() {
            return Err(PactError::DimensionMismatch(format!(
                "{} images for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        if images.iter().any(|v| v.len() != target.dim()) {
            return Err(PactError::DimensionMismatch("image vector has the wrong length".into()));
        }
        Ok(PartialRep { group, target, images })
    }

    /// Builds and verifies.
    pub fn checked(group: Group, target: Algebra, images: Vec<Vector>) -> Result<PartialRep> {
        let rep = PartialRep::new(group, target, images)?;
        if let Some(v) = rep.verify() {
            return Err(PactError::VerificationFailed(format!(
                "not a partial representation: {:?} law fails at ({}, {})",
                v.law,
                rep.group.label(v.g),
                rep.group.label(v.h)
            )));
        }
        Ok(rep)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn image(&self, g: usize) -> &Vector {
        &self.images[g]
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    /// First violated law in `(g, h)` order.
    pub fn verify(&self) -> Option<RepViolation> {
        let grp = &self.group;
        let b = &self.target;
        let e = grp.identity();
        if Some(&self.images[e]) != b.unit() {
            return Some(RepViolation { law: RepLaw::Unit, g: e, h: e });
        }
        let pairs: Vec<(usize, usize)> = grp.elements().flat_map(|g| grp.elements().map(move |h| (g, h))).collect();
        pairs.par_iter().find_map_first(|&(g, h)| {
            let p = |x: usize| &self.images[x];
            let (gi, hi, gh) = (grp.inv(g), grp.inv(h), grp.mul(g, h));
            if b.mul(&b.mul(p(g), p(h)), p(hi)) != b.mul(p(gh), p(hi)) {
                return Some(RepViolation { law: RepLaw::Right, g, h });
            }
            if b.mul(&b.mul(p(gi), p(g)), p(h)) != b.mul(p(gi), p(gh)) {
                return Some(RepViolation { law: RepLaw::Left, g, h });
            }
            None
        })
    }

    /// `ε_g = π(g)π(g^-1)`.
    pub fn epsilon(&self, g: usize) -> Vector {
        self.target.mul(&self.images[g], &self.images[self.group.inv(g)])
    }

    pub fn epsilon_family(&self) -> EpsilonFamily {
        let grp = &self.group;
        let b = &self.target;
        let eps: Vec<Vector> = grp.elements().map(|g| self.epsilon(g)).collect();
        let idempotent = eps.iter().all(|e| &b.mul(e, e) == e);
        let commuting = eps.iter().all(|x| eps.iter().all(|y| b.mul(x, y) == b.mul(y, x)));
        let covariant = grp.elements().all(|g| {
            grp.elements().all(|h| {
                let p = &self.images[g];
                b.mul(p, &eps[h]) == b.mul(&eps[grp.mul(g, h)], p)
                    && b.mul(&eps[h], p) == b.mul(p, &eps[grp.mul(grp.inv(g), h)])
            })
        });
        EpsilonFamily { epsilons: eps, idempotent, commuting, covariant }
    }

    /// The partial action `α^π` on the subalgebra generated by the `ε_g`.
    pub fn induced_action(&self) -> Result<InducedAction> {
        let fam = self.epsilon_family();
        if !fam.ok() {
            return Err(PactError::VerificationFailed(format!("epsilon family fails: {fam:?}")));
        }
        let grp = &self.group;
        let b = &self.target;
        let f = b.field();
        let space = b.generated_subalgebra(&fam.epsilons, true);
        let (alg, inclusion) = b.subalgebra(&space)?;
        let to_coords = |v: &Vector| space.coords(v).expect("inside the generated subalgebra");
        let eps_coords: Vec<Vector> = fam.epsilons.iter().map(to_coords).collect();
        let domains = grp
            .elements()
            .map(|g| {
                let gens: Vec<Vector> = (0..alg.dim()).map(|i| alg.mul(&eps_coords[g], &alg.basis(i))).collect();
                alg.ideal(Subspace::span(f, alg.dim(), &gens))
            })
            .collect::<Result<Vec<Ideal>>>()?;
        let maps = grp
            .elements()
            .map(|g| {
                let src = &domains[grp.inv(g)];
                let cols = src
                    .basis()
                    .iter()
                    .map(|a| {
                        let inner = inclusion.apply(a);
                        let conj = b.mul(&b.mul(&self.images[g], &inner), &self.images[grp.inv(g)]);
                        space.coords(&conj).ok_or_else(|| {
                            PactError::VerificationFailed("conjugation leaves the generated subalgebra".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                LinearMap::new(f, src.dim(), alg.dim(), cols)
            })
            .collect::<Result<Vec<_>>>()?;
        let action = PartialAction::new(grp.clone(), alg, domains, maps)?;
        let report = action.verify();
        if !report.is_valid() {
            return Err(PactError::VerificationFailed(format!("induced action fails: {:?}", report.violations[0])));
        }
        Ok(InducedAction { action, inclusion, epsilons: eps_coords })
    }
}

/// `ε_g` together with the checks on them.
#[derive(Debug, Clone)]
pub struct EpsilonFamily {
    pub epsilons: Vec<Vector>,
    pub idempotent: bool,
    pub commuting: bool,
    /// `π(g)ε_h = ε_{gh}π(g)` and `ε_hπ(g) = π(g)ε_{g^-1 h}`.
    pub covariant: bool,
}

impl EpsilonFamily {
    pub fn ok(&self) -> bool {
        self.idempotent && self.commuting && self.covariant
    }
}

/// `α^π` on the subalgebra generated by the `ε_g`.
#[derive(Debug, Clone)]
pub struct InducedAction {
    pub action: PartialAction,
    /// Coordinates of the subalgebra into the target of the representation.
    pub inclusion: LinearMap,
    /// `ε_g` in subalgebra coordinates; these are the units `1_g`.
    pub epsilons: Vec<Vector>,
}

/// `g -> 1_g δ_g` into an associative crossed product.
#[derive(Debug, Clone)]
pub struct CrossedRep {
    pub crossed: CrossedProduct,
    pub rep: PartialRep,
}

pub fn pi_alpha(action: &PartialAction) -> Result<CrossedRep> {
    let units = action.unit_family()?;
    let crossed = CrossedProduct::build(action)?;
    if let Some((i, j, k)) = crossed.associativity_witness() {
        let l = crossed.labels();
        return Err(PactError::Unsupported(format!(
            "partial representations need an associative target; (xy)z != x(yz) at ({}, {}, {})",
            l[i], l[j], l[k]
        )));
    }
    let alg = crossed.to_algebra()?;
    let images = action
        .group()
        .elements()
        .map(|g| crossed.element(g, &units[g]).expect("1_g lies in D_g"))
        .collect();
    let rep = PartialRep::checked(action.group().clone(), alg, images)?;
    Ok(CrossedRep { crossed, rep })
}

/// `a δ_1 -> a` on the subalgebra generated by the `1_g δ_1`.
#[derive(Debug, Clone)]
pub struct PhiAlpha {
    pub crossed_rep: CrossedRep,
    pub induced: InducedAction,
    /// Coordinates of the generated subalgebra into the base algebra.
    pub map: LinearMap,
    pub intertwines: bool,
    /// The base is generated by the units and the map is an equivalence.
    pub equivalence: bool,
}

pub fn phi_alpha_map(action: &PartialAction) -> Result<PhiAlpha> {
    let crossed_rep = pi_alpha(action)?;
    let induced = crossed_rep.rep.induced_action()?;
    let cp = &crossed_rep.crossed;
    let grp = action.group();
    let base = action.base();
    let sub = induced.action.base();
    let cols: Vec<Vector> = (0..sub.dim())
        .map(|i| cp.component(&induced.inclusion.apply(&sub.basis(i)), grp.identity()))
        .collect();
    let map = LinearMap::new(base.field(), sub.dim(), base.dim(), cols)?;
    let mono = map.is_injective() && verify_morphism(sub, base, &map, false).is_ok();
    let intertwines = mono
        && grp.elements().all(|g| {
            induced.action.domain(grp.inv(g)).basis().iter().all(|x| {
                let lhs = map.apply(&induced.action.apply(g, x).expect("in domain"));
                action.apply(g, &map.apply(x)).as_ref() == Some(&lhs)
            })
        });
    let equivalence = intertwines && map.is_bijective() && verify_equivalence(&induced.action, action, &map);
    Ok(PhiAlpha { crossed_rep, induced, map, intertwines, equivalence })
}

/// `Σ a_g δ_g -> Σ a_g π(g)` out of the crossed product of `α^π`.
#[derive(Debug, Clone)]
pub struct PhiPi {
    pub induced: InducedAction,
    pub crossed: CrossedProduct,
    pub map: LinearMap,
}

impl PhiPi {
    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }
}

pub fn phi_pi(rep: &PartialRep) -> Result<PhiPi> {
    let induced = rep.induced_action()?;
    phi_pi_from(rep, induced)
}

pub(crate) fn phi_pi_from(rep: &PartialRep, induced: InducedAction) -> Result<PhiPi> {
    let crossed = CrossedProduct::build(&induced.action)?;
    let grp = rep.group();
    let b = rep.target();
    let mut cols = Vec::with_capacity(crossed.dim());
    for g in grp.elements() {
        for a in induced.action.domain(g).basis() {
            cols.push(b.mul(&induced.inclusion.apply(a), rep.image(g)));
        }
    }
    let map = LinearMap::new(b.field(), crossed.dim(), b.dim(), cols)?;
    let bad = (0..crossed.dim())
        .flat_map(|i| (0..crossed.dim()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .find_first(|&(i, j)| {
            map.apply(&crossed.mul(&crossed.basis(i), &crossed.basis(j))) != b.mul(&map.columns()[i], &map.columns()[j])
        });
    if let Some((i, j)) = bad {
        return Err(PactError::VerificationFailed(format!(
            "phi_pi is not multiplicative on {} * {}",
            crossed.labels()[i],
            crossed.labels()[j]
        )));
    }
    for g in grp.elements() {
        let x = crossed.element(g, &induced.epsilons[g]).expect("ε_g lies in D_g");
        if &map.apply(&x) != rep.image(g) {
            return Err(PactError::VerificationFailed(format!(
                "phi_pi(ε_g δ_g) != π(g) at {}",
                grp.label(g)
            )));
        }
    }
    Ok(PhiPi { induced, crossed, map })
}

/// Outcome of the expectation criterion for injectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectivityVerdict {
    Injective,
    Inapplicable(String),
}

/// Injectivity of a morphism out of a crossed product from a conditional
/// expectation `E` on the target.
///
/// Hypotheses: `φ` is multiplicative and injective on `A δ_1`, no nonzero
/// `a` in `D_g` has `a D_g = 0`, and `E` fixes `φ(A δ_1)` while killing
/// `φ(D_g δ_g)` for `g != 1`. When they hold the kernel is cross-checked
/// to be zero.
pub fn expectation_injectivity(
    crossed: &CrossedProduct,
    target: &Algebra,
    phi: &LinearMap,
    expectation: &LinearMap,
) -> Result<InjectivityVerdict> {
    let action = crossed.action();
    let grp = action.group();
    let base = action.base();
    if phi.domain_dim() != crossed.dim() || phi.codomain_dim() != target.dim() {
        return Err(PactError::DimensionMismatch("phi does not match the crossed product and target".into()));
    }
    if expectation.domain_dim() != target.dim() || expectation.codomain_dim() != target.dim() {
        return Err(PactError::DimensionMismatch("expectation must be an endomorphism of the target".into()));
    }
    for i in 0..crossed.dim() {
        for j in 0..crossed.dim() {
            if phi.apply(&crossed.mul(&crossed.basis(i), &crossed.basis(j))) != target.mul(&phi.columns()[i], &phi.columns()[j]) {
                return Ok(InjectivityVerdict::Inapplicable(format!(
                    "phi is not multiplicative on {} * {}",
                    crossed.labels()[i],
                    crossed.labels()[j]
                )));
            }
        }
    }
    let e = grp.identity();
    let on_base = Subspace::span(
        base.field(),
        target.dim(),
        &crossed.block(e).map(|k| phi.columns()[k].clone()).collect::<Vec<_>>(),
    );
    if on_base.dim() != base.dim() {
        return Ok(InjectivityVerdict::Inapplicable("phi is not injective on the base".into()));
    }
    for g in grp.elements() {
        let ann = base.ideal_algebra(action.domain(g)).annihilators();
        if !ann.left.is_zero() {
            return Ok(InjectivityVerdict::Inapplicable(format!(
                "a nonzero element of D_{} annihilates D_{}",
                grp.label(g),
                grp.label(g)
            )));
        }
    }
    for g in grp.elements() {
        for k in crossed.block(g) {
            let image = &phi.columns()[k];
            let expected = if g == e { image.clone() } else { target.zero() };
            if expectation.apply(image) != expected {
                return Ok(InjectivityVerdict::Inapplicable(format!(
                    "expectation fails on the image of {}",
                    crossed.labels()[k]
                )));
            }
        }
    }
    if !phi.is_injective() {
        return Err(PactError::Inconsistent("hypotheses hold but phi has a kernel".into()));
    }
    Ok(InjectivityVerdict::Injective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::unit_vector;
    use crate::paction::{counterexample_action, restrict_global, GlobalAction};

    fn q() -> Field {
        Field::Rationals
    }

    fn k3_restriction() -> PartialAction {
        let k3 = Algebra::product_field(q(), 3);
        let swap = LinearMap::new(q(), 3, 3, vec![k3.basis(1), k3.basis(0), k3.basis(2)]).unwrap();
        let beta = GlobalAction::new(Group::cyclic(2).unwrap(), k3.clone(), vec![LinearMap::identity(q(), 3), swap]).unwrap();
        let i = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).unwrap();
        restrict_global(&beta, &i).unwrap().action
    }

    #[test]
    fn trivial_reps() {
        let g = Group::cyclic(3).unwrap();
        let kg = Algebra::group_algebra(q(), &g);
        let rep = PartialRep::checked(g.clone(), kg.clone(), (0..3).map(|i| kg.basis(i)).collect()).unwrap();
        let fam = rep.epsilon_family();
        assert!(fam.ok());
        assert!(fam.epsilons.iter().all(|e| Some(e) == kg.unit()));
        let induced = rep.induced_action().unwrap();
        assert_eq!(induced.action.base().dim(), 1);
        let k = Algebra::ground(q());
        let z2 = Group::cyclic(2).unwrap();
        let zero_rep = PartialRep::checked(z2, k.clone(), vec![k.basis(0), k.zero()]).unwrap();
        assert!(zero_rep.epsilon_family().ok());
        let bad = PartialRep::new(Group::cyclic(2).unwrap(), k.clone(), vec![k.basis(0), k.basis(0).iter().map(|x| x + x).collect()]).unwrap();
        assert_eq!(bad.verify().map(|v| v.law), Some(RepLaw::Right));
    }

    #[test]
    fn pi_alpha_of_restriction() {
        let pa = k3_restriction();
        let cr = pi_alpha(&pa).unwrap();
        let g = 1;
        assert_eq!(cr.crossed.format(cr.rep.image(g)), "e3@g");
        let phi = phi_alpha_map(&pa).unwrap();
        assert!(phi.intertwines);
        assert!(phi.equivalence);
        assert!(matches!(pi_alpha(&counterexample_action(q())), Err(PactError::MissingUnits(_))));
    }

    #[test]
    fn global_unital_phi_alpha() {
        let k2 = Algebra::product_field(q(), 2);
        let swap = LinearMap::new(q(), 2, 2, vec![k2.basis(1), k2.basis(0)]).unwrap();
        let beta = GlobalAction::new(Group::cyclic(2).unwrap(), k2, vec![LinearMap::identity(q(), 2), swap]).unwrap();
        let phi = phi_alpha_map(&beta.as_partial()).unwrap();
        assert_eq!(phi.induced.action.base().dim(), 1);
        assert_eq!(phi.map.columns()[0], vec![q().one(), q().one()]);
        assert!(phi.intertwines);
        assert!(!phi.equivalence);
    }

    #[test]
    fn identity_expectation() {
        let k2 = Algebra::product_field(q(), 2);
        let trivial = Group::cyclic(1).unwrap();
        let pa = GlobalAction::new(trivial, k2.clone(), vec![LinearMap::identity(q(), 2)]).unwrap().as_partial();
        let cp = CrossedProduct::build(&pa).unwrap();
        let verdict = expectation_injectivity(&cp, &k2, &LinearMap::identity(q(), 2), &LinearMap::identity(q(), 2)).unwrap();
        assert_eq!(verdict, InjectivityVerdict::Injective);
    }

    #[test]
    fn degenerate_domain_is_inapplicable() {
        let z = Algebra::zero_product(q(), 1, vec!["z".into()]).unwrap();
        let trivial = Group::cyclic(1).unwrap();
        let pa = GlobalAction::new(trivial, z.clone(), vec![LinearMap::identity(q(), 1)]).unwrap().as_partial();
        let cp = CrossedProduct::build(&pa).unwrap();
        let id = LinearMap::identity(q(), 1);
        let verdict = expectation_injectivity(&cp, &z, &id, &id).unwrap();
        assert!(matches!(verdict, InjectivityVerdict::Inapplicable(_)));
        assert_eq!(unit_vector(q(), 1, 0), z.basis(0));
    }
}
