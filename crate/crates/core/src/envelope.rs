//! Enveloping actions of partial actions on unital algebras, their
//! comparison, the embedding of crossed products and the Morita context
//! between `A ⋊ G` and `B ⋊ G`.

use crate::algebra::{verify_isomorphism, Algebra};
use crate::crossed::CrossedProduct;
use crate::error::{PactError, Result};
use crate::linalg::{Echelon, LinearMap, Subspace, Vector};
use crate::paction::{GlobalAction, PartialAction};

/// A global action `(B, β)` with an embedding `φ: A -> B` of the base.
#[derive(Debug, Clone)]
pub struct EnvelopingAction {
    pub global: GlobalAction,
    /// Base-algebra vectors to coordinates of `B`.
    pub embedding: LinearMap,
}

/// Does every `D_g` have a unit? Requires a unital base.
pub fn has_enveloping(action: &PartialAction) -> Result<bool> {
    action.base().require_unit()?;
    for d in action.domains() {
        if action.base().unit_of_ideal(d)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The canonical enveloping action inside the functions `G -> A`.
///
/// `F(G, A)` is indexed by `(h, k) -> h * dim A + k`; `β_g(f)(h) = f(g^-1 h)`
/// and `φ(a)(g) = α_{g^-1}(a 1_g)`.
pub fn build_enveloping(action: &PartialAction) -> Result<EnvelopingAction> {
    let grp = action.group();
    let base = action.base();
    let units = action.unit_family()?;
    let n = grp.order();
    let d = base.dim();
    let f = base.field();
    let functions = base.function_algebra(n);
    let shift = |g: usize| -> LinearMap {
        LinearMap::from_fn(f, n * d, n * d, |idx| {
            let (h, k) = (idx / d, idx % d);
            functions.basis(grp.mul(g, h) * d + k)
        })
        .expect("shape")
    };
    let phi_f = LinearMap::from_fn(f, d, n * d, |i| {
        let a = base.basis(i);
        let mut out = Vec::with_capacity(n * d);
        for g in grp.elements() {
            let part = action.apply(grp.inv(g), &base.mul(&a, &units[g])).expect("a 1_g lies in D_g");
            out.extend(part);
        }
        out
    })?;
    let shifts: Vec<LinearMap> = grp.elements().map(shift).collect();
    let generators: Vec<Vector> =
        shifts.iter().flat_map(|s| phi_f.columns().iter().map(|c| s.apply(c)).collect::<Vec<_>>()).collect();
    let space = functions.generated_subalgebra(&generators, false);
    let (b, inclusion) = functions.subalgebra(&space)?;
    let coords = |v: &Vector| space.coords(v).expect("inside B");
    let maps = shifts
        .iter()
        .map(|s| LinearMap::new(f, b.dim(), b.dim(), inclusion.columns().iter().map(|c| coords(&s.apply(c))).collect()))
        .collect::<Result<Vec<_>>>()?;
    let global = GlobalAction::new(grp.clone(), b, maps)?;
    let embedding = LinearMap::new(f, d, global.algebra().dim(), phi_f.columns().iter().map(coords).collect())?;
    let env = EnvelopingAction { global, embedding };
    let report = verify_enveloping(action, &env);
    if !report.ok() {
        return Err(PactError::VerificationFailed(format!("canonical enveloping action fails: {report:?}")));
    }
    check_ideal_identities(action, &env, &units)?;
    Ok(env)
}

/// `β_g(φ(a)) φ(b) = φ(α_g(a 1_{g^-1}) b)` on basis elements.
fn check_ideal_identities(action: &PartialAction, env: &EnvelopingAction, units: &[Vector]) -> Result<()> {
    let grp = action.group();
    let base = action.base();
    let b = env.global.algebra();
    for g in grp.elements() {
        for i in 0..base.dim() {
            let a = base.basis(i);
            let moved = env.global.map(g).apply(&env.embedding.apply(&a));
            let a1 = action.apply(g, &base.mul(&a, &units[grp.inv(g)])).expect("in D_{g^-1}");
            for j in 0..base.dim() {
                let c = base.basis(j);
                if b.mul(&moved, &env.embedding.apply(&c)) != env.embedding.apply(&base.mul(&a1, &c)) {
                    return Err(PactError::VerificationFailed(format!(
                        "beta_{}(phi({})) phi({}) != phi(alpha_{}({} 1_{}) {})",
                        grp.label(g),
                        base.labels()[i],
                        base.labels()[j],
                        grp.label(g),
                        base.labels()[i],
                        grp.label(grp.inv(g)),
                        base.labels()[j]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `α_{h^-1 g}(a 1_{g^-1 h}) = α_{h^-1}(α_g(a) 1_h)` for all `g, h` and
/// basis `a` of `D_{g^-1}`, from the unit family alone.
pub fn check_alpha_identity(action: &PartialAction) -> Result<bool> {
    let grp = action.group();
    let base = action.base();
    let units = action.unit_family()?;
    for g in grp.elements() {
        for h in grp.elements() {
            let hi = grp.inv(h);
            for a in action.domain(grp.inv(g)).basis() {
                let lhs = action.apply(grp.mul(hi, g), &base.mul(a, &units[grp.mul(grp.inv(g), h)]));
                let ga = action.apply(g, a).expect("in D_{g^-1}");
                let rhs = action.apply(hi, &base.mul(&ga, &units[h]));
                if lhs.is_none() || lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of [`verify_enveloping`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopingReport {
    pub embedding_ok: bool,
    pub image_is_ideal: bool,
    /// `φ(D_g) = φ(A) ∩ β_g(φ(A))`
    pub domains: bool,
    /// `φ α_g = β_g φ` on `D_{g^-1}`
    pub intertwines: bool,
    /// `B` is generated by the translates `β_g(φ(A))`.
    pub generates: bool,
}

impl EnvelopingReport {
    pub fn ok(&self) -> bool {
        self.embedding_ok && self.image_is_ideal && self.domains && self.intertwines && self.generates
    }
}

pub fn verify_enveloping(action: &PartialAction, env: &EnvelopingAction) -> EnvelopingReport {
    let grp = action.group();
    let base = action.base();
    let b = env.global.algebra();
    let phi = &env.embedding;
    let mut report = EnvelopingReport {
        embedding_ok: false,
        image_is_ideal: false,
        domains: false,
        intertwines: false,
        generates: false,
    };
    if phi.domain_dim() != base.dim() || phi.codomain_dim() != b.dim() {
        return report;
    }
    report.embedding_ok = phi.is_injective() && crate::algebra::verify_morphism(base, b, phi, false).is_ok();
    let image = phi.image();
    report.image_is_ideal = b.ideal(image.clone()).is_ok();
    let translate = |g: usize, s: &Subspace| -> Subspace {
        Subspace::span(b.field(), b.dim(), &s.basis().iter().map(|x| env.global.map(g).apply(x)).collect::<Vec<_>>())
    };
    report.domains = grp.elements().all(|g| {
        let lhs = Subspace::span(
            b.field(),
            b.dim(),
            &action.domain(g).basis().iter().map(|x| phi.apply(x)).collect::<Vec<_>>(),
        );
        image.intersect(&translate(g, &image)).map(|r| r == lhs).unwrap_or(false)
    });
    report.intertwines = grp.elements().all(|g| {
        action.domain(grp.inv(g)).basis().iter().all(|x| {
            let ax = action.apply(g, x).expect("in domain");
            phi.apply(&ax) == env.global.map(g).apply(&phi.apply(x))
        })
    });
    let generators: Vec<Vector> = grp.elements().flat_map(|g| translate(g, &image).basis().to_vec()).collect();
    report.generates = b.generated_subalgebra(&generators, false).dim() == b.dim();
    report
}

/// The isomorphism `B1 -> B2` determined by `β1_g(φ1(a)) -> β2_g(φ2(a))`,
/// checked multiplicative and equivariant.
pub fn compare_envelopings(action: &PartialAction, first: &EnvelopingAction, second: &EnvelopingAction) -> Result<LinearMap> {
    let grp = action.group();
    let base = action.base();
    let (b1, b2) = (first.global.algebra(), second.global.algebra());
    let mut pairs = Vec::new();
    for g in grp.elements() {
        for i in 0..base.dim() {
            let a = base.basis(i);
            pairs.push((
                first.global.map(g).apply(&first.embedding.apply(&a)),
                second.global.map(g).apply(&second.embedding.apply(&a)),
            ));
        }
    }
    let map = LinearMap::from_pairs(b1.field(), b1.dim(), b2.dim(), &pairs)
        .map_err(|e| PactError::VerificationFailed(format!("envelopings are not comparable: {e}")))?;
    verify_isomorphism(b1, b2, &map).map_err(|e| PactError::NotAnIsomorphism(format!("{e:?}")))?;
    for g in grp.elements() {
        if map.compose(first.global.map(g))? != second.global.map(g).compose(&map)? {
            return Err(PactError::VerificationFailed(format!("comparison is not equivariant at {}", grp.label(g))));
        }
    }
    if map.compose(&first.embedding)? != second.embedding {
        return Err(PactError::VerificationFailed("comparison does not respect the embeddings".into()));
    }
    Ok(map)
}

/// `a δ_g -> φ(a) δ_g` from `A ⋊ G` into `B ⋊ G`.
#[derive(Debug, Clone)]
pub struct CrossedEmbedding {
    pub source: CrossedProduct,
    pub target: CrossedProduct,
    pub map: LinearMap,
}

pub fn embed_crossed(action: &PartialAction, env: &EnvelopingAction) -> Result<CrossedEmbedding> {
    let source = CrossedProduct::build(action)?;
    let target = CrossedProduct::build(&env.global.as_partial())?;
    let grp = action.group();
    let mut cols = Vec::with_capacity(source.dim());
    for g in grp.elements() {
        for a in action.domain(g).basis() {
            cols.push(target.element(g, &env.embedding.apply(a)).expect("D_g of a global action is everything"));
        }
    }
    let map = LinearMap::new(source.field(), source.dim(), target.dim(), cols)?;
    if !map.is_injective() {
        return Err(PactError::VerificationFailed("crossed product embedding is not injective".into()));
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = map.apply(&source.mul(&source.basis(i), &source.basis(j)));
            let rhs = target.mul(&map.columns()[i], &map.columns()[j]);
            if lhs != rhs {
                return Err(PactError::VerificationFailed(format!(
                    "crossed product embedding fails on {} * {}",
                    source.labels()[i],
                    source.labels()[j]
                )));
            }
        }
    }
    Ok(CrossedEmbedding { source, target, map })
}

/// The context `(A ⋊ G, B ⋊ G, M, N)` realized inside `B ⋊ G`.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub embedding: CrossedEmbedding,
    /// `Σ φ(A) δ_g`
    pub m: Subspace,
    /// `Σ β_g(φ(A)) δ_g`
    pub n: Subspace,
    pub report: MoritaReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaReport {
    pub m_right_ideal: bool,
    pub n_left_ideal: bool,
    pub m_left_module: bool,
    pub n_right_module: bool,
    pub compatibility: bool,
    pub mn_dim: usize,
    pub nm_dim: usize,
    pub small_dim: usize,
    pub large_dim: usize,
    /// `span(MN) = A ⋊ G` inside `B ⋊ G`.
    pub mn_is_small: bool,
    /// `span(NM) = B ⋊ G`.
    pub nm_is_large: bool,
}

impl MoritaReport {
    pub fn ok(&self) -> bool {
        self.m_right_ideal
            && self.n_left_ideal
            && self.m_left_module
            && self.n_right_module
            && self.compatibility
            && self.mn_is_small
            && self.nm_is_large
    }
}

pub fn morita_context(action: &PartialAction, env: &EnvelopingAction) -> Result<MoritaContext> {
    action.base().require_unit()?;
    env.global.algebra().require_unit()?;
    let embedding = embed_crossed(action, env)?;
    let big = &embedding.target;
    let grp = action.group();
    let f = big.field();
    let phi_a = env.embedding.image();
    let mut m_gens = Vec::new();
    let mut n_gens = Vec::new();
    for g in grp.elements() {
        for x in phi_a.basis() {
            m_gens.push(big.element(g, x).expect("global"));
            n_gens.push(big.element(g, &env.global.map(g).apply(x)).expect("global"));
        }
    }
    let m = Subspace::span(f, big.dim(), &m_gens);
    let n = Subspace::span(f, big.dim(), &n_gens);
    let small = embedding.map.image();
    let large = Subspace::full(f, big.dim());
    let products = |u: &Subspace, v: &Subspace| -> Subspace {
        let mut e = Echelon::new(f, big.dim());
        for x in u.basis() {
            for y in v.basis() {
                e.insert(&big.mul(x, y));
            }
        }
        e.into_subspace()
    };
    let mn = products(&m, &n);
    let nm = products(&n, &m);
    let compatibility = triple_identity(big, &m, &n, &m) && triple_identity(big, &n, &m, &n);
    let report = MoritaReport {
        m_right_ideal: products(&m, &large).is_subspace_of(&m),
        n_left_ideal: products(&large, &n).is_subspace_of(&n),
        m_left_module: products(&small, &m).is_subspace_of(&m),
        n_right_module: products(&n, &small).is_subspace_of(&n),
        compatibility,
        mn_dim: mn.dim(),
        nm_dim: nm.dim(),
        small_dim: small.dim(),
        large_dim: large.dim(),
        mn_is_small: mn == small,
        nm_is_large: nm == large,
    };
    Ok(MoritaContext { embedding, m, n, report })
}

/// `(x y) z = x (y z)` for basis vectors of the three subspaces.
fn triple_identity(ring: &CrossedProduct, xs: &Subspace, ys: &Subspace, zs: &Subspace) -> bool {
    xs.basis().iter().all(|x| {
        ys.basis().iter().all(|y| {
            let xy = ring.mul(x, y);
            zs.basis().iter().all(|z| ring.mul(&xy, z) == ring.mul(x, &ring.mul(y, z)))
        })
    })
}

/// The algebra `B` of an enveloping action.
pub fn ambient(env: &EnvelopingAction) -> &Algebra {
    env.global.algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::Group;
    use crate::paction::{counterexample_action, restrict_global, Restriction};

    fn q() -> Field {
        Field::Rationals
    }

    fn swap_k3() -> GlobalAction {
        let k3 = Algebra::product_field(q(), 3);
        let swap = LinearMap::new(q(), 3, 3, vec![k3.basis(1), k3.basis(0), k3.basis(2)]).unwrap();
        GlobalAction::new(Group::cyclic(2).unwrap(), k3, vec![LinearMap::identity(q(), 3), swap]).unwrap()
    }

    fn restricted() -> (GlobalAction, Restriction) {
        let beta = swap_k3();
        let k3 = beta.algebra().clone();
        let i = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).unwrap();
        let r = restrict_global(&beta, &i).unwrap();
        (beta, r)
    }

    #[test]
    fn restriction_envelope() {
        let (beta, r) = restricted();
        assert!(has_enveloping(&r.action).unwrap());
        let env = build_enveloping(&r.action).unwrap();
        assert_eq!(ambient(&env).dim(), 3);
        let original = EnvelopingAction { global: beta, embedding: r.inclusion.clone() };
        assert!(verify_enveloping(&r.action, &original).ok());
        let iso = compare_envelopings(&r.action, &env, &original).unwrap();
        assert!(iso.is_bijective());
        let emb = embed_crossed(&r.action, &env).unwrap();
        assert_eq!((emb.map.rank(), emb.target.dim()), (3, 6));
        assert!(check_alpha_identity(&r.action).unwrap());
        let mc = morita_context(&r.action, &env).unwrap();
        assert!(mc.report.ok(), "{:?}", mc.report);
        assert_eq!((mc.report.mn_dim, mc.report.nm_dim), (3, 6));
    }

    #[test]
    fn counterexample_has_no_envelope() {
        let pa = counterexample_action(q());
        assert!(!has_enveloping(&pa).unwrap());
        assert!(build_enveloping(&pa).is_err());
    }

    #[test]
    fn global_envelope_is_itself() {
        let beta = swap_k3();
        let pa = beta.as_partial();
        let env = build_enveloping(&pa).unwrap();
        assert_eq!(ambient(&env).dim(), 3);
        assert!(env.embedding.is_bijective());
        let mc = morita_context(&pa, &env).unwrap();
        assert_eq!(mc.m, mc.n);
        assert_eq!(mc.m.dim(), 6);
    }

    #[test]
    fn corner_action_on_k2() {
        let k2 = Algebra::product_field(q(), 2);
        let e1 = k2.ideal(Subspace::span(q(), 2, &[k2.basis(0)])).unwrap();
        let id1 = LinearMap::new(q(), 1, 2, vec![k2.basis(0)]).unwrap();
        let pa = PartialAction::new(
            Group::cyclic(2).unwrap(),
            k2.clone(),
            vec![k2.whole(), e1],
            vec![LinearMap::identity(q(), 2), id1],
        )
        .unwrap();
        let env = build_enveloping(&pa).unwrap();
        assert_eq!(ambient(&env).dim(), 3);
    }

    #[test]
    fn enlarged_ambient_fails_generation() {
        let (beta, r) = restricted();
        let k3 = beta.algebra();
        let k = Algebra::ground(q());
        let bigger = Algebra::direct_product(&[k3.clone(), k]).unwrap();
        let ext = |m: &LinearMap| {
            let mut cols: Vec<Vector> = m.columns().iter().map(|c| {
                let mut c = c.clone();
                c.push(q().zero());
                c
            }).collect();
            cols.push(bigger.basis(3));
            LinearMap::new(q(), 4, 4, cols).unwrap()
        };
        let global = GlobalAction::new(beta.group().clone(), bigger.clone(), beta.maps().iter().map(ext).collect()).unwrap();
        let emb = LinearMap::new(
            q(),
            2,
            4,
            r.inclusion.columns().iter().map(|c| {
                let mut c = c.clone();
                c.push(q().zero());
                c
            }).collect(),
        )
        .unwrap();
        let report = verify_enveloping(&r.action, &EnvelopingAction { global, embedding: emb });
        assert!(!report.generates);
        assert!(!report.ok());
    }
}
