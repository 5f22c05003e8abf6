//! Elementary partial representations `G -> M_n(KH)` built from a subset
//! `A ∋ 1`, the partial actions on `K^n` they correspond to, and the
//! elementary gradings of `M_n(KH)`.

use super::{expectation_injectivity, phi_pi_from, InducedAction, InjectivityVerdict, PartialRep, PhiPi};
use crate::algebra::{verify_isomorphism, verify_morphism, Algebra, StructureTable};
use crate::crossed::CrossedProduct;
use crate::error::{PactError, Result};
use crate::field::Field;
use crate::group::{Group, GroupSubset, TranslateOrbit};
use crate::linalg::{is_zero, sub, unit_vector, zero_vector, LinearMap, Vector};
use crate::paction::{verify_equivalence, PartialAction};

/// `τ ∘ λ: G -> M_n(KH)` with all of its intermediate data.
#[derive(Debug, Clone)]
pub struct ElementaryRep {
    group: Group,
    subset: GroupSubset,
    orbit: TranslateOrbit,
    stabilizer: Group,
    /// Morphisms `(A_i, g)` of the groupoid as `(i, g)`.
    morphisms: Vec<(usize, usize)>,
    groupoid_algebra: Algebra,
    tau: LinearMap,
    lambda: PartialRep,
    rep: PartialRep,
    induced: InducedAction,
    /// `e_ii(1)` in coordinates of the subalgebra generated by the `ε_g`.
    diagonal: Vec<Vector>,
}

impl ElementaryRep {
    pub fn new(group: &Group, subset: &GroupSubset, field: Field) -> Result<ElementaryRep> {
        let orbit = group.translate_orbit(subset)?;
        let stabilizer = group.subgroup(&orbit.stabilizer)?;
        let n = orbit.len();
        let m = stabilizer.order();
        let target = Algebra::matrix_over_group(field, n, &stabilizer);
        let unit_index = |i: usize, j: usize, h: usize| (i * n + j) * m + h;

        let mut morphisms = Vec::new();
        for i in 0..n {
            for g in group.elements() {
                if orbit.translates[i].contains(&group.inv(g)) {
                    morphisms.push((i, g));
                }
            }
        }
        let codomain = |&(i, g): &(usize, usize)| {
            orbit.position(&group.translate(g, &orbit.translates[i])).expect("translates are closed")
        };
        let d = morphisms.len();
        let mut table = StructureTable::zero(field, d);
        for (a, first) in morphisms.iter().enumerate() {
            for (b, second) in morphisms.iter().enumerate() {
                // (A_i, g) ∘ (A_j, g') needs g'A_j = A_i and is (A_j, gg').
                if codomain(second) == first.0 {
                    let composite = (second.0, group.mul(first.1, second.1));
                    let c = morphisms.iter().position(|x| *x == composite).expect("groupoid is closed");
                    table.add_term(a, b, c, field.one());
                }
            }
        }
        let mut unit = zero_vector(field, d);
        for i in 0..n {
            unit[morphisms.iter().position(|x| *x == (i, group.identity())).expect("identity morphism")] = field.one();
        }
        let labels = morphisms.iter().map(|&(i, g)| format!("(A{},{})", i + 1, group.label(g))).collect();
        let groupoid_algebra = Algebra::new(table, Some(unit), labels)?;

        let reps = &orbit.reps;
        let tau_cols = morphisms
            .iter()
            .map(|mor| {
                let (i, g) = *mor;
                let j = codomain(mor);
                let h = group.mul(group.mul(group.inv(reps[j]), g), reps[i]);
                let hpos = orbit.stabilizer.iter().position(|&x| x == h).ok_or_else(|| {
                    PactError::Inconsistent(format!("{} is not in the stabilizer", group.label(h)))
                })?;
                Ok(unit_vector(field, target.dim(), unit_index(j, i, hpos)))
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = LinearMap::new(field, d, target.dim(), tau_cols)?;
        verify_isomorphism(&groupoid_algebra, &target, &tau)
            .map_err(|e| PactError::VerificationFailed(format!("tau is not an isomorphism: {e:?}")))?;

        let lambda_images: Vec<Vector> = group
            .elements()
            .map(|g| {
                let mut v = zero_vector(field, d);
                for (k, &(i, x)) in morphisms.iter().enumerate() {
                    if x == g {
                        debug_assert!(orbit.translates[i].contains(&group.inv(g)));
                        v[k] = field.one();
                    }
                }
                v
            })
            .collect();
        let lambda = PartialRep::checked(group.clone(), groupoid_algebra.clone(), lambda_images)?;
        let rep_images = lambda.images().iter().map(|v| tau.apply(v)).collect();
        let rep = PartialRep::checked(group.clone(), target.clone(), rep_images)?;

        let e = stabilizer.identity();
        let diag_ambient: Vec<Vector> =
            (0..n).map(|i| unit_vector(field, target.dim(), unit_index(i, i, e))).collect();
        for g in group.elements() {
            let mut expected = zero_vector(field, target.dim());
            for i in 0..n {
                if orbit.translates[i].contains(&g) {
                    expected[unit_index(i, i, e)] = field.one();
                }
            }
            if rep.epsilon(g) != expected {
                return Err(PactError::VerificationFailed(format!(
                    "ε_{} is not the sum of the e_ii(1) with {} in A_i",
                    group.label(g),
                    group.label(g)
                )));
            }
        }
        let induced = rep.induced_action()?;
        let image = induced.inclusion.image();
        let diagonal = diag_ambient
            .iter()
            .map(|v| image.coords(v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PactError::VerificationFailed("e_ii(1) outside the generated subalgebra".into()))?;
        if induced.action.base().dim() != n {
            return Err(PactError::VerificationFailed("ε_g do not generate the diagonal".into()));
        }
        Ok(ElementaryRep {
            group: group.clone(),
            subset: subset.clone(),
            orbit,
            stabilizer,
            morphisms,
            groupoid_algebra,
            tau,
            lambda,
            rep,
            induced,
            diagonal,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subset(&self) -> &GroupSubset {
        &self.subset
    }

    pub fn n(&self) -> usize {
        self.orbit.len()
    }

    pub fn translates(&self) -> &[GroupSubset] {
        &self.orbit.translates
    }

    /// `g_i` with `g_i A = A_i`.
    pub fn representatives(&self) -> &[usize] {
        &self.orbit.reps
    }

    /// `g_i^-1`, so that `A` is the disjoint union of the cosets `H g_i^-1`.
    pub fn coset_representatives(&self) -> Vec<usize> {
        self.orbit.reps.iter().map(|&r| self.group.inv(r)).collect()
    }

    /// `H = St(A)` with labels inherited from `G`.
    pub fn stabilizer(&self) -> &Group {
        &self.stabilizer
    }

    /// `H` as indices of `G`, in the order used by `M_n(KH)`.
    pub fn stabilizer_elements(&self) -> &[usize] {
        &self.orbit.stabilizer
    }

    pub fn morphisms(&self) -> &[(usize, usize)] {
        &self.morphisms
    }

    pub fn groupoid_algebra(&self) -> &Algebra {
        &self.groupoid_algebra
    }

    pub fn tau(&self) -> &LinearMap {
        &self.tau
    }

    pub fn lambda(&self) -> &PartialRep {
        &self.lambda
    }

    pub fn rep(&self) -> &PartialRep {
        &self.rep
    }

    pub fn target(&self) -> &Algebra {
        self.rep.target()
    }

    pub fn induced(&self) -> &InducedAction {
        &self.induced
    }

    /// `"M_n(K)"` for trivial isotropy, otherwise `"M_n(KH)"`.
    pub fn target_name(&self) -> String {
        if self.stabilizer.order() == 1 {
            format!("M_{}(K)", self.n())
        } else {
            format!("M_{}(KH)", self.n())
        }
    }

    /// Basis index of `e_ij(h)` for `h` given as an element of `G`.
    pub fn unit_index(&self, i: usize, j: usize, h: usize) -> Option<usize> {
        let m = self.stabilizer.order();
        let hpos = self.orbit.stabilizer.iter().position(|&x| x == h)?;
        Some((i * self.n() + j) * m + hpos)
    }

    /// `(i, j, h)` of a basis index, with `h` an element of `G`.
    pub fn unit_of_index(&self, k: usize) -> (usize, usize, usize) {
        let m = self.stabilizer.order();
        let n = self.n();
        (k / m / n, k / m % n, self.orbit.stabilizer[k % m])
    }

    /// `e_ii(1)` in coordinates of the subalgebra carrying `α^π`.
    pub fn diagonal(&self, i: usize) -> &Vector {
        &self.diagonal[i]
    }

    /// `g` with `e_ii(1) ∈ D_{g^-1}`, `e_jj(1) ∈ D_g` and
    /// `α_g(e_ii(1)) = e_jj(1)`, searched identity first.
    pub fn transitivity_witness(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(PactError::InvalidArgument(format!("indices must be below {n}")));
        }
        let action = &self.induced.action;
        let grp = &self.group;
        grp.elements_identity_first()
            .into_iter()
            .find(|&g| {
                action.domain(g).contains(&self.diagonal[j])
                    && action.apply(g, &self.diagonal[i]).as_ref() == Some(&self.diagonal[j])
            })
            .ok_or_else(|| PactError::Inconsistent(format!("no element moves e{0}{0}(1) to e{1}{1}(1)", i + 1, j + 1)))
    }

    /// `deg e_ij(h) = g_i h g_j^-1`, indexed like the basis of `M_n(KH)`.
    pub fn degrees(&self) -> Vec<usize> {
        let grp = &self.group;
        let reps = &self.orbit.reps;
        (0..self.target().dim())
            .map(|k| {
                let (i, j, h) = self.unit_of_index(k);
                grp.mul(grp.mul(reps[i], h), grp.inv(reps[j]))
            })
            .collect()
    }
}

pub fn elementary_rep(group: &Group, subset: &GroupSubset, field: Field) -> Result<ElementaryRep> {
    ElementaryRep::new(group, subset, field)
}

/// `φ_π: K^n ⋊ G -> M_n(KH)` certified bijective.
#[derive(Debug, Clone)]
pub struct IsoBis {
    pub phi: PhiPi,
    /// `((i, j, h), g)` with `φ_π(e_ii(1) δ_g) = e_ij(h)`.
    pub preimages: Vec<((usize, usize, usize), usize)>,
    pub injectivity: InjectivityVerdict,
}

pub fn iso_bis(erd: &ElementaryRep) -> Result<IsoBis> {
    let phi = phi_pi_from(&erd.rep, erd.induced.clone())?;
    let grp = &erd.group;
    let reps = &erd.orbit.reps;
    let target = erd.target();
    let cp = &phi.crossed;
    let mut preimages = Vec::new();
    for i in 0..erd.n() {
        for j in 0..erd.n() {
            for &h in &erd.orbit.stabilizer {
                let g = grp.mul(grp.mul(reps[i], h), grp.inv(reps[j]));
                let x = cp.element(g, &erd.diagonal[i]).ok_or_else(|| {
                    PactError::VerificationFailed(format!("e{0}{0}(1) is not in D_{1}", i + 1, grp.label(g)))
                })?;
                let k = erd.unit_index(i, j, h).expect("h in H");
                if phi.map.apply(&x) != target.basis(k) {
                    return Err(PactError::VerificationFailed(format!(
                        "phi_pi(e{0}{0}(1) δ_{1}) != {2}",
                        i + 1,
                        grp.label(g),
                        target.labels()[k]
                    )));
                }
                preimages.push(((i, j, h), g));
            }
        }
    }
    let e = grp.identity();
    let expectation = LinearMap::from_fn(target.field(), target.dim(), target.dim(), |k| {
        let (i, j, h) = erd.unit_of_index(k);
        if i == j && h == e {
            target.basis(k)
        } else {
            target.zero()
        }
    })?;
    let injectivity = expectation_injectivity(cp, target, &phi.map, &expectation)?;
    if injectivity != InjectivityVerdict::Injective {
        return Err(PactError::VerificationFailed(format!("expectation criterion does not apply: {injectivity:?}")));
    }
    if !phi.is_bijective() {
        return Err(PactError::Inconsistent("phi_pi is injective and onto but not bijective".into()));
    }
    Ok(IsoBis { phi, preimages, injectivity })
}

/// Degrees of `M_n(KH)` and the graded-isomorphism checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub degrees: Vec<usize>,
    /// Each `φ_π(a δ_g)` lies in the degree-`g` component.
    pub images_homogeneous: bool,
    /// `deg(xy) = deg(x) deg(y)` for basis elements with `xy != 0`.
    pub multiplicative: bool,
}

impl Grading {
    pub fn ok(&self) -> bool {
        self.images_homogeneous && self.multiplicative
    }
}

pub fn elementary_grading(erd: &ElementaryRep) -> Result<Grading> {
    let iso = iso_bis(erd)?;
    let degrees = erd.degrees();
    let grp = &erd.group;
    let cp = &iso.phi.crossed;
    let target = erd.target();
    let images_homogeneous = (0..cp.dim()).all(|k| {
        let g = cp.degree_of(k);
        iso.phi.map.columns()[k].iter().enumerate().all(|(idx, c)| c.is_zero() || degrees[idx] == g)
    });
    let multiplicative = (0..target.dim()).all(|x| {
        (0..target.dim()).all(|y| {
            target.table().terms(x, y).iter().all(|(z, _)| degrees[*z] == grp.mul(degrees[x], degrees[y]))
        })
    });
    Ok(Grading { degrees, images_homogeneous, multiplicative })
}

/// Is the base `K^n` with its basis of minimal idempotents?
fn is_product_field(a: &Algebra) -> bool {
    let n = a.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let p = a.mul(&a.basis(i), &a.basis(j));
            if i == j {
                p == a.basis(i)
            } else {
                is_zero(&p)
            }
        })
    }) && a.unit().map(|u| u.iter().all(|c| c.is_one())).unwrap_or(false)
}

/// `f_S = Π_{g ∈ S} 1_g Π_{g ∉ S} (1 - 1_g)`.
pub fn idempotent_product(base: &Algebra, units: &[Vector], subset: &GroupSubset) -> Result<Vector> {
    let one = base.require_unit()?.clone();
    Ok(units.iter().enumerate().fold(one.clone(), |acc, (g, u)| {
        let factor = if subset.contains(&g) { u.clone() } else { sub(&one, u) };
        base.mul(&acc, &factor)
    }))
}

/// `A_i(α) = {g : (1_g)_i != 0}` for each coordinate `i` of `K^n`.
pub fn coordinate_sets(action: &PartialAction) -> Result<Vec<GroupSubset>> {
    if !is_product_field(action.base()) {
        return Err(PactError::Unsupported("the base must be K^n on its minimal idempotents".into()));
    }
    let units = action.unit_family()?;
    Ok((0..action.base().dim())
        .map(|i| action.group().elements().filter(|&g| !units[g][i].is_zero()).collect())
        .collect())
}

/// Exhaustive checks on the products `f_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentProducts {
    /// `f_S != 0` exactly when `S` is one of the `A_i(α)`.
    pub nonzero_exactly_on_sets: bool,
    /// `f_{A_i} = e_i`.
    pub minimal: bool,
    /// `α_g(f_S) = f_{gS}` whenever `g^-1 ∈ S`.
    pub translate_rule: bool,
    pub subsets_checked: usize,
}

impl IdempotentProducts {
    pub fn ok(&self) -> bool {
        self.nonzero_exactly_on_sets && self.minimal && self.translate_rule
    }
}

pub fn check_idempotent_products(action: &PartialAction) -> Result<IdempotentProducts> {
    let grp = action.group();
    if grp.order() > 16 {
        return Err(PactError::Unsupported("subset enumeration is limited to |G| <= 16".into()));
    }
    let sets = coordinate_sets(action)?;
    let units = action.unit_family()?;
    let base = action.base();
    let n = grp.order();
    let mut nonzero_exactly_on_sets = true;
    let mut translate_rule = true;
    for mask in 0u32..1 << n {
        let s: GroupSubset = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let f = idempotent_product(base, &units, &s)?;
        if is_zero(&f) == sets.contains(&s) {
            nonzero_exactly_on_sets = false;
        }
        if s.contains(&grp.identity()) {
            for g in grp.elements().filter(|&g| s.contains(&grp.inv(g))) {
                let moved = action.apply(g, &f);
                let target = idempotent_product(base, &units, &grp.translate(g, &s))?;
                if moved.as_ref() != Some(&target) {
                    translate_rule = false;
                }
            }
        }
    }
    let minimal = sets
        .iter()
        .enumerate()
        .map(|(i, s)| idempotent_product(base, &units, s).map(|f| f == base.basis(i)))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(IdempotentProducts { nonzero_exactly_on_sets, minimal, translate_rule, subsets_checked: 1 << n })
}

/// The elementary representation attached to a partial action on `K^n`.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub rep: ElementaryRep,
    /// Coordinate of `K^n` matching the `k`-th translate.
    pub coordinates: Vec<usize>,
    /// `K^n` into the subalgebra carrying `α^{π'}`, an equivalence of actions.
    pub identification: LinearMap,
    /// `K^n ⋊_α G -> M_n(KH)`, `a δ_g -> a π'(g)`, sending `π_α` to `π'`.
    pub phi: LinearMap,
    pub products: IdempotentProducts,
}

pub fn action_to_elementary(action: &PartialAction) -> Result<Correspondence> {
    let grp = action.group();
    let base = action.base();
    let f = base.field();
    let n = base.dim();
    let sets = coordinate_sets(action)?;
    let first = sets.first().ok_or_else(|| PactError::InvalidArgument("K^0 has no coordinates".into()))?;
    let orbit = grp.translate_orbit(first)?;
    let h = orbit.stabilizer.len();
    if orbit.len() != n || first.len() != h * n {
        return Err(PactError::InvalidArgument(format!(
            "St(A_1) has index {} in A_1 = {}, expected {n}",
            first.len() / h.max(1),
            grp.format_subset(first)
        )));
    }
    let products = check_idempotent_products(action)?;
    if !products.ok() {
        return Err(PactError::VerificationFailed(format!("idempotent products fail: {products:?}")));
    }
    let coordinates = orbit
        .translates
        .iter()
        .map(|t| sets.iter().position(|s| s == t))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| PactError::VerificationFailed("a translate of A_1 is not a coordinate set".into()))?;
    let rep = ElementaryRep::new(grp, first, f)?;
    let mut cols = vec![Vec::new(); n];
    for (k, &c) in coordinates.iter().enumerate() {
        cols[c] = rep.diagonal(k).clone();
    }
    let identification = LinearMap::new(f, n, rep.induced.action.base().dim(), cols)?;
    if !verify_equivalence(action, &rep.induced.action, &identification) {
        return Err(PactError::VerificationFailed("α^{π'} does not agree with α".into()));
    }
    let cp = CrossedProduct::build(action)?;
    let target = rep.target();
    let mut phi_cols = Vec::with_capacity(cp.dim());
    for g in grp.elements() {
        for a in action.domain(g).basis() {
            let inside = rep.induced.inclusion.apply(&identification.apply(a));
            phi_cols.push(target.mul(&inside, rep.rep.image(g)));
        }
    }
    let phi = LinearMap::new(f, cp.dim(), target.dim(), phi_cols)?;
    let cp_alg = cp.to_algebra()?;
    verify_isomorphism(&cp_alg, target, &phi)
        .map_err(|e| PactError::VerificationFailed(format!("a δ_g -> a π'(g) is not an isomorphism: {e:?}")))?;
    let units = action.unit_family()?;
    for g in grp.elements() {
        let x = cp.element(g, &units[g]).expect("1_g lies in D_g");
        if &phi.apply(&x) != rep.rep.image(g) {
            return Err(PactError::VerificationFailed(format!("π_α and π' differ at {}", grp.label(g))));
        }
    }
    Ok(Correspondence { rep, coordinates, identification, phi, products })
}

/// Elementary rep, its induced action, and back.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub original: ElementaryRep,
    pub correspondence: Correspondence,
    /// `M_n(KH)` of the recovered rep onto that of the original, carrying
    /// `π'(g)` to `π(g)`.
    pub equivalence: LinearMap,
}

pub fn round_trip(group: &Group, subset: &GroupSubset, field: Field) -> Result<RoundTrip> {
    let original = ElementaryRep::new(group, subset, field)?;
    let iso = iso_bis(&original)?;
    let correspondence = action_to_elementary(&original.induced.action)?;
    let back = correspondence.phi.inverse().ok_or_else(|| PactError::Inconsistent("phi is not invertible".into()))?;
    let equivalence = iso.phi.map.compose(&back)?;
    let (src, tgt) = (correspondence.rep.target(), original.target());
    verify_morphism(src, tgt, &equivalence, true)
        .map_err(|e| PactError::VerificationFailed(format!("round trip map is not a morphism: {e:?}")))?;
    for g in group.elements() {
        if &equivalence.apply(correspondence.rep.rep.image(g)) != original.rep.image(g) {
            return Err(PactError::VerificationFailed(format!("round trip differs at {}", group.label(g))));
        }
    }
    Ok(RoundTrip { original, correspondence, equivalence })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn set(xs: &[usize]) -> GroupSubset {
        xs.iter().copied().collect()
    }

    #[test]
    fn z3_pair() {
        let g = Group::cyclic(3).unwrap();
        let erd = elementary_rep(&g, &set(&[0, 1]), q()).unwrap();
        assert_eq!(erd.n(), 2);
        assert_eq!(erd.target_name(), "M_2(K)");
        assert_eq!(erd.representatives(), &[0, 2]);
        let m = erd.target();
        assert_eq!(m.format(erd.rep().image(1)), "e12(1)");
        assert_eq!(m.format(erd.rep().image(2)), "e21(1)");
        assert_eq!(m.format(&erd.rep().epsilon(0)), "e11(1) + e22(1)");
        assert_eq!(m.format(&erd.rep().epsilon(1)), "e11(1)");
        assert_eq!(m.format(&erd.rep().epsilon(2)), "e22(1)");
        assert_eq!(erd.transitivity_witness(0, 1).unwrap(), 2);
        assert_eq!(erd.transitivity_witness(1, 1).unwrap(), 0);
        let iso = iso_bis(&erd).unwrap();
        assert_eq!(iso.phi.crossed.dim(), 4);
        let grading = elementary_grading(&erd).unwrap();
        assert!(grading.ok());
        assert_eq!(grading.degrees[erd.unit_index(0, 1, 0).unwrap()], 1);
        assert!((0..2).all(|i| grading.degrees[erd.unit_index(i, i, 0).unwrap()] == 0));
    }

    #[test]
    fn whole_group_is_regular() {
        let g = Group::cyclic(3).unwrap();
        let erd = elementary_rep(&g, &set(&[0, 1, 2]), q()).unwrap();
        assert_eq!(erd.n(), 1);
        assert_eq!(erd.stabilizer().order(), 3);
        assert_eq!(erd.target_name(), "M_1(KH)");
        for x in g.elements() {
            assert_eq!(erd.rep().image(x), &erd.target().basis(x));
        }
    }

    #[test]
    fn nontrivial_isotropy() {
        let z4 = Group::cyclic(4).unwrap();
        let erd = elementary_rep(&z4, &set(&[0, 2]), q()).unwrap();
        assert_eq!(erd.stabilizer_elements(), &[0, 2]);
        assert_eq!(erd.target().dim(), 2);
        iso_bis(&erd).unwrap();
        let grading = elementary_grading(&erd).unwrap();
        assert_eq!(grading.degrees[erd.unit_index(0, 0, 2).unwrap()], 2);
        let s3 = Group::symmetric(3).unwrap();
        let t = s3.index_of("(12)").unwrap();
        let erd = elementary_rep(&s3, &set(&[s3.identity(), t]), q()).unwrap();
        assert_eq!(erd.stabilizer().order() * erd.n(), 2);
        assert_eq!(erd.stabilizer_elements(), &[s3.identity(), t]);
    }

    #[test]
    fn matrix_crossed_products() {
        let z4 = Group::cyclic(4).unwrap();
        let klein = Group::klein();
        for (grp, a) in [(z4, set(&[0, 2, 3])), (klein, set(&[0, 2, 3]))] {
            let erd = elementary_rep(&grp, &a, q()).unwrap();
            assert_eq!(erd.target_name(), "M_3(K)");
            let iso = iso_bis(&erd).unwrap();
            assert_eq!(iso.phi.crossed.dim(), 9);
            for i in 0..3 {
                for j in 0..3 {
                    let g = erd.transitivity_witness(i, j).unwrap();
                    assert_eq!(erd.induced().action.apply(g, erd.diagonal(i)).as_ref(), Some(erd.diagonal(j)));
                }
            }
        }
    }

    #[test]
    fn correspondence_round_trip() {
        let g = Group::cyclic(3).unwrap();
        let rt = round_trip(&g, &set(&[0, 1]), q()).unwrap();
        assert!(rt.correspondence.products.ok());
        assert_eq!(rt.correspondence.coordinates, vec![0, 1]);
    }

    #[test]
    fn missing_identity_rejected() {
        let g = Group::cyclic(3).unwrap();
        assert!(elementary_rep(&g, &set(&[1, 2]), q()).is_err());
    }
}
