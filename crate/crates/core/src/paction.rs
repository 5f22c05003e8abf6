//! Partial actions of finite groups on algebras, global actions and their
//! restrictions, equivalences, unit families and the local condition (X).

use rayon::prelude::*;

use crate::algebra::{verify_isomorphism, Algebra, Ideal};
use crate::error::{PactError, Result};
use crate::field::Scalar;
use crate::group::Group;
use crate::linalg::{LinearMap, Subspace, Vector};

/// A partial action of a finite group on an algebra.
///
/// `maps[g]` sends coordinates with respect to the canonical basis of
/// `D_{g^-1}` to vectors of the base algebra.
#[derive(Debug, Clone)]
pub struct PartialAction {
    group: Group,
    base: Algebra,
    domains: Vec<Ideal>,
    maps: Vec<LinearMap>,
}

/// One failed instance of a partial-action axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// `"(i)"`, `"iso"`, `"(ii)"`, `"(ii')"` or `"(iii')"`.
    pub condition: &'static str,
    pub g: usize,
    pub h: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub violations: Vec<Violation>,
    /// The weak inclusion form of the second axiom.
    pub condition_ii: bool,
    /// The equality form of the second axiom.
    pub condition_ii_prime: bool,
}

impl ActionReport {
    /// Valid when (i), the isomorphism conditions, (ii') and (iii') hold.
    pub fn is_valid(&self) -> bool {
        self.violations.iter().all(|v| v.condition == "(ii)")
    }
}

impl PartialAction {
    /// Checks only shapes; use [`PartialAction::verify`] for the axioms.
    pub fn new(group: Group, base: Algebra, domains: Vec<Ideal>, maps: Vec<LinearMap>) -> Result<PartialAction> {
        let n = group.order();
        if domains.len() != n || maps.len() != n {
            return Err(PactError::DimensionMismatch(format!(
                "{} domains and {} maps for a group of order {n}",
                domains.len(),
                maps.len()
            )));
        }
        for g in group.elements() {
            if domains[g].space().ambient() != base.dim() {
                return Err(PactError::DimensionMismatch(format!("domain of {} has wrong ambient", group.label(g))));
            }
            let m = &maps[g];
            if m.domain_dim() != domains[group.inv(g)].dim() || m.codomain_dim() != base.dim() {
                return Err(PactError::DimensionMismatch(format!(
                    "map for {} must go from a {}-dimensional domain into the algebra",
                    group.label(g),
                    domains[group.inv(g)].dim()
                )));
            }
        }
        Ok(PartialAction { group, base, domains, maps })
    }

    /// Builds the action from images of arbitrary spanning vectors of each
    /// `D_{g^-1}`: `pairs[g]` lists `(x, alpha_g(x))`.
    pub fn from_pairs(group: Group, base: Algebra, domains: Vec<Ideal>, pairs: &[Vec<(Vector, Vector)>]) -> Result<PartialAction> {
        let mut maps = Vec::with_capacity(group.order());
        for g in group.elements() {
            let src = &domains[group.inv(g)];
            let coord_pairs = pairs[g]
                .iter()
                .map(|(x, y)| {
                    let c = src.space().coords(x).ok_or_else(|| {
                        PactError::InvalidArgument(format!(
                            "{} is not in the domain of the map for {}",
                            base.format(x),
                            group.label(g)
                        ))
                    })?;
                    Ok((c, y.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(LinearMap::from_pairs(base.field(), src.dim(), base.dim(), &coord_pairs)?);
        }
        PartialAction::new(group, base, domains, maps)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn domain(&self, g: usize) -> &Ideal {
        &self.domains[g]
    }

    pub fn domains(&self) -> &[Ideal] {
        &self.domains
    }

    pub fn map(&self, g: usize) -> &LinearMap {
        &self.maps[g]
    }

    /// `alpha_g(x)` for `x` in `D_{g^-1}`.
    pub fn apply(&self, g: usize, x: &[Scalar]) -> Option<Vector> {
        let c = self.domains[self.group.inv(g)].space().coords(x)?;
        Some(self.maps[g].apply(&c))
    }

    /// `alpha_g` applied to every basis vector of a subspace of `D_{g^-1}`.
    pub fn image(&self, g: usize, space: &Subspace) -> Option<Subspace> {
        let imgs = space.basis().iter().map(|x| self.apply(g, x)).collect::<Option<Vec<_>>>()?;
        Some(Subspace::span(self.base.field(), self.base.dim(), &imgs))
    }

    /// `alpha_g^-1(w)` for `w` in `D_g`, when `alpha_g` is bijective.
    pub fn preimage(&self, g: usize, w: &[Scalar]) -> Option<Vector> {
        let dg = self.domains[g].space();
        let src = self.domains[self.group.inv(g)].space();
        let to_coords: Vec<Vector> = self.maps[g].columns().iter().map(|c| dg.coords(c)).collect::<Option<_>>()?;
        let square = LinearMap::new(self.base.field(), src.dim(), dg.dim(), to_coords).ok()?;
        let inv = square.inverse()?;
        Some(src.element(&inv.apply(&dg.coords(w)?)))
    }

    /// `D_g` as a subspace.
    fn dspace(&self, g: usize) -> &Subspace {
        self.domains[g].space()
    }

    fn check_isomorphisms(&self, g: usize, out: &mut Vec<Violation>) {
        let grp = &self.group;
        let src = self.dspace(grp.inv(g));
        let dst = self.dspace(g);
        let viol = |detail: String| Violation { condition: "iso", g, h: None, detail };
        for (k, col) in self.maps[g].columns().iter().enumerate() {
            if !dst.contains(col) {
                out.push(viol(format!("image of {} leaves D_{}", self.base.format(&src.basis()[k]), grp.label(g))));
                return;
            }
        }
        if src.dim() != dst.dim() || self.maps[g].rank() != dst.dim() {
            out.push(viol(format!("alpha_{} is not bijective onto D_{}", grp.label(g), grp.label(g))));
            return;
        }
        for (i, x) in src.basis().iter().enumerate() {
            for (j, y) in src.basis().iter().enumerate() {
                let xy = self.base.mul(x, y);
                let lhs = self.apply(g, &xy).expect("ideal");
                let rhs = self.base.mul(&self.maps[g].columns()[i], &self.maps[g].columns()[j]);
                if lhs != rhs {
                    out.push(viol(format!(
                        "alpha_{}({} * {}) != alpha_{}({}) * alpha_{}({})",
                        grp.label(g),
                        self.base.format(x),
                        self.base.format(y),
                        grp.label(g),
                        self.base.format(x),
                        grp.label(g),
                        self.base.format(y)
                    )));
                    return;
                }
            }
        }
    }

    /// Checks (i), that every `alpha_g` is an algebra isomorphism
    /// `D_{g^-1} -> D_g`, (ii'), (iii') and the weak form (ii).
    pub fn verify(&self) -> ActionReport {
        let grp = &self.group;
        let e = grp.identity();
        let mut violations = Vec::new();
        if self.dspace(e).dim() != self.base.dim() {
            violations.push(Violation { condition: "(i)", g: e, h: None, detail: "D_1 is not the whole algebra".into() });
        } else if self.maps[e].columns().iter().zip(self.dspace(e).basis()).any(|(c, b)| c != b) {
            violations.push(Violation { condition: "(i)", g: e, h: None, detail: "alpha_1 is not the identity".into() });
        }
        for g in grp.elements() {
            self.check_isomorphisms(g, &mut violations);
        }
        let iso_ok = violations.iter().all(|v| v.condition != "iso");
        let pairs: Vec<(usize, usize)> = grp.elements().flat_map(|g| grp.elements().map(move |h| (g, h))).collect();
        let per_pair: Vec<Vec<Violation>> = if iso_ok {
            pairs.par_iter().map(|&(g, h)| self.pair_violations(g, h)).collect()
        } else {
            Vec::new()
        };
        violations.extend(per_pair.into_iter().flatten());
        let condition_ii = iso_ok && violations.iter().all(|v| v.condition != "(ii)");
        let condition_ii_prime = iso_ok && violations.iter().all(|v| v.condition != "(ii')");
        ActionReport { violations, condition_ii, condition_ii_prime }
    }

    fn pair_violations(&self, g: usize, h: usize) -> Vec<Violation> {
        let grp = &self.group;
        let (gi, hi) = (grp.inv(g), grp.inv(h));
        let gh = grp.mul(g, h);
        let mut out = Vec::new();
        let lab = |x: usize| grp.label(x).to_string();

        // (ii'): alpha_g(D_{g^-1} ∩ D_h) = D_g ∩ D_{gh}
        let left = self.dspace(gi).intersect(self.dspace(h)).expect("ambient");
        let img = self.image(g, &left).expect("inside D_{g^-1}");
        let right = self.dspace(g).intersect(self.dspace(gh)).expect("ambient");
        if img != right {
            out.push(Violation {
                condition: "(ii')",
                g,
                h: Some(h),
                detail: format!("alpha_{}(D_{} ∩ D_{}) != D_{} ∩ D_{}", lab(g), lab(gi), lab(h), lab(g), lab(gh)),
            });
        }

        // (ii): alpha_h^-1(D_h ∩ D_{g^-1}) ⊆ D_{(gh)^-1}
        let meet = self.dspace(h).intersect(self.dspace(gi)).expect("ambient");
        let target = self.dspace(grp.inv(gh));
        if let Some(bad) = meet.basis().iter().find_map(|w| {
            let x = self.preimage(h, w)?;
            (!target.contains(&x)).then_some(x)
        }) {
            out.push(Violation {
                condition: "(ii)",
                g,
                h: Some(h),
                detail: format!("alpha_{}^-1 sends into {} outside D_{}", lab(h), self.base.format(&bad), lab(grp.inv(gh))),
            });
        }

        // (iii'): alpha_g(alpha_h(x)) = alpha_gh(x) on D_{h^-1} ∩ D_{(gh)^-1}
        let dom = self.dspace(hi).intersect(self.dspace(grp.inv(gh))).expect("ambient");
        for x in dom.basis() {
            let ahx = self.apply(h, x).expect("in D_{h^-1}");
            let lhs = self.apply(g, &ahx);
            let rhs = self.apply(gh, x).expect("in D_{(gh)^-1}");
            if lhs.as_ref() != Some(&rhs) {
                out.push(Violation {
                    condition: "(iii')",
                    g,
                    h: Some(h),
                    detail: format!("alpha_{} alpha_{} != alpha_{} at {}", lab(g), lab(h), lab(gh), self.base.format(x)),
                });
                break;
            }
        }
        out
    }

    /// Units `1_g` of every `D_g`, verified to satisfy
    /// `alpha_g(1_{g^-1} 1_h) = 1_g 1_{gh}`.
    pub fn unit_family(&self) -> Result<Vec<Vector>> {
        self.base.require_unit()?;
        let grp = &self.group;
        let mut units = Vec::with_capacity(grp.order());
        let mut missing = Vec::new();
        for g in grp.elements() {
            match self.base.unit_of_ideal(&self.domains[g])? {
                Some(u) => units.push(u),
                None => missing.push(grp.label(g).to_string()),
            }
        }
        if !missing.is_empty() {
            return Err(PactError::MissingUnits(missing));
        }
        for g in grp.elements() {
            for h in grp.elements() {
                let x = self.base.mul(&units[grp.inv(g)], &units[h]);
                let lhs = self.apply(g, &x);
                let rhs = self.base.mul(&units[g], &units[grp.mul(g, h)]);
                if lhs.as_ref() != Some(&rhs) {
                    return Err(PactError::VerificationFailed(format!(
                        "alpha_{}(1_{} 1_{}) != 1_{} 1_{}",
                        grp.label(g),
                        grp.label(grp.inv(g)),
                        grp.label(h),
                        grp.label(g),
                        grp.label(grp.mul(g, h))
                    )));
                }
            }
        }
        Ok(units)
    }

    /// The single-element data `(D_{g^-1}, D_g, alpha_g)`.
    pub fn slice(&self, g: usize) -> Result<LocalActionSlice> {
        LocalActionSlice::new(
            self.base.clone(),
            self.domains[self.group.inv(g)].clone(),
            self.domains[g].clone(),
            self.maps[g].clone(),
        )
    }

    /// Human-readable name of `alpha_g` images for reports.
    pub fn describe_map(&self, g: usize) -> Vec<(String, String)> {
        let src = self.dspace(self.group.inv(g));
        src.basis()
            .iter()
            .zip(self.maps[g].columns())
            .map(|(x, y)| (self.base.format(x), self.base.format(y)))
            .collect()
    }
}

/// Is `phi` an equivalence between two partial actions of the same group?
pub fn verify_equivalence(pa: &PartialAction, other: &PartialAction, phi: &LinearMap) -> bool {
    if pa.group.order() != other.group.order() {
        return false;
    }
    if verify_isomorphism(&pa.base, &other.base, phi).is_err() {
        return false;
    }
    for g in pa.group.elements() {
        let img = Subspace::span(
            other.base.field(),
            other.base.dim(),
            &pa.dspace(g).basis().iter().map(|x| phi.apply(x)).collect::<Vec<_>>(),
        );
        if &img != other.dspace(g) {
            return false;
        }
        for x in pa.dspace(pa.group.inv(g)).basis() {
            let lhs = other.apply(g, &phi.apply(x));
            let rhs = phi.apply(&pa.apply(g, x).expect("in domain"));
            if lhs.as_ref() != Some(&rhs) {
                return false;
            }
        }
    }
    true
}

/// A global action of a finite group by algebra automorphisms.
#[derive(Debug, Clone)]
pub struct GlobalAction {
    group: Group,
    algebra: Algebra,
    maps: Vec<LinearMap>,
}

impl GlobalAction {
    /// Verifies every `beta_g` is an automorphism, `beta_1 = id` and
    /// `beta_g beta_h = beta_gh`.
    pub fn new(group: Group, algebra: Algebra, maps: Vec<LinearMap>) -> Result<GlobalAction> {
        if maps.len() != group.order() {
            return Err(PactError::DimensionMismatch(format!("{} maps for a group of order {}", maps.len(), group.order())));
        }
        for g in group.elements() {
            verify_isomorphism(&algebra, &algebra, &maps[g]).map_err(|e| {
                PactError::NotAnIsomorphism(format!("beta_{}: {e:?}", group.label(g)))
            })?;
        }
        if maps[group.identity()] != LinearMap::identity(algebra.field(), algebra.dim()) {
            return Err(PactError::VerificationFailed("beta_1 is not the identity".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if maps[g].compose(&maps[h])? != maps[group.mul(g, h)] {
                    return Err(PactError::VerificationFailed(format!(
                        "beta_{} beta_{} != beta_{}",
                        group.label(g),
                        group.label(h),
                        group.label(group.mul(g, h))
                    )));
                }
            }
        }
        Ok(GlobalAction { group, algebra, maps })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn map(&self, g: usize) -> &LinearMap {
        &self.maps[g]
    }

    pub fn maps(&self) -> &[LinearMap] {
        &self.maps
    }

    /// The action itself, every `D_g` being the whole algebra.
    pub fn as_partial(&self) -> PartialAction {
        PartialAction::new(
            self.group.clone(),
            self.algebra.clone(),
            vec![self.algebra.whole(); self.group.order()],
            self.maps.clone(),
        )
        .expect("global shapes")
    }
}

/// Result of restricting a global action to an ideal.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// The partial action on the ideal, in its canonical basis.
    pub action: PartialAction,
    /// Does `∪ beta_g(A)` generate the ambient algebra?
    pub admissible: bool,
    /// Ideal coordinates to ambient vectors.
    pub inclusion: LinearMap,
}

/// `D_g = A ∩ beta_g(A)` with `alpha_g = beta_g` on `D_{g^-1}`.
pub fn restrict_global(beta: &GlobalAction, ideal: &Ideal) -> Result<Restriction> {
    let b = &beta.algebra;
    let grp = &beta.group;
    let (base, inclusion) = b.subalgebra(ideal.space())?;
    let to_coords = |v: &Vector| ideal.space().coords(v).expect("inside the ideal");
    let translates: Vec<Subspace> = grp
        .elements()
        .map(|g| Subspace::span(b.field(), b.dim(), &ideal.basis().iter().map(|x| beta.maps[g].apply(x)).collect::<Vec<_>>()))
        .collect();
    let mut domains = Vec::with_capacity(grp.order());
    let mut ambient_domains = Vec::with_capacity(grp.order());
    for g in grp.elements() {
        let d = ideal.space().intersect(&translates[g])?;
        let coords: Vec<Vector> = d.basis().iter().map(to_coords).collect();
        domains.push(base.ideal(Subspace::span(base.field(), base.dim(), &coords))?);
        ambient_domains.push(d);
    }
    let mut maps = Vec::with_capacity(grp.order());
    for g in grp.elements() {
        let src = domains[grp.inv(g)].space();
        let cols = src
            .basis()
            .iter()
            .map(|c| to_coords(&beta.maps[g].apply(&inclusion.apply(c))))
            .collect();
        maps.push(LinearMap::new(base.field(), src.dim(), base.dim(), cols)?);
    }
    let action = PartialAction::new(grp.clone(), base, domains, maps)?;
    let generators: Vec<Vector> = translates.iter().flat_map(|t| t.basis().to_vec()).collect();
    let admissible = b.generated_subalgebra(&generators, false).dim() == b.dim();
    Ok(Restriction { action, admissible, inclusion })
}

/// The data `(D_minus, D_plus, alpha: D_minus -> D_plus)` of one group element.
#[derive(Debug, Clone)]
pub struct LocalActionSlice {
    base: Algebra,
    minus: Ideal,
    plus: Ideal,
    map: LinearMap,
    inverse: LinearMap,
}

/// A failing instance `(a, b, c)` of condition (X), by basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionXWitness {
    /// Index into the basis of the base algebra.
    pub a: usize,
    /// Index into the canonical basis of `D_plus`.
    pub b: usize,
    /// Index into the basis of the base algebra.
    pub c: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl LocalActionSlice {
    /// `map` sends `D_minus` coordinates to vectors of `base`.
    pub fn new(base: Algebra, minus: Ideal, plus: Ideal, map: LinearMap) -> Result<LocalActionSlice> {
        let f = base.field();
        let to_plus: Vec<Vector> = map
            .columns()
            .iter()
            .map(|c| plus.space().coords(c).ok_or_else(|| PactError::NotAnIsomorphism("image leaves D_plus".into())))
            .collect::<Result<_>>()?;
        let square = LinearMap::new(f, minus.dim(), plus.dim(), to_plus)?;
        let inv_coords = square.inverse().ok_or_else(|| PactError::NotAnIsomorphism("map is not bijective".into()))?;
        let inverse = LinearMap::from_fn(f, plus.dim(), base.dim(), |i| minus.space().element(&inv_coords.columns()[i]))?;
        let slice = LocalActionSlice { base, minus, plus, map, inverse };
        for x in slice.minus.basis() {
            for y in slice.minus.basis() {
                let lhs = slice.forward(&slice.base.mul(x, y));
                let rhs = slice.base.mul(&slice.forward(x), &slice.forward(y));
                if lhs != rhs {
                    return Err(PactError::NotAnIsomorphism(format!(
                        "not multiplicative at {} * {}",
                        slice.base.format(x),
                        slice.base.format(y)
                    )));
                }
            }
        }
        Ok(slice)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn plus(&self) -> &Ideal {
        &self.plus
    }

    pub fn minus(&self) -> &Ideal {
        &self.minus
    }

    fn forward(&self, x: &[Scalar]) -> Vector {
        self.map.apply(&self.minus.space().coords(x).expect("in D_minus"))
    }

    fn backward(&self, y: &[Scalar]) -> Vector {
        self.inverse.apply(&self.plus.space().coords(y).expect("in D_plus"))
    }

    /// Checks `alpha(alpha^-1(ab) c) = a alpha(alpha^-1(b) c)` for basis
    /// `a, c` of the algebra and basis `b` of `D_plus`; returns the first
    /// failure in lexicographic `(a, b, c)` order.
    pub fn condition_x_check(&self) -> Option<ConditionXWitness> {
        let alg = &self.base;
        let d = alg.dim();
        let plus = self.plus.basis();
        (0..d).into_par_iter().find_map_first(|ai| {
            let a = alg.basis(ai);
            for (bi, b) in plus.iter().enumerate() {
                let back_ab = self.backward(&alg.mul(&a, b));
                let back_b = self.backward(b);
                for ci in 0..d {
                    let c = alg.basis(ci);
                    let lhs = self.forward(&alg.mul(&back_ab, &c));
                    let rhs = alg.mul(&a, &self.forward(&alg.mul(&back_b, &c)));
                    if lhs != rhs {
                        return Some(ConditionXWitness { a: ai, b: bi, c: ci, lhs, rhs });
                    }
                }
            }
            None
        })
    }

    /// The slice of upper triangular `T(3, K)` with `D_minus = span{e12, e13}`,
    /// `D_plus = span{e13, e23}`, `e12 -> e23`, `e13 -> e13`.
    pub fn upper_triangular_shift(field: crate::field::Field) -> LocalActionSlice {
        let t3 = Algebra::upper(field, 3);
        let e = |l: &str| t3.basis(t3.label_index(l).expect("label"));
        let minus = t3.ideal(Subspace::span(field, 6, &[e("e12"), e("e13")])).expect("ideal");
        let plus = t3.ideal(Subspace::span(field, 6, &[e("e13"), e("e23")])).expect("ideal");
        let pairs = vec![(vec![field.one(), field.zero()], e("e23")), (vec![field.zero(), field.one()], e("e13"))];
        let map = LinearMap::from_pairs(field, 2, 6, &pairs).expect("map");
        LocalActionSlice::new(t3, minus, plus, map).expect("slice")
    }
}

/// The action of `Z/2` on the four-dimensional counterexample algebra with
/// `D_g = span{u, v}` and `alpha_g` swapping `u` and `v`.
pub fn counterexample_action(field: crate::field::Field) -> PartialAction {
    let a = Algebra::counterexample(field);
    let g = Group::cyclic(2).expect("Z/2");
    let uv = a.ideal(Subspace::span(field, 4, &[a.basis(2), a.basis(3)])).expect("ideal");
    let swap = LinearMap::new(field, 2, 4, vec![a.basis(3), a.basis(2)]).expect("swap");
    let id = LinearMap::identity(field, 4);
    PartialAction::new(g, a.clone(), vec![a.whole(), uv], vec![id, swap]).expect("shapes")
}
