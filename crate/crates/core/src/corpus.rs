//! Seeded families of algebras and partial actions shared by the test
//! suites: restrictions of permutation actions on products of semiprime
//! algebras, non-associative variants of the four-dimensional example,
//! and small unital algebras over GF(2).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, StructureTable};
use crate::error::{PactError, Result};
use crate::field::{Field, Scalar};
use crate::group::{Group, GroupSubset};
use crate::linalg::{add, scale, unit_vector, zero_vector, LinearMap, Subspace, Vector};
use crate::paction::{counterexample_action, restrict_global, GlobalAction, PartialAction};

/// Which base a corpus action lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Ideals of `K^X`.
    ProductField,
    /// Ideals of `M_2(K)^X`.
    Matrix,
    /// Ideals of `(K S_3)^X`.
    GroupAlgebra,
    /// Ideals of `T(2, K)^X`; not semiprime.
    Triangular,
    /// The four-dimensional example plus a restricted summand.
    NonAssociative,
}

#[derive(Debug, Clone)]
pub struct CorpusAction {
    pub name: String,
    pub family: Family,
    pub action: PartialAction,
    /// The global action this one restricts, when there is one.
    pub global: Option<GlobalAction>,
}

/// `g -> (x -> g x)` on a finite `G`-set.
#[derive(Debug, Clone)]
pub struct GroupSet {
    pub perm: Vec<Vec<usize>>,
}

impl GroupSet {
    pub fn len(&self) -> usize {
        self.perm.first().map_or(0, |p| p.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn regular(group: &Group) -> GroupSet {
        GroupSet { perm: group.elements().map(|g| group.elements().map(|x| group.mul(g, x)).collect()).collect() }
    }

    /// Left cosets of the cyclic subgroup generated by `k`.
    pub fn cosets(group: &Group, k: usize) -> GroupSet {
        let mut sub: GroupSubset = GroupSubset::new();
        let mut x = group.identity();
        loop {
            sub.insert(x);
            x = group.mul(x, k);
            if x == group.identity() {
                break;
            }
        }
        let mut cosets: Vec<GroupSubset> = Vec::new();
        for g in group.elements() {
            let c = group.translate(g, &sub);
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let perm = group
            .elements()
            .map(|g| {
                cosets
                    .iter()
                    .map(|c| cosets.iter().position(|d| *d == group.translate(g, c)).expect("cosets permute"))
                    .collect()
            })
            .collect();
        GroupSet { perm }
    }

    /// Disjoint union with one fixed point.
    pub fn with_fixed_point(mut self) -> GroupSet {
        let n = self.len();
        for p in &mut self.perm {
            p.push(n);
        }
        self
    }
}

/// `β_g` permuting the factors of `factor^X`.
pub fn permutation_action(group: &Group, factor: &Algebra, set: &GroupSet) -> Result<GlobalAction> {
    let m = set.len();
    let d = factor.dim();
    let alg = Algebra::direct_product(&vec![factor.clone(); m])?;
    let f = factor.field();
    let maps = group
        .elements()
        .map(|g| LinearMap::from_fn(f, m * d, m * d, |idx| unit_vector(f, m * d, set.perm[g][idx / d] * d + idx % d)))
        .collect::<Result<Vec<_>>>()?;
    GlobalAction::new(group.clone(), alg, maps)
}

/// Conjugation by a random unit with small integer coefficients.
pub fn random_inner_automorphism(rng: &mut impl Rng, a: &Algebra) -> Result<LinearMap> {
    let f = a.field();
    let one = a.require_unit()?.clone();
    for _ in 0..64 {
        let u: Vector = (0..a.dim()).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        let u = add(&u, &one);
        if let Some(inv) = a.left_mult(&u).inverse() {
            let ui = inv.apply(&one);
            return LinearMap::from_fn(f, a.dim(), a.dim(), |i| a.mul(&a.mul(&u, &a.basis(i)), &ui));
        }
    }
    Err(PactError::Inconsistent("no random unit found".into()))
}

/// `θ β_g θ^-1` for an automorphism `θ` of the algebra.
pub fn conjugate_global(beta: &GlobalAction, theta: &LinearMap) -> Result<GlobalAction> {
    let inv = theta.inverse().ok_or_else(|| PactError::NotAnIsomorphism("twist is not invertible".into()))?;
    let maps = beta.maps().iter().map(|m| theta.compose(&m.compose(&inv)?)).collect::<Result<Vec<_>>>()?;
    GlobalAction::new(beta.group().clone(), beta.algebra().clone(), maps)
}

/// Block-diagonal map acting by `blocks[x]` on factor `x`.
fn block_diagonal(field: Field, blocks: &[LinearMap]) -> Result<LinearMap> {
    let total: usize = blocks.iter().map(|b| b.domain_dim()).sum();
    let mut cols = Vec::with_capacity(total);
    let mut offset = 0;
    for b in blocks {
        for c in b.columns() {
            let mut v = zero_vector(field, total);
            for (k, x) in c.iter().enumerate() {
                v[offset + k] = x.clone();
            }
            cols.push(v);
        }
        offset += b.domain_dim();
    }
    LinearMap::new(field, total, total, cols)
}

/// `α'_g = θ α_g θ^-1` on `D'_g = θ(D_g)`.
pub fn twist(action: &PartialAction, theta: &LinearMap) -> Result<PartialAction> {
    let base = action.base();
    let f = base.field();
    let grp = action.group();
    let domains = grp
        .elements()
        .map(|g| {
            let imgs: Vec<Vector> = action.domain(g).basis().iter().map(|x| theta.apply(x)).collect();
            base.ideal(Subspace::span(f, base.dim(), &imgs))
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<Vec<(Vector, Vector)>> = grp
        .elements()
        .map(|g| {
            action
                .domain(grp.inv(g))
                .basis()
                .iter()
                .map(|x| (theta.apply(x), theta.apply(&action.apply(g, x).expect("in domain"))))
                .collect()
        })
        .collect();
    PartialAction::from_pairs(grp.clone(), base.clone(), domains, &pairs)
}

/// The componentwise action on `A × B`.
pub fn direct_sum(first: &PartialAction, second: &PartialAction) -> Result<PartialAction> {
    let grp = first.group();
    if grp.order() != second.group().order() {
        return Err(PactError::InvalidArgument("actions of different groups".into()));
    }
    let (a, b) = (first.base(), second.base());
    let base = Algebra::direct_product(&[a.clone(), b.clone()])?;
    let f = base.field();
    let left = |x: &Vector| {
        let mut v = x.clone();
        v.extend(zero_vector(f, b.dim()));
        v
    };
    let right = |y: &Vector| {
        let mut v = zero_vector(f, a.dim());
        v.extend(y.iter().cloned());
        v
    };
    let domains = grp
        .elements()
        .map(|g| {
            let gens: Vec<Vector> = first
                .domain(g)
                .basis()
                .iter()
                .map(left)
                .chain(second.domain(g).basis().iter().map(right))
                .collect();
            base.ideal(Subspace::span(f, base.dim(), &gens))
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<Vec<(Vector, Vector)>> = grp
        .elements()
        .map(|g| {
            let gi = grp.inv(g);
            first
                .domain(gi)
                .basis()
                .iter()
                .map(|x| (left(x), left(&first.apply(g, x).expect("in domain"))))
                .chain(second.domain(gi).basis().iter().map(|y| (right(y), right(&second.apply(g, y).expect("in domain")))))
                .collect()
        })
        .collect();
    PartialAction::from_pairs(grp.clone(), base, domains, &pairs)
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn random_group_set(rng: &mut impl Rng, group: &Group, max_len: usize) -> GroupSet {
    let mut options = vec![GroupSet::regular(group)];
    for k in group.elements().filter(|&k| k != group.identity()) {
        options.push(GroupSet::cosets(group, k));
    }
    let extended: Vec<GroupSet> = options.iter().cloned().map(GroupSet::with_fixed_point).collect();
    options.extend(extended);
    options.retain(|s| s.len() <= max_len && s.len() >= 2);
    options.choose(rng).cloned().unwrap_or_else(|| GroupSet::regular(group))
}

/// Central idempotents of `K S_3`: trivial, sign and the two-dimensional block.
fn s3_central_idempotents(a: &Algebra, s3: &Group) -> Result<Vec<Vector>> {
    let f = a.field();
    let sixth = f.from_ratio(1, 6)?;
    let one = a.require_unit()?.clone();
    let mut triv = zero_vector(f, a.dim());
    let mut sign = zero_vector(f, a.dim());
    for g in s3.elements() {
        let odd = s3.element_order(g) == 2;
        triv[g] = sixth.clone();
        sign[g] = if odd { -&sixth } else { sixth.clone() };
    }
    let rest = crate::linalg::sub(&crate::linalg::sub(&one, &triv), &sign);
    Ok(vec![triv, sign, rest])
}

fn restriction_case(
    rng: &mut ChaCha8Rng,
    name: String,
    family: Family,
    group: &Group,
    factor: &Algebra,
    set: &GroupSet,
    ideal_gens: impl Fn(&mut dyn rand::RngCore, usize, &Algebra) -> Result<Vec<Vector>>,
) -> Result<CorpusAction> {
    let beta = permutation_action(group, factor, set)?;
    let blocks = (0..set.len())
        .map(|_| random_inner_automorphism(rng, factor))
        .collect::<Result<Vec<_>>>()?;
    let theta = block_diagonal(factor.field(), &blocks)?;
    let beta = conjugate_global(&beta, &theta)?;
    let alg = beta.algebra();
    let d = factor.dim();
    let mut gens = Vec::new();
    for x in random_subset(rng, set.len()) {
        for local in ideal_gens(rng, x, factor)? {
            let mut v = zero_vector(alg.field(), alg.dim());
            for (k, c) in local.into_iter().enumerate() {
                v[x * d + k] = c;
            }
            gens.push(v);
        }
    }
    let ideal = alg.ideal_generated(&gens);
    let r = restrict_global(&beta, &ideal)?;
    Ok(CorpusAction { name, family, action: r.action, global: Some(beta) })
}

fn whole_factor(_: &mut dyn rand::RngCore, _: usize, factor: &Algebra) -> Result<Vec<Vector>> {
    Ok(factor.unit().into_iter().cloned().collect())
}

/// `count` restrictions of twisted permutation actions on products of
/// `K`, `M_2(K)` and `K S_3`, cycling through the three families.
pub fn restricted_actions(seed: u64, count: usize) -> Result<Vec<CorpusAction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Field::Rationals;
    let gf3 = Field::prime(3)?;
    let s3 = Group::symmetric(3)?;
    let small = [Group::cyclic(2)?, Group::cyclic(3)?, Group::cyclic(4)?, Group::klein(), s3.clone()];
    let tiny = [Group::cyclic(2)?, Group::cyclic(3)?, Group::klein()];
    let qs3 = Algebra::group_algebra(q, &s3);
    let idempotents = s3_central_idempotents(&qs3, &s3)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let case = match i % 3 {
            0 => {
                let field = if rng.gen_bool(0.3) { gf3 } else { q };
                let group = small.choose(&mut rng).expect("nonempty").clone();
                let set = random_group_set(&mut rng, &group, 7);
                let name = format!("product-{i}");
                restriction_case(&mut rng, name, Family::ProductField, &group, &Algebra::ground(field), &set, whole_factor)?
            }
            1 => {
                let group = tiny.choose(&mut rng).expect("nonempty").clone();
                let set = random_group_set(&mut rng, &group, 3);
                let name = format!("matrix-{i}");
                restriction_case(&mut rng, name, Family::Matrix, &group, &Algebra::matrix(q, 2), &set, whole_factor)?
            }
            _ => {
                let group = Group::cyclic(2)?;
                let set = GroupSet::regular(&group);
                let name = format!("group-algebra-{i}");
                let pick = |r: &mut dyn rand::RngCore, _: usize, a: &Algebra| -> Result<Vec<Vector>> {
                    let chosen: Vec<Vector> =
                        idempotents.iter().filter(|_| r.gen_bool(0.6)).cloned().collect();
                    Ok(if chosen.is_empty() { vec![idempotents[2].clone()] } else { chosen.iter().map(|e| a.mul(e, e)).collect() })
                };
                restriction_case(&mut rng, name, Family::GroupAlgebra, &group, &qs3, &set, pick)?
            }
        };
        out.push(case);
    }
    Ok(out)
}

/// Restrictions over products of `T(2, K)`; associative or not, these feed
/// the agreement between condition (X) and brute force.
pub fn triangular_actions(seed: u64, count: usize) -> Result<Vec<CorpusAction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t2 = Algebra::upper(Field::Rationals, 2);
    let groups = [Group::cyclic(2)?, Group::cyclic(3)?];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let group = groups.choose(&mut rng).expect("nonempty").clone();
        let set = random_group_set(&mut rng, &group, 3);
        let pick = |r: &mut dyn rand::RngCore, _: usize, a: &Algebra| -> Result<Vec<Vector>> {
            // e12 alone generates the radical; a random element usually more.
            Ok(vec![if r.gen_bool(0.5) {
                a.basis(1)
            } else {
                (0..a.dim()).map(|_| a.field().from_i64(r.gen_range(-1..=1))).collect()
            }])
        };
        out.push(restriction_case(&mut rng, format!("triangular-{i}"), Family::Triangular, &group, &t2, &set, pick)?);
    }
    Ok(out)
}

/// The four-dimensional example, rescaled and summed with a restricted
/// action of `Z/2` on a product field.
pub fn non_associative_actions(seed: u64, count: usize) -> Result<Vec<CorpusAction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Field::Rationals;
    let base = counterexample_action(q);
    let group = base.group().clone();
    let a = base.base();
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let s = q.from_i64(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let r = q.from_i64(rng.gen_range(1..=4));
        // 1 -> 1, t -> s t, u -> s r u, v -> r v
        let sr = &s * &r;
        let theta = LinearMap::new(
            q,
            4,
            4,
            vec![a.basis(0), scale(&s, &a.basis(1)), scale(&sr, &a.basis(2)), scale(&r, &a.basis(3))],
        )?;
        let twisted = twist(&base, &theta)?;
        let action = if i % 2 == 0 {
            twisted
        } else {
            let set = random_group_set(&mut rng, &group, 3);
            let extra = restriction_case(&mut rng, String::new(), Family::ProductField, &group, &Algebra::ground(q), &set, whole_factor)?;
            direct_sum(&twisted, &extra.action)?
        };
        out.push(CorpusAction { name: format!("non-associative-{i}"), family: Family::NonAssociative, action, global: None });
    }
    Ok(out)
}

/// `K[x] / (x^d + c_{d-1} x^{d-1} + ... + c_0)` on `1, x, ..., x^{d-1}`.
pub fn polynomial_quotient(field: Field, lower: &[i64]) -> Result<Algebra> {
    let d = lower.len();
    let reduce_power = |k: usize| -> Vector {
        // x^k as a combination of 1..x^{d-1}
        let mut v = zero_vector(field, d.max(1));
        let mut cur = vec![field.zero(); k + 1];
        cur[k] = field.one();
        for top in (d..=k).rev() {
            let c = cur[top].clone();
            if c.is_zero() {
                continue;
            }
            cur[top] = field.zero();
            for (j, &l) in lower.iter().enumerate() {
                let delta: Scalar = &c * &field.from_i64(l);
                cur[top - d + j] = &cur[top - d + j] - &delta;
            }
        }
        for (j, c) in cur.into_iter().enumerate().take(d) {
            v[j] = c;
        }
        v
    };
    let t = StructureTable::from_fn(field, d, |i, j| reduce_power(i + j));
    let labels = (0..d)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    Algebra::new(t, Some(unit_vector(field, d, 0)), labels)
}

/// Unital algebras of dimension at most 4 over GF(2): named ones, their
/// products, and random unital subalgebras of `M_3(GF(2))`.
pub fn gf2_algebras(seed: u64, random: usize) -> Result<Vec<(String, Algebra)>> {
    let f = Field::prime(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = |c: &[i64]| polynomial_quotient(f, c);
    let mut out: Vec<(String, Algebra)> = vec![
        ("GF(2)".into(), Algebra::ground(f)),
        ("GF(2)^2".into(), Algebra::product_field(f, 2)),
        ("GF(2)^3".into(), Algebra::product_field(f, 3)),
        ("GF(2)^4".into(), Algebra::product_field(f, 4)),
        ("M_2".into(), Algebra::matrix(f, 2)),
        ("T_2".into(), Algebra::upper(f, 2)),
        ("GF(2)[Z/2]".into(), Algebra::group_algebra(f, &Group::cyclic(2)?)),
        ("GF(2)[Z/3]".into(), Algebra::group_algebra(f, &Group::cyclic(3)?)),
        ("GF(2)[Z/4]".into(), Algebra::group_algebra(f, &Group::cyclic(4)?)),
        ("GF(2)[V4]".into(), Algebra::group_algebra(f, &Group::klein())),
        ("GF(4)".into(), poly(&[1, 1])?),
        ("GF(8)".into(), poly(&[1, 1, 0])?),
        ("GF(16)".into(), poly(&[1, 1, 0, 0])?),
        ("x^2".into(), poly(&[0, 0])?),
        ("x^3".into(), poly(&[0, 0, 0])?),
        ("x^4".into(), poly(&[0, 0, 0, 0])?),
        ("counterexample".into(), Algebra::counterexample(f)),
    ];
    let products: Vec<(String, Algebra)> = vec![
        ("GF(2) x T_2".into(), Algebra::direct_product(&[Algebra::ground(f), Algebra::upper(f, 2)])?),
        ("GF(4) x GF(4)".into(), Algebra::direct_product(&[poly(&[1, 1])?, poly(&[1, 1])?])?),
        ("GF(4) x GF(2)".into(), Algebra::direct_product(&[poly(&[1, 1])?, Algebra::ground(f)])?),
        ("x^2 x x^2".into(), Algebra::direct_product(&[poly(&[0, 0])?, poly(&[0, 0])?])?),
        ("GF(2) x x^3".into(), Algebra::direct_product(&[Algebra::ground(f), poly(&[0, 0, 0])?])?),
    ];
    out.extend(products);
    let m3 = Algebra::matrix(f, 3);
    let mut found = 0;
    let mut attempts = 0;
    while found < random && attempts < 50 * random.max(1) {
        attempts += 1;
        let k = rng.gen_range(1..=2);
        let gens: Vec<Vector> = (0..k).map(|_| (0..9).map(|_| f.from_i64(rng.gen_range(0..=1))).collect()).collect();
        let space = m3.generated_subalgebra(&gens, true);
        if space.dim() <= 4 {
            let (alg, _) = m3.subalgebra(&space)?;
            let labels: Vec<String> = (0..alg.dim()).map(|j| format!("b{}", j + 1)).collect();
            let alg = Algebra::new(alg.table().clone(), alg.unit().cloned(), labels)?;
            out.push((format!("M_3 subalgebra {found}"), alg));
            found += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sets() {
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(GroupSet::regular(&s3).len(), 6);
        let t = s3.index_of("(12)").unwrap();
        assert_eq!(GroupSet::cosets(&s3, t).len(), 3);
        assert_eq!(GroupSet::cosets(&s3, t).with_fixed_point().len(), 4);
    }

    #[test]
    fn restricted_are_valid_and_deterministic() {
        let a = restricted_actions(7, 9).unwrap();
        let b = restricted_actions(7, 9).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.action.verify().is_valid(), "{}", x.name);
            assert_eq!(x.action.base().dim(), y.action.base().dim());
            assert_eq!(x.action.map(1), y.action.map(1));
        }
    }

    #[test]
    fn polynomial_quotients() {
        let f = Field::prime(2).unwrap();
        let gf4 = polynomial_quotient(f, &[1, 1]).unwrap();
        assert!(gf4.is_semiprime().unwrap());
        let x = gf4.basis(1);
        assert_eq!(gf4.mul(&x, &x), vec![f.one(), f.one()]);
        let nil = polynomial_quotient(f, &[0, 0, 0]).unwrap();
        assert!(!nil.is_semiprime().unwrap());
    }

    #[test]
    fn non_associative_family() {
        for c in non_associative_actions(3, 4).unwrap() {
            assert!(c.action.verify().is_valid());
            assert!(!crate::crossed::CrossedProduct::build(&c.action).unwrap().is_associative());
        }
    }

    #[test]
    fn gf2_list() {
        let algs = gf2_algebras(1, 5).unwrap();
        assert!(algs.iter().all(|(_, a)| a.dim() <= 4 && a.is_unital()));
        assert!(algs.len() >= 25);
    }
}
